//! The Munn semigroup `T_E`, the generalised Munn semigroup `T_X`, their
//! representations, and the correspondence between supported actions and
//! wide idempotent-separating homomorphisms.

use std::collections::HashMap;

use crate::actions::{find_action_isomorphism, SupportedAction};
use crate::error::{check_cap, Error, Result};
use crate::hom::{check_homomorphism, wide_idempotent_separating_homs, HomReport};
use crate::partial::{table_from_elements, PartialBijection, UNDEF};
use crate::presheaf::{idempotent_positions, order_isomorphisms, subpresheaf_isomorphisms, PairIso, Presheaf, Semilattice};
use crate::{Id, InverseSemigroup, Limits};

/// An isomorphism `X·e → X·f` together with its lattice part `e↓ → f↓`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MunnElement {
    pub domain: Id,
    pub range: Id,
    pub iso: PairIso,
}

/// `T_X` (or `T_E`, where every `α` is empty) with its multiplication
/// table. Elements are sorted by `(domain, range, α, θ)`; the product `gh`
/// applies `h` first.
#[derive(Debug, Clone)]
pub struct MunnSemigroup {
    lattice: Semilattice,
    elements: Vec<MunnElement>,
    semigroup: InverseSemigroup,
    index: HashMap<PairIso, Id>,
}

impl MunnSemigroup {
    fn build(lattice: &Semilattice, mut elements: Vec<MunnElement>) -> Result<Self> {
        elements.sort();
        let isos: Vec<PairIso> = elements.iter().map(|m| m.iso.clone()).collect();
        let (semigroup, index) = table_from_elements(&isos, |g, h| g.after(h))?;
        Ok(MunnSemigroup { lattice: lattice.clone(), elements, semigroup, index })
    }

    pub fn semigroup(&self) -> &InverseSemigroup {
        &self.semigroup
    }

    pub fn lattice(&self) -> &Semilattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[MunnElement] {
        &self.elements
    }

    pub fn element(&self, id: Id) -> &MunnElement {
        &self.elements[id]
    }

    pub fn index_of(&self, iso: &PairIso) -> Option<Id> {
        self.index.get(iso).copied()
    }

    /// The identity pair on the principal subpresheaf at lattice id `e`.
    pub fn identity_at(&self, e: Id) -> Id {
        self.elements
            .iter()
            .position(|m| m.domain == e && m.range == e && m.iso.alpha.is_identity() && m.iso.theta.is_identity())
            .expect("identity on every principal subpresheaf")
    }
}

/// `T_E`: order-isomorphisms between principal ideals of `E`.
pub fn munn_semigroup(lattice: &Semilattice, limits: &Limits) -> Result<MunnSemigroup> {
    check_cap("semilattice", lattice.len(), limits.max_size)?;
    let mut elements = Vec::new();
    for e in 0..lattice.len() {
        let down_e = lattice.down(e);
        for f in 0..lattice.len() {
            let down_f = lattice.down(f);
            if down_e.len() != down_f.len() {
                continue;
            }
            for theta in order_isomorphisms(lattice, &down_e, lattice, &down_f) {
                elements.push(MunnElement {
                    domain: e,
                    range: f,
                    iso: PairIso { alpha: PartialBijection::empty(0), theta },
                });
                check_cap("Munn semigroup", elements.len(), limits.max_generated)?;
            }
        }
    }
    MunnSemigroup::build(lattice, elements)
}

/// `T_X`: isomorphisms between principal subpresheaves `(X·e, e↓)`.
pub fn generalized_munn(p: &Presheaf, limits: &Limits) -> Result<MunnSemigroup> {
    let lat = p.lattice();
    check_cap("presheaf carrier", p.len(), limits.max_size)?;
    check_cap("semilattice", lat.len(), limits.max_size)?;
    let principal: Vec<_> = (0..lat.len()).map(|e| p.principal(e)).collect();
    let mut elements = Vec::new();
    for e in 0..lat.len() {
        for f in 0..lat.len() {
            for iso in subpresheaf_isomorphisms(p, &principal[e], &principal[f], limits)? {
                elements.push(MunnElement { domain: e, range: f, iso });
            }
            check_cap("generalised Munn semigroup", elements.len(), limits.max_generated)?;
        }
    }
    MunnSemigroup::build(lat, elements)
}

/// A map from `S` into a Munn semigroup with its homomorphism report.
#[derive(Debug, Clone)]
pub struct Representation {
    pub target: MunnSemigroup,
    pub map: Vec<Id>,
    pub report: HomReport,
}

/// `θ: e ↦ s e s⁻¹` on `d(s)↓`, in lattice ids.
fn conjugation_iso(s: &InverseSemigroup, pos: &[Id], a: Id) -> PartialBijection {
    let idem = s.idempotents();
    let d = s.d(a);
    let pairs = idem
        .iter()
        .enumerate()
        .filter(|&(_, &e)| s.natural_leq(e, d))
        .map(|(i, &e)| (i, pos[s.mul3(a, e, s.inv(a))]));
    PartialBijection::from_pairs(idem.len(), pairs)
}

/// The Munn representation `δ: S → T_{E(S)}`.
pub fn munn_representation(s: &InverseSemigroup, limits: &Limits) -> Result<Representation> {
    let lattice = Semilattice::of_idempotents(s);
    let target = munn_semigroup(&lattice, limits)?;
    let pos = idempotent_positions(s);
    let map = (0..s.len())
        .map(|a| {
            let iso = PairIso { alpha: PartialBijection::empty(0), theta: conjugation_iso(s, &pos, a) };
            target.index_of(&iso).ok_or(Error::ClosureViolation(a, a))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = check_homomorphism(s, target.semigroup(), &map)?;
    Ok(Representation { target, map, report })
}

/// `ξ(s) = (α_{s⁻¹}, θ_{s⁻¹})` into `T_Y` for `Y` the restriction of the
/// action to `E(S)`, where `α_{s⁻¹}(y) = y·s⁻¹` on `X·d(s)`.
pub fn generalized_munn_representation(a: &SupportedAction, limits: &Limits) -> Result<Representation> {
    let s = a.semigroup();
    let y = a.restrict_to_idempotents();
    let target = generalized_munn(&y, limits)?;
    let pos = idempotent_positions(s);
    let map = (0..s.len())
        .map(|u| {
            let d = s.d(u);
            let alpha = (0..a.len())
                .map(|x| if s.natural_leq(a.support(x), d) { a.act(x, s.inv(u)) } else { UNDEF })
                .collect();
            let iso = PairIso { alpha: PartialBijection::from_vec(alpha), theta: conjugation_iso(s, &pos, u) };
            target.index_of(&iso).ok_or(Error::ClosureViolation(u, u))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = check_homomorphism(s, target.semigroup(), &map)?;
    Ok(Representation { target, map, report })
}

/// The projection `γ: T_X → T_E`, `(α, θ) ↦ θ`.
#[derive(Debug, Clone)]
pub struct GammaReport {
    pub target: MunnSemigroup,
    pub map: Vec<Id>,
    pub report: HomReport,
    /// `(α, θ) ↦ α` is injective.
    pub alpha_injective: bool,
}

pub fn gamma_projection(t: &MunnSemigroup, limits: &Limits) -> Result<GammaReport> {
    let target = munn_semigroup(t.lattice(), limits)?;
    let map = t
        .elements()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let iso = PairIso { alpha: PartialBijection::empty(0), theta: m.iso.theta.clone() };
            target.index_of(&iso).ok_or(Error::ClosureViolation(i, i))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = check_homomorphism(t.semigroup(), target.semigroup(), &map)?;
    let mut alphas: Vec<&PartialBijection> = t.elements().iter().map(|m| &m.iso.alpha).collect();
    alphas.sort();
    alphas.dedup();
    Ok(GammaReport { target, map, report, alpha_injective: alphas.len() == t.len() })
}

/// `κ(e)`: the lattice id `g` of `P` with `φ(e) = (id_{X·g}, id_{g↓})`, for
/// each idempotent `e` of `S` (indexed by id; `UNDEF` off `E(S)`).
fn idempotent_labels(s: &InverseSemigroup, t: &MunnSemigroup, phi: &[Id]) -> Vec<Id> {
    let mut kappa = vec![UNDEF; s.len()];
    for &e in s.idempotents() {
        kappa[e] = t.element(phi[e]).domain;
    }
    kappa
}

/// The action `(X, S, p̄)` induced by `φ`: `x∘s = α_s⁻¹(x·f)` where
/// `φ(s) = (α_s, θ_s): X·e → X·f`, and `p̄(x)` is the idempotent sent to
/// the identity at `p(x)`.
pub fn action_from_hom(s: &InverseSemigroup, p: &Presheaf, t: &MunnSemigroup, phi: &[Id]) -> Result<SupportedAction> {
    let report = check_homomorphism(s, t.semigroup(), phi)?;
    if !report.is_hom {
        return Err(Error::HomPreconditionFailed("not a homomorphism".into()));
    }
    if !report.is_idempotent_separating {
        return Err(Error::HomPreconditionFailed("not idempotent-separating".into()));
    }
    if !report.image_is_wide {
        return Err(Error::HomPreconditionFailed("image is not wide".into()));
    }
    if p.len() != t.elements().first().map_or(p.len(), |m| m.iso.alpha.len()) {
        return Err(Error::HomPreconditionFailed("presheaf does not match the Munn semigroup".into()));
    }
    let kappa = idempotent_labels(s, t, phi);
    let mut over = vec![UNDEF; p.lattice().len()];
    for &e in s.idempotents() {
        over[kappa[e]] = e;
    }
    let support = (0..p.len()).map(|x| over[p.support(x)]).collect();
    let act = (0..p.len())
        .map(|x| {
            (0..s.len())
                .map(|u| {
                    let m = t.element(phi[u]);
                    let inverse = m.iso.alpha.inverse();
                    inverse.get(p.act(x, m.range)).expect("x·f lies in X·f")
                })
                .collect()
        })
        .collect();
    SupportedAction::new(s.clone(), support, act)
}

/// Checks both directions of the correspondence for one pair `(S, P)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TheoremDReport {
    /// Qualifying homomorphisms `S → T_P` found by bounded search.
    pub homs: usize,
    /// Homomorphisms whose round trip through an action failed.
    pub hom_failures: Vec<Vec<Id>>,
    /// Actions whose round trip through `ξ` failed (by hom index).
    pub action_failures: Vec<usize>,
}

impl TheoremDReport {
    pub fn passed(&self) -> bool {
        self.hom_failures.is_empty() && self.action_failures.is_empty()
    }
}

/// For every wide idempotent-separating `φ: S → T_P`: the action built from
/// `φ` restricts to `P` along `κ`, and its `ξ` equals `φ` after relabelling
/// lattice ids by `κ`. For every action so obtained: `ξ` followed by
/// [`action_from_hom`] gives an isomorphic action.
pub fn verify_theorem_d_roundtrip(s: &InverseSemigroup, p: &Presheaf, limits: &Limits) -> Result<TheoremDReport> {
    check_cap("round-trip semigroup", s.len(), limits.max_hom_source)?;
    let t = generalized_munn(p, limits)?;
    let homs = wide_idempotent_separating_homs(s, t.semigroup(), limits)?;
    let mut report = TheoremDReport { homs: homs.len(), ..Default::default() };
    let pos = idempotent_positions(s);
    for (i, phi) in homs.iter().enumerate() {
        let action = action_from_hom(s, p, &t, phi)?;
        let kappa = idempotent_labels(s, &t, phi);
        let xi = generalized_munn_representation(&action, limits)?;
        let relabel = |theta: &PartialBijection| {
            let mut v = vec![UNDEF; theta.len()];
            for (a, b) in theta.graph() {
                v[kappa[s.idempotents()[a]]] = kappa[s.idempotents()[b]];
            }
            PartialBijection::from_vec(v)
        };
        let restricts = action.restrict_to_idempotents();
        let presheaf_matches = (0..p.len()).all(|x| {
            kappa[s.idempotents()[restricts.support(x)]] == p.support(x)
                && s.idempotents().iter().all(|&e| restricts.act(x, pos[e]) == p.act(x, kappa[e]))
        });
        let hom_matches = (0..s.len()).all(|u| {
            let mine = &xi.target.element(xi.map[u]).iso;
            let translated = PairIso { alpha: mine.alpha.clone(), theta: relabel(&mine.theta) };
            translated == t.element(phi[u]).iso
        });
        if !(presheaf_matches && hom_matches && xi.report.kernel == check_homomorphism(s, t.semigroup(), phi)?.kernel) {
            report.hom_failures.push(phi.clone());
        }
        if !check_action_roundtrip(&action, limits)? {
            report.action_failures.push(i);
        }
    }
    Ok(report)
}

/// `ξ` followed by [`action_from_hom`] reproduces the action up to
/// isomorphism.
pub fn check_action_roundtrip(a: &SupportedAction, limits: &Limits) -> Result<bool> {
    let xi = generalized_munn_representation(a, limits)?;
    let y = a.restrict_to_idempotents();
    let back = action_from_hom(a.semigroup(), &y, &xi.target, &xi.map)?;
    Ok(find_action_isomorphism(a, &back, limits)?.is_some())
}

/// Number of wide idempotent-separating homomorphisms `S → T_P`.
pub fn qualifying_hom_count(s: &InverseSemigroup, p: &Presheaf, limits: &Limits) -> Result<usize> {
    let t = generalized_munn(p, limits)?;
    Ok(wide_idempotent_separating_homs(s, t.semigroup(), limits)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{conjugation_action, right_regular_action};
    use crate::congruence::mu;
    use crate::hom::find_isomorphism;
    use crate::zoo::{chain, clifford_z2_over_one, cyclic_group, powerset, symmetric_inverse, vee};

    fn lattice(s: &InverseSemigroup) -> Semilattice {
        Semilattice::new(s.clone()).unwrap()
    }

    #[test]
    fn munn_semigroup_sizes() {
        let l = Limits::default();
        assert_eq!(munn_semigroup(&lattice(&chain(2)), &l).unwrap().len(), 2);
        assert_eq!(munn_semigroup(&lattice(&vee()), &l).unwrap().len(), 5);
        let t = munn_semigroup(&lattice(&powerset(2)), &l).unwrap();
        assert_eq!(t.len(), 7);
        let i2 = symmetric_inverse(2).unwrap();
        assert!(find_isomorphism(t.semigroup(), &i2, &l).unwrap().is_some());
    }

    #[test]
    fn munn_representation_kernel_is_mu() {
        let l = Limits::default();
        for s in [symmetric_inverse(2).unwrap(), cyclic_group(4), clifford_z2_over_one()] {
            let rep = munn_representation(&s, &l).unwrap();
            assert!(rep.report.is_hom && rep.report.is_idempotent_separating && rep.report.image_is_wide);
            assert_eq!(rep.report.kernel.unwrap(), mu(&s));
        }
        let g = munn_representation(&cyclic_group(5), &l).unwrap();
        assert_eq!(g.target.len(), 1);
        // a central element acts as an identity
        let c = clifford_z2_over_one();
        let rep = munn_representation(&c, &l).unwrap();
        assert!(rep.map.iter().all(|&m| rep.target.semigroup().is_idempotent(m)));
    }

    #[test]
    fn xi_for_standard_actions() {
        let l = Limits::default();
        let s = symmetric_inverse(2).unwrap();
        let reg = generalized_munn_representation(&right_regular_action(&s), &l).unwrap();
        assert!(reg.report.is_injective && reg.report.is_hom && reg.report.image_is_wide);
        let g = clifford_z2_over_one();
        let conj = generalized_munn_representation(&conjugation_action(&g), &l).unwrap();
        assert_eq!(conj.report.kernel.unwrap(), mu(&g));
    }

    #[test]
    fn gamma_on_semilattice_presheaf_is_bijective() {
        let l = Limits::default();
        let e = lattice(&vee());
        let t = generalized_munn(&Presheaf::of_semilattice(&e), &l).unwrap();
        let g = gamma_projection(&t, &l).unwrap();
        assert!(g.report.is_isomorphism());
        assert!(g.alpha_injective);
    }

    #[test]
    fn action_from_hom_rejects_non_wide() {
        let l = Limits::default();
        let s = chain(2);
        let p = Presheaf::of_semilattice(&lattice(&s));
        let t = generalized_munn(&p, &l).unwrap();
        let top = t.identity_at(1);
        let err = action_from_hom(&s, &p, &t, &[top, top]).unwrap_err();
        assert!(matches!(err, Error::HomPreconditionFailed(_)));
    }

    #[test]
    fn theorem_d_small_cases() {
        let l = Limits::default();
        let s = chain(2);
        let p = Presheaf::of_semilattice(&lattice(&s));
        let r = verify_theorem_d_roundtrip(&s, &p, &l).unwrap();
        assert_eq!(r.homs, 1);
        assert!(r.passed());
        let i2 = symmetric_inverse(2).unwrap();
        let conj = conjugation_action(&i2).restrict_to_idempotents();
        let r = verify_theorem_d_roundtrip(&i2, &conj, &l).unwrap();
        assert!(r.homs >= 1 && r.passed());
    }
}
