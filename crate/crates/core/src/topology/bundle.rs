//! Étale bundles over finite spaces, their sheaf of sections and the
//! inverse semigroup of principal partial automorphisms.

use std::collections::HashMap;

use super::{is_sober, members, partial_homeomorphisms, theta_star, FiniteSpace, HomeoSearch};
use crate::actions::{characteristic_congruence, SupportedAction};
use crate::congruence::is_fundamental;
use crate::error::{check_cap, Error, Result};
use crate::munn::generalized_munn_representation;
use crate::partial::{table_from_elements, PartialBijection, UNDEF};
use crate::presheaf::Presheaf;
use crate::{Id, InverseSemigroup, Limits};

/// A surjective local homeomorphism `π: total → base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleBundle {
    total: FiniteSpace,
    base: FiniteSpace,
    pi: Vec<usize>,
}

impl EtaleBundle {
    pub fn total(&self) -> &FiniteSpace {
        &self.total
    }

    pub fn base(&self) -> &FiniteSpace {
        &self.base
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    /// `π⁻¹(U)` as a bitset of total points.
    pub fn preimage(&self, u: u32) -> u32 {
        self.pi.iter().enumerate().filter(|&(_, &b)| u >> b & 1 == 1).fold(0, |a, (x, _)| a | 1 << x)
    }

    /// `π(V)` as a bitset of base points.
    pub fn image(&self, v: u32) -> u32 {
        members(v).fold(0, |a, x| a | 1 << self.pi[x])
    }

    /// `id_B: B → B`.
    pub fn identity(base: &FiniteSpace) -> Self {
        EtaleBundle { total: base.clone(), base: base.clone(), pi: (0..base.points()).collect() }
    }

    /// `k` disjoint copies of `B` over `B`; copy `i` of point `b` is
    /// `i·|B| + b`.
    pub fn trivial_cover(base: &FiniteSpace, k: usize) -> Result<Self> {
        let m = base.points();
        check_cap("cover total space", m * k, 32)?;
        let mut opens = vec![0u32];
        // opens of a disjoint union: one open per copy, chosen independently
        for i in 0..k {
            opens = opens
                .iter()
                .flat_map(|&acc| base.opens().iter().map(move |&u| acc | u << (i * m)))
                .collect();
        }
        let total = FiniteSpace::new(m * k, opens)?;
        validate_bundle(total, base.clone(), (0..m * k).map(|x| x % m).collect())
    }

    /// Whether `π` is injective on `v`.
    pub fn injective_on(&self, v: u32) -> bool {
        self.image(v).count_ones() == v.count_ones()
    }

    /// For an open `v` on which `π` is injective and `π(v)` open, whether
    /// `π|_v` is a homeomorphism onto `π(v)`.
    fn embeds(&self, v: u32, nbhd_total: &[u32], nbhd_base: &[u32]) -> bool {
        self.injective_on(v)
            && self.base.is_open(self.image(v))
            && members(v).all(|x| members(v).all(|y| nbhd_total[x] >> y & 1 == nbhd_base[self.pi[x]] >> self.pi[y] & 1))
    }
}

/// Checks that `π` is a surjective local homeomorphism.
pub fn validate_bundle(total: FiniteSpace, base: FiniteSpace, pi: Vec<usize>) -> Result<EtaleBundle> {
    if pi.len() != total.points() {
        return Err(Error::Malformed(format!("pi has {} entries for {} points", pi.len(), total.points())));
    }
    if let Some(&b) = pi.iter().find(|&&b| b >= base.points()) {
        return Err(Error::OutOfRange { id: b, size: base.points() });
    }
    if let Some(b) = (0..base.points()).find(|b| !pi.contains(b)) {
        return Err(Error::NotSurjective(b));
    }
    let bundle = EtaleBundle { total, base, pi };
    if let Some(&u) = bundle.base.opens().iter().find(|&&u| !bundle.total.is_open(bundle.preimage(u))) {
        return Err(Error::NotContinuous(u));
    }
    let nbhd_total: Vec<u32> = (0..bundle.total.points()).map(|x| bundle.total.neighbourhood(x)).collect();
    let nbhd_base: Vec<u32> = (0..bundle.base.points()).map(|b| bundle.base.neighbourhood(b)).collect();
    // the smallest open around x is N(x); any witness contains it
    if let Some(x) = (0..bundle.total.points()).find(|&x| !bundle.embeds(nbhd_total[x], &nbhd_total, &nbhd_base)) {
        return Err(Error::NotLocalHomeo(x));
    }
    Ok(bundle)
}

/// A local section `σ: domain → total` with `πσ = id`; `values` is indexed
/// by base points and `UNDEF` off the domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Section {
    pub domain: u32,
    pub values: Vec<usize>,
}

impl Section {
    pub fn image(&self) -> u32 {
        members(self.domain).fold(0, |a, b| a | 1 << self.values[b])
    }

    pub fn restrict(&self, v: u32) -> Section {
        let domain = self.domain & v;
        let values = self.values.iter().enumerate().map(|(b, &x)| if domain >> b & 1 == 1 { x } else { UNDEF }).collect();
        Section { domain, values }
    }
}

/// All sections of `π`, sorted by domain position in `Ω(B)` then values.
pub fn sections(bundle: &EtaleBundle, limits: &Limits) -> Result<Vec<Section>> {
    let base = bundle.base();
    let nbhd_total: Vec<u32> = (0..bundle.total().points()).map(|x| bundle.total().neighbourhood(x)).collect();
    let nbhd_base: Vec<u32> = (0..base.points()).map(|b| base.neighbourhood(b)).collect();
    let mut out = Vec::new();
    for &w in base.opens() {
        let dom: Vec<usize> = members(w).collect();
        let mut values = vec![UNDEF; base.points()];
        section_rec(bundle, &dom, 0, &nbhd_total, &nbhd_base, &mut values, &mut |v| {
            out.push(Section { domain: w, values: v.to_vec() })
        });
        check_cap("sections", out.len(), limits.max_generated)?;
    }
    out.sort_by_key(|s| (base.open_index(s.domain), s.values.clone()));
    Ok(out)
}

/// Continuity of a finite map is preservation of `c ∈ N(b)`.
fn section_rec(
    bundle: &EtaleBundle,
    dom: &[usize],
    i: usize,
    nbhd_total: &[u32],
    nbhd_base: &[u32],
    values: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if i == dom.len() {
        emit(values);
        return;
    }
    let b = dom[i];
    for x in (0..bundle.pi.len()).filter(|&x| bundle.pi[x] == b) {
        values[b] = x;
        let continuous = dom[..=i].iter().all(|&c| {
            (nbhd_base[b] >> c & 1 == 0 || nbhd_total[x] >> values[c] & 1 == 1)
                && (nbhd_base[c] >> b & 1 == 0 || nbhd_total[values[c]] >> x & 1 == 1)
        });
        if continuous {
            section_rec(bundle, dom, i + 1, nbhd_total, nbhd_base, values, emit);
        }
    }
    values[b] = UNDEF;
}

/// `Γ(π)` over `Ω(B)`: `σ·V = σ|_{V∩dom σ}` and `p(σ) = dom σ`. Carrier ids
/// follow [`sections`], lattice ids are open positions.
pub fn sections_presheaf(bundle: &EtaleBundle, limits: &Limits) -> Result<(Presheaf, Vec<Section>)> {
    let base = bundle.base();
    let all = sections(bundle, limits)?;
    let index: HashMap<&Section, Id> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let support = all.iter().map(|s| base.open_index(s.domain).expect("domains are open")).collect();
    let act = all
        .iter()
        .map(|s| base.opens().iter().map(|&v| index[&s.restrict(v)]).collect())
        .collect();
    Ok((Presheaf::new(base.omega(), support, act)?, all))
}

/// Opens of the total space on which `π` is injective.
pub fn injective_opens(bundle: &EtaleBundle) -> Vec<u32> {
    bundle.total().opens().iter().copied().filter(|&v| bundle.injective_on(v)).collect()
}

/// Section images are open and every open is the union of the images
/// inside it.
pub fn section_images_form_basis(bundle: &EtaleBundle, sections: &[Section]) -> bool {
    let images: Vec<u32> = sections.iter().map(Section::image).collect();
    images.iter().all(|&i| bundle.total().is_open(i))
        && bundle
            .total()
            .opens()
            .iter()
            .all(|&v| images.iter().filter(|&&i| i & !v == 0).fold(0, |a, &i| a | i) == v)
}

/// A principal partial automorphism: homeomorphisms `π⁻¹(U) → π⁻¹(V)` and
/// `U → V` with `π∘theta = theta_hat∘π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaElement {
    pub theta: PartialBijection,
    pub theta_hat: PartialBijection,
}

impl LaElement {
    pub fn after(&self, first: &LaElement) -> LaElement {
        LaElement { theta: self.theta.after(&first.theta), theta_hat: self.theta_hat.after(&first.theta_hat) }
    }

    fn identity_on(bundle: &EtaleBundle, u: u32) -> LaElement {
        LaElement {
            theta: PartialBijection::identity_on(bundle.total().points(), members(bundle.preimage(u))),
            theta_hat: PartialBijection::identity_on(bundle.base().points(), members(u)),
        }
    }
}

/// `La(π)` with its elements in id order (sorted).
pub fn la_semigroup(bundle: &EtaleBundle, limits: &Limits) -> Result<(InverseSemigroup, Vec<LaElement>)> {
    let total = bundle.total();
    let nbhd: Vec<u32> = (0..total.points()).map(|x| total.neighbourhood(x)).collect();
    let mut elements = Vec::new();
    for hat in partial_homeomorphisms(bundle.base(), limits)? {
        let u = hat.domain().fold(0u32, |a, b| a | 1 << b);
        let v = hat.image().fold(0u32, |a, b| a | 1 << b);
        let src: Vec<usize> = members(bundle.preimage(u)).collect();
        let dst: Vec<usize> = members(bundle.preimage(v)).collect();
        let allowed = |x: usize, y: usize| hat.get(bundle.pi[x]) == Some(bundle.pi[y]);
        let search = HomeoSearch { src: &src, dst: &dst, nbhd_src: &nbhd, nbhd_dst: &nbhd, allowed: &allowed };
        let mut map = vec![UNDEF; total.points()];
        let mut used = vec![false; total.points()];
        search.run(0, &mut map, &mut used, &mut |m| {
            elements.push(LaElement { theta: PartialBijection::from_vec(m.to_vec()), theta_hat: hat.clone() })
        });
        check_cap("La semigroup", elements.len(), limits.max_generated)?;
    }
    elements.sort();
    let (s, _) = table_from_elements(&elements, |f, g| f.after(g))?;
    Ok((s, elements))
}

/// `(Γ(π), La(π), p)` with `σ·(θ, θ̂) = θ⁻¹σθ̂` and `p(σ)` the identity pair
/// on `dom σ`.
pub fn la_action(bundle: &EtaleBundle, limits: &Limits) -> Result<(SupportedAction, Vec<LaElement>, Vec<Section>)> {
    let (s, elements) = la_semigroup(bundle, limits)?;
    let all = sections(bundle, limits)?;
    let section_index: HashMap<&Section, Id> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let la_index: HashMap<&LaElement, Id> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let support = all.iter().map(|sec| la_index[&LaElement::identity_on(bundle, sec.domain)]).collect();
    let m = bundle.base().points();
    let act = all
        .iter()
        .map(|sec| {
            elements
                .iter()
                .map(|g| {
                    let inv = g.theta.inverse();
                    let mut values = vec![UNDEF; m];
                    let mut domain = 0u32;
                    for (b, c) in g.theta_hat.graph() {
                        if sec.domain >> c & 1 == 1 {
                            values[b] = inv.get(sec.values[c]).expect("section lands in the range of theta");
                            domain |= 1 << b;
                        }
                    }
                    section_index[&Section { domain, values }]
                })
                .collect()
        })
        .collect();
    Ok((SupportedAction::new(s, support, act)?, elements, all))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremFReport {
    pub la_size: usize,
    pub sections: usize,
    pub munn_size: usize,
    /// `ξ: La(π) → T_{Γ(π)}` is an isomorphism.
    pub xi_is_iso: bool,
    pub characteristic_is_equality: bool,
    /// Every element of `T_{Γ(π)}` is `ξ((α*, θ*)⁻¹)` for the pair built
    /// from its point maps.
    pub reconstruction_ok: bool,
}

impl TheoremFReport {
    pub fn passed(&self) -> bool {
        self.xi_is_iso && self.characteristic_is_equality && self.reconstruction_ok
    }
}

/// `T_{Γ(π)} ≅ La(π)` for a bundle over a sober base.
pub fn theorem_f_check(bundle: &EtaleBundle, limits: &Limits) -> Result<TheoremFReport> {
    let (action, elements, all) = la_action(bundle, limits)?;
    if !is_sober(bundle.base()) {
        return Err(Error::NotSober { fundamental: is_fundamental(action.semigroup()) });
    }
    let rep = generalized_munn_representation(&action, limits)?;
    let base = bundle.base();
    let la = action.semigroup();
    let la_index: HashMap<&LaElement, Id> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    // lattice ids of T_{Γ(π)} index E(La(π)); translate them to opens of B
    let open_of: Vec<Id> = la
        .idempotents()
        .iter()
        .map(|&e| {
            let dom = elements[e].theta_hat.domain().fold(0u32, |a, b| a | 1 << b);
            base.open_index(dom).expect("idempotents are identities on opens")
        })
        .collect();
    let reconstruction_ok = rep.target.elements().iter().enumerate().all(|(id, m)| {
        // m: Γ·V → Γ·U with V = domain, U = range
        let (v, u) = (base.opens()[open_of[m.domain]], base.opens()[open_of[m.range]]);
        let theta = PartialBijection::from_pairs(base.opens().len(), m.iso.theta.graph().map(|(i, j)| (open_of[i], open_of[j])));
        let Some(star) = theta_star(base, &theta, u) else { return false };
        let alpha_inv = m.iso.alpha.inverse();
        let mut alpha_star = vec![UNDEF; bundle.total().points()];
        for x in members(bundle.preimage(u)) {
            let b = bundle.pi()[x];
            let sigma = all.iter().position(|s| s.domain & !u == 0 && s.domain >> b & 1 == 1 && s.values[b] == x);
            let Some(image) = sigma.and_then(|i| alpha_inv.get(i)) else { return false };
            alpha_star[x] = all[image].values[star[b]];
        }
        let (Some(theta), Some(theta_hat)) = (PartialBijection::try_from_vec(alpha_star), PartialBijection::try_from_vec(star))
        else {
            return false;
        };
        let pair = LaElement { theta, theta_hat };
        debug_assert!(pair.theta_hat.domain().fold(0u32, |a, b| a | 1 << b) == u);
        debug_assert!(pair.theta_hat.image().all(|b| v >> b & 1 == 1));
        la_index.get(&pair).is_some_and(|&g| rep.map[la.inv(g)] == id)
    });
    Ok(TheoremFReport {
        la_size: la.len(),
        sections: all.len(),
        munn_size: rep.target.len(),
        xi_is_iso: rep.report.is_isomorphism(),
        characteristic_is_equality: characteristic_congruence(&action).is_equality(),
        reconstruction_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::find_isomorphism;
    use crate::presheaf::Presheaf;
    use crate::topology::partial_homeo_semigroup;
    use crate::zoo::particular_point_space;

    fn point() -> FiniteSpace {
        FiniteSpace::discrete(1)
    }

    #[test]
    fn validation_errors() {
        let s = FiniteSpace::sierpinski();
        assert!(validate_bundle(s.clone(), s.clone(), vec![0, 1]).is_ok());
        assert_eq!(validate_bundle(FiniteSpace::discrete(2), s.clone(), vec![0, 0]).unwrap_err(), Error::NotSurjective(1));
        // preimage of {0} is {1}, not open in Sierpinski
        assert_eq!(validate_bundle(s.clone(), s.clone(), vec![1, 0]).unwrap_err(), Error::NotContinuous(1));
        // the indiscrete 2-point space over a point is continuous but folds N(x)
        assert_eq!(validate_bundle(FiniteSpace::indiscrete(2), point(), vec![0, 0]).unwrap_err(), Error::NotLocalHomeo(0));
        // the identity from discrete to Sierpinski is continuous but not open
        assert_eq!(validate_bundle(FiniteSpace::discrete(2), s, vec![0, 1]).unwrap_err(), Error::NotLocalHomeo(1));
    }

    #[test]
    fn identity_bundle_sections() {
        let s = FiniteSpace::sierpinski();
        let (gamma, secs) = sections_presheaf(&EtaleBundle::identity(&s), &Limits::default()).unwrap();
        assert_eq!(secs.len(), 3);
        assert_eq!(gamma.rows(), Presheaf::of_semilattice(&s.omega()).rows());
    }

    #[test]
    fn discrete_cover_counts() {
        let l = Limits::default();
        let b = EtaleBundle::trivial_cover(&point(), 2).unwrap();
        let (gamma, secs) = sections_presheaf(&b, &l).unwrap();
        assert_eq!(secs.len(), 3);
        assert!(gamma.is_global());
        assert_eq!(la_semigroup(&b, &l).unwrap().0.len(), 3);
        let r = theorem_f_check(&b, &l).unwrap();
        assert!(r.passed() && r.munn_size == 3, "{r:?}");
    }

    #[test]
    fn la_of_identity_bundle_is_partial_homeos() {
        let l = Limits::default();
        for base in [FiniteSpace::sierpinski(), particular_point_space(3).unwrap()] {
            let (la, _) = la_semigroup(&EtaleBundle::identity(&base), &l).unwrap();
            let (ih, _) = partial_homeo_semigroup(&base, &l).unwrap();
            assert!(find_isomorphism(&la, &ih, &l).unwrap().is_some());
        }
    }

    #[test]
    fn la_over_unequal_fibres() {
        // one sheet over 0, two over 1: no element can move 0 to 1
        let b = validate_bundle(FiniteSpace::discrete(3), FiniteSpace::discrete(2), vec![0, 1, 1]).unwrap();
        let (la, elements) = la_semigroup(&b, &Limits::default()).unwrap();
        assert_eq!(la.len(), 6);
        for e in &elements {
            let dom = e.theta_hat.domain().fold(0u32, |a, x| a | 1 << x);
            let im = e.theta_hat.image().fold(0u32, |a, x| a | 1 << x);
            assert_eq!(e.theta.domain().fold(0u32, |a, x| a | 1 << x), b.preimage(dom));
            assert_eq!(e.theta.image().fold(0u32, |a, x| a | 1 << x), b.preimage(im));
        }
        assert!(theorem_f_check(&b, &Limits::default()).unwrap().passed());
    }

    #[test]
    fn la_is_munn_of_sections() {
        let l = Limits::default();
        let s = FiniteSpace::sierpinski();
        let r = theorem_f_check(&EtaleBundle::identity(&s), &l).unwrap();
        assert!(r.passed() && r.la_size == 3 && r.munn_size == 3, "{r:?}");
        let r = theorem_f_check(&EtaleBundle::trivial_cover(&s, 2).unwrap(), &l).unwrap();
        assert!(r.passed(), "{r:?}");
        let err = theorem_f_check(&EtaleBundle::identity(&FiniteSpace::indiscrete(2)), &l).unwrap_err();
        assert!(matches!(err, Error::NotSober { .. }));
    }

    #[test]
    fn section_images_are_a_basis() {
        let l = Limits::default();
        let b = EtaleBundle::trivial_cover(&FiniteSpace::sierpinski(), 2).unwrap();
        let secs = sections(&b, &l).unwrap();
        assert!(section_images_form_basis(&b, &secs));
        // sections over {0}: 2, over the whole space: 2, plus the empty one
        assert_eq!(secs.len(), 5);
        assert_eq!(injective_opens(&b).len(), 1 + 2 + 2);
    }
}
