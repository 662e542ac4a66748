//! Supported actions `(X, S, p)`: validation, the standard constructions,
//! characteristic congruences and module axioms.

use std::collections::BTreeMap;

use crate::congruence::Congruence;
use crate::error::{check_cap, Error, Result};
use crate::hom::check_homomorphism;
use crate::partial::UNDEF;
use crate::presheaf::{idempotent_positions, Presheaf, Semilattice};
use crate::{Id, InverseSemigroup, Limits};

/// A right action `X × S → X` with support `p: X → E(S)` satisfying
///
/// * SA1: `(x·s)·t = x·(st)`
/// * SA2: `x·p(x) = x`
/// * SA3: `p(x·s) = s⁻¹p(x)s`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedAction {
    semigroup: InverseSemigroup,
    support: Vec<Id>,
    act: Vec<Id>,
}

impl SupportedAction {
    /// `act[x][s] = x·s`; `support` holds ids of `S`.
    pub fn new(semigroup: InverseSemigroup, support: Vec<Id>, act: Vec<Vec<Id>>) -> Result<Self> {
        let (m, n) = (support.len(), semigroup.len());
        if act.len() != m {
            return Err(Error::Malformed(format!("action has {} rows, expected {m}", act.len())));
        }
        let mut flat = Vec::with_capacity(m * n);
        for (x, row) in act.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("action row {x} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&y| y >= m) {
                return Err(Error::OutOfRange { id: bad, size: m });
            }
            flat.extend(row);
        }
        for (x, &e) in support.iter().enumerate() {
            if e >= n {
                return Err(Error::OutOfRange { id: e, size: n });
            }
            if !semigroup.is_idempotent(e) {
                return Err(Error::SupportNotIdempotent { x, support: e });
            }
        }
        let a = SupportedAction { semigroup, support, act: flat };
        a.check_axioms()?;
        Ok(a)
    }

    fn check_axioms(&self) -> Result<()> {
        let s = &self.semigroup;
        for x in 0..self.len() {
            for a in 0..s.len() {
                let xa = self.act(x, a);
                for b in 0..s.len() {
                    if self.act(xa, b) != self.act(x, s.mul(a, b)) {
                        return Err(Error::Sa1Violation { x, s: a, t: b });
                    }
                }
            }
        }
        if let Some(x) = (0..self.len()).find(|&x| self.act(x, self.support[x]) != x) {
            return Err(Error::Sa2Violation(x));
        }
        for x in 0..self.len() {
            for a in 0..s.len() {
                if self.support[self.act(x, a)] != s.conj(self.support[x], a) {
                    return Err(Error::Sa3Violation { x, s: a });
                }
            }
        }
        Ok(())
    }

    pub fn semigroup(&self) -> &InverseSemigroup {
        &self.semigroup
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    #[inline]
    pub fn act(&self, x: Id, s: Id) -> Id {
        self.act[x * self.semigroup.len() + s]
    }

    #[inline]
    pub fn support(&self, x: Id) -> Id {
        self.support[x]
    }

    pub fn supports(&self) -> &[Id] {
        &self.support
    }

    pub fn rows(&self) -> Vec<Vec<Id>> {
        let n = self.semigroup.len();
        (0..self.len()).map(|x| self.act[x * n..(x + 1) * n].to_vec()).collect()
    }

    /// The first idempotent missed by `p`, if any.
    pub fn missed_idempotent(&self) -> Option<Id> {
        let mut hit = vec![false; self.semigroup.len()];
        for &e in &self.support {
            hit[e] = true;
        }
        self.semigroup.idempotents().iter().copied().find(|&e| !hit[e])
    }

    /// `p` is surjective onto `E(S)`.
    pub fn is_global(&self) -> bool {
        self.missed_idempotent().is_none()
    }

    /// Steinberg order `x ≤ y` iff `x = y·p(x)`.
    pub fn steinberg_leq(&self, x: Id, y: Id) -> bool {
        self.act(y, self.support[x]) == x
    }

    pub fn is_subaction(&self, set: &[Id]) -> bool {
        let mut member = vec![false; self.len()];
        for &x in set {
            member[x] = true;
        }
        set.iter().all(|&x| (0..self.semigroup.len()).all(|s| member[self.act(x, s)]))
    }

    /// The action restricted to a closed subset; new id `i` is `set[i]`.
    pub fn subaction(&self, set: &[Id]) -> Result<SupportedAction> {
        if !self.is_subaction(set) {
            return Err(Error::Malformed("subset is not closed under the action".into()));
        }
        let mut new_id = vec![UNDEF; self.len()];
        for (i, &x) in set.iter().enumerate() {
            new_id[x] = i;
        }
        let act = set.iter().map(|&x| (0..self.semigroup.len()).map(|s| new_id[self.act(x, s)]).collect()).collect();
        SupportedAction::new(self.semigroup.clone(), set.iter().map(|&x| self.support[x]).collect(), act)
    }

    /// `x·S`, ascending.
    pub fn orbit(&self, x: Id) -> Vec<Id> {
        let mut out: Vec<Id> = (0..self.semigroup.len()).map(|s| self.act(x, s)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `(X, E(S), p)` with `E(S)` relabelled as in [`Semilattice::of_idempotents`].
    pub fn restrict_to_idempotents(&self) -> Presheaf {
        let s = &self.semigroup;
        let pos = idempotent_positions(s);
        let act = (0..self.len())
            .map(|x| s.idempotents().iter().map(|&e| self.act(x, e)).collect())
            .collect();
        Presheaf::new(
            Semilattice::of_idempotents(s),
            self.support.iter().map(|&e| pos[e]).collect(),
            act,
        )
        .expect("restriction of a supported action is a presheaf")
    }
}

/// `(E(S), S, id)` with `e·s = s⁻¹es`; carrier id `i` is `S.idempotents()[i]`.
pub fn conjugation_action(s: &InverseSemigroup) -> SupportedAction {
    let idem = s.idempotents();
    let pos = idempotent_positions(s);
    let act = idem.iter().map(|&e| (0..s.len()).map(|a| pos[s.conj(e, a)]).collect()).collect();
    SupportedAction::new(s.clone(), idem.to_vec(), act).expect("conjugation action")
}

/// `(S, S, d)` acting by right multiplication.
pub fn right_regular_action(s: &InverseSemigroup) -> SupportedAction {
    let support = (0..s.len()).map(|a| s.d(a)).collect();
    SupportedAction::new(s.clone(), support, s.rows()).expect("right regular action")
}

/// `(Z(E(S)), S, d)` with `n·s = s⁻¹ns`; carrier id `i` is the `i`-th
/// element of the centraliser.
pub fn centralizer_action(s: &InverseSemigroup) -> SupportedAction {
    let z = s.centralizer_of_idempotents();
    let mut pos = vec![UNDEF; s.len()];
    for (i, &n) in z.iter().enumerate() {
        pos[n] = i;
    }
    let act = z.iter().map(|&n| (0..s.len()).map(|a| pos[s.conj(n, a)]).collect()).collect();
    SupportedAction::new(s.clone(), z.iter().map(|&n| s.d(n)).collect(), act).expect("centraliser action")
}

/// `(S/ρ, S, p)` with `ρ(s)·t = ρ(st)` and `p(ρ(s)) = d(s)`. Classes are
/// numbered by ascending representative.
pub fn quotient_action(s: &InverseSemigroup, rho: &Congruence) -> Result<SupportedAction> {
    if let Some((e, f)) = rho.idempotent_collision(s) {
        return Err(Error::NotIdempotentSeparating(e, f));
    }
    let reps = rho.representatives();
    let class: Vec<usize> =
        (0..s.len()).map(|a| reps.binary_search(&rho.class_of(a)).expect("representative")).collect();
    let act = reps.iter().map(|&r| (0..s.len()).map(|t| class[s.mul(r, t)]).collect()).collect();
    SupportedAction::new(s.clone(), reps.iter().map(|&r| s.d(r)).collect(), act)
}

/// The free supported action on `S ∗ X = {(s, x) : r(s) = p(x)}` with
/// `(t, x)·s = (ts, x·r(ts))`. Lattice id `i` of `P` must be the `i`-th
/// idempotent of `S`. Returns the action and its carrier pairs.
pub fn free_action(s: &InverseSemigroup, p: &Presheaf) -> Result<(SupportedAction, Vec<(Id, Id)>)> {
    let idem = s.idempotents();
    let lat = p.lattice();
    if lat.len() != idem.len() {
        return Err(Error::LatticeMismatch);
    }
    let pos = idempotent_positions(s);
    for i in 0..idem.len() {
        for j in 0..idem.len() {
            if pos[s.mul(idem[i], idem[j])] != lat.meet(i, j) {
                return Err(Error::LatticeMismatch);
            }
        }
    }
    let carrier: Vec<(Id, Id)> = (0..s.len())
        .flat_map(|t| (0..p.len()).map(move |x| (t, x)))
        .filter(|&(t, x)| pos[s.r(t)] == p.support(x))
        .collect();
    let index: BTreeMap<(Id, Id), Id> = carrier.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let act = carrier
        .iter()
        .map(|&(t, x)| {
            (0..s.len())
                .map(|a| {
                    let ta = s.mul(t, a);
                    index[&(ta, p.act(x, pos[s.r(ta)]))]
                })
                .collect()
        })
        .collect();
    let support = carrier.iter().map(|&(t, _)| s.d(t)).collect();
    Ok((SupportedAction::new(s.clone(), support, act)?, carrier))
}

/// The action of `S` on `Ker j` by `t·s = k(s)⁻¹ t k(s)`, for an
/// idempotent-separating surjection `j: T → S` with abelian kernel. The
/// section `k` defaults to the least preimage. Carrier id `i` is the `i`-th
/// element of `Ker j`.
pub fn extension_action(
    t: &InverseSemigroup,
    s: &InverseSemigroup,
    j: &[Id],
    section: Option<&[Id]>,
) -> Result<SupportedAction> {
    let report = check_homomorphism(t, s, j)?;
    if !report.is_hom {
        return Err(Error::HomPreconditionFailed("j is not a homomorphism".into()));
    }
    if !report.is_surjective {
        return Err(Error::HomPreconditionFailed("j is not surjective".into()));
    }
    let ker = report.kernel.expect("kernel of a homomorphism");
    if let Some((e, f)) = ker.idempotent_collision(t) {
        return Err(Error::NotIdempotentSeparating(e, f));
    }
    let kernel: Vec<Id> = (0..t.len()).filter(|&a| s.is_idempotent(j[a])).collect();
    for &a in &kernel {
        if let Some(&b) = kernel.iter().find(|&&b| t.mul(a, b) != t.mul(b, a)) {
            return Err(Error::KernelNotAbelian(a, b));
        }
    }
    let k: Vec<Id> = match section {
        Some(k) => {
            if k.len() != s.len() {
                return Err(Error::Malformed(format!("section has {} entries, expected {}", k.len(), s.len())));
            }
            if let Some(bad) = (0..s.len()).find(|&a| k[a] >= t.len() || j[k[a]] != a) {
                return Err(Error::NotSection(bad));
            }
            k.to_vec()
        }
        None => (0..s.len()).map(|a| (0..t.len()).find(|&b| j[b] == a).expect("surjective")).collect(),
    };
    let mut pos = vec![UNDEF; t.len()];
    for (i, &a) in kernel.iter().enumerate() {
        pos[a] = i;
    }
    let act = kernel.iter().map(|&a| (0..s.len()).map(|b| pos[t.conj(a, k[b])]).collect()).collect();
    SupportedAction::new(s.clone(), kernel.iter().map(|&a| j[a]).collect(), act)
}

/// `ρ_X`: `s ρ t` iff `x·s = x·t` for every `x`.
pub fn characteristic_congruence(a: &SupportedAction) -> Congruence {
    let columns: Vec<Vec<Id>> =
        (0..a.semigroup.len()).map(|s| (0..a.len()).map(|x| a.act(x, s)).collect()).collect();
    Congruence::from_labels(&columns)
}

/// One failed S-module axiom with the ids that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleFailure {
    /// `(a1 a2)·s ≠ (a1·s)(a2·s)`
    Endomorphism { a1: Id, a2: Id, s: Id },
    /// `(a·s1)·s2 ≠ a·(s1 s2)`
    Associativity { a: Id, s1: Id, s2: Id },
    /// `a·e ≠ a + 0_e`
    IdempotentAction { a: Id, e: Id },
    /// `0_e·s ≠ 0_{s⁻¹es}`
    ZeroConjugation { e: Id, s: Id },
}

impl ModuleFailure {
    pub fn axiom(&self) -> u8 {
        match self {
            ModuleFailure::Endomorphism { .. } => 1,
            ModuleFailure::Associativity { .. } => 2,
            ModuleFailure::IdempotentAction { .. } => 3,
            ModuleFailure::ZeroConjugation { .. } => 4,
        }
    }
}

/// Outcome of [`check_s_module`]: the first failure of each axiom.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleReport {
    pub failures: Vec<ModuleFailure>,
}

impl ModuleReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first(&self) -> Option<&ModuleFailure> {
        self.failures.first()
    }
}

/// Checks the four right S-module axioms for an action table
/// `act[a][s]` of `S` on the abelian Clifford semigroup `A`, where
/// `p: A → E(S)` is an idempotent-separating surjective homomorphism and
/// `0_e` is the idempotent of `A` over `e`.
pub fn check_s_module(a: &InverseSemigroup, s: &InverseSemigroup, support: &[Id], act: &[Vec<Id>]) -> Result<ModuleReport> {
    if !a.is_commutative() {
        return Err(Error::HomPreconditionFailed("carrier is not abelian".into()));
    }
    if act.len() != a.len() || act.iter().any(|row| row.len() != s.len() || row.iter().any(|&y| y >= a.len())) {
        return Err(Error::Malformed("action table does not match carrier and semigroup".into()));
    }
    let hom = check_homomorphism(a, s, support)?;
    if !(hom.is_hom && hom.is_idempotent_separating && s.idempotents().iter().all(|&e| support.contains(&e))) {
        return Err(Error::HomPreconditionFailed(
            "p must be an idempotent-separating surjective homomorphism".into(),
        ));
    }
    let mut zero = vec![UNDEF; s.len()];
    for &f in a.idempotents() {
        zero[support[f]] = f;
    }
    let (na, ns) = (a.len(), s.len());
    let idem = s.idempotents();
    let pairs = |n: usize, m: usize| (0..n).flat_map(move |i| (0..m).map(move |j| (i, j)));
    let endo = pairs(na * na, ns).find_map(|(c, x)| {
        let (a1, a2) = (c / na, c % na);
        (act[a.mul(a1, a2)][x] != a.mul(act[a1][x], act[a2][x])).then_some(ModuleFailure::Endomorphism { a1, a2, s: x })
    });
    let assoc = pairs(na, ns * ns).find_map(|(y, c)| {
        let (s1, s2) = (c / ns, c % ns);
        (act[act[y][s1]][s2] != act[y][s.mul(s1, s2)]).then_some(ModuleFailure::Associativity { a: y, s1, s2 })
    });
    let idem_action = pairs(na, idem.len()).find_map(|(y, i)| {
        let e = idem[i];
        (act[y][e] != a.mul(y, zero[e])).then_some(ModuleFailure::IdempotentAction { a: y, e })
    });
    let zero_conj = pairs(idem.len(), ns).find_map(|(i, x)| {
        let e = idem[i];
        (act[zero[e]][x] != zero[s.conj(e, x)]).then_some(ModuleFailure::ZeroConjugation { e, s: x })
    });
    let report = ModuleReport { failures: [endo, assoc, idem_action, zero_conj].into_iter().flatten().collect() };
    Ok(report)
}

/// Whether `(α, θ): A → B` is a homomorphism of supported actions, and
/// whether it is an isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionHomReport {
    pub is_hom: bool,
    pub is_iso: bool,
}

pub fn check_action_hom(a: &SupportedAction, b: &SupportedAction, alpha: &[Id], theta: &[Id]) -> ActionHomReport {
    let (s, t) = (a.semigroup(), b.semigroup());
    let typed = alpha.len() == a.len()
        && theta.len() == s.len()
        && alpha.iter().all(|&y| y < b.len())
        && theta.iter().all(|&u| u < t.len());
    if !typed {
        return ActionHomReport { is_hom: false, is_iso: false };
    }
    let theta_hom = (0..s.len()).all(|x| (0..s.len()).all(|y| theta[s.mul(x, y)] == t.mul(theta[x], theta[y])));
    let is_hom = theta_hom
        && (0..a.len()).all(|x| {
            b.support(alpha[x]) == theta[a.support(x)]
                && (0..s.len()).all(|u| alpha[a.act(x, u)] == b.act(alpha[x], theta[u]))
        });
    let bijective = |m: &[Id], n: usize| {
        let mut seen = vec![false; n];
        m.len() == n && m.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    };
    ActionHomReport { is_hom, is_iso: is_hom && bijective(alpha, b.len()) && bijective(theta, t.len()) }
}

/// The lexicographically least `α` making `(α, id_S)` an isomorphism of
/// two actions of the same semigroup.
pub fn find_action_isomorphism(a: &SupportedAction, b: &SupportedAction, limits: &Limits) -> Result<Option<Vec<Id>>> {
    check_cap("action carrier", a.len().max(b.len()), limits.max_generated)?;
    if a.semigroup() != b.semigroup() || a.len() != b.len() {
        return Ok(None);
    }
    fn assign(a: &SupportedAction, b: &SupportedAction, x: Id, y: Id, map: &mut [Id], used: &mut [bool], trail: &mut Vec<Id>) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if map[x] != UNDEF {
                if map[x] == y {
                    continue;
                }
                return false;
            }
            if used[y] || a.support(x) != b.support(y) {
                return false;
            }
            map[x] = y;
            used[y] = true;
            trail.push(x);
            for s in 0..a.semigroup().len() {
                queue.push((a.act(x, s), b.act(y, s)));
            }
        }
        true
    }
    fn rec(a: &SupportedAction, b: &SupportedAction, map: &mut Vec<Id>, used: &mut Vec<bool>) -> bool {
        let Some(x) = map.iter().position(|&y| y == UNDEF) else {
            return true;
        };
        for y in 0..b.len() {
            let mut trail = Vec::new();
            if assign(a, b, x, y, map, used, &mut trail) && rec(a, b, map, used) {
                return true;
            }
            for z in trail {
                used[map[z]] = false;
                map[z] = UNDEF;
            }
        }
        false
    }
    let mut map = vec![UNDEF; a.len()];
    let mut used = vec![false; b.len()];
    Ok(rec(a, b, &mut map, &mut used).then_some(map))
}

/// A group acting on a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub group: InverseSemigroup,
    /// `act[x][g] = x ∘ g`.
    pub act: Vec<Vec<Id>>,
}

/// A presheaf of group actions over `E`: one group action per level and,
/// for each `f ≤ e`, a pair `(φ^e_f, ψ^e_f)` of point map and group
/// homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupActionFamily {
    pub lattice: Semilattice,
    pub levels: Vec<GroupAction>,
    pub maps: BTreeMap<(Id, Id), (Vec<Id>, Vec<Id>)>,
}

fn group_identity(g: &InverseSemigroup) -> Id {
    g.idempotents()[0]
}

/// The action of the strong semilattice of groups `S = ⊔ G_e` on
/// `X = ⊔ X_e` given by `x·s = φ^e_{ef}(x) ∘ ψ^f_{ef}(s)` for `x ∈ X_e`,
/// `s ∈ G_f`. Ids of `S` and `X` run through the levels in lattice order.
pub fn strong_semilattice_action(family: &GroupActionFamily) -> Result<SupportedAction> {
    let lat = &family.lattice;
    let k = lat.len();
    if family.levels.len() != k {
        return Err(Error::NotFunctorial(format!("{} levels for {k} lattice elements", family.levels.len())));
    }
    for (e, level) in family.levels.iter().enumerate() {
        let g = &level.group;
        if !g.is_group() {
            return Err(Error::NotFunctorial(format!("level {e} is not a group")));
        }
        let one = group_identity(g);
        let ok = level.act.iter().all(|row| row.len() == g.len() && row.iter().all(|&y| y < level.act.len()))
            && (0..level.act.len()).all(|x| {
                level.act[x][one] == x
                    && (0..g.len()).all(|a| (0..g.len()).all(|b| level.act[level.act[x][a]][b] == level.act[x][g.mul(a, b)]))
            });
        if !ok {
            return Err(Error::NotFunctorial(format!("level {e} is not a group action")));
        }
    }
    let maps = |e: Id, f: Id| -> Result<(&Vec<Id>, &Vec<Id>)> {
        let (phi, psi) = family
            .maps
            .get(&(e, f))
            .ok_or_else(|| Error::NotFunctorial(format!("missing map {e} -> {f}")))?;
        let (src, dst) = (&family.levels[e], &family.levels[f]);
        if phi.len() != src.act.len()
            || psi.len() != src.group.len()
            || phi.iter().any(|&y| y >= dst.act.len())
            || psi.iter().any(|&h| h >= dst.group.len())
        {
            return Err(Error::NotFunctorial(format!("map {e} -> {f} is ill-typed")));
        }
        Ok((phi, psi))
    };
    for e in 0..k {
        let (phi, psi) = maps(e, e)?;
        if phi.iter().enumerate().any(|(i, &j)| i != j) || psi.iter().enumerate().any(|(i, &j)| i != j) {
            return Err(Error::NotFunctorial(format!("map {e} -> {e} is not the identity")));
        }
        for f in lat.down(e) {
            let (phi, psi) = maps(e, f)?;
            let (src, dst) = (&family.levels[e], &family.levels[f]);
            let (g, h) = (&src.group, &dst.group);
            let is_hom = (0..g.len()).all(|a| (0..g.len()).all(|b| psi[g.mul(a, b)] == h.mul(psi[a], psi[b])));
            let equivariant =
                (0..src.act.len()).all(|x| (0..g.len()).all(|a| phi[src.act[x][a]] == dst.act[phi[x]][psi[a]]));
            if !(is_hom && equivariant) {
                return Err(Error::NotFunctorial(format!("map {e} -> {f} is not a homomorphism of group actions")));
            }
            for l in lat.down(f) {
                let (phi2, psi2) = maps(f, l)?;
                let (phi3, psi3) = maps(e, l)?;
                if (0..phi.len()).any(|x| phi2[phi[x]] != phi3[x]) || (0..psi.len()).any(|a| psi2[psi[a]] != psi3[a]) {
                    return Err(Error::NotFunctorial(format!("maps {e} -> {f} -> {l} do not compose")));
                }
            }
        }
    }
    let offsets = |sizes: Vec<usize>| -> Vec<usize> {
        std::iter::once(0).chain(sizes.iter().scan(0, |acc, &n| {
            *acc += n;
            Some(*acc)
        })).collect()
    };
    let g_off = offsets(family.levels.iter().map(|l| l.group.len()).collect());
    let x_off = offsets(family.levels.iter().map(|l| l.act.len()).collect());
    let level_of = |off: &[usize], id: Id| off.partition_point(|&o| o <= id) - 1;
    let n = g_off[k];
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let e = level_of(&g_off, a);
        for b in 0..n {
            let f = level_of(&g_off, b);
            let m = lat.meet(e, f);
            let u = family.maps[&(e, m)].1[a - g_off[e]];
            let v = family.maps[&(f, m)].1[b - g_off[f]];
            table.push(g_off[m] + family.levels[m].group.mul(u, v));
        }
    }
    let s = InverseSemigroup::from_flat(n, table)?;
    let m = x_off[k];
    let support = (0..m)
        .map(|x| {
            let e = level_of(&x_off, x);
            g_off[e] + group_identity(&family.levels[e].group)
        })
        .collect();
    let act = (0..m)
        .map(|x| {
            let e = level_of(&x_off, x);
            (0..n)
                .map(|a| {
                    let f = level_of(&g_off, a);
                    let l = lat.meet(e, f);
                    let y = family.maps[&(e, l)].0[x - x_off[e]];
                    let u = family.maps[&(f, l)].1[a - g_off[f]];
                    x_off[l] + family.levels[l].act[y][u]
                })
                .collect()
        })
        .collect();
    SupportedAction::new(s, support, act)
}

/// Splits an action of a Clifford semigroup into its presheaf of group
/// actions: `G_e = {s : d(s) = e}`, `X_e = p⁻¹(e)`, `φ^e_f(x) = x·f`,
/// `ψ^e_f(s) = sf`.
pub fn decompose_clifford_action(a: &SupportedAction) -> Result<GroupActionFamily> {
    let s = a.semigroup();
    if !s.is_clifford() {
        return Err(Error::NotFunctorial("acting semigroup is not Clifford".into()));
    }
    let idem = s.idempotents();
    let lattice = Semilattice::of_idempotents(s);
    let groups: Vec<Vec<Id>> = idem.iter().map(|&e| (0..s.len()).filter(|&g| s.d(g) == e).collect()).collect();
    let points: Vec<Vec<Id>> = idem.iter().map(|&e| (0..a.len()).filter(|&x| a.support(x) == e).collect()).collect();
    let local = |list: &[Id], id: Id| list.binary_search(&id).expect("member of its level");
    let levels = (0..idem.len())
        .map(|e| {
            let g = &groups[e];
            let rows = g.iter().map(|&u| g.iter().map(|&v| local(g, s.mul(u, v))).collect()).collect();
            let act = points[e].iter().map(|&x| g.iter().map(|&u| local(&points[e], a.act(x, u))).collect()).collect();
            Ok(GroupAction { group: InverseSemigroup::new(rows)?, act })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut maps = BTreeMap::new();
    for e in 0..idem.len() {
        for f in lattice.down(e) {
            let phi = points[e].iter().map(|&x| local(&points[f], a.act(x, idem[f]))).collect();
            let psi = groups[e].iter().map(|&u| local(&groups[f], s.mul(u, idem[f]))).collect();
            maps.insert((e, f), (phi, psi));
        }
    }
    Ok(GroupActionFamily { lattice, levels, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{enumerate_congruences, mu};
    use crate::zoo::{chain, clifford_z2_over_one, cyclic_group, symmetric_inverse};

    #[test]
    fn standard_actions_validate() {
        let i2 = symmetric_inverse(2).unwrap();
        let conj = conjugation_action(&i2);
        assert_eq!(conj.len(), 4);
        assert!(conj.is_global());
        assert!(characteristic_congruence(&conj).is_equality());
        let reg = right_regular_action(&i2);
        assert_eq!(reg.len(), 7);
        assert!(reg.is_global() && characteristic_congruence(&reg).is_equality());
        let g = cyclic_group(3);
        let c = conjugation_action(&g);
        assert_eq!(c.len(), 1);
        assert!(characteristic_congruence(&c).is_universal());
    }

    #[test]
    fn broken_sa3_detected() {
        let s = chain(2);
        let a = right_regular_action(&s);
        let mut support = a.supports().to_vec();
        support.swap(0, 1);
        let err = SupportedAction::new(s, support, a.rows()).unwrap_err();
        assert!(matches!(err, Error::Sa2Violation(_) | Error::Sa3Violation { .. } | Error::Sa1Violation { .. }));
    }

    #[test]
    fn quotient_actions_recover_congruence() {
        let s = symmetric_inverse(2).unwrap();
        for rho in enumerate_congruences(&s, &Limits::default()).unwrap() {
            match quotient_action(&s, &rho) {
                Ok(a) => {
                    assert!(a.is_global());
                    assert_eq!(characteristic_congruence(&a), rho);
                }
                Err(e) => assert!(matches!(e, Error::NotIdempotentSeparating(..))),
            }
        }
        let eq = quotient_action(&s, &Congruence::equality(7)).unwrap();
        assert_eq!(eq, right_regular_action(&s));
    }

    #[test]
    fn clifford_quotient_by_mu_is_conjugation() {
        let s = clifford_z2_over_one();
        let a = quotient_action(&s, &mu(&s)).unwrap();
        assert_eq!(a.len(), s.idempotents().len());
        assert!(find_action_isomorphism(&a, &conjugation_action(&s), &Limits::default()).unwrap().is_some());
    }

    #[test]
    fn free_action_sizes() {
        let i2 = symmetric_inverse(2).unwrap();
        let conj = conjugation_action(&i2).restrict_to_idempotents();
        let (free, pairs) = free_action(&i2, &conj).unwrap();
        assert_eq!(free.len(), 7);
        assert!(pairs.iter().all(|&(t, x)| i2.idempotents()[x] == i2.r(t)));
        let g = cyclic_group(4);
        let point = conjugation_action(&g).restrict_to_idempotents();
        let (fg, _) = free_action(&g, &point).unwrap();
        assert!(find_action_isomorphism(&fg, &right_regular_action(&g), &Limits::default()).unwrap().is_some());
        let wrong = conjugation_action(&chain(2)).restrict_to_idempotents();
        assert_eq!(free_action(&g, &wrong).unwrap_err(), Error::LatticeMismatch);
    }

    fn z4_to_z2() -> (InverseSemigroup, InverseSemigroup, Vec<Id>) {
        (cyclic_group(4), cyclic_group(2), vec![0, 1, 0, 1])
    }

    #[test]
    fn extension_action_of_z4() {
        let (t, s, j) = z4_to_z2();
        let a = extension_action(&t, &s, &j, None).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a.rows().iter().enumerate().all(|(x, row)| row.iter().all(|&y| y == x)));
        let b = extension_action(&t, &s, &j, Some(&[2, 3])).unwrap();
        assert_eq!(a.rows(), b.rows());
        assert_eq!(extension_action(&t, &s, &j, Some(&[1, 3])).unwrap_err(), Error::NotSection(0));
        let id: Vec<Id> = (0..4).collect();
        let same = extension_action(&t, &t, &id, None).unwrap();
        assert_eq!(same.len(), 1);
    }

    #[test]
    fn module_axioms() {
        let (t, s, j) = z4_to_z2();
        let a = extension_action(&t, &s, &j, None).unwrap();
        let kernel = cyclic_group(2);
        assert!(check_s_module(&kernel, &s, a.supports(), &a.rows()).unwrap().passes());

        let e = chain(3);
        let id: Vec<Id> = (0..3).collect();
        let rows = e.rows();
        assert!(check_s_module(&e, &e, &id, &rows).unwrap().passes());
        let mut broken = rows.clone();
        broken[2][1] = 2;
        let report = check_s_module(&e, &e, &id, &broken).unwrap();
        assert!(report.failures.contains(&ModuleFailure::IdempotentAction { a: 2, e: 1 }));
    }

    #[test]
    fn action_homs() {
        let s = symmetric_inverse(2).unwrap();
        let reg = right_regular_action(&s);
        let conj = conjugation_action(&s);
        let pos = idempotent_positions(&s);
        let p: Vec<Id> = reg.supports().iter().map(|&e| pos[e]).collect();
        let id: Vec<Id> = (0..s.len()).collect();
        assert!(check_action_hom(&reg, &conj, &p, &id).is_hom);
        let ident: Vec<Id> = (0..7).collect();
        assert!(check_action_hom(&reg, &reg, &ident, &id).is_iso);
        assert!(!check_action_hom(&reg, &reg, &[0; 7], &id).is_hom);
    }

    #[test]
    fn strong_semilattice_round_trip() {
        let s = clifford_z2_over_one();
        let a = right_regular_action(&s);
        let family = decompose_clifford_action(&a).unwrap();
        let b = strong_semilattice_action(&family).unwrap();
        assert!(b.semigroup().is_clifford());
        assert_eq!(decompose_clifford_action(&b).unwrap(), family);
        let mut bad = family.clone();
        bad.maps.get_mut(&(1, 0)).unwrap().1 = vec![0, 0];
        bad.maps.get_mut(&(1, 1)).unwrap().1 = vec![1, 0];
        assert!(matches!(strong_semilattice_action(&bad), Err(Error::NotFunctorial(_))));
    }

    #[test]
    fn orbits_and_subactions() {
        let c = chain(3);
        let reg = right_regular_action(&c);
        assert_eq!(reg.orbit(1), vec![0, 1]);
        assert_eq!(reg.orbit(2), vec![0, 1, 2]);
        let sub = reg.subaction(&[0, 1]).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(sub.supports(), &[0, 1]);
        assert_eq!(sub.act(1, 2), 1);
        assert!(!sub.is_global());
        assert!(matches!(reg.subaction(&[1]), Err(Error::Malformed(_))));
    }
}
