//! Meet-semilattices, presheaves over them in supported-action form,
//! subpresheaves and their isomorphisms.

use std::collections::BTreeMap;

use crate::error::{check_cap, Error, Result};
use crate::partial::{PartialBijection, UNDEF};
use crate::{Id, InverseSemigroup, Limits};

/// A finite meet-semilattice with its order cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    s: InverseSemigroup,
    leq: Vec<bool>,
}

impl Semilattice {
    pub fn new(s: InverseSemigroup) -> Result<Self> {
        let n = s.len();
        if let Some(bad) = (0..n).find(|&e| !s.is_idempotent(e) || (0..n).any(|f| s.mul(e, f) != s.mul(f, e))) {
            return Err(Error::NotASemilattice(bad));
        }
        let leq = (0..n * n).map(|i| s.mul(i / n, i % n) == i / n).collect();
        Ok(Semilattice { s, leq })
    }

    pub fn from_rows(rows: Vec<Vec<Id>>) -> Result<Self> {
        Self::new(InverseSemigroup::new(rows)?)
    }

    /// `E(S)` relabelled densely: lattice id `i` is `S.idempotents()[i]`.
    pub fn of_idempotents(s: &InverseSemigroup) -> Self {
        let idem = s.idempotents();
        let pos = idempotent_positions(s);
        let rows = idem.iter().map(|&e| idem.iter().map(|&f| pos[s.mul(e, f)]).collect()).collect();
        Self::from_rows(rows).expect("idempotents of an inverse semigroup form a semilattice")
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn semigroup(&self) -> &InverseSemigroup {
        &self.s
    }

    #[inline]
    pub fn meet(&self, e: Id, f: Id) -> Id {
        self.s.mul(e, f)
    }

    #[inline]
    pub fn leq(&self, e: Id, f: Id) -> bool {
        self.leq[e * self.s.len() + f]
    }

    /// `e↓`, ascending.
    pub fn down(&self, e: Id) -> Vec<Id> {
        (0..self.len()).filter(|&f| self.leq(f, e)).collect()
    }

    pub fn top(&self) -> Option<Id> {
        (0..self.len()).find(|&e| (0..self.len()).all(|f| self.leq(f, e)))
    }

    pub fn is_meet_closed(&self, set: &[Id]) -> bool {
        set.iter().all(|&e| set.iter().all(|&f| set.contains(&self.meet(e, f))))
    }

    /// Smallest meet-closed superset, ascending.
    pub fn meet_closure(&self, set: &[Id]) -> Vec<Id> {
        let mut member = vec![false; self.len()];
        let mut out: Vec<Id> = Vec::new();
        for &e in set {
            if !member[e] {
                member[e] = true;
                out.push(e);
            }
        }
        let mut i = 0;
        while i < out.len() {
            for j in 0..=i {
                let m = self.meet(out[i], out[j]);
                if !member[m] {
                    member[m] = true;
                    out.push(m);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }
}

/// `pos[e]` is the lattice id of idempotent `e` (and `UNDEF` elsewhere).
pub fn idempotent_positions(s: &InverseSemigroup) -> Vec<Id> {
    let mut pos = vec![UNDEF; s.len()];
    for (i, &e) in s.idempotents().iter().enumerate() {
        pos[e] = i;
    }
    pos
}

/// A presheaf over `E` in supported-action form `(X, E, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    lattice: Semilattice,
    support: Vec<Id>,
    act: Vec<Id>,
}

impl Presheaf {
    /// `act[x][e] = x·e`. Axioms are checked in the order SA1, SA2, SA3.
    pub fn new(lattice: Semilattice, support: Vec<Id>, act: Vec<Vec<Id>>) -> Result<Self> {
        let (m, k) = (support.len(), lattice.len());
        if act.len() != m {
            return Err(Error::Malformed(format!("action has {} rows, expected {m}", act.len())));
        }
        if let Some(&bad) = support.iter().find(|&&e| e >= k) {
            return Err(Error::OutOfRange { id: bad, size: k });
        }
        let mut flat = Vec::with_capacity(m * k);
        for (x, row) in act.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::Malformed(format!("action row {x} has {} entries, expected {k}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&y| y >= m) {
                return Err(Error::OutOfRange { id: bad, size: m });
            }
            flat.extend(row);
        }
        let p = Presheaf { lattice, support, act: flat };
        for x in 0..m {
            for e in 0..k {
                for f in 0..k {
                    if p.act(p.act(x, e), f) != p.act(x, p.lattice.meet(e, f)) {
                        return Err(Error::Sa1Violation { x, s: e, t: f });
                    }
                }
            }
        }
        if let Some(x) = (0..m).find(|&x| p.act(x, p.support[x]) != x) {
            return Err(Error::Sa2Violation(x));
        }
        for x in 0..m {
            for e in 0..k {
                if p.support[p.act(x, e)] != p.lattice.meet(p.support[x], e) {
                    return Err(Error::Sa3Violation { x, s: e });
                }
            }
        }
        Ok(p)
    }

    /// `(E, E, id)`: the semilattice acting on itself by meet.
    pub fn of_semilattice(lattice: &Semilattice) -> Self {
        let k = lattice.len();
        let act = (0..k).flat_map(|e| (0..k).map(move |f| (e, f))).map(|(e, f)| lattice.meet(e, f)).collect();
        Presheaf { lattice: lattice.clone(), support: (0..k).collect(), act }
    }

    pub fn lattice(&self) -> &Semilattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    #[inline]
    pub fn act(&self, x: Id, e: Id) -> Id {
        self.act[x * self.lattice.len() + e]
    }

    #[inline]
    pub fn support(&self, x: Id) -> Id {
        self.support[x]
    }

    pub fn supports(&self) -> &[Id] {
        &self.support
    }

    pub fn rows(&self) -> Vec<Vec<Id>> {
        let k = self.lattice.len();
        (0..self.len()).map(|x| self.act[x * k..(x + 1) * k].to_vec()).collect()
    }

    /// `p` is surjective.
    pub fn is_global(&self) -> bool {
        let mut hit = vec![false; self.lattice.len()];
        for &e in &self.support {
            hit[e] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `X_e = p⁻¹(e)`, ascending.
    pub fn fiber(&self, e: Id) -> Vec<Id> {
        (0..self.len()).filter(|&x| self.support[x] == e).collect()
    }

    /// Steinberg order: `x ≤ y` iff `x = y·p(x)`.
    pub fn steinberg_leq(&self, x: Id, y: Id) -> bool {
        self.act(y, self.support[x]) == x
    }

    pub fn is_order_ideal(&self, set: &[Id]) -> bool {
        let member = membership(self.len(), set);
        set.iter().all(|&y| (0..self.len()).all(|x| !self.steinberg_leq(x, y) || member[x]))
    }

    /// Closed under the action of `E`.
    pub fn is_subaction(&self, set: &[Id]) -> bool {
        let member = membership(self.len(), set);
        set.iter().all(|&y| (0..self.lattice.len()).all(|e| member[self.act(y, e)]))
    }

    /// `(X·e, e↓)`.
    pub fn principal(&self, e: Id) -> Subpresheaf {
        Subpresheaf {
            ideal: (0..self.len()).filter(|&x| self.lattice.leq(self.support[x], e)).collect(),
            sublattice: self.lattice.down(e),
        }
    }

    /// The whole presheaf as a subpresheaf of itself.
    pub fn whole(&self) -> Subpresheaf {
        Subpresheaf { ideal: (0..self.len()).collect(), sublattice: (0..self.lattice.len()).collect() }
    }

    /// A subpresheaf with `F` the meet-closure of `p(Y)`.
    pub fn subpresheaf(&self, ideal: &[Id]) -> Result<Subpresheaf> {
        let supports: Vec<Id> = ideal.iter().map(|&y| self.support[y]).collect();
        self.subpresheaf_with(ideal, &self.lattice.meet_closure(&supports))
    }

    pub fn subpresheaf_with(&self, ideal: &[Id], sublattice: &[Id]) -> Result<Subpresheaf> {
        let mut ideal = ideal.to_vec();
        let mut sublattice = sublattice.to_vec();
        ideal.sort_unstable();
        ideal.dedup();
        sublattice.sort_unstable();
        sublattice.dedup();
        if let Some(&bad) = ideal.iter().find(|&&y| y >= self.len()) {
            return Err(Error::OutOfRange { id: bad, size: self.len() });
        }
        if let Some(&bad) = sublattice.iter().find(|&&e| e >= self.lattice.len()) {
            return Err(Error::OutOfRange { id: bad, size: self.lattice.len() });
        }
        if !self.is_order_ideal(&ideal) {
            return Err(Error::NotASubpresheaf("carrier subset is not an order-ideal".into()));
        }
        if !self.lattice.is_meet_closed(&sublattice) {
            return Err(Error::NotASubpresheaf("sublattice is not meet-closed".into()));
        }
        if let Some(&y) = ideal.iter().find(|&&y| sublattice.binary_search(&self.support[y]).is_err()) {
            return Err(Error::NotASubpresheaf(format!("support of {y} is outside the sublattice")));
        }
        Ok(Subpresheaf { ideal, sublattice })
    }

    /// The presheaf on an action-closed subset `Y`, over the same `E`;
    /// new id `i` is `ideal[i]`.
    pub fn restrict_to(&self, ideal: &[Id]) -> Result<Presheaf> {
        if !self.is_subaction(ideal) {
            return Err(Error::NotASubpresheaf("subset is not closed under the action".into()));
        }
        let mut pos = vec![UNDEF; self.len()];
        for (i, &y) in ideal.iter().enumerate() {
            pos[y] = i;
        }
        let k = self.lattice.len();
        let act = ideal.iter().map(|&y| (0..k).map(|e| pos[self.act(y, e)]).collect()).collect();
        Presheaf::new(self.lattice.clone(), ideal.iter().map(|&y| self.support[y]).collect(), act)
    }

    /// Splits into fibers and restriction maps. The fiber of `e` lists the
    /// carrier ids over `e` ascending; local indices are positions there.
    pub fn to_family(&self) -> Family {
        let k = self.lattice.len();
        let fibers: Vec<Vec<Id>> = (0..k).map(|e| self.fiber(e)).collect();
        let mut local = vec![0; self.len()];
        for fiber in &fibers {
            for (i, &x) in fiber.iter().enumerate() {
                local[x] = i;
            }
        }
        let mut restriction = BTreeMap::new();
        for (e, fiber) in fibers.iter().enumerate() {
            for f in self.lattice.down(e) {
                restriction.insert((e, f), fiber.iter().map(|&x| local[self.act(x, f)]).collect());
            }
        }
        Family { lattice: self.lattice.clone(), sizes: fibers.iter().map(Vec::len).collect(), restriction }
    }

    /// Assembles `X = ⊔ X_e` with `x·f = φ^e_{ef}(x)`. Carrier ids run
    /// through the fibers in lattice order.
    pub fn from_family(family: &Family) -> Result<Self> {
        let lat = &family.lattice;
        let k = lat.len();
        if family.sizes.len() != k {
            return Err(Error::Malformed(format!("{} fibers for {k} lattice elements", family.sizes.len())));
        }
        let phi = |e: Id, f: Id| -> Result<&Vec<usize>> {
            let map = family
                .restriction
                .get(&(e, f))
                .ok_or_else(|| Error::Malformed(format!("missing restriction map {e} -> {f}")))?;
            if map.len() != family.sizes[e] {
                return Err(Error::Malformed(format!("restriction {e} -> {f} has wrong length")));
            }
            if let Some(&bad) = map.iter().find(|&&y| y >= family.sizes[f]) {
                return Err(Error::OutOfRange { id: bad, size: family.sizes[f] });
            }
            Ok(map)
        };
        if let Some(&(e, f)) = family.restriction.keys().find(|&&(e, f)| e >= k || f >= k || !lat.leq(f, e)) {
            return Err(Error::Malformed(format!("restriction map {e} -> {f} between incomparable elements")));
        }
        for e in 0..k {
            if phi(e, e)?.iter().enumerate().any(|(i, &j)| i != j) {
                return Err(Error::RestrictionNotFunctorial { e, f: e, g: e });
            }
            for f in lat.down(e) {
                let ef = phi(e, f)?;
                for g in lat.down(f) {
                    let fg = phi(f, g)?;
                    let eg = phi(e, g)?;
                    if (0..family.sizes[e]).any(|i| fg[ef[i]] != eg[i]) {
                        return Err(Error::RestrictionNotFunctorial { e, f, g });
                    }
                }
            }
        }
        let mut offset = vec![0; k + 1];
        for e in 0..k {
            offset[e + 1] = offset[e] + family.sizes[e];
        }
        let mut support = Vec::with_capacity(offset[k]);
        let mut act = Vec::with_capacity(offset[k]);
        for e in 0..k {
            for i in 0..family.sizes[e] {
                support.push(e);
                act.push(
                    (0..k)
                        .map(|f| {
                            let g = lat.meet(e, f);
                            offset[g] + family.restriction[&(e, g)][i]
                        })
                        .collect(),
                );
            }
        }
        Presheaf::new(lat.clone(), support, act)
    }
}

/// Family form of a presheaf: fiber sizes and restriction maps
/// `restriction[(e, f)]: X_e → X_f` for `f ≤ e`, on local indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub lattice: Semilattice,
    pub sizes: Vec<usize>,
    pub restriction: BTreeMap<(Id, Id), Vec<usize>>,
}

/// `(Y, F)` with `Y` an order-ideal, `F` meet-closed and `p(Y) ⊆ F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subpresheaf {
    pub ideal: Vec<Id>,
    pub sublattice: Vec<Id>,
}

/// An isomorphism of subpresheaves: `α` on the carrier, `θ` on `E`, with
/// `p∘α = θ∘p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairIso {
    pub alpha: PartialBijection,
    pub theta: PartialBijection,
}

impl PairIso {
    pub fn identity(p: &Presheaf, sub: &Subpresheaf) -> Self {
        PairIso {
            alpha: PartialBijection::identity_on(p.len(), sub.ideal.iter().copied()),
            theta: PartialBijection::identity_on(p.lattice().len(), sub.sublattice.iter().copied()),
        }
    }

    /// `self ∘ first`, componentwise.
    pub fn after(&self, first: &PairIso) -> Self {
        PairIso { alpha: self.alpha.after(&first.alpha), theta: self.theta.after(&first.theta) }
    }

    pub fn inverse(&self) -> Self {
        PairIso { alpha: self.alpha.inverse(), theta: self.theta.inverse() }
    }
}

fn membership(n: usize, set: &[Id]) -> Vec<bool> {
    let mut member = vec![false; n];
    for &x in set {
        member[x] = true;
    }
    member
}

/// All isomorphisms `A → B` between subpresheaves of `P`, sorted by `α`
/// then `θ`.
pub fn subpresheaf_isomorphisms(p: &Presheaf, a: &Subpresheaf, b: &Subpresheaf, limits: &Limits) -> Result<Vec<PairIso>> {
    isomorphisms_between(p, a, p, b, limits)
}

/// All isomorphisms from a subpresheaf of `P` to one of `Q`. Both carriers
/// and both lattices must have the same size.
pub fn isomorphisms_between(
    p: &Presheaf,
    a: &Subpresheaf,
    q: &Presheaf,
    b: &Subpresheaf,
    limits: &Limits,
) -> Result<Vec<PairIso>> {
    check_cap("subpresheaf", a.ideal.len().max(b.ideal.len()), limits.max_size)?;
    check_cap("sublattice", a.sublattice.len().max(b.sublattice.len()), limits.max_size)?;
    if p.len() != q.len() || p.lattice().len() != q.lattice().len() {
        return Err(Error::Malformed("presheaves of different sizes".into()));
    }
    let mut out = Vec::new();
    if a.ideal.len() != b.ideal.len() || a.sublattice.len() != b.sublattice.len() {
        return Ok(out);
    }
    for theta in order_isomorphisms(p.lattice(), &a.sublattice, q.lattice(), &b.sublattice) {
        carrier_isomorphisms(p, a, q, b, &theta, &mut out);
        check_cap("subpresheaf isomorphisms", out.len(), limits.max_generated)?;
    }
    out.sort();
    Ok(out)
}

/// Order-isomorphisms between subsets of two semilattices.
pub(crate) fn order_isomorphisms(el: &Semilattice, src: &[Id], fl: &Semilattice, dst: &[Id]) -> Vec<PartialBijection> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        el: &Semilattice,
        src: &[Id],
        fl: &Semilattice,
        dst: &[Id],
        map: &mut Vec<Id>,
        used: &mut [bool],
        out: &mut Vec<PartialBijection>,
    ) {
        if i == src.len() {
            out.push(PartialBijection::from_pairs(el.len(), src.iter().copied().zip(map.iter().copied())));
            return;
        }
        let e = src[i];
        for (j, &f) in dst.iter().enumerate() {
            let fits = !used[j]
                && (0..i).all(|h| {
                    let (e2, f2) = (src[h], map[h]);
                    el.leq(e, e2) == fl.leq(f, f2) && el.leq(e2, e) == fl.leq(f2, f)
                });
            if fits {
                used[j] = true;
                map.push(f);
                rec(i + 1, el, src, fl, dst, map, used, out);
                map.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    if src.len() == dst.len() {
        rec(0, el, src, fl, dst, &mut Vec::new(), &mut vec![false; dst.len()], &mut out);
    }
    out
}

/// Extends a fixed `θ` to all compatible `α`. Maximal elements of `A` are
/// matched first; everything below is forced by `α(y·e) = α(y)·θ(e)`.
fn carrier_isomorphisms(
    p: &Presheaf,
    a: &Subpresheaf,
    q: &Presheaf,
    b: &Subpresheaf,
    theta: &PartialBijection,
    out: &mut Vec<PairIso>,
) {
    let maximal = |pr: &Presheaf, set: &[Id]| -> Vec<Id> {
        set.iter()
            .copied()
            .filter(|&x| !set.iter().any(|&y| y != x && pr.steinberg_leq(x, y)))
            .collect()
    };
    let a_max = maximal(p, &a.ideal);
    let b_max = maximal(q, &b.ideal);
    if a_max.len() != b_max.len() {
        return;
    }
    let below: Vec<Vec<Id>> =
        a_max.iter().map(|&m| a.ideal.iter().copied().filter(|&y| p.steinberg_leq(y, m)).collect()).collect();

    struct St<'a> {
        p: &'a Presheaf,
        q: &'a Presheaf,
        theta: &'a PartialBijection,
        alpha: Vec<Id>,
        preimage: Vec<Id>,
        trail: Vec<Id>,
    }
    impl St<'_> {
        fn set(&mut self, y: Id, z: Id) -> bool {
            match self.alpha[y] {
                UNDEF if self.preimage[z] == UNDEF => {
                    self.alpha[y] = z;
                    self.preimage[z] = y;
                    self.trail.push(y);
                    true
                }
                x => x == z,
            }
        }
        fn undo(&mut self, mark: usize) {
            while self.trail.len() > mark {
                let y = self.trail.pop().unwrap();
                self.preimage[self.alpha[y]] = UNDEF;
                self.alpha[y] = UNDEF;
            }
        }
    }
    fn rec(
        i: usize,
        st: &mut St<'_>,
        a_max: &[Id],
        b_max: &[Id],
        below: &[Vec<Id>],
        a: &Subpresheaf,
        out: &mut Vec<PairIso>,
    ) {
        if i == a_max.len() {
            let ok = a.ideal.iter().all(|&y1| {
                a.ideal.iter().all(|&y2| st.p.steinberg_leq(y1, y2) == st.q.steinberg_leq(st.alpha[y1], st.alpha[y2]))
            });
            if ok {
                out.push(PairIso { alpha: PartialBijection::from_vec(st.alpha.clone()), theta: st.theta.clone() });
            }
            return;
        }
        let m = a_max[i];
        let target_support = st.theta.get(st.p.support(m));
        for &z in b_max {
            if Some(st.q.support(z)) != target_support {
                continue;
            }
            let mark = st.trail.len();
            let consistent = below[i].iter().all(|&y| match st.theta.get(st.p.support(y)) {
                Some(g) => {
                    let w = st.q.act(z, g);
                    st.set(y, w)
                }
                None => false,
            });
            if consistent {
                rec(i + 1, st, a_max, b_max, below, a, out);
            }
            st.undo(mark);
        }
    }
    let mut st = St {
        p,
        q,
        theta,
        alpha: vec![UNDEF; p.len()],
        preimage: vec![UNDEF; q.len()],
        trail: Vec::new(),
    };
    rec(0, &mut st, &a_max, &b_max, &below, a, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `E = {0 < f < e}` as ids 0, 1, 2 and the six-point presheaf
    /// `e1 e2 e3 f1 f2 0` = ids 0..6.
    pub(crate) fn chain3() -> Semilattice {
        Semilattice::from_rows(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]).unwrap()
    }

    fn six_point() -> Presheaf {
        let e = chain3();
        let support = vec![2, 2, 2, 1, 1, 0];
        let act = vec![
            vec![5, 3, 0],
            vec![5, 3, 1],
            vec![5, 4, 2],
            vec![5, 3, 3],
            vec![5, 4, 4],
            vec![5, 5, 5],
        ];
        Presheaf::new(e, support, act).unwrap()
    }

    #[test]
    fn semilattice_checks() {
        let e = chain3();
        assert!(e.leq(0, 2) && !e.leq(2, 1));
        assert_eq!(e.top(), Some(2));
        assert_eq!(e.down(1), vec![0, 1]);
        let group = InverseSemigroup::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(Semilattice::new(group).unwrap_err(), Error::NotASemilattice(1));
    }

    #[test]
    fn validates_and_breaks() {
        let p = six_point();
        assert_eq!(p.len(), 6);
        let mut rows = p.rows();
        rows[3][1] = 4; // f1·f = f2
        let err = Presheaf::new(chain3(), p.supports().to_vec(), rows).unwrap_err();
        assert!(matches!(err, Error::Sa1Violation { .. } | Error::Sa2Violation(3)));
        let mut rows = p.rows();
        rows[5][0] = 3;
        assert!(Presheaf::new(chain3(), p.supports().to_vec(), rows).is_err());
        assert_eq!(Presheaf::of_semilattice(&chain3()).len(), 3);
    }

    #[test]
    fn steinberg_order_matches_existential_form() {
        let p = six_point();
        for x in 0..6 {
            for y in 0..6 {
                let exists = (0..3).any(|e| p.act(y, e) == x);
                assert_eq!(p.steinberg_leq(x, y), exists, "{x} {y}");
            }
        }
        assert!(p.steinberg_leq(3, 0) && p.steinberg_leq(3, 1) && p.steinberg_leq(4, 2));
        assert!(!p.steinberg_leq(4, 0));
    }

    #[test]
    fn principal_subpresheaves() {
        let p = six_point();
        let pf = p.principal(1);
        assert_eq!(pf.ideal, vec![3, 4, 5]);
        assert_eq!(pf.sublattice, vec![0, 1]);
        assert_eq!(p.principal(2).ideal.len(), 6);
        assert!(p.is_order_ideal(&pf.ideal));
        assert!(!p.is_order_ideal(&[0]));
    }

    #[test]
    fn isomorphism_counts() {
        let p = six_point();
        let l = Limits::default();
        let iso = |e, f| subpresheaf_isomorphisms(&p, &p.principal(e), &p.principal(f), &l).unwrap();
        assert_eq!(iso(0, 0).len(), 1);
        let top = iso(2, 2);
        assert_eq!(top.len(), 2);
        assert!(top[0].alpha.is_identity());
        assert_eq!(top[1].alpha.as_slice(), &[1, 0, 2, 3, 4, 5]);
        assert_eq!(iso(1, 1).len(), 2);
        assert!(iso(2, 1).is_empty());
    }

    #[test]
    fn family_round_trip() {
        let p = six_point();
        let fam = p.to_family();
        assert_eq!(fam.sizes, vec![1, 2, 3]);
        let q = Presheaf::from_family(&fam).unwrap();
        // carrier reordered by fiber: 0 | f1 f2 | e1 e2 e3
        let order = [5, 3, 4, 0, 1, 2];
        for (i, &x) in order.iter().enumerate() {
            assert_eq!(q.support(i), p.support(x));
            for e in 0..3 {
                assert_eq!(order[q.act(i, e)], p.act(x, e));
            }
        }
        let mut broken = fam.clone();
        broken.restriction.insert((2, 2), vec![1, 0, 2]);
        assert_eq!(Presheaf::from_family(&broken).unwrap_err(), Error::RestrictionNotFunctorial { e: 2, f: 2, g: 2 });
    }

    #[test]
    fn restriction_to_subaction() {
        let p = six_point();
        let y = p.restrict_to(&[0, 1, 3, 4, 5]).unwrap();
        assert_eq!(y.len(), 5);
        assert!(p.restrict_to(&[0, 5]).is_err());
    }
}
