//! Finite topological spaces, their partial homeomorphisms, étale bundles
//! and the topologies induced by supported actions.
//!
//! Points are `0..m` with `m ≤ 32`; an open set is a `u32` bitset.

mod bundle;
mod order_ideal;

pub use bundle::{
    injective_opens, la_action, la_semigroup, section_images_form_basis, sections, sections_presheaf, theorem_f_check,
    validate_bundle, EtaleBundle, LaElement, Section, TheoremFReport,
};
pub use order_ideal::{compatible_order_ideals, order_ideal_topology, OrderIdealBundle};

use crate::congruence::is_fundamental;
use crate::error::{check_cap, Error, Result};
use crate::hom::check_homomorphism;
use crate::munn::munn_semigroup;
use crate::partial::{table_from_elements, PartialBijection, UNDEF};
use crate::presheaf::{PairIso, Semilattice};
use crate::{Id, InverseSemigroup, Limits};

/// Members of a bitset, ascending.
pub fn members(set: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| set >> i & 1 == 1)
}

/// A finite space: opens sorted ascending as integers, so `∅` is first and
/// the whole space is last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    points: usize,
    opens: Vec<u32>,
}

impl FiniteSpace {
    pub fn new(points: usize, mut opens: Vec<u32>) -> Result<Self> {
        check_cap("space", points, 32)?;
        let full = full_set(points);
        if let Some(&bad) = opens.iter().find(|&&u| u & !full != 0) {
            return Err(Error::OutOfRange { id: 31 - bad.leading_zeros() as usize, size: points });
        }
        opens.sort_unstable();
        opens.dedup();
        if opens.first() != Some(&0) || opens.last() != Some(&full) {
            return Err(Error::MissingEmptyOrFull);
        }
        for (i, &u) in opens.iter().enumerate() {
            for &v in &opens[i + 1..] {
                if opens.binary_search(&(u | v)).is_err() {
                    return Err(Error::NotClosedUnderUnion(u, v));
                }
                if opens.binary_search(&(u & v)).is_err() {
                    return Err(Error::NotClosedUnderIntersection(u, v));
                }
            }
        }
        Ok(FiniteSpace { points, opens })
    }

    pub fn discrete(points: usize) -> Self {
        FiniteSpace::new(points, (0..=full_set(points)).collect()).expect("discrete topology")
    }

    pub fn indiscrete(points: usize) -> Self {
        FiniteSpace::new(points, vec![0, full_set(points)]).expect("indiscrete topology")
    }

    /// `{0, 1}` with opens `∅, {0}, {0, 1}`.
    pub fn sierpinski() -> Self {
        FiniteSpace::new(2, vec![0, 1, 3]).expect("Sierpinski space")
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn full(&self) -> u32 {
        full_set(self.points)
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    pub fn is_open(&self, set: u32) -> bool {
        self.open_index(set).is_some()
    }

    /// Position of an open in [`FiniteSpace::opens`].
    pub fn open_index(&self, set: u32) -> Option<Id> {
        self.opens.binary_search(&set).ok()
    }

    /// The smallest open containing `x`.
    pub fn neighbourhood(&self, x: usize) -> u32 {
        self.opens.iter().filter(|&&u| u >> x & 1 == 1).fold(self.full(), |acc, &u| acc & u)
    }

    /// Opens contained in `set`.
    pub fn opens_within(&self, set: u32) -> impl Iterator<Item = u32> + '_ {
        self.opens.iter().copied().filter(move |&u| u & !set == 0)
    }

    /// Distinct points have distinct neighbourhood families.
    pub fn is_t0(&self) -> bool {
        let nbhd: Vec<u32> = (0..self.points).map(|x| self.neighbourhood(x)).collect();
        (0..self.points).all(|x| (x + 1..self.points).all(|y| nbhd[x] != nbhd[y]))
    }

    /// `Ω(X)` under intersection; lattice id = position in the open list.
    pub fn omega(&self) -> Semilattice {
        let idx = |u: u32| self.open_index(u).expect("opens closed under intersection");
        let rows = self.opens.iter().map(|&u| self.opens.iter().map(|&v| idx(u & v)).collect()).collect();
        Semilattice::from_rows(rows).expect("open sets form a semilattice")
    }

    /// The subspace on an open set `u`, with its points renumbered ascending.
    pub fn subspace(&self, u: u32) -> FiniteSpace {
        let pts: Vec<usize> = members(u).collect();
        let squeeze = |v: u32| pts.iter().enumerate().filter(|&(_, &p)| v >> p & 1 == 1).fold(0u32, |a, (i, _)| a | 1 << i);
        FiniteSpace::new(pts.len(), self.opens_within(u).map(squeeze).collect()).expect("open subspace")
    }

    /// The same space with point `x` renamed `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteSpace {
        let map = |u: u32| members(u).fold(0u32, |a, x| a | 1 << perm[x]);
        FiniteSpace::new(self.points, self.opens.iter().map(|&u| map(u)).collect()).expect("relabelled space")
    }
}

fn full_set(points: usize) -> u32 {
    if points == 32 {
        u32::MAX
    } else {
        (1u32 << points) - 1
    }
}

/// Completely prime filters of `Ω(X)`, each given by its least member. On
/// a finite space every filter is `↑U` for `U` the meet of its members;
/// `↑U` is completely prime iff `U ≠ ∅` and `V ∪ W ⊇ U` forces `V ⊇ U` or
/// `W ⊇ U`.
pub fn completely_prime_filters(x: &FiniteSpace) -> Vec<u32> {
    let opens = x.opens();
    opens
        .iter()
        .copied()
        .filter(|&u| u != 0)
        .filter(|&u| {
            opens.iter().all(|&v| opens.iter().all(|&w| (v | w) & u != u || v & u == u || w & u == u))
        })
        .collect()
}

/// The opens of the filter generated by `u`, ascending.
pub fn filter_members(x: &FiniteSpace, u: u32) -> Vec<u32> {
    x.opens().iter().copied().filter(|&v| v & u == u).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoberReport {
    pub t0: bool,
    pub sober: bool,
    /// Least members of all completely prime filters.
    pub filters: Vec<u32>,
    /// Filters that are no point's neighbourhood filter.
    pub unmatched: Vec<u32>,
    /// Filters that are the neighbourhood filter of more than one point.
    pub shared: Vec<u32>,
}

/// Sober iff `x ↦ ↑N(x)` is a bijection onto the completely prime filters.
pub fn sober_report(x: &FiniteSpace) -> SoberReport {
    let filters = completely_prime_filters(x);
    let nbhd: Vec<u32> = (0..x.points()).map(|p| x.neighbourhood(p)).collect();
    let count = |u: u32| nbhd.iter().filter(|&&n| n == u).count();
    let unmatched: Vec<u32> = filters.iter().copied().filter(|&u| count(u) == 0).collect();
    let shared: Vec<u32> = filters.iter().copied().filter(|&u| count(u) > 1).collect();
    SoberReport { t0: x.is_t0(), sober: unmatched.is_empty() && shared.is_empty(), filters, unmatched, shared }
}

pub fn is_sober(x: &FiniteSpace) -> bool {
    sober_report(x).sober
}

/// All homeomorphisms between open subspaces, sorted. A bijection `U → V`
/// is a homeomorphism iff it preserves and reflects `y ∈ N(x)`.
pub fn partial_homeomorphisms(x: &FiniteSpace, limits: &Limits) -> Result<Vec<PartialBijection>> {
    check_cap("space", x.points(), limits.max_points)?;
    let m = x.points();
    let nbhd: Vec<u32> = (0..m).map(|p| x.neighbourhood(p)).collect();
    let mut out = Vec::new();
    for &u in x.opens() {
        let src: Vec<usize> = members(u).collect();
        for &v in x.opens().iter().filter(|&&v| v.count_ones() == u.count_ones()) {
            let dst: Vec<usize> = members(v).collect();
            let mut map = vec![UNDEF; m];
            let mut used = vec![false; m];
            let rec = HomeoSearch { src: &src, dst: &dst, nbhd_src: &nbhd, nbhd_dst: &nbhd, allowed: &|_, _| true };
            rec.run(0, &mut map, &mut used, &mut |map| out.push(PartialBijection::from_vec(map.to_vec())));
            check_cap("partial homeomorphisms", out.len(), limits.max_generated)?;
        }
    }
    out.sort();
    Ok(out)
}

/// Backtracking over bijections `src → dst` that preserve and reflect the
/// neighbourhood relation and respect `allowed`. `map` is indexed by
/// source points. Emits nothing when the sizes differ.
pub(crate) struct HomeoSearch<'a> {
    pub src: &'a [usize],
    pub dst: &'a [usize],
    pub nbhd_src: &'a [u32],
    pub nbhd_dst: &'a [u32],
    pub allowed: &'a dyn Fn(usize, usize) -> bool,
}

impl HomeoSearch<'_> {
    pub fn run(&self, i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, emit: &mut dyn FnMut(&[usize])) {
        // otherwise every complete assignment is an injection, not a bijection
        if self.src.len() != self.dst.len() {
            return;
        }
        if i == self.src.len() {
            emit(map);
            return;
        }
        let a = self.src[i];
        for &b in self.dst {
            if used[b] || !(self.allowed)(a, b) {
                continue;
            }
            map[a] = b;
            let fits = self.src[..=i].iter().all(|&c| {
                let d = map[c];
                (self.nbhd_src[a] >> c & 1 == self.nbhd_dst[b] >> d & 1)
                    && (self.nbhd_src[c] >> a & 1 == self.nbhd_dst[d] >> b & 1)
            });
            if fits {
                used[b] = true;
                self.run(i + 1, map, used, emit);
                used[b] = false;
            }
            map[a] = UNDEF;
        }
    }
}

/// `ℐ(X, τ)` and its elements in id order.
pub fn partial_homeo_semigroup(x: &FiniteSpace, limits: &Limits) -> Result<(InverseSemigroup, Vec<PartialBijection>)> {
    let elements = partial_homeomorphisms(x, limits)?;
    let (s, _) = table_from_elements(&elements, |f, g| f.after(g))?;
    Ok((s, elements))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropEReport {
    pub homeos: usize,
    pub munn_size: usize,
    pub fundamental: bool,
    /// `δ: f ↦ (W ↦ f(W))` is an isomorphism `ℐ(X,τ) → T_{Ω(X)}`.
    pub delta_is_iso: bool,
    /// For every `θ ∈ T_{Ω(X)}` the point map `θ*` is a homeomorphism with
    /// `δ((θ*)⁻¹) = θ`.
    pub reconstruction_ok: bool,
}

impl PropEReport {
    pub fn passed(&self) -> bool {
        self.fundamental && self.delta_is_iso && self.reconstruction_ok
    }
}

/// `θ*`: for `θ: Ω(D) → Ω(R)` the map `R → D` sending `b` to the point
/// whose minimal neighbourhood is `θ⁻¹(N(b))`.
pub(crate) fn theta_star(x: &FiniteSpace, theta: &PartialBijection, range: u32) -> Option<Vec<usize>> {
    let inverse = theta.inverse();
    let mut map = vec![UNDEF; x.points()];
    for b in members(range) {
        let w = x.opens()[inverse.get(x.open_index(x.neighbourhood(b))?)?];
        map[b] = (0..x.points()).find(|&c| x.neighbourhood(c) == w)?;
    }
    Some(map)
}

/// `T_{Ω(X)} ≅ ℐ(X, τ)` for a sober finite space.
pub fn prop_e_check(x: &FiniteSpace, limits: &Limits) -> Result<PropEReport> {
    let (s, elements) = partial_homeo_semigroup(x, limits)?;
    let fundamental = is_fundamental(&s);
    if !is_sober(x) {
        return Err(Error::NotSober { fundamental });
    }
    let omega = x.omega();
    let t = munn_semigroup(&omega, limits)?;
    let k = omega.len();
    let image_of = |f: &PartialBijection, u: u32| members(u).fold(0u32, |a, p| a | 1 << f.get(p).expect("in domain"));
    let delta_iso = |f: &PartialBijection| {
        let dom = f.domain().fold(0u32, |a, p| a | 1 << p);
        let pairs = x.opens_within(dom).map(|w| {
            (x.open_index(w).expect("open"), x.open_index(image_of(f, w)).expect("homeomorphisms map opens to opens"))
        });
        PairIso { alpha: PartialBijection::empty(0), theta: PartialBijection::from_pairs(k, pairs) }
    };
    let delta: Vec<Option<Id>> = elements.iter().map(|f| t.index_of(&delta_iso(f))).collect();
    let delta_is_iso = delta.iter().all(Option::is_some)
        && check_homomorphism(&s, t.semigroup(), &delta.iter().map(|d| d.unwrap()).collect::<Vec<_>>())?
            .is_isomorphism();
    let reconstruction_ok = t.elements().iter().all(|m| {
        let range = x.opens()[m.range];
        theta_star(x, &m.iso.theta, range).and_then(PartialBijection::try_from_vec).is_some_and(|star| {
            let inv = star.inverse();
            elements.binary_search(&inv).is_ok() && delta_iso(&inv) == m.iso
        })
    });
    Ok(PropEReport { homeos: s.len(), munn_size: t.len(), fundamental, delta_is_iso, reconstruction_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::particular_point_space;

    #[test]
    fn space_validation() {
        assert!(FiniteSpace::discrete(2).is_t0());
        assert!(FiniteSpace::sierpinski().is_t0());
        assert!(!FiniteSpace::indiscrete(2).is_t0());
        assert_eq!(FiniteSpace::new(2, vec![1, 3]).unwrap_err(), Error::MissingEmptyOrFull);
        assert_eq!(FiniteSpace::new(2, vec![0, 1, 2, 3]).unwrap().opens().len(), 4);
        assert_eq!(FiniteSpace::new(3, vec![0, 1, 2, 7]).unwrap_err(), Error::NotClosedUnderUnion(1, 2));
        assert_eq!(FiniteSpace::new(3, vec![0, 3, 5, 7]).unwrap_err(), Error::NotClosedUnderIntersection(3, 5));
        assert_eq!(FiniteSpace::new(3, vec![0, 3, 6, 7]).unwrap_err(), Error::NotClosedUnderIntersection(3, 6));
    }

    /// Brute force: every family of opens that is a completely prime filter.
    fn filters_by_brute_force(x: &FiniteSpace) -> Vec<Vec<u32>> {
        let opens = x.opens();
        let k = opens.len();
        let mut out = Vec::new();
        for mask in 1u64..(1 << k) {
            let fam: Vec<u32> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| opens[i]).collect();
            let has = |u: u32| fam.contains(&u);
            let upward = fam.iter().all(|&u| opens.iter().all(|&v| v & u != u || has(v)));
            let meets = fam.iter().all(|&u| fam.iter().all(|&v| has(u & v)));
            let prime = !has(0) && opens.iter().all(|&v| opens.iter().all(|&w| !has(v | w) || has(v) || has(w)));
            if upward && meets && prime {
                out.push(fam);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn filters_match_brute_force() {
        let spaces = [
            FiniteSpace::sierpinski(),
            FiniteSpace::discrete(3),
            FiniteSpace::indiscrete(3),
            particular_point_space(3).unwrap(),
            FiniteSpace::new(3, vec![0, 1, 3, 7]).unwrap(),
        ];
        for x in spaces {
            let mut ours: Vec<Vec<u32>> = completely_prime_filters(&x).iter().map(|&u| filter_members(&x, u)).collect();
            ours.sort();
            assert_eq!(ours, filters_by_brute_force(&x));
        }
    }

    #[test]
    fn soberness() {
        assert!(is_sober(&FiniteSpace::sierpinski()));
        assert_eq!(completely_prime_filters(&FiniteSpace::sierpinski()).len(), 2);
        let r = sober_report(&FiniteSpace::indiscrete(2));
        assert!(!r.sober && !r.t0 && r.shared == vec![3]);
        // {{0},{0,1},X} omits {0,2} ⊇ {0}, so it is not upward closed
        let pp = particular_point_space(3).unwrap();
        let r = sober_report(&pp);
        assert!(r.t0 && r.sober);
        assert!(!r.filters.iter().any(|&u| filter_members(&pp, u) == vec![1, 3, 7]));
    }

    #[test]
    fn partial_homeo_counts() {
        let l = Limits::default();
        assert_eq!(partial_homeo_semigroup(&FiniteSpace::discrete(1), &l).unwrap().0.len(), 2);
        let (s, _) = partial_homeo_semigroup(&FiniteSpace::sierpinski(), &l).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.is_semilattice());
        assert_eq!(partial_homeo_semigroup(&FiniteSpace::discrete(2), &l).unwrap().0.len(), 7);
        let (pp, elements) = partial_homeo_semigroup(&particular_point_space(3).unwrap(), &l).unwrap();
        assert_eq!(pp.len(), 8);
        assert_eq!(pp.idempotents().len(), 5);
        assert!(elements.contains(&PartialBijection::from_pairs(3, [(0, 0), (1, 2)])));
        assert!(elements.contains(&PartialBijection::from_pairs(3, [(0, 0), (1, 2), (2, 1)])));
    }

    #[test]
    fn partial_homeos_are_munn_of_opens() {
        let l = Limits::default();
        let r = prop_e_check(&FiniteSpace::sierpinski(), &l).unwrap();
        assert!(r.passed() && r.homeos == 3 && r.munn_size == 3);
        let r = prop_e_check(&FiniteSpace::discrete(2), &l).unwrap();
        assert!(r.passed() && r.homeos == 7);
        let r = prop_e_check(&particular_point_space(3).unwrap(), &l).unwrap();
        assert!(r.passed() && r.homeos == 8 && r.munn_size == 8);
        let err = prop_e_check(&FiniteSpace::indiscrete(2), &l).unwrap_err();
        assert!(matches!(err, Error::NotSober { .. }));
    }

    #[test]
    fn subspace_and_relabel() {
        let pp = particular_point_space(3).unwrap();
        let sub = pp.subspace(0b011);
        assert_eq!(sub, FiniteSpace::sierpinski());
        assert_eq!(pp.relabel(&[0, 2, 1]), pp);
    }
}
