//! Homomorphism checks, isomorphism search and bounded homomorphism
//! enumeration between finite inverse semigroups.

use crate::congruence::Congruence;
use crate::error::{check_cap, Error, Result};
use crate::{Id, InverseSemigroup, Limits};

/// Properties of a map between two inverse semigroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub is_hom: bool,
    pub is_idempotent_separating: bool,
    pub image_is_wide: bool,
    pub is_injective: bool,
    pub is_surjective: bool,
    /// The induced congruence; present only when `is_hom` holds.
    pub kernel: Option<Congruence>,
}

impl HomReport {
    pub fn is_isomorphism(&self) -> bool {
        self.is_hom && self.is_injective && self.is_surjective
    }
}

pub fn check_homomorphism(s: &InverseSemigroup, t: &InverseSemigroup, map: &[Id]) -> Result<HomReport> {
    if map.len() != s.len() {
        return Err(Error::Malformed(format!("map has {} entries, expected {}", map.len(), s.len())));
    }
    if let Some(&bad) = map.iter().find(|&&x| x >= t.len()) {
        return Err(Error::OutOfRange { id: bad, size: t.len() });
    }
    let is_hom = (0..s.len()).all(|a| (0..s.len()).all(|b| map[s.mul(a, b)] == t.mul(map[a], map[b])));
    let mut idem_images: Vec<Id> = s.idempotents().iter().map(|&e| map[e]).collect();
    idem_images.sort_unstable();
    idem_images.dedup();
    let is_idempotent_separating = idem_images.len() == s.idempotents().len();
    let mut hit = vec![false; t.len()];
    for &x in map {
        hit[x] = true;
    }
    let image_is_wide = t.idempotents().iter().all(|&f| hit[f]);
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(HomReport {
        is_hom,
        is_idempotent_separating,
        image_is_wide,
        is_injective: sorted.len() == map.len(),
        is_surjective: sorted.len() == t.len(),
        kernel: is_hom.then(|| Congruence::from_labels(map)),
    })
}

/// Isomorphism-invariant data used to prune candidate images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Profile {
    idempotent: bool,
    involution: bool,
    below: usize,
    above: usize,
    domain_ideal: usize,
    range_ideal: usize,
    left_stabilizer: usize,
    right_stabilizer: usize,
    index: usize,
    period: usize,
}

fn profiles(s: &InverseSemigroup) -> Vec<Profile> {
    let n = s.len();
    let ideal = |e: Id| s.idempotents().iter().filter(|&&f| s.natural_leq(f, e)).count();
    (0..n)
        .map(|a| {
            // powers a, a^2, ... until a repeat
            let mut seen = vec![usize::MAX; n];
            let (mut x, mut k) = (a, 0);
            while seen[x] == usize::MAX {
                seen[x] = k;
                x = s.mul(x, a);
                k += 1;
            }
            Profile {
                idempotent: s.is_idempotent(a),
                involution: s.inv(a) == a,
                below: (0..n).filter(|&b| s.natural_leq(b, a)).count(),
                above: (0..n).filter(|&b| s.natural_leq(a, b)).count(),
                domain_ideal: ideal(s.d(a)),
                range_ideal: ideal(s.r(a)),
                left_stabilizer: (0..n).filter(|&b| s.mul(b, a) == a).count(),
                right_stabilizer: (0..n).filter(|&b| s.mul(a, b) == a).count(),
                index: seen[x],
                period: k - seen[x],
            }
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Bijective homomorphisms.
    Iso,
    /// Homomorphisms injective on idempotents.
    IdempotentSeparating,
}

struct Search<'a> {
    s: &'a InverseSemigroup,
    t: &'a InverseSemigroup,
    mode: Mode,
    candidates: Vec<Vec<Id>>,
    map: Vec<Option<Id>>,
    preimage: Vec<Option<Id>>,
    assigned: Vec<Id>,
}

impl<'a> Search<'a> {
    fn new(s: &'a InverseSemigroup, t: &'a InverseSemigroup, mode: Mode) -> Self {
        let candidates = match mode {
            Mode::Iso => {
                let (ps, pt) = (profiles(s), profiles(t));
                (0..s.len()).map(|a| (0..t.len()).filter(|&b| ps[a] == pt[b]).collect()).collect()
            }
            Mode::IdempotentSeparating => (0..s.len())
                .map(|a| {
                    if s.is_idempotent(a) {
                        t.idempotents().to_vec()
                    } else {
                        (0..t.len()).collect()
                    }
                })
                .collect(),
        };
        Search {
            s,
            t,
            mode,
            candidates,
            map: vec![None; s.len()],
            preimage: vec![None; t.len()],
            assigned: Vec::new(),
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let a = self.assigned.pop().unwrap();
            let b = self.map[a].take().unwrap();
            if self.preimage[b] == Some(a) {
                self.preimage[b] = None;
            }
        }
    }

    /// Assigns `a ↦ b` and everything it forces. On failure the caller undoes
    /// to its mark.
    fn assign(&mut self, a: Id, b: Id) -> bool {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            match self.map[a] {
                Some(x) if x == b => continue,
                Some(_) => return false,
                None => {}
            }
            if self.candidates[a].binary_search(&b).is_err() {
                return false;
            }
            let injective_here = match self.mode {
                Mode::Iso => true,
                Mode::IdempotentSeparating => self.s.is_idempotent(a),
            };
            if injective_here {
                if self.preimage[b].is_some() {
                    return false;
                }
                self.preimage[b] = Some(a);
            }
            self.map[a] = Some(b);
            self.assigned.push(a);
            queue.push((self.s.inv(a), self.t.inv(b)));
            for i in 0..self.assigned.len() {
                let c = self.assigned[i];
                let d = self.map[c].unwrap();
                queue.push((self.s.mul(a, c), self.t.mul(b, d)));
                queue.push((self.s.mul(c, a), self.t.mul(d, b)));
            }
        }
        true
    }

    fn next_free(&self) -> Option<Id> {
        (0..self.s.len()).find(|&a| self.map[a].is_none())
    }

    fn current(&self) -> Vec<Id> {
        self.map.iter().map(|x| x.unwrap()).collect()
    }

    fn first(&mut self) -> Option<Vec<Id>> {
        let Some(a) = self.next_free() else {
            return Some(self.current());
        };
        for b in self.candidates[a].clone() {
            let mark = self.assigned.len();
            if self.assign(a, b) {
                if let Some(found) = self.first() {
                    return Some(found);
                }
            }
            self.undo(mark);
        }
        None
    }

    fn all(&mut self, out: &mut Vec<Vec<Id>>) {
        let Some(a) = self.next_free() else {
            out.push(self.current());
            return;
        };
        for b in self.candidates[a].clone() {
            let mark = self.assigned.len();
            if self.assign(a, b) {
                self.all(out);
            }
            self.undo(mark);
        }
    }
}

/// The lexicographically least isomorphism `S → T`, if any.
pub fn find_isomorphism(s: &InverseSemigroup, t: &InverseSemigroup, limits: &Limits) -> Result<Option<Vec<Id>>> {
    check_cap("isomorphism source", s.len(), limits.max_size)?;
    check_cap("isomorphism target", t.len(), limits.max_size)?;
    if s.len() != t.len() || s.idempotents().len() != t.idempotents().len() {
        return Ok(None);
    }
    let found = Search::new(s, t, Mode::Iso).first();
    debug_assert!(found
        .as_ref()
        .is_none_or(|m| check_homomorphism(s, t, m).map(|r| r.is_isomorphism()).unwrap_or(false)));
    Ok(found)
}

/// All idempotent-separating homomorphisms `S → T` whose image is wide, in
/// lexicographic order. Bounded by `max_hom_source` / `max_hom_target`.
pub fn wide_idempotent_separating_homs(
    s: &InverseSemigroup,
    t: &InverseSemigroup,
    limits: &Limits,
) -> Result<Vec<Vec<Id>>> {
    check_cap("homomorphism source", s.len(), limits.max_hom_source)?;
    check_cap("homomorphism target", t.len(), limits.max_hom_target)?;
    if s.idempotents().len() != t.idempotents().len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    Search::new(s, t, Mode::IdempotentSeparating).all(&mut out);
    out.retain(|m| {
        let r = check_homomorphism(s, t, m).expect("well-typed");
        r.is_hom && r.is_idempotent_separating && r.image_is_wide
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::{symmetric_inverse_elements, table_from_elements};

    fn i_n(n: usize) -> InverseSemigroup {
        table_from_elements(&symmetric_inverse_elements(n), |a, b| a.after(b)).unwrap().0
    }

    fn cyclic(n: usize) -> InverseSemigroup {
        InverseSemigroup::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_report() {
        let s = i_n(2);
        let id: Vec<usize> = (0..7).collect();
        let r = check_homomorphism(&s, &s, &id).unwrap();
        assert!(r.is_hom && r.is_idempotent_separating && r.image_is_wide && r.is_isomorphism());
        assert!(r.kernel.unwrap().is_equality());
    }

    #[test]
    fn constant_non_idempotent_is_not_hom() {
        let z3 = cyclic(3);
        let r = check_homomorphism(&z3, &z3, &[1, 1, 1]).unwrap();
        assert!(!r.is_hom);
        assert!(r.kernel.is_none());
    }

    #[test]
    fn finds_identity_first() {
        let s = i_n(2);
        let m = find_isomorphism(&s, &s, &Limits::default()).unwrap().unwrap();
        assert_eq!(m, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn chain_vs_antichain_semilattice() {
        // 3-chain vs {e, f, 0} with ef = 0
        let chain = InverseSemigroup::new(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]).unwrap();
        let vee = InverseSemigroup::new(vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]).unwrap();
        assert_eq!(find_isomorphism(&chain, &vee, &Limits::default()).unwrap(), None);
    }

    #[test]
    fn relabelled_copy_found_both_ways() {
        let s = i_n(3);
        let perm: Vec<usize> = (0..s.len()).map(|a| (a * 7 + 3) % s.len()).collect();
        let t = s.relabel(&perm).unwrap();
        let l = Limits::default();
        let f = find_isomorphism(&s, &t, &l).unwrap().unwrap();
        assert!(check_homomorphism(&s, &t, &f).unwrap().is_isomorphism());
        assert!(find_isomorphism(&t, &s, &l).unwrap().is_some());
    }

    #[test]
    fn group_homs_into_trivial_group() {
        let z4 = cyclic(4);
        let one = cyclic(1);
        let homs = wide_idempotent_separating_homs(&z4, &one, &Limits::default()).unwrap();
        assert_eq!(homs, vec![vec![0, 0, 0, 0]]);
        // Z4 -> Z4: the automorphisms and the endomorphisms x -> 2x, x -> 0
        let endos = wide_idempotent_separating_homs(&z4, &z4, &Limits::default()).unwrap();
        assert_eq!(endos.len(), 4);
    }
}
