//! Congruences: closure, μ, quotients, kernels and lattice enumeration.

use std::collections::BTreeSet;

use crate::error::{check_cap, Error, Result};
use crate::{Id, InverseSemigroup, Limits};

/// A partition of `0..n`, stored as the least member of each element's class.
///
/// Two congruences are equal iff their `classof` arrays are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    classof: Vec<Id>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if a merge happened. The smaller root wins, so roots are
    /// always class minima.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_classof(mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

impl Congruence {
    pub fn equality(n: usize) -> Self {
        Congruence { classof: (0..n).collect() }
    }

    pub fn universal(n: usize) -> Self {
        Congruence { classof: vec![0; n] }
    }

    /// Normalises an arbitrary labelling into a partition (no congruence
    /// check).
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut first = std::collections::HashMap::new();
        let classof = labels.iter().enumerate().map(|(i, l)| *first.entry(l).or_insert(i)).collect();
        Congruence { classof }
    }

    /// Validates that `classof` is a partition on `S` compatible with
    /// multiplication on both sides.
    pub fn from_classof(s: &InverseSemigroup, classof: Vec<Id>) -> Result<Self> {
        if classof.len() != s.len() {
            return Err(Error::Malformed("partition length differs from semigroup size".into()));
        }
        let c = Self::from_labels(&classof);
        if let Some((a, b)) = c.compatibility_witness(s) {
            return Err(Error::NotACongruence(a, b));
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.classof.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classof.is_empty()
    }

    pub fn class_of(&self, a: Id) -> Id {
        self.classof[a]
    }

    pub fn classof(&self) -> &[Id] {
        &self.classof
    }

    pub fn related(&self, a: Id, b: Id) -> bool {
        self.classof[a] == self.classof[b]
    }

    /// Class representatives in ascending order.
    pub fn representatives(&self) -> Vec<Id> {
        (0..self.len()).filter(|&a| self.classof[a] == a).collect()
    }

    pub fn classes(&self) -> Vec<Vec<Id>> {
        let reps = self.representatives();
        let mut pos = vec![0; self.len()];
        for (i, &r) in reps.iter().enumerate() {
            pos[r] = i;
        }
        let mut out = vec![Vec::new(); reps.len()];
        for a in 0..self.len() {
            out[pos[self.classof[a]]].push(a);
        }
        out
    }

    pub fn num_classes(&self) -> usize {
        self.representatives().len()
    }

    pub fn is_equality(&self) -> bool {
        self.classof.iter().enumerate().all(|(a, &c)| a == c)
    }

    pub fn is_universal(&self) -> bool {
        self.classof.iter().all(|&c| c == 0)
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|a| other.related(a, self.classof[a]))
    }

    fn compatibility_witness(&self, s: &InverseSemigroup) -> Option<(Id, Id)> {
        for a in 0..s.len() {
            let b = self.classof[a];
            if a == b {
                continue;
            }
            for c in 0..s.len() {
                if !self.related(s.mul(c, a), s.mul(c, b)) || !self.related(s.mul(a, c), s.mul(b, c)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_congruence(&self, s: &InverseSemigroup) -> bool {
        self.len() == s.len() && self.compatibility_witness(s).is_none()
    }

    /// Each class contains at most one idempotent.
    pub fn is_idempotent_separating(&self, s: &InverseSemigroup) -> bool {
        self.idempotent_collision(s).is_none()
    }

    pub(crate) fn idempotent_collision(&self, s: &InverseSemigroup) -> Option<(Id, Id)> {
        let mut seen = vec![None; self.len()];
        for &e in s.idempotents() {
            let c = self.classof[e];
            if let Some(f) = seen[c] {
                return Some((f, e));
            }
            seen[c] = Some(e);
        }
        None
    }
}

/// Smallest congruence containing `pairs`, by union-find closure under left
/// and right multiplication.
pub fn congruence_generated(s: &InverseSemigroup, pairs: &[(Id, Id)]) -> Congruence {
    let n = s.len();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(Id, Id)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    // merged pairs span the partition, so closing each of them suffices
    while let Some((a, b)) = queue.pop() {
        for c in 0..n {
            for (x, y) in [(s.mul(c, a), s.mul(c, b)), (s.mul(a, c), s.mul(b, c))] {
                if uf.union(x, y) {
                    queue.push((x, y));
                }
            }
        }
    }
    Congruence { classof: uf.into_classof() }
}

/// Join of two congruences in the congruence lattice.
pub fn join(s: &InverseSemigroup, a: &Congruence, b: &Congruence) -> Congruence {
    let pairs: Vec<(Id, Id)> = (0..s.len())
        .flat_map(|x| [(x, a.classof[x]), (x, b.classof[x])])
        .filter(|(x, y)| x != y)
        .collect();
    congruence_generated(s, &pairs)
}

/// μ: `a ~ b` iff `a⁻¹ea = b⁻¹eb` for every idempotent `e`.
pub fn mu(s: &InverseSemigroup) -> Congruence {
    let signatures: Vec<Vec<Id>> = (0..s.len())
        .map(|a| s.idempotents().iter().map(|&e| s.conj(e, a)).collect())
        .collect();
    Congruence::from_labels(&signatures)
}

/// Whether μ is equality.
pub fn is_fundamental(s: &InverseSemigroup) -> bool {
    mu(s).is_equality()
}

/// `Ker ρ`: union of the classes that contain an idempotent.
pub fn kernel_of_congruence(s: &InverseSemigroup, rho: &Congruence) -> Vec<Id> {
    let mut hit = vec![false; s.len()];
    for &e in s.idempotents() {
        hit[rho.class_of(e)] = true;
    }
    (0..s.len()).filter(|&a| hit[rho.class_of(a)]).collect()
}

/// `S/ρ` with classes numbered by ascending representative, and the
/// projection `S → S/ρ`.
pub fn quotient(s: &InverseSemigroup, rho: &Congruence) -> Result<(InverseSemigroup, Vec<Id>)> {
    if !rho.is_congruence(s) {
        return Err(Error::Malformed("quotient by a relation that is not a congruence".into()));
    }
    let reps = rho.representatives();
    let mut pos = vec![0; s.len()];
    for (i, &r) in reps.iter().enumerate() {
        pos[r] = i;
    }
    let projection: Vec<Id> = (0..s.len()).map(|a| pos[rho.class_of(a)]).collect();
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(projection[s.mul(a, b)]);
        }
    }
    Ok((InverseSemigroup::from_flat(k, table)?, projection))
}

/// All congruences on `S`, sorted. Every congruence is a join of principal
/// ones, so the lattice is the join-closure of `{Cg(a,b)}`.
pub fn enumerate_congruences(s: &InverseSemigroup, limits: &Limits) -> Result<Vec<Congruence>> {
    check_cap("semigroup for congruence enumeration", s.len(), limits.max_congruence_size)?;
    let n = s.len();
    let mut principal: BTreeSet<Congruence> = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            principal.insert(congruence_generated(s, &[(a, b)]));
        }
    }
    let principal: Vec<Congruence> = principal.into_iter().collect();
    let mut all: BTreeSet<Congruence> = BTreeSet::new();
    all.insert(Congruence::equality(n));
    let mut frontier: Vec<Congruence> = vec![Congruence::equality(n)];
    while let Some(c) = frontier.pop() {
        for p in &principal {
            if p.refines(&c) {
                continue;
            }
            let j = join(s, &c, p);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    Ok(all.into_iter().collect())
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

    fn chain2() -> InverseSemigroup {
        InverseSemigroup::new(vec![vec![0, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn mu_examples() {
        assert!(mu(&cyclic(4)).is_universal());
        assert!(mu(&i_n(2)).is_equality());
        assert!(is_fundamental(&chain2()));
        assert!(!is_fundamental(&cyclic(3)));
        assert!(is_fundamental(&i_n(3)));
    }

    #[test]
    fn generated_examples() {
        let s = i_n(2);
        assert!(congruence_generated(&s, &[]).is_equality());
        assert!(congruence_generated(&chain2(), &[(0, 1)]).is_universal());
    }

    #[test]
    fn generated_in_group_is_normal_closure_cosets() {
        // Z6: the normal closure of g is the cyclic subgroup <g>.
        let g6 = cyclic(6);
        for g in 0..6 {
            let c = congruence_generated(&g6, &[(0, g)]);
            let subgroup: BTreeSet<usize> = (0..6).map(|k| (k * g) % 6).collect();
            for a in 0..6 {
                for b in 0..6 {
                    assert_eq!(c.related(a, b), subgroup.contains(&((b + 6 - a) % 6)));
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let s = i_n(2);
        let (q, proj) = quotient(&s, &Congruence::equality(s.len())).unwrap();
        assert_eq!(q.len(), s.len());
        assert_eq!(proj, (0..s.len()).collect::<Vec<_>>());
        let (q, _) = quotient(&s, &Congruence::universal(s.len())).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn kernel_examples() {
        let s = i_n(2);
        assert_eq!(kernel_of_congruence(&s, &Congruence::equality(7)), s.idempotents());
        assert_eq!(kernel_of_congruence(&s, &mu(&s)), s.centralizer_of_idempotents());
        assert_eq!(kernel_of_congruence(&s, &Congruence::universal(7)).len(), 7);
    }

    #[test]
    fn rejects_non_congruence() {
        let s = i_n(2);
        // identifying the identity with id_{0} alone is not compatible
        let mut classof: Vec<usize> = (0..7).collect();
        classof[1] = 0;
        assert!(matches!(Congruence::from_classof(&s, classof), Err(Error::NotACongruence(..))));
    }

    #[test]
    fn congruence_lattice_of_small_examples() {
        let limits = Limits::default();
        // congruences of Z_n correspond to subgroups, i.e. divisors of n
        assert_eq!(enumerate_congruences(&cyclic(6), &limits).unwrap().len(), 4);
        assert_eq!(enumerate_congruences(&chain2(), &limits).unwrap().len(), 2);
        let big = i_n(3);
        assert!(enumerate_congruences(&big, &limits).unwrap_err().is_size_cap());
    }
}
