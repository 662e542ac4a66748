//! Finite inverse semigroups given by multiplication tables.

use crate::error::{Error, Result};
use crate::Id;

/// A validated finite inverse semigroup on ids `0..n`.
///
/// The table is stored row-major: `mul(a, b) = table[a * n + b]`. Inverses
/// and the idempotent set are cached at validation time.
#[derive(Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    n: usize,
    table: Vec<Id>,
    inv: Vec<Id>,
    idem: Vec<Id>,
    is_idem: Vec<bool>,
}

impl std::fmt::Debug for InverseSemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InverseSemigroup")
            .field("n", &self.n)
            .field("idempotents", &self.idem)
            .finish()
    }
}

impl InverseSemigroup {
    /// Validates a square table given row by row.
    pub fn new(rows: Vec<Vec<Id>>) -> Result<Self> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            flat.extend(row);
        }
        Self::from_flat(n, flat)
    }

    /// Validates a flat row-major table. Checks run in the order
    /// associativity, commuting idempotents, existence and uniqueness of
    /// inverses.
    pub fn from_flat(n: usize, table: Vec<Id>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("semigroup must have at least one element".into()));
        }
        if table.len() != n * n {
            return Err(Error::Malformed(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(Error::OutOfRange { id: bad, size: n });
        }
        let mul = |a: Id, b: Id| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let is_idem: Vec<bool> = (0..n).map(|a| mul(a, a) == a).collect();
        let idem: Vec<Id> = (0..n).filter(|&a| is_idem[a]).collect();
        for (i, &e) in idem.iter().enumerate() {
            for &f in &idem[i + 1..] {
                if mul(e, f) != mul(f, e) {
                    return Err(Error::IdempotentsDoNotCommute(e, f));
                }
            }
        }
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            let mut found = None;
            for x in 0..n {
                if mul(mul(a, x), a) == a && mul(mul(x, a), x) == x {
                    if found.is_some() {
                        return Err(Error::NonUniqueInverse(a));
                    }
                    found = Some(x);
                }
            }
            *slot = found.ok_or(Error::NotRegular(a))?;
        }
        Ok(InverseSemigroup { n, table, inv, idem, is_idem })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, a: Id, b: Id) -> Id {
        self.table[a * self.n + b]
    }

    pub fn mul3(&self, a: Id, b: Id, c: Id) -> Id {
        self.mul(self.mul(a, b), c)
    }

    #[inline]
    pub fn inv(&self, a: Id) -> Id {
        self.inv[a]
    }

    /// `d(a) = a⁻¹a`.
    pub fn d(&self, a: Id) -> Id {
        self.mul(self.inv[a], a)
    }

    /// `r(a) = aa⁻¹`.
    pub fn r(&self, a: Id) -> Id {
        self.mul(a, self.inv[a])
    }

    pub fn idempotents(&self) -> &[Id] {
        &self.idem
    }

    pub fn is_idempotent(&self, a: Id) -> bool {
        self.is_idem[a]
    }

    pub fn row(&self, a: Id) -> &[Id] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    pub fn flat_table(&self) -> &[Id] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<Id>> {
        (0..self.n).map(|a| self.row(a).to_vec()).collect()
    }

    /// Conjugate `s⁻¹ e s`.
    pub fn conj(&self, e: Id, s: Id) -> Id {
        self.mul3(self.inv[s], e, s)
    }

    /// Natural partial order: `a ≤ b` iff `a = a a⁻¹ b`.
    pub fn natural_leq(&self, a: Id, b: Id) -> bool {
        self.mul(self.r(a), b) == a
    }

    /// `Z(E(S))`: elements commuting with every idempotent.
    pub fn centralizer_of_idempotents(&self) -> Vec<Id> {
        (0..self.n)
            .filter(|&s| self.idem.iter().all(|&e| self.mul(s, e) == self.mul(e, s)))
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_clifford(&self) -> bool {
        self.centralizer_of_idempotents().len() == self.n
    }

    pub fn is_group(&self) -> bool {
        self.idem.len() == 1
    }

    pub fn is_semilattice(&self) -> bool {
        self.idem.len() == self.n && self.is_commutative()
    }

    /// Whether `subset` is an inverse subsemigroup (closed under products and
    /// inverses).
    pub fn is_inverse_subsemigroup(&self, subset: &[Id]) -> bool {
        let mut member = vec![false; self.n];
        for &a in subset {
            member[a] = true;
        }
        subset.iter().all(|&a| member[self.inv[a]] && subset.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Wide and closed under conjugation `s⁻¹Ms`.
    pub fn is_normal(&self, subset: &[Id]) -> bool {
        let mut member = vec![false; self.n];
        for &a in subset {
            member[a] = true;
        }
        self.is_inverse_subsemigroup(subset)
            && self.idem.iter().all(|&e| member[e])
            && subset.iter().all(|&m| (0..self.n).all(|s| member[self.conj(m, s)]))
    }

    /// The same semigroup with ids permuted: element `a` becomes `perm[a]`.
    pub fn relabel(&self, perm: &[Id]) -> Result<Self> {
        let n = self.n;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::from_flat(n, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::{symmetric_inverse_elements, table_from_elements};

    fn i2() -> InverseSemigroup {
        let elems = symmetric_inverse_elements(2);
        table_from_elements(&elems, |a, b| a.after(b)).unwrap().0
    }

    #[test]
    fn trivial_group() {
        let s = InverseSemigroup::new(vec![vec![0]]).unwrap();
        assert_eq!(s.idempotents(), &[0]);
        assert!(s.is_group());
    }

    #[test]
    fn i2_has_four_idempotents() {
        let s = i2();
        assert_eq!(s.len(), 7);
        assert_eq!(s.idempotents().len(), 4);
    }

    #[test]
    fn two_chain_is_a_semilattice() {
        // 0 is the bottom: 0*x = 0
        let s = InverseSemigroup::new(vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(s.idempotents(), &[0, 1]);
        assert!(s.is_semilattice());
    }

    #[test]
    fn left_zero_band_rejected() {
        let err = InverseSemigroup::new(vec![vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::IdempotentsDoNotCommute(0, 1));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(InverseSemigroup::new(vec![]), Err(Error::Malformed(_))));
        assert_eq!(
            InverseSemigroup::new(vec![vec![0, 2], vec![1, 1]]).unwrap_err(),
            Error::OutOfRange { id: 2, size: 2 }
        );
        // x*y = 1 for all x,y except 0*0 = 0 is associative? (0*0)*1 = 1, 0*(0*1) = 1: yes.
        // Null semigroup {0,z}: 0*0 = z is not regular.
        let null = InverseSemigroup::new(vec![vec![1, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(null, Error::NotRegular(0));
        // a*b = b is associative but not inverse
        let right_zero = InverseSemigroup::new(vec![vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(right_zero, Error::IdempotentsDoNotCommute(0, 1));
        let non_assoc = InverseSemigroup::new(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
        assert!(matches!(non_assoc, Error::NotAssociative(..)));
    }

    #[test]
    fn natural_order_examples() {
        let chain = InverseSemigroup::new(vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(chain.natural_leq(0, 1));
        assert!(!chain.natural_leq(1, 0));

        let s = i2();
        // the empty map is the last element in lexicographic order
        let empty = s.len() - 1;
        assert!((0..s.len()).all(|b| s.natural_leq(empty, b)));

        let z3 = InverseSemigroup::new(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(z3.natural_leq(a, b), a == b);
            }
        }
    }

    #[test]
    fn natural_order_matches_idempotent_definition() {
        let s = i2();
        for a in 0..s.len() {
            for b in 0..s.len() {
                let exists = s.idempotents().iter().any(|&e| s.mul(e, b) == a);
                assert_eq!(s.natural_leq(a, b), exists);
            }
        }
    }

    #[test]
    fn centralizer_of_i2_is_idempotents() {
        let s = i2();
        assert_eq!(s.centralizer_of_idempotents(), s.idempotents());
        assert!(s.is_normal(s.idempotents()));
    }
}
