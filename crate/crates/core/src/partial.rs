//! Partial bijections on `0..n` and semigroups built from them.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{check_cap, Error, Result};
use crate::{Id, InverseSemigroup};

/// Sentinel marking an undefined point of a [`PartialBijection`].
pub const UNDEF: usize = usize::MAX;

/// A partial injective map on `0..n`, stored as a total array with [`UNDEF`]
/// holes. Composition follows the right-to-left convention: `g.after(f)` is
/// "apply `f`, then `g`".
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection(Vec<usize>);

impl PartialBijection {
    pub fn empty(n: usize) -> Self {
        PartialBijection(vec![UNDEF; n])
    }

    pub fn identity_on(n: usize, domain: impl IntoIterator<Item = usize>) -> Self {
        let mut v = vec![UNDEF; n];
        for x in domain {
            v[x] = x;
        }
        PartialBijection(v)
    }

    /// `None` unless the defined values are in range and injective.
    pub fn try_from_vec(v: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; v.len()];
        for &y in &v {
            if y != UNDEF {
                if y >= v.len() || seen[y] {
                    return None;
                }
                seen[y] = true;
            }
        }
        Some(PartialBijection(v))
    }

    /// Builds from a raw array. Panics if the defined values are not injective
    /// or out of range.
    pub fn from_vec(v: Vec<usize>) -> Self {
        let n = v.len();
        let mut seen = vec![false; n];
        for &y in &v {
            if y != UNDEF {
                assert!(y < n && !seen[y], "not a partial bijection");
                seen[y] = true;
            }
        }
        PartialBijection(v)
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut v = vec![UNDEF; n];
        for (x, y) in pairs {
            v[x] = y;
        }
        Self::from_vec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        match self.0[x] {
            UNDEF => None,
            y => Some(y),
        }
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &y)| y != UNDEF).map(|(x, _)| x)
    }

    pub fn image(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied().filter(|&y| y != UNDEF)
    }

    pub fn graph(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().filter(|(_, &y)| y != UNDEF).map(|(x, &y)| (x, y))
    }

    pub fn rank(&self) -> usize {
        self.image().count()
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![UNDEF; self.0.len()];
        for (x, y) in self.graph() {
            v[y] = x;
        }
        PartialBijection(v)
    }

    /// `self ∘ first`: apply `first`, then `self`, on the largest domain where
    /// both steps are defined.
    pub fn after(&self, first: &PartialBijection) -> Self {
        let v = first
            .0
            .iter()
            .map(|&y| if y == UNDEF { UNDEF } else { self.0[y] })
            .collect();
        PartialBijection(v)
    }

    pub fn is_identity(&self) -> bool {
        self.graph().all(|(x, y)| x == y)
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.graph().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}>{y}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for PartialBijection {
    /// `x>y` pairs separated by commas, or `-` for the empty map.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 0 {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.graph().map(|(x, y)| format!("{x}>{y}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Builds and validates the multiplication table of a finite family of
/// elements closed under `mul`. Fails with [`Error::ClosureViolation`] if some
/// product is not in the family.
pub fn table_from_elements<K, F>(elements: &[K], mul: F) -> Result<(InverseSemigroup, HashMap<K, Id>)>
where
    K: Clone + Eq + Hash,
    F: Fn(&K, &K) -> K,
{
    let n = elements.len();
    let index: HashMap<K, Id> = elements.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    if index.len() != n {
        return Err(Error::Malformed("duplicate elements".into()));
    }
    let mut table = Vec::with_capacity(n * n);
    for (a, ka) in elements.iter().enumerate() {
        for (b, kb) in elements.iter().enumerate() {
            let prod = mul(ka, kb);
            match index.get(&prod) {
                Some(&c) => table.push(c),
                None => return Err(Error::ClosureViolation(a, b)),
            }
        }
    }
    Ok((InverseSemigroup::from_flat(n, table)?, index))
}

/// Symmetric inverse monoid on `n` points, elements in lexicographic order of
/// their arrays (so the empty map comes last).
pub fn symmetric_inverse_elements(n: usize) -> Vec<PartialBijection> {
    let mut out = Vec::new();
    let mut cur = vec![UNDEF; n];
    let mut used = vec![false; n];
    fn rec(i: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<PartialBijection>) {
        if i == cur.len() {
            out.push(PartialBijection(cur.clone()));
            return;
        }
        for y in 0..cur.len() {
            if !used[y] {
                used[y] = true;
                cur[i] = y;
                rec(i + 1, cur, used, out);
                used[y] = false;
            }
        }
        cur[i] = UNDEF;
        rec(i + 1, cur, used, out);
    }
    rec(0, &mut cur, &mut used, &mut out);
    out.sort();
    out
}

/// Closure of a set of partial bijections under composition and inverse,
/// sorted.
pub fn generated_inverse_semigroup(generators: &[PartialBijection], cap: usize) -> Result<Vec<PartialBijection>> {
    use std::collections::HashSet;
    let mut seen: HashSet<PartialBijection> = HashSet::new();
    let mut gens: Vec<PartialBijection> = Vec::new();
    for g in generators {
        for h in [g.clone(), g.inverse()] {
            if seen.insert(h.clone()) {
                gens.push(h);
            }
        }
    }
    let mut all = gens.clone();
    let mut frontier = gens.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in &gens {
                for p in [a.after(g), g.after(a)] {
                    if seen.insert(p.clone()) {
                        next.push(p.clone());
                        all.push(p);
                        check_cap("generated inverse semigroup", all.len(), cap)?;
                    }
                }
            }
        }
        frontier = next;
    }
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_right_to_left() {
        let f = PartialBijection::from_pairs(3, [(0, 1), (1, 2)]);
        let g = PartialBijection::from_pairs(3, [(1, 0)]);
        // apply f then g: only 0 -> 1 -> 0 survives
        assert_eq!(g.after(&f), PartialBijection::from_pairs(3, [(0, 0)]));
        assert_eq!(f.after(&f.inverse()), PartialBijection::identity_on(3, [1, 2]));
    }

    #[test]
    fn symmetric_inverse_counts() {
        // sum_k C(n,k)^2 k!
        for (n, expected) in [(0, 1), (1, 2), (2, 7), (3, 34), (4, 209)] {
            assert_eq!(symmetric_inverse_elements(n).len(), expected);
        }
    }

    #[test]
    fn display_graph() {
        assert_eq!(PartialBijection::empty(2).to_string(), "-");
        assert_eq!(PartialBijection::from_pairs(3, [(0, 2), (2, 0)]).to_string(), "0>2,2>0");
    }
}
