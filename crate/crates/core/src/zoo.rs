//! Generators for standard test instances.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_cap, Error, Result};
use crate::partial::{symmetric_inverse_elements, table_from_elements, PartialBijection};
use crate::presheaf::{Presheaf, Semilattice};
use crate::topology::{partial_homeo_semigroup, FiniteSpace};
use crate::{InverseSemigroup, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardExample {
    /// `I_n`, all partial bijections of `n` points (`n ≤ 4`).
    SymmetricInverse,
    /// The chain `0 < 1 < … < n-1` under `min`.
    ChainSemilattice,
    /// Subsets of `n` points under intersection; id = bitmask (`n ≤ 4`).
    PowersetSemilattice,
    /// `Z_n` under addition.
    CyclicGroup,
    /// Partial homeomorphisms of the particular-point topology on `n`
    /// points, with `0` the particular point.
    ParticularPointHomeos,
}

impl StandardExample {
    pub const ALL: [StandardExample; 5] = [
        StandardExample::SymmetricInverse,
        StandardExample::ChainSemilattice,
        StandardExample::PowersetSemilattice,
        StandardExample::CyclicGroup,
        StandardExample::ParticularPointHomeos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StandardExample::SymmetricInverse => "symmetric_inverse",
            StandardExample::ChainSemilattice => "chain_semilattice",
            StandardExample::PowersetSemilattice => "powerset_semilattice",
            StandardExample::CyclicGroup => "cyclic_group",
            StandardExample::ParticularPointHomeos => "particular_point",
        }
    }
}

impl fmt::Display for StandardExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StandardExample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "particular_point_homeos" => Ok(StandardExample::ParticularPointHomeos),
            _ => StandardExample::ALL
                .into_iter()
                .find(|k| k.name() == s)
                .ok_or_else(|| Error::Malformed(format!("unknown example '{s}'"))),
        }
    }
}

pub fn standard_example(kind: StandardExample, n: usize, limits: &Limits) -> Result<InverseSemigroup> {
    if n == 0 && kind != StandardExample::SymmetricInverse && kind != StandardExample::PowersetSemilattice {
        return Err(Error::Malformed(format!("{kind} needs n >= 1")));
    }
    match kind {
        StandardExample::SymmetricInverse => {
            check_cap("symmetric inverse degree", n, 4)?;
            symmetric_inverse(n)
        }
        StandardExample::ChainSemilattice => {
            check_cap("chain semilattice", n, limits.max_size)?;
            Ok(chain(n))
        }
        StandardExample::PowersetSemilattice => {
            check_cap("powerset degree", n, 4)?;
            Ok(powerset(n))
        }
        StandardExample::CyclicGroup => {
            check_cap("cyclic group", n, limits.max_size)?;
            Ok(cyclic_group(n))
        }
        StandardExample::ParticularPointHomeos => {
            check_cap("particular point space", n, limits.max_points)?;
            Ok(partial_homeo_semigroup(&particular_point_space(n)?, limits)?.0)
        }
    }
}

pub fn symmetric_inverse(n: usize) -> Result<InverseSemigroup> {
    Ok(table_from_elements(&symmetric_inverse_elements(n), |a, b| a.after(b))?.0)
}

pub fn chain(n: usize) -> InverseSemigroup {
    from_fn(n, |a, b| a.min(b))
}

pub fn powerset(n: usize) -> InverseSemigroup {
    from_fn(1 << n, |a, b| a & b)
}

pub fn cyclic_group(n: usize) -> InverseSemigroup {
    from_fn(n, |a, b| (a + b) % n)
}

/// `{0, e, f}` with `ef = 0`: two atoms over a bottom, no top.
pub fn vee() -> InverseSemigroup {
    from_fn(3, |a, b| if a == b { a } else { 0 })
}

/// The Brandt semigroup `B_n`: the partial bijections of rank at most one.
pub fn brandt(n: usize) -> Result<InverseSemigroup> {
    let elements: Vec<PartialBijection> =
        symmetric_inverse_elements(n).into_iter().filter(|f| f.rank() <= 1).collect();
    Ok(table_from_elements(&elements, |a, b| a.after(b))?.0)
}

/// A Clifford semigroup that is neither a group nor a semilattice: `Z_2`
/// above the trivial group, with the generator collapsing to the bottom.
pub fn clifford_z2_over_one() -> InverseSemigroup {
    // ids: 0 = bottom, 1 = identity of Z_2, 2 = generator of Z_2
    InverseSemigroup::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]).expect("Clifford table")
}

/// Points `0..n` with opens `∅` and every set containing `0`.
pub fn particular_point_space(n: usize) -> Result<FiniteSpace> {
    let full: u32 = (1u32 << n) - 1;
    let opens = std::iter::once(0).chain((0..=full).filter(|u| u & 1 == 1)).collect();
    FiniteSpace::new(n, opens)
}

/// Six points over the chain `0 < f < e` (ids 0, 1, 2): `e₁ e₂ e₃` over `e`,
/// `f₁ f₂` over `f` and a zero, with `e₁·f = e₂·f = f₁` and `e₃·f = f₂`.
/// Dropping `e₃` leaves a presheaf with the same `T_X` up to isomorphism.
pub fn six_point_presheaf() -> Presheaf {
    let lattice = Semilattice::from_rows(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]).expect("3-chain");
    let act = vec![vec![5, 3, 0], vec![5, 3, 1], vec![5, 4, 2], vec![5, 3, 3], vec![5, 4, 4], vec![5, 5, 5]];
    Presheaf::new(lattice, vec![2, 2, 2, 1, 1, 0], act).expect("six-point presheaf")
}

fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> InverseSemigroup {
    InverseSemigroup::new((0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect()).expect("generator table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::is_fundamental;

    #[test]
    fn sizes() {
        let l = Limits::default();
        let size = |k, n| standard_example(k, n, &l).unwrap().len();
        assert_eq!(size(StandardExample::SymmetricInverse, 1), 2);
        assert_eq!(size(StandardExample::SymmetricInverse, 2), 7);
        assert_eq!(size(StandardExample::PowersetSemilattice, 3), 8);
        assert_eq!(size(StandardExample::ChainSemilattice, 5), 5);
        assert_eq!(size(StandardExample::CyclicGroup, 6), 6);
        assert_eq!(brandt(2).unwrap().len(), 5);
    }

    #[test]
    fn particular_point_semigroup() {
        let s = standard_example(StandardExample::ParticularPointHomeos, 3, &Limits::default()).unwrap();
        // the swap 1 <-> 2 on the whole space is a homeomorphism too
        assert_eq!(s.len(), 8);
        assert_eq!(s.idempotents().len(), 5);
        assert!(is_fundamental(&s));
    }

    #[test]
    fn caps_and_names() {
        let l = Limits::default();
        assert!(standard_example(StandardExample::SymmetricInverse, 5, &l).unwrap_err().is_size_cap());
        assert!(standard_example(StandardExample::CyclicGroup, 65, &l).unwrap_err().is_size_cap());
        for k in StandardExample::ALL {
            assert_eq!(k.name().parse::<StandardExample>().unwrap(), k);
        }
        assert!("nope".parse::<StandardExample>().is_err());
    }

    #[test]
    fn clifford_example_shape() {
        let s = clifford_z2_over_one();
        assert!(s.is_clifford() && !s.is_group() && !s.is_semilattice());
        assert!(vee().is_semilattice());
    }
}
