//! The topology of order-ideals on a globally supported action.

use super::{validate_bundle, EtaleBundle, FiniteSpace};
use crate::actions::SupportedAction;
use crate::error::{check_cap, Error, Result};
use crate::presheaf::idempotent_positions;
use crate::{Id, Limits};

/// `p: X → E(S)` with down-set topologies. Base point `i` is the idempotent
/// `idempotents[i]`; total points are carrier ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderIdealBundle {
    pub bundle: EtaleBundle,
    pub idempotents: Vec<Id>,
}

/// Down-sets of a preorder on `0..n` given by `below[x]` (the bitset of
/// points `≤ x`).
fn down_sets(what: &'static str, below: &[u32], limits: &Limits) -> Result<Vec<u32>> {
    check_cap(what, below.len(), limits.max_points)?;
    let mut out = Vec::new();
    for set in 0u32..(1 << below.len()) {
        if super::members(set).all(|x| below[x] & !set == 0) {
            out.push(set);
            check_cap("order-ideal opens", out.len(), limits.max_generated)?;
        }
    }
    Ok(out)
}

/// Opens on `X` are order-ideals of the Steinberg order `x ≤ y ⇔ x = y·p(x)`;
/// opens on `E(S)` are order-ideals of the natural order.
pub fn order_ideal_topology(a: &SupportedAction, limits: &Limits) -> Result<OrderIdealBundle> {
    if let Some(e) = a.missed_idempotent() {
        return Err(Error::NotGlobal(e));
    }
    let s = a.semigroup();
    let idempotents = s.idempotents().to_vec();
    let pos = idempotent_positions(s);
    let n = a.len();
    let below_x: Vec<u32> =
        (0..n).map(|y| (0..n).filter(|&x| a.steinberg_leq(x, y)).fold(0, |acc, x| acc | 1 << x)).collect();
    let below_e: Vec<u32> = idempotents
        .iter()
        .map(|&f| idempotents.iter().enumerate().filter(|&(_, &e)| s.natural_leq(e, f)).fold(0, |acc, (i, _)| acc | 1 << i))
        .collect();
    let total = FiniteSpace::new(n, down_sets("carrier", &below_x, limits)?)?;
    let base = FiniteSpace::new(idempotents.len(), down_sets("idempotents", &below_e, limits)?)?;
    let pi = (0..n).map(|x| pos[a.support(x)]).collect();
    Ok(OrderIdealBundle { bundle: validate_bundle(total, base, pi)?, idempotents })
}

/// Order-ideals `U ⊆ X` whose points are pairwise compatible:
/// `x·p(y) = y·p(x)`.
pub fn compatible_order_ideals(a: &SupportedAction, limits: &Limits) -> Result<Vec<u32>> {
    let n = a.len();
    check_cap("carrier", n, limits.max_points)?;
    let below: Vec<u32> =
        (0..n).map(|y| (0..n).filter(|&x| a.steinberg_leq(x, y)).fold(0, |acc, x| acc | 1 << x)).collect();
    let compatible = |x: Id, y: Id| a.act(x, a.support(y)) == a.act(y, a.support(x));
    Ok(down_sets("carrier", &below, limits)?
        .into_iter()
        .filter(|&u| super::members(u).all(|x| super::members(u).all(|y| compatible(x, y))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{conjugation_action, right_regular_action};
    use crate::topology::injective_opens;
    use crate::zoo::{chain, symmetric_inverse, vee};

    #[test]
    fn conjugation_action_everything_compatible() {
        let l = Limits::default();
        let a = conjugation_action(&symmetric_inverse(2).unwrap());
        let b = order_ideal_topology(&a, &l).unwrap();
        let compatible = compatible_order_ideals(&a, &l).unwrap();
        assert_eq!(compatible, b.bundle.total().opens());
    }

    #[test]
    fn two_chain_compatible_are_all_down_sets() {
        let l = Limits::default();
        let a = right_regular_action(&chain(2));
        assert_eq!(compatible_order_ideals(&a, &l).unwrap(), vec![0b00, 0b01, 0b11]);
    }

    #[test]
    fn i2_right_regular_agrees_with_injectivity() {
        let l = Limits::default();
        let a = right_regular_action(&symmetric_inverse(2).unwrap());
        let b = order_ideal_topology(&a, &l).unwrap();
        let compatible = compatible_order_ideals(&a, &l).unwrap();
        assert_eq!(compatible, injective_opens(&b.bundle));
        assert!(compatible.len() > b.bundle.base().opens().len());
    }

    #[test]
    fn not_global() {
        let s = vee();
        // a single point supported at the bottom misses both atoms
        let a = SupportedAction::new(s, vec![0], vec![vec![0, 0, 0]]).unwrap();
        assert_eq!(order_ideal_topology(&a, &Limits::default()).unwrap_err(), Error::NotGlobal(1));
    }
}
