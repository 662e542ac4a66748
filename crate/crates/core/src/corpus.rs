//! Exhaustive and sampled families of test instances.

use std::collections::BTreeSet;

use crate::actions::{
    centralizer_action, conjugation_action, free_action, quotient_action, right_regular_action, SupportedAction,
};
use crate::congruence::{enumerate_congruences, mu};
use crate::error::Result;
use crate::presheaf::Semilattice;
use crate::topology::{validate_bundle, EtaleBundle, FiniteSpace};
use crate::zoo::{
    brandt, chain, clifford_z2_over_one, cyclic_group, particular_point_space, powerset, standard_example,
    symmetric_inverse, vee, StandardExample,
};
use crate::{Id, InverseSemigroup, Limits};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Meet-semilattices with exactly `n` elements, one per isomorphism class.
///
/// Every finite poset has a labelling along a linear extension, so it is
/// enough to try relations with `i < j` whenever `i ≤ j` strictly.
pub fn semilattices_of_size(n: usize) -> Vec<Semilattice> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let perms = permutations(n);
    for mask in 0u64..(1 << pairs.len()) {
        // leq[i] = bitset of elements ≥ i
        let mut up: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                up[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|i| crate::topology::members(up[i]).all(|j| up[j] & !up[i] == 0));
        if !transitive {
            continue;
        }
        let leq = |a: usize, b: usize| up[a] >> b & 1 == 1;
        let meet = |a: usize, b: usize| {
            (0..n).find(|&c| leq(c, a) && leq(c, b) && (0..n).all(|d| !(leq(d, a) && leq(d, b)) || leq(d, c)))
        };
        let Some(rows) = (0..n).map(|a| (0..n).map(|b| meet(a, b)).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let key = perms
            .iter()
            .map(|p| {
                let mut t = vec![0usize; n * n];
                for a in 0..n {
                    for b in 0..n {
                        t[p[a] * n + p[b]] = p[rows[a][b]];
                    }
                }
                t
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(key) {
            out.push(Semilattice::from_rows(rows).expect("meets form a semilattice"));
        }
    }
    out
}

/// Meet-semilattices with `1..=max` elements up to isomorphism.
pub fn semilattices_up_to(max: usize) -> Vec<Semilattice> {
    (1..=max).flat_map(semilattices_of_size).collect()
}

/// Topologies on `0..n` up to homeomorphism, as the down-set topologies of
/// preorders (every finite topology is one).
pub fn spaces_of_size(n: usize) -> Vec<FiniteSpace> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        // below[x] = bitset of points ≤ x
        let mut below: Vec<u32> = (0..n).map(|x| 1 << x).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                below[j] |= 1 << i;
            }
        }
        let transitive = (0..n).all(|x| crate::topology::members(below[x]).all(|y| below[y] & !below[x] == 0));
        if !transitive {
            continue;
        }
        let opens: Vec<u32> = (0..1u32 << n)
            .filter(|&u| crate::topology::members(u).all(|x| below[x] & !u == 0))
            .collect();
        let x = FiniteSpace::new(n, opens).expect("down-sets form a topology");
        let key = perms
            .iter()
            .map(|p| x.relabel(p).opens().to_vec())
            .min()
            .expect("at least one permutation");
        if seen.insert(key) {
            out.push(x);
        }
    }
    out
}

/// Spaces with `1..=max` points up to homeomorphism.
pub fn spaces_up_to(max: usize) -> Vec<FiniteSpace> {
    (1..=max).flat_map(spaces_of_size).collect()
}

/// A named corpus entry.
#[derive(Debug, Clone)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named { name: name.into(), value }
}

/// `I_1..I_3`, chains of length `1..=5`, powersets of `0..=3` points,
/// `Z_1..Z_6` and the particular-point semigroup on three points.
pub fn standard_semigroups(limits: &Limits) -> Result<Vec<Named<InverseSemigroup>>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(named(format!("I{n}"), symmetric_inverse(n)?));
    }
    for n in 1..=5 {
        out.push(named(format!("chain{n}"), chain(n)));
    }
    for n in 0..=3 {
        out.push(named(format!("powerset{n}"), powerset(n)));
    }
    for n in 1..=6 {
        out.push(named(format!("Z{n}"), cyclic_group(n)));
    }
    out.push(named("particular_point3", standard_example(StandardExample::ParticularPointHomeos, 3, limits)?));
    Ok(out)
}

/// [`standard_semigroups`] plus a few shapes they miss: a Brandt
/// semigroup, a non-chain semilattice and a Clifford semigroup.
pub fn semigroup_corpus(limits: &Limits) -> Result<Vec<Named<InverseSemigroup>>> {
    let mut out = standard_semigroups(limits)?;
    out.push(named("B2", brandt(2)?));
    out.push(named("vee", vee()));
    out.push(named("clifford_z2_over_1", clifford_z2_over_one()));
    Ok(out)
}

/// Supported actions built by the constructors over the corpus semigroups
/// with at most `max_semigroup` elements: conjugation, right regular,
/// centraliser, every idempotent-separating quotient, the free action on
/// the conjugation presheaf, and the proper orbits `eS` of the right
/// regular action (which are not globally supported).
pub fn sample_actions(limits: &Limits, max_semigroup: usize) -> Result<Vec<Named<SupportedAction>>> {
    let mut out = Vec::new();
    for Named { name, value: s } in semigroup_corpus(limits)? {
        if s.len() > max_semigroup {
            continue;
        }
        out.push(named(format!("{name}/conjugation"), conjugation_action(&s)));
        let regular = right_regular_action(&s);
        let mut orbits: Vec<Vec<Id>> = s.idempotents().iter().map(|&e| regular.orbit(e)).filter(|o| o.len() < s.len()).collect();
        orbits.sort();
        orbits.dedup();
        for orbit in orbits {
            out.push(named(format!("{name}/orbit{}", orbit[0]), regular.subaction(&orbit)?));
        }
        out.push(named(format!("{name}/right_regular"), regular));
        out.push(named(format!("{name}/centralizer"), centralizer_action(&s)));
        let rho_mu = mu(&s);
        for (i, rho) in enumerate_congruences(&s, limits)?.iter().enumerate() {
            if rho.is_idempotent_separating(&s) && !rho.is_equality() && rho != &rho_mu {
                out.push(named(format!("{name}/quotient{i}"), quotient_action(&s, rho)?));
            }
        }
        out.push(named(format!("{name}/quotient_mu"), quotient_action(&s, &rho_mu)?));
        let p = conjugation_action(&s).restrict_to_idempotents();
        out.push(named(format!("{name}/free"), free_action(&s, &p)?.0));
    }
    Ok(out)
}

/// Bundles over sober bases: identity bundles, trivial covers, a bundle
/// with fibres of different sizes, and the particular-point space folded
/// onto the Sierpiński space.
pub fn bundle_battery() -> Result<Vec<Named<EtaleBundle>>> {
    let sierpinski = FiniteSpace::sierpinski();
    let point = FiniteSpace::discrete(1);
    let chain3 = FiniteSpace::new(3, vec![0b000, 0b001, 0b011, 0b111])?;
    Ok(vec![
        named("identity/sierpinski", EtaleBundle::identity(&sierpinski)),
        named("identity/discrete2", EtaleBundle::identity(&FiniteSpace::discrete(2))),
        named("identity/chain3", EtaleBundle::identity(&chain3)),
        named("cover2/point", EtaleBundle::trivial_cover(&point, 2)?),
        named("cover3/point", EtaleBundle::trivial_cover(&point, 3)?),
        named("cover2/sierpinski", EtaleBundle::trivial_cover(&sierpinski, 2)?),
        named("cover2/discrete2", EtaleBundle::trivial_cover(&FiniteSpace::discrete(2), 2)?),
        named("uneven/discrete2", validate_bundle(FiniteSpace::discrete(3), FiniteSpace::discrete(2), vec![0, 1, 1])?),
        named("particular_point/sierpinski", validate_bundle(particular_point_space(3)?, sierpinski, vec![0, 1, 1])?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{is_sober, sober_report};

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }

    #[test]
    fn semilattice_counts() {
        // meet-semilattices with n elements = lattices with n + 1 elements
        let counts: Vec<usize> = (1..=5).map(|n| semilattices_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15]);
    }

    #[test]
    fn space_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| spaces_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 9, 33]);
        let t0: Vec<usize> = (1..=4).map(|n| spaces_of_size(n).iter().filter(|x| x.is_t0()).count()).collect();
        assert_eq!(t0, vec![1, 2, 5, 16]);
    }

    #[test]
    fn finite_sober_iff_t0() {
        for x in spaces_up_to(4) {
            let r = sober_report(&x);
            assert_eq!(r.sober, r.t0, "{x:?}");
        }
    }

    #[test]
    fn battery_bases_are_sober() {
        let battery = bundle_battery().unwrap();
        assert!(battery.len() >= 5);
        assert!(battery.iter().all(|b| is_sober(b.value.base())));
    }

    #[test]
    fn enough_sample_actions() {
        assert!(sample_actions(&Limits::default(), 8).unwrap().len() >= 20);
    }
}
