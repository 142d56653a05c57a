//! Property-based checks of the structural invariants, on randomized
//! posets, subsets and vectors.

use num_bigint::BigInt;
use posetmw::codes::{p_distance, sphere_size, support_ideal};
use posetmw::gf::CycSum;
use posetmw::poset::{OrderIdeal, Poset};
use posetmw::relations::IdealPartition;
use posetmw::FieldSpec;
use proptest::prelude::*;

/// A random poset on 1..=n via random relation pairs oriented upward in
/// label order, then relabeled by a random permutation. Orienting upward
/// guarantees acyclicity; the relabeling restores arbitrary labelings.
fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = prop::collection::vec((1..=n, 1..=n), 0..2 * n);
        let perm = Just(()).prop_perturb(move |_, mut rng| {
            let mut images: Vec<usize> = (1..=n).collect();
            for i in (1..n).rev() {
                let j = rng.random_range(0..=i);
                images.swap(i, j);
            }
            images
        });
        (Just(n), pairs, perm).prop_map(|(n, pairs, images)| {
            let oriented: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|&(a, b)| a != b)
                .map(|(a, b)| {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    (images[lo - 1], images[hi - 1])
                })
                .collect();
            Poset::from_covers(n, &oriented).expect("upward-oriented pairs are acyclic")
        })
    })
}

proptest! {
    #[test]
    fn dual_is_involution(p in arb_poset(7)) {
        prop_assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn complement_swaps_ideal_families(p in arb_poset(6), mask in 0u32..64) {
        let mask = mask & p.full_mask();
        let dual = p.dual();
        let comp = !mask & p.full_mask();
        prop_assert_eq!(
            p.closure_mask(mask) == mask,
            dual.closure_mask(comp) == comp
        );
    }

    #[test]
    fn closure_idempotent_monotone_minimal(p in arb_poset(6), mask in 0u32..64, other in 0u32..64) {
        let mask = mask & p.full_mask();
        let other = other & p.full_mask();
        let closed = p.closure_mask(mask);
        prop_assert_eq!(p.closure_mask(closed), closed);
        prop_assert_eq!(mask & closed, mask);
        if mask & other == mask {
            prop_assert_eq!(closed & p.closure_mask(other), closed);
        }
    }

    #[test]
    fn ideals_are_down_closed_and_counted(p in arb_poset(6)) {
        let ideals = p.ideals().unwrap();
        // Every enumerated ideal is down-closed; the enumeration agrees
        // with filtering all subsets.
        let filtered = (0..=p.full_mask())
            .filter(|&m| p.closure_mask(m) == m)
            .count();
        prop_assert_eq!(ideals.len(), filtered);
        for i in &ideals {
            prop_assert!(p.is_ideal(*i));
        }
    }

    #[test]
    fn maximal_split_parts(p in arb_poset(6)) {
        for i in p.ideals().unwrap() {
            let (max, rest) = p.maximal_split(i).unwrap();
            prop_assert_eq!(max & rest.bits(), 0);
            prop_assert_eq!(max | rest.bits(), i.bits());
            prop_assert!(p.is_ideal(rest));
        }
    }

    #[test]
    fn spheres_partition_the_space(p in arb_poset(5), q in prop::sample::select(vec![2u64, 3])) {
        let f = FieldSpec::prime(q).unwrap();
        let total: BigInt = p
            .ideals()
            .unwrap()
            .into_iter()
            .map(|i| sphere_size(&p, &f, i).unwrap())
            .sum();
        prop_assert_eq!(total, BigInt::from(q).pow(p.n() as u32));
    }

    #[test]
    fn p_distance_triangle(
        p in arb_poset(5),
        q in prop::sample::select(vec![2u64, 3]),
        seeds in prop::collection::vec(0u64..1_000_000, 3),
    ) {
        let f = FieldSpec::prime(q).unwrap();
        let vec_for = |seed: u64| -> Vec<u64> {
            (0..p.n()).map(|i| (seed >> (3 * i)) % q).collect()
        };
        let (x, y, z) = (vec_for(seeds[0]), vec_for(seeds[1]), vec_for(seeds[2]));
        let dxy = p_distance(&p, &f, &x, &y).unwrap();
        let dyx = p_distance(&p, &f, &y, &x).unwrap();
        prop_assert_eq!(dxy, dyx);
        prop_assert_eq!(dxy == 0, x == y);
        let dxz = p_distance(&p, &f, &x, &z).unwrap();
        let dzy = p_distance(&p, &f, &z, &y).unwrap();
        prop_assert!(dxy <= dxz + dzy);
    }

    #[test]
    fn support_closure_is_weight(p in arb_poset(5), seed in 0u64..1_000_000) {
        let f = FieldSpec::prime(2).unwrap();
        let x: Vec<u64> = (0..p.n()).map(|i| (seed >> i) & 1).collect();
        let ideal = support_ideal(&p, &x).unwrap();
        prop_assert!(p.is_ideal(ideal));
        prop_assert_eq!(posetmw::codes::p_weight(&p, &x).unwrap(), ideal.cardinality());
        let _ = f;
    }

    #[test]
    fn cyc_sum_shift_invariance(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        coeffs in prop::collection::vec(-50i64..50, 7),
        shift in -20i64..20,
    ) {
        let coeffs: Vec<BigInt> = coeffs.iter().take(p as usize).map(|&c| BigInt::from(c)).collect();
        prop_assume!(coeffs.len() == p as usize);
        let a = CycSum::from_coeffs(p, coeffs.clone()).unwrap();
        let shifted: Vec<BigInt> = coeffs.iter().map(|c| c + BigInt::from(shift)).collect();
        let b = CycSum::from_coeffs(p, shifted).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.as_integer(), b.as_integer());
    }

    #[test]
    fn automorphism_group_laws(p in arb_poset(5)) {
        let autos = p.automorphisms().unwrap();
        prop_assert!(autos.iter().any(|a| a.is_identity()));
        let ideals = p.ideals().unwrap();
        for a in &autos {
            prop_assert!(autos.contains(&a.inverse()));
            for b in &autos {
                prop_assert!(autos.contains(&a.compose(b)));
            }
            for i in &ideals {
                prop_assert!(ideals.contains(&OrderIdeal(a.apply_mask(i.bits()))));
            }
        }
    }

    #[test]
    fn refinement_chain_and_hierarchy(p in arb_poset(5)) {
        let aut = IdealPartition::aut_orbits(&p, &p.automorphisms().unwrap()).unwrap();
        let iso = IdealPartition::isomorphism(&p).unwrap();
        let card = IdealPartition::cardinality(&p).unwrap();
        prop_assert!(aut.refines(&iso).unwrap());
        prop_assert!(iso.refines(&card).unwrap());
        // Hierarchical posets are exactly those where orbit classes and
        // cardinality classes coincide.
        let collapse = aut.same_blocks(&card);
        prop_assert_eq!(collapse, p.is_hierarchical());
    }

    #[test]
    fn dual_partition_involution(p in arb_poset(5)) {
        for e in [
            IdealPartition::cardinality(&p).unwrap(),
            IdealPartition::isomorphism(&p).unwrap(),
        ] {
            let d = e.dual();
            prop_assert_eq!(d.num_classes(), e.num_classes());
            prop_assert!(d.dual().same_blocks(&e));
        }
    }

    #[test]
    fn weight_distribution_totals(p in arb_poset(4), seed in 0u64..1_000_000) {
        let f = FieldSpec::prime(2).unwrap();
        let n = p.n();
        let rows: Vec<Vec<u64>> = (0..2)
            .map(|r| (0..n).map(|i| (seed >> (r * n + i)) & 1).collect())
            .collect();
        let g = posetmw::codes::GeneratorMatrix::new(f.clone(), n, rows).unwrap();
        let rank = posetmw::codes::rref(&g).unwrap().rank;
        let e = IdealPartition::cardinality(&p).unwrap();
        let w = posetmw::codes::weight_distribution(&f, &g, &e).unwrap();
        prop_assert_eq!(w.total(), BigInt::from(2u64).pow(rank as u32));
        prop_assert!(w.counts[e.class_of(OrderIdeal::EMPTY).unwrap()] >= BigInt::from(1));
    }
}
