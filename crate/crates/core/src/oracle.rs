//! Independent brute-force reference implementations. Slow, simple,
//! obviously correct; these define ground truth for the closed forms in
//! the rest of the crate and share nothing with them beyond the field
//! layer and sphere enumeration.

use crate::codes::{sphere, sphere_capped, GeneratorMatrix, WeightDistribution};
use crate::error::{Error, Result};
use crate::gf::{char_sum, CycSum, FieldSpec};
use crate::poset::{OrderIdeal, Poset};
use crate::relations::IdealPartition;
use num_bigint::BigInt;
use num_traits::Zero;

/// Character sum over the enumerated sphere of `jc` (an ideal of the dual
/// poset) against a concrete vector, as an exact cyclotomic integer.
pub fn char_sum_brute(
    poset: &Poset,
    field: &FieldSpec,
    u: &[u64],
    jc: OrderIdeal,
) -> Result<CycSum> {
    if u.len() != poset.n() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: poset.n(),
        });
    }
    let dual = poset.dual();
    let vectors = sphere(&dual, field, jc)?;
    let mut values = Vec::with_capacity(vectors.len());
    for v in &vectors {
        values.push(field.dot(u, v)?);
    }
    char_sum(field, values)
}

/// The dual code's weight distribution computed from the character triple
/// sum: for each dual class, sum `chi(u . v)` over every codeword u and
/// every vector v in the class's spheres, then divide by the code size.
/// No use of the closed forms or of the dual code itself.
pub fn dual_dist_brute(
    field: &FieldSpec,
    g: &GeneratorMatrix,
    partition: &IdealPartition,
) -> Result<WeightDistribution> {
    let poset = partition.poset();
    if g.n() != poset.n() {
        return Err(Error::LengthMismatch {
            left: g.n(),
            right: poset.n(),
        });
    }
    let dual_poset = poset.dual();
    let dual = partition.dual();
    let words = crate::codes::codewords(g)?;
    let code_size = BigInt::from(words.len());
    let mut counts = Vec::with_capacity(dual.num_classes());
    for jb in 0..dual.num_classes() {
        let mut total = CycSum::zero(field.p());
        for kc in dual.block_ideals(jb) {
            for v in sphere(&dual_poset, field, kc)? {
                for u in &words {
                    total.add_root(field.trace(field.dot(u, &v)?)?);
                }
            }
        }
        let value = total.as_integer().ok_or(Error::NonIntegralQuotient)?;
        if (&value % &code_size) != BigInt::zero() {
            return Err(Error::NonIntegralQuotient);
        }
        counts.push(value / &code_size);
    }
    Ok(WeightDistribution { counts })
}

/// Every linear subspace of F_q^n exactly once, as generator matrices in
/// reduced row-echelon form, enumerated by pivot-column sets and free
/// entries. Guarded to the binary desk-scale domain.
pub fn all_subspaces(field: &FieldSpec, n: usize) -> Result<Vec<GeneratorMatrix>> {
    if field.q() != 2 || n > 4 {
        return Err(Error::TooLarge(format!(
            "subspace enumeration supports q = 2 and n <= 4, got q = {}, n = {n}",
            field.q()
        )));
    }
    let q = field.q();
    let mut out = Vec::new();
    for k in 0..=n {
        // Pivot columns: all k-subsets of 0..n, increasing.
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // Free positions: (row r, col c) with c > pivots[r] and c not
            // a pivot column.
            let is_pivot: Vec<bool> = (0..n).map(|c| pivots.contains(&c)).collect();
            let mut free = Vec::new();
            for r in 0..k {
                for c in 0..n {
                    if c > pivots[r] && !is_pivot[c] {
                        free.push((r, c));
                    }
                }
            }
            let combos = q.pow(free.len() as u32);
            for fill in 0..combos {
                let mut rows = vec![vec![0u64; n]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = 1;
                }
                let mut t = fill;
                for &(r, c) in &free {
                    rows[r][c] = t % q;
                    t /= q;
                }
                out.push(GeneratorMatrix::new(field.clone(), n, rows)?);
            }
            // Next k-subset in lexicographic order.
            if k == 0 {
                break;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if pivots[i] < n - (k - i) {
                    pivots[i] += 1;
                    for j in i + 1..k {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    pivots.clear();
                    break;
                }
            }
            if pivots.is_empty() {
                break;
            }
        }
    }
    Ok(out)
}

/// Exhaustive test of the defining property over all pairs of subspaces:
/// equal distributions must force equal dual distributions, and back.
/// Both directions are required because the property is preserved under
/// dualization (the dual of the dual relation is the relation itself), so
/// the one-sided implication for the dual relation is exactly the reverse
/// implication here. Dual distributions come from direct enumeration of
/// the dual codes; nothing is shared with the closed-form checker.
pub fn definition_check(field: &FieldSpec, partition: &IdealPartition) -> Result<bool> {
    let poset = partition.poset();
    let dual = partition.dual();
    let subspaces = all_subspaces(field, poset.n())?;
    let mut primal = Vec::with_capacity(subspaces.len());
    let mut dual_dists = Vec::with_capacity(subspaces.len());
    for g in &subspaces {
        primal.push(crate::codes::weight_distribution(field, g, partition)?);
        let dual_g = crate::codes::dual_code(g)?;
        dual_dists.push(crate::codes::weight_distribution(field, &dual_g, &dual)?);
    }
    for a in 0..subspaces.len() {
        for b in 0..subspaces.len() {
            if (primal[a] == primal[b]) != (dual_dists[a] == dual_dists[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every labeled poset on {1, ..., n}, by filtering all antisymmetric
/// transitive strict relations. Deterministic order.
pub fn all_posets(n: usize) -> Vec<Poset> {
    assert!(n <= 4, "poset enumeration is meant for tiny ground sets");
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    'masks: for mask in 0..1u64 << pairs.len() {
        let mut lt = vec![vec![false; n + 1]; n + 1];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                lt[a][b] = true;
            }
        }
        for a in 1..=n {
            for b in 1..=n {
                if lt[a][b] && lt[b][a] {
                    continue 'masks;
                }
                for c in 1..=n {
                    if lt[a][b] && lt[b][c] && !lt[a][c] {
                        continue 'masks;
                    }
                }
            }
        }
        let covers: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        out.push(Poset::from_covers(n, &covers).expect("filtered relations are valid"));
    }
    out
}

/// Brute-force sphere size by enumeration, for pinning the closed form.
pub fn sphere_size_brute(
    poset: &Poset,
    field: &FieldSpec,
    ideal: OrderIdeal,
    cap: u64,
) -> Result<BigInt> {
    Ok(BigInt::from(sphere_capped(poset, field, ideal, cap)?.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::dual_code;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn two_chains_5() -> Poset {
        Poset::from_covers(5, &[(1, 2), (2, 3), (4, 5)]).unwrap()
    }

    #[test]
    fn brute_char_sum_for_zero_vector_is_sphere_size() {
        let p = two_chains_5();
        let f = f2();
        let dual = p.dual();
        for jc in dual.ideals().unwrap() {
            let s = char_sum_brute(&p, &f, &[0; 5], jc).unwrap();
            assert_eq!(
                s.as_integer().unwrap(),
                crate::codes::sphere_size(&dual, &f, jc).unwrap()
            );
        }
    }

    #[test]
    fn brute_char_sum_q3_example() {
        let p = Poset::antichain(2);
        let f = FieldSpec::prime(3).unwrap();
        let s = char_sum_brute(&p, &f, &[1, 0], OrderIdeal::from_elements(&[1, 2])).unwrap();
        assert_eq!(s.as_integer().unwrap(), BigInt::from(-2));
    }

    #[test]
    fn dual_dist_brute_examples() {
        let f = f2();
        // Zero code: the dual distribution lists the dual sphere-class sizes.
        let p = two_chains_5();
        let e = IdealPartition::cardinality(&p).unwrap();
        let zero = GeneratorMatrix::new(f.clone(), 5, vec![]).unwrap();
        let brute = dual_dist_brute(&f, &zero, &e).unwrap();
        let dual_poset = p.dual();
        let dual = e.dual();
        for (jb, v) in brute.counts.iter().enumerate() {
            let expect: BigInt = dual
                .block_ideals(jb)
                .into_iter()
                .map(|i| crate::codes::sphere_size(&dual_poset, &f, i).unwrap())
                .sum();
            assert_eq!(*v, expect);
        }

        // Repetition code on the 2-antichain: dual distribution (1, 0, 1).
        let anti = Poset::antichain(2);
        let ec = IdealPartition::cardinality(&anti).unwrap();
        let rep = GeneratorMatrix::new(f.clone(), 2, vec![vec![1, 1]]).unwrap();
        let brute = dual_dist_brute(&f, &rep, &ec).unwrap();
        let expect: Vec<BigInt> = [1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(brute.counts, expect);

        // Hamming [7,4] under the Hamming metric: the triple sum yields
        // the simplex-code spectrum.
        let anti7 = Poset::antichain(7);
        let ec7 = IdealPartition::cardinality(&anti7).unwrap();
        let ham = GeneratorMatrix::new(
            f.clone(),
            7,
            vec![
                vec![1, 0, 0, 0, 1, 1, 0],
                vec![0, 1, 0, 0, 1, 0, 1],
                vec![0, 0, 1, 0, 0, 1, 1],
                vec![0, 0, 0, 1, 1, 1, 1],
            ],
        )
        .unwrap();
        let brute = dual_dist_brute(&f, &ham, &ec7).unwrap();
        let expect: Vec<BigInt> = [1, 0, 0, 0, 7, 0, 0, 0]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(brute.counts, expect);
    }

    #[test]
    fn dual_dist_brute_matches_direct_enumeration() {
        let f = f2();
        let p = two_chains_5();
        for e in [
            IdealPartition::cardinality(&p).unwrap(),
            IdealPartition::isomorphism(&p).unwrap(),
        ] {
            let g =
                GeneratorMatrix::new(f.clone(), 5, vec![vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 0]])
                    .unwrap();
            let brute = dual_dist_brute(&f, &g, &e).unwrap();
            let direct =
                crate::codes::weight_distribution(&f, &dual_code(&g).unwrap(), &e.dual()).unwrap();
            assert_eq!(brute, direct);
        }
    }

    #[test]
    fn triple_sum_works_in_both_directions_over_all_subspaces() {
        // For every subspace C of F_2^3: the triple sum applied to C
        // reproduces the dual code's distribution, and applied to the
        // dual code it reproduces C's own distribution (complementing
        // back through the dual partition).
        let f = f2();
        for p in [
            Poset::from_covers(3, &[(1, 2)]).unwrap(),
            Poset::chain(3),
            Poset::antichain(3),
        ] {
            let e = IdealPartition::isomorphism(&p).unwrap();
            let dual = e.dual();
            for g in all_subspaces(&f, 3).unwrap() {
                let dual_g = dual_code(&g).unwrap();
                let forward = dual_dist_brute(&f, &g, &e).unwrap();
                let direct = crate::codes::weight_distribution(&f, &dual_g, &dual).unwrap();
                assert_eq!(forward, direct);
                let backward = dual_dist_brute(&f, &dual_g, &dual).unwrap();
                let primal = crate::codes::weight_distribution(&f, &g, &e).unwrap();
                assert_eq!(backward, primal);
            }
        }
    }

    #[test]
    fn subspace_counts() {
        let f = f2();
        assert_eq!(all_subspaces(&f, 1).unwrap().len(), 2);
        assert_eq!(all_subspaces(&f, 2).unwrap().len(), 5);
        assert_eq!(all_subspaces(&f, 3).unwrap().len(), 16);
        assert_eq!(all_subspaces(&f, 4).unwrap().len(), 67);
        assert!(all_subspaces(&f, 5).is_err());
        assert!(all_subspaces(&FieldSpec::prime(3).unwrap(), 2).is_err());
    }

    #[test]
    fn subspaces_are_distinct_row_spaces() {
        let f = f2();
        let subs = all_subspaces(&f, 3).unwrap();
        let mut word_sets = std::collections::HashSet::new();
        for g in &subs {
            let mut words = crate::codes::codewords(g).unwrap();
            words.sort();
            assert!(word_sets.insert(words), "duplicate subspace");
        }
    }

    #[test]
    fn poset_counts() {
        assert_eq!(all_posets(1).len(), 1);
        assert_eq!(all_posets(2).len(), 3);
        assert_eq!(all_posets(3).len(), 19);
        assert_eq!(all_posets(4).len(), 219);
    }

    #[test]
    fn definition_check_small_cases() {
        let f = f2();
        // Antichain on [3] with cardinality classes: hierarchical, passes.
        let anti = Poset::antichain(3);
        let e = IdealPartition::cardinality(&anti).unwrap();
        assert!(definition_check(&f, &e).unwrap());
        // A 2-chain plus isolated point with cardinality classes:
        // non-hierarchical, fails.
        let p = Poset::from_covers(3, &[(1, 2)]).unwrap();
        let e = IdealPartition::cardinality(&p).unwrap();
        assert!(!definition_check(&f, &e).unwrap());
        // All-singleton orbits pass on any small poset.
        let e = IdealPartition::aut_orbits(&p, &[crate::poset::Perm::identity(3)]).unwrap();
        assert!(definition_check(&f, &e).unwrap());
    }
}
