//! Posets on the ground set {1, ..., n}, their order ideals, duality,
//! automorphism enumeration, induced-subposet isomorphism, and the two
//! structural classifiers (hierarchical, complement isomorphism).
//!
//! Ideals are n-bit subsets packed in a `u32`; element e occupies bit
//! e - 1. The canonical ideal order used everywhere downstream is by
//! cardinality first, then by bitmask value. Automorphism and isomorphism
//! search use plain backtracking with cheap degree/level invariants,
//! which is enough for the intended ground sets (n <= 16).

use crate::error::{Error, Result};
use std::fmt;

/// Automorphism search is guarded at this ground-set size.
pub const MAX_BACKTRACK_N: usize = 16;

/// Largest ground set an ideal bitmask can represent.
pub const MAX_GROUND_SET: usize = 32;

/// Default cap on the number of order ideals an enumeration may produce.
pub const DEFAULT_IDEAL_CAP: usize = 1 << 22;

/// A down-closed subset of a poset, stored as a bitmask. Bit e - 1 is set
/// when element e belongs to the ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdeal(pub u32);

impl OrderIdeal {
    pub const EMPTY: OrderIdeal = OrderIdeal(0);

    pub fn from_elements(elems: &[usize]) -> OrderIdeal {
        let mut bits = 0;
        for &e in elems {
            bits |= 1 << (e - 1);
        }
        OrderIdeal(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> (e - 1) & 1 == 1
    }

    /// Members in increasing order, 1-based.
    pub fn members(self) -> Vec<usize> {
        (1..=MAX_GROUND_SET).filter(|&e| self.contains(e)).collect()
    }
}

impl fmt::Display for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.members().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A permutation of {1, ..., n}. `images[i]` is the image of element i + 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// From one-line notation: the i-th entry is the image of i + 1.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::OutOfRange(format!("bad permutation image {v}")));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, e: usize) -> usize {
        self.images[e - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        for e in 1..=self.n() {
            if mask >> (e - 1) & 1 == 1 {
                out |= 1 << (self.apply(e) - 1);
            }
        }
        out
    }

    /// self after other: (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        let images = (1..=self.n()).map(|e| self.apply(other.apply(e))).collect();
        Perm { images }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for e in 1..=self.n() {
            images[self.apply(e) - 1] = e;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}

/// A finite poset on {1, ..., n}: the reflexive order relation as per-element
/// up-sets and down-sets, plus the cover pairs (the transitive reduction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// above[e-1] = bitmask of { y : e <= y }, including e itself.
    above: Vec<u32>,
    /// below[e-1] = bitmask of { y : y <= e }, including e itself.
    below: Vec<u32>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds the poset generated by the given relation pairs (a, b), each
    /// meaning a < b. Non-cover pairs are allowed; the reflexive-transitive
    /// closure is taken and the stored cover list is the transitive
    /// reduction, sorted. A closure that forces x < y and y < x fails.
    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        if n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_GROUND_SET,
            });
        }
        let mut above: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for &(a, b) in pairs {
            if a == 0 || a > n || b == 0 || b > n {
                return Err(Error::OutOfRange(format!("pair ({a},{b}) outside 1..={n}")));
            }
            if a == b {
                return Err(Error::CycleDetected);
            }
            above[a - 1] |= 1 << (b - 1);
        }
        // Warshall closure on bitmask rows.
        for k in 0..n {
            for i in 0..n {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && above[i] >> j & 1 == 1 && above[j] >> i & 1 == 1 {
                    return Err(Error::CycleDetected);
                }
            }
        }
        let mut below = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if above[i] >> j & 1 == 1 {
                    below[j] |= 1 << i;
                }
            }
        }
        let mut covers = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                if a == b || above[a - 1] >> (b - 1) & 1 == 0 {
                    continue;
                }
                // a < b is a cover when no c lies strictly between.
                let between = above[a - 1] & below[b - 1] & !(1 << (a - 1)) & !(1 << (b - 1));
                if between == 0 {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();
        Ok(Poset {
            n,
            above,
            below,
            covers,
        })
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_covers(n, &[]).expect("antichain is always valid")
    }

    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Poset::from_covers(n, &pairs).expect("chain is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.above[a - 1] >> (b - 1) & 1 == 1
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn full_ideal(&self) -> OrderIdeal {
        OrderIdeal(self.full_mask())
    }

    /// The dual poset: same ground set, order reversed.
    pub fn dual(&self) -> Poset {
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        Poset {
            n: self.n,
            above: self.below.clone(),
            below: self.above.clone(),
            covers,
        }
    }

    /// Down-closure of an arbitrary subset, as a bitmask.
    pub fn closure_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        for e in 1..=self.n {
            if mask >> (e - 1) & 1 == 1 {
                out |= self.below[e - 1];
            }
        }
        out
    }

    /// The smallest order ideal containing the given elements.
    pub fn closure(&self, elems: &[usize]) -> OrderIdeal {
        OrderIdeal(self.closure_mask(OrderIdeal::from_elements(elems).bits()))
    }

    pub fn is_ideal(&self, ideal: OrderIdeal) -> bool {
        ideal.bits() & !self.full_mask() == 0 && self.closure_mask(ideal.bits()) == ideal.bits()
    }

    pub fn complement(&self, ideal: OrderIdeal) -> OrderIdeal {
        OrderIdeal(!ideal.bits() & self.full_mask())
    }

    /// All order ideals in canonical order (cardinality, then bitmask),
    /// under the default count cap.
    pub fn ideals(&self) -> Result<Vec<OrderIdeal>> {
        self.ideals_capped(DEFAULT_IDEAL_CAP)
    }

    /// Ideal enumeration by DFS over a linear extension with down-closure
    /// propagation; aborts cleanly when the count would exceed `cap`.
    pub fn ideals_capped(&self, cap: usize) -> Result<Vec<OrderIdeal>> {
        // Process elements in a linear extension so that when we reach an
        // element, everything below it has been decided.
        let mut order: Vec<usize> = (1..=self.n).collect();
        let levels = self.levels();
        order.sort_by_key(|&e| (levels[e - 1], e));

        let mut out: Vec<OrderIdeal> = Vec::new();
        let mut stack: Vec<(usize, u32)> = vec![(0, 0)];
        while let Some((pos, mask)) = stack.pop() {
            if pos == self.n {
                if out.len() == cap {
                    return Err(Error::IdealCountCapExceeded { cap });
                }
                out.push(OrderIdeal(mask));
                continue;
            }
            let e = order[pos];
            // Excluding e is always allowed.
            stack.push((pos + 1, mask));
            // Including e requires its strict down-set to be present.
            let strictly_below = self.below[e - 1] & !(1 << (e - 1));
            if strictly_below & mask == strictly_below {
                stack.push((pos + 1, mask | 1 << (e - 1)));
            }
        }
        out.sort_by_key(|i| (i.cardinality(), i.bits()));
        Ok(out)
    }

    /// Splits an ideal into its maximal elements M(I) (a plain subset,
    /// returned as a bitmask) and the nonmaximal rest, which is itself an
    /// ideal.
    pub fn maximal_split(&self, ideal: OrderIdeal) -> Result<(u32, OrderIdeal)> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let mut maximal = 0u32;
        for e in 1..=self.n {
            if !ideal.contains(e) {
                continue;
            }
            let strictly_above = self.above[e - 1] & !(1 << (e - 1));
            if strictly_above & ideal.bits() == 0 {
                maximal |= 1 << (e - 1);
            }
        }
        Ok((maximal, OrderIdeal(ideal.bits() & !maximal)))
    }

    /// level[e-1] = length of the longest chain strictly below e.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.n];
        let mut order: Vec<usize> = (1..=self.n).collect();
        order.sort_by_key(|&e| self.below[e - 1].count_ones());
        for &e in &order {
            let mut best = 0;
            for d in 1..=self.n {
                if d != e && self.leq(d, e) {
                    best = best.max(level[d - 1] + 1);
                }
            }
            level[e - 1] = best;
        }
        level
    }

    /// True when comparability is decided entirely by the longest-chain
    /// level: x < y iff level(x) < level(y). Equivalent to being an
    /// ordinal sum of antichains.
    pub fn is_hierarchical(&self) -> bool {
        let levels = self.levels();
        for x in 1..=self.n {
            for y in 1..=self.n {
                if x == y {
                    continue;
                }
                let lt = self.lt(x, y);
                let level_lt = levels[x - 1] < levels[y - 1];
                if lt != level_lt {
                    return false;
                }
            }
        }
        true
    }

    /// All automorphisms, in lexicographic order of their one-line images.
    /// Guarded at n <= 16; the search is plain backtracking pruned by
    /// degree and level invariants.
    pub fn automorphisms(&self) -> Result<Vec<Perm>> {
        if self.n > MAX_BACKTRACK_N {
            return Err(Error::GroundSetTooLarge {
                n: self.n,
                max: MAX_BACKTRACK_N,
            });
        }
        let levels = self.levels();
        let profile: Vec<(usize, u32, u32)> = (0..self.n)
            .map(|i| {
                (
                    levels[i],
                    self.above[i].count_ones(),
                    self.below[i].count_ones(),
                )
            })
            .collect();
        let mut out = Vec::new();
        let mut images = vec![0usize; self.n];
        let mut used = vec![false; self.n];
        self.search_autos(0, &mut images, &mut used, &profile, &mut out);
        Ok(out)
    }

    fn search_autos(
        &self,
        pos: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        profile: &[(usize, u32, u32)],
        out: &mut Vec<Perm>,
    ) {
        if pos == self.n {
            out.push(Perm {
                images: images.clone(),
            });
            return;
        }
        let x = pos + 1;
        for y in 1..=self.n {
            if used[y - 1] || profile[x - 1] != profile[y - 1] {
                continue;
            }
            // Both directions of order preservation against placed elements.
            let ok = (1..=pos).all(|z| {
                let zi = images[z - 1];
                self.leq(z, x) == self.leq(zi, y) && self.leq(x, z) == self.leq(y, zi)
            });
            if !ok {
                continue;
            }
            images[pos] = y;
            used[y - 1] = true;
            self.search_autos(pos + 1, images, used, profile, out);
            used[y - 1] = false;
        }
        images[pos] = 0;
    }
}

/// Order isomorphism test between the induced subposets on two ideals (or
/// any two subsets) of the same poset. Backtracking over the elements of
/// `a` with cardinality and in-subposet degree pruning.
pub fn subset_isomorphic(poset: &Poset, a: u32, b: u32) -> bool {
    if a.count_ones() != b.count_ones() {
        return false;
    }
    let xs: Vec<usize> = (1..=poset.n()).filter(|&e| a >> (e - 1) & 1 == 1).collect();
    let ys: Vec<usize> = (1..=poset.n()).filter(|&e| b >> (e - 1) & 1 == 1).collect();
    let deg = |set: &[usize], e: usize| {
        let up = set.iter().filter(|&&o| o != e && poset.leq(e, o)).count();
        let down = set.iter().filter(|&&o| o != e && poset.leq(o, e)).count();
        (up, down)
    };
    let xdeg: Vec<(usize, usize)> = xs.iter().map(|&e| deg(&xs, e)).collect();
    let ydeg: Vec<(usize, usize)> = ys.iter().map(|&e| deg(&ys, e)).collect();
    {
        let mut xs_sorted = xdeg.clone();
        let mut ys_sorted = ydeg.clone();
        xs_sorted.sort_unstable();
        ys_sorted.sort_unstable();
        if xs_sorted != ys_sorted {
            return false;
        }
    }
    let mut map = vec![usize::MAX; xs.len()];
    let mut used = vec![false; ys.len()];
    fn go(
        poset: &Poset,
        xs: &[usize],
        ys: &[usize],
        xdeg: &[(usize, usize)],
        ydeg: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pos: usize,
    ) -> bool {
        if pos == xs.len() {
            return true;
        }
        for j in 0..ys.len() {
            if used[j] || xdeg[pos] != ydeg[j] {
                continue;
            }
            let ok = (0..pos).all(|k| {
                let (x1, x2) = (xs[k], xs[pos]);
                let (y1, y2) = (ys[map[k]], ys[j]);
                poset.leq(x1, x2) == poset.leq(y1, y2) && poset.leq(x2, x1) == poset.leq(y2, y1)
            });
            if !ok {
                continue;
            }
            map[pos] = j;
            used[j] = true;
            if go(poset, xs, ys, xdeg, ydeg, map, used, pos + 1) {
                return true;
            }
            used[j] = false;
            map[pos] = usize::MAX;
        }
        false
    }
    go(poset, &xs, &ys, &xdeg, &ydeg, &mut map, &mut used, 0)
}

/// Order isomorphism of the induced subposets on two ideals.
pub fn ideal_isomorphic(poset: &Poset, a: OrderIdeal, b: OrderIdeal) -> Result<bool> {
    if !poset.is_ideal(a) || !poset.is_ideal(b) {
        return Err(Error::NotAnIdeal);
    }
    Ok(subset_isomorphic(poset, a.bits(), b.bits()))
}

/// Verdict of the complement-isomorphism classifier. On failure the
/// witness is the canonically first ideal pair that is isomorphic while
/// the complements are not (or vice versa).
#[derive(Debug, Clone)]
pub struct ComplementIsoVerdict {
    pub holds: bool,
    pub witness: Option<(OrderIdeal, OrderIdeal)>,
}

/// Does I ~ J (as induced subposets) hold exactly when I^c ~ J^c does,
/// for all ideal pairs? Complements are ideals of the dual poset; their
/// isomorphism in the dual is decided by induced-subposet isomorphism in
/// the original poset, which is invariant under dualizing both sides.
pub fn is_complement_isomorphism(poset: &Poset) -> Result<ComplementIsoVerdict> {
    let ideals = poset.ideals()?;
    for i in 0..ideals.len() {
        for j in i + 1..ideals.len() {
            let direct = subset_isomorphic(poset, ideals[i].bits(), ideals[j].bits());
            let comp = subset_isomorphic(
                poset,
                poset.complement(ideals[i]).bits(),
                poset.complement(ideals[j]).bits(),
            );
            if direct != comp {
                return Ok(ComplementIsoVerdict {
                    holds: false,
                    witness: Some((ideals[i], ideals[j])),
                });
            }
        }
    }
    Ok(ComplementIsoVerdict {
        holds: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The running five-element example: 1 < 2 < 3 and 4 < 5.
    pub fn two_chains_5() -> Poset {
        Poset::from_covers(5, &[(1, 2), (2, 3), (4, 5)]).unwrap()
    }

    /// The four-element example: 1 < 3 and 2 < 4.
    pub fn two_chains_4() -> Poset {
        Poset::from_covers(4, &[(1, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn from_covers_basics() {
        let p = two_chains_5();
        assert!(p.leq(1, 3));
        assert!(!p.leq(3, 1));
        assert!(!p.leq(1, 4));
        assert_eq!(p.covers(), &[(1, 2), (2, 3), (4, 5)]);

        let antichain = Poset::from_covers(3, &[]).unwrap();
        for a in 1..=3 {
            for b in 1..=3 {
                assert_eq!(antichain.leq(a, b), a == b);
            }
        }
    }

    #[test]
    fn transitive_reduction_drops_implied_pairs() {
        let p = Poset::from_covers(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(p.covers(), &[(1, 2), (2, 3)]);
    }

    #[test]
    fn cycle_detected() {
        assert_eq!(
            Poset::from_covers(2, &[(1, 2), (2, 1)]).unwrap_err(),
            Error::CycleDetected
        );
        assert_eq!(
            Poset::from_covers(3, &[(1, 2), (2, 3), (3, 1)]).unwrap_err(),
            Error::CycleDetected
        );
        assert!(matches!(
            Poset::from_covers(2, &[(1, 3)]),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn dual_is_involution() {
        for p in [
            two_chains_5(),
            two_chains_4(),
            Poset::chain(4),
            Poset::antichain(4),
        ] {
            assert_eq!(p.dual().dual(), p);
        }
        let antichain = Poset::antichain(3);
        assert_eq!(antichain.dual(), antichain);
        let chain = Poset::chain(3);
        assert_eq!(chain.dual().covers(), &[(2, 1), (3, 2)]);
    }

    #[test]
    fn closure_examples() {
        let p = two_chains_5();
        assert_eq!(p.closure(&[3]), OrderIdeal::from_elements(&[1, 2, 3]));
        assert_eq!(p.closure(&[]), OrderIdeal::EMPTY);
        let antichain = Poset::antichain(5);
        assert_eq!(
            antichain.closure(&[2, 4]),
            OrderIdeal::from_elements(&[2, 4])
        );
    }

    #[test]
    fn closure_is_idempotent_monotone_and_minimal() {
        let p = two_chains_5();
        for mask in 0..1u32 << 5 {
            let once = p.closure_mask(mask);
            assert_eq!(p.closure_mask(once), once);
            assert_eq!(mask & once, mask, "closure contains its argument");
            for other in 0..1u32 << 5 {
                // Monotone: mask subset of other implies closures nest.
                if mask & other == mask {
                    let wider = p.closure_mask(other);
                    assert_eq!(once & wider, once);
                }
                // Minimal: contained in every ideal containing mask.
                if p.closure_mask(other) == other && mask & other == mask {
                    assert_eq!(once & other, once);
                }
            }
        }
    }

    #[test]
    fn ideal_enumeration_matches_example() {
        let p = two_chains_5();
        let ideals = p.ideals().unwrap();
        let expect: Vec<OrderIdeal> = [
            vec![],
            vec![1],
            vec![4],
            vec![1, 2],
            vec![1, 4],
            vec![4, 5],
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 4, 5],
            vec![1, 2, 3, 4],
            vec![1, 2, 4, 5],
            vec![1, 2, 3, 4, 5],
        ]
        .iter()
        .map(|v| OrderIdeal::from_elements(v))
        .collect();
        assert_eq!(ideals, expect);
    }

    #[test]
    fn ideal_counts_for_extreme_posets() {
        for n in 1..=6 {
            assert_eq!(Poset::antichain(n).ideals().unwrap().len(), 1 << n);
            assert_eq!(Poset::chain(n).ideals().unwrap().len(), n + 1);
        }
    }

    #[test]
    fn ideal_cap_is_enforced() {
        let p = Poset::antichain(5);
        assert_eq!(
            p.ideals_capped(10).unwrap_err(),
            Error::IdealCountCapExceeded { cap: 10 }
        );
    }

    #[test]
    fn enumeration_agrees_with_subset_filter() {
        for p in [
            two_chains_5(),
            two_chains_4(),
            Poset::chain(5),
            Poset::antichain(4),
        ] {
            let mut filtered: Vec<OrderIdeal> = (0..=p.full_mask())
                .filter(|&m| p.closure_mask(m) == m)
                .map(OrderIdeal)
                .collect();
            filtered.sort_by_key(|i| (i.cardinality(), i.bits()));
            assert_eq!(p.ideals().unwrap(), filtered);
        }
    }

    #[test]
    fn maximal_split_examples() {
        let p = two_chains_5();
        let i = OrderIdeal::from_elements(&[1, 2, 4]);
        let (max, rest) = p.maximal_split(i).unwrap();
        assert_eq!(max, OrderIdeal::from_elements(&[2, 4]).bits());
        assert_eq!(rest, OrderIdeal::from_elements(&[1]));
        assert!(p.is_ideal(rest));

        assert_eq!(
            p.maximal_split(OrderIdeal::EMPTY).unwrap(),
            (0, OrderIdeal::EMPTY)
        );

        let antichain = Poset::antichain(4);
        let j = OrderIdeal::from_elements(&[2, 3]);
        assert_eq!(
            antichain.maximal_split(j).unwrap(),
            (j.bits(), OrderIdeal::EMPTY)
        );

        assert_eq!(
            p.maximal_split(OrderIdeal::from_elements(&[2]))
                .unwrap_err(),
            Error::NotAnIdeal
        );
    }

    #[test]
    fn maximal_split_invariants_exhaustive() {
        for p in [two_chains_5(), two_chains_4(), Poset::chain(4)] {
            for i in p.ideals().unwrap() {
                let (max, rest) = p.maximal_split(i).unwrap();
                assert_eq!(max & rest.bits(), 0);
                assert_eq!(max | rest.bits(), i.bits());
                assert!(p.is_ideal(rest));
            }
        }
    }

    #[test]
    fn complement_maps_ideals_to_dual_ideals() {
        for p in [
            two_chains_5(),
            two_chains_4(),
            Poset::chain(4),
            Poset::antichain(4),
        ] {
            let dual = p.dual();
            for mask in 0..=p.full_mask() {
                let ideal_here = p.closure_mask(mask) == mask;
                let comp = !mask & p.full_mask();
                let ideal_there = dual.closure_mask(comp) == comp;
                assert_eq!(ideal_here, ideal_there);
            }
        }
    }

    #[test]
    fn automorphism_examples() {
        let p = two_chains_4();
        let autos = p.automorphisms().unwrap();
        assert_eq!(autos.len(), 2);
        assert!(autos[0].is_identity());
        assert_eq!(autos[1].images(), &[2, 1, 4, 3]);

        assert_eq!(two_chains_5().automorphisms().unwrap().len(), 1);
        assert_eq!(Poset::antichain(3).automorphisms().unwrap().len(), 6);
        assert_eq!(Poset::chain(4).automorphisms().unwrap().len(), 1);
    }

    #[test]
    fn automorphisms_form_a_group_and_preserve_ideals() {
        for p in [two_chains_5(), two_chains_4(), Poset::antichain(3)] {
            let autos = p.automorphisms().unwrap();
            assert!(autos.iter().any(|a| a.is_identity()));
            for a in &autos {
                assert!(autos.contains(&a.inverse()));
                for b in &autos {
                    assert!(autos.contains(&a.compose(b)));
                }
                let ideals = p.ideals().unwrap();
                for i in &ideals {
                    let image = OrderIdeal(a.apply_mask(i.bits()));
                    assert!(ideals.contains(&image));
                }
            }
        }
    }

    #[test]
    fn ideal_isomorphism_examples() {
        let p = two_chains_5();
        let i12 = OrderIdeal::from_elements(&[1, 2]);
        let i45 = OrderIdeal::from_elements(&[4, 5]);
        let i14 = OrderIdeal::from_elements(&[1, 4]);
        assert!(ideal_isomorphic(&p, i12, i45).unwrap());
        assert!(!ideal_isomorphic(&p, i12, i14).unwrap());
        assert!(ideal_isomorphic(&p, i14, i14).unwrap());
        assert!(matches!(
            ideal_isomorphic(&p, OrderIdeal::from_elements(&[2]), i12),
            Err(Error::NotAnIdeal)
        ));
    }

    #[test]
    fn hierarchical_classifier() {
        assert!(Poset::antichain(4).is_hierarchical());
        assert!(Poset::chain(3).is_hierarchical());
        assert!(!two_chains_5().is_hierarchical());
        // Ordinal sum of a 2-antichain below a 2-antichain.
        let diamondish = Poset::from_covers(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        assert!(diamondish.is_hierarchical());
        // N-shaped poset is not.
        let n_poset = Poset::from_covers(4, &[(1, 3), (2, 3), (2, 4)]).unwrap();
        assert!(!n_poset.is_hierarchical());
    }

    #[test]
    fn complement_isomorphism_classifier() {
        let verdict = is_complement_isomorphism(&two_chains_5()).unwrap();
        assert!(!verdict.holds);
        let (a, b) = verdict.witness.unwrap();
        let p = two_chains_5();
        let direct = subset_isomorphic(&p, a.bits(), b.bits());
        let comp = subset_isomorphic(&p, p.complement(a).bits(), p.complement(b).bits());
        assert_ne!(direct, comp);
        // The pair named in the worked example also witnesses the failure.
        let i12 = OrderIdeal::from_elements(&[1, 2]);
        let i45 = OrderIdeal::from_elements(&[4, 5]);
        assert!(subset_isomorphic(&p, i12.bits(), i45.bits()));
        assert!(!subset_isomorphic(
            &p,
            p.complement(i12).bits(),
            p.complement(i45).bits()
        ));

        assert!(is_complement_isomorphism(&two_chains_4()).unwrap().holds);
        assert!(
            is_complement_isomorphism(&Poset::antichain(4))
                .unwrap()
                .holds
        );
        assert!(is_complement_isomorphism(&Poset::chain(4)).unwrap().holds);
    }

    #[test]
    fn ground_set_guards() {
        // Construction allows up to 32 elements; backtracking search is
        // guarded at 16.
        let wide = Poset::from_covers(20, &[]).unwrap();
        assert_eq!(wide.ideals_capped(1 << 21).unwrap().len(), 1 << 20);
        assert!(matches!(
            wide.automorphisms(),
            Err(Error::GroundSetTooLarge { n: 20, max: 16 })
        ));
        assert!(matches!(
            Poset::from_covers(33, &[]),
            Err(Error::GroundSetTooLarge { .. })
        ));
    }

    #[test]
    fn levels_and_display() {
        let p = two_chains_5();
        assert_eq!(p.levels(), vec![0, 1, 2, 0, 1]);
        assert_eq!(OrderIdeal::from_elements(&[1, 2, 4]).to_string(), "{1,2,4}");
        assert_eq!(OrderIdeal::EMPTY.to_string(), "{}");
    }
}
