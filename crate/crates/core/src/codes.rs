//! Linear codes over F_q given by generator matrices, dual codes via null
//! spaces, poset weights and distances, ideal spheres, and weight
//! distributions indexed by the classes of an ideal partition.

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::poset::{OrderIdeal, Poset};
use crate::relations::IdealPartition;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Default cap on enumerated codeword counts.
pub const DEFAULT_CODEWORD_CAP: u64 = 1 << 24;

/// Default cap on enumerated sphere sizes.
pub const DEFAULT_SPHERE_CAP: u64 = 1 << 24;

/// A k x n matrix over F_q whose row space is the code. Rows need not be
/// independent; the code dimension is always the rank after reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: FieldSpec,
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl GeneratorMatrix {
    pub fn new(field: FieldSpec, n: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        for row in &rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: n,
                });
            }
            for &x in row {
                field.check_element(x)?;
            }
        }
        Ok(GeneratorMatrix { field, n, rows })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

/// Result of row reduction: the reduced matrix with dependent rows
/// dropped, its rank, and whether anything was dropped.
#[derive(Debug, Clone)]
pub struct RrefOutcome {
    pub matrix: GeneratorMatrix,
    pub rank: usize,
    pub dropped_rows: bool,
}

/// Reduced row-echelon form over F_q. Deterministic: pivots are chosen
/// left to right, topmost candidate first.
pub fn rref(g: &GeneratorMatrix) -> Result<RrefOutcome> {
    let f = g.field.clone();
    let mut rows = g.rows.clone();
    let (k, n) = (rows.len(), g.n);
    let mut pivot_row = 0;
    for col in 0..n {
        let Some(src) = (pivot_row..k).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = f.inv(rows[pivot_row][col])?;
        for x in rows[pivot_row].iter_mut() {
            *x = f.mul(*x, inv)?;
        }
        for r in 0..k {
            if r != pivot_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..n {
                    let sub = f.mul(factor, rows[pivot_row][c])?;
                    rows[r][c] = f.sub(rows[r][c], sub)?;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == k {
            break;
        }
    }
    let rank = pivot_row;
    let dropped = rank < k;
    rows.truncate(rank);
    Ok(RrefOutcome {
        matrix: GeneratorMatrix { field: f, n, rows },
        rank,
        dropped_rows: dropped,
    })
}

/// Pivot columns of a matrix already in reduced row-echelon form.
fn pivot_columns(rows: &[Vec<u64>], n: usize) -> Vec<usize> {
    let mut pivots = Vec::with_capacity(rows.len());
    for row in rows {
        let col = (0..n)
            .find(|&c| row[c] != 0)
            .expect("rref rows are nonzero");
        pivots.push(col);
    }
    pivots
}

/// Generator of the dual code: a basis of { x : G x = 0 }, one row per
/// free column of the reduced form, in increasing column order.
pub fn dual_code(g: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    let red = rref(g)?;
    let f = g.field.clone();
    let n = g.n;
    let rows = &red.matrix.rows;
    let pivots = pivot_columns(rows, n);
    let is_pivot = {
        let mut v = vec![false; n];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut dual_rows = Vec::with_capacity(n - red.rank);
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut x = vec![0u64; n];
        x[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = f.neg(rows[r][free])?;
        }
        debug_assert!(rows.iter().all(|row| f.dot(row, &x).unwrap() == 0));
        dual_rows.push(x);
    }
    Ok(GeneratorMatrix {
        field: f,
        n,
        rows: dual_rows,
    })
}

/// All q^rank codewords, zero word first, in lexicographic message order.
pub fn codewords(g: &GeneratorMatrix) -> Result<Vec<Vec<u64>>> {
    codewords_capped(g, DEFAULT_CODEWORD_CAP)
}

pub fn codewords_capped(g: &GeneratorMatrix, cap: u64) -> Result<Vec<Vec<u64>>> {
    let red = rref(g)?;
    let f = &g.field;
    let q = f.q();
    let rank = red.rank as u32;
    let count = q
        .checked_pow(rank)
        .filter(|&c| c <= cap)
        .ok_or(Error::CodeTooLarge { cap })?;
    let rows = &red.matrix.rows;
    let mut out = Vec::with_capacity(count as usize);
    let mut message = vec![0u64; red.rank];
    loop {
        let mut word = vec![0u64; g.n];
        for (coef, row) in message.iter().zip(rows) {
            if *coef == 0 {
                continue;
            }
            for (w, &x) in word.iter_mut().zip(row) {
                *w = f.add(*w, f.mul(*coef, x)?)?;
            }
        }
        out.push(word);
        // Odometer, last coordinate fastest.
        let mut pos = red.rank;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            message[pos] += 1;
            if message[pos] < q {
                break;
            }
            message[pos] = 0;
        }
    }
}

/// Support of a vector as a bitmask over {1, ..., n}.
pub fn support_mask(x: &[u64]) -> u32 {
    let mut mask = 0;
    for (i, &v) in x.iter().enumerate() {
        if v != 0 {
            mask |= 1 << i;
        }
    }
    mask
}

/// The smallest ideal containing the support of x.
pub fn support_ideal(poset: &Poset, x: &[u64]) -> Result<OrderIdeal> {
    if x.len() != poset.n() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: poset.n(),
        });
    }
    Ok(OrderIdeal(poset.closure_mask(support_mask(x))))
}

/// Poset weight: the size of the support's down-closure.
pub fn p_weight(poset: &Poset, x: &[u64]) -> Result<usize> {
    Ok(support_ideal(poset, x)?.cardinality())
}

/// Poset distance between two vectors.
pub fn p_distance(poset: &Poset, field: &FieldSpec, x: &[u64], y: &[u64]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let diff: Vec<u64> = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| field.sub(a, b))
        .collect::<Result<_>>()?;
    p_weight(poset, &diff)
}

/// Size of the sphere of an ideal without enumeration:
/// (q-1)^{|M(I)|} * q^{|I_M|}.
pub fn sphere_size(poset: &Poset, field: &FieldSpec, ideal: OrderIdeal) -> Result<BigInt> {
    let (max_mask, rest) = poset.maximal_split(ideal)?;
    let qm1 = BigInt::from(field.q() - 1);
    let q = BigInt::from(field.q());
    Ok(qm1.pow(max_mask.count_ones()) * q.pow(rest.cardinality() as u32))
}

/// The sphere of an ideal: every vector whose support closure is exactly
/// the ideal. Coordinates on the maximal elements run over F_q^*, on the
/// nonmaximal part over all of F_q, and vanish outside the ideal.
pub fn sphere(poset: &Poset, field: &FieldSpec, ideal: OrderIdeal) -> Result<Vec<Vec<u64>>> {
    sphere_capped(poset, field, ideal, DEFAULT_SPHERE_CAP)
}

pub fn sphere_capped(
    poset: &Poset,
    field: &FieldSpec,
    ideal: OrderIdeal,
    cap: u64,
) -> Result<Vec<Vec<u64>>> {
    let size = sphere_size(poset, field, ideal)?;
    if size > BigInt::from(cap) {
        return Err(Error::SphereTooLarge { cap });
    }
    let (max_mask, rest) = poset.maximal_split(ideal)?;
    let n = poset.n();
    let q = field.q();
    // Free positions in increasing element order, last one fastest.
    let positions: Vec<(usize, bool)> = (1..=n)
        .filter_map(|e| {
            if max_mask >> (e - 1) & 1 == 1 {
                Some((e, true)) // nonzero values only
            } else if rest.contains(e) {
                Some((e, false)) // all values
            } else {
                None
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut values: Vec<u64> = positions.iter().map(|&(_, nz)| u64::from(nz)).collect();
    loop {
        let mut v = vec![0u64; n];
        for (&(e, _), &val) in positions.iter().zip(&values) {
            v[e - 1] = val;
        }
        out.push(v);
        let mut pos = positions.len();
        loop {
            if pos == 0 {
                debug_assert_eq!(BigInt::from(out.len()), size);
                return Ok(out);
            }
            pos -= 1;
            values[pos] += 1;
            if values[pos] < q {
                break;
            }
            values[pos] = u64::from(positions[pos].1);
        }
    }
}

/// The code of all vectors supported inside the given ideal: generator
/// rows are the unit vectors on the ideal's members. Its dual is the
/// same construction on the complement.
pub fn ideal_code(field: &FieldSpec, n: usize, ideal: OrderIdeal) -> Result<GeneratorMatrix> {
    let rows = ideal
        .members()
        .into_iter()
        .map(|e| {
            let mut row = vec![0u64; n];
            row[e - 1] = 1;
            row
        })
        .collect();
    GeneratorMatrix::new(field.clone(), n, rows)
}

/// Counts of codewords per class of the partition, by the class of each
/// codeword's support closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub counts: Vec<BigInt>,
}

impl WeightDistribution {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }
}

pub fn weight_distribution(
    field: &FieldSpec,
    g: &GeneratorMatrix,
    partition: &IdealPartition,
) -> Result<WeightDistribution> {
    weight_distribution_capped(field, g, partition, DEFAULT_CODEWORD_CAP)
}

pub fn weight_distribution_capped(
    field: &FieldSpec,
    g: &GeneratorMatrix,
    partition: &IdealPartition,
    cap: u64,
) -> Result<WeightDistribution> {
    let poset = partition.poset();
    if g.n() != poset.n() {
        return Err(Error::LengthMismatch {
            left: g.n(),
            right: poset.n(),
        });
    }
    if g.field() != field {
        return Err(Error::PosetMismatch);
    }
    let mut counts = vec![BigInt::zero(); partition.num_classes()];
    for word in codewords_capped(g, cap)? {
        let ideal = support_ideal(poset, &word)?;
        let class = partition
            .class_of(ideal)
            .expect("support closures are ideals of the partition's family");
        counts[class] += BigInt::one();
    }
    Ok(WeightDistribution { counts })
}
