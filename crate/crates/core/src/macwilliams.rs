//! The analytical layer: closed-form character sums over ideal spheres,
//! the P/Q class matrices, the decision procedure for whether an ideal
//! relation transports weight distributions through duality, identity
//! verification, and the reciprocity identities.
//!
//! Throughout, `I` ranges over ideals of the poset and `Jc` over ideals of
//! its dual (complements of ideals). For a vector `u` whose support
//! closure is `I`, the sum of `chi(u . v)` over the sphere of `Jc` in the
//! dual poset depends only on `I`:
//!
//! ```text
//! sum = 0                                                   if I_M meets Jc,
//!     = (-1)^|I n Jc| (q-1)^(|M(Jc)| - |I n Jc|) q^|(Jc)_M|  otherwise,
//! ```
//!
//! with `M(Jc)` and `(Jc)_M` taken in the dual order. Every quantity the
//! module exposes is an exact integer built from these values.
//!
//! Matrix conventions. The P-matrix has rows indexed by the dual classes
//! and columns by the primal classes; its entry at `(Jc-class, I-class)`
//! sums the closed form above over the dual class, with `I` the primal
//! class representative. The Q-matrix is indexed the other way around;
//! its entry at `(I-class, Jc-class)` sums, over the primal class, the
//! mirrored closed form with `Jc` the dual representative. With these
//! conventions the two weight-distribution identities contract W(C)
//! against the columns of P (then divide by |C|) to recover the dual
//! code's distribution, and the dual distribution against the columns of
//! Q (dividing by the dual code's size) to recover W(C). On the antichain
//! the entries specialize to Krawtchouk values: the Q entry is
//! `K_{|I|}(|Jc|; n)` and the P entry is `K_{|Jc|}(|I|; n)`.

use crate::codes::{
    dual_code, ideal_code, rref, sphere_size, weight_distribution, GeneratorMatrix,
    WeightDistribution,
};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::poset::{subset_isomorphic, OrderIdeal, Perm, Poset};
use crate::relations::{subgroup_check, IdealPartition};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// The four equivalent emptiness conditions for an ideal pair (I, J),
/// with Jc the complement of J taken in the dual order:
///
/// 0. every admissible support S (containing the maximal part of I,
///    inside I) misses the nonmaximal part of Jc;
/// 1. the maximal part of I misses the nonmaximal part of Jc;
/// 2. I itself misses the nonmaximal part of Jc;
/// 3. the nonmaximal part of I misses Jc.
///
/// They agree on every ideal pair; the test suite checks this exhaustively.
pub fn emptiness_conditions(poset: &Poset, i: OrderIdeal, j: OrderIdeal) -> Result<[bool; 4]> {
    let (i_max, i_rest) = poset.maximal_split(i)?;
    if !poset.is_ideal(j) {
        return Err(Error::NotAnIdeal);
    }
    let jc = poset.complement(j);
    let dual = poset.dual();
    let (_, jc_rest) = dual.maximal_split(jc)?;
    // Condition 0 quantifies over every support between M(I) and I.
    let free: Vec<u32> = (1..=poset.n())
        .filter(|&e| i_rest.contains(e))
        .map(|e| 1u32 << (e - 1))
        .collect();
    let mut all_supports_clear = true;
    'outer: for pick in 0..1u32 << free.len() {
        let mut supp = i_max;
        for (b, bit) in free.iter().enumerate() {
            if pick >> b & 1 == 1 {
                supp |= bit;
            }
        }
        if supp & jc_rest.bits() != 0 {
            all_supports_clear = false;
            break 'outer;
        }
    }
    Ok([
        all_supports_clear,
        i_max & jc_rest.bits() == 0,
        i.bits() & jc_rest.bits() == 0,
        i_rest.bits() & jc.bits() == 0,
    ])
}

/// Closed form for the character sum over the sphere of `jc` (an ideal of
/// the dual poset), against any vector whose support closure is `i`.
pub fn char_sum_closed(
    poset: &Poset,
    field: &FieldSpec,
    i: OrderIdeal,
    jc: OrderIdeal,
) -> Result<BigInt> {
    if !poset.is_ideal(i) {
        return Err(Error::NotAnIdeal);
    }
    let dual = poset.dual();
    if !dual.is_ideal(jc) {
        return Err(Error::NotAnIdeal);
    }
    let (_, i_rest) = poset.maximal_split(i)?;
    if i_rest.bits() & jc.bits() != 0 {
        return Ok(BigInt::zero());
    }
    let (jc_max, jc_rest) = dual.maximal_split(jc)?;
    let meet = (i.bits() & jc.bits()).count_ones();
    // The nonzero case forces the meet inside the maximal part of jc.
    let surplus = jc_max
        .count_ones()
        .checked_sub(meet)
        .expect("meet lies in the maximal part when the rest of I is clear");
    let sign = if meet.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let qm1 = BigInt::from(field.q() - 1);
    let q = BigInt::from(field.q());
    Ok(sign * qm1.pow(surplus) * q.pow(jc_rest.cardinality() as u32))
}

/// Krawtchouk polynomial value
/// `K_k(x; n) = sum_j (-1)^j (q-1)^(k-j) C(x, j) C(n-x, k-j)`, exact.
pub fn krawtchouk(k: u64, x: u64, n: u64, q: u64) -> Result<BigInt> {
    if k > n || x > n {
        return Err(Error::OutOfRange(format!(
            "krawtchouk arguments k={k}, x={x}, n={n}"
        )));
    }
    let qm1 = BigInt::from(q - 1);
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(x, j) * binomial(n - x, k - j) * qm1.pow((k - j) as u32);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k.min(n - k) {
        num = num * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    num
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    P,
    Q,
}

/// Integer class matrix between a partition and its dual. For the
/// P-matrix, rows follow the dual classes and columns the primal classes;
/// the Q-matrix is indexed the other way around.
#[derive(Debug, Clone)]
pub struct ClassMatrix {
    pub which: Which,
    pub entries: Vec<Vec<BigInt>>,
    pub row_reps: Vec<OrderIdeal>,
    pub col_reps: Vec<OrderIdeal>,
    /// True when the relation failed the duality check and the entries
    /// were computed from canonical representatives anyway.
    pub flagged: bool,
}

/// Builds the P- or Q-matrix for the relation. In strict mode the relation
/// must pass [`check_macwilliams_type`], which makes every entry
/// independent of the choice of class representatives; in lenient mode a
/// failing relation yields a matrix computed from the canonical
/// representatives, with `flagged` set.
pub fn pq_matrix(
    field: &FieldSpec,
    partition: &IdealPartition,
    which: Which,
    strict: bool,
) -> Result<ClassMatrix> {
    let verdict = check_macwilliams_type(field, partition)?;
    if strict && !verdict.holds {
        return Err(Error::NotMacWilliamsType(
            verdict.witness.map(|w| w.to_string()).unwrap_or_default(),
        ));
    }
    let poset = partition.poset();
    let dual_poset = poset.dual();
    let dual = partition.dual();
    let entries = match which {
        Which::P => {
            // Entry (dual class, primal class): sum the closed form over
            // members of the dual class, primal representative fixed.
            let mut rows = Vec::with_capacity(dual.num_classes());
            for jb in 0..dual.num_classes() {
                let mut row = Vec::with_capacity(partition.num_classes());
                for ib in 0..partition.num_classes() {
                    let i_rep = partition.representative(ib);
                    let mut acc = BigInt::zero();
                    for kc in dual.block_ideals(jb) {
                        acc += char_sum_closed(poset, field, i_rep, kc)?;
                    }
                    row.push(acc);
                }
                rows.push(row);
            }
            rows
        }
        Which::Q => {
            // Entry (primal class, dual class): sum the mirrored closed
            // form over members of the primal class, dual representative
            // fixed.
            let mut rows = Vec::with_capacity(partition.num_classes());
            for ib in 0..partition.num_classes() {
                let mut row = Vec::with_capacity(dual.num_classes());
                for jb in 0..dual.num_classes() {
                    let jc_rep = dual.representative(jb);
                    let mut acc = BigInt::zero();
                    for k in partition.block_ideals(ib) {
                        acc += char_sum_closed(&dual_poset, field, jc_rep, k)?;
                    }
                    row.push(acc);
                }
                rows.push(row);
            }
            rows
        }
    };
    let (row_reps, col_reps) = match which {
        Which::P => (
            (0..dual.num_classes())
                .map(|b| dual.representative(b))
                .collect(),
            (0..partition.num_classes())
                .map(|b| partition.representative(b))
                .collect(),
        ),
        Which::Q => (
            (0..partition.num_classes())
                .map(|b| partition.representative(b))
                .collect(),
            (0..dual.num_classes())
                .map(|b| dual.representative(b))
                .collect(),
        ),
    };
    Ok(ClassMatrix {
        which,
        entries,
        row_reps,
        col_reps,
        flagged: !verdict.holds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Sums over each dual class must not depend on which member of a
    /// primal class the fixed vector comes from.
    A,
    /// The mirrored condition, with the roles of the two sides swapped.
    B,
}

/// Canonically first witness of a failed duality check: two members of one
/// class whose summed character values against some class on the other
/// side disagree.
#[derive(Debug, Clone)]
pub struct TypeWitness {
    pub condition: Condition,
    pub class_index: usize,
    pub rep1: OrderIdeal,
    pub rep2: OrderIdeal,
    pub other_class_index: usize,
    pub other_rep: OrderIdeal,
    pub sum1: BigInt,
    pub sum2: BigInt,
}

impl fmt::Display for TypeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.condition {
            Condition::A => "class",
            Condition::B => "dual class",
        };
        write!(
            f,
            "{side} #{} members {} and {} give sums {} and {} against class #{} (rep {})",
            self.class_index,
            self.rep1,
            self.rep2,
            self.sum1,
            self.sum2,
            self.other_class_index,
            self.other_rep,
        )
    }
}

#[derive(Debug, Clone)]
pub struct TypeVerdict {
    pub holds: bool,
    pub witness: Option<TypeWitness>,
}

/// Decides whether the relation transports weight distributions through
/// duality: within every class, the summed character values against each
/// class on the other side must not depend on the chosen member. Both
/// directions are tested. The reduction from vectors to ideals is valid
/// because the per-sphere sum depends only on the support closure; the
/// test suite pins that against brute-force enumeration.
pub fn check_macwilliams_type(
    field: &FieldSpec,
    partition: &IdealPartition,
) -> Result<TypeVerdict> {
    let poset = partition.poset();
    let dual_poset = poset.dual();
    let dual = partition.dual();

    // Condition A: iterate primal classes, compare each member's row of
    // sums over the dual classes against the first member's.
    for (bi, block) in partition.blocks().iter().enumerate() {
        if block.len() < 2 {
            continue;
        }
        let first = partition.ideals()[block[0]];
        let base = sums_against(poset, field, first, &dual)?;
        for &ix in &block[1..] {
            let member = partition.ideals()[ix];
            let row = sums_against(poset, field, member, &dual)?;
            if let Some(jb) = (0..row.len()).find(|&jb| base[jb] != row[jb]) {
                return Ok(TypeVerdict {
                    holds: false,
                    witness: Some(TypeWitness {
                        condition: Condition::A,
                        class_index: bi,
                        rep1: first,
                        rep2: member,
                        other_class_index: jb,
                        other_rep: dual.representative(jb),
                        sum1: base[jb].clone(),
                        sum2: row[jb].clone(),
                    }),
                });
            }
        }
    }

    // Condition B: the same with the dual side fixed per member.
    for (jb, block) in dual.blocks().iter().enumerate() {
        if block.len() < 2 {
            continue;
        }
        let first = dual.ideals()[block[0]];
        let base = sums_against(&dual_poset, field, first, partition)?;
        for &ix in &block[1..] {
            let member = dual.ideals()[ix];
            let row = sums_against(&dual_poset, field, member, partition)?;
            if let Some(bi) = (0..row.len()).find(|&bi| base[bi] != row[bi]) {
                return Ok(TypeVerdict {
                    holds: false,
                    witness: Some(TypeWitness {
                        condition: Condition::B,
                        class_index: jb,
                        rep1: first,
                        rep2: member,
                        other_class_index: bi,
                        other_rep: partition.representative(bi),
                        sum1: base[bi].clone(),
                        sum2: row[bi].clone(),
                    }),
                });
            }
        }
    }

    Ok(TypeVerdict {
        holds: true,
        witness: None,
    })
}

/// For a fixed ideal on one side, the vector of summed closed-form
/// character values against every class of the other side.
fn sums_against(
    poset: &Poset,
    field: &FieldSpec,
    fixed: OrderIdeal,
    other: &IdealPartition,
) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(other.num_classes());
    for b in 0..other.num_classes() {
        let mut acc = BigInt::zero();
        for kc in other.block_ideals(b) {
            acc += char_sum_closed(poset, field, fixed, kc)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Both sides of the two weight-distribution identities for one code.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    /// W(C) over the primal classes, by direct enumeration.
    pub w_primal: Vec<BigInt>,
    /// W of the dual code over the dual classes, by direct enumeration.
    pub w_dual_direct: Vec<BigInt>,
    /// The transform of W(C): contracted against the P-matrix columns and
    /// divided by |C|.
    pub w_dual_transformed: Vec<BigInt>,
    /// The reverse transform of the dual distribution: contracted against
    /// the Q-matrix columns and divided by the dual code's size.
    pub w_primal_transformed: Vec<BigInt>,
    pub forward_holds: bool,
    pub backward_holds: bool,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.forward_holds && self.backward_holds
    }
}

/// Verifies both identities exactly for one code: the transformed primal
/// distribution must reproduce the dual code's distribution, and back.
/// In strict mode the relation must pass the duality check first.
pub fn verify_identity(
    field: &FieldSpec,
    g: &GeneratorMatrix,
    partition: &IdealPartition,
    strict: bool,
) -> Result<IdentityReport> {
    if strict {
        let verdict = check_macwilliams_type(field, partition)?;
        if !verdict.holds {
            return Err(Error::NotMacWilliamsType(
                verdict.witness.map(|w| w.to_string()).unwrap_or_default(),
            ));
        }
    }
    let dual_partition = partition.dual();
    let w_primal = weight_distribution(field, g, partition)?.counts;
    let dual_g = dual_code(g)?;
    let w_dual_direct = weight_distribution(field, &dual_g, &dual_partition)?.counts;

    let rank = rref(g)?.rank;
    let code_size = BigInt::from(field.q()).pow(rank as u32);
    let dual_size = BigInt::from(field.q()).pow((g.n() - rank) as u32);

    let p_matrix = pq_matrix(field, partition, Which::P, false)?;
    let q_matrix = pq_matrix(field, partition, Which::Q, false)?;

    // Forward: |C| * A_dual[jb] = sum_ib A[ib] * P[jb][ib].
    let mut w_dual_transformed = Vec::with_capacity(dual_partition.num_classes());
    for jb in 0..dual_partition.num_classes() {
        let mut acc = BigInt::zero();
        for (ib, a) in w_primal.iter().enumerate() {
            acc += a * &p_matrix.entries[jb][ib];
        }
        w_dual_transformed.push(exact_div(acc, &code_size)?);
    }
    // Backward: |dual C| * A[ib] = sum_jb A_dual[jb] * Q[ib][jb].
    let mut w_primal_transformed = Vec::with_capacity(partition.num_classes());
    for ib in 0..partition.num_classes() {
        let mut acc = BigInt::zero();
        for (jb, a) in w_dual_direct.iter().enumerate() {
            acc += a * &q_matrix.entries[ib][jb];
        }
        w_primal_transformed.push(exact_div(acc, &dual_size)?);
    }

    let forward_holds = w_dual_transformed == w_dual_direct;
    let backward_holds = w_primal_transformed == w_primal;
    Ok(IdentityReport {
        w_primal,
        w_dual_direct,
        w_dual_transformed,
        w_primal_transformed,
        forward_holds,
        backward_holds,
    })
}

fn exact_div(num: BigInt, den: &BigInt) -> Result<BigInt> {
    if (&num % den).is_zero() {
        Ok(num / den)
    } else {
        Err(Error::NonIntegralQuotient)
    }
}

/// Weight distributions of the span of one nonzero vector and of its dual
/// code, from the closed forms: the primal distribution places one count
/// on the empty class and q-1 on the class of the vector's support
/// closure; each dual count is
/// `(|sphere class| + (q-1) * summed char values) / q`, an exact division.
/// Valid for any partition.
pub fn one_dim_distributions(
    field: &FieldSpec,
    u: &[u64],
    partition: &IdealPartition,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let poset = partition.poset();
    if u.len() != poset.n() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: poset.n(),
        });
    }
    for &x in u {
        field.check_element(x)?;
    }
    if u.iter().all(|&x| x == 0) {
        return Err(Error::ZeroGenerator);
    }
    let support = crate::codes::support_ideal(poset, u)?;
    let mut w = vec![BigInt::zero(); partition.num_classes()];
    w[partition
        .class_of(OrderIdeal::EMPTY)
        .expect("empty ideal is present")] += BigInt::one();
    w[partition.class_of(support).expect("closures are ideals")] += BigInt::from(field.q() - 1);

    let dual_partition = partition.dual();
    let dual_poset = poset.dual();
    let q = BigInt::from(field.q());
    let qm1 = BigInt::from(field.q() - 1);
    let mut w_dual = Vec::with_capacity(dual_partition.num_classes());
    for jb in 0..dual_partition.num_classes() {
        let mut class_sphere = BigInt::zero();
        let mut class_chi = BigInt::zero();
        for kc in dual_partition.block_ideals(jb) {
            class_sphere += sphere_size(&dual_poset, field, kc)?;
            class_chi += char_sum_closed(poset, field, support, kc)?;
        }
        w_dual.push(exact_div(class_sphere + &qm1 * class_chi, &q)?);
    }
    Ok((w, w_dual))
}

/// The cross-multiplied reciprocity between the two matrices: for every
/// class pair,
/// `|I-class| * P[jc][i] * |sphere(I)| == |Jc-class| * Q[i][jc] * |sphere(Jc)|`,
/// with canonical representatives. Requires the relation to pass the
/// duality check so the entries are representative-independent.
pub fn reciprocity_check(field: &FieldSpec, partition: &IdealPartition) -> Result<bool> {
    let p_matrix = pq_matrix(field, partition, Which::P, true)?;
    let q_matrix = pq_matrix(field, partition, Which::Q, true)?;
    let poset = partition.poset();
    let dual_poset = poset.dual();
    let dual = partition.dual();
    for ib in 0..partition.num_classes() {
        let i_rep = partition.representative(ib);
        let i_weight = sphere_size(poset, field, i_rep)?;
        let i_count = BigInt::from(partition.blocks()[ib].len());
        for jb in 0..dual.num_classes() {
            let jc_rep = dual.representative(jb);
            let jc_weight = sphere_size(&dual_poset, field, jc_rep)?;
            let jc_count = BigInt::from(dual.blocks()[jb].len());
            let lhs = &i_count * &p_matrix.entries[jb][ib] * &i_weight;
            let rhs = &jc_count * &q_matrix.entries[ib][jb] * &jc_weight;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The orbit-stabilizer refinement of reciprocity for a subgroup H of the
/// automorphism group: with `stab(X) = |{s in H : s(X) = X}|`,
/// `stab(Jc) * p-entry * |sphere(I)| == stab(I) * q-entry * |sphere(Jc)|`,
/// entries computed from the given ideals as representatives. Also
/// confirms `|H| = |orbit| * |stabilizer|` on both sides.
pub fn stabilizer_identity(
    poset: &Poset,
    field: &FieldSpec,
    subgroup: &[Perm],
    i: OrderIdeal,
    jc: OrderIdeal,
) -> Result<bool> {
    subgroup_check(poset, subgroup)?;
    let partition = IdealPartition::aut_orbits(poset, subgroup)?;
    let dual = partition.dual();
    let dual_poset = poset.dual();
    let ib = partition.class_of(i).ok_or(Error::NotAnIdeal)?;
    let jb = dual.class_of(jc).ok_or(Error::NotAnIdeal)?;

    let stab_i = subgroup
        .iter()
        .filter(|s| s.apply_mask(i.bits()) == i.bits())
        .count();
    let stab_jc = subgroup
        .iter()
        .filter(|s| s.apply_mask(jc.bits()) == jc.bits())
        .count();
    let orbit_i = partition.blocks()[ib].len();
    let orbit_jc = dual.blocks()[jb].len();
    if subgroup.len() != orbit_i * stab_i || subgroup.len() != orbit_jc * stab_jc {
        return Ok(false);
    }

    let mut p_entry = BigInt::zero();
    for kc in dual.block_ideals(jb) {
        p_entry += char_sum_closed(poset, field, i, kc)?;
    }
    let mut q_entry = BigInt::zero();
    for k in partition.block_ideals(ib) {
        q_entry += char_sum_closed(&dual_poset, field, jc, k)?;
    }
    let lhs = BigInt::from(stab_jc) * p_entry * sphere_size(poset, field, i)?;
    let rhs = BigInt::from(stab_i) * q_entry * sphere_size(&dual_poset, field, jc)?;
    Ok(lhs == rhs)
}

/// A materialized counterexample for the isomorphism relation on a poset
/// that is not complement-isomorphism: two ideals that are isomorphic
/// while their complements are not, and the codes of all vectors
/// supported inside each. The codes have equal isomorphism-class
/// distributions while their duals distribute differently over the dual
/// classes.
#[derive(Debug, Clone)]
pub struct EsCounterexample {
    pub pair: (OrderIdeal, OrderIdeal),
    pub code1: GeneratorMatrix,
    pub code2: GeneratorMatrix,
    pub w1: WeightDistribution,
    pub w2: WeightDistribution,
    pub dual_w1: WeightDistribution,
    pub dual_w2: WeightDistribution,
}

/// Searches the isomorphism classes for the canonically first pair that
/// materializes the counterexample. Returns `None` when the poset is a
/// complement-isomorphism poset (no such pair exists).
pub fn es_counterexample(poset: &Poset, field: &FieldSpec) -> Result<Option<EsCounterexample>> {
    let partition = IdealPartition::isomorphism(poset)?;
    let dual_partition = partition.dual();
    let ideals = partition.ideals().to_vec();
    for block in partition.blocks() {
        for (a_pos, &a_ix) in block.iter().enumerate() {
            for &b_ix in &block[a_pos + 1..] {
                let (a, b) = (ideals[a_ix], ideals[b_ix]);
                let comp_iso = subset_isomorphic(
                    poset,
                    poset.complement(a).bits(),
                    poset.complement(b).bits(),
                );
                if comp_iso {
                    continue;
                }
                let code1 = ideal_code(field, poset.n(), a)?;
                let code2 = ideal_code(field, poset.n(), b)?;
                let w1 = weight_distribution(field, &code1, &partition)?;
                let w2 = weight_distribution(field, &code2, &partition)?;
                let dual_w1 = weight_distribution(field, &dual_code(&code1)?, &dual_partition)?;
                let dual_w2 = weight_distribution(field, &dual_code(&code2)?, &dual_partition)?;
                if w1 == w2 && dual_w1 != dual_w2 {
                    return Ok(Some(EsCounterexample {
                        pair: (a, b),
                        code1,
                        code2,
                        w1,
                        w2,
                        dual_w1,
                        dual_w2,
                    }));
                }
            }
        }
    }
    Ok(None)
}
