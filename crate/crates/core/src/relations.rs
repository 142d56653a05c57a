//! Equivalence relations on the family of order ideals, realized as
//! partitions with a deterministic block order, and the complement-induced
//! dual partition on the ideals of the dual poset.
//!
//! Three named relations are built in: equal cardinality, orbits of a
//! subgroup of the automorphism group, and induced-subposet isomorphism.
//! Arbitrary custom partitions are accepted for experimentation as long as
//! they satisfy the partition invariants.
//!
//! The dual of a partition is always the complement-induced one: the block
//! of I maps to the block of I^c. Whether the *defining rule* of a named
//! relation transfers to complements is a separate question answered by
//! [`IdealPartition::dual_respects_rule`]; it always does for cardinality
//! and orbit relations, and for the isomorphism relation exactly on
//! complement-isomorphism posets.

use crate::error::{Error, Result};
use crate::poset::{ideal_isomorphic, OrderIdeal, Perm, Poset};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionKind {
    Cardinality,
    /// Orbits of this subgroup of Aut(P).
    AutOrbits(Vec<Perm>),
    Isomorphism,
    Custom,
}

impl PartitionKind {
    pub fn name(&self) -> &'static str {
        match self {
            PartitionKind::Cardinality => "cardinality",
            PartitionKind::AutOrbits(_) => "aut",
            PartitionKind::Isomorphism => "iso",
            PartitionKind::Custom => "custom",
        }
    }
}

/// A partition of the full ideal family of a poset. Blocks are nonempty,
/// pairwise disjoint, cover every ideal, and are ordered by their earliest
/// member in the canonical ideal order (cardinality, then bitmask); members
/// within a block are in canonical order too.
#[derive(Debug, Clone)]
pub struct IdealPartition {
    poset: Poset,
    ideals: Vec<OrderIdeal>,
    blocks: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    index_of: HashMap<u32, usize>,
    kind: PartitionKind,
}

impl IdealPartition {
    fn assemble(
        poset: Poset,
        ideals: Vec<OrderIdeal>,
        mut blocks: Vec<Vec<usize>>,
        kind: PartitionKind,
    ) -> Result<Self> {
        for b in blocks.iter_mut() {
            b.sort_unstable();
            if b.is_empty() {
                return Err(Error::OutOfRange("empty partition block".into()));
            }
        }
        blocks.sort_by_key(|b| b[0]);
        let mut class_of = vec![usize::MAX; ideals.len()];
        for (bi, b) in blocks.iter().enumerate() {
            for &ix in b {
                if ix >= ideals.len() || class_of[ix] != usize::MAX {
                    return Err(Error::OutOfRange(
                        "blocks must partition the ideal family".into(),
                    ));
                }
                class_of[ix] = bi;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::OutOfRange("blocks do not cover all ideals".into()));
        }
        let index_of = ideals
            .iter()
            .enumerate()
            .map(|(i, id)| (id.bits(), i))
            .collect();
        Ok(IdealPartition {
            poset,
            ideals,
            blocks,
            class_of,
            index_of,
            kind,
        })
    }

    /// Groups ideals by cardinality.
    pub fn cardinality(poset: &Poset) -> Result<Self> {
        let ideals = poset.ideals()?;
        let mut by_card: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, id) in ideals.iter().enumerate() {
            by_card.entry(id.cardinality()).or_default().push(i);
        }
        let blocks = by_card.into_values().collect();
        Self::assemble(poset.clone(), ideals, blocks, PartitionKind::Cardinality)
    }

    /// Orbits of a subgroup H of Aut(P) acting on the ideal family. H must
    /// contain the identity and be closed under composition, and each
    /// member must be an automorphism.
    pub fn aut_orbits(poset: &Poset, subgroup: &[Perm]) -> Result<Self> {
        subgroup_check(poset, subgroup)?;
        let ideals = poset.ideals()?;
        let index_of: HashMap<u32, usize> = ideals
            .iter()
            .enumerate()
            .map(|(i, id)| (id.bits(), i))
            .collect();
        let mut seen = vec![false; ideals.len()];
        let mut blocks = Vec::new();
        for start in 0..ideals.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            for sigma in subgroup {
                let image = sigma.apply_mask(ideals[start].bits());
                let ix = *index_of
                    .get(&image)
                    .expect("automorphisms permute the ideal family");
                if !seen[ix] {
                    seen[ix] = true;
                    orbit.push(ix);
                }
            }
            blocks.push(orbit);
        }
        Self::assemble(
            poset.clone(),
            ideals,
            blocks,
            PartitionKind::AutOrbits(subgroup.to_vec()),
        )
    }

    /// Groups ideals by induced-subposet isomorphism.
    pub fn isomorphism(poset: &Poset) -> Result<Self> {
        let ideals = poset.ideals()?;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<OrderIdeal> = Vec::new();
        for (i, &id) in ideals.iter().enumerate() {
            let mut placed = false;
            for (b, &rep) in reps.iter().enumerate() {
                if ideal_isomorphic(poset, id, rep)? {
                    blocks[b].push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                reps.push(id);
                blocks.push(vec![i]);
            }
        }
        Self::assemble(poset.clone(), ideals, blocks, PartitionKind::Isomorphism)
    }

    /// A user-supplied partition, given as blocks of ideals; validated
    /// against the partition invariants.
    pub fn custom(poset: &Poset, blocks: Vec<Vec<OrderIdeal>>) -> Result<Self> {
        let ideals = poset.ideals()?;
        let index_of: HashMap<u32, usize> = ideals
            .iter()
            .enumerate()
            .map(|(i, id)| (id.bits(), i))
            .collect();
        let mut ix_blocks = Vec::with_capacity(blocks.len());
        for b in blocks {
            let mut ixs = Vec::with_capacity(b.len());
            for id in b {
                let ix = index_of.get(&id.bits()).copied().ok_or(Error::NotAnIdeal)?;
                ixs.push(ix);
            }
            ix_blocks.push(ixs);
        }
        Self::assemble(poset.clone(), ideals, ix_blocks, PartitionKind::Custom)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// The canonical ideal list this partition indexes into.
    pub fn ideals(&self) -> &[OrderIdeal] {
        &self.ideals
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_classes(&self) -> usize {
        self.blocks.len()
    }

    pub fn kind(&self) -> &PartitionKind {
        &self.kind
    }

    /// Block index of the given ideal, if it belongs to the family.
    pub fn class_of(&self, ideal: OrderIdeal) -> Option<usize> {
        self.index_of
            .get(&ideal.bits())
            .map(|&ix| self.class_of[ix])
    }

    pub fn class_of_index(&self, ideal_index: usize) -> usize {
        self.class_of[ideal_index]
    }

    /// Canonical representative of a block: its earliest member.
    pub fn representative(&self, block: usize) -> OrderIdeal {
        self.ideals[self.blocks[block][0]]
    }

    /// Members of a block as ideals, in canonical order.
    pub fn block_ideals(&self, block: usize) -> Vec<OrderIdeal> {
        self.blocks[block]
            .iter()
            .map(|&ix| self.ideals[ix])
            .collect()
    }

    /// The complement-induced partition of the dual poset's ideal family:
    /// the block of I maps to the block of I^c. Applying it twice gives
    /// back the original partition.
    pub fn dual(&self) -> IdealPartition {
        let dual_poset = self.poset.dual();
        let dual_ideals = dual_poset
            .ideals()
            .expect("complements of an enumerated family stay within the cap");
        let index_of: HashMap<u32, usize> = dual_ideals
            .iter()
            .enumerate()
            .map(|(i, id)| (id.bits(), i))
            .collect();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&ix| index_of[&self.poset.complement(self.ideals[ix]).bits()])
                    .collect()
            })
            .collect();
        Self::assemble(dual_poset, dual_ideals, blocks, self.kind.clone())
            .expect("complementation preserves the partition invariants")
    }

    /// True when every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &IdealPartition) -> Result<bool> {
        if self.poset != other.poset || self.ideals != other.ideals {
            return Err(Error::PosetMismatch);
        }
        Ok(self.blocks.iter().all(|b| {
            let target = other.class_of[b[0]];
            b.iter().all(|&ix| other.class_of[ix] == target)
        }))
    }

    /// Whether the partition's defining rule, applied on the dual poset,
    /// produces exactly the complement-induced dual partition. `None` for
    /// custom partitions, which carry no rule.
    pub fn dual_respects_rule(&self) -> Result<Option<bool>> {
        let dual = self.dual();
        let by_rule = match &self.kind {
            PartitionKind::Cardinality => IdealPartition::cardinality(&self.poset.dual())?,
            PartitionKind::AutOrbits(h) => IdealPartition::aut_orbits(&self.poset.dual(), h)?,
            PartitionKind::Isomorphism => IdealPartition::isomorphism(&self.poset.dual())?,
            PartitionKind::Custom => return Ok(None),
        };
        Ok(Some(dual.blocks == by_rule.blocks))
    }

    pub fn same_blocks(&self, other: &IdealPartition) -> bool {
        self.ideals == other.ideals && self.blocks == other.blocks
    }
}

/// Checks that the permutations form a subgroup of Aut(P): right ground
/// set, all automorphisms, identity present, closed under composition.
/// A finite composition-closed set of bijections containing the identity
/// is automatically closed under inverses.
pub fn subgroup_check(poset: &Poset, subgroup: &[Perm]) -> Result<()> {
    if subgroup.is_empty() || !subgroup.iter().any(|s| s.is_identity()) {
        return Err(Error::NotASubgroup);
    }
    for sigma in subgroup {
        if sigma.n() != poset.n() {
            return Err(Error::NotAutomorphisms);
        }
        for a in 1..=poset.n() {
            for b in 1..=poset.n() {
                if poset.leq(a, b) != poset.leq(sigma.apply(a), sigma.apply(b)) {
                    return Err(Error::NotAutomorphisms);
                }
            }
        }
    }
    for a in subgroup {
        for b in subgroup {
            if !subgroup.contains(&a.compose(b)) {
                return Err(Error::NotASubgroup);
            }
        }
    }
    Ok(())
}

/// Closure of a set of automorphism generators into the subgroup they
/// generate. Used by frontends that accept generator lists.
pub fn generate_subgroup(generators: &[Perm], n: usize) -> Result<Vec<Perm>> {
    let mut group = vec![Perm::identity(n)];
    for g in generators {
        if g.n() != n {
            return Err(Error::LengthMismatch {
                left: g.n(),
                right: n,
            });
        }
    }
    let mut frontier: Vec<Perm> = generators.to_vec();
    while let Some(p) = frontier.pop() {
        if group.contains(&p) {
            continue;
        }
        group.push(p.clone());
        for g in generators {
            frontier.push(p.compose(g));
            frontier.push(g.compose(&p));
        }
    }
    group.sort();
    Ok(group)
}
