//! Derived relation knowledge, computed by running the solver on two- and
//! three-variable networks: pairwise consistency (the converse table) and
//! weak composition, plus the single-tile decomposition predicate.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::matrix::{CdcBasicNetwork, DirectionMatrix, Model};
use crate::solver::{solve_basic, SolveOutcome};

/// Is the two-constraint network `{v1 a v2, v2 b v1}` satisfiable?
pub fn pairwise_consistent(a: DirectionMatrix, b: DirectionMatrix, model: Model) -> bool {
    let mut net = CdcBasicNetwork::new(2);
    net.set(0, 1, a);
    net.set(1, 0, b);
    solve_basic(&net, model).is_consistent()
}

/// For every basic relation, the set of basic relations consistent with it
/// in the reverse direction. Converses are not unique in these calculi.
#[derive(Debug, Clone)]
pub struct ConverseTable {
    model: Model,
    /// Indexed by the nine-bit encoding; invalid matrices map to empty sets.
    entries: Vec<Vec<DirectionMatrix>>,
}

impl ConverseTable {
    /// Exhaustive sweep over all ordered pairs of basic relations; the
    /// two-variable solves are independent and run in parallel.
    pub fn build(model: Model) -> Self {
        let basics = model.basic_relations();
        let rows: Vec<(u16, Vec<DirectionMatrix>)> = basics
            .par_iter()
            .map(|&a| {
                let converses = basics
                    .iter()
                    .copied()
                    .filter(|&b| pairwise_consistent(a, b, model))
                    .collect();
                (a.bits(), converses)
            })
            .collect();
        let mut entries = vec![Vec::new(); 512];
        for (bits, converses) in rows {
            entries[bits as usize] = converses;
        }
        ConverseTable { model, entries }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn converses(&self, m: DirectionMatrix) -> &[DirectionMatrix] {
        &self.entries[m.bits() as usize]
    }

    pub fn is_consistent_pair(&self, a: DirectionMatrix, b: DirectionMatrix) -> bool {
        self.converses(a).contains(&b)
    }

    /// Total number of ordered consistent pairs.
    pub fn ordered_pair_count(&self) -> usize {
        self.entries.iter().map(|c| c.len()).sum()
    }

    /// How many relations have each converse-set size.
    pub fn size_distribution(&self) -> BTreeMap<usize, usize> {
        let mut dist = BTreeMap::new();
        for m in self.model.basic_relations() {
            *dist.entry(self.converses(m).len()).or_insert(0) += 1;
        }
        dist
    }
}

/// Weak composition of `alpha` and `beta`: all basic `gamma` jointly
/// realizable with them in a three-variable configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionResult {
    pub alpha: DirectionMatrix,
    pub beta: DirectionMatrix,
    pub gammas: Vec<DirectionMatrix>,
}

impl CompositionResult {
    pub fn contains(&self, gamma: DirectionMatrix) -> bool {
        self.gammas.contains(&gamma)
    }
}

/// `gamma` belongs to the composition iff some completion of
/// `{v1 alpha v2, v2 beta v3, v1 gamma v3}` with converse relations is
/// consistent; only converse-compatible completions need solving.
pub fn weak_composition(
    table: &ConverseTable,
    alpha: DirectionMatrix,
    beta: DirectionMatrix,
) -> CompositionResult {
    let model = table.model();
    let gammas = model
        .basic_relations()
        .into_par_iter()
        .filter(|&gamma| composition_contains(table, alpha, beta, gamma))
        .collect();
    CompositionResult { alpha, beta, gammas }
}

/// Membership test for a single `gamma` without enumerating the whole
/// composition.
pub fn composition_contains(
    table: &ConverseTable,
    alpha: DirectionMatrix,
    beta: DirectionMatrix,
    gamma: DirectionMatrix,
) -> bool {
    let model = table.model();
    for &alpha_c in table.converses(alpha) {
        for &beta_c in table.converses(beta) {
            for &gamma_c in table.converses(gamma) {
                let mut net = CdcBasicNetwork::new(3);
                net.set(0, 1, alpha);
                net.set(1, 0, alpha_c);
                net.set(1, 2, beta);
                net.set(2, 1, beta_c);
                net.set(0, 2, gamma);
                net.set(2, 0, gamma_c);
                if let SolveOutcome::Consistent(_) = solve_basic(&net, model) {
                    return true;
                }
            }
        }
    }
    false
}

/// One single-tile matrix per nonzero entry, in ascending tile order.
pub fn single_tile_components(m: DirectionMatrix) -> Vec<DirectionMatrix> {
    (1..=9)
        .filter(|&phi| m.tile(phi))
        .map(|phi| DirectionMatrix::ZERO.with_tile(phi, true))
        .collect()
}

/// Can `gamma` be written as the entrywise union of basic relations
/// `gamma_s`, one per single-tile component `alpha_s` of `alpha`, with each
/// `gamma_s` in the weak composition of `alpha_s` and `beta`?
///
/// Decided by a reachability sweep over the union masks attainable from the
/// per-component candidate sets.
pub fn is_decomposable(
    gamma: DirectionMatrix,
    alpha: DirectionMatrix,
    beta: DirectionMatrix,
    table: &ConverseTable,
) -> bool {
    let components = single_tile_components(alpha);
    assert!(!components.is_empty(), "alpha must be a valid basic relation");
    let candidate_sets: Vec<Vec<DirectionMatrix>> = components
        .iter()
        .map(|&alpha_s| {
            weak_composition(table, alpha_s, beta)
                .gammas
                .into_iter()
                .filter(|g| g.is_submatrix_of(gamma))
                .collect()
        })
        .collect();
    let mut reachable = vec![false; 512];
    reachable[0] = true;
    for set in &candidate_sets {
        if set.is_empty() {
            return false;
        }
        let mut next = vec![false; 512];
        for bits in 0..512 {
            if !reachable[bits] {
                continue;
            }
            for g in set {
                next[bits | g.bits() as usize] = true;
            }
        }
        reachable = next;
    }
    reachable[gamma.bits() as usize]
}
