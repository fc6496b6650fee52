//! Exact ground truth for small instances: enumerate every minimal cover
//! and solve the resulting packing LP to optimality.
//!
//! Restricting the LP to minimal covers loses nothing — lifetime assigned
//! to a non-minimal cover can always move to a minimal subset without
//! violating any battery row — and it keeps the column count sane. The
//! column count still grows combinatorially, hence the hard `limit`:
//! beyond it the oracle declines loudly rather than degrade silently.

use std::collections::BTreeSet;

use crate::bitset::BitSet;
use crate::model::{CoverageMatrix, SensorCover};
use crate::simplex;

/// Certification tolerance for the LP solve: constraint overdraft and
/// negative weights beyond this are treated as solver bugs.
pub const LP_TOLERANCE: f64 = 1e-7;

/// Default cap on the number of minimal covers to enumerate.
pub const DEFAULT_COVER_LIMIT: usize = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("more than {limit} minimal covers; instance too large for exact treatment")]
    TooManyCovers { limit: usize },
}

/// All minimal covers of an instance, each sorted internally, the set
/// ordered lexicographically. No cover is a subset of another (minimal
/// covers never nest).
#[derive(Debug, Clone)]
pub struct CoverSet {
    covers: Vec<SensorCover>,
}

impl CoverSet {
    pub fn covers(&self) -> &[SensorCover] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }
}

/// An exact optimum of the packing LP: the best total lifetime and one
/// optimal assignment of lifetimes to covers.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub objective: f64,
    pub weights: Vec<f64>,
}

/// Enumerate every minimal cover by depth-first search: branch on the
/// lowest-index uncovered target, try each of its covering sensors, and
/// prune any partial cover in which some chosen sensor has lost all of
/// its private targets (no completion of such a prefix is minimal).
/// Results are deduplicated, so the outcome is exactly the set of minimal
/// covers, independent of search order.
///
/// Fails with [`OracleError::TooManyCovers`] once more than `limit`
/// distinct covers exist, or when the search tree itself outgrows a
/// generous node budget derived from `limit`.
pub fn enumerate_minimal_covers(
    m: &CoverageMatrix,
    limit: usize,
) -> Result<CoverSet, OracleError> {
    let mut search = Search {
        m,
        limit,
        found: BTreeSet::new(),
        chosen: Vec::new(),
        counts: vec![0u32; m.n_targets()],
        nodes: 0,
        // safety valve for pathological search trees; ordinary oracle-scale
        // instances never get near it
        node_budget: 10_000_000usize.saturating_add(limit.saturating_mul(100)),
    };
    let covered = BitSet::new(m.n_targets());
    search.dfs(&covered)?;
    let covers = search
        .found
        .into_iter()
        .map(|v| SensorCover::new(v).expect("stored members are sorted, distinct, non-empty"))
        .collect();
    Ok(CoverSet { covers })
}

struct Search<'a> {
    m: &'a CoverageMatrix,
    limit: usize,
    found: BTreeSet<Vec<usize>>,
    chosen: Vec<usize>,
    /// Per target: how many chosen sensors reach it.
    counts: Vec<u32>,
    nodes: usize,
    node_budget: usize,
}

impl Search<'_> {
    fn dfs(&mut self, covered: &BitSet) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(OracleError::TooManyCovers { limit: self.limit });
        }
        let Some(branch) = (0..self.m.n_targets()).find(|&j| !covered.contains(j)) else {
            // complete cover; the private-target prune kept it minimal
            let mut members = self.chosen.clone();
            members.sort_unstable();
            if self.found.insert(members) && self.found.len() > self.limit {
                return Err(OracleError::TooManyCovers { limit: self.limit });
            }
            return Ok(());
        };
        for &i in self.m.col(branch) {
            debug_assert!(!self.chosen.contains(&i), "i covers an uncovered target");
            self.chosen.push(i);
            for j in self.m.row(i).iter() {
                self.counts[j] += 1;
            }
            // minimality prune: coverage counts only grow deeper in the
            // tree, so a member without a private target now stays
            // redundant in every completion
            let viable = self.chosen.iter().all(|&s| {
                self.m.row(s).iter().any(|j| self.counts[j] == 1)
            });
            if viable {
                let mut next = covered.clone();
                next.union_with(self.m.row(i));
                self.dfs(&next)?;
            }
            for j in self.m.row(i).iter() {
                self.counts[j] -= 1;
            }
            self.chosen.pop();
        }
        Ok(())
    }
}

/// Solve the packing LP over the given covers exactly and certify the
/// result: weights are plugged back into every battery constraint and
/// must satisfy them within [`LP_TOLERANCE`].
pub fn lp_optimal_lifetime(covers: &CoverSet, battery: &[f64]) -> LpSolution {
    assert!(!covers.is_empty(), "LP needs at least one cover column");
    let columns: Vec<Vec<usize>> = covers
        .covers()
        .iter()
        .map(|c| c.members().to_vec())
        .collect();
    for col in &columns {
        for &i in col {
            assert!(i < battery.len(), "cover uses sensor {i} outside battery");
        }
    }
    let (_, mut weights) = simplex::maximize_unit_objective(&columns, battery.len(), battery);

    // certify by re-substitution
    let mut usage = vec![0.0f64; battery.len()];
    for (col, x) in columns.iter().zip(&weights) {
        assert!(*x >= -LP_TOLERANCE, "negative LP weight {x}");
        for &i in col {
            usage[i] += x;
        }
    }
    for (i, (u, b)) in usage.iter().zip(battery).enumerate() {
        assert!(
            *u <= b + LP_TOLERANCE,
            "LP certification failed: sensor {i} usage {u} exceeds battery {b}"
        );
    }
    for x in weights.iter_mut() {
        *x = x.max(0.0);
    }
    let objective = weights.iter().sum();
    LpSolution { objective, weights }
}

/// Enumerate minimal covers, then solve the LP: the exact optimum
/// lifetime for instances small enough to enumerate.
pub fn exact_optimum(
    m: &CoverageMatrix,
    battery: &[f64],
    limit: usize,
) -> Result<LpSolution, OracleError> {
    let covers = enumerate_minimal_covers(m, limit)?;
    Ok(lp_optimal_lifetime(&covers, battery))
}
