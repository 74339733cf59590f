//! Minimization over nonempty subsets.
//!
//! * [`brute_force_min`]: ground truth over all `2^n - 1` nonempty sets.
//! * [`min_d_le_3`]: repeated contraction of semi-extreme pairs, range `{0,..,3}`.
//! * [`min_posimodular`]: reachability, minimal unreachable sets, the
//!   dual-Horn CNF `φ_f` and forward-chaining closures, for any range `{0,..,d}`.
//! * [`enumerate_all_minimizers`] and [`compute_extreme_sets`] reuse the
//!   candidate pool of [`min_posimodular`].

mod contraction;
mod enumerate;
mod general;
mod reach;

use serde::Serialize;

pub use contraction::min_d_le_3;
pub use enumerate::{compute_extreme_sets, enumerate_all_minimizers, Minimizers};
pub use general::{candidate_pool, min_posimodular, CandidatePool};
pub use reach::{minimal_unreachable, reachability, ReachabilityTable, UnreachableFamily};

use crate::error::{Error, Result};
use crate::oracle::{ensure_cap, SetFunctionOracle, Value, BRUTE_FORCE_CAP};
use crate::subset::{all_subsets, SubsetMask};

/// Which algorithm produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    BruteForceMin,
    ContractionD3,
    MinPosimodular,
    BruteForceMax,
    MaxPosimodular,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::BruteForceMin => "brute-force-min",
            Algorithm::ContractionD3 => "contraction-d3",
            Algorithm::MinPosimodular => "min-posimodular",
            Algorithm::BruteForceMax => "brute-force-max",
            Algorithm::MaxPosimodular => "max-posimodular",
        }
    }
}

/// A nonempty optimal subset of the original universe and its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimizationResult {
    pub witness: SubsetMask,
    pub value: Value,
    /// Oracle evaluations performed by this run (distinct, unless the oracle
    /// counts raw calls).
    pub oracle_calls: u64,
    pub algorithm: Algorithm,
}

/// Best candidate under `(value, cardinality, mask)` ordering.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Best {
    pub value: Value,
    pub witness: SubsetMask,
}

impl Best {
    pub fn offer(best: &mut Option<Best>, value: Value, witness: SubsetMask) {
        let better = match best {
            None => true,
            Some(b) => (value, witness.order_key()) < (b.value, b.witness.order_key()),
        };
        if better {
            *best = Some(Best { value, witness });
        }
    }
}

/// Range bound and `f(∅) = 0`, the shared preconditions of the bounded algorithms.
pub(crate) fn bounded_preconditions(oracle: &SetFunctionOracle) -> Result<u64> {
    let d = oracle.require_range_bound()?;
    oracle.check_normalized()?;
    Ok(d)
}

/// Exact minimum over nonempty subsets. The witness is the smallest
/// minimizer by cardinality, then mask.
pub fn brute_force_min(oracle: &SetFunctionOracle) -> Result<OptimizationResult> {
    let n = oracle.n();
    ensure_cap(n, BRUTE_FORCE_CAP)?;
    let start = oracle.call_count();
    let mut best = None;
    for x in all_subsets(n).skip(1) {
        Best::offer(&mut best, oracle.value(x), x);
    }
    let best = best.expect("ground set is nonempty");
    Ok(OptimizationResult {
        witness: best.witness,
        value: best.value,
        oracle_calls: oracle.call_count() - start,
        algorithm: Algorithm::BruteForceMin,
    })
}

/// Every nonempty `Y ⊆ x` has `f(Y) >= f(x)`.
pub fn is_semi_extreme(oracle: &SetFunctionOracle, x: SubsetMask) -> Result<bool> {
    oracle.ground().check(x)?;
    if x.is_empty() {
        return Err(Error::EmptySubset);
    }
    ensure_cap(x.len(), BRUTE_FORCE_CAP)?;
    let fx = oracle.value(x);
    Ok(x.submasks().skip(1).all(|y| oracle.value(y) >= fx))
}

/// `f(x) < f(x \ {v})` for every `v ∈ x`.
///
/// A singleton is compared against `f(∅)`, so on a normalized nonnegative
/// function no singleton is locally minimal. The minimization algorithms
/// treat singletons separately and never rely on this case.
pub fn is_locally_minimal(oracle: &SetFunctionOracle, x: SubsetMask) -> Result<bool> {
    oracle.ground().check(x)?;
    if x.is_empty() {
        return Err(Error::EmptySubset);
    }
    let fx = oracle.value(x);
    Ok(x.elements().all(|v| fx < oracle.value(x.without(v))))
}

/// All minimizers over nonempty sets, by direct enumeration. Test and CLI helper.
pub fn brute_force_minimizers(oracle: &SetFunctionOracle) -> Result<Vec<SubsetMask>> {
    let best = brute_force_min(oracle)?;
    Ok(all_subsets(oracle.n())
        .skip(1)
        .filter(|&x| oracle.value(x) == best.value)
        .collect())
}
