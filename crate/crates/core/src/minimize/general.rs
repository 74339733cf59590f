use std::collections::HashSet;

use super::{bounded_preconditions, minimal_unreachable, reachability, Algorithm, Best, OptimizationResult, UnreachableFamily};
use crate::error::Result;
use crate::horn::{build_phi, complement_cnf, enumerate_closures, HornCnf};
use crate::oracle::SetFunctionOracle;
use crate::subset::SubsetMask;

/// Everything Step 2 of the general minimizer derives from `f`.
#[derive(Debug, Clone)]
pub struct CandidatePool {
    pub d: u64,
    pub unreachable: UnreachableFamily,
    /// The dual-Horn CNF `φ_f`.
    pub phi: HornCnf,
    /// Distinct closures `FCP(φ̄_f; I)` over seeds `|I| <= d`.
    pub closures: Vec<SubsetMask>,
    /// `V \ Q` for each closure `Q`, deduplicated, of size at least 2, sorted
    /// by cardinality then mask.
    pub candidates: Vec<SubsetMask>,
}

/// Builds `𝒰`, `φ_f`, the closures of its complement and the candidate sets.
/// Queries `f` only on sets of size at most `d`.
pub fn candidate_pool(oracle: &SetFunctionOracle) -> Result<CandidatePool> {
    let d = bounded_preconditions(oracle)?;
    let n = oracle.n();
    let table = reachability(oracle, d)?;
    let unreachable = minimal_unreachable(&table, n);
    let phi = build_phi(&unreachable.members, n)?;
    let closures = enumerate_closures(&complement_cnf(&phi)?, n, d.min(n as u64) as usize)?;
    let full = SubsetMask::full(n);
    let mut seen = HashSet::new();
    let mut candidates: Vec<SubsetMask> = closures
        .iter()
        .map(|&q| full.difference(q))
        .filter(|c| c.len() >= 2 && seen.insert(*c))
        .collect();
    candidates.sort_by_key(|c| c.order_key());
    Ok(CandidatePool {
        d,
        unreachable,
        phi,
        closures,
        candidates,
    })
}

/// Minimum of a posimodular `f` with range `{0,..,d}` over nonempty sets.
///
/// Step 1 takes the best singleton, Step 2 the best candidate of size at
/// least 2 from [`candidate_pool`], Step 3 the better of the two. Ties go to
/// the smaller cardinality, then the smaller mask.
pub fn min_posimodular(oracle: &SetFunctionOracle) -> Result<OptimizationResult> {
    let start = oracle.call_count();
    bounded_preconditions(oracle)?;
    let n = oracle.n();
    let mut best = None;
    for v in 0..n {
        let x = SubsetMask::singleton(v);
        Best::offer(&mut best, oracle.value(x), x);
    }
    if n > 1 {
        let pool = candidate_pool(oracle)?;
        for &c in &pool.candidates {
            Best::offer(&mut best, oracle.value(c), c);
        }
    }
    let best = best.expect("ground set is nonempty");
    Ok(OptimizationResult {
        witness: best.witness,
        value: best.value,
        oracle_calls: oracle.call_count() - start,
        algorithm: Algorithm::MinPosimodular,
    })
}
