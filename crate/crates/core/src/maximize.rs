//! Maximization over nonempty subsets.

use std::cmp::Reverse;

use num_integer::binomial;

use crate::error::Result;
use crate::minimize::{bounded_preconditions, Algorithm, OptimizationResult};
use crate::oracle::{ensure_cap, int, SetFunctionOracle, Value, BRUTE_FORCE_CAP};
use crate::subset::{all_subsets, combinations, SubsetMask};

/// Best candidate under `(value, cardinality, smaller mask)`, all maximized.
#[derive(Debug, Clone, Copy)]
struct Top {
    value: Value,
    witness: SubsetMask,
}

fn offer(top: &mut Option<Top>, value: Value, witness: SubsetMask) {
    let key = |v: Value, w: SubsetMask| (v, w.len(), Reverse(w.bits()));
    let better = match top {
        None => true,
        Some(t) => key(value, witness) > key(t.value, t.witness),
    };
    if better {
        *top = Some(Top { value, witness });
    }
}

fn finish(oracle: &SetFunctionOracle, start: u64, top: Top, algorithm: Algorithm) -> OptimizationResult {
    OptimizationResult {
        witness: top.witness,
        value: top.value,
        oracle_calls: oracle.call_count() - start,
        algorithm,
    }
}

/// Exact maximum over nonempty subsets. The witness is the largest
/// maximizer by cardinality, then the smallest mask.
pub fn brute_force_max(oracle: &SetFunctionOracle) -> Result<OptimizationResult> {
    ensure_cap(oracle.n(), BRUTE_FORCE_CAP)?;
    let start = oracle.call_count();
    let mut top = None;
    for x in all_subsets(oracle.n()).skip(1) {
        offer(&mut top, oracle.value(x), x);
    }
    Ok(finish(oracle, start, top.expect("ground set is nonempty"), Algorithm::BruteForceMax))
}

/// `Σ_{k=2}^{d-1} C(2d,k) C(n-2d, d-1-k)`, a bound on the number of
/// `(d-1)`-sets meeting two disjoint `d`-sets. Zero if `d <= 2` or `n < 2d`.
pub fn step_bound(n: usize, d: u64) -> u64 {
    let d = d as usize;
    if d <= 2 || n < 2 * d {
        return 0;
    }
    let rest = (n - 2 * d) as u64;
    (2..d)
        .filter(|&k| d - 1 - k <= rest as usize)
        .map(|k| binomial(2 * d as u64, k as u64) * binomial(rest, (d - 1 - k) as u64))
        .sum()
}

/// Maximum of a posimodular `f` with range `{0,..,d}` over nonempty sets.
///
/// 1. `X₁`: best set with `|X| >= n-d+1`; output it if `f(X₁) = d`.
/// 2. `X₂`: best set with `|X| = d-1`; output it if `f(X₂) = d`, and
///    output `X₁` if `f(X₂) <= d-2`.
/// 3. For the first `step_bound(n,d) + 1` sets `X` with `|X| = f(X) = d-1`
///    (mask order), output `X ∪ {v}` for the first `v` reaching `d`.
/// 4. Output `X₁`.
///
/// For `n < 2d` every set with `|X| >= n-d` is scanned instead.
pub fn max_posimodular(oracle: &SetFunctionOracle) -> Result<OptimizationResult> {
    let start = oracle.call_count();
    let d = bounded_preconditions(oracle)?;
    let n = oracle.n();
    let full = SubsetMask::full(n);
    if d == 0 {
        let value = oracle.value(full);
        return Ok(finish(oracle, start, Top { value, witness: full }, Algorithm::MaxPosimodular));
    }
    let top_value = int(d as i64);
    let du = d as usize;
    let scan = |lo: usize| -> Result<Top> {
        let mut top = None;
        for size in (lo.max(1)..=n).rev() {
            for x in combinations(n, size) {
                offer(&mut top, int(oracle.int_value(x)?), x);
            }
        }
        Ok(top.expect("size range is nonempty"))
    };

    if n < 2 * du {
        let top = scan(n.saturating_sub(du))?;
        return Ok(finish(oracle, start, top, Algorithm::MaxPosimodular));
    }

    let x1 = scan(n - du + 1)?;
    if x1.value == top_value {
        return Ok(finish(oracle, start, x1, Algorithm::MaxPosimodular));
    }

    let mut x2: Option<Top> = None;
    let mut level = Vec::new();
    for x in combinations(n, du - 1) {
        let v = oracle.int_value(x)?;
        if v == d as i64 - 1 {
            level.push(x);
        }
        offer(&mut x2, int(v), x);
    }
    let x2 = x2.expect("d-1 <= n");
    if x2.value == top_value {
        return Ok(finish(oracle, start, x2, Algorithm::MaxPosimodular));
    }
    if x2.value <= int(d as i64 - 2) {
        return Ok(finish(oracle, start, x1, Algorithm::MaxPosimodular));
    }

    let budget = (step_bound(n, d) as usize).saturating_add(1).min(level.len());
    for &x in &level[..budget] {
        for v in x.complement(n).elements() {
            let y = x.with(v);
            if oracle.int_value(y)? == d as i64 {
                let top = Top { value: top_value, witness: y };
                return Ok(finish(oracle, start, top, Algorithm::MaxPosimodular));
            }
        }
    }
    Ok(finish(oracle, start, x1, Algorithm::MaxPosimodular))
}
