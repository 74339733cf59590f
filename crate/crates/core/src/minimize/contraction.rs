use super::{bounded_preconditions, Algorithm, Best, OptimizationResult};
use crate::error::{Error, Result};
use crate::oracle::{int, SetFunctionOracle};
use crate::subset::{combinations, SubsetMask};

/// Minimum of a posimodular `f` with range `{0,..,d}`, `d <= 3`.
///
/// Each round evaluates the current (contracted) function on sets of size
/// 1, 2, `n'-1` and `n'`, then contracts the first pair `{u,v}` with
/// `f({u,v}) <= min(f(u), f(v))`. When no such pair exists, a minimizer is
/// among the sizes `1, n'-1, n'` already seen. Contraction keeps the minimum,
/// so the best set evaluated in any round, expanded to the original
/// universe, is optimal.
///
/// Calls are counted on `oracle`; evaluations repeated through a
/// contraction hit its cache, so later rounds cost `O(n')` new calls.
pub fn min_d_le_3(oracle: &SetFunctionOracle) -> Result<OptimizationResult> {
    let start = oracle.call_count();
    let d = bounded_preconditions(oracle)?;
    if d > 3 {
        return Err(Error::RangeBoundTooLarge { d, max: 3 });
    }
    let mut g = oracle.clone();
    let mut best: Option<Best> = None;
    loop {
        let n = g.n();
        let map = g.contraction_map();
        let mut offer = |x: SubsetMask| -> Result<i64> {
            let v = g.int_value(x)?;
            Best::offer(&mut best, int(v), map.expand(x));
            Ok(v)
        };
        let singles: Vec<i64> = (0..n).map(|v| offer(SubsetMask::singleton(v))).collect::<Result<_>>()?;
        let full = SubsetMask::full(n);
        if n >= 2 {
            offer(full)?;
            for v in 0..n {
                offer(full.without(v))?;
            }
        }
        let mut pair = None;
        for x in combinations(n, 2) {
            let fx = offer(x)?;
            if pair.is_none() && x.elements().all(|v| fx <= singles[v]) {
                pair = Some(x);
            }
        }
        match pair {
            Some(x) if n > 2 => g = g.contract(x)?.0,
            _ => break,
        }
    }
    let best = best.expect("ground set is nonempty");
    Ok(OptimizationResult {
        witness: best.witness,
        value: best.value,
        oracle_calls: oracle.call_count() - start,
        algorithm: Algorithm::ContractionD3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;
    use crate::minimize::brute_force_min;

    #[test]
    fn unit_path() {
        let path = make_cut_function(&WeightedGraph::unit(3, &[(0, 1), (1, 2)]).unwrap()).unwrap();
        let r = min_d_le_3(&path).unwrap();
        assert_eq!((r.value, r.witness), (int(0), SubsetMask::full(3)));
    }

    #[test]
    fn capped_at_one() {
        let f = make_capped_cardinality(6, 1).unwrap();
        let r = min_d_le_3(&f).unwrap();
        assert_eq!((r.value, r.witness.len()), (int(1), 1));
    }

    #[test]
    fn random_monotone_agrees() {
        for seed in 0..30 {
            let f = make_random_monotone(9, 3, seed).unwrap();
            let r = min_d_le_3(&f).unwrap();
            assert_eq!(r.value, brute_force_min(&f).unwrap().value);
            assert_eq!(f.evaluate(r.witness).unwrap(), r.value);
            assert!(r.oracle_calls <= 2 * 81);
        }
    }

    #[test]
    fn rejects_large_range() {
        let f = make_cardinality(5).unwrap();
        assert!(matches!(min_d_le_3(&f), Err(Error::RangeBoundTooLarge { d: 5, max: 3 })));
    }
}
