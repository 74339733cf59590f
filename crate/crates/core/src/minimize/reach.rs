use std::collections::HashMap;

use crate::error::Result;
use crate::oracle::SetFunctionOracle;
use crate::subset::{combinations, SubsetMask};

/// Reachability from `∅` by strictly increasing one-element chains, for all
/// sets of size at most `d`.
#[derive(Debug, Clone)]
pub struct ReachabilityTable {
    d: u64,
    n: usize,
    reachable: HashMap<SubsetMask, bool>,
}

impl ReachabilityTable {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets larger than `d` are never reachable.
    pub fn is_reachable(&self, x: SubsetMask) -> bool {
        self.reachable.get(&x).copied().unwrap_or(false)
    }

    pub fn reachable_sets(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.reachable.iter().filter(|(_, &r)| r).map(|(&x, _)| x)
    }

    /// Largest set size covered by the table.
    pub fn max_size(&self) -> usize {
        (self.d as usize).min(self.n)
    }
}

/// Dynamic program over sizes `1..=d`: `X` is reachable iff some `u ∈ X` has
/// `X \ {u}` reachable and `f(X) > f(X \ {u})`.
///
/// Only sets of size at most `d` are ever queried, and a set is queried only
/// if at least one of its maximal proper subsets is reachable (otherwise it
/// is unreachable regardless of its value).
pub fn reachability(oracle: &SetFunctionOracle, d: u64) -> Result<ReachabilityTable> {
    oracle.require_range_bound()?;
    oracle.check_normalized()?;
    let n = oracle.n();
    let top = (d as usize).min(n);
    let mut reachable = HashMap::new();
    let mut values: HashMap<SubsetMask, i64> = HashMap::new();
    reachable.insert(SubsetMask::EMPTY, true);
    values.insert(SubsetMask::EMPTY, 0);
    for size in 1..=top {
        for x in combinations(n, size) {
            let preds: Vec<SubsetMask> = x
                .elements()
                .map(|u| x.without(u))
                .filter(|p| reachable.get(p).copied().unwrap_or(false))
                .collect();
            let r = if preds.is_empty() {
                false
            } else {
                let fx = oracle.int_value(x)?;
                values.insert(x, fx);
                preds.iter().any(|p| fx > values[p])
            };
            reachable.insert(x, r);
        }
    }
    Ok(ReachabilityTable { d, n, reachable })
}

/// The family `𝒰` of minimal unreachable sets and the table it came from.
#[derive(Debug, Clone)]
pub struct UnreachableFamily {
    pub members: Vec<SubsetMask>,
    pub table: ReachabilityTable,
}

impl UnreachableFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Unreachable sets of size at most `d+1` all of whose proper subsets are
/// reachable, ordered by size, then mask. Every proper subset is checked,
/// since reachability is not closed under taking subsets.
pub fn minimal_unreachable(table: &ReachabilityTable, n: usize) -> UnreachableFamily {
    let top = (table.d as usize).saturating_add(1).min(n);
    let mut members = Vec::new();
    for size in 1..=top {
        for u in combinations(n, size) {
            if table.is_reachable(u) {
                continue;
            }
            let maximal_ok = u.elements().all(|v| table.is_reachable(u.without(v)));
            if maximal_ok && u.submasks().filter(|&y| y != u).all(|y| table.is_reachable(y)) {
                members.push(u);
            }
        }
    }
    UnreachableFamily {
        members,
        table: table.clone(),
    }
}
