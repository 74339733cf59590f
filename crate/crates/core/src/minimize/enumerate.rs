use std::collections::{HashMap, HashSet, VecDeque};

use super::{bounded_preconditions, candidate_pool};
use crate::error::Result;
use crate::oracle::{SetFunctionOracle, Value};
use crate::subset::SubsetMask;

/// Stream of every minimizer of `f` over nonempty sets.
///
/// Locally minimal minimizers come first; every other minimizer is reached
/// from one of them by adding one element at a time through minimizers. A
/// set is expanded right after it is emitted, so producing the next set
/// costs at most `n` evaluations.
pub struct Minimizers {
    oracle: SetFunctionOracle,
    min: Value,
    queue: VecDeque<SubsetMask>,
    seen: HashSet<SubsetMask>,
    pending: Option<SubsetMask>,
}

impl Minimizers {
    /// The minimum value shared by all emitted sets.
    pub fn min_value(&self) -> Value {
        self.min
    }

    fn expand(&mut self, t: SubsetMask) {
        for v in t.complement(self.oracle.n()).elements() {
            let x = t.with(v);
            if !self.seen.contains(&x) && self.oracle.value(x) == self.min {
                self.seen.insert(x);
                self.queue.push_back(x);
            }
        }
    }
}

impl Iterator for Minimizers {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        if let Some(t) = self.pending.take() {
            self.expand(t);
        }
        let t = self.queue.pop_front()?;
        self.pending = Some(t);
        Some(t)
    }
}

/// Every minimizer over nonempty sets, as a lazy stream. The seeds
/// (minimizing singletons and minimizing candidates of the general
/// minimizer) are computed up front.
pub fn enumerate_all_minimizers(oracle: &SetFunctionOracle) -> Result<Minimizers> {
    bounded_preconditions(oracle)?;
    let n = oracle.n();
    let mut seeds: Vec<(Value, SubsetMask)> = (0..n)
        .map(SubsetMask::singleton)
        .map(|x| (oracle.value(x), x))
        .collect();
    if n > 1 {
        let pool = candidate_pool(oracle)?;
        seeds.extend(pool.candidates.iter().map(|&c| (oracle.value(c), c)));
    }
    let min = seeds.iter().map(|s| s.0).min().expect("ground set is nonempty");
    let mut queue: Vec<SubsetMask> = seeds.into_iter().filter(|s| s.0 == min).map(|s| s.1).collect();
    queue.sort_by_key(|x| x.order_key());
    queue.dedup();
    Ok(Minimizers {
        oracle: oracle.clone(),
        min,
        seen: queue.iter().copied().collect(),
        queue: queue.into(),
        pending: None,
    })
}

/// All extreme sets: nonempty `X` with `f(Y) > f(X)` for every nonempty `Y ⊊ X`.
///
/// Only members of `𝒬 = {{v}} ∪ {V \ Q : Q a closure}` can be extreme, and
/// for them it suffices to compare against the smaller members of `𝒬`.
/// Each member of `𝒬` is evaluated once. Sorted by cardinality, then mask.
pub fn compute_extreme_sets(oracle: &SetFunctionOracle) -> Result<Vec<SubsetMask>> {
    bounded_preconditions(oracle)?;
    let n = oracle.n();
    let full = SubsetMask::full(n);
    let mut family: Vec<SubsetMask> = (0..n).map(SubsetMask::singleton).collect();
    if n > 1 {
        let pool = candidate_pool(oracle)?;
        family.extend(pool.closures.iter().map(|&q| full.difference(q)).filter(|x| !x.is_empty()));
    }
    family.sort_by_key(|x| x.order_key());
    family.dedup();
    let values: HashMap<SubsetMask, Value> = family.iter().map(|&x| (x, oracle.value(x))).collect();
    Ok(family
        .iter()
        .copied()
        .filter(|&x| {
            family
                .iter()
                .take_while(|y| y.len() < x.len())
                .filter(|y| y.is_subset_of(x))
                .all(|y| values[y] > values[&x])
        })
        .collect())
}
