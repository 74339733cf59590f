//! Reference answers computed straight from value tables, plus the shared
//! instance pools of the integration suites.
#![allow(dead_code)]

use posimod::instances::{InstanceDescriptor, WeightedGraph};
use posimod::oracle::{int, Value};
use posimod::subset::{all_subsets, combinations};
use posimod::{SetFunctionOracle, SubsetMask};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Full value table of a function, with definitional answers.
pub struct Truth {
    pub n: usize,
    pub f: Vec<Value>,
}

impl Truth {
    /// Reads the table through a separate oracle so the one under test keeps
    /// a clean call count.
    pub fn of(desc: &InstanceDescriptor) -> Truth {
        let oracle = desc.build().unwrap();
        Truth {
            n: oracle.n(),
            f: all_subsets(oracle.n()).map(|x| oracle.evaluate(x).unwrap()).collect(),
        }
    }

    pub fn at(&self, x: SubsetMask) -> Value {
        self.f[x.bits() as usize]
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    pub fn nonempty(&self) -> impl Iterator<Item = SubsetMask> {
        (1u32..1 << self.n).map(SubsetMask::from_bits)
    }

    pub fn min(&self) -> Value {
        self.nonempty().map(|x| self.at(x)).min().unwrap()
    }

    pub fn minimizers(&self) -> Vec<SubsetMask> {
        let m = self.min();
        self.nonempty().filter(|&x| self.at(x) == m).collect()
    }

    pub fn max(&self) -> Value {
        self.nonempty().map(|x| self.at(x)).max().unwrap()
    }

    /// Maximum over all subsets, the empty set included.
    pub fn max_all(&self) -> Value {
        self.f.iter().copied().max().unwrap()
    }

    /// Maximizers over all subsets with no maximizing proper superset.
    pub fn maximal_maximizers(&self) -> Vec<SubsetMask> {
        let m = self.max_all();
        let maxers: Vec<SubsetMask> = (0u32..1 << self.n)
            .map(SubsetMask::from_bits)
            .filter(|&x| self.at(x) == m)
            .collect();
        maxers
            .iter()
            .copied()
            .filter(|&s| !maxers.iter().any(|&t| t != s && s.is_subset_of(t)))
            .collect()
    }

    fn proper_nonempty_subsets(x: SubsetMask) -> impl Iterator<Item = SubsetMask> {
        x.submasks().filter(move |&y| !y.is_empty() && y != x)
    }

    /// Nonempty `X` with `f(Y) > f(X)` for every nonempty proper `Y ⊂ X`.
    pub fn extreme_sets(&self) -> Vec<SubsetMask> {
        let mut out: Vec<SubsetMask> = self
            .nonempty()
            .filter(|&x| Self::proper_nonempty_subsets(x).all(|y| self.at(y) > self.at(x)))
            .collect();
        out.sort_by_key(|x| x.order_key());
        out
    }

    /// Nonempty `X` with `f(Y) >= f(X)` for every nonempty `Y ⊆ X`.
    pub fn semi_extreme_sets(&self) -> Vec<SubsetMask> {
        self.nonempty()
            .filter(|&x| x.submasks().filter(|y| !y.is_empty()).all(|y| self.at(y) >= self.at(x)))
            .collect()
    }

    pub fn locally_minimal(&self, x: SubsetMask) -> bool {
        x.elements().all(|v| self.at(x) < self.at(x.without(v)))
    }

    pub fn posimodular(&self) -> bool {
        (0u32..1 << self.n).all(|a| {
            (0u32..1 << self.n).all(|b| {
                let (x, y) = (SubsetMask::from_bits(a), SubsetMask::from_bits(b));
                self.at(x) + self.at(y) >= self.at(x.difference(y)) + self.at(y.difference(x))
            })
        })
    }
}

pub fn sets(v: &[&[usize]]) -> Vec<SubsetMask> {
    v.iter().map(|e| SubsetMask::from_elements(e.iter().copied())).collect()
}

pub fn set(v: &[usize]) -> SubsetMask {
    SubsetMask::from_elements(v.iter().copied())
}

/// Connected graph on `n` vertices: a random spanning tree plus extra edges,
/// integer weights in `1..=max_w`.
pub fn random_connected_graph(n: usize, max_w: u64, seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v, rng.gen_range(1..=max_w)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.iter().any(|e| (e.0, e.1) == (u, v)) && rng.gen_bool(0.25) {
                edges.push((u, v, rng.gen_range(1..=max_w)));
            }
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub desc: InstanceDescriptor,
}

impl Case {
    fn new(name: impl Into<String>, desc: InstanceDescriptor) -> Self {
        Case { name: name.into(), desc }
    }

    pub fn oracle(&self) -> SetFunctionOracle {
        self.desc.build().unwrap()
    }

    pub fn n(&self) -> usize {
        self.desc.n()
    }

    pub fn d(&self) -> u64 {
        self.desc.family_range_bound().unwrap()
    }
}

/// `count` evenly spread members of `combinations(n, k)`.
fn spread(n: usize, k: usize, count: usize) -> Vec<SubsetMask> {
    let all: Vec<SubsetMask> = combinations(n, k).collect();
    let step = (all.len() / count).max(1);
    all.into_iter().step_by(step).take(count).collect()
}

/// Minimization pool: cut functions of random connected graphs, random
/// monotone functions, the lower-bound constructions and Example 1.
pub fn min_pool() -> Vec<Case> {
    let mut pool = Vec::new();
    for i in 0..110u64 {
        let n = 3 + (i as usize % 8);
        let g = random_connected_graph(n, 3, 1000 + i);
        pool.push(Case::new(format!("cut n={n} seed={}", 1000 + i), InstanceDescriptor::CutGraph { graph: g }));
    }
    for seed in 0..50u64 {
        let n = 4 + (seed as usize % 7);
        let d = 1 + seed % 4;
        pool.push(Case::new(
            format!("random_monotone n={n} d={d} seed={seed}"),
            InstanceDescriptor::RandomMonotone { n, d, seed },
        ));
    }
    for n in 2..=8 {
        pool.push(Case::new(format!("cardinality n={n}"), InstanceDescriptor::Cardinality { n, cap: None }));
        for cap in 1..=3 {
            pool.push(Case::new(
                format!("cardinality n={n} cap={cap}"),
                InstanceDescriptor::Cardinality { n, cap: Some(cap) },
            ));
        }
    }
    for s in spread(8, 4, 10) {
        pool.push(Case::new(format!("hardness_min n=8 k=2 S={s}"), InstanceDescriptor::HardnessMin { n: 8, k: 2, s }));
    }
    for s in spread(6, 2, 3) {
        pool.push(Case::new(format!("hardness_min n=6 k=1 S={s}"), InstanceDescriptor::HardnessMin { n: 6, k: 1, s }));
    }
    for s in spread(7, 6, 3) {
        pool.push(Case::new(format!("hardness_min n=7 k=3 S={s}"), InstanceDescriptor::HardnessMin { n: 7, k: 3, s }));
    }
    let t = set(&[0, 1, 2, 3]);
    for s in [None, Some(set(&[0, 1])), Some(set(&[2, 3])), Some(t)] {
        pool.push(Case::new(
            format!("hardness_min_bounded n=8 d=8 S={s:?}"),
            InstanceDescriptor::HardnessMinBounded { n: 8, d: 8, t, s },
        ));
    }
    pool.push(Case::new(
        "hardness_min_bounded n=9 d=6",
        InstanceDescriptor::HardnessMinBounded { n: 9, d: 6, t: set(&[2, 5, 7]), s: None },
    ));
    for s in spread(8, 4, 6) {
        pool.push(Case::new(format!("example1 n=8 S={s}"), InstanceDescriptor::Example1 { n: 8, s }));
    }
    pool
}

/// Maximization pool: the minimization pool plus the maximization
/// lower-bound constructions.
pub fn max_pool() -> Vec<Case> {
    let mut pool = min_pool();
    for s in spread(6, 3, 4).into_iter().chain(spread(6, 4, 4)).chain([SubsetMask::full(6)]) {
        pool.push(Case::new(format!("hardness_max n=6 S={s}"), InstanceDescriptor::HardnessMaxEven { n: 6, s: Some(s) }));
    }
    pool.push(Case::new("hardness_max n=6", InstanceDescriptor::HardnessMaxEven { n: 6, s: None }));
    for s in spread(7, 4, 4).into_iter().chain(spread(7, 5, 4)) {
        pool.push(Case::new(format!("hardness_max n=7 S={s}"), InstanceDescriptor::HardnessMaxOdd { n: 7, s: Some(s) }));
    }
    pool.push(Case::new("hardness_max n=7", InstanceDescriptor::HardnessMaxOdd { n: 7, s: None }));
    for (n, d) in [(8usize, 3u64), (10, 4), (9, 4), (10, 3)] {
        pool.push(Case::new(format!("smalld n={n} d={d}"), InstanceDescriptor::HardnessMaxSmalld { n, d, s: None }));
        for s in spread(n, n - d as usize + 1, 3).into_iter().chain(spread(n, n - 1, 2)) {
            pool.push(Case::new(
                format!("smalld n={n} d={d} S={s}"),
                InstanceDescriptor::HardnessMaxSmalld { n, d, s: Some(s) },
            ));
        }
    }
    pool
}

pub fn zero_table(n: usize) -> SetFunctionOracle {
    SetFunctionOracle::from_table(n, vec![int(0); 1 << n], Some(0)).unwrap()
}

impl Truth {
    pub fn from_values(n: usize, f: Vec<Value>) -> Truth {
        assert_eq!(f.len(), 1 << n);
        Truth { n, f }
    }

    /// Declares the tightest range bound, `max f`.
    pub fn tight_oracle(&self) -> SetFunctionOracle {
        let d = self.max_all().to_integer() as u64;
        SetFunctionOracle::from_table(self.n, self.f.clone(), Some(d)).unwrap()
    }
}

/// Every normalized table on 3 elements with values in `0..=3`, as value
/// vectors indexed by mask.
pub fn all_tables_n3() -> impl Iterator<Item = Vec<Value>> {
    (0u32..1 << 14).map(|code| {
        let mut f = vec![int(0)];
        f.extend((0..7).map(|i| int(((code >> (2 * i)) & 3) as i64)));
        f
    })
}

/// Parameters of a nonnegative combination of posimodular, normalized
/// functions: a weighted cut, a random monotone table and a capped cardinality.
#[derive(Debug, Clone)]
pub struct Mixture {
    pub n: usize,
    pub edges: Vec<(usize, usize, u64)>,
    pub monotone: (u64, u64, i64),
    pub cap: (u64, i64),
}

impl Mixture {
    pub fn values(&self) -> Vec<Value> {
        let g = WeightedGraph::new(self.n, self.edges.clone()).unwrap();
        let (d, seed, w_mono) = self.monotone;
        let mono = posimod::instances::make_random_monotone(self.n, d, seed).unwrap();
        let (cap, w_cap) = self.cap;
        all_subsets(self.n)
            .map(|x| {
                int(g.cut(x) as i64)
                    + mono.evaluate(x).unwrap() * int(w_mono)
                    + int(w_cap * (x.len() as i64).min(cap as i64))
            })
            .collect()
    }

    pub fn truth(&self) -> Truth {
        Truth::from_values(self.n, self.values())
    }
}

pub mod strategies {
    use super::Mixture;
    use proptest::prelude::*;

    pub fn mixture(max_n: usize) -> impl Strategy<Value = Mixture> {
        (2..=max_n).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            (
                proptest::collection::vec(0u64..=2, m),
                (0u64..=3, any::<u64>(), 0i64..=2),
                (1u64..=3, 0i64..=2),
            )
                .prop_map(move |(w, monotone, cap)| Mixture {
                    n,
                    edges: pairs
                        .iter()
                        .zip(&w)
                        .filter(|(_, &w)| w > 0)
                        .map(|(&(u, v), &w)| (u, v, w))
                        .collect(),
                    monotone,
                    cap,
                })
        })
    }
}
