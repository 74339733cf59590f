//! Set-function families: cut functions, cardinality, the hardness gadgets
//! behind the oracle lower bounds, the semi-extreme counterexample, and a
//! seeded random monotone generator. Also the query adversary used to
//! demonstrate the minimization and maximization lower bounds.
//!
//! Every family is described by an [`InstanceDescriptor`], which fully
//! determines the function and serializes into the CLI instance format.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{check_table_range, int, parse_value, CountMode, OracleKind, SetFunctionOracle, Value};
use crate::subset::{all_subsets, combinations, GroundSet, SubsetMask, MAX_ELEMENTS};

/// Undirected graph with nonnegative integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, u64)>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        let g = WeightedGraph { n, edges };
        g.validate()?;
        Ok(g)
    }

    /// Unit-weight graph.
    pub fn unit(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| (u, v, 1)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        GroundSet::new(self.n)?;
        for &(u, v, _) in &self.edges {
            if u >= self.n || v >= self.n {
                return Err(Error::InvalidInstance(format!("edge ({u}, {v}) leaves a graph on {} vertices", self.n)));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {u}")));
            }
        }
        Ok(())
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Total weight of edges with exactly one endpoint in `x`.
    pub fn cut(&self, x: SubsetMask) -> u64 {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| x.contains(u) != x.contains(v))
            .map(|e| e.2)
            .sum()
    }
}

/// A subset written as `"0,2,3"` (element indices, `""` for the empty set)
/// or as an integer bit mask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubsetSpec {
    Mask(u32),
    Elements(String),
}

impl SubsetSpec {
    pub fn resolve(&self, n: usize) -> Result<SubsetMask> {
        let mask = match self {
            SubsetSpec::Mask(bits) => SubsetMask::from_bits(*bits),
            SubsetSpec::Elements(text) => {
                let mut mask = SubsetMask::EMPTY;
                for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    let v: usize = part
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad element index {part:?} in {text:?}")))?;
                    if v >= MAX_ELEMENTS {
                        return Err(Error::InvalidSubset { mask: u32::MAX, n });
                    }
                    mask = mask.with(v);
                }
                mask
            }
        };
        GroundSet::new(n)?.check(mask)?;
        Ok(mask)
    }
}

impl From<SubsetMask> for SubsetSpec {
    fn from(x: SubsetMask) -> Self {
        SubsetSpec::Elements(x.elements().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// An exact value written as a JSON integer or a decimal / fraction string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueSpec {
    Int(i64),
    Text(String),
}

impl ValueSpec {
    pub fn resolve(&self) -> Result<Value> {
        match self {
            ValueSpec::Int(i) => Ok(int(*i)),
            ValueSpec::Text(t) => parse_value(t),
        }
    }
}

impl From<Value> for ValueSpec {
    fn from(v: Value) -> Self {
        if v.is_integer() {
            ValueSpec::Int(v.to_integer())
        } else {
            ValueSpec::Text(v.to_string())
        }
    }
}

/// Full description of a set function; parameters are checked on build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InstanceDescriptor {
    ExplicitTable {
        n: usize,
        table: Vec<(SubsetSpec, ValueSpec)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        default: Option<ValueSpec>,
    },
    CutGraph {
        graph: WeightedGraph,
    },
    /// `|X|`, or `min(|X|, cap)` when capped.
    Cardinality {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cap: Option<u64>,
    },
    HardnessMin {
        n: usize,
        k: usize,
        s: SubsetMask,
    },
    HardnessMinBounded {
        n: usize,
        d: u64,
        t: SubsetMask,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<SubsetMask>,
    },
    HardnessMaxEven {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<SubsetMask>,
    },
    HardnessMaxOdd {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<SubsetMask>,
    },
    HardnessMaxSmalld {
        n: usize,
        d: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<SubsetMask>,
    },
    Example1 {
        n: usize,
        s: SubsetMask,
    },
    RandomMonotone {
        n: usize,
        d: u64,
        seed: u64,
    },
}

/// Options applied when turning a descriptor into an oracle.
#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Declared range bound. Required for explicit tables used with the
    /// bounded-range algorithms; for generated families it may only loosen
    /// the family's own bound.
    pub range_bound: Option<u64>,
    pub count_mode: CountMode,
    pub record_queries: bool,
}

impl InstanceDescriptor {
    pub fn family_name(&self) -> &'static str {
        match self {
            InstanceDescriptor::ExplicitTable { .. } => "explicit_table",
            InstanceDescriptor::CutGraph { .. } => "cut_graph",
            InstanceDescriptor::Cardinality { .. } => "cardinality",
            InstanceDescriptor::HardnessMin { .. } => "hardness_min",
            InstanceDescriptor::HardnessMinBounded { .. } => "hardness_min_bounded",
            InstanceDescriptor::HardnessMaxEven { .. } => "hardness_max_even",
            InstanceDescriptor::HardnessMaxOdd { .. } => "hardness_max_odd",
            InstanceDescriptor::HardnessMaxSmalld { .. } => "hardness_max_smalld",
            InstanceDescriptor::Example1 { .. } => "example1",
            InstanceDescriptor::RandomMonotone { .. } => "random_monotone",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            InstanceDescriptor::CutGraph { graph } => graph.n,
            InstanceDescriptor::ExplicitTable { n, .. }
            | InstanceDescriptor::Cardinality { n, .. }
            | InstanceDescriptor::HardnessMin { n, .. }
            | InstanceDescriptor::HardnessMinBounded { n, .. }
            | InstanceDescriptor::HardnessMaxEven { n, .. }
            | InstanceDescriptor::HardnessMaxOdd { n, .. }
            | InstanceDescriptor::HardnessMaxSmalld { n, .. }
            | InstanceDescriptor::Example1 { n, .. }
            | InstanceDescriptor::RandomMonotone { n, .. } => *n,
        }
    }

    /// Range bound implied by the family definition (`None` for tables).
    pub fn family_range_bound(&self) -> Option<u64> {
        match self {
            InstanceDescriptor::ExplicitTable { .. } => None,
            InstanceDescriptor::CutGraph { graph } => Some(graph.total_weight()),
            InstanceDescriptor::Cardinality { n, cap } => Some(cap.map_or(*n as u64, |c| c.min(*n as u64))),
            InstanceDescriptor::HardnessMin { n, .. } => Some(*n as u64),
            InstanceDescriptor::HardnessMinBounded { d, .. } => Some(*d),
            InstanceDescriptor::HardnessMaxEven { n, .. } => Some(*n as u64 / 2 + 1),
            InstanceDescriptor::HardnessMaxOdd { n, .. } => Some(*n as u64 / 2 + 2),
            InstanceDescriptor::HardnessMaxSmalld { d, .. } => Some(*d),
            InstanceDescriptor::Example1 { .. } => Some(7),
            InstanceDescriptor::RandomMonotone { d, .. } => Some(*d),
        }
    }

    pub fn build(&self) -> Result<SetFunctionOracle> {
        self.build_with(BuildOptions::default())
    }

    pub fn build_with(&self, opts: BuildOptions) -> Result<SetFunctionOracle> {
        let n = self.n();
        let ground = GroundSet::new(n)?;
        let range_bound = match (self.family_range_bound(), opts.range_bound) {
            (Some(own), Some(declared)) if declared < own => {
                return Err(Error::InvalidInstance(format!(
                    "declared range bound {declared} is below the family bound {own}"
                )))
            }
            (own, declared) => declared.or(own),
        };
        let eval = self.evaluator()?;
        if let (Evaluator::Table(table), Some(d)) = (&eval, range_bound) {
            check_table_range(table, d)?;
        }
        Ok(SetFunctionOracle::builder(ground, move |x: SubsetMask| eval.value(x))
            .range_bound(range_bound)
            .kind(OracleKind::Instance(self.clone()))
            .count_mode(opts.count_mode)
            .record_queries(opts.record_queries)
            .build())
    }

    fn evaluator(&self) -> Result<Evaluator> {
        let n = self.n();
        GroundSet::new(n)?;
        let invalid = |msg: String| Err(Error::InvalidInstance(msg));
        let fits = |x: SubsetMask, what: &str| -> Result<()> {
            if x.fits(n) {
                Ok(())
            } else {
                Err(Error::InvalidInstance(format!("{what} = {x} is not a subset of a {n}-element ground set")))
            }
        };
        Ok(match self {
            InstanceDescriptor::ExplicitTable { table, default, .. } => {
                let fallback = default.as_ref().map(ValueSpec::resolve).transpose()?;
                let mut values: Vec<Option<Value>> = vec![fallback; 1 << n];
                let mut seen = HashSet::new();
                for (subset, value) in table {
                    let x = subset.resolve(n)?;
                    if !seen.insert(x) {
                        return invalid(format!("subset {x} listed twice"));
                    }
                    values[x.bits() as usize] = Some(value.resolve()?);
                }
                let values = values
                    .into_iter()
                    .enumerate()
                    .map(|(mask, v)| {
                        v.ok_or_else(|| {
                            Error::InvalidInstance(format!(
                                "no value for subset {} and no default",
                                SubsetMask::from_bits(mask as u32)
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Evaluator::Table(values)
            }
            InstanceDescriptor::CutGraph { graph } => {
                graph.validate()?;
                Evaluator::Cut(graph.clone())
            }
            InstanceDescriptor::Cardinality { cap, .. } => Evaluator::Cardinality { cap: *cap },
            &InstanceDescriptor::HardnessMin { k, s, .. } => {
                fits(s, "S")?;
                if k == 0 || 2 * k > n {
                    return invalid(format!("need 1 <= k <= n/2, got k = {k}, n = {n}"));
                }
                if s.len() != 2 * k {
                    return invalid(format!("need |S| = 2k = {}, got {}", 2 * k, s.len()));
                }
                Evaluator::HardnessMin { k, s }
            }
            &InstanceDescriptor::HardnessMinBounded { d, t, s, .. } => {
                fits(t, "T")?;
                if t.len() as u64 != d / 2 {
                    return invalid(format!("need |T| = floor(d/2) = {}, got {}", d / 2, t.len()));
                }
                let overlay = match s {
                    None => None,
                    Some(s) => {
                        if !s.is_subset_of(t) {
                            return invalid(format!("S = {s} is not a subset of T = {t}"));
                        }
                        if s.is_empty() || s.len() % 2 != 0 {
                            return invalid(format!("|S| must be a positive even number, got {}", s.len()));
                        }
                        Some((s.len() / 2, s))
                    }
                };
                Evaluator::HardnessMinBounded { t, overlay }
            }
            &InstanceDescriptor::HardnessMaxEven { s, .. } => {
                if n % 2 != 0 {
                    return invalid(format!("hardness_max_even needs even n, got {n}"));
                }
                let k = n / 2;
                if let Some(s) = s {
                    fits(s, "S")?;
                    if s.len() < k {
                        return invalid(format!("need |S| >= k = {k}, got {}", s.len()));
                    }
                }
                Evaluator::Plateau { low: k as i64 - 1, top: k as i64, s, peak: k as i64 + 1 }
            }
            &InstanceDescriptor::HardnessMaxOdd { s, .. } => {
                if n % 2 != 1 {
                    return invalid(format!("hardness_max_odd needs odd n, got {n}"));
                }
                let k = n / 2;
                if let Some(s) = s {
                    fits(s, "S")?;
                    if s.len() < k + 1 {
                        return invalid(format!("need |S| >= k+1 = {}, got {}", k + 1, s.len()));
                    }
                }
                Evaluator::Plateau { low: k as i64, top: k as i64 + 1, s, peak: k as i64 + 2 }
            }
            &InstanceDescriptor::HardnessMaxSmalld { d, s, .. } => {
                if d == 0 {
                    return invalid("hardness_max_smalld needs d >= 1".into());
                }
                if (n as u64) + 2 < 2 * d {
                    return invalid(format!("need n >= 2d-2, got n = {n}, d = {d}"));
                }
                if let Some(s) = s {
                    fits(s, "S")?;
                    if (s.len() as u64) + d < n as u64 + 1 {
                        return invalid(format!("need |S| >= n-d+1 = {}, got {}", n as u64 + 1 - d, s.len()));
                    }
                }
                let d = d as i64;
                Evaluator::Plateau { low: d - 2, top: d - 1, s, peak: d }
            }
            &InstanceDescriptor::Example1 { s, .. } => {
                fits(s, "S")?;
                if s.len() < 4 {
                    return invalid(format!("need |S| >= 4, got {}", s.len()));
                }
                Evaluator::Example1 { s }
            }
            &InstanceDescriptor::RandomMonotone { d, seed, .. } => {
                let d = u32::try_from(d).map_err(|_| Error::InvalidInstance(format!("d = {d} too large")))?;
                Evaluator::Monotone(random_monotone_table(n, d, seed))
            }
        })
    }
}

enum Evaluator {
    Table(Vec<Value>),
    Cut(WeightedGraph),
    Cardinality { cap: Option<u64> },
    HardnessMin { k: usize, s: SubsetMask },
    HardnessMinBounded { t: SubsetMask, overlay: Option<(usize, SubsetMask)> },
    /// `|X|` up to size `low`, `top` above, `peak` at the single set `s`.
    Plateau { low: i64, top: i64, s: Option<SubsetMask>, peak: i64 },
    Example1 { s: SubsetMask },
    Monotone(Vec<u32>),
}

impl Evaluator {
    fn value(&self, x: SubsetMask) -> Value {
        match self {
            Evaluator::Table(t) => t[x.bits() as usize],
            _ => int(self.int_value(x)),
        }
    }

    fn int_value(&self, x: SubsetMask) -> i64 {
        let size = x.len() as i64;
        match self {
            Evaluator::Table(t) => t[x.bits() as usize].to_integer(),
            Evaluator::Cut(g) => g.cut(x) as i64,
            Evaluator::Cardinality { cap } => cap.map_or(size, |c| size.min(c as i64)),
            &Evaluator::HardnessMin { k, s } => {
                if x.is_subset_of(s) && x.len() > k {
                    2 * k as i64 - size
                } else {
                    size
                }
            }
            &Evaluator::HardnessMinBounded { t, overlay } => match overlay {
                Some((k, s)) if x.is_subset_of(s) && x.len() > k => 2 * k as i64 - size,
                _ if x.is_subset_of(t) => size,
                _ => (t.len() + t.intersection(x).len()) as i64,
            },
            &Evaluator::Plateau { low, top, s, peak } => {
                if Some(x) == s {
                    peak
                } else if size <= low {
                    size
                } else {
                    top
                }
            }
            &Evaluator::Example1 { s } => example1_value(s, x),
            Evaluator::Monotone(t) => t[x.bits() as usize] as i64,
        }
    }
}

fn example1_value(s: SubsetMask, x: SubsetMask) -> i64 {
    let m = s.len();
    let inside = x.intersection(s).len();
    if x.is_empty() || x == s {
        0
    } else if x.is_subset_of(s) {
        if x.len() == 1 || x.len() == m - 1 {
            1
        } else {
            2
        }
    } else if inside == 0 {
        if x.len() == 1 {
            2
        } else {
            3
        }
    } else if inside == 1 {
        4
    } else if inside <= m - 2 {
        5
    } else if inside == m - 1 {
        6
    } else {
        7
    }
}

fn random_monotone_table(n: usize, d: u32, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table: Vec<u32> = (0..1u64 << n)
        .map(|mask| if mask == 0 { 0 } else { rng.gen_range(0..=d) })
        .collect();
    // X \ {v} < X as integers, so increasing mask order visits every
    // subset before its supersets.
    for mask in 1..table.len() {
        let x = SubsetMask::from_bits(mask as u32);
        let floor = x.elements().map(|v| table[x.without(v).bits() as usize]).max().unwrap_or(0);
        table[mask] = table[mask].max(floor);
    }
    table
}

fn build(desc: InstanceDescriptor) -> Result<SetFunctionOracle> {
    desc.build()
}

/// `g(X) = |X|`.
pub fn make_cardinality(n: usize) -> Result<SetFunctionOracle> {
    build(InstanceDescriptor::Cardinality { n, cap: None })
}

/// `min(|X|, cap)`.
pub fn make_capped_cardinality(n: usize, cap: u64) -> Result<SetFunctionOracle> {
    build(InstanceDescriptor::Cardinality { n, cap: Some(cap) })
}

/// `g_S`: `2k - |X|` on subsets of `S` with more than `k` elements, `|X|` elsewhere.
pub fn make_hardness_min(n: usize, k: usize, s: SubsetMask) -> Result<SetFunctionOracle> {
    build(InstanceDescriptor::HardnessMin { n, k, s })
}

/// Range `{0, .., d}` gadget: `|X|` inside `T`, `|T| + |T ∩ X|` outside,
/// optionally overlaid with the `g_S` dip on `S ⊆ T`.
pub fn make_hardness_min_bounded(n: usize, d: u64, t: SubsetMask, s: Option<SubsetMask>) -> Result<SetFunctionOracle> {
    build(InstanceDescriptor::HardnessMinBounded { n, d, t, s })
}

/// Plateau function for the `2^(n-1)` maximization bound; parity picks the variant.
pub fn make_hardness_max(n: usize, s: Option<SubsetMask>) -> Result<SetFunctionOracle> {
    if n % 2 == 0 {
        build(InstanceDescriptor::HardnessMaxEven { n, s })
    } else {
        build(InstanceDescriptor::HardnessMaxOdd { n, s })
    }
}

/// Plateau at `d - 1` with an optional single peak `d` at `S`.
pub fn make_hardness_max_smalld(n: usize, d: u64, s: Option<SubsetMask>) -> Result<SetFunctionOracle> {
    build(InstanceDescriptor::HardnessMaxSmalld { n, d, s })
}

/// Nine-case function on range `{0, .., 7}` with no small nontrivial semi-extreme set.
pub fn make_example1(n: usize, s: SubsetMask) -> Result<SetFunctionOracle> {
    build(InstanceDescriptor::Example1 { n, s })
}

pub fn make_cut_function(graph: &WeightedGraph) -> Result<SetFunctionOracle> {
    build(InstanceDescriptor::CutGraph { graph: graph.clone() })
}

/// Random values in `{0, .., d}` raised to the max over all `X \ {v}`:
/// monotone with `f(∅) = 0`, hence posimodular.
pub fn make_random_monotone(n: usize, d: u64, seed: u64) -> Result<SetFunctionOracle> {
    build(InstanceDescriptor::RandomMonotone { n, d, seed })
}

/// Subsets queried by some algorithm run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryTranscript {
    n: usize,
    queries: Vec<SubsetMask>,
}

impl QueryTranscript {
    pub fn new(n: usize, queries: Vec<SubsetMask>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        for &q in &queries {
            ground.check(q)?;
        }
        Ok(QueryTranscript { n, queries })
    }

    /// Transcript of a recording oracle.
    pub fn from_oracle(oracle: &SetFunctionOracle) -> Option<Self> {
        oracle.transcript().map(|queries| QueryTranscript { n: oracle.n(), queries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn queries(&self) -> &[SubsetMask] {
        &self.queries
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }
}

/// `C(n, k+1) / C(2k, k+1)`: a lower bound on the number of queries needed
/// to tell `g` from every `g_S`.
pub fn q_k_lower_bound(n: usize, k: usize) -> Result<BigRational> {
    if k == 0 || 2 * k > n {
        return Err(Error::InvalidInstance(format!("need 1 <= k <= n/2, got n = {n}, k = {k}")));
    }
    let num = binomial(BigUint::from(n), BigUint::from(k + 1));
    let den = binomial(BigUint::from(2 * k), BigUint::from(k + 1));
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// First `S` with `|S| = 2k` (mask order) such that no queried `X` has
/// `X ⊆ S` and `|X| >= k+1`. On such an `S`, `g` and `g_S` agree on the
/// whole transcript. `None` when every candidate is covered.
pub fn adversary_witness(transcript: &QueryTranscript, k: usize) -> Result<Option<SubsetMask>> {
    let n = transcript.n;
    if k == 0 || 2 * k > n {
        return Err(Error::InvalidInstance(format!("need 1 <= k <= n/2, got n = {n}, k = {k}")));
    }
    let covering: Vec<SubsetMask> = transcript
        .queries
        .iter()
        .copied()
        .filter(|q| q.len() > k && q.len() <= 2 * k)
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    Ok(combinations(n, 2 * k).find(|&s| !covering.iter().any(|q| q.is_subset_of(s))))
}

/// First `S` (mask order) of size at least the peak threshold of
/// [`make_hardness_max`] that was never queried: `g` and `g_S` agree on the
/// transcript but their maxima differ by one.
pub fn max_adversary_witness(transcript: &QueryTranscript) -> Option<SubsetMask> {
    let n = transcript.n;
    let threshold = n.div_ceil(2);
    let queried: HashSet<SubsetMask> = transcript.queries.iter().copied().collect();
    all_subsets(n).find(|s| s.len() >= threshold && !queried.contains(s))
}
