//! Counted, memoized value oracles for set functions.
//!
//! A [`SetFunctionOracle`] is the only way algorithms in this crate see a set
//! function. It counts evaluations (the `T_f` accounting of the complexity
//! bounds), memoizes by default so the count is the number of *distinct*
//! subsets queried, and carries the declared range bound `d` that the
//! bounded-range algorithms rely on.
//!
//! Handles are cheap to clone; clones share the counter and the cache.
//! Derived oracles ([`SetFunctionOracle::normalize`],
//! [`SetFunctionOracle::contract`]) evaluate through their base, so queries
//! are counted at every layer.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instances::InstanceDescriptor;
use crate::subset::{all_subsets, GroundSet, SubsetMask};

/// Exact function value. Generated families are integer valued; explicit
/// tables may hold exact rationals.
pub type Value = Rational64;

/// Parse an exact value: an integer (`"-3"`), a decimal (`"2.25"`) or a
/// fraction (`"7/4"`).
pub fn parse_value(text: &str) -> Result<Value> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not an exact number: {text:?}"));
    if s.contains('/') {
        return s.parse::<Rational64>().map_err(|_| bad());
    }
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
        || frac_part.len() > 18
    {
        return Err(bad());
    }
    let denom = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
    let whole: i64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
    let frac: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
    let numer = whole
        .checked_mul(denom)
        .and_then(|w| w.checked_add(frac))
        .ok_or_else(bad)?;
    let v = Rational64::new(numer, denom);
    Ok(if neg { -v } else { v })
}

/// Render a value as `"3"` or `"7/4"`.
pub fn format_value(v: &Value) -> String {
    v.to_string()
}

/// Integer value helper for constructors.
#[inline]
pub fn int(v: i64) -> Value {
    Rational64::from_integer(v)
}

/// Whether repeated queries of the same subset are counted once or every time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMode {
    /// Cache values; `call_count` is the number of distinct subsets evaluated.
    #[default]
    Memoized,
    /// No cache; every query is counted. For adversary experiments.
    Raw,
}

/// A raw set function. Implementors must be deterministic.
pub trait SetFunction: Send + Sync {
    fn value(&self, x: SubsetMask) -> Value;
}

impl<F> SetFunction for F
where
    F: Fn(SubsetMask) -> Value + Send + Sync,
{
    fn value(&self, x: SubsetMask) -> Value {
        self(x)
    }
}

/// Where an oracle came from.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleKind {
    Instance(InstanceDescriptor),
    Normalized { offset: Value },
    Contracted,
    Custom(String),
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleKind::Instance(d) => f.write_str(d.family_name()),
            OracleKind::Normalized { offset } => write!(f, "normalized(offset {offset})"),
            OracleKind::Contracted => f.write_str("contracted"),
            OracleKind::Custom(name) => f.write_str(name),
        }
    }
}

struct Inner {
    ground: GroundSet,
    func: Box<dyn SetFunction>,
    kind: OracleKind,
    range_bound: Option<u64>,
    mode: CountMode,
    calls: AtomicU64,
    cache: Mutex<HashMap<SubsetMask, Value>>,
    transcript: Option<Mutex<Vec<SubsetMask>>>,
    contraction: Option<ContractionMap>,
}

/// A set function `f: 2^V -> Q` reachable only through value queries.
#[derive(Clone)]
pub struct SetFunctionOracle {
    inner: Arc<Inner>,
}

impl fmt::Debug for SetFunctionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetFunctionOracle")
            .field("n", &self.n())
            .field("kind", &self.inner.kind)
            .field("range_bound", &self.inner.range_bound)
            .field("mode", &self.inner.mode)
            .field("call_count", &self.call_count())
            .finish()
    }
}

/// Builder for [`SetFunctionOracle`].
pub struct OracleBuilder {
    ground: GroundSet,
    func: Box<dyn SetFunction>,
    kind: OracleKind,
    range_bound: Option<u64>,
    mode: CountMode,
    record: bool,
    contraction: Option<ContractionMap>,
}

impl OracleBuilder {
    pub fn range_bound(mut self, d: Option<u64>) -> Self {
        self.range_bound = d;
        self
    }

    pub fn kind(mut self, kind: OracleKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn count_mode(mut self, mode: CountMode) -> Self {
        self.mode = mode;
        self
    }

    /// Keep the list of distinct queried subsets (first-query order).
    pub fn record_queries(mut self, on: bool) -> Self {
        self.record = on;
        self
    }

    fn contraction(mut self, map: ContractionMap) -> Self {
        self.contraction = Some(map);
        self
    }

    pub fn build(self) -> SetFunctionOracle {
        SetFunctionOracle {
            inner: Arc::new(Inner {
                ground: self.ground,
                func: self.func,
                kind: self.kind,
                range_bound: self.range_bound,
                mode: self.mode,
                calls: AtomicU64::new(0),
                cache: Mutex::new(HashMap::new()),
                transcript: self.record.then(|| Mutex::new(Vec::new())),
                contraction: self.contraction,
            }),
        }
    }
}

impl SetFunctionOracle {
    pub fn builder(ground: GroundSet, func: impl SetFunction + 'static) -> OracleBuilder {
        OracleBuilder {
            ground,
            func: Box::new(func),
            kind: OracleKind::Custom("custom".into()),
            range_bound: None,
            mode: CountMode::Memoized,
            record: false,
            contraction: None,
        }
    }

    /// Oracle over an explicit value table indexed by mask (`table.len() == 2^n`).
    pub fn from_table(n: usize, table: Vec<Value>, range_bound: Option<u64>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if table.len() != 1usize << n {
            return Err(Error::InvalidInstance(format!(
                "table has {} entries, expected {}",
                table.len(),
                1usize << n
            )));
        }
        if let Some(d) = range_bound {
            check_table_range(&table, d)?;
        }
        Ok(SetFunctionOracle::builder(ground, move |x: SubsetMask| table[x.bits() as usize])
            .range_bound(range_bound)
            .kind(OracleKind::Custom("table".into()))
            .build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.ground.n()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.inner.ground
    }

    pub fn kind(&self) -> &OracleKind {
        &self.inner.kind
    }

    /// Declared range `{0, .., d}`; never inferred from values.
    pub fn range_bound(&self) -> Option<u64> {
        self.inner.range_bound
    }

    pub fn require_range_bound(&self) -> Result<u64> {
        self.inner.range_bound.ok_or(Error::MissingRangeBound)
    }

    pub fn count_mode(&self) -> CountMode {
        self.inner.mode
    }

    /// Number of evaluations of the underlying function so far.
    pub fn call_count(&self) -> u64 {
        self.inner.calls.load(Ordering::Relaxed)
    }

    /// Distinct queried subsets in first-query order, if recording is on.
    pub fn transcript(&self) -> Option<Vec<SubsetMask>> {
        self.inner
            .transcript
            .as_ref()
            .map(|t| t.lock().expect("transcript lock").clone())
    }

    /// `f(x)`, validating that `x` lies in the ground set.
    pub fn evaluate(&self, x: SubsetMask) -> Result<Value> {
        self.inner.ground.check(x)?;
        Ok(self.value(x))
    }

    /// `f(x)` for a mask already known to fit the ground set.
    pub(crate) fn value(&self, x: SubsetMask) -> Value {
        debug_assert!(x.fits(self.n()));
        let inner = &*self.inner;
        match inner.mode {
            CountMode::Raw => {
                inner.calls.fetch_add(1, Ordering::Relaxed);
                self.log(x);
                inner.func.value(x)
            }
            CountMode::Memoized => {
                if let Some(v) = inner.cache.lock().expect("cache lock").get(&x) {
                    return *v;
                }
                // Evaluate outside the lock: derived oracles re-enter their base.
                let v = inner.func.value(x);
                let mut cache = inner.cache.lock().expect("cache lock");
                if cache.insert(x, v).is_none() {
                    inner.calls.fetch_add(1, Ordering::Relaxed);
                    drop(cache);
                    self.log(x);
                }
                v
            }
        }
    }

    fn log(&self, x: SubsetMask) {
        if let Some(t) = &self.inner.transcript {
            t.lock().expect("transcript lock").push(x);
        }
    }

    /// Integer value with a range check against the declared bound.
    pub(crate) fn int_value(&self, x: SubsetMask) -> Result<i64> {
        let v = self.value(x);
        let d = self.inner.range_bound.unwrap_or(u64::MAX);
        match v.is_integer().then(|| v.to_integer()) {
            Some(i) if i >= 0 && (i as u64) <= d => Ok(i),
            _ => Err(Error::OutOfRange {
                subset: x,
                value: format_value(&v),
                d,
            }),
        }
    }

    /// Values of all `2^n` subsets, indexed by mask.
    pub fn table(&self) -> Vec<Value> {
        all_subsets(self.n()).map(|x| self.value(x)).collect()
    }

    /// Fails unless `f(∅) = 0`.
    pub fn check_normalized(&self) -> Result<()> {
        let v = self.value(SubsetMask::EMPTY);
        if v.is_zero() {
            Ok(())
        } else {
            Err(Error::NotNormalized(format_value(&v)))
        }
    }

    /// The oracle `g(X) = f(X) - f(∅)`. Costs one evaluation of `∅` on `self`.
    pub fn normalize(&self) -> SetFunctionOracle {
        let offset = self.value(SubsetMask::EMPTY);
        let base = self.clone();
        let range_bound = if offset.is_negative() { None } else { self.range_bound() };
        let mut builder = SetFunctionOracle::builder(self.ground().clone(), move |x: SubsetMask| {
            base.value(x) - offset
        })
        .range_bound(range_bound)
        .kind(OracleKind::Normalized { offset })
        .count_mode(self.count_mode());
        if let Some(map) = &self.inner.contraction {
            builder = builder.contraction(map.clone());
        }
        builder.build()
    }

    /// Contract `block` into one new element `s`, the last element of the new
    /// ground set; the remaining elements keep their relative order.
    ///
    /// `f'(X) = f(X)` if `s ∉ X`, else `f((X \ {s}) ∪ block)`.
    pub fn contract(&self, block: SubsetMask) -> Result<(SetFunctionOracle, ContractionMap)> {
        self.inner.ground.check(block)?;
        if block.is_empty() {
            return Err(Error::EmptyBlock);
        }
        let n = self.n();
        let rest: Vec<usize> = block.complement(n).elements().collect();
        let mut level: Vec<SubsetMask> = rest.iter().map(|&v| SubsetMask::singleton(v)).collect();
        level.push(block);

        let ground = match self.ground().labels() {
            Some(labels) => {
                let mut names: Vec<String> = rest.iter().map(|&v| labels[v].clone()).collect();
                names.push(block.elements().map(|v| labels[v].as_str()).collect::<Vec<_>>().join("+"));
                GroundSet::with_labels(names)?
            }
            None => GroundSet::new(level.len())?,
        };

        let map = self.contraction_map().compose(&level);
        let base = self.clone();
        let level_for_eval = level.clone();
        let oracle = SetFunctionOracle::builder(ground, move |x: SubsetMask| {
            base.value(expand_with(&level_for_eval, x))
        })
        .range_bound(self.range_bound())
        .kind(OracleKind::Contracted)
        .count_mode(self.count_mode())
        .contraction(map.clone())
        .build();
        Ok((oracle, map))
    }

    /// Map from this oracle's elements to blocks of the original universe.
    pub fn contraction_map(&self) -> ContractionMap {
        self.inner
            .contraction
            .clone()
            .unwrap_or_else(|| ContractionMap::identity(self.n()))
    }
}

fn expand_with(blocks: &[SubsetMask], x: SubsetMask) -> SubsetMask {
    x.elements().fold(SubsetMask::EMPTY, |acc, v| acc.union(blocks[v]))
}

pub(crate) fn check_table_range(table: &[Value], d: u64) -> Result<()> {
    for (mask, v) in table.iter().enumerate() {
        let ok = v.is_integer() && !v.is_negative() && v.to_integer().to_u64().is_some_and(|i| i <= d);
        if !ok {
            return Err(Error::OutOfRange {
                subset: SubsetMask::from_bits(mask as u32),
                value: format_value(v),
                d,
            });
        }
    }
    Ok(())
}

/// Partition of the original universe into the blocks represented by the
/// elements of a contracted universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    root_n: usize,
    blocks: Vec<SubsetMask>,
}

impl ContractionMap {
    pub fn identity(n: usize) -> Self {
        ContractionMap {
            root_n: n,
            blocks: (0..n).map(SubsetMask::singleton).collect(),
        }
    }

    /// Elements of the contracted universe.
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Size of the original universe.
    pub fn root_n(&self) -> usize {
        self.root_n
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    /// Union of the blocks of the members of `x`.
    pub fn expand(&self, x: SubsetMask) -> SubsetMask {
        expand_with(&self.blocks, x)
    }

    /// `level[i]` is a set of *this* map's elements; the result maps `i` to
    /// the union of their original blocks.
    fn compose(&self, level: &[SubsetMask]) -> ContractionMap {
        ContractionMap {
            root_n: self.root_n,
            blocks: level.iter().map(|&x| self.expand(x)).collect(),
        }
    }
}

/// Default cap for exhaustive pair checks.
pub const VERIFY_CAP: usize = 12;
/// Default cap for brute-force optimization.
pub const BRUTE_FORCE_CAP: usize = 20;

/// The exhaustive cap: `POSIMOD_N_CAP` when set, else `default`.
pub fn exhaustive_cap(default: usize) -> usize {
    std::env::var("POSIMOD_N_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub(crate) fn ensure_cap(n: usize, default: usize) -> Result<()> {
    let cap = exhaustive_cap(default);
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}
