//! Exhaustive structural checks: posimodularity, submodularity,
//! monotonicity and symmetry.
//!
//! Each verifier snapshots the full value table and scans pairs in a fixed
//! order, reporting the first failure. Both pair laws are symmetric in
//! `(X, Y)`, so only pairs with `Y <= X` (as masks) are scanned; the scan is
//! `X` ascending, then `Y` ascending.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::oracle::{ensure_cap, format_value, SetFunctionOracle, Value, VERIFY_CAP};
use crate::subset::SubsetMask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    Posimodular,
    Submodular,
    Monotone,
    Symmetric,
}

impl Law {
    pub fn parse(name: &str) -> Option<Law> {
        match name.to_ascii_lowercase().as_str() {
            "posimodular" => Some(Law::Posimodular),
            "submodular" => Some(Law::Submodular),
            "monotone" => Some(Law::Monotone),
            "symmetric" => Some(Law::Symmetric),
            _ => None,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Posimodular => "posimodular",
            Law::Submodular => "submodular",
            Law::Monotone => "monotone",
            Law::Symmetric => "symmetric",
        })
    }
}

/// A failed inequality `lhs >= rhs` (or equality, for symmetry).
///
/// * posimodular: `lhs = f(X) + f(Y)`, `rhs = f(X \ Y) + f(Y \ X)`
/// * submodular: `lhs = f(X) + f(Y)`, `rhs = f(X ∩ Y) + f(X ∪ Y)`
/// * monotone: `X = Y ∪ {v}`, `lhs = f(X)`, `rhs = f(Y)`
/// * symmetric: `Y = V \ X`, `lhs = f(X)`, `rhs = f(Y)`, oriented so `lhs < rhs`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationWitness {
    pub law: Law,
    pub x: SubsetMask,
    pub y: SubsetMask,
    #[serde(serialize_with = "ser_value")]
    pub lhs: Value,
    #[serde(serialize_with = "ser_value")]
    pub rhs: Value,
}

fn ser_value<S: serde::Serializer>(v: &Value, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_value(v))
}

impl ViolationWitness {
    /// Re-evaluate the terms on `oracle` and confirm the failure.
    pub fn reproduces_on(&self, oracle: &SetFunctionOracle) -> Result<bool> {
        let f = |x| oracle.evaluate(x);
        let (x, y) = (self.x, self.y);
        let (lhs, rhs) = match self.law {
            Law::Posimodular => (f(x)? + f(y)?, f(x.difference(y))? + f(y.difference(x))?),
            Law::Submodular => (f(x)? + f(y)?, f(x.intersection(y))? + f(x.union(y))?),
            Law::Monotone | Law::Symmetric => (f(x)?, f(y)?),
        };
        Ok(lhs == self.lhs && rhs == self.rhs && lhs < rhs)
    }
}

impl fmt::Display for ViolationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} law fails at X = {}, Y = {}: {} < {}",
            self.law, self.x, self.y, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(ViolationWitness),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&ViolationWitness> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }
}

pub fn verify(oracle: &SetFunctionOracle, law: Law) -> Result<Verdict> {
    match law {
        Law::Posimodular => verify_posimodular(oracle),
        Law::Submodular => verify_submodular(oracle),
        Law::Monotone => verify_monotone(oracle),
        Law::Symmetric => verify_symmetric(oracle),
    }
}

/// Value table with an integer fast path.
enum Table {
    Int(Vec<i64>),
    Exact(Vec<Value>),
}

impl Table {
    fn of(oracle: &SetFunctionOracle) -> Table {
        let values = oracle.table();
        if values.iter().all(|v| v.is_integer()) {
            Table::Int(values.iter().map(|v| v.to_integer()).collect())
        } else {
            Table::Exact(values)
        }
    }

    fn exact(&self, x: u32) -> Value {
        match self {
            Table::Int(t) => Value::from_integer(t[x as usize]),
            Table::Exact(t) => t[x as usize],
        }
    }
}

fn scan_pairs(
    oracle: &SetFunctionOracle,
    law: Law,
    rhs_sets: impl Fn(u32, u32) -> (u32, u32),
) -> Result<Verdict> {
    let n = oracle.n();
    ensure_cap(n, VERIFY_CAP)?;
    let table = Table::of(oracle);
    let size = 1u32 << n;
    let mk = |x: u32, y: u32| {
        let (a, b) = rhs_sets(x, y);
        Verdict::Violated(ViolationWitness {
            law,
            x: SubsetMask::from_bits(x),
            y: SubsetMask::from_bits(y),
            lhs: table.exact(x) + table.exact(y),
            rhs: table.exact(a) + table.exact(b),
        })
    };
    match &table {
        Table::Int(t) => {
            for x in 0..size {
                for y in 0..=x {
                    let (a, b) = rhs_sets(x, y);
                    if t[x as usize] + t[y as usize] < t[a as usize] + t[b as usize] {
                        return Ok(mk(x, y));
                    }
                }
            }
        }
        Table::Exact(t) => {
            for x in 0..size {
                for y in 0..=x {
                    let (a, b) = rhs_sets(x, y);
                    if t[x as usize] + t[y as usize] < t[a as usize] + t[b as usize] {
                        return Ok(mk(x, y));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `f(X) + f(Y) >= f(X \ Y) + f(Y \ X)` for all `X, Y`.
pub fn verify_posimodular(oracle: &SetFunctionOracle) -> Result<Verdict> {
    scan_pairs(oracle, Law::Posimodular, |x, y| (x & !y, y & !x))
}

/// `f(X) + f(Y) >= f(X ∩ Y) + f(X ∪ Y)` for all `X, Y`.
pub fn verify_submodular(oracle: &SetFunctionOracle) -> Result<Verdict> {
    scan_pairs(oracle, Law::Submodular, |x, y| (x & y, x | y))
}

/// `f(Y ∪ {v}) >= f(Y)` over all covering pairs, `Y` ascending then `v` ascending.
pub fn verify_monotone(oracle: &SetFunctionOracle) -> Result<Verdict> {
    let n = oracle.n();
    ensure_cap(n, VERIFY_CAP)?;
    let table = Table::of(oracle);
    for y in 0..1u32 << n {
        for v in SubsetMask::from_bits(y).complement(n).elements() {
            let x = y | (1 << v);
            if table.exact(x) < table.exact(y) {
                return Ok(Verdict::Violated(ViolationWitness {
                    law: Law::Monotone,
                    x: SubsetMask::from_bits(x),
                    y: SubsetMask::from_bits(y),
                    lhs: table.exact(x),
                    rhs: table.exact(y),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `f(X) = f(V \ X)`. Nonempty proper subsets are scanned first (ascending),
/// the pair `(∅, V)` last.
pub fn verify_symmetric(oracle: &SetFunctionOracle) -> Result<Verdict> {
    let n = oracle.n();
    ensure_cap(n, VERIFY_CAP)?;
    let table = Table::of(oracle);
    let full = SubsetMask::full(n).bits();
    let order = (1..full).chain(std::iter::once(0));
    for x in order {
        let c = full & !x;
        let (fx, fc) = (table.exact(x), table.exact(c));
        if fx != fc {
            let (x, y, lhs, rhs) = if fx < fc { (x, c, fx, fc) } else { (c, x, fc, fx) };
            return Ok(Verdict::Violated(ViolationWitness {
                law: Law::Symmetric,
                x: SubsetMask::from_bits(x),
                y: SubsetMask::from_bits(y),
                lhs,
                rhs,
            }));
        }
    }
    Ok(Verdict::Holds)
}
