//! Ground sets and subsets as bit masks.
//!
//! Every subset of a ground set `V = {0, .., n-1}` is a single `u32`, bit `i`
//! set iff element `i` is a member. Masks are canonical: two masks are equal
//! iff they have the same members. The library-wide limit is
//! [`MAX_ELEMENTS`] elements.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 24;

/// A subset of a ground set, stored as a membership bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The whole ground set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        SubsetMask(1 << v)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0, |acc, v| acc | (1 << v)))
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 & (1 << v) != 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// `V \ self` for a ground set of `n` elements.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        SubsetMask(self.0 | (1 << v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        SubsetMask(self.0 & !(1 << v))
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// True if the mask only uses elements below `n`.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Self::full(n))
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// Every submask of `self`, including `∅` and `self`, in increasing mask order.
    pub fn submasks(self) -> Submasks {
        Submasks {
            of: self.0,
            next: Some(0),
        }
    }

    /// Deterministic tie-break key used throughout: cardinality first, then mask.
    #[inline]
    pub fn order_key(self) -> (usize, u32) {
        (self.len(), self.0)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = elements.iter().find(|&&v| v >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!(
                "element {bad} exceeds the {MAX_ELEMENTS}-element limit"
            )));
        }
        Ok(SubsetMask::from_elements(elements))
    }
}

/// Iterator over the members of a mask.
#[derive(Clone)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

/// Iterator over all submasks of a mask.
pub struct Submasks {
    of: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == self.of {
            None
        } else {
            Some(((cur | !self.of).wrapping_add(1)) & self.of)
        };
        Some(SubsetMask(cur))
    }
}

/// All `k`-element subsets of `{0, .., n-1}` in increasing mask order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    let next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some((1u64 << k) - 1)
    };
    Combinations {
        limit: 1u64 << n,
        next,
    }
}

/// Gosper's hack over `u64` so the last combination does not overflow.
pub struct Combinations {
    limit: u64,
    next: Option<u64>,
}

impl Iterator for Combinations {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < self.limit).then_some(nxt)
        };
        Some(SubsetMask(cur as u32))
    }
}

/// Every subset of `{0, .., n-1}` whose size lies in `sizes`, grouped by size.
pub fn subsets_of_sizes(n: usize, sizes: impl IntoIterator<Item = usize>) -> impl Iterator<Item = SubsetMask> {
    sizes.into_iter().flat_map(move |k| combinations(n, k))
}

/// All `2^n` subsets in increasing mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = SubsetMask> {
    (0..(1u64 << n)).map(|b| SubsetMask(b as u32))
}

/// True if every two members are disjoint or nested.
pub fn is_laminar(family: &[SubsetMask]) -> bool {
    family.iter().enumerate().all(|(i, &x)| {
        family[i + 1..]
            .iter()
            .all(|&y| x.is_disjoint(y) || x.is_subset_of(y) || y.is_subset_of(x))
    })
}

/// A finite universe `V` of `n` elements with optional names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::GroundSize { n, max: MAX_ELEMENTS });
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut ground = GroundSet::new(labels.len())?;
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Labels(format!("duplicate label {dup:?}")));
        }
        ground.labels = Some(labels);
        Ok(ground)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Name of element `v`: its label, or the index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    #[inline]
    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    pub fn check(&self, x: SubsetMask) -> Result<()> {
        if x.fits(self.n) {
            Ok(())
        } else {
            Err(Error::InvalidSubset { mask: x.bits(), n: self.n })
        }
    }

    /// Resolve a label to its element index.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse().ok().filter(|&v| v < self.n),
        }
    }
}
