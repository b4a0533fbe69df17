use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A set of nonzero signed integers naming a coweight (a ray of the fan).
///
/// Bit `k-1` of `pos` (resp. `neg`) marks membership of `k` (resp. `-k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetLabel {
    pos: u32,
    neg: u32,
}

impl SubsetLabel {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn try_from_elements<I: IntoIterator<Item = i32>>(elements: I) -> Result<Self> {
        let mut label = Self::empty();
        for k in elements {
            if k == 0 || k.unsigned_abs() as usize > 32 {
                return Err(Error::Parse {
                    token: k.to_string(),
                    reason: "set elements must be nonzero with |k| <= 32".into(),
                });
            }
            label.insert(k);
        }
        Ok(label)
    }

    /// Panics on `0` or `|k| > 32`.
    pub fn from_elements<I: IntoIterator<Item = i32>>(elements: I) -> Self {
        Self::try_from_elements(elements).expect("valid label elements")
    }

    pub fn insert(&mut self, k: i32) {
        debug_assert!(k != 0);
        let bit = 1u32 << (k.unsigned_abs() - 1);
        if k > 0 {
            self.pos |= bit;
        } else {
            self.neg |= bit;
        }
    }

    pub fn contains(&self, k: i32) -> bool {
        if k == 0 || k.unsigned_abs() > 32 {
            return false;
        }
        let bit = 1u32 << (k.unsigned_abs() - 1);
        if k > 0 {
            self.pos & bit != 0
        } else {
            self.neg & bit != 0
        }
    }

    pub fn len(&self) -> usize {
        (self.pos.count_ones() + self.neg.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    pub fn negative_count(&self) -> usize {
        self.neg.count_ones() as usize
    }

    /// Even number of negative members (meaningful for size-n type D labels).
    pub fn is_even(&self) -> bool {
        self.negative_count().is_multiple_of(2)
    }

    /// No `i` with both `i` and `-i` present.
    pub fn is_sign_consistent(&self) -> bool {
        self.pos & self.neg == 0
    }

    pub fn max_abs(&self) -> usize {
        (32 - (self.pos | self.neg).leading_zeros()) as usize
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            pos: self.pos & other.pos,
            neg: self.neg & other.neg,
        }
    }

    /// Members sorted by absolute value, `-k` before `k`.
    pub fn elements(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.len());
        for b in 0..32 {
            let k = b + 1;
            if self.neg >> b & 1 == 1 {
                out.push(-k);
            }
            if self.pos >> b & 1 == 1 {
                out.push(k);
            }
        }
        out
    }

    /// Image under an elementwise signed map with `f(-k) = -f(k)`.
    pub fn map<F: Fn(i32) -> i32>(&self, f: F) -> Self {
        Self::from_elements(self.elements().into_iter().map(f))
    }
}

impl Ord for SubsetLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.pos, self.neg).cmp(&(other.len(), other.pos, other.neg))
    }
}

impl PartialOrd for SubsetLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SubsetLabel {
    type Err = Error;

    /// Comma-separated signed integers, e.g. `-1,3,4,5,-2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut elems = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let k: i32 = tok.parse().map_err(|_| Error::Parse {
                token: tok.to_string(),
                reason: "expected a signed integer".into(),
            })?;
            elems.push(k);
        }
        let label = Self::try_from_elements(elems)?;
        if label.is_empty() {
            return Err(Error::Parse {
                token: s.to_string(),
                reason: "empty set".into(),
            });
        }
        Ok(label)
    }
}

impl Serialize for SubsetLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SubsetLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
