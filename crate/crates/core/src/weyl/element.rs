use std::fmt;
use std::ops::Neg;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weyl::{Family, RootSystem, RootSystemId, SubsetLabel};

/// An element of the Weyl group in one-line notation.
///
/// Entries are signed integers: a permutation of `1..=n+1` for type A, a
/// signed permutation of `1..=n` for B/C/D (with an even number of negative
/// entries for D), and a signed permutation of `1..=3` with all entries of one
/// sign for G2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    system: RootSystemId,
    oneline: Vec<i32>,
}

impl WeylElement {
    pub fn new(system: RootSystemId, oneline: Vec<i32>) -> Result<Self> {
        let fail = |reason: &str| {
            Err(Error::InvalidElement {
                system,
                token: join(&oneline),
                reason: reason.to_string(),
            })
        };
        let d = system.ambient_dim();
        if oneline.len() != d {
            return fail(&format!("expected {d} entries"));
        }
        let mut seen = vec![false; d];
        for &k in &oneline {
            let a = k.unsigned_abs() as usize;
            if a == 0 || a > d || seen[a - 1] {
                return fail("absolute values must be a permutation");
            }
            seen[a - 1] = true;
        }
        let negatives = oneline.iter().filter(|&&k| k < 0).count();
        match system.family() {
            Family::A if negatives > 0 => return fail("type A entries are positive"),
            Family::D if negatives % 2 == 1 => {
                return fail("type D needs an even number of negative entries")
            }
            Family::G2 if negatives != 0 && negatives != 3 => {
                return fail("G2 entries must share one sign")
            }
            _ => {}
        }
        Ok(Self { system, oneline })
    }

    pub(crate) fn new_unchecked(system: RootSystemId, oneline: Vec<i32>) -> Self {
        Self { system, oneline }
    }

    pub fn identity(system: RootSystemId) -> Self {
        let oneline = (1..=system.ambient_dim() as i32).collect();
        Self { system, oneline }
    }

    /// Parses `2,-3,1,4`, or the compact digit string `31254` for type A
    /// with at most nine letters.
    pub fn parse(system: RootSystemId, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::InvalidElement {
            system,
            token: s.to_string(),
            reason: reason.to_string(),
        };
        let compact = system.family() == Family::A
            && !s.contains(',')
            && system.ambient_dim() <= 9
            && s.len() > 1
            && s.bytes().all(|b| b.is_ascii_digit());
        let oneline: Vec<i32> = if compact {
            s.bytes().map(|b| (b - b'0') as i32).collect()
        } else {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i32>()
                        .map_err(|_| bad(&format!("`{}` is not an integer", t.trim())))
                })
                .collect::<Result<_>>()?
        };
        Self::new(system, oneline).map_err(|e| match e {
            Error::InvalidElement { reason, .. } => bad(&reason),
            other => other,
        })
    }

    pub fn system(&self) -> RootSystemId {
        self.system
    }

    pub fn oneline(&self) -> &[i32] {
        &self.oneline
    }

    /// `u(k)`, extended by `u(-k) = -u(k)`.
    pub fn apply(&self, k: i32) -> i32 {
        let v = self.oneline[k.unsigned_abs() as usize - 1];
        if k < 0 {
            -v
        } else {
            v
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.system, other.system);
        let oneline = other.oneline.iter().map(|&k| self.apply(k)).collect();
        Self::new_unchecked(self.system, oneline)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.oneline.len()];
        for (i, &k) in self.oneline.iter().enumerate() {
            let pos = i as i32 + 1;
            inv[k.unsigned_abs() as usize - 1] = if k < 0 { -pos } else { pos };
        }
        Self::new_unchecked(self.system, inv)
    }

    /// Signed-permutation action on ambient coordinates: `t_i ↦ t_{u(i)}`
    /// with `t_{-i} = -t_i`. The same matrix acts on the dual `e`-basis.
    pub fn act_on<T: Clone + Neg<Output = T>>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (i, &k) in self.oneline.iter().enumerate() {
            let v = x[i].clone();
            out[k.unsigned_abs() as usize - 1] = if k < 0 { -v } else { v };
        }
        out
    }

    fn at(&self, i: usize) -> i32 {
        self.oneline[i - 1]
    }

    /// Whether position `i` (1-based) is a descent, i.e. `u(α_i)` is negative.
    pub fn is_descent(&self, i: usize) -> bool {
        let n = self.system.rank();
        assert!((1..=n).contains(&i), "position {i} out of range 1..={n}");
        match self.system.family() {
            Family::A => self.at(i) > self.at(i + 1),
            Family::B | Family::C => {
                if i < n {
                    signed_pair_descent(self.at(i), self.at(i + 1))
                } else {
                    self.at(n) < 0
                }
            }
            Family::D => {
                if i + 2 <= n {
                    signed_pair_descent(self.at(i), self.at(i + 1))
                } else if i + 1 == n {
                    let (a, b) = (self.at(n - 1), self.at(n));
                    if a < 0 && b < 0 {
                        true
                    } else if (a < 0) != (b < 0) {
                        let (negative, positive) = if a < 0 { (a, b) } else { (b, a) };
                        negative.abs() < positive
                    } else {
                        false
                    }
                } else {
                    signed_pair_descent(self.at(n - 1), self.at(n))
                }
            }
            Family::G2 => {
                let rs = g2_data();
                let alpha = &rs.simple_roots()[i - 1];
                !rs.is_positive(&self.act_on(alpha))
            }
        }
    }

    pub fn descents(&self) -> Vec<usize> {
        (1..=self.system.rank())
            .filter(|&i| self.is_descent(i))
            .collect()
    }

    pub fn ascents(&self) -> Vec<usize> {
        (1..=self.system.rank())
            .filter(|&i| !self.is_descent(i))
            .collect()
    }

    pub fn descent_count(&self) -> usize {
        (1..=self.system.rank())
            .filter(|&i| self.is_descent(i))
            .count()
    }

    /// Label of the coweight `u ω_i`.
    pub fn coweight_label(&self, i: usize) -> SubsetLabel {
        let n = self.system.rank();
        assert!(
            (1..=n).contains(&i),
            "coweight index {i} out of range 1..={n}"
        );
        let prefix = |k: usize| SubsetLabel::from_elements(self.oneline[..k].iter().copied());
        match self.system.family() {
            Family::A | Family::B | Family::C => prefix(i),
            Family::D => {
                if i + 2 <= n {
                    prefix(i)
                } else if i + 1 == n {
                    prefix(n)
                } else {
                    let mut s = prefix(n - 1);
                    s.insert(-self.at(n));
                    s
                }
            }
            Family::G2 => {
                if i == 1 {
                    SubsetLabel::from_elements([self.at(3), -self.at(2)])
                } else {
                    SubsetLabel::from_elements([self.at(3)])
                }
            }
        }
    }

    /// `D(u)`: labels of `u ω_i` over descents `i`, in position order.
    pub fn descent_labels(&self) -> Vec<SubsetLabel> {
        self.descents()
            .into_iter()
            .map(|i| self.coweight_label(i))
            .collect()
    }

    /// `A(u)`: labels of `u ω_i` over ascents `i`, in position order.
    pub fn ascent_labels(&self) -> Vec<SubsetLabel> {
        self.ascents()
            .into_iter()
            .map(|i| self.coweight_label(i))
            .collect()
    }

    /// Weyl action on labels, agreeing with the action on coweights.
    pub fn act_label(&self, label: &SubsetLabel) -> SubsetLabel {
        label.map(|k| self.apply(k))
    }

    /// Number of positive roots made negative. Builds root data on each call;
    /// use [`RootSystem::length`] in loops.
    pub fn length(&self) -> usize {
        RootSystem::new(self.system).length(self)
    }

    pub fn is_identity(&self) -> bool {
        self.oneline
            .iter()
            .enumerate()
            .all(|(i, &k)| k == i as i32 + 1)
    }
}

fn signed_pair_descent(a: i32, b: i32) -> bool {
    if (a < 0) == (b < 0) {
        a > b
    } else {
        a < b
    }
}

fn g2_data() -> &'static RootSystem {
    static G2: std::sync::OnceLock<RootSystem> = std::sync::OnceLock::new();
    G2.get_or_init(|| RootSystem::new(RootSystemId::g2()))
}

fn join(v: &[i32]) -> String {
    v.iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for WeylElement {
    /// Compact digits for type A up to nine letters, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.system.family() == Family::A && self.oneline.len() <= 9 {
            for k in &self.oneline {
                write!(f, "{k}")?;
            }
            Ok(())
        } else {
            f.write_str(&join(&self.oneline))
        }
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
