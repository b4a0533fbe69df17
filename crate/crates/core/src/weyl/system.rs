use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weyl::{SubsetLabel, WeylElement};

/// Root system family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G2" | "G" => Ok(Family::G2),
            _ => Err(Error::Parse {
                token: s.to_string(),
                reason: "expected one of A, B, C, D, G2".into(),
            }),
        }
    }
}

/// A root system in scope: a family together with its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemId {
    family: Family,
    rank: usize,
}

impl RootSystemId {
    /// Labels are stored as 32-bit masks over `[±(n+1)]`.
    pub const MAX_RANK: usize = 30;

    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidSystem(format!("{family}{rank}: {msg}")));
        match family {
            Family::G2 if rank != 2 => return bad("G2 has fixed rank 2"),
            Family::D if rank < 2 => return bad("type D needs rank at least 2"),
            _ if rank == 0 => return bad("rank must be positive"),
            _ if rank > Self::MAX_RANK => return bad("rank too large"),
            _ => {}
        }
        Ok(Self { family, rank })
    }

    pub fn g2() -> Self {
        Self {
            family: Family::G2,
            rank: 2,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of coordinates of the ambient space the Weyl group permutes.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::C | Family::D => self.rank,
            Family::G2 => 3,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::G2 => 12,
        }
    }

    /// Number of rays of the Weyl-chamber fan, counted through the subset
    /// identifications.
    pub fn ray_count(&self) -> u128 {
        let n = self.rank as u32;
        let binom = |k: u32| -> u128 {
            (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
        };
        match self.family {
            Family::A => (1u128 << (n + 1)) - 2,
            Family::B | Family::C => (1..=n).map(|k| binom(k) << k).sum(),
            Family::D => (1..=n).filter(|&k| k != n - 1).map(|k| binom(k) << k).sum(),
            Family::G2 => 12,
        }
    }

    /// Checks that `label` names a coweight of this system.
    pub fn validate_label(&self, label: &SubsetLabel) -> Result<()> {
        let n = self.rank;
        let fail = |reason: &str| {
            Err(Error::InvalidLabel {
                system: *self,
                token: label.to_string(),
                reason: reason.to_string(),
            })
        };
        if label.is_empty() {
            return fail("empty set");
        }
        if label.max_abs() > self.ambient_dim() {
            return fail("element out of range");
        }
        match self.family {
            Family::A => {
                if label.negative_count() > 0 {
                    return fail("type A labels have no negative entries");
                }
                if label.len() > n {
                    return fail("type A labels are proper subsets of [n+1]");
                }
            }
            Family::B | Family::C | Family::D => {
                if !label.is_sign_consistent() {
                    return fail("contains both i and -i");
                }
                if self.family == Family::D && label.len() + 1 == n {
                    return fail("type D has no labels of size n-1");
                }
            }
            Family::G2 => {
                if !label.is_sign_consistent() {
                    return fail("contains both i and -i");
                }
                let ok = match label.len() {
                    1 => true,
                    2 => label.negative_count() == 1,
                    _ => false,
                };
                if !ok {
                    return fail("not one of the twelve G2 labels");
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::G2 => f.write_str("G2"),
            fam => write!(f, "{fam}{}", self.rank),
        }
    }
}

impl FromStr for RootSystemId {
    type Err = Error;

    /// Accepts `A4`, `d5`, `G2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("G2") {
            return Ok(Self::g2());
        }
        let parse_err = || Error::Parse {
            token: s.to_string(),
            reason: "expected a family letter followed by a rank, e.g. A4".into(),
        };
        let (head, tail) = t.split_at(
            t.char_indices()
                .nth(1)
                .map(|(i, _)| i)
                .ok_or_else(parse_err)?,
        );
        let family: Family = head.parse()?;
        let rank: usize = tail.parse().map_err(|_| parse_err())?;
        Self::new(family, rank)
    }
}

impl Serialize for RootSystemId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootSystemId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Concrete root data: simple roots, all roots and fundamental coweights, in
/// the ambient coordinates the Weyl group permutes.
///
/// Roots are integer vectors in the `t`-basis; coweights are rational vectors
/// in the dual `e`-basis.
#[derive(Debug, Clone)]
pub struct RootSystem {
    id: RootSystemId,
    simple_roots: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    coweights: Vec<Vec<Rational64>>,
    // rho-check = sum of fundamental coweights, scaled to integers
    height: Vec<i64>,
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

impl RootSystem {
    pub fn new(id: RootSystemId) -> Self {
        let n = id.rank();
        let d = id.ambient_dim();
        let t = |i: usize| unit(d, i, 1);
        let diff = |i: usize, j: usize| add(&t(i), &neg(&t(j)));
        let sum = |i: usize, j: usize| add(&t(i), &t(j));

        let simple_roots: Vec<Vec<i64>> = match id.family() {
            Family::A => (0..n).map(|i| diff(i, i + 1)).collect(),
            Family::B => (0..n - 1)
                .map(|i| diff(i, i + 1))
                .chain([t(n - 1)])
                .collect(),
            Family::C => (0..n - 1)
                .map(|i| diff(i, i + 1))
                .chain([unit(d, n - 1, 2)])
                .collect(),
            Family::D => (0..n - 2)
                .map(|i| diff(i, i + 1))
                .chain([sum(n - 2, n - 1), diff(n - 2, n - 1)])
                .collect(),
            Family::G2 => vec![diff(0, 1), vec![-2, 1, 1]],
        };

        let mut roots = Vec::new();
        match id.family() {
            Family::A => {
                for i in 0..d {
                    for j in 0..d {
                        if i != j {
                            roots.push(diff(i, j));
                        }
                    }
                }
            }
            Family::B | Family::C | Family::D => {
                for i in 0..d {
                    for j in (i + 1)..d {
                        for r in [diff(i, j), sum(i, j)] {
                            roots.push(neg(&r));
                            roots.push(r);
                        }
                    }
                    let short = match id.family() {
                        Family::B => Some(1),
                        Family::C => Some(2),
                        _ => None,
                    };
                    if let Some(c) = short {
                        roots.push(unit(d, i, c));
                        roots.push(unit(d, i, -c));
                    }
                }
            }
            Family::G2 => {
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j {
                            roots.push(diff(i, j));
                        }
                    }
                    let mut long = vec![-1; 3];
                    long[i] = 2;
                    roots.push(neg(&long));
                    roots.push(long);
                }
            }
        }

        let r = |p: i64, q: i64| Rational64::new(p, q);
        let coweights: Vec<Vec<Rational64>> = (1..=n)
            .map(|i| match id.family() {
                Family::A => (1..=d)
                    .map(|k| r(if k <= i { 1 } else { 0 }, 1) - r(i as i64, d as i64))
                    .collect(),
                Family::B => (1..=d).map(|k| r((k <= i) as i64, 1)).collect(),
                Family::C => {
                    if i < n {
                        (1..=d).map(|k| r((k <= i) as i64, 1)).collect()
                    } else {
                        vec![r(1, 2); d]
                    }
                }
                Family::D => {
                    if i + 2 <= n {
                        (1..=d).map(|k| r((k <= i) as i64, 1)).collect()
                    } else {
                        let mut v = vec![r(1, 2); d];
                        if i == n {
                            v[d - 1] = r(-1, 2);
                        }
                        v
                    }
                }
                Family::G2 => {
                    if i == 1 {
                        vec![r(0, 1), r(-1, 1), r(1, 1)]
                    } else {
                        vec![r(-1, 3), r(-1, 3), r(2, 3)]
                    }
                }
            })
            .collect();

        let rho: Vec<Rational64> = (0..d)
            .map(|k| coweights.iter().map(|w| w[k]).sum())
            .collect();
        let denom = rho
            .iter()
            .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
        let height: Vec<i64> = rho.iter().map(|x| (x * denom).to_integer()).collect();

        let mut this = Self {
            id,
            simple_roots,
            roots,
            positive_roots: Vec::new(),
            coweights,
            height,
        };
        this.positive_roots = this
            .roots
            .iter()
            .filter(|r| this.is_positive(r))
            .cloned()
            .collect();
        this
    }

    pub fn id(&self) -> RootSystemId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Fundamental coweights `ω_1..ω_n` in `e`-coordinates.
    pub fn coweights(&self) -> &[Vec<Rational64>] {
        &self.coweights
    }

    /// A root is positive iff its pairing with the sum of the fundamental
    /// coweights is positive.
    pub fn is_positive(&self, root: &[i64]) -> bool {
        root.iter()
            .zip(&self.height)
            .map(|(a, b)| a * b)
            .sum::<i64>()
            > 0
    }

    /// `⟨x, α⟩` for a coweight-space vector `x` and a root `α`.
    pub fn pair(x: &[Rational64], root: &[i64]) -> Rational64 {
        x.iter().zip(root).map(|(a, b)| a * b).sum()
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, u: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| !self.is_positive(&u.act_on(r)))
            .count()
    }

    /// Positions `i` with `u(α_i)` negative, by direct action on the simple roots.
    pub fn descents_by_root_action(&self, u: &WeylElement) -> Vec<usize> {
        self.simple_roots
            .iter()
            .enumerate()
            .filter(|(_, a)| !self.is_positive(&u.act_on(a)))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `u ω_i` in `e`-coordinates.
    pub fn coweight_vector(&self, u: &WeylElement, i: usize) -> Vec<Rational64> {
        u.act_on(&self.coweights[i - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_ids() -> Vec<RootSystemId> {
        let mut ids = vec![RootSystemId::g2()];
        for n in 1..=5 {
            for fam in [Family::A, Family::B, Family::C, Family::D] {
                if let Ok(id) = RootSystemId::new(fam, n) {
                    ids.push(id);
                }
            }
        }
        ids
    }

    #[test]
    fn coweights_are_dual_to_simple_roots() {
        for id in all_ids() {
            let rs = RootSystem::new(id);
            for (i, w) in rs.coweights().iter().enumerate() {
                for (j, a) in rs.simple_roots().iter().enumerate() {
                    let expect = Rational64::from_integer((i == j) as i64);
                    assert_eq!(RootSystem::pair(w, a), expect, "{id} ω{} α{}", i + 1, j + 1);
                }
            }
        }
    }

    #[test]
    fn positive_roots_are_half() {
        for id in all_ids() {
            let rs = RootSystem::new(id);
            assert_eq!(rs.positive_roots().len() * 2, rs.roots().len(), "{id}");
            for a in rs.simple_roots() {
                assert!(rs.is_positive(a));
            }
        }
        let n = 4;
        let rs = RootSystem::new(RootSystemId::new(Family::A, n).unwrap());
        assert_eq!(rs.positive_roots().len(), n * (n + 1) / 2);
        assert_eq!(RootSystem::new(RootSystemId::g2()).roots().len(), 12);
    }

    #[test]
    fn system_parsing_and_validation() {
        assert_eq!("a4".parse::<RootSystemId>().unwrap().to_string(), "A4");
        assert_eq!("G2".parse::<RootSystemId>().unwrap(), RootSystemId::g2());
        assert!("D1".parse::<RootSystemId>().is_err());
        assert!("X3".parse::<RootSystemId>().is_err());
        assert!(RootSystemId::new(Family::G2, 3).is_err());
        assert!(RootSystemId::new(Family::A, 0).is_err());
    }

    #[test]
    fn weyl_orders() {
        let order = |f, n| RootSystemId::new(f, n).unwrap().weyl_order();
        assert_eq!(order(Family::A, 3), 24);
        assert_eq!(order(Family::B, 3), 48);
        assert_eq!(order(Family::D, 4), 192);
        assert_eq!(RootSystemId::g2().weyl_order(), 12);
    }
}
