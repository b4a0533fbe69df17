//! Young diagrams built from chains of labels, their corner statistics, and
//! the closed-form intersection numbers for each family.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::intersect::labels_form_chain;
use crate::weyl::{Family, RootSystemId, SubsetLabel, WeylElement};

/// `C(x, y)`, zero unless `0 <= y <= x`.
pub fn binomial(x: i64, y: i64) -> i64 {
    if y < 0 || y > x {
        return 0;
    }
    let y = y.min(x - y);
    let mut acc: i128 = 1;
    for i in 0..y {
        acc = acc * (x - i) as i128 / (i + 1) as i128;
    }
    i64::try_from(acc).expect("binomial coefficient overflows i64")
}

fn pow2(e: i64) -> i64 {
    assert!(
        (0..63).contains(&e),
        "power of two exponent {e} out of range"
    );
    1i64 << e
}

/// A Young diagram with exactly `n` nonempty rows inside the `n × n` square.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        let n = rows.len();
        let bad = |why: &str| Err(Error::Domain(format!("rows {rows:?}: {why}")));
        if n == 0 {
            return bad("no rows");
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return bad("rows must be weakly decreasing");
        }
        if rows[n - 1] == 0 || rows[0] > n {
            return bad("rows must lie in 1..=n");
        }
        Ok(Self { rows })
    }

    /// `(n, n-1, ..., 1)`.
    pub fn staircase(n: usize) -> Self {
        Self {
            rows: (1..=n).rev().collect(),
        }
    }

    /// Every diagram with `n` rows in the `n × n` square, in lexicographic order.
    pub fn all_in_square(n: usize) -> Vec<Self> {
        fn extend(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<YoungDiagram>) {
            if prefix.len() == n {
                out.push(YoungDiagram {
                    rows: prefix.clone(),
                });
                return;
            }
            let cap = prefix.last().copied().unwrap_or(n);
            for r in 1..=cap {
                prefix.push(r);
                extend(prefix, n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::with_capacity(n), n, &mut out);
        out
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Side of the square, equal to the number of rows.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Number of rows of full length `n`.
    pub fn full_rows(&self) -> usize {
        self.rows.iter().filter(|&&r| r == self.n()).count()
    }

    fn row(&self, i: usize) -> i64 {
        if i == 0 || i > self.rows.len() {
            0
        } else {
            self.rows[i - 1] as i64
        }
    }

    pub fn corner_data(&self) -> CornerData {
        let n = self.n() as i64;
        let positions: Vec<usize> = (1..=self.n())
            .filter(|&i| self.row(i) > self.row(i + 1))
            .collect();
        let corners = positions
            .iter()
            .enumerate()
            .map(|(r, &i)| {
                let prev = if r == 0 { 0 } else { positions[r - 1] } as i64;
                let next_row = positions.get(r + 1).map_or(0, |&j| self.row(j));
                let lam = self.row(i);
                Corner {
                    row: i,
                    a: i as i64 - prev - 1,
                    b: lam - next_row - 1,
                    c: lam + i as i64 - n - 1,
                }
            })
            .collect();
        CornerData { corners }
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Label of a full-length row in a type D diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowSign {
    Plus,
    Minus,
}

/// A Young diagram whose full-length rows carry `±` labels (type D).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedYoungDiagram {
    diagram: YoungDiagram,
    // one per full-length row, `+` first
    signs: Vec<RowSign>,
}

impl SignedYoungDiagram {
    pub fn new(diagram: YoungDiagram, mut signs: Vec<RowSign>) -> Result<Self> {
        if signs.len() != diagram.full_rows() {
            return Err(Error::Domain(format!(
                "{diagram} has {} full rows but {} labels",
                diagram.full_rows(),
                signs.len()
            )));
        }
        signs.sort();
        Ok(Self { diagram, signs })
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    pub fn signs(&self) -> &[RowSign] {
        &self.signs
    }

    /// `(m₊, m₋)`.
    pub fn sign_counts(&self) -> (usize, usize) {
        let plus = self.signs.iter().filter(|&&s| s == RowSign::Plus).count();
        (plus, self.signs.len() - plus)
    }

    fn sign_string(&self) -> String {
        self.signs
            .iter()
            .map(|s| if *s == RowSign::Plus { '+' } else { '-' })
            .collect()
    }
}

impl fmt::Display for SignedYoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.diagram, self.sign_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    /// Row index `i_r` (1-based).
    pub row: usize,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Corner {
    /// `y_r = C(a_r, c_r) C(b_r, c_r)`.
    pub fn y(&self) -> i64 {
        binomial(self.a, self.c) * binomial(self.b, self.c)
    }
}

/// Lower-right corners of a diagram, top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerData {
    pub corners: Vec<Corner>,
}

impl CornerData {
    pub fn s(&self) -> usize {
        self.corners.len()
    }

    fn sign(&self, n: usize) -> i64 {
        if (n + self.s()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// `true` when every step of the corner zigzag crosses the shifted
/// anti-diagonal, i.e. `0 <= c_r <= b_r` for every corner. When `false` the
/// intersection number vanishes.
pub fn crosses_antidiagonal(lambda: &YoungDiagram) -> bool {
    lambda
        .corner_data()
        .corners
        .iter()
        .all(|k| 0 <= k.c && k.c <= k.b)
}

/// Type A: `(-1)^{n+s} y_1 ⋯ y_s`.
pub fn intersection_a(lambda: &YoungDiagram) -> i64 {
    let cd = lambda.corner_data();
    cd.sign(lambda.n()) * cd.corners.iter().map(Corner::y).product::<i64>()
}

/// Type B: `2^{n-λ₁} I_A(λ)`.
pub fn intersection_b(lambda: &YoungDiagram) -> i64 {
    let n = lambda.n() as i64;
    pow2(n - lambda.rows[0] as i64) * intersection_a(lambda)
}

/// Type C: `2^{n-λ₁+m-1} I_A(λ)` with `m` the number of full rows.
pub fn intersection_c(lambda: &YoungDiagram) -> i64 {
    let n = lambda.n() as i64;
    let m = lambda.full_rows() as i64;
    pow2(n - lambda.rows[0] as i64 + m - 1) * intersection_a(lambda)
}

/// Type D: `(-1)^{n+s} ỹ_1 y_2 ⋯ y_s`.
pub fn intersection_d(lambda: &SignedYoungDiagram) -> i64 {
    let d = &lambda.diagram;
    let n = d.n() as i64;
    let cd = d.corner_data();
    let first = &cd.corners[0];
    let (a1, b1, c1) = (first.a, first.b, first.c);
    let m = d.full_rows() as i64;
    let (plus, minus) = lambda.sign_counts();
    let y1_tilde = if m <= 1 {
        pow2((n - d.rows[0] as i64 - 1) * (1 - m)) * first.y()
    } else if plus * minus != 0 {
        -binomial(b1 - 1, c1 - 1)
    } else {
        (pow2(a1) - a1 - 1) * binomial(b1, c1) + binomial(b1 - 1, c1)
    };
    let rest: i64 = cd.corners[1..].iter().map(Corner::y).product();
    cd.sign(d.n()) * y1_tilde * rest
}

/// Type G2 on the three possible two-row diagrams.
pub fn intersection_g2(lambda: &YoungDiagram) -> Result<i64> {
    match lambda.rows() {
        [2, 1] => Ok(1),
        [1, 1] => Ok(-3),
        [2, 2] => Ok(-1),
        _ => Err(Error::Domain(format!("{lambda} is not a G2 diagram"))),
    }
}

/// The diagram attached to a monomial or a triple, or `Empty` when the
/// product vanishes for combinatorial reasons.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Lambda {
    Empty,
    Plain(YoungDiagram),
    Signed(SignedYoungDiagram),
}

impl Lambda {
    /// Diagram of a chain of `n` labels: sorted cardinalities, with parity
    /// signs on full rows for type D. Fewer or more than `n` labels give
    /// `Empty`.
    pub fn from_chain(system: RootSystemId, labels: &[SubsetLabel]) -> Self {
        let n = system.rank();
        if labels.len() != n {
            return Lambda::Empty;
        }
        let mut rows: Vec<usize> = labels.iter().map(SubsetLabel::len).collect();
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let diagram = match YoungDiagram::new(rows) {
            Ok(d) => d,
            Err(_) => return Lambda::Empty,
        };
        if system.family() == Family::D {
            let signs = labels
                .iter()
                .filter(|s| s.len() == n)
                .map(|s| {
                    if s.is_even() {
                        RowSign::Plus
                    } else {
                        RowSign::Minus
                    }
                })
                .collect();
            Lambda::Signed(
                SignedYoungDiagram::new(diagram, signs).expect("sign count matches full rows"),
            )
        } else {
            Lambda::Plain(diagram)
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Lambda::Empty)
    }

    pub fn diagram(&self) -> Option<&YoungDiagram> {
        match self {
            Lambda::Empty => None,
            Lambda::Plain(d) => Some(d),
            Lambda::Signed(s) => Some(&s.diagram),
        }
    }

    pub fn corner_data(&self) -> Result<CornerData> {
        self.diagram()
            .map(YoungDiagram::corner_data)
            .ok_or_else(|| Error::Domain("corner data of the empty diagram".into()))
    }

    /// Closed-form intersection number for `family`; `0` for `Empty`.
    pub fn value(&self, family: Family) -> Result<i64> {
        let plain = match self {
            Lambda::Empty => return Ok(0),
            Lambda::Plain(d) => d,
            Lambda::Signed(s) => {
                return match family {
                    Family::D => Ok(intersection_d(s)),
                    _ => Err(Error::Domain(format!("signed diagram {s} outside type D"))),
                }
            }
        };
        match family {
            Family::A => Ok(intersection_a(plain)),
            Family::B => Ok(intersection_b(plain)),
            Family::C => Ok(intersection_c(plain)),
            Family::D => {
                let signed = SignedYoungDiagram::new(plain.clone(), Vec::new())?;
                Ok(intersection_d(&signed))
            }
            Family::G2 => intersection_g2(plain),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Empty => f.write_str("∅"),
            Lambda::Plain(d) => d.fmt(f),
            Lambda::Signed(s) => s.fmt(f),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    rows: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<String>,
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            Lambda::Empty => DiagramRepr {
                rows: Vec::new(),
                labels: None,
            },
            Lambda::Plain(d) => DiagramRepr {
                rows: d.rows.clone(),
                labels: None,
            },
            Lambda::Signed(s) => DiagramRepr {
                rows: s.diagram.rows.clone(),
                labels: Some(s.sign_string()),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Lambda {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DiagramRepr::deserialize(deserializer)?;
        if repr.rows.is_empty() {
            return Ok(Lambda::Empty);
        }
        let diagram = YoungDiagram::new(repr.rows).map_err(D::Error::custom)?;
        match repr.labels {
            None => Ok(Lambda::Plain(diagram)),
            Some(labels) => {
                let signs = labels
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(RowSign::Plus),
                        '-' => Ok(RowSign::Minus),
                        other => Err(D::Error::custom(format!("bad row label `{other}`"))),
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                SignedYoungDiagram::new(diagram, signs)
                    .map(Lambda::Signed)
                    .map_err(D::Error::custom)
            }
        }
    }
}

/// `λ_{u,v}^w`: the diagram of the multiset `D(u) ⊔ D(v) ⊔ A(w)`, or `Empty`
/// when `d(u) + d(v) ≠ d(w)` or the multiset is not a (sub)chain.
pub fn build_lambda(u: &WeylElement, v: &WeylElement, w: &WeylElement) -> Result<Lambda> {
    let system = u.system();
    for other in [v, w] {
        if other.system() != system {
            return Err(Error::MixedSystems(system, other.system()));
        }
    }
    let mut labels = u.descent_labels();
    labels.extend(v.descent_labels());
    labels.extend(w.ascent_labels());
    if labels.len() != system.rank() || !labels_form_chain(system, &labels) {
        return Ok(Lambda::Empty);
    }
    Ok(Lambda::from_chain(system, &labels))
}
