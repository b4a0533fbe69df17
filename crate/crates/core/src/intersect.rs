//! Monomials in the divisor classes `τ_S`, chain validity, and dispatch to
//! the closed-form intersection numbers.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::{build_lambda, Lambda};
use crate::error::{Error, Result};
use crate::weyl::{Family, RootSystemId, SubsetLabel, WeylElement};

/// Whether the labels span a cone of the fan: a nested chain (A/B/C/G2), or a
/// subchain of a basic type D chain.
pub(crate) fn labels_form_chain(system: RootSystemId, labels: &[SubsetLabel]) -> bool {
    let mut sorted = labels.to_vec();
    sorted.sort();
    if system.family() != Family::D {
        return sorted.windows(2).all(|w| w[0].is_subset_of(&w[1]));
    }
    let n = system.rank();
    let split = sorted.partition_point(|s| s.len() < n);
    let (small, big) = sorted.split_at(split);
    if !small.windows(2).all(|w| w[0].is_subset_of(&w[1])) {
        return false;
    }
    let mut tops = big.to_vec();
    tops.dedup();
    match tops.as_slice() {
        [] => true,
        [top] => small.last().is_none_or(|s| s.is_subset_of(top)),
        // two top sets differ only in the sign of one element
        [p, q] => {
            let common = p.intersection(q);
            common.len() + 1 == n && small.last().is_none_or(|s| s.is_subset_of(&common))
        }
        _ => false,
    }
}

/// A product `τ_{S_1} ⋯ τ_{S_q}` of divisor classes. The empty product is the
/// unit class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TauMonomial {
    system: RootSystemId,
    factors: Vec<SubsetLabel>,
}

impl TauMonomial {
    pub fn new(system: RootSystemId, mut factors: Vec<SubsetLabel>) -> Result<Self> {
        for f in &factors {
            system.validate_label(f)?;
        }
        factors.sort();
        Ok(Self { system, factors })
    }

    pub fn unit(system: RootSystemId) -> Self {
        Self {
            system,
            factors: Vec::new(),
        }
    }

    /// Semicolon-separated subsets, e.g. `3;1,2,3,5;1,2,3,5;3`. An empty
    /// string or `()` is the unit.
    pub fn parse(system: RootSystemId, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Self::unit(system));
        }
        let factors = s
            .split(';')
            .map(|tok| tok.parse::<SubsetLabel>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(system, factors)
    }

    /// `τ_{uω_1} ⋯ τ_{uω_n}`, the class of the fixed point of `σ_u`.
    pub fn transversal(u: &WeylElement) -> Self {
        let factors = (1..=u.system().rank())
            .map(|i| u.coweight_label(i))
            .collect();
        Self::new(u.system(), factors).expect("coweight labels are valid")
    }

    pub fn system(&self) -> RootSystemId {
        self.system
    }

    pub fn factors(&self) -> &[SubsetLabel] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn is_chain(&self) -> bool {
        labels_form_chain(self.system, &self.factors)
    }

    /// Applies `u` to every factor.
    pub fn act(&self, u: &WeylElement) -> Self {
        let mut factors: Vec<SubsetLabel> = self.factors.iter().map(|s| u.act_label(s)).collect();
        factors.sort();
        Self {
            system: self.system,
            factors,
        }
    }

    pub fn times(&self, other: &Self) -> Result<Self> {
        if self.system != other.system {
            return Err(Error::MixedSystems(self.system, other.system));
        }
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort();
        Ok(Self {
            system: self.system,
            factors,
        })
    }

    pub fn times_label(&self, label: SubsetLabel) -> Self {
        let mut factors = self.factors.clone();
        factors.push(label);
        factors.sort();
        Self {
            system: self.system,
            factors,
        }
    }
}

impl fmt::Display for TauMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self.factors.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(";"))
    }
}

impl Serialize for TauMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    NotChain,
    DegreeMismatch,
    Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionResult {
    pub value: i64,
    pub diagram: Lambda,
    pub reason: Reason,
}

/// `⟨τ_{S_1} ⋯ τ_{S_n}⟩` by the Young-diagram formulas.
pub fn intersection_number(m: &TauMonomial) -> IntersectionResult {
    let system = m.system();
    let zero = |reason| IntersectionResult {
        value: 0,
        diagram: Lambda::Empty,
        reason,
    };
    if m.degree() != system.rank() {
        return zero(Reason::DegreeMismatch);
    }
    if !m.is_chain() {
        return zero(Reason::NotChain);
    }
    let diagram = Lambda::from_chain(system, m.factors());
    let value = diagram
        .value(system.family())
        .expect("chains of valid labels give diagrams of the right family");
    IntersectionResult {
        value,
        diagram,
        reason: Reason::Formula,
    }
}

/// `[X_u]` as the product of `τ` over `D(u)`.
pub fn class_x(u: &WeylElement) -> TauMonomial {
    TauMonomial::new(u.system(), u.descent_labels()).expect("descent labels are valid")
}

/// `[Y^w]` as the product of `τ` over `A(w)`.
pub fn class_y(w: &WeylElement) -> TauMonomial {
    TauMonomial::new(w.system(), w.ascent_labels()).expect("ascent labels are valid")
}

/// `⟨[Y^w][X_u][X_v]⟩` via `λ_{u,v}^w`.
pub fn triple_number(u: &WeylElement, v: &WeylElement, w: &WeylElement) -> Result<i64> {
    build_lambda(u, v, w)?.value(u.system().family())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{enumerate_weyl, longest_element};

    fn sys(s: &str) -> RootSystemId {
        s.parse().unwrap()
    }

    fn mono(system: &str, s: &str) -> TauMonomial {
        TauMonomial::parse(sys(system), s).unwrap()
    }

    #[test]
    fn chain_detection() {
        assert!(mono("A4", "3;1,2,3,5;1,2,3,5;3").is_chain());
        assert!(!mono("A4", "1;2").is_chain());
        let id = WeylElement::identity(sys("D4"));
        let both =
            TauMonomial::new(sys("D4"), vec![id.coweight_label(3), id.coweight_label(4)]).unwrap();
        assert!(both.is_chain());
        // {1,2,3,4} and {1,2,-3,-4} differ in two signs
        assert!(!mono("D4", "1,2,3,4;1,2,-3,-4").is_chain());
        // a small set must lie in both tops
        assert!(mono("D4", "3;1,2,3,4;1,2,3,-4").is_chain());
        assert!(!mono("D4", "4;1,2,3,4;1,2,3,-4").is_chain());
    }

    #[test]
    fn parse_rejects_invalid_labels() {
        assert!(TauMonomial::parse(sys("A2"), "1,2,3").is_err());
        assert!(TauMonomial::parse(sys("B2"), "1,-1").is_err());
        assert!(TauMonomial::parse(sys("D4"), "1,2,3").is_err());
        assert!(TauMonomial::parse(sys("G2"), "1,2").is_err());
        assert_eq!(TauMonomial::parse(sys("G2"), "").unwrap().degree(), 0);
    }

    #[test]
    fn worked_values() {
        assert_eq!(
            intersection_number(&mono("A4", "3;1,2,3,5;1,2,3,5;3")).value,
            2
        );
        assert_eq!(intersection_number(&mono("G2", "3;3")).value, -3);
        assert_eq!(intersection_number(&mono("G2", "3,-2;3,-2")).value, -1);
        assert_eq!(intersection_number(&mono("G2", "3,-2;3")).value, 1);
        let d5 = intersection_number(&mono("D5", "-1;-1;-1,3,4,5,-2;-1,3,4,5,-2;-1,3,4,5,-2"));
        assert_eq!(d5.value, -4);
        assert_eq!(d5.reason, Reason::Formula);
        let r = intersection_number(&mono("A4", "1;2;1,2;1,2,3"));
        assert_eq!((r.value, r.reason), (0, Reason::NotChain));
        let r = intersection_number(&mono("A4", "1;1,2"));
        assert_eq!((r.value, r.reason), (0, Reason::DegreeMismatch));
    }

    #[test]
    fn transversal_is_one() {
        for s in ["A3", "B3", "C3", "D4", "G2"] {
            for u in enumerate_weyl(sys(s)) {
                assert_eq!(
                    intersection_number(&TauMonomial::transversal(&u)).value,
                    1,
                    "{s} {u}"
                );
            }
        }
    }

    #[test]
    fn basis_monomials() {
        let u = WeylElement::parse(sys("A5"), "216435").unwrap();
        assert_eq!(class_x(&u).to_string(), "2;1,2,6;1,2,4,6");
        assert_eq!(class_x(&WeylElement::identity(sys("A5"))).degree(), 0);
        let g = WeylElement::parse(sys("G2"), "-1,-2,-3").unwrap();
        assert_eq!(class_x(&g), mono("G2", "-3,2;-3"));
    }

    #[test]
    fn g2_class_lists() {
        let g2 = sys("G2");
        let x = [
            ("1,2,3", "()"),
            ("2,1,3", "3,-1"),
            ("1,3,2", "2,-3"),
            ("2,3,1", "1,-3"),
            ("3,1,2", "2"),
            ("3,2,1", "1"),
            ("-1,-2,-3", "-3,2;-3"),
            ("-2,-1,-3", "-3"),
            ("-1,-3,-2", "-2"),
            ("-2,-3,-1", "-1"),
            ("-3,-1,-2", "-2,1"),
            ("-3,-2,-1", "-1,2"),
        ];
        for (u, m) in x {
            let u = WeylElement::parse(g2, u).unwrap();
            assert_eq!(class_x(&u), TauMonomial::parse(g2, m).unwrap(), "X_{u}");
        }
        let y = [
            ("-1,-2,-3", "()"),
            ("-2,-1,-3", "-3,1"),
            ("-1,-3,-2", "-2,3"),
            ("-2,-3,-1", "-1,3"),
            ("-3,-1,-2", "-2"),
            ("-3,-2,-1", "-1"),
            ("1,2,3", "3,-2;3"),
            ("2,1,3", "3"),
            ("1,3,2", "2"),
            ("2,3,1", "1"),
            ("3,1,2", "2,-1"),
            ("3,2,1", "1,-2"),
        ];
        for (w, m) in y {
            let w = WeylElement::parse(g2, w).unwrap();
            assert_eq!(class_y(&w), TauMonomial::parse(g2, m).unwrap(), "Y^{w}");
        }
    }

    #[test]
    fn y_class_is_w0_translate() {
        for s in ["A3", "B3", "D4", "G2"] {
            let w0 = longest_element(sys(s));
            for w in enumerate_weyl(sys(s)) {
                assert_eq!(class_y(&w), class_x(&w0.compose(&w)).act(&w0), "{s} {w}");
            }
        }
    }

    #[test]
    fn triple_examples() {
        let a4 = sys("A4");
        let e = |s| WeylElement::parse(a4, s).unwrap();
        assert_eq!(
            triple_number(&e("12354"), &e("31254"), &e("35421")).unwrap(),
            2
        );
        let b4 = sys("B4");
        let b = |s| WeylElement::parse(b4, s).unwrap();
        assert_eq!(
            triple_number(&b("2,-3,1,4"), &b("2,-3,1,4"), &b("2,-3,-1,-4")).unwrap(),
            4
        );
        let d5 = sys("D5");
        let d = |s| WeylElement::parse(d5, s).unwrap();
        assert_eq!(
            triple_number(&d("-1,3,4,5,-2"), &d("-1,3,4,5,-2"), &d("-1,-2,5,4,3")).unwrap(),
            -4
        );
        assert!(triple_number(&e("12354"), &b("2,-3,1,4"), &e("35421")).is_err());
    }

    #[test]
    fn triple_agrees_with_monomial_route() {
        for s in ["A3", "B2", "C3", "D4", "G2"] {
            let all = enumerate_weyl(sys(s));
            for u in &all {
                for v in all.iter().step_by(2) {
                    for w in all.iter().step_by(3) {
                        let m = class_y(w)
                            .times(&class_x(u))
                            .unwrap()
                            .times(&class_x(v))
                            .unwrap();
                        assert_eq!(
                            triple_number(u, v, w).unwrap(),
                            intersection_number(&m).value,
                            "{s} {u} {v} {w}"
                        );
                    }
                }
            }
        }
    }
}
