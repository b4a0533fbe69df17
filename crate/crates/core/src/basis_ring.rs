//! Structure constants of the cohomology ring in the basis `{[X_u]}`.
//!
//! With `t_w = ⟨[Y^w][X_u][X_v]⟩` and the pairing `𝓘_{w,w'} = ⟨[Y^w][X_{w'}]⟩`,
//! the coefficients solve `t = 𝓘 c`. The pairing is unitriangular for any
//! order refining length, so the solve is integral forward substitution.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::intersect::triple_number;
use crate::weyl::{enumerate_weyl, RootSystemId, WeylElement};

pub const DEFAULT_SIZE_CAP: usize = 50_000;

/// Sparse integer combination of basis classes `[X_w]`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BasisCombination {
    terms: BTreeMap<WeylElement, i64>,
}

impl BasisCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: WeylElement) -> Self {
        Self::default().with_term(w, 1)
    }

    pub fn with_term(mut self, w: WeylElement, c: i64) -> Self {
        self.add_term(w, c);
        self
    }

    pub fn add_term(&mut self, w: WeylElement, c: i64) {
        let entry = self.terms.entry(w.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn coefficient(&self, w: &WeylElement) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElement, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for BasisCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match i {
                0 if c < 0 => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "[X_{w}]")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Term<'a> {
    w: &'a WeylElement,
    c: i64,
}

impl Serialize for BasisCombination {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in self.terms() {
            seq.serialize_element(&Term { w, c })?;
        }
        seq.end()
    }
}

/// `𝓘_{u,v} = ⟨[Y^u][X_v]⟩`, stored by rows over the basis order. Only
/// nonzero entries are kept.
#[derive(Debug, Clone)]
pub struct PairingMatrix {
    rows: Vec<Vec<(usize, i64)>>,
}

impl PairingMatrix {
    pub fn row(&self, u: usize) -> &[(usize, i64)] {
        &self.rows[u]
    }

    pub fn entry(&self, u: usize, v: usize) -> i64 {
        self.rows[u]
            .iter()
            .find(|(j, _)| *j == v)
            .map_or(0, |&(_, x)| x)
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// The Weyl group in basis order (length, then one-line notation) with the
/// pairing matrix.
#[derive(Debug, Clone)]
pub struct BasisRing {
    system: RootSystemId,
    elements: Vec<WeylElement>,
    index: HashMap<WeylElement, usize>,
    lengths: Vec<usize>,
    degrees: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    pairing: PairingMatrix,
}

impl BasisRing {
    pub fn new(system: RootSystemId, size_cap: usize) -> Result<Self> {
        let order = system.weyl_order();
        if order > size_cap as u128 {
            return Err(Error::SizeCap {
                system,
                size: order,
                cap: size_cap,
            });
        }
        let mut keyed: Vec<(usize, WeylElement)> = enumerate_weyl(system)
            .into_par_iter()
            .map(|u| (u.length(), u))
            .collect();
        keyed.sort();
        let lengths: Vec<usize> = keyed.iter().map(|(l, _)| *l).collect();
        let elements: Vec<WeylElement> = keyed.into_iter().map(|(_, u)| u).collect();
        let degrees: Vec<usize> = elements.iter().map(WeylElement::descent_count).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, u)| (u.clone(), i))
            .collect();
        let mut blocks = vec![Vec::new(); system.rank() + 1];
        for (i, &d) in degrees.iter().enumerate() {
            blocks[d].push(i);
        }

        let id = WeylElement::identity(system);
        let rows = (0..elements.len())
            .into_par_iter()
            .map(|u| {
                let mut row = Vec::new();
                for &v in &blocks[degrees[u]] {
                    let x = triple_number(&elements[v], &id, &elements[u])?;
                    if x == 0 {
                        continue;
                    }
                    if v > u || (v == u && x != 1) {
                        return Err(Error::Consistency(format!(
                            "pairing entry ({}, {}) = {x} breaks unitriangularity",
                            elements[u], elements[v]
                        )));
                    }
                    row.push((v, x));
                }
                if row.last().map(|&(v, _)| v) != Some(u) {
                    return Err(Error::Consistency(format!(
                        "pairing diagonal at {} is zero",
                        elements[u]
                    )));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            system,
            elements,
            index,
            lengths,
            degrees,
            blocks,
            pairing: PairingMatrix { rows },
        })
    }

    pub fn system(&self) -> RootSystemId {
        self.system
    }

    /// All Weyl group elements in basis order.
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn index_of(&self, u: &WeylElement) -> Option<usize> {
        self.index.get(u).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn pairing(&self) -> &PairingMatrix {
        &self.pairing
    }

    fn locate(&self, u: &WeylElement) -> Result<usize> {
        if u.system() != self.system {
            return Err(Error::MixedSystems(u.system(), self.system));
        }
        self.index_of(u)
            .ok_or_else(|| Error::Consistency(format!("{u} missing from the basis")))
    }

    /// `[X_u][X_v] = Σ_w c_{u,v}^w [X_w]`.
    pub fn structure_constants(
        &self,
        u: &WeylElement,
        v: &WeylElement,
    ) -> Result<BasisCombination> {
        let (i, j) = (self.locate(u)?, self.locate(v)?);
        let d = self.degrees[i] + self.degrees[j];
        let mut out = BasisCombination::zero();
        let Some(block) = self.blocks.get(d) else {
            return Ok(out);
        };
        let mut c: HashMap<usize, i64> = HashMap::new();
        for &w in block {
            let mut value = triple_number(u, v, &self.elements[w])?;
            for &(w2, x) in self.pairing.row(w) {
                if w2 != w {
                    value -= x * c.get(&w2).copied().unwrap_or(0);
                }
            }
            if value != 0 {
                c.insert(w, value);
                out.add_term(self.elements[w].clone(), value);
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, a: &BasisCombination, b: &BasisCombination) -> Result<BasisCombination> {
        let mut out = BasisCombination::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                for (w, z) in self.structure_constants(u, v)?.terms() {
                    out.add_term(w.clone(), x * y * z);
                }
            }
        }
        Ok(out)
    }

    /// `[X_{u_1}] ⋯ [X_{u_k}]` folded from the left; the empty product is `[X_id]`.
    pub fn expand_product(&self, classes: &[WeylElement]) -> Result<BasisCombination> {
        let mut acc = BasisCombination::basis(WeylElement::identity(self.system));
        for u in classes {
            acc = self.multiply(&acc, &BasisCombination::basis(u.clone()))?;
        }
        Ok(acc)
    }

    /// Checks `⟨[Y^w][X_u][X_v]⟩ = Σ_{w'} 𝓘_{w,w'} c_{u,v}^{w'}` for every `w`.
    pub fn duality_check(&self, u: &WeylElement, v: &WeylElement) -> Result<bool> {
        let c = self.structure_constants(u, v)?;
        for (w, row) in self.elements.iter().zip(&self.pairing.rows) {
            let lhs = triple_number(u, v, w)?;
            let rhs: i64 = row
                .iter()
                .map(|&(w2, x)| x * c.coefficient(&self.elements[w2]))
                .sum();
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
