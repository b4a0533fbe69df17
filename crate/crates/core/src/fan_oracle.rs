//! The Weyl-chamber fan over the coweight lattice and an exact torus
//! fixed-point localization oracle for divisor intersection numbers.
//!
//! The oracle shares nothing with the Young-diagram formulas beyond the
//! labelling of rays by subsets; cone membership is decided on lattice
//! vectors.

use std::collections::HashMap;

use itertools::Itertools;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intersect::{intersection_number, TauMonomial};
use crate::scalar::ExactScalar;
use crate::weyl::{enumerate_weyl, RootSystem, RootSystemId, SubsetLabel, WeylElement};

pub const DEFAULT_SEED: u64 = 1729;

/// Largest number of ray multisets an exhaustive sweep will enumerate.
pub const EXHAUSTIVE_LIMIT: u128 = 2_000_000;

#[derive(Debug, Clone)]
pub struct Ray {
    pub label: SubsetLabel,
    /// Coordinates in the basis `ω_1, …, ω_n` of the coweight lattice.
    pub coords: Vec<i64>,
    /// The coweight in `e`-coordinates of the ambient space.
    pub vector: Vec<Rational64>,
}

/// A maximal cone `σ_u` with rays `uω_1, …, uω_n` and its dual basis.
#[derive(Debug, Clone)]
pub struct Cone<S> {
    pub element: WeylElement,
    pub rays: Vec<usize>,
    /// Row `j` is the character dual to ray `j`, in the basis of simple roots.
    pub dual: Vec<Vec<S>>,
}

impl<S> Cone<S> {
    fn position(&self, ray: usize) -> Option<usize> {
        self.rays.iter().position(|&r| r == ray)
    }
}

#[derive(Debug, Clone)]
pub struct FanModel<S> {
    system: RootSystemId,
    root_system: RootSystem,
    rays: Vec<Ray>,
    by_label: HashMap<SubsetLabel, usize>,
    cones: Vec<Cone<S>>,
    cones_by_ray: Vec<Vec<usize>>,
}

impl<S: ExactScalar> FanModel<S> {
    /// Builds the fan, refusing Weyl groups larger than `size_cap`.
    pub fn new(system: RootSystemId, size_cap: usize) -> Result<Self> {
        let order = system.weyl_order();
        if order > size_cap as u128 {
            return Err(Error::SizeCap {
                system,
                size: order,
                cap: size_cap,
            });
        }
        let root_system = RootSystem::new(system);
        let n = system.rank();
        let mut rays: Vec<Ray> = Vec::new();
        let mut by_coords: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut by_label: HashMap<SubsetLabel, usize> = HashMap::new();
        let mut cones = Vec::new();

        for u in enumerate_weyl(system) {
            let mut cone_rays = Vec::with_capacity(n);
            for i in 1..=n {
                let vector = root_system.coweight_vector(&u, i);
                let coords = omega_coords(&root_system, &vector)?;
                let label = u.coweight_label(i);
                let idx = match by_coords.get(&coords) {
                    Some(&idx) => idx,
                    None => {
                        rays.push(Ray {
                            label,
                            coords: coords.clone(),
                            vector,
                        });
                        by_coords.insert(coords, rays.len() - 1);
                        rays.len() - 1
                    }
                };
                match by_label.get(&label) {
                    Some(&j) if j != idx => {
                        return Err(Error::Consistency(format!(
                            "{system}: label {{{label}}} names two different rays"
                        )))
                    }
                    _ => {
                        by_label.insert(label, idx);
                    }
                }
                if rays[idx].label != label {
                    return Err(Error::Consistency(format!(
                        "{system}: ray {:?} carries labels {{{}}} and {{{label}}}",
                        rays[idx].coords, rays[idx].label
                    )));
                }
                cone_rays.push(idx);
            }
            let matrix: Vec<Vec<S>> = cone_rays
                .iter()
                .map(|&r| rays[r].coords.iter().map(|&c| S::from_int(c)).collect())
                .collect();
            let (inverse, det) = invert(matrix).ok_or_else(|| {
                Error::Consistency(format!("{system}: cone of {u} is degenerate"))
            })?;
            if det.abs() != S::one() {
                return Err(Error::Consistency(format!(
                    "{system}: cone of {u} has determinant {det}"
                )));
            }
            // rows of the dual are the columns of the inverse
            let dual = (0..n)
                .map(|j| (0..n).map(|k| inverse[k][j].clone()).collect())
                .collect();
            cones.push(Cone {
                element: u,
                rays: cone_rays,
                dual,
            });
        }

        if rays.len() as u128 != system.ray_count() {
            return Err(Error::Consistency(format!(
                "{system}: {} rays, expected {}",
                rays.len(),
                system.ray_count()
            )));
        }
        let mut cones_by_ray = vec![Vec::new(); rays.len()];
        for (c, cone) in cones.iter().enumerate() {
            for &r in &cone.rays {
                cones_by_ray[r].push(c);
            }
        }
        if cones
            .iter()
            .map(|c| c.rays.iter().copied().sorted().collect_vec())
            .unique()
            .count()
            != cones.len()
        {
            return Err(Error::Consistency(format!(
                "{system}: repeated maximal cone"
            )));
        }
        Ok(Self {
            system,
            root_system,
            rays,
            by_label,
            cones,
            cones_by_ray,
        })
    }

    pub fn system(&self) -> RootSystemId {
        self.system
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone<S>] {
        &self.cones
    }

    pub fn ray_index(&self, label: &SubsetLabel) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    /// Indices of the maximal cones containing every listed ray.
    pub fn cones_containing(&self, rays: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = rays.split_first() else {
            return (0..self.cones.len()).collect();
        };
        self.cones_by_ray[first]
            .iter()
            .copied()
            .filter(|&c| rest.iter().all(|&r| self.cones[c].position(r).is_some()))
            .collect()
    }

    fn ray_indices(&self, m: &TauMonomial) -> Result<Vec<usize>> {
        if m.system() != self.system {
            return Err(Error::MixedSystems(m.system(), self.system));
        }
        m.factors()
            .iter()
            .map(|l| {
                self.ray_index(l).ok_or_else(|| Error::InvalidLabel {
                    system: self.system,
                    token: l.to_string(),
                    reason: "not a ray of the fan".into(),
                })
            })
            .collect()
    }
}

fn omega_coords(rs: &RootSystem, vector: &[Rational64]) -> Result<Vec<i64>> {
    rs.simple_roots()
        .iter()
        .map(|alpha| {
            let c = RootSystem::pair(vector, alpha);
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Consistency(format!(
                    "{}: coweight {vector:?} is not in the coweight lattice",
                    rs.id()
                )))
            }
        })
        .collect()
}

/// Gauss-Jordan inverse and determinant over an exact field.
fn invert<S: ExactScalar>(mut a: Vec<Vec<S>>) -> Option<(Vec<Vec<S>>, S)> {
    let n = a.len();
    let mut inv: Vec<Vec<S>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { S::one() } else { S::zero() })
                .collect()
        })
        .collect();
    let mut det = S::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() / p.clone();
            inv[col][j] = inv[col][j].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
            }
        }
    }
    Some((inv, det))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub seed: u64,
    /// Attempts per evaluation point before giving up on avoiding every
    /// dual-basis hyperplane.
    pub resample_limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            resample_limit: 64,
        }
    }
}

/// Per-cone data at one evaluation point.
#[derive(Debug, Clone)]
struct PointData<S> {
    point: Vec<S>,
    weights: Vec<Vec<S>>,
    inverse_euler: Vec<S>,
}

fn sample_point<S: ExactScalar>(
    cones: &[Cone<S>],
    n: usize,
    rng: &mut ChaCha8Rng,
    limit: usize,
) -> Result<PointData<S>> {
    for _ in 0..limit.max(1) {
        let point: Vec<S> = (0..n)
            .map(|_| S::from_ratio(rng.gen_range(-1000..=1000), rng.gen_range(1..=97)))
            .collect();
        let weights: Vec<Vec<S>> = cones
            .iter()
            .map(|c| {
                c.dual
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(&point)
                            .fold(S::zero(), |acc, (d, t)| acc + d.clone() * t.clone())
                    })
                    .collect()
            })
            .collect();
        if weights.iter().flatten().any(|w| w.is_zero()) {
            continue;
        }
        let inverse_euler = weights
            .iter()
            .map(|ws| S::one() / ws.iter().fold(S::one(), |acc, w| acc * w.clone()))
            .collect();
        return Ok(PointData {
            point,
            weights,
            inverse_euler,
        });
    }
    Err(Error::Oracle(format!(
        "no generic evaluation point found in {limit} attempts"
    )))
}

/// Integrates monomials in the divisor classes by summing over the torus
/// fixed points, one per maximal cone.
#[derive(Debug, Clone)]
pub struct LocalizationOracle<S> {
    fan: FanModel<S>,
    config: OracleConfig,
    points: [PointData<S>; 2],
    sign: i64,
}

impl<S: ExactScalar> LocalizationOracle<S> {
    pub fn new(fan: FanModel<S>, config: OracleConfig) -> Result<Self> {
        let n = fan.system.rank();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let first = sample_point(&fan.cones, n, &mut rng, config.resample_limit)?;
        let mut second = sample_point(&fan.cones, n, &mut rng, config.resample_limit)?;
        let mut tries = 0;
        while second.point == first.point {
            tries += 1;
            if tries > config.resample_limit {
                return Err(Error::Oracle("evaluation points coincide".into()));
            }
            second = sample_point(&fan.cones, n, &mut rng, config.resample_limit)?;
        }
        let mut oracle = Self {
            fan,
            config,
            points: [first, second],
            sign: 1,
        };
        let id = WeylElement::identity(oracle.fan.system);
        let raw = oracle.integral(&TauMonomial::transversal(&id))?;
        if raw.abs() != 1 {
            return Err(Error::Oracle(format!(
                "transversal monomial integrates to {raw}, expected ±1"
            )));
        }
        oracle.sign = raw;
        Ok(oracle)
    }

    /// Builds the fan and the oracle with default configuration.
    pub fn for_system(system: RootSystemId, size_cap: usize) -> Result<Self> {
        Self::new(FanModel::new(system, size_cap)?, OracleConfig::default())
    }

    pub fn fan(&self) -> &FanModel<S> {
        &self.fan
    }

    pub fn config(&self) -> OracleConfig {
        self.config
    }

    /// `∫ τ_{x_1} ⋯ τ_{x_n}` over the toric manifold.
    pub fn integral(&self, m: &TauMonomial) -> Result<i64> {
        let n = self.fan.system.rank();
        if m.degree() != n {
            return Err(Error::Domain(format!(
                "monomial {m} has degree {}, expected {n}",
                m.degree()
            )));
        }
        let factors = self.fan.ray_indices(m)?;
        let mut support = factors.clone();
        support.dedup();
        let cones = self.fan.cones_containing(&support);
        let values: Vec<S> = self
            .points
            .iter()
            .map(|p| {
                cones.iter().fold(S::zero(), |acc, &c| {
                    let cone = &self.fan.cones[c];
                    let numer = factors.iter().fold(S::one(), |prod, &r| {
                        let j = cone.position(r).expect("cone contains the support");
                        prod * p.weights[c][j].clone()
                    });
                    acc + numer * p.inverse_euler[c].clone()
                })
            })
            .collect();
        if values[0] != values[1] {
            return Err(Error::Oracle(format!(
                "{m}: evaluation points disagree ({} vs {})",
                values[0], values[1]
            )));
        }
        let v = values[0]
            .to_exact_i64()
            .ok_or_else(|| Error::Oracle(format!("{m}: non-integral value {}", values[0])))?;
        Ok(self.sign * v)
    }

    /// `Σ_x ⟨x, α⟩ ∫ τ_x μ` over all rays `x`, which vanishes for every root `α`.
    pub fn linear_relation_sum(&self, root: &[i64], mu: &TauMonomial) -> Result<i64> {
        self.fan
            .rays
            .iter()
            .map(|ray| {
                let c = RootSystem::pair(&ray.vector, root);
                if !c.is_integer() {
                    return Err(Error::Consistency(format!(
                        "⟨{:?}, {root:?}⟩ = {c} is not an integer",
                        ray.vector
                    )));
                }
                if c.is_zero() {
                    return Ok(0);
                }
                Ok(c.to_integer() * self.integral(&mu.times_label(ray.label))?)
            })
            .sum()
    }

    /// A uniformly random degree-`n` monomial supported on one random cone.
    pub fn random_chain_monomial<R: Rng>(&self, rng: &mut R) -> TauMonomial {
        let cone = self.fan.cones.choose(rng).expect("fan has cones");
        let n = self.fan.system.rank();
        let factors = (0..n)
            .map(|_| self.fan.rays[*cone.rays.choose(rng).expect("cone has rays")].label)
            .collect();
        TauMonomial::new(self.fan.system, factors).expect("labels come from the fan")
    }

    /// A random degree-`n` monomial whose factors do not span a cone.
    pub fn random_non_chain_monomial<R: Rng>(&self, rng: &mut R) -> TauMonomial {
        let n = self.fan.system.rank();
        assert!(n >= 2, "every rank-one monomial is a chain");
        loop {
            let factors = (0..n)
                .map(|_| self.fan.rays.choose(rng).expect("fan has rays").label)
                .collect();
            let m = TauMonomial::new(self.fan.system, factors).expect("labels come from the fan");
            if !m.is_chain() {
                return m;
            }
        }
    }

    /// Every degree-`n` multiset of rays, in a fixed order.
    pub fn all_monomials(&self) -> Result<Vec<TauMonomial>> {
        let n = self.fan.system.rank();
        let count = multiset_count(self.fan.rays.len(), n);
        if count > EXHAUSTIVE_LIMIT {
            return Err(Error::SizeCap {
                system: self.fan.system,
                size: count,
                cap: EXHAUSTIVE_LIMIT as usize,
            });
        }
        Ok((0..self.fan.rays.len())
            .combinations_with_replacement(n)
            .map(|idx| {
                let factors = idx.iter().map(|&r| self.fan.rays[r].label).collect();
                TauMonomial::new(self.fan.system, factors).expect("labels come from the fan")
            })
            .collect())
    }

    /// Compares the closed-form value against the oracle on each monomial.
    pub fn compare(&self, monomials: &[TauMonomial]) -> Result<Vec<Mismatch>> {
        let checked: Vec<Option<Mismatch>> = monomials
            .par_iter()
            .map(|m| {
                let formula = intersection_number(m).value;
                let oracle = self.integral(m)?;
                Ok((formula != oracle).then(|| Mismatch {
                    monomial: m.clone(),
                    formula,
                    oracle,
                }))
            })
            .collect::<Result<_>>()?;
        Ok(checked.into_iter().flatten().collect())
    }
}

fn multiset_count(k: usize, n: usize) -> u128 {
    // C(k + n - 1, n)
    (0..n as u128).fold(1u128, |acc, i| acc * (k as u128 + i) / (i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub monomial: TauMonomial,
    pub formula: i64,
    pub oracle: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub system: RootSystemId,
    pub mode: VerifyMode,
    pub seed: u64,
    pub total: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Formula-versus-oracle sweep. Exhaustive mode covers every degree-`n`
/// multiset of rays; sampled mode draws `sample_size` chain monomials and
/// `sample_size` non-chain monomials.
pub fn verify_family(
    system: RootSystemId,
    mode: VerifyMode,
    sample_size: usize,
    seed: u64,
    size_cap: usize,
) -> Result<VerificationReport> {
    let fan = FanModel::<BigRational>::new(system, size_cap)?;
    let oracle = LocalizationOracle::new(
        fan,
        OracleConfig {
            seed,
            ..OracleConfig::default()
        },
    )?;
    let monomials = match mode {
        VerifyMode::Exhaustive => oracle.all_monomials()?,
        VerifyMode::Sampled => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            let mut ms: Vec<TauMonomial> = (0..sample_size)
                .map(|_| oracle.random_chain_monomial(&mut rng))
                .collect();
            if system.rank() >= 2 {
                ms.extend((0..sample_size).map(|_| oracle.random_non_chain_monomial(&mut rng)));
            }
            ms
        }
    };
    let mismatches = oracle.compare(&monomials)?;
    Ok(VerificationReport {
        system,
        mode,
        seed,
        total: monomials.len(),
        mismatches,
    })
}
