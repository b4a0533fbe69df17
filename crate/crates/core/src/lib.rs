//! Intersection numbers and cohomology structure constants for the toric
//! manifolds of Weyl-chamber fans (types A, B, C, D and G2).
//!
//! Closed-form Young-diagram formulas live in [`diagram`] and [`intersect`];
//! [`basis_ring`] turns triple intersection numbers into structure constants;
//! [`fan_oracle`] recomputes every intersection number independently by torus
//! fixed-point localization on the actual fan.

pub mod basis_ring;
pub mod diagram;
pub mod error;
pub mod fan_oracle;
pub mod intersect;
pub mod scalar;
pub mod weyl;

pub use basis_ring::{BasisCombination, BasisRing, PairingMatrix, DEFAULT_SIZE_CAP};
pub use diagram::{Lambda, SignedYoungDiagram, YoungDiagram};
pub use error::{Error, Result};
pub use fan_oracle::{verify_family, OracleConfig, VerificationReport, VerifyMode};
pub use intersect::{
    class_x, class_y, intersection_number, triple_number, IntersectionResult, TauMonomial,
};
pub use scalar::ExactScalar;
pub use weyl::{
    enumerate_weyl, longest_element, Family, RootSystem, RootSystemId, SubsetLabel, WeylElement,
};

/// The fan with exact big-rational dual bases.
pub type Fan = fan_oracle::FanModel<num_rational::BigRational>;
/// The localization oracle over big rationals.
pub type Oracle = fan_oracle::LocalizationOracle<num_rational::BigRational>;
