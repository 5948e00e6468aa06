//! Nonlocal optical response of metals, exact surface impedances for s and p
//! polarisation, and the zero-temperature Casimir force they produce.
//!
//! All physics functions work in dimensionless variables: frequencies in
//! units of the plasma frequency ω_p, wave numbers in units of ω_p/c and
//! separations in units of the penetration depth δ = c/ω_p. The
//! [`materials`] module converts to and from SI.

pub mod constants;
pub mod dielectric;
pub mod error;
pub mod force;
pub mod impedance;
pub mod materials;
pub mod optics;
pub mod quadrature;

pub use dielectric::{DielectricModel, DielectricPair, ModelKind};
pub use error::{Error, Result};
pub use force::{CorrectionResult, ForceOptions, ForceResult, Geometry, ReflectionOverride};
pub use impedance::{ImpedanceOptions, ImpedancePair};
pub use materials::{preset, Axis, ChiTable, MaterialParams, ResponsePoint};
pub use optics::ReflectionPair;
