//! Numerical calculus of quaternionic slice regular functions.
//!
//! A [`SliceFunction`] is induced by a [`StemFunction`] on a circular domain.
//! On top of evaluation the crate provides slice and spherical derivatives,
//! slice products, spherical expansions, the real differential with its rank
//! class, and scanners for zero sets, constant surfaces, degenerate sets and
//! singular sets.
//!
//! The runnable programs under `examples/` walk through each capability:
//! `cargo run --example evaluate_slice_functions` and so on.

pub mod calculus;
pub mod cli;
pub mod differential;
pub mod error;
pub mod fixtures;
pub mod fnspec;
pub mod quaternion;
pub mod scanners;
pub mod slicefn;
pub mod verify;

pub use error::{Error, Result};
pub use quaternion::{ComplexifiedQuaternion, ImaginaryUnit, Quaternion, RealQuadratic, SliceCoordinates};
pub use slicefn::{CircularDomain, ClosureStem, SliceFunction, StemFunction};
