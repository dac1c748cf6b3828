//! Harmonic extensions of circle homeomorphisms onto smooth Jordan curves:
//! boundary norms, quasiconformal dilatation, and explicit distortion bounds.
//!
//! The crate is organized around the pipeline
//!
//! 1. [`curve`]: ingest a closed curve, reparameterize by arc length, and
//!    measure its geometric constants (Holder constant of the tangent,
//!    chord-arc constant, area, length).
//! 2. [`boundary`]: validate a boundary correspondence f on the curve,
//!    differentiate it spectrally, apply the Hilbert transform two ways, and
//!    compute the three norms that control distortion.
//! 3. [`extension`]: build the harmonic extension w = P[f] from Fourier
//!    data, evaluate it and its Wirtinger derivatives on interior grids, and
//!    measure the pointwise distortion K(z).
//! 4. [`bounds`]: evaluate the explicit distortion, Holder, Lipschitz and
//!    Jacobian bounds from the measured data and verify each one.
//! 5. [`fixtures`]: built-in boundary maps with known closed forms,
//!    including two classical counter-examples.

pub mod boundary;
pub mod bounds;
pub mod curve;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod spectral;
mod spline;

pub use error::{Error, ErrorKind, Result};
