//! Fourier-analytic measure calculus on finite abelian groups.
//!
//! The crate works with atomic (finitely supported, nonnegative) measures on a
//! finite abelian group `Z_{n_1} x ... x Z_{n_k}` and on its dual. It provides
//!
//! * exact group and character arithmetic ([`group`]),
//! * a measure calculus: Dirac and Haar measures, convolution, translation,
//!   restriction, densities, Radon-Nikodym derivatives, packing pairs
//!   ([`measure`]),
//! * weighted Fourier analysis/synthesis transforms and the weighted matrix
//!   that represents the analysis operator between `L^p` and `L^q` spaces
//!   ([`transform`]),
//! * optimal frame-bound computation: exact singular-value bounds at
//!   `p = q = 2`, direction-aware nonlinear power iteration and projected
//!   gradient descent otherwise ([`bounds`]),
//! * numerical verifiers for the translation, convolution, density,
//!   restriction, uniformity, and perturbation laws those bounds obey, plus a
//!   packing blow-up demonstration ([`theorems`]).

pub mod bounds;
pub mod group;
pub mod measure;
pub mod theorems;
pub mod transform;

mod error;

pub use error::{Error, Result};
