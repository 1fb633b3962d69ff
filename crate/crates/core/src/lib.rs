//! Numerical toolkit for the generalized Zernike differential operator and
//! its realization as a Higgs oscillator on the sphere / pseudosphere.
//!
//! The crate is organized around five pieces:
//!
//! - [`poly`]: exact bivariate-polynomial arithmetic in the circular-harmonic
//!   monomial basis, the Zernike operator action, its closed-form spectrum,
//!   and eigenfunction construction by degree back-substitution;
//! - [`geometry`]: the two-parameter constant-curvature metric family, its
//!   ambient embedding, the imaginary gauge function, measure weights, the
//!   Higgs potential, and the Laplace-Beltrami operator;
//! - [`quadrature`]: Gauss-Jacobi rules and weighted inner products on the
//!   disk, exact for polynomial integrands;
//! - [`spectral`]: dense operator matrices in weight-orthonormal bases,
//!   eigensolves, Hermiticity / pseudo-Hermiticity diagnostics, and pointwise
//!   operator identities (similarity transform, kinetic-term conventions);
//! - [`classical`]: Hamiltonian flows of the complex Zernike system and the
//!   real Higgs oscillator, the imaginary-gauge map between them, conserved
//!   quantities (energy, angular momentum, Fradkin tensor), and closed-orbit
//!   detection.
//!
//! The [`verify`] module bundles every checkable claim into one reproducible
//! report; the `zernike-higgs` binary exposes it along with spectrum,
//! eigenfunction, and trajectory commands. Each major capability also has a
//! runnable example under `examples/`.

pub mod classical;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod poly;
pub mod quadrature;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::Params;
