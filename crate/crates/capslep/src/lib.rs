//! Tangential vector Slepian functions on an axisymmetric spherical cap.
//!
//! The library computes bandlimited tangential vector fields on the unit
//! sphere that are maximally concentrated inside a cap θ ≤ Θ. The vector
//! problem separates per azimuthal order m into small scalar eigenproblems
//! in a dedicated basis of order-m functions F_lm; each order admits both a
//! concentration matrix K_m (Gram matrix of the basis over the cap) and a
//! commuting tridiagonal matrix J_m whose well-separated spectrum makes the
//! eigenvector computation numerically stable.
//!
//! Modules, bottom-up:
//! - [`dd`]: double-double arithmetic for the extended-precision reference.
//! - [`legendre`]: normalized associated Legendre functions and couplings.
//! - [`flm`]: the order-m basis functions F_lm and their recurrences.
//! - [`quadrature`]: Gauss–Legendre rules in double and double-double.
//! - [`harmonics`]: tangential vector spherical harmonics and field
//!   analysis/synthesis.
//! - [`capop`]: the per-order matrices K_m, J_m and Shannon numbers.
//! - [`eigen`]: symmetric eigensolvers (tridiagonal QL, dense Jacobi,
//!   double-double Jacobi).
//! - [`slepian`]: per-order solutions, field evaluation, verifications.
//! - [`cli`]: the command-line front end (also exposed through the
//!   `capslep` binary).

pub mod capop;
pub mod cli;
pub mod dd;
pub mod eigen;
pub mod error;
pub mod flm;
pub mod harmonics;
pub mod legendre;
pub mod quadrature;
pub mod slepian;

pub use capop::{CapProblem, FixedOrderProblem};
pub use error::{Error, Result};
pub use harmonics::{SpherePoint, TangentValue, TauSign};
pub use slepian::{solve_order, FixedOrderSolution, VectorEigenfield};
