//! Numerical engine for the orbit geometry of pairs of involutions on
//! compact matrix Lie algebras.
//!
//! Given a compact matrix Lie algebra with an invariant metric and two
//! involutive automorphisms, the crate computes the restricted root system
//! of a maximal abelian subspace together with a refinement of the root
//! multiplicities by the spectrum of the composed involution, and from that
//! data derives principal-curvature spectra of the associated isometric
//! group orbits and of their path-group lifts. Exact finite criteria decide
//! whether an orbit is austere, minimal or totally geodesic, and a small
//! catalog of built-in algebra pairs exercises every code path.
//!
//! Modules:
//! - [`liealg`]: algebra models, brackets, adjoint operators, joint
//!   eigendecompositions of commuting normal operators.
//! - [`sympair`]: involution pairs, canonical splits, restricted roots and
//!   their unit-circle refinement.
//! - [`orbitgeom`]: phase classification at an orbit point, finite and
//!   path-group curvature spectra, truncated operator blocks.
//! - [`austere`]: austerity / minimality / total geodesy verdicts, theorem
//!   verification over sample grids, counterexample search.
//! - [`catalog`]: built-in algebra pairs with golden records.
//! - [`angles`]: parsing and formatting of rational multiples of pi.

pub mod angles;
pub mod austere;
pub mod catalog;
pub mod error;
pub mod liealg;
pub mod orbitgeom;
pub mod sympair;
pub mod tol;

pub use error::{Error, Result};
pub use tol::Tolerances;
