//! Dynamics of a deforming triangular droplet sliding on a substrate.
//!
//! The drop is modeled as a unit-area triangle with two contact points and a
//! free apex; surface tension and an angle-penalty pressure drive its center
//! of mass. The resulting 4D system (x, w, y, z) is reversible but not
//! Hamiltonian, and carries a rich structure: two equilibrium branches
//! exchanging stability transcritically, a vertical "bouncing" manifold with
//! a conserved energy, a near-horizontal "rocking" manifold computed as a
//! power series, and quasiperiodic torus trajectories between them. A
//! companion module classifies the center-of-mass motion of perturbed
//! spherical-cap drops by azimuthal wavenumber.
//!
//! Modules:
//! - [`model`]: parameters, state, triangle geometry, vector field, symmetries
//! - [`equilibria`]: equilibrium branches, eigenvalues, stability, bifurcation scan
//! - [`manifolds`]: reduced Hamiltonian, separatrix, rocking-manifold series
//! - [`dynamics`]: integrators, escape detection, Poincare sections, sweeps
//! - [`sessile`]: spherical-cap center-of-mass integrals and mode classes
//! - [`numerics`]: the self-contained numerical kernels underneath

pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod manifolds;
pub mod model;
pub mod numerics;
pub mod sessile;

pub use error::{Error, Result};
