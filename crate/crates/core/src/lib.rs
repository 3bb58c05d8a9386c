//! Construction and numerical certification of axisymmetric freely floating
//! structures that trap time-harmonic water waves.
//!
//! The library builds a trapped-mode velocity potential from Bessel-kernel
//! integrals, traces level curves of the associated Stokes stream function,
//! assembles floating bodies whose wetted surfaces follow those curves, and
//! verifies that the resulting (structure, mode) pair satisfies the coupled
//! spectral problem: Laplace equation, free-surface condition, kinematic
//! condition on each body, the rigid-body motion equations, energy
//! equipartition and far-field decay.

pub mod error;
mod geom;
pub mod levelset;
pub mod potential;
pub mod structure;
pub mod specfun;
pub mod verify;

pub use error::{Result, WaveError};
