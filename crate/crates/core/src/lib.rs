//! Finite-volume transport laboratory: linear stencil schemes, flux-limited and
//! limited-downwind sharpening schemes, Glimm random-choice transport, front
//! diagnostics, the Vofire scheme on triangular meshes, and a two-fluid
//! Lagrange-remap solver with an anti-diffusive mass-fraction flux.

pub mod diagnostics;
pub mod error;
pub mod glimm;
pub mod grid;
pub mod levelset;
pub mod limited;
pub mod linear;
pub mod mesh;
pub mod profile;
pub mod riemann;
pub mod twofluid;
pub mod vofire;

pub use error::{Error, Result};
