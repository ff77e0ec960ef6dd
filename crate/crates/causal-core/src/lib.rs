//! Second-order causal construction for Wick-polynomial interactions.
//!
//! The crate is organized around four subsystems:
//!
//! * [`wick`] — contraction enumeration between interaction vertices,
//!   Fermi signs, singularity degrees, and the symbolic partition sums of
//!   the inductive step;
//! * [`propagators`] — position-space pairing functions with Bessel
//!   closed forms, Dirac algebra and plane-wave spinors, and the
//!   closed-form momentum-space contraction distributions of spinor QED;
//! * [`splitter`] — splitting of translationally invariant scalar
//!   distributions into retarded and advanced parts: subtraction
//!   projectors, dispersion integrals, scaling estimates, cutoff scans;
//! * [`qed`] — the eight-term second-order S-matrix table and the split
//!   kernels (vacuum polarization, self-energy, vacuum bubble), each
//!   cross-validated against the splitter.
//!
//! [`validate`] runs the full oracle suite and emits a machine-readable
//! report; the `causal` binary exposes everything on the command line.

pub mod config;
pub mod dirac;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod propagators;
pub mod qed;
pub mod splitter;
pub mod testfn;
pub mod validate;
pub mod wick;

pub use error::{Error, Result};
pub use geometry::{Momentum4, SpacetimePoint, Versor};
