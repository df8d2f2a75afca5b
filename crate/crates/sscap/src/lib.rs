//! Numerical toolkit for quantum-channel capacity bounds with symmetric side
//! channels.
//!
//! The crate is organized in four layers:
//!
//! - [`qmat`]: dense complex matrices, Hermitian eigendecomposition, labeled
//!   multipartite states with partial trace, purification, and state-distance
//!   metrics.
//! - [`channels`]: CPTP maps as Kraus families, with Stinespring dilations,
//!   complementary channels, Choi matrices, channel algebra
//!   (tensor/compose/mix), the standard qubit channels, the symmetric side
//!   channel, and a numeric degradability probe.
//! - [`coherent`]: entropic quantities (von Neumann entropy, coherent and
//!   mutual information), the single-letter coherent-information optimizer,
//!   the side-channel-assisted rate function, the symmetrization construction
//!   and its additivity-split identity.
//! - [`depol`]: closed-form bound curves for the depolarizing channel
//!   (hashing, dephasing, no-cloning, the amplitude-damping convex hull and
//!   the assisted lower bound), with threshold root-finding.
//!
//! The core is `no_std` (with `alloc`); all floating-point transcendentals go
//! through [`libm`] so results are bit-identical across environments. IO and
//! the command-line front end live in the companion `sscap-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod channels;
pub mod coherent;
pub mod depol;
mod error;
pub mod optim;
pub mod qmat;
pub mod sampling;

pub use error::{Error, Result};
