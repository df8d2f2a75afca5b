//! Dense complex linear algebra and labeled multipartite state primitives.
//!
//! Everything downstream (channels, entropies, bound curves) is built on the
//! types here: [`ComplexMatrix`] for operators, [`DensityMatrix`] and
//! [`PureState`] for states with named subsystems, [`eig_hermitian`] for
//! spectral decompositions, and the fidelity / trace-distance metrics.
//!
//! All types are immutable after construction and all operations are pure
//! functions, so values can be shared freely across threads.

mod eig;
mod matrix;
mod metrics;
mod state;

pub use eig::{Eigensystem, eig_hermitian};
pub use matrix::{C64, ComplexMatrix, kron, pauli_x, pauli_y, pauli_z};
pub use metrics::{fidelity, trace_distance};
pub use state::{DensityMatrix, PureState, Subsystem, purify};
