//! Discrete-time phase locking on finite state spaces.
//!
//! Three models share one parameter language (dimension d, stimulus
//! frequency, oscillator frequency, response strength K):
//!
//! * [`classical`]: a pair of integer phases where the oscillator snaps its
//!   phase difference to the detuning whenever the difference enters the
//!   entrainment range. Includes lock/drift classification and a continuous
//!   circle-map reference iterator.
//! * [`channel`]: the open-system lift of the classical map to two qudits.
//!   An ancilla records the phase difference during entrainment and is
//!   discarded after every step, yielding a Kraus family whose repeated
//!   application drives arbitrary states into a phase-locked subspace.
//!   [`entanglement`] quantifies what survives there: negativity and an
//!   exact formula for the asymptotic coherences.
//! * [`qubit`]: a single qubit driven by a classical d-level stimulus, with
//!   a closed-form three-branch update and an explicit tensor-space oracle
//!   for cross-validation.
//!
//! [`matrix`], [`eig`] and [`state`] provide the dense complex linear
//! algebra the quantum models need: Kronecker products, partial trace and
//! partial transpose, and a Jacobi eigensolver for Hermitian matrices.

pub mod channel;
pub mod classical;
pub mod eig;
pub mod entanglement;
pub mod error;
pub mod matrix;
pub mod qubit;
pub mod state;

pub use error::{Error, Result};
