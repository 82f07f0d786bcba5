//! State-vector simulator for mixed qubit/qudit registers and a QAOA
//! engine comparing three encodings of inequality constraints: direct
//! diagonal penalties, slack qudits with a quadratic equality penalty, and
//! a SUM-gate circuit realization of the direct penalty on a shared
//! ancilla qudit.
//!
//! The crate is organized bottom-up:
//! - [`register`]: mixed-radix basis codec, dense state vectors, sampling
//! - [`operators`]: angular-momentum matrices and exact mixer unitaries
//! - [`hamiltonians`]: diagonal cost operators, constraints, penalties,
//!   slack extension
//! - [`ancilla`]: SUM gates and the Hamming-weight phase circuit
//! - [`optimizer`]: Powell / Brent derivative-free minimization
//! - [`problems`]: the three benchmark generators
//! - [`qaoa`]: ansatz construction and single optimized runs
//! - [`metrics`]: success rate, approximation ratio, feasible weight,
//!   quantile aggregation
//! - [`batch`]: parallel and sequential execution of independent runs

pub mod ancilla;
pub mod batch;
pub mod error;
pub mod hamiltonians;
pub mod metrics;
pub mod operators;
pub mod optimizer;
pub mod problems;
pub mod qaoa;
pub mod register;

pub use error::{Error, Result};
pub use hamiltonians::{ConstraintSpec, DiagonalHamiltonian, SlackExtension, DEFAULT_LAMBDA};
pub use problems::{InstanceData, ProblemInstance};
pub use qaoa::{BuiltProblem, ConstraintMode, LayerOrder, QaoaConfig, RunRecord};
pub use register::{MixedRegister, StateVector};
