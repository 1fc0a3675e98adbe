//! Variational quantum optimisation for vertex cover and independent set on
//! small graphs, simulated exactly on a state vector.
//!
//! Two methods are provided:
//!
//! * a feasibility ansatz that appends a reversible oracle (compiled from an
//!   ESOP of the constraint) flagging valid assignments on an ancilla, trained
//!   with a loss that rewards good objective values only on flagged branches;
//! * a penalty baseline that encodes `objective + λ · violations` as a
//!   diagonal Hamiltonian.
//!
//! Module map: [`graphs`] (instances, brute force), [`esop`] (Boolean
//! functions and ESOP compilation), [`simulator`] (gates and state vectors),
//! [`hamiltonians`] (diagonal Z polynomials), [`ansatz`], [`vqa`] (losses,
//! Nelder–Mead, multistart) and [`experiment`] (benchmark protocol).

pub mod ansatz;
pub mod error;
pub mod esop;
pub mod experiment;
pub mod graphs;
pub mod hamiltonians;
pub mod simulator;
pub mod vqa;

pub use ansatz::{AnsatzKind, AnsatzSpec, Checkpoint, ParamVector};
pub use error::{Error, Result};
pub use esop::{BoolFn, Cube, EsopExpr, Literal};
pub use experiment::{ExperimentConfig, ExperimentResults};
pub use graphs::{brute_force, generate_erdos_renyi, BruteForceResult, Graph, Problem};
pub use hamiltonians::ZPolynomial;
pub use simulator::{GateOp, StateVector};
pub use vqa::{LossSpec, RunRecord, VqaTask};
