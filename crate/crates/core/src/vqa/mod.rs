//! Loss functions, accuracy and the classical optimisation loop.
//!
//! The feasibility loss is
//!
//! ```text
//! E(θ) = <Ψ| |1><1|_a ⊗ (Ô − E_O) + |0><0|_a ⊗ (Ŝ − E_S) |Ψ>
//! ```
//!
//! which is non-positive on every feasible basis state, non-negative on every
//! infeasible one, and minimised exactly by the optimal feasible solutions.
//! [`loss_feasibility_pauli`] evaluates the same quantity through its
//! Pauli-`Z_a` expansion. The penalty baseline is `<Ô> + λ<Ŝ>`.

pub mod nelder_mead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ansatz::{AnsatzKind, AnsatzSpec, ParamVector};
use crate::error::{Error, Result};
use crate::graphs::{brute_force, BruteForceResult, Graph, Problem};
use crate::hamiltonians::{constraint, objective, spectral_bounds, ZPolynomial};
use crate::simulator::StateVector;

pub use nelder_mead::{NelderMeadOptions, NelderMeadResult};

/// Loss evaluations per start unless configured otherwise.
pub const DEFAULT_BUDGET: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LossKind {
    Feasibility { e_o: f64, e_s: f64 },
    Penalty { lambda: f64 },
}

/// Loss definition with cached observable diagonals.
#[derive(Debug, Clone)]
pub struct LossSpec {
    kind: LossKind,
    objective: ZPolynomial,
    constraint: ZPolynomial,
    objective_diag: Vec<f64>,
    constraint_diag: Vec<f64>,
}

impl LossSpec {
    pub fn new(kind: LossKind, objective: ZPolynomial, constraint: ZPolynomial) -> Result<Self> {
        if objective.n() != constraint.n() {
            return Err(Error::LengthMismatch {
                what: "constraint qubits",
                expected: objective.n(),
                got: constraint.n(),
            });
        }
        match kind {
            LossKind::Feasibility { e_o, e_s } if !(e_o.is_finite() && e_s.is_finite()) => {
                return Err(Error::config("spectral bounds must be finite"));
            }
            LossKind::Penalty { lambda } if !lambda.is_finite() || lambda < 0.0 => {
                return Err(Error::config(format!("penalty factor {lambda} must be finite and >= 0")));
            }
            _ => {}
        }
        Ok(LossSpec {
            kind,
            objective_diag: objective.diagonal()?,
            constraint_diag: constraint.diagonal()?,
            objective,
            constraint,
        })
    }

    /// Feasibility loss with the closed-form bounds for `problem`.
    pub fn feasibility(problem: Problem, g: &Graph) -> Result<Self> {
        let (e_o, e_s) = spectral_bounds(problem, g);
        LossSpec::new(
            LossKind::Feasibility { e_o, e_s },
            objective(problem, g),
            constraint(problem, g),
        )
    }

    pub fn penalty(problem: Problem, g: &Graph, lambda: f64) -> Result<Self> {
        LossSpec::new(
            LossKind::Penalty { lambda },
            objective(problem, g),
            constraint(problem, g),
        )
    }

    pub fn kind(&self) -> LossKind {
        self.kind
    }

    pub fn objective(&self) -> &ZPolynomial {
        &self.objective
    }

    pub fn constraint(&self) -> &ZPolynomial {
        &self.constraint
    }

    pub fn num_work_qubits(&self) -> usize {
        self.objective.n()
    }

    /// Checks `E_O ≥ max spectrum(Ô)` and `E_S ≤ min spectrum(Ŝ)` by enumeration.
    pub fn bounds_are_valid(&self) -> bool {
        match self.kind {
            LossKind::Feasibility { e_o, e_s } => {
                let max_o = self.objective_diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let min_s = self.constraint_diag.iter().copied().fold(f64::INFINITY, f64::min);
                e_o >= max_o && e_s <= min_s
            }
            LossKind::Penalty { .. } => true,
        }
    }

    /// Dispatches on the loss kind.
    pub fn evaluate(&self, state: &StateVector) -> Result<f64> {
        match self.kind {
            LossKind::Feasibility { .. } => loss_feasibility(state, self),
            LossKind::Penalty { .. } => loss_penalty(state, self),
        }
    }

    fn feasibility_bounds(&self) -> Result<(f64, f64)> {
        match self.kind {
            LossKind::Feasibility { e_o, e_s } => Ok((e_o, e_s)),
            LossKind::Penalty { .. } => Err(Error::config("expected a feasibility loss, got a penalty loss")),
        }
    }

    fn check_qubits(&self, state: &StateVector, expected: usize) -> Result<()> {
        if state.num_qubits() != expected {
            return Err(Error::LengthMismatch {
                what: "state qubits",
                expected,
                got: state.num_qubits(),
            });
        }
        Ok(())
    }
}

/// Projector form: two branch-restricted expectations.
pub fn loss_feasibility(state: &StateVector, spec: &LossSpec) -> Result<f64> {
    let (e_o, e_s) = spec.feasibility_bounds()?;
    let n = spec.num_work_qubits();
    spec.check_qubits(state, n + 1)?;
    let (p0, p1) = state.ancilla_branch_probs(n)?;
    let feasible = state.expect_diagonal(&spec.objective_diag, Some((n, true)))? - e_o * p1;
    let infeasible = state.expect_diagonal(&spec.constraint_diag, Some((n, false)))? - e_s * p0;
    Ok(feasible + infeasible)
}

/// Pauli form:
/// `½<I⊗Ô − Z_a⊗Ô + I⊗Ŝ + Z_a⊗Ŝ + (E_O − E_S) Z_a> − ½(E_O + E_S)`.
pub fn loss_feasibility_pauli(state: &StateVector, spec: &LossSpec) -> Result<f64> {
    let (e_o, e_s) = spec.feasibility_bounds()?;
    let n = spec.num_work_qubits();
    spec.check_qubits(state, n + 1)?;
    let o = state.expect_zpoly(&spec.objective, None)?;
    let za_o = state.expect_z_tensor(n, &spec.objective)?;
    let s = state.expect_zpoly(&spec.constraint, None)?;
    let za_s = state.expect_z_tensor(n, &spec.constraint)?;
    let za = state.expect_z_tensor(n, &ZPolynomial::constant(n, 1.0))?;
    Ok(0.5 * (o - za_o + s + za_s + (e_o - e_s) * za) - 0.5 * (e_o + e_s))
}

/// `<Ô> + λ<Ŝ>` on the bare work register.
pub fn loss_penalty(state: &StateVector, spec: &LossSpec) -> Result<f64> {
    let lambda = match spec.kind {
        LossKind::Penalty { lambda } => lambda,
        LossKind::Feasibility { .. } => {
            return Err(Error::config("expected a penalty loss, got a feasibility loss"));
        }
    };
    spec.check_qubits(state, spec.num_work_qubits())?;
    let o = state.expect_diagonal(&spec.objective_diag, None)?;
    let s = state.expect_diagonal(&spec.constraint_diag, None)?;
    Ok(o + lambda * s)
}

fn optimal_lookup(n: usize, optimal: &[usize]) -> Result<Vec<bool>> {
    let mut hit = vec![false; 1 << n];
    for &x in optimal {
        *hit.get_mut(x).ok_or(Error::IndexOutOfRange {
            what: "assignment",
            index: x,
            limit: 1 << n,
        })? = true;
    }
    Ok(hit)
}

/// Probability mass on `optimal` when measuring qubits `0..n` in the
/// computational basis; any qubits above `n` are traced out.
pub fn optimal_mass(state: &StateVector, n: usize, optimal: &[usize]) -> Result<f64> {
    if n > state.num_qubits() {
        return Err(Error::LengthMismatch {
            what: "work qubits",
            expected: state.num_qubits(),
            got: n,
        });
    }
    let hit = optimal_lookup(n, optimal)?;
    let mask = (1usize << n) - 1;
    let mass = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(k, _)| hit[k & mask])
        .map(|(_, a)| a.norm_sqr())
        .sum::<f64>();
    Ok(mass.clamp(0.0, 1.0))
}

/// Optimal mass conditioned on the ancilla (qubit `n`) reading `|1>`; 0 when
/// that branch is empty.
pub fn optimal_mass_postselected(state: &StateVector, n: usize, optimal: &[usize]) -> Result<f64> {
    let (_, p1) = state.ancilla_branch_probs(n)?;
    if p1 <= 0.0 {
        return Ok(0.0);
    }
    let hit = optimal_lookup(n, optimal)?;
    let amask = 1usize << n;
    let joint: f64 = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(k, _)| k & amask != 0 && hit[k & (amask - 1)])
        .map(|(_, a)| a.norm_sqr())
        .sum();
    Ok((joint / p1).clamp(0.0, 1.0))
}

/// Accuracy of `state`: probability of reading an optimal solution off the
/// work register. `kind` says whether the state carries the ancilla.
pub fn accuracy(state: &StateVector, problem: Problem, g: &Graph, kind: AnsatzKind) -> Result<f64> {
    let expected = match kind {
        AnsatzKind::Feasibility => g.n() + 1,
        AnsatzKind::Penalty => g.n(),
    };
    if state.num_qubits() != expected {
        return Err(Error::LengthMismatch {
            what: "state qubits",
            expected,
            got: state.num_qubits(),
        });
    }
    let reference = brute_force(problem, g)?;
    optimal_mass(state, g.n(), &reference.optimal_set)
}

/// Outcome of one optimisation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: Option<u64>,
    pub loss: f64,
    pub accuracy: f64,
    /// Ancilla `|1>` probability; `None` for the penalty ansatz.
    pub p1: Option<f64>,
    pub evals: usize,
    pub converged: bool,
    pub theta: ParamVector,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub loss: f64,
    pub accuracy: f64,
    pub p1: Option<f64>,
}

/// An ansatz, its loss and the reference optimum needed for accuracy.
#[derive(Debug, Clone)]
pub struct VqaTask {
    ansatz: AnsatzSpec,
    loss: LossSpec,
    optimal_set: Vec<usize>,
    postselect: bool,
    step: f64,
    tolerance: f64,
}

impl VqaTask {
    pub fn new(ansatz: AnsatzSpec, loss: LossSpec, reference: &BruteForceResult) -> Result<Self> {
        let matches = matches!(
            (ansatz.kind(), loss.kind()),
            (AnsatzKind::Feasibility, LossKind::Feasibility { .. }) | (AnsatzKind::Penalty, LossKind::Penalty { .. })
        );
        if !matches {
            return Err(Error::config("ansatz and loss kinds differ"));
        }
        if ansatz.num_vertices() != loss.num_work_qubits() {
            return Err(Error::LengthMismatch {
                what: "loss qubits",
                expected: ansatz.num_vertices(),
                got: loss.num_work_qubits(),
            });
        }
        let mut optimal_set = reference.optimal_set.clone();
        optimal_set.sort_unstable();
        let defaults = NelderMeadOptions::default();
        Ok(VqaTask {
            ansatz,
            loss,
            optimal_set,
            postselect: false,
            step: defaults.step,
            tolerance: defaults.tolerance,
        })
    }

    /// Builds the ansatz and loss for one instance. `lambda` is required for
    /// the penalty kind and ignored otherwise.
    pub fn for_instance(
        problem: Problem,
        g: &Graph,
        kind: AnsatzKind,
        depth: usize,
        lambda: Option<f64>,
    ) -> Result<Self> {
        let reference = brute_force(problem, g)?;
        let (ansatz, loss) = match kind {
            AnsatzKind::Feasibility => (
                AnsatzSpec::feasibility(problem, g, depth)?,
                LossSpec::feasibility(problem, g)?,
            ),
            AnsatzKind::Penalty => {
                let lambda = lambda.ok_or_else(|| Error::config("penalty method needs a penalty factor"))?;
                (
                    AnsatzSpec::penalty(problem, g, depth, lambda)?,
                    LossSpec::penalty(problem, g, lambda)?,
                )
            }
        };
        VqaTask::new(ansatz, loss, &reference)
    }

    /// Report accuracy conditioned on the ancilla reading `|1>` instead of
    /// tracing it out. Only affects feasibility tasks.
    pub fn with_postselect(mut self, postselect: bool) -> Self {
        self.postselect = postselect;
        self
    }

    pub fn ansatz(&self) -> &AnsatzSpec {
        &self.ansatz
    }

    pub fn loss_spec(&self) -> &LossSpec {
        &self.loss
    }

    pub fn optimal_set(&self) -> &[usize] {
        &self.optimal_set
    }

    pub fn loss_at(&self, theta: &ParamVector) -> Result<f64> {
        self.loss.evaluate(&self.ansatz.build_state(theta)?)
    }

    pub fn evaluate(&self, theta: &ParamVector) -> Result<Evaluation> {
        let state = self.ansatz.build_state(theta)?;
        let loss = self.loss.evaluate(&state)?;
        let n = self.ansatz.num_vertices();
        let (accuracy, p1) = match self.ansatz.ancilla() {
            Some(a) => {
                let acc = if self.postselect {
                    optimal_mass_postselected(&state, n, &self.optimal_set)?
                } else {
                    optimal_mass(&state, n, &self.optimal_set)?
                };
                (acc, Some(state.ancilla_branch_probs(a)?.1))
            }
            None => (optimal_mass(&state, n, &self.optimal_set)?, None),
        };
        Ok(Evaluation { loss, accuracy, p1 })
    }

    /// Nelder–Mead from `init` with at most `budget` loss evaluations.
    pub fn optimize(&self, init: &ParamVector, budget: usize) -> Result<RunRecord> {
        if budget == 0 {
            return Err(Error::config("optimisation budget must be at least 1"));
        }
        if init.len() != self.ansatz.param_count() {
            return Err(Error::LengthMismatch {
                what: "initial parameters",
                expected: self.ansatz.param_count(),
                got: init.len(),
            });
        }
        let opts = NelderMeadOptions {
            step: self.step,
            tolerance: self.tolerance,
            max_evals: budget,
        };
        let mut scratch = ParamVector::zeros(init.len());
        let result = nelder_mead::minimize(
            |x: &[f64]| {
                scratch.0.copy_from_slice(x);
                self.loss_at(&scratch)
            },
            init.as_slice(),
            opts,
        )?;
        let theta = ParamVector(result.x);
        let eval = self.evaluate(&theta)?;
        Ok(RunRecord {
            seed: None,
            loss: eval.loss,
            accuracy: eval.accuracy,
            p1: eval.p1,
            evals: result.evals,
            converged: result.converged,
            theta,
        })
    }

    /// One run per seed from angles drawn uniformly from `[0, 2π)`. Records
    /// come back in seed order.
    pub fn multistart(&self, seeds: &[u64], budget: usize) -> Result<Vec<RunRecord>> {
        seeds
            .par_iter()
            .map(|&seed| {
                let init = random_init(self.ansatz.param_count(), seed);
                let mut record = self.optimize(&init, budget)?;
                record.seed = Some(seed);
                Ok(record)
            })
            .collect()
    }
}

/// `len` angles drawn uniformly from `[0, 2π)` with a ChaCha8 stream.
pub fn random_init(len: usize, seed: u64) -> ParamVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ParamVector(
        (0..len)
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect(),
    )
}

pub fn optimize(task: &VqaTask, init: &ParamVector, budget: usize) -> Result<RunRecord> {
    task.optimize(init, budget)
}

pub fn multistart(task: &VqaTask, seeds: &[u64], budget: usize) -> Result<Vec<RunRecord>> {
    task.multistart(seeds, budget)
}
