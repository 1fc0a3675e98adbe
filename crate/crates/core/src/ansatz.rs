//! Parametrised circuits.
//!
//! Both ansatz kinds share the layer structure
//! `H^{⊗N}` then, per layer, `RZZ(γ_uv)` per edge, `RZ(μ_j)` per qubit and
//! `RX(β_j)` per qubit. The feasibility kind appends the ESOP validation
//! oracle once, writing the feasibility flag into an ancilla stored as the
//! last qubit. The penalty kind folds the `Ĉ = Ô + λŜ` coefficients into the
//! `RZZ` / `RZ` angles and has no ancilla.
//!
//! Flat parameter layout, per layer: `β (n) | γ (|E|) | μ (n)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::esop::{compile_constraint, EsopExpr};
use crate::graphs::{Graph, Problem};
use crate::hamiltonians::{constraint, objective, penalty_hamiltonian};
use crate::simulator::{build_fused_oracle_circuit, build_oracle_circuit, GateOp, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnsatzKind {
    Feasibility,
    Penalty,
}

impl AnsatzKind {
    pub fn name(self) -> &'static str {
        match self {
            AnsatzKind::Feasibility => "feasibility",
            AnsatzKind::Penalty => "penalty",
        }
    }
}

impl std::fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "feasibility" | "ours" => Ok(AnsatzKind::Feasibility),
            "penalty" => Ok(AnsatzKind::Penalty),
            other => Err(Error::config(format!(
                "unknown method `{other}` (expected feasibility or penalty)"
            ))),
        }
    }
}

/// Flat angle vector in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamVector(pub Vec<f64>);

impl ParamVector {
    pub fn zeros(len: usize) -> Self {
        ParamVector(vec![0.0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ParamVector {
    fn from(v: Vec<f64>) -> Self {
        ParamVector(v)
    }
}

#[derive(Debug, Clone)]
enum Variant {
    Feasibility {
        esop: EsopExpr,
        /// Mixed-polarity MCX form, executed by the simulator.
        fused_oracle: Vec<GateOp>,
        /// X-conjugated form, used for circuit dumps.
        oracle: Vec<GateOp>,
    },
    Penalty {
        lambda: f64,
        /// `RZZ` angle multiplier per edge (the `Z_u Z_v` coefficient of `Ĉ`).
        edge_scale: Vec<f64>,
        /// `RZ` angle multiplier per qubit (the `Z_j` coefficient of `Ĉ`).
        vertex_scale: Vec<f64>,
    },
}

/// Immutable description of one ansatz family on one instance.
#[derive(Debug, Clone)]
pub struct AnsatzSpec {
    problem: Problem,
    depth: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
    variant: Variant,
}

fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::config("ansatz depth must be at least 1"));
    }
    Ok(())
}

impl AnsatzSpec {
    /// Ancilla-flagged ansatz with the oracle compiled from the problem's
    /// constraint function.
    pub fn feasibility(problem: Problem, g: &Graph, depth: usize) -> Result<Self> {
        check_depth(depth)?;
        let esop = compile_constraint(problem, g)?;
        AnsatzSpec::feasibility_with_esop(problem, g, depth, esop)
    }

    /// Same as [`feasibility`](Self::feasibility) with a caller-supplied
    /// ESOP for the constraint.
    pub fn feasibility_with_esop(problem: Problem, g: &Graph, depth: usize, esop: EsopExpr) -> Result<Self> {
        check_depth(depth)?;
        let n = g.n();
        let work: Vec<usize> = (0..n).collect();
        let oracle = build_oracle_circuit(&esop, &work, n)?;
        let fused_oracle = build_fused_oracle_circuit(&esop, &work, n)?;
        Ok(AnsatzSpec {
            problem,
            depth,
            n,
            edges: g.edges().to_vec(),
            variant: Variant::Feasibility {
                esop,
                fused_oracle,
                oracle,
            },
        })
    }

    /// Penalty-encoded ansatz for `Ĉ = Ô + λŜ`.
    pub fn penalty(problem: Problem, g: &Graph, depth: usize, lambda: f64) -> Result<Self> {
        check_depth(depth)?;
        let cost = penalty_hamiltonian(&objective(problem, g), &constraint(problem, g), lambda)?;
        Ok(AnsatzSpec {
            problem,
            depth,
            n: g.n(),
            edges: g.edges().to_vec(),
            variant: Variant::Penalty {
                lambda,
                edge_scale: g
                    .edges()
                    .iter()
                    .map(|&(u, v)| cost.quadratic_coeff(u, v))
                    .collect(),
                vertex_scale: (0..g.n()).map(|j| cost.linear_coeff(j)).collect(),
            },
        })
    }

    pub fn kind(&self) -> AnsatzKind {
        match self.variant {
            Variant::Feasibility { .. } => AnsatzKind::Feasibility,
            Variant::Penalty { .. } => AnsatzKind::Penalty,
        }
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn lambda(&self) -> Option<f64> {
        match self.variant {
            Variant::Penalty { lambda, .. } => Some(lambda),
            Variant::Feasibility { .. } => None,
        }
    }

    pub fn esop(&self) -> Option<&EsopExpr> {
        match &self.variant {
            Variant::Feasibility { esop, .. } => Some(esop),
            Variant::Penalty { .. } => None,
        }
    }

    /// Total qubits: `n`, plus the ancilla for the feasibility kind.
    pub fn num_qubits(&self) -> usize {
        match self.variant {
            Variant::Feasibility { .. } => self.n + 1,
            Variant::Penalty { .. } => self.n,
        }
    }

    /// Index of the feasibility flag qubit.
    pub fn ancilla(&self) -> Option<usize> {
        match self.variant {
            Variant::Feasibility { .. } => Some(self.n),
            Variant::Penalty { .. } => None,
        }
    }

    pub fn params_per_layer(&self) -> usize {
        2 * self.n + self.edges.len()
    }

    pub fn param_count(&self) -> usize {
        self.depth * self.params_per_layer()
    }

    fn check_theta(&self, theta: &ParamVector) -> Result<()> {
        if theta.len() != self.param_count() {
            return Err(Error::LengthMismatch {
                what: "parameter vector",
                expected: self.param_count(),
                got: theta.len(),
            });
        }
        Ok(())
    }

    /// The variational gates on the work register (Hadamards included,
    /// oracle excluded).
    fn variational_gates(&self, theta: &ParamVector) -> Vec<GateOp> {
        let n = self.n;
        let m = self.edges.len();
        let (edge_scale, vertex_scale) = match &self.variant {
            Variant::Penalty {
                edge_scale,
                vertex_scale,
                ..
            } => (Some(edge_scale), Some(vertex_scale)),
            Variant::Feasibility { .. } => (None, None),
        };
        let mut gates: Vec<GateOp> = (0..n).map(GateOp::H).collect();
        for layer in theta.0.chunks_exact(self.params_per_layer()) {
            let (beta, rest) = layer.split_at(n);
            let (gamma, mu) = rest.split_at(m);
            for (e, (&(a, b), &g)) in self.edges.iter().zip(gamma).enumerate() {
                let scale = edge_scale.map_or(1.0, |s| s[e]);
                gates.push(GateOp::Rzz { theta: scale * g, a, b });
            }
            for (j, &mu_j) in mu.iter().enumerate() {
                let scale = vertex_scale.map_or(1.0, |s| s[j]);
                gates.push(GateOp::Rz { theta: scale * mu_j, qubit: j });
            }
            for (j, &b) in beta.iter().enumerate() {
                gates.push(GateOp::Rx { theta: b, qubit: j });
            }
        }
        gates
    }

    /// Full gate list, with the oracle in its X-conjugated form.
    pub fn circuit(&self, theta: &ParamVector) -> Result<Vec<GateOp>> {
        self.check_theta(theta)?;
        let mut gates = self.variational_gates(theta);
        if let Variant::Feasibility { oracle, .. } = &self.variant {
            gates.extend(oracle.iter().cloned());
        }
        Ok(gates)
    }

    /// Prepares `|Ψ(θ)>` (feasibility) or `|ψ(θ)>` (penalty).
    pub fn build_state(&self, theta: &ParamVector) -> Result<StateVector> {
        self.check_theta(theta)?;
        let mut work = StateVector::zero(self.n)?;
        work.apply_all(&self.variational_gates(theta))?;
        match &self.variant {
            Variant::Penalty { .. } => Ok(work),
            Variant::Feasibility { fused_oracle, .. } => {
                // Ancilla is the top qubit and starts in |0>: the joint state is
                // the work amplitudes followed by 2^n zeros.
                let mut amps = work.amplitudes().to_vec();
                amps.resize(amps.len() * 2, Default::default());
                let mut full = StateVector::from_amplitudes(amps)?;
                full.apply_all(fused_oracle)?;
                Ok(full)
            }
        }
    }

    pub fn checkpoint(&self, theta: &ParamVector) -> Checkpoint {
        Checkpoint {
            kind: self.kind(),
            p: self.depth,
            theta: theta.clone(),
        }
    }
}

pub fn build_state(spec: &AnsatzSpec, theta: &ParamVector) -> Result<StateVector> {
    spec.build_state(theta)
}

pub fn param_count(spec: &AnsatzSpec) -> usize {
    spec.param_count()
}

/// Saved parameters: `{"kind":…, "p":…, "theta":[…]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub kind: AnsatzKind,
    pub p: usize,
    pub theta: ParamVector,
}

impl Checkpoint {
    /// Checks the checkpoint against an ansatz before its `theta` is used.
    pub fn validate_for(&self, spec: &AnsatzSpec) -> Result<()> {
        if self.kind != spec.kind() || self.p != spec.depth() {
            return Err(Error::config(format!(
                "checkpoint is {} depth {}, ansatz is {} depth {}",
                self.kind,
                self.p,
                spec.kind(),
                spec.depth()
            )));
        }
        spec.check_theta(&self.theta)
    }
}
