//! Dense statevector simulation.
//!
//! Qubit `q` is bit `q` of the basis-state index. Rotations use full-angle
//! exponentials: `RX(θ) = exp(-iθX)`, `RZ(θ) = exp(-iθZ)`,
//! `RZZ(θ) = exp(-iθ Z⊗Z)`.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::esop::{EsopExpr, Literal};
use crate::hamiltonians::ZPolynomial;

/// Hard cap on simulated register size.
pub const MAX_QUBITS: usize = 26;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    /// `true`: fires on `|1>`; `false`: fires on `|0>`.
    pub positive: bool,
}

impl Control {
    pub fn pos(qubit: usize) -> Self {
        Control { qubit, positive: true }
    }

    pub fn neg(qubit: usize) -> Self {
        Control { qubit, positive: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GateOp {
    H(usize),
    X(usize),
    Rx { theta: f64, qubit: usize },
    Rz { theta: f64, qubit: usize },
    Rzz { theta: f64, a: usize, b: usize },
    /// Flips `target` iff every control matches its polarity.
    Mcx { controls: Vec<Control>, target: usize },
}

impl GateOp {
    fn qubits(&self) -> Vec<usize> {
        match self {
            GateOp::H(q) | GateOp::X(q) => vec![*q],
            GateOp::Rx { qubit, .. } | GateOp::Rz { qubit, .. } => vec![*qubit],
            GateOp::Rzz { a, b, .. } => vec![*a, *b],
            GateOp::Mcx { controls, target } => controls
                .iter()
                .map(|c| c.qubit)
                .chain(std::iter::once(*target))
                .collect(),
        }
    }

    fn angle(&self) -> Option<f64> {
        match self {
            GateOp::Rx { theta, .. } | GateOp::Rz { theta, .. } | GateOp::Rzz { theta, .. } => {
                Some(*theta)
            }
            _ => None,
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for (k, &q) in qubits.iter().enumerate() {
            if q >= num_qubits {
                return Err(Error::IndexOutOfRange {
                    what: "qubit",
                    index: q,
                    limit: num_qubits,
                });
            }
            if qubits[..k].contains(&q) {
                return Err(Error::config(format!("gate {self:?} repeats qubit {q}")));
            }
        }
        if let Some(theta) = self.angle() {
            if !theta.is_finite() {
                return Err(Error::config(format!("gate {self:?} has a non-finite angle")));
            }
        }
        Ok(())
    }
}

/// One line per gate: `H q`, `X q`, `RX theta q`, `RZ theta q`,
/// `RZZ theta q1 q2`, `MCX +q -q ... -> t`. Angles carry 17 significant
/// digits.
pub fn dump_circuit(gates: &[GateOp]) -> String {
    let mut out = String::new();
    for g in gates {
        match g {
            GateOp::H(q) => writeln!(out, "H {q}"),
            GateOp::X(q) => writeln!(out, "X {q}"),
            GateOp::Rx { theta, qubit } => writeln!(out, "RX {theta:.16e} {qubit}"),
            GateOp::Rz { theta, qubit } => writeln!(out, "RZ {theta:.16e} {qubit}"),
            GateOp::Rzz { theta, a, b } => writeln!(out, "RZZ {theta:.16e} {a} {b}"),
            GateOp::Mcx { controls, target } => {
                out.push_str("MCX");
                for c in controls {
                    let sign = if c.positive { '+' } else { '-' };
                    write!(out, " {sign}{}", c.qubit).unwrap();
                }
                writeln!(out, " -> {target}")
            }
        }
        .expect("writing to a String cannot fail");
    }
    out
}

/// Amplitudes over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0>`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        StateVector::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::SizeLimit {
                what: "qubit count",
                got: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                what: "basis state",
                index,
                limit: dim,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// Wraps raw amplitudes; the caller is responsible for normalisation.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() {
            return Err(Error::config(format!("amplitude count {dim} is not a power of two")));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::SizeLimit {
                what: "qubit count",
                got: num_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(Complex64::norm_sqr).collect()
    }

    pub fn apply(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match *gate {
            GateOp::H(q) => self.apply_pairwise(q, |a, b| {
                ((a + b) * FRAC_1_SQRT_2, (a - b) * FRAC_1_SQRT_2)
            }),
            GateOp::X(q) => self.apply_pairwise(q, |a, b| (b, a)),
            GateOp::Rx { theta, qubit } => {
                let c = Complex64::new(theta.cos(), 0.0);
                let mis = Complex64::new(0.0, -theta.sin());
                self.apply_pairwise(qubit, |a, b| (c * a + mis * b, mis * a + c * b))
            }
            GateOp::Rz { theta, qubit } => {
                let phase0 = Complex64::from_polar(1.0, -theta);
                let phase1 = phase0.conj();
                let mask = 1usize << qubit;
                for (k, amp) in self.amps.iter_mut().enumerate() {
                    *amp *= if k & mask == 0 { phase0 } else { phase1 };
                }
            }
            GateOp::Rzz { theta, a, b } => {
                let even = Complex64::from_polar(1.0, -theta);
                let odd = even.conj();
                let mask = (1usize << a) | (1usize << b);
                for (k, amp) in self.amps.iter_mut().enumerate() {
                    *amp *= if (k & mask).count_ones().is_multiple_of(2) { even } else { odd };
                }
            }
            GateOp::Mcx { ref controls, target } => {
                let (care, want) = controls.iter().fold((0usize, 0usize), |(care, want), c| {
                    let m = 1usize << c.qubit;
                    (care | m, if c.positive { want | m } else { want })
                });
                let tmask = 1usize << target;
                for k in 0..self.amps.len() {
                    if k & tmask == 0 && k & care == want {
                        self.amps.swap(k, k | tmask);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a GateOp>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    fn apply_pairwise(&mut self, qubit: usize, f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64)) {
        let mask = 1usize << qubit;
        for k in 0..self.amps.len() {
            if k & mask == 0 {
                let (a, b) = f(self.amps[k], self.amps[k | mask]);
                self.amps[k] = a;
                self.amps[k | mask] = b;
            }
        }
    }

    /// `(p0, p1)`: probability of measuring `ancilla` in `|0>` / `|1>`.
    pub fn ancilla_branch_probs(&self, ancilla: usize) -> Result<(f64, f64)> {
        self.check_qubit(ancilla)?;
        let mask = 1usize << ancilla;
        let (mut p0, mut p1) = (0.0, 0.0);
        for (k, amp) in self.amps.iter().enumerate() {
            if k & mask == 0 {
                p0 += amp.norm_sqr();
            } else {
                p1 += amp.norm_sqr();
            }
        }
        Ok((p0, p1))
    }

    /// `<Ψ| (|b><b|_a ⊗ obs) |Ψ>` when `restrict` is `Some((a, b))`, else
    /// `<Ψ| obs |Ψ>`. The projected form is unnormalised (it carries the
    /// branch probability). `obs` acts on qubits `0..obs.n()`.
    pub fn expect_zpoly(&self, obs: &ZPolynomial, restrict: Option<(usize, bool)>) -> Result<f64> {
        let work_mask = self.observable_mask(obs.n(), restrict)?;
        Ok(self.sum_weighted(restrict, |k| obs.eval(k & work_mask)))
    }

    /// Same as [`expect_zpoly`](Self::expect_zpoly) with a precomputed
    /// diagonal of length `2^w` over the low `w` qubits.
    pub fn expect_diagonal(&self, diag: &[f64], restrict: Option<(usize, bool)>) -> Result<f64> {
        if !diag.len().is_power_of_two() {
            return Err(Error::config("diagonal length must be a power of two"));
        }
        let w = diag.len().trailing_zeros() as usize;
        let work_mask = self.observable_mask(w, restrict)?;
        Ok(self.sum_weighted(restrict, |k| diag[k & work_mask]))
    }

    /// `<Ψ| Z_a ⊗ obs |Ψ>` with `obs` on qubits `0..obs.n()`.
    pub fn expect_z_tensor(&self, ancilla: usize, obs: &ZPolynomial) -> Result<f64> {
        let work_mask = self.observable_mask(obs.n(), Some((ancilla, false)))?;
        let amask = 1usize << ancilla;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let z = if k & amask == 0 { 1.0 } else { -1.0 };
                z * a.norm_sqr() * obs.eval(k & work_mask)
            })
            .sum())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::IndexOutOfRange {
                what: "qubit",
                index: q,
                limit: self.num_qubits,
            });
        }
        Ok(())
    }

    fn observable_mask(&self, width: usize, restrict: Option<(usize, bool)>) -> Result<usize> {
        if width > self.num_qubits {
            return Err(Error::LengthMismatch {
                what: "observable qubits",
                expected: self.num_qubits,
                got: width,
            });
        }
        if let Some((a, _)) = restrict {
            self.check_qubit(a)?;
            if a < width {
                return Err(Error::config(format!(
                    "ancilla {a} overlaps the observable's qubits 0..{width}"
                )));
            }
        }
        Ok((1usize << width) - 1)
    }

    fn sum_weighted(&self, restrict: Option<(usize, bool)>, value: impl Fn(usize) -> f64) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(k, _)| match restrict {
                Some((a, b)) => ((k >> a) & 1 == 1) == b,
                None => true,
            })
            .map(|(k, amp)| amp.norm_sqr() * value(k))
            .sum()
    }
}

fn check_oracle_registers(e: &EsopExpr, work: &[usize], ancilla: usize) -> Result<()> {
    if work.len() != e.num_vars() {
        return Err(Error::LengthMismatch {
            what: "work register",
            expected: e.num_vars(),
            got: work.len(),
        });
    }
    if work.contains(&ancilla) {
        return Err(Error::config(format!("ancilla {ancilla} is also a work qubit")));
    }
    Ok(())
}

fn cube_controls<'a>(literals: &'a [Literal], work: &'a [usize]) -> impl Iterator<Item = Control> + 'a {
    literals.iter().zip(work).filter_map(|(lit, &q)| match lit {
        Literal::Pos => Some(Control::pos(q)),
        Literal::Neg => Some(Control::neg(q)),
        Literal::Absent => None,
    })
}

/// Hardware-shaped validation oracle: for each cube, X on its negated work
/// qubits, a positive-control MCX onto the ancilla, then the same X gates
/// again. A cube with no literals becomes a bare X on the ancilla.
///
/// Maps `|b>_a|x> -> |b ⊕ F(x)>_a|x>`.
pub fn build_oracle_circuit(e: &EsopExpr, work: &[usize], ancilla: usize) -> Result<Vec<GateOp>> {
    check_oracle_registers(e, work, ancilla)?;
    let mut gates = Vec::new();
    for cube in e.cubes() {
        let controls: Vec<Control> = cube_controls(cube.literals(), work).collect();
        if controls.is_empty() {
            gates.push(GateOp::X(ancilla));
            continue;
        }
        let flips: Vec<GateOp> = controls
            .iter()
            .filter(|c| !c.positive)
            .map(|c| GateOp::X(c.qubit))
            .collect();
        gates.extend(flips.iter().cloned());
        gates.push(GateOp::Mcx {
            controls: controls.iter().map(|c| Control::pos(c.qubit)).collect(),
            target: ancilla,
        });
        gates.extend(flips);
    }
    Ok(gates)
}

/// Same map as [`build_oracle_circuit`], one mixed-polarity MCX per cube.
pub fn build_fused_oracle_circuit(e: &EsopExpr, work: &[usize], ancilla: usize) -> Result<Vec<GateOp>> {
    check_oracle_registers(e, work, ancilla)?;
    Ok(e.cubes()
        .iter()
        .map(|cube| {
            let controls: Vec<Control> = cube_controls(cube.literals(), work).collect();
            if controls.is_empty() {
                GateOp::X(ancilla)
            } else {
                GateOp::Mcx { controls, target: ancilla }
            }
        })
        .collect())
}

/// Cost summary of an ESOP oracle. Not simulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceEstimate {
    pub mcx_count: usize,
    pub max_controls: usize,
    /// `6k + 2` CNOTs per `k`-control gate with `k ≥ 2`, 1 for `k = 1`.
    pub cnot_bound: usize,
    /// One clean ancilla is needed once any gate has three or more controls.
    pub ancilla_needed: usize,
}

pub fn resource_estimate(e: &EsopExpr) -> ResourceEstimate {
    let widths: Vec<usize> = e.cubes().iter().map(|c| c.width()).collect();
    let max_controls = widths.iter().copied().max().unwrap_or(0);
    let cnot_bound = widths
        .iter()
        .map(|&k| match k {
            0 => 0,
            1 => 1,
            k => 6 * k + 2,
        })
        .sum();
    ResourceEstimate {
        mcx_count: widths.len(),
        max_controls,
        cnot_bound,
        ancilla_needed: usize::from(max_controls >= 3),
    }
}
