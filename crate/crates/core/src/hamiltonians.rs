//! Diagonal Ising observables and the MVC / MIS encodings.
//!
//! A basis state `|x>` has spin `z_i = (-1)^{x_i}`: selected vertices
//! (bit 1) sit at `z_i = -1`.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graphs::{bit, Graph, Problem, MAX_EXHAUSTIVE_VERTICES};

/// `constant + Σ linear_i Z_i + Σ_{i<j} quadratic_ij Z_i Z_j` on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct ZPolynomial {
    n: usize,
    constant: f64,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
}

#[inline]
fn spin(x: usize, i: usize) -> f64 {
    if bit(x, i) {
        -1.0
    } else {
        1.0
    }
}

impl ZPolynomial {
    pub fn zero(n: usize) -> Self {
        ZPolynomial::constant(n, 0.0)
    }

    pub fn constant(n: usize, value: f64) -> Self {
        ZPolynomial {
            n,
            constant: value,
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
        }
    }

    /// Adds `coeff · Z_i`.
    ///
    /// # Panics
    /// If `i >= n`.
    pub fn with_linear(mut self, i: usize, coeff: f64) -> Self {
        assert!(i < self.n, "qubit {i} out of range for {} qubits", self.n);
        *self.linear.entry(i).or_insert(0.0) += coeff;
        self
    }

    /// Adds `coeff · Z_i Z_j`.
    ///
    /// # Panics
    /// If `i == j` or either index is out of range.
    pub fn with_quadratic(mut self, i: usize, j: usize, coeff: f64) -> Self {
        assert!(i != j, "Z_i Z_i is the identity; fold it into the constant");
        assert!(i < self.n && j < self.n, "pair ({i}, {j}) out of range");
        *self.quadratic.entry((i.min(j), i.max(j))).or_insert(0.0) += coeff;
        self
    }

    pub fn with_constant(mut self, value: f64) -> Self {
        self.constant += value;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant_term(&self) -> f64 {
        self.constant
    }

    pub fn linear(&self) -> &BTreeMap<usize, f64> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn linear_coeff(&self, i: usize) -> f64 {
        self.linear.get(&i).copied().unwrap_or(0.0)
    }

    pub fn quadratic_coeff(&self, i: usize, j: usize) -> f64 {
        self.quadratic
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    /// Eigenvalue on basis state `x` (only the low `n` bits are read).
    pub fn eval(&self, x: usize) -> f64 {
        let lin: f64 = self.linear.iter().map(|(&i, c)| c * spin(x, i)).sum();
        let quad: f64 = self
            .quadratic
            .iter()
            .map(|(&(i, j), c)| c * spin(x, i) * spin(x, j))
            .sum();
        self.constant + lin + quad
    }

    /// All `2^n` eigenvalues, indexed by basis state.
    pub fn diagonal(&self) -> Result<Vec<f64>> {
        if self.n > MAX_EXHAUSTIVE_VERTICES {
            return Err(Error::SizeLimit {
                what: "observable qubits",
                got: self.n,
                max: MAX_EXHAUSTIVE_VERTICES,
            });
        }
        Ok((0..1usize << self.n).map(|x| self.eval(x)).collect())
    }

    /// Exhaustive `(min, max)` eigenvalue.
    pub fn spectrum_range(&self) -> Result<(f64, f64)> {
        let d = self.diagonal()?;
        Ok(d.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        }))
    }

    pub fn add(&self, other: &ZPolynomial) -> Result<ZPolynomial> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                what: "observable qubits",
                expected: self.n,
                got: other.n,
            });
        }
        let mut sum = self.clone();
        sum.constant += other.constant;
        for (&i, c) in &other.linear {
            *sum.linear.entry(i).or_insert(0.0) += c;
        }
        for (&ij, c) in &other.quadratic {
            *sum.quadratic.entry(ij).or_insert(0.0) += c;
        }
        Ok(sum)
    }

    pub fn scale(&self, factor: f64) -> ZPolynomial {
        ZPolynomial {
            n: self.n,
            constant: self.constant * factor,
            linear: self.linear.iter().map(|(&i, c)| (i, c * factor)).collect(),
            quadratic: self.quadratic.iter().map(|(&ij, c)| (ij, c * factor)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("observable serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

struct Linear<'a>(&'a BTreeMap<usize, f64>);
struct Quadratic<'a>(&'a BTreeMap<(usize, usize), f64>);

impl Serialize for Linear<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (i, c) in self.0 {
            map.serialize_entry(&i.to_string(), c)?;
        }
        map.end()
    }
}

impl Serialize for Quadratic<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for ((i, j), c) in self.0 {
            map.serialize_entry(&format!("{i},{j}"), c)?;
        }
        map.end()
    }
}

/// `{"n":…,"constant":…,"linear":{"i":c},"quadratic":{"i,j":c}}`, keys in
/// numeric order.
impl Serialize for ZPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("constant", &self.constant)?;
        map.serialize_entry("linear", &Linear(&self.linear))?;
        map.serialize_entry("quadratic", &Quadratic(&self.quadratic))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for ZPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            constant: f64,
            linear: BTreeMap<String, f64>,
            quadratic: BTreeMap<String, f64>,
        }
        let raw = Raw::deserialize(d)?;
        let index = |s: &str| -> std::result::Result<usize, D::Error> {
            let i: usize = s.trim().parse().map_err(D::Error::custom)?;
            if i >= raw.n {
                return Err(D::Error::custom(format!("qubit {i} out of range")));
            }
            Ok(i)
        };
        let mut linear = BTreeMap::new();
        for (k, c) in &raw.linear {
            linear.insert(index(k)?, *c);
        }
        let mut quadratic = BTreeMap::new();
        for (k, c) in &raw.quadratic {
            let (a, b) = k
                .split_once(',')
                .ok_or_else(|| D::Error::custom(format!("bad pair key `{k}`")))?;
            let (i, j) = (index(a)?, index(b)?);
            if i >= j {
                return Err(D::Error::custom(format!("pair key `{k}` must have i < j")));
            }
            quadratic.insert((i, j), *c);
        }
        Ok(ZPolynomial {
            n: raw.n,
            constant: raw.constant,
            linear,
            quadratic,
        })
    }
}

/// `Σ_i (I − Z_i)/2`: number of selected vertices.
pub fn mvc_objective(g: &Graph) -> ZPolynomial {
    (0..g.n()).fold(ZPolynomial::constant(g.n(), g.n() as f64 / 2.0), |h, i| {
        h.with_linear(i, -0.5)
    })
}

/// `Σ_{(u,v)} (Z_u Z_v + Z_u + Z_v + I)/4`: number of uncovered edges.
pub fn mvc_constraint(g: &Graph) -> ZPolynomial {
    g.edges()
        .iter()
        .fold(ZPolynomial::zero(g.n()), |h, &(u, v)| {
            h.with_quadratic(u, v, 0.25)
                .with_linear(u, 0.25)
                .with_linear(v, 0.25)
                .with_constant(0.25)
        })
}

/// `nI − Σ_i (I − Z_i)/2`: number of unselected vertices.
pub fn mis_objective(g: &Graph) -> ZPolynomial {
    (0..g.n()).fold(ZPolynomial::constant(g.n(), g.n() as f64 / 2.0), |h, i| {
        h.with_linear(i, 0.5)
    })
}

/// `Σ_{(u,v)} (Z_u Z_v − Z_u − Z_v + I)/4`: number of edges with both
/// endpoints selected. Each term is 1 exactly at `z_u = z_v = −1`.
pub fn mis_constraint(g: &Graph) -> ZPolynomial {
    g.edges()
        .iter()
        .fold(ZPolynomial::zero(g.n()), |h, &(u, v)| {
            h.with_quadratic(u, v, 0.25)
                .with_linear(u, -0.25)
                .with_linear(v, -0.25)
                .with_constant(0.25)
        })
}

pub fn objective(problem: Problem, g: &Graph) -> ZPolynomial {
    match problem {
        Problem::Mvc => mvc_objective(g),
        Problem::Mis => mis_objective(g),
    }
}

pub fn constraint(problem: Problem, g: &Graph) -> ZPolynomial {
    match problem {
        Problem::Mvc => mvc_constraint(g),
        Problem::Mis => mis_constraint(g),
    }
}

/// `Ĉ = Ô + λŜ`. `λ` must be finite and non-negative.
pub fn penalty_hamiltonian(obj: &ZPolynomial, cons: &ZPolynomial, lambda: f64) -> Result<ZPolynomial> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::config(format!("penalty factor {lambda} must be finite and >= 0")));
    }
    obj.add(&cons.scale(lambda))
}

/// Closed-form `(E_O, E_S)`: an upper bound on the objective spectrum and a
/// lower bound on the constraint spectrum. Both problems give `(n, 0)`,
/// attained by the all-selected cover and the empty independent set.
pub fn spectral_bounds(problem: Problem, g: &Graph) -> (f64, f64) {
    match problem {
        Problem::Mvc | Problem::Mis => (g.n() as f64, 0.0),
    }
}
