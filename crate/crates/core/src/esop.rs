//! Exclusive-sum-of-products synthesis.
//!
//! Constraint functions are materialised as truth tables ([`BoolFn`]),
//! expanded into an XOR of cubes by recursive Shannon decomposition
//! ([`shannon_esop`]) and shrunk with distance-1 cube merging
//! ([`minimize_esop`]). The resulting [`EsopExpr`] drives the oracle
//! circuit built in [`crate::simulator`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graphs::{bit, Graph, Problem, MAX_EXHAUSTIVE_VERTICES};

/// One position of a cube: `x̄_i`, `x_i`, or the constant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Literal {
    Neg,
    Pos,
    Absent,
}

impl Literal {
    fn as_char(self) -> char {
        match self {
            Literal::Neg => '0',
            Literal::Pos => '1',
            Literal::Absent => '-',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Literal::Neg),
            '1' => Some(Literal::Pos),
            '-' => Some(Literal::Absent),
            _ => None,
        }
    }

    /// XOR of two single-variable literals, when it is again a literal.
    ///
    /// `x̄ ⊕ x = 1`, `x̄ ⊕ 1 = x`, `x ⊕ 1 = x̄`. Equal literals cancel to 0,
    /// which is not a literal.
    fn xor(self, other: Literal) -> Option<Literal> {
        use Literal::*;
        match (self, other) {
            (Neg, Pos) | (Pos, Neg) => Some(Absent),
            (Neg, Absent) | (Absent, Neg) => Some(Pos),
            (Pos, Absent) | (Absent, Pos) => Some(Neg),
            _ => None,
        }
    }
}

/// A product term over `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    literals: Vec<Literal>,
}

impl Cube {
    /// The constant-1 cube.
    pub fn tautology(n: usize) -> Self {
        Cube {
            literals: vec![Literal::Absent; n],
        }
    }

    pub fn from_literals(literals: Vec<Literal>) -> Self {
        Cube { literals }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn num_vars(&self) -> usize {
        self.literals.len()
    }

    /// Number of non-absent positions.
    pub fn width(&self) -> usize {
        self.literals.iter().filter(|&&l| l != Literal::Absent).count()
    }

    pub fn with(mut self, var: usize, lit: Literal) -> Self {
        self.literals[var] = lit;
        self
    }

    pub fn eval(&self, x: usize) -> bool {
        self.literals.iter().enumerate().all(|(i, lit)| match lit {
            Literal::Neg => !bit(x, i),
            Literal::Pos => bit(x, i),
            Literal::Absent => true,
        })
    }

    /// Positions where the two cubes disagree.
    pub fn distance(&self, other: &Cube) -> usize {
        self.literals
            .iter()
            .zip(&other.literals)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for lit in &self.literals {
            write!(f, "{}", lit.as_char())?;
        }
        Ok(())
    }
}

/// `c_1 ⊕ c_2 ⊕ … ⊕ c_m` over `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsopExpr {
    n: usize,
    cubes: Vec<Cube>,
}

impl EsopExpr {
    pub fn new(n: usize, cubes: Vec<Cube>) -> Result<Self> {
        if let Some(c) = cubes.iter().find(|c| c.num_vars() != n) {
            return Err(Error::LengthMismatch {
                what: "cube",
                expected: n,
                got: c.num_vars(),
            });
        }
        Ok(EsopExpr { n, cubes })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// Evaluates on an integer-encoded assignment (bit `i` = `x_i`).
    pub fn eval(&self, x: usize) -> bool {
        self.cubes.iter().fold(false, |acc, c| acc ^ c.eval(x))
    }

    /// Evaluates on an explicit bit vector, which must have length `n`.
    pub fn eval_bits(&self, bits: &[bool]) -> Result<bool> {
        if bits.len() != self.n {
            return Err(Error::LengthMismatch {
                what: "assignment",
                expected: self.n,
                got: bits.len(),
            });
        }
        let x = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | (usize::from(b) << i));
        Ok(self.eval(x))
    }

    pub fn to_truth_table(&self) -> BoolFn {
        BoolFn {
            n: self.n,
            table: (0..1usize << self.n).map(|x| self.eval(x)).collect(),
        }
    }
}

/// Text form: header `vars=<n> cubes=<m>` followed by one cube per line
/// over `{0,1,-}`; the lines are XORed together.
impl fmt::Display for EsopExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars={} cubes={}", self.n, self.cubes.len())?;
        for c in &self.cubes {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for EsopExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty ESOP text".into()))?;
        let field = |key: &str| -> Result<usize> {
            header
                .split_whitespace()
                .find_map(|tok| tok.strip_prefix(key))
                .ok_or_else(|| Error::Parse(format!("missing `{key}` in header `{header}`")))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad `{key}` in header: {e}")))
        };
        let n = field("vars=")?;
        let m = field("cubes=")?;
        let cubes = lines
            .map(|line| {
                line.chars()
                    .map(|c| {
                        Literal::from_char(c)
                            .ok_or_else(|| Error::Parse(format!("bad literal `{c}` in `{line}`")))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Cube::from_literals)
            })
            .collect::<Result<Vec<_>>>()?;
        if cubes.len() != m {
            return Err(Error::Parse(format!(
                "header announces {m} cubes, found {}",
                cubes.len()
            )));
        }
        EsopExpr::new(n, cubes)
    }
}

/// Truth table of `f: {0,1}^n -> {0,1}`; index bit `i` is `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolFn {
    n: usize,
    table: Vec<bool>,
}

impl BoolFn {
    pub fn from_table(n: usize, table: Vec<bool>) -> Result<Self> {
        check_arity(n)?;
        if table.len() != 1 << n {
            return Err(Error::LengthMismatch {
                what: "truth table",
                expected: 1 << n,
                got: table.len(),
            });
        }
        Ok(BoolFn { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_arity(n)?;
        Ok(BoolFn {
            n,
            table: (0..1usize << n).map(f).collect(),
        })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        BoolFn::from_fn(n, |_| value)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, x: usize) -> bool {
        self.table[x]
    }

    pub fn count_ones(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    fn constant_value(&self) -> Option<bool> {
        let first = self.table[0];
        self.table.iter().all(|&b| b == first).then_some(first)
    }

    /// `f` with `x_var` fixed to `value`. Arity is kept; the result no longer
    /// depends on `x_var`.
    pub fn cofactor(&self, var: usize, value: bool) -> Result<BoolFn> {
        if var >= self.n {
            return Err(Error::IndexOutOfRange {
                what: "variable",
                index: var,
                limit: self.n,
            });
        }
        let mask = 1usize << var;
        let table = (0..self.table.len())
            .map(|x| {
                let fixed = if value { x | mask } else { x & !mask };
                self.table[fixed]
            })
            .collect();
        Ok(BoolFn { n: self.n, table })
    }
}

fn check_arity(n: usize) -> Result<()> {
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::SizeLimit {
            what: "variable count",
            got: n,
            max: MAX_EXHAUSTIVE_VERTICES,
        });
    }
    Ok(())
}

pub fn cofactor(f: &BoolFn, var: usize, value: bool) -> Result<BoolFn> {
    f.cofactor(var, value)
}

/// Recursive Shannon expansion `f = x̄_i f_i^0 ⊕ x_i f_i^1` along `order`.
///
/// Constant-1 subfunctions close the current cube prefix, constant-0 ones
/// contribute nothing. A variable the current subfunction does not depend
/// on (`f_i^0 == f_i^1`) is skipped without splitting.
pub fn shannon_esop(f: &BoolFn, order: &[usize]) -> Result<EsopExpr> {
    let n = f.num_vars();
    if order.len() != n {
        return Err(Error::InvalidOrder(format!(
            "expected {n} variables, got {}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidOrder(format!(
                "{order:?} is not a permutation of 0..{n}"
            )));
        }
    }
    let mut cubes = Vec::new();
    expand(f, order, Cube::tautology(n), &mut cubes);
    EsopExpr::new(n, cubes)
}

fn expand(f: &BoolFn, order: &[usize], prefix: Cube, out: &mut Vec<Cube>) {
    match f.constant_value() {
        Some(true) => return out.push(prefix),
        Some(false) => return,
        None => {}
    }
    let (&var, rest) = order
        .split_first()
        .expect("a non-constant function depends on some remaining variable");
    let f0 = f.cofactor(var, false).expect("order validated");
    let f1 = f.cofactor(var, true).expect("order validated");
    if f0 == f1 {
        return expand(&f0, rest, prefix, out);
    }
    expand(&f0, rest, prefix.clone().with(var, Literal::Neg), out);
    expand(&f1, rest, prefix.with(var, Literal::Pos), out);
}

/// Shrinks an ESOP with local rewrites iterated to a fixpoint:
///
/// * equal cubes cancel in pairs (`c ⊕ c = 0`);
/// * two cubes at distance one merge into a single cube, the differing
///   position becoming the XOR of the two literals (`x̄ ⊕ x = 1`,
///   `x̄ ⊕ 1 = x`, `x ⊕ 1 = x̄`).
///
/// Each rewrite lowers the cube count, so the result never has more cubes
/// than the input.
pub fn minimize_esop(e: &EsopExpr) -> EsopExpr {
    let mut cubes = e.cubes.clone();
    loop {
        cancel_duplicates(&mut cubes);
        if !merge_one_pair(&mut cubes) {
            break;
        }
    }
    EsopExpr { n: e.n, cubes }
}

fn cancel_duplicates(cubes: &mut Vec<Cube>) {
    let mut kept: Vec<Cube> = Vec::with_capacity(cubes.len());
    for c in cubes.drain(..) {
        match kept.iter().position(|k| *k == c) {
            Some(pos) => {
                kept.remove(pos);
            }
            None => kept.push(c),
        }
    }
    *cubes = kept;
}

fn merge_one_pair(cubes: &mut Vec<Cube>) -> bool {
    for i in 0..cubes.len() {
        for j in i + 1..cubes.len() {
            if cubes[i].distance(&cubes[j]) != 1 {
                continue;
            }
            let pos = cubes[i]
                .literals
                .iter()
                .zip(&cubes[j].literals)
                .position(|(a, b)| a != b)
                .expect("distance one");
            let merged = cubes[i].literals[pos]
                .xor(cubes[j].literals[pos])
                .expect("distinct literals XOR to a literal");
            cubes[i].literals[pos] = merged;
            cubes.remove(j);
            return true;
        }
    }
    false
}

/// `F(q) = ⋀_{(u,v)} (q_u ∨ q_v)`: 1 iff `q` is a vertex cover.
pub fn mvc_constraint_fn(g: &Graph) -> Result<BoolFn> {
    BoolFn::from_fn(g.n(), |x| g.is_vertex_cover(x))
}

/// `G(q) = ⋀_{(u,v)} (q̄_u ∨ q̄_v)`: 1 iff `q` is an independent set.
pub fn mis_constraint_fn(g: &Graph) -> Result<BoolFn> {
    BoolFn::from_fn(g.n(), |x| g.is_independent_set(x))
}

pub fn constraint_fn(problem: Problem, g: &Graph) -> Result<BoolFn> {
    match problem {
        Problem::Mvc => mvc_constraint_fn(g),
        Problem::Mis => mis_constraint_fn(g),
    }
}

/// Expansion order for graph constraints: variables by descending number of
/// clauses they occur in (the vertex degree), ties to the lower index.
pub fn clause_frequency_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    order
}

/// Shannon expansion followed by minimisation, with the clause-frequency
/// variable order.
pub fn compile_constraint(problem: Problem, g: &Graph) -> Result<EsopExpr> {
    let f = constraint_fn(problem, g)?;
    let raw = shannon_esop(&f, &clause_frequency_order(g))?;
    Ok(minimize_esop(&raw))
}
