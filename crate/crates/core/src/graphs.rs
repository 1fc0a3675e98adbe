//! Problem instances: undirected simple graphs, Erdős–Rényi sampling and
//! exhaustive reference solvers for minimum vertex cover and maximum
//! independent set.
//!
//! Bit convention used throughout the crate: an assignment is a `usize`
//! whose bit `i` is 1 iff vertex `i` is selected. Selected vertices carry
//! spin `z_i = -1`, i.e. qubit basis state `|1>`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count the brute-force solvers and truth tables accept.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 24;

/// Attempts before giving up on drawing a graph with at least one edge.
const MAX_RESAMPLES: u64 = 10_000;

/// The two constrained problems this crate knows how to encode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    /// Minimum vertex cover.
    Mvc,
    /// Maximum independent set.
    Mis,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Mvc => "mvc",
            Problem::Mis => "mis",
        }
    }
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mvc" => Ok(Problem::Mvc),
            "mis" => Ok(Problem::Mis),
            other => Err(Error::config(format!("unknown problem `{other}` (expected mvc or mis)"))),
        }
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are stored canonically as `(u, v)` with `u < v`, sorted
/// lexicographically, so the JSON form is byte-stable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Builds a graph, normalising each pair to `u < v`.
    ///
    /// Rejects `n == 0`, self-loops, out-of-range endpoints and duplicate
    /// edges (in either orientation).
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be at least 1".into()));
        }
        let mut canon = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate edge {:?}", w[0])));
        }
        let mut degrees = vec![0; n];
        for &(u, v) in &canon {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        Ok(Graph { n, edges: canon, degrees })
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.degrees[vertex]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Number of edges with no selected endpoint.
    pub fn uncovered_edges(&self, assignment: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| !bit(assignment, u) && !bit(assignment, v))
            .count()
    }

    /// Number of edges with both endpoints selected.
    pub fn violated_independence(&self, assignment: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| bit(assignment, u) && bit(assignment, v))
            .count()
    }

    pub fn is_vertex_cover(&self, assignment: usize) -> bool {
        self.uncovered_edges(assignment) == 0
    }

    pub fn is_independent_set(&self, assignment: usize) -> bool {
        self.violated_independence(assignment) == 0
    }

    pub fn is_feasible(&self, problem: Problem, assignment: usize) -> bool {
        match problem {
            Problem::Mvc => self.is_vertex_cover(assignment),
            Problem::Mis => self.is_independent_set(assignment),
        }
    }

    /// Canonical JSON: `{"n":..,"edges":[[u,v],..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[inline]
pub(crate) fn bit(x: usize, i: usize) -> bool {
    (x >> i) & 1 == 1
}

/// Renders an assignment as a string whose character `i` is bit `i`.
pub fn bitstring(x: usize, n: usize) -> String {
    (0..n).map(|i| if bit(x, i) { '1' } else { '0' }).collect()
}

/// Inverse of [`bitstring`].
pub fn parse_bitstring(s: &str) -> Result<usize> {
    s.chars().enumerate().try_fold(0usize, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | (1 << i)),
        other => Err(Error::Parse(format!("invalid bit `{other}` in `{s}`"))),
    })
}

/// Samples G(n, p) with a seeded ChaCha8 stream, visiting pairs `(u, v)`,
/// `u < v`, in lexicographic order.
///
/// An edgeless draw is rejected and redrawn with `seed + 1`, `seed + 2`, ...
/// Configurations that can only produce edgeless graphs (`p == 0` or
/// `n < 2`) are configuration errors.
pub fn generate_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::config("vertex count must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::config(format!("edge probability {p} outside [0, 1]")));
    }
    if p == 0.0 || n < 2 {
        return Err(Error::config(format!(
            "G(n={n}, p={p}) never has an edge; edgeless instances are rejected"
        )));
    }
    for attempt in 0..MAX_RESAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::new(n, edges);
        }
    }
    Err(Error::config(format!(
        "no edge drawn for G(n={n}, p={p}) after {MAX_RESAMPLES} attempts"
    )))
}

/// Outcome of exhaustive enumeration. Assignment lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceResult {
    pub optimal_value: usize,
    pub optimal_set: Vec<usize>,
    pub feasible_set: Vec<usize>,
}

impl BruteForceResult {
    pub fn is_optimal(&self, assignment: usize) -> bool {
        self.optimal_set.binary_search(&assignment).is_ok()
    }
}

fn check_exhaustive(g: &Graph) -> Result<()> {
    if g.n() > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::SizeLimit {
            what: "vertex count",
            got: g.n(),
            max: MAX_EXHAUSTIVE_VERTICES,
        });
    }
    Ok(())
}

pub fn brute_force_mvc(g: &Graph) -> Result<BruteForceResult> {
    brute_force(Problem::Mvc, g)
}

pub fn brute_force_mis(g: &Graph) -> Result<BruteForceResult> {
    brute_force(Problem::Mis, g)
}

/// Enumerates all `2^n` assignments and keeps the feasible ones with the
/// best selected-vertex count (minimum for MVC, maximum for MIS).
pub fn brute_force(problem: Problem, g: &Graph) -> Result<BruteForceResult> {
    check_exhaustive(g)?;
    let feasible_set: Vec<usize> = (0..1usize << g.n())
        .filter(|&x| g.is_feasible(problem, x))
        .collect();
    let size = |x: &usize| x.count_ones() as usize;
    let optimal_value = match problem {
        Problem::Mvc => feasible_set.iter().map(size).min(),
        Problem::Mis => feasible_set.iter().map(size).max(),
    }
    .expect("the all-ones (MVC) and all-zeros (MIS) assignments are always feasible");
    let optimal_set = feasible_set
        .iter()
        .copied()
        .filter(|x| size(x) == optimal_value)
        .collect();
    Ok(BruteForceResult {
        optimal_value,
        optimal_set,
        feasible_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(strings: &[&str]) -> Vec<usize> {
        let mut v: Vec<usize> = strings.iter().map(|s| parse_bitstring(s).unwrap()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(Graph::new(0, []).is_err());
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn degrees_count_incident_edges() {
        let g = Graph::new(4, [(0, 1), (0, 2), (2, 1)]).unwrap();
        assert_eq!(g.degrees(), &[2, 2, 2, 0]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn canonical_json() {
        let g = Graph::new(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(g.to_json(), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn erdos_renyi_zero_probability_is_a_config_error() {
        let err = generate_erdos_renyi(3, 0.0, 7).unwrap_err();
        assert!(err.is_configuration());
        assert!(generate_erdos_renyi(1, 0.5, 7).is_err());
        assert!(generate_erdos_renyi(3, 1.5, 7).is_err());
    }

    #[test]
    fn erdos_renyi_complete_and_deterministic() {
        let g = generate_erdos_renyi(2, 1.0, 99).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        let a = generate_erdos_renyi(5, 0.5, 1234).unwrap();
        let b = generate_erdos_renyi(5, 0.5, 1234).unwrap();
        assert_eq!(a, b);
        assert!(a.num_edges() > 0);
    }

    #[test]
    fn erdos_renyi_resamples_edgeless_draws() {
        // With p tiny nearly every draw is edgeless; the loop must still end
        // on a graph with at least one edge.
        let g = generate_erdos_renyi(2, 0.05, 0).unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn bitstrings_are_vertex_indexed() {
        assert_eq!(bitstring(0b011, 3), "110");
        assert_eq!(parse_bitstring("110").unwrap(), 0b011);
        assert!(parse_bitstring("1x0").is_err());
    }

    #[test]
    fn mvc_small_cases() {
        let k3 = Graph::complete(3).unwrap();
        let r = brute_force_mvc(&k3).unwrap();
        assert_eq!(r.optimal_value, 2);
        assert_eq!(r.optimal_set, set(&["110", "101", "011"]));

        let edge = Graph::new(2, [(0, 1)]).unwrap();
        let r = brute_force_mvc(&edge).unwrap();
        assert_eq!(r.optimal_value, 1);
        assert_eq!(r.optimal_set, set(&["10", "01"]));

        let p3 = Graph::path(3).unwrap();
        let r = brute_force_mvc(&p3).unwrap();
        assert_eq!(r.optimal_value, 1);
        assert_eq!(r.optimal_set, set(&["010"]));
    }

    #[test]
    fn mis_small_cases() {
        let k3 = Graph::complete(3).unwrap();
        let r = brute_force_mis(&k3).unwrap();
        assert_eq!(r.optimal_value, 1);
        assert_eq!(r.optimal_set, set(&["100", "010", "001"]));

        let empty = Graph::new(3, []).unwrap();
        let r = brute_force_mis(&empty).unwrap();
        assert_eq!(r.optimal_value, 3);
        assert_eq!(r.optimal_set, set(&["111"]));

        let p3 = Graph::path(3).unwrap();
        let r = brute_force_mis(&p3).unwrap();
        assert_eq!(r.optimal_value, 2);
        assert_eq!(r.optimal_set, set(&["101"]));
    }

    #[test]
    fn brute_force_size_cap() {
        let g = Graph::new(25, [(0, 1)]).unwrap();
        assert!(matches!(brute_force_mvc(&g), Err(Error::SizeLimit { .. })));
    }
}
