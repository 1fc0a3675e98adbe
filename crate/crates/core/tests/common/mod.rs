#![allow(dead_code)]

use cvqa::Graph;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Graphs on `lo..=hi` vertices with at least one edge.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_filter_map("needs an edge", |(n, mask)| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e).collect();
            (!edges.is_empty()).then(|| Graph::new(n, edges).unwrap())
        })
}

/// Normalised amplitudes with components drawn from `[-1, 1)`.
pub fn random_amplitudes(num_qubits: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps: Vec<Complex64> = (0..1usize << num_qubits)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.into_iter().map(|a| a / norm).collect()
}

/// Minimum vertex cover size by trying subsets in order of size.
pub fn min_cover_size(g: &Graph) -> usize {
    (0..=g.n())
        .find(|&k| {
            (0..1usize << g.n())
                .filter(|x| x.count_ones() as usize == k)
                .any(|x| g.edges().iter().all(|&(u, v)| (x >> u) & 1 == 1 || (x >> v) & 1 == 1))
        })
        .unwrap()
}
