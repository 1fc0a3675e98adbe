// Mean accuracy of the penalty method for several penalty factors, and the
// spread across factors, at two circuit depths.

use cvqa::experiment::{run_penalty_sweep, ExperimentConfig};

pub fn run_example() -> cvqa::Result<()> {
    let cfg = ExperimentConfig {
        sizes: vec![3, 4],
        instances_per_size: 3,
        starts_per_instance: 2,
        budget: 1500,
        master_seed: 5,
        ..Default::default()
    };
    let results = run_penalty_sweep(&cfg)?;
    for s in &results.stats.penalty_sweep {
        let cells: Vec<String> = s.lambdas.iter().zip(&s.mu_p).map(|(l, m)| format!("{l:.2}:{m:.3}")).collect();
        println!("n={} depth={} mu={:.4} sigma={:.2e} [{}]", s.size, s.depth, s.mu, s.sigma, cells.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cvqa::Result<()> {
    run_example()
}
