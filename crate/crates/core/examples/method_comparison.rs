// Feasibility method at depth 2 against the penalty method at depth 3 with
// its best penalty factor. Writes the result files under the system temp directory.

use cvqa::ansatz::AnsatzKind;
use cvqa::experiment::{emit_results, run_method_comparison, ExperimentConfig};

pub fn run_example() -> cvqa::Result<()> {
    let cfg = ExperimentConfig {
        sizes: vec![3, 4],
        instances_per_size: 3,
        starts_per_instance: 3,
        budget: 1500,
        master_seed: 8,
        ..Default::default()
    };
    let results = run_method_comparison(&cfg)?;
    for m in &results.stats.comparison {
        let lambda = m.lambda.map_or(String::new(), |l| format!(" lambda={l:.2}"));
        println!(
            "n={} {:<11} depth={}{lambda} mean={:.4} std={:.4} best_start={:.4}",
            m.size, m.method, m.depth, m.mean, m.std, m.best_start
        );
    }
    for kind in [AnsatzKind::Feasibility, AnsatzKind::Penalty] {
        println!("median best-start ({kind}): {:?}", results.stats.median_best_start(kind));
    }
    let dir = std::env::temp_dir().join("comparison-results");
    for path in emit_results(&results, &dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cvqa::Result<()> {
    run_example()
}
