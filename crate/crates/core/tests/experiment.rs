use cvqa::ansatz::AnsatzKind;
use cvqa::experiment::{
    emit_results, load_results, method_statistics, penalty_factors, penalty_statistics, reevaluate, run_experiment,
    start_seed, summarize, ExperimentConfig, Protocol,
};
use proptest::prelude::*;

fn small_config() -> ExperimentConfig {
    ExperimentConfig {
        sizes: vec![3],
        instances_per_size: 2,
        starts_per_instance: 2,
        penalty_factors: 3,
        sweep_depths: vec![1, 2],
        our_depth: 1,
        penalty_depth: 2,
        budget: 300,
        master_seed: 99,
        protocol: Protocol::Full,
        ..Default::default()
    }
}

proptest! {
    #[test]
    fn penalty_statistics_match_direct_sums(
        grid in proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, 6), 10), 5)
    ) {
        let (mu_p, mu, sigma) = penalty_statistics(&grid);
        for (p, m) in mu_p.iter().enumerate() {
            let direct: f64 = grid[p].iter().flatten().sum::<f64>() / 60.0;
            prop_assert!((m - direct).abs() < 1e-12);
        }
        let all: f64 = grid.iter().flatten().flatten().sum::<f64>() / 300.0;
        prop_assert!((mu - all).abs() < 1e-12);
        let var: f64 = mu_p.iter().map(|m| (m - mu) * (m - mu)).sum::<f64>() / 5.0;
        prop_assert!((sigma - var).abs() < 1e-12);
        prop_assert!(sigma >= 0.0);
    }

    #[test]
    fn method_statistics_bounds(grid in proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, 6), 10)) {
        let (per_start, mean, std, best, per_instance) = method_statistics(&grid);
        prop_assert_eq!(per_start.len(), 6);
        prop_assert_eq!(per_instance.len(), 10);
        prop_assert!(best >= mean - 1e-15 && std >= 0.0);
        for (row, b) in grid.iter().zip(&per_instance) {
            prop_assert!(row.iter().all(|a| a <= b));
        }
    }

    #[test]
    fn seed_fan_out_is_pure(master in any::<u64>(), n in 3usize..10, i in 0usize..10, j in 0usize..6) {
        let cfg = ExperimentConfig { master_seed: master, ..Default::default() };
        prop_assert_eq!(start_seed(&cfg, n, i, j), start_seed(&cfg.clone(), n, i, j));
        prop_assert_eq!(penalty_factors(&cfg, n), penalty_factors(&cfg, n));
    }
}

#[test]
fn full_protocol_records_every_cell() {
    let cfg = small_config();
    let results = run_experiment(&cfg).unwrap();
    // Feasibility: 2 instances × 2 starts; penalty: 2 depths × 3 factors × 2 × 2.
    assert_eq!(results.records.len(), 4 + 24);
    assert!(results.records.iter().all(|r| (0.0..=1.0 + 1e-12).contains(&r.run.accuracy)));
    assert_eq!(results.stats.penalty_sweep.len(), 2);
    assert_eq!(results.stats.comparison.len(), 2);
    assert!(results.metadata.accuracy_definition.contains("ancilla"));
    assert_eq!(results.metadata.sizes[0].lambdas, penalty_factors(&cfg, 3));
    let penalty = results.stats.comparison.iter().find(|m| m.method == AnsatzKind::Penalty).unwrap();
    assert!(penalty.lambda.is_some());
    assert_eq!(summarize(&cfg, &results.records).unwrap(), results.stats);
}

#[test]
fn stored_theta_reproduces_accuracy() {
    let results = run_experiment(&small_config()).unwrap();
    for r in results.records.iter().step_by(5) {
        assert_eq!(reevaluate(&results, r).unwrap(), r.run.accuracy);
    }
}

#[test]
fn emitted_files_round_trip() {
    let results = run_experiment(&small_config()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    emit_results(&results, dir.path()).unwrap();
    let loaded = load_results(dir.path().join("results.json")).unwrap();
    assert_eq!(loaded, results);
    let csv = std::fs::read_to_string(dir.path().join("results.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "size,method,depth,lambda,instance,start,accuracy,loss,p1,evals"
    );
    assert_eq!(csv.lines().count(), results.records.len() + 1);
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert!(summary.lines().any(|l| l.contains(",sigma,")));
}

#[test]
fn sweep_only_protocol_skips_feasibility() {
    let cfg = ExperimentConfig { protocol: Protocol::PenaltySweep, ..small_config() };
    let results = run_experiment(&cfg).unwrap();
    assert!(results.records.iter().all(|r| r.method == AnsatzKind::Penalty));
    assert!(results.stats.comparison.is_empty());
}
