macro_rules! example {
    ($test:ident, $file:literal) => {
        #[test]
        fn $test() {
            mod ex {
                include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
            }
            ex::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(esop_compile_runs, "esop_compile.rs");
example!(oracle_circuit_runs, "oracle_circuit.rs");
example!(hamiltonians_runs, "hamiltonians.rs");
example!(feasibility_loss_runs, "feasibility_loss.rs");
example!(solve_mvc_runs, "solve_mvc.rs");
example!(penalty_sweep_runs, "penalty_sweep.rs");
example!(method_comparison_runs, "method_comparison.rs");
