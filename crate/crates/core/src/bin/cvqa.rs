use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use cvqa::esop::{clause_frequency_order, compile_constraint, constraint_fn, minimize_esop, shannon_esop};
use cvqa::experiment::{emit_results, load_results, run_experiment, summarize, ExperimentConfig};
use cvqa::graphs::bitstring;
use cvqa::hamiltonians::{constraint, objective, penalty_hamiltonian};
use cvqa::simulator::{dump_circuit, resource_estimate};
use cvqa::{brute_force, generate_erdos_renyi, AnsatzKind, Error, Graph, Problem, Result, VqaTask};

#[derive(Parser)]
#[command(name = "cvqa", version, about = "Variational optimisation of vertex cover and independent set")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an Erdős–Rényi graph with at least one edge.
    GenGraph {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, default_value_t = 0.5)]
        p: f64,
        #[arg(short, long, default_value_t = 0)]
        seed: u64,
        /// Write the graph here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compile a constraint to a minimised ESOP.
    Esop {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, default_value = "mvc")]
        problem: Problem,
        /// Comma-separated variable order; defaults to descending degree.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        /// Also print multi-controlled gate counts.
        #[arg(long)]
        resources: bool,
    },
    /// Enumerate all assignments and report the optimum.
    BruteForce {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, default_value = "mvc")]
        problem: Problem,
    },
    /// Optimise one instance with one method.
    Solve {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, default_value = "mvc")]
        problem: Problem,
        #[arg(long, default_value = "feasibility")]
        method: AnsatzKind,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 6)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = cvqa::vqa::DEFAULT_BUDGET)]
        budget: usize,
        /// Write the best run's gate list to this file.
        #[arg(long)]
        dump_circuit: Option<PathBuf>,
        /// Write the loss Hamiltonian(s) as JSON to this file.
        #[arg(long)]
        dump_hamiltonian: Option<PathBuf>,
        /// Report accuracy conditioned on the ancilla reading 1.
        #[arg(long)]
        postselect: bool,
    },
    /// Run a benchmark sweep described by a TOML or JSON config.
    Experiment {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short, long, default_value = "results")]
        out: PathBuf,
    },
    /// Recompute the summary statistics of a results.json file.
    Stats {
        results: PathBuf,
    },
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    Graph::from_json(&text)
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GenGraph { n, p, seed, out } => {
            let g = generate_erdos_renyi(n, p, seed)?;
            match out {
                Some(path) => fs::write(path, g.to_json() + "\n")?,
                None => println!("{}", g.to_json()),
            }
        }
        Command::Esop {
            graph,
            problem,
            order,
            resources,
        } => {
            let g = read_graph(&graph)?;
            let e = match order {
                Some(order) => minimize_esop(&shannon_esop(&constraint_fn(problem, &g)?, &order)?),
                None => compile_constraint(problem, &g)?,
            };
            print!("{e}");
            if resources {
                let r = resource_estimate(&e);
                eprintln!(
                    "order={:?} mcx={} max_controls={} cnot_bound={} ancilla_needed={}",
                    clause_frequency_order(&g),
                    r.mcx_count,
                    r.max_controls,
                    r.cnot_bound,
                    r.ancilla_needed
                );
            }
        }
        Command::BruteForce { graph, problem } => {
            let g = read_graph(&graph)?;
            let r = brute_force(problem, &g)?;
            let n = g.n();
            print_json(&json!({
                "problem": problem,
                "optimal_value": r.optimal_value,
                "optimal_set": r.optimal_set.iter().map(|&x| bitstring(x, n)).collect::<Vec<_>>(),
                "feasible_count": r.feasible_set.len(),
            }))?;
        }
        Command::Solve {
            graph,
            problem,
            method,
            depth,
            lambda,
            starts,
            seed,
            budget,
            dump_circuit: circuit_path,
            dump_hamiltonian,
            postselect,
        } => {
            if starts == 0 {
                return Err(Error::Config("--starts must be at least 1".into()));
            }
            let g = read_graph(&graph)?;
            let task = VqaTask::for_instance(problem, &g, method, depth, lambda)?.with_postselect(postselect);
            let seeds: Vec<u64> = (0..starts as u64).map(|j| seed.wrapping_add(j)).collect();
            let runs = task.multistart(&seeds, budget)?;
            let best = runs
                .iter()
                .max_by(|a, b| a.accuracy.total_cmp(&b.accuracy))
                .expect("at least one start");
            if let Some(path) = circuit_path {
                fs::write(path, dump_circuit(&task.ansatz().circuit(&best.theta)?))?;
            }
            if let Some(path) = dump_hamiltonian {
                let (o, s) = (objective(problem, &g), constraint(problem, &g));
                let doc = match method {
                    AnsatzKind::Feasibility => format!(r#"{{"objective":{},"constraint":{}}}"#, o.to_json(), s.to_json()),
                    AnsatzKind::Penalty => penalty_hamiltonian(&o, &s, lambda.unwrap_or_default())?.to_json(),
                };
                fs::write(path, doc + "\n")?;
            }
            print_json(&json!({
                "problem": problem,
                "method": method,
                "depth": depth,
                "lambda": lambda,
                "param_count": task.ansatz().param_count(),
                "best_accuracy": best.accuracy,
                "runs": runs,
            }))?;
        }
        Command::Experiment { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let results = run_experiment(&cfg)?;
            for path in emit_results(&results, &out)? {
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Stats { results } => {
            let r = load_results(&results)?;
            print_json(&summarize(&r.config, &r.records)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_configuration() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
