// Optimises one random instance with both methods from the same starts.

use cvqa::graphs::bitstring;
use cvqa::{brute_force, generate_erdos_renyi, AnsatzKind, Problem, VqaTask};

pub fn run_example() -> cvqa::Result<()> {
    let g = generate_erdos_renyi(5, 0.5, 17)?;
    let reference = brute_force(Problem::Mvc, &g)?;
    let optimal: Vec<String> = reference.optimal_set.iter().map(|&x| bitstring(x, g.n())).collect();
    println!("graph {} min cover {} {optimal:?}", g.to_json(), reference.optimal_value);

    let seeds = [1, 2, 3];
    for (kind, depth, lambda) in [(AnsatzKind::Feasibility, 2, None), (AnsatzKind::Penalty, 3, Some(2.0))] {
        let task = VqaTask::for_instance(Problem::Mvc, &g, kind, depth, lambda)?;
        for r in task.multistart(&seeds, 3000)? {
            println!(
                "{kind:<11} depth {depth} seed {} accuracy {:.4} loss {:.4} evals {}",
                r.seed.unwrap_or_default(),
                r.accuracy,
                r.loss,
                r.evals
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cvqa::Result<()> {
    run_example()
}
