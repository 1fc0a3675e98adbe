// Builds the validation oracle for a vertex-cover constraint, prints its
// gate list and cost, and checks it flags exactly the covers.

use cvqa::esop::compile_constraint;
use cvqa::simulator::{build_oracle_circuit, dump_circuit, resource_estimate};
use cvqa::{Graph, Problem, StateVector};

pub fn run_example() -> cvqa::Result<()> {
    let g = Graph::complete(4)?;
    let e = compile_constraint(Problem::Mvc, &g)?;
    let work: Vec<usize> = (0..g.n()).collect();
    let oracle = build_oracle_circuit(&e, &work, g.n())?;
    print!("{}", dump_circuit(&oracle));
    println!("{:?}", resource_estimate(&e));

    let mut flagged = 0;
    for x in 0..1usize << g.n() {
        let mut s = StateVector::basis(g.n() + 1, x)?;
        s.apply_all(&oracle)?;
        let (_, p1) = s.ancilla_branch_probs(g.n())?;
        assert_eq!(p1 == 1.0, g.is_vertex_cover(x));
        flagged += usize::from(p1 == 1.0);
    }
    println!("{flagged} of {} assignments flagged as covers", 1 << g.n());
    Ok(())
}

#[allow(dead_code)]
fn main() -> cvqa::Result<()> {
    run_example()
}
