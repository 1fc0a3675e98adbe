// Objective, constraint and penalty Hamiltonians for a path graph.

use cvqa::graphs::bitstring;
use cvqa::hamiltonians::{constraint, objective, penalty_hamiltonian};
use cvqa::{Graph, Problem};

pub fn run_example() -> cvqa::Result<()> {
    let g = Graph::path(4)?;
    let o = objective(Problem::Mvc, &g);
    let s = constraint(Problem::Mvc, &g);
    let c = penalty_hamiltonian(&o, &s, 2.0)?;
    println!("O = {}", o.to_json());
    println!("S = {}", s.to_json());
    println!("C = {}", c.to_json());
    println!("x     O  S  C");
    for x in 0..1usize << g.n() {
        println!("{} {:>2} {:>2} {:>4}", bitstring(x, g.n()), o.eval(x), s.eval(x), c.eval(x));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cvqa::Result<()> {
    run_example()
}
