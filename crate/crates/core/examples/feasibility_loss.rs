// Loss of each flagged basis state: covers score at or below zero, with the
// smallest covers lowest; non-covers score their uncovered-edge count.

use cvqa::graphs::bitstring;
use cvqa::vqa::{loss_feasibility, LossSpec};
use cvqa::{Graph, Problem, StateVector};

pub fn run_example() -> cvqa::Result<()> {
    let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])?;
    let spec = LossSpec::feasibility(Problem::Mvc, &g)?;
    let mut rows = Vec::new();
    for x in 0..1usize << g.n() {
        let flag = usize::from(g.is_vertex_cover(x)) << g.n();
        let loss = loss_feasibility(&StateVector::basis(g.n() + 1, x | flag)?, &spec)?;
        rows.push((loss, x));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (loss, x) in rows {
        let tag = if g.is_vertex_cover(x) { "cover" } else { "" };
        println!("{} {loss:>5} {tag}", bitstring(x, g.n()));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cvqa::Result<()> {
    run_example()
}
