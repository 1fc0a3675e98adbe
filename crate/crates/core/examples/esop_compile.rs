// Shannon expansion and minimisation of a small Boolean function, then of
// a graph constraint.

use cvqa::esop::{compile_constraint, minimize_esop, shannon_esop, BoolFn};
use cvqa::{Graph, Problem};

pub fn run_example() -> cvqa::Result<()> {
    // f = (x1 ∨ x2) ∧ (x2 ∨ x3)
    let f = BoolFn::from_fn(3, |x| (x & 0b011 != 0) && (x & 0b110 != 0))?;
    let e = shannon_esop(&f, &[0, 1, 2])?;
    println!("(x1 or x2) and (x2 or x3):\n{e}");
    assert_eq!(e.to_truth_table(), f);

    let g = Graph::new(4, [(0, 1), (0, 2), (0, 3), (2, 3)])?;
    for problem in [Problem::Mvc, Problem::Mis] {
        let e = compile_constraint(problem, &g)?;
        assert_eq!(minimize_esop(&e), e);
        println!("{problem} constraint on {}:\n{e}", g.to_json());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cvqa::Result<()> {
    run_example()
}
