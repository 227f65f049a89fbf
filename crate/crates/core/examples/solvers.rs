//! The greedy solvers next to the brute-force oracle.
//!
//! cargo run --example solvers

use ammab::model::ConstraintSpec;
use ammab::solver::{
    brute_force, count_assignments, sequential_trace, solve, solve_forced_support, SolveRequest,
};

fn main() {
    let values = vec![0.9, 0.6, 0.3, 0.05];
    let (players, p) = (8, 0.1);

    let free = SolveRequest::unconstrained(values.clone(), players, p);
    let (greedy, gains) = sequential_trace(&free).unwrap();
    println!("sequential greedy: {greedy}");
    println!("gains in placement order: {:.4?}", gains);

    let forced = SolveRequest::new(values.clone(), players, p, ConstraintSpec::forced([2, 3]));
    println!(
        "at least one player on arms 2 and 3: {}",
        solve_forced_support(&forced).unwrap()
    );

    for nu in 0..values.len() {
        let req = SolveRequest::new(values.clone(), players, p, ConstraintSpec::MaxZeroArms(nu));
        let fast = solve(&req).unwrap();
        let exact = brute_force(&req).unwrap();
        println!(
            "at most {nu} empty arms: greedy {fast} ({:.5}), brute force {exact} ({:.5})",
            req.value(&fast),
            req.value(&exact)
        );
    }

    println!(
        "brute force enumerates {} assignments here",
        count_assignments(values.len(), players, ammab::model::cap(p))
    );
}
