//! Thrifty Steiner tree: ball-packing net on day 0, shortest paths later.

use thrifty::graph::WeightedGraph;
use thrifty::rational::{format_rational, int};
use thrifty::steiner::{ball_packing_net, solve_tree, tree_opt_bounds};
use thrifty::{Schedule, SolveOptions};

fn main() -> thrifty::Result<()> {
    // A path 0-1-2-3-4 with a far pendant 5 hanging off 2.
    let g = WeightedGraph::new(
        6,
        vec![
            (0, 1, int(1)),
            (1, 2, int(1)),
            (2, 3, int(1)),
            (3, 4, int(1)),
            (2, 5, int(30)),
        ],
    )?;
    for r in [1, 2, 5] {
        println!("packing at radius {r}: {:?}", ball_packing_net(&g, &int(r)));
    }
    let (lb, ub) = tree_opt_bounds(&g)?;
    println!("opt in [{}, {}]", format_rational(&lb), format_rational(&ub));

    let schedule = Schedule::new(vec![6, 4, 2], vec![int(1), int(2), int(3)]);
    let solution = solve_tree(&g, &schedule, &SolveOptions::default())?;
    println!(
        "j* {}, net {:?}, robcov {}",
        solution.plan.critical_day,
        solution.plan.net,
        format_rational(&solution.report.robcov)
    );
    Ok(())
}
