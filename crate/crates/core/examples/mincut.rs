//! Thrifty min cut: separate the surviving vertices from the root.

use thrifty::graph::WeightedGraph;
use thrifty::mincut;
use thrifty::rational::{format_rational, int};
use thrifty::{Schedule, SolveOptions};

fn main() -> thrifty::Result<()> {
    // Two spokes from the root: a cheap one and an expensive one.
    let g = WeightedGraph::new(3, vec![(0, 1, int(10)), (0, 2, int(1))])?.with_root(0)?;
    let schedule = Schedule::new(vec![2, 1], vec![int(1), int(5)]);

    let cuts = mincut::singleton_cuts(&g)?;
    for (v, c) in &cuts {
        println!("cut({v}) = {}", format_rational(c));
    }
    let (lb, ub) = mincut::opt_bounds(&g)?;
    println!("opt in [{}, {}]", format_rational(&lb), format_rational(&ub));

    let solution = mincut::solve(&g, &schedule, &SolveOptions::default())?;
    println!(
        "net {:?}, day-0 edges {:?}, robcov {}",
        solution.plan.net,
        solution.plan.day0_purchase,
        format_rational(&solution.report.robcov)
    );
    Ok(())
}
