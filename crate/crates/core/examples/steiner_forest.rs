//! Forest net construction and the thrifty Steiner forest solver.

use thrifty::graph::WeightedGraph;
use thrifty::rational::{format_rational, int};
use thrifty::steiner::{sfnet_build, solve_forest};
use thrifty::{Schedule, SolveOptions};

fn main() -> thrifty::Result<()> {
    let g = WeightedGraph::new(
        6,
        vec![
            (0, 1, int(4)),
            (1, 2, int(4)),
            (2, 3, int(4)),
            (3, 4, int(1)),
            (4, 5, int(9)),
        ],
    )?
    .with_pairs(vec![(0, 2), (1, 3), (3, 5), (0, 5)])?;

    let net = sfnet_build(&g, &g.pairs, &int(2))?;
    println!(
        "gamma 2: net {:?}, good {:?}, far {:?}",
        net.net, net.sg, net.sf_links
    );
    println!(
        "E_alg {:?} cost {}",
        net.e_alg.to_vec(),
        format_rational(&net.e_alg.cost)
    );
    match net.check(&g, &g.pairs) {
        Ok(()) => println!("net properties hold"),
        Err(e) => println!("net check failed: {e}"),
    }

    let schedule = Schedule::new(vec![4, 2, 1], vec![int(1), int(3), int(5)]);
    let solution = solve_forest(&g, &schedule, &SolveOptions::default())?;
    println!(
        "robcov {}, conservative {}",
        format_rational(&solution.report.robcov),
        solution.report.conservative
    );
    Ok(())
}
