//! Cost-spread and horizon reduction ahead of a graph solver.

use thrifty::graph::{preprocess_appendix_a, PreprocessKind, WeightedGraph};
use thrifty::rational::{format_rational, int};
use thrifty::steiner::solve_tree;
use thrifty::{Schedule, SolveOptions};

fn main() -> thrifty::Result<()> {
    let g = WeightedGraph::new(
        5,
        vec![
            (0, 1, int(1)),
            (1, 2, int(1000)),
            (2, 3, int(2)),
            (3, 4, int(100_000)),
            (0, 4, int(7)),
        ],
    )?;
    let lambdas = [1, 2, 3, 9, 10, 100, 1_000_000];
    let schedule = Schedule::new(
        vec![5, 5, 4, 4, 3, 2, 2],
        lambdas.iter().map(|&l| int(l)).collect(),
    );

    for f in 0..g.edges().len() {
        let p = preprocess_appendix_a(&g, &schedule, PreprocessKind::SteinerTree, f)?;
        println!(
            "f = edge {f}: removed {:?}, prepaid {:?}, spread {}, days kept {:?}",
            p.removed,
            p.prepaid.to_vec(),
            p.cost_spread
                .as_ref()
                .map(format_rational)
                .unwrap_or_else(|| "-".into()),
            p.stages.kept
        );
    }

    let plain = solve_tree(&g, &schedule, &SolveOptions::default())?;
    let reduced = solve_tree(
        &g,
        &schedule,
        &SolveOptions {
            preprocess: true,
            ..SolveOptions::default()
        },
    )?;
    println!(
        "robcov without {} / with preprocessing {} (f = {:?})",
        format_rational(&plain.report.robcov),
        format_rational(&reduced.report.robcov),
        reduced.plan.f_guess
    );
    Ok(())
}
