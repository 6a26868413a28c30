//! Exact minimax optimum of a tiny instance, compared with the thrifty plan.

use thrifty::fixtures::tiny_batch;
use thrifty::oracle::{exhaustive_robcov, minimax_opt, SizeLimits};
use thrifty::rational::format_rational;
use thrifty::{ProblemKind, SolveOptions};

fn main() -> thrifty::Result<()> {
    let limits = SizeLimits::default();
    for kind in ProblemKind::ALL {
        let instance = tiny_batch(kind, 1, 11)?.remove(0);
        let opt = minimax_opt(&instance, &limits)?;
        let solution = instance.solve(&SolveOptions::default())?;
        let exact = exhaustive_robcov(&instance, &solution.plan, &limits)?;
        println!(
            "{kind}: opt {} (buys on days {:?}, {} trace nodes), thrifty {} closed form, {} exact",
            format_rational(&opt.value),
            opt.trace.purchase_days(),
            opt.trace.node_count(),
            format_rational(&solution.report.robcov),
            format_rational(&exact)
        );
    }
    Ok(())
}
