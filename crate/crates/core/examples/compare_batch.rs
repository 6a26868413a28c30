//! Approximation ratios over seeded batches of tiny instances.

use thrifty::cli::compare;
use thrifty::fixtures::tiny_batch;
use thrifty::oracle::SizeLimits;
use thrifty::{ProblemKind, SolveOptions};

fn main() -> thrifty::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20);
    for kind in ProblemKind::ALL {
        let mut worst = String::from("n/a");
        let mut worst_f = 0.0;
        for instance in tiny_batch(kind, n, 1)? {
            let report = compare(&instance, &SolveOptions::default(), &SizeLimits::default())
                .map_err(|f| thrifty::Error::InvalidInstance(f.message))?;
            if let Ok(r) = thrifty::rational::parse_rational(&report.ratio) {
                let f = thrifty::rational::to_f64(&r);
                if f > worst_f {
                    worst_f = f;
                    worst = report.ratio.clone();
                }
            }
        }
        println!("{kind}: worst ratio over {n} instances {worst}");
    }
    Ok(())
}
