//! Thrifty set cover on a small hand-made system.

use thrifty::rational::{format_rational, frac, int};
use thrifty::setcover::{SetSystem, WeightedSet};
use thrifty::{Schedule, SolveOptions};

fn set(members: &[usize], cost: i64) -> WeightedSet {
    WeightedSet {
        members: members.to_vec(),
        cost: int(cost),
    }
}

fn main() -> thrifty::Result<()> {
    let system = SetSystem::new(
        6,
        vec![
            set(&[0, 1, 2], 3),
            set(&[3, 4, 5], 3),
            set(&[0, 3], 1),
            set(&[1, 4], 1),
            set(&[2, 5], 1),
            set(&[5], 20),
        ],
    )?;
    let schedule = Schedule::new(vec![6, 3, 1], vec![int(1), frac(3, 2), int(4)]);
    let solution = system.solve(&schedule, &SolveOptions::default())?;
    let (plan, report) = (&solution.plan, &solution.report);
    println!("critical day j* = {}", plan.critical_day);
    println!(
        "guess {} tau {}",
        format_rational(&plan.guess),
        format_rational(&plan.tau)
    );
    println!("net {:?}, day-0 sets {:?}", plan.net, plan.day0_purchase);
    println!(
        "robcov {} (day 0 {}, worst scenario {:?})",
        format_rational(&report.robcov),
        format_rational(&report.day0_cost),
        report.witness
    );
    Ok(())
}
