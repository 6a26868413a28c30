//! The two known hard families: every day matters, and subset uncertainty
//! defeats any two-day strategy.

use thrifty::fixtures::{gen_lowerbound_allstages, gen_subset_krobust_bad, subset_bad_restricted_opt};
use thrifty::oracle::{evaluate_strategy, minimax_opt, SizeLimits};
use thrifty::rational::{format_rational, frac};

fn main() -> thrifty::Result<()> {
    // (1 + ε)^T has to stay below 2.
    for (t, eps) in [(1, frac(2, 5)), (2, frac(2, 5)), (3, frac(1, 5))] {
        let instance = gen_lowerbound_allstages(t, &eps)?;
        let opt = minimax_opt(&instance, &SizeLimits::default())?;
        println!(
            "all-stages T={t}: opt {} buying on days {:?}",
            format_rational(&opt.value),
            opt.trace.purchase_days()
        );
    }

    let lambda = 4;
    let (instance, scripted) = gen_subset_krobust_bad(2, lambda)?;
    let limits = SizeLimits {
        max_units: 128,
        max_actions: 128,
        max_horizon: 2,
    };
    let value = evaluate_strategy(&instance, &scripted, &limits)?;
    println!(
        "subset family, lambda {lambda}: buy-as-revealed costs {}",
        format_rational(&value)
    );
    let sizes: Vec<usize> = match &instance.uncertainty {
        thrifty::UncertaintySpec::SubsetKRobust { parts } => parts.iter().map(Vec::len).collect(),
        _ => unreachable!(),
    };
    for days in [vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
        let best = subset_bad_restricted_opt(lambda, &sizes, &days).expect("count solver");
        println!(
            "  buying only on {days:?}: best worst case {}",
            format_rational(&best)
        );
    }
    Ok(())
}
