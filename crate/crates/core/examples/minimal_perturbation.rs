//! How far can a clean signal blend be pushed before some threshold stops
//! separating the cliques? Compares the lower bound, the explicit breaking
//! perturbation and a bisection search.

use blendcut::partition::{recovers_all_cliques, Corners};
use blendcut::perturb::{perturbation_report, random_signal_blend, ScalingMode, DEFAULT_BUDGET};

fn main() -> blendcut::Result<()> {
    println!("{:>6} {:>4} {:>4} {:>12} {:>12} {:>12}", "n", "b", "q", "lower", "constructed", "searched");
    for mode in [ScalingMode::FixedQ, ScalingMode::FixedB, ScalingMode::Sqrt] {
        for n in [625, 2500] {
            let p = mode.params(n)?;
            let mut worst = None::<blendcut::perturb::PerturbationReport>;
            for seed in 0..10 {
                let x = random_signal_blend(p, seed);
                assert!(recovers_all_cliques(p, &x, Corners::Include)?);
                let r = perturbation_report(p, seed, &x, DEFAULT_BUDGET)?;
                if worst.as_ref().is_none_or(|w| r.empirical_min_norm < w.empirical_min_norm) {
                    worst = Some(r);
                }
            }
            let r = worst.expect("ten samples");
            println!(
                "{:>6} {:>4} {:>4} {:>12.4e} {:>12.4e} {:>12.4e}",
                r.n, r.b, r.q, r.lower_bound, r.constructed_norm, r.empirical_min_norm
            );
        }
    }
    Ok(())
}
