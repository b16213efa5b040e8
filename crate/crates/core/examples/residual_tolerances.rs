//! Residual tolerances that guarantee a clique-preserving sweep, from the
//! ring-of-cliques formula and from the general recipe.

use blendcut::partition::robustness;
use blendcut::roc::{build_graph, closed_form_spectrum, roc_residual_tolerance, signal_vector, worst_blend_bound, Branch, Phase, RocParams};
use blendcut::spectra::general_residual_tolerance;

fn main() -> blendcut::Result<()> {
    println!("{:>5} {:>5} {:>12} {:>12} {:>12}", "b", "q", "C/(q sqrt n)", "gap", "general");
    for (b, q) in [(10, 10), (20, 30), (50, 100), (100, 64)] {
        let p = RocParams::new(b, q)?;
        let g = build_graph(p);
        let spec = closed_form_spectrum(p);
        let gap = spec.lambda_q() - spec.lambda_q_plus_1();
        // robustness sampled on the Fiedler direction only, so an upper estimate
        let v2 = signal_vector(p, 1, Branch::One, Phase::Cos)?;
        let scaled: Vec<f64> = v2.iter().zip(g.inv_sqrt_degrees()).map(|(a, s)| a * s).collect();
        let rob = robustness(&g, &scaled, worst_blend_bound(p))?;
        let general = if rob.hypothesis_holds {
            format!("{:.4e}", general_residual_tolerance(&g, gap, rob.value)?)
        } else {
            "n/a".into()
        };
        println!(
            "{b:>5} {q:>5} {:>12.4e} {gap:>12.4e} {general:>12}",
            roc_residual_tolerance(p, 1.0)?
        );
    }
    Ok(())
}
