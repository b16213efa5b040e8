//! A-posteriori error bounds for approximate eigenvectors, compared with the
//! true distances from a dense eigendecomposition.
//!
//! The Fiedler eigenvalue of a ring of cliques is double, so a single-vector
//! bound says nothing there; the bound for the whole signal band does.

use blendcut::roc::{build_graph, noise_basis_vector, signal_vector, Branch, Phase, RocParams};
use blendcut::spectra::{
    blend_error_bound, blend_gap, dense_spectrum_oracle, single_vector_error_bound, ApproxEigenpair,
    NormalizedAdjacency,
};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn main() -> blendcut::Result<()> {
    let p = RocParams::new(8, 10)?;
    let g = build_graph(p);
    let op = NormalizedAdjacency(&g);
    let oracle = dense_spectrum_oracle(&g)?;
    let vecs = oracle.eigenvectors.as_ref().expect("oracle returns vectors");
    let noise = noise_basis_vector(p, 3, 1, 2)?;

    // after deflation the signal band is lambda_1..lambda_{q-1} and the top
    // eigenvalue 1 no longer crowds mu
    let deflated = oracle.deflated();
    println!("signal band of A^ - kk^t, Fiedler vector plus t * noise");
    let v2 = signal_vector(p, 1, Branch::One, Phase::Cos)?;
    for t in [1e-4, 1e-2, 1e-1, 0.5] {
        let x: Vec<f64> = v2.iter().zip(&noise).map(|(a, b)| a + t * b).collect();
        let pair = ApproxEigenpair::new(&op, &x)?;
        let gap = blend_gap(&deflated, 1, p.q() - 1, pair.mu)?;
        let bound = blend_error_bound(pair.residual_norm, gap.value)?;
        let captured: f64 = vecs[1..p.q()].iter().map(|v| dot(v, &pair.x).powi(2)).sum();
        println!(
            "  t = {t:<7} eps = {:.3e}  distance {:.3e} <= {:.3e}{}",
            pair.residual_norm,
            (1.0 - captured).max(0.0).sqrt(),
            bound.value,
            if bound.hypothesis_holds { "" } else { "  (hypothesis fails)" }
        );
    }

    // the gap below the Perron eigenvalue is lambda_2(L), about 1e-3 here
    println!("simple top eigenvalue, Perron vector plus t * noise");
    let delta1 = oracle.lambda(1) - oracle.lambda(2);
    for t in [1e-4, 1e-2, 1e-1] {
        let x: Vec<f64> = g.perron_vector().iter().zip(&noise).map(|(a, b)| a + t * b).collect();
        let pair = ApproxEigenpair::new(&op, &x)?;
        let bound = single_vector_error_bound(pair.residual_norm, delta1)?;
        let c = dot(&vecs[0], &pair.x).abs();
        println!(
            "  t = {t:<7} eps = {:.3e}  distance {:.3e} <= {:.3e}",
            pair.residual_norm,
            (2.0 - 2.0 * c).max(0.0).sqrt(),
            bound
        );
    }
    Ok(())
}
