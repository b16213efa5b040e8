//! Closed-form spectrum of a ring of cliques, checked against a dense
//! eigensolver.
//!
//! cargo run --example ring_of_cliques_spectrum -- 20 30

use blendcut::roc::{build_graph, closed_form_spectrum, RocParams};
use blendcut::spectra::dense_spectrum_oracle;

fn main() -> blendcut::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (b, q) = match args[..] {
        [b, q] => (b, q),
        _ => (20, 30),
    };
    let p = RocParams::new(b, q)?;
    let spec = closed_form_spectrum(p);

    println!("R({b},{q}): n = {}, edges = {}", p.n(), p.edge_count());
    println!("lambda2(L)   = {:.6e}", spec.fiedler_laplacian());
    println!("eigengap     = {:.6e}", spec.eigengap());
    println!("lambda_q     = {:.8}", spec.lambda_q());
    println!("lambda_q+1   = {:.8}", spec.lambda_q_plus_1());
    println!();
    println!("{:>6} {:>4} {:>7} {:>16} {:>5}", "kind", "k", "branch", "eigenvalue", "mult");
    for row in spec.rows().iter().take(8) {
        println!(
            "{:>6} {:>4} {:>7} {:>16.12} {:>5}",
            row.kind,
            row.k.map_or("-".into(), |k| k.to_string()),
            row.branch.map_or("-".into(), |b| b.to_string()),
            row.eigenvalue,
            row.multiplicity
        );
    }

    if p.n() <= 1024 {
        let oracle = dense_spectrum_oracle(&build_graph(p))?;
        let worst = oracle
            .eigenvalues
            .iter()
            .zip(spec.eigenvalues())
            .map(|(a, c)| (a - c).abs())
            .fold(0.0, f64::max);
        println!("\nmax |closed form - dense| = {worst:.2e}");
    }
    Ok(())
}
