//! Ten iterations of the deflated power method on R(20,30), printed as a
//! convergence table, followed by the exact Fiedler row.
//!
//! cargo run --release --example power_method_table -- [seed]

use blendcut::roc::RocParams;
use blendcut::solver::{exact_row, kstar, run_table_experiment, zeta};

fn main() -> blendcut::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0u64);
    let p = RocParams::new(20, 30)?;
    let table = run_table_experiment(p, &[seed], 10)?;
    let (_, trace) = &table.runs[0];

    println!("{:>3} {:>12} {:>12} {:>12} {:>12} {:>12}  clean", "i", "epsilon", "pi_miss", "mu", "phi", "sqrt(2mu)");
    for r in &trace.records {
        println!(
            "{:>3} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e}  {}",
            r.i,
            r.epsilon,
            r.pi_miss.unwrap_or(f64::NAN),
            r.mu,
            r.sweep_phi,
            r.cheeger,
            if r.recovers_cliques == Some(true) { "yes" } else { "no" }
        );
    }
    let exact = exact_row(p)?;
    println!(
        "inf {:>12} {:>12} {:>12.5e} {:>12.5e} {:>12.5e}",
        0, 0, exact.lambda2, exact.phi, exact.cheeger
    );
    println!("\nk* = {}, failure probability <= {:.4e}", kstar(p)?, zeta(p));
    Ok(())
}
