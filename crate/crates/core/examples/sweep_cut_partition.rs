//! Partition an arbitrary weighted graph: run the solver to a residual
//! tolerance, sweep the degree-scaled iterate and report the best cut.
//!
//! cargo run --example sweep_cut_partition -- [edge-list path]

use blendcut::graph::VolumeConvention;
use blendcut::io::load_graph;
use blendcut::partition::sweep_profile_with;
use blendcut::solver::{power_method, random_start, SolverConfig};
use blendcut::Graph;

fn barbell() -> Graph {
    // two 6-cliques joined by a light path
    let mut edges = Vec::new();
    for base in [0usize, 8] {
        for i in 0..6 {
            for j in i + 1..6 {
                edges.push((base + i, base + j, 1.0));
            }
        }
    }
    edges.extend([(5, 6, 0.2), (6, 7, 0.2), (7, 8, 0.2)]);
    Graph::from_edges(14, &edges).expect("valid barbell")
}

fn main() -> blendcut::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => load_graph(path)?,
        None => barbell(),
    };
    let cfg = SolverConfig {
        max_iterations: 5000,
        residual_tolerance: 1e-8,
        record_trace: false,
        ..SolverConfig::default()
    };
    let trace = power_method(&g, &random_start(g.n(), 1), &cfg, None)?;
    println!(
        "n = {}, iterations = {}, converged = {}, residual = {:.3e}",
        g.n(),
        trace.iterations,
        trace.converged,
        trace.last().epsilon
    );
    for conv in [VolumeConvention::OrderedPairs, VolumeConvention::DegreeSum] {
        let prof = sweep_profile_with(&g, &trace.final_iterate, true, conv)?;
        let best = prof.best();
        let side = prof.best_set();
        println!(
            "{conv:?}: phi = {:.4e}, cut = {:.3}, |S| = {}, S = {:?}",
            best.conductance,
            best.cut,
            side.len(),
            side.indices().collect::<Vec<_>>()
        );
    }
    Ok(())
}
