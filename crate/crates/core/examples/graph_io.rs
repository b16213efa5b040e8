//! Write a ring of cliques as an edge list and as Matrix Market, read both
//! back and compare.

use blendcut::io::{load_edge_list, load_matrix_market, save_edge_list, save_matrix_market};
use blendcut::roc::{build_graph, RocParams};

fn main() -> blendcut::Result<()> {
    let g = build_graph(RocParams::new(6, 4)?);
    let dir = std::env::temp_dir().join("blendcut-graph-io");
    std::fs::create_dir_all(&dir)?;
    let edges = dir.join("ring.edges");
    let mtx = dir.join("ring.mtx");
    save_edge_list(&g, &edges)?;
    save_matrix_market(&g, &mtx)?;

    for (name, h) in [("edge list", load_edge_list(&edges)?), ("matrix market", load_matrix_market(&mtx)?)] {
        let same = h.n() == g.n() && h.edges().eq(g.edges());
        println!("{name:>13}: n = {}, m = {}, identical = {same}", h.n(), h.edge_count());
    }
    println!("files in {}", dir.display());
    Ok(())
}
