#![allow(dead_code)]

use blendcut::Graph;
use proptest::prelude::*;

/// Connected weighted graph: a weighted cycle plus random chords.
pub fn weighted_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| {
            let ring = prop::collection::vec(0.1f64..5.0, n);
            let chords = prop::collection::vec((0..n, 0..n, 0.1f64..5.0), 0..2 * n);
            (Just(n), ring, chords)
        })
        .prop_map(|(n, ring, chords)| {
            let mut edges: Vec<(usize, usize, f64)> =
                ring.into_iter().enumerate().map(|(i, w)| (i, (i + 1) % n, w)).collect();
            edges.extend(chords.into_iter().filter(|(i, j, _)| i != j));
            Graph::from_edges(n, &edges).expect("valid random graph")
        })
}

/// A graph together with a vector of matching length.
pub fn graph_and_vector(min_n: usize, max_n: usize) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    weighted_graph(min_n, max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(-10.0f64..10.0, n))
    })
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
