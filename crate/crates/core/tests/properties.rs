mod common;

use blendcut::partition::{min_sweep_conductance, recovers_all_cliques, Corners};
use blendcut::perturb::{construct_breaking_perturbation, perturbation_lower_bound, random_signal_blend};
use blendcut::roc::{build_graph, RocParams};
use blendcut::spectra::{
    blend_error_bound, blend_gap, dense_spectrum_oracle, rayleigh_quotient, single_vector_error_bound,
    symmetric_eigen, ApproxEigenpair, DeflatedAdjacency, DenseSymmetric, NormalizedAdjacency, Operator,
};
use blendcut::Graph;
use common::{dot, graph_and_vector, norm, weighted_graph};
use proptest::prelude::*;

fn unit(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    v.iter().map(|x| x / n).collect()
}

fn dense_of<M: Operator>(op: &M) -> DenseSymmetric {
    let n = op.dim();
    let mut data = vec![0.0; n * n];
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = op.apply(&e).unwrap();
        for i in 0..n {
            data[i * n + j] = col[i];
        }
        e[j] = 0.0;
    }
    // symmetrize away rounding so the Jacobi input is exactly symmetric
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (data[i * n + j] + data[j * n + i]);
            data[i * n + j] = m;
            data[j * n + i] = m;
        }
    }
    DenseSymmetric::new(n, data).unwrap()
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize, f64)> = g.edges().map(|(i, j, w)| (perm[i], perm[j], w)).collect();
    Graph::from_edges(g.n(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn blend_bound_dominates_distance_to_band((g, x) in graph_and_vector(3, 24), width in 0usize..4) {
        prop_assume!(norm(&x) > 1e-6);
        let spec = dense_spectrum_oracle(&g).unwrap();
        let vecs = spec.eigenvectors.clone().unwrap();
        let pair = ApproxEigenpair::new(&NormalizedAdjacency(&g), &x).unwrap();
        let n = spec.len();
        // band of eigenvalues around mu
        let above = spec.eigenvalues.iter().filter(|&&l| l > pair.mu).count();
        let p = above.saturating_sub(width / 2).max(1);
        let q = (above + 1 + width / 2).min(n).max(p);
        let gap = blend_gap(&spec, p, q, pair.mu).unwrap();
        prop_assume!(gap.value.is_finite() && gap.value > 1e-8);
        let bound = blend_error_bound(pair.residual_norm, gap.value).unwrap();
        let captured: f64 = vecs[p - 1..q].iter().map(|v| dot(v, &pair.x).powi(2)).sum();
        let distance = (1.0 - captured).max(0.0).sqrt();
        prop_assert!(distance <= bound.value + 1e-9, "distance {} > bound {}", distance, bound.value);
    }

    #[test]
    fn single_vector_bound_near_top_eigenvector(g in weighted_graph(3, 24), noise in prop::collection::vec(-1.0f64..1.0, 24), scale in 0.0f64..0.3) {
        let spec = dense_spectrum_oracle(&g).unwrap();
        let v1 = spec.eigenvectors.as_ref().unwrap()[0].clone();
        let delta1 = spec.lambda(1) - spec.lambda(2);
        prop_assume!(delta1 > 1e-6);
        let x: Vec<f64> = v1.iter().zip(&noise).map(|(a, b)| a + scale * b).collect();
        let pair = ApproxEigenpair::new(&NormalizedAdjacency(&g), &x).unwrap();
        prop_assume!(pair.mu > 0.5 * (spec.lambda(1) + spec.lambda(2)));
        let bound = single_vector_error_bound(pair.residual_norm, delta1).unwrap();
        let plus: f64 = pair.x.iter().zip(&v1).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let minus: f64 = pair.x.iter().zip(&v1).map(|(a, b)| (a + b).powi(2)).sum::<f64>().sqrt();
        prop_assert!(plus.min(minus) <= bound + 1e-9);
    }

    #[test]
    fn rayleigh_quotient_of_normalized_adjacency_in_unit_interval((g, x) in graph_and_vector(2, 40)) {
        prop_assume!(norm(&x) > 1e-6);
        let rq = rayleigh_quotient(&NormalizedAdjacency(&g), &x).unwrap();
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&rq));
    }

    #[test]
    fn deflation_moves_top_eigenvalue_to_zero((g, x) in graph_and_vector(2, 20)) {
        let k = g.perron_vector();
        let ax = g.normalized_adjacency_apply(&x).unwrap();
        let kx = dot(k, &x);
        let mx = g.deflated_apply(&x).unwrap();
        for i in 0..g.n() {
            prop_assert!((mx[i] - (ax[i] - k[i] * kx)).abs() <= 1e-12 * norm(&x).max(1.0));
        }
        let expected = dense_spectrum_oracle(&g).unwrap().deflated();
        let got = symmetric_eigen(&dense_of(&DeflatedAdjacency(&g))).unwrap();
        for (a, b) in expected.eigenvalues.iter().zip(&got.eigenvalues) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn relabeling_preserves_spectrum_and_sweep((g, x) in graph_and_vector(3, 20), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = permuted(&g, &perm);
        let mut y = vec![0.0; n];
        for i in 0..n {
            y[perm[i]] = x[i];
        }
        let a = dense_spectrum_oracle(&g).unwrap();
        let b = dense_spectrum_oracle(&h).unwrap();
        for (u, v) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            prop_assert!((u - v).abs() <= 1e-10);
        }
        match (min_sweep_conductance(&g, &x, true), min_sweep_conductance(&h, &y, true)) {
            (Ok(p), Ok(q)) => prop_assert!((p - q).abs() <= 1e-12 * p.max(1.0)),
            (Err(_), Err(_)) => {}
            (l, r) => prop_assert!(false, "mismatch {:?} vs {:?}", l, r),
        }
    }

    #[test]
    fn breaking_perturbation_is_certified_and_respects_lower_bound(b in 4usize..12, q in 3usize..12, seed in any::<u64>()) {
        let p = RocParams::new(b, q).unwrap();
        let x = random_signal_blend(p, seed);
        prop_assert!(recovers_all_cliques(p, &x, Corners::Include).unwrap());
        let z = construct_breaking_perturbation(p, &unit(&x)).unwrap();
        let xz: Vec<f64> = unit(&x).iter().zip(&z).map(|(a, b)| a + b).collect();
        prop_assert!(!recovers_all_cliques(p, &xz, Corners::Include).unwrap());
        prop_assert!(norm(&z) >= perturbation_lower_bound(p));
    }
}

#[test]
fn ring_graph_degrees_span_clique_and_corner() {
    let p = RocParams::new(6, 5).unwrap();
    let g = build_graph(p);
    assert_eq!(g.min_degree(), 5.0);
    assert_eq!(g.max_degree(), 7.0);
}
