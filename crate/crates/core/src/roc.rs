//! The ring of cliques `R_{b,q}`: `q` cliques of `b` vertices whose corner
//! vertices form a cycle. Its normalized adjacency has a closed-form
//! eigensystem, which makes it the reference problem for everything else in
//! the crate.
//!
//! Vertex numbering is clique-major: clique `i` owns `[i*b, (i+1)*b)`, its
//! corner is `i*b`, and the remaining `b-1` vertices are internal.

use std::f64::consts::PI;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{norm, Graph};
use crate::spectra::SpectrumSummary;

/// Clique size `b` and clique count `q`, both at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RocParams {
    b: usize,
    q: usize,
}

impl RocParams {
    pub fn new(b: usize, q: usize) -> Result<Self> {
        if b < 3 {
            return Err(Error::InvalidRocParams {
                b,
                q,
                reason: "clique size must be at least 3",
            });
        }
        if q < 3 {
            return Err(Error::InvalidRocParams {
                b,
                q,
                reason: "clique count must be at least 3",
            });
        }
        b.checked_mul(q).ok_or(Error::InvalidRocParams {
            b,
            q,
            reason: "vertex count overflows",
        })?;
        Ok(Self { b, q })
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.b * self.q
    }

    /// `q (C(b,2) + 1)`.
    pub fn edge_count(&self) -> usize {
        self.q * (self.b * (self.b - 1) / 2 + 1)
    }

    pub fn corner_index(&self, clique: usize) -> usize {
        clique * self.b
    }

    pub fn block(&self, clique: usize) -> Range<usize> {
        clique * self.b..(clique + 1) * self.b
    }

    pub fn internal_indices(&self, clique: usize) -> Range<usize> {
        clique * self.b + 1..(clique + 1) * self.b
    }

    pub fn clique_of(&self, vertex: usize) -> usize {
        vertex / self.b
    }

    pub fn is_corner(&self, vertex: usize) -> bool {
        vertex % self.b == 0
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: x.len(),
            });
        }
        Ok(())
    }
}

pub fn build_graph(p: RocParams) -> Graph {
    let (b, q) = (p.b, p.q);
    let mut edges = Vec::with_capacity(p.edge_count());
    for i in 0..q {
        let start = i * b;
        for u in start..start + b {
            for v in u + 1..start + b {
                edges.push((u, v, 1.0));
            }
        }
        edges.push((start, ((i + 1) % q) * b, 1.0));
    }
    Graph::from_edges(p.n(), &edges).expect("ring of cliques is a valid graph")
}

/// One Fourier mode `k` of the ring: two eigenvalues of the normalized
/// adjacency, each with the same multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RocMode {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub multiplicity: usize,
}

/// The complete eigensystem of the normalized adjacency of `R_{b,q}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RocSpectrum {
    pub params: RocParams,
    pub modes: Vec<RocMode>,
    pub noise_eigenvalue: f64,
    pub noise_multiplicity: usize,
}

/// One row of the tabular spectrum descriptor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub kind: &'static str,
    pub k: Option<usize>,
    pub branch: Option<u8>,
    pub eigenvalue: f64,
    pub multiplicity: usize,
}

/// `(1 - lambda_1^{(k)}, 1 - lambda_2^{(k)})`.
fn nu_pair(b: usize, q: usize, k: usize) -> (f64, f64) {
    let bf = b as f64;
    let alpha = 2.0 * (2.0 * PI * k as f64 / q as f64).cos();
    let s = (PI * k as f64 / q as f64).sin();
    // On span{e1, g1} the block operator I - H_k is the symmetric 2x2 matrix
    // [[1 - alpha/(b+1), -1/sqrt(b+1)], [-1/sqrt(b+1), 1/(b-1)]]. Working with
    // nu = 1 - lambda keeps the small eigenvalues accurate to full relative
    // precision, which matters once 1 - lambda drops below ~1e-8.
    let trace = 1.0 - alpha / (bf + 1.0) + 1.0 / (bf - 1.0);
    let det = 4.0 * s * s / (bf * bf - 1.0);
    let nu_large = 0.5 * (trace + (trace * trace - 4.0 * det).max(0.0).sqrt());
    (det / nu_large, nu_large)
}

fn mode(b: usize, q: usize, k: usize) -> RocMode {
    let bf = b as f64;
    let alpha = 2.0 * (2.0 * PI * k as f64 / q as f64).cos();
    let root = (bf * bf - 1.0).sqrt();
    let (nu_small, nu_large) = nu_pair(b, q, k);
    let beta = 0.5
        * (alpha * ((bf - 1.0) / (bf + 1.0)).sqrt() - root + ((bf + 1.0) / (bf - 1.0)).sqrt());
    let multiplicity = if k == 0 || 2 * k == q { 1 } else { 2 };
    RocMode {
        k,
        alpha,
        beta,
        xi1: root * (1.0 / (bf - 1.0) - nu_small),
        xi2: root * (1.0 / (bf - 1.0) - nu_large),
        lambda1: 1.0 - nu_small,
        lambda2: 1.0 - nu_large,
        multiplicity,
    }
}

/// `lambda = xi / sqrt(b^2-1) + 1 - 1/(b-1)` with
/// `xi = beta +- sqrt(beta^2 + b - 1)`, evaluated literally. Loses relative
/// accuracy in `1 - lambda` for large `b` and `q`; kept as a cross-check.
pub fn direct_mode_eigenvalues(p: RocParams, k: usize) -> (f64, f64) {
    let bf = p.b as f64;
    let alpha = 2.0 * (2.0 * PI * k as f64 / p.q as f64).cos();
    let root = (bf * bf - 1.0).sqrt();
    let beta = 0.5 * (alpha * ((bf - 1.0) / (bf + 1.0)).sqrt() - root + ((bf + 1.0) / (bf - 1.0)).sqrt());
    let r = (beta * beta + bf - 1.0).sqrt();
    let shift = 1.0 - 1.0 / (bf - 1.0);
    ((beta + r) / root + shift, (beta - r) / root + shift)
}

pub fn closed_form_spectrum(p: RocParams) -> RocSpectrum {
    let modes = (0..=p.q / 2).map(|k| mode(p.b, p.q, k)).collect();
    RocSpectrum {
        params: p,
        modes,
        noise_eigenvalue: -1.0 / (p.b as f64 - 1.0),
        noise_multiplicity: p.n() - 2 * p.q,
    }
}

impl RocSpectrum {
    /// All `n` eigenvalues with multiplicity, decreasing.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev = Vec::with_capacity(self.params.n());
        for m in &self.modes {
            for _ in 0..m.multiplicity {
                ev.push(m.lambda1);
                ev.push(m.lambda2);
            }
        }
        ev.extend(std::iter::repeat_n(self.noise_eigenvalue, self.noise_multiplicity));
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    pub fn summary(&self) -> SpectrumSummary {
        SpectrumSummary::from_eigenvalues(self.eigenvalues())
    }

    /// `1 - lambda_2(A^)`, computed without cancellation.
    pub fn fiedler_laplacian(&self) -> f64 {
        nu_pair(self.params.b, self.params.q, 1).0
    }

    /// `lambda_1^{(1)} - lambda_1^{(2)}`.
    pub fn eigengap(&self) -> f64 {
        let (b, q) = (self.params.b, self.params.q);
        nu_pair(b, q, 2).0 - nu_pair(b, q, 1).0
    }

    /// The `q`-th largest eigenvalue: the bottom of the signal band.
    pub fn lambda_q(&self) -> f64 {
        self.modes.last().expect("at least two modes").lambda1
    }

    /// `lambda_{q+1}`: the largest eigenvalue outside the signal band.
    pub fn lambda_q_plus_1(&self) -> f64 {
        self.modes
            .iter()
            .map(|m| m.lambda2)
            .fold(self.noise_eigenvalue, f64::max)
    }

    /// `max(|lambda_{q+1}|, |lambda_n|)`.
    pub fn lambda_star(&self) -> f64 {
        let lowest = self
            .modes
            .iter()
            .map(|m| m.lambda2)
            .fold(self.noise_eigenvalue, f64::min);
        self.lambda_q_plus_1().abs().max(lowest.abs())
    }

    pub fn rows(&self) -> Vec<SpectrumRow> {
        let mut rows = Vec::with_capacity(2 * self.modes.len() + 1);
        for m in &self.modes {
            for (branch, eigenvalue) in [(1u8, m.lambda1), (2u8, m.lambda2)] {
                rows.push(SpectrumRow {
                    kind: "signal",
                    k: Some(m.k),
                    branch: Some(branch),
                    eigenvalue,
                    multiplicity: m.multiplicity,
                });
            }
        }
        rows.push(SpectrumRow {
            kind: "noise",
            k: None,
            branch: None,
            eigenvalue: self.noise_eigenvalue,
            multiplicity: self.noise_multiplicity,
        });
        rows
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    Cos,
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    One,
    Two,
}

/// Every valid `(k, branch, phase)` triple, in mode order. Together with the
/// noise space these index a full eigenbasis.
pub fn signal_indices(p: RocParams) -> Vec<(usize, Branch, Phase)> {
    let mut out = Vec::with_capacity(2 * p.q);
    for k in 0..=p.q / 2 {
        for branch in [Branch::One, Branch::Two] {
            out.push((k, branch, Phase::Cos));
            if k != 0 && 2 * k != p.q {
                out.push((k, branch, Phase::Sin));
            }
        }
    }
    out
}

/// Unnormalized eigenvector `per (x) (xi e1 + g1)` where `per` is the cosine
/// or sine sequence of mode `k` over clique index.
///
/// At `k = 0` and at `k = q/2` the sine sequence vanishes, so only `Cos` is
/// accepted there (for both branches).
pub fn signal_vector(p: RocParams, k: usize, branch: Branch, phase: Phase) -> Result<Vec<f64>> {
    if k > p.q / 2 {
        return Err(Error::InvalidArgument(format!(
            "mode {k} out of range 0..={}",
            p.q / 2
        )));
    }
    if phase == Phase::Sin && (k == 0 || 2 * k == p.q) {
        return Err(Error::InvalidArgument(format!(
            "sine phase vanishes for mode {k} of q={}",
            p.q
        )));
    }
    let m = mode(p.b, p.q, k);
    let xi = match branch {
        Branch::One => m.xi1,
        Branch::Two => m.xi2,
    };
    let mut v = vec![0.0; p.n()];
    for i in 0..p.q {
        let theta = 2.0 * PI * (k * i) as f64 / p.q as f64;
        let c = match phase {
            Phase::Cos => theta.cos(),
            Phase::Sin => theta.sin(),
        };
        let block = &mut v[p.block(i)];
        block[0] = c * xi;
        for x in &mut block[1..] {
            *x = c;
        }
    }
    Ok(v)
}

/// `e_u - e_v` for two internal vertices of one clique, given by local
/// indices in `1..b` (local index 0 is the corner).
pub fn noise_basis_vector(p: RocParams, clique: usize, i: usize, j: usize) -> Result<Vec<f64>> {
    if clique >= p.q {
        return Err(Error::InvalidArgument(format!(
            "clique {clique} out of range 0..{}",
            p.q
        )));
    }
    if i == 0 || j == 0 {
        return Err(Error::InvalidArgument(
            "local index 0 is the corner, not an internal vertex".into(),
        ));
    }
    if i >= p.b || j >= p.b || i == j {
        return Err(Error::InvalidArgument(format!(
            "need distinct internal local indices in 1..{}, got {i} and {j}",
            p.b
        )));
    }
    let mut v = vec![0.0; p.n()];
    v[p.corner_index(clique) + i] = 1.0;
    v[p.corner_index(clique) + j] = -1.0;
    Ok(v)
}

/// Leading-order estimate `4 pi^2 b^2 / (q^2 (b^2-1)^2)` of `lambda_2(L^)`.
pub fn asymptotic_fiedler(p: RocParams) -> f64 {
    let (b, q) = (p.b as f64, p.q as f64);
    4.0 * PI * PI * b * b / (q * q * (b * b - 1.0).powi(2))
}

/// Second-order Taylor estimate of `lambda_1^{(1)} - lambda_1^{(2)}`.
///
/// Uses all three terms of the expansion rather than only the one that
/// survives as `b -> inf`; the single term overestimates by about a factor of
/// two at moderate `b`. Meaningful for `q >= 8`.
pub fn asymptotic_eigengap(p: RocParams) -> f64 {
    let (b, q) = (p.b as f64, p.q as f64);
    let a1 = 2.0 * (2.0 * PI / q).cos();
    let x1 = (0.25 - 0.5 / (b + 1.0)) * a1 * a1 + (1.0 - 0.5 * b) * a1;
    let a = 0.25 * b * b + 0.5 * b - 1.5 + 0.5 / (b - 1.0);
    let denom = (x1 + a).sqrt() * (b * b - 1.0).sqrt();
    let pq2 = PI * PI / (q * q);
    6.0 * pq2 / (b + 1.0) - 3.0 * pq2 * b / denom + 12.0 * pq2 / denom
}

/// `C(b,2)`.
fn pairs(b: usize) -> f64 {
    (b * (b - 1) / 2) as f64
}

/// Conductance of the best balanced split of the ring, `2 / (2 floor(q/2) C(b,2))`.
/// Equals `2 / (q C(b,2))` for even `q`.
pub fn optimal_conductance(p: RocParams) -> f64 {
    2.0 / (2.0 * (p.q / 2) as f64 * pairs(p.b))
}

/// `2 / C(b,2)`: the sweep conductance guaranteed for any signal blend, and
/// the conductance of isolating one clique.
pub fn worst_blend_bound(p: RocParams) -> f64 {
    2.0 / pairs(p.b)
}

/// `C / (q sqrt(n))`.
pub fn roc_residual_tolerance(p: RocParams, c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance constant must be positive, got {c}"
        )));
    }
    Ok(c / (p.q as f64 * (p.n() as f64).sqrt()))
}

/// Which vertices of a clique count toward its mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum BlockScope {
    #[default]
    WholeBlock,
    InternalOnly,
}

/// Per-clique mean of `x`.
pub fn block_means(p: RocParams, x: &[f64], scope: BlockScope) -> Result<Vec<f64>> {
    p.check_len(x)?;
    Ok((0..p.q)
        .map(|i| {
            let range = match scope {
                BlockScope::WholeBlock => p.block(i),
                BlockScope::InternalOnly => p.internal_indices(i),
            };
            let len = range.len() as f64;
            x[range].iter().sum::<f64>() / len
        })
        .collect())
}

/// Orthogonal projection onto `W = span{corner indicators, internal block
/// indicators}`: keeps corners and replaces each clique's internal entries
/// by their mean.
pub fn project_w(p: RocParams, x: &[f64]) -> Result<Vec<f64>> {
    p.check_len(x)?;
    let mut out = x.to_vec();
    for i in 0..p.q {
        let internal = &mut out[p.internal_indices(i)];
        let mean = internal.iter().sum::<f64>() / internal.len() as f64;
        internal.fill(mean);
    }
    Ok(out)
}

/// `||(I - P_W) x||`: the mass of `x` in the noise eigenspace.
pub fn noise_component_norm(p: RocParams, x: &[f64]) -> Result<f64> {
    p.check_len(x)?;
    let mut s = 0.0;
    for i in 0..p.q {
        let internal = &x[p.internal_indices(i)];
        let mean = internal.iter().sum::<f64>() / internal.len() as f64;
        s += internal.iter().map(|v| (v - mean).powi(2)).sum::<f64>();
    }
    Ok(s.sqrt())
}

/// Unit-normalized copy of `v`.
pub(crate) fn normalized(v: &[f64]) -> Vec<f64> {
    let nv = norm(v);
    v.iter().map(|x| x / nv).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{dot, VertexSet};
    use crate::spectra::{dense_spectrum_oracle, eigen_residual, rayleigh_quotient, NormalizedAdjacency};

    fn params(b: usize, q: usize) -> RocParams {
        RocParams::new(b, q).unwrap()
    }

    #[test]
    fn rejects_small_parameters() {
        assert!(RocParams::new(2, 5).is_err());
        assert!(RocParams::new(5, 2).is_err());
    }

    #[test]
    fn r33_by_hand() {
        let g = build_graph(params(3, 3));
        assert_eq!(g.n(), 9);
        assert_eq!(g.edge_count(), 12);
        for v in 0..9 {
            let want = if v % 3 == 0 { 4.0 } else { 2.0 };
            assert_eq!(g.degree(v), want);
        }
    }

    #[test]
    fn edge_counts_and_degrees() {
        for b in 3..9 {
            for q in 3..9 {
                let p = params(b, q);
                let g = build_graph(p);
                assert_eq!(g.edge_count(), p.edge_count());
                assert_eq!(g.min_degree(), (b - 1) as f64);
                assert_eq!(g.max_degree(), (b + 1) as f64);
            }
        }
        assert_eq!(build_graph(params(20, 30)).edge_count(), 5730);
    }

    #[test]
    fn ring_cuts() {
        let p = params(20, 30);
        let g = build_graph(p);
        let half = VertexSet::from_indices(p.n(), &(0..300).collect::<Vec<_>>()).unwrap();
        assert_eq!(g.cut_weight(&half).unwrap(), 2.0);
        assert_eq!(g.volume(&half).unwrap(), 5728.0);
        let clique = VertexSet::from_indices(p.n(), &(20..40).collect::<Vec<_>>()).unwrap();
        assert_eq!(g.cut_weight(&clique).unwrap(), 2.0);
        assert_eq!(g.volume(&clique).unwrap(), 380.0);
    }

    #[test]
    fn multiplicities_sum_to_n() {
        for (b, q) in [(3, 3), (4, 4), (5, 7), (20, 30), (6, 31)] {
            let s = closed_form_spectrum(params(b, q));
            let total: usize =
                s.modes.iter().map(|m| 2 * m.multiplicity).sum::<usize>() + s.noise_multiplicity;
            assert_eq!(total, b * q);
            assert_eq!(s.eigenvalues().len(), b * q);
        }
    }

    #[test]
    fn mode_structure() {
        let s = closed_form_spectrum(params(7, 12));
        assert!((s.modes[0].lambda1 - 1.0).abs() < 1e-12);
        for w in s.modes.windows(2) {
            assert!(w[0].lambda1 > w[1].lambda1);
        }
        for m in &s.modes {
            assert!(m.lambda1 > 0.0 && m.lambda1 > s.noise_eigenvalue);
            assert!(m.xi1 > m.xi2);
        }
    }

    #[test]
    fn stable_form_agrees_with_direct_formula() {
        for (b, q) in [(3, 3), (10, 17), (20, 30), (100, 64)] {
            let p = params(b, q);
            let s = closed_form_spectrum(p);
            for m in &s.modes {
                let (l1, l2) = direct_mode_eigenvalues(p, m.k);
                assert!((l1 - m.lambda1).abs() < 1e-12, "b={b} q={q} k={}", m.k);
                assert!((l2 - m.lambda2).abs() < 1e-12);
                let r = (m.beta * m.beta + b as f64 - 1.0).sqrt();
                assert!((m.xi1 - (m.beta + r)).abs() < 1e-9 * m.xi1.abs().max(1.0));
                assert!((m.xi2 - (m.beta - r)).abs() < 1e-9 * m.xi2.abs().max(1.0));
            }
        }
    }

    #[test]
    fn r20_30_reference_values() {
        let s = closed_form_spectrum(params(20, 30));
        let l2 = s.fiedler_laplacian();
        assert!((l2 / 1.14176e-4 - 1.0).abs() < 1e-5);
        assert!(((2.0 * l2).sqrt() / 1.51113e-2 - 1.0).abs() < 1e-5);
        assert!((s.modes[1].lambda1 - 0.99988582).abs() < 1e-8);
        assert!((s.noise_eigenvalue + 1.0 / 19.0).abs() < 1e-15);
        assert_eq!(s.noise_multiplicity, 540);
        let ev = s.eigenvalues();
        assert_eq!(s.lambda_q(), ev[29]);
        assert_eq!(s.lambda_q_plus_1(), ev[30]);
        assert_eq!(s.lambda_star(), ev[30].abs().max(ev[599].abs()));
    }

    #[test]
    fn matches_dense_oracle_small() {
        for (b, q) in [(3, 3), (4, 5), (5, 6)] {
            let p = params(b, q);
            let oracle = dense_spectrum_oracle(&build_graph(p)).unwrap();
            for (a, c) in oracle.eigenvalues.iter().zip(closed_form_spectrum(p).eigenvalues()) {
                assert!((a - c).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn signal_vectors_are_eigenvectors() {
        for (b, q) in [(3, 4), (5, 7), (6, 8)] {
            let p = params(b, q);
            let g = build_graph(p);
            let op = NormalizedAdjacency(&g);
            let s = closed_form_spectrum(p);
            let idx = signal_indices(p);
            assert_eq!(idx.len(), 2 * q);
            let vecs: Vec<Vec<f64>> = idx
                .iter()
                .map(|&(k, br, ph)| normalized(&signal_vector(p, k, br, ph).unwrap()))
                .collect();
            for (&(k, br, _), v) in idx.iter().zip(&vecs) {
                let lam = match br {
                    Branch::One => s.modes[k].lambda1,
                    Branch::Two => s.modes[k].lambda2,
                };
                assert!(eigen_residual(&op, v, lam).unwrap() < 1e-10);
            }
            for i in 0..vecs.len() {
                for j in i + 1..vecs.len() {
                    assert!(dot(&vecs[i], &vecs[j]).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn perron_signal_vector() {
        let p = params(5, 4);
        let v = signal_vector(p, 0, Branch::One, Phase::Cos).unwrap();
        let scale = 6f64.sqrt() / v[0];
        for (i, x) in v.iter().enumerate() {
            let want = if p.is_corner(i) { 6f64.sqrt() } else { 2.0 };
            assert!((x * scale - want).abs() < 1e-12);
        }
    }

    #[test]
    fn half_mode_alternates() {
        let p = params(4, 6);
        let v = signal_vector(p, 3, Branch::One, Phase::Cos).unwrap();
        for i in 0..6 {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert!((v[p.internal_indices(i).start] - sign).abs() < 1e-12);
        }
        assert!(signal_vector(p, 3, Branch::Two, Phase::Sin).is_err());
        assert!(signal_vector(p, 0, Branch::One, Phase::Sin).is_err());
        assert!(signal_vector(p, 4, Branch::One, Phase::Cos).is_err());
    }

    #[test]
    fn noise_vectors() {
        let p = params(20, 30);
        let g = build_graph(p);
        let v = noise_basis_vector(p, 4, 2, 7).unwrap();
        let op = NormalizedAdjacency(&g);
        let rq = rayleigh_quotient(&op, &v).unwrap();
        assert!((rq + 1.0 / 19.0).abs() < 1e-12);
        assert!(eigen_residual(&op, &normalized(&v), -1.0 / 19.0).unwrap() < 1e-12);
        assert!(noise_basis_vector(p, 4, 0, 7).is_err());
        assert!(noise_basis_vector(p, 4, 3, 3).is_err());
        assert!(noise_basis_vector(p, 4, 3, 20).is_err());
        assert!(project_w(p, &v).unwrap().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn asymptotic_values() {
        let p = params(20, 30);
        assert!((asymptotic_fiedler(p) / 1.10213e-4 - 1.0).abs() < 1e-4);
        let big = params(1000, 1000);
        let exact = closed_form_spectrum(big).fiedler_laplacian();
        assert!((asymptotic_fiedler(big) / exact - 1.0).abs() < 5e-3);
        for (b, q) in [(100, 100), (100, 400), (400, 100)] {
            let p = params(b, q);
            let exact = closed_form_spectrum(p).eigengap();
            let est = asymptotic_eigengap(p);
            assert!(est > 0.0 && (est / exact - 1.0).abs() < 0.15);
        }
    }

    #[test]
    fn conductance_formulas() {
        let p = params(20, 30);
        assert!((optimal_conductance(p) - 2.0 / 5700.0).abs() < 1e-18);
        assert!((worst_blend_bound(p) - 2.0 / 190.0).abs() < 1e-18);
        assert_eq!(optimal_conductance(params(20, 31)), optimal_conductance(p));
    }

    #[test]
    fn residual_tolerance() {
        let p = params(20, 30);
        assert!((roc_residual_tolerance(p, 1.0).unwrap() - 1.3608276348795434e-3).abs() < 1e-15);
        let ratio = roc_residual_tolerance(params(20, 120), 1.0).unwrap()
            / roc_residual_tolerance(p, 1.0).unwrap();
        assert!((ratio - 0.125).abs() < 1e-15);
        assert!(roc_residual_tolerance(p, 0.0).is_err());
    }

    #[test]
    fn block_means_and_projection() {
        let p = params(4, 3);
        let x: Vec<f64> = (0..12).map(|i| i as f64).collect();
        assert_eq!(block_means(p, &x, BlockScope::WholeBlock).unwrap(), vec![1.5, 5.5, 9.5]);
        assert_eq!(block_means(p, &x, BlockScope::InternalOnly).unwrap(), vec![2.0, 6.0, 10.0]);
        let px = project_w(p, &x).unwrap();
        assert_eq!(&px[..4], &[0.0, 2.0, 2.0, 2.0]);
        assert_eq!(project_w(p, &px).unwrap(), px);
        let resid: Vec<f64> = x.iter().zip(&px).map(|(a, b)| a - b).collect();
        assert!((noise_component_norm(p, &x).unwrap() - norm(&resid)).abs() < 1e-12);
        assert!(block_means(p, &x[..5], BlockScope::WholeBlock).is_err());
    }

    #[test]
    fn json_rows() {
        let s = closed_form_spectrum(params(3, 4));
        let rows = s.rows();
        assert_eq!(rows.len(), 2 * 3 + 1);
        let json = serde_json::to_string(&rows).unwrap();
        assert!(json.contains("\"kind\":\"noise\""));
    }
}
