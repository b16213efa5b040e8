//! Rayleigh quotients, eigenresiduals, residual-to-error bounds for single
//! eigenvectors and for blends, and a dense symmetric eigensolver used as a
//! verification oracle on small graphs.

use crate::error::{Error, Result};
use crate::graph::{dot, norm, Graph};

/// Largest graph the dense oracle accepts.
pub const DENSE_ORACLE_LIMIT: usize = 1024;

/// A symmetric linear operator on `R^n`.
pub trait Operator {
    fn dim(&self) -> usize;

    /// Writes `M x` into `out`. Both slices have length `dim()`.
    fn apply_into(&self, x: &[f64], out: &mut [f64]) -> Result<()>;

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.apply_into(x, &mut out)?;
        Ok(out)
    }
}

/// `D^{-1/2} A D^{-1/2}`.
#[derive(Debug, Clone, Copy)]
pub struct NormalizedAdjacency<'g>(pub &'g Graph);

/// `D^{-1/2} A D^{-1/2} - k k^t`.
#[derive(Debug, Clone, Copy)]
pub struct DeflatedAdjacency<'g>(pub &'g Graph);

/// `I - D^{-1/2} A D^{-1/2}`.
#[derive(Debug, Clone, Copy)]
pub struct NormalizedLaplacian<'g>(pub &'g Graph);

impl Operator for NormalizedAdjacency<'_> {
    fn dim(&self) -> usize {
        self.0.n()
    }
    fn apply_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.0.normalized_adjacency_into(x, out)
    }
}

impl Operator for DeflatedAdjacency<'_> {
    fn dim(&self) -> usize {
        self.0.n()
    }
    fn apply_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.0.deflated_into(x, out)
    }
}

impl Operator for NormalizedLaplacian<'_> {
    fn dim(&self) -> usize {
        self.0.n()
    }
    fn apply_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.0.normalized_adjacency_into(x, out)?;
        for (o, xi) in out.iter_mut().zip(x) {
            *o = xi - *o;
        }
        Ok(())
    }
}

/// Dense symmetric matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetric {
    n: usize,
    data: Vec<f64>,
}

impl DenseSymmetric {
    /// Wraps row-major data; the caller guarantees symmetry.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut data = vec![0.0; n * n];
        for (i, &v) in values.iter().enumerate() {
            data[i * n + i] = v;
        }
        Self { n, data }
    }

    /// Dense normalized adjacency of `g`.
    pub fn normalized_adjacency(g: &Graph) -> Self {
        let n = g.n();
        let s = g.inv_sqrt_degrees();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for (j, w) in g.neighbors(i) {
                data[i * n + j] = s[i] * w * s[j];
            }
        }
        Self { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }
}

impl Operator for DenseSymmetric {
    fn dim(&self) -> usize {
        self.n
    }
    fn apply_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        check_dim(self.n, x.len())?;
        check_dim(self.n, out.len())?;
        for (i, o) in out.iter_mut().enumerate() {
            *o = dot(&self.data[i * self.n..(i + 1) * self.n], x);
        }
        Ok(())
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

/// A value together with whether the hypothesis of the theorem that
/// produced it held. Experiments probe the boundary on purpose, so a
/// violated hypothesis is reported rather than raised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checked {
    pub value: f64,
    pub hypothesis_holds: bool,
}

/// `<x, Mx> / <x, x>`.
pub fn rayleigh_quotient<M: Operator + ?Sized>(op: &M, x: &[f64]) -> Result<f64> {
    let xx = dot(x, x);
    if xx == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mx = op.apply(x)?;
    Ok(dot(x, &mx) / xx)
}

/// `||M x - mu x||_2`.
pub fn eigen_residual<M: Operator + ?Sized>(op: &M, x: &[f64], mu: f64) -> Result<f64> {
    let mx = op.apply(x)?;
    Ok(mx
        .iter()
        .zip(x)
        .map(|(m, xi)| (m - mu * xi).powi(2))
        .sum::<f64>()
        .sqrt())
}

/// A unit vector with its Rayleigh quotient and eigenresidual.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxEigenpair {
    pub x: Vec<f64>,
    pub mu: f64,
    pub residual_norm: f64,
}

impl ApproxEigenpair {
    /// Normalizes `x` and evaluates it against `op`.
    pub fn new<M: Operator + ?Sized>(op: &M, x: &[f64]) -> Result<Self> {
        check_dim(op.dim(), x.len())?;
        let nx = norm(x);
        if nx == 0.0 {
            return Err(Error::ZeroVector);
        }
        let x: Vec<f64> = x.iter().map(|v| v / nx).collect();
        let mx = op.apply(&x)?;
        let mu = dot(&x, &mx);
        let residual_norm = mx
            .iter()
            .zip(&x)
            .map(|(m, xi)| (m - mu * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        Ok(Self {
            x,
            mu,
            residual_norm,
        })
    }
}

/// `sqrt(8) eps / delta1`: distance from a unit approximate eigenvector to
/// the top eigenspace, valid when the Rayleigh quotient is closer to the top
/// eigenvalue than to any other.
pub fn single_vector_error_bound(epsilon: f64, delta1: f64) -> Result<f64> {
    if !(delta1 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "eigengap must be positive, got {delta1}"
        )));
    }
    Ok(8f64.sqrt() * epsilon / delta1)
}

/// `sqrt(2) eps / gap`: distance from a unit approximate eigenvector to the
/// invariant subspace of an eigenvalue band. The hypothesis is `eps <= gap`.
pub fn blend_error_bound(epsilon: f64, blend_gap: f64) -> Result<Checked> {
    if !(blend_gap > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "blend gap must be positive, got {blend_gap}"
        )));
    }
    Ok(Checked {
        value: 2f64.sqrt() * epsilon / blend_gap,
        hypothesis_holds: epsilon <= blend_gap,
    })
}

/// Eigenvalues sorted in decreasing order, optionally with orthonormal
/// eigenvectors in the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<Vec<Vec<f64>>>,
}

impl SpectrumSummary {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Self {
            eigenvalues,
            eigenvectors: None,
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// The `k`-th largest eigenvalue, 1-based.
    pub fn lambda(&self, k: usize) -> f64 {
        self.eigenvalues[k - 1]
    }

    /// Distance from `mu` to the nearest eigenvalue.
    pub fn distance_to_spectrum(&self, mu: f64) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| (l - mu).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Eigenvalues of `M - k k^t` given those of `M`, where `k` is the
    /// eigenvector for the top eigenvalue: the top eigenvalue moves to 0.
    pub fn deflated(&self) -> Self {
        let mut ev = self.eigenvalues.clone();
        if let Some(first) = ev.first_mut() {
            *first = 0.0;
        }
        Self::from_eigenvalues(ev)
    }
}

/// `min_{k < p or k > q} |lambda_k - mu|` for 1-based `p <= q`.
///
/// Returns `+inf` when the band is the whole spectrum. The hypothesis flag
/// reports whether `mu` lies in `[lambda_q, lambda_p]`.
pub fn blend_gap(spectrum: &SpectrumSummary, p: usize, q: usize, mu: f64) -> Result<Checked> {
    let n = spectrum.len();
    if p == 0 || p > q || q > n {
        return Err(Error::InvalidArgument(format!(
            "band indices must satisfy 1 <= p <= q <= {n}, got p={p}, q={q}"
        )));
    }
    let outside = spectrum.eigenvalues[..p - 1]
        .iter()
        .chain(&spectrum.eigenvalues[q..]);
    let value = outside
        .map(|l| (l - mu).abs())
        .fold(f64::INFINITY, f64::min);
    let hypothesis_holds = spectrum.lambda(q) <= mu && mu <= spectrum.lambda(p);
    Ok(Checked {
        value,
        hypothesis_holds,
    })
}

/// `sqrt(2 mu)` for a Laplacian Rayleigh quotient `mu`: an upper bound on the
/// best sweep-cut conductance of `D^{-1/2} x`.
pub fn cheeger_upper_bound(mu_laplacian: f64) -> Result<f64> {
    if mu_laplacian < 0.0 || mu_laplacian.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "Laplacian Rayleigh quotient must be nonnegative, got {mu_laplacian}"
        )));
    }
    Ok((2.0 * mu_laplacian).sqrt())
}

/// Residual tolerance `(1/sqrt 2) sqrt(d_min/d_max) gap g` below which the
/// best sweep cut of `D^{-1/2} x` stays within the target conductance.
///
/// `g_min` is the smallest robustness over unit vectors of the target
/// subspace. It is not computable in general; callers supply an exact value
/// where the structure is known or a sampled estimate otherwise (a sampled
/// minimum over-estimates the true minimum).
pub fn general_residual_tolerance(g: &Graph, blend_gap: f64, g_min: f64) -> Result<f64> {
    if !(blend_gap > 0.0) || !(g_min > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "blend gap and robustness must be positive, got {blend_gap} and {g_min}"
        )));
    }
    Ok((g.min_degree() / g.max_degree()).sqrt() * blend_gap * g_min / 2f64.sqrt())
}

/// Full eigendecomposition of the normalized adjacency of `g`.
pub fn dense_spectrum_oracle(g: &Graph) -> Result<SpectrumSummary> {
    if g.n() > DENSE_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: DENSE_ORACLE_LIMIT,
        });
    }
    symmetric_eigen(&DenseSymmetric::normalized_adjacency(g))
}

const MAX_SWEEPS: usize = 60;

/// Cyclic Jacobi eigendecomposition of a dense symmetric matrix.
///
/// Sweeps until the off-diagonal Frobenius norm is at most `1e-12 ||M||_F`.
pub fn symmetric_eigen(m: &DenseSymmetric) -> Result<SpectrumSummary> {
    let n = m.n;
    let mut a = m.data.clone();
    // rows of `vt` are the eigenvectors
    let mut vt = vec![0.0; n * n];
    for i in 0..n {
        vt[i * n + i] = 1.0;
    }
    let target = 1e-12 * m.frobenius_norm();

    let off_norm = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = off_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                let (head, tail) = vt.split_at_mut(q * n);
                let vp = &mut head[p * n..(p + 1) * n];
                let vq = &mut tail[..n];
                for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
                    let (xp, xq) = (*x, *y);
                    *x = c * xp - s * xq;
                    *y = s * xp + c * xq;
                }
            }
        }
        converged = off_norm(&a) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let eigenvalues = order.iter().map(|&i| a[i * n + i]).collect();
    let eigenvectors = order
        .iter()
        .map(|&i| vt[i * n..(i + 1) * n].to_vec())
        .collect();
    Ok(SpectrumSummary {
        eigenvalues,
        eigenvectors: Some(eigenvectors),
    })
}
