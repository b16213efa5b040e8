//! Smallest perturbations of a signal blend that make sweep cuts on the ring
//! of cliques split a clique.
//!
//! A blend `x` is block-constant on the internal vertices of each clique.
//! Sorting cliques by that value, recovery fails exactly when every pair of
//! neighbouring cliques in the sorted order overlaps. The construction here
//! closes each such gap with one raised and one lowered internal vertex and
//! keeps every internal block sum at zero, so the perturbation is orthogonal
//! to `W` (corner and internal-block indicators).

use std::io::{BufWriter, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{dot, norm};
use crate::partition::{recovers_all_cliques, Corners};
use crate::roc::{block_means, normalized, project_w, signal_vector, BlockScope, Branch, Phase, RocParams};

/// Relative overshoot on every gap so touching blocks overlap despite rounding.
const OVERLAP_MARGIN: f64 = 1e-9;

/// Default bisection steps for [`empirical_min_failure_norm`].
pub const DEFAULT_BUDGET: usize = 60;

/// `(1 + 2qn)^{-1/2}`: no perturbation orthogonal to `W` with smaller norm
/// (relative to the perturbed vector) can break clique recovery.
pub fn perturbation_lower_bound(p: RocParams) -> f64 {
    let (q, n) = (p.q() as f64, p.n() as f64);
    (1.0 + 2.0 * q * n).powf(-0.5)
}

/// Internal-block values of `x` and the order that sorts them ascending.
fn sorted_blocks(p: RocParams, x: &[f64]) -> Result<(Vec<f64>, Vec<usize>)> {
    if p.b() < 4 {
        return Err(Error::InvalidArgument(format!(
            "construction needs at least 4 vertices per clique, got b={}",
            p.b()
        )));
    }
    let nx = norm(x);
    if nx == 0.0 {
        return Err(Error::ZeroVector);
    }
    let pw = project_w(p, x)?;
    let off_w = x.iter().zip(&pw).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    if off_w > 1e-10 * nx {
        return Err(Error::InvalidArgument(format!(
            "vector is not in W (distance {off_w:e})"
        )));
    }
    if x.iter().sum::<f64>().abs() > 1e-10 * nx * (x.len() as f64).sqrt() {
        return Err(Error::InvalidArgument("vector is not orthogonal to 1".into()));
    }
    let u = block_means(p, x, BlockScope::InternalOnly)?;
    let mut order: Vec<usize> = (0..p.q()).collect();
    order.sort_by(|&i, &j| u[i].total_cmp(&u[j]).then(i.cmp(&j)));
    if u[order[p.q() - 1]] == u[order[0]] {
        return Err(Error::InvalidArgument(
            "all internal block values are equal; there is no gap to close".into(),
        ));
    }
    Ok((u, order))
}

/// Places `+raise` and `-lower` on the first two internal vertices of each
/// clique (by sorted position) and spreads the negated net shift over the
/// remaining `b-3` internal vertices.
fn assemble(p: RocParams, order: &[usize], raise: &[f64], lower: &[f64]) -> Vec<f64> {
    let mut z = vec![0.0; p.n()];
    let spread = (p.b() - 3) as f64;
    for (r, &clique) in order.iter().enumerate() {
        let internal = p.internal_indices(clique);
        let block = &mut z[internal];
        block[0] = raise[r];
        block[1] = -lower[r];
        let rest = -(raise[r] - lower[r]) / spread;
        block[2..].fill(rest);
    }
    z
}

fn gaps(u: &[f64], order: &[usize]) -> Vec<f64> {
    order
        .windows(2)
        .map(|w| (u[w[1]] - u[w[0]]) * 0.5 * (1.0 + OVERLAP_MARGIN))
        .collect()
}

/// Perturbation `z` with `P_W z = 0` such that `x + z` does not recover all
/// cliques: each gap between neighbouring sorted blocks is closed half from
/// below and half from above.
pub fn construct_breaking_perturbation(p: RocParams, x: &[f64]) -> Result<Vec<f64>> {
    let (u, order) = sorted_blocks(p, x)?;
    let half = gaps(&u, &order);
    let q = p.q();
    let mut raise = vec![0.0; q];
    let mut lower = vec![0.0; q];
    for (r, h) in half.iter().enumerate() {
        raise[r] = *h;
        lower[r + 1] = *h;
    }
    Ok(assemble(p, &order, &raise, &lower))
}

/// Like [`construct_breaking_perturbation`], but each gap's closure is split
/// between its two blocks so as to minimize `||z||`. The split is the exact
/// minimizer of a tridiagonal quadratic, clamped so both parts stay
/// nonnegative.
pub fn construct_refined_perturbation(p: RocParams, x: &[f64]) -> Result<Vec<f64>> {
    let (u, order) = sorted_blocks(p, x)?;
    let g: Vec<f64> = gaps(&u, &order).iter().map(|h| 2.0 * h).collect();
    let m = g.len();
    let k = 1.0 / (p.b() - 3) as f64;

    // (2+2k) a_j + k a_{j-1} + k a_{j+1} = (1+k) G_j + k G_{j-1}
    let diag = 2.0 + 2.0 * k;
    let mut c_prime = vec![0.0; m];
    let mut d_prime = vec![0.0; m];
    for j in 0..m {
        let rhs = (1.0 + k) * g[j] + if j > 0 { k * g[j - 1] } else { 0.0 };
        let (denom, carried) = if j == 0 {
            (diag, 0.0)
        } else {
            (diag - k * c_prime[j - 1], k * d_prime[j - 1])
        };
        c_prime[j] = k / denom;
        d_prime[j] = (rhs - carried) / denom;
    }
    let mut a = vec![0.0; m];
    for j in (0..m).rev() {
        let next = if j + 1 < m { a[j + 1] } else { 0.0 };
        a[j] = d_prime[j] - c_prime[j] * next;
    }

    let q = p.q();
    let mut raise = vec![0.0; q];
    let mut lower = vec![0.0; q];
    for j in 0..m {
        let aj = a[j].clamp(0.0, g[j]);
        raise[j] = aj;
        lower[j + 1] = g[j] - aj;
    }
    Ok(assemble(p, &order, &raise, &lower))
}

/// Result of searching for the smallest recovery-breaking perturbation.
#[derive(Debug, Clone, PartialEq)]
pub struct FailureSearch {
    /// Norm of `perturbation`, or `+inf` when no failure was found.
    pub norm: f64,
    pub perturbation: Option<Vec<f64>>,
}

fn bisect_scale(p: RocParams, x: &[f64], z: &[f64], steps: usize, corners: Corners) -> Result<Option<f64>> {
    let shifted = |s: f64| -> Vec<f64> { x.iter().zip(z).map(|(a, b)| a + s * b).collect() };
    if recovers_all_cliques(p, &shifted(1.0), corners)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..steps {
        let mid = 0.5 * (lo + hi);
        if recovers_all_cliques(p, &shifted(mid), corners)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(hi))
}

/// Bisection on the scale of the even-split and refined constructions; returns
/// the smaller failing perturbation found.
pub fn minimal_failure_search(p: RocParams, x: &[f64], budget: usize, corners: Corners) -> Result<FailureSearch> {
    let mut best = FailureSearch {
        norm: f64::INFINITY,
        perturbation: None,
    };
    for z in [construct_breaking_perturbation(p, x)?, construct_refined_perturbation(p, x)?] {
        if let Some(s) = bisect_scale(p, x, &z, budget, corners)? {
            let scaled: Vec<f64> = z.iter().map(|v| s * v).collect();
            let nz = norm(&scaled);
            if nz < best.norm {
                best = FailureSearch {
                    norm: nz,
                    perturbation: Some(scaled),
                };
            }
        }
    }
    Ok(best)
}

/// Smallest norm found by [`minimal_failure_search`] with corners counted as
/// clique members; `+inf` if the budget finds no failure.
pub fn empirical_min_failure_norm(p: RocParams, x: &[f64], search_budget: usize) -> Result<f64> {
    Ok(minimal_failure_search(p, x, search_budget, Corners::Include)?.norm)
}

/// The branch-1 signal vectors with modes `k = 1..ceil(q/2)-1`, cosine then
/// sine, each normalized.
pub fn signal_blend_basis(p: RocParams) -> Vec<Vec<f64>> {
    let top = p.q().div_ceil(2);
    let mut basis = Vec::new();
    for k in 1..top {
        for phase in [Phase::Cos, Phase::Sin] {
            let v = signal_vector(p, k, Branch::One, phase).expect("valid mode");
            basis.push(normalized(&v));
        }
    }
    basis
}

/// Unit vector with independent standard normal coefficients on
/// [`signal_blend_basis`], drawn from `ChaCha8Rng` seeded with `seed`.
pub fn random_signal_blend(p: RocParams, seed: u64) -> Vec<f64> {
    blend_from_basis(&signal_blend_basis(p), p.n(), seed)
}

fn blend_from_basis(basis: &[Vec<f64>], n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; n];
    for v in basis {
        let c: f64 = StandardNormal.sample(&mut rng);
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += c * vi;
        }
    }
    normalized(&x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationReport {
    pub n: usize,
    pub b: usize,
    pub q: usize,
    pub seed: u64,
    /// `(1+2qn)^{-1/2} ||x||`.
    pub lower_bound: f64,
    pub constructed_norm: f64,
    pub empirical_min_norm: f64,
    /// Whether `x + z` still recovers every clique for the constructed `z`.
    pub recovered_after: bool,
}

/// Builds the report for one blend: both constructions plus an independent
/// recheck of the constructed perturbation.
pub fn perturbation_report(p: RocParams, seed: u64, x: &[f64], budget: usize) -> Result<PerturbationReport> {
    let z = construct_breaking_perturbation(p, x)?;
    let y: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a + b).collect();
    Ok(PerturbationReport {
        n: p.n(),
        b: p.b(),
        q: p.q(),
        seed,
        lower_bound: perturbation_lower_bound(p) * norm(x),
        constructed_norm: norm(&z),
        empirical_min_norm: empirical_min_failure_norm(p, x, budget)?,
        recovered_after: recovers_all_cliques(p, &y, Corners::Include)?,
    })
}

/// How `(b, q)` scale with `n` in the perturbation experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScalingMode {
    /// `q = 25`, `b = n / 25`.
    FixedQ,
    /// `b = 25`, `q = n / 25`.
    FixedB,
    /// `b = q = sqrt(n)`.
    Sqrt,
}

impl ScalingMode {
    pub fn params(self, n: usize) -> Result<RocParams> {
        let (b, q) = match self {
            ScalingMode::FixedQ => (n / 25, 25),
            ScalingMode::FixedB => (25, n / 25),
            ScalingMode::Sqrt => {
                let r = (n as f64).sqrt().round() as usize;
                (r, r)
            }
        };
        if b * q != n {
            return Err(Error::InvalidArgument(format!(
                "n={n} is not compatible with mode {self:?}"
            )));
        }
        RocParams::new(b, q)
    }
}

/// One report per seed in `0..samples` for each `n`, rows ordered by
/// `(n, seed)`. Seeds run in parallel.
pub fn perturbation_experiment(
    mode: ScalingMode,
    ns: &[usize],
    samples: usize,
    budget: usize,
) -> Result<Vec<PerturbationReport>> {
    let mut rows = Vec::with_capacity(ns.len() * samples);
    for &n in ns {
        let p = mode.params(n)?;
        let basis = signal_blend_basis(p);
        let batch: Result<Vec<_>> = (0..samples as u64)
            .into_par_iter()
            .map(|seed| {
                let x = blend_from_basis(&basis, p.n(), seed);
                perturbation_report(p, seed, &x, budget)
            })
            .collect();
        rows.extend(batch?);
    }
    Ok(rows)
}

/// CSV with header `n,b,q,seed,lower_bound,constructed_norm,empirical_min_norm`.
pub fn write_reports_csv<W: Write>(rows: &[PerturbationReport], writer: W) -> Result<()> {
    let mut out = BufWriter::new(writer);
    writeln!(out, "n,b,q,seed,lower_bound,constructed_norm,empirical_min_norm")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{:.6e},{:.6e},{:.6e}",
            r.n, r.b, r.q, r.seed, r.lower_bound, r.constructed_norm, r.empirical_min_norm
        )?;
    }
    out.flush()?;
    Ok(())
}

/// `x` is in `W` and orthogonal to `1` up to rounding.
pub fn is_admissible_blend(p: RocParams, x: &[f64]) -> bool {
    let ones = vec![1.0; x.len()];
    let Ok(pw) = project_w(p, x) else {
        return false;
    };
    let nx = norm(x);
    let off = x.iter().zip(&pw).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    off <= 1e-10 * nx && dot(x, &ones).abs() <= 1e-10 * nx * (x.len() as f64).sqrt()
}
