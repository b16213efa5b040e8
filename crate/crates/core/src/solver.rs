//! Deflated power method `x_i = M x_{i-1} / ||M x_{i-1}||` with
//! `M = D^{-1/2} A D^{-1/2} - k k^t`, per-iteration diagnostics, and the
//! iteration bound and failure probability for the ring of cliques.

use std::io::{BufWriter, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{dot, norm, Graph};
use crate::partition::{recovers_all_cliques, splits_clique, sweep_profile, Corners};
use crate::roc::{
    build_graph, closed_form_spectrum, noise_component_norm, signal_vector, Branch, Phase, RocParams,
};
use crate::spectra::cheeger_upper_bound;

/// When the iteration stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StopRule {
    /// Stop once the eigenresidual is at most the tolerance, or at the cap.
    #[default]
    Residual,
    /// Run exactly `max_iterations` iterations.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub residual_tolerance: f64,
    /// Seed for [`random_start`]; not used by [`power_method`] itself.
    pub seed: u64,
    /// Keep every record rather than only the last.
    pub record_trace: bool,
    pub stop: StopRule,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            residual_tolerance: 1e-6,
            seed: 0,
            record_trace: true,
            stop: StopRule::Residual,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be at least 1".into()));
        }
        if !(self.residual_tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "residual tolerance must be positive, got {}",
                self.residual_tolerance
            )));
        }
        Ok(())
    }
}

/// Diagnostics for one normalized iterate `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub i: usize,
    /// `||M x - mu_M x||` with `mu_M = <x, M x>`.
    pub epsilon: f64,
    /// `||(I - P_W) x_i||` on the normalized iterate; ring of cliques only.
    pub pi_miss: Option<f64>,
    /// The same quantity before normalization (`x_0` itself at `i = 0`).
    pub pi_miss_raw: Option<f64>,
    /// Rayleigh quotient against the normalized Laplacian, `1 - <x, A^ x>`.
    pub mu: f64,
    /// Minimum sweep conductance of `D^{-1/2} x_i`; NaN when no threshold
    /// leaves positive volume on both sides.
    pub sweep_phi: f64,
    /// `sqrt(2 mu)`.
    pub cheeger: f64,
    /// Whether `x_i` admits a threshold that keeps every clique whole.
    pub recovers_cliques: Option<bool>,
    /// Whether the best sweep cut of `D^{-1/2} x_i` splits a clique.
    pub best_cut_splits_clique: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverTrace {
    pub records: Vec<IterationRecord>,
    pub final_iterate: Vec<f64>,
    /// Whether the final iterate meets the residual tolerance.
    pub converged: bool,
    pub iterations: usize,
}

impl SolverTrace {
    pub fn last(&self) -> &IterationRecord {
        self.records.last().expect("at least one record")
    }
}

/// Standard normal vector from `ChaCha8Rng` seeded with `seed`.
pub fn random_start(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

fn record(
    g: &Graph,
    roc: Option<RocParams>,
    i: usize,
    x: &[f64],
    raw: &[f64],
    mx: &[f64],
    ax: &[f64],
) -> Result<IterationRecord> {
    let mu_m = dot(x, mx);
    let epsilon = mx
        .iter()
        .zip(x)
        .map(|(m, xi)| (m - mu_m * xi).powi(2))
        .sum::<f64>()
        .sqrt();
    let mu = (1.0 - dot(x, ax)).max(0.0);
    // A tiny or tied iterate can leave no threshold with positive volume on
    // both sides; the sweep columns are then undefined rather than fatal.
    let profile = match sweep_profile(g, x, true) {
        Ok(p) => Some(p),
        Err(Error::ZeroVolume | Error::ConstantVector) => None,
        Err(e) => return Err(e),
    };
    let (pi_miss, pi_miss_raw, recovers, splits) = match roc {
        Some(p) => (
            Some(noise_component_norm(p, x)?),
            Some(noise_component_norm(p, raw)?),
            Some(recovers_all_cliques(p, x, Corners::Include)?),
            match &profile {
                Some(prof) => Some(splits_clique(p, &prof.best_set(), Corners::Include)?),
                None => None,
            },
        ),
        None => (None, None, None, None),
    };
    Ok(IterationRecord {
        i,
        epsilon,
        pi_miss,
        pi_miss_raw,
        mu,
        sweep_phi: profile.as_ref().map_or(f64::NAN, |p| p.min_conductance()),
        cheeger: cheeger_upper_bound(mu)?,
        recovers_cliques: recovers,
        best_cut_splits_clique: splits,
    })
}

/// Runs the deflated power method from `x0`. Iterate 0 is `x0 / ||x0||`.
///
/// Pass `roc` when `g` is a ring of cliques to fill the clique-specific
/// columns.
pub fn power_method(g: &Graph, x0: &[f64], cfg: &SolverConfig, roc: Option<RocParams>) -> Result<SolverTrace> {
    cfg.validate()?;
    let n = g.n();
    if x0.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: x0.len(),
        });
    }
    if let Some(p) = roc {
        if p.n() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: p.n(),
            });
        }
    }
    let n0 = norm(x0);
    if n0 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let k = g.perron_vector();
    let kx = dot(k, x0);
    let off_k = (x0.iter().zip(k).map(|(a, b)| (a - kx * b).powi(2)).sum::<f64>()).sqrt();
    if off_k <= 1e-14 * n0 {
        return Err(Error::DegenerateStart);
    }

    let mut raw = x0.to_vec();
    let mut x: Vec<f64> = x0.iter().map(|v| v / n0).collect();
    let mut ax = vec![0.0; n];
    let mut mx = vec![0.0; n];
    let mut records = Vec::new();
    let mut i = 0;
    loop {
        g.normalized_adjacency_into(&x, &mut ax)?;
        let kx = dot(k, &x);
        for ((m, a), kk) in mx.iter_mut().zip(&ax).zip(k) {
            *m = a - kx * kk;
        }
        let rec = record(g, roc, i, &x, &raw, &mx, &ax)?;
        let done_tol = cfg.stop == StopRule::Residual && rec.epsilon <= cfg.residual_tolerance;
        if cfg.record_trace || done_tol || i == cfg.max_iterations {
            records.push(rec);
        }
        if done_tol || i == cfg.max_iterations {
            break;
        }
        let nm = norm(&mx);
        if nm == 0.0 {
            return Err(Error::ZeroVector);
        }
        raw.copy_from_slice(&mx);
        for (xi, m) in x.iter_mut().zip(&mx) {
            *xi = m / nm;
        }
        i += 1;
    }
    if !cfg.record_trace && records.len() > 1 {
        records.drain(..records.len() - 1);
    }
    let converged = records.last().is_some_and(|r| r.epsilon <= cfg.residual_tolerance);
    Ok(SolverTrace {
        records,
        final_iterate: x,
        converged,
        iterations: i,
    })
}

/// `ceil((ln 4 + ln(b-1) + ln(1+2qn)) / (2 ln(lambda_q / lambda_*)))` with
/// `lambda_* = max(|lambda_{q+1}|, |lambda_n|)`: after this many iterations
/// a sweep cut makes no clique errors with probability at least `1 - zeta`.
pub fn kstar(p: RocParams) -> Result<usize> {
    let s = closed_form_spectrum(p);
    let (lq, ls) = (s.lambda_q(), s.lambda_star());
    if !(lq > ls) {
        return Err(Error::InvalidArgument(format!(
            "signal band does not dominate: lambda_q={lq}, lambda_*={ls}"
        )));
    }
    let (b, q, n) = (p.b() as f64, p.q() as f64, p.n() as f64);
    let num = 4f64.ln() + (b - 1.0).ln() + (1.0 + 2.0 * q * n).ln();
    Ok((num / (2.0 * (lq / ls).ln())).ceil().max(1.0) as usize)
}

/// `(e^{7/8}/8)^{q/2} + (2/e)^{(n-q)/2}`.
pub fn zeta(p: RocParams) -> f64 {
    let (q, n) = (p.q() as f64, p.n() as f64);
    ((7.0f64 / 8.0).exp() / 8.0).powf(q / 2.0) + (2.0 / std::f64::consts::E).powf((n - q) / 2.0)
}

/// Closed-form reference values for the ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactRow {
    /// `lambda_2` of the normalized Laplacian.
    pub lambda2: f64,
    /// Minimum sweep conductance of the degree-scaled Fiedler vector.
    pub phi: f64,
    /// `sqrt(2 lambda_2)`.
    pub cheeger: f64,
}

pub fn exact_row(p: RocParams) -> Result<ExactRow> {
    let lambda2 = closed_form_spectrum(p).fiedler_laplacian();
    let g = build_graph(p);
    let v2 = signal_vector(p, 1, Branch::One, Phase::Cos)?;
    Ok(ExactRow {
        lambda2,
        phi: sweep_profile(&g, &v2, true)?.min_conductance(),
        cheeger: (2.0 * lambda2).sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableExperiment {
    pub params: RocParams,
    /// `(seed, trace)` in the order the seeds were given.
    pub runs: Vec<(u64, SolverTrace)>,
    pub exact: ExactRow,
}

/// Runs `iterations` deflated power iterations from a seeded standard normal
/// start for each seed, in parallel.
pub fn run_table_experiment(p: RocParams, seeds: &[u64], iterations: usize) -> Result<TableExperiment> {
    let g = build_graph(p);
    let cfg = SolverConfig {
        max_iterations: iterations,
        stop: StopRule::Fixed,
        ..SolverConfig::default()
    };
    let runs: Result<Vec<_>> = seeds
        .par_iter()
        .map(|&seed| {
            let x0 = random_start(p.n(), seed);
            power_method(&g, &x0, &cfg, Some(p)).map(|t| (seed, t))
        })
        .collect();
    Ok(TableExperiment {
        params: p,
        runs: runs?,
        exact: exact_row(p)?,
    })
}

fn opt(v: Option<f64>, f: impl Fn(f64) -> String) -> String {
    v.map_or_else(|| "nan".to_string(), f)
}

fn six(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    format!("{v:.5e}")
}

fn full(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    format!("{v:.16e}")
}

/// CSV with columns `i,epsilon,pi_miss,mu,phi,cheeger`, 6 significant
/// digits; `pi_miss` is taken on the normalized iterate.
pub fn write_trace_csv<W: Write>(records: &[IterationRecord], writer: W) -> Result<()> {
    let mut out = BufWriter::new(writer);
    writeln!(out, "i,epsilon,pi_miss,mu,phi,cheeger")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.i,
            six(r.epsilon),
            opt(r.pi_miss, six),
            six(r.mu),
            six(r.sweep_phi),
            six(r.cheeger)
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Full-precision trace with the pre-normalization `pi_miss_raw` column.
pub fn write_trace_csv_full<W: Write>(records: &[IterationRecord], writer: W) -> Result<()> {
    let mut out = BufWriter::new(writer);
    writeln!(out, "i,epsilon,pi_miss,pi_miss_raw,mu,phi,cheeger")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.i,
            full(r.epsilon),
            opt(r.pi_miss, full),
            opt(r.pi_miss_raw, full),
            full(r.mu),
            full(r.sweep_phi),
            full(r.cheeger)
        )?;
    }
    out.flush()?;
    Ok(())
}

impl TableExperiment {
    /// One row per `(seed, iteration)` followed by the closed-form row
    /// (`seed` and `i` written as `exact` and `inf`).
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = BufWriter::new(writer);
        writeln!(out, "seed,i,epsilon,pi_miss,mu,phi,cheeger")?;
        for (seed, trace) in &self.runs {
            for r in &trace.records {
                writeln!(
                    out,
                    "{seed},{},{},{},{},{},{}",
                    r.i,
                    six(r.epsilon),
                    opt(r.pi_miss, six),
                    six(r.mu),
                    six(r.sweep_phi),
                    six(r.cheeger)
                )?;
            }
        }
        let e = &self.exact;
        writeln!(
            out,
            "exact,inf,{},{},{},{},{}",
            six(0.0),
            six(0.0),
            six(e.lambda2),
            six(e.phi),
            six(e.cheeger)
        )?;
        out.flush()?;
        Ok(())
    }
}
