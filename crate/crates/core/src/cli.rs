//! Command-line front end. Exit codes: 0 success, 1 usage or I/O error,
//! 2 solver did not reach its tolerance.
//!
//! Batch commands parallelize over seeds with rayon; set `RAYON_NUM_THREADS`
//! to control the thread count. Output does not depend on it.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{load_graph, save_matrix_market, write_edge_list};
use crate::partition::sweep_profile;
use crate::perturb::{perturbation_experiment, write_reports_csv, ScalingMode, DEFAULT_BUDGET};
use crate::roc::{
    asymptotic_eigengap, asymptotic_fiedler, build_graph, closed_form_spectrum, roc_residual_tolerance,
    RocParams, SpectrumRow,
};
use crate::solver::{
    kstar, power_method, random_start, write_trace_csv, write_trace_csv_full, zeta, SolverConfig, StopRule,
    SolverTrace,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "roc", about = "Spectral partitioning experiments on rings of cliques")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the edge list of R_{b,q}.
    Gen(GenArgs),
    /// Closed-form spectrum and asymptotic estimates.
    Spectrum(SpectrumArgs),
    /// Deflated power method with sweep-cut partition.
    Solve(SolveArgs),
    /// Minimal recovery-breaking perturbations over random signal blends.
    Perturb(PerturbArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    b: usize,
    #[arg(long)]
    q: usize,
    /// Output path; `.mtx` writes Matrix Market. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long, required_unless_present = "grid")]
    b: Option<usize>,
    #[arg(long, required_unless_present = "grid")]
    q: Option<usize>,
    /// Exact vs asymptotic gaps for b in {10,100,1000} and dyadic q from 8 to 8192, as CSV.
    #[arg(long, conflicts_with_all = ["b", "q"])]
    grid: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Edge list or `.mtx` file; otherwise `--b` and `--q` select a ring of cliques.
    #[arg(long, conflicts_with_all = ["b", "q"], required_unless_present_all = ["b", "q"])]
    graph: Option<PathBuf>,
    #[arg(long, requires = "q")]
    b: Option<usize>,
    #[arg(long, requires = "b")]
    q: Option<usize>,
    /// Seed of the standard normal starting vector.
    #[arg(long, default_value_t = 0, conflicts_with = "seeds")]
    seed: u64,
    /// Run seeds 0..N and write one trace per seed.
    #[arg(long)]
    seeds: Option<u64>,
    /// Residual tolerance. For rings of cliques defaults to C/(q sqrt n).
    #[arg(long)]
    tol: Option<f64>,
    /// Constant C of the default ring-of-cliques tolerance.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1000)]
    max_iter: usize,
    /// Run exactly `--max-iter` iterations instead of stopping at the tolerance.
    #[arg(long)]
    fixed: bool,
    /// Trace CSV path; defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the trace with full precision and the raw noise column.
    #[arg(long)]
    full: bool,
    /// Vertex-to-side CSV of the best sweep cut of the final iterate.
    #[arg(long)]
    partition: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    FixedQ,
    FixedB,
    Sqrt,
}

#[derive(Debug, Args)]
struct PerturbArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [625usize, 2500, 10000])]
    n: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Per-sample CSV path; defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a, stdout),
        Command::Spectrum(a) => spectrum(a, stdout),
        Command::Solve(a) => solve(a, stdout, stderr),
        Command::Perturb(a) => perturb(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn with_output<F>(path: Option<&Path>, stdout: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => f(&mut File::create(p)?),
        None => f(stdout),
    }
}

fn gen(a: GenArgs, stdout: &mut dyn Write) -> Result<i32> {
    let p = RocParams::new(a.b, a.q)?;
    let g = build_graph(p);
    let summary = format!(
        "n={} m={} d_min={} d_max={}",
        g.n(),
        g.edge_count(),
        g.min_degree(),
        g.max_degree()
    );
    match &a.out {
        Some(path) if path.extension().is_some_and(|e| e == "mtx") => save_matrix_market(&g, path)?,
        Some(path) => write_edge_list(&g, File::create(path)?)?,
        None => write_edge_list(&g, &mut *stdout)?,
    }
    if a.out.is_some() {
        writeln!(stdout, "{summary}")?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SpectrumReport {
    b: usize,
    q: usize,
    n: usize,
    rows: Vec<SpectrumRow>,
    lambda_q: f64,
    lambda_q_plus_1: f64,
    lambda_star: f64,
    fiedler_exact: f64,
    fiedler_asymptotic: f64,
    eigengap_exact: f64,
    eigengap_asymptotic: f64,
    kstar: Option<usize>,
    zeta: f64,
}

fn spectrum(a: SpectrumArgs, stdout: &mut dyn Write) -> Result<i32> {
    if a.grid {
        with_output(a.out.as_deref(), stdout, |w| {
            writeln!(w, "b,q,fiedler_exact,fiedler_asymptotic,eigengap_exact,eigengap_asymptotic")?;
            for b in [10usize, 100, 1000] {
                for e in 3..=13 {
                    let p = RocParams::new(b, 1 << e)?;
                    let s = closed_form_spectrum(p);
                    writeln!(
                        w,
                        "{b},{},{:.16e},{:.16e},{:.16e},{:.16e}",
                        p.q(),
                        s.fiedler_laplacian(),
                        asymptotic_fiedler(p),
                        s.eigengap(),
                        asymptotic_eigengap(p)
                    )?;
                }
            }
            Ok(())
        })?;
        return Ok(EXIT_OK);
    }
    let (b, q) = (a.b.expect("required"), a.q.expect("required"));
    let p = RocParams::new(b, q)?;
    let s = closed_form_spectrum(p);
    let report = SpectrumReport {
        b,
        q,
        n: p.n(),
        rows: s.rows(),
        lambda_q: s.lambda_q(),
        lambda_q_plus_1: s.lambda_q_plus_1(),
        lambda_star: s.lambda_star(),
        fiedler_exact: s.fiedler_laplacian(),
        fiedler_asymptotic: asymptotic_fiedler(p),
        eigengap_exact: s.eigengap(),
        eigengap_asymptotic: asymptotic_eigengap(p),
        kstar: kstar(p).ok(),
        zeta: zeta(p),
    };
    with_output(a.out.as_deref(), stdout, |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        writeln!(w)?;
        Ok(())
    })?;
    Ok(EXIT_OK)
}

fn solve(a: SolveArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let (g, roc): (Graph, Option<RocParams>) = match (&a.graph, a.b, a.q) {
        (Some(path), _, _) => (load_graph(path)?, None),
        (None, Some(b), Some(q)) => {
            let p = RocParams::new(b, q)?;
            (build_graph(p), Some(p))
        }
        _ => return Err(Error::InvalidArgument("give --graph or both --b and --q".into())),
    };
    let tol = match (a.tol, roc) {
        (Some(t), _) => t,
        (None, Some(p)) => roc_residual_tolerance(p, a.c)?,
        (None, None) => 1e-6,
    };
    let cfg = SolverConfig {
        max_iterations: a.max_iter,
        residual_tolerance: tol,
        seed: a.seed,
        record_trace: true,
        stop: if a.fixed { StopRule::Fixed } else { StopRule::Residual },
    };
    let seeds: Vec<u64> = match a.seeds {
        Some(0) => return Err(Error::InvalidArgument("--seeds must be at least 1".into())),
        Some(k) => (0..k).collect(),
        None => vec![a.seed],
    };
    let traces: Vec<(u64, SolverTrace)> = {
        use rayon::prelude::*;
        let runs: Result<Vec<_>> = seeds
            .par_iter()
            .map(|&s| power_method(&g, &random_start(g.n(), s), &cfg, roc).map(|t| (s, t)))
            .collect();
        runs?
    };

    with_output(a.out.as_deref(), stdout, |w| {
        if a.seeds.is_none() {
            let records = &traces[0].1.records;
            return if a.full {
                write_trace_csv_full(records, w)
            } else {
                write_trace_csv(records, w)
            };
        }
        // one header, seed-prefixed rows
        let mut header_done = false;
        for (seed, t) in &traces {
            let mut buf = Vec::new();
            if a.full {
                write_trace_csv_full(&t.records, &mut buf)?;
            } else {
                write_trace_csv(&t.records, &mut buf)?;
            }
            let text = String::from_utf8(buf).expect("ascii csv");
            let mut lines = text.lines();
            let header = lines.next().unwrap_or_default();
            if !header_done {
                writeln!(w, "seed,{header}")?;
                header_done = true;
            }
            for line in lines {
                writeln!(w, "{seed},{line}")?;
            }
        }
        Ok(())
    })?;

    if let Some(path) = &a.partition {
        let x = &traces[0].1.final_iterate;
        let set = sweep_profile(&g, x, true)?.best_set();
        let mut f = File::create(path)?;
        writeln!(f, "vertex,side")?;
        for v in 0..g.n() {
            writeln!(f, "{v},{}", u8::from(set.contains(v)))?;
        }
    }

    let failed: Vec<u64> = traces.iter().filter(|(_, t)| !t.converged).map(|(s, _)| *s).collect();
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        writeln!(
            stderr,
            "residual tolerance {tol:e} not reached within {} iterations for seed(s) {failed:?}",
            a.max_iter
        )?;
        Ok(EXIT_NO_CONVERGENCE)
    }
}

fn perturb(a: PerturbArgs, stdout: &mut dyn Write) -> Result<i32> {
    if a.samples == 0 {
        return Err(Error::InvalidArgument("--samples must be at least 1".into()));
    }
    let mode = match a.mode {
        ModeArg::FixedQ => ScalingMode::FixedQ,
        ModeArg::FixedB => ScalingMode::FixedB,
        ModeArg::Sqrt => ScalingMode::Sqrt,
    };
    let rows = perturbation_experiment(mode, &a.n, a.samples, a.budget)?;
    match &a.out {
        Some(path) => {
            write_reports_csv(&rows, File::create(path)?)?;
            writeln!(stdout, "n,b,q,lower_bound,min_empirical,max_constructed")?;
            for chunk in rows.chunks(a.samples) {
                let r0 = &chunk[0];
                let min_emp = chunk.iter().map(|r| r.empirical_min_norm).fold(f64::INFINITY, f64::min);
                let max_con = chunk.iter().map(|r| r.constructed_norm).fold(0.0, f64::max);
                writeln!(
                    stdout,
                    "{},{},{},{:.6e},{:.6e},{:.6e}",
                    r0.n, r0.b, r0.q, r0.lower_bound, min_emp, max_con
                )?;
            }
        }
        None => write_reports_csv(&rows, &mut *stdout)?,
    }
    Ok(EXIT_OK)
}
