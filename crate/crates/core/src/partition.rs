//! Sweep cuts `S_x(t) = {i : x_i > t}`, their conductance profile,
//! robustness of a good cut to pointwise perturbation, and the
//! clique-recovery predicate for the ring of cliques.

use std::io::{BufWriter, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, VolumeConvention};
use crate::io::full_precision;
use crate::roc::RocParams;
use crate::spectra::Checked;

/// One proper prefix cut of the sorted order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCut {
    /// Midpoint between the smallest value inside and the largest outside.
    pub threshold: f64,
    /// Smallest value inside the cut.
    pub upper: f64,
    /// Largest value outside the cut.
    pub lower: f64,
    /// Number of vertices inside the cut.
    pub size: usize,
    pub cut: f64,
    pub min_volume: f64,
    pub conductance: f64,
}

/// Conductance of every proper sweep cut of one vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepProfile {
    /// Vertices sorted by value descending, ties by index ascending.
    pub order: Vec<usize>,
    /// The swept values (after optional degree scaling), indexed by vertex.
    pub values: Vec<f64>,
    /// Prefix cuts with positive minimum volume, in sweep order.
    pub cuts: Vec<SweepCut>,
    /// Index into `cuts` of the smallest conductance (first on ties).
    pub argmin: usize,
}

impl SweepProfile {
    pub fn best(&self) -> &SweepCut {
        &self.cuts[self.argmin]
    }

    pub fn min_conductance(&self) -> f64 {
        self.best().conductance
    }

    /// The vertex set of `cuts[idx]`.
    pub fn cut_set(&self, idx: usize) -> VertexSet {
        let mut mask = vec![false; self.order.len()];
        for &v in &self.order[..self.cuts[idx].size] {
            mask[v] = true;
        }
        VertexSet::from_mask(mask)
    }

    pub fn best_set(&self) -> VertexSet {
        self.cut_set(self.argmin)
    }

    /// CSV with header `threshold,cut,min_vol,conductance`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = BufWriter::new(writer);
        writeln!(out, "threshold,cut,min_vol,conductance")?;
        for c in &self.cuts {
            writeln!(
                out,
                "{},{},{},{}",
                full_precision(c.threshold),
                full_precision(c.cut),
                full_precision(c.min_volume),
                full_precision(c.conductance)
            )?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Sweep profile with ordered-pair volumes. With `scale_by_degree` the
/// vector swept is `D^{-1/2} x`.
pub fn sweep_profile(g: &Graph, x: &[f64], scale_by_degree: bool) -> Result<SweepProfile> {
    sweep_profile_with(g, x, scale_by_degree, VolumeConvention::OrderedPairs)
}

pub fn sweep_profile_with(
    g: &Graph,
    x: &[f64],
    scale_by_degree: bool,
    convention: VolumeConvention,
) -> Result<SweepProfile> {
    let n = g.n();
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let values: Vec<f64> = if scale_by_degree {
        x.iter().zip(g.inv_sqrt_degrees()).map(|(a, s)| a * s).collect()
    } else {
        x.to_vec()
    };
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidArgument("vector contains NaN".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));

    let total = g.total_volume();
    let mut inside = vec![false; n];
    let mut cut = 0.0;
    let mut pair_vol = 0.0;
    let mut degree_vol = 0.0;
    let mut cuts = Vec::new();
    let mut any_boundary = false;
    // Edge counts on each side decide exactly when a pair volume is zero;
    // the subtraction below can leave a rounding residue instead.
    let mut edges_in = 0usize;
    let mut edges_out = g.edge_count();

    let mut pos = 0;
    while pos < n {
        let value = values[order[pos]];
        while pos < n && values[order[pos]] == value {
            let v = order[pos];
            for (u, w) in g.neighbors(v) {
                if inside[u] {
                    cut -= w;
                    pair_vol += 2.0 * w;
                    edges_in += 1;
                } else {
                    cut += w;
                    edges_out -= 1;
                }
            }
            inside[v] = true;
            degree_vol += g.degree(v);
            pos += 1;
        }
        if pos == n {
            break;
        }
        any_boundary = true;
        let (vol_in, vol_out) = match convention {
            VolumeConvention::OrderedPairs if edges_in == 0 || edges_out == 0 => (0.0, 0.0),
            VolumeConvention::OrderedPairs => (pair_vol, total - pair_vol - 2.0 * cut),
            VolumeConvention::DegreeSum => (degree_vol, total - degree_vol),
        };
        let min_volume = vol_in.min(vol_out);
        if min_volume <= 0.0 {
            continue;
        }
        let lower = values[order[pos]];
        cuts.push(SweepCut {
            threshold: 0.5 * value + 0.5 * lower,
            upper: value,
            lower,
            size: pos,
            cut,
            min_volume,
            conductance: cut / min_volume,
        });
    }
    if !any_boundary {
        return Err(Error::ConstantVector);
    }
    if cuts.is_empty() {
        return Err(Error::ZeroVolume);
    }
    let mut argmin = 0;
    for (i, c) in cuts.iter().enumerate() {
        if c.conductance < cuts[argmin].conductance {
            argmin = i;
        }
    }
    Ok(SweepProfile {
        order,
        values,
        cuts,
        argmin,
    })
}

/// `min_t phi(S_x(t))` with ordered-pair volumes.
pub fn min_sweep_conductance(g: &Graph, x: &[f64], scale_by_degree: bool) -> Result<f64> {
    Ok(sweep_profile(g, x, scale_by_degree)?.min_conductance())
}

/// `g_v`: the largest half-gap `(v_upper - v_lower)/2` over sweep cuts of `v`
/// with conductance at most `psi`. Any perturbation with infinity norm below
/// `g_v` leaves at least one such cut intact.
///
/// `v` is swept as given. When no cut qualifies the value is 0 and the
/// hypothesis flag is false.
pub fn robustness(g: &Graph, v: &[f64], psi: f64) -> Result<Checked> {
    let profile = sweep_profile(g, v, false)?;
    let best = profile
        .cuts
        .iter()
        .filter(|c| c.conductance <= psi)
        .map(|c| 0.5 * (c.upper - c.lower))
        .fold(None, |acc: Option<f64>, h| Some(acc.map_or(h, |a| a.max(h))));
    Ok(match best {
        Some(value) => Checked {
            value,
            hypothesis_holds: true,
        },
        None => Checked {
            value: 0.0,
            hypothesis_holds: false,
        },
    })
}

/// Whether corners count as members of their clique when testing recovery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Corners {
    #[default]
    Include,
    Exclude,
}

fn member_range(p: RocParams, clique: usize, corners: Corners) -> std::ops::Range<usize> {
    match corners {
        Corners::Include => p.block(clique),
        Corners::Exclude => p.internal_indices(clique),
    }
}

/// True iff some threshold puts every clique entirely on one side with at
/// least one clique on each side.
pub fn recovers_all_cliques(p: RocParams, y: &[f64], corners: Corners) -> Result<bool> {
    if y.len() != p.n() {
        return Err(Error::LengthMismatch {
            expected: p.n(),
            got: y.len(),
        });
    }
    let mut spans: Vec<(f64, f64)> = (0..p.q())
        .map(|i| {
            y[member_range(p, i, corners)]
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                })
        })
        .collect();
    // A block below the threshold drags every block with a smaller maximum
    // down with it, so only prefixes in order of maximum need checking.
    spans.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut suffix_min_lo = vec![f64::INFINITY; spans.len() + 1];
    for i in (0..spans.len()).rev() {
        suffix_min_lo[i] = suffix_min_lo[i + 1].min(spans[i].0);
    }
    let mut max_hi = f64::NEG_INFINITY;
    for r in 1..spans.len() {
        max_hi = max_hi.max(spans[r - 1].1);
        if max_hi < suffix_min_lo[r] {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `s` separates two vertices of the same clique.
pub fn splits_clique(p: RocParams, s: &VertexSet, corners: Corners) -> Result<bool> {
    if s.n() != p.n() {
        return Err(Error::LengthMismatch {
            expected: p.n(),
            got: s.n(),
        });
    }
    Ok((0..p.q()).any(|i| {
        let mut r = member_range(p, i, corners);
        let first = s.contains(r.next().expect("nonempty block"));
        r.any(|v| s.contains(v) != first)
    }))
}
