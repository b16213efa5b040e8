//! Sparse undirected weighted graphs and the operators built on them.
//!
//! A [`Graph`] stores its adjacency in compressed row form with both
//! directions of every edge present, so row `i` lists the neighbors of
//! vertex `i` in ascending order. Alongside the adjacency it caches the
//! degree vector, `D^{-1/2}`, and the unit Perron vector
//! `k = D^{1/2} 1 / ||D^{1/2} 1||` used for deflation.
//!
//! Volumes follow the ordered-pair convention `vol(S) = sum_{i,j in S} a_ij`
//! unless [`VolumeConvention::DegreeSum`] is requested explicitly.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Row count above which operator applications fan out over threads.
const PARALLEL_ROWS: usize = 8192;

/// Which definition of `vol(S)` a conductance computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VolumeConvention {
    /// `sum_{i,j in S} a_ij`: internal edges counted twice, boundary edges excluded.
    #[default]
    OrderedPairs,
    /// `sum_{i in S} d_i`.
    DegreeSum,
}

#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    degrees: Vec<f64>,
    inv_sqrt_degrees: Vec<f64>,
    perron: Vec<f64>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an undirected edge list.
    ///
    /// Each edge may be given in either orientation; repeated pairs have
    /// their weights summed. Self-loops, nonpositive weights, out-of-range
    /// endpoints, and isolated vertices are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut directed = Vec::with_capacity(2 * edges.len());
        for &(i, j, weight) in edges {
            if i >= n || j >= n {
                return Err(Error::VertexOutOfRange { i, j, n });
            }
            if i == j {
                return Err(Error::SelfLoop { i, j });
            }
            if !(weight > 0.0) || !weight.is_finite() {
                return Err(Error::NonPositiveWeight { i, j, weight });
            }
            directed.push((i, j, weight));
            directed.push((j, i, weight));
        }
        directed.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::with_capacity(directed.len());
        let mut weights: Vec<f64> = Vec::with_capacity(directed.len());
        let mut rows = Vec::with_capacity(directed.len());
        for (i, j, w) in directed {
            if rows.last() == Some(&i) && targets.last() == Some(&j) {
                *weights.last_mut().expect("nonempty") += w;
            } else {
                rows.push(i);
                targets.push(j);
                weights.push(w);
            }
        }
        for &i in &rows {
            offsets[i + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }

        let degrees: Vec<f64> = (0..n)
            .map(|i| weights[offsets[i]..offsets[i + 1]].iter().sum())
            .collect();
        if let Some(v) = degrees.iter().position(|&d| d <= 0.0) {
            return Err(Error::IsolatedVertex(v));
        }
        let inv_sqrt_degrees = degrees.iter().map(|d| 1.0 / d.sqrt()).collect();
        let sqrt_norm = degrees.iter().sum::<f64>().sqrt();
        let perron = degrees.iter().map(|d| d.sqrt() / sqrt_norm).collect();

        Ok(Self {
            offsets,
            targets,
            weights,
            degrees,
            inv_sqrt_degrees,
            perron,
        })
    }

    /// Builds a graph from an edge list, inferring `n` as one past the largest index.
    pub fn from_edge_list(edges: &[(usize, usize, f64)]) -> Result<Self> {
        let n = edges
            .iter()
            .map(|&(i, j, _)| i.max(j) + 1)
            .max()
            .unwrap_or(0);
        Self::from_edges(n, edges)
    }

    /// Builds an unweighted graph (every edge weight 1.0).
    pub fn from_unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let weighted: Vec<_> = edges.iter().map(|&(i, j)| (i, j, 1.0)).collect();
        Self::from_edges(n, &weighted)
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.degrees[i]
    }

    pub fn min_degree(&self) -> f64 {
        self.degrees.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_degree(&self) -> f64 {
        self.degrees.iter().copied().fold(0.0, f64::max)
    }

    /// `D^{-1/2}` as a vector.
    pub fn inv_sqrt_degrees(&self) -> &[f64] {
        &self.inv_sqrt_degrees
    }

    /// Unit eigenvector of the normalized adjacency for eigenvalue 1.
    pub fn perron_vector(&self) -> &[f64] {
        &self.perron
    }

    /// Neighbors of `i` (ascending) with their edge weights.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[i]..self.offsets[i + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    /// Weight of edge `(i, j)`, or 0 when absent.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        let range = self.offsets[i]..self.offsets[i + 1];
        match self.targets[range.clone()].binary_search(&j) {
            Ok(pos) => self.weights[range.start + pos],
            Err(_) => 0.0,
        }
    }

    /// Each undirected edge once, as `(i, j, w)` with `i < j`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n()).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&(j, _)| i < j)
                .map(move |(j, w)| (i, j, w))
        })
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: len,
            });
        }
        Ok(())
    }

    /// `out = D^{-1/2} A D^{-1/2} x`.
    pub fn normalized_adjacency_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.check_len(x.len())?;
        self.check_len(out.len())?;
        let row = |i: usize| {
            let mut acc = 0.0;
            for p in self.offsets[i]..self.offsets[i + 1] {
                let j = self.targets[p];
                acc += self.weights[p] * self.inv_sqrt_degrees[j] * x[j];
            }
            acc * self.inv_sqrt_degrees[i]
        };
        if self.n() >= PARALLEL_ROWS {
            out.par_iter_mut().enumerate().for_each(|(i, o)| *o = row(i));
        } else {
            out.iter_mut().enumerate().for_each(|(i, o)| *o = row(i));
        }
        Ok(())
    }

    /// Applies the normalized adjacency `D^{-1/2} A D^{-1/2}` to `x`.
    pub fn normalized_adjacency_apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n()];
        self.normalized_adjacency_into(x, &mut out)?;
        Ok(out)
    }

    /// `out = (D^{-1/2} A D^{-1/2} - k k^t) x`.
    pub fn deflated_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.normalized_adjacency_into(x, out)?;
        let kx = dot(&self.perron, x);
        for (o, k) in out.iter_mut().zip(&self.perron) {
            *o -= kx * k;
        }
        Ok(())
    }

    /// Applies the deflated operator, which moves the Perron eigenvalue 1 to 0.
    pub fn deflated_apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n()];
        self.deflated_into(x, &mut out)?;
        Ok(out)
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        self.check_len(s.n())
    }

    fn check_proper(&self, s: &VertexSet) -> Result<()> {
        self.check_set(s)?;
        if s.is_empty() || s.len() == self.n() {
            return Err(Error::ImproperCut);
        }
        Ok(())
    }

    /// Total weight of edges with exactly one endpoint in `s`.
    pub fn cut_weight(&self, s: &VertexSet) -> Result<f64> {
        self.check_proper(s)?;
        let mut cut = 0.0;
        for i in s.indices() {
            for (j, w) in self.neighbors(i) {
                if !s.contains(j) {
                    cut += w;
                }
            }
        }
        Ok(cut)
    }

    /// `sum_{i,j in S} a_ij` (ordered pairs inside `s`).
    pub fn volume(&self, s: &VertexSet) -> Result<f64> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::ImproperCut);
        }
        let mut vol = 0.0;
        for i in s.indices() {
            for (j, w) in self.neighbors(i) {
                if s.contains(j) {
                    vol += w;
                }
            }
        }
        Ok(vol)
    }

    /// `sum_{i in S} d_i`.
    pub fn degree_volume(&self, s: &VertexSet) -> Result<f64> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::ImproperCut);
        }
        Ok(s.indices().map(|i| self.degrees[i]).sum())
    }

    /// Volume of the whole vertex set; identical under both conventions.
    pub fn total_volume(&self) -> f64 {
        self.degrees.iter().sum()
    }

    pub fn volume_with(&self, s: &VertexSet, convention: VolumeConvention) -> Result<f64> {
        match convention {
            VolumeConvention::OrderedPairs => self.volume(s),
            VolumeConvention::DegreeSum => self.degree_volume(s),
        }
    }

    /// `cut(S) / min(vol(S), vol(S^c))` with ordered-pair volumes.
    pub fn conductance(&self, s: &VertexSet) -> Result<f64> {
        self.conductance_with(s, VolumeConvention::OrderedPairs)
    }

    pub fn conductance_with(&self, s: &VertexSet, convention: VolumeConvention) -> Result<f64> {
        let cut = self.cut_weight(s)?;
        let inside = self.volume_with(s, convention)?;
        let outside = self.volume_with(&s.complement(), convention)?;
        let min_vol = inside.min(outside);
        if min_vol <= 0.0 {
            return Err(Error::ZeroVolume);
        }
        Ok(cut / min_vol)
    }
}

/// A subset of the vertices of a graph, stored as a membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    mask: Vec<bool>,
}

impl VertexSet {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        Self { mask }
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = vec![false; n];
        for &i in indices {
            if i >= n {
                return Err(Error::InvalidArgument(format!(
                    "vertex {i} outside [0, {n})"
                )));
            }
            mask[i] = true;
        }
        Ok(Self { mask })
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.mask.len()
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&m| m)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn complement(&self) -> Self {
        Self {
            mask: self.mask.iter().map(|&m| !m).collect(),
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_unweighted(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn single_edge_degrees() {
        let g = Graph::from_edge_list(&[(0, 1, 1.0)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.degrees(), &[1.0, 1.0]);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn triangle_degrees_symmetric() {
        let g = Graph::from_edge_list(&[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        assert_eq!(g.degrees(), &[2.0, 2.0, 2.0]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.weight(i, j), g.weight(j, i));
            }
        }
    }

    #[test]
    fn duplicate_edges_are_summed() {
        let g = Graph::from_edges(2, &[(0, 1, 1.0), (1, 0, 2.5)]).unwrap();
        assert_eq!(g.weight(0, 1), 3.5);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn construction_errors_name_the_edge() {
        assert!(matches!(
            Graph::from_edges(3, &[(1, 1, 1.0)]),
            Err(Error::SelfLoop { i: 1, j: 1 })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1, 0.0)]),
            Err(Error::NonPositiveWeight { i: 0, j: 1, .. })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1, -2.0)]),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 5, 1.0)]),
            Err(Error::VertexOutOfRange { i: 0, j: 5, n: 2 })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1, 1.0)]),
            Err(Error::IsolatedVertex(2))
        ));
    }

    #[test]
    fn single_edge_is_exchange() {
        let g = Graph::from_edge_list(&[(0, 1, 1.0)]).unwrap();
        assert_eq!(g.normalized_adjacency_apply(&[1.0, 0.0]).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn perron_vector_is_fixed() {
        let g = Graph::from_edges(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (0, 2, 1.0)])
            .unwrap();
        let k = g.perron_vector().to_vec();
        let y = g.normalized_adjacency_apply(&k).unwrap();
        for (a, b) in y.iter().zip(&k) {
            assert!((a - b).abs() < 1e-14);
        }
        let z = g.deflated_apply(&k).unwrap();
        assert!(norm(&z) < 1e-12);
    }

    #[test]
    fn length_mismatch_rejected() {
        let g = path3();
        assert!(matches!(
            g.normalized_adjacency_apply(&[1.0]),
            Err(Error::LengthMismatch { expected: 3, got: 1 })
        ));
        assert!(g.deflated_apply(&[1.0; 4]).is_err());
    }

    #[test]
    fn cut_volume_conductance_small_cases() {
        let g = Graph::from_edge_list(&[(0, 1, 1.0)]).unwrap();
        let half = VertexSet::from_indices(2, &[0]).unwrap();
        assert_eq!(g.cut_weight(&half).unwrap(), 1.0);
        let both = VertexSet::from_indices(2, &[0, 1]).unwrap();
        assert_eq!(g.volume(&both).unwrap(), 2.0);
        // single endpoint has zero pair volume
        assert!(matches!(g.conductance(&half), Err(Error::ZeroVolume)));

        let p = path3();
        let middle = VertexSet::from_indices(3, &[1]).unwrap();
        let ends = middle.complement();
        assert_eq!(p.cut_weight(&middle).unwrap(), 2.0);
        // pair volume of {1} is 0, of {0,2} is 0; degree volume gives 2 vs 2
        assert!(matches!(p.conductance(&middle), Err(Error::ZeroVolume)));
        assert_eq!(
            p.conductance_with(&middle, VolumeConvention::DegreeSum).unwrap(),
            1.0
        );
        assert_eq!(p.degree_volume(&ends).unwrap(), 2.0);
    }

    #[test]
    fn improper_cuts_rejected() {
        let g = path3();
        let empty = VertexSet::from_indices(3, &[]).unwrap();
        let full = empty.complement();
        assert!(matches!(g.cut_weight(&empty), Err(Error::ImproperCut)));
        assert!(matches!(g.cut_weight(&full), Err(Error::ImproperCut)));
        assert!(matches!(g.volume(&empty), Err(Error::ImproperCut)));
        assert!(g.volume(&full).is_ok());
    }

    #[test]
    fn edges_listed_once_in_order() {
        let g = Graph::from_edges(3, &[(2, 0, 1.0), (1, 0, 2.0)]).unwrap();
        let e: Vec<_> = g.edges().collect();
        assert_eq!(e, vec![(0, 1, 2.0), (0, 2, 1.0)]);
    }
}
