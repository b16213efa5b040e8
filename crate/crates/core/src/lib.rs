//! Spectral graph partitioning with approximate eigenvectors.
//!
//! | module        | contents                                                      |
//! |---------------|---------------------------------------------------------------|
//! | [`graph`]     | sparse graph, normalized adjacency, cut, volume, conductance  |
//! | [`io`]        | edge-list, Matrix Market and vector CSV formats               |
//! | [`spectra`]   | Rayleigh quotients, residuals, error bounds, dense oracle      |
//! | [`roc`]       | ring-of-cliques generator and closed-form eigensystem          |
//! | [`partition`] | sweep cuts, robustness, clique recovery                        |
//! | [`perturb`]   | minimal perturbations that break clique recovery               |
//! | [`solver`]    | deflated power method, iteration bound, traces                 |
//! | [`cli`]       | command-line front end behind the `roc` binary                 |

pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
pub mod partition;
pub mod perturb;
pub mod roc;
pub mod solver;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, VolumeConvention};
