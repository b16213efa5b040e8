//! Text formats: whitespace edge lists, Matrix Market coordinate files, and
//! one-value-per-line vector CSV.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Reads an edge list: one `i j [w]` triple per line, 0-based, `#` comments.
/// A missing weight defaults to 1.0.
pub fn read_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut edges = Vec::new();
    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected `i j [w]`, got {} fields", fields.len()),
            });
        }
        let parse_idx = |s: &str| {
            s.parse::<usize>().map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: format!("bad vertex index {s:?}: {e}"),
            })
        };
        let i = parse_idx(fields[0])?;
        let j = parse_idx(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => s.parse::<f64>().map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: format!("bad weight {s:?}: {e}"),
            })?,
            None => 1.0,
        };
        edges.push((i, j, w));
    }
    Graph::from_edge_list(&edges)
}

/// Writes each undirected edge once as `i j w` with `i < j`.
pub fn write_edge_list<W: Write>(graph: &Graph, writer: W) -> Result<()> {
    let mut out = BufWriter::new(writer);
    writeln!(out, "# n={} m={}", graph.n(), graph.edge_count())?;
    for (i, j, w) in graph.edges() {
        writeln!(out, "{i} {j} {w}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    read_edge_list(File::open(path)?)
}

pub fn save_edge_list(graph: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write_edge_list(graph, File::create(path)?)
}

/// Reads a Matrix Market `coordinate ... symmetric` adjacency matrix.
/// `pattern` entries get weight 1.0.
pub fn read_matrix_market<R: Read>(reader: R) -> Result<Graph> {
    let mut lines = BufReader::new(reader).lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let header = header?.to_ascii_lowercase();
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::Parse {
            line: 1,
            msg: "missing %%MatrixMarket matrix header".into(),
        });
    }
    if tokens[2] != "coordinate" {
        return Err(Error::Parse {
            line: 1,
            msg: format!("unsupported format {:?}", tokens[2]),
        });
    }
    let pattern = match tokens[3] {
        "pattern" => true,
        "real" | "integer" => false,
        other => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("unsupported field {other:?}"),
            })
        }
    };
    if tokens[4] != "symmetric" {
        return Err(Error::Parse {
            line: 1,
            msg: format!("adjacency must be symmetric, got {:?}", tokens[4]),
        });
    }

    let mut size: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        let content = line.trim();
        if content.is_empty() || content.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let bad = |msg: String| Error::Parse { line: lineno, msg };
        match size {
            None => {
                if fields.len() != 3 {
                    return Err(bad("expected `rows cols nnz`".into()));
                }
                let rows: usize = fields[0].parse().map_err(|_| bad("bad row count".into()))?;
                let cols: usize = fields[1].parse().map_err(|_| bad("bad column count".into()))?;
                let nnz: usize = fields[2].parse().map_err(|_| bad("bad nnz".into()))?;
                if rows != cols {
                    return Err(bad(format!("adjacency must be square, got {rows}x{cols}")));
                }
                size = Some((rows, nnz));
            }
            Some(_) => {
                let want = if pattern { 2 } else { 3 };
                if fields.len() != want {
                    return Err(bad(format!("expected {want} fields")));
                }
                let i: usize = fields[0].parse().map_err(|_| bad("bad row index".into()))?;
                let j: usize = fields[1].parse().map_err(|_| bad("bad column index".into()))?;
                if i == 0 || j == 0 {
                    return Err(bad("indices are 1-based".into()));
                }
                let w = if pattern {
                    1.0
                } else {
                    fields[2].parse().map_err(|_| bad("bad value".into()))?
                };
                edges.push((i - 1, j - 1, w));
            }
        }
    }
    let (n, nnz) = size.ok_or(Error::Parse {
        line: 1,
        msg: "missing size line".into(),
    })?;
    if edges.len() != nnz {
        return Err(Error::Parse {
            line: 0,
            msg: format!("expected {nnz} entries, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, &edges)
}

/// Writes the lower triangle of the adjacency as `coordinate real symmetric`.
pub fn write_matrix_market<W: Write>(graph: &Graph, writer: W) -> Result<()> {
    let mut out = BufWriter::new(writer);
    writeln!(out, "%%MatrixMarket matrix coordinate real symmetric")?;
    writeln!(out, "{} {} {}", graph.n(), graph.n(), graph.edge_count())?;
    for (i, j, w) in graph.edges() {
        writeln!(out, "{} {} {}", j + 1, i + 1, w)?;
    }
    out.flush()?;
    Ok(())
}

pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<Graph> {
    read_matrix_market(File::open(path)?)
}

pub fn save_matrix_market(graph: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write_matrix_market(graph, File::create(path)?)
}

/// Loads a graph, choosing the reader by extension (`.mtx` is Matrix Market).
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    match path.extension().and_then(|e| e.to_str()) {
        Some("mtx") => load_matrix_market(path),
        _ => load_edge_list(path),
    }
}

/// Formats a value with 17 significant digits.
pub fn full_precision(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a vector as CSV, one value per line, 17 significant digits.
pub fn write_vector_csv<W: Write>(values: &[f64], writer: W) -> Result<()> {
    let mut out = BufWriter::new(writer);
    for &v in values {
        writeln!(out, "{}", full_precision(v))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_vector_csv<R: Read>(reader: R) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let content = line.trim();
        if content.is_empty() {
            continue;
        }
        values.push(content.parse().map_err(|e| Error::Parse {
            line: idx + 1,
            msg: format!("bad value {content:?}: {e}"),
        })?);
    }
    Ok(values)
}
