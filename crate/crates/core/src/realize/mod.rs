//! Unit-vector realizations of exclusivity graphs.
//!
//! Vectors stand for rays, so `v` and `-v` are the same proposition and
//! every comparison uses `|dot|`.

mod build;
mod closure;
mod descent;
mod pentagon;

pub use build::{bug_base_vectors, build_minimal_tifs_realization, tits_vectors};
pub use closure::{orthogonality_conflict, Conflict};
pub use descent::{numeric_realization_search, numeric_realization_search_with, NumericOptions, NumericResult};
pub use pentagon::{
    complete_from_pentagon, min_angle_search, pentagon_angle, pentagon_from_anchor, MinAngleResult,
    PentagonCompletion,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::ConstructError;
use crate::graph::{ExclusivityGraph, GraphError};

pub type Vector = Vec<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RealizeError {
    #[error("{vectors} vectors for a graph on {vertices} vertices")]
    CountMismatch { vectors: usize, vertices: usize },
    #[error("vector {index} has {got} components, expected {expected}")]
    Dimension { index: usize, expected: usize, got: usize },
    #[error("degenerate cross product {0}: the factors are parallel")]
    Degenerate(&'static str),
    #[error("pentagon constraint {0} violated")]
    NotOrthogonal(&'static str),
    #[error("vectors {0} and {1} give the same ray")]
    DuplicateRay(usize, usize),
    #[error("vector {0} has zero length")]
    ZeroVector(usize),
    #[error("epsilon {0} outside [0, 1)")]
    EpsilonRange(f64),
    #[error("epsilon must be positive when some clique vertex is not adjacent to both A and B")]
    EpsilonZero,
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("trial count must be positive")]
    NoTrials,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    States(#[from] ConstructError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn normalized(a: &[f64]) -> Vector {
    let n = norm(a);
    a.iter().map(|x| x / n).collect()
}

pub(crate) fn cross(a: &[f64], b: &[f64]) -> Vector {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `|cos|` of the angle between the rays through `a` and `b`.
pub(crate) fn overlap(a: &[f64], b: &[f64]) -> f64 {
    (dot(a, b) / (norm(a) * norm(b))).abs()
}

/// Same ray up to sign, within `tol` per component.
pub fn same_ray(a: &[f64], b: &[f64], tol: f64) -> bool {
    let close = |s: f64| a.iter().zip(b).all(|(x, y)| (x - s * y).abs() <= tol);
    a.len() == b.len() && (close(1.0) || close(-1.0))
}

/// One unit vector per vertex.
///
/// JSON: `{"d": 4, "epsilon": 0.1, "vectors": [[...], ...], "tolerance": 1e-12}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub d: usize,
    pub vectors: Vec<Vector>,
    pub epsilon: f64,
    pub tolerance: f64,
}

impl Realization {
    pub fn new(vectors: Vec<Vector>, epsilon: f64, tolerance: f64) -> Result<Self, RealizeError> {
        let d = vectors.first().map_or(0, Vec::len);
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(RealizeError::Dimension {
                    index: i,
                    expected: d,
                    got: v.len(),
                });
            }
        }
        Ok(Realization {
            d,
            vectors,
            epsilon,
            tolerance,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("realization serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, RealizeError> {
        let r: Realization = serde_json::from_str(text).map_err(|e| RealizeError::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Realization::new(r.vectors, r.epsilon, r.tolerance)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairDetail {
    pub u: usize,
    pub v: usize,
    pub adjacent: bool,
    pub overlap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    /// Largest `|dot|` over edges (0 for an edgeless graph).
    pub max_edge_residual: f64,
    /// Smallest `|dot|` over non-edges; `None` for a complete graph.
    pub min_nonedge_overlap: Option<f64>,
    /// Largest `| |v| - 1 |`.
    pub max_norm_error: f64,
    /// Non-adjacent pairs that give the same ray.
    pub duplicate_rays: Vec<(usize, usize)>,
    pub pass: bool,
    pub pairs: Vec<PairDetail>,
}

/// Checks unit norms, orthogonality on edges, and non-orthogonal distinct
/// rays on non-edges, all at `r.tolerance`.
pub fn verify(r: &Realization, g: &ExclusivityGraph) -> Result<VerificationReport, RealizeError> {
    if r.vectors.len() != g.n() {
        return Err(RealizeError::CountMismatch {
            vectors: r.vectors.len(),
            vertices: g.n(),
        });
    }
    for (i, v) in r.vectors.iter().enumerate() {
        if v.len() != r.d {
            return Err(RealizeError::Dimension {
                index: i,
                expected: r.d,
                got: v.len(),
            });
        }
    }
    let tol = r.tolerance;
    let max_norm_error = r.vectors.iter().map(|v| (norm(v) - 1.0).abs()).fold(0.0, f64::max);
    let mut max_edge: f64 = 0.0;
    let mut min_non: Option<f64> = None;
    let mut duplicate_rays = Vec::new();
    let mut pairs = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let adjacent = g.adjacent(u, v);
            let o = dot(&r.vectors[u], &r.vectors[v]).abs();
            if adjacent {
                max_edge = max_edge.max(o);
            } else {
                min_non = Some(min_non.map_or(o, |m| m.min(o)));
                if o >= 1.0 - tol {
                    duplicate_rays.push((u, v));
                }
            }
            pairs.push(PairDetail {
                u,
                v,
                adjacent,
                overlap: o,
            });
        }
    }
    let pass = max_edge <= tol && min_non.is_none_or(|m| m > tol) && max_norm_error <= tol && duplicate_rays.is_empty();
    Ok(VerificationReport {
        max_edge_residual: max_edge,
        min_nonedge_overlap: min_non,
        max_norm_error,
        duplicate_rays,
        pass,
        pairs,
    })
}

/// Angle between the rays of `a` and `b`, in `[0, pi/2]`.
pub fn angle_between(r: &Realization, a: usize, b: usize) -> f64 {
    overlap(&r.vectors[a], &r.vectors[b]).min(1.0).acos()
}

/// Orthogonality graph of a ray list: an edge wherever `|dot| <= tolerance`.
pub fn graph_from_rays(vectors: &[Vector], tolerance: f64) -> Result<ExclusivityGraph, RealizeError> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(RealizeError::Tolerance(tolerance));
    }
    let d = vectors.first().map_or(0, Vec::len);
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != d {
            return Err(RealizeError::Dimension {
                index: i,
                expected: d,
                got: v.len(),
            });
        }
        if norm(v) == 0.0 {
            return Err(RealizeError::ZeroVector(i));
        }
    }
    let mut g = ExclusivityGraph::empty(vectors.len())?;
    for u in 0..vectors.len() {
        for v in u + 1..vectors.len() {
            let o = overlap(&vectors[u], &vectors[v]);
            if o >= 1.0 - tolerance {
                return Err(RealizeError::DuplicateRay(u, v));
            }
            if o <= tolerance {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Parses one vector per line, components separated by whitespace or
/// commas. Blank lines and `#` comments are skipped.
pub fn parse_rays(text: &str) -> Result<Vec<Vector>, RealizeError> {
    let mut out: Vec<Vector> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let v = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>().map_err(|_| RealizeError::Parse {
                    line: i + 1,
                    message: format!("`{s}` is not a number"),
                })
            })
            .collect::<Result<Vector, _>>()?;
        if let Some(first) = out.first() {
            if first.len() != v.len() {
                return Err(RealizeError::Parse {
                    line: i + 1,
                    message: format!("{} components, expected {}", v.len(), first.len()),
                });
            }
        }
        out.push(v);
    }
    Ok(out)
}

pub fn format_rays(vectors: &[Vector]) -> String {
    let mut s = String::new();
    for v in vectors {
        let parts: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
        s.push_str(&parts.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(d: usize) -> Vec<Vector> {
        (0..d)
            .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    }

    #[test]
    fn basis_realizes_triangle() {
        let r = Realization::new(basis(3), 0.0, 1e-12).unwrap();
        let k3 = ExclusivityGraph::complete(3).unwrap();
        let rep = verify(&r, &k3).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.min_nonedge_overlap, None);
        assert_eq!(graph_from_rays(&basis(3), 1e-9).unwrap(), k3);
    }

    #[test]
    fn verify_rejects_mismatch_and_duplicates() {
        let r = Realization::new(basis(3), 0.0, 1e-12).unwrap();
        assert!(matches!(
            verify(&r, &ExclusivityGraph::complete(4).unwrap()),
            Err(RealizeError::CountMismatch { .. })
        ));
        let mut v = basis(3);
        v.push(vec![-1.0, 0.0, 0.0]);
        assert_eq!(graph_from_rays(&v, 1e-9), Err(RealizeError::DuplicateRay(0, 3)));
        assert_eq!(graph_from_rays(&v, 0.0), Err(RealizeError::Tolerance(0.0)));
    }

    #[test]
    fn angle_of_identical_rays_is_zero() {
        let r = Realization::new(vec![vec![0.6, 0.8], vec![-0.6, -0.8]], 0.0, 1e-12).unwrap();
        assert!(angle_between(&r, 0, 1).abs() < 1e-7);
    }

    #[test]
    fn ray_text_roundtrip() {
        let v = vec![vec![1.0, -0.5, 1e-3], vec![0.1, 0.2, 0.3]];
        assert_eq!(parse_rays(&format_rays(&v)).unwrap(), v);
        assert!(matches!(parse_rays("1 2\n3 x\n"), Err(RealizeError::Parse { line: 2, .. })));
        assert!(matches!(parse_rays("1 2\n3\n"), Err(RealizeError::Parse { line: 2, .. })));
        assert_eq!(parse_rays("# c\n1, 2\n\n").unwrap(), vec![vec![1.0, 2.0]]);
    }

    #[test]
    fn realization_json_roundtrip() {
        let r = Realization::new(basis(2), 0.1, 1e-9).unwrap();
        assert_eq!(Realization::from_json(&r.to_json()).unwrap(), r);
        assert!(Realization::from_json("{\"d\":2,\"epsilon\":0,\"vectors\":[[1,0],[0]],\"tolerance\":1}").is_err());
    }
}
