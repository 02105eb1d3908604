use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::{dot, norm, RealizeError, Realization, Vector};
use crate::graph::ExclusivityGraph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericOptions {
    pub iterations: usize,
    /// Non-edge overlaps are pushed into `[delta, 1 - delta]`.
    pub delta: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            iterations: 4000,
            delta: 0.05,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericResult {
    /// Final value of the penalty objective.
    pub residual: f64,
    pub max_edge_residual: f64,
    pub min_nonedge_overlap: Option<f64>,
    pub max_nonedge_overlap: Option<f64>,
    pub restart: usize,
    pub realization: Realization,
}

impl NumericResult {
    /// Edges orthogonal to `1e-9` and non-edges clear of both 0 and 1.
    pub fn converged(&self) -> bool {
        self.max_edge_residual <= 1e-9
            && self.min_nonedge_overlap.is_none_or(|m| m > 1e-6)
            && self.max_nonedge_overlap.is_none_or(|m| m < 1.0 - 1e-6)
    }
}

struct Problem {
    edges: Vec<(usize, usize)>,
    non_edges: Vec<(usize, usize)>,
    delta: f64,
}

impl Problem {
    fn new(g: &ExclusivityGraph, delta: f64) -> Self {
        let (mut edges, mut non_edges) = (Vec::new(), Vec::new());
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if g.adjacent(u, v) {
                    edges.push((u, v));
                } else {
                    non_edges.push((u, v));
                }
            }
        }
        Problem { edges, non_edges, delta }
    }

    fn loss(&self, x: &[Vector]) -> f64 {
        let mut l = 0.0;
        for &(u, v) in &self.edges {
            l += dot(&x[u], &x[v]).powi(2);
        }
        for &(u, v) in &self.non_edges {
            let s = dot(&x[u], &x[v]).abs();
            l += (self.delta - s).max(0.0).powi(2) + (s - 1.0 + self.delta).max(0.0).powi(2);
        }
        l
    }

    fn gradient(&self, x: &[Vector]) -> Vec<Vector> {
        let mut g = vec![vec![0.0; x[0].len()]; x.len()];
        let mut add = |u: usize, v: usize, c: f64| {
            for k in 0..x[u].len() {
                g[u][k] += c * x[v][k];
                g[v][k] += c * x[u][k];
            }
        };
        for &(u, v) in &self.edges {
            add(u, v, 2.0 * dot(&x[u], &x[v]));
        }
        for &(u, v) in &self.non_edges {
            let s = dot(&x[u], &x[v]);
            let (a, sign) = (s.abs(), s.signum());
            if a < self.delta {
                add(u, v, -2.0 * (self.delta - a) * sign);
            } else if a > 1.0 - self.delta {
                add(u, v, 2.0 * (a - 1.0 + self.delta) * sign);
            }
        }
        // keep only the component tangent to each sphere
        for (gi, xi) in g.iter_mut().zip(x) {
            let along = dot(gi, xi);
            for (a, b) in gi.iter_mut().zip(xi) {
                *a -= along * b;
            }
        }
        g
    }
}

fn unit(v: &mut [f64]) {
    let n = norm(v);
    for x in v {
        *x /= n;
    }
}

fn descend(p: &Problem, mut x: Vec<Vector>, iterations: usize) -> (Vec<Vector>, f64) {
    let mut loss = p.loss(&x);
    let mut step = 0.1;
    for _ in 0..iterations {
        if loss < 1e-26 {
            break;
        }
        let g = p.gradient(&x);
        let mut moved = false;
        while step > 1e-16 {
            let mut cand = x.clone();
            for (c, gi) in cand.iter_mut().zip(&g) {
                for (a, b) in c.iter_mut().zip(gi) {
                    *a -= step * b;
                }
                unit(c);
            }
            let l = p.loss(&cand);
            if l < loss {
                x = cand;
                loss = l;
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
    }
    (x, loss)
}

fn summarize(g: &ExclusivityGraph, x: Vec<Vector>, residual: f64, restart: usize) -> NumericResult {
    let mut max_edge: f64 = 0.0;
    let (mut lo, mut hi): (Option<f64>, Option<f64>) = (None, None);
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let s = dot(&x[u], &x[v]).abs();
            if g.adjacent(u, v) {
                max_edge = max_edge.max(s);
            } else {
                lo = Some(lo.map_or(s, |m| m.min(s)));
                hi = Some(hi.map_or(s, |m| m.max(s)));
            }
        }
    }
    NumericResult {
        residual,
        max_edge_residual: max_edge,
        min_nonedge_overlap: lo,
        max_nonedge_overlap: hi,
        restart,
        realization: Realization::new(x, 0.0, 1e-9).expect("uniform dimension"),
    }
}

pub fn numeric_realization_search(
    g: &ExclusivityGraph,
    d: usize,
    restarts: usize,
    seed: u64,
) -> Result<NumericResult, RealizeError> {
    numeric_realization_search_with(g, d, restarts, seed, &NumericOptions::default())
}

/// Projected descent from random starts. Restart `r` uses stream `r` of a
/// ChaCha8 generator seeded with `seed`. Restarts run in batches and the
/// search stops after the first batch holding a converged run; the best
/// result is chosen by residual, then restart index.
pub fn numeric_realization_search_with(
    g: &ExclusivityGraph,
    d: usize,
    restarts: usize,
    seed: u64,
    opts: &NumericOptions,
) -> Result<NumericResult, RealizeError> {
    if restarts == 0 {
        return Err(RealizeError::NoTrials);
    }
    if d < 2 {
        return Err(RealizeError::Dimension {
            index: 0,
            expected: 2,
            got: d,
        });
    }
    if g.n() == 0 {
        return Err(RealizeError::CountMismatch { vectors: 0, vertices: 0 });
    }
    let p = Problem::new(g, opts.delta);
    let run = |r: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let x: Vec<Vector> = (0..g.n())
            .map(|_| {
                let mut v: Vector = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
                unit(&mut v);
                v
            })
            .collect();
        let (x, loss) = descend(&p, x, opts.iterations);
        summarize(g, x, loss, r)
    };
    let batch = 8;
    let mut best: Option<NumericResult> = None;
    for start in (0..restarts).step_by(batch) {
        let results: Vec<NumericResult> = (start..restarts.min(start + batch)).into_par_iter().map(run).collect();
        for r in results {
            if best.as_ref().is_none_or(|b| r.residual < b.residual) {
                best = Some(r);
            }
        }
        if best.as_ref().is_some_and(NumericResult::converged) {
            break;
        }
    }
    Ok(best.expect("at least one restart"))
}
