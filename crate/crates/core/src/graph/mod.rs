//! Exclusivity graphs: vertices are propositions, edges join mutually
//! exclusive (orthogonal) ones.
//!
//! Adjacency is stored as one `u64` bit row per vertex, which caps graphs at
//! [`MAX_VERTICES`] vertices. All values are immutable once built and can be
//! shared freely between worker threads.

pub mod canon;
pub(crate) mod cliques;
pub mod format;

pub use canon::{canonical_form, canonical_form_colored, CanonicalForm};
pub use cliques::{
    cliques_of_size, contains_subgraph, count_subgraph_embeddings, is_biconnected, min_degree,
};
pub use format::{parse, serialize, Format};

use thiserror::Error;

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

impl GraphError {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        GraphError::Parse {
            position,
            message: message.into(),
        }
    }
}

/// Bit mask with the lowest `n` bits set.
#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Undirected simple graph on `0..n` with optional text labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExclusivityGraph {
    rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl ExclusivityGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(ExclusivityGraph {
            rows: vec![0; n],
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows. Rows are symmetrised and the
    /// diagonal and bits above `n` are cleared.
    pub fn from_rows(rows: &[u64]) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Self::empty(n)?;
        let mask = full_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            for v in Bits(row & mask & !(1u64 << u)) {
                g.rows[u] |= 1 << v;
                g.rows[v] |= 1 << u;
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let mask = full_mask(n);
        for u in 0..n {
            g.rows[u] = mask & !(1u64 << u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::LabelCount {
                expected: self.n(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Neighbourhood of `v` as a bit mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, &row) in self.rows.iter().enumerate() {
            for v in Bits(row >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v`, falling back to its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Index of the vertex carrying `label`, if labels are present.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Induced subgraph without `v`; remaining vertices keep their order and
    /// labels.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        let n = self.n();
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        let keep = full_mask(n) & !(1u64 << v);
        self.induced(keep)
    }

    /// Induced subgraph on the vertices in `keep`, reindexed densely.
    pub fn induced(&self, keep: u64) -> Result<Self, GraphError> {
        let keep = keep & full_mask(self.n());
        let old: Vec<usize> = Bits(keep).collect();
        let mut g = Self::empty(old.len())?;
        for (i, &u) in old.iter().enumerate() {
            for (j, &w) in old.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, w) {
                    g.rows[i] |= 1 << j;
                    g.rows[j] |= 1 << i;
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(old.iter().map(|&u| labels[u].clone()).collect());
        }
        Ok(g)
    }

    /// Relabels the graph so that vertex `v` moves to position `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.n();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut rows = vec![0u64; n];
        for u in 0..n {
            for v in Bits(self.rows[u]) {
                rows[perm[u]] |= 1 << perm[v];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for v in 0..n {
                out[perm[v]] = l[v].clone();
            }
            out
        });
        ExclusivityGraph { rows, labels }
    }

    /// Same graph with one extra vertex adjacent to `neighbors`.
    pub fn with_vertex(&self, neighbors: u64, label: Option<&str>) -> Result<Self, GraphError> {
        let n = self.n();
        if n + 1 > MAX_VERTICES {
            return Err(GraphError::VertexCount(n + 1));
        }
        let neighbors = neighbors & full_mask(n);
        let mut rows = self.rows.clone();
        for v in Bits(neighbors) {
            rows[v] |= 1 << n;
        }
        rows.push(neighbors);
        let labels = match (&self.labels, label) {
            (None, None) => None,
            (l, lab) => {
                let mut out: Vec<String> = match l {
                    Some(l) => l.clone(),
                    None => (0..n).map(|i| i.to_string()).collect(),
                };
                out.push(lab.map(str::to_owned).unwrap_or_else(|| n.to_string()));
                Some(out)
            }
        };
        Ok(ExclusivityGraph { rows, labels })
    }

    /// Connected components restricted to the vertex set `within`.
    pub(crate) fn is_connected_within(&self, within: u64) -> bool {
        if within == 0 {
            return true;
        }
        let start = within & within.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen == within
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(full_mask(self.n()))
    }
}

impl std::fmt::Display for ExclusivityGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format::to_graph6(self))
    }
}
