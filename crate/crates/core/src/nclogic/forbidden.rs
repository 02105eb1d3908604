//! Graphs with no faithful orthogonal representation in a given dimension,
//! and the structural filter built on them.
//!
//! Base cases: in dimension 1 any two vertices are forbidden (two distinct
//! rays do not fit, adjacent or not); in dimension 2 a vertex with two
//! neighbours is forbidden, again with or without the edge between the
//! neighbours. A pattern for `d` is a pattern for `d - 2` plus two vertices
//! joined to every earlier vertex, with or without an edge between them.

use std::collections::BTreeMap;

use super::NcError;
use crate::graph::cliques::{clique_masks, PatternMatcher};
use crate::graph::{canonical_form, is_biconnected, min_degree, ExclusivityGraph};

#[derive(Clone, Debug)]
pub struct ForbiddenFamily {
    pub d: usize,
    /// Pairwise nonisomorphic, each on `d + 1` vertices, ordered by edge
    /// count then canonical form.
    pub patterns: Vec<ExclusivityGraph>,
}

impl ForbiddenFamily {
    /// Patterns that contain no other pattern as a subgraph. A graph avoids
    /// the whole family iff it avoids these.
    pub fn minimal_patterns(&self) -> Vec<ExclusivityGraph> {
        let matchers: Vec<_> = self.patterns.iter().map(PatternMatcher::new).collect();
        self.patterns
            .iter()
            .enumerate()
            .filter(|&(i, p)| {
                matchers
                    .iter()
                    .enumerate()
                    .all(|(j, m)| j == i || p.edge_count() <= self.patterns[j].edge_count() || !m.contained_in(p.rows()))
            })
            .map(|(_, p)| p.clone())
            .collect()
    }
}

fn extend(p: &ExclusivityGraph, joined: bool) -> ExclusivityGraph {
    let n = p.n();
    let all = (1u64 << n) - 1;
    let g = p.with_vertex(all, None).unwrap();
    let extra = if joined { all | 1 << n } else { all };
    g.with_vertex(extra, None).unwrap()
}

fn dedupe(patterns: Vec<ExclusivityGraph>) -> Vec<ExclusivityGraph> {
    let mut by_form = BTreeMap::new();
    for p in patterns {
        let cf = canonical_form(&p);
        let canon = p.permute(&cf.labeling);
        by_form.entry((p.edge_count(), cf.bytes)).or_insert(canon);
    }
    by_form.into_values().collect()
}

pub fn forbidden_family(d: usize) -> Result<ForbiddenFamily, NcError> {
    let patterns = match d {
        0 => return Err(NcError::FamilyDimension(d)),
        1 => vec![ExclusivityGraph::empty(2).unwrap(), ExclusivityGraph::complete(2).unwrap()],
        2 => vec![ExclusivityGraph::path(3).unwrap(), ExclusivityGraph::complete(3).unwrap()],
        _ => {
            let prev = forbidden_family(d - 2)?;
            prev.patterns
                .iter()
                .flat_map(|p| [extend(p, false), extend(p, true)])
                .collect()
        }
    };
    Ok(ForbiddenFamily {
        d,
        patterns: dedupe(patterns),
    })
}

/// Reusable form of [`passes_dimension_filters`].
#[derive(Clone, Debug)]
pub struct DimensionFilter {
    d: usize,
    forbidden: Vec<PatternMatcher>,
}

impl DimensionFilter {
    pub fn new(d: usize) -> Result<Self, NcError> {
        if d < 3 {
            return Err(NcError::Dimension(d));
        }
        let mut forbidden: Vec<_> = forbidden_family(d)?
            .minimal_patterns()
            .iter()
            .map(PatternMatcher::new)
            .collect();
        forbidden.push(PatternMatcher::new(&ExclusivityGraph::complete(d + 1).unwrap()));
        Ok(DimensionFilter { d, forbidden })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// True if no forbidden pattern (including `K(d+1)`) occurs.
    pub fn pattern_free(&self, rows: &[u64]) -> bool {
        self.forbidden.iter().all(|m| !m.contained_in(rows))
    }

    /// True if no forbidden pattern occurs through vertex `v`.
    pub fn pattern_free_at(&self, rows: &[u64], v: usize) -> bool {
        self.forbidden.iter().all(|m| !m.contained_using(rows, v))
    }

    pub fn passes(&self, g: &ExclusivityGraph) -> bool {
        min_degree(g) >= 2
            && is_biconnected(g)
            && clique_masks(g.rows(), self.d).len() >= 2
            && self.pattern_free(g.rows())
    }
}

/// Biconnected, minimum degree two, free of the forbidden family and of
/// `K(d+1)`, with at least two `d`-cliques. Dimensions below 3 never pass.
pub fn passes_dimension_filters(g: &ExclusivityGraph, d: usize) -> bool {
    DimensionFilter::new(d).is_ok_and(|f| f.passes(g))
}
