//! Backtracking search over noncontextual assignments.
//!
//! State is a pair of masks (forced true, forced false). Propagation runs to
//! a fixed point: neighbours of a true vertex become false, and a d-clique
//! with a single open vertex left forces it true. Branching takes the lowest
//! open vertex, true first.

use serde::{Deserialize, Serialize};

use super::NcError;
use crate::graph::cliques::clique_masks;
use crate::graph::{full_mask, Bits, ExclusivityGraph};

/// Total truth valuation, one value per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn from_mask(n: usize, trues: u64) -> Self {
        Assignment {
            values: (0..n).map(|v| trues >> v & 1 == 1).collect(),
        }
    }

    pub fn true_mask(&self) -> u64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0, |m, (v, _)| m | 1 << v)
    }

    pub fn is_true(&self, v: usize) -> bool {
        self.values[v]
    }

    /// Exclusiveness on every edge and completeness on every `d`-clique.
    pub fn is_valid(&self, g: &ExclusivityGraph, d: usize) -> bool {
        let t = self.true_mask();
        self.values.len() == g.n()
            && Bits(t).all(|v| g.neighbors(v) & t == 0)
            && clique_masks(g.rows(), d).into_iter().all(|c| c & t != 0)
    }
}

/// Values fixed in advance for some vertices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    pub trues: u64,
    pub falses: u64,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: usize, value: bool) -> Self {
        self.set(v, value);
        self
    }

    pub fn set(&mut self, v: usize, value: bool) {
        assert!(v < 64, "vertex index {v} exceeds the 64-vertex cap");
        if value {
            self.trues |= 1 << v;
        } else {
            self.falses |= 1 << v;
        }
    }

    pub fn from_pairs(pairs: &[(usize, bool)]) -> Self {
        let mut p = Self::new();
        for &(v, b) in pairs {
            p.set(v, b);
        }
        p
    }
}

/// A graph prepared for repeated solving in a fixed dimension.
#[derive(Clone, Debug)]
pub struct Solver {
    n: usize,
    rows: Vec<u64>,
    cliques: Vec<u64>,
    /// Union of all cliques through each vertex.
    in_clique: u64,
}

impl Solver {
    pub fn new(g: &ExclusivityGraph, d: usize) -> Result<Self, NcError> {
        if d < 3 {
            return Err(NcError::Dimension(d));
        }
        let cliques = clique_masks(g.rows(), d);
        let in_clique = cliques.iter().fold(0, |m, &c| m | c);
        Ok(Solver {
            n: g.n(),
            rows: g.rows().to_vec(),
            cliques,
            in_clique,
        })
    }

    pub fn cliques(&self) -> &[u64] {
        &self.cliques
    }

    fn check(&self, fixed: PartialAssignment) -> Result<(), NcError> {
        let all = full_mask(self.n);
        if let Some(v) = Bits((fixed.trues | fixed.falses) & !all).next() {
            return Err(NcError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if let Some(v) = Bits(fixed.trues & fixed.falses).next() {
            return Err(NcError::Contradictory(v));
        }
        for u in Bits(fixed.trues) {
            if let Some(v) = Bits(self.rows[u] & fixed.trues).next() {
                return Err(NcError::FixedNotExclusive(u.min(v), u.max(v)));
            }
        }
        Ok(())
    }

    /// Propagates to a fixed point; `None` on conflict.
    fn propagate(&self, mut t: u64, mut f: u64) -> Option<(u64, u64)> {
        loop {
            for v in Bits(t) {
                f |= self.rows[v];
            }
            if t & f != 0 {
                return None;
            }
            let mut grew = false;
            for &c in &self.cliques {
                if c & t != 0 {
                    continue;
                }
                let open = c & !f;
                if open == 0 {
                    return None;
                }
                if open & (open - 1) == 0 {
                    t |= open;
                    grew = true;
                }
            }
            if !grew {
                return Some((t, f));
            }
        }
    }

    fn search(&self, t: u64, f: u64) -> Option<u64> {
        let (t, f) = self.propagate(t, f)?;
        let open = full_mask(self.n) & !(t | f);
        if open == 0 {
            return Some(t);
        }
        let v = open.trailing_zeros() as usize;
        self.search(t | 1 << v, f).or_else(|| self.search(t, f | 1 << v))
    }

    fn count_from(&self, t: u64, f: u64) -> u128 {
        let Some((t, f)) = self.propagate(t, f) else {
            return 0;
        };
        let open = full_mask(self.n) & !(t | f);
        // open vertices outside every clique with no open neighbour are free
        let free = Bits(open & !self.in_clique)
            .filter(|&v| self.rows[v] & open == 0)
            .fold(0u64, |m, v| m | 1 << v);
        let rest = open & !free;
        let factor = 1u128 << free.count_ones();
        if rest == 0 {
            return factor;
        }
        // free vertices are settled by the factor; pinning them false is inert
        let f = f | free;
        let v = rest.trailing_zeros() as usize;
        factor * (self.count_from(t | 1 << v, f) + self.count_from(t, f | 1 << v))
    }

    pub fn find(&self, fixed: PartialAssignment) -> Result<Option<Assignment>, NcError> {
        self.check(fixed)?;
        Ok(self
            .search(fixed.trues, fixed.falses)
            .map(|t| Assignment::from_mask(self.n, t)))
    }

    pub fn satisfiable(&self, fixed: PartialAssignment) -> Result<bool, NcError> {
        self.check(fixed)?;
        Ok(self.search(fixed.trues, fixed.falses).is_some())
    }

    pub fn count(&self, fixed: PartialAssignment) -> Result<u128, NcError> {
        self.check(fixed)?;
        Ok(self.count_from(fixed.trues, fixed.falses))
    }
}

/// A valid total assignment extending `fixed`, or `None` once the search
/// space is exhausted.
pub fn find_assignment(
    g: &ExclusivityGraph,
    d: usize,
    fixed: &PartialAssignment,
) -> Result<Option<Assignment>, NcError> {
    Solver::new(g, d)?.find(*fixed)
}

/// Exact number of valid total assignments extending `fixed`.
pub fn count_assignments(g: &ExclusivityGraph, d: usize, fixed: &PartialAssignment) -> Result<u128, NcError> {
    Solver::new(g, d)?.count(*fixed)
}
