//! Orderly generation by canonical vertex augmentation.
//!
//! A child `H = G + v` is kept iff `v` lies in the automorphism orbit of the
//! canonically chosen deletion vertex of `H`: among the vertices minimising
//! (degree, sum of neighbour degrees), the one with the largest canonical
//! position. Neighbourhoods of `v` are taken one per orbit of `Aut(G)` on
//! vertex subsets. Each class then has exactly one construction path.

use crate::graph::canon::canonical_labeling;
use crate::graph::cliques::clique_masks;
use crate::graph::{full_mask, Bits, ExclusivityGraph};
use crate::nclogic::DimensionFilter;

use super::{EnumError, SearchSpec, MAX_GENERATE_N};

/// A node of the augmentation tree.
#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub rows: Vec<u64>,
    pub generators: Vec<Vec<usize>>,
}

pub(crate) struct Generator<'a> {
    spec: &'a SearchSpec,
    filter: Option<DimensionFilter>,
}

fn apply(perm: &[usize], mask: u64) -> u64 {
    Bits(mask).fold(0, |m, v| m | 1 << perm[v])
}

/// Smallest member of each orbit of the group on subsets of `0..k`.
fn subset_representatives(k: usize, gens: &[Vec<usize>]) -> Vec<u64> {
    let total = 1usize << k;
    if gens.is_empty() {
        return (0..total as u64).collect();
    }
    let mut seen = vec![0u64; total.div_ceil(64)];
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for s in 0..total {
        if seen[s / 64] >> (s % 64) & 1 == 1 {
            continue;
        }
        reps.push(s as u64);
        seen[s / 64] |= 1 << (s % 64);
        stack.push(s as u64);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = apply(g, x) as usize;
                if seen[y / 64] >> (y % 64) & 1 == 0 {
                    seen[y / 64] |= 1 << (y % 64);
                    stack.push(y as u64);
                }
            }
        }
    }
    reps
}

fn invariant(rows: &[u64], v: usize) -> (u32, u32) {
    let deg = rows[v].count_ones();
    let sum = Bits(rows[v]).map(|u| rows[u].count_ones()).sum();
    (deg, sum)
}

impl<'a> Generator<'a> {
    pub fn new(spec: &'a SearchSpec) -> Result<Self, EnumError> {
        if spec.n == 0 || spec.n > MAX_GENERATE_N {
            return Err(EnumError::TooLarge(spec.n));
        }
        if let Some(s) = spec.shard {
            s.validate()?;
        }
        let filter = if spec.forbid_patterns {
            Some(DimensionFilter::new(spec.d).map_err(|_| EnumError::Dimension(spec.d))?)
        } else {
            None
        };
        Ok(Generator { spec, filter })
    }

    /// Level at which subtrees become work units.
    pub fn split_depth(&self) -> usize {
        self.spec.n.saturating_sub(3).max(1)
    }

    pub fn root(&self) -> Node {
        Node {
            rows: vec![0],
            generators: Vec::new(),
        }
    }

    fn terminal_ok(&self, rows: &[u64]) -> bool {
        let spec = self.spec;
        if rows.iter().any(|r| (r.count_ones() as usize) < spec.min_degree) {
            return false;
        }
        if spec.min_d_cliques > 0 && clique_masks(rows, spec.d).len() < spec.min_d_cliques {
            return false;
        }
        if spec.biconnected {
            let g = ExclusivityGraph::from_rows(rows).unwrap();
            if !crate::graph::is_biconnected(&g) {
                return false;
            }
        }
        true
    }

    /// Accepts `rows` (last vertex new) if the new vertex is the canonical
    /// deletion vertex up to automorphism. Returns the automorphism group
    /// generators when they were computed.
    fn accept(&self, rows: &[u64]) -> Option<Option<Vec<Vec<usize>>>> {
        let n = rows.len();
        let new = n - 1;
        let f: Vec<_> = (0..n).map(|v| invariant(rows, v)).collect();
        let best = *f.iter().min().unwrap();
        if f[new] != best {
            return None;
        }
        if f.iter().filter(|&&x| x == best).count() == 1 {
            return Some(None);
        }
        let lab = canonical_labeling(rows, None);
        let pos = lab.positions();
        let m = (0..n).filter(|&v| f[v] == best).max_by_key(|&v| pos[v]).unwrap();
        let orbits = lab.orbits();
        if orbits[m] == orbits[new] {
            Some(Some(lab.generators))
        } else {
            None
        }
    }

    /// Children of `node` that survive the hereditary filters and the
    /// canonicity test. At the last level the terminal filters apply too.
    pub fn children(&self, node: &Node, mut visit: impl FnMut(Node)) {
        let k = node.rows.len();
        let n = self.spec.n;
        let last = k + 1 == n;
        let remaining = n - (k + 1);
        let need = self.spec.min_degree.saturating_sub(remaining);
        let low: u64 = Bits(full_mask(k))
            .filter(|&v| (node.rows[v].count_ones() as usize) + 1 < need)
            .fold(0, |m, v| m | 1 << v);
        if low != 0 {
            // some vertex can no longer reach the minimum degree
            return;
        }
        let must: u64 = Bits(full_mask(k))
            .filter(|&v| (node.rows[v].count_ones() as usize) < need)
            .fold(0, |m, v| m | 1 << v);
        for s in subset_representatives(k, &node.generators) {
            if s & must != must || (s.count_ones() as usize) < need {
                continue;
            }
            let mut rows = node.rows.clone();
            for v in Bits(s) {
                rows[v] |= 1 << k;
            }
            rows.push(s);
            if let Some(f) = &self.filter {
                if !f.pattern_free_at(&rows, k) {
                    continue;
                }
            }
            if last && !self.terminal_ok(&rows) {
                continue;
            }
            let Some(gens) = self.accept(&rows) else {
                continue;
            };
            let generators = match gens {
                Some(g) => g,
                None if last => Vec::new(),
                None => canonical_labeling(&rows, None).generators,
            };
            visit(Node { rows, generators });
        }
    }

    /// Depth-first walk below `node`, calling `emit` on every graph of the
    /// target size.
    pub fn walk(&self, node: &Node, emit: &mut dyn FnMut(&[u64])) {
        if node.rows.len() == self.spec.n {
            if self.spec.n > 1 || self.terminal_ok(&node.rows) {
                emit(&node.rows);
            }
            return;
        }
        self.children(node, |c| self.walk(&c, emit));
    }

    /// Nodes at the split depth, in depth-first order.
    pub fn units(&self) -> Vec<Node> {
        let depth = self.split_depth();
        let mut out = Vec::new();
        fn go(g: &Generator<'_>, node: Node, depth: usize, out: &mut Vec<Node>) {
            if node.rows.len() == depth {
                out.push(node);
                return;
            }
            g.children(&node, |c| go(g, c, depth, out));
        }
        go(self, self.root(), depth, &mut out);
        out
    }
}
