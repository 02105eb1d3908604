use serde::Serialize;

use crate::graph::cliques::clique_masks;
use crate::graph::{Bits, ExclusivityGraph};

/// A reason no faithful realization in dimension `d` exists.
///
/// Every d-clique is an orthonormal basis, so a vertex `x` outside the clique
/// lies in the span of the clique members it is not adjacent to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conflict {
    /// `x` is adjacent to the whole clique and must be the zero vector.
    Null { x: usize, clique: Vec<usize> },
    /// `x` misses exactly one clique member `q` and so is the same ray.
    Parallel { x: usize, q: usize, clique: Vec<usize> },
    /// `y` is orthogonal to the span holding `x`, yet not adjacent to it.
    Orthogonal { x: usize, y: usize, clique: Vec<usize> },
}

/// First conflict found, scanning cliques in lexicographic order.
pub fn orthogonality_conflict(g: &ExclusivityGraph, d: usize) -> Option<Conflict> {
    let rows = g.rows();
    let n = g.n();
    for k in clique_masks(rows, d) {
        let clique = || Bits(k).collect::<Vec<_>>();
        for x in Bits(!k & crate::graph::full_mask(n)) {
            let q = k & !rows[x];
            match q.count_ones() {
                0 => return Some(Conflict::Null { x, clique: clique() }),
                1 => {
                    return Some(Conflict::Parallel {
                        x,
                        q: q.trailing_zeros() as usize,
                        clique: clique(),
                    })
                }
                _ => {}
            }
            for y in Bits(!k & !rows[x] & crate::graph::full_mask(n)) {
                if y != x && rows[y] & q == q {
                    return Some(Conflict::Orthogonal { x, y, clique: clique() });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_in_plane_has_parallel_pair() {
        let c4 = ExclusivityGraph::cycle(4).unwrap();
        assert!(matches!(orthogonality_conflict(&c4, 2), Some(Conflict::Parallel { .. })));
        assert_eq!(orthogonality_conflict(&c4, 3), None);
    }

    #[test]
    fn pentagon_is_fine_in_three_dimensions() {
        assert_eq!(orthogonality_conflict(&ExclusivityGraph::cycle(5).unwrap(), 3), None);
    }
}
