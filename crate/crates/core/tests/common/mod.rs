//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tifs::ExclusivityGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> ExclusivityGraph {
    let mut g = ExclusivityGraph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    p
}

/// Adjacency as an explicit matrix, built from the edge list only.
pub fn matrix(g: &ExclusivityGraph) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Upper-triangle bit string under the vertex order `p`.
fn code(m: &[Vec<bool>], p: &[usize]) -> Vec<bool> {
    let n = m.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            out.push(m[p[i]][p[j]]);
        }
    }
    out
}

/// Lexicographically largest adjacency code over all orderings.
pub fn brute_canonical(g: &ExclusivityGraph) -> Vec<bool> {
    let m = matrix(g);
    let mut best: Option<Vec<bool>> = None;
    for_each_permutation(g.n(), |p| {
        let c = code(&m, p);
        if best.as_ref().is_none_or(|b| c > *b) {
            best = Some(c);
        }
    });
    best.unwrap_or_default()
}

pub fn brute_isomorphic(g: &ExclusivityGraph, h: &ExclusivityGraph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (mg, mh) = (matrix(g), matrix(h));
    let target = code(&mh, &(0..h.n()).collect::<Vec<_>>());
    let mut found = false;
    for_each_permutation(g.n(), |p| found |= code(&mg, p) == target);
    found
}

pub fn brute_automorphisms(g: &ExclusivityGraph) -> u64 {
    let m = matrix(g);
    let id = code(&m, &(0..g.n()).collect::<Vec<_>>());
    let mut count = 0;
    for_each_permutation(g.n(), |p| {
        if code(&m, p) == id {
            count += 1;
        }
    });
    count
}

/// Every vertex set of size `k` that is pairwise adjacent.
pub fn brute_cliques(g: &ExclusivityGraph, k: usize) -> Vec<Vec<usize>> {
    let m = matrix(g);
    let n = g.n();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.iter().all(|&a| vs.iter().all(|&b| a == b || m[a][b])) {
            out.push(vs);
        }
    }
    out.sort();
    out
}

fn connected_without(m: &[Vec<bool>], skip: Option<usize>) -> bool {
    let n = m.len();
    let verts: Vec<usize> = (0..n).filter(|&v| Some(v) != skip).collect();
    let Some(&start) = verts.first() else { return true };
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if Some(v) != skip && m[u][v] && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    verts.iter().all(|&v| seen[v])
}

/// Connected, and still connected after deleting any one vertex.
pub fn brute_biconnected(g: &ExclusivityGraph) -> bool {
    let m = matrix(g);
    connected_without(&m, None) && (g.n() <= 2 || (0..g.n()).all(|v| connected_without(&m, Some(v))))
}

/// Some injective map of pattern vertices into `g` keeps every edge.
pub fn brute_contains(g: &ExclusivityGraph, pattern: &ExclusivityGraph) -> bool {
    let (mg, mp) = (matrix(g), matrix(pattern));
    let k = pattern.n();
    fn extend(mg: &[Vec<bool>], mp: &[Vec<bool>], map: &mut Vec<usize>, k: usize) -> bool {
        if map.len() == k {
            return true;
        }
        let i = map.len();
        for v in 0..mg.len() {
            if map.contains(&v) {
                continue;
            }
            if (0..i).all(|j| !mp[i][j] || mg[v][map[j]]) {
                map.push(v);
                if extend(mg, mp, map, k) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    extend(&mg, &mp, &mut Vec::new(), k)
}

/// Literal reading of the two assignment rules: no edge with both ends true,
/// and every d-clique holds a true vertex.
pub fn brute_valid(g: &ExclusivityGraph, d: usize, trues: u64) -> bool {
    let m = matrix(g);
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            if m[u][v] && trues >> u & 1 == 1 && trues >> v & 1 == 1 {
                return false;
            }
        }
    }
    brute_cliques(g, d).iter().all(|c| c.iter().any(|&v| trues >> v & 1 == 1))
}

/// Valid assignments as true-vertex masks, precomputing the cliques once.
pub fn brute_assignments(g: &ExclusivityGraph, d: usize) -> Vec<u64> {
    let m = matrix(g);
    let n = g.n();
    let cliques: Vec<u64> = brute_cliques(g, d)
        .iter()
        .map(|c| c.iter().fold(0, |acc, &v| acc | 1 << v))
        .collect();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| m[u][v])
        .collect();
    (0u64..1 << n)
        .filter(|&t| {
            edges.iter().all(|&(u, v)| t >> u & 1 == 0 || t >> v & 1 == 0) && cliques.iter().all(|&c| t & c != 0)
        })
        .collect()
}
