use super::canon::canonical_labeling;
use super::{full_mask, Bits, ExclusivityGraph};

/// Connected with no cut vertex. A single vertex and `K2` count as
/// biconnected.
pub fn is_biconnected(g: &ExclusivityGraph) -> bool {
    let n = g.n();
    let all = full_mask(n);
    if !g.is_connected_within(all) {
        return false;
    }
    if n <= 2 {
        return true;
    }
    (0..n).all(|v| g.is_connected_within(all & !(1u64 << v)))
}

pub fn min_degree(g: &ExclusivityGraph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}

/// Every `k`-clique as a bit mask, in lexicographic order of sorted members.
pub(crate) fn clique_masks(rows: &[u64], k: usize) -> Vec<u64> {
    fn extend(rows: &[u64], k: usize, clique: u64, size: usize, cand: u64, out: &mut Vec<u64>) {
        if size == k {
            out.push(clique);
            return;
        }
        for v in Bits(cand) {
            if (cand >> v).count_ones() as usize + size < k {
                break;
            }
            let above = if v >= 63 { 0 } else { u64::MAX << (v + 1) };
            extend(rows, k, clique | 1 << v, size + 1, cand & rows[v] & above, out);
        }
    }
    let mut out = Vec::new();
    if k == 0 || k > rows.len() {
        return out;
    }
    extend(rows, k, 0, 0, full_mask(rows.len()), &mut out);
    out
}

/// Every set of `k` mutually adjacent vertices, each exactly once, sorted
/// lexicographically.
pub fn cliques_of_size(g: &ExclusivityGraph, k: usize) -> Vec<Vec<usize>> {
    clique_masks(g.rows(), k)
        .into_iter()
        .map(|m| Bits(m).collect())
        .collect()
}

/// Non-induced subgraph matcher for a fixed pattern.
#[derive(Clone, Debug)]
pub(crate) struct PatternMatcher {
    rows: Vec<u64>,
    degrees: Vec<u32>,
    /// Matching order over all pattern vertices.
    order: Vec<usize>,
    /// Matching orders starting from one representative per pattern orbit.
    anchored: Vec<Vec<usize>>,
    automorphisms: u128,
}

impl PatternMatcher {
    pub fn new(pattern: &ExclusivityGraph) -> Self {
        let rows = pattern.rows().to_vec();
        let n = rows.len();
        let degrees: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
        let lab = canonical_labeling(&rows, None);
        let orbits = lab.orbits();
        let start = (0..n).max_by_key(|&v| (degrees[v], std::cmp::Reverse(v))).unwrap();
        let order = Self::order_from(&rows, &degrees, start);
        let mut anchored = Vec::new();
        for v in 0..n {
            if orbits[v] == v {
                anchored.push(Self::order_from(&rows, &degrees, v));
            }
        }
        let automorphisms = lab.orbit_sizes.iter().map(|&s| s as u128).product();
        PatternMatcher {
            rows,
            degrees,
            order,
            anchored,
            automorphisms,
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Greedy order: next vertex has the most already-ordered neighbours,
    /// then the highest degree.
    fn order_from(rows: &[u64], degrees: &[u32], start: usize) -> Vec<usize> {
        let n = rows.len();
        let mut order = vec![start];
        let mut placed = 1u64 << start;
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| ((rows[v] & placed).count_ones(), degrees[v], std::cmp::Reverse(v)))
                .unwrap();
            order.push(next);
            placed |= 1 << next;
        }
        order
    }

    /// Counts injective edge-preserving maps following `order`, with the
    /// first pattern vertex restricted to `first_choices`. Stops at `limit`.
    fn run(&self, host: &[u64], order: &[usize], first_choices: u64, limit: u128) -> u128 {
        let hn = host.len();
        let host_deg: Vec<u32> = host.iter().map(|r| r.count_ones()).collect();
        let mut image = vec![usize::MAX; self.n()];
        let mut count = 0u128;
        self.step(host, &host_deg, order, 0, first_choices & full_mask(hn), 0, &mut image, &mut count, limit);
        count
    }

    #[allow(clippy::too_many_arguments)]
    fn step(
        &self,
        host: &[u64],
        host_deg: &[u32],
        order: &[usize],
        depth: usize,
        first_choices: u64,
        used: u64,
        image: &mut [usize],
        count: &mut u128,
        limit: u128,
    ) {
        if depth == order.len() {
            *count += 1;
            return;
        }
        let p = order[depth];
        let mut cand = if depth == 0 {
            first_choices
        } else {
            full_mask(host.len())
        };
        for q in Bits(self.rows[p]) {
            if image[q] != usize::MAX {
                cand &= host[image[q]];
            }
        }
        cand &= !used;
        for x in Bits(cand) {
            if host_deg[x] < self.degrees[p] {
                continue;
            }
            image[p] = x;
            self.step(host, host_deg, order, depth + 1, first_choices, used | 1 << x, image, count, limit);
            image[p] = usize::MAX;
            if *count >= limit {
                return;
            }
        }
    }

    pub fn contained_in(&self, host: &[u64]) -> bool {
        self.n() <= host.len() && self.run(host, &self.order, u64::MAX, 1) > 0
    }

    /// True if some embedding uses host vertex `v`.
    pub fn contained_using(&self, host: &[u64], v: usize) -> bool {
        if self.n() > host.len() {
            return false;
        }
        self.anchored
            .iter()
            .any(|order| self.run(host, order, 1u64 << v, 1) > 0)
    }

    pub fn count_embeddings(&self, host: &[u64]) -> u128 {
        if self.n() > host.len() {
            return 0;
        }
        self.run(host, &self.order, u64::MAX, u128::MAX) / self.automorphisms
    }
}

/// True iff some injective vertex map sends every pattern edge onto an edge
/// of `g` (the copy need not be induced).
pub fn contains_subgraph(g: &ExclusivityGraph, pattern: &ExclusivityGraph) -> bool {
    PatternMatcher::new(pattern).contained_in(g.rows())
}

/// Number of edge-subset copies of `pattern` in `g`: injective
/// edge-preserving maps divided by the pattern's automorphism count.
pub fn count_subgraph_embeddings(g: &ExclusivityGraph, pattern: &ExclusivityGraph) -> u64 {
    PatternMatcher::new(pattern).count_embeddings(g.rows()) as u64
}
