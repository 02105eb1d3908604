//! Canonical labelling by individualisation-refinement.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, individualise each vertex of the first non-singleton cell,
//! recurse. Leaves are compared by their relabelled adjacency rows and the
//! largest leaf is canonical. Automorphisms found by comparing leaves prune
//! siblings that lie in one orbit of the pointwise stabiliser of the current
//! prefix, and the orbit sizes along the first path multiply to the group
//! order.

use std::collections::VecDeque;

use num_bigint::BigUint;

use super::{Bits, ExclusivityGraph};

/// Canonical representative of an isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// graph6 of the canonically relabelled graph, followed by the colour
    /// sequence for coloured forms.
    pub bytes: Vec<u8>,
    /// `labeling[v]` is the canonical position of input vertex `v`.
    pub labeling: Vec<usize>,
    pub automorphism_count: BigUint,
}

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("canonical bytes are ascii")
    }
}

/// Raw result of a canonical labelling run.
#[derive(Clone, Debug)]
pub(crate) struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Adjacency rows of the relabelled graph.
    pub rows: Vec<u64>,
    /// Generators of the (colour-preserving) automorphism group.
    pub generators: Vec<Vec<usize>>,
    /// Orbit sizes along the first path; their product is the group order.
    pub orbit_sizes: Vec<usize>,
}

impl Labeling {
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Orbit representative (smallest member) for every vertex.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.order.len();
        orbits_of(n, self.generators.iter().map(Vec::as_slice))
    }

    pub fn group_order(&self) -> BigUint {
        self.orbit_sizes
            .iter()
            .fold(BigUint::from(1u32), |acc, &s| acc * BigUint::from(s))
    }
}

pub(crate) fn orbits_of<'a>(n: usize, gens: impl Iterator<Item = &'a [usize]>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for (v, &w) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Ordered partition of the vertex set: `lab` lists vertices, bit `p` of
/// `starts` marks a cell beginning at position `p`.
#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    starts: u64,
}

impl Partition {
    #[inline]
    fn cell_end(&self, start: usize, n: usize) -> usize {
        let rest = if start + 1 >= 64 {
            0
        } else {
            self.starts >> (start + 1)
        };
        if rest == 0 {
            n
        } else {
            start + 1 + rest.trailing_zeros() as usize
        }
    }

    #[inline]
    fn is_discrete(&self, n: usize) -> bool {
        self.starts.count_ones() as usize == n
    }
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    first: Option<(Vec<usize>, Vec<u64>)>,
    best: Option<(Vec<usize>, Vec<u64>)>,
    first_path: Vec<usize>,
    generators: Vec<Vec<usize>>,
    orbit_sizes: Vec<usize>,
}

enum Flow {
    Continue,
    /// Abandon every node deeper than this level.
    Unwind(usize),
}

impl<'a> Search<'a> {
    fn refine(&self, part: &mut Partition, queue: &mut VecDeque<usize>, mut queued: u64) {
        let n = self.n;
        let mut counts = [0u32; 64];
        while let Some(ws) = queue.pop_front() {
            queued &= !(1u64 << ws);
            let we = part.cell_end(ws, n);
            let mut wmask = 0u64;
            for &v in &part.lab[ws..we] {
                wmask |= 1 << v;
            }
            let mut xs = 0;
            while xs < n {
                let xe = part.cell_end(xs, n);
                if xe - xs > 1 {
                    let mut same = true;
                    for p in xs..xe {
                        counts[p] = (self.rows[part.lab[p]] & wmask).count_ones();
                        same &= counts[p] == counts[xs];
                    }
                    if !same {
                        self.split(part, &counts, xs, xe, queue, &mut queued);
                    }
                }
                xs = xe;
            }
            if part.is_discrete(n) {
                break;
            }
        }
    }

    fn split(
        &self,
        part: &mut Partition,
        counts: &[u32; 64],
        xs: usize,
        xe: usize,
        queue: &mut VecDeque<usize>,
        queued: &mut u64,
    ) {
        let mut cell: Vec<(u32, usize)> = (xs..xe).map(|p| (counts[p], part.lab[p])).collect();
        cell.sort_by_key(|&(c, _)| c);
        let mut frags: Vec<(usize, usize)> = Vec::new();
        for (i, &(c, v)) in cell.iter().enumerate() {
            part.lab[xs + i] = v;
            if i == 0 || c != cell[i - 1].0 {
                part.starts |= 1 << (xs + i);
                frags.push((xs + i, 0));
            }
            frags.last_mut().unwrap().1 += 1;
        }
        if *queued >> xs & 1 == 1 {
            for &(s, _) in &frags[1..] {
                queue.push_back(s);
                *queued |= 1 << s;
            }
        } else {
            let mut largest = 0;
            for (i, f) in frags.iter().enumerate() {
                if f.1 > frags[largest].1 {
                    largest = i;
                }
            }
            for (i, &(s, _)) in frags.iter().enumerate() {
                if i != largest {
                    queue.push_back(s);
                    *queued |= 1 << s;
                }
            }
        }
    }

    fn certificate(&self, lab: &[usize]) -> Vec<u64> {
        let mut pos = [0usize; 64];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        lab.iter()
            .map(|&v| Bits(self.rows[v]).fold(0u64, |acc, w| acc | 1 << pos[w]))
            .collect()
    }

    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let gens = self
            .generators
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .map(Vec::as_slice);
        orbits_of(self.n, gens)
    }

    fn leaf(&mut self, part: &Partition, prefix: &[usize]) -> Flow {
        let cert = self.certificate(&part.lab);
        let Some((first_lab, first_cert)) = &self.first else {
            self.first = Some((part.lab.clone(), cert.clone()));
            self.best = Some((part.lab.clone(), cert));
            self.first_path = prefix.to_vec();
            return Flow::Continue;
        };
        if cert == *first_cert {
            let mut gamma = vec![0; self.n];
            for (i, &v) in first_lab.iter().enumerate() {
                gamma[v] = part.lab[i];
            }
            self.generators.push(gamma);
            let level = prefix
                .iter()
                .zip(&self.first_path)
                .position(|(a, b)| a != b)
                .unwrap_or(prefix.len());
            return Flow::Unwind(level);
        }
        let (best_lab, best_cert) = self.best.as_ref().unwrap();
        match cert.cmp(best_cert) {
            std::cmp::Ordering::Equal => {
                let mut gamma = vec![0; self.n];
                for (i, &v) in best_lab.iter().enumerate() {
                    gamma[v] = part.lab[i];
                }
                self.generators.push(gamma);
            }
            std::cmp::Ordering::Greater => self.best = Some((part.lab.clone(), cert)),
            std::cmp::Ordering::Less => {}
        }
        Flow::Continue
    }

    fn node(&mut self, part: Partition, prefix: &mut Vec<usize>) -> Flow {
        let n = self.n;
        if part.is_discrete(n) {
            return self.leaf(&part, prefix);
        }
        // first non-singleton cell
        let mut ts = 0;
        let te = loop {
            let e = part.cell_end(ts, n);
            if e - ts > 1 {
                break e;
            }
            ts = e;
        };
        let mut candidates: Vec<usize> = part.lab[ts..te].to_vec();
        candidates.sort_unstable();
        let level = prefix.len();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Vec<usize>)> = None;
        for &v in &candidates {
            if !explored.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(k, _)| *k != self.generators.len());
                if stale {
                    orbits = Some((self.generators.len(), self.orbits_fixing(prefix)));
                }
                let orb = &orbits.as_ref().unwrap().1;
                if explored.iter().any(|&e| orb[e] == orb[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = part.clone();
            let p = child.lab[ts..te].iter().position(|&x| x == v).unwrap() + ts;
            child.lab.swap(ts, p);
            child.starts |= 1 << (ts + 1);
            let mut queue = VecDeque::from([ts]);
            self.refine(&mut child, &mut queue, 1 << ts);
            prefix.push(v);
            let flow = self.node(child, prefix);
            prefix.pop();
            if let Flow::Unwind(target) = flow {
                if target < level {
                    return flow;
                }
            }
        }
        let on_first_path = level < self.first_path.len() && self.first_path[..level] == prefix[..];
        if on_first_path {
            let orb = self.orbits_fixing(prefix);
            let target = orb[self.first_path[level]];
            let size = orb.iter().filter(|&&o| o == target).count();
            self.orbit_sizes.push(size);
        }
        Flow::Continue
    }
}

/// Canonical labelling of `rows`, optionally respecting a vertex colouring
/// (colour classes are ordered by colour value and never mixed).
pub(crate) fn canonical_labeling(rows: &[u64], colors: Option<&[u32]>) -> Labeling {
    let n = rows.len();
    assert!((1..=64).contains(&n), "canonical labelling needs 1..=64 vertices");
    let mut lab: Vec<usize> = (0..n).collect();
    let mut starts = 1u64;
    if let Some(colors) = colors {
        assert_eq!(colors.len(), n);
        lab.sort_by_key(|&v| colors[v]);
        for p in 1..n {
            if colors[lab[p]] != colors[lab[p - 1]] {
                starts |= 1 << p;
            }
        }
    }
    let mut search = Search {
        rows,
        n,
        first: None,
        best: None,
        first_path: Vec::new(),
        generators: Vec::new(),
        orbit_sizes: Vec::new(),
    };
    let mut part = Partition { lab, starts };
    let mut queue = VecDeque::new();
    let mut queued = 0u64;
    for p in Bits(starts) {
        queue.push_back(p);
        queued |= 1 << p;
    }
    search.refine(&mut part, &mut queue, queued);
    search.node(part, &mut Vec::new());
    let (order, rows) = search.best.take().unwrap();
    Labeling {
        order,
        rows,
        generators: search.generators,
        orbit_sizes: search.orbit_sizes,
    }
}

fn finish(g: &ExclusivityGraph, lab: Labeling, colors: Option<&[u32]>) -> CanonicalForm {
    let canon = ExclusivityGraph::from_rows(&lab.rows).expect("same vertex count");
    let mut bytes = super::format::to_graph6(&canon).into_bytes();
    if let Some(colors) = colors {
        bytes.push(b':');
        let seq: Vec<String> = lab.order.iter().map(|&v| colors[v].to_string()).collect();
        bytes.extend_from_slice(seq.join(",").as_bytes());
    }
    debug_assert_eq!(canon.n(), g.n());
    CanonicalForm {
        bytes,
        labeling: lab.positions(),
        automorphism_count: lab.group_order(),
    }
}

/// Canonical form of an uncoloured graph.
pub fn canonical_form(g: &ExclusivityGraph) -> CanonicalForm {
    let lab = canonical_labeling(g.rows(), None);
    finish(g, lab, None)
}

/// Canonical form of a vertex-coloured graph; isomorphisms must preserve
/// colours. Used for graphs with designated vertices.
pub fn canonical_form_colored(g: &ExclusivityGraph, colors: &[u32]) -> CanonicalForm {
    let lab = canonical_labeling(g.rows(), Some(colors));
    finish(g, lab, Some(colors))
}
