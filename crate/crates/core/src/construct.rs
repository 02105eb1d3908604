//! Closed-form minimal TIFS and TITS families.
//!
//! Every minimal TIFS in dimension `d` is the bug with `d - 3` extra
//! vertices that join both triangles into `d`-cliques. Each extra vertex is
//! also adjacent to A, to B, or to both; the multiset of those choices fixes
//! the graph.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::cliques::clique_masks;
use crate::graph::{canonical_form_colored, full_mask, Bits, CanonicalForm, ExclusivityGraph, GraphError};
use crate::nclogic::{classify_pair, is_tifs, is_tits, Certificate, Kind, NcError};

pub const A: usize = 0;
pub const B: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("dimension {0} is below 3")]
    Dimension(usize),
    #[error("dimension {d} needs {expected} clique-vertex states, got {got}")]
    StateCount { d: usize, expected: usize, got: usize },
    #[error(
        "states {states} excluded for d = {d}: when every added vertex is adjacent only to A \
         (or only to B) the designated pair is not minimal in this dimension"
    )]
    Excluded { d: usize, states: StateMultiset },
    #[error("unknown clique-vertex state `{0}` (expected A, B or BOTH)")]
    ParseState(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("constructed graph is not a {0}")]
    NotVerified(Kind),
    #[error("no vertex B yields a TIFS after the reduction")]
    NoReduction,
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CliqueVertexState {
    AdjA,
    AdjB,
    AdjBoth,
}

impl FromStr for CliqueVertexState {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" | "ADJ_A" => Ok(CliqueVertexState::AdjA),
            "B" | "ADJ_B" => Ok(CliqueVertexState::AdjB),
            "BOTH" | "AB" | "ADJ_BOTH" => Ok(CliqueVertexState::AdjBoth),
            _ => Err(ConstructError::ParseState(s.to_owned())),
        }
    }
}

impl fmt::Display for CliqueVertexState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CliqueVertexState::AdjA => "A",
            CliqueVertexState::AdjB => "B",
            CliqueVertexState::AdjBoth => "BOTH",
        })
    }
}

/// Multiset of states, kept as multiplicities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateMultiset {
    pub adj_a: usize,
    pub adj_b: usize,
    pub adj_both: usize,
}

impl StateMultiset {
    pub fn new(adj_a: usize, adj_b: usize, adj_both: usize) -> Self {
        StateMultiset { adj_a, adj_b, adj_both }
    }

    pub fn from_states(states: &[CliqueVertexState]) -> Self {
        let mut m = Self::default();
        for s in states {
            match s {
                CliqueVertexState::AdjA => m.adj_a += 1,
                CliqueVertexState::AdjB => m.adj_b += 1,
                CliqueVertexState::AdjBoth => m.adj_both += 1,
            }
        }
        m
    }

    pub fn len(&self) -> usize {
        self.adj_a + self.adj_b + self.adj_both
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// States in the order A…, B…, BOTH….
    pub fn states(&self) -> Vec<CliqueVertexState> {
        let mut v = vec![CliqueVertexState::AdjA; self.adj_a];
        v.extend(std::iter::repeat_n(CliqueVertexState::AdjB, self.adj_b));
        v.extend(std::iter::repeat_n(CliqueVertexState::AdjBoth, self.adj_both));
        v
    }

    /// Every multiset of size `k`, ordered by `(adj_a, adj_b)` descending.
    pub fn all_of_size(k: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for a in (0..=k).rev() {
            for b in (0..=k - a).rev() {
                out.push(Self::new(a, b, k - a - b));
            }
        }
        out
    }

    /// All added vertices adjacent to A only, or all to B only.
    pub fn is_one_sided(&self) -> bool {
        !self.is_empty() && (self.adj_a == self.len() || self.adj_b == self.len())
    }
}

impl FromStr for StateMultiset {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("none") {
            return Ok(Self::default());
        }
        let states = s.split(',').map(str::parse).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_states(&states))
    }
}

impl fmt::Display for StateMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        let parts: Vec<String> = self.states().iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// A graph with a designated pair: `a` true, `b_or_c` false (TIFS) or true
/// (TITS).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignatedGraph {
    pub graph: ExclusivityGraph,
    pub d: usize,
    pub a: usize,
    pub b_or_c: usize,
    pub kind: Kind,
}

impl DesignatedGraph {
    /// Colour 0 for `a`, 1 for `b_or_c`, 2 elsewhere.
    pub fn colors(&self) -> Vec<u32> {
        (0..self.graph.n())
            .map(|v| match v {
                v if v == self.a => 0,
                v if v == self.b_or_c => 1,
                _ => 2,
            })
            .collect()
    }

    /// Canonical form under isomorphisms that fix the designated roles.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form_colored(&self.graph, &self.colors())
    }

    /// Certificate for the designated pair, computed afresh.
    pub fn certificate(&self) -> Result<Certificate, NcError> {
        let c = classify_pair(&self.graph, self.d, self.a, self.b_or_c)?;
        Ok(Certificate::new(&self.graph, self.d, &c))
    }

    /// Number of `d`-cliques.
    pub fn context_count(&self) -> usize {
        clique_masks(self.graph.rows(), self.d).len()
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The eight-vertex bug: A, two triangles joined by one edge, B.
pub fn bug() -> DesignatedGraph {
    // A=0, v1..v6=1..6, B=7
    let edges = [
        (0, 1),
        (0, 2),
        (1, 3),
        (1, 5),
        (3, 5),
        (2, 4),
        (2, 6),
        (4, 6),
        (3, 4),
        (5, 7),
        (6, 7),
    ];
    let graph = ExclusivityGraph::from_edges(8, &edges)
        .unwrap()
        .with_labels(labels(&["A", "v1", "v2", "v3", "v4", "v5", "v6", "B"]))
        .unwrap();
    DesignatedGraph {
        graph,
        d: 3,
        a: A,
        b_or_c: B,
        kind: Kind::Tifs,
    }
}

/// Builds the bug extension without checking admissibility or verifying.
pub(crate) fn extend_bug(d: usize, states: &StateMultiset) -> DesignatedGraph {
    let mut g = bug().graph;
    let triangles = 0b0111_1110u64;
    let mut added = 0u64;
    for (k, s) in states.states().into_iter().enumerate() {
        let mut nb = triangles | added;
        if s != CliqueVertexState::AdjB {
            nb |= 1 << A;
        }
        if s != CliqueVertexState::AdjA {
            nb |= 1 << B;
        }
        added |= 1 << g.n();
        g = g.with_vertex(nb, Some(&format!("v{}", 7 + k))).unwrap();
    }
    DesignatedGraph {
        graph: g,
        d,
        a: A,
        b_or_c: B,
        kind: Kind::Tifs,
    }
}

pub fn validate_states(d: usize, states: &StateMultiset) -> Result<(), ConstructError> {
    if d < 3 {
        return Err(ConstructError::Dimension(d));
    }
    if states.len() != d - 3 {
        return Err(ConstructError::StateCount {
            d,
            expected: d - 3,
            got: states.len(),
        });
    }
    if d >= 5 && states.is_one_sided() {
        return Err(ConstructError::Excluded { d, states: *states });
    }
    Ok(())
}

/// Minimal TIFS in dimension `d` for the given states, verified by the
/// solver.
pub fn minimal_tifs(d: usize, states: &StateMultiset) -> Result<DesignatedGraph, ConstructError> {
    validate_states(d, states)?;
    let t = extend_bug(d, states);
    if !is_tifs(&t.graph, d, t.a, t.b_or_c)? {
        return Err(ConstructError::NotVerified(Kind::Tifs));
    }
    Ok(t)
}

/// One graph per admissible multiset, dropping multisets whose graph
/// duplicates an earlier one up to designated isomorphism.
pub fn enumerate_minimal_tifs(d: usize) -> Result<Vec<DesignatedGraph>, ConstructError> {
    if d < 3 {
        return Err(ConstructError::Dimension(d));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in StateMultiset::all_of_size(d - 3) {
        if d >= 5 && m.is_one_sided() {
            continue;
        }
        let t = minimal_tifs(d, &m)?;
        if seen.insert(t.canonical_form().bytes) {
            out.push(t);
        }
    }
    Ok(out)
}

pub fn count_minimal_tifs(d: usize) -> Result<u64, ConstructError> {
    if d < 3 {
        return Err(ConstructError::Dimension(d));
    }
    let d = d as u64;
    let all = (d - 1) * (d - 2) / 2;
    Ok(if d <= 4 { all } else { all - 2 })
}

/// Adds an auxiliary vertex and the target C so that C closes a new
/// `d`-clique with the clique vertices and B.
///
/// The clique vertices must be adjacent to both A and B: adjacency to A
/// makes them false once A is true, adjacency to B puts B in the new
/// clique.
pub fn tits_from_tifs(t: &DesignatedGraph) -> Result<DesignatedGraph, ConstructError> {
    if t.kind != Kind::Tifs {
        return Err(ConstructError::Precondition("input is not a TIFS".into()));
    }
    let d = t.d;
    let g = &t.graph;
    let (a, b) = (t.a, t.b_or_c);
    let common = g.neighbors(a) & g.neighbors(b);
    let w: Vec<usize> = Bits(common).collect();
    let is_clique = w.iter().all(|&x| g.neighbors(x) & common == common & !(1u64 << x));
    if w.len() + 3 != d || !is_clique {
        return Err(ConstructError::Precondition(format!(
            "the common neighbours of A and B must form a clique of size d - 3 = {}, found {} vertices",
            d.saturating_sub(3),
            w.len()
        )));
    }
    let n = g.n();
    let aux = n;
    let c = n + 1;
    let h = g
        .with_vertex(common | 1 << a | 1 << b, Some(&format!("v{}", d + 4)))?
        .with_vertex(common | 1 << aux | 1 << b, Some("C"))?;
    if !is_tits(&h, d, a, c)? {
        return Err(ConstructError::NotVerified(Kind::Tits));
    }
    Ok(DesignatedGraph {
        graph: h,
        d,
        a,
        b_or_c: c,
        kind: Kind::Tits,
    })
}

/// Reverses [`tits_from_tifs`]: deletes C and each common neighbour of A
/// and C whose `d`-cliques all pass through C, then keeps every B adjacent
/// to C (and not to A) that makes the remainder a TIFS.
pub fn tifs_from_tits(t: &DesignatedGraph) -> Result<Vec<DesignatedGraph>, ConstructError> {
    if t.kind != Kind::Tits {
        return Err(ConstructError::Precondition("input is not a TITS".into()));
    }
    let g = &t.graph;
    let (a, c, d) = (t.a, t.b_or_c, t.d);
    if g.adjacent(a, c) || a == c {
        return Err(ConstructError::Nc(NcError::AdjacentPair(a, c)));
    }
    let cliques = clique_masks(g.rows(), d);
    let mut removed = 1u64 << c;
    for x in Bits(g.neighbors(a) & g.neighbors(c)) {
        if cliques.iter().filter(|&&k| k >> x & 1 == 1).all(|&k| k >> c & 1 == 1) {
            removed |= 1 << x;
        }
    }
    let keep = full_mask(g.n()) & !removed;
    let h = g.induced(keep)?;
    let index = |v: usize| (keep & ((1u64 << v) - 1)).count_ones() as usize;
    let mut out = Vec::new();
    for b in Bits(g.neighbors(c) & !g.neighbors(a) & keep) {
        let (na, nb) = (index(a), index(b));
        if is_tifs(&h, d, na, nb)? {
            out.push(DesignatedGraph {
                graph: h.clone(),
                d,
                a: na,
                b_or_c: nb,
                kind: Kind::Tifs,
            });
        }
    }
    if out.is_empty() {
        return Err(ConstructError::NoReduction);
    }
    Ok(out)
}

/// TITS graphs obtainable from the minimal TIFS family of dimension `d`.
pub fn enumerate_minimal_tits(d: usize) -> Result<Vec<DesignatedGraph>, ConstructError> {
    let mut out = Vec::new();
    for t in enumerate_minimal_tifs(d)? {
        match tits_from_tifs(&t) {
            Ok(x) => out.push(x),
            Err(ConstructError::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
