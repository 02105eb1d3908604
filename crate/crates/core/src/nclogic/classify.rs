//! TIFS, TITS and true-iff-true verdicts for designated vertex pairs.

use serde::{Deserialize, Serialize};

use super::solver::{Assignment, PartialAssignment, Solver};
use super::NcError;
use crate::graph::ExclusivityGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Kind {
    Tifs,
    Tits,
    TrueIffTrue,
    None,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Tifs => "TIFS",
            Kind::Tits => "TITS",
            Kind::TrueIffTrue => "TRUE_IFF_TRUE",
            Kind::None => "NONE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: Kind,
    pub a: usize,
    pub b_or_c: usize,
    /// A valid assignment with `a` true, when one exists.
    pub witness_sat: Option<Assignment>,
    /// The defining implication was established by exhausting the search.
    pub refuted_by_exhaustion: bool,
    /// Verdict of the bare unsatisfiability test, without the requirement
    /// that `a` can be true at all.
    pub raw_step2_verdict: bool,
}

fn check_pair(g: &ExclusivityGraph, a: usize, b: usize) -> Result<(), NcError> {
    let n = g.n();
    for v in [a, b] {
        if v >= n {
            return Err(NcError::VertexOutOfRange { vertex: v, n });
        }
    }
    if a == b {
        return Err(NcError::SamePair(a));
    }
    if g.adjacent(a, b) {
        return Err(NcError::AdjacentPair(a, b));
    }
    Ok(())
}

fn pa(pairs: &[(usize, bool)]) -> PartialAssignment {
    PartialAssignment::from_pairs(pairs)
}

/// `a` true forces non-exclusive `b` false, and `a` can be true.
pub fn is_tifs(g: &ExclusivityGraph, d: usize, a: usize, b: usize) -> Result<bool, NcError> {
    check_pair(g, a, b)?;
    let s = Solver::new(g, d)?;
    Ok(!s.satisfiable(pa(&[(a, true), (b, true)]))? && s.satisfiable(pa(&[(a, true)]))?)
}

/// `a` true forces non-exclusive `c` true, and `a` can be true.
pub fn is_tits(g: &ExclusivityGraph, d: usize, a: usize, c: usize) -> Result<bool, NcError> {
    check_pair(g, a, c)?;
    let s = Solver::new(g, d)?;
    Ok(!s.satisfiable(pa(&[(a, true), (c, false)]))? && s.satisfiable(pa(&[(a, true)]))?)
}

/// Every assignment gives `a` and `c` the same value, and both the
/// all-true and all-false cases occur.
pub fn is_true_iff_true(g: &ExclusivityGraph, d: usize, a: usize, c: usize) -> Result<bool, NcError> {
    check_pair(g, a, c)?;
    let s = Solver::new(g, d)?;
    Ok(!s.satisfiable(pa(&[(a, true), (c, false)]))?
        && !s.satisfiable(pa(&[(a, false), (c, true)]))?
        && s.satisfiable(pa(&[(a, true), (c, true)]))?
        && s.satisfiable(pa(&[(a, false), (c, false)]))?)
}

/// Strongest verdict for one ordered pair: TIFS, then TITS, then
/// true-iff-true, else NONE.
pub fn classify_pair(g: &ExclusivityGraph, d: usize, a: usize, b: usize) -> Result<Classification, NcError> {
    check_pair(g, a, b)?;
    let s = Solver::new(g, d)?;
    let witness = s.find(pa(&[(a, true)]))?;
    let raw_tifs = !s.satisfiable(pa(&[(a, true), (b, true)]))?;
    let raw_tits = !s.satisfiable(pa(&[(a, true), (b, false)]))?;
    let raw_tit = raw_tits
        && !s.satisfiable(pa(&[(a, false), (b, true)]))?;
    let (kind, raw) = if witness.is_some() && raw_tifs {
        (Kind::Tifs, raw_tifs)
    } else if witness.is_some() && raw_tits {
        (Kind::Tits, raw_tits)
    } else if raw_tit
        && s.satisfiable(pa(&[(a, true), (b, true)]))?
        && s.satisfiable(pa(&[(a, false), (b, false)]))?
    {
        (Kind::TrueIffTrue, raw_tit)
    } else {
        (Kind::None, raw_tifs)
    };
    let witness_sat = match kind {
        Kind::TrueIffTrue => s.find(pa(&[(a, true), (b, true)]))?,
        _ => witness,
    };
    Ok(Classification {
        kind,
        a,
        b_or_c: b,
        witness_sat,
        refuted_by_exhaustion: kind != Kind::None,
        raw_step2_verdict: raw,
    })
}

/// All positive verdicts: TIFS and TITS over ordered non-adjacent pairs,
/// true-iff-true over unordered ones (reported with `a < b_or_c`). Sorted by
/// `(a, b_or_c, kind)`.
pub fn classify_all_pairs(g: &ExclusivityGraph, d: usize) -> Result<Vec<Classification>, NcError> {
    let s = Solver::new(g, d)?;
    let n = g.n();
    let mut out = Vec::new();
    // forced[a] has bit c when every assignment with a true makes c true
    let mut forced = vec![0u64; n];
    let mut sat = vec![false; n];
    for a in 0..n {
        let Some(w) = s.find(pa(&[(a, true)]))? else {
            // vacuous: every c is trivially forced
            forced[a] = u64::MAX;
            continue;
        };
        sat[a] = true;
        let mut seen = vec![w.true_mask()];
        for b in 0..n {
            if b == a || g.adjacent(a, b) {
                continue;
            }
            let co_true = if seen.iter().any(|m| m >> b & 1 == 1) {
                true
            } else if let Some(x) = s.find(pa(&[(a, true), (b, true)]))? {
                seen.push(x.true_mask());
                true
            } else {
                false
            };
            let co_false = if seen.iter().any(|m| m >> b & 1 == 0) {
                true
            } else if let Some(x) = s.find(pa(&[(a, true), (b, false)]))? {
                seen.push(x.true_mask());
                true
            } else {
                false
            };
            if !co_false {
                forced[a] |= 1 << b;
            }
            let kind = match (co_true, co_false) {
                (false, _) => Kind::Tifs,
                (true, false) => Kind::Tits,
                _ => continue,
            };
            out.push(Classification {
                kind,
                a,
                b_or_c: b,
                witness_sat: Some(w.clone()),
                refuted_by_exhaustion: true,
                raw_step2_verdict: true,
            });
        }
    }
    for a in 0..n {
        for c in a + 1..n {
            if g.adjacent(a, c) || forced[a] >> c & 1 == 0 || forced[c] >> a & 1 == 0 {
                continue;
            }
            if !(sat[a] && sat[c]) {
                continue;
            }
            if let Some(w) = s.find(pa(&[(a, true), (c, true)]))? {
                if s.satisfiable(pa(&[(a, false), (c, false)]))? {
                    out.push(Classification {
                        kind: Kind::TrueIffTrue,
                        a,
                        b_or_c: c,
                        witness_sat: Some(w),
                        refuted_by_exhaustion: true,
                        raw_step2_verdict: true,
                    });
                }
            }
        }
    }
    out.sort_by_key(|c| (c.a, c.b_or_c, c.kind));
    Ok(out)
}

/// No vertex other than `a` and `b` can be removed while keeping the TIFS.
pub fn is_critical_tifs(g: &ExclusivityGraph, d: usize, a: usize, b: usize) -> Result<bool, NcError> {
    if !is_tifs(g, d, a, b)? {
        return Err(NcError::NotTifs { a, b });
    }
    for w in 0..g.n() {
        if w == a || w == b {
            continue;
        }
        let h = g.delete_vertex(w).expect("w is in range");
        let shift = |v: usize| if v > w { v - 1 } else { v };
        if is_tifs(&h, d, shift(a), shift(b))? {
            return Ok(false);
        }
    }
    Ok(true)
}
