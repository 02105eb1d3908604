use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::{run_units, Checkpoint, EnumError, RunOptions, SearchSpec, Shard};
use crate::construct::DesignatedGraph;
use crate::graph::ExclusivityGraph;
use crate::nclogic::{classify_all_pairs, Certificate, Kind};
use crate::realize::{numeric_realization_search, orthogonality_conflict, Conflict};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    /// Wall-clock budget for the whole search.
    pub budget: Option<Duration>,
    /// Checkpoint files are `<prefix>.n<N>`.
    pub checkpoint_prefix: Option<PathBuf>,
    pub shard: Option<Shard>,
    /// Random restarts for the numeric realizability check.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 0,
            budget: None,
            checkpoint_prefix: None,
            shard: None,
            restarts: 64,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelStats {
    pub n: usize,
    pub graphs_emitted: u64,
    /// Designated TIFS pairs passing the graph filters.
    pub candidates: usize,
    /// Candidates with a realization found numerically.
    pub tifs_graphs: usize,
    #[serde(skip)]
    pub seconds: f64,
}

/// One designated TIFS, relabelled canonically (A at 0, B at 1).
#[derive(Clone, Debug, Serialize)]
pub struct TifsHit {
    pub canonical: String,
    pub certificate: Certificate,
}

/// A candidate with a proof that no faithful realization exists.
#[derive(Clone, Debug, Serialize)]
pub struct RejectedHit {
    pub n: usize,
    pub canonical: String,
    pub conflict: Conflict,
}

/// A candidate neither refuted nor realized within the restart budget.
#[derive(Clone, Debug, Serialize)]
pub struct UnconfirmedHit {
    pub n: usize,
    pub canonical: String,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub d: usize,
    pub n_max: usize,
    pub first_hit: Option<usize>,
    pub graphs_emitted: u64,
    pub levels: Vec<LevelStats>,
    /// Sorted by canonical form.
    pub tifs_found: Vec<TifsHit>,
    pub rejected: Vec<RejectedHit>,
    pub unconfirmed: Vec<UnconfirmedHit>,
    /// False when the budget ran out before every unit was searched.
    pub complete: bool,
    #[serde(skip)]
    pub wall_seconds: f64,
}

/// Designated TIFS pairs of `g`, deduplicated up to isomorphism fixing the
/// pair and keyed by canonical form.
pub(crate) fn tifs_hits(g: &ExclusivityGraph, d: usize) -> BTreeMap<Vec<u8>, DesignatedGraph> {
    let mut out = BTreeMap::new();
    for c in classify_all_pairs(g, d).expect("d >= 3") {
        if c.kind != Kind::Tifs {
            continue;
        }
        let t = DesignatedGraph {
            graph: g.clone(),
            d,
            a: c.a,
            b_or_c: c.b_or_c,
            kind: Kind::Tifs,
        };
        let cf = t.canonical_form();
        out.entry(cf.bytes).or_insert_with(|| DesignatedGraph {
            graph: g.permute(&cf.labeling),
            d,
            a: cf.labeling[c.a],
            b_or_c: cf.labeling[c.b_or_c],
            kind: Kind::Tifs,
        });
    }
    out
}

fn has_tifs(g: &ExclusivityGraph, d: usize) -> bool {
    classify_all_pairs(g, d)
        .expect("d >= 3")
        .iter()
        .any(|c| c.kind == Kind::Tifs)
}

pub fn search_minimal_tifs(d: usize, n_max: usize) -> Result<SearchReport, EnumError> {
    search_minimal_tifs_with(d, n_max, &SearchOptions::default())
}

/// Searches `n = d+1 ..= n_max` and stops at the first size with a
/// realizable TIFS. Candidates are dropped when an orthogonality conflict
/// rules out every faithful realization, and kept only when numeric descent
/// finds one.
pub fn search_minimal_tifs_with(d: usize, n_max: usize, opts: &SearchOptions) -> Result<SearchReport, EnumError> {
    if d < 3 {
        return Err(EnumError::Dimension(d));
    }
    let start = Instant::now();
    let deadline = opts.budget.map(|b| start + b);
    let mut report = SearchReport {
        d,
        n_max,
        first_hit: None,
        graphs_emitted: 0,
        levels: Vec::new(),
        tifs_found: Vec::new(),
        rejected: Vec::new(),
        unconfirmed: Vec::new(),
        complete: true,
        wall_seconds: 0.0,
    };
    for n in d + 1..=n_max {
        let level_start = Instant::now();
        let mut spec = SearchSpec::filtered(n, d);
        spec.shard = opts.shard;
        let checkpoint = opts.checkpoint_prefix.as_ref().map(|p| {
            let mut name = p.clone().into_os_string();
            name.push(format!(".n{n}"));
            Checkpoint::new(PathBuf::from(name))
        });
        let run = RunOptions {
            workers: opts.workers,
            checkpoint: checkpoint.as_ref(),
            deadline,
        };
        let (units, complete) = run_units(&spec, &run, |g| has_tifs(g, d))?;
        let emitted: u64 = units.iter().map(|u| u.emitted).sum();
        let mut hits = BTreeMap::new();
        for g in units.iter().flat_map(|u| &u.kept) {
            hits.extend(tifs_hits(g, d));
        }
        let candidates = hits.len();
        let mut found = Vec::new();
        for (bytes, t) in hits {
            let canonical = String::from_utf8(bytes).expect("ascii");
            if let Some(conflict) = orthogonality_conflict(&t.graph, d) {
                report.rejected.push(RejectedHit { n, canonical, conflict });
                continue;
            }
            let numeric = numeric_realization_search(&t.graph, d, opts.restarts.max(1), opts.seed).expect("valid input");
            if numeric.converged() {
                found.push(TifsHit {
                    canonical,
                    certificate: t.certificate().expect("valid pair"),
                });
            } else {
                report.unconfirmed.push(UnconfirmedHit {
                    n,
                    canonical,
                    residual: numeric.residual,
                });
            }
        }
        report.graphs_emitted += emitted;
        report.levels.push(LevelStats {
            n,
            graphs_emitted: emitted,
            candidates,
            tifs_graphs: found.len(),
            seconds: level_start.elapsed().as_secs_f64(),
        });
        report.complete &= complete;
        if !complete {
            break;
        }
        if !found.is_empty() {
            report.first_hit = Some(n);
            report.tifs_found = found;
            break;
        }
    }
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
