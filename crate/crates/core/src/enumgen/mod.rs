//! Exhaustive generation of filtered exclusivity graphs, one per
//! isomorphism class, and the minimal-TIFS search on top of it.
//!
//! The augmentation tree is cut at a fixed depth; the subtrees below that
//! depth are numbered in depth-first order and are the units of work. A
//! shard `i/k` owns the units whose index is `i` modulo `k`. Results are
//! merged in unit order, so output does not depend on thread scheduling.

mod checkpoint;
mod generate;
mod search;

pub use checkpoint::Checkpoint;
pub use search::{
    search_minimal_tifs, search_minimal_tifs_with, LevelStats, RejectedHit, SearchOptions, SearchReport, TifsHit,
    UnconfirmedHit,
};

use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::ExclusivityGraph;
use generate::Generator;

/// Largest vertex count accepted by [`generate`].
pub const MAX_GENERATE_N: usize = 16;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("vertex count {0} outside 1..={MAX_GENERATE_N}")]
    TooLarge(usize),
    #[error("dimension {0} is below 3")]
    Dimension(usize),
    #[error("invalid shard {index}/{count}")]
    BadShard { index: usize, count: usize },
    #[error("cannot parse shard `{0}` (expected i/k)")]
    ShardSyntax(String),
    #[error("checkpoint {path}: {message}")]
    Checkpoint { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub fn validate(&self) -> Result<(), EnumError> {
        if self.count == 0 || self.index >= self.count {
            return Err(EnumError::BadShard {
                index: self.index,
                count: self.count,
            });
        }
        Ok(())
    }

    pub fn owns(&self, unit: usize) -> bool {
        unit % self.count == self.index
    }
}

impl FromStr for Shard {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (i, k) = s.split_once('/').ok_or_else(|| EnumError::ShardSyntax(s.into()))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| EnumError::ShardSyntax(s.into()));
        let shard = Shard {
            index: parse(i)?,
            count: parse(k)?,
        };
        shard.validate()?;
        Ok(shard)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: usize,
    pub d: usize,
    /// Prune by the forbidden family of dimension `d` and by `K(d+1)`.
    pub forbid_patterns: bool,
    pub biconnected: bool,
    pub min_degree: usize,
    /// Minimum number of `d`-cliques at full size.
    pub min_d_cliques: usize,
    pub shard: Option<Shard>,
}

impl SearchSpec {
    /// All filters of the minimal-TIFS search in dimension `d`.
    pub fn filtered(n: usize, d: usize) -> Self {
        SearchSpec {
            n,
            d,
            forbid_patterns: true,
            biconnected: true,
            min_degree: 2,
            min_d_cliques: 2,
            shard: None,
        }
    }

    /// Every graph on `n` vertices.
    pub fn unfiltered(n: usize) -> Self {
        SearchSpec {
            n,
            d: 3,
            forbid_patterns: false,
            biconnected: false,
            min_degree: 0,
            min_d_cliques: 0,
            shard: None,
        }
    }

    pub fn with_shard(mut self, shard: Shard) -> Self {
        self.shard = Some(shard);
        self
    }

    /// One-line description stored in checkpoint headers.
    pub fn key(&self) -> String {
        format!(
            "n={} d={} forbid={} biconnected={} min_degree={} min_d_cliques={}",
            self.n, self.d, self.forbid_patterns, self.biconnected, self.min_degree, self.min_d_cliques
        )
    }
}

/// Outcome of one unit of work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitResult {
    pub unit: usize,
    /// Graphs generated in this subtree.
    pub emitted: u64,
    /// Generated graphs accepted by the caller's predicate.
    pub kept: Vec<ExclusivityGraph>,
}

/// Options for [`run_units`].
#[derive(Default)]
pub struct RunOptions<'a> {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    pub checkpoint: Option<&'a Checkpoint>,
    /// Units not started before this instant are skipped.
    pub deadline: Option<Instant>,
}

/// Runs every unit owned by the spec's shard, keeping graphs accepted by
/// `keep`. Returns results sorted by unit and whether every owned unit ran.
pub fn run_units(
    spec: &SearchSpec,
    opts: &RunOptions<'_>,
    keep: impl Fn(&ExclusivityGraph) -> bool + Sync,
) -> Result<(Vec<UnitResult>, bool), EnumError> {
    let gen = Generator::new(spec)?;
    let units = gen.units();
    let done = match opts.checkpoint {
        Some(c) => c.load(spec)?,
        None => Default::default(),
    };
    let owned: Vec<usize> = (0..units.len())
        .filter(|&u| spec.shard.is_none_or(|s| s.owns(u)))
        .collect();
    let cut = AtomicBool::new(false);
    let failure = Mutex::new(None);
    let work = |u: usize| -> Option<UnitResult> {
        if let Some(r) = done.get(&u) {
            return Some(r.clone());
        }
        if opts.deadline.is_some_and(|t| Instant::now() >= t) {
            cut.store(true, Ordering::Relaxed);
            return None;
        }
        let mut emitted = 0;
        let mut kept = Vec::new();
        gen.walk(&units[u], &mut |rows| {
            emitted += 1;
            let g = ExclusivityGraph::from_rows(rows).unwrap();
            if keep(&g) {
                kept.push(g);
            }
        });
        let r = UnitResult { unit: u, emitted, kept };
        if let Some(c) = opts.checkpoint {
            if let Err(e) = c.append(&r) {
                failure.lock().unwrap().get_or_insert(e);
            }
        }
        Some(r)
    };
    let mut results: Vec<UnitResult> = if opts.workers == 1 {
        owned.iter().filter_map(|&u| work(u)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("thread pool");
        pool.install(|| owned.par_iter().filter_map(|&u| work(u)).collect())
    };
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    results.sort_by_key(|r| r.unit);
    Ok((results, !cut.load(Ordering::Relaxed)))
}

/// Calls `f` on every generated graph, sequentially, in unit order.
pub fn for_each_graph(spec: &SearchSpec, mut f: impl FnMut(&ExclusivityGraph)) -> Result<(), EnumError> {
    let gen = Generator::new(spec)?;
    for (u, node) in gen.units().iter().enumerate() {
        if spec.shard.is_some_and(|s| !s.owns(u)) {
            continue;
        }
        gen.walk(node, &mut |rows| f(&ExclusivityGraph::from_rows(rows).unwrap()));
    }
    Ok(())
}

/// Every graph selected by `spec`, one per isomorphism class, in unit
/// order.
pub fn generate(spec: &SearchSpec) -> Result<Vec<ExclusivityGraph>, EnumError> {
    let mut out = Vec::new();
    for_each_graph(spec, |g| out.push(g.clone()))?;
    Ok(out)
}

/// Parallel form of [`generate`] with the same output order.
pub fn generate_parallel(spec: &SearchSpec, workers: usize) -> Result<Vec<ExclusivityGraph>, EnumError> {
    let opts = RunOptions {
        workers,
        ..Default::default()
    };
    let (units, _) = run_units(spec, &opts, |_| true)?;
    Ok(units.into_iter().flat_map(|u| u.kept).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shard_parsing() {
        assert_eq!("1/3".parse::<Shard>().unwrap(), Shard { index: 1, count: 3 });
        assert!(matches!("3/3".parse::<Shard>(), Err(EnumError::BadShard { .. })));
        assert!(matches!("x".parse::<Shard>(), Err(EnumError::ShardSyntax(_))));
        assert!(matches!("0/0".parse::<Shard>(), Err(EnumError::BadShard { .. })));
    }

    #[test]
    fn small_unfiltered_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| generate(&SearchSpec::unfiltered(n)).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 4, 11, 34]);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(generate(&SearchSpec::unfiltered(17)), Err(EnumError::TooLarge(17))));
        assert!(matches!(generate(&SearchSpec::unfiltered(0)), Err(EnumError::TooLarge(0))));
    }
}
