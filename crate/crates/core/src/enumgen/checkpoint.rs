//! Append-only progress file.
//!
//! ```text
//! # tifs checkpoint n=8 d=3 forbid=true biconnected=true min_degree=2 min_d_cliques=2
//! 0 0
//! 3 2 G?bF`w G?ov_[
//! ```
//!
//! Each line after the header is `unit emitted graph6...`, written once the
//! unit is finished. An unterminated last line is ignored on reload.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::{EnumError, SearchSpec, UnitResult};
use crate::graph::format::{from_graph6, to_graph6};

const HEADER: &str = "# tifs checkpoint ";

#[derive(Debug)]
pub struct Checkpoint {
    path: PathBuf,
    lock: Mutex<()>,
}

impl Checkpoint {
    pub fn new(path: impl AsRef<Path>) -> Self {
        Checkpoint {
            path: path.as_ref().to_path_buf(),
            lock: Mutex::new(()),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn error(&self, message: impl Into<String>) -> EnumError {
        EnumError::Checkpoint {
            path: self.path.display().to_string(),
            message: message.into(),
        }
    }

    /// Finished units recorded for `spec`; writes the header to a new file.
    pub fn load(&self, spec: &SearchSpec) -> Result<HashMap<usize, UnitResult>, EnumError> {
        let _guard = self.lock.lock().unwrap();
        let header = format!("{HEADER}{}", spec.key());
        let text = match std::fs::read_to_string(&self.path) {
            Ok(t) if !t.is_empty() => t,
            Ok(_) | Err(_) => {
                std::fs::write(&self.path, format!("{header}\n"))?;
                return Ok(HashMap::new());
            }
        };
        let complete = match text.rfind('\n') {
            Some(p) => &text[..p],
            None => return Err(self.error("header line is unterminated")),
        };
        let mut lines = complete.lines();
        if lines.next() != Some(header.as_str()) {
            return Err(self.error(format!("header does not match `{header}`")));
        }
        let mut done = HashMap::new();
        for (i, line) in lines.enumerate() {
            let bad = |what: &str| self.error(format!("line {}: {what}", i + 2));
            let mut parts = line.split_ascii_whitespace();
            let unit = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad unit index"))?;
            let emitted = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad count"))?;
            let kept = parts
                .map(|s| from_graph6(s.as_bytes()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| bad(&e.to_string()))?;
            done.insert(unit, UnitResult { unit, emitted, kept });
        }
        Ok(done)
    }

    pub fn append(&self, r: &UnitResult) -> Result<(), EnumError> {
        let mut line = format!("{} {}", r.unit, r.emitted);
        for g in &r.kept {
            line.push(' ');
            line.push_str(&to_graph6(g));
        }
        line.push('\n');
        let _guard = self.lock.lock().unwrap();
        let mut f = OpenOptions::new().append(true).create(true).open(&self.path)?;
        f.write_all(line.as_bytes())?;
        f.flush()?;
        Ok(())
    }
}
