//! Resumable progress of a sharded search.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Completed shards and their canonical results. The digest covers them
/// all, so a truncated or edited file is rejected rather than resumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchCheckpoint {
    pub schema: u32,
    pub search_id: String,
    pub bound: u64,
    pub completed: BTreeMap<u64, Vec<[u64; 6]>>,
    pub digest: String,
}

impl SearchCheckpoint {
    pub fn new(search_id: &str, bound: u64) -> Self {
        let mut c = Self { schema: 1, search_id: search_id.into(), bound, completed: BTreeMap::new(), digest: String::new() };
        c.digest = c.compute_digest();
        c
    }

    pub fn compute_digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}\n{}\n", self.search_id, self.bound));
        for (shard, items) in &self.completed {
            h.update(format!("{shard}:"));
            for e in items {
                h.update(format!("{e:?};"));
            }
            h.update("\n");
        }
        hex::encode(h.finalize())
    }

    /// The saved checkpoint for this search, or a fresh one if `path` does
    /// not exist yet.
    pub fn load_or_new(path: &Path, search_id: &str, bound: u64) -> Result<Self> {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Self::new(search_id, bound)),
            Err(e) => return Err(CliError::io(path.display(), e)),
        };
        let c: Self = serde_json::from_str(&text).map_err(|e| CliError::io(format!("checkpoint {}", path.display()), e))?;
        if c.digest != c.compute_digest() {
            return Err(CliError::Io(format!("checkpoint {} is corrupt: digest mismatch", path.display())));
        }
        if c.search_id != search_id || c.bound != bound {
            return Err(CliError::Usage(format!(
                "checkpoint {} belongs to `{}` with bound {}, not `{search_id}` with bound {bound}",
                path.display(),
                c.search_id,
                c.bound
            )));
        }
        Ok(c)
    }

    pub fn record(&mut self, shard: u64, items: Vec<[u64; 6]>) {
        self.completed.insert(shard, items);
    }

    /// Refreshes the digest and writes the checkpoint atomically.
    pub fn save(&mut self, path: &Path) -> Result<()> {
        self.digest = self.compute_digest();
        let text = serde_json::to_string(self).expect("checkpoints serialise");
        write_atomically(path, text.as_bytes())
    }
}

fn parent_dir(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Writes through a temporary file in the same directory and renames it
/// over `path`, so readers never see a partial file.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = tempfile::NamedTempFile::new_in(parent_dir(path)).map_err(|e| CliError::io(path.display(), e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path.display(), e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path.display(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path.display(), e.error))?;
    Ok(())
}
