//! Resumable progress: a JSONL file whose first line fingerprints the
//! config and whose later lines each mark one completed chunk.

use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::summary::Counts;

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    fingerprint: String,
}

/// A completed chunk, with the output length and totals after it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkEntry {
    pub chunk: usize,
    /// Outer values of the chunk.
    pub keys: Vec<u64>,
    pub tuples: u64,
    pub offset: u64,
    pub counts: Counts,
}

#[derive(Debug)]
pub struct Checkpoint {
    path: PathBuf,
    file: File,
}

impl Checkpoint {
    /// Open or create the checkpoint for a run with `fingerprint`,
    /// returning the last completed chunk when there is one. A torn last
    /// line is dropped.
    pub fn open(path: &Path, fingerprint: &str) -> Result<(Self, Option<ChunkEntry>)> {
        let io = |e| HarnessError::io(path, e);
        let mut text = String::new();
        if path.exists() {
            File::open(path).and_then(|mut f| f.read_to_string(&mut text)).map_err(io)?;
        }
        let mut lines = Vec::new();
        let mut valid = 0usize;
        for line in text.split_inclusive('\n') {
            if !line.ends_with('\n') {
                break;
            }
            valid += line.len();
            lines.push(line.trim_end());
        }
        let Some((head, rest)) = lines.split_first() else {
            let mut file = File::create(path).map_err(io)?;
            let header = serde_json::to_string(&Header {
                fingerprint: fingerprint.to_string(),
            })
            .expect("header serializes");
            writeln!(file, "{header}").and_then(|_| file.sync_all()).map_err(io)?;
            return Ok((
                Self {
                    path: path.to_path_buf(),
                    file,
                },
                None,
            ));
        };
        let corrupt = |what: &str| HarnessError::config(format!("{}: corrupt checkpoint {what}", path.display()));
        let header: Header = serde_json::from_str(head).map_err(|_| corrupt("header"))?;
        if header.fingerprint != fingerprint {
            return Err(HarnessError::config(format!(
                "{} was written for a different configuration",
                path.display()
            )));
        }
        let mut last = None;
        for line in rest {
            let entry: ChunkEntry = serde_json::from_str(line).map_err(|_| corrupt("entry"))?;
            last = Some(entry);
        }
        let file = OpenOptions::new().write(true).open(path).map_err(io)?;
        file.set_len(valid as u64).map_err(io)?;
        let mut cp = Self {
            path: path.to_path_buf(),
            file,
        };
        cp.seek_end()?;
        Ok((cp, last))
    }

    fn seek_end(&mut self) -> Result<()> {
        use std::io::{Seek, SeekFrom};
        self.file
            .seek(SeekFrom::End(0))
            .map(|_| ())
            .map_err(|e| HarnessError::io(&self.path, e))
    }

    /// Append `entry` and sync it to disk.
    pub fn record(&mut self, entry: &ChunkEntry) -> Result<()> {
        let line = serde_json::to_string(entry).expect("entries serialize");
        writeln!(self.file, "{line}")
            .and_then(|_| self.file.sync_data())
            .map_err(|e| HarnessError::io(&self.path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(chunk: usize) -> ChunkEntry {
        ChunkEntry {
            chunk,
            keys: vec![chunk as u64],
            tuples: 1,
            offset: 10 * chunk as u64,
            counts: Counts::default(),
        }
    }

    #[test]
    fn resume_and_torn_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ckpt");
        let (mut cp, last) = Checkpoint::open(&path, "abc").unwrap();
        assert_eq!(last, None);
        cp.record(&entry(0)).unwrap();
        cp.record(&entry(1)).unwrap();
        drop(cp);
        std::fs::OpenOptions::new()
            .append(true)
            .open(&path)
            .unwrap()
            .write_all(b"{\"chunk\":2,\"ke")
            .unwrap();
        let (mut cp, last) = Checkpoint::open(&path, "abc").unwrap();
        assert_eq!(last, Some(entry(1)));
        cp.record(&entry(2)).unwrap();
        drop(cp);
        let (_, last) = Checkpoint::open(&path, "abc").unwrap();
        assert_eq!(last, Some(entry(2)));
        assert!(matches!(Checkpoint::open(&path, "other"), Err(HarnessError::Config(_))));
    }
}
