//! Ordered record output to a file or stdout.

use std::fs::{File, OpenOptions};
use std::io::{self, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use crate::config::Format;
use crate::error::{HarnessError, Result};
use crate::record::Record;

#[derive(Debug)]
enum Target {
    File(File),
    Stdout,
}

#[derive(Debug)]
pub struct Sink {
    target: Target,
    path: PathBuf,
    format: Format,
    offset: u64,
}

impl Sink {
    /// Start writing to `path` (stdout when `None`). With `resume_at`, the
    /// file is cut back to that length and extended from there.
    pub fn open(path: Option<&Path>, format: Format, resume_at: Option<u64>) -> Result<Self> {
        let Some(path) = path else {
            let mut sink = Self {
                target: Target::Stdout,
                path: PathBuf::from("<stdout>"),
                format,
                offset: 0,
            };
            sink.header()?;
            return Ok(sink);
        };
        let io = |e| HarnessError::io(path, e);
        let (file, offset) = match resume_at {
            Some(offset) => {
                let mut file = OpenOptions::new().write(true).open(path).map_err(io)?;
                let len = file.metadata().map_err(io)?.len();
                if len < offset {
                    return Err(HarnessError::config(format!(
                        "{} is shorter than its checkpoint says",
                        path.display()
                    )));
                }
                file.set_len(offset).map_err(io)?;
                file.seek(SeekFrom::End(0)).map_err(io)?;
                (file, offset)
            }
            None => (File::create(path).map_err(io)?, 0),
        };
        let mut sink = Self {
            target: Target::File(file),
            path: path.to_path_buf(),
            format,
            offset,
        };
        if offset == 0 {
            sink.header()?;
        }
        Ok(sink)
    }

    fn header(&mut self) -> Result<()> {
        match self.format {
            Format::Jsonl => Ok(()),
            Format::Csv => {
                let bytes = csv_bytes(|w| w.write_record(Record::CSV_HEADER));
                self.put(&bytes)
            }
        }
    }

    fn put(&mut self, bytes: &[u8]) -> Result<()> {
        let res = match &mut self.target {
            Target::File(f) => f.write_all(bytes),
            Target::Stdout => io::stdout().lock().write_all(bytes),
        };
        res.map_err(|e| HarnessError::io(&self.path, e))?;
        self.offset += bytes.len() as u64;
        Ok(())
    }

    pub fn write(&mut self, records: &[Record]) -> Result<()> {
        let bytes: Vec<u8> = match self.format {
            Format::Jsonl => records.iter().flat_map(|r| r.to_json_line().into_bytes()).collect(),
            Format::Csv => csv_bytes(|w| records.iter().try_for_each(|r| w.write_record(r.csv_row()))),
        };
        self.put(&bytes)
    }

    /// Bytes written so far, including any kept from a resumed run.
    pub fn offset(&self) -> u64 {
        self.offset
    }

    /// Flush, and for files wait until the data is on disk.
    pub fn sync(&mut self) -> Result<()> {
        let res = match &mut self.target {
            Target::File(f) => f.flush().and_then(|_| f.sync_data()),
            Target::Stdout => io::stdout().flush(),
        };
        res.map_err(|e| HarnessError::io(&self.path, e))
    }
}

fn csv_bytes(f: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    f(&mut w).expect("writing to memory");
    w.into_inner().expect("writing to memory")
}
