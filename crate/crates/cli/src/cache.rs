use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use hypsum_core::sieve::{FunctionTable, TableMeta};
use hypsum_core::Result;

pub const CACHE_ENV: &str = "HYPSUM_CACHE";

/// On-disk store of sieved tables keyed by (function, limit).
#[derive(Debug)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

impl TableCache {
    /// `HYPSUM_CACHE` wins over `--cache-dir`; without either, nothing is cached.
    pub fn resolve(flag: Option<PathBuf>, disabled: bool) -> Self {
        let dir = if disabled {
            None
        } else {
            std::env::var_os(CACHE_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
                .or(flag)
        };
        Self { dir }
    }

    #[cfg(test)]
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn path_for(&self, name: &str, limit: u64) -> Option<PathBuf> {
        let key: String = name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        let key = key.trim_end_matches('_');
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{key}-{limit}.hsv")))
    }

    /// Returns the cached table or builds it and stores the result. A damaged
    /// cache file is reported and rebuilt rather than trusted.
    pub fn load_or_build(
        &self,
        meta: TableMeta,
        limit: u64,
        build: impl FnOnce() -> Result<FunctionTable>,
    ) -> Result<FunctionTable> {
        let Some(path) = self.path_for(&meta.name, limit) else {
            return build();
        };
        if path.exists() {
            match read(&path, meta.clone()) {
                Ok(t) if t.limit() == limit => return Ok(t),
                Ok(t) => eprintln!(
                    "warning: {} holds limit {}, expected {limit}; rebuilding",
                    path.display(),
                    t.limit()
                ),
                Err(e) => eprintln!("warning: ignoring cache file {}: {e}", path.display()),
            }
        }
        let table = build()?;
        if let Err(e) = store(&path, &table) {
            eprintln!("warning: could not cache {}: {e}", path.display());
        }
        Ok(table)
    }
}

fn read(path: &Path, meta: TableMeta) -> Result<FunctionTable> {
    FunctionTable::read_hsv(BufReader::new(File::open(path)?), meta)
}

/// Writes to a temporary file in the cache directory, then renames it into place.
fn store(path: &Path, table: &FunctionTable) -> std::io::Result<()> {
    let dir = path.parent().expect("cache paths have a parent");
    fs::create_dir_all(dir)?;
    let tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        table.write_hsv(&mut w)?;
        w.flush()?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
