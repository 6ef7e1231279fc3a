//! On-disk cache of power-sequence entries, one JSON file per ideal.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use monoideal_core::sinvariant::PowerEntry;
use monoideal_core::MonomialIdeal;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "MONOIDEAL_CACHE_DIR";

const LOCK_TIMEOUT: Duration = Duration::from_secs(10);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedEntry {
    pub d: u32,
    pub reg: i64,
    /// Seconds since the Unix epoch.
    pub computed_at: u64,
}

impl CachedEntry {
    pub fn entry(&self) -> PowerEntry {
        PowerEntry { d: self.d, reg: self.reg }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    ring: Vec<String>,
    generators: Vec<String>,
    exponents: Vec<Vec<u32>>,
    entries: BTreeMap<u32, CachedEntry>,
}

/// Hex SHA-256 of the minimal generators' exponent vectors. Variable
/// names do not enter the key.
pub fn ideal_hash(ideal: &MonomialIdeal) -> String {
    let mut hasher = Sha256::new();
    hasher.update((ideal.ring().num_variables() as u64).to_le_bytes());
    for g in ideal.generators() {
        hasher.update(b";");
        for e in g.exponents() {
            hasher.update(e.to_le_bytes());
        }
    }
    hex::encode(hasher.finalize())
}

pub fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

pub struct PowerCache {
    dir: PathBuf,
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

impl PowerCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PowerCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, ideal: &MonomialIdeal) -> PathBuf {
        self.dir.join(format!("{}.json", ideal_hash(ideal)))
    }

    /// Stored entries; a missing file is an empty map.
    pub fn read(&self, ideal: &MonomialIdeal) -> Result<BTreeMap<u32, CachedEntry>> {
        let path = self.path_for(ideal);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(BTreeMap::new()),
            Err(e) => return Err(CliError::io(path, e)),
        };
        let file: CacheFile = serde_json::from_str(&text)
            .map_err(|e| CliError::CacheFormat { path: path.clone(), message: e.to_string() })?;
        let expected: Vec<Vec<u32>> = ideal.generators().iter().map(|g| g.exponents().to_vec()).collect();
        if file.exponents != expected {
            return Err(CliError::CacheFormat {
                path,
                message: "stored generators differ from the requested ideal".into(),
            });
        }
        Ok(file.entries)
    }

    /// Merges `fresh` into the stored map and atomically replaces the file.
    /// A `p` stored with different values is an integrity error and leaves
    /// the file untouched.
    pub fn merge_write(
        &self,
        ideal: &MonomialIdeal,
        fresh: &BTreeMap<u32, CachedEntry>,
    ) -> Result<BTreeMap<u32, CachedEntry>> {
        fs::create_dir_all(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        let path = self.path_for(ideal);
        let _lock = self.lock(&path)?;
        let mut merged = self.read(ideal)?;
        for (&p, new) in fresh {
            match merged.get(&p) {
                Some(old) if old.entry() != new.entry() => {
                    return Err(CliError::Integrity {
                        path,
                        p,
                        stored: format!("d = {}, reg = {}", old.d, old.reg),
                        computed: format!("d = {}, reg = {}", new.d, new.reg),
                    });
                }
                Some(_) => {}
                None => {
                    merged.insert(p, *new);
                }
            }
        }
        let file = CacheFile {
            ring: ideal.ring().variable_names().to_vec(),
            generators: ideal.generators().iter().map(|g| ideal.ring().display(g).to_string()).collect(),
            exponents: ideal.generators().iter().map(|g| g.exponents().to_vec()).collect(),
            entries: merged.clone(),
        };
        let tmp = path.with_extension(format!("json.tmp.{}", std::process::id()));
        let body = serde_json::to_string_pretty(&file).expect("cache documents serialize");
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(body.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            CliError::io(&path, e)
        })?;
        Ok(merged)
    }

    fn lock(&self, path: &Path) -> Result<LockGuard> {
        let lock = path.with_extension("lock");
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&lock) {
                Ok(_) => return Ok(LockGuard(lock)),
                Err(e) if e.kind() == ErrorKind::AlreadyExists && start.elapsed() < LOCK_TIMEOUT => {
                    thread::sleep(Duration::from_millis(20));
                }
                Err(e) => return Err(CliError::io(lock, e)),
            }
        }
    }
}

pub fn known_entries(stored: &BTreeMap<u32, CachedEntry>) -> BTreeMap<u32, PowerEntry> {
    stored.iter().map(|(&p, e)| (p, e.entry())).collect()
}
