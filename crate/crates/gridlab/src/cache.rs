//! Content-addressed result cache on disk.
//!
//! Entries live at `<dir>/<first two hex digits>/<key>.json` and are written to
//! a temporary file in the same directory, then renamed into place.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use gridlab_core::grid::GridDiagram;
use gridlab_core::text::serialize_grid;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = concat!("gridlab ", env!("CARGO_PKG_VERSION"));

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    tool_version: String,
    key: String,
    value: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    version: String,
}

/// SHA-256 of the canonical text of a grid.
pub fn grid_hash(g: &GridDiagram) -> String {
    hex::encode(Sha256::digest(serialize_grid(g).as_bytes()))
}

/// Key for an operation on some grids with some parameters.
pub fn key(op: &str, params: &[(&str, String)], grids: &[&GridDiagram]) -> String {
    let mut h = Sha256::new();
    h.update(op.as_bytes());
    h.update(b"\0");
    for (name, value) in params {
        h.update(format!("{name}={value}\n").as_bytes());
    }
    for g in grids {
        h.update(b"\0");
        h.update(serialize_grid(g).as_bytes());
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn disabled() -> Self {
        Self { dir: None, version: TOOL_VERSION.into() }
    }

    pub fn at(dir: impl Into<PathBuf>, version: &str) -> Self {
        Self { dir: Some(dir.into()), version: version.into() }
    }

    /// `GRIDLAB_CACHE`, else `~/.cache/gridlab`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os("GRIDLAB_CACHE").filter(|d| !d.is_empty()) {
            return Some(d.into());
        }
        std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("gridlab"))
    }

    pub fn from_env() -> Self {
        match Self::default_dir() {
            Some(d) => Self::at(d, TOOL_VERSION),
            None => Self::disabled(),
        }
    }

    pub fn enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        Some(dir.join(&key[..2]).join(format!("{key}.json")))
    }

    /// A stored value, or `None` on a miss, a version mismatch or an entry
    /// that does not parse.
    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let bytes = fs::read(self.path(key)?).ok()?;
        let entry: Entry<T> = serde_json::from_slice(&bytes).ok()?;
        (entry.tool_version == self.version && entry.key == key).then_some(entry.value)
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> io::Result<()> {
        let Some(path) = self.path(key) else { return Ok(()) };
        let dir = path.parent().expect("entry has a parent");
        fs::create_dir_all(dir)?;
        let entry = Entry { tool_version: self.version.clone(), key: key.into(), value };
        let tmp =
            dir.join(format!(".{key}.{}.{}.tmp", std::process::id(), TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)));
        let write = || -> io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer(&mut f, &entry)?;
            f.write_all(b"\n")?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }

    /// Look up `key`, computing and storing on a miss. A failed store prints a
    /// warning and turns the cache off for the rest of the run.
    pub fn get_or<T, E>(
        &mut self,
        key: &str,
        warn: &mut dyn Write,
        compute: impl FnOnce() -> Result<T, E>,
    ) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        if let Some(v) = self.get(key) {
            let _ = writeln!(warn, "gridlab: cache hit {}", &key[..12]);
            return Ok(v);
        }
        let v = compute()?;
        if let Err(e) = self.put(key, &v) {
            let _ = writeln!(
                warn,
                "warning: cache directory {} is not writable ({e}); caching disabled",
                self.dir.as_ref().map(|d| d.display().to_string()).unwrap_or_default()
            );
            self.dir = None;
        }
        Ok(v)
    }
}
