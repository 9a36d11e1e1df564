//! Disk cache for structure-polynomial sets.
//!
//! One text file per key, in the canonical polynomial form. Writers go
//! through a temp file plus rename, so concurrent duplicate builds are
//! harmless (last write wins on identical canonical content).

use crate::error::{Error, Result};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Default)]
pub struct LawCache {
    dir: Option<PathBuf>,
}

impl LawCache {
    /// In-memory only; nothing touches the filesystem.
    pub fn disabled() -> LawCache {
        LawCache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> LawCache {
        LawCache {
            dir: Some(dir.into()),
        }
    }

    /// `GREENBERG_CACHE` if set, else `./.cache`.
    pub fn from_env_or_default() -> LawCache {
        let dir = std::env::var_os("GREENBERG_CACHE")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".cache"));
        LawCache::at(dir)
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn read(&self, name: &str) -> Option<String> {
        let dir = self.dir.as_ref()?;
        std::fs::read_to_string(dir.join(name)).ok()
    }

    pub fn write(&self, name: &str, content: &str) -> Result<()> {
        let Some(dir) = self.dir.as_ref() else {
            return Ok(());
        };
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
        let tmp = dir.join(format!(
            ".{}.tmp.{}.{}",
            name,
            std::process::id(),
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.subsec_nanos())
                .unwrap_or(0)
        ));
        std::fs::write(&tmp, content).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::rename(&tmp, dir.join(name)).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }
}
