//! On-disk cache of the length spectrum.
//!
//! One JSON file `length_spectrum.json` holding the spectrum up to the largest
//! trace computed so far. Smaller requests are served by truncation; a file
//! with another `version`, or one that does not parse, is recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{length_spectrum, LengthSpectrumEntry};
use crate::error::{Error, Result};

pub const CACHE_ENV_VAR: &str = "MODSURF_CACHE_DIR";
pub const CACHE_VERSION: u32 = 1;
const FILE_NAME: &str = "length_spectrum.json";

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    max_trace: u64,
    entries: Vec<LengthSpectrumEntry>,
}

/// `$MODSURF_CACHE_DIR`, else `$XDG_CACHE_HOME/modsurf`, else
/// `$HOME/.cache/modsurf`.
pub fn cache_dir() -> Option<PathBuf> {
    let nonempty = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty());
    if let Some(dir) = nonempty(CACHE_ENV_VAR) {
        return Some(PathBuf::from(dir));
    }
    if let Some(xdg) = nonempty("XDG_CACHE_HOME") {
        return Some(PathBuf::from(xdg).join("modsurf"));
    }
    nonempty("HOME").map(|h| PathBuf::from(h).join(".cache").join("modsurf"))
}

fn read(path: &Path) -> Option<CacheFile> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    (file.version == CACHE_VERSION).then_some(file)
}

/// Length spectrum up to `max_trace`, read from or written to `dir`.
pub fn length_spectrum_cached(max_trace: u64, dir: &Path) -> Result<Vec<LengthSpectrumEntry>> {
    let path = dir.join(FILE_NAME);
    if let Some(file) = read(&path) {
        if file.max_trace >= max_trace {
            return Ok(file
                .entries
                .into_iter()
                .filter(|e| e.trace <= max_trace)
                .collect());
        }
    }
    let entries = length_spectrum(max_trace)?;
    let file = CacheFile {
        version: CACHE_VERSION,
        max_trace,
        entries,
    };
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    // write then rename so readers never see a partial file
    let tmp = dir.join(format!("{FILE_NAME}.{}.tmp", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(&file)?).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))?;
    Ok(file.entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let fresh = length_spectrum_cached(20, dir.path()).unwrap();
        assert_eq!(fresh, length_spectrum(20).unwrap());
        let again = length_spectrum_cached(20, dir.path()).unwrap();
        assert_eq!(again, fresh);
        let smaller = length_spectrum_cached(9, dir.path()).unwrap();
        assert_eq!(smaller, length_spectrum(9).unwrap());
        // the file still covers 20
        let text = fs::read_to_string(dir.path().join(FILE_NAME)).unwrap();
        assert!(text.contains("\"max_trace\":20"));
        assert!(text.contains("\"necklaces\":[\"12\"]"));
    }

    #[test]
    fn version_mismatch_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(FILE_NAME);
        fs::write(&path, r#"{"version":0,"max_trace":50,"entries":[]}"#).unwrap();
        let got = length_spectrum_cached(10, dir.path()).unwrap();
        assert_eq!(got, length_spectrum(10).unwrap());
        fs::write(&path, "not json").unwrap();
        assert_eq!(length_spectrum_cached(10, dir.path()).unwrap(), got);
    }
}
