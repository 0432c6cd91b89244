//! Persistent copy of the θ and skew-θ memo tables, one JSON file per α.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use weingarten::algebra::wire::parse_rational;
use weingarten::jack::{seed_skew, seed_theta, skew_entries, theta_entries};
use weingarten::{Alpha, Partition};

pub const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub alpha: i64,
    /// `"λ|μ"` for θ, `"λ|μ|ν"` for skew θ; values are reduced fractions.
    pub entries: BTreeMap<String, String>,
}

/// `$WEINGARTEN_CACHE_DIR`, else `$XDG_DATA_HOME/weingarten`, else
/// `~/.local/share/weingarten`.
pub fn dir() -> PathBuf {
    if let Some(d) = std::env::var_os("WEINGARTEN_CACHE_DIR") {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_DATA_HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(d).join("weingarten");
    }
    let home = std::env::var_os("HOME").map(PathBuf::from).unwrap_or_else(|| ".".into());
    home.join(".local/share/weingarten")
}

pub fn file(dir: &Path, alpha: Alpha) -> PathBuf {
    dir.join(format!("theta-alpha{}.json", alpha.value()))
}

fn snapshot(alpha: Alpha) -> CacheFile {
    let mut entries = BTreeMap::new();
    for ((l, m), v) in theta_entries(alpha) {
        entries.insert(format!("{}|{}", l.to_code(), m.to_code()), v.to_string());
    }
    for ((l, m, n), v) in skew_entries(alpha) {
        entries.insert(format!("{}|{}|{}", l.to_code(), m.to_code(), n.to_code()), v.to_string());
    }
    CacheFile {
        version: VERSION,
        alpha: alpha.value(),
        entries,
    }
}

/// Read a cache file. Missing, unreadable, or stale files yield `None`.
pub fn read(path: &Path, alpha: Alpha) -> Option<CacheFile> {
    let text = fs::read_to_string(path).ok()?;
    let c: CacheFile = serde_json::from_str(&text).ok()?;
    (c.version == VERSION && c.alpha == alpha.value()).then_some(c)
}

/// Seed the in-memory tables; returns the number of entries loaded. A
/// file with any malformed entry is ignored as a whole.
pub fn load(dir: &Path, alpha: Alpha) -> usize {
    let Some(c) = read(&file(dir, alpha), alpha) else {
        return 0;
    };
    type Parsed = (Vec<Partition>, weingarten::Rational);
    let parsed: Option<Vec<Parsed>> = c
        .entries
        .iter()
        .map(|(k, v)| {
            let parts = k.split('|').map(|p| p.parse().ok()).collect::<Option<Vec<_>>>()?;
            Some((parts, parse_rational(v).ok()?))
        })
        .collect();
    let Some(parsed) = parsed else {
        return 0;
    };
    let mut n = 0;
    for (mut parts, v) in parsed {
        match parts.len() {
            2 => {
                let m = parts.pop().unwrap();
                seed_theta(alpha, parts.pop().unwrap(), m, v);
            }
            3 => {
                let nu = parts.pop().unwrap();
                let m = parts.pop().unwrap();
                seed_skew(alpha, parts.pop().unwrap(), m, nu, v);
            }
            _ => continue,
        }
        n += 1;
    }
    n
}

/// Write the current tables when they hold more than the file on disk.
/// The file is replaced atomically.
pub fn save(dir: &Path, alpha: Alpha) -> std::io::Result<()> {
    let snap = snapshot(alpha);
    let path = file(dir, alpha);
    let on_disk = read(&path, alpha).map_or(0, |c| c.entries.len());
    if snap.entries.len() <= on_disk {
        return Ok(());
    }
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, &snap)?;
    tmp.flush()?;
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(())
}

/// Remove both cache files; returns how many existed.
pub fn clear(dir: &Path) -> std::io::Result<usize> {
    let mut n = 0;
    for alpha in [Alpha::One, Alpha::Two] {
        match fs::remove_file(file(dir, alpha)) {
            Ok(()) => n += 1,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
    }
    Ok(n)
}

/// Entry counts per α for files present on disk.
pub fn summary(dir: &Path) -> Vec<(i64, usize)> {
    [Alpha::One, Alpha::Two]
        .into_iter()
        .filter_map(|a| read(&file(dir, a), a).map(|c| (a.value(), c.entries.len())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stale_versions_are_ignored() {
        let d = tempfile::tempdir().unwrap();
        let bad = CacheFile {
            version: VERSION + 1,
            alpha: 1,
            entries: BTreeMap::from([("2|2".to_string(), "1".to_string())]),
        };
        fs::write(file(d.path(), Alpha::One), serde_json::to_string(&bad).unwrap()).unwrap();
        assert!(read(&file(d.path(), Alpha::One), Alpha::One).is_none());
        assert_eq!(load(d.path(), Alpha::One), 0);
    }

    #[test]
    fn garbage_is_ignored() {
        let d = tempfile::tempdir().unwrap();
        fs::write(file(d.path(), Alpha::Two), "{not json").unwrap();
        assert_eq!(load(d.path(), Alpha::Two), 0);
        let c = CacheFile {
            version: VERSION,
            alpha: 2,
            entries: BTreeMap::from([("2|x".to_string(), "1".to_string())]),
        };
        fs::write(file(d.path(), Alpha::Two), serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(load(d.path(), Alpha::Two), 0);
    }
}
