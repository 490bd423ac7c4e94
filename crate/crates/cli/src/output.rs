//! Output directory resolution and atomic file writes.

use std::io::Write as _;
use std::path::{Path, PathBuf};

/// Environment variable that overrides every other output directory setting.
pub const OUT_ENV: &str = "CHAB_OUT";
pub const DEFAULT_OUT: &str = "chab-out";

/// `CHAB_OUT`, else the command-line flag, else the config entry, else `chab-out`.
pub fn resolve_out_dir(flag: Option<&Path>, config: Option<&Path>) -> PathBuf {
    if let Some(env) = std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(env);
    }
    flag.or(config)
        .map_or_else(|| PathBuf::from(DEFAULT_OUT), Path::to_path_buf)
}

/// Writes `contents` to `dir/name` through a temporary file in the same
/// directory followed by a rename, so readers never see a partial file.
pub fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    let target = dir.join(name);
    tmp.persist(&target).map_err(|e| e.error)?;
    Ok(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let sub = dir.path().join("nested");
        write_atomic(&sub, "a.txt", b"one").unwrap();
        write_atomic(&sub, "a.txt", b"two").unwrap();
        assert_eq!(std::fs::read_to_string(sub.join("a.txt")).unwrap(), "two");
        assert_eq!(std::fs::read_dir(&sub).unwrap().count(), 1);
    }
}
