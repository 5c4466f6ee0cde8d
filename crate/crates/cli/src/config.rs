//! Settings from flags, environment and an optional TOML file, in that
//! order of precedence.
//!
//! ```toml
//! cache_dir = "/var/tmp/lucky"
//! threads = 4
//! allow_long = false
//! no_cache = false
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use lucky_core::oracle::cache::Cache;

use crate::{CliError, CliResult, GlobalOpts};

pub const CACHE_DIR_ENV: &str = "LUCKY_CACHE_DIR";
pub const CONFIG_ENV: &str = "LUCKY_CONFIG";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub allow_long: Option<bool>,
    pub no_cache: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::usage(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub cache: Option<Cache>,
    pub threads: Option<usize>,
    pub allow_long: bool,
}

impl Settings {
    pub fn resolve(opts: &GlobalOpts) -> CliResult<Self> {
        let config_path = opts
            .config
            .clone()
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        let file = match config_path {
            Some(p) => ConfigFile::load(&p)?,
            None => ConfigFile::default(),
        };
        let threads = opts.threads.or(file.threads);
        if threads == Some(0) {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        let no_cache = opts.no_cache || file.no_cache.unwrap_or(false);
        let cache_dir = opts
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .or(file.cache_dir)
            .or_else(default_cache_dir);
        Ok(Settings {
            cache: if no_cache { None } else { cache_dir.map(Cache::new) },
            threads,
            allow_long: opts.allow_long || file.allow_long.unwrap_or(false),
        })
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(xdg).join("lucky"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("lucky"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("lucky.toml");
        fs::write(&cfg, "threads = 3\nallow_long = true\ncache_dir = \"/nonexistent\"\n").unwrap();
        let opts = GlobalOpts {
            threads: Some(1),
            config: Some(cfg.clone()),
            cache_dir: Some(dir.path().to_path_buf()),
            ..Default::default()
        };
        let s = Settings::resolve(&opts).unwrap();
        assert_eq!(s.threads, Some(1));
        assert!(s.allow_long);
        assert_eq!(s.cache.unwrap().dir(), dir.path());

        let opts = GlobalOpts {
            config: Some(cfg),
            no_cache: true,
            ..Default::default()
        };
        let s = Settings::resolve(&opts).unwrap();
        assert_eq!(s.threads, Some(3));
        assert!(s.cache.is_none());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("lucky.toml");
        fs::write(&cfg, "thread = 3\n").unwrap();
        let opts = GlobalOpts { config: Some(cfg), ..Default::default() };
        assert_eq!(Settings::resolve(&opts).unwrap_err().code, 2);
    }
}
