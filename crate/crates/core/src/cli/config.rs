//! Parameter resolution: command-line flag, then `key = value` config file,
//! then `MODSURF_<KEY>` environment variable, then the built-in default.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

pub const ENV_PREFIX: &str = "MODSURF_";

/// Where a resolved value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Flag,
    File,
    Env,
    Default,
}

#[derive(Clone, Debug, Default)]
pub struct Layers {
    file: BTreeMap<String, String>,
    file_path: Option<PathBuf>,
    env: BTreeMap<String, String>,
}

impl Layers {
    /// Reads the config file (if any) and a snapshot of `MODSURF_*`.
    pub fn load(config: Option<&Path>) -> Result<Self> {
        let env = std::env::vars()
            .filter_map(|(k, v)| {
                k.strip_prefix(ENV_PREFIX)
                    .map(|key| (key.to_ascii_lowercase(), v))
            })
            .collect();
        let mut layers = Self {
            env,
            ..Self::default()
        };
        if let Some(path) = config {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            layers.file = parse_config(&text).map_err(|msg| Error::Schema {
                path: path.to_path_buf(),
                msg,
            })?;
            layers.file_path = Some(path.to_path_buf());
        }
        Ok(layers)
    }

    pub fn from_maps(file: BTreeMap<String, String>, env: BTreeMap<String, String>) -> Self {
        Self {
            file,
            file_path: None,
            env,
        }
    }

    /// Raw string for `key` below the flag layer.
    pub fn lookup(&self, key: &str) -> Option<(&str, Source)> {
        self.file
            .get(key)
            .map(|v| (v.as_str(), Source::File))
            .or_else(|| self.env.get(key).map(|v| (v.as_str(), Source::Env)))
    }

    pub fn resolve<T>(&self, key: &str, flag: Option<T>, default: T) -> Result<T>
    where
        T: FromStr,
    {
        Ok(self.resolve_with_source(key, flag, default)?.0)
    }

    pub fn resolve_with_source<T>(
        &self,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> Result<(T, Source)>
    where
        T: FromStr,
    {
        if let Some(v) = flag {
            return Ok((v, Source::Flag));
        }
        match self.lookup(key) {
            Some((raw, src)) => {
                let v = raw.trim().parse().map_err(|_| {
                    let origin = match src {
                        Source::File => format!(
                            "config file {}",
                            self.file_path
                                .as_deref()
                                .unwrap_or(Path::new("?"))
                                .display()
                        ),
                        _ => format!(
                            "environment variable {ENV_PREFIX}{}",
                            key.to_ascii_uppercase()
                        ),
                    };
                    Error::param(format!("cannot parse {key} = {raw:?} from {origin}"))
                })?;
                Ok((v, src))
            }
            None => Ok((default, Source::Default)),
        }
    }

    /// Optional value with no default.
    pub fn resolve_opt<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.lookup(key)
            .map(|(raw, _)| {
                raw.trim()
                    .parse()
                    .map_err(|_| Error::param(format!("cannot parse {key} = {raw:?}")))
            })
            .transpose()
    }
}

/// `key = value` lines; `#` starts a comment; keys are case-insensitive and
/// `-` is read as `_`.
pub fn parse_config(text: &str) -> std::result::Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
        let key = k.trim().to_ascii_lowercase().replace('-', "_");
        if key.is_empty() {
            return Err(format!("line {}: empty key", i + 1));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}
