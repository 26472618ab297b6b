//! Caps, budgets and thread counts from flags, environment and config file.
//! Precedence: flag, then `HALL_MAX_ENUM`, then config file, then defaults.

use std::time::Duration;

use hall_core::oracle::SearchOptions;
use hall_core::permgrp::Limits;

use crate::CliError;

pub const MAX_ENUM_ENV: &str = "HALL_MAX_ENUM";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub max_enum: Option<u64>,
    pub max_degree: Option<usize>,
    pub threads: Option<usize>,
    pub budget_ms: Option<u64>,
}

impl Overrides {
    fn or(self, other: Overrides) -> Overrides {
        Overrides {
            max_enum: self.max_enum.or(other.max_enum),
            max_degree: self.max_degree.or(other.max_degree),
            threads: self.threads.or(other.threads),
            budget_ms: self.budget_ms.or(other.budget_ms),
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(path: &str, text: &str) -> Result<Overrides, CliError> {
    let mut out = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: String| CliError::Config {
            path: path.to_string(),
            line: i + 1,
            reason,
        };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
        let (key, value) = (key.trim(), value.trim());
        let number = || value.parse::<u64>().map_err(|_| err(format!("`{value}` is not a decimal integer")));
        match key {
            "max_enum" => out.max_enum = Some(number()?),
            "max_degree" => out.max_degree = Some(number()? as usize),
            "threads" => out.threads = Some(number()? as usize),
            "budget_ms" => out.budget_ms = Some(number()?),
            _ => return Err(err(format!("unknown key `{key}`"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub limits: Limits,
    /// 0 lets the thread pool choose.
    pub threads: usize,
    pub budget_ms: Option<u64>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            limits: Limits::default(),
            threads: 1,
            budget_ms: None,
        }
    }
}

impl Settings {
    pub fn resolve(flags: Overrides, env_max_enum: Option<&str>, config: Option<Overrides>) -> Result<Self, CliError> {
        let env = match env_max_enum {
            Some(text) => Overrides {
                max_enum: Some(
                    text.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("{MAX_ENUM_ENV}=`{text}` is not a decimal integer")))?,
                ),
                ..Overrides::default()
            },
            None => Overrides::default(),
        };
        let merged = flags.or(env).or(config.unwrap_or_default());
        let defaults = Settings::default();
        Ok(Settings {
            limits: Limits {
                max_degree: merged.max_degree.unwrap_or(defaults.limits.max_degree),
                max_enum: merged.max_enum.unwrap_or(defaults.limits.max_enum),
            },
            threads: merged.threads.unwrap_or(defaults.threads),
            budget_ms: merged.budget_ms,
        })
    }

    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            fixed_prime: None,
            threads: self.threads,
            budget: self.budget_ms.map(Duration::from_millis),
            limits: self.limits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_env_beat_config() {
        let config = parse_config("c", "max_enum = 10\nthreads=4 # comment\n\nbudget_ms=7").unwrap();
        let flags = Overrides {
            threads: Some(2),
            ..Overrides::default()
        };
        let s = Settings::resolve(flags, Some("20"), Some(config.clone())).unwrap();
        assert_eq!((s.limits.max_enum, s.threads, s.budget_ms), (20, 2, Some(7)));
        let s = Settings::resolve(Overrides::default(), None, Some(config)).unwrap();
        assert_eq!((s.limits.max_enum, s.threads), (10, 4));
        assert_eq!(s.limits.max_degree, 128);
    }

    #[test]
    fn config_errors_name_the_line() {
        let err = parse_config("c", "threads=2\nbogus=1").unwrap_err();
        assert!(matches!(err, CliError::Config { line: 2, .. }));
        assert!(parse_config("c", "threads").is_err());
        assert!(Settings::resolve(Overrides::default(), Some("x"), None).is_err());
    }
}
