//! Flat `key = value` experiment configuration files and run manifests.
//!
//! Keys are long CLI flag names (`min-count`, `lr`, ...); underscores are
//! accepted in place of hyphens. A key may repeat for multi-valued flags.
//! `true`/`false` values toggle boolean flags. The special key `command`
//! names the subcommand, so a manifest can be replayed on its own.

use std::path::Path;

use crate::error::{Error, Result};

pub const COMMAND_KEY: &str = "command";

/// Ordered `(key, value)` entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    pub entries: Vec<(String, String)>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        const WHAT: &str = "config file";
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(WHAT, i + 1, "expected `key = value`"))?;
            let key = key.trim().replace('_', "-");
            if key.is_empty() || key.starts_with('-') || key.contains(char::is_whitespace) {
                return Err(Error::parse(WHAT, i + 1, format!("bad key {key:?}")));
            }
            entries.push((key, value.trim().to_owned()));
        }
        Ok(Config { entries })
    }

    pub fn read(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Config::parse(&text)
    }

    pub fn command(&self) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == COMMAND_KEY)
            .map(|(_, v)| v.as_str())
    }

    /// Command-line arguments for every entry except `command`.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = Vec::new();
        for (k, v) in &self.entries {
            if k == COMMAND_KEY {
                continue;
            }
            match v.as_str() {
                "true" => args.push(format!("--{k}")),
                "false" => {}
                _ => {
                    args.push(format!("--{k}"));
                    args.push(v.clone());
                }
            }
        }
        args
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }
}

/// Manifest text: a comment block, the `command` entry, then all parameters.
pub fn render_manifest(command: &str, params: &Config, notes: &[String]) -> String {
    let mut out = format!("# synaug {} manifest\n", env!("CARGO_PKG_VERSION"));
    for n in notes {
        out.push_str(&format!("# {n}\n"));
    }
    out.push_str(&format!("{COMMAND_KEY} = {command}\n"));
    out.push_str(&params.render());
    out
}

/// Splice `--config FILE` into an argument vector.
///
/// The file's arguments are inserted right after the subcommand so explicit
/// command-line flags, which come later, take precedence. When the command
/// line has no subcommand the file's `command` entry supplies it.
pub fn expand_args(args: Vec<String>, subcommands: &[&str]) -> Result<Vec<String>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut config_path = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            match it.next() {
                Some(p) => config_path = Some(p),
                None => return Err(Error::Invalid("--config needs a file".into())),
            }
        } else if let Some(p) = a.strip_prefix("--config=") {
            config_path = Some(p.to_owned());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = config_path else {
        return Ok(rest);
    };
    let config = Config::read(Path::new(&path))?;
    let sub = rest
        .iter()
        .skip(1)
        .position(|a| subcommands.contains(&a.as_str()))
        .map(|i| i + 1);
    let at = match sub {
        Some(i) => i + 1,
        None => {
            let cmd = config.command().ok_or_else(|| {
                Error::Invalid(format!(
                    "{path}: no subcommand given and no `command` entry"
                ))
            })?;
            rest.push(cmd.to_owned());
            rest.len()
        }
    };
    let tail = rest.split_off(at);
    rest.extend(config.to_args());
    rest.extend(tail);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_entries() {
        let c = Config::parse("# comment\n\nmin_count = 3\ninput = a.txt\ninput = b.txt\nverbose = true\nquiet = false\n").unwrap();
        assert_eq!(c.entries[0], ("min-count".into(), "3".into()));
        assert_eq!(
            c.to_args(),
            strings(&[
                "--min-count",
                "3",
                "--input",
                "a.txt",
                "--input",
                "b.txt",
                "--verbose"
            ])
        );
        assert!(matches!(
            Config::parse("a = 1\nnonsense\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Config::parse("two words = 1\n").is_err());
    }

    #[test]
    fn manifest_round_trip() {
        let params = Config {
            entries: vec![("seed".into(), "42".into()), ("lr".into(), "0.01".into())],
        };
        let text = render_manifest("train", &params, &["derived seed 7".into()]);
        let back = Config::parse(&text).unwrap();
        assert_eq!(back.command(), Some("train"));
        assert_eq!(&back.entries[1..], &params.entries[..]);
    }

    #[test]
    fn splices_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.conf");
        std::fs::write(&path, "command = train\nseed = 1\n").unwrap();
        let p = path.to_str().unwrap();
        let subs = ["train", "augment"];
        let out = expand_args(
            strings(&[
                "synaug",
                "--threads",
                "1",
                "train",
                "--config",
                p,
                "--seed",
                "2",
            ]),
            &subs,
        )
        .unwrap();
        assert_eq!(
            out,
            strings(&[
                "synaug",
                "--threads",
                "1",
                "train",
                "--seed",
                "1",
                "--seed",
                "2"
            ])
        );
        let out = expand_args(strings(&["synaug", "--config", p]), &subs).unwrap();
        assert_eq!(out, strings(&["synaug", "train", "--seed", "1"]));
        let out = expand_args(strings(&["synaug", "augment"]), &subs).unwrap();
        assert_eq!(out, strings(&["synaug", "augment"]));
        assert!(expand_args(strings(&["synaug", "--config"]), &subs).is_err());
    }
}
