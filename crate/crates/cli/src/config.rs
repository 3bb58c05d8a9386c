//! Optional key = value config file. Keys use the flag spelling without the
//! leading dashes (m, heave, rho-max, ...); command-line flags win.

use std::collections::HashMap;
use std::path::Path;

pub struct Config {
    values: HashMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let mut values = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            for (i, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return Err(format!(
                        "{}:{}: expected \"key = value\"",
                        path.display(),
                        i + 1
                    ));
                };
                values.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Self { values })
    }

    /// Flag value if given, else the config entry, else None. A config entry
    /// that fails to parse is a usage error surfaced at exit.
    pub fn fill<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Option<T> {
        flag.or_else(|| {
            self.values.get(key).map(|v| {
                v.parse().unwrap_or_else(|_| {
                    eprintln!("error: config key {key:?}: cannot parse {v:?}");
                    std::process::exit(2);
                })
            })
        })
    }
}
