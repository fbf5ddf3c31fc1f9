//! Optional TOML configuration.
//!
//! ```toml
//! [primitive_poly]
//! 4 = "0x13"
//! 6 = "0x43"
//! ```

use std::path::Path;

use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
pub struct Config {
    #[serde(default)]
    primitive_poly: toml::Table,
}

impl Config {
    pub fn primitive_poly(&self, m: u32) -> Result<Option<u32>, String> {
        match self.primitive_poly.get(&m.to_string()) {
            None => Ok(None),
            Some(toml::Value::String(s)) => parse_hex_poly(s).map(Some),
            Some(other) => Err(format!("primitive_poly.{m} must be a hex string, found {other}")),
        }
    }
}

pub fn load(path: &Path) -> Result<Config, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_hex_poly(s: &str) -> Result<u32, String> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u32::from_str_radix(t, 16).map_err(|_| format!("invalid hex polynomial {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_table() {
        let cfg: Config = toml::from_str("[primitive_poly]\n4 = \"0x19\"\n").unwrap();
        assert_eq!(cfg.primitive_poly(4).unwrap(), Some(0x19));
        assert_eq!(cfg.primitive_poly(6).unwrap(), None);
        assert_eq!(parse_hex_poly("13").unwrap(), 0x13);
        assert!(parse_hex_poly("0xzz").is_err());
        let bad: Config = toml::from_str("[primitive_poly]\n4 = 19\n").unwrap();
        assert!(bad.primitive_poly(4).is_err());
    }
}
