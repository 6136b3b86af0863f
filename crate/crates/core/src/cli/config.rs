use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::{Error, Result};

pub type Params = Map<String, Value>;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "ICF_OUTPUT_DIR";

/// Parse `key = value` lines. Values that read as JSON scalars (numbers,
/// booleans) keep that type; anything else is a string.
pub fn parse_kv(text: &str) -> Result<Params> {
    let mut out = Params::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected `key = value`", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(Error::Parse(format!("config line {}: empty key", n + 1)));
        }
        let value = match serde_json::from_str::<Value>(v) {
            Ok(x @ (Value::Number(_) | Value::Bool(_))) => x,
            _ => Value::String(v.trim_matches('"').to_string()),
        };
        out.insert(k.to_string(), value);
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<Params> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid("config", format!("cannot read {}: {e}", path.display())))?;
    parse_kv(&text)
}

/// Serialize flag values, dropping the ones left unset.
pub fn to_params<T: Serialize>(args: &T) -> Params {
    match serde_json::to_value(args).expect("flag structs serialize") {
        Value::Object(m) => m.into_iter().filter(|(_, v)| !v.is_null()).collect(),
        _ => Params::new(),
    }
}

/// `base` overlaid with `top`.
pub fn merge(mut base: Params, top: Params) -> Params {
    base.extend(top);
    base
}

/// Deserialize merged parameters, reporting unknown keys and type
/// mismatches by key.
pub fn from_params<T: DeserializeOwned + Serialize>(p: &Params) -> Result<T> {
    for (k, v) in p {
        if v.is_null() {
            return Err(Error::invalid(k.as_str(), "no value"));
        }
    }
    let t: T = serde_json::from_value(Value::Object(p.clone())).map_err(|e| {
        let msg = e.to_string();
        let key = msg.split('`').nth(1).unwrap_or("config").to_string();
        Error::invalid(key, msg)
    })?;
    let known = match serde_json::to_value(&t).expect("flag structs serialize") {
        Value::Object(m) => m,
        _ => Params::new(),
    };
    if let Some(k) = p.keys().find(|k| !known.contains_key(*k)) {
        return Err(Error::invalid(k.as_str(), "unknown key for this subcommand"));
    }
    Ok(t)
}

pub fn require<T: Clone>(v: &Option<T>, key: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::invalid(key, "required but not given"))
}

/// `start:stop:count`, endpoints included, or a single number.
pub fn parse_grid(s: &str, key: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| Error::invalid(key, format!("`{s}`: {why}"));
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad("not a number"));
    match parts.as_slice() {
        [x] => Ok(vec![num(x)?]),
        [a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n.parse().map_err(|_| bad("count must be a positive integer"))?;
            match n {
                0 => Err(bad("count must be at least 1")),
                1 if a == b => Ok(vec![a]),
                1 => Err(bad("a single point needs start == stop")),
                _ if b <= a => Err(bad("stop must exceed start")),
                _ => Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()),
            }
        }
        _ => Err(bad("expected start:stop:count")),
    }
}

/// `--emin/--emax/--esteps` as an inclusive grid.
pub fn energy_grid(emin: Option<f64>, emax: Option<f64>, steps: Option<usize>) -> Result<Vec<f64>> {
    let (a, b, n) = (require(&emin, "emin")?, require(&emax, "emax")?, require(&steps, "esteps")?);
    if !(a > 0.0) {
        return Err(Error::invalid("emin", format!("energies must be positive, got {a}")));
    }
    parse_grid(&format!("{a}:{b}:{n}"), "esteps")
}

pub fn output_dir(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    #[derive(Debug, Serialize, Deserialize, Default, PartialEq)]
    struct P {
        #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
        l: Option<f64>,
        #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        tau: Option<String>,
    }

    #[test]
    fn kv_parsing() {
        let p = parse_kv("# comment\nL = 10\nN=400  # trailing\n\ntau = 0.5:4:50\n").unwrap();
        assert_eq!(p["L"], Value::from(10));
        assert_eq!(p["tau"], Value::from("0.5:4:50"));
        assert!(parse_kv("L 10").is_err());
        assert!(parse_kv(" = 3").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = parse_kv("L = 10\nN = 400").unwrap();
        let flags = to_params(&P { n: Some(800), ..P::default() });
        let p: P = from_params(&merge(file, flags)).unwrap();
        assert_eq!(p, P { l: Some(10.0), n: Some(800), tau: None });
    }

    #[test]
    fn unknown_and_mistyped_keys_are_named() {
        let e = from_params::<P>(&parse_kv("L = 10\nbogus = 1").unwrap()).unwrap_err();
        assert!(e.to_string().contains("bogus"), "{e}");
        let e = from_params::<P>(&parse_kv("N = 4.5").unwrap()).unwrap_err();
        assert!(matches!(e, Error::InvalidParameter { .. }));
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:3", "t").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("2", "t").unwrap(), vec![2.0]);
        assert_eq!(parse_grid("0.5:4:50", "tau").unwrap().len(), 50);
        let g = parse_grid("0.5:4:50", "tau").unwrap();
        assert_eq!((g[0], g[49]), (0.5, 4.0));
        for bad in ["1:0:3", "0:1:0", "0:1", "a:b:3", "0:1:1"] {
            assert!(parse_grid(bad, "t").is_err(), "{bad}");
        }
        assert_eq!(energy_grid(Some(0.1), Some(2.0), Some(40)).unwrap().len(), 40);
        assert!(energy_grid(Some(0.0), Some(2.0), Some(40)).is_err());
        assert!(energy_grid(None, Some(2.0), Some(40)).is_err());
    }
}
