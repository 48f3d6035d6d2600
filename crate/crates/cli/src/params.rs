//! `--params` values: each of `a1, a2, a3` is a rational or `symbolic`.

use std::fmt;
use std::str::FromStr;

use fgl_core::buchstaber::GenusParams;
use fgl_core::exactcore::Rational;

use crate::CliError;

const NAMES: [&str; 3] = ["a1", "a2", "a3"];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamSpec {
    values: [Option<Rational>; 3],
}

impl ParamSpec {
    pub fn symbolic() -> Self {
        Self::default()
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.values[i].as_ref()
    }

    pub fn is_symbolic(&self) -> bool {
        self.values.iter().all(Option::is_none)
    }

    pub fn to_genus_params(&self) -> GenusParams {
        let [a1, a2, a3] = self.values.clone();
        GenusParams::symbolic().specialize(a1, a2, a3)
    }
}

/// Accepts `a1=1/2,a2=0,a3=symbolic`, the positional form `1/2,0,symbolic`,
/// or a mix; unnamed parameters stay symbolic.
impl FromStr for ParamSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let mut spec = ParamSpec::default();
        let mut seen = [false; 3];
        let s = s.trim();
        if s.is_empty() || s == "symbolic" {
            return Ok(spec);
        }
        for (pos, item) in s.split(',').enumerate() {
            let item = item.trim();
            let (idx, value) = match item.split_once('=') {
                Some((name, value)) => {
                    let name = name.trim();
                    let idx = NAMES
                        .iter()
                        .position(|&n| n == name)
                        .ok_or_else(|| CliError::usage(format!("unknown parameter `{name}` (expected a1, a2, a3)")))?;
                    (idx, value.trim())
                }
                None if pos < 3 => (pos, item),
                None => return Err(CliError::usage("at most three parameter values")),
            };
            if seen[idx] {
                return Err(CliError::usage(format!("parameter `{}` given twice", NAMES[idx])));
            }
            seen[idx] = true;
            spec.values[idx] = match value {
                "symbolic" => None,
                v => Some(
                    v.parse::<Rational>()
                        .map_err(|e| CliError::usage(format!("{}: {e}", NAMES[idx])))?,
                ),
            };
        }
        Ok(spec)
    }
}

/// Canonical form used in cache keys and reports.
impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = NAMES
            .iter()
            .zip(&self.values)
            .map(|(n, v)| match v {
                Some(r) => format!("{n}={r}"),
                None => format!("{n}=symbolic"),
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_positional() {
        let p: ParamSpec = "a1=1/2,a2=0,a3=symbolic".parse().unwrap();
        assert_eq!(p.to_string(), "a1=1/2,a2=0,a3=symbolic");
        let q: ParamSpec = "1/2, 0, symbolic".parse().unwrap();
        assert_eq!(p, q);
        let r: ParamSpec = "a3=-4/6".parse().unwrap();
        assert_eq!(r.to_string(), "a1=symbolic,a2=symbolic,a3=-2/3");
        assert!("".parse::<ParamSpec>().unwrap().is_symbolic());
    }

    #[test]
    fn bad_specializations() {
        for bad in ["b1=2", "a1=1,a1=2", "1,2,3,4", "a2=x"] {
            let e = bad.parse::<ParamSpec>().unwrap_err();
            assert_eq!(e.exit_code(), 2, "{bad}");
        }
    }
}
