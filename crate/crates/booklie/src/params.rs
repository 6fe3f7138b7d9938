//! Parameter vectors as they appear on the command line and in JSON.

use std::fmt;
use std::str::FromStr;

use booklie_core::{PLParams, Param, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("expected 6 parameters (a,b,c,d,e,f), got {0}")]
    Count(usize),
    #[error("parameter {name}: {reason}")]
    Entry { name: &'static str, reason: String },
    #[error("symbolic parameters can only be mixed with zeros")]
    Mixed,
}

/// One parameter: an exact number or the formal symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamEntry {
    Value(Rational),
    Symbolic,
}

impl FromStr for ParamEntry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "sym" => Ok(ParamEntry::Symbolic),
            t => t.parse().map(ParamEntry::Value).map_err(|e| format!("{e}")),
        }
    }
}

impl fmt::Display for ParamEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamEntry::Value(r) => write!(f, "{r}"),
            ParamEntry::Symbolic => f.write_str("sym"),
        }
    }
}

/// JSON form: an integer, or a string holding a decimal, a fraction or `"sym"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Int(i64),
    Text(String),
}

impl Serialize for ParamEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamEntry::Value(r) if r.is_integer() => match i64::try_from(r.numer()) {
                Ok(n) => RawEntry::Int(n),
                Err(_) => RawEntry::Text(r.to_string()),
            },
            other => RawEntry::Text(other.to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamEntry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RawEntry::deserialize(d)? {
            RawEntry::Int(n) => Ok(ParamEntry::Value(Rational::from_int(n))),
            RawEntry::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// JSON form of a full vector: a list of entries or the comma-separated string.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawSpec {
    List(Vec<ParamEntry>),
    Text(String),
}

/// The six entries `(a, b, c, d, e, f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "Vec<ParamEntry>")]
pub struct ParamSpec([ParamEntry; 6]);

impl ParamSpec {
    pub fn from_ints(v: [i64; 6]) -> Self {
        ParamSpec(v.map(|n| ParamEntry::Value(Rational::from_int(n))))
    }

    pub fn entries(&self) -> &[ParamEntry; 6] {
        &self.0
    }

    pub fn to_params(&self) -> Result<PLParams, ParamError> {
        if self.0.iter().all(|e| matches!(e, ParamEntry::Value(_))) {
            return Ok(PLParams::numeric(self.0.clone().map(|e| match e {
                ParamEntry::Value(r) => r,
                ParamEntry::Symbolic => unreachable!(),
            })));
        }
        let mut zeros = Vec::new();
        for (p, e) in Param::ALL.iter().zip(&self.0) {
            match e {
                ParamEntry::Symbolic => {}
                ParamEntry::Value(r) if r.is_zero() => zeros.push(*p),
                ParamEntry::Value(_) => return Err(ParamError::Mixed),
            }
        }
        Ok(PLParams::symbolic_with_zeros(&zeros))
    }

    /// Floating-point values; `None` when any entry is symbolic.
    pub fn to_f64(&self) -> Option<[f64; 6]> {
        self.to_params().ok()?.to_f64()
    }
}

impl TryFrom<Vec<ParamEntry>> for ParamSpec {
    type Error = ParamError;

    fn try_from(v: Vec<ParamEntry>) -> Result<Self, ParamError> {
        let n = v.len();
        v.try_into()
            .map(ParamSpec)
            .map_err(|_| ParamError::Count(n))
    }
}

impl TryFrom<RawSpec> for ParamSpec {
    type Error = ParamError;

    fn try_from(raw: RawSpec) -> Result<Self, ParamError> {
        let spec: ParamSpec = match raw {
            RawSpec::List(v) => v.try_into()?,
            RawSpec::Text(t) => t.parse()?,
        };
        spec.to_params()?;
        Ok(spec)
    }
}

impl From<ParamSpec> for Vec<ParamEntry> {
    fn from(p: ParamSpec) -> Self {
        p.0.into()
    }
}

impl FromStr for ParamSpec {
    type Err = ParamError;

    /// Comma-separated, e.g. `0,1,0,0,0,-1/2` or `sym,sym,0,sym,0,sym`.
    fn from_str(s: &str) -> Result<Self, ParamError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 6 {
            return Err(ParamError::Count(parts.len()));
        }
        let mut entries = Vec::with_capacity(6);
        for (p, part) in Param::ALL.iter().zip(parts) {
            entries.push(part.parse().map_err(|reason| ParamError::Entry {
                name: p.name(),
                reason,
            })?);
        }
        let spec = ParamSpec::try_from(entries)?;
        spec.to_params()?;
        Ok(spec)
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_numbers_and_symbols() {
        let p: ParamSpec = "0,1,-1/2,0.25,0,-3".parse().unwrap();
        assert_eq!(p.to_string(), "0,1,-1/2,1/4,0,-3");
        let s: ParamSpec = "sym,sym,0,sym,0,sym".parse().unwrap();
        assert_eq!(s.to_params().unwrap().to_string(), "[a, b, 0, d, 0, f]");
        assert_eq!("0,1,0,0,0,sym".parse::<ParamSpec>(), Err(ParamError::Mixed));
        assert_eq!("1,2".parse::<ParamSpec>(), Err(ParamError::Count(2)));
        assert!(matches!(
            "1,2,3,4,5,x".parse::<ParamSpec>(),
            Err(ParamError::Entry { name: "f", .. })
        ));
    }

    #[test]
    fn json_forms() {
        let p: ParamSpec = serde_json::from_str(r#"[0, 1, "0.5", "-1/3", 0, 7]"#).unwrap();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"[0,1,"1/2","-1/3",0,7]"#
        );
        assert_eq!(
            serde_json::from_str::<ParamSpec>(r#""0,1,1/2,-1/3,0,7""#).unwrap(),
            p
        );
        let s: ParamSpec = serde_json::from_str(r#"["sym", 0, 0, "sym", 0, "sym"]"#).unwrap();
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"["sym",0,0,"sym",0,"sym"]"#
        );
        assert!(serde_json::from_str::<ParamSpec>("[1, 2, 3]").is_err());
        assert!(serde_json::from_str::<ParamSpec>(r#"[0, 1, 0, 0, 0, "sym"]"#).is_err());
    }
}
