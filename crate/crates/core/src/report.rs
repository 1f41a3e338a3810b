//! Report structures shared with the command-line tool.
//!
//! Floating-point values that carry enclosure endpoints are written as
//! shortest round-trip decimal strings, so a report parsed by any language
//! recovers the exact binary64 endpoints.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Shortest decimal string that parses back to `x`.
///
/// Plain notation for moderate magnitudes, exponent notation otherwise;
/// infinities become `"inf"` and `"-inf"`.
pub fn format_decimal(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn parse_decimal(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Io(format!("not a decimal number: {s:?}")))?;
    if v.is_nan() {
        return Err(Error::Io("NaN in report".into()));
    }
    Ok(v)
}

/// `#[serde(with = "crate::report::decimal")]` for `f64` fields.
pub mod decimal {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_decimal(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_decimal(&s).map_err(D::Error::custom)
    }

    /// The same for `Option<f64>`.
    pub mod option {
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&super::super::format_decimal(*v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| super::super::parse_decimal(&s).map_err(D::Error::custom))
                .transpose()
        }
    }
}

/// SHA-256 of the compact JSON form of `config`, hex encoded.
///
/// Object keys are sorted by `serde_json::Value`, so the hash does not depend
/// on field order.
pub fn config_hash<T: Serialize + ?Sized>(config: &T) -> Result<String> {
    let value = serde_json::to_value(config)?;
    let bytes = serde_json::to_vec(&value)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub config_hash: String,
}

impl Provenance {
    pub fn now(config_hash: String) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Provenance {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            config_hash,
        }
    }
}

/// The JSON document written by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub records: Vec<Value>,
    pub summary: Value,
    pub provenance: Provenance,
}

impl Report {
    pub fn new<C, R, S>(command: &str, config: &C, records: &[R], summary: &S) -> Result<Self>
    where
        C: Serialize + ?Sized,
        R: Serialize,
        S: Serialize + ?Sized,
    {
        let records = records
            .iter()
            .map(serde_json::to_value)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Report {
            command: command.to_string(),
            config: serde_json::to_value(config)?,
            records,
            summary: serde_json::to_value(summary)?,
            provenance: Provenance::now(config_hash(config)?),
        })
    }

    /// Everything except the provenance block, which carries the wall clock.
    pub fn deterministic_part(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_round_trip() {
        for x in [
            0.0,
            -0.0,
            0.1,
            1.0 / 3.0,
            0.6058490462529474,
            -2.884626766806,
            1e-300,
            5e-324,
            1.7976931348623157e308,
            123456789.125,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ] {
            let s = format_decimal(x);
            assert_eq!(parse_decimal(&s).unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(format_decimal(0.25), "0.25");
        assert_eq!(format_decimal(1e20), "1e20");
    }

    #[test]
    fn rejects_nan_and_garbage() {
        assert!(parse_decimal("NaN").is_err());
        assert!(parse_decimal("0.1x").is_err());
    }

    #[test]
    fn hash_ignores_field_order() {
        let a = serde_json::json!({"x": 1, "y": 2});
        let b = serde_json::json!({"y": 2, "x": 1});
        assert_eq!(config_hash(&a).unwrap(), config_hash(&b).unwrap());
        let c = serde_json::json!({"x": 1, "y": 3});
        assert_ne!(config_hash(&a).unwrap(), config_hash(&c).unwrap());
    }

    #[test]
    fn empty_report_has_summary() {
        let r = Report::new(
            "verify-range",
            &serde_json::json!({}),
            &[] as &[u8],
            &serde_json::json!({"n": 0}),
        )
        .unwrap();
        let v: Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(v["records"], serde_json::json!([]));
        assert_eq!(v["summary"]["n"], 0);
        assert_eq!(v["provenance"]["config_hash"].as_str().unwrap().len(), 64);
    }
}
