//! Deterministic number formatting for every emitted file.
//!
//! Floats are always written with 17 significant digits in scientific
//! notation, which round-trips `f64` exactly and makes repeated runs
//! byte-identical.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

/// `x` with 17 significant digits.
pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Compact JSON formatter printing floats through [`sig17`].
#[derive(Debug, Default, Clone, Copy)]
pub struct Sig17Formatter;

impl Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(sig17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json_string<S: Serialize + ?Sized>(value: &S) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json emits utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_round_trips() {
        for x in [0.1, 1.0 / 3.0, 5.0, -2.5e-300, 1.7976931348623157e308] {
            let s = sig17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(sig17(5.0), "5.0000000000000000e0");
    }

    #[test]
    fn json_floats_use_sig17() {
        let s = to_json_string(&serde_json::json!({"a": 0.5, "b": 3})).unwrap();
        assert_eq!(s, r#"{"a":5.0000000000000000e-1,"b":3}"#);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["a"].as_f64(), Some(0.5));
    }
}
