//! Number formatting shared by the JSON and CSV writers.

/// Significant digits used for all floating-point output of the CLI.
pub const OUTPUT_DIGITS: usize = 12;

/// Rounds `x` to `digits` significant decimal digits. Non-finite values pass through.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    let digits = digits.max(1);
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// Formats an extended real with [`OUTPUT_DIGITS`] significant digits; `inf` for `+∞`.
pub fn fmt_extended(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        let r = round_sig(x, OUTPUT_DIGITS);
        // `{}` prints the shortest representation that round-trips.
        format!("{}", if r == 0.0 { 0.0 } else { r })
    }
}

/// Serde adapter writing `+∞` as the string `"inf"`.
pub(crate) mod extended_real {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(x: &f64, ser: S) -> Result<S::Ok, S::Error> {
        if x.is_infinite() && *x > 0.0 {
            ser.serialize_str("inf")
        } else {
            ser.serialize_f64(*x)
        }
    }

    struct ExtendedVisitor;

    impl<'de> Visitor<'de> for ExtendedVisitor {
        type Value = f64;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a number or the string \"inf\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            match v {
                "inf" | "Infinity" | "+inf" => Ok(f64::INFINITY),
                other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
        de.deserialize_any(ExtendedVisitor)
    }
}
