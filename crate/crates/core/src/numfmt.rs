//! Decimal formatting with 17 significant digits, the round-trip precision of
//! binary64, and serde adapters that store floats as such strings.

use crate::C64;

/// Formats `x` like C's `%.17g`: shortest of fixed or scientific notation,
/// trailing zeros removed.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

pub fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| format!("bad number {s:?}: {e}"))
}

/// `"re,im"` with 17 significant digits per part.
pub fn fmt_complex(z: C64) -> String {
    format!("{},{}", fmt17(z.re), fmt17(z.im))
}

/// Parses `"re,im"`; a bare real `"x"` is accepted as `x + 0i`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(C64::new(parse_f64(re)?, parse_f64(im)?)),
        None => Ok(C64::new(parse_f64(s)?, 0.0)),
    }
}

/// Space-separated list of `"re,im"` pairs.
pub fn parse_complex_vec(s: &str) -> Result<Vec<C64>, String> {
    s.split_whitespace().map(parse_complex).collect()
}

pub mod dec17 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt17(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_f64(&s).map_err(serde::de::Error::custom)
    }
}

pub mod dec17_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&super::fmt17(*v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| super::parse_f64(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub mod dec17_vec {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&super::fmt17(*x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse_f64(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.5), "0.5");
        assert_eq!(fmt17(1.25), "1.25");
        assert_eq!(fmt17(0.999), "0.999");
        assert_eq!(fmt17(44.28), "44.280000000000001");
        assert_eq!(fmt17(4e-5), "4.0000000000000003e-5");
        assert_eq!(fmt17(2.5e20), "2.5e20");
        assert_eq!(fmt17(-3.0), "-3");
        assert_eq!(fmt17(f64::INFINITY), "inf");
    }

    #[test]
    fn round_trips() {
        for &x in &[0.1, 1.0 / 3.0, std::f64::consts::PI, -1e-300, 6.02e23, 123456.789] {
            assert_eq!(parse_f64(&fmt17(x)).unwrap(), x);
        }
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("4,0").unwrap(), C64::new(4.0, 0.0));
        assert_eq!(parse_complex("-1.5,2").unwrap(), C64::new(-1.5, 2.0));
        assert_eq!(parse_complex("3").unwrap(), C64::new(3.0, 0.0));
        let v = parse_complex_vec("4,0 0,0 0,0").unwrap();
        assert_eq!(v.len(), 3);
        assert!(parse_complex("x,1").is_err());
    }
}
