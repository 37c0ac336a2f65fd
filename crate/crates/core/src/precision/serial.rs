//! Decimal-string serialization: reals as signed decimals with an `e`
//! exponent marker, complex numbers as `{"re": "...", "im": "..."}`.

use rug::Float;
use serde_json::{json, Value};

use super::{Complex, PrecisionContext};
use crate::error::{Error, Result};

/// Shortest decimal string that parses back to exactly `x` at its precision.
pub fn render_real(x: &Float) -> String {
    x.to_string_radix(10, None)
}

pub fn render_complex_json(z: &Complex) -> Value {
    json!({ "re": render_real(&z.re), "im": render_real(&z.im) })
}

pub fn render_complex(z: &Complex) -> String {
    render_complex_json(z).to_string()
}

fn parse_err(what: &'static str, input: &str) -> Error {
    Error::Parse {
        what,
        input: input.to_string(),
    }
}

fn is_decimal(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let digits = mantissa.chars().filter(char::is_ascii_digit).count();
    let dots = mantissa.chars().filter(|&c| c == '.').count();
    let mantissa_ok = digits > 0 && dots <= 1 && mantissa.chars().all(|c| c.is_ascii_digit() || c == '.');
    let exponent_ok = exponent.is_none_or(|e| {
        let e = e.strip_prefix(['+', '-']).unwrap_or(e);
        !e.is_empty() && e.chars().all(|c| c.is_ascii_digit())
    });
    mantissa_ok && exponent_ok
}

/// Parses a decimal real at the context's working precision.
pub fn parse_real(s: &str, ctx: &PrecisionContext) -> Result<Float> {
    parse_real_bits(s.trim(), ctx.bits())
}

fn parse_real_bits(s: &str, bits: u32) -> Result<Float> {
    if !is_decimal(s) {
        return Err(parse_err("real", s));
    }
    let parsed = Float::parse(s).map_err(|_| parse_err("real", s))?;
    Ok(Float::with_val(bits, parsed))
}

/// Parses a complex number from the JSON object form or `RE+IMi` shorthand.
pub fn parse_complex(s: &str, ctx: &PrecisionContext) -> Result<Complex> {
    let bits = ctx.bits();
    let t = s.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|_| parse_err("complex", s))?;
        let field = |k: &str| -> Result<Float> {
            match v.get(k) {
                Some(Value::String(x)) => parse_real_bits(x, bits),
                Some(Value::Number(x)) => parse_real_bits(&x.to_string(), bits),
                None => Ok(Float::new(bits)),
                _ => Err(parse_err("complex", s)),
            }
        };
        if v.as_object().is_none_or(|o| o.keys().any(|k| k != "re" && k != "im")) {
            return Err(parse_err("complex", s));
        }
        return Ok(Complex::new(field("re")?, field("im")?));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::from_real(parse_real_bits(t, bits)?));
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    Ok(Complex::new(parse_real_bits(re, bits)?, parse_real_bits(im, bits)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn shorthand_forms() {
        let c = ctx();
        let z = parse_complex("1.5+0.5i", &c).unwrap();
        assert_eq!(z.to_f64(), (1.5, 0.5));
        assert_eq!(parse_complex("2-3i", &c).unwrap().to_f64(), (2.0, -3.0));
        assert_eq!(parse_complex("2", &c).unwrap().to_f64(), (2.0, 0.0));
        assert_eq!(parse_complex("i", &c).unwrap().to_f64(), (0.0, 1.0));
        assert_eq!(parse_complex("-i", &c).unwrap().to_f64(), (0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e+1i", &c).unwrap().to_f64(), (1e-3, 20.0));
        assert_eq!(parse_complex("-0.5i", &c).unwrap().to_f64(), (0.0, -0.5));
    }

    #[test]
    fn json_form() {
        let c = ctx();
        let z = parse_complex(r#"{"re": "2", "im": "-1.25e0"}"#, &c).unwrap();
        assert_eq!(z.to_f64(), (2.0, -1.25));
        assert!(parse_complex(r#"{"re": "2", "x": "1"}"#, &c).is_err());
    }

    #[test]
    fn rejects_garbage() {
        let c = ctx();
        for bad in ["", "abc", "1.2.3", "nan", "inf", "1e", "--1", "1+2j"] {
            assert!(parse_real(bad, &c).is_err() || bad == "1+2j", "{bad}");
        }
        assert!(parse_complex("1+2j", &c).is_err());
    }

    #[test]
    fn render_uses_exponent_marker() {
        let x = Float::with_val(ctx().bits(), 1e-40);
        assert!(render_real(&x).contains('e'));
    }
}
