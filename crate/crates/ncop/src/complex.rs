//! The `a+bi` text form used in every file format.

use ncop_core::C64;

/// Shortest roundtrip text of a real; exponent form outside `[1e-5, 1e16)`.
pub fn real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{}", if x == 0.0 { 0.0 } else { x })
    } else {
        format!("{x:e}")
    }
}

/// Shortest roundtrip text, e.g. `0.5+0i`, `-1e-3-2.25i`.
pub fn format(z: C64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", real(z.re), real(z.im.abs()))
}

/// Accepts `a+bi`, `a-bi`, `bi`, `a`, `i`, `-i`; whitespace is ignored.
pub fn parse(text: &str) -> Result<C64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("malformed complex number {text:?}");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return s
            .parse::<f64>()
            .map(|x| C64::new(x, 0.0))
            .map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}
