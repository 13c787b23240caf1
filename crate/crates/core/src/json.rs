//! Fixed-precision number output for the JSON interchange formats.
//!
//! Every real in emitted JSON carries 17 significant digits so that values
//! round-trip bit-exactly and output is byte-stable across runs.

use serde::Serializer;
use serde_json::value::RawValue;

/// Formats a finite float with 17 significant digits; non-finite values
/// become `null`.
pub fn sig17(v: f64) -> String {
    if !v.is_finite() {
        return "null".to_owned();
    }
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

fn raw<S: Serializer>(text: String, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(text).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&raw, s)
}

pub fn real<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(sig17(*v), s)
}

pub fn reals<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let body: Vec<String> = v.iter().map(|x| sig17(*x)).collect();
    raw(format!("[{}]", body.join(",")), s)
}

/// Row-major complex matrix as `[[re, im], ...]`.
pub fn complex_pairs<S: Serializer>(v: &[[f64; 2]], s: S) -> Result<S::Ok, S::Error> {
    let body: Vec<String> = v
        .iter()
        .map(|[re, im]| format!("[{},{}]", sig17(*re), sig17(*im)))
        .collect();
    raw(format!("[{}]", body.join(",")), s)
}
