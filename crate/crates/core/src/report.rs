//! Float formatting for reports: values are rounded to 10 significant
//! digits before they are printed or serialized.

use std::fmt;

use serde::Serializer;

/// Round to 10 significant digits. Non-finite values pass through.
pub fn round_sig10(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

/// Display wrapper printing a value rounded to 10 significant digits.
#[derive(Clone, Copy, Debug)]
pub struct Sig10(pub f64);

impl fmt::Display for Sig10 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", round_sig10(self.0))
    }
}

pub fn sig10<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig10(*x))
}

pub fn sig10_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig10(*v)),
        None => s.serialize_none(),
    }
}
