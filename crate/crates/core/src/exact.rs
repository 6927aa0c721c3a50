//! Exact rational helpers shared by the counting layers.

use num_rational::Ratio;
use serde::Serializer;

pub type Rational = Ratio<i128>;

/// `p/q` in lowest terms, `q > 0`; integers keep the `/1`.
pub fn ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Serde adapter writing a [`Rational`] as a `p/q` string.
pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}
