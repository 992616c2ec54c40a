//! Exact rational helpers shared by the reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serializer;

/// `num/den` in lowest terms; integers keep the `/1`.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub(crate) fn serialize_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

pub(crate) fn serialize_ratio_opt<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&ratio_string(r)),
        None => s.serialize_none(),
    }
}

pub(crate) fn serialize_ratios<S: Serializer>(r: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(ratio_string))
}
