//! Big integers serialize as decimal strings so JSON output never loses digits.

use num_bigint::{BigInt, BigUint};
use serde::Serializer;

pub fn biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn opt_biguint<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub fn opt_biguint_vec<S: Serializer>(x: &Option<Vec<BigUint>>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_seq(v.iter().map(|a| a.to_string())),
        None => s.serialize_none(),
    }
}
