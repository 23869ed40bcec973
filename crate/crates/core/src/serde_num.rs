//! Serializers for exact numbers: integers as JSON numbers when they fit in
//! `i64` and as decimal strings otherwise; rationals as `"p/q"` strings
//! unless integral.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::linalg::LatticeVector;

pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    if x.is_integer() {
        bigint(x.numer(), s)
    } else {
        s.serialize_str(&x.to_string())
    }
}

/// A list of `(vector, coefficient)` pairs as `[[vector, coefficient], ...]`.
pub fn weighted_vectors<S: Serializer>(terms: &[(LatticeVector, BigRational)], s: S) -> Result<S::Ok, S::Error> {
    struct Pair<'a>(&'a LatticeVector, &'a BigRational);
    impl serde::Serialize for Pair<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            struct Coef<'a>(&'a BigRational);
            impl serde::Serialize for Coef<'_> {
                fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                    rational(self.0, s)
                }
            }
            let mut seq = s.serialize_seq(Some(2))?;
            seq.serialize_element(self.0)?;
            seq.serialize_element(&Coef(self.1))?;
            seq.end()
        }
    }
    let mut seq = s.serialize_seq(Some(terms.len()))?;
    for (v, c) in terms {
        seq.serialize_element(&Pair(v, c))?;
    }
    seq.end()
}
