//! Integers in JSON: plain numbers up to 2^53, decimal strings beyond.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};

const SAFE: i64 = 1 << 53;

pub(crate) fn write_int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) if (-SAFE..=SAFE).contains(&v) => s.serialize_i64(v),
        _ => s.serialize_str(&x.to_string()),
    }
}

pub(crate) fn int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    write_int(x, s)
}

pub(crate) fn uint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    write_int(&BigInt::from(x.clone()), s)
}

pub(crate) fn opt_uint<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => uint(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn ints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    struct One<'a>(&'a BigInt);
    impl serde::Serialize for One<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            write_int(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&One(x))?;
    }
    seq.end()
}

/// Accepts a JSON integer or a decimal string.
pub(crate) fn read_int<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    struct IntVisitor;
    impl Visitor<'_> for IntVisitor {
        type Value = BigInt;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("an integer or a decimal integer string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
            Ok(v.into())
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
            Ok(v.into())
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
            v.parse()
                .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
        }
    }
    d.deserialize_any(IntVisitor)
}

pub(crate) fn opt_int<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => write_int(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn rational<S: Serializer>(
    x: &num_rational::BigRational,
    s: S,
) -> Result<S::Ok, S::Error> {
    if x.is_integer() {
        write_int(x.numer(), s)
    } else {
        s.serialize_str(&x.to_string())
    }
}
