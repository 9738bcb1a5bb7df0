//! Exact classification of isolated KKT points of polynomial optimization
//! problems.
//!
//! The pipeline builds the tangency ideals of the problem at the point,
//! computes rational univariate representations of finitely many critical
//! points, certifies a radius below which the sphere sections behave
//! faithfully, and compares the extreme objective values on a small sphere
//! with the value at the point.

pub mod classify;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod linalg;
mod modular;
pub mod poly;
pub mod problem;
pub mod report;
pub mod rur;
pub mod tangency;
pub mod univariate;

pub use error::{Error, Result};

/// Exact rational numbers used throughout.
pub type Rational = num_rational::BigRational;

/// Serialize rationals as exact `"p/q"` strings (or `"p"` for integers).
pub mod serde_rational {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        crate::poly::parse_rational(&text).map_err(de::Error::custom)
    }

    /// Same for `Option<Rational>`, with `null` for `None`.
    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&r.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
            let text: Option<String> = Option::deserialize(d)?;
            text.map(|t| crate::poly::parse_rational(&t).map_err(de::Error::custom)).transpose()
        }
    }
}
