use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::field::{format_rational, parse_rational, Field, Rational, C64};
use super::LinAlgError;

/// A scalar in one of the two supported modes.
///
/// Arithmetic between different variants is an error, never a coercion.
/// Serialized as `"p/q"` for rationals and `{"re": .., "im": ..}` for complex values.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Complex(C64),
}

impl Scalar {
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Complex(_) => None,
        }
    }

    pub fn to_c64(&self) -> C64 {
        match self {
            Scalar::Rational(q) => C64::from_rational(q),
            Scalar::Complex(c) => *c,
        }
    }

    fn binop(
        &self,
        rhs: &Scalar,
        q: impl FnOnce(&Rational, &Rational) -> Rational,
        c: impl FnOnce(C64, C64) -> C64,
    ) -> Result<Scalar, LinAlgError> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(q(a, b))),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(c(*a, *b))),
            _ => Err(LinAlgError::VariantMismatch),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, LinAlgError> {
        self.binop(rhs, |a, b| a + b, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, LinAlgError> {
        self.binop(rhs, |a, b| a - b, |a, b| a - b)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, LinAlgError> {
        self.binop(rhs, |a, b| a * b, |a, b| a * b)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, LinAlgError> {
        if match rhs {
            Scalar::Rational(q) => Field::is_zero(q),
            Scalar::Complex(c) => c.0.norm() == 0.0,
        } {
            return Err(LinAlgError::DivisionByZero);
        }
        self.binop(rhs, |a, b| a / b, |a, b| a / b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&format_rational(q)),
            Scalar::Complex(c) => write!(f, "{c}"),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<C64> for Scalar {
    fn from(c: C64) -> Self {
        Scalar::Complex(c)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(q) => s.serialize_str(&format_rational(q)),
            Scalar::Complex(c) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("re", &c.re())?;
                m.serialize_entry("im", &c.im())?;
                m.end()
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Text(String),
    Int(i64),
    Float(f64),
    Complex { re: f64, #[serde(default)] im: f64 },
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RawScalar::deserialize(d)? {
            RawScalar::Text(s) => parse_rational(&s)
                .map(Scalar::Rational)
                .ok_or_else(|| de::Error::custom(format!("invalid rational literal {s:?}"))),
            RawScalar::Int(i) => Ok(Scalar::Rational(Rational::from_i64(i))),
            RawScalar::Float(x) => Ok(Scalar::Complex(C64::new(x, 0.0))),
            RawScalar::Complex { re, im } => Ok(Scalar::Complex(C64::new(re, im))),
        }
    }
}

/// Conversion from the dynamic scalar into a concrete field.
pub trait FromScalar: Field {
    fn from_scalar(s: &Scalar) -> Result<Self, LinAlgError>;
    fn to_scalar(&self) -> Scalar;
}

impl FromScalar for Rational {
    fn from_scalar(s: &Scalar) -> Result<Self, LinAlgError> {
        s.as_rational().cloned().ok_or(LinAlgError::VariantMismatch)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }
}

impl FromScalar for C64 {
    fn from_scalar(s: &Scalar) -> Result<Self, LinAlgError> {
        Ok(s.to_c64())
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Complex(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn mixed_arithmetic_is_rejected() {
        let a = Scalar::Rational(rat(1, 2));
        let b = Scalar::Complex(C64::new(0.5, 0.0));
        assert_eq!(a.checked_add(&b), Err(LinAlgError::VariantMismatch));
        assert_eq!(
            a.checked_mul(&Scalar::Rational(rat(2, 3))).unwrap(),
            Scalar::Rational(rat(1, 3))
        );
    }

    #[test]
    fn serde_shapes() {
        let v: Vec<Scalar> = serde_json::from_str(r#"["3/6", 2, {"re": 0.5, "im": -1}]"#).unwrap();
        assert_eq!(v[0], Scalar::Rational(rat(1, 2)));
        assert_eq!(v[1], Scalar::Rational(rat(2, 1)));
        assert_eq!(v[2], Scalar::Complex(C64::new(0.5, -1.0)));
        assert_eq!(serde_json::to_string(&v[0]).unwrap(), "\"1/2\"");
        assert_eq!(serde_json::to_string(&v[2]).unwrap(), r#"{"re":0.5,"im":-1.0}"#);
    }
}
