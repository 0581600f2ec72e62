use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Default threshold for "is zero" and "is integral" tests on floating values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Current process-wide float tolerance.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(Ordering::Relaxed))
}

/// Overrides the process-wide float tolerance. Non-positive values are ignored.
pub fn set_tolerance(eps: f64) {
    if eps > 0.0 && eps.is_finite() {
        TOLERANCE_BITS.store(eps.to_bits(), Ordering::Relaxed);
    }
}

/// Arithmetic shared by the exact rationals and the tolerant complex doubles.
///
/// Every algorithm in the crate is written once against this trait. `EXACT`
/// separates the two modes where behavior differs (pivoting, hashing,
/// claims that need certification).
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn from_complex(re: f64, im: f64) -> Option<Self>;

    /// Exact zero test for rationals, `|x| <= tolerance()` for floats.
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;

    /// The nearest integer, when the value is integral (within tolerance for floats).
    fn to_integer(&self) -> Option<BigInt>;

    /// Feeds a canonical key into `state`. Floats are quantized at 1e-6.
    fn hash_into<H: Hasher>(&self, state: &mut H);

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other).is_zero()
    }

    fn is_one(&self) -> bool {
        self.approx_eq(&Self::one())
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn from_complex(re: f64, im: f64) -> Option<Self> {
        if im != 0.0 {
            return None;
        }
        BigRational::from_float(re)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer() / self.denom())
    }
    fn hash_into<H: Hasher>(&self, state: &mut H) {
        self.numer().hash(state);
        self.denom().hash(state);
    }
}

/// Double-precision complex scalar with tolerant comparisons.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct C64(pub Complex64);

impl C64 {
    pub fn new(re: f64, im: f64) -> Self {
        C64(Complex64::new(re, im))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    /// `exp(2 pi i k / n)`.
    pub fn root_of_unity(k: i64, n: i64) -> Self {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
        C64::new(theta.cos(), theta.sin())
    }
}

impl fmt::Debug for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else {
            write!(f, "{}{:+}i", self.0.re, self.0.im)
        }
    }
}

macro_rules! c64_binop {
    ($tr:ident, $method:ident, $op:tt, $atr:ident, $amethod:ident) => {
        impl $tr for C64 {
            type Output = C64;
            fn $method(self, rhs: C64) -> C64 {
                C64(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a C64> for C64 {
            type Output = C64;
            fn $method(self, rhs: &'a C64) -> C64 {
                C64(self.0 $op rhs.0)
            }
        }
        impl<'a> $atr<&'a C64> for C64 {
            fn $amethod(&mut self, rhs: &'a C64) {
                self.0 = self.0 $op rhs.0;
            }
        }
    };
}

c64_binop!(Add, add, +, AddAssign, add_assign);
c64_binop!(Sub, sub, -, SubAssign, sub_assign);

impl Mul for C64 {
    type Output = C64;
    fn mul(self, rhs: C64) -> C64 {
        C64(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a C64> for C64 {
    type Output = C64;
    fn mul(self, rhs: &'a C64) -> C64 {
        C64(self.0 * rhs.0)
    }
}

impl Div for C64 {
    type Output = C64;
    fn div(self, rhs: C64) -> C64 {
        C64(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a C64> for C64 {
    type Output = C64;
    fn div(self, rhs: &'a C64) -> C64 {
        C64(self.0 / rhs.0)
    }
}

impl Neg for C64 {
    type Output = C64;
    fn neg(self) -> C64 {
        C64(-self.0)
    }
}

fn quantize(x: f64) -> i64 {
    let q = (x * 1e6).round();
    // normalizes -0
    if q == 0.0 {
        0
    } else {
        q as i64
    }
}

impl Field for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }
    fn from_rational(q: &Rational) -> Self {
        C64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_complex(re: f64, im: f64) -> Option<Self> {
        Some(C64::new(re, im))
    }
    fn is_zero(&self) -> bool {
        self.0.norm() <= tolerance()
    }
    fn conj(&self) -> Self {
        C64(self.0.conj())
    }
    fn magnitude(&self) -> f64 {
        self.0.norm()
    }
    fn to_complex(&self) -> Complex64 {
        self.0
    }
    fn to_integer(&self) -> Option<BigInt> {
        let r = self.0.re.round();
        let eps = tolerance() * (1.0 + r.abs());
        if (self.0.re - r).abs() <= eps && self.0.im.abs() <= eps {
            Some(BigInt::from(r as i64))
        } else {
            None
        }
    }
    fn hash_into<H: Hasher>(&self, state: &mut H) {
        quantize(self.0.re).hash(state);
        quantize(self.0.im).hash(state);
    }
    fn approx_eq(&self, other: &Self) -> bool {
        (self.0 - other.0).norm() <= tolerance() * (1.0 + self.0.norm().max(other.0.norm()))
    }
}

/// Parses `"p/q"`, `"p"` or a decimal literal such as `"-0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Some(if neg { -q } else { q });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Formats a rational as `"p/q"` (or `"p"` when integral).
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&q), "-3/2");
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_rational("1/2"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-7"), Some(rat(-7, 1)));
        assert_eq!(parse_rational("-0.25"), Some(rat(-1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn float_zero_uses_tolerance() {
        assert!(C64::new(1e-12, 0.0).is_zero());
        assert!(!C64::new(1e-3, 0.0).is_zero());
        assert_eq!(C64::new(2.0 + 1e-12, 0.0).to_integer(), Some(BigInt::from(2)));
        assert_eq!(C64::new(2.5, 0.0).to_integer(), None);
    }

    #[test]
    fn quantized_hash_merges_close_values() {
        use std::collections::hash_map::DefaultHasher;
        let h = |x: C64| {
            let mut s = DefaultHasher::new();
            x.hash_into(&mut s);
            s.finish()
        };
        assert_eq!(h(C64::new(0.5, -0.0)), h(C64::new(0.5 + 1e-12, 0.0)));
    }
}
