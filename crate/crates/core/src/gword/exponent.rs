use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

/// Real exponent of a word block.
///
/// Exponents read from text are always exact rationals; floating values only
/// enter through the programmatic constructors (random real exponents, or
/// decimals too long for a 64-bit rational).
#[derive(Debug, Clone, Copy)]
pub enum Exponent {
    Rational(Rational64),
    Real(f64),
}

impl Exponent {
    pub fn int(n: i64) -> Self {
        Exponent::Rational(Rational64::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Exponent::Rational(Rational64::new(num, den))
    }

    pub fn real(v: f64) -> Self {
        Exponent::Real(v)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Exponent::Real(v) => *v,
        }
    }

    pub fn as_rational(&self) -> Option<Rational64> {
        match self {
            Exponent::Rational(r) => Some(*r),
            Exponent::Real(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Exponent::Rational(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Exponent::Rational(r) => r.is_zero(),
            Exponent::Real(v) => *v == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Exponent::Rational(r) => *r > Rational64::zero(),
            Exponent::Real(v) => *v > 0.0,
        }
    }

    /// Sum, exact while both sides are rational and the result fits.
    pub fn add(&self, other: &Exponent) -> Exponent {
        if let (Exponent::Rational(a), Exponent::Rational(b)) = (self, other) {
            if let Some(sum) = checked_add(*a, *b) {
                return Exponent::Rational(sum);
            }
        }
        Exponent::Real(self.to_f64() + other.to_f64())
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        if let (Exponent::Rational(a), Exponent::Rational(b)) = (self, other) {
            if let Some(prod) = checked_mul(*a, *b) {
                return Exponent::Rational(prod);
            }
        }
        Exponent::Real(self.to_f64() * other.to_f64())
    }

    /// Total order used for canonical keys: exact between rationals,
    /// otherwise by floating value.
    pub fn total_cmp(&self, other: &Exponent) -> Ordering {
        match (self, other) {
            (Exponent::Rational(a), Exponent::Rational(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

fn checked_add(a: Rational64, b: Rational64) -> Option<Rational64> {
    let (an, ad) = (*a.numer() as i128, *a.denom() as i128);
    let (bn, bd) = (*b.numer() as i128, *b.denom() as i128);
    narrow(an * bd + bn * ad, ad * bd)
}

fn checked_mul(a: Rational64, b: Rational64) -> Option<Rational64> {
    let num = (*a.numer() as i128).checked_mul(*b.numer() as i128)?;
    narrow(num, *a.denom() as i128 * *b.denom() as i128)
}

fn narrow(num: i128, den: i128) -> Option<Rational64> {
    let g = num_integer::gcd(num, den).max(1);
    let (num, den) = (num / g, den / g);
    Some(Rational64::new(i64::try_from(num).ok()?, i64::try_from(den).ok()?))
}

impl PartialEq for Exponent {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Exponent::Rational(a), Exponent::Rational(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Exponent::Rational(a), Exponent::Rational(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

impl From<Rational64> for Exponent {
    fn from(r: Rational64) -> Self {
        Exponent::Rational(r)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Exponent::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Exponent::Real(v) => write!(f, "{v}"),
        }
    }
}
