//! Exact rational numbers for filtration exponents and geometric data.
//!
//! Exponent bookkeeping must be exact: valuation queries, monoid membership
//! and truncation comparisons all break under floating point. Coefficients
//! stay complex floats; only exponents and planar coordinates use `Rat`.
//!
//! Arithmetic is checked 128-bit: any overflow aborts loudly instead of
//! silently wrapping. Desk-scale inputs (small fractions, truncation levels
//! below ~100) stay far away from the i128 range.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?} (expected \"p\" or \"p/q\")")]
    Parse(String),
}

impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Rat, RatError> {
        if den == 0 {
            return Err(RatError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: i128, den: i128) -> Rat {
        debug_assert!(den != 0);
        if num == 0 {
            return Rat { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        let sign = if den < 0 { -1 } else { 1 };
        Rat {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn from_int(n: i128) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(self.num != 0, "reciprocal of zero rational");
        Self::normalized(self.den, self.num)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Scale by an integer.
    pub fn scale(&self, k: i128) -> Rat {
        *self * Rat::from_int(k)
    }

    fn checked_add(&self, rhs: &Rat) -> Option<Rat> {
        // a/b + c/d over the gcd-reduced common denominator.
        let g = gcd(self.den, rhs.den);
        let lhs_mul = rhs.den / g;
        let rhs_mul = self.den / g;
        let num = self
            .num
            .checked_mul(lhs_mul)?
            .checked_add(rhs.num.checked_mul(rhs_mul)?)?;
        let den = self.den.checked_mul(lhs_mul)?;
        Some(Self::normalized(num, den))
    }

    fn checked_mul(&self, rhs: &Rat) -> Option<Rat> {
        // Cross-reduce first to keep intermediates small.
        let g1 = gcd(self.num, rhs.den);
        let g2 = gcd(rhs.num, self.den);
        let num = (self.num / g1).checked_mul(rhs.num / g2)?;
        let den = (self.den / g2).checked_mul(rhs.den / g1)?;
        Some(Self::normalized(num, den))
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        self.checked_add(&rhs).expect("rational overflow in add")
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        *self = *self + rhs;
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        self.checked_add(&(-rhs)).expect("rational overflow in sub")
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        *self = *self - rhs;
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        self.checked_mul(&rhs).expect("rational overflow in mul")
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(rhs.num != 0, "rational division by zero");
        self * rhs.recip()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        let lhs = self
            .num
            .checked_mul(other.den)
            .expect("rational overflow in cmp");
        let rhs = other
            .num
            .checked_mul(self.den)
            .expect("rational overflow in cmp");
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rat {
    type Err = RatError;

    fn from_str(s: &str) -> Result<Rat, RatError> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<i128>()
                .map_err(|_| RatError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let num = parse_int(p)?;
                let den = parse_int(q)?;
                Rat::new(num, den).map_err(|_| RatError::Parse(s.to_string()))
            }
            None => Ok(Rat::from_int(parse_int(s)?)),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Convenience constructor: `rat(7, 10)` is `7/10`.
pub fn rat(num: i128, den: i128) -> Rat {
    Rat::new(num, den).expect("nonzero denominator")
}
