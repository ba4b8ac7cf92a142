//! Exact rational arithmetic with a machine-word fast path.
//!
//! Values live in an `i64/i64` reduced fraction whenever they fit and fall
//! back to a boxed `BigRational` on overflow, demoting again when results
//! shrink. Zero and one never allocate and the enum stays at 24 bytes, which
//! is what keeps dense exact tensor kernels cheap — their matrices are mostly
//! zeros and memory bandwidth dominates.

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Debug)]
pub enum Rat {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    /// Arbitrary precision fallback; only holds values outside i64 range.
    Big(Box<BigRational>),
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let mut a = a.unsigned_abs();
    let mut b = b.unsigned_abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    // callers keep magnitudes away from i64::MIN, so this cannot truncate
    a as i64
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn from_i64(v: i64) -> Rat {
        Rat::Small(v, 1)
    }

    /// num/den reduced; panics on den == 0.
    pub fn ratio(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        assert!(num > i64::MIN && den > i64::MIN, "magnitude out of range");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i64(num, den).max(1);
        Rat::Small(sign * (num / g), (den / g).abs())
    }

    pub fn from_big(value: BigRational) -> Rat {
        demote(value)
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    pub fn add(&self, rhs: &Rat) -> Rat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, rhs) {
            if let Some(v) = add_small(*a, *b, *c, *d) {
                return v;
            }
        }
        demote(self.to_big() + rhs.to_big())
    }

    pub fn sub(&self, rhs: &Rat) -> Rat {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Rat) -> Rat {
        if self.is_zero() || rhs.is_zero() {
            return Rat::ZERO;
        }
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, rhs) {
            if let Some(v) = mul_small(*a, *b, *c, *d) {
                return v;
            }
        }
        demote(self.to_big() * rhs.to_big())
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::Small(-n, *d),
            Rat::Big(b) => demote(-(**b).clone()),
        }
    }

    pub fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rat::Small(n, d) => {
                let sign = if *n < 0 { -1 } else { 1 };
                Rat::Small(sign * d, n.abs())
            }
            Rat::Big(b) => demote(b.recip()),
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Small(n, d) => *n as f64 / *d as f64,
            Rat::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }
}

fn add_small(a: i64, b: i64, c: i64, d: i64) -> Option<Rat> {
    if a == i64::MIN || c == i64::MIN {
        return None;
    }
    // a/b + c/d with the usual gcd trick to limit growth
    let g = gcd_i64(b, d);
    let (b1, d1) = (b / g, d / g);
    let num = a.checked_mul(d1)?.checked_add(c.checked_mul(b1)?)?;
    let den = b.checked_mul(d1)?;
    if num == i64::MIN {
        return None;
    }
    let g2 = gcd_i64(num, den).max(1);
    Some(Rat::Small(num / g2, den / g2))
}

fn mul_small(a: i64, b: i64, c: i64, d: i64) -> Option<Rat> {
    if a == i64::MIN || c == i64::MIN {
        return None;
    }
    // reduce across before multiplying
    let g1 = gcd_i64(a, d).max(1);
    let g2 = gcd_i64(c, b).max(1);
    let num = (a / g1).checked_mul(c / g2)?;
    let den = (b / g2).checked_mul(d / g1)?;
    Some(Rat::Small(num, den))
}

fn demote(value: BigRational) -> Rat {
    if let (Some(n), Some(d)) = (value.numer().to_i64(), value.denom().to_i64()) {
        Rat::Small(n, d)
    } else {
        Rat::Big(Box::new(value))
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (self, other) {
            // both reduced with positive denominators, so structural equality
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            // Big only holds values outside i64 range, so mixed is unequal
            (Rat::Small(..), Rat::Big(_)) | (Rat::Big(_), Rat::Small(..)) => false,
            (Rat::Big(x), Rat::Big(y)) => x == y,
        }
    }
}

impl Eq for Rat {}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}
