//! Scalar backends for the matrix kernels.
//!
//! Two backends are supported and selected per computation:
//! exact rational complex numbers ([`CRational`], no rounding ever) and
//! floating complex numbers ([`C64`], comparisons always carry a tolerance).

use crate::error::{Error, Result};
use crate::rat::Rat;
use num::{BigRational, Complex};
use std::fmt;

pub type Rational = BigRational;
pub type C64 = Complex<f64>;

/// Common interface of the two scalar backends.
///
/// Arithmetic is exposed as methods rather than operator overloads so that
/// generic kernels stay free of higher-ranked reference bounds.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True when arithmetic is closed under the field operations with no rounding.
    const EXACT: bool;
    /// Short backend tag used in reports.
    const BACKEND: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// num/den as a real scalar; panics on den == 0.
    fn from_ratio(num: i64, den: i64) -> Self;
    /// num/den as a purely imaginary scalar.
    fn from_ratio_im(num: i64, den: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// |z| as f64 (approximate on the exact backend; used for pivoting and residuals).
    fn abs(&self) -> f64;
    fn re_f64(&self) -> f64;
    fn im_f64(&self) -> f64;

    /// |self − rhs| as f64, with an equality fast path so exact comparisons
    /// of large matrices stay cheap.
    fn residual(&self, rhs: &Self) -> f64 {
        if self == rhs {
            0.0
        } else {
            self.sub(rhs).abs()
        }
    }
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CRational {
    pub re: Rat,
    pub im: Rat,
}

impl CRational {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRational { re, im }
    }

    pub fn real(re: Rat) -> Self {
        CRational { re, im: Rat::ZERO }
    }

    pub fn i() -> Self {
        CRational {
            re: Rat::ZERO,
            im: Rat::ONE,
        }
    }

    /// |z|² as an exact rational.
    pub fn norm_sqr(&self) -> Rat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Scalar for CRational {
    const EXACT: bool = true;
    const BACKEND: &'static str = "exact";

    fn zero() -> Self {
        CRational::real(Rat::ZERO)
    }

    fn one() -> Self {
        CRational::real(Rat::ONE)
    }

    fn from_i64(v: i64) -> Self {
        CRational::real(Rat::from_i64(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        CRational::real(Rat::ratio(num, den))
    }

    fn from_ratio_im(num: i64, den: i64) -> Self {
        CRational::new(Rat::ZERO, Rat::ratio(num, den))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        CRational::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    fn sub(&self, rhs: &Self) -> Self {
        CRational::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    fn mul(&self, rhs: &Self) -> Self {
        if Scalar::is_zero(self) || Scalar::is_zero(rhs) {
            return Scalar::zero();
        }
        if self.im.is_zero() && rhs.im.is_zero() {
            return CRational::real(self.re.mul(&rhs.re));
        }
        CRational::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }

    fn neg(&self) -> Self {
        CRational::new(self.re.neg(), self.im.neg())
    }

    fn conj(&self) -> Self {
        CRational::new(self.re.clone(), self.im.neg())
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        let n_inv = n.inv()?;
        Some(CRational::new(
            self.re.mul(&n_inv),
            self.im.neg().mul(&n_inv),
        ))
    }

    fn abs(&self) -> f64 {
        self.norm_sqr().to_f64().sqrt()
    }

    fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }

    fn im_f64(&self) -> f64 {
        self.im.to_f64()
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;
    const BACKEND: &'static str = "float";

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }

    fn one() -> Self {
        C64::new(1.0, 0.0)
    }

    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        C64::new(num as f64 / den as f64, 0.0)
    }

    fn from_ratio_im(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        C64::new(0.0, num as f64 / den as f64)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn conj(&self) -> Self {
        num::Complex::conj(self)
    }

    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(C64::new(1.0, 0.0) / self)
        }
    }

    fn abs(&self) -> f64 {
        self.norm()
    }

    fn re_f64(&self) -> f64 {
        self.re
    }

    fn im_f64(&self) -> f64 {
        self.im
    }
}

/// Parse a single exact entry.
///
/// Accepts `p/q`, plain integers, and complex pairs `a/b,c/d`.
pub fn parse_exact_entry(tok: &str) -> Result<CRational> {
    let tok = tok.trim();
    let parse_ratio = |s: &str| -> Result<Rat> {
        s.trim()
            .parse::<BigRational>()
            .map(Rat::from_big)
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
    };
    if let Some((re, im)) = tok.split_once(',') {
        Ok(CRational::new(parse_ratio(re)?, parse_ratio(im)?))
    } else {
        Ok(CRational::real(parse_ratio(tok)?))
    }
}

/// Parse a single floating entry: `(re,im)` pairs or a bare decimal.
pub fn parse_float_entry(tok: &str) -> Result<C64> {
    let tok = tok.trim();
    let parse_f = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("bad float {s:?}: {e}")))
    };
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (re, im) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected (re,im), got {tok:?}")))?;
        Ok(C64::new(parse_f(re)?, parse_f(im)?))
    } else {
        Ok(C64::new(parse_f(tok)?, 0.0))
    }
}
