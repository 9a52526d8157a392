//! Exact arithmetic in a real quadratic field `Q(√t)` and its complexification.
//!
//! A [`RealQuad`] is `p + q·√t` with rational `p`, `q` and a square-free `t ≥ 1`.
//! A [`ComplexQuad`] is `re + i·im` with both parts in the same real field, so
//! imaginary quadratic fields such as `Q(√-3)` are represented by splitting
//! `√-3 = i·√3` at parse time. Signs are decided by rational comparisons only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    MixedFields(u64, u64),
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
}

/// Returns true if `t` has no square factor > 1.
pub fn is_square_free(t: u64) -> bool {
    if t == 0 {
        return false;
    }
    let mut d: u64 = 2;
    while d.saturating_mul(d) <= t {
        if t % (d * d) == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `p + q·√t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealQuad {
    p: BigRational,
    q: BigRational,
    t: u64,
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl RealQuad {
    pub fn new(p: BigRational, q: BigRational, t: u64) -> Result<Self, ScalarError> {
        if !is_square_free(t) {
            return Err(ScalarError::NotSquareFree(t));
        }
        Ok(Self::normalized(p, q, t))
    }

    fn normalized(p: BigRational, q: BigRational, t: u64) -> Self {
        if t == 1 {
            RealQuad { p: p + q, q: BigRational::zero(), t }
        } else {
            RealQuad { p, q, t }
        }
    }

    pub fn rational(p: BigRational, t: u64) -> Self {
        RealQuad { p, q: BigRational::zero(), t }
    }

    pub fn from_int(n: i64, t: u64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)), t)
    }

    pub fn zero(t: u64) -> Self {
        Self::from_int(0, t)
    }

    pub fn one(t: u64) -> Self {
        Self::from_int(1, t)
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Exact sign of `p + q·√t`.
    pub fn sign(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let p2 = &self.p * &self.p;
        let q2t = &self.q * &self.q * BigRational::from_integer(BigInt::from(self.t));
        match p2.cmp(&q2t) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    fn common_t(&self, other: &Self) -> u64 {
        if self.t == other.t {
            self.t
        } else if self.q.is_zero() {
            other.t
        } else if other.q.is_zero() {
            self.t
        } else {
            panic!("{}", ScalarError::MixedFields(self.t, other.t))
        }
    }

    fn lift(&self, t: u64) -> Self {
        if self.t == t {
            self.clone()
        } else {
            RealQuad { p: self.p.clone(), q: self.q.clone(), t }
        }
    }

    /// Field norm `p² - t·q²`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(BigInt::from(self.t))
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(RealQuad { p: &self.p / &n, q: -(&self.q / &n), t: self.t })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.recip()?)
    }

    /// Floating-point approximation, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let f = |r: &BigRational| {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        f(&self.p) + f(&self.q) * (self.t as f64).sqrt()
    }
}

impl PartialOrd for RealQuad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealQuad {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl<'a> Add<&'a RealQuad> for &'a RealQuad {
    type Output = RealQuad;
    fn add(self, o: &RealQuad) -> RealQuad {
        let t = self.common_t(o);
        RealQuad::normalized(&self.p + &o.p, &self.q + &o.q, t)
    }
}

impl<'a> Sub<&'a RealQuad> for &'a RealQuad {
    type Output = RealQuad;
    fn sub(self, o: &RealQuad) -> RealQuad {
        let t = self.common_t(o);
        RealQuad::normalized(&self.p - &o.p, &self.q - &o.q, t)
    }
}

impl<'a> Mul<&'a RealQuad> for &'a RealQuad {
    type Output = RealQuad;
    fn mul(self, o: &RealQuad) -> RealQuad {
        let t = self.common_t(o);
        let (a, b) = (self.lift(t), o.lift(t));
        let tr = BigRational::from_integer(BigInt::from(t));
        RealQuad::normalized(&a.p * &b.p + &a.q * &b.q * tr, &a.p * &b.q + &a.q * &b.p, t)
    }
}

impl Neg for &RealQuad {
    type Output = RealQuad;
    fn neg(self) -> RealQuad {
        RealQuad { p: -self.p.clone(), q: -self.q.clone(), t: self.t }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, o: $ty) -> $ty { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(RealQuad, Add add, Sub sub, Mul mul);

impl Neg for RealQuad {
    type Output = RealQuad;
    fn neg(self) -> RealQuad {
        -&self
    }
}

impl fmt::Display for RealQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            write!(f, "{}*sqrt({})", self.q, self.t)
        } else {
            write!(f, "{} + {}*sqrt({})", self.p, self.q, self.t)
        }
    }
}

impl fmt::Debug for RealQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `re + i·im` with both parts in the same real quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexQuad {
    pub re: RealQuad,
    pub im: RealQuad,
}

impl ComplexQuad {
    pub fn new(re: RealQuad, im: RealQuad) -> Self {
        ComplexQuad { re, im }
    }

    pub fn real(re: RealQuad) -> Self {
        let t = re.t();
        ComplexQuad { re, im: RealQuad::zero(t) }
    }

    pub fn zero(t: u64) -> Self {
        Self::real(RealQuad::zero(t))
    }

    pub fn one(t: u64) -> Self {
        Self::real(RealQuad::one(t))
    }

    pub fn from_rational(r: BigRational, t: u64) -> Self {
        Self::real(RealQuad::rational(r, t))
    }

    /// Builds `a0 + a1·w` where `w = √d` for `d > 0` and `w = i·√|d|` for `d < 0`.
    pub fn from_field_coords(a0: BigRational, a1: BigRational, d: i64) -> Result<Self, ScalarError> {
        let t = d.unsigned_abs();
        if !is_square_free(t) {
            return Err(ScalarError::NotSquareFree(t));
        }
        let zero = BigRational::zero();
        if d > 0 {
            Ok(ComplexQuad { re: RealQuad::new(a0, a1, t)?, im: RealQuad::zero(t) })
        } else {
            Ok(ComplexQuad { re: RealQuad::new(a0, zero.clone(), t)?, im: RealQuad::new(zero, a1, t)? })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexQuad { re: self.re.clone(), im: -&self.im }
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ScalarError> {
        let den = &(&o.re * &o.re) + &(&o.im * &o.im);
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let num = self * &o.conj();
        Ok(ComplexQuad { re: num.re.checked_div(&den)?, im: num.im.checked_div(&den)? })
    }

    pub fn scale(&self, r: &RealQuad) -> Self {
        ComplexQuad { re: &self.re * r, im: &self.im * r }
    }
}

impl<'a> Add<&'a ComplexQuad> for &'a ComplexQuad {
    type Output = ComplexQuad;
    fn add(self, o: &ComplexQuad) -> ComplexQuad {
        ComplexQuad { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a ComplexQuad> for &'a ComplexQuad {
    type Output = ComplexQuad;
    fn sub(self, o: &ComplexQuad) -> ComplexQuad {
        ComplexQuad { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a ComplexQuad> for &'a ComplexQuad {
    type Output = ComplexQuad;
    fn mul(self, o: &ComplexQuad) -> ComplexQuad {
        ComplexQuad {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl Neg for &ComplexQuad {
    type Output = ComplexQuad;
    fn neg(self) -> ComplexQuad {
        ComplexQuad { re: -&self.re, im: -&self.im }
    }
}

forward_owned!(ComplexQuad, Add add, Sub sub, Mul mul);

impl fmt::Display for ComplexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}) + i*({})", self.re, self.im)
        }
    }
}

impl fmt::Debug for ComplexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q` or `p`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
