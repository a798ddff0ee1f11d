//! Exact arithmetic in the field ℚ[√3], values scaled by a power of π, and
//! correctly rounded decimal rendering.
//!
//! Every length in this crate is measured in units of the packed circle
//! radius `r`, every area in units of `r²`, so all of them are elements
//! `a + b√3` with rational `a` and `b`. Densities of the polygon-bounded
//! configurations additionally carry one factor of π, which is tracked
//! symbolically by [`PiScaled`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Fractional digits of π after the leading `3.`.
const PI_DIGITS: &str = "\
14159265358979323846264338327950288419716939937510\
58209749445923078164062862089986280348253421170679\
82148086513282306647093844609550582231725359408128\
48111745028410270193852110555964462294895493038196";

/// Largest digit count accepted by [`decimal_string`].
pub const MAX_DIGITS: u32 = 100;

/// Guard digits used on the first evaluation attempt.
const GUARD_DIGITS: u32 = 10;

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An exact element `a + b√3` of ℚ[√3].
///
/// Equality is component-wise, which coincides with numeric equality
/// because √3 is irrational. The ordering is the exact numeric ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root3Scalar {
    a: Rational,
    b: Rational,
}

impl Root3Scalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self::new(a, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `(an/ad) + (bn/bd)·√3`. Panics on a zero denominator.
    pub fn from_fractions(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(rat(an, ad), rat(bn, bd))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The generator √3.
    pub fn sqrt3() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of √3.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a − b√3`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b)
    }

    /// Field norm `a² − 3b²`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(3) * &self.b * &self.b
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.a * k, &self.b * k)
    }

    /// Multiplicative inverse via the conjugate.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(&self.a / &n, -&self.b / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Exact sign of `a + b√3`, decided without floating point.
    ///
    /// When `a` and `b` disagree in sign the term of larger magnitude wins,
    /// which is decided by comparing `a²` against `3b²`. The two can never
    /// be equal unless both vanish.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            _ => {
                let lhs = &self.a * &self.a;
                let rhs = int(3) * &self.b * &self.b;
                if lhs > rhs {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Nearest `f64`, for plotting and floating-point cross-checks only.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

impl Default for Root3Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Root3Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Root3Scalar {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

impl PartialOrd for Root3Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Root3Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign()
    }
}

impl Neg for Root3Scalar {
    type Output = Root3Scalar;
    fn neg(self) -> Root3Scalar {
        Root3Scalar::new(-self.a, -self.b)
    }
}

impl Neg for &Root3Scalar {
    type Output = Root3Scalar;
    fn neg(self) -> Root3Scalar {
        Root3Scalar::new(-&self.a, -&self.b)
    }
}

impl Add<&Root3Scalar> for &Root3Scalar {
    type Output = Root3Scalar;
    fn add(self, rhs: &Root3Scalar) -> Root3Scalar {
        Root3Scalar::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&Root3Scalar> for &Root3Scalar {
    type Output = Root3Scalar;
    fn sub(self, rhs: &Root3Scalar) -> Root3Scalar {
        Root3Scalar::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&Root3Scalar> for &Root3Scalar {
    type Output = Root3Scalar;
    fn mul(self, rhs: &Root3Scalar) -> Root3Scalar {
        // (a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3
        let a = &self.a * &rhs.a + int(3) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Root3Scalar::new(a, b)
    }
}

/// Panics when dividing by zero; use [`Root3Scalar::checked_div`] to get an
/// error value instead.
impl Div<&Root3Scalar> for &Root3Scalar {
    type Output = Root3Scalar;
    fn div(self, rhs: &Root3Scalar) -> Root3Scalar {
        self.checked_div(rhs).expect("division of Root3Scalar by zero")
    }
}

macro_rules! forward_binop {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<Root3Scalar> for Root3Scalar {
            type Output = Root3Scalar;
            fn $method(self, rhs: Root3Scalar) -> Root3Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&Root3Scalar> for Root3Scalar {
            type Output = Root3Scalar;
            fn $method(self, rhs: &Root3Scalar) -> Root3Scalar {
                (&self).$method(rhs)
            }
        }
        impl $imp<Root3Scalar> for &Root3Scalar {
            type Output = Root3Scalar;
            fn $method(self, rhs: Root3Scalar) -> Root3Scalar {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_binop!(Add add, Sub sub, Mul mul, Div div);

fn fmt_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Renders `a + b√3` as e.g. `63 - 36√3`, `√3/6` or `2 + 2√3/3`.
impl fmt::Display for Root3Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return fmt_rational(f, &self.a);
        }
        let b_abs = self.b.abs();
        if !self.a.is_zero() {
            fmt_rational(f, &self.a)?;
            f.write_str(if self.b.is_negative() { " - " } else { " + " })?;
        } else if self.b.is_negative() {
            f.write_str("-")?;
        }
        if !b_abs.numer().is_one() {
            write!(f, "{}", b_abs.numer())?;
        }
        f.write_str("√3")?;
        if !b_abs.denom().is_one() {
            write!(f, "/{}", b_abs.denom())?;
        }
        Ok(())
    }
}

/// `coeff · π^pi_exponent` with `pi_exponent ∈ {0, 1}`.
///
/// Values with the same exponent compare and subtract exactly. Mixing
/// exponents is only possible through decimal evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiScaled {
    pi_exponent: u8,
    coeff: Root3Scalar,
}

impl PiScaled {
    pub fn new(pi_exponent: u32, coeff: Root3Scalar) -> Result<Self> {
        match pi_exponent {
            0 | 1 => Ok(Self {
                pi_exponent: pi_exponent as u8,
                coeff,
            }),
            e => Err(Error::PiExponentOutOfRange(e)),
        }
    }

    /// A value without a factor of π.
    pub fn plain(coeff: Root3Scalar) -> Self {
        Self {
            pi_exponent: 0,
            coeff,
        }
    }

    /// `π · coeff`.
    pub fn times_pi(coeff: Root3Scalar) -> Self {
        Self {
            pi_exponent: 1,
            coeff,
        }
    }

    pub fn pi_exponent(&self) -> u8 {
        self.pi_exponent
    }

    pub fn coeff(&self) -> &Root3Scalar {
        &self.coeff
    }

    pub fn into_coeff(self) -> Root3Scalar {
        self.coeff
    }

    fn same_exponent(&self, other: &Self) -> Result<()> {
        if self.pi_exponent == other.pi_exponent {
            Ok(())
        } else {
            Err(Error::PiExponentMismatch(self.pi_exponent, other.pi_exponent))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_exponent(other)?;
        Ok(Self {
            pi_exponent: self.pi_exponent,
            coeff: &self.coeff + &other.coeff,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_exponent(other)?;
        Ok(Self {
            pi_exponent: self.pi_exponent,
            coeff: &self.coeff - &other.coeff,
        })
    }

    /// Exact comparison; `None` when the π exponents differ.
    pub fn cmp_exact(&self, other: &Self) -> Option<Ordering> {
        (self.pi_exponent == other.pi_exponent).then(|| self.coeff.cmp(&other.coeff))
    }

    /// Exact quotient of two values carrying the same power of π, which is
    /// again an element of ℚ[√3].
    pub fn ratio(&self, other: &Self) -> Result<Root3Scalar> {
        self.same_exponent(other)?;
        self.coeff.checked_div(&other.coeff)
    }

    /// Multiplies the coefficient, leaving the power of π unchanged.
    pub fn scale(&self, k: &Root3Scalar) -> Self {
        Self {
            pi_exponent: self.pi_exponent,
            coeff: &self.coeff * k,
        }
    }

    pub fn sign(&self) -> Ordering {
        self.coeff.sign()
    }

    pub fn abs(&self) -> Self {
        Self {
            pi_exponent: self.pi_exponent,
            coeff: self.coeff.abs(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64();
        if self.pi_exponent == 1 {
            c * std::f64::consts::PI
        } else {
            c
        }
    }
}

impl From<Root3Scalar> for PiScaled {
    fn from(coeff: Root3Scalar) -> Self {
        Self::plain(coeff)
    }
}

impl Neg for &PiScaled {
    type Output = PiScaled;
    fn neg(self) -> PiScaled {
        PiScaled {
            pi_exponent: self.pi_exponent,
            coeff: -&self.coeff,
        }
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_exponent == 0 {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one_like() {
            f.write_str("π")
        } else if self.coeff.a.is_zero() || self.coeff.b.is_zero() {
            write!(f, "π·{}", self.coeff)
        } else {
            write!(f, "π·({})", self.coeff)
        }
    }
}

impl Root3Scalar {
    fn is_one_like(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// `floor(π · 10^k)` for `k` up to the embedded precision.
fn pi_floor_scaled(k: u32) -> Option<BigInt> {
    let k = k as usize;
    if k > PI_DIGITS.len() {
        return None;
    }
    format!("3{}", &PI_DIGITS[..k]).parse().ok()
}

/// Number of fractional digits of π embedded in the crate.
pub fn pi_embedded_digits() -> usize {
    PI_DIGITS.len()
}

/// Rounds a rational half away from zero to an integer.
fn round_half_up(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    let d = q.denom();
    let two = BigInt::from(2);
    let m = (&two * &n + d).div_floor(&(&two * d));
    if q.is_negative() {
        -m
    } else {
        m
    }
}

/// Closed interval containing `x`, with √3 and π known to `k` digits.
fn enclose(x: &PiScaled, k: u32) -> Option<(Rational, Rational)> {
    let scale = pow10(k);
    let s = (BigInt::from(3) * &scale * &scale).sqrt();
    let sqrt3 = (
        Rational::new(s.clone(), scale.clone()),
        Rational::new(s + 1, scale.clone()),
    );
    let (a, b) = (&x.coeff.a, &x.coeff.b);
    let (p, q) = (a + b * &sqrt3.0, a + b * &sqrt3.1);
    let t = if p <= q { (p, q) } else { (q, p) };
    if x.pi_exponent == 0 {
        return Some(t);
    }
    let pf = pi_floor_scaled(k)?;
    let pi = (
        Rational::new(pf.clone(), scale.clone()),
        Rational::new(pf + 1, scale),
    );
    let products = [&t.0 * &pi.0, &t.0 * &pi.1, &t.1 * &pi.0, &t.1 * &pi.1];
    let lo = products.iter().min().cloned()?;
    let hi = products.iter().max().cloned()?;
    Some((lo, hi))
}

/// `x · 10^digits` rounded half away from zero to an integer.
///
/// Rational values are rounded exactly. Irrational values are enclosed in
/// an interval that is tightened until both ends round to the same integer.
/// Unlike [`decimal_string`] this accepts `digits = 0`.
pub fn round_scaled(x: &PiScaled, digits: u32) -> BigInt {
    let shift = Rational::from_integer(pow10(digits));
    if x.pi_exponent == 0 && x.coeff.b.is_zero() {
        return round_half_up(&(&x.coeff.a * &shift));
    }
    let mut k = digits + GUARD_DIGITS;
    let mut last = None;
    while let Some((lo, hi)) = enclose(x, k) {
        let (rl, rh) = (round_half_up(&(lo * &shift)), round_half_up(&(hi * &shift)));
        if rl == rh {
            return rl;
        }
        last = Some(rh);
        k += 20;
    }
    // Only reachable for values within 10^-200 of a rounding tie.
    last.unwrap_or_default()
}

/// Decimal expansion of `x` rounded half-up (away from zero) to `digits`
/// fractional digits, `1 ≤ digits ≤ 100`.
pub fn decimal_string(x: &PiScaled, digits: u32) -> Result<String> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(Error::DigitsOutOfRange(digits));
    }
    Ok(format_scaled(&round_scaled(x, digits), digits))
}

/// Formats an integer `m` as `m / 10^digits`.
pub(crate) fn format_scaled(m: &BigInt, digits: u32) -> String {
    let digits = digits as usize;
    let mut s = m.abs().to_string();
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    if digits > 0 {
        s.insert(s.len() - digits, '.');
    }
    if m.is_negative() {
        s.insert(0, '-');
    }
    s
}

/// Shorthand for [`decimal_string`] on a value with no factor of π.
pub fn decimal_root3(x: &Root3Scalar, digits: u32) -> Result<String> {
    decimal_string(&PiScaled::plain(x.clone()), digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3(an: i64, bn: i64) -> Root3Scalar {
        Root3Scalar::from_fractions(an, 1, bn, 1)
    }

    #[test]
    fn conjugate_products() {
        assert_eq!(r3(1, 1) * r3(1, -1), Root3Scalar::from_int(-2));
        assert_eq!(r3(2, -1) * r3(2, 1), Root3Scalar::one());
    }

    #[test]
    fn conjugate_inverse() {
        assert_eq!(r3(2, -1).inverse().unwrap(), r3(2, 1));
        assert_eq!(Root3Scalar::one().checked_div(&r3(2, -1)).unwrap(), r3(2, 1));
    }

    #[test]
    fn dividing_by_zero_is_an_error() {
        assert_eq!(
            Root3Scalar::one().checked_div(&Root3Scalar::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(Root3Scalar::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn signs_of_close_mixed_terms() {
        // 27 > 25 and 49 > 48
        assert_eq!(r3(-5, 3).sign(), Ordering::Greater);
        assert_eq!(r3(7, -4).sign(), Ordering::Greater);
        assert_eq!(r3(5, -3).sign(), Ordering::Less);
        assert_eq!(r3(-7, 4).sign(), Ordering::Less);
        assert_eq!(Root3Scalar::zero().sign(), Ordering::Equal);
        assert_eq!(r3(0, -2).sign(), Ordering::Less);
        assert_eq!(r3(3, 0).sign(), Ordering::Greater);
    }

    #[test]
    fn decimal_examples() {
        let limit = PiScaled::times_pi(Root3Scalar::from_fractions(0, 1, 1, 6));
        assert_eq!(decimal_string(&limit, 4).unwrap(), "0.9069");
        assert_eq!(decimal_string(&limit, 9).unwrap(), "0.906899682");
        let three_eighths = PiScaled::plain(Root3Scalar::from_fractions(3, 8, 0, 1));
        assert_eq!(decimal_string(&three_eighths, 3).unwrap(), "0.375");
        assert_eq!(decimal_string(&three_eighths, 2).unwrap(), "0.38");
        assert_eq!(decimal_root3(&Root3Scalar::sqrt3(), 6).unwrap(), "1.732051");
    }

    #[test]
    fn decimal_negative_and_small() {
        let x = PiScaled::plain(Root3Scalar::from_fractions(-3, 8, 0, 1));
        assert_eq!(decimal_string(&x, 2).unwrap(), "-0.38");
        let tiny = PiScaled::plain(Root3Scalar::from_fractions(1, 1000, 0, 1));
        assert_eq!(decimal_string(&tiny, 2).unwrap(), "0.00");
        assert_eq!(decimal_string(&tiny, 3).unwrap(), "0.001");
        let neg_tiny = PiScaled::plain(Root3Scalar::from_fractions(-1, 1000, 0, 1));
        assert_eq!(decimal_string(&neg_tiny, 2).unwrap(), "0.00");
    }

    #[test]
    fn digit_range_is_checked() {
        let x = PiScaled::plain(Root3Scalar::one());
        assert_eq!(decimal_string(&x, 0), Err(Error::DigitsOutOfRange(0)));
        assert_eq!(decimal_string(&x, 101), Err(Error::DigitsOutOfRange(101)));
        assert!(decimal_string(&x, 100).is_ok());
    }

    #[test]
    fn hundred_digit_pi() {
        let pi = PiScaled::times_pi(Root3Scalar::one());
        let s = decimal_string(&pi, 100).unwrap();
        // digit 101 is 8, so the last place rounds up from 79 to 80
        assert_eq!(&s[2..100], &PI_DIGITS[..98]);
        assert!(s.ends_with("421170680"));
    }

    #[test]
    fn display_forms() {
        assert_eq!(r3(63, -36).to_string(), "63 - 36√3");
        assert_eq!(Root3Scalar::from_fractions(0, 1, 1, 6).to_string(), "√3/6");
        assert_eq!(Root3Scalar::from_fractions(2, 1, 2, 3).to_string(), "2 + 2√3/3");
        assert_eq!(Root3Scalar::from_fractions(3, 8, 0, 1).to_string(), "3/8");
        let lim = PiScaled::times_pi(Root3Scalar::from_fractions(0, 1, 1, 6));
        assert_eq!(lim.to_string(), "π·√3/6");
    }

    #[test]
    fn mixed_pi_exponents_do_not_combine() {
        let a = PiScaled::plain(Root3Scalar::one());
        let b = PiScaled::times_pi(Root3Scalar::one());
        assert_eq!(a.checked_sub(&b), Err(Error::PiExponentMismatch(0, 1)));
        assert_eq!(a.cmp_exact(&b), None);
        assert_eq!(PiScaled::new(2, Root3Scalar::one()), Err(Error::PiExponentOutOfRange(2)));
    }
}
