//! Exact scalar fields: rationals, Gaussian rationals, and the trait the
//! polynomial code is generic over.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// A commutative field with exact equality.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Numeric approximation of an exact scalar.
pub trait ToComplex {
    fn to_c64(&self) -> Complex64;
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl ToComplex for BigRational {
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(self), 0.0)
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Very large numerator or denominator: scale by bit length.
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    let (nn, dd) = if shift > 0 {
        (n.clone(), d.clone() << (shift as usize))
    } else {
        (n.clone() << ((-shift) as usize), d.clone())
    };
    let m = BigRational::new(nn, dd).to_f64().unwrap_or(0.0);
    m * 2f64.powi(shift as i32)
}

/// Best rational approximation with bounded denominator (continued fractions).
pub fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (0, 1, 1, 0);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e15 {
            break;
        }
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(sign as i128 * p1), BigInt::from(q1)))
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        CRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::real(rat_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    pub fn gauss(re: i64, im: i64) -> Self {
        CRational::new(rat_int(re), rat_int(im))
    }

    pub fn i() -> Self {
        CRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CRational::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Nearest Gaussian rational to a float with bounded denominators.
    pub fn rationalize(z: Complex64, max_den: i64) -> Option<Self> {
        Some(CRational::new(rationalize(z.re, max_den)?, rationalize(z.im, max_den)?))
    }

    /// `[re_num, re_den, im_num, im_den]`
    pub fn to_json(&self) -> Value {
        Value::Array(vec![
            bigint_json(self.re.numer()),
            bigint_json(self.re.denom()),
            bigint_json(self.im.numer()),
            bigint_json(self.im.denom()),
        ])
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::schema("complex scalar must be an array"))?;
        match arr.len() {
            // Shorthand forms: [num, den] (real) and [re_num, re_den, im_num, im_den].
            2 => Ok(CRational::real(rational_from_pair(&arr[0], &arr[1])?)),
            4 => Ok(CRational::new(
                rational_from_pair(&arr[0], &arr[1])?,
                rational_from_pair(&arr[2], &arr[3])?,
            )),
            _ => Err(Error::schema("complex scalar must be [re_num,re_den,im_num,im_den]")),
        }
    }
}

impl fmt::Debug for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "({}-{}i)", self.re, -self.im.clone())
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}

impl PartialOrd for CRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl Zero for CRational {
    fn zero() -> Self {
        CRational::default_zero()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl CRational {
    fn default_zero() -> Self {
        CRational::new(BigRational::zero(), BigRational::zero())
    }
}

impl One for CRational {
    fn one() -> Self {
        CRational::real(BigRational::one())
    }
}

impl Neg for CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re, -self.im)
    }
}

impl Add for CRational {
    type Output = CRational;
    fn add(self, o: CRational) -> CRational {
        CRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for CRational {
    type Output = CRational;
    fn sub(self, o: CRational) -> CRational {
        CRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for CRational {
    type Output = CRational;
    fn mul(self, o: CRational) -> CRational {
        CRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Div for CRational {
    type Output = CRational;
    fn div(self, o: CRational) -> CRational {
        let n = o.norm_sqr();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        let num = self * o.conj();
        CRational::new(num.re / &n, num.im / n)
    }
}

impl<'a> Add<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn add(self, o: &CRational) -> CRational {
        CRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn sub(self, o: &CRational) -> CRational {
        CRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn mul(self, o: &CRational) -> CRational {
        CRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Field for CRational {
    fn from_i64(n: i64) -> Self {
        CRational::int(n)
    }
}

impl ToComplex for CRational {
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl From<BigRational> for CRational {
    fn from(q: BigRational) -> Self {
        CRational::real(q)
    }
}

/// JSON number when it fits in an `i64`, decimal string otherwise.
pub fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::schema("expected an integer")),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| Error::schema(format!("invalid integer string {s:?}"))),
        _ => Err(Error::schema("expected an integer")),
    }
}

pub fn rational_from_pair(n: &Value, d: &Value) -> Result<BigRational> {
    let num = bigint_from_json(n)?;
    let den = bigint_from_json(d)?;
    if den.is_zero() {
        return Err(Error::schema("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// `[num, den]`
pub fn rational_json(q: &BigRational) -> Value {
    Value::Array(vec![bigint_json(q.numer()), bigint_json(q.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Array(a) if a.len() == 2 => rational_from_pair(&a[0], &a[1]),
        Value::Number(_) | Value::String(_) => Ok(BigRational::from_integer(bigint_from_json(v)?)),
        _ => Err(Error::schema("rational must be [num, den]")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_division_roundtrip() {
        let a = CRational::new(rat(3, 2), rat(-1, 5));
        let b = CRational::gauss(2, 7);
        assert_eq!((a.clone() / b.clone()) * b, a);
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(0.5, 1000), Some(rat(1, 2)));
        assert_eq!(rationalize(-2.0 / 3.0, 1000), Some(rat(-2, 3)));
        assert_eq!(rationalize(3.0, 10), Some(rat_int(3)));
    }

    #[test]
    fn json_roundtrip_handles_big_values() {
        let big = BigInt::from(10).pow(30);
        let q = CRational::new(BigRational::from_integer(big), rat(-1, 3));
        assert_eq!(CRational::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn huge_rational_to_f64() {
        let q = BigRational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((rat_to_f64(&q) - 10.0).abs() < 1e-9);
    }
}
