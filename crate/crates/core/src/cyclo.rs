//! Elements of cyclotomic fields Q(ζ_n), with mixed orders lifted to a common
//! field on demand.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::UPoly;
use crate::scalar::{rat_to_f64, rational_from_json, rational_json, CRational, Field, ToComplex};

type QPoly = UPoly<BigRational>;

/// The n-th cyclotomic polynomial over Q.
pub fn cyclotomic(n: u32) -> QPoly {
    static CACHE: OnceLock<Mutex<HashMap<u32, QPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = compute_cyclotomic(n);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn compute_cyclotomic(n: u32) -> QPoly {
    assert!(n >= 1);
    let mut p = QPoly::monomial(BigRational::one(), n as usize);
    p = &p - &QPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.exact_div(&cyclotomic(d)).expect("cyclotomic divisibility");
        }
    }
    p
}

/// `value` is a polynomial in ζ_order reduced modulo Φ_order.
#[derive(Clone)]
pub struct Cyclo {
    order: u32,
    value: QPoly,
}

impl Cyclo {
    pub fn rational(q: BigRational) -> Self {
        Cyclo {
            order: 1,
            value: QPoly::constant(q),
        }
    }

    /// ζ_n^k
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        Cyclo::from_poly(n, QPoly::monomial(BigRational::one(), e))
    }

    fn from_poly(order: u32, p: QPoly) -> Self {
        let (_, r) = p.div_rem(&cyclotomic(order));
        Cyclo { order, value: r }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn lift(&self, n: u32) -> QPoly {
        if n == self.order {
            return self.value.clone();
        }
        debug_assert!(n.is_multiple_of(self.order));
        let step = (n / self.order) as usize;
        let mut c = vec![BigRational::zero(); self.value.coeffs().len().saturating_sub(1) * step + 1];
        for (k, a) in self.value.coeffs().iter().enumerate() {
            c[k * step] = a.clone();
        }
        UPoly::new(c).div_rem(&cyclotomic(n)).1
    }

    fn common(&self, o: &Cyclo) -> (u32, QPoly, QPoly) {
        let n = self.order.lcm(&o.order);
        (n, self.lift(n), o.lift(n))
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.value.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.value.coeff(0)),
            _ => None,
        }
    }

    /// The Gaussian-rational value, when the element lies in Q(i).
    pub fn as_gaussian(&self) -> Option<CRational> {
        if let Some(q) = self.as_rational() {
            return Some(CRational::real(q));
        }
        if !self.order.is_multiple_of(4) {
            return None;
        }
        // i = ζ_n^{n/4}; test membership by comparing against re + im·i.
        let z = self.to_c64();
        let re = crate::scalar::rationalize(z.re, 1 << 40)?;
        let im = crate::scalar::rationalize(z.im, 1 << 40)?;
        let cand = Cyclo::rational(re.clone()) + Cyclo::rational(im.clone()) * Cyclo::root_of_unity(4, 1);
        if cand == *self {
            Some(CRational::new(re, im))
        } else {
            None
        }
    }

    pub fn from_gaussian(c: &CRational) -> Self {
        if c.im.is_zero() {
            Cyclo::rational(c.re.clone())
        } else {
            Cyclo::rational(c.re.clone()) + Cyclo::rational(c.im.clone()) * Cyclo::root_of_unity(4, 1)
        }
    }

    pub fn to_json(&self) -> Value {
        match self.as_gaussian() {
            Some(g) => g.to_json(),
            None => json!({
                "cyclo": self.order,
                "coeffs": self.value.coeffs().iter().map(rational_json).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(obj) = v.as_object() {
            let n = obj
                .get("cyclo")
                .and_then(Value::as_u64)
                .filter(|&n| (1..=1 << 16).contains(&n))
                .ok_or_else(|| Error::schema("cyclotomic scalar needs a positive \"cyclo\" order"))?;
            let cs = obj
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::schema("cyclotomic scalar needs \"coeffs\""))?;
            let coeffs = cs.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?;
            return Ok(Cyclo::from_poly(n as u32, UPoly::new(coeffs)));
        }
        Ok(Cyclo::from_gaussian(&CRational::from_json(v)?))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Cyclo) -> bool {
        let (_, a, b) = self.common(o);
        a == b
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::rational(BigRational::one())
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            order: self.order,
            value: -&self.value,
        }
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, o: Cyclo) -> Cyclo {
        let (n, a, b) = self.common(&o);
        Cyclo {
            order: n,
            value: &a + &b,
        }
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: Cyclo) -> Cyclo {
        let (n, a, b) = self.common(&o);
        Cyclo {
            order: n,
            value: &a - &b,
        }
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, o: Cyclo) -> Cyclo {
        let (n, a, b) = self.common(&o);
        Cyclo::from_poly(n, &a * &b)
    }
}

impl Div for Cyclo {
    type Output = Cyclo;
    fn div(self, o: Cyclo) -> Cyclo {
        self * o.inv()
    }
}

impl Field for Cyclo {
    fn from_i64(n: i64) -> Self {
        Cyclo::rational(BigRational::from_i64(n))
    }

    /// Extended Euclid against the (irreducible) cyclotomic modulus.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero cyclotomic element");
        let m = cyclotomic(self.order);
        let (mut r0, mut r1) = (m, self.value.clone());
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant.
        let c = r0.coeff(0).inv();
        Cyclo::from_poly(self.order, s0.scale(&c))
    }
}

impl ToComplex for Cyclo {
    fn to_c64(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.order as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for a in self.value.coeffs().iter().rev() {
            acc = acc * z + rat_to_f64(a);
        }
        acc
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = self.as_gaussian() {
            return write!(f, "{g}");
        }
        write!(f, "({})", self.value.render(&format!("ζ{}", self.order)))
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
