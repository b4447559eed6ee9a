//! Dense univariate polynomials over an exact field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::scalar::{CRational, Field, ToComplex};

/// Coefficients in ascending degree order; the zero polynomial has no
/// coefficients and no stored coefficient list ends in zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<F> {
    coeffs: Vec<F>,
}

/// Polynomial with Gaussian-rational coefficients.
pub type Poly = UPoly<CRational>;

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Drops the constant term.
    pub fn without_constant(&self) -> Self {
        let mut v = self.coeffs.clone();
        if let Some(c) = v.first_mut() {
            *c = F::zero();
        }
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = rem[idx].clone() - c.clone() * dc.clone();
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            // Monic remainders keep coefficient growth in check.
            b = if r.is_zero() { r } else { r.monic() };
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `self = lc · Π f_k^k`, each `f_k`
    /// monic, square-free and pairwise coprime. Returns `(f_k, k)` for the
    /// non-constant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides derivative");
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field + ToComplex> UPoly<F> {
    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_c64()).collect()
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        horner(&self.to_c64(), z)
    }
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

impl<F: Field> Add for &UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<F: Field> Sub for &UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<F: Field> Mul for &UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, o: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(v)
    }
}

impl<F: Field> Neg for &UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Field + Ord> PartialOrd for UPoly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field + Ord> Ord for UPoly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<F: Field + fmt::Display> UPoly<F> {
    /// Human-readable rendering in the given variable name.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let cs = format!("{c}");
            parts.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        parts.join(" + ")
    }
}

impl<F: Field + fmt::Display> fmt::Debug for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl Poly {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| c.to_json()).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> crate::Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| crate::Error::schema("polynomial must be an array of coefficients"))?;
        Ok(Poly::new(
            arr.iter()
                .map(CRational::from_json)
                .collect::<crate::Result<Vec<_>>>()?,
        ))
    }

    /// Polynomial with small integer coefficients, ascending order.
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&k| CRational::int(k)).collect())
    }
}
