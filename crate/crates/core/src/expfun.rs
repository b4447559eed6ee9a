//! Exponential polynomials `Σ q_k(ξ)·exp(P_k(ξ) + c_k)` with exact data.
//!
//! Each exponent polynomial is stored without its constant term; the constant
//! `c_k` is kept symbolically. Terms are merged on the pair `(P_k, c_k)`, so
//! the canonical form is unique: by Lindemann–Weierstrass the numbers
//! `exp(c)` for distinct algebraic `c` are linearly independent over the
//! algebraic numbers, and exponentials of distinct polynomials without
//! constant term are independent over polynomials. A canonical exponential
//! polynomial is therefore identically zero exactly when it has no terms.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{horner, Poly};
use crate::scalar::{CRational, ToComplex};

/// Largest real exponent whose exponential is finite in `f64`.
pub const EXP_LIMIT: f64 = 709.0;

#[derive(Clone, PartialEq, Eq)]
pub struct ExpTerm {
    pub coeff: Poly,
    /// Exponent polynomial with zero constant term.
    pub exponent: Poly,
    /// Constant part of the exponent, kept symbolically.
    pub expconst: CRational,
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: Vec<ExpTerm>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(CRational::one())
    }

    pub fn constant(c: CRational) -> Self {
        Self::poly(Poly::constant(c))
    }

    pub fn poly(p: Poly) -> Self {
        Self::term(p, Poly::zero())
    }

    /// `exp(exponent)`
    pub fn exp(exponent: Poly) -> Self {
        Self::term(Poly::one(), exponent)
    }

    /// `coeff · exp(exponent)`; the constant of `exponent` is absorbed.
    pub fn term(coeff: Poly, exponent: Poly) -> Self {
        Self::from_terms(vec![ExpTerm {
            coeff,
            exponent,
            expconst: CRational::zero(),
        }])
    }

    /// The variable `ξ`.
    pub fn xi() -> Self {
        Self::poly(Poly::x())
    }

    /// Canonicalizes an arbitrary term list.
    pub fn from_terms(terms: impl IntoIterator<Item = ExpTerm>) -> Self {
        let mut merged: BTreeMap<(Poly, CRational), Poly> = BTreeMap::new();
        for t in terms {
            if t.coeff.is_zero() {
                continue;
            }
            let c0 = t.exponent.coeff(0);
            let key = (t.exponent.without_constant(), &t.expconst + &c0);
            let entry = merged.entry(key).or_insert_with(Poly::zero);
            *entry = &*entry + &t.coeff;
        }
        ExpPoly {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((exponent, expconst), coeff)| ExpTerm {
                    coeff,
                    exponent,
                    expconst,
                })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Exact identity test; see the module documentation.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term carries a nonconstant exponential factor.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    /// The polynomial itself when the function is a polynomial with
    /// Gaussian-rational coefficients.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.terms.as_slice() {
            [] => Some(Poly::zero()),
            [t] if t.exponent.is_zero() && t.expconst.is_zero() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// A single term with constant coefficient: never vanishes.
    pub fn is_unit(&self) -> bool {
        matches!(self.terms.as_slice(), [t] if t.coeff.is_constant())
    }

    /// Distinct exponent polynomials, in canonical order.
    pub fn exponents(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for t in &self.terms {
            if out.last() != Some(&t.exponent) {
                out.push(t.exponent.clone());
            }
        }
        out
    }

    /// The coefficient of `exp(exponent)`, itself a sum of polynomials
    /// times exponential constants.
    pub fn class_coefficient(&self, exponent: &Poly) -> ExpPoly {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.exponent == *exponent)
                .map(|t| ExpTerm {
                    coeff: t.coeff.clone(),
                    exponent: Poly::zero(),
                    expconst: t.expconst.clone(),
                })
                .collect(),
        }
    }

    pub fn add(&self, o: &ExpPoly) -> ExpPoly {
        Self::from_terms(self.terms.iter().chain(o.terms.iter()).cloned())
    }

    pub fn sub(&self, o: &ExpPoly) -> ExpPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ExpPoly {
        self.scale(&-CRational::one())
    }

    pub fn scale(&self, c: &CRational) -> ExpPoly {
        if c.is_zero() {
            return Self::zero();
        }
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    coeff: t.coeff.scale(c),
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn mul(&self, o: &ExpPoly) -> ExpPoly {
        let mut out = Vec::with_capacity(self.terms.len() * o.terms.len());
        for a in &self.terms {
            for b in &o.terms {
                out.push(ExpTerm {
                    coeff: &a.coeff * &b.coeff,
                    exponent: &a.exponent + &b.exponent,
                    expconst: &a.expconst + &b.expconst,
                });
            }
        }
        Self::from_terms(out)
    }

    pub fn mul_poly(&self, p: &Poly) -> ExpPoly {
        self.mul(&ExpPoly::poly(p.clone()))
    }

    pub fn pow(&self, e: u32) -> ExpPoly {
        let mut acc = ExpPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `(q e^P)' = (q' + q P') e^P`
    pub fn differentiate(&self) -> ExpPoly {
        Self::from_terms(self.terms.iter().map(|t| ExpTerm {
            coeff: &t.coeff.derivative() + &(&t.coeff * &t.exponent.derivative()),
            exponent: t.exponent.clone(),
            expconst: t.expconst.clone(),
        }))
    }

    /// Composition with a polynomial map `ξ ↦ p(ξ)`.
    pub fn compose_poly(&self, p: &Poly) -> ExpPoly {
        Self::from_terms(self.terms.iter().map(|t| ExpTerm {
            coeff: t.coeff.compose(p),
            exponent: t.exponent.compose(p),
            expconst: t.expconst.clone(),
        }))
    }

    pub fn compile(&self) -> CompiledExpPoly {
        CompiledExpPoly::new(self)
    }

    /// Floating-point value at `z`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        self.compile().evaluate(z)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|t| {
                    json!({
                        "coeff": t.coeff.to_json(),
                        "exp": t.exponent.to_json(),
                        "expconst": t.expconst.to_json(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::schema("exponential polynomial must be an array of terms"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for (idx, t) in arr.iter().enumerate() {
            let obj = t
                .as_object()
                .ok_or_else(|| Error::schema(format!("term {idx} must be an object")))?;
            let coeff = Poly::from_json(
                obj.get("coeff")
                    .ok_or_else(|| Error::schema(format!("term {idx} lacks \"coeff\"")))?,
            )?;
            let exponent = match obj.get("exp") {
                Some(e) => Poly::from_json(e)?,
                None => Poly::zero(),
            };
            let expconst = match obj.get("expconst") {
                Some(c) => CRational::from_json(c)?,
                None => CRational::zero(),
            };
            terms.push(ExpTerm {
                coeff,
                exponent,
                expconst,
            });
        }
        Ok(Self::from_terms(terms))
    }

    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut e = t.exponent.clone();
                e = &e + &Poly::constant(t.expconst.clone());
                let c = t.coeff.render(var);
                if e.is_zero() {
                    c
                } else {
                    let c =
                        if t.coeff.coeffs().len() > 1 && t.coeff.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 {
                            format!("({c})")
                        } else {
                            c
                        };
                    if t.coeff == Poly::one() {
                        format!("exp({})", e.render(var))
                    } else {
                        format!("{c}*exp({})", e.render(var))
                    }
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("ξ"))
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("ξ"))
    }
}

struct CTerm {
    coeff: Vec<Complex64>,
    dcoeff: Vec<Complex64>,
    exponent: Vec<Complex64>,
    dexponent: Vec<Complex64>,
    expconst: Complex64,
}

/// Value and derivative at a point, both scaled by `exp(-log_scale)`.
#[derive(Clone, Copy, Debug)]
pub struct Scaled {
    pub value: Complex64,
    pub deriv: Complex64,
    pub log_scale: f64,
    /// Sum of the moduli of the individual scaled terms.
    pub magnitude: f64,
}

impl Scaled {
    pub fn log_abs(&self) -> f64 {
        self.value.norm().ln() + self.log_scale
    }
}

/// Floating-point form of an exponential polynomial for repeated evaluation.
pub struct CompiledExpPoly {
    terms: Vec<CTerm>,
}

impl CompiledExpPoly {
    pub fn new(f: &ExpPoly) -> Self {
        CompiledExpPoly {
            terms: f
                .terms
                .iter()
                .map(|t| CTerm {
                    coeff: t.coeff.to_c64(),
                    dcoeff: t.coeff.derivative().to_c64(),
                    exponent: t.exponent.to_c64(),
                    dexponent: t.exponent.derivative().to_c64(),
                    expconst: t.expconst.to_c64(),
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluation with the dominant real exponent factored out, so large
    /// radii do not overflow.
    pub fn eval_scaled(&self, z: Complex64) -> Scaled {
        if self.terms.is_empty() {
            return Scaled {
                value: Complex64::zero(),
                deriv: Complex64::zero(),
                log_scale: 0.0,
                magnitude: 0.0,
            };
        }
        let exps: Vec<Complex64> = self.terms.iter().map(|t| horner(&t.exponent, z) + t.expconst).collect();
        let m = exps.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
        let mut value = Complex64::zero();
        let mut deriv = Complex64::zero();
        let mut magnitude = 0.0;
        for (t, e) in self.terms.iter().zip(&exps) {
            let w = (e - m).exp();
            let q = horner(&t.coeff, z);
            let term = q * w;
            value += term;
            magnitude += term.norm();
            deriv += (horner(&t.dcoeff, z) + q * horner(&t.dexponent, z)) * w;
        }
        Scaled {
            value,
            deriv,
            log_scale: m,
            magnitude,
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let s = self.eval_scaled(z);
        if s.value == Complex64::zero() {
            return Ok(s.value);
        }
        if s.log_scale + s.value.norm().ln() > EXP_LIMIT {
            return Err(Error::Overflow(format!(
                "|f({z})| ≈ exp({:.3}) exceeds the floating range",
                s.log_scale + s.value.norm().ln()
            )));
        }
        Ok(s.value * s.log_scale.exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::x()
    }

    #[test]
    fn exponent_constants_are_absorbed() {
        // exp(ξ + 1) and exp(1)·exp(ξ) coincide
        let a = ExpPoly::exp(Poly::from_ints(&[1, 1]));
        let b = ExpPoly::from_terms(vec![ExpTerm {
            coeff: Poly::one(),
            exponent: x(),
            expconst: CRational::int(1),
        }]);
        assert!(a.sub(&b).is_zero());
        assert_eq!(a.terms()[0].expconst, CRational::int(1));
    }

    #[test]
    fn distinct_exponent_constants_do_not_cancel() {
        let a = ExpPoly::exp(Poly::from_ints(&[1, 1]));
        let b = ExpPoly::exp(Poly::from_ints(&[2, 1]));
        assert!(!a.sub(&b).is_zero());
        assert_eq!(a.sub(&b).num_terms(), 2);
    }

    #[test]
    fn product_adds_exponents() {
        let f = ExpPoly::exp(x()).mul(&ExpPoly::exp(x().pow(2)));
        assert_eq!(f, ExpPoly::exp(Poly::from_ints(&[0, 1, 1])));
    }

    #[test]
    fn derivative_chain_rule() {
        let f = ExpPoly::exp(x().pow(2));
        assert_eq!(f.differentiate(), ExpPoly::term(Poly::from_ints(&[0, 2]), x().pow(2)));
        assert!(ExpPoly::constant(CRational::int(5)).differentiate().is_zero());
    }

    #[test]
    fn scaled_evaluation_survives_large_exponents() {
        let f = ExpPoly::exp(x().pow(2)).add(&ExpPoly::one());
        let s = f.compile().eval_scaled(Complex64::new(40.0, 0.0));
        assert!((s.log_abs() - 1600.0).abs() < 1e-9);
        assert!(matches!(f.evaluate(Complex64::new(40.0, 0.0)), Err(Error::Overflow(_))));
    }

    #[test]
    fn json_roundtrip() {
        let f = ExpPoly::term(Poly::from_ints(&[1, 0, 3]), Poly::from_ints(&[2, 1])).add(&ExpPoly::xi());
        let back = ExpPoly::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rendering() {
        let f = ExpPoly::term(Poly::from_ints(&[0, 2]), x().pow(2));
        assert_eq!(f.render("ξ"), "2*ξ*exp(ξ^2)");
        assert_eq!(ExpPoly::zero().render("ξ"), "0");
    }
}
