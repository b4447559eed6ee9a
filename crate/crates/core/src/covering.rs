//! Symmetric differential forms on the cyclic branched cover
//! `(z₁, z₂) ↦ (z₁^b, z₂)`: deck pullbacks, the norm form, push-down to the
//! base and evaluation along exponential curves.

use std::fmt;

use num_traits::One;
use serde_json::{json, Value};

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::expfun::ExpPoly;
use crate::mpoly::MPoly;
use crate::scalar::{CRational, Field};

pub type CPoly = MPoly<Cyclo>;

/// Reduced bivariate rational function with monic denominator.
#[derive(Clone, PartialEq)]
pub struct RatFn {
    num: CPoly,
    den: CPoly,
}

impl RatFn {
    pub fn new(num: CPoly, den: CPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let lc = den.leading_term().map(|(_, c)| c.inv()).unwrap();
        Ok(RatFn {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn poly(p: CPoly) -> Self {
        RatFn {
            num: p,
            den: CPoly::one(2),
        }
    }

    pub fn zero() -> Self {
        Self::poly(CPoly::zero(2))
    }

    pub fn one() -> Self {
        Self::poly(CPoly::one(2))
    }

    pub fn num(&self) -> &CPoly {
        &self.num
    }

    pub fn den(&self) -> &CPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone()).expect("nonzero denominator");
        }
        RatFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn scale(&self, c: &Cyclo) -> RatFn {
        RatFn::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// Multiplies by the monomial `z₁^e` (negative `e` divides).
    pub fn mul_z1_power(&self, e: i64) -> RatFn {
        let m = [e.unsigned_abs() as u32, 0];
        if e >= 0 {
            RatFn::new(self.num.mul_monomial(&m), self.den.clone())
        } else {
            RatFn::new(self.num.clone(), self.den.mul_monomial(&m))
        }
        .expect("nonzero denominator")
    }

    /// Substitutes `z₁ → c·z₁`.
    pub fn rotate_z1(&self, c: &Cyclo) -> RatFn {
        let rot = |p: &CPoly| CPoly::from_terms(2, p.terms().map(|(e, a)| (e.clone(), a.clone() * pow(c, e[0]))));
        RatFn::new(rot(&self.num), rot(&self.den)).expect("rotation keeps denominator nonzero")
    }

    fn to_json(&self) -> Value {
        json!({"num": poly_json(&self.num), "den": poly_json(&self.den)})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let num = poly_from_json(v.get("num").ok_or_else(|| Error::schema("coefficient lacks \"num\""))?)?;
        let den = match v.get("den") {
            Some(d) => poly_from_json(d)?,
            None => CPoly::one(2),
        };
        if den.is_zero() {
            return Err(Error::schema("denominator is the zero polynomial"));
        }
        RatFn::new(num, den)
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

fn pow(c: &Cyclo, e: u32) -> Cyclo {
    let mut out = Cyclo::one();
    for _ in 0..e {
        out = out * c.clone();
    }
    out
}

fn poly_json(p: &CPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| json!({"exponents": e, "coeff": c.to_json()}))
            .collect(),
    )
}

fn poly_from_json(v: &Value) -> Result<CPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::schema("polynomial must be an array of monomials"))?;
    let mut p = CPoly::zero(2);
    for t in arr {
        let e: Vec<u32> = t
            .get("exponents")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .and_then(|a| {
                a.iter()
                    .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()))
                    .collect()
            })
            .ok_or_else(|| Error::schema("monomial needs two nonnegative \"exponents\""))?;
        let c = Cyclo::from_json(
            t.get("coeff")
                .ok_or_else(|| Error::schema("monomial lacks \"coeff\""))?,
        )?;
        p.add_term(e, c);
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `(dz₁)^i (dz₂)^{M−i}`
    Plain,
    /// `(dz₁/z₁)^i (dz₂)^{M−i}`
    Log1,
}

/// A symmetric `M`-form `Σ_i c_i · e₁^i (dz₂)^{M−i}` with `e₁ = dz₁` or
/// `dz₁/z₁` depending on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SymForm {
    pub m: u32,
    pub basis: Basis,
    coeffs: Vec<RatFn>,
}

impl SymForm {
    pub fn new(m: u32, basis: Basis, coeffs: Vec<RatFn>) -> Result<Self> {
        if coeffs.len() != m as usize + 1 {
            return Err(Error::invalid(format!(
                "a symmetric {m}-form needs {} coefficients, got {}",
                m + 1,
                coeffs.len()
            )));
        }
        Ok(SymForm { m, basis, coeffs })
    }

    /// `c · z₁^a z₂^c · e₁^i (dz₂)^{M−i}`
    pub fn monomial(m: u32, basis: Basis, i: u32, coeff: CPoly) -> Result<Self> {
        if i > m {
            return Err(Error::invalid("index exceeds the degree"));
        }
        let mut coeffs = vec![RatFn::zero(); m as usize + 1];
        coeffs[i as usize] = RatFn::poly(coeff);
        Self::new(m, basis, coeffs)
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFn::is_zero)
    }

    /// Symmetric product, i.e. the product of polynomials in `e₁` and `dz₂`.
    pub fn symmetric_product(&self, o: &SymForm) -> Result<SymForm> {
        if self.basis != o.basis {
            return Err(Error::invalid("symmetric product of forms in different bases"));
        }
        let mut coeffs = vec![RatFn::zero(); (self.m + o.m) as usize + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        SymForm::new(self.m + o.m, self.basis, coeffs)
    }

    pub fn scale(&self, c: &Cyclo) -> SymForm {
        SymForm {
            m: self.m,
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|r| r.scale(c)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "M": self.m,
            "basis": match self.basis { Basis::Plain => "plain", Basis::Log1 => "log1" },
            "coeffs": self.coeffs.iter().map(RatFn::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let m = v
            .get("M")
            .and_then(Value::as_u64)
            .and_then(|m| u32::try_from(m).ok())
            .ok_or_else(|| Error::schema("\"M\" must be a nonnegative integer"))?;
        let basis = match v.get("basis").and_then(Value::as_str).unwrap_or("plain") {
            "plain" => Basis::Plain,
            "log1" => Basis::Log1,
            other => return Err(Error::schema(format!("unknown basis \"{other}\""))),
        };
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::schema("missing \"coeffs\" array"))?
            .iter()
            .map(RatFn::from_json)
            .collect::<Result<Vec<_>>>()?;
        SymForm::new(m, basis, coeffs).map_err(|e| Error::schema(e.to_string()))
    }

    /// Human-readable rendering with coordinate names `names[0], names[1]`.
    pub fn render(&self, names: [&str; 2]) -> String {
        let e1 = match self.basis {
            Basis::Plain => format!("d{}", names[0]),
            Basis::Log1 => format!("d{0}/{0}", names[0]),
        };
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.den.is_constant() {
                format!("({})", c.num.render(&names))
            } else {
                format!("({})/({})", c.num.render(&names), c.den.render(&names))
            };
            let j = self.m as usize - i;
            let mut s = coef;
            if i > 0 {
                s.push_str(&format!("·({e1})^{i}"));
            }
            if j > 0 {
                s.push_str(&format!("·(d{})^{j}", names[1]));
            }
            parts.push(s);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicCover {
    pub b: u32,
}

impl CyclicCover {
    pub fn new(b: u32) -> Result<Self> {
        if b == 0 {
            return Err(Error::invalid("branching order must be at least 1"));
        }
        Ok(CyclicCover { b })
    }
}

/// Pullback under the deck transformation `(z₁, z₂) ↦ (ζ^k z₁, z₂)`,
/// `ζ = e^{2πi/b}`.
pub fn deck_pullback(form: &SymForm, k: u32, cover: CyclicCover) -> Result<SymForm> {
    if k >= cover.b {
        return Err(Error::invalid(format!("deck index {k} must be below b = {}", cover.b)));
    }
    let zeta = Cyclo::root_of_unity(cover.b, k as i64);
    let coeffs = form
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let r = c.rotate_z1(&zeta);
            match form.basis {
                Basis::Plain => r.scale(&pow(&zeta, i as u32)),
                Basis::Log1 => r,
            }
        })
        .collect();
    SymForm::new(form.m, form.basis, coeffs)
}

/// Symmetric product of all deck pullbacks of `form`.
pub fn norm_form(form: &SymForm, cover: CyclicCover) -> Result<SymForm> {
    let mut out = form.clone();
    for k in 1..cover.b {
        out = out.symmetric_product(&deck_pullback(form, k, cover)?)?;
    }
    Ok(out)
}

/// Rewrites a plain-basis form on `(dz₁/z₁)^i (dz₂)^{M−i}`: `r_i = z₁^i·c_i`.
pub fn express_log_basis(form: &SymForm) -> SymForm {
    match form.basis {
        Basis::Log1 => form.clone(),
        Basis::Plain => SymForm {
            m: form.m,
            basis: Basis::Log1,
            coeffs: form
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.mul_z1_power(i as i64))
                .collect(),
        },
    }
}

/// Inverse of [`express_log_basis`].
pub fn express_plain_basis(form: &SymForm) -> SymForm {
    match form.basis {
        Basis::Plain => form.clone(),
        Basis::Log1 => SymForm {
            m: form.m,
            basis: Basis::Plain,
            coeffs: form
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.mul_z1_power(-(i as i64)))
                .collect(),
        },
    }
}

fn describe_monomial(e: &[u32]) -> String {
    format!("z1^{}·z2^{}", e[0], e[1])
}

/// Descends a deck-invariant form to the base coordinates
/// `(ξ₁, ξ₂) = (z₁^b, z₂)`; the result is in the plain basis in `ξ`.
pub fn push_down(form: &SymForm, cover: CyclicCover) -> Result<SymForm> {
    let b = cover.b;
    let log = express_log_basis(form);
    let mut coeffs = Vec::with_capacity(log.coeffs.len());
    for (i, r) in log.coeffs.iter().enumerate() {
        // A reduced fraction with monic denominator is invariant exactly when
        // every z₁-exponent is divisible by b.
        let descend = |p: &CPoly| -> Result<CPoly> {
            let mut out = CPoly::zero(2);
            for (e, c) in p.terms() {
                if e[0] % b != 0 {
                    return Err(Error::NotInvariant(format!(
                        "{} in coefficient {i} is not invariant under z1 -> ζ·z1 (ζ of order {b})",
                        describe_monomial(e)
                    )));
                }
                out.add_term(vec![e[0] / b, e[1]], c.clone());
            }
            Ok(out)
        };
        let scale = Cyclo::rational(num_rational::BigRational::new(
            1.into(),
            num_bigint::BigInt::from(b).pow(i as u32),
        ));
        coeffs.push(RatFn::new(descend(&r.num)?, descend(&r.den)?)?.scale(&scale));
    }
    Ok(express_plain_basis(&SymForm::new(form.m, Basis::Log1, coeffs)?))
}

/// Pulls a plain-basis form in `ξ` back along `ξ₁ = z₁^b`,
/// `dξ₁ = b·z₁^{b−1} dz₁`.
pub fn pull_back(form: &SymForm, cover: CyclicCover) -> Result<SymForm> {
    let b = cover.b;
    let plain = express_plain_basis(form);
    let lift = |p: &CPoly| CPoly::from_terms(2, p.terms().map(|(e, c)| (vec![e[0] * b, e[1]], c.clone())));
    let jac = RatFn::poly(CPoly::term(
        2,
        vec![b - 1, 0],
        Cyclo::from_gaussian(&CRational::int(b as i64)),
    ));
    let mut coeffs = Vec::with_capacity(plain.coeffs.len());
    for (i, c) in plain.coeffs.iter().enumerate() {
        let mut r = RatFn::new(lift(&c.num), lift(&c.den))?;
        for _ in 0..i {
            r = r.mul(&jac);
        }
        coeffs.push(r);
    }
    SymForm::new(form.m, Basis::Plain, coeffs)
}

fn to_gaussian(p: &CPoly) -> Result<MPoly<CRational>> {
    let mut out = MPoly::zero(2);
    for (e, c) in p.terms() {
        let g = c.as_gaussian().ok_or_else(|| {
            Error::invalid(format!(
                "coefficient {c} is not in Q(i); cannot evaluate along the curve"
            ))
        })?;
        out.add_term(e.clone(), g);
    }
    Ok(out)
}

fn eval_along(p: &MPoly<CRational>, g1: &ExpPoly, g2: &ExpPoly) -> ExpPoly {
    p.terms().fold(ExpPoly::zero(), |acc, (e, c)| {
        acc.add(&g1.pow(e[0]).mul(&g2.pow(e[1])).scale(c))
    })
}

/// The form evaluated along `η ↦ (g₁(η), g₂(η))`, denominators cleared,
/// as one exponential polynomial times `(dη)^M`.
pub fn evaluate_along(form: &SymForm, g1: &ExpPoly, g2: &ExpPoly) -> Result<ExpPoly> {
    if g1.is_zero() || g2.is_zero() {
        return Err(Error::precondition("curve components must not vanish identically"));
    }
    let plain = express_plain_basis(form);
    let mut common = CPoly::one(2);
    for c in &plain.coeffs {
        if c.is_zero() {
            continue;
        }
        let den = to_gaussian(&c.den)?;
        if eval_along(&den, g1, g2).is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        let g = common.gcd(&c.den);
        common = &common * &c.den.exact_div(&g).expect("gcd divides");
    }
    let d1 = g1.differentiate();
    let d2 = g2.differentiate();
    let m = plain.m;
    let mut total = ExpPoly::zero();
    for (i, c) in plain.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cleared = &c.num * &common.exact_div(&c.den).expect("common multiple");
        let p = to_gaussian(&cleared)?;
        let diff = d1.pow(i as u32).mul(&d2.pow(m - i as u32));
        total = total.add(&eval_along(&p, g1, g2).mul(&diff));
    }
    Ok(total)
}

/// Whether the form vanishes identically along `(g₁, g₂)`.
pub fn annihilation_check(form: &SymForm, g1: &ExpPoly, g2: &ExpPoly) -> Result<bool> {
    Ok(evaluate_along(form, g1, g2)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn c(n: i64) -> Cyclo {
        Cyclo::from_gaussian(&CRational::int(n))
    }

    fn mono(a: u32, b: u32, k: i64) -> CPoly {
        CPoly::term(2, vec![a, b], c(k))
    }

    #[test]
    fn deck_pullback_examples() {
        let cover = CyclicCover::new(2).unwrap();
        let f = SymForm::monomial(2, Basis::Plain, 1, mono(0, 0, 1)).unwrap();
        assert_eq!(deck_pullback(&f, 1, cover).unwrap(), f.scale(&c(-1)));
        let g = SymForm::monomial(2, Basis::Plain, 2, mono(1, 0, 1)).unwrap();
        assert_eq!(deck_pullback(&g, 1, cover).unwrap(), g.scale(&c(-1)));
        assert_eq!(deck_pullback(&g, 0, cover).unwrap(), g);
    }

    #[test]
    fn push_down_of_norm() {
        let cover = CyclicCover::new(2).unwrap();
        let f = SymForm::monomial(2, Basis::Plain, 1, mono(0, 0, 1)).unwrap();
        let n = norm_form(&f, cover).unwrap();
        assert_eq!(n, SymForm::monomial(4, Basis::Plain, 2, mono(0, 0, -1)).unwrap());
        let down = push_down(&n, cover).unwrap();
        let quarter = Cyclo::from_gaussian(&CRational::ratio(-1, 4));
        let expected = RatFn::new(CPoly::constant(2, quarter), mono(1, 0, 1)).unwrap();
        assert_eq!(down.coeffs()[2], expected);
        assert!(down.coeffs().iter().enumerate().all(|(i, r)| i == 2 || r.is_zero()));
        assert_eq!(pull_back(&down, cover).unwrap(), n);
    }

    #[test]
    fn non_invariant_rejected() {
        let cover = CyclicCover::new(2).unwrap();
        let f = SymForm::monomial(2, Basis::Plain, 0, mono(1, 0, 1)).unwrap();
        assert!(matches!(push_down(&f, cover), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn annihilation_examples() {
        let e = ExpPoly::exp(Poly::x());
        let em = ExpPoly::exp(Poly::from_ints(&[0, -1]));
        let w = SymForm::new(
            1,
            Basis::Plain,
            vec![RatFn::poly(mono(1, 0, -1)), RatFn::poly(mono(0, 1, 1))],
        )
        .unwrap();
        assert!(annihilation_check(&w, &e, &e).unwrap());
        let d = SymForm::monomial(1, Basis::Plain, 1, mono(0, 0, 1)).unwrap();
        assert!(!annihilation_check(&d, &e, &e).unwrap());
        let p = SymForm::monomial(2, Basis::Plain, 1, mono(1, 1, 2)).unwrap();
        let v = evaluate_along(&p, &e, &em).unwrap();
        assert_eq!(v, ExpPoly::constant(CRational::int(-2)));
    }

    #[test]
    fn json_round_trip() {
        let cover = CyclicCover::new(3).unwrap();
        let f = SymForm::new(
            1,
            Basis::Plain,
            vec![RatFn::poly(mono(1, 1, 1)), RatFn::poly(mono(0, 0, 1))],
        )
        .unwrap();
        let n = norm_form(&f, cover).unwrap();
        assert_eq!(SymForm::from_json(&n.to_json()).unwrap(), n);
    }
}
