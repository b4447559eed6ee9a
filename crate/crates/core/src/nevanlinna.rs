//! Nevanlinna functionals of entire curves whose components are exponential
//! polynomials: characteristic function, counting function, growth order,
//! and numerical checks of the First and Second Main Theorems.
//!
//! All radii are measured from `R0 = 1`. The characteristic function is the
//! circle mean of `log‖f‖` (the constant normalization is dropped), and the
//! counting function integrates the zero count `n(t)` from `R0`.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expfun::{CompiledExpPoly, ExpPoly, Scaled};
use crate::mpoly::MPoly;
use crate::quad::periodic_mean;
use crate::scalar::{CRational, ToComplex};

pub const R0: f64 = 1.0;
pub const DEFAULT_TOL: f64 = 1e-8;
/// Relative width to which radii of zeros are localized.
pub const DEFAULT_JUMP_TOL: f64 = 1e-4;

/// An entire curve `[f_0 : … : f_n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjCurve {
    pub components: Vec<ExpPoly>,
}

impl ProjCurve {
    pub fn new(components: Vec<ExpPoly>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::invalid("a curve needs at least two components"));
        }
        if components.iter().all(ExpPoly::is_zero) {
            return Err(Error::invalid("all components vanish identically"));
        }
        Ok(ProjCurve { components })
    }

    /// Dimension `n` of the target projective space.
    pub fn dim(&self) -> usize {
        self.components.len() - 1
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.components.iter().map(ExpPoly::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::schema("curve must be an array of components"))?;
        Self::new(arr.iter().map(ExpPoly::from_json).collect::<Result<Vec<_>>>()?)
    }
}

/// Divisor `{P = 0}` of a homogeneous polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct HomDivisor {
    pub poly: MPoly<CRational>,
    pub degree: u32,
}

impl HomDivisor {
    pub fn new(poly: MPoly<CRational>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::invalid("divisor polynomial is zero"));
        }
        if !poly.is_homogeneous() {
            return Err(Error::invalid("divisor polynomial is not homogeneous"));
        }
        let degree = poly.total_degree().unwrap_or(0);
        if degree == 0 {
            return Err(Error::invalid("divisor polynomial must have positive degree"));
        }
        Ok(HomDivisor { poly, degree })
    }

    /// The hyperplane `Σ c_i z_i = 0`.
    pub fn linear(coeffs: &[CRational]) -> Result<Self> {
        let n = coeffs.len();
        let mut p = MPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        Self::new(p)
    }

    /// Coefficient vector of a hyperplane.
    pub fn linear_coeffs(&self) -> Option<Vec<CRational>> {
        if self.degree != 1 {
            return None;
        }
        let n = self.poly.nvars();
        Some(
            (0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    self.poly.coeff(&e)
                })
                .collect(),
        )
    }

    /// Coefficient norm for which `|P(z)| ≤ ‖P‖·‖z‖^d` with the Euclidean
    /// norm on `z`: ℓ² for hyperplanes (Cauchy–Schwarz), ℓ¹ otherwise.
    pub fn coefficient_norm(&self) -> f64 {
        let mods = self.poly.terms().map(|(_, c)| c.to_c64().norm());
        if self.degree == 1 {
            mods.map(|m| m * m).sum::<f64>().sqrt()
        } else {
            mods.sum()
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.poly
                .terms()
                .map(|(e, c)| json!({"exponents": e, "coeff": c.to_json()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::schema("divisor must be an array of monomials"))?;
        let mut nvars = None;
        let mut terms = Vec::new();
        for m in arr {
            let e: Vec<u32> = m
                .get("exponents")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::schema("monomial lacks \"exponents\""))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|k| k as u32)
                        .ok_or_else(|| Error::schema("exponent must be a nonnegative integer"))
                })
                .collect::<Result<_>>()?;
            if *nvars.get_or_insert(e.len()) != e.len() {
                return Err(Error::schema("monomials have differing numbers of variables"));
            }
            let c = CRational::from_json(
                m.get("coeff")
                    .ok_or_else(|| Error::schema("monomial lacks \"coeff\""))?,
            )?;
            terms.push((e, c));
        }
        let n = nvars.ok_or_else(|| Error::schema("divisor has no monomials"))?;
        Self::new(MPoly::from_terms(n, terms))
    }
}

/// `P ∘ f` as an exponential polynomial.
pub fn compose_divisor(d: &HomDivisor, f: &ProjCurve) -> Result<ExpPoly> {
    if d.poly.nvars() != f.components.len() {
        return Err(Error::invalid(format!(
            "divisor has {} variables but the curve has {} components",
            d.poly.nvars(),
            f.components.len()
        )));
    }
    let mut powers: Vec<Vec<ExpPoly>> = f.components.iter().map(|c| vec![ExpPoly::one(), c.clone()]).collect();
    let mut out = ExpPoly::zero();
    for (e, c) in d.poly.terms() {
        let mut t = ExpPoly::constant(c.clone());
        for (j, &k) in e.iter().enumerate() {
            while powers[j].len() <= k as usize {
                let next = powers[j].last().unwrap().mul(&f.components[j]);
                powers[j].push(next);
            }
            t = t.mul(&powers[j][k as usize]);
        }
        out = out.add(&t);
    }
    Ok(out)
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r >= R0) {
        return Err(Error::precondition(format!("radius {r} must be at least {R0}")));
    }
    Ok(())
}

fn on_circle(r: f64, theta: f64) -> Complex64 {
    Complex64::from_polar(r, theta)
}

/// Circle mean of `log‖f‖`, i.e. `(1/4π) ∫ log‖f(re^{iθ})‖² dθ`.
pub fn characteristic(f: &ProjCurve, r: f64, tol: f64) -> Result<f64> {
    check_radius(r)?;
    let comps: Vec<CompiledExpPoly> = f
        .components
        .iter()
        .filter(|c| !c.is_zero())
        .map(ExpPoly::compile)
        .collect();
    let res = periodic_mean(
        |theta| {
            let z = on_circle(r, theta);
            let logs: Vec<f64> = comps.iter().map(|c| c.eval_scaled(z).log_abs()).collect();
            let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if m == f64::NEG_INFINITY {
                return Err(Error::NearZero { radius: r });
            }
            let s: f64 = logs.iter().map(|l| (2.0 * (l - m)).exp()).sum();
            Ok(m + 0.5 * s.ln())
        },
        tol,
    )?;
    Ok(res.value)
}

/// Circle mean of `log⁺|g|`, the characteristic of a single entire function.
pub fn characteristic_scalar(g: &ExpPoly, r: f64, tol: f64) -> Result<f64> {
    check_radius(r)?;
    let c = g.compile();
    let res = periodic_mean(|theta| Ok(c.eval_scaled(on_circle(r, theta)).log_abs().max(0.0)), tol)?;
    Ok(res.value)
}

/// Circle mean of `log|g|` (the left side of Jensen's formula).
pub fn log_mean(g: &ExpPoly, r: f64, tol: f64) -> Result<f64> {
    if g.is_zero() {
        return Err(Error::invalid("log mean of the zero function"));
    }
    let c = g.compile();
    let res = periodic_mean(
        |theta| {
            let v = c.eval_scaled(on_circle(r, theta)).log_abs();
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NearZero { radius: r })
            }
        },
        tol,
    )?;
    Ok(res.value)
}

fn is_near_zero(s: &Scaled) -> bool {
    s.value.norm() <= 1e-10 * s.magnitude
}

/// Rate of change of `arg g(re^{iθ})` in θ: `Re(z g'/g)`.
fn arg_rate(z: Complex64, s: &Scaled) -> f64 {
    (z * s.deriv / s.value).re
}

/// Number of zeros of `g` in the open disk of radius `t`, by continuous
/// tracking of `arg g` around the circle.
pub fn winding_number(g: &CompiledExpPoly, t: f64) -> Result<i64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut theta = 0.0f64;
    let mut z = on_circle(t, theta);
    let mut s = g.eval_scaled(z);
    if is_near_zero(&s) {
        return Err(Error::NearZero { radius: t });
    }
    let bound = |z: Complex64, s: &Scaled| (z * s.deriv / s.value).norm().max(1e-3);
    let mut h = (0.3 / bound(z, &s)).min(two_pi / 16.0);
    let mut total = 0.0;
    let mut steps = 0usize;
    while theta < two_pi {
        h = h.min(two_pi - theta);
        let zn = on_circle(t, theta + h);
        let sn = g.eval_scaled(zn);
        if is_near_zero(&sn) {
            return Err(Error::NearZero { radius: t });
        }
        let darg = (sn.value / s.value).arg();
        let pred = 0.5 * h * (arg_rate(z, &s) + arg_rate(zn, &sn));
        if (darg - pred).abs() > 0.5 || darg.abs() > 1.0 {
            h *= 0.5;
            if h < 1e-13 {
                return Err(Error::NearZero { radius: t });
            }
            continue;
        }
        total += darg;
        theta += h;
        z = zn;
        s = sn;
        steps += 1;
        if steps > 50_000_000 {
            return Err(Error::NearZero { radius: t });
        }
        h = (0.3 / bound(z, &s)).clamp(0.5 * h, 2.0 * h).min(two_pi / 16.0);
        if h < 1e-13 {
            return Err(Error::NearZero { radius: t });
        }
    }
    let w = total / two_pi;
    let k = w.round();
    if (w - k).abs() > 0.1 {
        return Err(Error::NonIntegralWinding { value: w, radius: t });
    }
    Ok(k as i64)
}

/// Winding number at a radius near `t` inside `(lo, hi)`, moving the
/// circle off zeros along a fixed schedule.
fn winding_nudged(g: &CompiledExpPoly, t: f64, lo: f64, hi: f64) -> Result<(f64, i64)> {
    let mut last = None;
    for k in 0..12 {
        let delta = if k == 0 {
            0.0
        } else {
            let mag = 1e-7 * 4f64.powi((k - 1) / 2);
            if k % 2 == 1 {
                mag
            } else {
                -mag
            }
        };
        let tt = t * (1.0 + delta);
        if tt <= lo || tt >= hi {
            continue;
        }
        match winding_number(g, tt) {
            Ok(w) => return Ok((tt, w)),
            Err(e @ (Error::NearZero { .. } | Error::NonIntegralWinding { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(Error::NearZero { radius: t }))
}

/// Radius interval `(a, b)` in which the zero count rises by `jump`.
#[derive(Clone, Copy, Debug)]
pub struct Jump {
    pub a: f64,
    pub b: f64,
    pub jump: i64,
}

fn locate_jumps(g: &CompiledExpPoly, (a, na): (f64, i64), (b, nb): (f64, i64), jump_tol: f64) -> Result<Vec<Jump>> {
    if na == nb {
        return Ok(Vec::new());
    }
    if na > nb {
        return Err(Error::NonIntegralWinding {
            value: nb as f64,
            radius: b,
        });
    }
    if b - a <= jump_tol * b {
        return Ok(vec![Jump { a, b, jump: nb - na }]);
    }
    let (m, nm) = winding_nudged(g, 0.5 * (a + b), a, b)?;
    let (left, right) = rayon::join(
        || locate_jumps(g, (a, na), (m, nm), jump_tol),
        || locate_jumps(g, (m, nm), (b, nb), jump_tol),
    );
    let mut out = left?;
    out.extend(right?);
    Ok(out)
}

/// Counting function values with an error bound from the finite
/// localization of zero radii.
#[derive(Clone, Debug)]
pub struct CountingResult {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub error_bound: Vec<f64>,
    /// Zero count inside the disk of radius `R0`.
    pub n_r0: i64,
    pub jumps: Vec<Jump>,
}

impl CountingResult {
    pub fn to_json(&self) -> Value {
        json!({
            "radii": self.radii,
            "values": self.values,
            "error_bound": self.error_bound,
            "n_r0": self.n_r0,
            "jumps": self.jumps.iter().map(|j| json!({"a": j.a, "b": j.b, "jump": j.jump})).collect::<Vec<_>>(),
        })
    }
}

/// `N(r) = ∫_{R0}^r n(t) dt/t` for the zeros of `g`, at each radius.
pub fn zero_counting(g: &ExpPoly, radii: &[f64], jump_tol: f64) -> Result<CountingResult> {
    if g.is_zero() {
        return Err(Error::precondition("function vanishes identically"));
    }
    for &r in radii {
        check_radius(r)?;
    }
    let mut ladder: Vec<f64> = radii.to_vec();
    ladder.push(R0);
    ladder.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ladder.dedup();

    if g.is_unit() {
        // A single exponential with constant coefficient has no zeros.
        return Ok(CountingResult {
            radii: radii.to_vec(),
            values: vec![0.0; radii.len()],
            error_bound: vec![0.0; radii.len()],
            n_r0: 0,
            jumps: Vec::new(),
        });
    }

    let c = g.compile();
    let counts: Vec<(f64, i64)> = ladder
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            let lo = if i == 0 { 0.0 } else { ladder[i - 1] };
            let hi = ladder.get(i + 1).copied().unwrap_or(f64::INFINITY);
            winding_nudged(&c, t, lo.max(0.5 * t), hi.min(2.0 * t))
        })
        .collect::<Result<Vec<_>>>()?;
    let jumps: Vec<Jump> = (1..counts.len())
        .into_par_iter()
        .map(|i| locate_jumps(&c, counts[i - 1], counts[i], jump_tol))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let n_r0 = counts[0].1;

    let mut values = Vec::with_capacity(radii.len());
    let mut errors = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut v = n_r0 as f64 * (r / R0).ln();
        let mut err = 0.0;
        for j in jumps.iter().filter(|j| j.a < r) {
            let hi = j.b.min(r);
            // n jumps somewhere in (a, hi): take the log-midpoint.
            let rho = (j.a * hi).sqrt();
            v += j.jump as f64 * (r / rho).ln();
            err += 0.5 * j.jump as f64 * (hi / j.a).ln();
        }
        values.push(v);
        errors.push(err);
    }
    Ok(CountingResult {
        radii: radii.to_vec(),
        values,
        error_bound: errors,
        n_r0,
        jumps,
    })
}

/// Counting function `N_f(D, r)`.
pub fn counting(f: &ProjCurve, d: &HomDivisor, r: f64) -> Result<f64> {
    Ok(counting_many(f, d, &[r], DEFAULT_JUMP_TOL)?.values[0])
}

pub fn counting_many(f: &ProjCurve, d: &HomDivisor, radii: &[f64], jump_tol: f64) -> Result<CountingResult> {
    let g = compose_divisor(d, f)?;
    if g.is_zero() {
        return Err(Error::precondition("the curve lies in the divisor (P∘f ≡ 0)"));
    }
    zero_counting(&g, radii, jump_tol)
}

/// Least-squares line `y ≈ slope·x + intercept`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::precondition("no radii given"));
    }
    for w in radii.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::precondition("radii must be strictly increasing"));
        }
    }
    check_radius(radii[0])
}

fn characteristic_many(f: &ProjCurve, radii: &[f64], tol: f64) -> Result<Vec<f64>> {
    radii.par_iter().map(|&r| characteristic(f, r, tol)).collect()
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    /// Least-squares slope of `T` against `log r`.
    pub fitted_slope: f64,
    /// Least-squares slope of `log T` against `log r`, or 0 when `T` is
    /// logarithmic or constant.
    pub fitted_order: f64,
    pub flags: Vec<String>,
}

impl GrowthReport {
    pub fn to_json(&self) -> Value {
        json!({
            "radii": self.radii,
            "values": self.values,
            "fitted_slope": self.fitted_slope,
            "fitted_order": self.fitted_order,
            "flags": self.flags,
        })
    }
}

/// Growth order of `T(f, r)` from samples at the given radii.
pub fn order_estimate(f: &ProjCurve, radii: &[f64], tol: f64) -> Result<GrowthReport> {
    check_radii(radii)?;
    if radii.len() < 4 {
        return Err(Error::precondition("order estimation needs at least 4 radii"));
    }
    if radii[radii.len() - 1] < 10.0 * radii[0] {
        return Err(Error::precondition("radii must span at least one decade"));
    }
    let values = characteristic_many(f, radii, tol)?;
    let logr: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let (fitted_slope, intercept) = linear_fit(&logr, &values);
    let mut flags = Vec::new();

    let vmax = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let vmin = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let range = vmax - vmin;
    let fitted_order = if range <= 1e3 * tol * vmax.abs().max(1.0) {
        flags.push("constant characteristic: degenerate fit".to_string());
        0.0
    } else {
        let resid = logr
            .iter()
            .zip(&values)
            .map(|(x, y)| (y - (fitted_slope * x + intercept)).abs())
            .fold(0.0, f64::max);
        if resid <= 0.01 * range {
            flags.push("logarithmic growth: T is affine in log r".to_string());
            0.0
        } else {
            let shift = if vmin <= 0.0 {
                flags.push("nonpositive characteristic values shifted before taking logarithms".to_string());
                1.0 - vmin
            } else {
                0.0
            };
            let logt: Vec<f64> = values.iter().map(|v| (v + shift).ln()).collect();
            linear_fit(&logr, &logt).0
        }
    };
    Ok(GrowthReport {
        radii: radii.to_vec(),
        values,
        fitted_slope,
        fitted_order,
        flags,
    })
}

#[derive(Clone, Debug)]
pub struct FmtReport {
    pub degree: u32,
    pub radii: Vec<f64>,
    pub characteristic: Vec<f64>,
    pub counting: Vec<f64>,
    /// The constant `C` in `N ≤ d·T + C`.
    pub constant: f64,
    /// `d·T(r) + C − N(r)`; nonnegative in exact arithmetic.
    pub defect: Vec<f64>,
    pub max_violation: f64,
    pub slack: f64,
    pub pass: bool,
}

impl FmtReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "radii": self.radii,
            "characteristic": self.characteristic,
            "counting": self.counting,
            "constant": self.constant,
            "defect": self.defect,
            "max_violation": self.max_violation,
            "slack": self.slack,
            "pass": self.pass,
        })
    }
}

/// First Main Theorem check. With `J(r)` the circle mean of `log|P∘f|`,
/// Jensen's formula gives `N(r) = J(r) − J(R0)`, and `|P(z)| ≤ ‖P‖·‖z‖^d`
/// gives `J(r) ≤ d·T(r) + log‖P‖`. Hence `N ≤ d·T + C` with
/// `C = log‖P‖ − J(R0)`, and the defect is the (nonnegative) proximity
/// function.
pub fn fmt_check(f: &ProjCurve, d: &HomDivisor, radii: &[f64], tol: f64) -> Result<FmtReport> {
    check_radii(radii)?;
    let g = compose_divisor(d, f)?;
    if g.is_zero() {
        return Err(Error::precondition("the curve lies in the divisor (P∘f ≡ 0)"));
    }
    let cnt = zero_counting(&g, radii, DEFAULT_JUMP_TOL)?;
    let t = characteristic_many(f, radii, tol)?;
    let j0 = match log_mean(&g, R0, tol) {
        Ok(v) => v,
        // A zero on the unit circle: J is continuous, average nearby circles.
        Err(_) => 0.5 * (log_mean(&g, R0 * (1.0 - 1e-4), tol)? + log_mean(&g, R0 * (1.0 + 1e-4), tol)?),
    };
    let constant = d.coefficient_norm().ln() - j0;
    let dd = d.degree as f64;
    let defect: Vec<f64> = t
        .iter()
        .zip(&cnt.values)
        .map(|(tv, nv)| dd * tv + constant - nv)
        .collect();
    let max_violation = defect.iter().map(|x| -x).fold(f64::NEG_INFINITY, f64::max);
    let slack = 1e-6 + 100.0 * tol + cnt.error_bound.iter().cloned().fold(0.0, f64::max);
    Ok(FmtReport {
        degree: d.degree,
        radii: radii.to_vec(),
        characteristic: t,
        counting: cnt.values,
        constant,
        defect,
        max_violation,
        slack,
        pass: max_violation <= slack,
    })
}

/// Determinant over Q(i) by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<CRational>>) -> CRational {
    let n = m.len();
    let mut det = CRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return CRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let v = &m[r][c] - &(&factor * &m[col][c]);
                m[r][c] = v;
            }
        }
    }
    det
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every `(n+1)`-subset of the hyperplanes is linearly independent; on
/// failure the offending subset is returned in the error.
pub fn check_general_position(hyperplanes: &[HomDivisor], n: usize) -> Result<()> {
    let rows: Vec<Vec<CRational>> = hyperplanes
        .iter()
        .map(|h| {
            h.linear_coeffs()
                .filter(|c| c.len() == n + 1)
                .ok_or_else(|| Error::invalid(format!("hyperplanes must be linear forms in {} variables", n + 1)))
        })
        .collect::<Result<_>>()?;
    for s in subsets(rows.len(), n + 1) {
        let m: Vec<Vec<CRational>> = s.iter().map(|&i| rows[i].clone()).collect();
        if determinant(m).is_zero() {
            return Err(Error::GeneralPosition(s));
        }
    }
    Ok(())
}

/// Wronskian determinant of the components, exactly.
pub fn wronskian(fs: &[ExpPoly]) -> ExpPoly {
    let n = fs.len();
    let mut rows: Vec<Vec<ExpPoly>> = vec![fs.to_vec()];
    for k in 1..n {
        let next = rows[k - 1].iter().map(ExpPoly::differentiate).collect();
        rows.push(next);
    }
    // Laplace expansion along the first row.
    fn det(rows: &[Vec<ExpPoly>], cols: &[usize]) -> ExpPoly {
        if cols.len() == 1 {
            return rows[0][cols[0]].clone();
        }
        let mut acc = ExpPoly::zero();
        for (idx, &c) in cols.iter().enumerate() {
            if rows[0][c].is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = det(&rows[1..], &rest);
            let t = rows[0][c].mul(&minor);
            acc = if idx % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
    let cols: Vec<usize> = (0..n).collect();
    det(&rows, &cols)
}

#[derive(Clone, Debug)]
pub struct SmtReport {
    pub q: usize,
    pub n: usize,
    pub radii: Vec<f64>,
    pub characteristic: Vec<f64>,
    /// Counting functions, one row per hyperplane.
    pub counting: Vec<Vec<f64>>,
    /// `Δ(r) = (q−n−1)·T(r) − Σ_j N_j(r)`.
    pub delta: Vec<f64>,
    pub fit_a: f64,
    pub fit_b: f64,
    /// Largest deviation from the fit relative to the largest `(q−n−1)·T`.
    pub residual_rel: f64,
    pub bound_holds: bool,
    pub pass: bool,
}

impl SmtReport {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "n": self.n,
            "radii": self.radii,
            "characteristic": self.characteristic,
            "counting": self.counting,
            "delta": self.delta,
            "fit": {"a": self.fit_a, "b": self.fit_b},
            "residual_rel": self.residual_rel,
            "bound_holds": self.bound_holds,
            "pass": self.pass,
        })
    }
}

/// Second Main Theorem check for hyperplanes in general position. The
/// exceptional set of finite measure cannot be seen from finitely many radii,
/// so the result is a fit-based diagnostic: Δ(r) is fitted by `a·log r + b`
/// and accepted when the fit residual stays below 5% of `(q−n−1)·T`.
pub fn smt_check(curve: &ProjCurve, hyperplanes: &[HomDivisor], radii: &[f64], tol: f64) -> Result<SmtReport> {
    check_radii(radii)?;
    let n = curve.dim();
    let q = hyperplanes.len();
    if q < n + 2 {
        return Err(Error::precondition(format!(
            "need at least {} hyperplanes, got {q}",
            n + 2
        )));
    }
    check_general_position(hyperplanes, n)?;
    if wronskian(&curve.components).is_zero() {
        return Err(Error::precondition(
            "curve is linearly degenerate: its components satisfy a linear relation",
        ));
    }
    let t = characteristic_many(curve, radii, tol)?;
    let counting: Vec<Vec<f64>> = hyperplanes
        .iter()
        .map(|h| Ok(counting_many(curve, h, radii, DEFAULT_JUMP_TOL)?.values))
        .collect::<Result<_>>()?;
    let k = (q - n - 1) as f64;
    let delta: Vec<f64> = (0..radii.len())
        .map(|i| k * t[i] - counting.iter().map(|row| row[i]).sum::<f64>())
        .collect();
    let logr: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let (fit_a, fit_b) = linear_fit(&logr, &delta);
    let scale = t.iter().map(|v| (k * v).abs()).fold(0.0, f64::max).max(1.0);
    let residual = logr
        .iter()
        .zip(&delta)
        .map(|(x, d)| (d - (fit_a * x + fit_b)).abs())
        .fold(0.0, f64::max);
    let residual_rel = residual / scale;
    let bound_holds = logr
        .iter()
        .zip(&delta)
        .all(|(x, d)| *d <= fit_a * x + fit_b + 0.05 * scale);
    Ok(SmtReport {
        q,
        n,
        radii: radii.to_vec(),
        characteristic: t,
        counting,
        delta,
        fit_a,
        fit_b,
        residual_rel,
        bound_holds,
        pass: residual_rel < 0.05 && bound_holds,
    })
}

#[derive(Clone, Debug)]
pub struct RationalGrowthReport {
    /// Exact verdict: `f1/f0` is a rational function.
    pub rational: bool,
    pub radii: Vec<f64>,
    /// `T([f0:f1], r) / log r` at each radius.
    pub ratios: Vec<f64>,
    /// Whether the numeric growth agrees with the exact verdict.
    pub numeric_consistent: bool,
}

impl RationalGrowthReport {
    pub fn to_json(&self) -> Value {
        json!({
            "rational": self.rational,
            "radii": self.radii,
            "ratios": self.ratios,
            "numeric_consistent": self.numeric_consistent,
        })
    }
}

/// Decides exactly whether `[f0 : f1]` is a rational curve, i.e. whether
/// `f1/f0` is a rational function, and cross-checks that `T/log r` stays
/// bounded exactly in that case.
///
/// Writing `f = Σ_E a_E·e^E` by exponent class, `f1 = R·f0` for a rational
/// `R` iff `a_E(f1)·a_K(f0) = a_E(f0)·a_K(f1)` for a fixed class `K` of `f0`
/// and every class `E`.
pub fn rational_growth_test(f0: &ExpPoly, f1: &ExpPoly, radii: &[f64], tol: f64) -> Result<RationalGrowthReport> {
    if f1.is_zero() {
        return Err(Error::precondition("f1 vanishes identically"));
    }
    check_radii(radii)?;
    if radii[0] <= R0 {
        return Err(Error::precondition("radii must exceed 1 so that log r > 0"));
    }
    let rational = match f0.exponents().first() {
        None => true,
        Some(k) => {
            let a_k = f0.class_coefficient(k);
            let b_k = f1.class_coefficient(k);
            let mut classes = f0.exponents();
            classes.extend(f1.exponents());
            classes.iter().all(|e| {
                f1.class_coefficient(e)
                    .mul(&a_k)
                    .sub(&f0.class_coefficient(e).mul(&b_k))
                    .is_zero()
            })
        }
    };
    let curve = ProjCurve::new(vec![f0.clone(), f1.clone()])?;
    let t = characteristic_many(&curve, radii, tol)?;
    let ratios: Vec<f64> = t.iter().zip(radii).map(|(v, r)| v / r.ln()).collect();
    let first = ratios[0].abs().max(1e-12);
    let growth = ratios[ratios.len() - 1] / first;
    let numeric_consistent = (growth > 1.5) != rational;
    Ok(RationalGrowthReport {
        rational,
        radii: radii.to_vec(),
        ratios,
        numeric_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use std::f64::consts::PI;

    fn curve(cs: Vec<ExpPoly>) -> ProjCurve {
        ProjCurve::new(cs).unwrap()
    }

    fn exp_xi() -> ExpPoly {
        ExpPoly::exp(Poly::x())
    }

    #[test]
    fn characteristic_of_line_is_closed_form() {
        let f = curve(vec![ExpPoly::one(), ExpPoly::xi()]);
        let t = characteristic(&f, 10.0, 1e-10).unwrap();
        assert!((t - 0.5 * 101f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn scalar_characteristic_of_exp() {
        let t = characteristic_scalar(&exp_xi(), PI, 1e-10).unwrap();
        assert!((t - 1.0).abs() < 1e-7, "{t}");
        let c = characteristic_scalar(&ExpPoly::constant(CRational::ratio(1, 2)), 5.0, 1e-10).unwrap();
        assert_eq!(c, 0.0);
    }

    #[test]
    fn winding_counts_roots_of_unity_multiples() {
        // e^ξ − 1 vanishes at 2πik
        let g = exp_xi().sub(&ExpPoly::one()).compile();
        assert_eq!(winding_number(&g, 1.0).unwrap(), 1);
        assert_eq!(winding_number(&g, 7.0).unwrap(), 3);
        assert_eq!(winding_number(&g, 13.0).unwrap(), 5);
    }

    #[test]
    fn counting_of_single_zero() {
        let f = curve(vec![ExpPoly::one(), ExpPoly::xi()]);
        let d = HomDivisor::linear(&[CRational::zero(), CRational::one()]).unwrap();
        let n = counting(&f, &d, 10.0).unwrap();
        assert!((n - 10f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn general_position_failure_names_subset() {
        let h = |a: i64, b: i64| HomDivisor::linear(&[CRational::int(a), CRational::int(b)]).unwrap();
        let e = check_general_position(&[h(1, 0), h(0, 1), h(2, 0)], 1).unwrap_err();
        assert_eq!(e, Error::GeneralPosition(vec![0, 2]));
    }

    #[test]
    fn wronskian_detects_linear_relation() {
        let fs = vec![exp_xi(), exp_xi().scale(&CRational::int(3))];
        assert!(wronskian(&fs).is_zero());
        let gs = vec![ExpPoly::one(), exp_xi(), ExpPoly::exp(Poly::from_ints(&[0, 0, 1]))];
        assert!(!wronskian(&gs).is_zero());
    }

    #[test]
    fn linear_fit_recovers_line() {
        let (a, b) = linear_fit(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert!((a - 2.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    }
}
