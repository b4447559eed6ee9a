//! Search for a line meeting a quadric `C_b` in two points `P ∈ C_a`,
//! `Q ∈ C_c`, and meeting `C_a` only at `P` and `C_c` only at `Q`.
//!
//! Such a line passes through two points of `C_a ∩ C_b` and `C_c ∩ C_b`, so
//! the candidates are finite. On the line `sP + tQ` the restrictions must be
//! `F_a ∝ t^{d_a}`, `F_c ∝ s^{d_c}` and `F_b ∝ st`.

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use super::intersect::{intersection_points, POINT_TOL};
use super::{Configuration, Point, Poly3};
use crate::error::Result;
use crate::mpoly::MPoly;
use crate::scalar::CRational;

#[derive(Clone, Debug)]
pub struct ExcludedLine {
    pub quadric: usize,
    pub others: (usize, usize),
    pub p: Point,
    pub q: Point,
    /// Coefficients `(l₀, l₁, l₂)` of the line `Σ lᵢxᵢ = 0`.
    pub line: [Complex64; 3],
    pub exact: bool,
}

impl ExcludedLine {
    pub fn to_json(&self) -> Value {
        json!({
            "quadric": self.quadric,
            "others": [self.others.0, self.others.1],
            "P": self.p.to_json(),
            "Q": self.q.to_json(),
            "line": self.line.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "exact": self.exact,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ExclusionReport {
    pub quadrics: Vec<usize>,
    pub candidates_checked: usize,
    pub lines: Vec<ExcludedLine>,
    /// True when no curve is a quadric.
    pub vacuous: bool,
    pub pass: bool,
}

impl ExclusionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "quadrics": self.quadrics,
            "candidates_checked": self.candidates_checked,
            "lines": self.lines.iter().map(ExcludedLine::to_json).collect::<Vec<_>>(),
            "vacuous": self.vacuous,
            "pass": self.pass,
        })
    }
}

/// Whether the restriction of `f` to `sP + tQ` is a nonzero multiple of
/// `s^{d−k} t^k`.
trait Restriction {
    fn only_monomial(&self, f: &Poly3, k: usize) -> bool;
}

struct ExactLine([CRational; 3], [CRational; 3]);

impl Restriction for ExactLine {
    fn only_monomial(&self, f: &Poly3, k: usize) -> bool {
        let subs: Vec<MPoly<CRational>> = (0..3)
            .map(|i| MPoly::from_terms(2, [(vec![1, 0], self.0[i].clone()), (vec![0, 1], self.1[i].clone())]))
            .collect();
        let r = f.compose(&subs);
        !r.is_zero() && r.terms().all(|(e, _)| e[1] as usize == k)
    }
}

struct ApproxLine([Complex64; 3], [Complex64; 3]);

impl Restriction for ApproxLine {
    fn only_monomial(&self, f: &Poly3, k: usize) -> bool {
        // Coefficients of the binary form from its values at roots of unity.
        let d = f.total_degree().unwrap_or(0) as usize;
        let n = d + 1;
        let fc = f.to_c64();
        let mut values = Vec::with_capacity(n);
        let mut scale = 0.0f64;
        for j in 0..n {
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64);
            let x: Vec<Complex64> = (0..3).map(|i| self.0[i] + w * self.1[i]).collect();
            values.push(fc.eval(&x));
            scale = scale.max(fc.magnitude(&x));
        }
        let coeff = |m: usize| -> Complex64 {
            values
                .iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (j * m) as f64 / n as f64))
                .sum::<Complex64>()
                / n as f64
        };
        let tol = POINT_TOL * scale.max(f64::MIN_POSITIVE);
        (0..n).all(|m| (coeff(m).norm() > tol) == (m == k))
    }
}

fn cross(a: [Complex64; 3], b: [Complex64; 3]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Lines violating the genericity condition for every quadric of the
/// configuration taken as the middle curve.
pub fn quadric_line_exclusion(conf: &Configuration, seed: u64) -> Result<ExclusionReport> {
    let degrees = conf.degrees();
    let quadrics: Vec<usize> = (0..3).filter(|&i| degrees[i] == 2).collect();
    let mut lines = Vec::new();
    let mut checked = 0;
    for &b in &quadrics {
        let (a, c) = match b {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let cb = &conf.curves[b];
        let on_a = intersection_points(&conf.curves[a], cb, seed.wrapping_add(20 + b as u64))?;
        let on_c = intersection_points(&conf.curves[c], cb, seed.wrapping_add(30 + b as u64))?;
        for p in &on_a {
            for q in &on_c {
                if p.point.distance(&q.point) < 1e-9 {
                    continue;
                }
                checked += 1;
                let fa = conf.curves[a].poly();
                let fb = cb.poly();
                let fc = conf.curves[c].poly();
                let da = degrees[a] as usize;
                let (hit, exact) = match (&p.point, &q.point) {
                    (Point::Exact(x), Point::Exact(y)) => {
                        let l = ExactLine(x.clone(), y.clone());
                        (
                            l.only_monomial(fa, da) && l.only_monomial(fc, 0) && l.only_monomial(fb, 1),
                            true,
                        )
                    }
                    _ => {
                        let l = ApproxLine(p.point.coords_c64(), q.point.coords_c64());
                        (
                            l.only_monomial(fa, da) && l.only_monomial(fc, 0) && l.only_monomial(fb, 1),
                            false,
                        )
                    }
                };
                if hit {
                    let mut line = cross(p.point.coords_c64(), q.point.coords_c64());
                    let lead = line
                        .iter()
                        .find(|z| z.norm() > 1e-12)
                        .copied()
                        .unwrap_or(Complex64::new(1.0, 0.0));
                    for z in line.iter_mut() {
                        *z /= lead;
                        if z.norm() < 1e-14 {
                            *z = Complex64::zero();
                        }
                    }
                    lines.push(ExcludedLine {
                        quadric: b,
                        others: (a, c),
                        p: p.point.clone(),
                        q: q.point.clone(),
                        line,
                        exact,
                    });
                }
            }
        }
    }
    Ok(ExclusionReport {
        vacuous: quadrics.is_empty(),
        pass: lines.is_empty(),
        quadrics,
        candidates_checked: checked,
        lines,
    })
}
