//! Triples of plane curves: intersection data, normal crossings, the
//! two-puncture case analysis and the quadric/line exclusion.

mod engine;
mod exclusion;
mod intersect;

pub use engine::{two_puncture_case_engine, verify_certificate, CaseVerdict, Certificate, PunctureCase};
pub use exclusion::{quadric_line_exclusion, ExcludedLine, ExclusionReport};
pub use intersect::{intersection_points, normal_crossings, singular_points, IntersectionPoint, NormalCrossingsReport};

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::scalar::{CRational, Field, ToComplex};

pub type Poly3 = MPoly<CRational>;

/// A reduced plane curve `F(x₀, x₁, x₂) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    poly: Poly3,
    degree: u32,
}

impl PlaneCurve {
    pub fn new(poly: Poly3) -> Result<Self> {
        if poly.nvars() != 3 {
            return Err(Error::invalid("a plane curve needs a polynomial in three variables"));
        }
        let degree = poly
            .total_degree()
            .ok_or_else(|| Error::invalid("the zero polynomial does not define a curve"))?;
        if degree == 0 {
            return Err(Error::invalid("a nonzero constant does not define a curve"));
        }
        if !poly.is_homogeneous() {
            return Err(Error::invalid("curve polynomial must be homogeneous"));
        }
        let mut g = poly.clone();
        for v in 0..3 {
            g = g.gcd(&poly.partial(v));
        }
        if !g.is_constant() {
            return Err(Error::invalid("curve polynomial has a repeated factor"));
        }
        Ok(PlaneCurve { poly, degree })
    }

    pub fn from_terms(terms: &[([u32; 3], CRational)]) -> Result<Self> {
        Self::new(Poly3::from_terms(3, terms.iter().map(|(e, c)| (e.to_vec(), c.clone()))))
    }

    pub fn from_int_terms(terms: &[([u32; 3], i64)]) -> Result<Self> {
        Self::new(Poly3::from_terms(
            3,
            terms.iter().map(|(e, c)| (e.to_vec(), CRational::int(*c))),
        ))
    }

    pub fn poly(&self) -> &Poly3 {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.poly
                .terms()
                .map(|(e, c)| json!({"exponents": e, "coeff": c.to_json()}))
                .collect(),
        )
    }

    /// Accepts a monomial array or an object with a `"poly"` array.
    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = match v {
            Value::Array(a) => a,
            Value::Object(o) => o
                .get("poly")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::schema("curve object needs a \"poly\" array"))?,
            _ => return Err(Error::schema("curve must be an array of monomials")),
        };
        let mut p = Poly3::zero(3);
        for t in arr {
            let e: Vec<u32> = t
                .get("exponents")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 3)
                .and_then(|a| {
                    a.iter()
                        .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()))
                        .collect()
                })
                .ok_or_else(|| Error::schema("monomial needs three nonnegative \"exponents\""))?;
            let c = CRational::from_json(
                t.get("coeff")
                    .ok_or_else(|| Error::schema("monomial lacks \"coeff\""))?,
            )?;
            p.add_term(e, c);
        }
        Self::new(p).map_err(|e| Error::schema(e.to_string()))
    }
}

/// Three pairwise coprime plane curves.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub curves: [PlaneCurve; 3],
}

impl Configuration {
    pub fn new(curves: [PlaneCurve; 3]) -> Result<Self> {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if !curves[i].poly.gcd(&curves[j].poly).is_constant() {
                return Err(Error::NotCoprime);
            }
        }
        Ok(Configuration { curves })
    }

    pub fn degrees(&self) -> [u32; 3] {
        [self.curves[0].degree, self.curves[1].degree, self.curves[2].degree]
    }

    pub fn to_json(&self) -> Value {
        json!({"curves": self.curves.iter().map(PlaneCurve::to_json).collect::<Vec<_>>()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .get("curves")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::schema("configuration needs a \"curves\" array of length 3"))?;
        let c: Vec<PlaneCurve> = arr.iter().map(PlaneCurve::from_json).collect::<Result<_>>()?;
        let [a, b, c] = <[PlaneCurve; 3]>::try_from(c).expect("length checked");
        Self::new([a, b, c])
    }
}

/// A point of the projective plane, exact when its coordinates lie in Q(i).
/// Normalized so that the first nonzero coordinate is 1.
#[derive(Clone, Debug)]
pub enum Point {
    Exact([CRational; 3]),
    Approx { coords: [Complex64; 3], radius: f64 },
}

impl Point {
    pub fn exact(mut p: [CRational; 3]) -> Self {
        if let Some(k) = p.iter().position(|c| !c.is_zero()) {
            let inv = p[k].inv();
            for c in p.iter_mut() {
                *c = &*c * &inv;
            }
        }
        Point::Exact(p)
    }

    pub fn approx_normalized(mut p: [Complex64; 3], radius: f64) -> Self {
        let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if let Some(k) = p.iter().position(|c| c.norm() > 1e-12 * scale) {
            let inv = p[k].inv();
            for c in p.iter_mut() {
                *c *= inv;
            }
            p[k] = Complex64::new(1.0, 0.0);
            for c in p.iter_mut() {
                if c.norm() <= 1e-14 {
                    *c = Complex64::zero();
                }
            }
        }
        Point::Approx { coords: p, radius }
    }

    pub fn coords_c64(&self) -> [Complex64; 3] {
        match self {
            Point::Exact(p) => [p[0].to_c64(), p[1].to_c64(), p[2].to_c64()],
            Point::Approx { coords, .. } => *coords,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Point::Exact(_))
    }

    /// Projective distance proxy between normalized representatives.
    pub fn distance(&self, o: &Point) -> f64 {
        let a = self.coords_c64();
        let b = o.coords_c64();
        a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        match self {
            Point::Exact(p) => json!({"exact": p.iter().map(CRational::to_json).collect::<Vec<_>>()}),
            Point::Approx { coords, radius } => json!({
                "approx": coords.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
                "radius": radius,
            }),
        }
    }
}

/// Whether `poly` vanishes at `p`: exactly for exact points, relative to the
/// size of the terms for approximate ones.
pub(crate) fn vanishes_at(poly: &Poly3, p: &Point, rel_tol: f64) -> bool {
    match p {
        Point::Exact(c) => poly.eval(c).is_zero(),
        Point::Approx { coords, .. } => {
            let v = poly.eval_c64(coords).norm();
            let mag = poly.to_c64().magnitude(coords);
            v <= rel_tol * mag.max(f64::MIN_POSITIVE)
        }
    }
}
