//! Intersection points of plane curves by projection and elimination.
//!
//! After a random integer change of coordinates the centre `(0:0:1)` lies on
//! neither curve and on no line through two intersection points. Then the
//! resultant with respect to `y₂` has one root per intersection point and
//! the root multiplicity is the local intersection number.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{vanishes_at, Configuration, PlaneCurve, Point, Poly3};
use crate::error::{Error, Result};
use crate::nevanlinna::determinant;
use crate::poly::Poly;
use crate::roots::{aberth, certified_roots, gaussian_roots};
use crate::scalar::CRational;

const MAX_RETRIES: usize = 5;
const ROOT_TARGET: f64 = 1e-30;
/// Relative size below which a polynomial value at an approximate point
/// counts as zero.
pub(crate) const POINT_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct IntersectionPoint {
    pub point: Point,
    pub multiplicity: usize,
}

impl IntersectionPoint {
    pub fn to_json(&self) -> Value {
        json!({"point": self.point.to_json(), "multiplicity": self.multiplicity})
    }
}

type Matrix = [[i64; 3]; 3];

fn det3(a: &Matrix) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn random_change(rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let mut a = [[0i64; 3]; 3];
        for row in a.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-4..=4);
            }
        }
        if det3(&a) != 0 {
            return a;
        }
    }
}

/// `F(A·y)`
fn transform(f: &Poly3, a: &Matrix) -> Poly3 {
    let subs: Vec<Poly3> = (0..3)
        .map(|i| {
            Poly3::from_terms(
                3,
                (0..3).map(|j| {
                    let mut e = vec![0; 3];
                    e[j] = 1;
                    (e, CRational::int(a[i][j]))
                }),
            )
        })
        .collect();
    f.compose(&subs)
}

/// Coefficients of `F(1, t, y₂)` as polynomials in `t`, indexed by the
/// power of `y₂`.
fn coeffs_in_y2(f: &Poly3) -> Vec<Poly> {
    let deg = f.degree_in(2).unwrap_or(0) as usize;
    let mut rows: Vec<Vec<CRational>> = vec![Vec::new(); deg + 1];
    for (e, c) in f.terms() {
        let row = &mut rows[e[2] as usize];
        if row.len() <= e[1] as usize {
            row.resize(e[1] as usize + 1, CRational::zero());
        }
        row[e[1] as usize] = &row[e[1] as usize] + c;
    }
    rows.into_iter().map(Poly::new).collect()
}

fn at(cs: &[Poly], t: &CRational) -> Poly {
    Poly::new(cs.iter().map(|c| c.eval(t)).collect())
}

/// Principal subresultant coefficient of index `j`; `j = 0` gives the
/// resultant (up to sign).
fn psc(f: &Poly, g: &Poly, j: usize) -> CRational {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n - 2 * j;
    let top = m + n - j - 1;
    let mut rows = Vec::with_capacity(size);
    for (p, shifts) in [(f, n - j), (g, m - j)] {
        for k in (0..shifts).rev() {
            rows.push(
                (0..size)
                    .map(|col| {
                        let power = top - col;
                        if power >= k {
                            p.coeff(power - k)
                        } else {
                            CRational::zero()
                        }
                    })
                    .collect(),
            );
        }
    }
    determinant(rows)
}

/// Newton interpolation through `(x_k, y_k)`.
fn interpolate(xs: &[CRational], ys: &[CRational]) -> Poly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut out = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![-xs[i].clone(), CRational::one()]);
        out = &(&out * &lin) + &Poly::constant(dd[i].clone());
    }
    out
}

fn apply(a: &Matrix, y: &[CRational; 3]) -> [CRational; 3] {
    std::array::from_fn(|i| (0..3).fold(CRational::zero(), |acc, j| &acc + &(&CRational::int(a[i][j]) * &y[j])))
}

fn apply_c64(a: &Matrix, y: &[Complex64; 3]) -> [Complex64; 3] {
    std::array::from_fn(|i| (0..3).map(|j| y[j] * a[i][j] as f64).sum())
}

struct Projection {
    a: Matrix,
    fc: Vec<Poly>,
    gc: Vec<Poly>,
    res: Poly,
}

fn project(f: &Poly3, g: &Poly3, d: usize, a: Matrix) -> Option<Projection> {
    let ft = transform(f, &a);
    let gt = transform(g, &a);
    let apex = [CRational::zero(), CRational::zero(), CRational::one()];
    if ft.eval(&apex).is_zero() || gt.eval(&apex).is_zero() {
        return None;
    }
    let fc = coeffs_in_y2(&ft);
    let gc = coeffs_in_y2(&gt);
    let collisions_possible = fc.len().min(gc.len()) > 2;
    let npts = 2 * d + 1;
    let xs: Vec<CRational> = (0..npts as i64).map(CRational::int).collect();
    let mut rv = Vec::with_capacity(npts);
    let mut sv = Vec::with_capacity(npts);
    for x in &xs {
        let fx = at(&fc, x);
        let gx = at(&gc, x);
        rv.push(psc(&fx, &gx, 0));
        if collisions_possible {
            sv.push(psc(&fx, &gx, 1));
        }
    }
    let res = interpolate(&xs, &rv);
    if res.degree() != Some(d) {
        // An intersection point on the line y₀ = 0.
        return None;
    }
    if collisions_possible {
        let s1 = interpolate(&xs, &sv);
        if !res.squarefree_part().gcd(&s1).is_constant() {
            return None;
        }
    }
    Some(Projection { a, fc, gc, res })
}

fn eval_c64(cs: &[Poly], t: Complex64) -> Vec<Complex64> {
    cs.iter().map(|c| c.eval_c64(t)).collect()
}

fn point_cmp(a: &Point, b: &Point) -> Ordering {
    let (x, y) = (a.coords_c64(), b.coords_c64());
    for k in 0..3 {
        let o = x[k].re.total_cmp(&y[k].re).then(x[k].im.total_cmp(&y[k].im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Intersection of two coprime homogeneous polynomials (not necessarily
/// reduced) with local multiplicities.
pub(crate) fn intersect_polys(f: &Poly3, g: &Poly3, seed: u64) -> Result<Vec<IntersectionPoint>> {
    let d = (f.total_degree().unwrap_or(0) * g.total_degree().unwrap_or(0)) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // A resultant of full degree already rules out a common component.
    let Some(proj) = (0..MAX_RETRIES).find_map(|_| project(f, g, d, random_change(&mut rng))) else {
        if !f.gcd(g).is_constant() {
            return Err(Error::NotCoprime);
        }
        return Err(Error::DegenerateProjection(MAX_RETRIES));
    };

    let mut out = Vec::new();
    for (factor, mult) in proj.res.squarefree_decomposition() {
        let (exact, rest) = gaussian_roots(&factor);
        for (t, _) in exact {
            let common = at(&proj.fc, &t).gcd(&at(&proj.gc, &t));
            debug_assert_eq!(common.degree(), Some(1));
            let y2 = -common.coeff(0) / common.coeff(1);
            let x = apply(&proj.a, &[CRational::one(), t, y2]);
            out.push(IntersectionPoint {
                point: Point::exact(x),
                multiplicity: mult,
            });
        }
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (root, _) in certified_roots(&rest, ROOT_TARGET)? {
            let t = root.approx();
            let fv = eval_c64(&proj.fc, t);
            let gv = eval_c64(&proj.gc, t);
            let y2 = aberth(&fv)
                .into_iter()
                .min_by(|a, b| {
                    crate::poly::horner(&gv, *a)
                        .norm()
                        .total_cmp(&crate::poly::horner(&gv, *b).norm())
                })
                .expect("positive degree in y2");
            let x = apply_c64(&proj.a, &[Complex64::one(), t, y2]);
            out.push(IntersectionPoint {
                point: Point::approx_normalized(x, root.radius),
                multiplicity: mult,
            });
        }
    }
    let total: usize = out.iter().map(|p| p.multiplicity).sum();
    if total != d {
        return Err(Error::precondition(format!(
            "intersection multiplicities sum to {total}, expected {d}"
        )));
    }
    out.sort_by(|a, b| point_cmp(&a.point, &b.point));
    Ok(out)
}

/// All intersection points of two coprime curves; multiplicities add up to
/// the product of the degrees.
pub fn intersection_points(c1: &PlaneCurve, c2: &PlaneCurve, seed: u64) -> Result<Vec<IntersectionPoint>> {
    intersect_polys(c1.poly(), c2.poly(), seed)
}

/// Singular points of a reduced curve.
///
/// They lie on every polar curve `Σ aᵢ ∂F/∂xᵢ`, and meet a polar with
/// multiplicity at least 2, so simple intersections are smooth points and
/// only the others need the gradient test.
pub fn singular_points(c: &PlaneCurve, seed: u64) -> Result<Vec<Point>> {
    if c.degree() == 1 {
        return Ok(Vec::new());
    }
    let f = c.poly();
    let partials: Vec<Poly3> = (0..3).map(|v| f.partial(v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..MAX_RETRIES {
        let a: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-5..=5));
        let polar = (0..3).fold(Poly3::zero(3), |acc, v| {
            &acc + &partials[v].scale(&CRational::int(a[v]))
        });
        if polar.is_zero() {
            continue;
        }
        let pts = match intersect_polys(f, &polar, rng.gen()) {
            Err(Error::NotCoprime) => continue,
            r => r?,
        };
        return Ok(pts
            .into_iter()
            .filter(|p| p.multiplicity > 1 && partials.iter().all(|d| vanishes_at(d, &p.point, POINT_TOL)))
            .map(|p| p.point)
            .collect());
    }
    Err(Error::DegenerateProjection(MAX_RETRIES))
}

#[derive(Clone, Debug)]
pub struct NormalCrossingsReport {
    pub smooth: [bool; 3],
    pub singular_points: Vec<(usize, Point)>,
    /// Intersection points per pair `(0,1)`, `(0,2)`, `(1,2)`.
    pub pairs: Vec<((usize, usize), Vec<IntersectionPoint>)>,
    pub non_transversal: Vec<((usize, usize), IntersectionPoint)>,
    pub triple_points: Vec<Point>,
    pub pass: bool,
}

impl NormalCrossingsReport {
    pub fn to_json(&self) -> Value {
        json!({
            "smooth": self.smooth,
            "singular_points": self.singular_points.iter().map(|(i, p)| json!({"curve": i, "point": p.to_json()})).collect::<Vec<_>>(),
            "pairs": self.pairs.iter().map(|((i, j), pts)| json!({
                "curves": [i, j],
                "points": pts.iter().map(IntersectionPoint::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "non_transversal": self.non_transversal.iter().map(|((i, j), p)| json!({
                "curves": [i, j], "point": p.to_json()
            })).collect::<Vec<_>>(),
            "triple_points": self.triple_points.iter().map(Point::to_json).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

/// Smooth components, transversal pairwise intersections, no triple points.
pub fn normal_crossings(conf: &Configuration, seed: u64) -> Result<NormalCrossingsReport> {
    let mut smooth = [true; 3];
    let mut singular = Vec::new();
    for (i, c) in conf.curves.iter().enumerate() {
        let s = singular_points(c, seed.wrapping_add(i as u64))?;
        smooth[i] = s.is_empty();
        singular.extend(s.into_iter().map(|p| (i, p)));
    }
    let mut pairs = Vec::new();
    let mut non_transversal = Vec::new();
    for (k, (i, j)) in [(0usize, 1usize), (0, 2), (1, 2)].into_iter().enumerate() {
        let pts = intersection_points(&conf.curves[i], &conf.curves[j], seed.wrapping_add(10 + k as u64))?;
        non_transversal.extend(pts.iter().filter(|p| p.multiplicity > 1).map(|p| ((i, j), p.clone())));
        pairs.push(((i, j), pts));
    }
    let triple_points: Vec<Point> = pairs[0]
        .1
        .iter()
        .filter(|p| vanishes_at(conf.curves[2].poly(), &p.point, POINT_TOL))
        .map(|p| p.point.clone())
        .collect();
    let pass = smooth.iter().all(|&s| s) && non_transversal.is_empty() && triple_points.is_empty();
    Ok(NormalCrossingsReport {
        smooth,
        singular_points: singular,
        pairs,
        non_transversal,
        triple_points,
        pass,
    })
}
