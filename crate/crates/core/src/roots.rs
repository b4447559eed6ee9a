//! Polynomial root finding: simultaneous Aberth iteration in floating point,
//! followed by exact rational Newton refinement with an inclusion-disk
//! certificate.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{horner, Poly};
use crate::scalar::{rat_to_f64, CRational, ToComplex};

/// All roots of `coeffs` (ascending order, nonzero leading coefficient).
pub fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    let deriv: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();

    // Fujiwara-style radius for the initial circle.
    let radius = (0..n)
        .map(|k| monic[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let p = horner(&monic, z[k]);
            let dp = horner(&deriv, z[k]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d == Complex64::zero() {
                        Complex64::new(1e-300, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::one() - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// A disk `|z - center| <= radius` containing exactly one root of a
/// square-free polynomial.
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub center: CRational,
    pub radius: f64,
}

impl CertifiedRoot {
    pub fn approx(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.center.re), rat_to_f64(&self.center.im))
    }
}

/// `(re + i·im) / 2^scale`
#[derive(Clone, Debug)]
struct Fixed {
    re: BigInt,
    im: BigInt,
    scale: u32,
}

/// `round(a / b)` for `b > 0`.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two_a: BigInt = a << 1usize;
    (two_a + b).div_floor(&(b << 1usize))
}

fn shift(x: &BigInt, by: i64) -> BigInt {
    if by >= 0 {
        x << by as usize
    } else {
        div_round(x, &(BigInt::one() << (-by) as usize))
    }
}

impl Fixed {
    fn from_c64(z: Complex64, scale: u32) -> Self {
        let f = |x: f64| BigInt::from((x * 2f64.powi(scale as i32)).round().to_i128().unwrap_or(0));
        Fixed {
            re: f(z.re),
            im: f(z.im),
            scale,
        }
    }

    fn rescale(&self, scale: u32) -> Self {
        let by = scale as i64 - self.scale as i64;
        Fixed {
            re: shift(&self.re, by),
            im: shift(&self.im, by),
            scale,
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let o = other.rescale(self.scale);
        Fixed {
            re: &self.re - o.re,
            im: &self.im - o.im,
            scale: self.scale,
        }
    }

    fn mul(&self, other: &Self, scale: u32) -> Self {
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        let by = scale as i64 - (self.scale + other.scale) as i64;
        Fixed {
            re: shift(&re, by),
            im: shift(&im, by),
            scale,
        }
    }

    /// `self / other` rounded to `scale` bits.
    fn div(&self, other: &Self, scale: u32) -> Option<Self> {
        let den = &other.re * &other.re + &other.im * &other.im;
        if den.is_zero() {
            return None;
        }
        let re = &self.re * &other.re + &self.im * &other.im;
        let im = &self.im * &other.re - &self.re * &other.im;
        let by = scale as i64 + other.scale as i64 - self.scale as i64;
        let lift = |x: BigInt| if by >= 0 { x << by as usize } else { x };
        let drop = |x: BigInt| if by >= 0 { x } else { shift(&x, by) };
        Some(Fixed {
            re: drop(div_round(&lift(re), &den)),
            im: drop(div_round(&lift(im), &den)),
            scale,
        })
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn to_crational(&self) -> CRational {
        let d = BigInt::one() << self.scale as usize;
        CRational::new(
            BigRational::new(self.re.clone(), d.clone()),
            BigRational::new(self.im.clone(), d),
        )
    }
}

/// A polynomial with its denominators cleared, as Gaussian integer
/// coefficients, for fast exact evaluation at dyadic points.
struct IntPoly {
    re: Vec<BigInt>,
    im: Vec<BigInt>,
}

impl IntPoly {
    fn new(p: &Poly) -> Self {
        let l = p.coeffs().iter().fold(BigInt::one(), |l, c| {
            let l = l.lcm(c.re.denom());
            l.lcm(c.im.denom())
        });
        let int = |q: &BigRational| (q * BigRational::from_integer(l.clone())).to_integer();
        IntPoly {
            re: p.coeffs().iter().map(|c| int(&c.re)).collect(),
            im: p.coeffs().iter().map(|c| int(&c.im)).collect(),
        }
    }

    fn derivative(&self) -> Self {
        let d = |v: &[BigInt]| v.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
        IntPoly {
            re: d(&self.re),
            im: d(&self.im),
        }
    }

    /// `2^(scale·deg) · p(z)` as a Gaussian integer.
    fn eval(&self, z: &Fixed) -> (BigInt, BigInt) {
        let n = self.re.len();
        let (mut ar, mut ai) = (BigInt::zero(), BigInt::zero());
        for k in (0..n).rev() {
            let sh = z.scale as usize * (n - 1 - k);
            let (nr, ni) = (&ar * &z.re - &ai * &z.im, &ar * &z.im + &ai * &z.re);
            ar = nr + (&self.re[k] << sh);
            ai = ni + (&self.im[k] << sh);
        }
        (ar, ai)
    }
}

/// Newton step `p(z)/p'(z)` at `scale` bits, and the squared inclusion
/// radius `deg²·|p/p'|²` exactly. `None` at a critical point.
fn newton_step(p: &IntPoly, dp: &IntPoly, z: &Fixed, scale: u32) -> Option<(Fixed, BigRational)> {
    let n = p.re.len() - 1;
    let (pr, pi) = p.eval(z);
    // p(z) = P / 2^(s·n), p'(z) = D / 2^(s·(n-1)), so p/p' = P / (D·2^s)
    let (dr, di) = dp.eval(z);
    let num = Fixed {
        re: pr,
        im: pi,
        scale: z.scale,
    };
    let den = Fixed {
        re: dr,
        im: di,
        scale: 0,
    };
    if den.is_zero() {
        return None;
    }
    let abs_p = &num.re * &num.re + &num.im * &num.im;
    let abs_d = &den.re * &den.re + &den.im * &den.im;
    let r_sq = BigRational::new(abs_p * BigInt::from(n * n), abs_d << (2 * z.scale as usize));
    Some((num.div(&den, scale)?, r_sq))
}

/// Refines `approx` toward a root of the square-free polynomial `p` by
/// Newton steps in exact fixed-point arithmetic until the Newton inclusion
/// radius `deg·|p/p'|` drops below `target`.
pub fn certify(p: &Poly, approx: Complex64, target: f64) -> Option<CertifiedRoot> {
    p.degree()?;
    let ip = IntPoly::new(p);
    let dp = ip.derivative();
    let target_sq = BigRational::from_float(target * target)?;
    let mut z = Fixed::from_c64(approx, 60);
    for _ in 0..12 {
        // Newton doubles the correct digits; keep the grid a step ahead.
        let bits = (z.scale * 2).min(512);
        let (step, r_sq) = newton_step(&ip, &dp, &z, bits)?;
        if r_sq < target_sq {
            let radius = rat_to_f64(&r_sq).sqrt();
            return Some(CertifiedRoot {
                center: z.to_crational(),
                radius,
            });
        }
        z = z.rescale(bits).sub(&step);
    }
    None
}

fn disjoint(roots: &[CertifiedRoot]) -> bool {
    (0..roots.len())
        .all(|i| (0..i).all(|j| (roots[i].approx() - roots[j].approx()).norm() > roots[i].radius + roots[j].radius))
}

/// Simultaneous Aberth steps in exact fixed-point arithmetic. Unlike
/// independent Newton runs, the mutual repulsion keeps approximations of
/// nearby roots apart. The correction only steers the iteration;
/// certification uses the exact Newton radius.
fn aberth_exact(p: &Poly, approx: &[Complex64], target: f64) -> Option<Vec<CertifiedRoot>> {
    let n = approx.len();
    let ip = IntPoly::new(p);
    let dp = ip.derivative();
    let target_sq = BigRational::from_float(target * target)?;
    let mut z: Vec<Fixed> = approx.iter().map(|&a| Fixed::from_c64(a, 60)).collect();
    for _ in 0..40 {
        let bits = (z[0].scale * 2).min(512);
        let one = Fixed {
            re: BigInt::one() << bits as usize,
            im: BigInt::zero(),
            scale: bits,
        };
        let mut radii = Vec::with_capacity(n);
        let mut next = Vec::with_capacity(n);
        for k in 0..n {
            let Some((ratio, r_sq)) = newton_step(&ip, &dp, &z[k], bits) else {
                radii.push(None);
                next.push(z[k].rescale(bits));
                continue;
            };
            radii.push((r_sq < target_sq).then(|| rat_to_f64(&r_sq).sqrt()));
            let mut sum = Fixed {
                re: BigInt::zero(),
                im: BigInt::zero(),
                scale: bits,
            };
            for j in (0..n).filter(|&j| j != k) {
                if let Some(inv) = one.div(&z[k].sub(&z[j]), bits) {
                    sum = Fixed {
                        re: sum.re + inv.re,
                        im: sum.im + inv.im,
                        scale: bits,
                    };
                }
            }
            let denom = one.sub(&ratio.mul(&sum, bits));
            let w = ratio.div(&denom, bits).unwrap_or(ratio);
            next.push(z[k].rescale(bits).sub(&w));
        }
        if radii.iter().all(Option::is_some) {
            let roots: Vec<CertifiedRoot> = z
                .iter()
                .zip(&radii)
                .map(|(c, r)| CertifiedRoot {
                    center: c.to_crational(),
                    radius: r.unwrap(),
                })
                .collect();
            if disjoint(&roots) {
                return Some(roots);
            }
        }
        z = next;
    }
    None
}

/// Roots of an exact polynomial with multiplicities, each certified to an
/// inclusion radius below `target`, with pairwise disjoint disks.
pub fn certified_roots(p: &Poly, target: f64) -> Result<Vec<(CertifiedRoot, usize)>> {
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let approx = aberth(&factor.to_c64());
        let newton: Option<Vec<CertifiedRoot>> = approx.iter().map(|&z| certify(&factor, z, target)).collect();
        let roots = match newton.filter(|r| disjoint(r)) {
            Some(r) => r,
            None => aberth_exact(&factor, &approx, target).ok_or(Error::NoConvergence {
                estimate: 0.0,
                error: target,
                points: approx.len(),
            })?,
        };
        out.extend(roots.into_iter().map(|r| (r, mult)));
    }
    Ok(out)
}

/// Gaussian-rational roots of `p`, found numerically and verified exactly.
/// Returns the roots with multiplicity and the cofactor free of such roots.
pub fn gaussian_roots(p: &Poly) -> (Vec<(CRational, usize)>, Poly) {
    let mut rest = p.clone();
    let mut found: Vec<(CRational, usize)> = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return (found, rest);
    }
    for z in aberth(&p.squarefree_part().to_c64()) {
        for max_den in [1i64, 12, 1 << 10, 1 << 20] {
            let Some(c) = CRational::rationalize(z, max_den) else {
                continue;
            };
            if (c.to_c64() - z).norm() > 1e-6 * (1.0 + z.norm()) {
                continue;
            }
            if found.iter().any(|(r, _)| *r == c) {
                break;
            }
            let lin = Poly::new(vec![-c.clone(), CRational::one()]);
            let mut mult = 0;
            while let Some(q) = rest.exact_div(&lin) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                found.push((c, mult));
                break;
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    (found, rest)
}
