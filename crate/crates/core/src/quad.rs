//! Adaptive trapezoidal rule for periodic integrands.
//!
//! The trapezoidal rule on equispaced nodes converges geometrically for
//! smooth periodic functions, so the node count is doubled (reusing the old
//! nodes) until two successive estimates agree.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const MIN_NODES: usize = 64;
pub const MAX_NODES: usize = 1 << 22;

/// Below this many new nodes per level, evaluation stays on one thread.
const PAR_THRESHOLD: usize = 4096;

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
}

fn eval_sum<F>(f: &F, offset: f64, h: f64, count: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let values: Vec<f64> = if count >= PAR_THRESHOLD {
        (0..count)
            .into_par_iter()
            .map(|k| f(offset + h * k as f64))
            .collect::<Result<Vec<_>>>()?
    } else {
        (0..count)
            .map(|k| f(offset + h * k as f64))
            .collect::<Result<Vec<_>>>()?
    };
    // Summed sequentially so the result does not depend on thread scheduling.
    Ok(values.iter().sum())
}

/// Mean value `(1/2π) ∫_0^{2π} f(θ) dθ`, stopping when successive estimates
/// differ by less than `tol · max(1, |estimate|)`.
pub fn periodic_mean<F>(f: F, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut n = MIN_NODES;
    let mut sum = eval_sum(&f, 0.0, two_pi / n as f64, n)?;
    let mut estimate = sum / n as f64;
    loop {
        let h = two_pi / n as f64;
        sum += eval_sum(&f, 0.5 * h, h, n)?;
        n *= 2;
        let next = sum / n as f64;
        if !next.is_finite() {
            return Err(Error::NoConvergence {
                estimate: next,
                error: f64::INFINITY,
                points: n,
            });
        }
        let err = (next - estimate).abs();
        if err < tol * next.abs().max(1.0) {
            return Ok(QuadResult {
                value: next,
                error: err,
                nodes: n,
            });
        }
        if n >= MAX_NODES {
            return Err(Error::NoConvergence {
                estimate: next,
                error: err,
                points: n,
            });
        }
        estimate = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_periodic_integrand_is_exact_quickly() {
        // mean of exp(cos θ) is I_0(1)
        let r = periodic_mean(|t: f64| Ok(t.cos().exp()), 1e-13).unwrap();
        assert!((r.value - 1.266_065_877_752_008_4).abs() < 1e-13);
        assert!(r.nodes <= 256);
    }

    #[test]
    fn kinked_integrand_converges() {
        // mean of max(0, cos θ) is 1/π
        let r = periodic_mean(|t: f64| Ok(t.cos().max(0.0)), 1e-9).unwrap();
        assert!((r.value - 1.0 / std::f64::consts::PI).abs() < 1e-8);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let e = periodic_mean(|_| Ok(f64::NAN), 1e-8).unwrap_err();
        assert!(matches!(e, Error::NoConvergence { .. }));
    }
}
