//! Sparse multivariate polynomials over an exact field.
//!
//! Monomials are exponent vectors ordered lexicographically with variable 0
//! most significant; the leading term is the lexicographically largest.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::poly::UPoly;
use crate::scalar::{Field, ToComplex};

#[derive(Clone, PartialEq)]
pub struct MPoly<F> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn term(nvars: usize, exps: Vec<u32>, c: F) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { nvars, terms }
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, F::one())
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<u32>, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: F) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn coeff(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self) -> Option<(&Vec<u32>, &F)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c.clone() * F::from_i64(e[var] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes polynomial `subs[i]` (all in `m` variables) for `x_i`.
    pub fn compose(&self, subs: &[MPoly<F>]) -> MPoly<F> {
        assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map_or(0, |s| s.nvars);
        let mut cache: Vec<Vec<MPoly<F>>> = subs.iter().map(|s| vec![MPoly::one(m), s.clone()]).collect();
        let mut out = MPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &subs[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Specializes variable `var` to the value `v`, keeping the variable slot.
    pub fn specialize(&self, var: usize, v: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e[var] {
                t = t * v.clone();
            }
            let mut ne = e.clone();
            ne[var] = 0;
            out.add_term(ne, t);
        }
        out
    }

    /// Univariate polynomial in `var` when every other variable is absent.
    pub fn to_univariate(&self, var: usize) -> Option<UPoly<F>> {
        let mut v = vec![F::zero(); self.degree_in(var).map_or(0, |d| d as usize + 1)];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k != 0) {
                return None;
            }
            v[e[var] as usize] = c.clone();
        }
        Some(UPoly::new(v))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Coefficients with respect to `var`: `self = Σ_k out[k]·x_var^k`.
    fn coeffs_in(&self, var: usize) -> Vec<MPoly<F>> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[var] as usize;
            ne[var] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    fn from_coeffs_in(nvars: usize, var: usize, cs: &[MPoly<F>]) -> Self {
        let mut out = MPoly::zero(nvars);
        for (k, c) in cs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut ne = e.clone();
                ne[var] += k as u32;
                out.add_term(ne, a.clone());
            }
        }
        out
    }

    fn highest_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.terms.keys().any(|e| e[v] > 0))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (lead_e, lead_c) = d.leading_term()?;
        let lead_inv = lead_c.inv();
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term() {
            if !e.iter().zip(lead_e).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c.clone() * lead_inv.clone();
            let t = MPoly::term(self.nvars, qe.clone(), qc.clone());
            rem = &rem - &(&t * d);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Normalizes to leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Monic greatest common divisor, by recursive content/primitive-part
    /// splitting and primitive pseudo-remainder sequences.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let var = match (self.highest_var(), other.highest_var()) {
            (None, _) | (_, None) => return MPoly::one(self.nvars),
            (Some(a), Some(b)) => a.max(b),
        };
        let (ca, pa) = self.content_primitive(var);
        let (cb, pb) = other.content_primitive(var);
        let c = ca.gcd(&cb);
        let mut r0 = pa;
        let mut r1 = pb;
        if r0.degree_in(var) < r1.degree_in(var) {
            std::mem::swap(&mut r0, &mut r1);
        }
        loop {
            if r1.degree_in(var).unwrap_or(0) == 0 {
                // r1 primitive and free of var: it is a unit in this ring.
                r1 = if r1.is_zero() { r0 } else { MPoly::one(self.nvars) };
                break;
            }
            let r = r0.pseudo_rem(&r1, var);
            if r.is_zero() {
                break;
            }
            r0 = r1;
            r1 = r.content_primitive(var).1;
        }
        (&c * &r1).monic()
    }

    fn content_primitive(&self, var: usize) -> (Self, Self) {
        let cs = self.coeffs_in(var);
        let mut content = MPoly::zero(self.nvars);
        for c in &cs {
            content = content.gcd(c);
            if content.is_constant() && !content.is_zero() {
                break;
            }
        }
        let prim = MPoly::from_coeffs_in(
            self.nvars,
            var,
            &cs.iter()
                .map(|c| c.exact_div(&content).expect("content divides"))
                .collect::<Vec<_>>(),
        );
        (content, prim)
    }

    fn pseudo_rem(&self, d: &Self, var: usize) -> Self {
        let dd = d.degree_in(var).unwrap_or(0);
        let dcs = d.coeffs_in(var);
        let lc = dcs.last().unwrap().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var).unwrap_or(0) >= dd {
            let rd = r.degree_in(var).unwrap();
            let rcs = r.coeffs_in(var);
            let rlc = rcs.last().unwrap().clone();
            let mut shift = vec![0; self.nvars];
            shift[var] = rd - dd;
            r = &(&r * &lc) - &(&rlc * &d.mul_monomial(&shift));
        }
        r
    }
}

impl<F: Field + ToComplex> MPoly<F> {
    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_c64();
            for (x, &k) in point.iter().zip(e) {
                t *= x.powu(k);
            }
            acc += t;
        }
        acc
    }

    pub fn to_c64(&self) -> MPoly64 {
        MPoly64 {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.to_c64())).collect(),
        }
    }
}

/// Floating-point shadow of an exact polynomial for fast evaluation.
#[derive(Clone, Debug)]
pub struct MPoly64 {
    pub terms: Vec<(Vec<u32>, Complex64)>,
}

impl MPoly64 {
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(point).fold(*c, |acc, (&k, x)| acc * x.powu(k)))
            .sum()
    }

    /// Sum of absolute values of the terms at `point`.
    pub fn magnitude(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.norm(), |acc, (&k, x)| acc * x.norm().powi(k as i32))
            })
            .sum()
    }
}

impl<F: Field> Add for &MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, o: &MPoly<F>) -> MPoly<F> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, o: &MPoly<F>) -> MPoly<F> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Mul for &MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, o: &MPoly<F>) -> MPoly<F> {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field + fmt::Display> MPoly<F> {
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let cs = format!("{c}");
            parts.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", cs, mono.join("*"))
            });
        }
        parts.join(" + ")
    }
}

impl<F: Field + fmt::Display> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.render(&refs))
    }
}
