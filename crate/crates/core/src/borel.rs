//! Degeneracy analysis of exponential identities
//!
//! ```text
//! Σ c·(p₁')^i (p₂')^{M−i} · exp((i+j)·p₁ + (M−i+k)·p₂) ≡ 0
//! ```
//!
//! Terms are split into classes whose quotients are rational (equal exponents
//! up to a constant). A vanishing sum splits into minimal vanishing subsets,
//! each inside one class. Inside a class the identity becomes a homogeneous
//! form in `(p₁', p₂')`; one of its linear factors must kill `(p₁', p₂')`,
//! which yields `λ·p₁' = γ·p₂'`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expfun::ExpPoly;
use crate::nevanlinna::{self, HomDivisor, ProjCurve, SmtReport};
use crate::poly::Poly;
use crate::roots::gaussian_roots;
use crate::scalar::CRational;

/// Hard cap on the size of one class in the minimal-subset search.
pub const CLASS_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub coeff: CRational,
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpSum {
    pub m: u32,
    pub p1: Poly,
    pub p2: Poly,
    pub terms: Vec<ExpTerm>,
}

impl ExpSum {
    pub fn new(m: u32, p1: Poly, p2: Poly, terms: Vec<ExpTerm>) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("M must be positive"));
        }
        if let Some(t) = terms.iter().find(|t| t.i > m) {
            return Err(Error::invalid(format!("term index i = {} exceeds M = {m}", t.i)));
        }
        Ok(ExpSum { m, p1, p2, terms })
    }

    fn subset(&self, idx: &[usize]) -> ExpSum {
        ExpSum {
            m: self.m,
            p1: self.p1.clone(),
            p2: self.p2.clone(),
            terms: idx.iter().map(|&i| self.terms[i].clone()).collect(),
        }
    }

    /// `(i+j)·p₁ + (M−i+k)·p₂`
    pub fn exponent(&self, t: &ExpTerm) -> Poly {
        let a = CRational::int((t.i + t.j) as i64);
        let b = CRational::int((self.m - t.i + t.k) as i64);
        &self.p1.scale(&a) + &self.p2.scale(&b)
    }

    /// The single summand belonging to `t`.
    pub fn term_function(&self, t: &ExpTerm) -> ExpPoly {
        let d1 = self.p1.derivative();
        let d2 = self.p2.derivative();
        let mono = &d1.pow(t.i) * &d2.pow(self.m - t.i);
        ExpPoly::term(mono.scale(&t.coeff), self.exponent(t))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "M": self.m,
            "p1": self.p1.to_json(),
            "p2": self.p2.to_json(),
            "terms": self.terms.iter().map(|t| json!({
                "coeff": t.coeff.to_json(), "i": t.i, "j": t.j, "k": t.k
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get_u32 = |o: &Value, key: &str| -> Result<u32> {
            o.get(key)
                .and_then(Value::as_u64)
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| Error::schema(format!("\"{key}\" must be a nonnegative integer")))
        };
        let m = get_u32(v, "M")?;
        let p1 = Poly::from_json(v.get("p1").ok_or_else(|| Error::schema("missing \"p1\""))?)?;
        let p2 = Poly::from_json(v.get("p2").ok_or_else(|| Error::schema("missing \"p2\""))?)?;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::schema("missing \"terms\" array"))?
            .iter()
            .map(|t| {
                Ok(ExpTerm {
                    coeff: CRational::from_json(t.get("coeff").ok_or_else(|| Error::schema("term lacks \"coeff\""))?)?,
                    i: get_u32(t, "i")?,
                    j: get_u32(t, "j")?,
                    k: get_u32(t, "k")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, p1, p2, terms)
    }
}

pub fn realize(sum: &ExpSum) -> ExpPoly {
    sum.terms
        .iter()
        .fold(ExpPoly::zero(), |acc, t| acc.add(&sum.term_function(t)))
}

/// Term indices grouped by exponent modulo constants, in order of first
/// appearance.
pub fn partition_classes(sum: &ExpSum) -> Vec<Vec<usize>> {
    let mut keys: Vec<Poly> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (idx, t) in sum.terms.iter().enumerate() {
        let key = sum.exponent(t).without_constant();
        match keys.iter().position(|k| *k == key) {
            Some(g) => groups[g].push(idx),
            None => {
                keys.push(key);
                groups.push(vec![idx]);
            }
        }
    }
    groups
}

fn subsets_of_size(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// Inclusion-minimal vanishing subsets, as index lists into `sum.terms`.
///
/// A vanishing sum minus a vanishing subset still vanishes, so every
/// vanishing class is a disjoint union of minimal ones and the returned
/// subsets cover all terms.
pub fn minimal_vanishing_indices(sum: &ExpSum) -> Result<Vec<Vec<usize>>> {
    if !realize(sum).is_zero() {
        return Err(Error::NotAnIdentity);
    }
    let mut out = Vec::new();
    for class in partition_classes(sum) {
        if class.len() > CLASS_CAP {
            return Err(Error::ClassTooLarge {
                size: class.len(),
                cap: CLASS_CAP,
            });
        }
        let funcs: Vec<ExpPoly> = class.iter().map(|&i| sum.term_function(&sum.terms[i])).collect();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut covered = vec![false; class.len()];
        for size in 1..=class.len() {
            if covered.iter().all(|&c| c) {
                break;
            }
            subsets_of_size(class.len(), size, &mut |s| {
                if found.iter().any(|f| f.iter().all(|x| s.contains(x))) {
                    return;
                }
                let total = s.iter().fold(ExpPoly::zero(), |acc, &i| acc.add(&funcs[i]));
                if total.is_zero() {
                    for &i in s {
                        covered[i] = true;
                    }
                    found.push(s.to_vec());
                }
            });
        }
        debug_assert!(covered.iter().all(|&c| c), "vanishing class must be covered");
        out.extend(found.into_iter().map(|s| s.iter().map(|&i| class[i]).collect()));
    }
    Ok(out)
}

pub fn minimal_vanishing_subsets(sum: &ExpSum) -> Result<Vec<ExpSum>> {
    Ok(minimal_vanishing_indices(sum)?.iter().map(|s| sum.subset(s)).collect())
}

#[derive(Clone, Debug)]
pub struct Case1Report {
    pub l: usize,
    pub classes: usize,
    /// Whether the summands add up to zero exactly.
    pub vanishing: bool,
    pub refuted: bool,
    pub reason: String,
    pub radii: Vec<f64>,
    pub characteristic: Vec<f64>,
    /// `Σ_i N(ψ_i = 0, r)`, zeros of the individual summands.
    pub counting_sum: Vec<f64>,
    /// Least-squares fit `T ≈ a·log r + b` and its relative residual.
    pub log_fit: (f64, f64),
    pub log_fit_residual_rel: f64,
    /// `Σ N(ψ_i) + log r + 1`: the logarithmic growth the Second Main
    /// Theorem would force on `T` if the summands added up to zero.
    pub forced_bound: Vec<f64>,
    /// `T / forced_bound` at the largest radius.
    pub dominance_ratio: f64,
    /// Second Main Theorem check in the hyperplane `Σz = 0`, for vanishing
    /// witnesses.
    pub smt: Option<SmtReport>,
}

impl Case1Report {
    pub fn to_json(&self) -> Value {
        json!({
            "L": self.l,
            "classes": self.classes,
            "vanishing": self.vanishing,
            "refuted": self.refuted,
            "reason": self.reason,
            "radii": self.radii,
            "characteristic": self.characteristic,
            "counting_sum": self.counting_sum,
            "log_fit": {"a": self.log_fit.0, "b": self.log_fit.1},
            "log_fit_residual_rel": self.log_fit_residual_rel,
            "forced_bound": self.forced_bound,
            "dominance_ratio": self.dominance_ratio,
            "smt": self.smt.as_ref().map(SmtReport::to_json),
        })
    }
}

fn exponent_class_count(psi: &[ExpPoly]) -> usize {
    let mut keys: Vec<Vec<Poly>> = psi.iter().map(ExpPoly::exponents).collect();
    keys.sort();
    keys.dedup();
    keys.len()
}

/// Growth evidence against `Σ ψ_i ≡ 0` for summands with a non-rational
/// quotient.
pub fn case1_witness(psi: &[ExpPoly], radii: &[f64], tol: f64) -> Result<Case1Report> {
    let l = psi.len();
    if l < 2 {
        return Err(Error::precondition("need at least two summands"));
    }
    if psi.iter().any(ExpPoly::is_zero) {
        return Err(Error::precondition("a summand vanishes identically"));
    }
    let classes = exponent_class_count(psi);
    let vanishing = psi.iter().fold(ExpPoly::zero(), |a, p| a.add(p)).is_zero();
    let curve = ProjCurve::new(psi.to_vec())?;
    let characteristic = radii
        .iter()
        .map(|&r| nevanlinna::characteristic(&curve, r, tol))
        .collect::<Result<Vec<_>>>()?;
    let mut counting_sum = vec![0.0; radii.len()];
    for p in psi {
        let c = nevanlinna::zero_counting(p, radii, nevanlinna::DEFAULT_JUMP_TOL)?;
        for (s, v) in counting_sum.iter_mut().zip(c.values) {
            *s += v;
        }
    }
    let logr: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let log_fit = nevanlinna::linear_fit(&logr, &characteristic);
    let tmax = characteristic
        .iter()
        .cloned()
        .fold(0.0f64, |a, b| a.max(b.abs()))
        .max(1.0);
    let log_fit_residual_rel = logr
        .iter()
        .zip(&characteristic)
        .map(|(x, t)| (t - (log_fit.0 * x + log_fit.1)).abs())
        .fold(0.0, f64::max)
        / tmax;
    let forced_bound: Vec<f64> = counting_sum.iter().zip(&logr).map(|(n, x)| n + x + 1.0).collect();
    let last = radii.len() - 1;
    let dominance_ratio = characteristic[last] / forced_bound[last];

    let smt = if vanishing && l >= 3 {
        // Inside H = {Σz = 0} use coordinates z_1..z_{L-1}; the L hyperplanes
        // are z_i = 0 and z_1 + … + z_{L-1} = 0 (the trace of z_L = 0).
        let inner = ProjCurve::new(psi[..l - 1].to_vec())?;
        let mut hs = Vec::with_capacity(l);
        for i in 0..l - 1 {
            let mut c = vec![CRational::zero(); l - 1];
            c[i] = CRational::one();
            hs.push(HomDivisor::linear(&c)?);
        }
        hs.push(HomDivisor::linear(&vec![CRational::one(); l - 1])?);
        Some(nevanlinna::smt_check(&inner, &hs, radii, tol)?)
    } else {
        None
    };

    let refuted = classes >= 2 && log_fit_residual_rel > 0.05 && dominance_ratio > 1.0;
    let reason = if refuted {
        "T(Ψ, r) outgrows every bound of the form C·log r, so the summands cannot add up to zero".to_string()
    } else {
        "growth data do not exclude a vanishing sum".to_string()
    };
    Ok(Case1Report {
        l,
        classes,
        vanishing,
        refuted,
        reason,
        radii: radii.to_vec(),
        characteristic,
        counting_sum,
        log_fit,
        log_fit_residual_rel,
        forced_bound,
        dominance_ratio,
        smt,
    })
}

/// Refutation of a Case 1 configuration: a set of summands containing two
/// whose quotient is not rational.
pub fn case1_refute(subset: &ExpSum, radii: &[f64], tol: f64) -> Result<Case1Report> {
    let classes = partition_classes(subset);
    if classes.len() < 2 {
        return Err(Error::precondition(
            "all terms lie in one exponent class: this is not Case 1",
        ));
    }
    let psi: Vec<ExpPoly> = subset.terms.iter().map(|t| subset.term_function(t)).collect();
    if subset.terms.len() == 2 {
        return Ok(Case1Report {
            l: 2,
            classes: 2,
            vanishing: psi[0].add(&psi[1]).is_zero(),
            refuted: true,
            reason: "two summands: their quotient would be exp of a nonconstant polynomial equal to a rational function, which is impossible".to_string(),
            radii: Vec::new(),
            characteristic: Vec::new(),
            counting_sum: Vec::new(),
            log_fit: (0.0, 0.0),
            log_fit_residual_rel: 0.0,
            forced_bound: Vec::new(),
            dominance_ratio: f64::INFINITY,
            smt: None,
        });
    }
    case1_witness(&psi, radii, tol)
}

/// Linear factorization of a binary form `Σ c_i x^i y^{M−i}` over Q(i).
#[derive(Clone, Debug, PartialEq)]
pub struct HomFactorization {
    pub degree: u32,
    pub leading: CRational,
    /// Factors `λx − γy` as `(λ, γ)` with multiplicity.
    pub linear: Vec<((CRational, CRational), usize)>,
    /// Monic factor of `F(t, 1)` without roots in Q(i).
    pub residual: Poly,
}

impl HomFactorization {
    /// Expands the factorization back into coefficients `c_0..c_M`.
    pub fn reconstruct(&self) -> Vec<CRational> {
        // Work with the dehomogenization F(t,1); a factor y contributes
        // only to the degree.
        let mut f = Poly::constant(self.leading.clone());
        for ((l, g), mult) in &self.linear {
            if l.is_zero() {
                continue;
            }
            let lin = Poly::new(vec![-g.clone(), l.clone()]);
            f = &f * &lin.pow(*mult as u32);
        }
        f = &f * &self.residual;
        (0..=self.degree as usize).map(|i| f.coeff(i)).collect()
    }
}

/// Factors the form; `hints` are candidate roots of `F(t, 1)` tried exactly
/// before the numerical search.
pub fn factor_homogeneous(coeffs: &[CRational], hints: &[CRational]) -> Result<HomFactorization> {
    let degree = coeffs
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::invalid("empty form"))? as u32;
    let mut f = Poly::new(coeffs.to_vec());
    let Some(lead) = f.leading().cloned() else {
        return Err(Error::invalid("the form vanishes identically"));
    };
    let d = f.degree().unwrap() as u32;
    let mut linear: Vec<((CRational, CRational), usize)> = Vec::new();
    if d < degree {
        // Roots at infinity: y divides F.  λx − γy = y means (λ, γ) = (0, −1).
        linear.push(((CRational::zero(), -CRational::one()), (degree - d) as usize));
    }
    f = f.monic();
    for h in hints {
        let lin = Poly::new(vec![-h.clone(), CRational::one()]);
        let mut mult = 0;
        while let Some(q) = f.exact_div(&lin) {
            f = q;
            mult += 1;
        }
        if mult > 0 {
            linear.push(((CRational::one(), h.clone()), mult));
        }
    }
    let (roots, rest) = gaussian_roots(&f);
    for (rho, mult) in roots {
        linear.push(((CRational::one(), rho), mult));
    }
    Ok(HomFactorization {
        degree,
        leading: lead,
        linear,
        residual: rest.monic(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutcomeKind {
    Case1Contradiction,
    Case2Proportional,
    DegenerateInput,
}

impl OutcomeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutcomeKind::Case1Contradiction => "case1_contradiction",
            OutcomeKind::Case2Proportional => "case2_proportional",
            OutcomeKind::DegenerateInput => "degenerate_input",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisOutcome {
    pub kind: OutcomeKind,
    pub lambda: Option<CRational>,
    pub gamma: Option<CRational>,
    pub witness: Value,
}

impl AnalysisOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "lambda": self.lambda.as_ref().map(CRational::to_json),
            "gamma": self.gamma.as_ref().map(CRational::to_json),
            "witness": self.witness,
        })
    }

    fn degenerate(reason: &str) -> Self {
        AnalysisOutcome {
            kind: OutcomeKind::DegenerateInput,
            lambda: None,
            gamma: None,
            witness: json!({"reason": reason}),
        }
    }
}

/// The 1-form `λ·dξ₁/ξ₁ − γ·dξ₂/ξ₂` as text.
pub fn omega0(lambda: &CRational, gamma: &CRational) -> String {
    format!("{lambda}·dξ₁/ξ₁ − {gamma}·dξ₂/ξ₂")
}

/// `κ` with `p₁' = κ·p₂'`, when it exists.
fn proportionality(d1: &Poly, d2: &Poly) -> Option<CRational> {
    let k = d1.leading()?.clone() / d2.leading()?.clone();
    (*d1 == d2.scale(&k)).then_some(k)
}

/// Case 2: every quotient of two terms is rational.
pub fn case2_conclude(sum: &ExpSum) -> Result<AnalysisOutcome> {
    let d1 = sum.p1.derivative();
    let d2 = sum.p2.derivative();
    if d1.is_zero() || d2.is_zero() {
        return Ok(AnalysisOutcome::degenerate(
            "an exponent polynomial is constant, so the curve is linearly degenerate",
        ));
    }
    if sum.terms.is_empty() {
        return Err(Error::invalid("empty sum"));
    }
    if partition_classes(sum).len() != 1 {
        return Err(Error::precondition(
            "terms lie in different exponent classes: this is not Case 2",
        ));
    }
    // Exponential constants e^δ with distinct δ are independent, so each
    // offset group must vanish on its own.
    let e0 = sum.exponent(&sum.terms[0]);
    let mut groups: BTreeMap<CRational, Vec<CRational>> = BTreeMap::new();
    let mut merged_duplicates = false;
    for t in &sum.terms {
        let delta = (&sum.exponent(t) - &e0).coeff(0);
        let row = groups
            .entry(delta)
            .or_insert_with(|| vec![CRational::zero(); sum.m as usize + 1]);
        let slot = &mut row[t.i as usize];
        if !slot.is_zero() {
            merged_duplicates = true;
        }
        *slot = &*slot + &t.coeff;
    }

    let kappa = proportionality(&d1, &d2);
    let hints: Vec<CRational> = kappa.iter().cloned().collect();
    let mut chosen: Option<(CRational, CRational)> = None;
    let mut forms = Vec::new();
    for (delta, coeffs) in &groups {
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let fac = factor_homogeneous(coeffs, &hints)?;
        let hit = fac
            .linear
            .iter()
            .map(|(lg, _)| lg.clone())
            .find(|(l, g)| (&d1.scale(l) - &d2.scale(g)).is_zero());
        let Some((l, g)) = hit else {
            return Err(Error::InconsistentCase2(format!(
                "no linear factor of the form for offset {delta} annihilates (p1', p2')"
            )));
        };
        forms.push(json!({
            "offset": delta.to_json(),
            "coefficients": coeffs.iter().map(CRational::to_json).collect::<Vec<_>>(),
            "linear_factors": fac.linear.iter().map(|((l, g), m)| json!({
                "lambda": l.to_json(), "gamma": g.to_json(), "multiplicity": m
            })).collect::<Vec<_>>(),
            "residual_factor": fac.residual.to_json(),
        }));
        chosen.get_or_insert((l, g));
    }
    let Some((lambda, gamma)) = chosen else {
        return Err(Error::precondition(
            "the identity cancels term by term: the homogeneous form is zero and carries no information",
        ));
    };
    debug_assert!((&d1.scale(&lambda) - &d2.scale(&gamma)).is_zero());
    Ok(AnalysisOutcome {
        kind: OutcomeKind::Case2Proportional,
        witness: json!({
            "forms": forms,
            "merged_equal_indices": merged_duplicates,
            "relation": format!("{}·p1' − {}·p2' = 0", lambda, gamma),
            "omega0": omega0(&lambda, &gamma),
        }),
        lambda: Some(lambda),
        gamma: Some(gamma),
    })
}

/// Full analysis: classes, minimal subsets, then the case distinction.
pub fn degeneracy_pipeline(sum: &ExpSum, radii: &[f64], tol: f64) -> Result<AnalysisOutcome> {
    if sum.p1.is_constant() || sum.p2.is_constant() {
        return Ok(AnalysisOutcome::degenerate(
            "an exponent polynomial is constant, so the curve is linearly degenerate",
        ));
    }
    let classes = partition_classes(sum);
    let subsets = minimal_vanishing_indices(sum)?;
    let mut case1 = Vec::new();
    let mut case2 = Vec::new();
    let mut first: Option<AnalysisOutcome> = None;
    for idx in &subsets {
        let sub = sum.subset(idx);
        if partition_classes(&sub).len() > 1 {
            let rep = case1_refute(&sub, radii, tol)?;
            case1.push(json!({"terms": idx, "report": rep.to_json()}));
            continue;
        }
        match case2_conclude(&sub) {
            Ok(out) => {
                case2.push(json!({"terms": idx, "outcome": out.to_json()}));
                first.get_or_insert(out);
            }
            Err(Error::Precondition(msg)) => {
                case2.push(json!({"terms": idx, "trivial": msg}));
            }
            Err(e) => return Err(e),
        }
    }
    let witness_common = json!({
        "classes": classes,
        "minimal_subsets": subsets,
        "case1_branches": case1,
        "case2_results": case2,
    });
    match first {
        Some(mut out) => {
            let omega = out.witness["omega0"].clone();
            let mut w = witness_common;
            w["omega0"] = omega;
            out.witness = w;
            Ok(out)
        }
        None if !case1.is_empty() => Ok(AnalysisOutcome {
            kind: OutcomeKind::Case1Contradiction,
            lambda: None,
            gamma: None,
            witness: witness_common,
        }),
        None => Err(Error::precondition(
            "every minimal subset cancels term by term; the identity carries no information",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(c: i64, i: u32, j: u32, k: u32) -> ExpTerm {
        ExpTerm {
            coeff: CRational::int(c),
            i,
            j,
            k,
        }
    }

    fn q(n: i64, d: i64) -> CRational {
        CRational::ratio(n, d)
    }

    #[test]
    fn realize_examples() {
        let s = ExpSum::new(1, Poly::x(), Poly::zero(), vec![term(1, 1, 0, 0)]).unwrap();
        assert_eq!(realize(&s), ExpPoly::exp(Poly::x()));
        let s = ExpSum::new(2, Poly::x().pow(2), Poly::x(), vec![term(1, 1, 0, 0)]).unwrap();
        assert_eq!(
            realize(&s),
            ExpPoly::term(Poly::from_ints(&[0, 2]), Poly::from_ints(&[0, 1, 1]))
        );
    }

    #[test]
    fn classes_merge_proportional_exponents() {
        // p1 = η, p2 = 2η: (i+j, M-i+k) = (2,0) and (0,1) both give 2η
        let s = ExpSum::new(
            1,
            Poly::x(),
            Poly::from_ints(&[0, 2]),
            vec![term(1, 1, 1, 0), term(1, 0, 0, 0)],
        )
        .unwrap();
        assert_eq!(partition_classes(&s), vec![vec![0, 1]]);
    }

    #[test]
    fn case2_recovers_half() {
        // x² − (3/2)xy + (1/2)y² at p1 = η, p2 = 2η
        let mut terms = Vec::new();
        for (i, c) in [(2u32, q(1, 1)), (1, q(-3, 2)), (0, q(1, 2))] {
            terms.push(ExpTerm {
                coeff: c,
                i,
                j: 2 - i,
                k: i,
            });
        }
        let s = ExpSum::new(2, Poly::x(), Poly::from_ints(&[0, 2]), terms).unwrap();
        assert!(realize(&s).is_zero());
        let out = case2_conclude(&s).unwrap();
        assert_eq!(out.kind, OutcomeKind::Case2Proportional);
        assert_eq!(out.lambda, Some(q(1, 1)));
        assert_eq!(out.gamma, Some(q(1, 2)));
    }

    #[test]
    fn factorization_reconstructs() {
        // (x − y)(x − y/2)·(x² + y²)·y
        let coeffs = vec![q(0, 1), q(1, 2), q(-3, 2), q(3, 2), q(-3, 2), q(1, 1)];
        let fac = factor_homogeneous(&coeffs, &[]).unwrap();
        assert_eq!(fac.reconstruct(), coeffs);
        assert_eq!(fac.linear.len(), 5, "{:?}", fac);
    }

    #[test]
    fn minimal_subsets_cover() {
        let s = ExpSum::new(
            1,
            Poly::x(),
            Poly::x().pow(2),
            vec![term(1, 0, 0, 0), term(1, 0, 0, 0), term(-2, 0, 0, 0)],
        )
        .unwrap();
        let subs = minimal_vanishing_indices(&s).unwrap();
        assert_eq!(subs, vec![vec![0, 1, 2]]);
    }
}
