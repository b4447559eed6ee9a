//! Combinatorial analysis of an irreducible curve `A` of degree `d₀` meeting
//! three smooth curves, crossing normally, in exactly two points `P`, `Q`.
//!
//! Each curve `C_j` meets `A` with total multiplicity `d_j·d₀`. At a point
//! where `A` is transversal to `C_j` the local number is the multiplicity of
//! `A` there; where it is tangent the local number is strictly larger. Since
//! the curves cross transversally, `A` is tangent to at most one of them at
//! each point. The genus bound `m_P(m_P−1) + m_Q(m_Q−1) ≤ (d₀−1)(d₀−2)`
//! closes the argument.

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PunctureCase {
    pub d0: u32,
    pub m_p: u32,
    pub m_q: u32,
    /// Curves (0-based) through `P` and through `Q`.
    pub on_p: Vec<usize>,
    pub on_q: Vec<usize>,
    /// The curve `A` is tangent to at `P`, resp. `Q`, if any.
    pub tangent_p: Option<usize>,
    pub tangent_q: Option<usize>,
}

impl PunctureCase {
    pub fn to_json(&self) -> Value {
        json!({
            "d0": self.d0,
            "m_P": self.m_p,
            "m_Q": self.m_q,
            "P_on": self.on_p,
            "Q_on": self.on_q,
            "tangent_at_P": self.tangent_p,
            "tangent_at_Q": self.tangent_q,
        })
    }

    /// Multiplicities of `A` at the points lying on curve `j`, and how many
    /// of those points are tangencies.
    fn incidence(&self, j: usize) -> (u64, u64) {
        let mut sum = 0;
        let mut tangent = 0;
        for (on, m, t) in [
            (&self.on_p, self.m_p, self.tangent_p),
            (&self.on_q, self.m_q, self.tangent_q),
        ] {
            if on.contains(&j) {
                sum += m as u64;
                if t == Some(j) {
                    tangent += 1;
                }
            }
        }
        (sum, tangent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `m_P(m_P−1) + m_Q(m_Q−1) > (d₀−1)(d₀−2)`
    Genus { lhs: u64, rhs: u64 },
    /// Curve `curve` cannot meet `A` with total multiplicity `required`:
    /// with no tangency the local multiplicities sum to `sum ≠ required`,
    /// with tangencies they sum to at least `sum + tangent > required`.
    Multiplicity {
        curve: usize,
        sum: u64,
        tangent: u64,
        required: u64,
    },
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Genus { lhs, rhs } => json!({"kind": "genus", "lhs": lhs, "rhs": rhs}),
            Certificate::Multiplicity {
                curve,
                sum,
                tangent,
                required,
            } => json!({
                "kind": "multiplicity", "curve": curve, "sum": sum, "tangent": tangent, "required": required
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseVerdict {
    pub case: PunctureCase,
    /// `None` for a surviving case.
    pub certificate: Option<Certificate>,
}

impl CaseVerdict {
    pub fn impossible(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case.to_json(),
            "verdict": if self.impossible() { "impossible" } else { "survives" },
            "certificate": self.certificate.as_ref().map(Certificate::to_json),
        })
    }
}

fn genus_sides(c: &PunctureCase) -> (u64, u64) {
    let f = |m: u32| m as u64 * (m as u64).saturating_sub(1);
    let d = c.d0 as u64;
    (f(c.m_p) + f(c.m_q), d.saturating_sub(1) * d.saturating_sub(2))
}

fn find_certificate(degrees: [u32; 3], c: &PunctureCase) -> Option<Certificate> {
    let (lhs, rhs) = genus_sides(c);
    if lhs > rhs {
        return Some(Certificate::Genus { lhs, rhs });
    }
    for j in 0..3 {
        let (sum, tangent) = c.incidence(j);
        let required = degrees[j] as u64 * c.d0 as u64;
        let violated = if tangent == 0 {
            sum != required
        } else {
            sum + tangent > required
        };
        if violated {
            return Some(Certificate::Multiplicity {
                curve: j,
                sum,
                tangent,
                required,
            });
        }
    }
    None
}

/// Re-checks a certificate by arithmetic alone.
pub fn verify_certificate(degrees: [u32; 3], case: &PunctureCase, cert: &Certificate) -> bool {
    match cert {
        Certificate::Genus { lhs, rhs } => (*lhs, *rhs) == genus_sides(case) && lhs > rhs,
        Certificate::Multiplicity {
            curve,
            sum,
            tangent,
            required,
        } => {
            *curve < 3
                && (*sum, *tangent) == case.incidence(*curve)
                && *required == degrees[*curve] as u64 * case.d0 as u64
                && if *tangent == 0 {
                    sum != required
                } else {
                    sum + tangent > *required
                }
        }
    }
}

fn incidence_patterns() -> Vec<(Vec<usize>, Vec<usize>)> {
    let subsets: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]];
    let mut out = Vec::new();
    for p in &subsets {
        for q in &subsets {
            let covers = (0..3).all(|j| p.contains(&j) || q.contains(&j));
            if covers {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    out
}

/// Every combinatorial case with `d₀ ≤ d0_max`, each either certified
/// impossible or reported as surviving.
pub fn two_puncture_case_engine(degrees: [u32; 3], d0_max: u32) -> Result<Vec<CaseVerdict>> {
    if degrees.iter().any(|&d| d < 2) || degrees.iter().all(|&d| d < 3) {
        return Err(Error::precondition(
            "degrees must all be at least 2 with at least one of them at least 3",
        ));
    }
    if d0_max == 0 {
        return Err(Error::invalid("d0_max must be positive"));
    }
    let patterns = incidence_patterns();
    let mut out = Vec::new();
    for d0 in 1..=d0_max {
        for m_p in 1..=d0 {
            for m_q in 1..=d0 {
                for (on_p, on_q) in &patterns {
                    let tp: Vec<Option<usize>> = std::iter::once(None).chain(on_p.iter().map(|&j| Some(j))).collect();
                    let tq: Vec<Option<usize>> = std::iter::once(None).chain(on_q.iter().map(|&j| Some(j))).collect();
                    for &tangent_p in &tp {
                        for &tangent_q in &tq {
                            let case = PunctureCase {
                                d0,
                                m_p,
                                m_q,
                                on_p: on_p.clone(),
                                on_q: on_q.clone(),
                                tangent_p,
                                tangent_q,
                            };
                            let certificate = find_certificate(degrees, &case);
                            out.push(CaseVerdict { case, certificate });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
