//! Logarithmic Chern numbers of a complete-intersection surface minus three
//! curves cut out by hypersurfaces, and the degeneracy criteria built on them.
//!
//! All arithmetic is in arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::bigint_json;

/// Degrees `a_1..a_r` of the hypersurfaces cutting out the surface in
/// `P_{r+2}` and degrees `b_1, b_2, b_3` of the curves.
///
/// Linear equations are dropped on construction (they only lower the
/// ambient dimension), and the plane is represented as `a = [1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIData {
    a: Vec<u64>,
    pub b: [u64; 3],
}

impl CIData {
    pub fn new(a: &[u64], b: [u64; 3]) -> Result<Self> {
        if a.contains(&0) || b.contains(&0) {
            return Err(Error::invalid("all degrees must be at least 1"));
        }
        Ok(CIData { a: normalize(a), b })
    }

    pub fn plane(b: [u64; 3]) -> Result<Self> {
        Self::new(&[1], b)
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn r(&self) -> i64 {
        self.a.len() as i64
    }

    pub fn is_plane(&self) -> bool {
        self.a == [1]
    }

    /// `A = Π a_i`
    pub fn big_a(&self) -> BigInt {
        self.a.iter().map(|&x| BigInt::from(x)).product()
    }

    /// `a = Σ a_i`
    pub fn sum_a(&self) -> i64 {
        self.a.iter().map(|&x| x as i64).sum()
    }

    /// `b = b_1 + b_2 + b_3`
    pub fn sum_b(&self) -> i64 {
        self.b.iter().map(|&x| x as i64).sum()
    }

    /// `Σ_{i<j} b_i b_j`
    pub fn sigma2(&self) -> i64 {
        let [x, y, z] = self.b.map(|v| v as i64);
        x * y + x * z + y * z
    }
}

fn normalize(a: &[u64]) -> Vec<u64> {
    let v: Vec<u64> = a.iter().copied().filter(|&x| x != 1).collect();
    if v.is_empty() {
        vec![1]
    } else {
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogChernReport {
    pub euler_surface: BigInt,
    /// Topological Euler number from the total Chern class; equals
    /// `euler_surface` when there is a single equation.
    pub euler_surface_topological: BigInt,
    pub euler_components: [BigInt; 3],
    pub euler_c: BigInt,
    pub gamma_sq: BigInt,
    pub c1sq_minus_c2: BigInt,
    pub det_estar_degree: i64,
    /// `C_2·C_3, C_1·C_3, C_1·C_2`
    pub pairwise_intersections: [BigInt; 3],
}

impl LogChernReport {
    /// `c̄₁² − c̄₂ = Γ² − e(X̄) + e(C)`
    pub fn identity_holds(&self) -> bool {
        self.c1sq_minus_c2 == &self.gamma_sq - &self.euler_surface + &self.euler_c
    }

    pub fn to_json(&self) -> Value {
        json!({
            "euler_surface": bigint_json(&self.euler_surface),
            "euler_surface_topological": bigint_json(&self.euler_surface_topological),
            "euler_components": self.euler_components.iter().map(bigint_json).collect::<Vec<_>>(),
            "euler_C": bigint_json(&self.euler_c),
            "gamma_sq": bigint_json(&self.gamma_sq),
            "c1sq_minus_c2": bigint_json(&self.c1sq_minus_c2),
            "det_estar_degree": self.det_estar_degree,
            "pairwise_intersections": self.pairwise_intersections.iter().map(bigint_json).collect::<Vec<_>>(),
        })
    }
}

pub fn invariants(ci: &CIData) -> LogChernReport {
    let big_a = ci.big_a();
    let a = ci.sum_a();
    let r = ci.r();
    let b = ci.sum_b();
    let bi = ci.b.map(|v| v as i64);

    let euler_surface = &big_a * BigInt::from(2 + (a - r - 1) * (a - r - 1));
    let euler_components = bi.map(|bj| &big_a * BigInt::from(bj * (3 + r - a - bj)));
    let pair = |i: usize, j: usize| &big_a * BigInt::from(bi[i] * bi[j]);
    let pairwise_intersections = [pair(1, 2), pair(0, 2), pair(0, 1)];
    let euler_c = euler_components.iter().sum::<BigInt>() - pairwise_intersections.iter().sum::<BigInt>();
    let g = a + b - r - 3;
    let gamma_sq = &big_a * BigInt::from(g * g);
    let c1sq_minus_c2 = &big_a * BigInt::from((a - r - 3) * (b - 4) - 6 + ci.sigma2());
    LogChernReport {
        euler_surface,
        euler_surface_topological: topological_euler(ci.a()),
        euler_components,
        euler_c,
        gamma_sq,
        c1sq_minus_c2,
        det_estar_degree: a + b - 3 - r,
        pairwise_intersections,
    }
}

/// `c₂` of the complete intersection: `A·[H²] (1+H)^{r+3} / Π(1+a_i H)`.
pub fn topological_euler(a: &[u64]) -> BigInt {
    let n = a.len() as i64 + 3;
    // Series of 1/Π(1 + a_i H) up to H².
    let mut inv = [BigInt::one(), BigInt::zero(), BigInt::zero()];
    for &ai in a {
        let ai = BigInt::from(ai);
        let c1 = &inv[1] - &ai * &inv[0];
        let c2 = &inv[2] - &ai * &c1;
        inv = [inv[0].clone(), c1, c2];
    }
    let binom = [BigInt::one(), BigInt::from(n), BigInt::from(n * (n - 1) / 2)];
    let c2 = &binom[2] * &inv[0] + &binom[1] * &inv[1] + &binom[0] * &inv[2];
    c2 * a.iter().map(|&x| BigInt::from(x)).product::<BigInt>()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DegeneracyCase {
    A,
    B,
    C,
    None,
}

impl fmt::Display for DegeneracyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegeneracyCase::A => "a",
            DegeneracyCase::B => "b",
            DegeneracyCase::C => "c",
            DegeneracyCase::None => "none",
        })
    }
}

/// Hypotheses that are supplied by the caller rather than computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    /// The Picard group of the surface is generated by the hyperplane class.
    pub pic_is_z: bool,
    /// The surface is a Noether–Lefschetz generic hypersurface.
    pub generic_nl: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub condition_i_pic: bool,
    pub condition_ii: bool,
    pub condition_iii: bool,
    /// Conditions i, ii and iii together.
    pub numeric_criterion: bool,
    pub degeneracy_case: DegeneracyCase,
    /// Plane with all curve degrees at least 2 and one at least 3.
    pub plane_criterion: bool,
    pub notes: Vec<String>,
}

impl TheoremVerdict {
    /// Degeneracy follows from the numeric criterion or one of the cases.
    pub fn positive(&self) -> bool {
        self.numeric_criterion || self.degeneracy_case != DegeneracyCase::None
    }

    pub fn to_json(&self) -> Value {
        json!({
            "condition_i_pic": self.condition_i_pic,
            "condition_ii": self.condition_ii,
            "condition_iii": self.condition_iii,
            "numeric_criterion": self.numeric_criterion,
            "degeneracy_case": self.degeneracy_case.to_string(),
            "plane_criterion": self.plane_criterion,
            "positive": self.positive(),
            "notes": self.notes,
        })
    }
}

fn case_c(b: [u64; 3]) -> bool {
    let mut s = b;
    s.sort_unstable();
    let all_ge2 = s[0] >= 2 && s[2] >= 3;
    let one_branch = s[0] == 1 && s[1] >= 3 && s[2] >= 4;
    all_ge2 || one_branch
}

/// Evaluates the numeric criterion (conditions i–iii) and the case list.
pub fn classify(ci: &CIData, flags: Flags) -> TheoremVerdict {
    let a = ci.sum_a();
    let r = ci.r();
    let b = ci.sum_b();
    let lhs = (a - r - 3) * (b - 4) + ci.sigma2();
    let condition_ii = lhs > 6;
    let condition_iii = a + b >= r + 3;
    let mut notes = Vec::new();
    if lhs == 6 {
        notes.push("condition ii is at its boundary: c1^2 - c2 = 0".to_string());
    }
    if a + b == r + 3 {
        notes.push("condition iii holds with equality: det(E*) has degree 0".to_string());
    }

    let mut cases = Vec::new();
    if flags.pic_is_z && a >= r + 3 && b >= 5 {
        cases.push(DegeneracyCase::A);
    }
    if r == 1 && flags.generic_nl && ci.a()[0] >= 4 && b >= 5 {
        cases.push(DegeneracyCase::B);
    }
    if ci.is_plane() && case_c(ci.b) {
        cases.push(DegeneracyCase::C);
    }
    let degeneracy_case = cases.first().copied().unwrap_or(DegeneracyCase::None);
    if cases.len() > 1 {
        let rest: Vec<String> = cases[1..].iter().map(|c| c.to_string()).collect();
        notes.push(format!("also satisfies case(s) {}", rest.join(", ")));
    }

    let plane_criterion = ci.is_plane() && ci.b.iter().all(|&x| x >= 2) && ci.b.iter().any(|&x| x >= 3);
    if r == 1 && ci.a()[0] >= 5 && b >= 5 {
        notes.push("surface degree and curve degrees meet the generic-hypersurface hyperbolicity hypotheses (degree >= 5, b >= 5)".to_string());
    }

    TheoremVerdict {
        condition_i_pic: flags.pic_is_z,
        condition_ii,
        condition_iii,
        numeric_criterion: flags.pic_is_z && condition_ii && condition_iii,
        degeneracy_case,
        plane_criterion,
        notes,
    }
}

pub fn numeric_criterion_check(ci: &CIData, pic_is_z: bool) -> TheoremVerdict {
    classify(
        ci,
        Flags {
            pic_is_z,
            generic_nl: false,
        },
    )
}

/// The three expressions for `c̄₁² − c̄₂` on the plane; they must agree.
pub fn plane_identity_check(b: [u64; 3]) -> (bool, [BigInt; 3]) {
    let [b1, b2, b3] = b.map(BigInt::from);
    let s = &b1 + &b2 + &b3;
    let one = BigInt::one();
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    let six = BigInt::from(6);
    let sigma2 = &b1 * &b2 + &b1 * &b3 + &b2 * &b3;
    let v0 = -&three * (&s - &four) - &six + &sigma2;
    let v1 = (&b1 - &two) * (&b2 - &two) + (&b1 - &two) * (&b3 - &two) + (&b2 - &two) * (&b3 - &two) + &s - &six;
    let v2 =
        (&b1 - &one) * (&b2 - &one) + (&b1 - &one) * (&b3 - &two) + (&b2 - &three) * (&b3 - &four) + (&two * &b2 + &b3)
            - BigInt::from(9);
    (v0 == v1 && v1 == v2, [v0, v1, v2])
}

#[derive(Clone, Debug)]
pub struct ConfigRow {
    pub b: [u64; 3],
    pub report: LogChernReport,
    pub verdict: TheoremVerdict,
}

impl ConfigRow {
    pub fn to_json(&self) -> Value {
        json!({
            "b": self.b,
            "invariants": self.report.to_json(),
            "verdict": self.verdict.to_json(),
        })
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.b[0],
            self.b[1],
            self.b[2],
            self.report.c1sq_minus_c2,
            self.report.det_estar_degree,
            self.verdict.degeneracy_case
        )
    }
}

pub const CSV_HEADER: &str = "b1,b2,b3,c1sq_minus_c2,det_deg,case";

/// All `1 ≤ b₁ ≤ b₂ ≤ b₃ ≤ b_max`, in lexicographic order.
pub fn enumerate_configs(a: &[u64], b_max: u64, flags: Flags) -> Result<Vec<ConfigRow>> {
    if b_max < 3 && a == [1] {
        return Err(Error::precondition("b_max must be at least 3 for the plane"));
    }
    if b_max < 1 {
        return Err(Error::precondition("b_max must be positive"));
    }
    CIData::new(a, [1, 1, 1])?;
    let shards: Vec<Vec<ConfigRow>> = (1..=b_max)
        .into_par_iter()
        .map(|b1| {
            let mut rows = Vec::new();
            for b2 in b1..=b_max {
                for b3 in b2..=b_max {
                    let ci = CIData::new(a, [b1, b2, b3]).expect("validated degrees");
                    rows.push(ConfigRow {
                        b: [b1, b2, b3],
                        report: invariants(&ci),
                        verdict: classify(&ci, flags),
                    });
                }
            }
            rows
        })
        .collect();
    Ok(shards.into_iter().flatten().collect())
}

pub fn rows_to_csv(rows: &[ConfigRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}
