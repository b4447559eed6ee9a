//! Command dispatch for the `hyperbol` binary. [`run`] never exits the
//! process, which keeps it testable.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use hyperbol_core::borel::{self, ExpSum};
use hyperbol_core::chern::{self, CIData, Flags};
use hyperbol_core::covering::{self, CyclicCover, SymForm};
use hyperbol_core::expfun::ExpPoly;
use hyperbol_core::nevanlinna::{self, HomDivisor, ProjCurve, DEFAULT_JUMP_TOL, DEFAULT_TOL};
use hyperbol_core::planeconf::{self, Configuration, PlaneCurve};
use hyperbol_core::scalar::CRational;
use hyperbol_core::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "hyperbol",
    version,
    about = "Value distribution and log-Chern tools for curve complements"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// JSON input document (`-` for stdin).
    #[arg(long, global = true)]
    input: Option<String>,
    /// Output file (`-` or absent for stdout).
    #[arg(long, global = true)]
    output: Option<String>,
    /// Quadrature tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Compare the result with a golden file in this directory.
    #[arg(long, global = true)]
    golden: Option<PathBuf>,
    /// Write the golden file instead of comparing.
    #[arg(long, global = true)]
    update: bool,
    /// Golden file stem; defaults to the subcommand path.
    #[arg(long, global = true)]
    golden_name: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Logarithmic Chern numbers of complete-intersection configurations.
    Chern {
        #[command(subcommand)]
        cmd: ChernCmd,
    },
    /// Nevanlinna functions of exponential-polynomial curves.
    Nev {
        #[command(subcommand)]
        cmd: NevCmd,
    },
    /// Degeneracy analysis of exponential identities.
    Borel {
        #[command(subcommand)]
        cmd: BorelCmd,
    },
    /// Symmetric forms on the cyclic branched cover.
    Cover {
        #[command(subcommand)]
        cmd: CoverCmd,
    },
    /// Plane curve configurations.
    Plane {
        #[command(subcommand)]
        cmd: PlaneCmd,
    },
    /// Exponential polynomials.
    Expfun {
        #[command(subcommand)]
        cmd: ExpfunCmd,
    },
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Degrees of the surface equations; `1` is the plane.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    a: Vec<u64>,
    /// Picard group generated by the hyperplane class.
    #[arg(long)]
    pic: bool,
    /// Noether–Lefschetz generic surface.
    #[arg(long)]
    generic_nl: bool,
}

#[derive(Subcommand, Debug)]
enum ChernCmd {
    /// Euler numbers, intersection numbers and c̄₁² − c̄₂.
    Invariants {
        #[command(flatten)]
        conf: ConfigArgs,
        /// Degrees of the three curves, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        b: Vec<u64>,
    },
    /// Which hyperbolicity criterion applies, if any.
    Classify {
        #[command(flatten)]
        conf: ConfigArgs,
        /// Degrees of the three curves, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        b: Vec<u64>,
    },
    /// Table of all b₁ ≤ b₂ ≤ b₃ ≤ bmax.
    Enumerate {
        #[command(flatten)]
        conf: ConfigArgs,
        #[arg(long)]
        bmax: u64,
    },
    /// The three plane expressions for c̄₁² − c̄₂.
    Identity {
        /// Degrees of the three curves, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        b: Vec<u64>,
    },
}

#[derive(Args, Debug)]
struct NevArgs {
    /// Curve JSON file (array of exponential polynomials).
    #[arg(long)]
    curve: Option<String>,
    /// Scalar exponential polynomial JSON file.
    #[arg(long)]
    function: Option<String>,
    /// Divisor JSON file.
    #[arg(long)]
    divisor: Option<String>,
    /// JSON file with an array of hyperplanes.
    #[arg(long)]
    divisors: Option<String>,
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
}

#[derive(Subcommand, Debug)]
enum NevCmd {
    /// Characteristic function T(f, r).
    #[command(name = "T")]
    T(NevArgs),
    /// Characteristic function of a scalar function.
    #[command(name = "Tscalar")]
    Tscalar(NevArgs),
    /// Counting function N(f, D, r).
    #[command(name = "N")]
    N(NevArgs),
    /// Order of growth fitted over the radii.
    Order(NevArgs),
    /// First main theorem check N + m = T + O(1).
    Fmt(NevArgs),
    /// Second main theorem check for hyperplanes in general position.
    Smt(NevArgs),
    /// Whether `f1/f0` is rational, given `{"f0": g, "f1": g}`.
    Rational(NevArgs),
}

#[derive(Args, Debug)]
struct RadiiArg {
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
    radii: Vec<f64>,
}

#[derive(Subcommand, Debug)]
enum BorelCmd {
    /// The function `Σ c (p₁′)^i (p₂′)^{M−i} exp(...)` of a sum.
    Realize,
    /// Terms grouped by exponent modulo constants.
    Classes,
    /// Minimal vanishing subsums.
    Minimal,
    /// Proportionality conclusion for a single-class identity.
    Case2,
    /// Full analysis of an identity read from `--input`.
    Analyze(RadiiArg),
    /// Growth refutation of a sum with several exponent classes.
    Refute(RadiiArg),
    /// Growth evidence for summands given as `{"psi": [...]}`.
    Witness(RadiiArg),
}

#[derive(Subcommand, Debug)]
enum CoverCmd {
    /// Pullback under the k-th deck transformation.
    Deck {
        #[arg(long)]
        b: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        form: Option<String>,
    },
    /// Product of all deck pullbacks.
    Norm {
        #[arg(long)]
        b: u32,
        #[arg(long)]
        form: Option<String>,
    },
    /// Rewrite in the basis `(dz₁/z₁)^i (dz₂)^{M−i}`, or back with `--plain`.
    Basis {
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        plain: bool,
    },
    /// Descend a deck-invariant form to the base.
    Pushdown {
        #[arg(long)]
        b: u32,
        #[arg(long)]
        form: Option<String>,
        /// Take the norm form first.
        #[arg(long)]
        norm: bool,
    },
    /// Evaluate a form along the curve (g1, g2) and test whether it vanishes.
    Check {
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        g1: Option<String>,
        #[arg(long)]
        g2: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum PlaneCmd {
    /// Intersection of the two curves in `{"curves": [c1, c2]}`.
    Intersect {
        #[arg(long)]
        config: Option<String>,
    },
    /// Normal-crossings check of a three-curve configuration.
    Nc {
        #[arg(long)]
        config: Option<String>,
    },
    /// Case analysis for a curve meeting the configuration in two points.
    Engine {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long, default_value_t = 10)]
        d0max: u32,
    },
    /// Lines violating the genericity condition, one quadric at a time.
    Exclusion {
        #[arg(long)]
        config: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ExpfunCmd {
    /// `f + g` for `{"f": .., "g": ..}`.
    Add,
    /// `f·g` for `{"f": .., "g": ..}`.
    Multiply,
    /// `c·f` for `{"c": scalar, "f": ..}`.
    Scale,
    /// Values at `{"function": f, "points": [[re, im], ...]}`.
    Eval,
    /// Canonical form and exact zero test of `{"function": f}`.
    Iszero,
    /// Derivative of `{"function": f}`.
    Derive,
}

/// One invocation: what was asked, what came out, and the exit code.
#[derive(Clone, Debug)]
pub struct CommandEnvelope {
    pub path: Vec<String>,
    pub input: Value,
    pub output: Value,
    pub exit_code: i32,
    /// Usage or help text instead of JSON.
    pub text: Option<String>,
    pub output_file: Option<String>,
}

impl CommandEnvelope {
    /// The bytes written to the output stream.
    pub fn rendered(&self) -> String {
        match &self.text {
            Some(t) => t.clone(),
            None => {
                let mut s = serde_json::to_string_pretty(&self.output).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Debug)]
struct CliError {
    kind: &'static str,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

fn cli_err(kind: &'static str, message: impl Into<String>) -> CliError {
    CliError {
        kind,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_source(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| cli_err("io", format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| cli_err("io", format!("reading {path}: {e}")))
    }
}

fn load_json(path: &str) -> CliResult<Value> {
    serde_json::from_str(&read_source(path)?).map_err(|e| cli_err("schema", format!("{path} is not valid JSON: {e}")))
}

/// A JSON value from a file flag, else from a field of the input document.
fn from_flag_or_field(flag: &Option<String>, input: &Value, field: &str) -> CliResult<Value> {
    match flag {
        Some(p) => load_json(p),
        None => input.get(field).cloned().ok_or_else(|| {
            cli_err(
                "schema",
                format!("missing \"{field}\" (pass --{field} FILE or include it in --input)"),
            )
        }),
    }
}

/// Rounds every floating-point number to 15 significant digits.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let r: f64 = format!("{x:.14e}").parse().unwrap();
            *v = serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn triple(b: &[u64]) -> CliResult<[u64; 3]> {
    <[u64; 3]>::try_from(b).map_err(|_| cli_err("schema", "--b needs exactly three degrees"))
}

fn radii_from(flag: &Option<Vec<f64>>, input: &Value) -> CliResult<Vec<f64>> {
    if let Some(r) = flag {
        return Ok(r.clone());
    }
    input
        .get("radii")
        .and_then(Value::as_array)
        .ok_or_else(|| cli_err("schema", "missing radii (pass --radii or include \"radii\")"))?
        .iter()
        .map(|x| x.as_f64().ok_or_else(|| cli_err("schema", "radii must be numbers")))
        .collect()
}

struct Ctx<'a> {
    common: &'a Common,
    input: Value,
    tol: f64,
}

fn chern_flags(c: &ConfigArgs) -> Flags {
    Flags {
        pic_is_z: c.pic,
        generic_nl: c.generic_nl,
    }
}

/// Result document plus optional golden text (compared instead of the JSON).
type Outcome = (Value, Option<(String, &'static str)>);

fn run_chern(cmd: &ChernCmd) -> CliResult<Outcome> {
    Ok(match cmd {
        ChernCmd::Invariants { conf, b } => {
            let ci = CIData::new(&conf.a, triple(b)?)?;
            let rep = chern::invariants(&ci);
            let mut v = rep.to_json();
            v["identity_holds"] = json!(rep.identity_holds());
            (v, None)
        }
        ChernCmd::Classify { conf, b } => {
            let ci = CIData::new(&conf.a, triple(b)?)?;
            (chern::classify(&ci, chern_flags(conf)).to_json(), None)
        }
        ChernCmd::Enumerate { conf, bmax } => {
            let rows = chern::enumerate_configs(&conf.a, *bmax, chern_flags(conf))?;
            let positive = rows.iter().filter(|r| r.verdict.positive()).count();
            let csv = chern::rows_to_csv(&rows);
            (
                json!({
                    "a": conf.a,
                    "bmax": bmax,
                    "count": rows.len(),
                    "positive": positive,
                    "rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                }),
                Some((csv, "csv")),
            )
        }
        ChernCmd::Identity { b } => {
            let (holds, values) = chern::plane_identity_check(triple(b)?);
            (
                json!({
                    "b": b,
                    "holds": holds,
                    "values": values.iter().map(|v| json!(i64::try_from(v).ok())).collect::<Vec<_>>(),
                }),
                None,
            )
        }
    })
}

fn run_nev(cmd: &NevCmd, ctx: &Ctx) -> CliResult<Value> {
    let curve = |a: &NevArgs| -> CliResult<ProjCurve> {
        Ok(ProjCurve::from_json(&from_flag_or_field(
            &a.curve, &ctx.input, "curve",
        )?)?)
    };
    let divisor = |a: &NevArgs| -> CliResult<HomDivisor> {
        Ok(HomDivisor::from_json(&from_flag_or_field(
            &a.divisor, &ctx.input, "divisor",
        )?)?)
    };
    let tol = ctx.tol;
    Ok(match cmd {
        NevCmd::T(a) => {
            let f = curve(a)?;
            let radii = radii_from(&a.radii, &ctx.input)?;
            let values = radii
                .iter()
                .map(|&r| nevanlinna::characteristic(&f, r, tol))
                .collect::<Result<Vec<_>, _>>()?;
            json!({"radii": radii, "values": values})
        }
        NevCmd::Tscalar(a) => {
            let g = ExpPoly::from_json(&from_flag_or_field(&a.function, &ctx.input, "function")?)?;
            let radii = radii_from(&a.radii, &ctx.input)?;
            let values = radii
                .iter()
                .map(|&r| nevanlinna::characteristic_scalar(&g, r, tol))
                .collect::<Result<Vec<_>, _>>()?;
            json!({"radii": radii, "values": values})
        }
        NevCmd::N(a) => {
            let radii = radii_from(&a.radii, &ctx.input)?;
            nevanlinna::counting_many(&curve(a)?, &divisor(a)?, &radii, DEFAULT_JUMP_TOL)?.to_json()
        }
        NevCmd::Order(a) => {
            let radii = radii_from(&a.radii, &ctx.input)?;
            nevanlinna::order_estimate(&curve(a)?, &radii, tol)?.to_json()
        }
        NevCmd::Fmt(a) => {
            let radii = radii_from(&a.radii, &ctx.input)?;
            nevanlinna::fmt_check(&curve(a)?, &divisor(a)?, &radii, tol)?.to_json()
        }
        NevCmd::Smt(a) => {
            let radii = radii_from(&a.radii, &ctx.input)?;
            let hs = from_flag_or_field(&a.divisors, &ctx.input, "divisors")?;
            let hs = hs
                .as_array()
                .ok_or_else(|| cli_err("schema", "divisors must be an array"))?
                .iter()
                .map(HomDivisor::from_json)
                .collect::<Result<Vec<_>, _>>()?;
            nevanlinna::smt_check(&curve(a)?, &hs, &radii, tol)?.to_json()
        }
        NevCmd::Rational(a) => {
            let radii = radii_from(&a.radii, &ctx.input)?;
            let f0 = ExpPoly::from_json(&from_flag_or_field(&None, &ctx.input, "f0")?)?;
            let f1 = ExpPoly::from_json(&from_flag_or_field(&None, &ctx.input, "f1")?)?;
            nevanlinna::rational_growth_test(&f0, &f1, &radii, tol)?.to_json()
        }
    })
}

fn run_borel(cmd: &BorelCmd, ctx: &Ctx) -> CliResult<Value> {
    Ok(match cmd {
        BorelCmd::Realize => {
            let f = borel::realize(&ExpSum::from_json(&ctx.input)?);
            json!({"function": f.to_json(), "rendered": f.render("η"), "is_zero": f.is_zero()})
        }
        BorelCmd::Classes => {
            let sum = ExpSum::from_json(&ctx.input)?;
            let classes = borel::partition_classes(&sum);
            json!({
                "classes": classes,
                "exponents": classes.iter().map(|c| sum.exponent(&sum.terms[c[0]]).to_json()).collect::<Vec<_>>(),
            })
        }
        BorelCmd::Minimal => {
            let sum = ExpSum::from_json(&ctx.input)?;
            json!({"subsets": borel::minimal_vanishing_indices(&sum)?})
        }
        BorelCmd::Case2 => borel::case2_conclude(&ExpSum::from_json(&ctx.input)?)?.to_json(),
        BorelCmd::Analyze(r) => {
            let sum = ExpSum::from_json(&ctx.input)?;
            borel::degeneracy_pipeline(&sum, &r.radii, ctx.tol)?.to_json()
        }
        BorelCmd::Refute(r) => {
            let sum = ExpSum::from_json(&ctx.input)?;
            borel::case1_refute(&sum, &r.radii, ctx.tol)?.to_json()
        }
        BorelCmd::Witness(r) => {
            let psi = ctx
                .input
                .get("psi")
                .and_then(Value::as_array)
                .ok_or_else(|| cli_err("schema", "missing \"psi\" array"))?
                .iter()
                .map(ExpPoly::from_json)
                .collect::<Result<Vec<_>, _>>()?;
            borel::case1_witness(&psi, &r.radii, ctx.tol)?.to_json()
        }
    })
}

fn form_json(f: &SymForm, names: [&str; 2]) -> Value {
    json!({"form": f.to_json(), "rendered": f.render(names)})
}

fn run_cover(cmd: &CoverCmd, ctx: &Ctx) -> CliResult<Value> {
    let form = |p: &Option<String>| -> CliResult<SymForm> {
        Ok(SymForm::from_json(&from_flag_or_field(p, &ctx.input, "form")?)?)
    };
    Ok(match cmd {
        CoverCmd::Deck { b, k, form: p } => {
            let out = covering::deck_pullback(&form(p)?, *k, CyclicCover::new(*b)?)?;
            form_json(&out, ["z1", "z2"])
        }
        CoverCmd::Norm { b, form: p } => {
            let out = covering::norm_form(&form(p)?, CyclicCover::new(*b)?)?;
            form_json(&out, ["z1", "z2"])
        }
        CoverCmd::Basis { form: p, plain } => {
            let f = form(p)?;
            let out = if *plain {
                covering::express_plain_basis(&f)
            } else {
                covering::express_log_basis(&f)
            };
            form_json(&out, ["z1", "z2"])
        }
        CoverCmd::Pushdown { b, form: p, norm } => {
            let cover = CyclicCover::new(*b)?;
            let mut f = form(p)?;
            if *norm {
                f = covering::norm_form(&f, cover)?;
            }
            let down = covering::push_down(&f, cover)?;
            let mut v = form_json(&down, ["ξ1", "ξ2"]);
            v["pulled_back_matches"] = json!(covering::pull_back(&down, cover)? == covering::express_plain_basis(&f));
            v
        }
        CoverCmd::Check { form: p, g1, g2 } => {
            let f = form(p)?;
            let g1 = ExpPoly::from_json(&from_flag_or_field(g1, &ctx.input, "g1")?)?;
            let g2 = ExpPoly::from_json(&from_flag_or_field(g2, &ctx.input, "g2")?)?;
            let residual = covering::evaluate_along(&f, &g1, &g2)?;
            json!({
                "annihilated": residual.is_zero(),
                "residual": residual.to_json(),
                "residual_text": residual.render("η"),
            })
        }
    })
}

fn run_plane(cmd: &PlaneCmd, ctx: &Ctx) -> CliResult<Value> {
    let seed = ctx.common.seed;
    let config_doc = |p: &Option<String>| -> CliResult<Value> {
        match p {
            Some(p) => load_json(p),
            None if !ctx.input.is_null() => Ok(ctx.input.clone()),
            None => Err(cli_err(
                "schema",
                "missing configuration (pass --config FILE or --input)",
            )),
        }
    };
    Ok(match cmd {
        PlaneCmd::Intersect { config } => {
            let doc = config_doc(config)?;
            let curves = doc
                .get("curves")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| cli_err("schema", "intersect needs {\"curves\": [c1, c2]}"))?;
            let c1 = PlaneCurve::from_json(&curves[0])?;
            let c2 = PlaneCurve::from_json(&curves[1])?;
            let pts = planeconf::intersection_points(&c1, &c2, seed)?;
            json!({
                "points": pts.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                "total_multiplicity": pts.iter().map(|p| p.multiplicity).sum::<usize>(),
                "bezout": c1.degree() * c2.degree(),
            })
        }
        PlaneCmd::Nc { config } => {
            let conf = Configuration::from_json(&config_doc(config)?)?;
            planeconf::normal_crossings(&conf, seed)?.to_json()
        }
        PlaneCmd::Engine { degrees, d0max } => {
            let d = <[u32; 3]>::try_from(degrees.as_slice())
                .map_err(|_| cli_err("schema", "--degrees needs three values"))?;
            let verdicts = planeconf::two_puncture_case_engine(d, *d0max)?;
            let verified = verdicts
                .iter()
                .filter_map(|v| v.certificate.as_ref().map(|c| (v, c)))
                .all(|(v, c)| planeconf::verify_certificate(d, &v.case, c));
            let survivors: Vec<Value> = verdicts
                .iter()
                .filter(|v| !v.impossible())
                .map(|v| v.to_json())
                .collect();
            json!({
                "degrees": d,
                "d0max": d0max,
                "cases": verdicts.len(),
                "impossible": verdicts.len() - survivors.len(),
                "certificates_verified": verified,
                "survivors": survivors,
            })
        }
        PlaneCmd::Exclusion { config } => {
            let conf = Configuration::from_json(&config_doc(config)?)?;
            planeconf::quadric_line_exclusion(&conf, seed)?.to_json()
        }
    })
}

fn expfun_field(input: &Value, key: &str) -> CliResult<ExpPoly> {
    Ok(ExpPoly::from_json(
        input
            .get(key)
            .ok_or_else(|| cli_err("schema", format!("missing \"{key}\"")))?,
    )?)
}

fn expfun_result(f: &ExpPoly) -> Value {
    json!({"result": f.to_json(), "rendered": f.render("ξ")})
}

fn run_expfun(cmd: &ExpfunCmd, ctx: &Ctx) -> CliResult<Value> {
    let input = &ctx.input;
    Ok(match cmd {
        ExpfunCmd::Add => expfun_result(&expfun_field(input, "f")?.add(&expfun_field(input, "g")?)),
        ExpfunCmd::Multiply => expfun_result(&expfun_field(input, "f")?.mul(&expfun_field(input, "g")?)),
        ExpfunCmd::Scale => {
            let c = CRational::from_json(input.get("c").ok_or_else(|| cli_err("schema", "missing \"c\""))?)?;
            expfun_result(&expfun_field(input, "f")?.scale(&c))
        }
        ExpfunCmd::Eval => {
            let f = expfun_field(input, "function")?;
            let pts = input
                .get("points")
                .and_then(Value::as_array)
                .ok_or_else(|| cli_err("schema", "missing \"points\" array"))?;
            let mut values = Vec::new();
            for p in pts {
                let z = match p.as_array().map(|a| a.iter().map(Value::as_f64).collect::<Vec<_>>()) {
                    Some(v) if v.len() == 2 && v.iter().all(Option::is_some) => {
                        Complex64::new(v[0].unwrap(), v[1].unwrap())
                    }
                    _ => return Err(cli_err("schema", "points must be [re, im] pairs")),
                };
                let w = f.evaluate(z)?;
                values.push(json!([w.re, w.im]));
            }
            json!({"values": values})
        }
        ExpfunCmd::Iszero => {
            let f = expfun_field(input, "function")?;
            json!({"is_zero": f.is_zero(), "canonical": f.to_json(), "rendered": f.render("ξ")})
        }
        ExpfunCmd::Derive => expfun_result(&expfun_field(input, "function")?.differentiate()),
    })
}

fn subcommand_path(m: &ArgMatches) -> Vec<String> {
    let mut path = Vec::new();
    let mut cur = m;
    while let Some((name, sub)) = cur.subcommand() {
        path.push(name.to_string());
        cur = sub;
    }
    path
}

fn golden_check(common: &Common, stem: &str, content: &str, ext: &str) -> CliResult<Value> {
    let dir = common.golden.as_ref().expect("golden directory set");
    let path = dir.join(format!("{stem}.{ext}"));
    let shown = path.to_string_lossy().into_owned();
    if common.update {
        fs::create_dir_all(dir).map_err(|e| cli_err("io", format!("creating {}: {e}", dir.display())))?;
        fs::write(&path, content).map_err(|e| cli_err("io", format!("writing {shown}: {e}")))?;
        return Ok(json!({"path": shown, "status": "written"}));
    }
    let expected = fs::read_to_string(&path).map_err(|e| cli_err("golden_missing", format!("reading {shown}: {e}")))?;
    if expected == content {
        Ok(json!({"path": shown, "status": "match"}))
    } else {
        let line = expected
            .lines()
            .zip(content.lines())
            .position(|(a, b)| a != b)
            .unwrap_or_else(|| expected.lines().count().min(content.lines().count()));
        Err(cli_err(
            "golden_mismatch",
            format!("{shown} differs from the computed output at line {}", line + 1),
        ))
    }
}

fn dispatch(cli: &Cli, path: &[String], input: Value) -> CliResult<Value> {
    let tol = cli
        .common
        .tol
        .unwrap_or_else(|| input.get("tol").and_then(Value::as_f64).unwrap_or(DEFAULT_TOL));
    if !(tol > 0.0 && tol < 1.0) {
        return Err(cli_err("schema", "--tol must lie in (0, 1)"));
    }
    let ctx = Ctx {
        common: &cli.common,
        input,
        tol,
    };
    let (mut result, golden_text) = match &cli.cmd {
        Cmd::Chern { cmd } => run_chern(cmd)?,
        Cmd::Nev { cmd } => (run_nev(cmd, &ctx)?, None),
        Cmd::Borel { cmd } => (run_borel(cmd, &ctx)?, None),
        Cmd::Cover { cmd } => (run_cover(cmd, &ctx)?, None),
        Cmd::Plane { cmd } => (run_plane(cmd, &ctx)?, None),
        Cmd::Expfun { cmd } => (run_expfun(cmd, &ctx)?, None),
    };
    if !result.is_object() {
        result = json!({"result": result});
    }
    result["meta"] = json!({
        "version": VERSION,
        "command": path,
        "seed": cli.common.seed,
        "tol": tol,
        "jump_tol": DEFAULT_JUMP_TOL,
    });
    round_floats(&mut result);
    if cli.common.golden.is_some() {
        let stem = cli.common.golden_name.clone().unwrap_or_else(|| path.join("-"));
        let status = match golden_text {
            Some((text, ext)) => golden_check(&cli.common, &stem, &text, ext)?,
            None => {
                let mut text = serde_json::to_string_pretty(&result).expect("serializable");
                text.push('\n');
                golden_check(&cli.common, &stem, &text, "json")?
            }
        };
        result["golden"] = status;
    }
    Ok(result)
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, S>(argv: I) -> CommandEnvelope
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let parsed = Cli::command()
        .try_get_matches_from(&argv)
        .and_then(|m| Cli::from_arg_matches(&m).map(|c| (c, m)));
    let (cli, matches) = match parsed {
        Ok(p) => p,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return CommandEnvelope {
                path: argv.iter().skip(1).take(2).cloned().collect(),
                input: Value::Null,
                output: Value::Null,
                exit_code: code,
                text: Some(e.render().to_string()),
                output_file: None,
            };
        }
    };
    let path = subcommand_path(&matches);
    let input = match &cli.common.input {
        Some(p) => load_json(p),
        None => Ok(Value::Null),
    };
    let (output, exit_code, input) = match input.and_then(|inp| dispatch(&cli, &path, inp.clone()).map(|o| (o, inp))) {
        Ok((o, inp)) => (o, 0, inp),
        Err(e) => {
            let mut o = Map::new();
            o.insert("error".into(), json!({"kind": e.kind, "message": e.message}));
            o.insert(
                "meta".into(),
                json!({"version": VERSION, "command": path, "seed": cli.common.seed}),
            );
            (Value::Object(o), 1, Value::Null)
        }
    };
    CommandEnvelope {
        path,
        input,
        output,
        exit_code,
        text: None,
        output_file: cli.common.output.clone().filter(|p| p != "-"),
    }
}
