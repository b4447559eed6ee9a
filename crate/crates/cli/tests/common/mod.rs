//! Documented CLI invocations shared by the golden and acceptance tests.
//! Paths are relative to the cli crate root, which is the working directory
//! of integration tests.

#![allow(dead_code)]

use hyperbol_cli::{run, CommandEnvelope};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn ok(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, exit: 0 }
}

const fn fails(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, exit: 1 }
}

pub const CASES: &[Case] = &[
    ok(
        "expfun-eval-exp",
        &["expfun", "eval", "--input", "tests/data/expfun_eval_exp.json"],
    ),
    ok(
        "expfun-eval-xi-exp-xi2",
        &["expfun", "eval", "--input", "tests/data/expfun_eval_xi_exp_xi2.json"],
    ),
    ok(
        "expfun-eval-cancel",
        &["expfun", "eval", "--input", "tests/data/expfun_eval_cancel.json"],
    ),
    ok(
        "expfun-derive-exp",
        &["expfun", "derive", "--input", "tests/data/expfun_derive_exp.json"],
    ),
    ok(
        "expfun-derive-exp-xi2",
        &["expfun", "derive", "--input", "tests/data/expfun_derive_exp_xi2.json"],
    ),
    ok(
        "expfun-derive-const",
        &["expfun", "derive", "--input", "tests/data/expfun_derive_const.json"],
    ),
    ok(
        "expfun-add-cancel",
        &["expfun", "add", "--input", "tests/data/expfun_add_cancel.json"],
    ),
    ok(
        "expfun-multiply",
        &["expfun", "multiply", "--input", "tests/data/expfun_multiply.json"],
    ),
    ok(
        "expfun-scale",
        &["expfun", "scale", "--input", "tests/data/expfun_scale.json"],
    ),
    ok(
        "expfun-iszero-two-classes",
        &[
            "expfun",
            "iszero",
            "--input",
            "tests/data/expfun_iszero_two_classes.json",
        ],
    ),
    ok(
        "expfun-iszero-zero-coeff",
        &[
            "expfun",
            "iszero",
            "--input",
            "tests/data/expfun_iszero_zero_coeff.json",
        ],
    ),
    ok(
        "expfun-iszero-absorb",
        &["expfun", "iszero", "--input", "tests/data/expfun_iszero_absorb.json"],
    ),
    ok("nev-T-xi", &["nev", "T", "--input", "tests/data/nev_T_xi.json"]),
    ok("nev-T-exp", &["nev", "T", "--input", "tests/data/nev_T_exp.json"]),
    ok("nev-T-const", &["nev", "T", "--input", "tests/data/nev_T_const.json"]),
    ok(
        "nev-Tscalar-exp",
        &["nev", "Tscalar", "--input", "tests/data/nev_Tscalar_exp.json"],
    ),
    ok(
        "nev-Tscalar-cube",
        &["nev", "Tscalar", "--input", "tests/data/nev_Tscalar_cube.json"],
    ),
    ok(
        "nev-Tscalar-half",
        &["nev", "Tscalar", "--input", "tests/data/nev_Tscalar_half.json"],
    ),
    ok(
        "nev-N-exp-one",
        &["nev", "N", "--input", "tests/data/nev_N_exp_one.json"],
    ),
    ok(
        "nev-N-xi-zero",
        &["nev", "N", "--input", "tests/data/nev_N_xi_zero.json"],
    ),
    ok(
        "nev-N-exp-zero",
        &["nev", "N", "--input", "tests/data/nev_N_exp_zero.json"],
    ),
    ok(
        "nev-order-exp",
        &[
            "nev",
            "order",
            "--curve",
            "tests/data/curve_exp.json",
            "--radii",
            "2,4,8,16,32",
        ],
    ),
    ok(
        "nev-order-exp2",
        &["nev", "order", "--input", "tests/data/nev_order_exp2.json"],
    ),
    ok(
        "nev-order-xi5",
        &["nev", "order", "--input", "tests/data/nev_order_xi5.json"],
    ),
    ok(
        "nev-fmt-exp-one",
        &["nev", "fmt", "--input", "tests/data/nev_fmt_exp_one.json"],
    ),
    ok(
        "nev-fmt-exp-zero",
        &["nev", "fmt", "--input", "tests/data/nev_fmt_exp_zero.json"],
    ),
    ok("nev-fmt-xi2", &["nev", "fmt", "--input", "tests/data/nev_fmt_xi2.json"]),
    ok("nev-smt-exp", &["nev", "smt", "--input", "tests/data/nev_smt_exp.json"]),
    ok("nev-smt-xi", &["nev", "smt", "--input", "tests/data/nev_smt_xi.json"]),
    fails(
        "nev-smt-const",
        &["nev", "smt", "--input", "tests/data/nev_smt_const.json"],
    ),
    ok(
        "nev-rational-poly",
        &["nev", "rational", "--input", "tests/data/nev_rational_poly.json"],
    ),
    ok(
        "nev-rational-exp",
        &["nev", "rational", "--input", "tests/data/nev_rational_exp.json"],
    ),
    ok(
        "nev-rational-cancel",
        &["nev", "rational", "--input", "tests/data/nev_rational_cancel.json"],
    ),
    ok(
        "chern-invariants-plane-222",
        &["chern", "invariants", "--a", "1", "--b", "2,2,2"],
    ),
    ok(
        "chern-invariants-quintic-113",
        &["chern", "invariants", "--a", "5", "--b", "1,1,3"],
    ),
    ok(
        "chern-invariants-plane-134",
        &["chern", "invariants", "--a", "1", "--b", "1,3,4"],
    ),
    ok(
        "chern-classify-plane-223",
        &["chern", "classify", "--b", "2,2,3", "--pic"],
    ),
    ok(
        "chern-classify-plane-222",
        &["chern", "classify", "--b", "2,2,2", "--pic"],
    ),
    ok(
        "chern-classify-quartic-122",
        &["chern", "classify", "--a", "4", "--b", "1,2,2", "--pic"],
    ),
    ok("chern-classify-plane-232", &["chern", "classify", "--b", "2,3,2"]),
    ok(
        "chern-classify-quartic-nl-113",
        &["chern", "classify", "--a", "4", "--b", "1,1,3", "--generic-nl"],
    ),
    ok("chern-classify-plane-124", &["chern", "classify", "--b", "1,2,4"]),
    ok("chern-identity-222", &["chern", "identity", "--b", "2,2,2"]),
    ok("chern-identity-134", &["chern", "identity", "--b", "1,3,4"]),
    ok("chern-identity-555", &["chern", "identity", "--b", "5,5,5"]),
    ok(
        "chern-enumerate-plane-3",
        &["chern", "enumerate", "--a", "1", "--bmax", "3"],
    ),
    ok(
        "chern-enumerate-plane-4",
        &["chern", "enumerate", "--a", "1", "--bmax", "4"],
    ),
    ok(
        "chern-enumerate-quintic-nl-2",
        &["chern", "enumerate", "--a", "5", "--bmax", "2", "--generic-nl"],
    ),
    ok("chern-enumerate-plane-10", &["chern", "enumerate", "--bmax", "10"]),
    ok(
        "borel-realize-single",
        &["borel", "realize", "--input", "tests/data/borel_realize_single.json"],
    ),
    ok(
        "borel-realize-cancel",
        &["borel", "realize", "--input", "tests/data/borel_realize_cancel.json"],
    ),
    ok(
        "borel-realize-quadratic",
        &["borel", "realize", "--input", "tests/data/borel_realize_quadratic.json"],
    ),
    ok(
        "borel-classes-proportional",
        &[
            "borel",
            "classes",
            "--input",
            "tests/data/borel_classes_proportional.json",
        ],
    ),
    ok(
        "borel-classes-two",
        &["borel", "classes", "--input", "tests/data/borel_classes_two.json"],
    ),
    ok(
        "borel-classes-one",
        &["borel", "classes", "--input", "tests/data/borel_classes_one.json"],
    ),
    ok(
        "borel-minimal-pairs",
        &["borel", "minimal", "--input", "tests/data/borel_minimal_pairs.json"],
    ),
    ok(
        "borel-minimal-triple",
        &["borel", "minimal", "--input", "tests/data/borel_minimal_triple.json"],
    ),
    ok(
        "borel-minimal-single",
        &["borel", "minimal", "--input", "tests/data/borel_minimal_single.json"],
    ),
    ok(
        "borel-witness-mixed",
        &["borel", "witness", "--input", "tests/data/borel_witness_mixed.json"],
    ),
    ok(
        "borel-refute-two",
        &["borel", "refute", "--input", "tests/data/borel_refute_two.json"],
    ),
    fails(
        "borel-refute-one-class",
        &["borel", "refute", "--input", "tests/data/borel_classes_one.json"],
    ),
    ok(
        "borel-case2-half",
        &["borel", "case2", "--input", "tests/data/borel_case2_half.json"],
    ),
    ok(
        "borel-case2-p2-const",
        &["borel", "case2", "--input", "tests/data/borel_case2_p2_const.json"],
    ),
    ok(
        "borel-case2-equal",
        &["borel", "case2", "--input", "tests/data/borel_case2_equal.json"],
    ),
    ok(
        "borel-analyze-half",
        &["borel", "analyze", "--input", "tests/data/borel_analyze_half.json"],
    ),
    ok(
        "borel-analyze-mixed",
        &["borel", "analyze", "--input", "tests/data/borel_analyze_mixed.json"],
    ),
    ok(
        "borel-analyze-p1-const",
        &["borel", "analyze", "--input", "tests/data/borel_analyze_p1_const.json"],
    ),
    ok(
        "cover-deck-dz1dz2",
        &[
            "cover",
            "deck",
            "--b",
            "2",
            "--k",
            "1",
            "--form",
            "tests/data/form_dz1dz2.json",
        ],
    ),
    ok(
        "cover-deck-identity",
        &[
            "cover",
            "deck",
            "--b",
            "2",
            "--k",
            "0",
            "--form",
            "tests/data/form_z1_dz1sq.json",
        ],
    ),
    ok(
        "cover-deck-z1-dz1sq",
        &[
            "cover",
            "deck",
            "--b",
            "2",
            "--k",
            "1",
            "--form",
            "tests/data/form_z1_dz1sq.json",
        ],
    ),
    ok(
        "cover-norm-trivial",
        &["cover", "norm", "--b", "1", "--form", "tests/data/form_dz1dz2.json"],
    ),
    ok(
        "cover-norm-dz1dz2",
        &["cover", "norm", "--b", "2", "--form", "tests/data/form_dz1dz2.json"],
    ),
    ok(
        "cover-norm-dz2",
        &["cover", "norm", "--b", "2", "--form", "tests/data/form_dz2.json"],
    ),
    ok(
        "cover-basis-dz1sq",
        &["cover", "basis", "--form", "tests/data/form_dz1sq.json"],
    ),
    ok(
        "cover-basis-inv-z1",
        &["cover", "basis", "--form", "tests/data/form_inv_z1_dz1dz2.json"],
    ),
    ok(
        "cover-basis-back",
        &["cover", "basis", "--plain", "--form", "tests/data/form_log_z1sq.json"],
    ),
    ok(
        "cover-pushdown-worked",
        &[
            "cover",
            "pushdown",
            "--b",
            "2",
            "--form",
            "tests/data/form_minus_dz1sq_dz2sq.json",
        ],
    ),
    ok(
        "cover-pushdown-norm",
        &[
            "cover",
            "pushdown",
            "--b",
            "2",
            "--norm",
            "--form",
            "tests/data/form_dz1dz2.json",
        ],
    ),
    ok(
        "cover-pushdown-trivial",
        &[
            "cover",
            "pushdown",
            "--b",
            "1",
            "--form",
            "tests/data/form_z1_dz2sq.json",
        ],
    ),
    fails(
        "cover-pushdown-not-invariant",
        &[
            "cover",
            "pushdown",
            "--b",
            "2",
            "--form",
            "tests/data/form_z1_dz2sq.json",
        ],
    ),
    ok(
        "cover-check-symmetric",
        &["cover", "check", "--input", "tests/data/cover_check_symmetric.json"],
    ),
    ok(
        "cover-check-dxi1",
        &["cover", "check", "--input", "tests/data/cover_check_dxi1.json"],
    ),
    ok(
        "cover-check-product",
        &["cover", "check", "--input", "tests/data/cover_check_product.json"],
    ),
    ok(
        "plane-intersect-lines",
        &["plane", "intersect", "--config", "tests/data/plane_lines_x0_x1.json"],
    ),
    ok(
        "plane-intersect-conic-line",
        &[
            "plane",
            "intersect",
            "--config",
            "tests/data/plane_conic_line_transversal.json",
        ],
    ),
    ok(
        "plane-intersect-tangent",
        &[
            "plane",
            "intersect",
            "--config",
            "tests/data/plane_conic_line_tangent.json",
        ],
    ),
    ok(
        "plane-nc-coordinate-lines",
        &["plane", "nc", "--config", "tests/data/plane_nc_coordinate_lines.json"],
    ),
    ok(
        "plane-nc-triple-point",
        &["plane", "nc", "--config", "tests/data/plane_nc_triple_point.json"],
    ),
    ok(
        "plane-nc-tangent",
        &["plane", "nc", "--config", "tests/data/plane_nc_tangent.json"],
    ),
    ok(
        "plane-engine-333",
        &["plane", "engine", "--degrees", "3,3,3", "--d0max", "10"],
    ),
    ok(
        "plane-engine-223",
        &["plane", "engine", "--degrees", "2,2,3", "--d0max", "10"],
    ),
    ok(
        "plane-exclusion-total-tangent",
        &[
            "plane",
            "exclusion",
            "--config",
            "tests/data/plane_exclusion_total_tangent.json",
        ],
    ),
    ok(
        "plane-exclusion-generic",
        &[
            "plane",
            "exclusion",
            "--config",
            "tests/data/plane_exclusion_generic.json",
        ],
    ),
    ok(
        "plane-exclusion-no-quadric",
        &[
            "plane",
            "exclusion",
            "--config",
            "tests/data/plane_exclusion_no_quadric.json",
        ],
    ),
];

pub fn invoke(case: &Case) -> CommandEnvelope {
    run(std::iter::once("hyperbol").chain(case.args.iter().copied()))
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new("tests/golden").join(format!("{name}.json"))
}
