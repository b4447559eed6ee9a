use num_complex::Complex64;
use proptest::prelude::*;

use hyperbol_core::borel::{self, ExpSum, ExpTerm};
use hyperbol_core::chern::{self, CIData};
use hyperbol_core::covering::{deck_pullback, norm_form, Basis, CPoly, CyclicCover, SymForm};
use hyperbol_core::cyclo::Cyclo;
use hyperbol_core::expfun::ExpPoly;
use hyperbol_core::planeconf::{self, PlaneCurve};
use hyperbol_core::poly::Poly;
use hyperbol_core::scalar::{CRational, Field};
use hyperbol_core::Error;

fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 1..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

fn exp_poly() -> impl Strategy<Value = ExpPoly> {
    prop::collection::vec((small_poly(2), small_poly(2)), 0..=3).prop_map(|ts| {
        ts.into_iter()
            .fold(ExpPoly::zero(), |acc, (c, e)| acc.add(&ExpPoly::term(c, e)))
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_rule(f in exp_poly(), g in exp_poly()) {
        let lhs = f.mul(&g).differentiate();
        let rhs = f.differentiate().mul(&g).add(&f.mul(&g.differentiate()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in exp_poly(), g in exp_poly(), re in -1.0f64..1.0, im in -1.0f64..1.0) {
        let z = Complex64::new(re, im);
        let (fz, gz) = (f.evaluate(z).unwrap(), g.evaluate(z).unwrap());
        prop_assert!(close(f.add(&g).evaluate(z).unwrap(), fz + gz));
        prop_assert!(close(f.mul(&g).evaluate(z).unwrap(), fz * gz));
    }

    #[test]
    fn difference_with_itself_is_zero(f in exp_poly()) {
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn chern_numbers_ignore_ordering(a in prop::collection::vec(1u64..=4, 1..=3), b in [1u64..=6, 1u64..=6, 1u64..=6]) {
        let base = chern::invariants(&CIData::new(&a, b).unwrap());
        let mut ra = a.clone();
        ra.reverse();
        let swapped = chern::invariants(&CIData::new(&ra, [b[2], b[0], b[1]]).unwrap());
        prop_assert_eq!(&base.c1sq_minus_c2, &swapped.c1sq_minus_c2);
        prop_assert_eq!(&base.euler_surface_topological, &swapped.euler_surface_topological);
        prop_assert_eq!(base.det_estar_degree, swapped.det_estar_degree);
        prop_assert_eq!(&base.euler_c, &swapped.euler_c);
    }

    #[test]
    fn norm_form_is_deck_invariant(
        b in 2u32..=4,
        i in 0u32..=2,
        terms in prop::collection::vec(((0u32..=2, 0u32..=2), -3i64..=3), 1..=3),
        log in any::<bool>(),
    ) {
        let coeff = CPoly::from_terms(2, terms.into_iter().map(|((x, y), c)| (vec![x, y], Cyclo::from_i64(c))));
        prop_assume!(!coeff.is_zero());
        let basis = if log { Basis::Log1 } else { Basis::Plain };
        let form = SymForm::monomial(2, basis, i, coeff).unwrap();
        let cover = CyclicCover::new(b).unwrap();
        let norm = norm_form(&form, cover).unwrap();
        for k in 1..b {
            prop_assert_eq!(&deck_pullback(&norm, k, cover).unwrap(), &norm);
        }
    }

    #[test]
    fn realize_splits_along_classes(
        m in 1u32..=3,
        raw in prop::collection::vec((-3i64..=3, 0u32..=3, 0u32..=2, 0u32..=2), 1..=6),
    ) {
        let p1 = Poly::from_ints(&[0, 1]);
        let p2 = Poly::from_ints(&[0, 0, 1]);
        let terms: Vec<ExpTerm> = raw
            .into_iter()
            .map(|(c, i, j, k)| ExpTerm { coeff: CRational::int(c), i: i.min(m), j, k })
            .collect();
        let sum = ExpSum::new(m, p1, p2, terms).unwrap();
        let classes = borel::partition_classes(&sum);
        let mut seen: Vec<usize> = classes.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..sum.terms.len()).collect::<Vec<_>>());
        let mut total = ExpPoly::zero();
        for class in &classes {
            let part = ExpSum::new(m, sum.p1.clone(), sum.p2.clone(), class.iter().map(|&i| sum.terms[i].clone()).collect()).unwrap();
            let f = borel::realize(&part);
            // Each class contributes a single exponential.
            prop_assert!(f.num_terms() <= 1);
            total = total.add(&f);
        }
        prop_assert_eq!(total, borel::realize(&sum));
    }
}

fn plane_curve(d: u32) -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    let monomials: Vec<[u32; 3]> = (0..=d)
        .flat_map(|a| (0..=d - a).map(move |b| [a, b, d - a - b]))
        .collect();
    let n = monomials.len();
    prop::collection::vec(-4i64..=4, n).prop_map(move |cs| monomials.iter().copied().zip(cs).collect())
}

fn curve_pair() -> impl Strategy<Value = (Vec<([u32; 3], i64)>, Vec<([u32; 3], i64)>, u64)> {
    (1u32..=3, 1u32..=3).prop_flat_map(|(d1, d2)| (plane_curve(d1), plane_curve(d2), any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bezout_total((t1, t2, seed) in curve_pair()) {
        let (Ok(c1), Ok(c2)) = (PlaneCurve::from_int_terms(&t1), PlaneCurve::from_int_terms(&t2)) else {
            return Err(TestCaseError::reject("degenerate curve"));
        };
        match planeconf::intersection_points(&c1, &c2, seed) {
            Err(Error::NotCoprime) => return Err(TestCaseError::reject("common component")),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
            Ok(pts) => {
                let total: usize = pts.iter().map(|p| p.multiplicity).sum();
                prop_assert_eq!(total, (c1.degree() * c2.degree()) as usize);
            }
        }
    }

    #[test]
    fn engine_certificates_verify(d in [2u32..=5, 2u32..=5, 2u32..=5]) {
        prop_assume!(d.iter().any(|&x| x >= 3));
        for v in planeconf::two_puncture_case_engine(d, 6).unwrap() {
            if let Some(cert) = &v.certificate {
                prop_assert!(planeconf::verify_certificate(d, &v.case, cert), "{:?}", v.case);
            }
        }
    }
}
