#![allow(clippy::needless_range_loop)]

use hesslab::apolar::{
    ann_basis, catalecticant, gorenstein_selfcheck, hilbert_function, quotient_basis, Algebra,
};
use hesslab::hessian;
use hesslab::lefschetz::{element_check, has_slp, has_wlp, is_lefschetz_element, rank_oracle};
use hesslab::linalg::{self, Budget};
use hesslab::parse::parse_poly;
use hesslab::poly::{
    apply_diff, default_names, monomials_of_degree, power_apply, rat, DiffOp, Exponent, Form, Poly,
    Rational,
};
use hesslab::Config;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly_from(n: usize, d: u32, coeffs: &[i64]) -> Poly {
    let mut p = Poly::zero(n);
    for (e, &c) in monomials_of_degree(n, d).into_iter().zip(coeffs) {
        if c != 0 {
            p = &p + &Poly::monomial(e, rat(c));
        }
    }
    p
}

/// Homogeneous polynomial of arity `n` and degree `d` with small sparse
/// coefficients; may be zero.
fn homogeneous(n: usize, d: u32) -> impl Strategy<Value = Poly> {
    let m = monomials_of_degree(n, d).len();
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], m)
        .prop_map(move |c| poly_from(n, d, &c))
}

fn any_form(max_n: usize, max_d: u32) -> impl Strategy<Value = Form> {
    (1..=max_n, 1..=max_d)
        .prop_flat_map(|(n, d)| homogeneous(n, d))
        .prop_filter_map("zero polynomial", |p| Form::new(p).ok())
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-3i64..=3).prop_map(rat), n)
}

fn form_and_point(max_n: usize, max_d: u32) -> impl Strategy<Value = (Form, Vec<Rational>)> {
    any_form(max_n, max_d).prop_flat_map(|f| {
        let n = f.arity();
        (Just(f), point(n))
    })
}

fn factorial(k: u32) -> Rational {
    (1..=k).fold(rat(1), |acc, i| acc * rat(i64::from(i)))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Textbook Gaussian elimination over the rationals.
fn naive_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            let f = &m[r][c] / &piv;
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    det
}

fn naive_rank(mut m: Vec<Vec<Rational>>, ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..m.len() {
            let f = &m[i][c] / &m[r][c];
            for k in c..ncols {
                let v = &f * &m[r][k];
                m[i][k] -= v;
            }
        }
        r += 1;
    }
    r
}

fn matrix(n: usize, m: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(
        prop::collection::vec(prop_oneof![2 => Just(0i64), 3 => -9i64..=9].prop_map(rat), m),
        n,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn apply_diff_is_bilinear(
        (p, q, a, b) in (1usize..=3, 2u32..=5).prop_flat_map(|(n, d)| {
            (homogeneous(n, d), homogeneous(n, d), homogeneous(n, 1), homogeneous(n, 2))
        }),
        s in -5i64..=5,
    ) {
        let s = rat(s);
        let (oa, ob) = (DiffOp::new(a.clone()), DiffOp::new(b.clone()));
        let lhs = apply_diff(&oa, &(&p + &q.scale(&s))).unwrap();
        let rhs = &apply_diff(&oa, &p).unwrap() + &apply_diff(&oa, &q).unwrap().scale(&s);
        prop_assert_eq!(lhs, rhs);
        let sum = DiffOp::new(&a + &b.scale(&s));
        let lhs = apply_diff(&sum, &p).unwrap();
        let rhs = &apply_diff(&oa, &p).unwrap() + &apply_diff(&ob, &p).unwrap().scale(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_monomial_product(
        (p, alpha, beta) in (1usize..=4, 0u32..=6).prop_flat_map(|(n, d)| {
            let e = prop::collection::vec(0u32..=2, n);
            (homogeneous(n, d), e.clone(), e)
        }),
    ) {
        let (a, b) = (Exponent::new(alpha), Exponent::new(beta));
        let inner = apply_diff(&DiffOp::monomial(b.clone()), &p).unwrap();
        let lhs = apply_diff(&DiffOp::monomial(a.clone()), &inner).unwrap();
        let rhs = apply_diff(&DiffOp::monomial(&a + &b), &p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_apply_is_scaled_evaluation(
        (g, a) in (1usize..=5, 0u32..=6).prop_flat_map(|(n, d)| (homogeneous(n, d), point(n))),
    ) {
        let d = g.homogeneous_degree().unwrap_or(0);
        let got = power_apply(&a, d, &g).unwrap();
        let want = Poly::constant(g.arity(), g.eval(&a).unwrap() * factorial(d));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn derivatives_stay_homogeneous(
        (p, op) in (1usize..=4, 1u32..=5).prop_flat_map(|(n, d)| {
            (homogeneous(n, d), (0u32..=d).prop_flat_map(move |e| homogeneous(n, e)))
        }),
    ) {
        let r = apply_diff(&DiffOp::new(op.clone()), &p).unwrap();
        if let (Some(dp), Some(de)) = (p.homogeneous_degree(), op.homogeneous_degree()) {
            prop_assert!(r.is_zero() || r.homogeneous_degree() == Some(dp - de));
        }
    }

    #[test]
    fn text_round_trip(f in any_form(4, 5)) {
        let names = default_names(f.arity());
        let text = f.poly().to_text(&names);
        prop_assert_eq!(parse_poly(&text, &names).unwrap(), f);
    }

    #[test]
    fn fraction_free_matches_naive(m in (1usize..=6).prop_flat_map(|n| matrix(n, n))) {
        let det = linalg::determinant(m.clone(), rat(1), &mut Budget::unlimited()).unwrap();
        prop_assert_eq!(det, naive_det(m.clone()));
        let by_minors = linalg::det_by_minors(&m, rat(1), &mut Budget::unlimited()).unwrap();
        prop_assert_eq!(by_minors, naive_det(m));
    }

    #[test]
    fn fraction_free_rank_and_kernel(
        m in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c)),
    ) {
        let ncols = m[0].len();
        let r = linalg::rank(m.clone(), ncols, &mut Budget::unlimited()).unwrap();
        prop_assert_eq!(r, naive_rank(m.clone(), ncols));
        let ker = linalg::left_kernel(&m, ncols, &rat(1), &mut Budget::unlimited()).unwrap();
        prop_assert_eq!(ker.len(), m.len() - r);
        for v in &ker {
            prop_assert!(v.iter().any(|c| !c.is_zero()));
            for j in 0..ncols {
                let s: Rational = v.iter().zip(&m).map(|(c, row)| c * &row[j]).sum();
                prop_assert!(s.is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gorenstein_structure(f in any_form(4, 5)) {
        let h = hilbert_function(&f).unwrap();
        prop_assert!(h.is_symmetric());
        prop_assert!(gorenstein_selfcheck(&f).unwrap());
        let n = f.arity();
        for d in 0..=f.degree() as usize {
            let cat = catalecticant(&f, d).unwrap();
            let q = quotient_basis(&f, d).unwrap();
            let ann = ann_basis(&f, d).unwrap();
            prop_assert_eq!(cat.rank(), q.len());
            prop_assert_eq!(ann.len() + q.len(), binomial(n + d - 1, d));
            for op in &ann {
                prop_assert!(apply_diff(op, f.poly()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn scaling_leaves_algebra_unchanged(f in any_form(4, 4), c in prop_oneof![-7i64..=-1, 1i64..=7]) {
        let g = f.scale(&Rational::new(c.into(), 3.into())).unwrap();
        prop_assert_eq!(hilbert_function(&f).unwrap(), hilbert_function(&g).unwrap());
        for d in 0..=f.degree() as usize {
            prop_assert_eq!(quotient_basis(&f, d).unwrap(), quotient_basis(&g, d).unwrap());
            prop_assert_eq!(ann_basis(&f, d).unwrap(), ann_basis(&g, d).unwrap());
        }
    }

    #[test]
    fn hessian_eval_matches_symbolic((f, a) in form_and_point(3, 5)) {
        let cfg = Config::default();
        for d in 0..=f.degree() as usize / 2 {
            let det = hessian::hessian_det(&f, d, &cfg).unwrap();
            let alg = Algebra::new(&f).unwrap();
            let size = alg.basis(d).len();
            let want = (f.degree() as usize - 2 * d) * size;
            prop_assert!(det.is_zero() || det.homogeneous_degree() == Some(want as u32));
            prop_assert_eq!(hessian::hessian_eval(&f, d, &a).unwrap(), det.eval(&a).unwrap());
            let report = hessian::hessian_report(&f, d, &cfg).unwrap();
            prop_assert_eq!(report.is_zero(), det.is_zero());
            prop_assert_eq!(report.is_nonzero(), !det.is_zero());
            if d == 0 {
                prop_assert!(report.is_nonzero());
            }
        }
    }

    #[test]
    fn criterion_matches_multiplication_ranks((f, a) in form_and_point(4, 5)) {
        let chk = element_check(&f, &a).unwrap();
        let oracle = rank_oracle(&f, &a).unwrap();
        prop_assert_eq!(chk.is_lefschetz(), oracle.slp());
        if f.degree() <= 4 {
            let short = !chk.form_value.is_zero()
                && chk.hessian_values.first().is_none_or(|v| !v.is_zero());
            prop_assert_eq!(chk.is_lefschetz(), short);
        }
    }

    #[test]
    fn zero_hessian_blocks_every_point((f, a) in form_and_point(4, 5)) {
        let cfg = Config::default();
        for d in 1..=f.degree() as usize / 2 {
            if hessian::hessian_report(&f, d, &cfg).unwrap().is_zero() {
                prop_assert!(!rank_oracle(&f, &a).unwrap().power_bijective[d]);
                prop_assert!(!is_lefschetz_element(&f, &a).unwrap());
            }
        }
    }

    #[test]
    fn slp_implies_wlp_and_is_invariant(f in any_form(3, 4), c in 1i64..=5, rot in 0usize..3) {
        let cfg = Config::default();
        let slp = has_slp(&f, &cfg).unwrap().verdict;
        let wlp = has_wlp(&f, &cfg).unwrap().verdict;
        prop_assert!(!slp || wlp);
        let scaled = f.scale(&rat(-c)).unwrap();
        prop_assert_eq!(has_slp(&scaled, &cfg).unwrap().verdict, slp);
        let n = f.arity();
        let terms = f.poly().terms().map(|(e, v)| {
            let p = e.powers();
            let moved: Vec<u32> = (0..n).map(|i| p[(i + rot) % n]).collect();
            (Exponent::new(moved), v.clone())
        });
        let permuted = Form::new(Poly::from_terms(n, terms).unwrap()).unwrap();
        prop_assert_eq!(has_slp(&permuted, &cfg).unwrap().verdict, slp);
    }
}
