#![allow(clippy::needless_range_loop)]

use hesslab::apolar::{hilbert_function, Algebra};
use hesslab::catalog::{self, FamilySpec};
use hesslab::hessian::{self, hessian_entries};
use hesslab::lefschetz::{has_slp, has_wlp, is_lefschetz_element, lefschetz_locus};
use hesslab::parse::parse_polynomial;
use hesslab::poly::{apply_diff, rat, DiffOp, Poly};
use hesslab::Config;

fn fam(name: &str, params: &[(&str, &str)]) -> catalog::Built {
    let mut spec = FamilySpec::new(name);
    for (k, v) in params {
        spec = spec.with(*k, *v);
    }
    catalog::build(&spec).unwrap()
}

fn op(vars: &[String], text: &str) -> DiffOp {
    DiffOp::new(parse_polynomial(&text.to_lowercase(), vars).unwrap())
}

#[test]
fn stacked_squares_dimension_law() {
    for n in 2..=6u32 {
        let b = fam("stacked_squares", &[("n", &n.to_string())]);
        let dims = hilbert_function(&b.form).unwrap().dims;
        let n = n as usize;
        assert_eq!(dims.len(), n + 3);
        assert_eq!((dims[0], dims[1]), (1, n + 3));
        for d in 2..=n {
            assert_eq!(dims[d], (d + 1) * n + 2 * d + 4 - d * d, "n={n} d={d}");
        }
    }
}

/// `2^(n+1) (uv)^(n(n-1)/2) { P Q - uv R^2 }` in the ring `(u, v, x0..xn)`.
/// Its degree is `n^2 + n + 2`, short of `deg Hess = n(n+3)` by `2(n-1)`.
fn stacked_hessian_formula(n: i64, vars: &[String]) -> Poly {
    let k = vars.len();
    let u = Poly::var(k, 0);
    let v = Poly::var(k, 1);
    let x = |j: i64| Poly::var(k, 2 + j as usize);
    let term = |c: i64, j: i64, pu: i64, pv: i64| {
        (&(&x(j).pow(2) * &u.pow(pu as u32)) * &v.pow(pv as u32)).scale(&rat(c))
    };
    let mut p = Poly::zero(k);
    for j in 0..n {
        p = &p + &term((n - j) * (n - j + 1), j, n - j - 1, j);
    }
    let mut q = Poly::zero(k);
    for j in 1..=n {
        q = &q + &term(j * (j + 1), j, n - j, j - 1);
    }
    let mut r = Poly::zero(k);
    for j in 1..n {
        r = &r + &term(j * (n - j), j, n - j - 1, j - 1);
    }
    let uv = &u * &v;
    let braces = &(&p * &q) - &(&uv * &r.pow(2));
    let lead = uv.pow((n * (n - 1) / 2) as u32).scale(&rat(1 << (n + 1)));
    &lead * &braces
}

#[test]
fn stacked_squares_hessian() {
    let cfg = Config::default();
    for n in 2..=5 {
        let b = fam("stacked_squares", &[("n", &n.to_string())]);
        let got = hessian::hessian_det(&b.form, 1, &cfg).unwrap();
        let k = b.variables.len();
        let uv = &Poly::var(k, 0) * &Poly::var(k, 1);
        // the prefactor exponent is really (n-1)(n+2)/2
        let want = &uv.pow((n - 1) as u32) * &stacked_hessian_formula(n, &b.variables);
        assert_eq!(got, want, "n={n}");
    }
}

#[test]
fn stacked_squares_second_derivatives() {
    let n = 4i64;
    let b = fam("stacked_squares", &[("n", "4")]);
    let f = b.form.poly();
    let vars = &b.variables;
    for i in 0..=n {
        let xi = format!("x{i}^2");
        let cases = [
            ("u^2", 2 * (n - i) * (n - i - 1), n - i - 2, i),
            ("u*v", 2 * (n - i) * i, n - i - 1, i - 1),
            ("v^2", 2 * i * (i - 1), n - i, i - 2),
        ];
        for (m, c, pu, pv) in cases {
            let got = apply_diff(&op(vars, &format!("{xi}*{m}")), f).unwrap();
            let want = if c == 0 {
                Poly::zero(vars.len())
            } else {
                parse_polynomial(&format!("{c}*u^{pu}*v^{pv}"), vars).unwrap()
            };
            assert_eq!(got, want, "i={i} {m}");
        }
    }
}

#[test]
fn quintic_dependence_vectors() {
    let b = fam("quintic5", &[]);
    let vars = &b.variables;
    let basis = [
        "U^2", "V^2", "U*V", "X^2", "Y^2", "Z^2", "X*Y", "U*X", "U*Y", "V*X", "V*Y", "V*Z",
    ];
    let ops: Vec<DiffOp> = basis.iter().map(|t| op(vars, t)).collect();
    let h = hessian_entries(&b.form, &ops).unwrap();
    let p = |t: &str| parse_polynomial(t, vars).unwrap();
    let z = Poly::zero(5);
    // columns are U^2, V^2, UV; the familiar triples list them as U^2, UV, V^2
    assert_eq!(h[3][..3], [p("12*u"), z.clone(), z.clone()]);
    assert_eq!(h[4][..3], [z.clone(), p("4*u"), p("4*v")]);
    assert_eq!(h[5][..3], [z.clone(), p("12*v"), z.clone()]);
    assert_eq!(h[6][..3], [p("2*v"), z.clone(), p("2*u")]);
    for row in &h[3..7] {
        assert!(row[3..].iter().all(Poly::is_zero));
    }
    // the basis spans A_2, so the determinant is the zero polynomial
    let det = hesslab::linalg::det_by_minors(&h, Poly::one(5), &mut hesslab::linalg::Budget::unlimited())
        .unwrap();
    assert!(det.is_zero());
}

#[test]
fn quintic_first_hessian() {
    let b = fam("quintic5", &[]);
    let got = hessian::hessian_det(&b.form, 1, &Config::default()).unwrap();
    let want = parse_polynomial(
        "48*u^3*v^3*(u^5*x^4+8*u^4*v*x^3*y+16*u^3*v^2*x^2*y^2+19*u^2*v^3*x^2*z^2\
         +9*u^2*v^3*x*y^3+13*u*v^4*x*y*z^2+2*u*v^4*y^4+4*v^5*y^2*z^2)",
        &b.variables,
    )
    .unwrap();
    assert_eq!(got, want);
}

#[test]
fn ikeda_dependence_and_basis() {
    let b = fam("ikeda", &[]);
    let vars = &b.variables;
    let basis = ["W^2", "X^2", "Y^2", "Z^2", "W*X", "W*Y", "W*Z", "X*Y", "X*Z", "Y*Z"];
    let ops: Vec<DiffOp> = basis.iter().map(|t| op(vars, t)).collect();
    let h = hessian_entries(&b.form, &ops).unwrap();
    let rows: Vec<Vec<Poly>> = h[5..9].to_vec();
    let rank = hesslab::certify::generic_rank(&rows, 10, 4, &Config::default(), 0).unwrap();
    assert!(rank.rank < 4);
    // the displayed monomials do form a basis of A_2
    let alg = Algebra::new(&b.form).unwrap();
    assert_eq!(alg.basis(2).len(), 10);
    assert!(hessian::hessian_matrix(
        &b.form,
        2,
        &hesslab::apolar::GradedBasis {
            d: 2,
            monomials: ops
                .iter()
                .map(|o| o.poly().leading_term().unwrap().0.clone())
                .collect(),
        },
    )
    .is_ok());
}

#[test]
fn wz_hessian_vanishes() {
    let b = fam("wz_zero_hessian", &[]);
    let cfg = Config::default();
    assert!(hessian::hessian_det(&b.form, 1, &cfg).unwrap().is_zero());
    let r = hessian::hessian_report(&b.form, 1, &cfg).unwrap();
    assert!(r.is_zero());
    assert!(!has_slp(&b.form, &cfg).unwrap().verdict);
}

#[test]
fn fermat_three_at_minus_one() {
    let b = fam("fermat", &[("n", "3"), ("s", "-1")]);
    let h = hessian::hessian_det(&b.form, 1, &Config::default()).unwrap();
    // s^2 (a^3+b^3+c^3) - (1 - 2 s^3) abc at s = -1
    let want = parse_polynomial("x^3+y^3+z^3-3*x*y*z", &b.variables).unwrap();
    assert!(h.ratio_to(&want).is_some());
    assert_eq!(hilbert_function(&b.form).unwrap().dims, vec![1, 3, 3, 1]);
}

#[test]
fn fermat_four_hilbert_for_nonzero_s() {
    for s in ["-1", "2", "1/3"] {
        let b = fam("fermat", &[("n", "4"), ("s", s)]);
        assert_eq!(hilbert_function(&b.form).unwrap().dims, vec![1, 4, 10, 4, 1], "s={s}");
        assert!(has_slp(&b.form, &Config::default()).unwrap().verdict);
    }
}

#[test]
fn s3_lefschetz_set() {
    let b = fam("s3_coinvariant", &[]);
    let locus = lefschetz_locus(&b.form, &Config::default()).unwrap();
    let q = parse_polynomial("x^2+y^2+z^2-x*y-y*z-z*x", &b.variables).unwrap();
    assert_eq!(locus.entries[1].poly, q.scale(&rat(-4)));
    // over the reals the quadric only vanishes on the line x = y = z, where
    // the discriminant vanishes too
    for p in [[1, 2, 3], [0, 5, -1], [3, 1, 2]] {
        let a: Vec<_> = p.iter().map(|&v| rat(v)).collect();
        assert!(is_lefschetz_element(&b.form, &a).unwrap());
    }
    for p in [[1, 1, 3], [2, 0, 2], [4, 4, 4]] {
        let a: Vec<_> = p.iter().map(|&v| rat(v)).collect();
        assert!(!is_lefschetz_element(&b.form, &a).unwrap());
    }
}

#[test]
fn unimodal_failures_of_wlp() {
    let cfg = Config::default();
    let b = fam("stacked_squares", &[("n", "3")]);
    let w = has_wlp(&b.form, &cfg).unwrap();
    assert_eq!(w.profile.map_ranks, vec![1, 6, 12, 6, 1]);
    // the upper bound is certified by a verified dependency
    let cert = &w.map_certificates[2];
    let alg = Algebra::new(&b.form).unwrap();
    let m = hesslab::lefschetz::multiplication_matrix(&alg, 2).unwrap();
    let oriented = if cert.transposed {
        hesslab::linalg::transpose(&m, 13)
    } else {
        m
    };
    for dep in &cert.dependencies {
        assert!(hesslab::certify::verify_dependency(&oriented, dep));
    }
}
