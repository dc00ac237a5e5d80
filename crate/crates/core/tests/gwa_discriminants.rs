use std::sync::Arc;

use qdisc::disccore::{self, Method};
use qdisc::gwa::*;
use qdisc::poly::{LPoly, UniPoly};
use qdisc::{CycScalar, Error};

fn degree_one(order: u32, h: &[i64]) -> Arc<GwaAlgebra> {
    GwaAlgebra::new("W", order, &[1], vec![UniPoly::from_ints(h)]).unwrap()
}

fn two_three() -> Arc<GwaAlgebra> {
    GwaAlgebra::new("W(2,3)", 6, &[3, 2], vec![UniPoly::from_ints(&[-1, 0, 0, 1]), UniPoly::from_ints(&[-1, 0, 1])]).unwrap()
}

fn c_power(k: usize) -> UniPoly {
    UniPoly::monomial(CycScalar::one(), k)
}

fn int(k: i64) -> CycScalar {
    CycScalar::from_int(k)
}

#[test]
fn rewriting_orders_agree() {
    for alg in [degree_one(2, &[-1, 0, 1]), degree_one(3, &[-1, 1])] {
        let (x, y) = (GwaElement::x(&alg, 0), GwaElement::y(&alg, 0));
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let grouped = x.pow(a).mul(&y.pow(b)).unwrap();
                let mut from_right = y.pow(b);
                for _ in 0..a {
                    from_right = x.mul(&from_right).unwrap();
                }
                assert_eq!(grouped, from_right, "x^{} y^{}", a, b);
            }
        }
    }
}

#[test]
fn ambient_mismatch_is_an_error() {
    let a = degree_one(2, &[-1, 0, 1]);
    let b = degree_one(2, &[-1, 0, 1]);
    assert_eq!(GwaElement::x(&a, 0).mul(&GwaElement::x(&b, 0)), Err(Error::AmbientMismatch));
}

#[test]
fn invalid_presentations_rejected() {
    assert!(GwaAlgebra::new("W", 2, &[2], vec![UniPoly::from_ints(&[0, 1])]).is_err());
    assert!(GwaAlgebra::new("W", 2, &[1], vec![UniPoly::from_ints(&[3])]).is_err());
    // σ_2 must fix h_1: t^2 - 1 is not fixed by t ↦ ζ_3 t
    assert!(GwaAlgebra::new("W", 6, &[3, 2], vec![UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[-1, 0, 1])]).is_err());
    let shared = GwaAlgebra::new("W", 4, &[2, 2], vec![UniPoly::from_ints(&[0, 0, 1]), UniPoly::from_ints(&[0, 0, 1])]).unwrap();
    assert!(matches!(reflexive_discriminant(&shared), Err(Error::Refused(_))));
}

#[test]
fn center_relations() {
    let w = degree_one(2, &[-1, 0, 1]);
    let z = center_presentation(&w).unwrap();
    // h(t) h(-t) = (t^2 - 1)^2
    assert_eq!(z.relations, vec![UniPoly::from_ints(&[1, -2, 1])]);
    for n in 2..=5u32 {
        let plane = degree_one(n, &[0, 1]);
        let p = center_presentation(&plane).unwrap().relations[0].clone();
        let q_pow = CycScalar::root((n * (n - 1) / 2) as i64, n);
        assert_eq!(p, UniPoly::monomial(q_pow, 1), "n = {}", n);
    }
    let z = center_presentation(&two_three()).unwrap();
    assert_eq!(z.ring.nvars(), 5);
    assert_eq!(z.ring.rules().len(), 2);
    for (ai, bi) in z.a.iter().zip(&z.b) {
        assert!(ai.commutes_with_generators() && bi.commutes_with_generators());
    }
    assert!(z.c.commutes_with_generators());
}

#[test]
fn traces_of_monomials() {
    let w = degree_one(2, &[-1, 0, 1]);
    let tm = trace_matrix(&w).unwrap();
    assert_eq!(tm.labels, vec!["1", "t", "x", "x*t", "y", "y*t"]);
    let at = |r: &str, c: &str| {
        let i = tm.labels.iter().position(|l| l == r).unwrap();
        let j = tm.labels.iter().position(|l| l == c).unwrap();
        tm.entries[i][j].clone()
    };
    assert_eq!(at("t", "t"), GwaElement::poly(&w, UniPoly::monomial(int(4), 2)));
    assert_eq!(at("x", "y"), GwaElement::poly(&w, UniPoly::from_ints(&[-4, 0, 4])));
    assert_eq!(at("x", "x"), GwaElement::term(&w, &[2], UniPoly::constant(int(4))));
    assert!(at("x", "t").is_zero());
}

#[test]
fn fast_trace_matches_left_multiplication() {
    for alg in [degree_one(2, &[-1, 0, 1]), degree_one(3, &[-1, 1]), degree_one(3, &[2, 0, 0, 1])] {
        for pattern in all_patterns(1) {
            for g in generating_set(&alg) {
                let e = GwaElement::z_t(&alg, &g.0, g.1);
                let fast = central_to_chart(&e.trace(), &pattern).unwrap();
                assert_eq!(fast, slow_trace(&e, &pattern).unwrap(), "{}", generator_label(&alg, &g));
            }
        }
    }
}

#[test]
fn chart_discriminants_in_degree_one() {
    for (order, h, k) in [(2, vec![-1, 0, 1], 2), (3, vec![-1, 1], 6)] {
        let alg = degree_one(order, &h);
        for pattern in all_patterns(1) {
            let ch = local_discriminant(&alg, &pattern).unwrap();
            assert_eq!((ch.v_exponents.clone(), ch.c_exponent), (vec![k], k), "{}", ch.display());
            assert_eq!(ch.basis_size, (order * order) as usize);
        }
    }
}

#[test]
fn chart_discriminant_for_orders_two_and_three() {
    let alg = two_three();
    let ch = local_discriminant(&alg, &[true, true]).unwrap();
    // c^{n(n-1)} ∏ a_j^{n(n - n/n_j)} with n = 6
    assert_eq!(ch.c_exponent, 30);
    assert_eq!(ch.v_exponents, vec![18, 24]);
    assert_eq!(ch.basis_size, 36);
}

#[test]
fn reflexive_discriminants() {
    let cases = [(degree_one(2, &[-1, 0, 1]), "t^4", 2), (degree_one(3, &[-1, 1]), "t^18", 2), (two_three(), "t^180", 4)];
    for (alg, expected, charts) in cases {
        let (rep, evidence) = reflexive_discriminant(&alg).unwrap();
        assert_eq!(rep.discriminant, expected);
        assert_eq!(rep.flavor, "csr");
        assert_eq!(evidence.len(), charts);
        let n = alg.n() as i64;
        assert!(evidence.iter().all(|c| c.c_exponent == n * (n - 1)));
        assert!(!rep.paper_justified_steps.is_empty());
    }
}

#[test]
fn sparsity_holds_and_detects_corruption() {
    for alg in [degree_one(2, &[-1, 0, 1]), degree_one(3, &[-1, 1]), two_three()] {
        trace_matrix(&alg).unwrap();
    }
    let alg = degree_one(3, &[-1, 1]);
    let corrupted = |f: &GwaElement| {
        let tr = f.trace();
        if tr.is_zero() {
            GwaElement::t(f.algebra())
        } else {
            tr
        }
    };
    assert!(matches!(trace_matrix_with(&alg, corrupted), Err(Error::Assertion(_))));
}

#[test]
fn x_row_meets_two_y_columns_for_quantum_weyl() {
    let alg = degree_one(3, &[-1, 1]);
    let tm = trace_matrix(&alg).unwrap();
    let row = tm.labels.iter().position(|l| l == "x").unwrap();
    let hits: Vec<&str> = (0..tm.labels.len()).filter(|&c| !tm.entries[row][c].is_zero()).map(|c| tm.labels[c].as_str()).collect();
    assert_eq!(hits, vec!["x^2", "y", "y*t^2"]);
}

#[test]
fn quasi_basis_coefficients() {
    let alg = degree_one(2, &[-1, 0, 1]);
    let md = md_chart(&alg, &[true]).unwrap();
    assert_eq!(md.method, Method::QuasiBasis);
    let names: Vec<String> = md.var_names.clone();
    let y = generating_set(&alg).iter().position(|g| g == &(vec![-1], 0)).unwrap();
    let nonzero: Vec<String> = md.rows[y].iter().filter(|c| !c.is_zero()).map(|c| show(c, &names)).collect();
    assert_eq!(nonzero, vec!["a^-1*c - a^-1"]);

    let weyl = degree_one(3, &[-1, 1]);
    let md = md_chart(&weyl, &[true]).unwrap();
    assert_eq!(md.method, Method::SemiBasis);
    assert_eq!(md.quasi_basis_failure.as_deref(), Some("y"));
    assert!(matches!(quasi_basis_data(&weyl), Err(Error::Refused(_))));
}

#[test]
fn modified_discriminant_is_locally_principal() {
    for alg in [degree_one(2, &[-1, 0, 1]), degree_one(3, &[-1, 1]), degree_one(2, &[0, 1])] {
        let n = alg.n() as usize;
        let rep = md_report(&alg).unwrap();
        assert!(rep.divisible, "generators divisible by t^{}", n * n * (n - 1));
        assert!(rep.locally_principal);
        for ch in &rep.charts {
            assert_eq!(ch.principal_part().unwrap(), c_power(n * (n - 1)));
        }
    }
}

#[test]
fn exhaustive_minors_factor_through_coefficients() {
    let alg = degree_one(2, &[-1, 0, 1]);
    let ideal = md_exhaustive(&alg).unwrap();
    let md = md_chart(&alg, &[true]).unwrap();
    let one = LPoly::one();
    let det_rows = |rows: &[usize]| {
        let m: Vec<Vec<LPoly>> = rows.iter().map(|&r| md.rows[r].clone()).collect();
        disccore::determinant(&m, &one)
    };
    let all = disccore::all_minors(
        &trace_matrix(&alg)
            .unwrap()
            .entries
            .iter()
            .map(|r| r.iter().map(|e| central_to_chart(e, &[true]).unwrap()).collect())
            .collect::<Vec<Vec<LPoly>>>(),
        4,
        &one,
    )
    .unwrap();
    let total = disccore::subsets(6, 4).len().pow(2);
    assert_eq!(total, 225);
    assert_eq!(ideal.generators.len(), all.len());
    for minor in &all {
        let expected = &(&det_rows(&minor.rows) * &md.basis_discriminant) * &det_rows(&minor.cols);
        assert_eq!(minor.value, expected);
    }
    // the nonzero minors generate the same ideal as the quasi-basis products
    let lhs = disccore::dedup_up_to_scalar(ideal.generators);
    let rhs = disccore::dedup_up_to_scalar(md.generators());
    for g in &lhs {
        assert!(rhs.contains(g));
    }
}

#[test]
fn divisibility_after_conversion() {
    let alg = degree_one(2, &[-1, 0, 1]);
    // a^-1 (c - 1)^2 = b
    let p = &LPoly::monomial(&[-1, 0], CycScalar::one()) * &LPoly::from_unipoly(&UniPoly::from_ints(&[1, -2, 1]), 1);
    let w = a_chart_to_element(&alg, &p).unwrap().unwrap();
    assert_eq!(w, GwaElement::y(&alg, 0).pow(2));
    let not_central = LPoly::monomial(&[-1, 1], CycScalar::one());
    assert!(a_chart_to_element(&alg, &not_central).unwrap().is_none());
}
