use std::sync::Arc;

use qdisc::intlattice::coset_representatives;
use qdisc::skewpoly::{self, SkewAlgebra, SkewElement};
use qdisc::CycScalar;

fn three_var(p12: i64, p13: i64, p23: i64) -> Arc<SkewAlgebra> {
    SkewAlgebra::new("k_p[x1,x2,x3]", 2, &[vec![0, p12, p13], vec![-p12, 0, p23], vec![-p13, -p23, 0]]).unwrap()
}

// p12 = -1, p13 = p23 = 1
fn first() -> Arc<SkewAlgebra> {
    three_var(1, 0, 0)
}

// p12 = p13 = -1, p23 = 1
fn second() -> Arc<SkewAlgebra> {
    three_var(1, 1, 0)
}

// all p_ij = -1
fn third() -> Arc<SkewAlgebra> {
    three_var(1, 1, 1)
}

#[test]
fn ranks_over_center() {
    assert_eq!(first().rank(), 4);
    assert_eq!(second().rank(), 4);
    assert_eq!(third().rank(), 4);
}

#[test]
fn reflexive_discriminants_of_three_variable_examples() {
    let cases = [(first(), "x1^4*x2^4"), (second(), "x1^4"), (third(), "1")];
    for (alg, expected) in cases {
        let (report, charts) = skewpoly::reflexive_discriminant(&alg).unwrap();
        assert_eq!(report.discriminant, expected);
        assert_eq!(charts.len(), 3);
        assert_eq!(report.charts.len(), 3);
    }
}

#[test]
fn generating_box_sizes() {
    assert_eq!(skewpoly::box_generating_set(&first()).len(), 4);
    assert_eq!(skewpoly::box_generating_set(&second()).len(), 8);
    assert_eq!(skewpoly::box_generating_set(&third()).len(), 8);
}

#[test]
fn second_example_chart_inverting_x2_x3() {
    let alg = second();
    let c = skewpoly::chart_local_discriminant(&alg, 0).unwrap();
    assert_eq!(c.exponent, 4);
}

#[test]
fn cube_of_central_element_in_third_example() {
    let alg = third();
    let z = SkewElement::monomial(&alg, &[1, 1, 1], CycScalar::one());
    let z2 = z.mul(&z).unwrap();
    // brute-force reordering of x1x2x3x1x2x3: moving x1 past x3,x2 and x2 past x3 gives three sign flips
    let expected = SkewElement::monomial(&alg, &[2, 2, 2], CycScalar::from_int(-1));
    assert_eq!(z2, expected);
    assert!(z2.is_central());
}

#[test]
fn exhaustive_minors_agree_with_charts() {
    for alg in [first(), second(), third()] {
        let gens = skewpoly::box_generating_set(&alg);
        let ideal = skewpoly::md_exhaustive(&alg, &gens, 4).unwrap();
        let exps = skewpoly::minor_exponents(&ideal).unwrap();
        let hull = skewpoly::monomial_hull(&exps).unwrap();
        let (report, charts) = skewpoly::reflexive_discriminant(&alg).unwrap();
        for c in &charts {
            assert_eq!(hull.generator[c.chart], c.exponent, "{}", report.discriminant);
        }
        assert!(hull.pcc_holds);
    }
}

#[test]
fn quantum_plane_at_minus_one() {
    let alg = SkewAlgebra::quantum_plane("qp", 1, 2).unwrap();
    let gens = skewpoly::box_generating_set(&alg);
    let ideal = skewpoly::md_exhaustive(&alg, &gens, 4).unwrap();
    let exps = skewpoly::minor_exponents(&ideal).unwrap();
    // single minor det diag(4, 4x^2, 4y^2, 4λx^2y^2)
    assert_eq!(exps, vec![vec![4, 4]]);
    let (report, _) = skewpoly::reflexive_discriminant(&alg).unwrap();
    assert_eq!(report.discriminant, "x1^4*x2^4");
}

#[test]
fn matrix_trace_matches_lattice_rule() {
    for alg in [first(), second(), third()] {
        for g in skewpoly::box_generating_set(&alg) {
            let f = SkewElement::monomial(&alg, &g, CycScalar::one());
            for chart in 0..3 {
                assert_eq!(f.matrix_trace(chart), f.trace());
            }
        }
    }
}

#[test]
fn representatives_are_distinct_cosets() {
    let alg = second();
    let reps = coset_representatives(alg.lattice(), None);
    assert_eq!(reps.len(), 4);
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            assert!(!alg.lattice().contains(&d));
        }
    }
}
