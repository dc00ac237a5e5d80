use qdisc::commring::*;
use qdisc::poly::LPoly;
use qdisc::CycScalar;

fn strings(v: &[RingElement]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(ToString::to_string).collect();
    s.sort();
    s
}

#[test]
fn cube_of_the_maximal_ideal_pair() {
    let z = a2_singularity();
    let i = vec![z.var(0), z.var(2)];
    assert_eq!(strings(&ideal_power(&i, 3).unwrap()), vec!["a*c^2", "a^2*c", "a^3", "c^3"]);
    assert_eq!(strings(&ideal_power(&i, 1).unwrap()), vec!["a", "c"]);
    assert_eq!(strings(&ideal_power(&[z.var(0)], 2).unwrap()), vec!["a^2"]);
}

#[test]
fn hull_of_the_cube() {
    let z = a2_singularity();
    let cube = ideal_power(&[z.var(0), z.var(2)], 3).unwrap();
    let out = pcc_check(&cube, &z.var(0)).unwrap();
    assert!(out.holds);
    assert_eq!(strings(&out.quotient_generators), vec!["a*c", "a^2", "b", "c^2"]);
    assert_eq!(out.quotient_dim, Some(0));
    assert_eq!(out.ring_dim, 2);
}

#[test]
fn unit_candidate_fails_for_the_ideal_itself() {
    let z = a2_singularity();
    let one = z.constant(CycScalar::one());
    let out = pcc_check(&[z.var(0), z.var(2)], &one).unwrap();
    assert!(!out.holds);
    assert_eq!(out.quotient_dim, Some(1));
    let principal = pcc_check(&[z.var(2)], &z.var(2)).unwrap();
    assert!(principal.holds && principal.quotient_dim.is_none());
}

#[test]
fn matrix_order_table() {
    let z = a2_singularity();
    let gens = a2_matrix_order(&z);
    let md4 = matrix_order_md(&z, &gens, 4).unwrap();
    assert_eq!(strings(&md4), vec!["a*c", "a^2", "c^2"]);
    assert_eq!(ppower_entry(&md4, &z, 3, true).unwrap(), PPowerEntry::Generator(z.monomial(&[2])));
    assert_eq!(ppower_entry(&md4, &z, 6, true).unwrap(), PPowerEntry::Generator(z.monomial(&[4])));
    assert_eq!(ppower_entry(&md4, &z, 1, true).unwrap(), PPowerEntry::DoesNotExist);
    assert!(matches!(ppower_entry(&md4, &z, 1, false).unwrap(), PPowerEntry::Undecided(_)));
    for p in 1..=3 {
        let md5 = matrix_order_md(&z, &gens, 5).unwrap();
        assert_eq!(ppower_entry(&md5, &z, p, true).unwrap(), PPowerEntry::Zero);
    }
    for w in 1..=2 {
        let md = matrix_order_md(&z, &gens, w).unwrap();
        assert_eq!(ppower_entry(&md, &z, 1, true).unwrap().to_string(), "1");
    }
}

// Computed from scratch, the rank-3 ideal is (a, c): its hull exists for
// 3 | p and equals a^{p/3}, so the row listing 1 for every p does not hold.
#[test]
fn rank_three_row() {
    let z = a2_singularity();
    let md3 = matrix_order_md(&z, &a2_matrix_order(&z), 3).unwrap();
    assert_eq!(strings(&md3), vec!["a", "c"]);
    assert_eq!(ppower_entry(&md3, &z, 3, false).unwrap(), PPowerEntry::Generator(z.var(0)));
    assert_eq!(ppower_entry(&md3, &z, 6, false).unwrap(), PPowerEntry::Generator(z.monomial(&[2])));
    assert_ne!(ppower_entry(&md3, &z, 1, false).unwrap().to_string(), "1");
}

// independent check on the degree ≤ 8 slice: every generator is d times its
// quotient, and the standard monomials of the quotient are finitely many
#[test]
fn pcc_success_is_sound_on_a_slice() {
    let z = a2_singularity();
    let cube = ideal_power(&[z.var(0), z.var(2)], 3).unwrap();
    let d = z.var(0);
    let out = pcc_check(&cube, &d).unwrap();
    for (g, q) in cube.iter().zip(cube.iter().map(|g| g.exact_div(&d).unwrap().unwrap())) {
        assert_eq!(&q.mul(&d).normalized(), &g.normalized());
    }
    let lead: Vec<Vec<i64>> = out.quotient_generators.iter().map(|g| g.as_monomial().unwrap()).collect();
    let mut standard = Vec::new();
    for a in 0..=8i64 {
        for b in 0..=8i64 {
            for c in 0..=8i64 {
                let e = vec![a, b, c];
                if !z.is_normal_monomial(&e) {
                    continue;
                }
                let in_j = lead.iter().any(|g| (0..3).all(|i| LPoly::exponent(g, i) <= e[i]));
                if !in_j {
                    standard.push(e);
                }
            }
        }
    }
    assert_eq!(standard.len(), 3);
}

#[test]
fn division_refusals() {
    let z = a2_singularity();
    let sum = z.var(0).add(&z.var(2));
    assert!(z.var(0).exact_div(&sum).is_err());
    let ungraded = PresentedCommRing::new("k[a,b,c]/(ab - c - 1)", &["a", "b", "c"], vec![Rule { left: (0, 1), rhs: &LPoly::var(2) + &LPoly::one() }], None).unwrap();
    let a = ungraded.var(0);
    assert!(matches!(a.exact_div(&a), Err(qdisc::Error::Refused(_))));
}
