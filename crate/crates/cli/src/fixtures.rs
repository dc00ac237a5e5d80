//! Built-in fixture suite behind `qdisc verify-paper`.

use std::fmt::Write as _;
use std::path::Path;

use qdisc::commring;
use qdisc::gwa;
use qdisc::morphisms::{self, CheckedMorphism};
use qdisc::CycScalar;
use serde::{Deserialize, Serialize};

use crate::commands::{self, SCHEMA};
use crate::spec::{self, Algebra};
use crate::{CliError, Output};

pub const SKEW_FIRST: &str = include_str!("../../../fixtures/skew_first.toml");
pub const SKEW_SECOND: &str = include_str!("../../../fixtures/skew_second.toml");
pub const SKEW_THIRD: &str = include_str!("../../../fixtures/skew_third.toml");
pub const QUANTUM_PLANE: &str = include_str!("../../../fixtures/quantum_plane.toml");
pub const WEYL_N2: &str = include_str!("../../../fixtures/weyl_n2.toml");
pub const WEYL_N3: &str = include_str!("../../../fixtures/weyl_n3.toml");
pub const GWA_2_3: &str = include_str!("../../../fixtures/gwa_2_3.toml");
pub const WEYL_SHIFTED: &str = include_str!("../../../fixtures/weyl_shifted.toml");
pub const WEYL5_Q: &str = include_str!("../../../fixtures/weyl5_q.toml");
pub const WEYL5_QINV: &str = include_str!("../../../fixtures/weyl5_qinv.toml");
pub const A2_MATRIX_ORDER: &str = include_str!("../../../fixtures/a2_matrix_order.toml");

pub fn embedded(text: &str) -> Result<Algebra, CliError> {
    spec::parse(text, Path::new("."))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FixtureResult {
    pub group: String,
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SuiteReport {
    pub schema: u32,
    pub algebra: String,
    pub flavor: String,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<FixtureResult>,
    pub method: String,
}

struct Suite {
    group: &'static str,
    results: Vec<FixtureResult>,
}

impl Suite {
    fn record(&mut self, name: &str, expected: impl ToString, got: Result<String, CliError>) {
        let expected = expected.to_string();
        let (got, pass) = match got {
            Ok(g) => (g.clone(), g == expected),
            Err(e) => (format!("error: {}", e), false),
        };
        self.results.push(FixtureResult { group: self.group.to_string(), name: name.to_string(), expected, got, pass });
    }
}

fn gwa_of(text: &str) -> Result<std::sync::Arc<qdisc::gwa::GwaAlgebra>, CliError> {
    match embedded(text)? {
        Algebra::Gwa(a) => Ok(a),
        other => Err(CliError::input(format!("expected a gwa fixture, got {}", other.kind()))),
    }
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn skew_group(s: &mut Suite) {
    s.group = "skew polynomial rings";
    for (name, text, expected) in [("n = 3, p12 = -1", SKEW_FIRST, "x1^4*x2^4"), ("n = 3, p12 = p13 = -1", SKEW_SECOND, "x1^4"), ("n = 3, all p_ij = -1", SKEW_THIRD, "1")] {
        let got = embedded(text).and_then(|a| commands::discriminant(&a)).map(|r| format!("{}{}", r.discriminant, if r.charts.is_empty() { " (no chart evidence)" } else { "" }));
        s.record(name, expected, got);
    }
}

fn commring_group(s: &mut Suite) {
    s.group = "p-power discriminants";
    let data = match embedded(A2_MATRIX_ORDER) {
        Ok(Algebra::CommRing(c)) => c,
        _ => {
            s.record("load ring", "ok", Err(CliError::input("commring fixture did not load".into())));
            return;
        }
    };
    let z = &data.ring;
    let gens = data.matrix_order.clone().unwrap_or_default();
    let i = vec![z.var(0), z.var(2)];
    let sorted = |v: &[commring::RingElement]| {
        let mut s: Vec<String> = v.iter().map(ToString::to_string).collect();
        s.sort();
        s.join(", ")
    };
    s.record("I^3 for I = (a, c)", "a*c^2, a^2*c, a^3, c^3", commring::ideal_power(&i, 3).map(|v| sorted(&v)).map_err(CliError::from));
    let cube = commring::ideal_power(&i, 3).unwrap_or_default();
    s.record("hull of I^3 is (a)", "yes", commring::pcc_check(&cube, &z.var(0)).map(|o| yes(o.holds)).map_err(CliError::from));
    let entry = |w: usize, p: u32| -> Result<String, CliError> {
        let md = commring::matrix_order_md(z, &gens, w)?;
        Ok(commring::ppower_entry(&md, z, p, data.tabulated)?.to_string())
    };
    for (w, p, expected) in [(1, 1, "1"), (2, 1, "1"), (4, 3, "a^2"), (4, 1, "does not exist"), (4, 2, "does not exist"), (4, 6, "a^4"), (5, 1, "0"), (3, 3, "a")] {
        s.record(&format!("w = {}, p = {}", w, p), expected, entry(w, p));
    }
    let md3 = commring::matrix_order_md(z, &gens, 3).map(|v| sorted(&v)).map_err(CliError::from);
    s.record("MD_3 generators", "a, c", md3);
}

fn gwa_group(s: &mut Suite) {
    s.group = "quantum generalized Weyl algebras";
    for (name, text, expected) in [("n = 2, h = t^2 - 1", WEYL_N2, "t^4"), ("n = 3, h = t - 1", WEYL_N3, "t^18"), ("(n1, n2) = (2, 3)", GWA_2_3, "t^180")] {
        let got = gwa_of(text).and_then(|a| Ok(gwa::reflexive_discriminant(&a)?.0.discriminant));
        s.record(name, expected, got);
    }
    for (name, text) in [("n = 2 MD locally principal and divisible", WEYL_N2), ("n = 3 MD locally principal and divisible", WEYL_N3)] {
        let got = gwa_of(text).and_then(|a| {
            let r = gwa::md_report(&a)?;
            Ok(yes(r.divisible && r.locally_principal))
        });
        s.record(name, "yes", got);
    }
    let got = gwa_of(GWA_2_3).and_then(|a| {
        let ch = gwa::local_discriminant(&a, &[true, true])?;
        Ok(format!("c^{}*a1^{}*a2^{}", ch.c_exponent, ch.v_exponents[0], ch.v_exponents[1]))
    });
    s.record("(2, 3) local discriminant on a1*a2 ≠ 0", "c^30*a1^18*a2^24", got);
    let got = gwa_of(GWA_2_3).and_then(|a| {
        let charts: Vec<i64> = gwa::all_patterns(2).iter().map(|p| gwa::local_discriminant(&a, p).map(|c| c.c_exponent)).collect::<Result<_, _>>()?;
        Ok(format!("{} charts, c-exponents {:?}", charts.len(), charts))
    });
    s.record("(2, 3) charts agree", "4 charts, c-exponents [30, 30, 30, 30]", got);
}

fn tensor_group(s: &mut Suite) {
    s.group = "tensor products";
    let pair = |l: &str, r: &str| -> Result<(Algebra, Algebra), CliError> { Ok((embedded(l)?, embedded(r)?)) };
    for (name, l, r) in [("plane ⊗ plane MD identity", QUANTUM_PLANE, QUANTUM_PLANE), ("(n = 2 GWA) ⊗ plane MD identity", WEYL_N2, QUANTUM_PLANE)] {
        let got = pair(l, r).and_then(|(a, b)| Ok(yes(qdisc::disccore::tensor_md_check(&commands::quasi_basis(&a)?, &commands::quasi_basis(&b)?)?.holds)));
        s.record(name, "yes", got);
    }
    let got = pair(WEYL_N2, WEYL_N3).and_then(|(a, b)| commands::discriminant(&Algebra::Tensor(Box::new(a), Box::new(b))).map(|r| r.discriminant));
    s.record("(n = 2) ⊗ (n = 3) discriminant", "t^36 ⊗ t'^72", got);
}

fn morphism_group(s: &mut Suite) {
    s.group = "morphisms";
    let got = gwa_of(WEYL_N2).and_then(|w| {
        let (d, _) = gwa::reflexive_discriminant(&w)?;
        let de = morphisms::gwa_discriminant_element(&w, &d.factors[0])?;
        let pres = morphisms::gwa_presentation(&w);
        let mut lambdas = Vec::new();
        for gamma in morphisms::c_g(w.h(0), w.order()) {
            for mu in [CycScalar::one(), CycScalar::from_int(-3), CycScalar::from_ratio(2, 5)] {
                let phi = CheckedMorphism::new(pres.clone(), morphisms::eta(&w, &gamma, &mu)?)?;
                let l = morphisms::invariance_scalar(&phi, &de)?;
                lambdas.push(l == Some(gamma.pow(4)?));
            }
        }
        Ok(format!("{} maps, λ = γ^4: {}", lambdas.len(), yes(lambdas.iter().all(|&b| b))))
    });
    s.record("η over C_g for h = t^2 - 1", "6 maps, λ = γ^4: yes", got);
    let omega_ok = |text: &str| -> Result<String, CliError> {
        let w = gwa_of(text)?;
        Ok(yes(morphisms::check_morphism(&morphisms::gwa_presentation(&w), &morphisms::omega(&w)?)?.holds))
    };
    s.record("Ω at q = -1", "yes", omega_ok(WEYL_N2));
    s.record("Ω at q = z3", "no", omega_ok(WEYL_N3));
    let got = gwa_of(WEYL_N3).and_then(|w| {
        let a = morphisms::graded_ansatz_sweep(&w)?;
        Ok(format!("{} outside the family", a.outside.len()))
    });
    s.record("graded ansatz at q = z3", "0 outside the family", got);
    let iso = |l: &str, r: &str| -> Result<String, CliError> {
        let out = morphisms::iso_criterion(&gwa_of(l)?, &gwa_of(r)?)?;
        Ok(if out.isomorphic() { "isomorphic".into() } else if out.complete { "not isomorphic".into() } else { "undecided".into() })
    };
    s.record("q vs q^-1, h = t + 1", "isomorphic", iso(WEYL5_Q, WEYL5_QINV));
    s.record("t^2 - 1 vs t^2 - 2 at q = -1", "not isomorphic", iso(WEYL_N2, WEYL_SHIFTED));
}

pub fn run_suite() -> Vec<FixtureResult> {
    let mut s = Suite { group: "", results: Vec::new() };
    skew_group(&mut s);
    commring_group(&mut s);
    gwa_group(&mut s);
    tensor_group(&mut s);
    morphism_group(&mut s);
    s.results
}

pub fn verify() -> Output {
    let results = run_suite();
    let passed = results.iter().filter(|r| r.pass).count();
    let report = SuiteReport {
        schema: SCHEMA,
        algebra: "fixture suite".into(),
        flavor: "verification".into(),
        passed,
        failed: results.len() - passed,
        results,
        method: "exact recomputation".into(),
    };
    let mut text = String::new();
    let mut group = "";
    for r in &report.results {
        if r.group != group {
            group = &r.group;
            let _ = writeln!(text, "{}", group);
        }
        let mark = if r.pass { "PASS" } else { "FAIL" };
        if r.pass {
            let _ = writeln!(text, "  {} {}: {}", mark, r.name, r.got);
        } else {
            let _ = writeln!(text, "  {} {}: expected {}, got {}", mark, r.name, r.expected, r.got);
        }
    }
    let _ = writeln!(text, "{} passed, {} failed", report.passed, report.failed);
    let status = if report.failed == 0 { 0 } else { 3 };
    Output::new(&report, text, status)
}

