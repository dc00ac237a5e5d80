use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use qdisc::commring::{self, ppower_entry};
use qdisc::disccore::{self, DiscriminantReport, Method, Monomial, QuasiBasisData};
use qdisc::gwa::{self, GwaAlgebra, GwaElement};
use qdisc::morphisms::{self, CheckedMorphism, Derivation, RelationCheck};
use qdisc::skewpoly::{self, SkewAlgebra, SkewElement};
use qdisc::{CycScalar, Error};
use serde::{Deserialize, Serialize};

use crate::spec::{self, Algebra, Coeff, CommRingData, ElementTerm};
use crate::{CliError, Output};

pub const SCHEMA: u32 = 1;

pub fn discriminant(alg: &Algebra) -> Result<DiscriminantReport, CliError> {
    match alg {
        Algebra::Skew(a) => Ok(skewpoly::reflexive_discriminant(a)?.0),
        Algebra::Gwa(a) => Ok(gwa::reflexive_discriminant(a)?.0),
        Algebra::Tensor(a, b) => Ok(disccore::tensor_discriminant(&discriminant(a)?, &discriminant(b)?)?),
        Algebra::CommRing(c) => Err(CliError::input(format!("{} is commutative; use ppower or md", c.ring.name()))),
    }
}

pub fn render_discriminant(r: &DiscriminantReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra: {}", r.algebra);
    let _ = writeln!(s, "rank over the center: {}", r.rank);
    let _ = writeln!(s, "discriminant ({}): {}", r.flavor, r.discriminant);
    let _ = writeln!(s, "normalization: {}", r.unit_normalization);
    let _ = writeln!(s, "method: {}", r.method);
    if !r.charts.is_empty() {
        let _ = writeln!(s, "charts:");
        for c in &r.charts {
            let free = if c.free { "free" } else { "not free" };
            let _ = writeln!(s, "  {} [{}]: basis {} ({}), local {}, portable {}", c.chart, c.inverted.join(", "), c.basis_size, free, c.local_discriminant, c.portable_part);
        }
    }
    if !r.paper_justified_steps.is_empty() {
        let _ = writeln!(s, "steps taken on trust:");
        for step in &r.paper_justified_steps {
            let _ = writeln!(s, "  - {}", step);
        }
    }
    s
}

pub fn disc(alg: &Algebra) -> Result<Output, CliError> {
    let r = discriminant(alg)?;
    Ok(Output::new(&r, render_discriminant(&r), 0))
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct MdChart {
    pub chart: String,
    pub inverted: Vec<String>,
    pub generators: usize,
    pub principal_generator: Option<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct MdReport {
    pub schema: u32,
    pub algebra: String,
    pub flavor: String,
    pub v: usize,
    /// Generator of the reflexive hull, when it is principal.
    pub discriminant: Option<String>,
    pub generators: Vec<String>,
    pub charts: Vec<MdChart>,
    pub method: String,
    pub checks: BTreeMap<String, bool>,
    pub notes: Vec<String>,
    pub paper_justified_steps: Vec<String>,
}

impl MdReport {
    fn new(algebra: String, v: usize, method: Method) -> Self {
        MdReport {
            schema: SCHEMA,
            algebra,
            flavor: "md".into(),
            v,
            discriminant: None,
            generators: Vec::new(),
            charts: Vec::new(),
            method: method.to_string(),
            checks: BTreeMap::new(),
            notes: Vec::new(),
            paper_justified_steps: Vec::new(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra: {}", self.algebra);
        let _ = writeln!(s, "MD_{} via {}", self.v, self.method);
        if let Some(d) = &self.discriminant {
            let _ = writeln!(s, "reflexive hull: ({})", d);
        }
        if !self.generators.is_empty() {
            let shown: Vec<&str> = self.generators.iter().take(4).filter(|g| g.len() <= 120).map(String::as_str).collect();
            let more = if shown.len() < self.generators.len() { format!("{}… ({} total)", if shown.is_empty() { "" } else { ", " }, self.generators.len()) } else { String::new() };
            let _ = writeln!(s, "generators: {}{}", shown.join(", "), more);
        }
        for c in &self.charts {
            let pg = c.principal_generator.as_deref().unwrap_or("not principal");
            let _ = writeln!(s, "  {} [{}]: {} generators, generated by {}", c.chart, c.inverted.join(", "), c.generators, pg);
        }
        for (k, v) in &self.checks {
            let _ = writeln!(s, "{}: {}", k, if *v { "yes" } else { "no" });
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {}", n);
        }
        s
    }
}

fn monomial_string(names: &[String], e: &[i64]) -> String {
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Monomial::from_exponents(&names, e).map(|m| m.to_string()).unwrap_or_else(|_| format!("{:?}", e))
}

fn skew_md(a: &Arc<SkewAlgebra>, exhaustive: bool) -> Result<MdReport, CliError> {
    let names: Vec<String> = a.var_names().iter().map(|s| s.to_string()).collect();
    let (exps, method) = if exhaustive {
        let ideal = skewpoly::md_exhaustive(a, &skewpoly::box_generating_set(a), a.rank() as usize)?;
        (skewpoly::minor_exponents(&ideal)?, Method::Exhaustive)
    } else {
        let qb = skewpoly::quasi_basis_data(a)?;
        let d = disccore::determinant(&qb.basis_trace, &qdisc::poly::LPoly::one());
        let (e, _) = d.as_monomial().ok_or_else(|| Error::Assertion("basis discriminant is not a monomial".into()))?;
        (vec![e.to_vec()], Method::QuasiBasis)
    };
    let mut r = MdReport::new(a.name().to_string(), a.rank() as usize, method);
    let mut uniq = exps.clone();
    uniq.sort();
    uniq.dedup();
    r.generators = uniq.iter().map(|e| monomial_string(&names, e)).collect();
    let hull = skewpoly::monomial_hull(&exps)?;
    r.checks.insert("pcc_holds".into(), hull.pcc_holds);
    if hull.pcc_holds {
        r.discriminant = Some(monomial_string(&names, &hull.generator));
    } else {
        r.notes.push(format!("quotient by the gcd has dimension {:?}; hull is not certified principal", hull.quotient_dim));
    }
    Ok(r)
}

fn gwa_md(a: &Arc<GwaAlgebra>, exhaustive: bool) -> Result<MdReport, CliError> {
    let rank = a.rank() as usize;
    let m = a.degree();
    let (report, _) = gwa::reflexive_discriminant(a)?;
    if exhaustive {
        let ideal = gwa::md_exhaustive(a)?;
        let pattern = vec![true; m];
        let names = gwa::chart_names(a, &pattern);
        let mut r = MdReport::new(a.name().to_string(), rank, Method::Exhaustive);
        let g = gwa::chart_ideal_generator(&ideal.generators, m)?;
        let chart_pp = gwa::md_chart(a, &pattern)?.principal_part()?;
        r.generators = disccore::dedup_up_to_scalar(ideal.generators.clone()).iter().map(|p| gwa::show(p, &names)).collect();
        r.charts.push(MdChart { chart: gwa::chart_label(a, &pattern), inverted: ideal.localized_at.clone(), generators: ideal.generators.len(), principal_generator: Some(g.display(&names[names.len() - 1])) });
        r.checks.insert("agrees_with_quasi_basis".into(), g == chart_pp);
        r.discriminant = Some(report.discriminant);
        let total = disccore::binomial(gwa::generating_set(a).len(), rank).pow(2);
        r.checks.insert("all_minors_enumerated".into(), true);
        r.notes.push(format!("{} maximal minors, {} nonzero", total, ideal.generators.len()));
        return Ok(r);
    }
    let md = gwa::md_report(a)?;
    let mut r = MdReport::new(a.name().to_string(), rank, md.method);
    for ch in &md.charts {
        let c_name = ch.var_names.last().cloned().unwrap_or_else(|| "c".into());
        r.charts.push(MdChart {
            chart: gwa::chart_label(a, &ch.pattern),
            inverted: ch.var_names[..m].to_vec(),
            generators: ch.minors.len() * ch.minors.len(),
            principal_generator: ch.principal_part().ok().map(|p| p.display(&c_name)),
        });
    }
    r.checks.insert("divisible_by_discriminant".into(), md.divisible);
    r.checks.insert("locally_principal".into(), md.locally_principal);
    if let Some(f) = md.quasi_basis_failure {
        r.notes.push(format!("generator {} is not a multiple of one basis element; used block minors", f));
    }
    r.discriminant = Some(report.discriminant);
    r.paper_justified_steps = report.paper_justified_steps;
    Ok(r)
}

fn commring_md(c: &CommRingData, v: Option<usize>) -> Result<(Vec<commring::RingElement>, usize), CliError> {
    let gens = c.matrix_order.as_ref().ok_or_else(|| CliError::input(format!("{} has no matrix_order", c.ring.name())))?;
    let v = v.unwrap_or(4);
    Ok((commring::matrix_order_md(&c.ring, gens, v)?, v))
}

fn sorted_strings<T: ToString>(v: &[T]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(ToString::to_string).collect();
    s.sort();
    s
}

pub fn quasi_basis(alg: &Algebra) -> Result<QuasiBasisData, CliError> {
    match alg {
        Algebra::Skew(a) => Ok(skewpoly::quasi_basis_data(a)?),
        Algebra::Gwa(a) => Ok(gwa::quasi_basis_data(a)?),
        other => Err(CliError::input(format!("no quasi-basis data for a {} spec", other.kind()))),
    }
}

pub fn md(alg: &Algebra, exhaustive: bool, v: Option<usize>) -> Result<Output, CliError> {
    let r = match alg {
        Algebra::Skew(a) => skew_md(a, exhaustive)?,
        Algebra::Gwa(a) => gwa_md(a, exhaustive)?,
        Algebra::CommRing(c) => {
            let (gens, v) = commring_md(c, v)?;
            let mut r = MdReport::new(c.ring.name().to_string(), v, Method::Exhaustive);
            r.generators = sorted_strings(&gens);
            let e = ppower_entry(&gens, &c.ring, 1, c.tabulated)?;
            r.discriminant = match e {
                commring::PPowerEntry::Generator(g) => Some(g.to_string()),
                commring::PPowerEntry::Zero => Some("0".into()),
                other => {
                    r.notes.push(format!("reflexive hull: {}", other));
                    None
                }
            };
            r
        }
        Algebra::Tensor(a, b) => {
            let (qa, qb) = (quasi_basis(a)?, quasi_basis(b)?);
            let check = disccore::tensor_md_check(&qa, &qb)?;
            let mut r = MdReport::new(alg.name(), qa.rank() * qb.rank(), Method::QuasiBasis);
            r.generators = check.lhs_generators.iter().map(|p| gwa::show(p, &check.var_names)).collect();
            r.checks.insert("tensor_identity_holds".into(), check.holds);
            r.checks.insert("basis_discriminant_matches".into(), check.basis_discriminant_matches);
            if let Some(w) = check.witness {
                r.notes.push(w);
            }
            r
        }
    };
    let text = r.text();
    Ok(Output::new(&r, text, 0))
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PPowerReport {
    pub schema: u32,
    pub algebra: String,
    pub flavor: String,
    pub p: u32,
    pub v: usize,
    pub md_generators: Vec<String>,
    pub power_generators: Vec<String>,
    pub discriminant: String,
    pub exists: Option<bool>,
    pub method: String,
}

pub fn ppower(alg: &Algebra, p: u32, v: Option<usize>) -> Result<Output, CliError> {
    let c = match alg {
        Algebra::CommRing(c) => c,
        other => return Err(CliError::input(format!("ppower needs a commring spec, got {}", other.kind()))),
    };
    if p == 0 {
        return Err(CliError::input("p must be positive".into()));
    }
    let (gens, v) = commring_md(c, v)?;
    let power = if gens.is_empty() { Vec::new() } else { commring::ideal_power(&gens, p)? };
    let entry = ppower_entry(&gens, &c.ring, p, c.tabulated)?;
    let exists = match &entry {
        commring::PPowerEntry::Generator(_) | commring::PPowerEntry::Zero => Some(true),
        commring::PPowerEntry::DoesNotExist => Some(false),
        commring::PPowerEntry::Undecided(_) => None,
    };
    let r = PPowerReport {
        schema: SCHEMA,
        algebra: c.ring.name().to_string(),
        flavor: format!("csr^[{}]_{}", p, v),
        p,
        v,
        md_generators: sorted_strings(&gens),
        power_generators: sorted_strings(&power),
        discriminant: entry.to_string(),
        exists,
        method: "staircase PCC search".into(),
    };
    let text = format!(
        "algebra: {}\nMD_{} = ({})\np = {}: {}\n",
        r.algebra,
        v,
        r.md_generators.join(", "),
        p,
        r.discriminant
    );
    Ok(Output::new(&r, text, 0))
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct TensorReport {
    pub schema: u32,
    pub algebra: String,
    pub flavor: String,
    pub discriminant: String,
    pub unit_normalization: String,
    pub factors: Vec<String>,
    /// Direct computation on the combined algebra, when it is itself a skew polynomial ring.
    pub direct: Option<String>,
    pub md_check: Option<bool>,
    pub notes: Vec<String>,
    pub method: String,
    pub paper_justified_steps: Vec<String>,
}

pub fn tensor_disc(a: &Algebra, b: &Algebra) -> Result<Output, CliError> {
    let (da, db) = (discriminant(a)?, discriminant(b)?);
    let r = disccore::tensor_discriminant(&da, &db)?;
    let mut notes = Vec::new();
    let direct = match (a, b) {
        (Algebra::Skew(x), Algebra::Skew(y)) => Some(skewpoly::reflexive_discriminant(&x.tensor(y)?)?.0.discriminant),
        _ => None,
    };
    let md_check = match (quasi_basis(a), quasi_basis(b)) {
        (Ok(qa), Ok(qb)) => match disccore::tensor_md_check(&qa, &qb) {
            Ok(c) => Some(c.holds),
            Err(e) => {
                notes.push(format!("MD identity not checked: {}", e));
                None
            }
        },
        (Err(e), _) | (_, Err(e)) => {
            notes.push(format!("MD identity not checked: {}", e));
            None
        }
    };
    let report = TensorReport {
        schema: SCHEMA,
        algebra: r.algebra.clone(),
        flavor: r.flavor.clone(),
        discriminant: r.discriminant.clone(),
        unit_normalization: r.unit_normalization.clone(),
        factors: vec![da.discriminant.clone(), db.discriminant.clone()],
        direct,
        md_check,
        notes,
        method: r.method.clone(),
        paper_justified_steps: r.paper_justified_steps.clone(),
    };
    let mut text = render_discriminant(&r);
    if let Some(d) = &report.direct {
        let _ = writeln!(text, "direct computation: {}", d);
    }
    if let Some(ok) = report.md_check {
        let _ = writeln!(text, "MD tensor identity: {}", if ok { "holds" } else { "fails" });
    }
    for n in &report.notes {
        let _ = writeln!(text, "note: {}", n);
    }
    Ok(Output::new(&report, text, 0))
}

/// Contents of a `--morphism` file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    /// `eta`, `omega`, `diagonal` or `images`.
    pub map: String,
    pub gamma: Option<Coeff>,
    pub mu: Option<Coeff>,
    pub scales: Option<Vec<Coeff>>,
    pub images: Option<BTreeMap<String, Vec<ElementTerm>>>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct MorphismReport {
    pub schema: u32,
    pub algebra: String,
    pub flavor: String,
    pub holds: bool,
    pub witness: Option<String>,
    pub residue: Option<String>,
    pub discriminant: Option<String>,
    /// `φ(d) = λ d`.
    pub lambda: Option<String>,
    pub restricts_to_factors: Option<bool>,
    pub method: String,
}

fn read_toml<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e.to_string()))?;
    toml::from_str(&text).map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))
}

fn named_images<E: Clone>(
    generators: &[String],
    defaults: Vec<E>,
    given: &BTreeMap<String, Vec<ElementTerm>>,
    build: impl Fn(&[ElementTerm]) -> Result<E, CliError>,
) -> Result<Vec<E>, CliError> {
    if let Some(k) = given.keys().find(|k| !generators.contains(k)) {
        return Err(CliError::input(format!("unknown generator {:?}; expected one of {}", k, generators.join(", "))));
    }
    generators.iter().zip(defaults).map(|(g, d)| given.get(g).map_or(Ok(d), |t| build(t))).collect()
}

fn check_text(algebra: &str, check: &RelationCheck, extra: &[String]) -> String {
    let mut s = format!("algebra: {}\n", algebra);
    if check.holds {
        s.push_str("all relations hold\n");
    } else {
        let _ = writeln!(s, "relation {} fails: {}", check.witness.as_deref().unwrap_or("?"), check.residue.as_deref().unwrap_or("?"));
    }
    for e in extra {
        let _ = writeln!(s, "{}", e);
    }
    s
}

pub fn aut_check(alg: &Algebra, morphism: &Path) -> Result<Output, CliError> {
    let spec: MorphismSpec = read_toml(morphism)?;
    let mut report = MorphismReport {
        schema: SCHEMA,
        algebra: alg.name(),
        flavor: "endomorphism".into(),
        holds: false,
        witness: None,
        residue: None,
        discriminant: None,
        lambda: None,
        restricts_to_factors: None,
        method: "relation check".into(),
    };
    match alg {
        Algebra::Gwa(a) => {
            let pres = morphisms::gwa_presentation(a);
            let scalar = |c: &Option<Coeff>, what: &str| -> Result<CycScalar, CliError> {
                c.as_ref().ok_or_else(|| CliError::input(format!("map {} needs {}", spec.map, what)))?.to_scalar(a.order())
            };
            let images = match spec.map.as_str() {
                "eta" => morphisms::eta(a, &scalar(&spec.gamma, "gamma")?, &scalar(&spec.mu, "mu")?)?,
                "omega" => morphisms::omega(a)?,
                "images" => named_images(&pres.generators, morphisms::gwa_generators(a), spec.images.as_ref().unwrap_or(&BTreeMap::new()), |t| spec::gwa_element(a, t))?,
                other => return Err(CliError::input(format!("unknown map {:?} for a GWA", other))),
            };
            let check = morphisms::check_morphism(&pres, &images)?;
            fill_check(&mut report, &check);
            if check.holds {
                let (d, _) = gwa::reflexive_discriminant(a)?;
                let de = morphisms::gwa_discriminant_element(a, &d.factors[0])?;
                let phi = CheckedMorphism::new(pres, images)?;
                report.discriminant = Some(d.discriminant);
                report.lambda = morphisms::invariance_scalar(&phi, &de)?.map(|l| l.to_string());
                if a.degree() > 1 {
                    report.restricts_to_factors = Some(morphisms::restricts_to_factors(&phi));
                }
            }
        }
        Algebra::Skew(a) => {
            let pres = morphisms::skew_presentation(a);
            let images: Vec<SkewElement> = match spec.map.as_str() {
                "diagonal" => {
                    let scales = spec.scales.as_ref().ok_or_else(|| CliError::input("map diagonal needs scales".into()))?;
                    if scales.len() != a.nvars() {
                        return Err(CliError::input(format!("{} scales for {} variables", scales.len(), a.nvars())));
                    }
                    morphisms::skew_generators(a).iter().zip(scales).map(|(g, s)| s.to_scalar(a.order()).map(|s| g.scale(&s))).collect::<Result<_, _>>()?
                }
                "images" => named_images(&pres.generators, morphisms::skew_generators(a), spec.images.as_ref().unwrap_or(&BTreeMap::new()), |t| spec::skew_element(a, t))?,
                other => return Err(CliError::input(format!("unknown map {:?} for a skew polynomial ring", other))),
            };
            let check = morphisms::check_morphism(&pres, &images)?;
            fill_check(&mut report, &check);
            if check.holds {
                let (d, _) = skewpoly::reflexive_discriminant(a)?;
                let de = morphisms::skew_discriminant_element(a, &d.factors[0])?;
                let phi = CheckedMorphism::new(pres, images)?;
                report.discriminant = Some(d.discriminant);
                report.lambda = morphisms::invariance_scalar(&phi, &de)?.map(|l| l.to_string());
            }
        }
        other => return Err(CliError::input(format!("aut-check needs a gwa or skew spec, got {}", other.kind()))),
    }
    let mut extra = Vec::new();
    if let (Some(d), Some(l)) = (&report.discriminant, &report.lambda) {
        extra.push(format!("φ({d}) = {l}·{d}"));
    }
    if let Some(r) = report.restricts_to_factors {
        extra.push(format!("restricts to tensor factors: {}", if r { "yes" } else { "no" }));
    }
    let text = check_text(&report.algebra, &RelationCheck { holds: report.holds, witness: report.witness.clone(), residue: report.residue.clone() }, &extra);
    let status = if report.holds { 0 } else { 1 };
    Ok(Output::new(&report, text, status))
}

fn fill_check(report: &mut MorphismReport, check: &RelationCheck) {
    report.holds = check.holds;
    report.witness = check.witness.clone();
    report.residue = check.residue.clone();
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct IsoSolutionReport {
    pub branch: String,
    pub gamma: String,
    pub mu: String,
    pub images: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct IsoReport {
    pub schema: u32,
    pub algebra: String,
    pub flavor: String,
    pub isomorphic: Option<bool>,
    pub complete: bool,
    pub solutions: Vec<IsoSolutionReport>,
    pub note: String,
    pub method: String,
}

pub fn iso_check(a: &Algebra, b: &Algebra) -> Result<Output, CliError> {
    let (wa, wb) = match (a, b) {
        (Algebra::Gwa(x), Algebra::Gwa(y)) => (x, y),
        _ => return Err(CliError::input("iso-check compares two gwa specs".into())),
    };
    let out = morphisms::iso_criterion(wa, wb)?;
    let isomorphic = if out.isomorphic() {
        Some(true)
    } else if out.complete {
        Some(false)
    } else {
        None
    };
    let r = IsoReport {
        schema: SCHEMA,
        algebra: format!("{} vs {}", wa.name(), wb.name()),
        flavor: "isomorphism".into(),
        isomorphic,
        complete: out.complete,
        solutions: out
            .solutions
            .iter()
            .map(|s| IsoSolutionReport { branch: s.branch.to_string(), gamma: s.gamma.to_string(), mu: s.mu.to_string(), images: s.images.iter().map(GwaElement::to_string).collect() })
            .collect(),
        note: out.note.clone(),
        method: "parameter matching with explicit maps".into(),
    };
    let mut text = format!("{}\n", r.algebra);
    let verdict = match isomorphic {
        Some(true) => "isomorphic",
        Some(false) => "not isomorphic",
        None => "undecided",
    };
    let _ = writeln!(text, "{} ({} solutions{})", verdict, r.solutions.len(), if r.complete { "" } else { ", search incomplete" });
    for s in &r.solutions {
        let _ = writeln!(text, "  {}: γ = {}, μ = {}; t, x, y ↦ {}", s.branch, s.gamma, s.mu, s.images.join(", "));
    }
    if !r.note.is_empty() {
        let _ = writeln!(text, "note: {}", r.note);
    }
    Ok(Output::new(&r, text, 0))
}

/// Contents of a `derivation-check --spec` file. Unlisted generators map to zero.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    pub algebra: String,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<ElementTerm>>,
}

pub fn derivation_check(path: &Path) -> Result<Output, CliError> {
    let spec: DerivationSpec = read_toml(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let alg = spec::load(&base.join(&spec.algebra))?;
    let check = match &alg {
        Algebra::Gwa(a) => {
            let pres = morphisms::gwa_presentation(a);
            let zeros = vec![GwaElement::zero(a); pres.generators.len()];
            let values = named_images(&pres.generators, zeros, &spec.values, |t| spec::gwa_element(a, t))?;
            Derivation::new(pres, morphisms::gwa_generators(a), values)?.check()
        }
        Algebra::Skew(a) => {
            let pres = morphisms::skew_presentation(a);
            let zeros = vec![SkewElement::zero(a); pres.generators.len()];
            let values = named_images(&pres.generators, zeros, &spec.values, |t| spec::skew_element(a, t))?;
            Derivation::new(pres, morphisms::skew_generators(a), values)?.check()
        }
        other => return Err(CliError::input(format!("derivation-check needs a gwa or skew algebra, got {}", other.kind()))),
    };
    let report = MorphismReport {
        schema: SCHEMA,
        algebra: alg.name(),
        flavor: "derivation".into(),
        holds: check.holds,
        witness: check.witness.clone(),
        residue: check.residue.clone(),
        discriminant: None,
        lambda: None,
        restricts_to_factors: None,
        method: "Leibniz rule on relations".into(),
    };
    let text = check_text(&report.algebra, &check, &[]);
    Ok(Output::new(&report, text, if check.holds { 0 } else { 1 }))
}
