//! Algebra specification files.
//!
//! One TOML document per algebra, selected by `kind`. Scalars are integers
//! or strings of the form `"p/q"`, `"z^k"`, `"-z^k"` or `"p/q*z^k"`, where
//! `z` is the primitive root of unity of the file's `order`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qdisc::commring::{MatrixGen, PresentedCommRing, Rule};
use qdisc::gwa::{GwaAlgebra, GwaElement};
use qdisc::poly::{LPoly, UniPoly};
use qdisc::skewpoly::{SkewAlgebra, SkewElement};
use qdisc::CycScalar;
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn to_scalar(&self, order: u32) -> Result<CycScalar, CliError> {
        match self {
            Coeff::Int(k) => Ok(CycScalar::from_int(*k)),
            Coeff::Text(s) => parse_scalar(s, order),
        }
    }
}

fn parse_int(s: &str, whole: &str) -> Result<i64, CliError> {
    s.trim().parse().map_err(|_| CliError::input(format!("cannot read scalar {whole:?}")))
}

/// Reads `"p/q"`, `"z^k"`, `"-z^k"`, `"p/q*z^k"`, or a plain integer.
pub fn parse_scalar(s: &str, order: u32) -> Result<CycScalar, CliError> {
    let t = s.trim();
    let (rational, root) = match t.find('z') {
        None => (t, None),
        Some(pos) => {
            let head = t[..pos].trim_end_matches('*').trim();
            let tail = t[pos + 1..].trim();
            let k = match tail.strip_prefix('^') {
                Some(k) => parse_int(k, s)?,
                None if tail.is_empty() => 1,
                None => return Err(CliError::input(format!("cannot read scalar {s:?}"))),
            };
            let head = match head {
                "" | "+" => "1",
                "-" => "-1",
                h => h,
            };
            (head, Some(k))
        }
    };
    let r = match rational.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q, s)?;
            if q == 0 {
                return Err(CliError::input(format!("zero denominator in {s:?}")));
            }
            CycScalar::from_ratio(parse_int(p, s)?, q)
        }
        None => CycScalar::from_int(parse_int(rational, s)?),
    };
    Ok(match root {
        Some(k) => &r * &CycScalar::root(k, order),
        None => r,
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkewSpec {
    pub name: Option<String>,
    pub fixture: Option<String>,
    pub n: Option<usize>,
    /// `N`: the matrix entries are exponents of a primitive `N`-th root of unity.
    pub order: u32,
    pub exponents: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GwaSpec {
    pub name: Option<String>,
    pub fixture: Option<String>,
    pub m: Option<usize>,
    /// Order of the root of unity the `q_i` are powers of.
    pub order: u32,
    /// Optional check on the derived orders `n_i` of `q_i`.
    pub orders: Option<Vec<u32>>,
    pub q_exponents: Vec<i64>,
    /// Coefficients of each `h_i`, constant term first.
    pub h: Vec<Vec<Coeff>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub c: Coeff,
    pub exp: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub left: [String; 2],
    pub rhs: Vec<TermSpec>,
}

/// Order `[[R, I], [R, R]]` inside `M_2(R)` for an ideal `I` generated by variables.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixOrderSpec {
    pub ideal: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommRingSpec {
    pub name: Option<String>,
    pub fixture: Option<String>,
    pub variables: Vec<String>,
    pub weights: Option<Vec<i64>>,
    #[serde(default)]
    pub rules: Vec<RuleSpec>,
    pub matrix_order: Option<MatrixOrderSpec>,
    /// Missing p-power hulls are known not to exist for this ring.
    #[serde(default)]
    pub nonexistence_tabulated: bool,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Child {
    Path(String),
    Inline(Box<SpecFile>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorSpec {
    pub name: Option<String>,
    pub fixture: Option<String>,
    pub left: Child,
    pub right: Child,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpecFile {
    Skew(SkewSpec),
    Gwa(GwaSpec),
    Commring(CommRingSpec),
    Tensor(TensorSpec),
}

/// A commutative ring with an optional matrix order over it.
#[derive(Clone, Debug)]
pub struct CommRingData {
    pub ring: Arc<PresentedCommRing>,
    pub matrix_order: Option<Vec<MatrixGen>>,
    pub tabulated: bool,
}

#[derive(Clone, Debug)]
pub enum Algebra {
    Skew(Arc<SkewAlgebra>),
    Gwa(Arc<GwaAlgebra>),
    CommRing(CommRingData),
    Tensor(Box<Algebra>, Box<Algebra>),
}

impl Algebra {
    pub fn name(&self) -> String {
        match self {
            Algebra::Skew(a) => a.name().to_string(),
            Algebra::Gwa(a) => a.name().to_string(),
            Algebra::CommRing(c) => c.ring.name().to_string(),
            Algebra::Tensor(a, b) => format!("{} ⊗ {}", a.name(), b.name()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Algebra::Skew(_) => "skew",
            Algebra::Gwa(_) => "gwa",
            Algebra::CommRing(_) => "commring",
            Algebra::Tensor(..) => "tensor",
        }
    }
}

pub fn load(path: &Path) -> Result<Algebra, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e.to_string()))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse(&text, &base)
}

/// Parses a spec document; relative child paths resolve against `base`.
pub fn parse(text: &str, base: &Path) -> Result<Algebra, CliError> {
    let spec: SpecFile = toml::from_str(text).map_err(|e| CliError::input(e.to_string()))?;
    build(spec, base)
}

fn build(spec: SpecFile, base: &Path) -> Result<Algebra, CliError> {
    match spec {
        SpecFile::Skew(s) => build_skew(s).map(Algebra::Skew),
        SpecFile::Gwa(s) => build_gwa(s).map(Algebra::Gwa),
        SpecFile::Commring(s) => build_commring(s).map(Algebra::CommRing),
        SpecFile::Tensor(s) => {
            let left = child(s.left, base)?;
            let right = child(s.right, base)?;
            Ok(Algebra::Tensor(Box::new(left), Box::new(right)))
        }
    }
}

fn child(c: Child, base: &Path) -> Result<Algebra, CliError> {
    match c {
        Child::Path(p) => {
            let p = PathBuf::from(p);
            load(&if p.is_absolute() { p } else { base.join(p) })
        }
        Child::Inline(s) => build(*s, base),
    }
}

fn build_skew(s: SkewSpec) -> Result<Arc<SkewAlgebra>, CliError> {
    let n = s.exponents.len();
    if let Some(k) = s.n {
        if k != n {
            return Err(CliError::input(format!("n = {k} but the exponent matrix has {n} rows")));
        }
    }
    let name = s.name.unwrap_or_else(|| format!("k_p[{}]", (1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",")));
    Ok(SkewAlgebra::new(&name, s.order, &s.exponents)?)
}

fn build_gwa(s: GwaSpec) -> Result<Arc<GwaAlgebra>, CliError> {
    let m = s.q_exponents.len();
    if s.h.len() != m || s.m.is_some_and(|k| k != m) {
        return Err(CliError::input(format!("degree mismatch: {} q-exponents, {} polynomials h_i, m = {:?}", m, s.h.len(), s.m)));
    }
    let h: Vec<UniPoly> = s
        .h
        .iter()
        .map(|cs| cs.iter().map(|c| c.to_scalar(s.order)).collect::<Result<Vec<_>, _>>().map(UniPoly::from_coeffs))
        .collect::<Result<_, _>>()?;
    let name = s.name.unwrap_or_else(|| "W".to_string());
    let alg = GwaAlgebra::new(&name, s.order, &s.q_exponents, h)?;
    if let Some(orders) = &s.orders {
        if orders.as_slice() != alg.orders() {
            return Err(CliError::input(format!("declared orders {:?} but q_i have orders {:?}", orders, alg.orders())));
        }
    }
    if alg.degree() > 1 {
        alg.require_coprime()?;
    }
    Ok(alg)
}

fn var_index(names: &[String], v: &str) -> Result<usize, CliError> {
    names.iter().position(|n| n == v).ok_or_else(|| CliError::input(format!("unknown variable {v:?}")))
}

fn build_commring(s: CommRingSpec) -> Result<CommRingData, CliError> {
    let mut rules = Vec::new();
    for r in &s.rules {
        let left = (var_index(&s.variables, &r.left[0])?, var_index(&s.variables, &r.left[1])?);
        let mut rhs = LPoly::zero();
        for t in &r.rhs {
            if t.exp.len() != s.variables.len() {
                return Err(CliError::input(format!("rule term {:?} has the wrong length", t.exp)));
            }
            rhs = &rhs + &LPoly::monomial(&t.exp, t.c.to_scalar(1)?);
        }
        rules.push(Rule { left, rhs });
    }
    let names: Vec<&str> = s.variables.iter().map(String::as_str).collect();
    let name = s.name.clone().unwrap_or_else(|| format!("k[{}]/I", names.join(",")));
    let ring = PresentedCommRing::new(&name, &names, rules, s.weights.clone())?;
    let matrix_order = match &s.matrix_order {
        None => None,
        Some(mo) => {
            let one = ring.constant(CycScalar::one());
            let mut gens = vec![
                MatrixGen { scalar: one.clone(), row: 0, col: 0 },
                MatrixGen { scalar: one.clone(), row: 1, col: 1 },
                MatrixGen { scalar: one, row: 1, col: 0 },
            ];
            for v in &mo.ideal {
                gens.push(MatrixGen { scalar: ring.var(var_index(&s.variables, v)?), row: 0, col: 1 });
            }
            Some(gens)
        }
    };
    Ok(CommRingData { ring, matrix_order, tabulated: s.nonexistence_tabulated })
}

/// An element written as a list of terms: `{ deg = [..], t = [..] }` for
/// GWAs (`x`-degree and coefficients of `t`) or `{ exp = [..], c = .. }`
/// for skew polynomial rings.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementTerm {
    pub deg: Option<Vec<i64>>,
    pub t: Option<Vec<Coeff>>,
    pub exp: Option<Vec<i64>>,
    pub c: Option<Coeff>,
}

pub fn gwa_element(alg: &Arc<GwaAlgebra>, terms: &[ElementTerm]) -> Result<GwaElement, CliError> {
    let mut out = GwaElement::zero(alg);
    for term in terms {
        let deg = term.deg.clone().unwrap_or_else(|| vec![0; alg.degree()]);
        if deg.len() != alg.degree() || term.exp.is_some() {
            return Err(CliError::input(format!("GWA term needs deg of length {} and coefficients t", alg.degree())));
        }
        let mut coeffs: Vec<CycScalar> = term.t.iter().flatten().map(|c| c.to_scalar(alg.order())).collect::<Result<_, _>>()?;
        if let Some(c) = &term.c {
            let c = c.to_scalar(alg.order())?;
            coeffs = if term.t.is_none() { vec![c] } else { coeffs.iter().map(|x| x * &c).collect() };
        }
        out = out.add(&GwaElement::term(alg, &deg, UniPoly::from_coeffs(coeffs)))?;
    }
    Ok(out)
}

pub fn skew_element(alg: &Arc<SkewAlgebra>, terms: &[ElementTerm]) -> Result<SkewElement, CliError> {
    let mut out = Vec::new();
    for term in terms {
        let exp = term.exp.clone().ok_or_else(|| CliError::input("skew term needs exp".into()))?;
        if exp.len() != alg.nvars() || term.deg.is_some() || term.t.is_some() {
            return Err(CliError::input(format!("skew term needs exp of length {}", alg.nvars())));
        }
        let c = term.c.as_ref().map_or(Ok(CycScalar::one()), |c| c.to_scalar(alg.order()))?;
        out.push((exp, c));
    }
    Ok(SkewElement::from_terms(alg, out))
}
