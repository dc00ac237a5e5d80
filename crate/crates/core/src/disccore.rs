//! Algebra-agnostic discriminant kernel: division-free determinants, pair
//! discriminants, modified discriminant ideals and the tensor product formula.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::LPoly;

/// Refuse exhaustive minor enumeration beyond this many `(U, U')` pairs.
pub const MINOR_GUARD: u128 = 10_000_000;

/// Operations needed to take determinants with entries in a commutative ring.
///
/// Method names avoid clashing with `std::ops` so that types implementing both
/// stay unambiguous at call sites.
pub trait CommRing: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;

    fn ring_sub(&self, other: &Self) -> Self {
        self.ring_add(&other.ring_neg())
    }
}

impl CommRing for LPoly {
    fn is_zero(&self) -> bool {
        LPoly::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn zero_like(&self) -> Self {
        LPoly::zero()
    }
    fn one_like(&self) -> Self {
        LPoly::one()
    }
}

/// Determinant by dynamic programming over sets of used columns.
///
/// Row `r` is expanded against every still-unused column; partial sums are
/// kept per column mask, so the cost follows the number of reachable masks
/// rather than `n!`. No division is performed. `one` is returned for the
/// empty matrix.
pub fn determinant<R: CommRing>(m: &[Vec<R>], one: &R) -> R {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "determinant of a non-square matrix");
    assert!(n <= 64, "determinant size limited to 64");
    if n == 0 {
        return one.clone();
    }
    if m.iter().any(|row| row.iter().all(CommRing::is_zero)) {
        return one.zero_like();
    }
    let mut states: HashMap<u64, R> = HashMap::new();
    states.insert(0, one.clone());
    for row in m {
        let mut next: HashMap<u64, R> = HashMap::with_capacity(states.len());
        for (mask, acc) in &states {
            for (c, entry) in row.iter().enumerate() {
                if entry.is_zero() || mask & (1u64 << c) != 0 {
                    continue;
                }
                // sign of inserting column c after the columns already used
                let above = (mask >> c >> 1).count_ones();
                let mut term = acc.ring_mul(entry);
                if above % 2 == 1 {
                    term = term.ring_neg();
                }
                let key = mask | (1u64 << c);
                match next.get_mut(&key) {
                    Some(cur) => *cur = cur.ring_add(&term),
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        if next.is_empty() {
            return one.zero_like();
        }
        states = next;
    }
    states.into_values().next().unwrap_or_else(|| one.zero_like())
}

/// `C(n, k)` without overflow for the sizes used here.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `d_v(U, U') = det(tr(u_i u'_j))`, given a product-trace oracle.
pub fn pair_discriminant<E, R: CommRing>(u: &[E], u2: &[E], trace_of_product: impl Fn(&E, &E) -> R, one: &R) -> Result<R> {
    if u.len() != u2.len() {
        return Err(Error::InvalidInput(format!("pair discriminant needs equal sizes, got {} and {}", u.len(), u2.len())));
    }
    let m: Vec<Vec<R>> = u.iter().map(|a| u2.iter().map(|b| trace_of_product(a, b)).collect()).collect();
    Ok(determinant(&m, one))
}

/// One nonzero `v × v` minor of a trace matrix, tagged by its row and column subsets.
#[derive(Clone, Debug)]
pub struct Minor<R> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: R,
}

/// Every nonzero `v × v` minor of the square matrix `t`, ordered by `(rows, cols)`.
///
/// Refuses when the number of subset pairs exceeds [`MINOR_GUARD`].
pub fn all_minors<R: CommRing>(t: &[Vec<R>], v: usize, one: &R) -> Result<Vec<Minor<R>>> {
    let n = t.len();
    let count = binomial(n, v).pow(2);
    if count > MINOR_GUARD {
        return Err(Error::Refused(format!("{} minors of size {} exceed the exhaustive limit of {}", count, v, MINOR_GUARD)));
    }
    let subs = subsets(n, v);
    let pairs: Vec<(usize, usize)> = (0..subs.len()).flat_map(|i| (0..subs.len()).map(move |j| (i, j))).collect();
    let out: Vec<Minor<R>> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (rs, cs) = (&subs[i], &subs[j]);
            let m: Vec<Vec<R>> = rs.iter().map(|&r| cs.iter().map(|&c| t[r][c].clone()).collect()).collect();
            let d = determinant(&m, one);
            (!d.is_zero()).then(|| Minor { rows: rs.clone(), cols: cs.clone(), value: d })
        })
        .collect();
    Ok(out)
}

/// How the generators of an [`IdealData`] were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    QuasiBasis,
    SemiBasis,
    ChartGlued,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::QuasiBasis => "quasi-basis",
            Method::SemiBasis => "semi-basis",
            Method::ChartGlued => "chart-glued",
        })
    }
}

/// Generators of an ideal together with where they live.
#[derive(Clone, Debug)]
pub struct IdealData<R> {
    /// Name of the ambient ring.
    pub ambient: String,
    pub generators: Vec<R>,
    pub method: Method,
    /// Central elements inverted in the ring the generators are written in.
    pub localized_at: Vec<String>,
}

/// `v × v` modified discriminant ideal of a generating set.
///
/// `trace_of_product(a, b)` must return `tr(ab)`. Zero minors are dropped;
/// `v` larger than the generating set yields the zero ideal.
pub fn md_ideal<E: Sync, R: CommRing>(
    ambient: &str,
    gens: &[E],
    v: usize,
    trace_of_product: impl Fn(&E, &E) -> R + Sync,
    one: &R,
) -> Result<IdealData<R>> {
    let t: Vec<Vec<R>> = gens.par_iter().map(|a| gens.iter().map(|b| trace_of_product(a, b)).collect()).collect();
    let minors = all_minors(&t, v, one)?;
    Ok(IdealData {
        ambient: ambient.to_string(),
        generators: minors.into_iter().map(|m| m.value).collect(),
        method: Method::Exhaustive,
        localized_at: Vec::new(),
    })
}

/// A monomial with named variables and non-negative exponents; the empty monomial is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub vars: Vec<(String, u64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var_pow(name: &str, k: u64) -> Self {
        let mut m = Monomial::default();
        if k > 0 {
            m.vars.push((name.to_string(), k));
        }
        m
    }

    pub fn from_exponents(names: &[&str], exps: &[i64]) -> Result<Self> {
        let mut m = Monomial::default();
        for (i, &k) in exps.iter().enumerate() {
            if k < 0 {
                return Err(Error::InvalidInput("negative exponent in a polynomial monomial".into()));
            }
            if k > 0 {
                let name = names.get(i).ok_or_else(|| Error::InvalidInput("missing variable name".into()))?;
                m.vars.push((name.to_string(), k as u64));
            }
        }
        Ok(m)
    }

    pub fn pow(&self, k: u64) -> Self {
        let vars = if k == 0 { Vec::new() } else { self.vars.iter().map(|(n, e)| (n.clone(), e * k)).collect() };
        Monomial { vars }
    }

    pub fn exponent_of(&self, name: &str) -> u64 {
        self.vars.iter().find(|(n, _)| n == name).map_or(0, |(_, e)| *e)
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    fn primed(&self) -> Self {
        Monomial { vars: self.vars.iter().map(|(n, e)| (format!("{}'", n), *e)).collect() }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.vars.iter().map(|(n, e)| if *e == 1 { n.clone() } else { format!("{}^{}", n, e) }).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Evidence gathered on one chart (localization) of the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartEvidence {
    pub chart: String,
    pub inverted: Vec<String>,
    pub basis_size: usize,
    pub free: bool,
    pub local_discriminant: String,
    pub portable_part: String,
}

/// A computed discriminant with the evidence that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantReport {
    pub schema: u32,
    pub algebra: String,
    pub rank: u64,
    pub flavor: String,
    pub discriminant: String,
    /// Tensor factors of the discriminant; a single factor for ordinary algebras.
    pub factors: Vec<Monomial>,
    pub unit_normalization: String,
    pub charts: Vec<ChartEvidence>,
    pub method: String,
    pub paper_justified_steps: Vec<String>,
}

impl DiscriminantReport {
    pub fn new(algebra: &str, rank: u64, flavor: &str, value: Monomial, method: Method) -> Self {
        DiscriminantReport {
            schema: 1,
            algebra: algebra.to_string(),
            rank,
            flavor: flavor.to_string(),
            discriminant: value.to_string(),
            factors: vec![value],
            unit_normalization: "coefficient 1; equal up to a unit of the center".to_string(),
            charts: Vec::new(),
            method: method.to_string(),
            paper_justified_steps: Vec::new(),
        }
    }
}

/// `d^{w'} ⊗ d'^{w}` for algebras of ranks `w` and `w'`.
///
/// Variables of the right-hand factor are primed. Primeness of the tensor
/// product is assumed, not verified, and the report records that.
pub fn tensor_discriminant(d: &DiscriminantReport, d2: &DiscriminantReport) -> Result<DiscriminantReport> {
    if d.rank == 0 || d2.rank == 0 {
        return Err(Error::InvalidInput("tensor discriminant needs the rank of both factors".into()));
    }
    let mut factors: Vec<Monomial> = d.factors.iter().map(|m| m.pow(d2.rank)).collect();
    factors.extend(d2.factors.iter().map(|m| m.primed().pow(d.rank)));
    let flavor = if d.flavor == d2.flavor { d.flavor.clone() } else { format!("{} ⊗ {}", d.flavor, d2.flavor) };
    let display: Vec<String> = factors.iter().map(ToString::to_string).collect();
    let mut steps = vec![
        "the tensor product of the two algebras is assumed prime".to_string(),
        "discriminant of a tensor product is d^{w'} ⊗ d'^{w} once both factors admit quasi-bases".to_string(),
    ];
    steps.extend(d.paper_justified_steps.iter().cloned());
    steps.extend(d2.paper_justified_steps.iter().filter(|s| !d.paper_justified_steps.contains(s)).cloned());
    Ok(DiscriminantReport {
        schema: 1,
        algebra: format!("{} ⊗ {}", d.algebra, d2.algebra),
        rank: d.rank * d2.rank,
        flavor,
        discriminant: display.join(" ⊗ "),
        factors,
        unit_normalization: d.unit_normalization.clone(),
        charts: Vec::new(),
        method: "tensor-formula".to_string(),
        paper_justified_steps: steps,
    })
}

/// A free basis over a (localized) commutative ring plus a generating set
/// whose members are ring multiples of single basis elements.
#[derive(Clone, Debug)]
pub struct QuasiBasisData {
    pub name: String,
    pub var_names: Vec<String>,
    /// `tr(b_k b_l)` over the ring.
    pub basis_trace: Vec<Vec<LPoly>>,
    /// For each generator: the basis element it is proportional to, and the factor.
    pub generators: Vec<(usize, LPoly)>,
}

impl QuasiBasisData {
    pub fn rank(&self) -> usize {
        self.basis_trace.len()
    }

    fn options(&self) -> Result<Vec<Vec<LPoly>>> {
        let mut opts: Vec<Vec<LPoly>> = vec![Vec::new(); self.rank()];
        for (b, c) in &self.generators {
            if *b >= self.rank() {
                return Err(Error::InvalidInput(format!("{}: generator refers to basis element {}", self.name, b)));
            }
            if !c.is_zero() {
                opts[*b].push(c.clone());
            }
        }
        if let Some(i) = opts.iter().position(Vec::is_empty) {
            return Err(Error::InvalidInput(format!("{}: no generator lies over basis element {}", self.name, i)));
        }
        Ok(opts.into_iter().map(dedup_up_to_scalar).collect())
    }
}

/// Removes scalar multiples, keeping one representative with leading coefficient 1.
pub fn dedup_up_to_scalar(v: Vec<LPoly>) -> Vec<LPoly> {
    let seen: HashSet<LPoly> = v.into_iter().map(|p| p.normalized()).filter(|p| !p.is_zero()).collect();
    let mut out: Vec<LPoly> = seen.into_iter().collect();
    out.sort_by_cached_key(|p| format!("{:?}", p));
    out
}

/// All products choosing one factor from each option list, up to scalars.
pub fn choice_products(options: &[Vec<LPoly>]) -> Vec<LPoly> {
    let mut acc = vec![LPoly::one()];
    for opts in options {
        let next: Vec<LPoly> = acc.iter().flat_map(|a| opts.iter().map(move |o| a * o)).collect();
        acc = dedup_up_to_scalar(next);
    }
    acc
}

/// Products of `k` elements drawn with repetition from `set`, up to scalars.
fn power_products(set: &[LPoly], k: usize) -> Vec<LPoly> {
    let options: Vec<Vec<LPoly>> = vec![set.to_vec(); k];
    choice_products(&options)
}

pub fn pair_products(a: &[LPoly], b: &[LPoly], scale: &LPoly) -> Vec<LPoly> {
    dedup_up_to_scalar(a.iter().flat_map(|x| b.iter().map(move |y| &(x * y) * scale)).collect())
}

/// Outcome of comparing `MD(A ⊗ A')` with `MD(A)^{w'} ⊗ MD(A')^{w}`.
#[derive(Clone, Debug)]
pub struct TensorCheck {
    pub holds: bool,
    /// `det` of the Kronecker trace matrix equals `d_b^{w'} d_{b'}^{w}`.
    pub basis_discriminant_matches: bool,
    pub lhs_generators: Vec<LPoly>,
    pub rhs_generators: Vec<LPoly>,
    pub var_names: Vec<String>,
    pub witness: Option<String>,
}

/// Compares both sides of the tensor product identity for modified
/// discriminant ideals, working with quasi-basis data of each factor.
///
/// The Kronecker trace matrix is evaluated with the division-free
/// determinant. Ideals are compared through their generator sets up to
/// scalars, which is exact: both sides are generated by the same kind of
/// products and agree as ideals whenever the sets agree.
pub fn tensor_md_check(a: &QuasiBasisData, b: &QuasiBasisData) -> Result<TensorCheck> {
    let (w, w2) = (a.rank(), b.rank());
    if w * w2 > 64 {
        return Err(Error::Refused(format!("tensor basis of size {} is beyond the determinant limit", w * w2)));
    }
    let off = a.var_names.len();
    let shift = |p: &LPoly| p.offset_vars(off);
    let one = LPoly::one();
    let da = determinant(&a.basis_trace, &one);
    let db = determinant(&b.basis_trace, &one);
    let mut kron = vec![vec![LPoly::zero(); w * w2]; w * w2];
    for i in 0..w {
        for j in 0..w2 {
            for k in 0..w {
                for l in 0..w2 {
                    kron[i * w2 + j][k * w2 + l] = &a.basis_trace[i][k] * &shift(&b.basis_trace[j][l]);
                }
            }
        }
    }
    let dk = determinant(&kron, &one);
    let expected = &da.pow(w2 as u32) * &shift(&db).pow(w as u32);
    let basis_discriminant_matches = dk == expected;

    let oa = a.options()?;
    let ob: Vec<Vec<LPoly>> = b.options()?.iter().map(|v| v.iter().map(&shift).collect()).collect();
    // left side: one generator pair per tensor basis element
    let mut tensor_opts = Vec::with_capacity(w * w2);
    for x in &oa {
        for y in &ob {
            tensor_opts.push(dedup_up_to_scalar(x.iter().flat_map(|p| y.iter().map(move |q| p * q)).collect()));
        }
    }
    let gt = choice_products(&tensor_opts);
    let lhs = pair_products(&gt, &gt, &dk);
    // right side: products of w' generators of MD(A) and w generators of MD(A')
    let ga = choice_products(&oa);
    let gb = choice_products(&ob);
    let md_a = pair_products(&ga, &ga, &da);
    let md_b = pair_products(&gb, &gb, &shift(&db));
    let rhs = pair_products(&power_products(&md_a, w2), &power_products(&md_b, w), &one);

    let witness = if !basis_discriminant_matches {
        Some(format!("Kronecker determinant {:?} differs from {:?}", dk, expected))
    } else {
        lhs.iter()
            .find(|g| !rhs.contains(g))
            .or_else(|| rhs.iter().find(|g| !lhs.contains(g)))
            .map(|g| format!("generator {:?} occurs on one side only", g))
    };
    let mut var_names = a.var_names.clone();
    var_names.extend(b.var_names.iter().map(|n| format!("{}'", n)));
    Ok(TensorCheck { holds: witness.is_none(), basis_discriminant_matches, lhs_generators: lhs, rhs_generators: rhs, var_names, witness })
}
