//! Commutative rings presented by rewrite rules `v_i v_j → f`, where `f`
//! involves none of the paired variables. Covers hypersurface centers
//! `k[a, b, c]/(ab − p(c))` and their products.

use std::fmt;
use std::sync::Arc;

use crate::disccore::{self, CommRing};
use crate::error::{Error, Result};
use crate::poly::LPoly;
use crate::scalars::CycScalar;

/// `v_i v_j → rhs`
#[derive(Clone, Debug)]
pub struct Rule {
    pub left: (usize, usize),
    pub rhs: LPoly,
}

#[derive(Debug)]
pub struct PresentedCommRing {
    name: String,
    names: Vec<String>,
    rules: Vec<Rule>,
    weights: Option<Vec<i64>>,
}

/// Degree bound for the staircase counts used to estimate Krull dimension.
pub const STAIRCASE_DEGREE: i64 = 20;

impl PresentedCommRing {
    /// Validates the rule shape: paired variables are distinct across rules
    /// and never occur on a right-hand side, which makes one rewriting pass
    /// confluent and terminating. Optional positive weights must make every
    /// rule homogeneous; they enable graded exact division.
    pub fn new(name: &str, names: &[&str], rules: Vec<Rule>, weights: Option<Vec<i64>>) -> Result<Arc<Self>> {
        let nv = names.len();
        let mut paired = vec![false; nv];
        for r in &rules {
            let (i, j) = r.left;
            if i >= nv || j >= nv || i == j {
                return Err(Error::InvalidInput(format!("rule pairs invalid variables ({}, {})", i, j)));
            }
            if paired[i] || paired[j] {
                return Err(Error::InvalidInput("rewrite rules must use disjoint variable pairs".into()));
            }
            paired[i] = true;
            paired[j] = true;
        }
        for r in &rules {
            for (e, _) in r.rhs.terms() {
                if e.len() > nv || e.iter().any(|&k| k < 0) {
                    return Err(Error::InvalidInput("rule right-hand side must be a polynomial in the ring variables".into()));
                }
                if e.iter().enumerate().any(|(v, &k)| k > 0 && paired[v]) {
                    return Err(Error::InvalidInput(format!(
                        "right-hand side of {}·{} uses a paired variable; overlaps would not resolve",
                        names[r.left.0], names[r.left.1]
                    )));
                }
            }
        }
        if let Some(w) = &weights {
            if w.len() != nv || w.iter().any(|&x| x <= 0) {
                return Err(Error::InvalidInput("weights must be positive, one per variable".into()));
            }
            for r in &rules {
                let lw = w[r.left.0] + w[r.left.1];
                if r.rhs.terms().any(|(e, _)| weight_of(w, e) != lw) {
                    return Err(Error::InvalidInput("rules are not homogeneous for the given weights".into()));
                }
            }
        }
        Ok(Arc::new(PresentedCommRing { name: name.into(), names: names.iter().map(|s| s.to_string()).collect(), rules, weights }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn names(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    fn paired(&self, v: usize) -> bool {
        self.rules.iter().any(|r| r.left.0 == v || r.left.1 == v)
    }

    /// True when the monomial contains no left-hand side of a rule.
    pub fn is_normal_monomial(&self, e: &[i64]) -> bool {
        self.rules.iter().all(|r| LPoly::exponent(e, r.left.0) == 0 || LPoly::exponent(e, r.left.1) == 0)
    }

    /// Canonical normal form.
    pub fn normal_form(&self, p: &LPoly) -> LPoly {
        let mut out = LPoly::zero();
        for (e, c) in p.terms() {
            let mut part = LPoly::monomial(e, c.clone());
            for r in &self.rules {
                part = self.apply_rule(&part, r);
            }
            out = &out + &part;
        }
        out
    }

    fn apply_rule(&self, p: &LPoly, r: &Rule) -> LPoly {
        let (i, j) = r.left;
        let mut out = LPoly::zero();
        for (e, c) in p.terms() {
            let k = LPoly::exponent(e, i).min(LPoly::exponent(e, j));
            if k == 0 {
                out.add_term(e.clone(), c.clone());
                continue;
            }
            let mut rest = e.clone();
            rest.resize(self.nvars(), 0);
            rest[i] -= k;
            rest[j] -= k;
            let replaced = &LPoly::monomial(&rest, c.clone()) * &r.rhs.pow(k as u32);
            out = &out + &replaced;
        }
        out
    }

    pub fn element(self: &Arc<Self>, p: LPoly) -> RingElement {
        RingElement { poly: self.normal_form(&p), ring: self.clone() }
    }

    pub fn var(self: &Arc<Self>, i: usize) -> RingElement {
        self.element(LPoly::var(i))
    }

    pub fn constant(self: &Arc<Self>, c: CycScalar) -> RingElement {
        self.element(LPoly::constant(c))
    }

    pub fn monomial(self: &Arc<Self>, e: &[i64]) -> RingElement {
        self.element(LPoly::monomial(e, CycScalar::one()))
    }

    /// Normal-form monomials of total degree exactly `d`.
    fn normal_monomials_of_degree(&self, d: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        compositions(d, self.nvars(), &mut Vec::new(), &mut out);
        out.retain(|e| self.is_normal_monomial(e));
        out
    }

    /// Normal-form monomials of weighted degree exactly `w`.
    fn normal_monomials_of_weight(&self, w: i64) -> Vec<Vec<i64>> {
        let weights = self.weights.as_ref().expect("weights present");
        let mut out = Vec::new();
        weighted(w, weights, &mut Vec::new(), &mut out);
        out.retain(|e| self.is_normal_monomial(e));
        out
    }

    /// Number of normal-form monomials of total degree `≤ d` divisible by none of `gens`.
    pub fn staircase_count(&self, gens: &[Vec<i64>], d: i64) -> usize {
        (0..=d)
            .flat_map(|k| self.normal_monomials_of_degree(k))
            .filter(|m| !gens.iter().any(|g| divides(g, m)))
            .count()
    }

    /// Krull dimension of `R/(gens)` read off the growth of the staircase,
    /// `None` when the quotient is zero. Exact when the answer is 0 (finitely
    /// many standard monomials); otherwise a growth-rate estimate.
    pub fn staircase_dimension(&self, gens: &[Vec<i64>]) -> Option<usize> {
        let lo = self.staircase_count(gens, STAIRCASE_DEGREE / 2);
        let hi = self.staircase_count(gens, STAIRCASE_DEGREE);
        if hi == 0 {
            return None;
        }
        if hi == lo {
            return Some(0);
        }
        Some(((hi as f64) / (lo as f64)).log2().round().max(1.0) as usize)
    }

    pub fn krull_dimension(&self) -> usize {
        self.staircase_dimension(&[]).unwrap_or(0)
    }
}

fn weight_of(w: &[i64], e: &[i64]) -> i64 {
    e.iter().zip(w).map(|(a, b)| a * b).sum()
}

fn divides(g: &[i64], m: &[i64]) -> bool {
    (0..g.len().max(m.len())).all(|i| LPoly::exponent(g, i) <= LPoly::exponent(m, i))
}

fn compositions(d: i64, n: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() + 1 == n {
        let mut e = prefix.clone();
        e.push(d);
        out.push(e);
        return;
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in 0..=d {
        prefix.push(k);
        compositions(d - k, n, prefix, out);
        prefix.pop();
    }
}

fn weighted(w: i64, weights: &[i64], prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let i = prefix.len();
    if i == weights.len() {
        if w == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let mut k = 0;
    while k * weights[i] <= w {
        prefix.push(k);
        weighted(w - k * weights[i], weights, prefix, out);
        prefix.pop();
        k += 1;
    }
}

/// Element of a presented ring, always in normal form.
#[derive(Clone)]
pub struct RingElement {
    ring: Arc<PresentedCommRing>,
    poly: LPoly,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.poly == other.poly
    }
}

impl RingElement {
    pub fn ring(&self) -> &Arc<PresentedCommRing> {
        &self.ring
    }

    pub fn poly(&self) -> &LPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.ring.element(&self.poly * &other.poly)
    }

    pub fn add(&self, other: &Self) -> Self {
        RingElement { ring: self.ring.clone(), poly: &self.poly + &other.poly }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.ring.constant(CycScalar::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn as_monomial(&self) -> Option<Vec<i64>> {
        self.poly.as_monomial().map(|(e, _)| e.to_vec())
    }

    /// Same element scaled to leading coefficient 1.
    pub fn normalized(&self) -> Self {
        RingElement { ring: self.ring.clone(), poly: self.poly.normalized() }
    }

    fn weight_components(&self) -> Vec<(i64, LPoly)> {
        let w = self.ring.weights.as_ref().expect("weights present");
        let mut comps: std::collections::BTreeMap<i64, LPoly> = Default::default();
        for (e, c) in self.poly.terms() {
            comps.entry(weight_of(w, e)).or_default().add_term(e.clone(), c.clone());
        }
        comps.into_iter().collect()
    }

    /// Exact quotient `self / d` for a monomial `d`.
    ///
    /// Division by monomials in unpaired variables is exponentwise. Otherwise
    /// the ring must be graded; the quotient is found by linear algebra on
    /// the normal-form monomials of the right weight. Anything else is
    /// refused rather than guessed.
    pub fn exact_div(&self, d: &RingElement) -> Result<Option<RingElement>> {
        let de = d.as_monomial().ok_or_else(|| Error::Refused(format!("division by the non-monomial {} is not supported", d)))?;
        let dc = d.poly.leading_coeff().expect("monomial").clone();
        let dinv = dc.inv()?;
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let free = de.iter().enumerate().all(|(v, &k)| k == 0 || !self.ring.paired(v));
        if free {
            let mut q = LPoly::zero();
            for (e, c) in self.poly.terms() {
                let rest: Vec<i64> = (0..e.len().max(de.len())).map(|i| LPoly::exponent(e, i) - LPoly::exponent(&de, i)).collect();
                if rest.iter().any(|&k| k < 0) {
                    return Ok(None);
                }
                q.add_term(rest, c * &dinv);
            }
            return Ok(Some(self.ring.element(q)));
        }
        let Some(w) = self.ring.weights.clone() else {
            return Err(Error::Refused(format!("exact division by {} needs a grading on {}", d, self.ring.name)));
        };
        let dw = weight_of(&w, &de);
        let mut quotient = LPoly::zero();
        for (cw, comp) in self.weight_components() {
            let target = cw - dw;
            if target < 0 {
                return Ok(None);
            }
            let cands = self.ring.normal_monomials_of_weight(target);
            let images: Vec<LPoly> = cands.iter().map(|m| self.ring.normal_form(&(&LPoly::monomial(m, CycScalar::one()) * &d.poly))).collect();
            match solve_combination(&images, &comp) {
                None => return Ok(None),
                Some(x) => {
                    for (m, c) in cands.iter().zip(x) {
                        quotient.add_term(m.clone(), c);
                    }
                }
            }
        }
        Ok(Some(self.ring.element(quotient)))
    }
}

/// Finds scalars `x` with `Σ x_k images_k = target`, if any.
fn solve_combination(images: &[LPoly], target: &LPoly) -> Option<Vec<CycScalar>> {
    let mut monos: Vec<Vec<i64>> = Vec::new();
    for p in images.iter().chain(std::iter::once(target)) {
        for (e, _) in p.terms() {
            if !monos.contains(e) {
                monos.push(e.clone());
            }
        }
    }
    let cols = images.len();
    let coeff = |p: &LPoly, e: &Vec<i64>| p.terms().find(|(f, _)| *f == e).map(|(_, c)| c.clone()).unwrap_or_else(CycScalar::zero);
    let mut rows: Vec<Vec<CycScalar>> = monos
        .iter()
        .map(|e| {
            let mut r: Vec<CycScalar> = images.iter().map(|p| coeff(p, e)).collect();
            r.push(coeff(target, e));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for c in 0..cols {
        let Some(p) = (r0..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(r0, p);
        let inv = rows[r0][c].inv().expect("nonzero pivot");
        rows[r0] = rows[r0].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != r0 && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                let sub: Vec<CycScalar> = rows[r0].iter().map(|x| x * &f).collect();
                rows[r] = rows[r].iter().zip(sub).map(|(a, b)| a - &b).collect();
            }
        }
        pivots.push((r0, c));
        r0 += 1;
    }
    if rows[r0..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![CycScalar::zero(); cols];
    for (r, c) in pivots {
        x[c] = rows[r][cols].clone();
    }
    Some(x)
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display(&self.ring.names()))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl CommRing for RingElement {
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        RingElement { ring: self.ring.clone(), poly: -&self.poly }
    }
    fn zero_like(&self) -> Self {
        RingElement { ring: self.ring.clone(), poly: LPoly::zero() }
    }
    fn one_like(&self) -> Self {
        self.ring.constant(CycScalar::one())
    }
}

/// Drops zero generators, scalar multiples, and monomials divisible by another monomial generator.
pub fn prune(gens: Vec<RingElement>) -> Vec<RingElement> {
    let mut uniq: Vec<RingElement> = Vec::new();
    for g in gens {
        let g = g.normalized();
        if !g.is_zero() && !uniq.contains(&g) {
            uniq.push(g);
        }
    }
    let keep: Vec<bool> = uniq
        .iter()
        .enumerate()
        .map(|(i, g)| match g.as_monomial() {
            None => true,
            Some(m) => !uniq.iter().enumerate().any(|(j, h)| j != i && h.as_monomial().is_some_and(|hm| divides(&hm, &m) && hm != m)),
        })
        .collect();
    let mut out: Vec<RingElement> = uniq.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();
    out.sort_by_cached_key(|g| std::cmp::Reverse(format!("{:?}", g.poly)));
    out
}

/// Generators of `I^p`: all `p`-fold products, normalized and pruned.
pub fn ideal_power(gens: &[RingElement], p: u32) -> Result<Vec<RingElement>> {
    if p == 0 {
        return Err(Error::InvalidInput("ideal power needs p ≥ 1".into()));
    }
    let mut acc = prune(gens.to_vec());
    let base = acc.clone();
    for _ in 1..p {
        let prods: Vec<RingElement> = acc.iter().flat_map(|a| base.iter().map(move |b| a.mul(b))).collect();
        acc = prune(prods);
    }
    Ok(acc)
}

/// Outcome of checking `I ⊆ dR` with `dim(dR/I) ≤ dim R − 2`.
#[derive(Clone, Debug)]
pub struct PccOutcome {
    pub holds: bool,
    /// Generators of `d⁻¹I` when every generator is divisible by `d`.
    pub quotient_generators: Vec<RingElement>,
    /// Dimension of `R/d⁻¹I`; `None` for the zero module.
    pub quotient_dim: Option<usize>,
    pub ring_dim: usize,
    pub reason: String,
}

/// Principal closure check for `I` against a candidate generator `d`.
pub fn pcc_check(ideal: &[RingElement], d: &RingElement) -> Result<PccOutcome> {
    if d.is_zero() {
        return Err(Error::InvalidInput("candidate generator must be nonzero".into()));
    }
    let ring = d.ring().clone();
    let ring_dim = ring.krull_dimension();
    let mut quotients = Vec::new();
    for g in ideal {
        match g.exact_div(d)? {
            Some(q) => quotients.push(q),
            None => {
                return Ok(PccOutcome {
                    holds: false,
                    quotient_generators: Vec::new(),
                    quotient_dim: None,
                    ring_dim,
                    reason: format!("{} is not divisible by {}", g, d),
                })
            }
        }
    }
    let quotients = prune(quotients);
    let mut monos = Vec::new();
    for q in &quotients {
        if q.poly.as_constant().is_some_and(|c| !c.is_zero()) {
            monos.push(Vec::new());
            continue;
        }
        match q.as_monomial() {
            Some(m) => monos.push(m),
            None => return Err(Error::Refused(format!("undecided: staircase of {} needs a monomial generating set, found {}", ring.name, q))),
        }
    }
    let quotient_dim = ring.staircase_dimension(&monos);
    let holds = quotient_dim.is_none_or(|k| k + 2 <= ring_dim);
    let shown: Vec<String> = quotients.iter().map(ToString::to_string).collect();
    let reason = match (holds, quotient_dim) {
        (true, None) => format!("d⁻¹I contains a unit; reflexive hull is ({})", d),
        (true, Some(k)) => format!("dim R/({}) = {} ≤ {} − 2; reflexive hull is ({})", shown.join(", "), k, ring_dim, d),
        (false, Some(k)) => format!("dim R/({}) = {} > {} − 2", shown.join(", "), k, ring_dim),
        (false, None) => unreachable!("zero quotient always passes"),
    };
    Ok(PccOutcome { holds, quotient_generators: quotients, quotient_dim, ring_dim, reason })
}

/// Entry of the p-power discriminant table.
#[derive(Clone, Debug, PartialEq)]
pub enum PPowerEntry {
    Generator(RingElement),
    Zero,
    DoesNotExist,
    Undecided(String),
}

impl fmt::Display for PPowerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PPowerEntry::Generator(g) => write!(f, "{}", g),
            PPowerEntry::Zero => f.write_str("0"),
            PPowerEntry::DoesNotExist => f.write_str("does not exist"),
            PPowerEntry::Undecided(why) => write!(f, "undecided ({})", why),
        }
    }
}

/// Largest number of candidate generators tried before giving up.
pub const CANDIDATE_BUDGET: usize = 5000;

/// Reflexive hull generator of `(MD)^p`, searched among normal-form monomials.
///
/// `tabulated` marks fixtures whose non-existence is known independently;
/// for anything else a failed search is reported as undecided.
pub fn ppower_entry(md: &[RingElement], ring: &Arc<PresentedCommRing>, p: u32, tabulated: bool) -> Result<PPowerEntry> {
    let md = prune(md.to_vec());
    if md.is_empty() {
        return Ok(PPowerEntry::Zero);
    }
    let power = ideal_power(&md, p)?;
    if power.iter().any(|g| g.poly.as_constant().is_some()) {
        return Ok(PPowerEntry::Generator(ring.constant(CycScalar::one())));
    }
    let max_deg = power.iter().map(|g| g.poly.terms().map(|(e, _)| e.iter().sum::<i64>()).max().unwrap_or(0)).min().unwrap_or(0);
    let mut candidates: Vec<Vec<i64>> = (0..=max_deg).rev().flat_map(|k| ring.normal_monomials_of_degree(k)).collect();
    if candidates.len() > CANDIDATE_BUDGET {
        candidates.truncate(CANDIDATE_BUDGET);
    }
    let total = candidates.len();
    for e in candidates {
        let d = ring.monomial(&e);
        match pcc_check(&power, &d) {
            Ok(o) if o.holds => return Ok(PPowerEntry::Generator(d)),
            Ok(_) => {}
            Err(Error::Refused(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(if tabulated {
        PPowerEntry::DoesNotExist
    } else {
        PPowerEntry::Undecided(format!("no principal hull among {} monomial candidates", total))
    })
}

/// `k[a, b, c]/(ab − c³)` graded by `a, b ↦ 3`, `c ↦ 2`.
pub fn a2_singularity() -> Arc<PresentedCommRing> {
    let rhs = LPoly::monomial(&[0, 0, 3], CycScalar::one());
    PresentedCommRing::new("k[a,b,c]/(ab - c^3)", &["a", "b", "c"], vec![Rule { left: (0, 1), rhs }], Some(vec![3, 3, 2])).expect("valid presentation")
}

/// A matrix-unit generator `r·e_ij` of an order inside `M_2`.
#[derive(Clone, Debug)]
pub struct MatrixGen {
    pub scalar: RingElement,
    pub row: usize,
    pub col: usize,
}

/// Generators `e11, e22, e21, a·e12, c·e12` of the order `[[Z, I], [Z, Z]]`, `I = (a, c)`.
pub fn a2_matrix_order(ring: &Arc<PresentedCommRing>) -> Vec<MatrixGen> {
    let one = ring.constant(CycScalar::one());
    vec![
        MatrixGen { scalar: one.clone(), row: 0, col: 0 },
        MatrixGen { scalar: one.clone(), row: 1, col: 1 },
        MatrixGen { scalar: one, row: 1, col: 0 },
        MatrixGen { scalar: ring.var(0), row: 0, col: 1 },
        MatrixGen { scalar: ring.var(2), row: 0, col: 1 },
    ]
}

/// Regular trace of `g·h` over the center of `M_2`: twice the matrix trace.
pub fn matrix_trace_of_product(g: &MatrixGen, h: &MatrixGen) -> RingElement {
    if g.col == h.row && g.row == h.col {
        g.scalar.mul(&h.scalar).mul(&g.scalar.ring().constant(CycScalar::from_int(2)))
    } else {
        g.scalar.zero_like()
    }
}

/// `MD_w` of a matrix order: all `w × w` minors of its trace form.
pub fn matrix_order_md(ring: &Arc<PresentedCommRing>, gens: &[MatrixGen], w: usize) -> Result<Vec<RingElement>> {
    let one = ring.constant(CycScalar::one());
    let ideal = disccore::md_ideal(ring.name(), gens, w, matrix_trace_of_product, &one)?;
    Ok(prune(ideal.generators))
}
