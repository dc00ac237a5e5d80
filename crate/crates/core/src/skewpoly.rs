//! Skew polynomial rings `k_p[x_1, …, x_n]` with `p_ij` roots of unity.
//!
//! Elements are kept in the normal order `x_1 < x_2 < … < x_n`. Negative
//! exponents are allowed so that the same type serves for localizations
//! at central monomials.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::disccore::{self, ChartEvidence, CommRing, DiscriminantReport, IdealData, Method, Monomial, QuasiBasisData};
use crate::error::{Error, Result};
use crate::intlattice::{central_lattice, coset_representatives, CentralLattice, IntMatrix};
use crate::poly::{monomial_string, write_term, LPoly};
use crate::scalars::CycScalar;

/// Presentation `x_j x_i = ζ_N^{e_ij} x_i x_j`.
#[derive(Debug)]
pub struct SkewAlgebra {
    name: String,
    n: usize,
    order: u32,
    exps: IntMatrix,
    lattice: CentralLattice,
    roots: Vec<CycScalar>,
    names: Vec<String>,
}

impl SkewAlgebra {
    /// `exponents[i][j] = e_ij` with `p_ij = ζ_N^{e_ij}`; must be antisymmetric mod `N`.
    pub fn new(name: &str, order: u32, exponents: &[Vec<i64>]) -> Result<Arc<Self>> {
        let n = exponents.len();
        if n == 0 {
            return Err(Error::InvalidInput("a skew polynomial ring needs at least one variable".into()));
        }
        let m = IntMatrix::from_rows(exponents)?;
        let lattice = central_lattice(&m, order)?;
        let reduced: Vec<Vec<i64>> = exponents.iter().map(|r| r.iter().map(|x| x.rem_euclid(order as i64)).collect()).collect();
        Ok(Arc::new(SkewAlgebra {
            name: name.to_string(),
            n,
            order,
            exps: IntMatrix::from_rows(&reduced)?,
            lattice,
            roots: (0..order as i64).map(|k| CycScalar::root(k, order)).collect(),
            names: (1..=n).map(|i| format!("x{}", i)).collect(),
        }))
    }

    /// `k_q[x, y]` with `yx = q xy`, `q = ζ_N^k`.
    pub fn quantum_plane(name: &str, k: i64, order: u32) -> Result<Arc<Self>> {
        Self::new(name, order, &[vec![0, k], vec![-k, 0]])
    }

    /// Block-diagonal presentation of `self ⊗ other`.
    pub fn tensor(&self, other: &SkewAlgebra) -> Result<Arc<Self>> {
        let l = num_integer::lcm(self.order, other.order);
        let (s1, s2) = ((l / self.order) as i64, (l / other.order) as i64);
        let n = self.n + other.n;
        let mut e = vec![vec![0i64; n]; n];
        for i in 0..self.n {
            for j in 0..self.n {
                e[i][j] = self.exps[(i, j)] * s1;
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                e[self.n + i][self.n + j] = other.exps[(i, j)] * s2;
            }
        }
        Self::new(&format!("{} ⊗ {}", self.name, other.name), l, &e)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn lattice(&self) -> &CentralLattice {
        &self.lattice
    }

    /// Rank over the center, `[Z^n : L]`.
    pub fn rank(&self) -> u64 {
        self.lattice.index()
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    /// `p_ij` as a field element.
    pub fn p(&self, i: usize, j: usize) -> CycScalar {
        self.root(self.exps[(i, j)])
    }

    fn root(&self, k: i64) -> CycScalar {
        self.roots[k.rem_euclid(self.order as i64) as usize].clone()
    }

    /// Exponent of `ζ_N` in `λ(a, b)`, where `x^a x^b = λ(a, b) x^{a+b}`.
    pub fn twist_exponent(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut k = 0i64;
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..i {
                k += self.exps[(j, i)] * a[i] * b[j];
            }
        }
        k.rem_euclid(self.order as i64)
    }

    pub fn twist(&self, a: &[i64], b: &[i64]) -> CycScalar {
        self.root(self.twist_exponent(a, b))
    }
}

/// Element of a skew polynomial ring (or its Laurent localization).
#[derive(Clone)]
pub struct SkewElement {
    alg: Arc<SkewAlgebra>,
    terms: BTreeMap<Vec<i64>, CycScalar>,
}

impl PartialEq for SkewElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl SkewElement {
    pub fn zero(alg: &Arc<SkewAlgebra>) -> Self {
        SkewElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<SkewAlgebra>) -> Self {
        Self::monomial(alg, &vec![0; alg.n], CycScalar::one())
    }

    pub fn monomial(alg: &Arc<SkewAlgebra>, exp: &[i64], c: CycScalar) -> Self {
        assert_eq!(exp.len(), alg.n, "exponent vector has the wrong length");
        let mut e = Self::zero(alg);
        e.add_term(exp.to_vec(), c);
        e
    }

    /// The generator `x_i` (0-based).
    pub fn var(alg: &Arc<SkewAlgebra>, i: usize) -> Self {
        let mut e = vec![0; alg.n];
        e[i] = 1;
        Self::monomial(alg, &e, CycScalar::one())
    }

    pub fn from_terms(alg: &Arc<SkewAlgebra>, terms: impl IntoIterator<Item = (Vec<i64>, CycScalar)>) -> Self {
        let mut e = Self::zero(alg);
        for (x, c) in terms {
            e.add_term(x, c);
        }
        e
    }

    pub fn algebra(&self) -> &Arc<SkewAlgebra> {
        &self.alg
    }

    fn add_term(&mut self, exp: Vec<i64>, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(cur) => {
                *cur += &c;
                if cur.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &CycScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_monomial(&self) -> Option<(&[i64], &CycScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (e.as_slice(), c))
        } else {
            None
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SkewElement { alg: self.alg.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(&self.alg);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    /// Product in normal form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let alg = &self.alg;
        let mut out = Self::zero(alg);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, &(x * y) * &alg.twist(a, b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Total degree vector is homogeneous when only one exponent vector occurs.
    pub fn is_homogeneous(&self) -> bool {
        self.terms.len() <= 1
    }

    /// Lattice criterion: every exponent lies in the central lattice.
    pub fn is_central(&self) -> bool {
        self.terms.keys().all(|e| self.alg.lattice.contains(e))
    }

    /// Direct criterion: `f x_i = x_i f` for every generator.
    pub fn commutes_with_generators(&self) -> bool {
        (0..self.alg.n).all(|i| {
            let x = Self::var(&self.alg, i);
            self.mul_unchecked(&x) == x.mul_unchecked(self)
        })
    }

    /// Regular trace over the center: `r²·f` on central monomials, `0` otherwise.
    pub fn trace(&self) -> Self {
        let r2 = CycScalar::from_int(self.alg.rank() as i64);
        let mut out = Self::zero(&self.alg);
        for (e, c) in &self.terms {
            if self.alg.lattice.contains(e) {
                out.add_term(e.clone(), c * &r2);
            }
        }
        out
    }

    /// Trace of left multiplication on the basis of chart `chart`, computed
    /// from the matrix rather than from the lattice rule.
    pub fn matrix_trace(&self, chart: usize) -> Self {
        let basis = coset_representatives(&self.alg.lattice, Some(chart));
        let mut out = Self::zero(&self.alg);
        for r in &basis {
            let prod = self.mul_unchecked(&Self::monomial(&self.alg, r, CycScalar::one()));
            for (e, c) in &prod.terms {
                let (rep, coeff) = express_on_basis(&self.alg, e, &basis);
                if rep == r {
                    let coeff = coeff.scale(c);
                    for (x, y) in coeff.terms {
                        out.add_term(x, y);
                    }
                }
            }
        }
        out
    }

    /// Exponent of `x_i` when `self` is a single monomial.
    pub fn monomial_exponents(&self) -> Option<Vec<i64>> {
        self.as_monomial().map(|(e, _)| e.to_vec())
    }

    /// Converts a central element to a commutative Laurent polynomial,
    /// `x^d ↦ c·X^d`. Only a ring map when the twist is trivial on the center.
    pub fn to_lpoly(&self) -> LPoly {
        let mut p = LPoly::zero();
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

/// Writes `x^a` as `x^r · coeff` with `x^r` a basis monomial and `coeff` a
/// central Laurent monomial; returns the basis vector used.
fn express_on_basis<'a>(alg: &Arc<SkewAlgebra>, a: &[i64], basis: &'a [Vec<i64>]) -> (&'a Vec<i64>, SkewElement) {
    let key = alg.lattice.coset_key(a);
    let r = basis.iter().find(|r| alg.lattice.coset_key(r) == key).expect("every coset has a representative");
    let d: Vec<i64> = a.iter().zip(r).map(|(x, y)| x - y).collect();
    // x^r x^d = λ(r, d) x^a
    let lam = alg.twist(r, &d);
    let coeff = SkewElement::monomial(alg, &d, lam.inv().expect("roots of unity are invertible"));
    (r, coeff)
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.alg.var_names();
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut out, c, &monomial_string(e, &names), k == 0);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl CommRing for SkewElement {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other).expect("same algebra")
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn zero_like(&self) -> Self {
        SkewElement::zero(&self.alg)
    }
    fn one_like(&self) -> Self {
        SkewElement::one(&self.alg)
    }
}

/// Local discriminant on the chart where every `x_j`, `j ≠ i`, is inverted.
#[derive(Clone, Debug)]
pub struct SkewChart {
    pub chart: usize,
    pub basis: Vec<Vec<i64>>,
    /// `det(tr(b_k b_l))`, a central Laurent monomial.
    pub determinant: SkewElement,
    /// Exponent of `x_i` in the determinant; the rest is a unit on the chart.
    pub exponent: i64,
}

/// Checks that every monomial of the box generating set is a basis monomial
/// times an element of the localized center; returns a witness otherwise.
fn chart_freeness_witness(alg: &Arc<SkewAlgebra>, chart: usize, basis: &[Vec<i64>]) -> Option<Vec<i64>> {
    box_generating_set(alg).into_iter().find(|a| {
        let key = alg.lattice.coset_key(a);
        let r = basis.iter().find(|r| alg.lattice.coset_key(r) == key);
        match r {
            None => true,
            Some(r) => a[chart] < r[chart],
        }
    })
}

/// Chart-local discriminant `det(tr(b_k b_l))` on the chart inverting all `x_j`, `j ≠ i`.
pub fn chart_local_discriminant(alg: &Arc<SkewAlgebra>, i: usize) -> Result<SkewChart> {
    if i >= alg.n {
        return Err(Error::InvalidInput(format!("chart index {} out of range", i + 1)));
    }
    let basis = coset_representatives(&alg.lattice, Some(i));
    if let Some(w) = chart_freeness_witness(alg, i, &basis) {
        return Err(Error::Refused(format!(
            "chart {} is not free on its coset representatives: x^{:?} is not a basis monomial times a chart-central element",
            i + 1,
            w
        )));
    }
    let mons: Vec<SkewElement> = basis.iter().map(|r| SkewElement::monomial(alg, r, CycScalar::one())).collect();
    let t: Vec<Vec<SkewElement>> = mons.iter().map(|a| mons.iter().map(|b| a.mul_unchecked(b).trace()).collect()).collect();
    let det = disccore::determinant(&t, &SkewElement::one(alg));
    let exp = det
        .monomial_exponents()
        .ok_or_else(|| Error::Assertion(format!("chart {} discriminant is not a monomial: {}", i + 1, det)))?;
    Ok(SkewChart { chart: i, basis, exponent: exp[i], determinant: det })
}

/// Reflexive-hull discriminant `∏ x_i^{s_i}` with per-chart evidence.
pub fn reflexive_discriminant(alg: &Arc<SkewAlgebra>) -> Result<(DiscriminantReport, Vec<SkewChart>)> {
    let charts: Vec<SkewChart> = (0..alg.n).map(|i| chart_local_discriminant(alg, i)).collect::<Result<_>>()?;
    let s: Vec<i64> = charts.iter().map(|c| c.exponent).collect();
    let names = alg.var_names();
    let value = Monomial::from_exponents(&names, &s)?;
    let mut report = DiscriminantReport::new(&alg.name, alg.rank(), "csr-bar", value, Method::ChartGlued);
    for c in &charts {
        let inverted: Vec<String> = (0..alg.n).filter(|&j| j != c.chart).map(|j| names[j].to_string()).collect();
        let (e, _) = c.determinant.as_monomial().expect("checked monomial");
        report.charts.push(ChartEvidence {
            chart: format!("U{}", c.chart + 1),
            inverted,
            basis_size: c.basis.len(),
            free: true,
            local_discriminant: monomial_or_one(e, &names),
            portable_part: Monomial::var_pow(names[c.chart], c.exponent.max(0) as u64).to_string(),
        });
    }
    report.paper_justified_steps = vec![
        "charts U_i cover the spectrum of the center outside a locus of codimension at least 2".to_string(),
        "the reflexive hull is determined by its restrictions to a cover whose complement has codimension at least 2".to_string(),
    ];
    Ok((report, charts))
}

fn monomial_or_one(e: &[i64], names: &[&str]) -> String {
    let s = monomial_string(e, names);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Result of the monomial reflexive hull computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialHull {
    /// Exponent vector of the principal generator `d`.
    pub generator: Vec<i64>,
    /// Krull dimension of `k[x]/(d⁻¹M)`; `None` when the quotient is zero.
    pub quotient_dim: Option<usize>,
    /// `dim(dA/M) ≤ n − 2`.
    pub pcc_holds: bool,
}

/// Reflexive hull of a monomial ideal: the coordinatewise minimum `d`, plus
/// the staircase dimension check certifying `(M)^{∨∨} = (d)`.
pub fn monomial_hull(gens: &[Vec<i64>]) -> Result<MonomialHull> {
    let n = gens.first().ok_or_else(|| Error::InvalidInput("monomial hull of an empty generator list".into()))?.len();
    if gens.iter().any(|g| g.len() != n || g.iter().any(|&x| x < 0)) {
        return Err(Error::InvalidInput("monomial exponents must be non-negative vectors of equal length".into()));
    }
    let d: Vec<i64> = (0..n).map(|i| gens.iter().map(|g| g[i]).min().unwrap_or(0)).collect();
    let reduced: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().zip(&d).map(|(a, b)| a - b).collect()).collect();
    let quotient_dim = staircase_dimension(&reduced, n);
    let pcc_holds = match quotient_dim {
        None => true,
        Some(k) => k + 2 <= n,
    };
    Ok(MonomialHull { generator: d, quotient_dim, pcc_holds })
}

/// Krull dimension of `k[x_1..x_n]/(monomials)`: the largest set `S` of
/// variables such that no generator is supported inside `S`.
pub fn staircase_dimension(gens: &[Vec<i64>], n: usize) -> Option<usize> {
    let supports: Vec<u64> = gens.iter().map(|g| g.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u64, |m, (i, _)| m | (1 << i))).collect();
    if supports.contains(&0) {
        return None;
    }
    let best = (0u64..(1u64 << n)).filter(|&s| supports.iter().all(|&g| g & !s != 0)).map(|s| s.count_ones() as usize).max();
    best
}

/// Box `∏ [0, N_i)` of exponent vectors, `N_i` the least `k` with `x_i^k` central.
pub fn box_generating_set(alg: &SkewAlgebra) -> Vec<Vec<i64>> {
    let periods: Vec<i64> = (0..alg.n).map(|i| alg.lattice.axis_period(i)).collect();
    let mut out = vec![Vec::new()];
    for &p in &periods {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..p).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

/// All `v × v` minors of the trace form on the box generating set.
pub fn md_exhaustive(alg: &Arc<SkewAlgebra>, gens: &[Vec<i64>], v: usize) -> Result<IdealData<SkewElement>> {
    let mons: Vec<SkewElement> = gens.iter().map(|g| SkewElement::monomial(alg, g, CycScalar::one())).collect();
    let one = SkewElement::one(alg);
    disccore::md_ideal(&alg.name, &mons, v, |a, b| a.mul_unchecked(b).trace(), &one)
}

/// Exponents of an exhaustive ideal's generators; every minor must be a monomial.
pub fn minor_exponents(ideal: &IdealData<SkewElement>) -> Result<Vec<Vec<i64>>> {
    ideal
        .generators
        .iter()
        .map(|g| g.monomial_exponents().ok_or_else(|| Error::Assertion(format!("minor {} is not a monomial", g))))
        .collect()
}

/// Free basis over the center with trivial twist on central monomials,
/// packaged for the tensor product check.
pub fn quasi_basis_data(alg: &Arc<SkewAlgebra>) -> Result<QuasiBasisData> {
    let lb = alg.lattice.basis();
    for i in 0..lb.rows() {
        for j in 0..lb.rows() {
            if alg.twist_exponent(lb.row(i), lb.row(j)) != 0 {
                return Err(Error::Refused(format!("{}: central monomials multiply with a nontrivial twist", alg.name)));
            }
        }
    }
    let basis = coset_representatives(&alg.lattice, None);
    let mons: Vec<SkewElement> = basis.iter().map(|r| SkewElement::monomial(alg, r, CycScalar::one())).collect();
    let basis_trace = mons.iter().map(|a| mons.iter().map(|b| a.mul_unchecked(b).trace().to_lpoly()).collect()).collect();
    Ok(QuasiBasisData {
        name: alg.name.clone(),
        var_names: alg.names.clone(),
        basis_trace,
        generators: (0..basis.len()).map(|k| (k, LPoly::one())).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex26(which: u8) -> Arc<SkewAlgebra> {
        let (p12, p13, p23) = match which {
            1 => (1, 0, 0),
            2 => (1, 1, 0),
            _ => (1, 1, 1),
        };
        SkewAlgebra::new("ex", 2, &[vec![0, p12, p13], vec![-p12, 0, p23], vec![-p13, -p23, 0]]).unwrap()
    }

    #[test]
    fn defining_relation() {
        let alg = SkewAlgebra::quantum_plane("qp", 1, 3).unwrap();
        let (x1, x2) = (SkewElement::var(&alg, 0), SkewElement::var(&alg, 1));
        let lhs = x2.mul(&x1).unwrap();
        let rhs = SkewElement::monomial(&alg, &[1, 1], CycScalar::root(1, 3));
        assert_eq!(lhs, rhs);
        assert_eq!(x1.mul(&SkewElement::one(&alg)).unwrap(), x1);
    }

    #[test]
    fn center_and_trace() {
        let alg = ex26(2);
        let x1sq = SkewElement::monomial(&alg, &[2, 0, 0], CycScalar::one());
        assert!(x1sq.is_central());
        assert!(!SkewElement::var(&alg, 0).is_central());
        assert_eq!(x1sq.trace(), x1sq.scale(&CycScalar::from_int(4)));
        assert!(SkewElement::var(&alg, 0).trace().is_zero());
        let z = SkewElement::monomial(&ex26(3), &[1, 1, 1], CycScalar::one());
        assert!(z.is_central() && z.commutes_with_generators());
    }

    #[test]
    fn chart_exponents_follow_projection_rule() {
        for which in 1..=3 {
            let alg = ex26(which);
            for i in 0..3 {
                let c = chart_local_discriminant(&alg, i).unwrap();
                let g = alg.lattice().projection_gcd(i);
                assert_eq!(c.exponent, alg.rank() as i64 * (g - 1));
            }
        }
    }

    #[test]
    fn hull_examples() {
        let h = monomial_hull(&[vec![4, 4]]).unwrap();
        assert_eq!(h.generator, vec![4, 4]);
        assert_eq!(h.quotient_dim, None);
        let gens: Vec<Vec<i64>> = (0..=4).map(|i| vec![4, i, 4 - i]).collect();
        let h = monomial_hull(&gens).unwrap();
        assert_eq!(h.generator, vec![4, 0, 0]);
        assert!(h.pcc_holds);
        let h = monomial_hull(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(h.generator, vec![0, 0]);
        assert_eq!(h.quotient_dim, Some(0));
        assert!(monomial_hull(&[]).is_err());
    }
}
