//! Quantum generalized Weyl algebras over `k[t]`.
//!
//! Elements are kept as `Σ p_γ(t) z^γ` with coefficients on the left, where
//! `z_i^k` is `x_i^k` for `k ≥ 0` and `y_i^{-k}` otherwise. The rules are
//! `x_i p(t) = p(q_i t) x_i`, `y_i p(t) = p(q_i⁻¹ t) y_i`, `x_i y_i = h_i(t)`,
//! `y_i x_i = h_i(q_i⁻¹ t)`, and generators with different indices commute.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;

use crate::commring::{PresentedCommRing, Rule};
use crate::disccore::{self, ChartEvidence, CommRing, DiscriminantReport, IdealData, Method, Monomial, QuasiBasisData};
use crate::error::{Error, Result};
use crate::poly::{self, LPoly, UniPoly};
use crate::scalars::CycScalar;

#[derive(Debug)]
pub struct GwaAlgebra {
    name: String,
    order: u32,
    q_exponents: Vec<i64>,
    orders: Vec<u32>,
    h: Vec<UniPoly>,
}

impl GwaAlgebra {
    /// `q_i = ζ_order^{q_exponents[i]}`.
    pub fn new(name: &str, order: u32, q_exponents: &[i64], h: Vec<UniPoly>) -> Result<Arc<Self>> {
        let m = q_exponents.len();
        if m == 0 || h.len() != m {
            return Err(Error::InvalidInput("need one q exponent and one h polynomial per index".into()));
        }
        if order == 0 {
            return Err(Error::InvalidInput("field order must be positive".into()));
        }
        let mut orders = Vec::with_capacity(m);
        for (i, &e) in q_exponents.iter().enumerate() {
            let e = e.rem_euclid(order as i64) as u32;
            let n = order / order.gcd(&e);
            if n == 1 {
                return Err(Error::InvalidInput(format!("q_{} = 1 gives an algebra of infinite rank over its center", i + 1)));
            }
            orders.push(n);
        }
        for (i, p) in h.iter().enumerate() {
            if p.degree().unwrap_or(0) == 0 {
                return Err(Error::InvalidInput(format!("h_{} must be a nonconstant polynomial", i + 1)));
            }
        }
        let alg = GwaAlgebra { name: name.into(), order, q_exponents: q_exponents.to_vec(), orders, h };
        for i in 0..m {
            for j in 0..m {
                if i != j && alg.h[j].substitute_scaled(&alg.q(i)) != alg.h[j] {
                    return Err(Error::InvalidInput(format!("σ_{} does not fix h_{}; the relations are inconsistent", i + 1, j + 1)));
                }
            }
        }
        Ok(Arc::new(alg))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn q_exponents(&self) -> &[i64] {
        &self.q_exponents
    }

    pub fn q(&self, i: usize) -> CycScalar {
        CycScalar::root(self.q_exponents[i], self.order)
    }

    /// `n_i = ord(q_i)`.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn h(&self, i: usize) -> &UniPoly {
        &self.h[i]
    }

    /// `n = n_1 ⋯ n_m`.
    pub fn n(&self) -> u32 {
        self.orders.iter().product()
    }

    pub fn rank(&self) -> u64 {
        (self.n() as u64).pow(2)
    }

    pub fn coprime(&self) -> bool {
        let o = &self.orders;
        (0..o.len()).all(|i| (i + 1..o.len()).all(|j| o[i].gcd(&o[j]) == 1))
    }

    /// Center and discriminant computations need pairwise coprime orders.
    pub fn require_coprime(&self) -> Result<()> {
        if self.coprime() {
            Ok(())
        } else {
            Err(Error::Refused(format!("orders {:?} of the q_i are not pairwise coprime; no center presentation is available", self.orders)))
        }
    }

    /// `∏ q_i^{γ_i}`
    pub fn q_power(&self, gamma: &[i64]) -> CycScalar {
        let e: i64 = gamma.iter().zip(&self.q_exponents).map(|(g, q)| g * q).sum();
        CycScalar::root(e, self.order)
    }

    fn qi_pow(&self, i: usize, k: i64) -> CycScalar {
        CycScalar::root(self.q_exponents[i] * k, self.order)
    }

    fn indexed(&self, base: &str, i: usize) -> String {
        if self.degree() == 1 {
            base.to_string()
        } else {
            format!("{}{}", base, i + 1)
        }
    }

    pub fn x_name(&self, i: usize) -> String {
        self.indexed("x", i)
    }

    pub fn y_name(&self, i: usize) -> String {
        self.indexed("y", i)
    }

    /// `a_1, …, a_m, b_1, …, b_m, c`
    pub fn center_names(&self) -> Vec<String> {
        let m = self.degree();
        let mut v: Vec<String> = (0..m).map(|i| self.indexed("a", i)).collect();
        v.extend((0..m).map(|i| self.indexed("b", i)));
        v.push("c".into());
        v
    }

    /// `z_i^a z_i^b = P(t) z_i^{a+b}`.
    fn pair_factor(&self, i: usize, a: i64, b: i64) -> UniPoly {
        let h = &self.h[i];
        let mut p = UniPoly::one();
        if a > 0 && b < 0 {
            let k = a.min(-b);
            for j in 1..=k {
                p = &p * &h.substitute_scaled(&self.qi_pow(i, a - j));
            }
        } else if a < 0 && b > 0 {
            let c = -a;
            let k = c.min(b);
            for j in c - k + 1..=c {
                p = &p * &h.substitute_scaled(&self.qi_pow(i, -j));
            }
        }
        p
    }

    /// `z^γ z^δ = P(t) z^{γ+δ}`.
    fn z_product(&self, g: &[i64], d: &[i64]) -> (UniPoly, Vec<i64>) {
        let mut p = UniPoly::one();
        let mut prefix = vec![0; self.degree()];
        let mut sum = Vec::with_capacity(self.degree());
        for i in 0..self.degree() {
            let f = self.pair_factor(i, g[i], d[i]);
            if f != UniPoly::one() {
                p = &p * &f.substitute_scaled(&self.q_power(&prefix));
            }
            prefix[i] = g[i] + d[i];
            sum.push(g[i] + d[i]);
        }
        (p, sum)
    }

    /// `∏_{j<n_i} h_i(q_i^j t)`, a polynomial in `t^{n_i}`.
    pub fn norm_of_h(&self, i: usize) -> UniPoly {
        let mut p = UniPoly::one();
        for j in 0..self.orders[i] as i64 {
            p = &p * &self.h[i].substitute_scaled(&self.qi_pow(i, j));
        }
        p
    }

    /// The relation polynomial `p_i(c)` of the center.
    pub fn center_relation(&self, i: usize) -> Result<UniPoly> {
        self.require_coprime()?;
        self.norm_of_h(i)
            .contract(self.n() as usize)
            .ok_or_else(|| Error::Assertion(format!("∏ h_{}(q^j t) is not a polynomial in t^{}", i + 1, self.n())))
    }
}

/// Element of a quantum GWA in left-coefficient normal form.
#[derive(Clone)]
pub struct GwaElement {
    alg: Arc<GwaAlgebra>,
    terms: BTreeMap<Vec<i64>, UniPoly>,
}

impl PartialEq for GwaElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl GwaElement {
    pub fn zero(alg: &Arc<GwaAlgebra>) -> Self {
        GwaElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<GwaAlgebra>) -> Self {
        Self::term(alg, &vec![0; alg.degree()], UniPoly::one())
    }

    /// `u(t) z^γ`
    pub fn term(alg: &Arc<GwaAlgebra>, gamma: &[i64], u: UniPoly) -> Self {
        let mut e = Self::zero(alg);
        e.push(gamma.to_vec(), u);
        e
    }

    pub fn poly(alg: &Arc<GwaAlgebra>, u: UniPoly) -> Self {
        Self::term(alg, &vec![0; alg.degree()], u)
    }

    pub fn t(alg: &Arc<GwaAlgebra>) -> Self {
        Self::poly(alg, UniPoly::var())
    }

    pub fn x(alg: &Arc<GwaAlgebra>, i: usize) -> Self {
        let mut g = vec![0; alg.degree()];
        g[i] = 1;
        Self::term(alg, &g, UniPoly::one())
    }

    pub fn y(alg: &Arc<GwaAlgebra>, i: usize) -> Self {
        let mut g = vec![0; alg.degree()];
        g[i] = -1;
        Self::term(alg, &g, UniPoly::one())
    }

    /// `z^γ t^j` as a product.
    pub fn z_t(alg: &Arc<GwaAlgebra>, gamma: &[i64], j: usize) -> Self {
        let c = alg.q_power(gamma).pow(j as i64).expect("roots of unity are invertible");
        Self::term(alg, gamma, UniPoly::monomial(c, j))
    }

    fn push(&mut self, gamma: Vec<i64>, u: UniPoly) {
        if u.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&gamma) {
            Some(old) => &old + &u,
            None => u,
        };
        if !sum.is_zero() {
            self.terms.insert(gamma, sum);
        }
    }

    pub fn algebra(&self) -> &Arc<GwaAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &UniPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, u) in &other.terms {
            out.push(g.clone(), u.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn neg(&self) -> Self {
        GwaElement { alg: self.alg.clone(), terms: self.terms.iter().map(|(g, u)| (g.clone(), -u)).collect() }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(&self.alg);
        for (g, u) in &self.terms {
            out.push(g.clone(), u.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let alg = &self.alg;
        let mut out = Self::zero(alg);
        for (g, u) in &self.terms {
            let shift = alg.q_power(g);
            for (d, v) in &other.terms {
                let (p, sum) = alg.z_product(g, d);
                let coeff = &(u * &v.substitute_scaled(&shift)) * &p;
                out.push(sum, coeff);
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

    /// Total `ℤ^m`-degree when the element is homogeneous.
    pub fn degree(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        it.all(|g| g == first).then(|| first.clone())
    }

    /// Centrality by the lattice rule: `n_i | γ_i` and only powers of `t^n`.
    pub fn is_central(&self) -> bool {
        let n = self.alg.n() as usize;
        self.terms.iter().all(|(g, u)| g.iter().zip(&self.alg.orders).all(|(k, &ni)| k % ni as i64 == 0) && u.in_powers_of(n))
    }

    /// Direct check against every generator `t, x_i, y_i`.
    pub fn commutes_with_generators(&self) -> bool {
        let alg = &self.alg;
        let mut gens = vec![Self::t(alg)];
        for i in 0..alg.degree() {
            gens.push(Self::x(alg, i));
            gens.push(Self::y(alg, i));
        }
        gens.iter().all(|g| self.mul_unchecked(g) == g.mul_unchecked(self))
    }

    /// Regular trace over the center: `n²·u` on central graded pieces, zero elsewhere.
    pub fn trace(&self) -> Self {
        let alg = &self.alg;
        let n = alg.n() as usize;
        let n2 = CycScalar::from_int((n * n) as i64);
        let mut out = Self::zero(alg);
        for (g, u) in &self.terms {
            if g.iter().zip(&alg.orders).all(|(k, &ni)| k % ni as i64 == 0) {
                let kept: Vec<CycScalar> = u.coeffs().iter().enumerate().map(|(j, c)| if j % n == 0 { c * &n2 } else { CycScalar::zero() }).collect();
                out.push(g.clone(), UniPoly::from_coeffs(kept));
            }
        }
        out
    }

    /// Every coefficient polynomial is divisible by `t^k`.
    pub fn divisible_by_t_power(&self, k: usize) -> bool {
        self.terms.values().all(|u| u.valuation().is_some_and(|v| v >= k))
    }

    /// Image of a polynomial in `a_i, b_i, c` (nonnegative exponents).
    pub fn from_center(alg: &Arc<GwaAlgebra>, p: &LPoly) -> Result<Self> {
        let m = alg.degree();
        let mut out = Self::zero(alg);
        for (e, c) in p.terms() {
            if e.iter().any(|&k| k < 0) || e.len() > 2 * m + 1 {
                return Err(Error::InvalidInput("central polynomial must have nonnegative exponents in a_i, b_i, c".into()));
            }
            let mut gamma = vec![0; m];
            let mut elem = Self::poly(alg, UniPoly::monomial(c.clone(), (LPoly::exponent(e, 2 * m) * alg.n() as i64) as usize));
            for i in 0..m {
                let ni = alg.orders[i] as i64;
                for (idx, sign) in [(i, 1), (m + i, -1)] {
                    let k = LPoly::exponent(e, idx);
                    if k > 0 {
                        gamma[i] = sign * k * ni;
                        elem = elem.mul_unchecked(&Self::term(alg, &gamma, UniPoly::one()));
                        gamma[i] = 0;
                    }
                }
            }
            out = out.add_unchecked(&elem);
        }
        Ok(out)
    }

    fn z_string(&self, g: &[i64]) -> String {
        let parts: Vec<String> = g
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| {
                let base = if k > 0 { self.alg.x_name(i) } else { self.alg.y_name(i) };
                if k.abs() == 1 {
                    base
                } else {
                    format!("{}^{}", base, k.abs())
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (g, u) in &self.terms {
            let z = self.z_string(g);
            let coeff = u.display("t");
            let compound = u.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || coeff[1..].contains(" + ") || coeff[1..].contains(" - ");
            parts.push(match (z.is_empty(), compound) {
                (true, _) => coeff,
                (false, true) => format!("({})*{}", coeff, z),
                (false, false) if coeff == "1" => z,
                (false, false) if coeff == "-1" => format!("-{}", z),
                (false, false) => format!("{}*{}", coeff, z),
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl CommRing for GwaElement {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add_unchecked(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn zero_like(&self) -> Self {
        Self::zero(&self.alg)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.alg)
    }
}

/// `Z = k[a_i, b_i, c]/(a_i b_i − p_i(c))` with generators embedded in `W`.
pub struct CenterPresentation {
    pub ring: Arc<PresentedCommRing>,
    pub a: Vec<GwaElement>,
    pub b: Vec<GwaElement>,
    pub c: GwaElement,
    pub relations: Vec<UniPoly>,
}

/// Builds the center and checks `a_i b_i = p_i(c)` inside `W`.
pub fn center_presentation(alg: &Arc<GwaAlgebra>) -> Result<CenterPresentation> {
    alg.require_coprime()?;
    let m = alg.degree();
    let n = alg.n() as usize;
    let names = alg.center_names();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut rules = Vec::new();
    let mut relations = Vec::new();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    let c = GwaElement::poly(alg, UniPoly::monomial(CycScalar::one(), n));
    for i in 0..m {
        let p = alg.center_relation(i)?;
        let ai = GwaElement::x(alg, i).pow(alg.orders[i]);
        let bi = GwaElement::y(alg, i).pow(alg.orders[i]);
        let lhs = ai.mul_unchecked(&bi);
        let rhs = GwaElement::poly(alg, p.expand(n));
        if lhs != rhs {
            return Err(Error::Assertion(format!("center relation fails in W: {} ≠ {}", lhs, rhs)));
        }
        rules.push(Rule { left: (i, m + i), rhs: LPoly::from_unipoly(&p, 2 * m) });
        relations.push(p);
        a.push(ai);
        b.push(bi);
    }
    let ring = PresentedCommRing::new(&format!("Z({})", alg.name), &name_refs, rules, None)?;
    Ok(CenterPresentation { ring, a, b, c, relations })
}

/// Sign pattern of a chart: `true` inverts `a_i`, `false` inverts `b_i`.
pub type Pattern = Vec<bool>;

pub fn all_patterns(m: usize) -> Vec<Pattern> {
    (0..1u32 << m).map(|mask| (0..m).map(|i| mask & (1 << i) == 0).collect()).collect()
}

/// Variable names of the chart ring `k[V_i^{±1}, c]`, `V_i ∈ {a_i, b_i}`.
pub fn chart_names(alg: &GwaAlgebra, pattern: &[bool]) -> Vec<String> {
    let mut v: Vec<String> = pattern.iter().enumerate().map(|(i, &a)| alg.indexed(if a { "a" } else { "b" }, i)).collect();
    v.push("c".into());
    v
}

pub fn chart_label(alg: &GwaAlgebra, pattern: &[bool]) -> String {
    let names = chart_names(alg, pattern);
    format!("{} ≠ 0", names[..pattern.len()].join("*"))
}

/// Image of a central element in the chart ring.
pub fn central_to_chart(f: &GwaElement, pattern: &[bool]) -> Result<LPoly> {
    let alg = &f.alg;
    let m = alg.degree();
    let n = alg.n() as usize;
    let mut out = LPoly::zero();
    for (g, u) in &f.terms {
        let cu = u.contract(n).ok_or_else(|| Error::Assertion(format!("{} is not central", f)))?;
        let mut term = LPoly::from_unipoly(&cu, m);
        for i in 0..m {
            let ni = alg.orders[i] as i64;
            if g[i] % ni != 0 {
                return Err(Error::Assertion(format!("{} is not central", f)));
            }
            let k = g[i] / ni;
            let along = if pattern[i] { k } else { -k };
            let mut e = vec![0; m + 1];
            if along >= 0 {
                e[i] = along;
                term = &term * &LPoly::monomial(&e, CycScalar::one());
            } else {
                e[i] = along;
                let p = LPoly::from_unipoly(&alg.center_relation(i)?, m);
                term = &(&term * &p.pow((-along) as u32)) * &LPoly::monomial(&e, CycScalar::one());
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Chart basis `Z^α t^j`, `Z_i = x_i` or `y_i` by the pattern, `0 ≤ |α_i| < n_i`, `j < n`.
pub fn chart_basis(alg: &GwaAlgebra, pattern: &[bool]) -> Vec<(Vec<i64>, usize)> {
    let n = alg.n() as usize;
    let mut alphas: Vec<Vec<i64>> = vec![Vec::new()];
    for (i, &a) in pattern.iter().enumerate() {
        let s = if a { 1 } else { -1 };
        alphas = alphas.into_iter().flat_map(|p| (0..alg.orders[i] as i64).map(move |r| [p.clone(), vec![s * r]].concat())).collect();
    }
    alphas.into_iter().flat_map(|al| (0..n).map(move |j| (al.clone(), j))).collect()
}

/// Coefficients `C_b` in the chart ring with `f = Σ C_b · b` over the chart basis.
pub fn express_in_chart(f: &GwaElement, pattern: &[bool]) -> Result<Vec<LPoly>> {
    let alg = &f.alg;
    let m = alg.degree();
    let n = alg.n() as usize;
    let basis = chart_basis(alg, pattern);
    let index: BTreeMap<(Vec<i64>, usize), usize> = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    let mut out = vec![LPoly::zero(); basis.len()];
    for (g, u) in &f.terms {
        let mut central = LPoly::one();
        let mut left = u.clone();
        let mut prefix = vec![0; m];
        let mut r = vec![0; m];
        for i in 0..m {
            let ni = alg.orders[i] as i64;
            let along = if pattern[i] { g[i] } else { -g[i] };
            let mut e = vec![0; m + 1];
            let (poly, ri) = if along >= 0 {
                e[i] = along.div_euclid(ni);
                (UniPoly::one(), along.rem_euclid(ni))
            } else {
                let c = -along;
                let s = Integer::div_ceil(&c, &ni);
                e[i] = -s;
                // Z_i^{-c} = V_i^{-s} (Z_i^{-c} Z_i^{c}) Z_i^{sn_i - c}
                let sign = if pattern[i] { 1 } else { -1 };
                (alg.pair_factor(i, -sign * c, sign * c), s * ni - c)
            };
            central = &central * &LPoly::monomial(&e, CycScalar::one());
            left = &left * &poly.substitute_scaled(&alg.q_power(&prefix));
            let zi = if pattern[i] { ri } else { -ri };
            prefix[i] = zi;
            r[i] = zi;
        }
        // U(t) Z^r = Z^r U(ρ⁻¹ t)
        let rho_inv = alg.q_power(&r).inv()?;
        let right = left.substitute_scaled(&rho_inv);
        for (j, c) in right.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; m + 1];
            e[m] = (j / n) as i64;
            let k = index[&(r.clone(), j % n)];
            out[k] = &out[k] + &(&central * &LPoly::monomial(&e, c.clone()));
        }
    }
    Ok(out)
}

/// Image in `W` of a chart-ring polynomial with nonnegative exponents.
pub fn chart_to_element(alg: &Arc<GwaAlgebra>, pattern: &[bool], p: &LPoly) -> Result<GwaElement> {
    let m = alg.degree();
    let mut z = LPoly::zero();
    for (e, c) in p.terms() {
        let mut ze = vec![0; 2 * m + 1];
        for i in 0..m {
            let k = LPoly::exponent(e, i);
            if k < 0 {
                return Err(Error::InvalidInput("chart polynomial has a negative exponent".into()));
            }
            ze[if pattern[i] { i } else { m + i }] = k;
        }
        ze[2 * m] = LPoly::exponent(e, m);
        z.add_term(ze, c.clone());
    }
    GwaElement::from_center(alg, &z)
}

/// The chart basis element `Z^α t^j` as an element of `W`.
pub fn basis_element(alg: &Arc<GwaAlgebra>, b: &(Vec<i64>, usize)) -> GwaElement {
    GwaElement::z_t(alg, &b.0, b.1)
}

/// Rebuilds `f` from chart coefficients after clearing denominators.
pub fn verify_chart_expression(f: &GwaElement, pattern: &[bool], coeffs: &[LPoly]) -> Result<bool> {
    let alg = &f.alg;
    let m = alg.degree();
    let basis = chart_basis(alg, pattern);
    let mut clear = vec![0; m + 1];
    for c in coeffs {
        for (i, k) in clear.iter_mut().enumerate().take(m) {
            *k = (*k).max(-c.min_exponent(i));
        }
    }
    let d = LPoly::monomial(&clear, CycScalar::one());
    let lhs = chart_to_element(alg, pattern, &d)?.mul_unchecked(f);
    let mut rhs = GwaElement::zero(alg);
    for (c, b) in coeffs.iter().zip(&basis) {
        if !c.is_zero() {
            rhs = rhs.add_unchecked(&chart_to_element(alg, pattern, &(&d * c))?.mul_unchecked(&basis_element(alg, b)));
        }
    }
    Ok(lhs == rhs)
}

/// `tr(b_k b_l)` on the chart basis, in the chart ring.
pub fn chart_trace_matrix(alg: &Arc<GwaAlgebra>, pattern: &[bool]) -> Result<Vec<Vec<LPoly>>> {
    let basis: Vec<GwaElement> = chart_basis(alg, pattern).iter().map(|b| basis_element(alg, b)).collect();
    basis.iter().map(|u| basis.iter().map(|v| central_to_chart(&u.mul_unchecked(v).trace(), pattern)).collect()).collect()
}

/// Trace of left multiplication by `f` on the chart basis.
pub fn slow_trace(f: &GwaElement, pattern: &[bool]) -> Result<LPoly> {
    let alg = &f.alg;
    let mut tr = LPoly::zero();
    for (k, b) in chart_basis(alg, pattern).iter().enumerate() {
        let col = express_in_chart(&f.mul_unchecked(&basis_element(alg, b)), pattern)?;
        tr = &tr + &col[k];
    }
    Ok(tr)
}

/// Local discriminant on one chart: `λ·c^{s}·∏ V_i^{e_i}`.
#[derive(Clone, Debug)]
pub struct GwaChart {
    pub pattern: Pattern,
    pub names: Vec<String>,
    pub determinant: LPoly,
    pub unit: CycScalar,
    pub v_exponents: Vec<i64>,
    pub c_exponent: i64,
    pub basis_size: usize,
}

impl GwaChart {
    pub fn display(&self) -> String {
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        self.determinant.display(&names)
    }
}

pub fn local_discriminant(alg: &Arc<GwaAlgebra>, pattern: &[bool]) -> Result<GwaChart> {
    alg.require_coprime()?;
    let m = alg.degree();
    let basis = chart_basis(alg, pattern);
    // freeness: each generator of W is recovered from its chart coefficients
    let mut gens = vec![GwaElement::t(alg)];
    for i in 0..m {
        gens.push(GwaElement::x(alg, i));
        gens.push(GwaElement::y(alg, i));
    }
    for g in &gens {
        let coeffs = express_in_chart(g, pattern)?;
        if !verify_chart_expression(g, pattern, &coeffs)? {
            return Err(Error::Assertion(format!("{} is not recovered on chart {}", g, chart_label(alg, pattern))));
        }
    }
    let t = chart_trace_matrix(alg, pattern)?;
    let det = disccore::determinant(&t, &LPoly::one());
    let (e, unit) = det
        .as_monomial()
        .map(|(e, c)| (e.to_vec(), c.clone()))
        .ok_or_else(|| Error::Assertion(format!("chart determinant {:?} is not a unit times a monomial", det)))?;
    Ok(GwaChart {
        pattern: pattern.to_vec(),
        names: chart_names(alg, pattern),
        v_exponents: (0..m).map(|i| LPoly::exponent(&e, i)).collect(),
        c_exponent: LPoly::exponent(&e, m),
        unit,
        determinant: det,
        basis_size: basis.len(),
    })
}

/// `t^{n²(n−1)}` glued from all `2^m` charts.
pub fn reflexive_discriminant(alg: &Arc<GwaAlgebra>) -> Result<(DiscriminantReport, Vec<GwaChart>)> {
    alg.require_coprime()?;
    let n = alg.n() as i64;
    let charts: Vec<GwaChart> = all_patterns(alg.degree()).par_iter().map(|p| local_discriminant(alg, p)).collect::<Result<_>>()?;
    let portable = n * (n - 1);
    for ch in &charts {
        if ch.c_exponent != portable {
            return Err(Error::Assertion(format!(
                "chart {} gives c^{} but c^{} was expected on every chart",
                chart_label(alg, &ch.pattern),
                ch.c_exponent,
                portable
            )));
        }
    }
    let value = Monomial::var_pow("t", (n * portable) as u64);
    let mut report = DiscriminantReport::new(&alg.name, alg.rank(), "csr", value, Method::ChartGlued);
    report.unit_normalization = format!("coefficient 1; t^{} = c^{} in the center; equal up to a unit of the center", n * portable, portable);
    for ch in &charts {
        report.charts.push(ChartEvidence {
            chart: chart_label(alg, &ch.pattern),
            inverted: ch.names[..alg.degree()].to_vec(),
            basis_size: ch.basis_size,
            free: true,
            local_discriminant: ch.display(),
            portable_part: format!("c^{}", ch.c_exponent),
        });
    }
    report.paper_justified_steps = vec![
        "charts cover the spectrum of the center away from the loci a_i = b_i = 0, which have codimension at least 2".into(),
        "a discriminant ideal agreeing with a principal ideal outside codimension 2 has that ideal as its reflexive hull".into(),
    ];
    Ok((report, charts))
}

/// Generating set `{z^γ t^j : |γ_i| < n_i, 0 ≤ j < n}`.
pub fn generating_set(alg: &GwaAlgebra) -> Vec<(Vec<i64>, usize)> {
    let n = alg.n() as usize;
    let mut gammas: Vec<Vec<i64>> = vec![Vec::new()];
    for &ni in &alg.orders {
        let ni = ni as i64;
        let vals: Vec<i64> = (0..ni).chain((1..ni).map(|k| -k)).collect();
        gammas = gammas.into_iter().flat_map(|p| vals.iter().map(move |&v| [p.clone(), vec![v]].concat())).collect();
    }
    gammas.into_iter().flat_map(|g| (0..n).map(move |j| (g.clone(), j))).collect()
}

pub fn generator_label(alg: &Arc<GwaAlgebra>, g: &(Vec<i64>, usize)) -> String {
    let z = GwaElement::zero(alg).z_string(&g.0);
    let t = match g.1 {
        0 => String::new(),
        1 => "t".into(),
        j => format!("t^{}", j),
    };
    match (z.is_empty(), t.is_empty()) {
        (true, true) => "1".into(),
        (true, false) => t,
        (false, true) => z,
        (false, false) => format!("{}*{}", z, t),
    }
}

/// Traces of pairwise products of generating-set elements.
#[derive(Clone, Debug)]
pub struct TraceMatrix {
    pub generators: Vec<(Vec<i64>, usize)>,
    pub labels: Vec<String>,
    pub entries: Vec<Vec<GwaElement>>,
}

pub fn trace_matrix(alg: &Arc<GwaAlgebra>) -> Result<TraceMatrix> {
    trace_matrix_with(alg, GwaElement::trace)
}

/// Builds the trace matrix with the given trace map and asserts its sparsity:
/// a nonzero entry at `(z^γ t^j, z^δ t^{j'})` needs `n_i | γ_i + δ_i`, and
/// when no index pairs an `x` with a `y`, also `n | j + j'`.
pub fn trace_matrix_with(alg: &Arc<GwaAlgebra>, tr: impl Fn(&GwaElement) -> GwaElement + Sync) -> Result<TraceMatrix> {
    let gens = generating_set(alg);
    let elems: Vec<GwaElement> = gens.iter().map(|g| GwaElement::z_t(alg, &g.0, g.1)).collect();
    let entries: Vec<Vec<GwaElement>> = elems.par_iter().map(|u| elems.iter().map(|v| tr(&u.mul_unchecked(v))).collect()).collect();
    let labels: Vec<String> = gens.iter().map(|g| generator_label(alg, g)).collect();
    let n = alg.n() as usize;
    for (k, (g, j)) in gens.iter().enumerate() {
        for (l, (d, j2)) in gens.iter().enumerate() {
            if entries[k][l].is_zero() {
                continue;
            }
            let graded = (0..alg.degree()).all(|i| (g[i] + d[i]) % alg.orders[i] as i64 == 0);
            let crossing = (0..alg.degree()).any(|i| g[i] * d[i] < 0);
            if !graded || (!crossing && (j + j2) % n != 0) {
                return Err(Error::Assertion(format!(
                    "trace matrix entry ({}, {}) = {} breaks the sparsity pattern",
                    labels[k], labels[l], entries[k][l]
                )));
            }
        }
    }
    Ok(TraceMatrix { generators: gens, labels, entries })
}

/// Modified discriminant ideal on one chart, from coefficient rows over the chart basis.
#[derive(Clone, Debug)]
pub struct ChartMd {
    pub pattern: Pattern,
    pub var_names: Vec<String>,
    /// `det` of the chart trace matrix.
    pub basis_discriminant: LPoly,
    /// Coefficients of each generating-set element over the chart basis.
    pub rows: Vec<Vec<LPoly>>,
    /// `J`: maximal minors of the coefficient matrix, up to scalars. The ideal is `d_b·J·J`.
    pub minors: Vec<LPoly>,
    pub method: Method,
    /// First generator that is not a chart-ring multiple of a single basis element.
    pub quasi_basis_failure: Option<String>,
}

/// Largest number of block minors evaluated for one chart.
pub const BLOCK_MINOR_GUARD: u128 = 1_000_000;

/// `MD(W/Z)` on a chart through Cauchy–Binet.
///
/// The coefficient matrix is block diagonal by the residue of the degree,
/// each block of width `n`, so the maximal minors are products of block
/// minors. When every row has a single nonzero entry the generating set is a
/// quasi-basis and the minors are products of its coefficients.
pub fn md_chart(alg: &Arc<GwaAlgebra>, pattern: &[bool]) -> Result<ChartMd> {
    alg.require_coprime()?;
    let n = alg.n() as usize;
    let basis = chart_basis(alg, pattern);
    let gens = generating_set(alg);
    let rows: Vec<Vec<LPoly>> = gens.iter().map(|g| express_in_chart(&GwaElement::z_t(alg, &g.0, g.1), pattern)).collect::<Result<_>>()?;
    let mut quasi_basis_failure = None;
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, row) in rows.iter().enumerate() {
        let support: Vec<usize> = (0..row.len()).filter(|&c| !row[c].is_zero()).collect();
        let block = support[0] / n;
        if support.iter().any(|&c| c / n != block) {
            return Err(Error::Assertion(format!("row {} spans several degree blocks", generator_label(alg, &gens[k]))));
        }
        if support.len() > 1 && quasi_basis_failure.is_none() {
            quasi_basis_failure = Some(generator_label(alg, &gens[k]));
        }
        blocks.entry(block).or_default().push(k);
    }
    if blocks.len() * n != basis.len() {
        return Err(Error::Assertion("generating set misses a degree block of the chart basis".into()));
    }
    let work: u128 = blocks.values().map(|r| disccore::binomial(r.len(), n)).sum();
    if work > BLOCK_MINOR_GUARD {
        return Err(Error::Refused(format!("{} block minors exceed the limit of {}", work, BLOCK_MINOR_GUARD)));
    }
    let bound = blocks.values().try_fold(1u128, |acc, r| acc.checked_mul(disccore::binomial(r.len(), n))).unwrap_or(u128::MAX);
    if bound > BLOCK_MINOR_GUARD {
        return Err(Error::Refused(format!("up to {} products of block minors exceed the limit of {}", bound, BLOCK_MINOR_GUARD)));
    }
    let one = LPoly::one();
    let mut options = Vec::new();
    for (&block, rs) in &blocks {
        let cols: Vec<usize> = (block * n..block * n + n).collect();
        let minors: Vec<LPoly> = disccore::subsets(rs.len(), n)
            .par_iter()
            .map(|sub| {
                let m: Vec<Vec<LPoly>> = sub.iter().map(|&s| cols.iter().map(|&c| rows[rs[s]][c].clone()).collect()).collect();
                disccore::determinant(&m, &one)
            })
            .collect();
        let minors = disccore::dedup_up_to_scalar(minors);
        if minors.is_empty() {
            return Err(Error::Assertion(format!("degree block {} has no invertible minor", block)));
        }
        options.push(minors);
    }
    let products = options.iter().try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128)).unwrap_or(u128::MAX);
    if products > BLOCK_MINOR_GUARD {
        return Err(Error::Refused(format!("{} products of block minors exceed the limit of {}", products, BLOCK_MINOR_GUARD)));
    }
    let t = chart_trace_matrix(alg, pattern)?;
    Ok(ChartMd {
        pattern: pattern.to_vec(),
        var_names: chart_names(alg, pattern),
        basis_discriminant: disccore::determinant(&t, &one),
        rows,
        minors: disccore::choice_products(&options),
        method: if quasi_basis_failure.is_none() { Method::QuasiBasis } else { Method::SemiBasis },
        quasi_basis_failure,
    })
}

impl ChartMd {
    /// Generators `d_b·g·g'` of the ideal, one per pair of minors.
    pub fn generators(&self) -> Vec<LPoly> {
        disccore::pair_products(&self.minors, &self.minors, &self.basis_discriminant)
    }

    /// `gcd` over `k[c]` of the generators, when each is a chart unit times a polynomial in `c`.
    pub fn principal_part(&self) -> Result<UniPoly> {
        let m = self.pattern.len();
        let mut g = UniPoly::zero();
        for p in &self.minors {
            let cpart = c_part(p, m)?;
            g = UniPoly::gcd(&g, &cpart);
        }
        let db = c_part(&self.basis_discriminant, m)?;
        Ok((&db * &g.pow(2)).monic())
    }
}

/// Monic `gcd` over `k[c]` of chart generators, each a chart unit times a
/// polynomial in `c`; this generates the ideal they span on the chart.
pub fn chart_ideal_generator(gens: &[LPoly], m: usize) -> Result<UniPoly> {
    let mut g = UniPoly::zero();
    for p in gens {
        g = UniPoly::gcd(&g, &c_part(p, m)?);
    }
    Ok(g.monic())
}

/// Writes `p = V^e f(c)`, returning `f`.
fn c_part(p: &LPoly, m: usize) -> Result<UniPoly> {
    let groups = p.terms().map(|(e, _)| (0..m).map(|i| LPoly::exponent(e, i)).collect::<Vec<_>>()).collect::<std::collections::BTreeSet<_>>();
    if groups.len() != 1 {
        return Err(Error::Refused(format!("{:?} mixes several chart monomials", p)));
    }
    let e: Vec<i64> = groups.into_iter().next().expect("one group");
    let mut shift = e.iter().map(|k| -k).collect::<Vec<_>>();
    shift.push(0);
    p.shift(&shift).to_unipoly(m).ok_or_else(|| Error::Assertion("c-part has a negative power".into()))
}

/// Converts an `a`-chart polynomial into `W`, dividing negative powers of
/// `a_i` into `p_i(c)`. `None` when such a division is not exact, meaning
/// the element does not lie in the center.
pub fn a_chart_to_element(alg: &Arc<GwaAlgebra>, p: &LPoly) -> Result<Option<GwaElement>> {
    let m = alg.degree();
    let rel: Vec<UniPoly> = (0..m).map(|i| alg.center_relation(i)).collect::<Result<_>>()?;
    let mut groups: BTreeMap<Vec<i64>, LPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let key: Vec<i64> = (0..m).map(|i| LPoly::exponent(e, i)).collect();
        let mut ce = vec![0; m + 1];
        ce[m] = LPoly::exponent(e, m);
        groups.entry(key).or_default().add_term(ce, c.clone());
    }
    let mut out = GwaElement::zero(alg);
    for (e, f) in groups {
        let mut fc = f.to_unipoly(m).ok_or_else(|| Error::Assertion("negative power of c".into()))?;
        let mut z = vec![0; 2 * m + 1];
        for i in 0..m {
            if e[i] >= 0 {
                z[i] = e[i];
            } else {
                match fc.exact_div(&rel[i].pow((-e[i]) as u32))? {
                    Some(q) => fc = q,
                    None => return Ok(None),
                }
                z[m + i] = -e[i];
            }
        }
        let zpoly = &LPoly::monomial(&z, CycScalar::one()) * &LPoly::from_unipoly(&fc, 2 * m);
        out = out.add_unchecked(&GwaElement::from_center(alg, &zpoly)?);
    }
    Ok(Some(out))
}

/// Outcome of the modified discriminant computation across charts.
#[derive(Clone, Debug)]
pub struct GwaMdReport {
    pub charts: Vec<ChartMd>,
    /// Every `a`-chart generator lies in `t^{n²(n−1)} W`.
    pub divisible: bool,
    /// Each chart ideal equals `(c^{n(n−1)})` up to chart units.
    pub locally_principal: bool,
    pub method: Method,
    pub quasi_basis_failure: Option<String>,
}

/// Largest number of generators converted back to `W` for the divisibility test.
pub const DIVISIBILITY_SAMPLE: usize = 4096;

pub fn md_report(alg: &Arc<GwaAlgebra>) -> Result<GwaMdReport> {
    let n = alg.n() as usize;
    let charts: Vec<ChartMd> = all_patterns(alg.degree()).par_iter().map(|p| md_chart(alg, p)).collect::<Result<_>>()?;
    let expected = UniPoly::monomial(CycScalar::one(), n * (n - 1));
    let mut locally_principal = true;
    for ch in &charts {
        if ch.principal_part()? != expected {
            locally_principal = false;
        }
    }
    let a_chart = &charts[0];
    let k = n * n * (n - 1);
    let mut divisible = true;
    'outer: for (i, g) in a_chart.minors.iter().enumerate() {
        for h in &a_chart.minors[i..] {
            if i * a_chart.minors.len() > DIVISIBILITY_SAMPLE {
                break 'outer;
            }
            let gen = &(g * h) * &a_chart.basis_discriminant;
            match a_chart_to_element(alg, &gen)? {
                Some(w) if w.divisible_by_t_power(k) => {}
                _ => {
                    divisible = false;
                    break 'outer;
                }
            }
        }
    }
    let quasi_basis_failure = charts.iter().find_map(|c| c.quasi_basis_failure.clone());
    let method = if quasi_basis_failure.is_none() { Method::QuasiBasis } else { Method::SemiBasis };
    Ok(GwaMdReport { charts, divisible, locally_principal, method, quasi_basis_failure })
}

/// All `n² × n²` minors of the generating-set trace matrix, on the `a`-chart.
pub fn md_exhaustive(alg: &Arc<GwaAlgebra>) -> Result<IdealData<LPoly>> {
    alg.require_coprime()?;
    let pattern = vec![true; alg.degree()];
    let tm = trace_matrix(alg)?;
    let t: Vec<Vec<LPoly>> = tm.entries.iter().map(|r| r.iter().map(|e| central_to_chart(e, &pattern)).collect()).collect::<Result<_>>()?;
    let w = alg.rank() as usize;
    let minors = disccore::all_minors(&t, w, &LPoly::one())?;
    let names = chart_names(alg, &pattern);
    Ok(IdealData {
        ambient: format!("{} on chart {}", alg.name, chart_label(alg, &pattern)),
        generators: minors.into_iter().map(|m| m.value).collect(),
        method: Method::Exhaustive,
        localized_at: names[..alg.degree()].to_vec(),
    })
}

/// Quasi-basis data on the `a`-chart for the tensor product check.
pub fn quasi_basis_data(alg: &Arc<GwaAlgebra>) -> Result<QuasiBasisData> {
    let pattern = vec![true; alg.degree()];
    let md = md_chart(alg, &pattern)?;
    if let Some(g) = &md.quasi_basis_failure {
        return Err(Error::Refused(format!("{}: generator {} is not a multiple of one basis element", alg.name, g)));
    }
    let generators = md
        .rows
        .iter()
        .map(|r| {
            let k = r.iter().position(|c| !c.is_zero()).expect("nonzero row");
            (k, r[k].clone())
        })
        .collect();
    Ok(QuasiBasisData {
        name: alg.name.clone(),
        var_names: md.var_names.clone(),
        basis_trace: chart_trace_matrix(alg, &pattern)?,
        generators,
    })
}

/// Renders chart-ring polynomials with the chart's variable names.
pub fn show(p: &LPoly, names: &[String]) -> String {
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    p.display(&names)
}

/// `t^j` in `W` as the string used in reports.
pub fn t_power(k: usize) -> String {
    poly::monomial_string(&[k as i64], &["t"])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl(n: u32, h: &[i64]) -> Arc<GwaAlgebra> {
        GwaAlgebra::new("W", n, &[1], vec![UniPoly::from_ints(h)]).unwrap()
    }

    #[test]
    fn defining_relations() {
        let w = weyl(3, &[-1, 1]);
        let (x, y, t) = (GwaElement::x(&w, 0), GwaElement::y(&w, 0), GwaElement::t(&w));
        assert_eq!(x.mul(&y).unwrap(), GwaElement::poly(&w, UniPoly::from_ints(&[-1, 1])));
        let q_inv = w.q(0).inv().unwrap();
        let yx = GwaElement::poly(&w, UniPoly::from_coeffs(vec![CycScalar::from_int(-1), q_inv]));
        assert_eq!(y.mul(&x).unwrap(), yx);
        let xt = GwaElement::term(&w, &[1], UniPoly::monomial(w.q(0), 1));
        assert_eq!(x.mul(&t).unwrap(), xt);
    }

    #[test]
    fn center_of_degree_one() {
        let w = weyl(2, &[-1, 0, 1]);
        let z = center_presentation(&w).unwrap();
        assert_eq!(z.relations[0], UniPoly::from_ints(&[1, -2, 1]));
        let plane = weyl(3, &[0, 1]);
        let p = center_presentation(&plane).unwrap().relations[0].clone();
        assert_eq!(p, UniPoly::monomial(CycScalar::root(3, 3), 1));
    }

    #[test]
    fn traces() {
        let w = weyl(2, &[-1, 0, 1]);
        let x2t2 = GwaElement::term(&w, &[2], UniPoly::monomial(CycScalar::one(), 2));
        assert_eq!(x2t2.trace(), x2t2.scale(&CycScalar::from_int(4)));
        assert!(GwaElement::z_t(&w, &[1], 1).trace().is_zero());
        assert_eq!(GwaElement::one(&w).trace(), GwaElement::poly(&w, UniPoly::from_ints(&[4])));
    }

    #[test]
    fn chart_expression_round_trip() {
        let w = weyl(3, &[-1, 1]);
        for p in all_patterns(1) {
            for g in generating_set(&w) {
                let e = GwaElement::z_t(&w, &g.0, g.1);
                let c = express_in_chart(&e, &p).unwrap();
                assert!(verify_chart_expression(&e, &p, &c).unwrap());
            }
        }
    }
}
