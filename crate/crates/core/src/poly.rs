//! Commutative polynomial support: univariate polynomials over `Q(ζ_N)` and
//! sparse Laurent polynomials in several variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::CycScalar;

/// Writes `coef·mono` with the usual sign conventions; `mono` may be empty.
pub(crate) fn write_term(out: &mut String, coef: &CycScalar, mono: &str, first: bool) {
    let s = coef.to_string();
    let compound = s.contains(' ');
    let (neg, body) = if !compound && s.starts_with('-') { (true, s[1..].to_string()) } else { (false, s) };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let body = if compound && !mono.is_empty() { format!("({})", body) } else { body };
    if mono.is_empty() {
        out.push_str(&body);
    } else if body == "1" {
        out.push_str(mono);
    } else {
        out.push_str(&body);
        out.push('*');
        out.push_str(mono);
    }
}

/// Polynomial in one variable, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<CycScalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(CycScalar::one())
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·t^k`
    pub fn monomial(c: CycScalar, k: usize) -> Self {
        let mut v = vec![CycScalar::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn var() -> Self {
        Self::monomial(CycScalar::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<CycScalar>) -> Self {
        while coeffs.last().is_some_and(CycScalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&k| CycScalar::from_int(k)).collect())
    }

    pub fn coeffs(&self) -> &[CycScalar] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> CycScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&CycScalar> {
        self.coeffs.last()
    }

    /// Largest `k` with `t^k` dividing `self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exponents carrying nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&k| !self.coeffs[k].is_zero()).collect()
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// `p(λ t)`
    pub fn substitute_scaled(&self, lambda: &CycScalar) -> Self {
        let mut pow = CycScalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow = &pow * lambda;
        }
        Self::from_coeffs(out)
    }

    /// `t^k · p(t)`
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![CycScalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &CycScalar) -> CycScalar {
        let mut acc = CycScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Euclidean division; fails when dividing by zero.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![CycScalar::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let f = &r[k] * &dl;
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &(&f * c);
            }
            q[k - dd] = f;
        }
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn exact_div(&self, d: &UniPoly) -> Result<Option<UniPoly>> {
        let (q, r) = self.div_rem(d)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.monic()
    }

    /// True when every exponent in the support is a multiple of `n`.
    pub fn in_powers_of(&self, n: usize) -> bool {
        self.support().iter().all(|k| k % n == 0)
    }

    /// Rewrites `Σ c_k t^{nk}` as `Σ c_k c^k`; requires [`UniPoly::in_powers_of`].
    pub fn contract(&self, n: usize) -> Option<UniPoly> {
        if !self.in_powers_of(n) {
            return None;
        }
        Some(Self::from_coeffs(self.coeffs.iter().step_by(n).cloned().collect()))
    }

    /// `p(t^n)`
    pub fn expand(&self, n: usize) -> UniPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![CycScalar::zero(); (self.coeffs.len() - 1) * n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * n] = c.clone();
        }
        UniPoly { coeffs: v }
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, k),
            };
            write_term(&mut out, c, &mono, first);
            first = false;
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("t"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![CycScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += &(a * b);
                }
            }
        }
        UniPoly::from_coeffs(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Exponent vector with trailing zeros stripped, so that vectors of
/// different lengths compare as elements of `Z^∞`.
fn trim(mut e: Vec<i64>) -> Vec<i64> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

/// Sparse Laurent polynomial over `Q(ζ_N)` in variables `v_0, v_1, …`.
///
/// Exponent vectors are stored trimmed, which makes `0` and `1` available
/// without knowing the number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    terms: BTreeMap<Vec<i64>, CycScalar>,
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(CycScalar::one())
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::monomial(&[], c)
    }

    pub fn monomial(exp: &[i64], c: CycScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exp.to_vec()), c);
        }
        LPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(&e, CycScalar::one())
    }

    /// Embeds `p(v_i)`.
    pub fn from_unipoly(p: &UniPoly, i: usize) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; i + 1];
            e[i] = k as i64;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        let exp = trim(exp);
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient and exponent when `self` is a single term.
    pub fn as_monomial(&self) -> Option<(&[i64], &CycScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (e.as_slice(), c))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<CycScalar> {
        if self.is_zero() {
            return Some(CycScalar::zero());
        }
        match self.as_monomial() {
            Some(([], c)) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn exponent(e: &[i64], i: usize) -> i64 {
        e.get(i).copied().unwrap_or(0)
    }

    /// Smallest exponent of `v_i` over all terms (0 for the zero polynomial).
    pub fn min_exponent(&self, i: usize) -> i64 {
        self.terms.keys().map(|e| Self::exponent(e, i)).min().unwrap_or(0)
    }

    pub fn max_exponent(&self, i: usize) -> i64 {
        self.terms.keys().map(|e| Self::exponent(e, i)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LPoly { terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiplies by the monomial `v^exp`.
    pub fn shift(&self, exp: &[i64]) -> Self {
        LPoly { terms: self.terms.iter().map(|(e, c)| (add_exps(e, exp), c.clone())).collect() }
    }

    /// Renumbers variables: `v_i ↦ v_{i + offset}`.
    pub fn offset_vars(&self, offset: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = vec![0; offset];
                v.extend_from_slice(e);
                (trim(v), c.clone())
            })
            .collect();
        LPoly { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Collects terms by the exponent of `v_i`, returning each coefficient as
    /// a polynomial in the remaining variables (with `v_i` removed).
    pub fn group_by_var(&self, i: usize) -> BTreeMap<i64, LPoly> {
        let mut out: BTreeMap<i64, LPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = Self::exponent(e, i);
            let mut rest = e.clone();
            if i < rest.len() {
                rest[i] = 0;
            }
            out.entry(k).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Viewed as a polynomial in `v_i` alone; `None` if other variables occur
    /// or an exponent is negative.
    pub fn to_unipoly(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs: Vec<CycScalar> = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &x)| j != i && x != 0) {
                return None;
            }
            let k = Self::exponent(e, i);
            if k < 0 {
                return None;
            }
            let k = k as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, CycScalar::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    /// Leading coefficient in the term order (largest exponent vector).
    pub fn leading_coeff(&self) -> Option<&CycScalar> {
        self.terms.values().next_back()
    }

    /// Scales so the leading coefficient becomes 1.
    pub fn normalized(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn display(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut out, c, &monomial_string(e, names), k == 0);
        }
        out
    }
}

/// `x1^4*x2^4`-style rendering of an exponent vector (empty for the unit monomial).
pub fn monomial_string(e: &[i64], names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let name = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("v{}", i));
        parts.push(if k == 1 { name } else { format!("{}^{}", name, k) });
    }
    parts.join("*")
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(&[]))
    }
}

impl Add for &LPoly {
    type Output = LPoly;
    fn add(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LPoly {
    type Output = LPoly;
    fn sub(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &LPoly {
    type Output = LPoly;
    fn mul(self, rhs: &LPoly) -> LPoly {
        let mut out = LPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(add_exps(a, b), x * y);
            }
        }
        out
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}
