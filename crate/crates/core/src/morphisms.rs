//! Algebra maps given by images of generators: relation checks, application,
//! discriminant invariance, the isomorphism criterion for degree-one GWAs,
//! and derivations.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::disccore::{CommRing, Monomial};
use crate::error::{Error, Result};
use crate::gwa::{GwaAlgebra, GwaElement};
use crate::poly::UniPoly;
use crate::scalars::CycScalar;
use crate::skewpoly::{SkewAlgebra, SkewElement};

/// Noncommutative polynomial in the generators: `Σ c · g_{w_1} ⋯ g_{w_k}`.
pub type Words = Vec<(CycScalar, Vec<usize>)>;

#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub words: Words,
}

/// Generators and defining relations of an algebra.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub algebra: String,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

/// Algebra elements that maps can be evaluated on.
pub trait Presented: CommRing + PartialEq + fmt::Display {
    fn scale_by(&self, c: &CycScalar) -> Self;
    /// The element as a combination of generator words.
    fn to_words(&self) -> Result<Words>;
}

impl Presented for GwaElement {
    fn scale_by(&self, c: &CycScalar) -> Self {
        self.scale(c)
    }

    fn to_words(&self) -> Result<Words> {
        let mut out = Vec::new();
        for (g, u) in self.terms() {
            let mut z = Vec::new();
            for (i, &k) in g.iter().enumerate() {
                let gen = if k > 0 { 1 + 2 * i } else { 2 + 2 * i };
                z.extend(std::iter::repeat_n(gen, k.unsigned_abs() as usize));
            }
            for (j, c) in u.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let mut w = vec![0; j];
                    w.extend(&z);
                    out.push((c.clone(), w));
                }
            }
        }
        Ok(out)
    }
}

impl Presented for SkewElement {
    fn scale_by(&self, c: &CycScalar) -> Self {
        self.scale(c)
    }

    fn to_words(&self) -> Result<Words> {
        let mut out = Vec::new();
        for (e, c) in self.terms() {
            let mut w = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k < 0 {
                    return Err(Error::InvalidInput(format!("{} has a negative exponent and is not in the algebra", self)));
                }
                w.extend(std::iter::repeat_n(i, k as usize));
            }
            out.push((c.clone(), w));
        }
        Ok(out)
    }
}

fn word_from_poly(p: &UniPoly, t: usize) -> Words {
    p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (c.clone(), vec![t; j])).collect()
}

fn neg_words(w: Words) -> Words {
    w.into_iter().map(|(c, w)| (-c, w)).collect()
}

/// Generators `t, x_1, y_1, …, x_m, y_m`.
pub fn gwa_presentation(alg: &GwaAlgebra) -> Presentation {
    let m = alg.degree();
    let mut generators = vec!["t".to_string()];
    for i in 0..m {
        generators.push(alg.x_name(i));
        generators.push(alg.y_name(i));
    }
    let one = CycScalar::one;
    let mut relations = Vec::new();
    for i in 0..m {
        let (x, y) = (1 + 2 * i, 2 + 2 * i);
        let (xn, yn) = (&generators[x], &generators[y]);
        let q = alg.q(i);
        let qs = if m == 1 { "q".to_string() } else { format!("q{}", i + 1) };
        relations.push(Relation { name: format!("{xn}t - {qs}t{xn}"), words: vec![(one(), vec![x, 0]), (-q.clone(), vec![0, x])] });
        relations.push(Relation {
            name: format!("{yn}t - {qs}^-1t{yn}"),
            words: vec![(one(), vec![y, 0]), (-q.inv().expect("root of unity"), vec![0, y])],
        });
        let mut xy = vec![(one(), vec![x, y])];
        xy.extend(neg_words(word_from_poly(alg.h(i), 0)));
        relations.push(Relation { name: format!("{xn}{yn} - h{}(t)", if m == 1 { String::new() } else { (i + 1).to_string() }), words: xy });
        let mut yx = vec![(one(), vec![y, x])];
        yx.extend(neg_words(word_from_poly(&alg.h(i).substitute_scaled(&q.inv().expect("root of unity")), 0)));
        relations.push(Relation { name: format!("{yn}{xn} - h(q^-1t)"), words: yx });
        for j in i + 1..m {
            for (a, b) in [(x, 1 + 2 * j), (x, 2 + 2 * j), (y, 1 + 2 * j), (y, 2 + 2 * j)] {
                relations.push(Relation {
                    name: format!("{}{} - {}{}", generators[a], generators[b], generators[b], generators[a]),
                    words: vec![(one(), vec![a, b]), (-one(), vec![b, a])],
                });
            }
        }
    }
    Presentation { algebra: alg.name().to_string(), generators, relations }
}

pub fn gwa_generators(alg: &Arc<GwaAlgebra>) -> Vec<GwaElement> {
    let mut v = vec![GwaElement::t(alg)];
    for i in 0..alg.degree() {
        v.push(GwaElement::x(alg, i));
        v.push(GwaElement::y(alg, i));
    }
    v
}

/// Generators `x_1, …, x_n`, relations `x_j x_i − p_ij x_i x_j`.
pub fn skew_presentation(alg: &SkewAlgebra) -> Presentation {
    let n = alg.nvars();
    let generators: Vec<String> = alg.var_names().iter().map(|s| s.to_string()).collect();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relations.push(Relation {
                name: format!("{}{} - p{}{}{}{}", generators[j], generators[i], i + 1, j + 1, generators[i], generators[j]),
                words: vec![(CycScalar::one(), vec![j, i]), (-alg.p(i, j), vec![i, j])],
            });
        }
    }
    Presentation { algebra: alg.name().to_string(), generators, relations }
}

pub fn skew_generators(alg: &Arc<SkewAlgebra>) -> Vec<SkewElement> {
    (0..alg.nvars()).map(|i| SkewElement::var(alg, i)).collect()
}

/// `Σ c · images[w_1] ⋯ images[w_k]`
pub fn evaluate<E: Presented>(words: &Words, images: &[E], one: &E) -> Result<E> {
    let mut acc = one.zero_like();
    for (c, w) in words {
        let mut term = one.clone();
        for &g in w {
            let img = images.get(g).ok_or_else(|| Error::InvalidInput(format!("word uses generator {} without an image", g)))?;
            term = term.ring_mul(img);
        }
        acc = acc.ring_add(&term.scale_by(c));
    }
    Ok(acc)
}

/// Result of a relation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub holds: bool,
    /// Name of the first relation that fails.
    pub witness: Option<String>,
    /// Its value in the target.
    pub residue: Option<String>,
}

/// A map that has passed the relation check.
#[derive(Clone, Debug)]
pub struct CheckedMorphism<E> {
    pub source: Presentation,
    pub images: Vec<E>,
}

fn require_images<E>(source: &Presentation, images: &[E]) -> Result<()> {
    if images.len() != source.generators.len() {
        return Err(Error::InvalidInput(format!("{} generators but {} images", source.generators.len(), images.len())));
    }
    Ok(())
}

/// Every defining relation of the source must vanish on the images.
pub fn check_morphism<E: Presented>(source: &Presentation, images: &[E]) -> Result<RelationCheck> {
    require_images(source, images)?;
    let one = images.first().ok_or_else(|| Error::InvalidInput("no generators".into()))?.one_like();
    for rel in &source.relations {
        let v = evaluate(&rel.words, images, &one)?;
        if !v.is_zero() {
            return Ok(RelationCheck { holds: false, witness: Some(rel.name.clone()), residue: Some(v.to_string()) });
        }
    }
    Ok(RelationCheck { holds: true, witness: None, residue: None })
}

impl<E: Presented> CheckedMorphism<E> {
    /// Checks the relations and wraps the map; refuses maps that break one.
    pub fn new(source: Presentation, images: Vec<E>) -> Result<Self> {
        let check = check_morphism(&source, &images)?;
        if let Some(w) = check.witness {
            return Err(Error::Refused(format!("images do not satisfy {}", w)));
        }
        Ok(CheckedMorphism { source, images })
    }

    pub fn apply<S: Presented>(&self, e: &S) -> Result<E> {
        evaluate(&e.to_words()?, &self.images, &self.images[0].one_like())
    }

    /// `self ∘ other` for endomorphisms of one algebra.
    pub fn compose(&self, other: &CheckedMorphism<E>) -> Result<CheckedMorphism<E>> {
        let images = other.images.iter().map(|g| self.apply(g)).collect::<Result<Vec<_>>>()?;
        CheckedMorphism::new(other.source.clone(), images)
    }
}

/// `λ` with `φ(d) = λ d`, if one exists.
pub fn invariance_scalar<E: Presented>(phi: &CheckedMorphism<E>, d: &E) -> Result<Option<CycScalar>> {
    let image = phi.apply(d)?;
    let words = d.to_words()?;
    let (c, w) = words.first().ok_or_else(|| Error::InvalidInput("discriminant is zero".into()))?;
    let Some((ci, _)) = image.to_words()?.into_iter().find(|(_, iw)| iw == w) else {
        return Ok(None);
    };
    let lambda = &ci / c;
    Ok((image == d.scale_by(&lambda)).then_some(lambda))
}

/// `t^k` for a GWA and `x^e` for a skew ring, from a report's discriminant.
pub fn gwa_discriminant_element(alg: &Arc<GwaAlgebra>, d: &Monomial) -> Result<GwaElement> {
    let k = d.exponent_of("t");
    if d.vars.iter().any(|(v, _)| v != "t") {
        return Err(Error::InvalidInput(format!("{} is not a power of t", d)));
    }
    Ok(GwaElement::poly(alg, UniPoly::monomial(CycScalar::one(), k as usize)))
}

pub fn skew_discriminant_element(alg: &Arc<SkewAlgebra>, d: &Monomial) -> Result<SkewElement> {
    let names = alg.var_names();
    if let Some((v, _)) = d.vars.iter().find(|(v, _)| !names.contains(&v.as_str())) {
        return Err(Error::InvalidInput(format!("{} is not a variable of {}", v, alg.name())));
    }
    let e: Vec<i64> = names.iter().map(|n| d.exponent_of(n) as i64).collect();
    Ok(SkewElement::monomial(alg, &e, CycScalar::one()))
}

/// `g = gcd{i − j : c_i c_j ≠ 0}`; `None` for a monomial.
pub fn support_gcd(h: &UniPoly) -> Option<u64> {
    let s = h.support();
    let top = *s.last()?;
    let g = s.iter().fold(0u64, |g, &i| g.gcd(&((top - i) as u64)));
    (g != 0).then_some(g)
}

/// Roots of unity in `Q(ζ_N)`: the `lcm(2, N)`-th roots, written over `ζ_N`.
pub fn field_roots_of_unity(order: u32) -> Vec<CycScalar> {
    let mut out: Vec<CycScalar> = Vec::new();
    for k in 0..order as i64 {
        for s in [1, -1] {
            let r = CycScalar::root(k, order).scale(&BigRational::from_integer(BigInt::from(s)));
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// `C_g ∩ Q(ζ_N)`; all roots of unity of the field when `h` is a monomial.
pub fn c_g(h: &UniPoly, order: u32) -> Vec<CycScalar> {
    let roots = field_roots_of_unity(order);
    match support_gcd(h) {
        None => roots,
        Some(g) => roots.into_iter().filter(|r| r.pow(g as i64).expect("unit").is_one()).collect(),
    }
}

/// Images of `η_{γ,μ}`: `t ↦ γt`, `x ↦ μx`, `y ↦ μ⁻¹γ^d y` (degree one).
pub fn eta(alg: &Arc<GwaAlgebra>, gamma: &CycScalar, mu: &CycScalar) -> Result<Vec<GwaElement>> {
    if alg.degree() != 1 {
        return Err(Error::InvalidInput("η is defined for degree-one GWAs".into()));
    }
    let d = alg.h(0).degree().expect("nonconstant h") as i64;
    let y_coeff = &mu.inv()? * &gamma.pow(d)?;
    Ok(vec![
        GwaElement::t(alg).scale(gamma),
        GwaElement::x(alg, 0).scale(mu),
        GwaElement::y(alg, 0).scale(&y_coeff),
    ])
}

/// Images of `Ω`: `t ↦ −t`, `x ↦ y`, `y ↦ x`.
pub fn omega(alg: &Arc<GwaAlgebra>) -> Result<Vec<GwaElement>> {
    if alg.degree() != 1 {
        return Err(Error::InvalidInput("Ω is defined for degree-one GWAs".into()));
    }
    Ok(vec![GwaElement::t(alg).scale(&CycScalar::from_int(-1)), GwaElement::y(alg, 0), GwaElement::x(alg, 0)])
}

/// Degree-`m` restriction: `φ(t) ∈ k[t]` and `φ(x_i), φ(y_i) ∈ W_i`.
pub fn restricts_to_factors(phi: &CheckedMorphism<GwaElement>) -> bool {
    let m = (phi.images.len() - 1) / 2;
    let inside = |e: &GwaElement, i: Option<usize>| e.terms().all(|(g, _)| g.iter().enumerate().all(|(j, &k)| k == 0 || Some(j) == i));
    inside(&phi.images[0], None) && (0..m).all(|i| inside(&phi.images[1 + 2 * i], Some(i)) && inside(&phi.images[2 + 2 * i], Some(i)))
}

/// Which relation between `q` and `q'` an isomorphism uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoBranch {
    /// `q' = q`: `h(γt) = μH(T)`.
    Same,
    /// `q' = q⁻¹`: `h(γt) = μH(q⁻¹T)`.
    Inverse,
}

impl fmt::Display for IsoBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoBranch::Same => "q' = q",
            IsoBranch::Inverse => "q' = q^-1",
        })
    }
}

#[derive(Clone, Debug)]
pub struct IsoSolution {
    pub branch: IsoBranch,
    pub gamma: CycScalar,
    pub mu: CycScalar,
    /// Images of `t, x, y` of an isomorphism built from the solution, checked against the relations.
    pub images: Vec<GwaElement>,
}

#[derive(Clone, Debug)]
pub struct IsoOutcome {
    pub solutions: Vec<IsoSolution>,
    /// The candidate set provably contains every solution in the field.
    pub complete: bool,
    pub note: String,
}

impl IsoOutcome {
    pub fn isomorphic(&self) -> bool {
        !self.solutions.is_empty()
    }
}

/// Rational `g`-th root, if any.
fn rational_root(r: &BigRational, g: u64) -> Option<BigRational> {
    let g32 = u32::try_from(g).ok()?;
    if r.is_negative() && g.is_multiple_of(2) {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let a = n.abs();
        let s = a.nth_root(g32);
        (s.pow(g32) == a).then(|| if n.is_negative() { -s } else { s })
    };
    Some(BigRational::new(root(r.numer())?, root(r.denom())?))
}

/// Solutions of `γ^g = ρ` among roots of unity and their rational scalings.
fn solve_power(rho: &CycScalar, g: u64, order: u32) -> (Vec<CycScalar>, bool) {
    let roots = field_roots_of_unity(order);
    let unit_roots: Vec<CycScalar> = roots.iter().filter(|r| r.pow(g as i64).expect("unit").is_one()).cloned().collect();
    let from_roots: Vec<CycScalar> = roots.iter().filter(|r| r.pow(g as i64).expect("unit") == *rho).cloned().collect();
    if rho.multiplicative_order().ok().flatten().is_some() {
        return (from_roots, true);
    }
    if let Some(r) = rho.as_rational() {
        if let Some(r0) = rational_root(r, g) {
            let base = CycScalar::from_rational(r0);
            return (unit_roots.iter().map(|w| w * &base).collect(), true);
        }
        // no rational root: exhaustive only when the field is Q
        return (Vec::new(), order <= 2);
    }
    (from_roots, false)
}

/// Isomorphism criterion for degree-one quantum GWAs.
///
/// `γ` is searched among roots of unity of the field and rational multiples
/// of them; `complete` records when that search provably covers every
/// solution in the field. Each solution is turned into explicit generator
/// images `W → W'` that are checked against the relations of `W`.
pub fn iso_criterion(w: &Arc<GwaAlgebra>, w2: &Arc<GwaAlgebra>) -> Result<IsoOutcome> {
    if w.degree() != 1 || w2.degree() != 1 {
        return Err(Error::InvalidInput("the isomorphism criterion is for degree-one GWAs".into()));
    }
    let (q, q2) = (w.q(0), w2.q(0));
    let qinv = q.inv()?;
    let mut branches = Vec::new();
    if q2 == q {
        branches.push(IsoBranch::Same);
    }
    if q2 == qinv {
        branches.push(IsoBranch::Inverse);
    }
    if branches.is_empty() {
        return Ok(IsoOutcome { solutions: Vec::new(), complete: true, note: "q' is neither q nor q^-1".into() });
    }
    let order = w.order().lcm(&w2.order());
    let h = w.h(0);
    let mut solutions = Vec::new();
    let mut complete = true;
    let source = gwa_presentation(w);
    for branch in branches {
        let target = match branch {
            IsoBranch::Same => w2.h(0).clone(),
            IsoBranch::Inverse => w2.h(0).substitute_scaled(&qinv),
        };
        if h.support() != target.support() {
            continue;
        }
        let d = h.degree().expect("nonconstant");
        let (cd, td) = (h.coeff(d), target.coeff(d));
        // γ^{d-i} = (c_i T_d)/(c_d T_i) for every i in the support
        let mut eqs: Vec<(u64, CycScalar)> = Vec::new();
        for i in h.support().into_iter().filter(|&i| i < d) {
            let r = &(&h.coeff(i) * &td) / &(&cd * &target.coeff(i));
            eqs.push(((d - i) as u64, r));
        }
        let gammas = if eqs.is_empty() {
            vec![CycScalar::one()]
        } else {
            let g = eqs.iter().fold(0u64, |g, (e, _)| g.gcd(e));
            // Bezout: γ^g = ∏ r_i^{u_i}
            let mut rho = CycScalar::one();
            let mut acc = 0i64;
            for (e, r) in &eqs {
                let ext = Integer::extended_gcd(&acc, &(*e as i64));
                let (a, b) = (ext.x, ext.y);
                rho = &rho.pow(a)? * &r.pow(b)?;
                acc = ext.gcd;
            }
            let consistent = eqs.iter().all(|(e, r)| rho.pow((*e / g) as i64).map(|v| v == *r).unwrap_or(false));
            if !consistent {
                continue;
            }
            let (cands, exact) = solve_power(&rho, g, order);
            complete &= exact;
            cands
        };
        for gamma in gammas {
            let mu = &(&cd * &gamma.pow(d as i64)?) / &td;
            if h.substitute_scaled(&gamma) != target.scale(&mu) {
                return Err(Error::Assertion(format!("γ = {} does not satisfy the coefficient equations", gamma)));
            }
            let images = match branch {
                IsoBranch::Same => vec![GwaElement::t(w2).scale(&gamma), GwaElement::x(w2, 0), GwaElement::y(w2, 0).scale(&mu)],
                IsoBranch::Inverse => {
                    // h(γ q² T) = μ H(qT) = μ·YX
                    let g2 = &gamma * &q.pow(2)?;
                    vec![GwaElement::t(w2).scale(&g2), GwaElement::y(w2, 0), GwaElement::x(w2, 0).scale(&mu)]
                }
            };
            let check = check_morphism(&source, &images)?;
            if !check.holds {
                return Err(Error::Assertion(format!("isomorphism for γ = {} breaks {}", gamma, check.witness.unwrap_or_default())));
            }
            solutions.push(IsoSolution { branch, gamma, mu, images });
        }
    }
    let note = if complete {
        "every solution in the field is listed".to_string()
    } else {
        "γ searched among roots of unity and rational scalings only".to_string()
    };
    Ok(IsoOutcome { solutions, complete, note })
}

/// Leibniz extension of generator values.
#[derive(Clone, Debug)]
pub struct Derivation<E> {
    pub source: Presentation,
    pub generators: Vec<E>,
    pub values: Vec<E>,
}

impl<E: Presented> Derivation<E> {
    pub fn new(source: Presentation, generators: Vec<E>, values: Vec<E>) -> Result<Self> {
        require_images(&source, &generators)?;
        require_images(&source, &values)?;
        Ok(Derivation { source, generators, values })
    }

    fn on_words(&self, words: &Words) -> E {
        let one = self.generators[0].one_like();
        let mut acc = one.zero_like();
        for (c, w) in words {
            for k in 0..w.len() {
                let mut term = one.clone();
                for (pos, &g) in w.iter().enumerate() {
                    term = term.ring_mul(if pos == k { &self.values[g] } else { &self.generators[g] });
                }
                acc = acc.ring_add(&term.scale_by(c));
            }
        }
        acc
    }

    /// `δ(e)` by the product rule.
    pub fn apply(&self, e: &E) -> Result<E> {
        Ok(self.on_words(&e.to_words()?))
    }

    /// The product rule kills every defining relation.
    pub fn check(&self) -> RelationCheck {
        for rel in &self.source.relations {
            let v = self.on_words(&rel.words);
            if !v.is_zero() {
                return RelationCheck { holds: false, witness: Some(rel.name.clone()), residue: Some(v.to_string()) };
            }
        }
        RelationCheck { holds: true, witness: None, residue: None }
    }
}

/// Summary of the graded-ansatz sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzSummary {
    pub checked: usize,
    pub passing: usize,
    pub in_family: usize,
    /// Passing assignments outside the known family.
    pub outside: Vec<String>,
}

/// Scalars tried for each of `α, β, γ`: roots of unity of the field times `1, 2, 1/2`.
pub fn ansatz_grid(order: u32) -> Vec<CycScalar> {
    let mut out = Vec::new();
    for r in field_roots_of_unity(order) {
        for s in [CycScalar::one(), CycScalar::from_int(2), CycScalar::from_ratio(1, 2)] {
            out.push(&r * &s);
        }
    }
    out
}

/// Tries every `t ↦ γt` with `x ↦ αx, y ↦ βy`, and the swapped
/// `x ↦ αy, y ↦ βx`, over the grid; each passing map must be some
/// `η_{γ,μ}` or, for `q = −1`, `η_{γ',μ}∘Ω`. This covers graded maps of
/// that shape only; it does not classify all automorphisms.
pub fn graded_ansatz_sweep(alg: &Arc<GwaAlgebra>) -> Result<AnsatzSummary> {
    if alg.degree() != 1 {
        return Err(Error::InvalidInput("the ansatz sweep is for degree-one GWAs".into()));
    }
    let grid = ansatz_grid(alg.order());
    let source = gwa_presentation(alg);
    let h = alg.h(0);
    let d = h.degree().expect("nonconstant") as i64;
    let q_is_minus_one = alg.q(0) == CycScalar::from_int(-1);
    let in_cg = |g: &CycScalar| support_gcd(h).is_none_or(|k| g.pow(k as i64).map(|v| v.is_one()).unwrap_or(false));
    let k = grid.len();
    let triples: Vec<(usize, usize, usize, bool)> = (0..k)
        .flat_map(|a| (0..k).flat_map(move |b| (0..k).flat_map(move |c| [(a, b, c, false), (a, b, c, true)])))
        .collect();
    let results: Vec<(bool, bool, String)> = triples
        .par_iter()
        .map(|&(a, b, c, swap)| {
            let (al, be, ga) = (&grid[a], &grid[b], &grid[c]);
            let (xi, yi) = if swap { (GwaElement::y(alg, 0), GwaElement::x(alg, 0)) } else { (GwaElement::x(alg, 0), GwaElement::y(alg, 0)) };
            let images = vec![GwaElement::t(alg).scale(ga), xi.scale(al), yi.scale(be)];
            let passes = check_morphism(&source, &images).map(|c| c.holds).unwrap_or(false);
            if !passes {
                return (false, false, String::new());
            }
            let ab = al * be;
            let member = if swap {
                let g2 = -ga;
                q_is_minus_one && in_cg(&g2) && ab == g2.pow(d).expect("unit")
            } else {
                in_cg(ga) && ab == ga.pow(d).expect("unit")
            };
            let label = format!("t ↦ ({})t, x ↦ ({}){}, y ↦ ({}){}", ga, al, if swap { "y" } else { "x" }, be, if swap { "x" } else { "y" });
            (true, member, label)
        })
        .collect();
    let passing = results.iter().filter(|r| r.0).count();
    let in_family = results.iter().filter(|r| r.0 && r.1).count();
    let outside = results.into_iter().filter(|r| r.0 && !r.1).map(|r| r.2).collect();
    Ok(AnsatzSummary { checked: triples.len(), passing, in_family, outside })
}

/// Helper for CLI inputs: `Some(k)` when `c` is an integer that fits.
pub fn small_int(c: &CycScalar) -> Option<i64> {
    let r = c.as_rational()?;
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}
