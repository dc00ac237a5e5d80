//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! A [`CycScalar`] is a polynomial in `ζ_N` of degree `< φ(N)` with rational
//! coefficients, reduced modulo the cyclotomic polynomial `Φ_N`. Elements of
//! different orders can be mixed freely: both operands are embedded into
//! `Q(ζ_L)` with `L = lcm` of the two orders. Rationals live at order 1.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer coefficients of `Φ_N`, constant term first; leading coefficient 1.
pub fn cyclotomic_polynomial(order: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(order >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&order) {
        return p.clone();
    }
    // x^N - 1 divided by Φ_d for every proper divisor d of N.
    let n = order as usize;
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..order {
        if order.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = divide_monic(&num, &div);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(order, p.clone());
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "non-exact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(order: u32) -> usize {
    cyclotomic_polynomial(order).len() - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Element of `Q(ζ_N)` in canonical power-basis form.
#[derive(Clone)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycScalar { order: 1, coeffs: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `ζ_N^k`, with `k` reduced mod `N`.
    pub fn root(k: i64, order: u32) -> Self {
        assert!(order >= 1, "root order must be positive");
        let k = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::from_raw(order, raw)
    }

    /// Builds an element from power-basis coefficients of any length.
    pub fn from_raw(order: u32, raw: Vec<BigRational>) -> Self {
        let coeffs = reduce(order, raw);
        CycScalar { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses `self` inside `Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn embed(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.order), "cannot embed Q(ζ_{}) into Q(ζ_{})", self.order, target);
        let step = (target / self.order) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        Self::from_raw(target, raw)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = lcm(self.order, other.order);
        (self.embed(l), other.embed(l))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
            return CycScalar { order: self.order, coeffs };
        }
        // rationals embed without reduction
        if other.order == 1 {
            let mut coeffs = self.coeffs.clone();
            let z = BigRational::zero();
            coeffs[0] = f(&self.coeffs[0], &other.coeffs[0]);
            for c in coeffs.iter_mut().skip(1) {
                *c = f(c, &z);
            }
            return CycScalar { order: self.order, coeffs };
        }
        if self.order == 1 {
            let z = BigRational::zero();
            let mut coeffs: Vec<BigRational> = other.coeffs.iter().map(|c| f(&z, c)).collect();
            coeffs[0] = f(&self.coeffs[0], &other.coeffs[0]);
            return CycScalar { order: other.order, coeffs };
        }
        let (a, b) = self.aligned(other);
        a.zip_with(&b, f)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if self.order != other.order {
            let (a, b) = self.aligned(other);
            return a.mul_ref(&b);
        }
        let mut raw = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::from_raw(self.order, raw)
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycScalar::from_rational(r.recip()).embed(self.order));
        }
        // Solve M u = e_0 where M is multiplication by self in the power basis.
        let d = self.coeffs.len();
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; d];
        for j in 0..d {
            let mut basis = vec![BigRational::zero(); j + 1];
            basis[j] = BigRational::one();
            let col = self.mul_ref(&CycScalar::from_raw(self.order, basis));
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coeffs[i].clone();
            }
        }
        m[0][d] = BigRational::one();
        let sol = solve_square(m).ok_or(Error::DivisionByZero)?;
        Ok(CycScalar { order: self.order, coeffs: sol })
    }

    /// `self^k` for any integer `k` (negative powers invert).
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycScalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    /// Smallest `k ≥ 1` with `self^k = 1`, or `None` when `self` is not a root of unity.
    ///
    /// Roots of unity in `Q(ζ_N)` are `±ζ_N^j`, so their orders divide `lcm(2, N)`.
    pub fn multiplicative_order(&self) -> Result<Option<u32>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("multiplicative order of zero".into()));
        }
        let bound = lcm(2, self.order);
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Ok(Some(k));
            }
            acc = acc.mul_ref(self);
        }
        Ok(None)
    }

    /// All roots of unity in `Q(ζ_N)`: `±ζ_N^j`, deduplicated, in a fixed order.
    pub fn roots_of_unity(order: u32) -> Vec<CycScalar> {
        let mut out: Vec<CycScalar> = Vec::new();
        for sign in [1i64, -1] {
            for j in 0..order as i64 {
                let z = CycScalar::root(j, order).scale(&BigRational::from_integer(BigInt::from(sign)));
                if !out.contains(&z) {
                    out.push(z);
                }
            }
        }
        out
    }
}

/// Gaussian elimination on an augmented `d × (d+1)` matrix over `Q`.
fn solve_square(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let d = m.len();
    for col in 0..d {
        let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=d {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d].clone()).collect())
}

fn reduce(order: u32, mut raw: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    if raw.len() > deg {
        for k in (deg..raw.len()).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[k], BigRational::zero());
            for (j, &p) in phi.iter().enumerate().take(deg) {
                if p != 0 {
                    raw[k - deg + j] -= &c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
    }
    raw.resize(deg, BigRational::zero());
    raw
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

// Only the rational value is hashed: it is independent of the field an
// element is expressed in, so the hash agrees with `==` across orders.
impl std::hash::Hash for CycScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.as_rational().hash(state);
    }
}

impl Default for CycScalar {
    fn default() -> Self {
        CycScalar::zero()
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Renders as a polynomial in `z = ζ_N`, e.g. `-z^2 + 1/2`; rationals print plainly.
impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", k),
            };
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

impl Zero for CycScalar {
    fn zero() -> Self {
        CycScalar::zero()
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
}

impl One for CycScalar {
    fn one() -> Self {
        CycScalar::one()
    }
}

impl From<i64> for CycScalar {
    fn from(k: i64) -> Self {
        CycScalar::from_int(k)
    }
}

impl From<BigRational> for CycScalar {
    fn from(r: BigRational) -> Self {
        CycScalar::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a CycScalar> for &'a CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &'a CycScalar) -> CycScalar {
                let f: fn(&CycScalar, &CycScalar) -> CycScalar = $body;
                f(self, rhs)
            }
        }
        impl $trait<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &'a CycScalar) -> CycScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.zip_with(b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| a.zip_with(b, |x, y| x - y));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Div<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    /// Panics on division by zero; use [`CycScalar::inv`] for a fallible version.
    fn div(self, rhs: &CycScalar) -> CycScalar {
        self * &rhs.inv().expect("division by zero in Q(ζ_N)")
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

/// Convenience: `k` as a machine integer when the scalar is an integral rational.
pub fn as_small_int(s: &CycScalar) -> Option<i64> {
    let r = s.as_rational()?;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(9), 6);
    }

    #[test]
    fn embed_root_examples() {
        assert_eq!(CycScalar::root(0, 4), CycScalar::one());
        assert_eq!(CycScalar::root(2, 4), CycScalar::from_int(-1));
        assert_eq!(CycScalar::root(1, 3) + CycScalar::root(2, 3), CycScalar::from_int(-1));
        assert_eq!(CycScalar::root(-1, 5), CycScalar::root(4, 5));
    }

    #[test]
    fn field_op_examples() {
        for n in 1..=12u32 {
            let z = CycScalar::root(1, n);
            assert_eq!(z.inv().unwrap(), CycScalar::root(n as i64 - 1, n));
        }
        let m1 = CycScalar::from_int(-1);
        assert_eq!(&m1 * &m1, CycScalar::one());
        assert_eq!(CycScalar::root(1, 6).pow(6).unwrap(), CycScalar::one());
        assert!(matches!(CycScalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn multiplicative_orders() {
        assert_eq!(CycScalar::from_int(-1).multiplicative_order().unwrap(), Some(2));
        assert_eq!(CycScalar::root(2, 6).multiplicative_order().unwrap(), Some(3));
        assert_eq!(CycScalar::from_int(2).multiplicative_order().unwrap(), None);
        assert_eq!((-CycScalar::root(1, 3)).multiplicative_order().unwrap(), Some(6));
        assert!(CycScalar::zero().multiplicative_order().is_err());
    }

    #[test]
    fn mixed_orders_embed_into_lcm() {
        // ζ_4 · ζ_6 = ζ_12^{3+2}
        let p = CycScalar::root(1, 4) * CycScalar::root(1, 6);
        assert_eq!(p, CycScalar::root(5, 12));
        assert_eq!(CycScalar::root(2, 4), CycScalar::root(3, 6));
    }

    #[test]
    fn roots_of_unity_counts() {
        assert_eq!(CycScalar::roots_of_unity(1).len(), 2);
        assert_eq!(CycScalar::roots_of_unity(2).len(), 2);
        assert_eq!(CycScalar::roots_of_unity(3).len(), 6);
        assert_eq!(CycScalar::roots_of_unity(4).len(), 4);
        assert_eq!(CycScalar::roots_of_unity(6).len(), 6);
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycScalar::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(CycScalar::root(1, 3).to_string(), "z");
        assert_eq!((CycScalar::root(1, 5) * CycScalar::from_int(-2) + CycScalar::one()).to_string(), "-2*z + 1");
    }
}
