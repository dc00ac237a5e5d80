//! Integer matrices, Smith normal form, and the lattice of exponents of
//! central monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged integer matrix".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Determinant by fraction-free Bareiss elimination (exact over the integers).
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += f * v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += f * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// Result of [`smith_normal_form`]: `u · a · v = d`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)]).collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen with minimal absolute value; diagonal entries come out
/// non-negative with `d₁ | d₂ | …`.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d[(i, j)] != 0 && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = d[(t, t)];
            let mut dirty = false;
            for i in t + 1..m {
                let q = Integer::div_floor(&d[(i, t)], &p);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if d[(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&d[(t, j)], &p);
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if d[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| d[(i, j)] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        d.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                        continue;
                    }
                }
            }
            // move the new smallest entry of row/col t into the pivot
            let mut bi = (t, t);
            for i in t..m {
                if d[(i, t)] != 0 && d[(i, t)].abs() < d[bi].abs() {
                    bi = (i, t);
                }
            }
            for j in t..n {
                if d[(t, j)] != 0 && d[(t, j)].abs() < d[bi].abs() {
                    bi = (t, j);
                }
            }
            if bi.0 != t {
                d.swap_rows(t, bi.0);
                u.swap_rows(t, bi.0);
            } else if bi.1 != t {
                d.swap_cols(t, bi.1);
                v.swap_cols(t, bi.1);
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d, v }
}

/// Sublattice `L ⊆ Zⁿ` of exponent vectors whose monomials are central.
#[derive(Debug, Clone, Serialize)]
pub struct CentralLattice {
    n: usize,
    order: u32,
    exponents: IntMatrix,
    basis: IntMatrix,
    index: u64,
}

impl CentralLattice {
    pub fn rank(&self) -> usize {
        self.n
    }

    /// Rows span the lattice.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `[Zⁿ : L]`, which is the rank of the algebra over its center.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Class of `a` in `Zⁿ / L`, realised as `E·a mod N`.
    pub fn coset_key(&self, a: &[i64]) -> Vec<i64> {
        let n = self.order as i64;
        self.exponents.mul_vec(a).into_iter().map(|x| x.rem_euclid(n)).collect()
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        self.coset_key(a).iter().all(|&x| x == 0)
    }

    /// Smallest `k ≥ 1` with `k·e_i ∈ L`.
    pub fn axis_period(&self, i: usize) -> i64 {
        let mut e = vec![0i64; self.n];
        for k in 1..=self.order as i64 {
            e[i] = k;
            if self.contains(&e) {
                return k;
            }
        }
        unreachable!("N·e_i always lies in the central lattice")
    }

    /// Generator of the projection of `L` onto coordinate `i`.
    pub fn projection_gcd(&self, i: usize) -> i64 {
        (0..self.n).fold(0i64, |g, r| g.gcd(&self.basis[(r, i)]))
    }
}

/// The lattice `{a ∈ Zⁿ : E·a ≡ 0 mod N}`.
pub fn central_lattice(exponents: &IntMatrix, order: u32) -> Result<CentralLattice> {
    let n = exponents.rows();
    if exponents.cols() != n {
        return Err(Error::InvalidInput("exponent matrix must be square".into()));
    }
    if order == 0 {
        return Err(Error::InvalidInput("root order must be positive".into()));
    }
    let modn = order as i64;
    for i in 0..n {
        if exponents[(i, i)].rem_euclid(modn) != 0 {
            return Err(Error::InvalidInput(format!("diagonal exponent e_{0}{0} must vanish mod N", i + 1)));
        }
        for j in 0..n {
            if (exponents[(i, j)] + exponents[(j, i)]).rem_euclid(modn) != 0 {
                return Err(Error::InvalidInput(format!(
                    "exponent matrix is not antisymmetric mod {}: e_{}{} + e_{}{} ≠ 0",
                    order,
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    let e = IntMatrix::from_rows(&exponents.to_rows().into_iter().map(|r| r.into_iter().map(|x| x.rem_euclid(modn)).collect()).collect::<Vec<_>>())?;
    // U E V = D  ⇒  E a ≡ 0 (mod N)  ⇔  d_i c_i ≡ 0 where c = V⁻¹ a.
    let snf = smith_normal_form(&e);
    let mut cols = IntMatrix::zeros(n, n);
    for i in 0..n {
        let di = snf.d[(i, i)];
        let step = modn / di.gcd(&modn);
        for r in 0..n {
            cols[(r, i)] = snf.v[(r, i)] * step;
        }
    }
    let basis = cols.transpose();
    let index = basis.det().unsigned_abs();
    Ok(CentralLattice { n, order, exponents: e, basis, index })
}

/// One non-negative representative per coset of `Zⁿ / L`, drawn from `[0, N)ⁿ`.
///
/// Without a chart the lexicographically smallest vector of each coset is
/// returned. With `chart = Some(i)` each representative minimises its `i`-th
/// coordinate first, then lexicographic order. Output is sorted.
pub fn coset_representatives(lattice: &CentralLattice, chart: Option<usize>) -> Vec<Vec<i64>> {
    let n = lattice.n;
    let bound = lattice.order as i64;
    let mut best: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
    let mut a = vec![0i64; n];
    loop {
        let key = lattice.coset_key(&a);
        let better = match best.get(&key) {
            None => true,
            Some(cur) => match chart {
                Some(i) => a[i] < cur[i],
                None => false,
            },
        };
        if better {
            best.insert(key, a.clone());
        }
        // lexicographic odometer, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                let mut reps: Vec<Vec<i64>> = best.into_values().collect();
                reps.sort();
                return reps;
            }
            k -= 1;
            a[k] += 1;
            if a[k] < bound {
                break;
            }
            a[k] = 0;
        }
    }
}
