//! Dense matrices over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::univariate::UniPoly;
use crate::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Rational::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Row echelon form by Gaussian elimination; returns the rank and the
    /// determinant sign/scale bookkeeping used by [`Self::determinant`].
    fn eliminate(&self) -> (RatMatrix, usize, Rational) {
        let mut m = self.clone();
        let mut rank = 0;
        let mut det = Rational::one();
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                det = Rational::zero();
                continue;
            };
            if piv != rank {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, rank * m.cols + j);
                }
                det = -det;
            }
            let p = m.get(rank, col).clone();
            det *= &p;
            let inv = p.recip();
            for r in rank + 1..m.rows {
                let f = m.get(r, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(rank, j) * &f;
                    if !v.is_zero() {
                        m.data[r * m.cols + j] -= v;
                    }
                }
            }
            rank += 1;
        }
        (m, rank, det)
    }

    /// Certified modular rank, with fraction-free (Bareiss) elimination on
    /// the integer-scaled rows as the fallback.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| scale_to_integers(self.row(i)).0).collect();
        if let Some(r) = crate::modular::rank(&a, self.cols) {
            return r;
        }
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(piv, rank);
            let (top, rest) = a.split_at_mut(rank + 1);
            let p = &top[rank];
            for row in rest.iter_mut() {
                let f = std::mem::take(&mut row[col]);
                for j in col + 1..self.cols {
                    let v = &row[j] * &p[col] - &f * &p[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = top[rank][col].clone();
            rank += 1;
        }
        rank
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        let (_, rank, det) = self.eliminate();
        Ok(if rank < self.rows { Rational::zero() } else { det })
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::SingularMatrix)?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).recip();
            for j in 0..n {
                a.data[col * n + j] *= &p;
                inv.data[col * n + j] *= &p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let va = a.get(col, j) * &f;
                    let vi = inv.get(col, j) * &f;
                    a.data[r * n + j] -= va;
                    inv.data[r * n + j] -= vi;
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// Integers `n_i` and a positive `d` with `v_i = n_i / d`, `d` the lcm of the denominators.
pub(crate) fn scale_to_integers(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut d = BigInt::one();
    for x in v {
        if !x.denom().is_one() {
            d = d.lcm(x.denom());
        }
    }
    let ints = v
        .iter()
        .map(|x| if x.denom() == &d { x.numer().clone() } else { x.numer() * (&d / x.denom()) })
        .collect();
    (ints, d)
}

/// `n_i / d` for every entry, reduced.
pub(crate) fn unscale(ints: Vec<BigInt>, d: &BigInt) -> Vec<Rational> {
    ints.into_iter()
        .map(|n| if n.is_zero() { Rational::zero() } else { Rational::new(n, d.clone()) })
        .collect()
}

/// Characteristic polynomial `det(tI − M)` by fraction-free Bareiss
/// elimination on the matrix of univariate polynomials.
pub fn charpoly_bareiss(m: &RatMatrix) -> Result<UniPoly> {
    if m.rows() != m.cols() {
        return Err(Error::InvalidArgument("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let mut a: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -m.get(i, j).clone();
                    if i == j {
                        UniPoly::new(vec![c, Rational::one()])
                    } else {
                        UniPoly::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = UniPoly::one();
    let mut negate = false;
    for i in 0..n - 1 {
        if a[i][i].is_zero() {
            match (i + 1..n).find(|&r| !a[r][i].is_zero()) {
                Some(r) => {
                    a.swap(i, r);
                    negate = !negate;
                }
                None => return Ok(UniPoly::zero()),
            }
        }
        for j in i + 1..n {
            for l in i + 1..n {
                let num = &(&a[j][l] * &a[i][i]) - &(&a[j][i] * &a[i][l]);
                let (q, r) = num.div_rem(&prev)?;
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[j][l] = q;
            }
        }
        prev = a[i][i].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Monic polynomial of degree `p.len()` whose roots have the given power
/// sums `p[k-1] = Σ λ^k`, by Newton's identities.
pub fn charpoly_from_power_sums(p: &[Rational]) -> UniPoly {
    let n = p.len();
    // e[k]: elementary symmetric functions
    let mut e = vec![Rational::one()];
    for k in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let t = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        e.push(acc / Rational::from_integer(BigInt::from(k)));
    }
    // t^n − e1 t^{n−1} + e2 t^{n−2} − …
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[n - k] = if k % 2 == 0 { ek } else { -ek };
    }
    UniPoly::new(coeffs)
}

/// Characteristic polynomial via traces of powers and Newton's identities.
pub fn charpoly_newton(m: &RatMatrix) -> Result<UniPoly> {
    if m.rows() != m.cols() {
        return Err(Error::InvalidArgument("characteristic polynomial of a non-square matrix".into()));
    }
    let mut sums = Vec::with_capacity(m.rows());
    let mut pw = m.clone();
    for k in 0..m.rows() {
        if k > 0 {
            pw = pw.mul(m);
        }
        sums.push(pw.trace());
    }
    Ok(charpoly_from_power_sums(&sums))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rank_det_inverse() {
        let m = RatMatrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.determinant().unwrap(), q(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(3));
        let s = RatMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.determinant().unwrap(), q(0));
        assert!(matches!(s.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn charpoly_routes_agree() {
        let m = RatMatrix::from_i64(&[vec![0, 2, 1], vec![1, 0, -1], vec![3, 1, 2]]);
        let a = charpoly_bareiss(&m).unwrap();
        let b = charpoly_newton(&m).unwrap();
        assert_eq!(a, b);
        // x² − 2 companion
        let c = RatMatrix::from_i64(&[vec![0, 2], vec![1, 0]]);
        assert_eq!(charpoly_bareiss(&c).unwrap(), UniPoly::from_i64(&[-2, 0, 1]));
    }
}
