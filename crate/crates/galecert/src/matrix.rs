//! Dense exact matrices over the rationals and the integers.
//!
//! Everything here is arbitrary precision; no floating point. Sizes are desk
//! scale (a dozen rows/columns), so the algorithms are the simple exact ones:
//! fraction Gaussian elimination for rank/kernel/determinant work and a
//! column-style Hermite reduction for integer lattice kernels.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{GaleError, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Render a rational as `p` or `p/q`.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p` or `p/q` with optional sign and surrounding whitespace.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: Int = num
        .parse()
        .map_err(|_| GaleError::Parse(format!("bad rational {s:?}")))?;
    let d: Int = den
        .parse()
        .map_err(|_| GaleError::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(GaleError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Sign of a rational as -1, 0, or 1.
pub fn sgn(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// A sign vector with entries in {-1, 0, +1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVec(pub Vec<i8>);

impl SignVec {
    pub fn of(v: &[Rat]) -> Self {
        SignVec(v.iter().map(sgn).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        SignVec(self.0.iter().map(|s| -s).collect())
    }
}

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for QMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| rat_to_string(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length mismatch");
        QMat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row.iter().map(|&x| rat(x)));
        }
        QMat::new(r, c, data)
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        QMat::new(r, c, data)
    }

    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = QMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for i in 0..r {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn select_cols(&self, idx: &[usize]) -> QMat {
        let mut m = QMat::zero(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                *m.at_mut(i, jj) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> QMat {
        let mut m = QMat::zero(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                *m.at_mut(ii, j) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.rows, other.rows);
        let mut m = QMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *m.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        m
    }

    /// Reduced row echelon form; returns the reduced matrix and pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..m.cols {
            if r == m.rows {
                break;
            }
            let piv = (r..m.rows).find(|&i| !m.at(i, j).is_zero());
            let Some(piv) = piv else { continue };
            m.swap_rows(r, piv);
            let inv = m.at(r, j).recip();
            for jj in 0..m.cols {
                let v = m.at(r, jj) * &inv;
                *m.at_mut(r, jj) = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, j).is_zero() {
                    let factor = m.at(i, j).clone();
                    for jj in 0..m.cols {
                        let v = m.at(i, jj) - &factor * m.at(r, jj);
                        *m.at_mut(i, jj) = v;
                    }
                }
            }
            pivots.push(j);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis as columns of an n x nullity matrix.
    pub fn kernel(&self) -> QMat {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut cols = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(i, f).clone();
            }
            cols.push(v);
        }
        QMat::from_cols(cols)
    }

    /// Determinant of a square matrix by exact Gaussian elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for j in 0..n {
            let piv = (j..n).find(|&i| !m.at(i, j).is_zero());
            let Some(piv) = piv else { return Rat::zero() };
            if piv != j {
                m.swap_rows(j, piv);
                det = -det;
            }
            det *= m.at(j, j);
            let inv = m.at(j, j).recip();
            for i in (j + 1)..n {
                if m.at(i, j).is_zero() {
                    continue;
                }
                let factor = m.at(i, j) * &inv;
                for jj in j..n {
                    let v = m.at(i, jj) - &factor * m.at(j, jj);
                    *m.at_mut(i, jj) = v;
                }
            }
        }
        det
    }

    /// One particular solution of `self * x = rhs`, if consistent.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows);
        let aug = self.hstack(&QMat::from_cols(vec![rhs.to_vec()]));
        let (r, pivots) = aug.rref();
        // Inconsistent if the augmented column is a pivot.
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square full-rank matrix.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&QMat::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(r.select_cols(&idx))
    }

    pub fn to_zmat_if_integral(&self) -> Option<ZMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            if !x.denom().is_one() {
                return None;
            }
            data.push(x.numer().clone());
        }
        Some(ZMat::new(self.rows, self.cols, data))
    }

    /// Scale each column to a primitive integer vector (keeps signs).
    pub fn columns_primitive(&self) -> QMat {
        let cols = self
            .col_vecs()
            .into_iter()
            .map(|c| {
                primitive_integer_vec(&c)
                    .into_iter()
                    .map(Rat::from_integer)
                    .collect()
            })
            .collect();
        QMat::from_cols(cols)
    }
}

/// Scale a rational vector to a primitive integer vector with the same signs.
/// The zero vector maps to itself.
pub fn primitive_integer_vec(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Normalize an integer vector so its first nonzero entry is positive.
pub fn sign_normalize_vec(mut v: Vec<Int>) -> Vec<Int> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    v
}

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct ZMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl std::fmt::Debug for ZMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ZMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl ZMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Self {
        assert_eq!(data.len(), rows * cols);
        ZMat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        ZMat::new(rows, cols, vec![Int::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row.iter().map(|&x| Int::from(x)));
        }
        ZMat::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn to_qmat(&self) -> QMat {
        QMat::new(
            self.rows,
            self.cols,
            self.data.iter().cloned().map(Rat::from_integer).collect(),
        )
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn addmul_col(&mut self, dst: usize, src: usize, q: &Int) {
        // col_dst += q * col_src
        for i in 0..self.rows {
            let add = q * self.at(i, src);
            *self.at_mut(i, dst) += add;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    /// Basis of the saturated integer kernel `{ x in Z^n : self * x = 0 }`,
    /// as columns, computed by column Hermite-style reduction with a tracked
    /// unimodular transform.
    pub fn integer_kernel(&self) -> ZMat {
        let n = self.cols;
        let mut a = self.clone();
        let mut u = ZMat::identity(n);
        let mut pivot = 0usize;
        for r in 0..self.rows {
            loop {
                // Smallest nonzero |entry| in row r among columns pivot..
                let mut best: Option<(usize, Int)> = None;
                for j in pivot..n {
                    let v = a.at(r, j);
                    if v.is_zero() {
                        continue;
                    }
                    let abs = v.abs();
                    match &best {
                        Some((_, b)) if *b <= abs => {}
                        _ => best = Some((j, abs)),
                    }
                }
                let Some((jmin, _)) = best else { break };
                a.swap_cols(pivot, jmin);
                u.swap_cols(pivot, jmin);
                // Reduce the other columns by the pivot column.
                let mut any_left = false;
                for j in (pivot + 1)..n {
                    if a.at(r, j).is_zero() {
                        continue;
                    }
                    let q = -(a.at(r, j) / a.at(r, pivot));
                    if !q.is_zero() {
                        a.addmul_col(j, pivot, &q);
                        u.addmul_col(j, pivot, &q);
                    }
                    if !a.at(r, j).is_zero() {
                        any_left = true;
                    }
                }
                if !any_left {
                    if a.at(r, pivot).is_negative() {
                        a.negate_col(pivot);
                        u.negate_col(pivot);
                    }
                    pivot += 1;
                    break;
                }
            }
            if pivot == n {
                break;
            }
        }
        let idx: Vec<usize> = (pivot..n).collect();
        let mut out = ZMat::zero(n, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..n {
                *out.at_mut(i, jj) = u.at(i, j).clone();
            }
        }
        out
    }

    /// Rank over the two-element field.
    pub fn rank_mod2(&self) -> usize {
        let mut rows: Vec<Vec<bool>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).is_odd()).collect())
            .collect();
        let mut rank = 0;
        for j in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][j]) else {
                continue;
            };
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i][j] {
                    let pivot_row = rows[rank].clone();
                    for (x, p) in rows[i].iter_mut().zip(pivot_row.iter()) {
                        *x ^= p;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_kernel() {
        let m = QMat::from_i64(&[&[1, 1, 1], &[0, 1, 2]]);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        // The kernel line is spanned by (1, -2, 1).
        let v = k.col(0);
        let t = &v[0];
        assert!(!t.is_zero());
        assert_eq!(&v[1] / t, rat(-2));
        assert_eq!(&v[2] / t, rat(1));
    }

    #[test]
    fn det_and_inverse() {
        let m = QMat::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), rat(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(2));
        let sing = QMat::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.det(), rat(0));
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = QMat::from_i64(&[&[1, 1], &[0, 1], &[1, 2]]);
        let x = m.solve(&[rat(3), rat(1), rat(4)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert!(m.solve(&[rat(3), rat(1), rat(5)]).is_none());
    }

    #[test]
    fn integer_kernel_simple() {
        let a = ZMat::from_i64(&[&[1, 1, 1], &[0, 1, 2]]);
        let k = a.integer_kernel();
        assert_eq!(k.cols(), 1);
        let v: Vec<i64> = (0..3).map(|i| i64::try_from(k.at(i, 0)).unwrap()).collect();
        assert!(v == [1, -2, 1] || v == [-1, 2, -1]);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // Kernel of (2 4) over Z is spanned by (2, -1), not (4, -2).
        let a = ZMat::from_i64(&[&[2, 4]]);
        let k = a.integer_kernel();
        assert_eq!(k.cols(), 1);
        let v: Vec<i64> = (0..2).map(|i| i64::try_from(k.at(i, 0)).unwrap()).collect();
        assert!(v == [2, -1] || v == [-2, 1]);
    }

    #[test]
    fn rank_mod2_basics() {
        assert_eq!(ZMat::identity(3).rank_mod2(), 3);
        assert_eq!(ZMat::from_i64(&[&[2, 4], &[6, 8]]).rank_mod2(), 0);
        assert_eq!(ZMat::from_i64(&[&[1, 1], &[1, 1]]).rank_mod2(), 1);
    }

    #[test]
    fn primitive_vec() {
        let v = vec![ratio(2, 3), rat(-4), rat(0)];
        let p = primitive_integer_vec(&v);
        assert_eq!(p, vec![Int::from(1), Int::from(-6), Int::from(0)]);
    }

    #[test]
    fn rational_parsing_round_trip() {
        for s in ["3", "-7/2", "0", "22/7"] {
            let x = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&x), s);
        }
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("a").is_err());
    }
}
