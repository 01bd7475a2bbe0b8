//! Exact rational and integer linear algebra on top of [`crate::matrix`]:
//! kernel bases, maximal minors and uniformity, integer lattice kernels,
//! mod-2 ranks, and strict-sign feasibility inside kernels.
//!
//! Strict inequalities are normalized to `>= 1`; every sign condition here is
//! homogeneous, so the normalization is lossless under cone scaling.

use itertools::Itertools;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::matrix::{Int, QMat, Rat, SignVec, ZMat};
use crate::simplex::Lp;
use crate::{GaleError, Result};

/// Basis of the kernel of a full-row-rank matrix, as columns.
///
/// A square full-rank input yields an `n x 0` matrix.
pub fn kernel_basis(m: &QMat) -> Result<QMat> {
    if m.rank() != m.rows() {
        return Err(GaleError::NotFullRank);
    }
    Ok(m.kernel())
}

/// All maximal minors, one per column subset of size `rows`, paired with the
/// (sorted) subset that produced them.
pub fn maximal_minors(m: &QMat) -> Result<Vec<(Vec<usize>, Rat)>> {
    if m.rows() > m.cols() {
        return Err(GaleError::RowsExceedCols);
    }
    let mut out = Vec::new();
    for subset in (0..m.cols()).combinations(m.rows()) {
        let d = m.select_cols(&subset).det();
        out.push((subset, d));
    }
    Ok(out)
}

/// True iff every maximal minor is nonzero.
pub fn is_uniform(m: &QMat) -> Result<bool> {
    Ok(maximal_minors(m)?.iter().all(|(_, d)| !d.is_zero()))
}

/// A basis of the saturated integer kernel of `a` (columns), i.e. the gcd of
/// the maximal minors of the result is 1.
pub fn z_gale_dual(a: &ZMat) -> Result<ZMat> {
    let q = a.to_qmat();
    if q.rank() != a.rows() {
        return Err(GaleError::NotFullRank);
    }
    Ok(a.integer_kernel())
}

/// Rank of the matrix reduced mod 2.
pub fn rank_mod2(m: &ZMat) -> usize {
    m.rank_mod2()
}

/// Gcd of all maximal minors of an integer matrix with `rows >= cols`.
pub fn minor_gcd(m: &ZMat) -> Int {
    let q = m.to_qmat().transpose();
    let mut g = Int::zero();
    for subset in (0..q.cols()).combinations(q.rows()) {
        let d = q.select_cols(&subset).det();
        debug_assert!(d.denom().is_one());
        g = g.gcd(d.numer());
    }
    g
}

/// A vector `v` in the kernel of `c` with `sign(v) = sigma` exactly: zeros
/// forced where `sigma` is 0, strict signs elsewhere. Returns an exact
/// witness when one exists.
pub fn sign_realizable(c: &QMat, sigma: &SignVec) -> Result<Option<Vec<Rat>>> {
    if sigma.len() != c.cols() {
        return Err(GaleError::Dimension(format!(
            "sign vector of length {} for {} columns",
            sigma.len(),
            c.cols()
        )));
    }
    let all: Vec<usize> = (0..c.cols()).collect();
    sign_realizable_restricted(c, sigma, &all)
}

/// As [`sign_realizable`], but the sign constraints are imposed only on the
/// coordinates in `support`; coordinates outside it are unconstrained.
///
/// The witness is required to be nonzero: when `sigma` vanishes on all of
/// `support`, this asks for a nonzero kernel vector vanishing there.
pub fn sign_realizable_restricted(
    c: &QMat,
    sigma: &SignVec,
    support: &[usize],
) -> Result<Option<Vec<Rat>>> {
    let n = c.cols();
    if sigma.len() != n {
        return Err(GaleError::Dimension(format!(
            "sign vector of length {} for {n} columns",
            sigma.len()
        )));
    }
    if support.iter().any(|&i| i >= n) {
        return Err(GaleError::Dimension("support index out of range".into()));
    }
    if support.iter().all(|&i| sigma.0[i] == 0) {
        // Nonzero kernel vector vanishing on the support.
        let mut rows = c.row_vecs();
        for &i in support {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            rows.push(e);
        }
        let k = QMat::from_rows(rows).kernel();
        if k.cols() == 0 {
            return Ok(None);
        }
        return Ok(Some(k.col(0)));
    }
    let mut lp = Lp::new(n);
    for i in 0..c.rows() {
        lp.eq(c.row(i), Rat::zero());
    }
    for &i in support {
        let mut e = vec![Rat::zero(); n];
        match sigma.0[i] {
            0 => {
                e[i] = Rat::one();
                lp.eq(e, Rat::zero());
            }
            s => {
                e[i] = if s > 0 { Rat::one() } else { -Rat::one() };
                lp.ge(e, Rat::one());
            }
        }
    }
    Ok(lp.feasible_point())
}

/// A strictly positive kernel vector of `c` (all entries >= 1 after scaling),
/// if one exists. This decides whether the origin lies in the open cone
/// spanned by the columns of `c`.
pub fn positive_kernel_vector(c: &QMat) -> Option<Vec<Rat>> {
    let n = c.cols();
    let mut lp = Lp::new(n);
    for i in 0..c.rows() {
        lp.eq(c.row(i), Rat::zero());
    }
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        lp.ge(e, Rat::one());
    }
    lp.feasible_point()
}

/// A direction `h` with `<r, h> > 0` for every row `r`, i.e. a witness that
/// the rows lie in a common open halfspace through the origin.
pub fn open_halfspace_witness(rows: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let dim = rows.first().map_or(0, |r| r.len());
    if dim == 0 {
        return None;
    }
    let mut lp = Lp::new(dim);
    for r in rows {
        lp.ge(r.clone(), Rat::one());
    }
    lp.feasible_point()
}

/// Nonnegative combination of `rays` equal to `target`, if one exists
/// (membership of `target` in the closed cone of the rays).
pub fn closed_cone_combination(rays: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let m = rays.len();
    let mut lp = Lp::new(m);
    for coord in 0..dim {
        let coeffs: Vec<Rat> = rays.iter().map(|r| r[coord].clone()).collect();
        lp.eq(coeffs, target[coord].clone());
    }
    for j in 0..m {
        let mut e = vec![Rat::zero(); m];
        e[j] = Rat::one();
        lp.ge(e, Rat::zero());
    }
    lp.feasible_point()
}

/// Strictly positive combination of `rays` landing on the ray through
/// `target` (membership of `target` in the open cone of the rays). Returns
/// the coefficients; the scale on `target` is dropped.
pub fn open_cone_combination(rays: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let m = rays.len();
    // Variables: m coefficients (>= 1) and the target scale s (>= 1).
    let mut lp = Lp::new(m + 1);
    for coord in 0..dim {
        let mut coeffs: Vec<Rat> = rays.iter().map(|r| r[coord].clone()).collect();
        coeffs.push(-target[coord].clone());
        lp.eq(coeffs, Rat::zero());
    }
    for j in 0..=m {
        let mut e = vec![Rat::zero(); m + 1];
        e[j] = Rat::one();
        lp.ge(e, Rat::one());
    }
    lp.feasible_point().map(|mut p| {
        p.truncate(m);
        p
    })
}

/// Membership of `q` in the convex hull of `points` (exact LP).
pub fn in_convex_hull(points: &[Vec<Rat>], q: &[Rat]) -> bool {
    let dim = q.len();
    let m = points.len();
    let mut lp = Lp::new(m);
    for coord in 0..dim {
        let coeffs: Vec<Rat> = points.iter().map(|p| p[coord].clone()).collect();
        lp.eq(coeffs, q[coord].clone());
    }
    lp.eq(vec![Rat::one(); m], Rat::one());
    for j in 0..m {
        let mut e = vec![Rat::zero(); m];
        e[j] = Rat::one();
        lp.ge(e, Rat::zero());
    }
    lp.feasible_point().is_some()
}
