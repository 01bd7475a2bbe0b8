//! Gale dual pairs and the geometry they induce: the necessary condition on
//! the coefficient cone, normalization of the dual so the sliced cone is a
//! bounded polytope, the irredundant facet set, vertex and face-lattice
//! construction, and sign behavior of the Gale map along the boundary.
//!
//! Conventions: the dual of the coefficient matrix `C` is an `n x (k+1)`
//! matrix `D` whose column 0 is distinguished; its rows give affine forms
//! `p_i(y) = d_i0 + sum_j d_ij y_j` on `R^k`. The slice polytope is
//! `{ y : p_i(y) > 0 for all i }` together with its closure's face structure.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::linalg::{
    closed_cone_combination, kernel_basis, open_cone_combination, open_halfspace_witness,
    positive_kernel_vector,
};
use crate::matrix::{sgn, QMat, Rat};
use crate::simplex::Lp;
use crate::{GaleError, Result};

/// A Gale dual pair for a system: the lifted exponent matrix `a`, the
/// coefficient matrix `c`, and duals `b` of `a` and `d` of `c`.
#[derive(Debug, Clone)]
pub struct GalePair {
    pub a: QMat,
    pub c: QMat,
    pub b: QMat,
    pub d: QMat,
}

impl GalePair {
    pub fn new(a: QMat, c: QMat, b: QMat, d: QMat) -> Result<Self> {
        let n = a.cols();
        let k = b.cols();
        if c.cols() != n || b.rows() != n || d.rows() != n || d.cols() != k + 1 {
            return Err(GaleError::Dimension("Gale pair shapes inconsistent".into()));
        }
        if !a.mul(&b).is_zero() {
            return Err(GaleError::Precondition("A*B != 0".into()));
        }
        if !c.mul(&d).is_zero() {
            return Err(GaleError::Precondition("C*D != 0".into()));
        }
        if b.rank() != k {
            return Err(GaleError::NotFullRank);
        }
        if d.rank() != k + 1 {
            return Err(GaleError::NotFullRank);
        }
        Ok(GalePair { a, c, b, d })
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn k(&self) -> usize {
        self.b.cols()
    }
}

/// Does the origin lie in the open cone spanned by the columns of `c`?
/// This is necessary for a positive solution: a positive root makes the
/// monomial vector a strictly positive kernel element.
pub fn necessary_condition(c: &QMat) -> Result<bool> {
    if c.rank() != c.rows() {
        return Err(GaleError::NotFullRank);
    }
    Ok(positive_kernel_vector(c).is_some())
}

/// The affine form values `p_i(y)` for all rows of `d`.
pub fn affine_values(d: &QMat, y: &[Rat]) -> Vec<Rat> {
    assert_eq!(y.len() + 1, d.cols());
    (0..d.rows())
        .map(|i| {
            let mut v = d.at(i, 0).clone();
            for (j, yj) in y.iter().enumerate() {
                v += d.at(i, j + 1) * yj;
            }
            v
        })
        .collect()
}

/// Right-multiply `d` by an invertible matrix so that the first unit vector
/// lies in the open cone of the rows; then the sliced dual region is bounded
/// and full dimensional whenever the necessary condition holds.
///
/// Returns `d` unchanged when it already has this property.
pub fn normalize_gale_dual(d: &QMat) -> Result<QMat> {
    let kp1 = d.cols();
    if d.rank() != kp1 {
        return Err(GaleError::CannotBound("dual matrix is rank deficient".into()));
    }
    let rows = d.row_vecs();
    if open_halfspace_witness(&rows).is_none() {
        return Err(GaleError::CannotBound(
            "dual rows do not lie in an open halfspace".into(),
        ));
    }
    let mut e0 = vec![Rat::zero(); kp1];
    e0[0] = Rat::one();
    if open_cone_combination(&rows, &e0).is_some() {
        return Ok(d.clone());
    }
    // u = sum of rows is a nonzero open-cone member; build R with u R = e0.
    let mut u = vec![Rat::zero(); kp1];
    for r in &rows {
        for (uu, x) in u.iter_mut().zip(r.iter()) {
            *uu += x;
        }
    }
    let norm: Rat = u.iter().map(|x| x * x).sum();
    assert!(!norm.is_zero(), "halfspace condition forces a nonzero row sum");
    let first_col: Vec<Rat> = u.iter().map(|x| x / &norm).collect();
    let u_mat = QMat::from_rows(vec![u.clone()]);
    let ortho = u_mat.kernel();
    let mut cols = vec![first_col];
    cols.extend(ortho.col_vecs());
    let r = QMat::from_cols(cols);
    let out = d.mul(&r);
    debug_assert!(open_cone_combination(&out.row_vecs(), &e0).is_some());
    Ok(out)
}

/// Extend a rank-`k` kernel matrix of `c` by a strictly positive kernel
/// column in front, producing a full Gale dual whose sliced region is
/// bounded. Requires the origin in the open row cone of `d_tilde` and the
/// necessary condition on `c`.
pub fn augment_with_positive_vector(c: &QMat, d_tilde: &QMat) -> Result<QMat> {
    let n = c.cols();
    let k = d_tilde.cols();
    if d_tilde.rows() != n {
        return Err(GaleError::Dimension("kernel matrix row count".into()));
    }
    if k > 0 {
        if !c.mul(d_tilde).is_zero() {
            return Err(GaleError::Precondition("columns are not in ker(C)".into()));
        }
        if d_tilde.rank() != k {
            return Err(GaleError::NotFullRank);
        }
        // Origin in the open row cone <=> positive left kernel vector.
        if positive_kernel_vector(&d_tilde.transpose()).is_none() {
            return Err(GaleError::Precondition(
                "origin is not in the open row cone of the kernel matrix".into(),
            ));
        }
    }
    let mut positive = positive_kernel_vector(c).ok_or_else(|| {
        GaleError::Precondition("no strictly positive kernel vector of C".into())
    })?;
    let in_span = |v: &[Rat]| -> bool {
        if k == 0 {
            return false;
        }
        let test = d_tilde.hstack(&QMat::from_cols(vec![v.to_vec()]));
        test.rank() == k
    };
    if in_span(&positive) {
        // Step off the span inside ker(C) while keeping every entry positive.
        let kern = kernel_basis(c)?;
        let w = kern
            .col_vecs()
            .into_iter()
            .find(|w| !in_span(w))
            .ok_or_else(|| GaleError::Precondition("kernel does not exceed the span".into()))?;
        let mut step = Rat::one();
        for (vi, wi) in positive.iter().zip(w.iter()) {
            if wi.is_negative() {
                let bound = vi / (-wi.clone() * Rat::from_integer(2.into()));
                if bound < step {
                    step = bound;
                }
            }
        }
        for (vi, wi) in positive.iter_mut().zip(w.iter()) {
            *vi += &step * wi;
        }
        debug_assert!(positive.iter().all(|x| x.is_positive()));
        debug_assert!(!in_span(&positive));
    }
    Ok(QMat::from_cols(vec![positive]).hstack(d_tilde))
}

/// The irredundant facet index set of the dual cone: row `i` contributes a
/// facet iff its ray is not a nonnegative combination of the other rows.
/// Depends only on the coefficient matrix, not on the choice of dual.
///
/// Errors on zero or pairwise-parallel rows (a non-uniform coefficient
/// matrix), which would make the set ambiguous.
pub fn compute_ic(d: &QMat) -> Result<Vec<usize>> {
    let n = d.rows();
    let rows = d.row_vecs();
    for (i, r) in rows.iter().enumerate() {
        if r.iter().all(|x| x.is_zero()) {
            return Err(GaleError::NonUniform(format!("dual row {} is zero", i + 1)));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if parallel(&rows[i], &rows[j]) {
                return Err(GaleError::NonUniform(format!(
                    "dual rows {} and {} are parallel",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut keep = Vec::new();
    for i in 0..n {
        let others: Vec<Vec<Rat>> = (0..n).filter(|&j| j != i).map(|j| rows[j].clone()).collect();
        if closed_cone_combination(&others, &rows[i]).is_none() {
            keep.push(i);
        }
    }
    Ok(keep)
}

fn parallel(a: &[Rat], b: &[Rat]) -> bool {
    QMat::from_rows(vec![a.to_vec(), b.to_vec()]).rank() <= 1
}

/// The bounded slice of the dual cone with exact vertices and face lattice.
#[derive(Debug, Clone)]
pub struct SlicePolytope {
    pub k: usize,
    /// Irredundant facet indices into the rows of `d` (0-based, sorted).
    pub facets: Vec<usize>,
    pub vertices: Vec<Vec<Rat>>,
    /// Facet indices tight at each vertex (subset of `facets`).
    pub vertex_tight: Vec<Vec<usize>>,
    /// All nonempty facet subsets cutting out a nonempty face, sorted.
    pub faces: Vec<Vec<usize>>,
    pub bounded: bool,
    pub full_dimensional: bool,
}

impl SlicePolytope {
    pub fn has_face(&self, l: &[usize]) -> bool {
        let mut key = l.to_vec();
        key.sort_unstable();
        self.faces.iter().any(|f| *f == key)
    }
}

/// Is the open region `{ y : p_i(y) > 0 }` nonempty? Decided by the
/// homogenized LP `d_i0 t + <d_i, y> >= 1, t >= 1`.
pub fn slice_full_dimensional(d: &QMat) -> bool {
    let k = d.cols() - 1;
    let mut lp = Lp::new(k + 1);
    let mut t_row = vec![Rat::zero(); k + 1];
    t_row[0] = Rat::one();
    lp.ge(t_row, Rat::one());
    for i in 0..d.rows() {
        lp.ge(d.row(i), Rat::one());
    }
    lp.feasible_point().is_some()
}

/// Does the constraint system `<d_i, y> >= 0` (columns 1..k of `d`) admit a
/// nonzero recession direction?
pub fn slice_has_recession_direction(d: &QMat) -> bool {
    let k = d.cols() - 1;
    if k == 0 {
        return false;
    }
    for m in 0..k {
        for sign in [1i64, -1] {
            let mut lp = Lp::new(k);
            for i in 0..d.rows() {
                let coeffs: Vec<Rat> = (1..=k).map(|j| d.at(i, j).clone()).collect();
                lp.ge(coeffs, Rat::zero());
            }
            let mut e = vec![Rat::zero(); k];
            e[m] = Rat::one();
            lp.eq(e, Rat::from_integer(sign.into()));
            if lp.feasible_point().is_some() {
                return true;
            }
        }
    }
    false
}

/// Boundedness of the sliced region, decided from the recession cone. This
/// route is deliberately independent of the open-cone membership test on the
/// rows, so the two can be cross-checked.
pub fn slice_is_bounded(d: &QMat) -> bool {
    !slice_has_recession_direction(d)
}

/// Build the slice polytope of a Gale dual `d`: exact vertices from
/// facet-subset intersections, tight sets, and the face lattice.
///
/// Errors with [`GaleError::Infeasible`] when the open region is empty and
/// [`GaleError::Unbounded`] when it has a recession direction (normalize the
/// dual first).
pub fn build_delta(d: &QMat) -> Result<SlicePolytope> {
    let k = d.cols() - 1;
    if !slice_full_dimensional(d) {
        return Err(GaleError::Infeasible);
    }
    if slice_has_recession_direction(d) {
        return Err(GaleError::Unbounded);
    }
    if k == 0 {
        return Ok(SlicePolytope {
            k: 0,
            facets: Vec::new(),
            vertices: vec![Vec::new()],
            vertex_tight: vec![Vec::new()],
            faces: Vec::new(),
            bounded: true,
            full_dimensional: true,
        });
    }
    let facets = compute_ic(d)?;
    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    let mut vertex_tight: Vec<Vec<usize>> = Vec::new();
    for subset in facets.iter().copied().combinations(k) {
        let m = QMat::from_rows(
            subset
                .iter()
                .map(|&i| (1..=k).map(|j| d.at(i, j).clone()).collect())
                .collect(),
        );
        let rhs: Vec<Rat> = subset.iter().map(|&i| -d.at(i, 0).clone()).collect();
        if m.rank() != k {
            continue;
        }
        let Some(y) = m.solve(&rhs) else { continue };
        let values = affine_values(d, &y);
        if values.iter().any(|v| v.is_negative()) {
            continue;
        }
        if vertices.contains(&y) {
            continue;
        }
        let tight: Vec<usize> = facets
            .iter()
            .copied()
            .filter(|&i| values[i].is_zero())
            .collect();
        vertices.push(y);
        vertex_tight.push(tight);
    }
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for tight in &vertex_tight {
        let t = tight.len();
        for mask in 1u32..(1 << t) {
            let subset: Vec<usize> = (0..t)
                .filter(|&b| mask & (1 << b) != 0)
                .map(|b| tight[b])
                .collect();
            faces.insert(subset);
        }
    }
    let mut faces: Vec<Vec<usize>> = faces.into_iter().collect();
    faces.sort_by_key(|f| (f.len(), f.clone()));
    Ok(SlicePolytope {
        k,
        facets,
        vertices,
        vertex_tight,
        faces,
        bounded: true,
        full_dimensional: true,
    })
}

/// Exact barycenter of the vertices of the face cut out by `l`: a
/// relative-interior point of that face.
pub fn face_barycenter(delta: &SlicePolytope, l: &[usize]) -> Option<Vec<Rat>> {
    let members: Vec<&Vec<Rat>> = delta
        .vertices
        .iter()
        .zip(delta.vertex_tight.iter())
        .filter(|(_, tight)| l.iter().all(|i| tight.contains(i)))
        .map(|(v, _)| v)
        .collect();
    if members.is_empty() {
        return None;
    }
    let count = Rat::from_integer((members.len() as i64).into());
    let mut center = vec![Rat::zero(); delta.k];
    for v in members {
        for (c, x) in center.iter_mut().zip(v.iter()) {
            *c += x;
        }
    }
    for c in center.iter_mut() {
        *c /= &count;
    }
    Some(center)
}

/// Exact value of the Gale map at a rational point. Requires integer entries
/// in `b`; fractional exponents have no exact rational evaluation.
pub fn gale_eval_exact(b: &QMat, d: &QMat, y: &[Rat]) -> Result<Vec<Rat>> {
    let values = affine_values(d, y);
    let k = b.cols();
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let mut pos = Rat::one();
        let mut neg = Rat::one();
        for i in 0..b.rows() {
            let e = b.at(i, j);
            if !e.denom().is_one() {
                return Err(GaleError::Domain(
                    "exact Gale evaluation needs integer exponents".into(),
                ));
            }
            let numer = e.numer();
            if numer.is_zero() {
                continue;
            }
            let exp = u32::try_from(numer.magnitude().clone())
                .map_err(|_| GaleError::Domain("exponent too large".into()))?;
            let factor = pow_rat(&values[i], exp);
            if numer.is_positive() {
                pos *= factor;
            } else {
                neg *= factor;
            }
        }
        out.push(pos - neg);
    }
    Ok(out)
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Sign behavior of one Gale map component on the face cut out by `l`,
/// read off the rows of `b` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceSign {
    /// Every listed row entry is >= 0 with at least one > 0: the component
    /// is strictly negative on the relative interior of the face.
    Negative,
    /// Every listed row entry is <= 0 with at least one < 0: strictly positive.
    Positive,
    /// Mixed strict signs among the listed rows: the component vanishes on
    /// the whole face.
    Vanishes,
    /// All listed rows are zero in this column: the sign comes from factors
    /// off the face and is not determined here.
    Undetermined,
}

impl FaceSign {
    pub fn as_str(&self) -> &'static str {
        match self {
            FaceSign::Negative => "-1",
            FaceSign::Positive => "+1",
            FaceSign::Vanishes => "0",
            FaceSign::Undetermined => "mixed-on-face",
        }
    }
}

/// Classify the sign of component `j` of the Gale map on the face with tight
/// set `l`, from the sign pattern of the rows of `b` indexed by `l`.
pub fn face_sign_class(b: &QMat, l: &[usize], j: usize) -> FaceSign {
    let mut has_pos = false;
    let mut has_neg = false;
    for &i in l {
        match sgn(b.at(i, j)) {
            1 => has_pos = true,
            -1 => has_neg = true,
            _ => {}
        }
    }
    match (has_pos, has_neg) {
        (true, true) => FaceSign::Vanishes,
        (true, false) => FaceSign::Negative,
        (false, true) => FaceSign::Positive,
        (false, false) => FaceSign::Undetermined,
    }
}

/// As [`face_sign_class`], but `l` must be an actual face of the polytope.
pub fn boundary_sign(delta: &SlicePolytope, b: &QMat, l: &[usize], j: usize) -> Result<FaceSign> {
    if !delta.has_face(l) {
        return Err(GaleError::Precondition(format!(
            "{l:?} is not a face of the slice polytope"
        )));
    }
    Ok(face_sign_class(b, l, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{rat, ratio};

    fn sample_a() -> QMat {
        QMat::from_i64(&[&[1, 1, 1, 1, 1], &[0, 5, 2, 3, 3], &[4, 4, 8, 0, 5]])
    }

    fn sample_b() -> QMat {
        QMat::from_i64(&[&[1, 0], &[2, 1], &[1, 2], &[0, 1], &[-4, -4]])
    }

    fn sample_c(c: Rat) -> QMat {
        QMat::from_rows(vec![
            vec![rat(-1), rat(-1), rat(1), rat(1), rat(0)],
            vec![
                -(rat(3) * &c + rat(8)),
                -c.clone(),
                rat(2) * &c + rat(8),
                rat(0),
                rat(2),
            ],
        ])
    }

    fn sample_d(c: Rat) -> QMat {
        QMat::from_rows(vec![
            vec![rat(1), rat(1), rat(0)],
            vec![rat(1), rat(1), rat(2)],
            vec![rat(1), rat(2), rat(1)],
            vec![rat(1), rat(0), rat(1)],
            vec![c, rat(-4), rat(-4)],
        ])
    }

    #[test]
    fn pair_invariants_hold_for_sample() {
        let pair = GalePair::new(
            sample_a(),
            sample_c(ratio(1, 2)),
            sample_b(),
            sample_d(ratio(1, 2)),
        );
        assert!(pair.is_ok());
        // Columns of B sum to zero because A has a row of ones.
        let b = sample_b();
        for j in 0..b.cols() {
            let s: Rat = (0..b.rows()).map(|i| b.at(i, j).clone()).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn necessary_condition_examples() {
        assert!(necessary_condition(&QMat::from_i64(&[&[1, -1]])).unwrap());
        assert!(!necessary_condition(&QMat::from_i64(&[&[1, 2]])).unwrap());
        assert!(necessary_condition(&sample_c(ratio(1, 2))).unwrap());
    }

    #[test]
    fn normalize_keeps_good_dual() {
        let d = sample_d(rat(1));
        let out = normalize_gale_dual(&d).unwrap();
        assert_eq!(out, d);
    }

    #[test]
    fn normalize_fixes_unbounded_dual() {
        // Rows in an open halfspace but with e0 outside their open cone.
        let d = QMat::from_i64(&[&[1, 4], &[1, 2], &[1, 1]]);
        let rows = d.row_vecs();
        let e0 = vec![rat(1), rat(0)];
        assert!(open_cone_combination(&rows, &e0).is_none());
        let out = normalize_gale_dual(&d).unwrap();
        assert!(open_cone_combination(&out.row_vecs(), &e0).is_some());
        assert!(slice_is_bounded(&out) && slice_full_dimensional(&out));
    }

    #[test]
    fn normalize_rejects_halfspace_violation() {
        let d = QMat::from_i64(&[&[1, 0], &[-1, 0], &[0, 1]]);
        assert!(matches!(
            normalize_gale_dual(&d),
            Err(GaleError::CannotBound(_))
        ));
    }

    #[test]
    fn augment_builds_full_dual() {
        // Kernel columns 1,2 of the published dual; augmentation must find a
        // positive kernel vector outside their span.
        let c = sample_c(ratio(1, 2));
        let d_tilde = sample_d(ratio(1, 2)).select_cols(&[1, 2]);
        let d = augment_with_positive_vector(&c, &d_tilde).unwrap();
        assert!(c.mul(&d).is_zero());
        assert_eq!(d.rank(), 3);
        for i in 0..d.rows() {
            assert!(d.at(i, 0).is_positive());
        }
        let e0 = vec![rat(1), rat(0), rat(0)];
        assert!(open_cone_combination(&d.row_vecs(), &e0).is_some());
    }

    #[test]
    fn augment_rejects_non_kernel_input() {
        let c = QMat::from_i64(&[&[1, -1, 0], &[0, 1, -1]]);
        let d_tilde = QMat::from_cols(vec![vec![rat(1), rat(0), rat(-1)]]);
        assert!(augment_with_positive_vector(&c, &d_tilde).is_err());
    }

    #[test]
    fn augment_condbis_violation() {
        // ker(C) for C = (1,-1) is the diagonal; a single all-positive kernel
        // column has no positive left-kernel vector, so the row-cone
        // condition fails.
        let c = QMat::from_i64(&[&[1, -1]]);
        let d_tilde = QMat::from_cols(vec![vec![rat(1), rat(1)]]);
        assert!(matches!(
            augment_with_positive_vector(&c, &d_tilde),
            Err(GaleError::Precondition(_))
        ));
    }

    #[test]
    fn augment_empty_kernel_matrix() {
        let c = QMat::from_i64(&[&[1, -1]]);
        let d_tilde = QMat::zero(2, 0);
        let d = augment_with_positive_vector(&c, &d_tilde).unwrap();
        assert_eq!(d.cols(), 1);
        assert!(d.at(0, 0).is_positive() && d.at(1, 0).is_positive());
    }

    #[test]
    fn facet_set_of_sample_is_everything() {
        for c in [ratio(1, 2), rat(1), ratio(8, 7), rat(5)] {
            let ic = compute_ic(&sample_d(c)).unwrap();
            assert_eq!(ic, vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn facet_set_drops_redundant_ray() {
        let d = QMat::from_i64(&[&[1, 1], &[1, -1], &[2, 0]]);
        assert_eq!(compute_ic(&d).unwrap(), vec![0, 1]);
    }

    #[test]
    fn facet_set_rejects_parallel_rows() {
        let d = QMat::from_i64(&[&[1, 1], &[2, 2], &[1, -1]]);
        assert!(matches!(compute_ic(&d), Err(GaleError::NonUniform(_))));
    }

    #[test]
    fn facet_set_matches_kernel_positivity_characterization() {
        // For z in ker(C): all z_i > 0 iff z_i > 0 on the facet set alone.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let c = sample_c(ratio(1, 2));
        let d = sample_d(ratio(1, 2));
        let ic = compute_ic(&d).unwrap();
        let kern = kernel_basis(&c).unwrap();
        for _ in 0..60 {
            let coeffs: Vec<Rat> = (0..kern.cols())
                .map(|_| rat(rng.gen_range(-5..=5)))
                .collect();
            let z = kern.mul_vec(&coeffs);
            let all_pos = z.iter().all(|x| x.is_positive());
            let ic_pos = ic.iter().all(|&i| z[i].is_positive());
            assert_eq!(all_pos, ic_pos);
        }
        // Not vacuous: the dual columns give a positive combination.
        let z = d.col(0);
        assert!(z.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn pentagon_vertices_exact() {
        // Directly derived: intersect facet pairs and keep points where all
        // five forms are nonnegative. For the sample dual at parameter 1 the
        // region is a pentagon.
        let d = sample_d(rat(1));
        let delta = build_delta(&d).unwrap();
        assert!(delta.bounded && delta.full_dimensional);
        assert_eq!(delta.facets, vec![0, 1, 2, 3, 4]);
        let mut verts = delta.vertices.clone();
        verts.sort();
        let mut expected = vec![
            vec![rat(-1), rat(1)],
            vec![rat(-1), ratio(5, 4)],
            vec![ratio(-1, 3), ratio(-1, 3)],
            vec![rat(1), rat(-1)],
            vec![ratio(5, 4), rat(-1)],
        ];
        expected.sort();
        assert_eq!(verts, expected);
        // Two-facet faces are exactly the vertex pairs of the pentagon.
        let two_faces: Vec<Vec<usize>> = delta
            .faces
            .iter()
            .filter(|f| f.len() == 2)
            .cloned()
            .collect();
        assert_eq!(
            two_faces,
            vec![vec![0, 2], vec![0, 4], vec![1, 2], vec![1, 3], vec![3, 4]]
        );
        // The facet pair {1,2} meets outside the region: p_3(-1,0) = -1.
        assert!(!delta.has_face(&[0, 1]));
    }

    #[test]
    fn simplex_region_has_k_plus_one_vertices() {
        // p_1 = y_1, p_2 = y_2, p_3 = 1 - y_1 - y_2: the standard triangle.
        let d = QMat::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, -1, -1]]);
        let delta = build_delta(&d).unwrap();
        assert_eq!(delta.vertices.len(), 3);
        assert_eq!(delta.faces.len(), 3 + 3);
    }

    #[test]
    fn infeasible_and_unbounded_regions() {
        let empty = QMat::from_i64(&[&[0, 1], &[-1, -1]]);
        assert!(matches!(build_delta(&empty), Err(GaleError::Infeasible)));
        let unbounded = QMat::from_i64(&[&[1, 1], &[1, 2], &[1, 4]]);
        assert!(matches!(build_delta(&unbounded), Err(GaleError::Unbounded)));
    }

    #[test]
    fn face_lattice_closed_under_subsets() {
        let delta = build_delta(&sample_d(ratio(1, 2))).unwrap();
        for f in &delta.faces {
            if f.len() > 1 {
                for drop in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(drop);
                    assert!(delta.has_face(&sub));
                }
            }
        }
        // Vertices satisfy all forms with equality exactly on their tight sets.
        let d = sample_d(ratio(1, 2));
        for (v, tight) in delta.vertices.iter().zip(delta.vertex_tight.iter()) {
            let values = affine_values(&d, v);
            for (i, val) in values.iter().enumerate() {
                assert!(!val.is_negative());
                assert_eq!(val.is_zero(), tight.contains(&i));
            }
        }
    }

    #[test]
    fn gale_eval_exact_values() {
        let b = sample_b();
        // All forms equal to one: both products are 1, so the map vanishes.
        let d1 = sample_d(rat(1));
        let g = gale_eval_exact(&b, &d1, &[rat(0), rat(0)]).unwrap();
        assert_eq!(g, vec![rat(0), rat(0)]);
        // Direct product evaluation at y = (-1/2, 0), parameter 1:
        // p = (1/2, 1/2, 0, 1, 3), so both components are -81.
        let g = gale_eval_exact(&b, &d1, &[ratio(-1, 2), rat(0)]).unwrap();
        assert_eq!(g, vec![rat(-81), rat(-81)]);
        // Fractional exponents are rejected in exact mode.
        let half = QMat::from_rows(vec![vec![ratio(1, 2)], vec![ratio(-1, 2)]]);
        let dd = QMat::from_i64(&[&[1, 1], &[1, -1]]);
        assert!(gale_eval_exact(&half, &dd, &[rat(0)]).is_err());
    }

    #[test]
    fn face_sign_classification() {
        let b = sample_b();
        // Facet 5 (index 4), first column: entry -4, so the component is
        // positive there.
        assert_eq!(face_sign_class(&b, &[4], 0), FaceSign::Positive);
        // Rows {1,2} (indices 0,1), second column: entries 0 and 1.
        assert_eq!(face_sign_class(&b, &[0, 1], 1), FaceSign::Negative);
        // Rows {2,5} (indices 1,4), first column: entries 2 and -4.
        assert_eq!(face_sign_class(&b, &[1, 4], 0), FaceSign::Vanishes);
        // All-zero selection.
        let z = QMat::from_i64(&[&[0, 1], &[0, -1]]);
        assert_eq!(face_sign_class(&z, &[0, 1], 0), FaceSign::Undetermined);
    }

    #[test]
    fn boundary_sign_requires_face() {
        let delta = build_delta(&sample_d(rat(1))).unwrap();
        let b = sample_b();
        assert_eq!(
            boundary_sign(&delta, &b, &[4], 0).unwrap(),
            FaceSign::Positive
        );
        // {1,2} and {2,5} are sign-classifiable but not faces here.
        assert!(boundary_sign(&delta, &b, &[0, 1], 1).is_err());
        assert!(boundary_sign(&delta, &b, &[1, 4], 0).is_err());
    }

    #[test]
    fn boundary_sign_agrees_with_exact_evaluation() {
        let d = sample_d(ratio(1, 2));
        let b = sample_b();
        let delta = build_delta(&d).unwrap();
        for l in &delta.faces {
            let y = face_barycenter(&delta, l).unwrap();
            let g = gale_eval_exact(&b, &d, &y).unwrap();
            for j in 0..b.cols() {
                match face_sign_class(&b, l, j) {
                    FaceSign::Negative => assert!(g[j].is_negative(), "face {l:?} col {j}"),
                    FaceSign::Positive => assert!(g[j].is_positive(), "face {l:?} col {j}"),
                    FaceSign::Vanishes => assert!(g[j].is_zero(), "face {l:?} col {j}"),
                    FaceSign::Undetermined => {}
                }
            }
        }
    }

    #[test]
    fn bounded_iff_unit_vector_in_row_cone_fixed_cases() {
        // Both decision routes agree on a handful of fixed duals.
        let cases = vec![
            sample_d(rat(1)),
            QMat::from_i64(&[&[1, 4], &[1, 2], &[1, 1]]),
            QMat::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, -1, -1]]),
            QMat::from_i64(&[&[1, 1], &[1, -1], &[2, 0]]),
        ];
        for d in cases {
            let e0: Vec<Rat> = std::iter::once(rat(1))
                .chain(std::iter::repeat(rat(0)).take(d.cols() - 1))
                .collect();
            let via_cone = open_cone_combination(&d.row_vecs(), &e0).is_some();
            let via_recession = slice_is_bounded(&d) && slice_full_dimensional(&d);
            assert_eq!(via_cone, via_recession, "disagreement for {d:?}");
        }
    }
}
