//! Tensor powers of M_n(ℂ): matrix units, leg embeddings, invariant
//! functionals, and adjoint actions evaluated at classical points.
//!
//! Index convention: leg 1 is the most significant digit of the row/column
//! index, matching the Kronecker products used throughout.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::{C64, CRational, Scalar};
use serde::Serialize;

/// Soft cap on dense operator size: n^{2k} entries.
pub const MAX_DENSE_ENTRIES: usize = 1_200_000;

/// An element of M_n(ℂ)^{⊗k}, stored as a dense n^k × n^k matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOperator<S: Scalar> {
    n: usize,
    legs: usize,
    mat: Mat<S>,
}

impl<S: Scalar> TensorOperator<S> {
    pub fn new(n: usize, legs: usize, mat: Mat<S>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("base dimension n = {n} < 2")));
        }
        if legs < 1 {
            return Err(Error::InvalidInput("legs must be ≥ 1".into()));
        }
        let dim = n.checked_pow(legs as u32).ok_or_else(|| {
            Error::InvalidInput(format!("n^k overflows for n = {n}, k = {legs}"))
        })?;
        if dim * dim > MAX_DENSE_ENTRIES {
            return Err(Error::InvalidInput(format!(
                "operator too large: {dim}×{dim} exceeds the dense cap"
            )));
        }
        if mat.rows() != dim || mat.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {dim}×{dim} for n = {n}, k = {legs}, got {}×{}",
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(TensorOperator { n, legs, mat })
    }

    pub fn identity(n: usize, legs: usize) -> Result<Self> {
        let dim = n.pow(legs as u32);
        Self::new(n, legs, Mat::identity(dim))
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &Mat<S> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<S> {
        self.mat
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(TensorOperator {
            n: self.n,
            legs: self.legs,
            mat: self.mat.mul(&rhs.mat),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(TensorOperator {
            n: self.n,
            legs: self.legs,
            mat: self.mat.add(&rhs.mat),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(TensorOperator {
            n: self.n,
            legs: self.legs,
            mat: self.mat.sub(&rhs.mat),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        TensorOperator {
            n: self.n,
            legs: self.legs,
            mat: self.mat.scale(c),
        }
    }

    pub fn adjoint(&self) -> Self {
        TensorOperator {
            n: self.n,
            legs: self.legs,
            mat: self.mat.adjoint(),
        }
    }

    /// Tensor product x ⊗ y, concatenating legs.
    pub fn tensor(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!(
                "base dims {} vs {}",
                self.n, rhs.n
            )));
        }
        TensorOperator::new(self.n, self.legs + rhs.legs, self.mat.kron(&rhs.mat))
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n || self.legs != rhs.legs {
            return Err(Error::DimensionMismatch(format!(
                "(n,k) = ({},{}) vs ({},{})",
                self.n, self.legs, rhs.n, rhs.legs
            )));
        }
        Ok(())
    }
}

impl TensorOperator<CRational> {
    pub fn to_c64(&self) -> TensorOperator<C64> {
        TensorOperator {
            n: self.n,
            legs: self.legs,
            mat: self.mat.to_c64(),
        }
    }
}

/// The matrix unit e_{ij} in M_n as a one-leg operator. Indices are 1-based.
pub fn matrix_unit<S: Scalar>(n: usize, i: usize, j: usize) -> Result<TensorOperator<S>> {
    if i < 1 || i > n {
        return Err(Error::IndexOutOfRange { what: "i", got: i, max: n });
    }
    if j < 1 || j > n {
        return Err(Error::IndexOutOfRange { what: "j", got: j, max: n });
    }
    let mut m = Mat::zeros(n, n);
    m[(i - 1, j - 1)] = S::one();
    TensorOperator::new(n, 1, m)
}

/// I^{⊗(s−1)} ⊗ x ⊗ I^{⊗(k−s)} for a one-leg operator x; s is 1-based.
pub fn embed_at_leg<S: Scalar>(
    x: &TensorOperator<S>,
    position: usize,
    total_legs: usize,
) -> Result<TensorOperator<S>> {
    if x.legs() != 1 {
        return Err(Error::InvalidInput(format!(
            "embed_at_leg expects a one-leg operator, got {} legs",
            x.legs()
        )));
    }
    if position < 1 || position > total_legs {
        return Err(Error::IndexOutOfRange {
            what: "position",
            got: position,
            max: total_legs,
        });
    }
    let n = x.base_dim();
    let left: Mat<S> = Mat::identity(n.pow((position - 1) as u32));
    let right: Mat<S> = Mat::identity(n.pow((total_legs - position) as u32));
    TensorOperator::new(n, total_legs, left.kron(x.mat()).kron(&right))
}

/// Tr(b)/n^k, the normalized trace on M_n^{⊗k}.
pub fn normalized_trace<S: Scalar>(b: &TensorOperator<S>) -> S {
    let dim = b.dim() as i64;
    b.mat()
        .trace()
        .mul(&S::from_ratio(1, dim))
}

/// A positive trace-one matrix Q, the datum of the functional φ_Q(b) = Tr(Qᵗb).
#[derive(Clone, Debug)]
pub struct DensityFunctional<S: Scalar> {
    q: Mat<S>,
    tol: f64,
}

impl<S: Scalar> DensityFunctional<S> {
    /// Validates Q = Q*, Tr Q = 1, and positivity (leading principal minors).
    ///
    /// On the exact backend all checks are exact; on the floating backend they
    /// hold within `tol`.
    pub fn new(q: Mat<S>, tol: f64) -> Result<Self> {
        if !q.is_square() {
            return Err(Error::InvalidDensity("Q must be square".into()));
        }
        if q.rows() < 2 {
            return Err(Error::InvalidDensity("Q must be at least 2×2".into()));
        }
        let cutoff = if S::EXACT { 0.0 } else { tol };
        let sa = q.max_abs_diff(&q.adjoint());
        if sa > cutoff {
            return Err(Error::InvalidDensity(format!(
                "Q is not self-adjoint (residual {sa:.3e})"
            )));
        }
        let tr = q.trace().sub(&S::one()).abs();
        if tr > cutoff {
            return Err(Error::InvalidDensity(format!(
                "Tr(Q) ≠ 1 (residual {tr:.3e})"
            )));
        }
        // Sylvester: all leading principal minors strictly positive.
        for m in 1..=q.rows() {
            let minor = Mat::from_fn(m, m, |i, j| q[(i, j)].clone()).det();
            let (re, im) = (minor.re_f64(), minor.im_f64());
            if !(re > cutoff) || im.abs() > cutoff.max(1e-12) {
                return Err(Error::InvalidDensity(format!(
                    "leading {m}×{m} minor not positive ({re:.3e})"
                )));
            }
        }
        Ok(DensityFunctional { q, tol })
    }

    pub fn diagonal_from_ratios(entries: &[(i64, i64)]) -> Result<Self> {
        let q = Mat::diag(entries.iter().map(|&(p, d)| S::from_ratio(p, d)).collect());
        Self::new(q, 1e-10)
    }

    /// The tracial state datum Q = I/n.
    pub fn uniform(n: usize) -> Result<Self> {
        let q = Mat::diag(vec![S::from_ratio(1, n as i64); n]);
        Self::new(q, 1e-10)
    }

    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    pub fn q(&self) -> &Mat<S> {
        &self.q
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// φ_Q(b) = Tr(Qᵗ b) on one leg.
    pub fn phi(&self, b: &TensorOperator<S>) -> Result<S> {
        if b.legs() != 1 || b.base_dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "phi_Q expects one leg of dimension {}, got (n,k) = ({},{})",
                self.dim(),
                b.base_dim(),
                b.legs()
            )));
        }
        Ok(self.q.transpose().trace_of_product(b.mat()))
    }

    /// φ_Q^{⊗k}(b) = Tr((Qᵗ)^{⊗k} b).
    pub fn product_functional(&self, k: usize, b: &TensorOperator<S>) -> Result<S> {
        if b.legs() != k || b.base_dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "product functional expects (n,k) = ({},{k}), got ({},{})",
                self.dim(),
                b.base_dim(),
                b.legs()
            )));
        }
        let qt_pow = self.q.transpose().kron_pow(k);
        Ok(qt_pow.trace_of_product(b.mat()))
    }
}

/// Ad_U at level k: U^{⊗k} b (U^{⊗k})*.
pub fn adjoint_action_point<S: Scalar>(
    u: &Mat<S>,
    k: usize,
    b: &TensorOperator<S>,
) -> Result<TensorOperator<S>> {
    if !u.is_square() || u.rows() != b.base_dim() {
        return Err(Error::DimensionMismatch(format!(
            "U is {}×{}, operator base dim {}",
            u.rows(),
            u.cols(),
            b.base_dim()
        )));
    }
    if b.legs() != k {
        return Err(Error::DimensionMismatch(format!(
            "operator has {} legs, expected {k}",
            b.legs()
        )));
    }
    let uk = u.kron_pow(k);
    let out = uk.mul(b.mat()).mul(&uk.adjoint());
    TensorOperator::new(b.base_dim(), k, out)
}

/// Outcome of checking the defining relations of a classical evaluation point.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalPointReport {
    pub n: usize,
    pub backend: &'static str,
    pub tol: f64,
    /// max(‖U*U − I‖, ‖UU* − I‖)
    pub unitarity_residual: f64,
    /// max(‖UᵗQŪQ⁻¹ − I‖, ‖QŪQ⁻¹Uᵗ − I‖)
    pub relation_residual: f64,
    /// ‖UQ − QU‖ (a sufficient condition, reported for context)
    pub commutation_residual: f64,
    pub passes: bool,
}

/// Checks U*U = UU* = I and UᵗQŪQ⁻¹ = QŪQ⁻¹Uᵗ = I within `tol`
/// (exactly on the exact backend).
pub fn classical_point_check<S: Scalar>(
    u: &Mat<S>,
    q: &DensityFunctional<S>,
    tol: f64,
) -> ClassicalPointReport {
    let n = q.dim();
    let id: Mat<S> = Mat::identity(n);
    let unit1 = u.adjoint().mul(u).max_abs_diff(&id);
    let unit2 = u.mul(&u.adjoint()).max_abs_diff(&id);
    let q_inv = invert(q.q()).expect("Q is positive, hence invertible");
    let core = q.q().mul(&u.conj()).mul(&q_inv);
    let rel1 = u.transpose().mul(&core).max_abs_diff(&id);
    let rel2 = core.mul(&u.transpose()).max_abs_diff(&id);
    let comm = u.mul(q.q()).max_abs_diff(&q.q().mul(u));
    let cutoff = if S::EXACT { 0.0 } else { tol };
    ClassicalPointReport {
        n,
        backend: S::BACKEND,
        tol,
        unitarity_residual: unit1.max(unit2),
        relation_residual: rel1.max(rel2),
        commutation_residual: comm,
        passes: unit1.max(unit2) <= cutoff && rel1.max(rel2) <= cutoff,
    }
}

/// A unitary evaluation point validated against its target Q.
#[derive(Clone, Debug)]
pub struct UnitaryPoint<S: Scalar> {
    u: Mat<S>,
}

impl<S: Scalar> UnitaryPoint<S> {
    pub fn validated(u: Mat<S>, q: &DensityFunctional<S>, tol: f64) -> Result<Self> {
        let report = classical_point_check(&u, q, tol);
        if !report.passes {
            return Err(Error::InvalidInput(format!(
                "matrix fails the classical-point relations: unitarity {:.3e}, relation {:.3e}",
                report.unitarity_residual, report.relation_residual
            )));
        }
        Ok(UnitaryPoint { u })
    }

    pub fn u(&self) -> &Mat<S> {
        &self.u
    }
}

/// Inverse by Gauss-Jordan; `None` for singular input.
pub fn invert<S: Scalar>(m: &Mat<S>) -> Option<Mat<S>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut aug = Mat::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = S::one();
    }
    let (r, pivots) = aug.rref(1e-12);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(Mat::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CRational;

    type TQ = TensorOperator<CRational>;

    fn cq(n: i64, d: i64) -> CRational {
        CRational::from_ratio(n, d)
    }

    #[test]
    fn matrix_unit_definition() {
        let e11: TQ = matrix_unit(2, 1, 1).unwrap();
        assert_eq!(e11.mat()[(0, 0)], CRational::one());
        assert!(e11.mat()[(0, 1)].is_zero());
        assert!(e11.mat()[(1, 1)].is_zero());
        // e_{12} e_{21} = e_{11}
        let e12: TQ = matrix_unit(2, 1, 2).unwrap();
        let e21: TQ = matrix_unit(2, 2, 1).unwrap();
        assert_eq!(e12.mul(&e21).unwrap(), e11);
        // 3×3, entry at row 2 col 3
        let e23: TQ = matrix_unit(3, 2, 3).unwrap();
        assert_eq!(e23.mat()[(1, 2)], CRational::one());
        assert!(matrix_unit::<CRational>(2, 0, 1).is_err());
        assert!(matrix_unit::<CRational>(2, 1, 3).is_err());
    }

    #[test]
    fn embedding_examples() {
        let e11: TQ = matrix_unit(2, 1, 1).unwrap();
        let em = embed_at_leg(&e11, 1, 2).unwrap();
        assert_eq!(em.dim(), 4);
        assert_eq!(em.mat().trace(), cq(2, 1)); // e_{11} ⊗ I₂ has trace 2
        let id1: TQ = TensorOperator::identity(2, 1).unwrap();
        for s in 1..=3 {
            let e = embed_at_leg(&id1, s, 3).unwrap();
            assert_eq!(e, TensorOperator::identity(2, 3).unwrap());
        }
        let e12: TQ = matrix_unit(2, 1, 2).unwrap();
        let right = embed_at_leg(&e12, 2, 2).unwrap();
        let direct = TensorOperator::identity(2, 1).unwrap().tensor(&e12).unwrap();
        assert_eq!(right, direct);
        assert!(embed_at_leg(&e12, 3, 2).is_err());
    }

    #[test]
    fn phi_q_values() {
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let e11: TQ = matrix_unit(2, 1, 1).unwrap();
        assert_eq!(q.phi(&e11).unwrap(), cq(1, 3));
        let id: TQ = TensorOperator::identity(2, 1).unwrap();
        assert_eq!(q.phi(&id).unwrap(), CRational::one());
        // non-diagonal Q of trace 1: φ_Q(e_{12}) = Q_{12}
        let qm = Mat::from_rows(vec![
            vec![cq(1, 2), cq(1, 4)],
            vec![cq(1, 4), cq(1, 2)],
        ]);
        let q2 = DensityFunctional::new(qm, 1e-10).unwrap();
        let e12: TQ = matrix_unit(2, 1, 2).unwrap();
        assert_eq!(q2.phi(&e12).unwrap(), cq(1, 4));
    }

    #[test]
    fn product_functional_values() {
        let half: DensityFunctional<CRational> = DensityFunctional::uniform(2).unwrap();
        let e11: TQ = matrix_unit(2, 1, 1).unwrap();
        let e22: TQ = matrix_unit(2, 2, 2).unwrap();
        let b = e11.tensor(&e22).unwrap();
        assert_eq!(half.product_functional(2, &b).unwrap(), cq(1, 4));
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let id2: TQ = TensorOperator::identity(2, 2).unwrap();
        assert_eq!(q.product_functional(2, &id2).unwrap(), CRational::one());
        let e12: TQ = matrix_unit(2, 1, 2).unwrap();
        let e21: TQ = matrix_unit(2, 2, 1).unwrap();
        let off = e12.tensor(&e21).unwrap();
        // Q_{12}·Q_{21} = 0 for diagonal Q
        assert!(q.product_functional(2, &off).unwrap().is_zero());
    }

    #[test]
    fn product_functional_is_multiplicative_on_elementary_tensors() {
        let qm = Mat::from_rows(vec![
            vec![cq(1, 2), cq(1, 4)],
            vec![cq(1, 4), cq(1, 2)],
        ]);
        let q = DensityFunctional::new(qm, 1e-10).unwrap();
        for (i, j, a, b) in [(1, 2, 2, 1), (1, 1, 2, 2), (2, 1, 1, 2)] {
            let x: TQ = matrix_unit(2, i, j).unwrap();
            let y: TQ = matrix_unit(2, a, b).unwrap();
            let t = x.tensor(&y).unwrap();
            let lhs = q.product_functional(2, &t).unwrap();
            let rhs = q.phi(&x).unwrap().mul(&q.phi(&y).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn phi_is_positive_on_positive_elements() {
        let qm = Mat::from_rows(vec![
            vec![cq(1, 2), cq(1, 4)],
            vec![cq(1, 4), cq(1, 2)],
        ]);
        let q = DensityFunctional::new(qm, 1e-10).unwrap();
        let samples = [
            Mat::from_rows(vec![vec![cq(1, 1), cq(2, 3)], vec![cq(-1, 2), cq(1, 5)]]),
            Mat::from_rows(vec![
                vec![CRational::i(), cq(1, 1)],
                vec![cq(3, 7), CRational::i().neg()],
            ]),
        ];
        for x in samples {
            let b = TensorOperator::new(2, 1, x.adjoint().mul(&x)).unwrap();
            let v = q.phi(&b).unwrap();
            assert!(v.im.is_zero());
            assert!(v.re.is_nonnegative(), "φ_Q(x*x) = {v}");
        }
    }

    #[test]
    fn normalized_trace_values() {
        let id: TQ = TensorOperator::identity(2, 3).unwrap();
        assert_eq!(normalized_trace(&id), CRational::one());
        let e11: TQ = matrix_unit(2, 1, 1).unwrap();
        let b = embed_at_leg(&e11, 1, 2).unwrap();
        assert_eq!(normalized_trace(&b), cq(1, 2));
    }

    #[test]
    fn adjoint_action_identity_and_diagonal() {
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let e12: TQ = matrix_unit(2, 1, 2).unwrap();
        let id: Mat<CRational> = Mat::identity(2);
        assert_eq!(adjoint_action_point(&id, 1, &e12).unwrap(), e12);
        // U = diag(i, 1): U e_{12} U* = i·e_{12}
        let u = Mat::diag(vec![CRational::i(), CRational::one()]);
        assert!(classical_point_check(&u, &q, 1e-10).passes);
        let moved = adjoint_action_point(&u, 1, &e12).unwrap();
        assert_eq!(moved, e12.scale(&CRational::i()));
    }

    #[test]
    fn adjoint_action_is_star_automorphism() {
        let u = Mat::from_rows(vec![
            vec![cq(3, 5), cq(4, 5)],
            vec![cq(-4, 5), cq(3, 5)],
        ]); // rational rotation, exactly unitary
        let x: TQ = matrix_unit(2, 1, 2).unwrap();
        let y: TQ = matrix_unit(2, 2, 1).unwrap();
        let xk = x.tensor(&y).unwrap();
        let yk = y.tensor(&x).unwrap();
        let ax = adjoint_action_point(&u, 2, &xk).unwrap();
        let ay = adjoint_action_point(&u, 2, &yk).unwrap();
        let prod = adjoint_action_point(&u, 2, &xk.mul(&yk).unwrap()).unwrap();
        assert_eq!(ax.mul(&ay).unwrap(), prod);
        let adj = adjoint_action_point(&u, 2, &xk.adjoint()).unwrap();
        assert_eq!(adj, ax.adjoint());
        let id: TQ = TensorOperator::identity(2, 2).unwrap();
        assert_eq!(adjoint_action_point(&u, 2, &id).unwrap(), id);
    }

    #[test]
    fn classical_point_check_examples() {
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        // diagonal phases commute with diagonal Q: pass
        let u = Mat::diag(vec![CRational::i(), CRational::i().neg()]);
        let rep = classical_point_check(&u, &q, 1e-10);
        assert!(rep.passes);
        assert_eq!(rep.commutation_residual, 0.0);
        // the swap matrix fails the metric relation
        let swap = Mat::from_rows(vec![
            vec![CRational::zero(), CRational::one()],
            vec![CRational::one(), CRational::zero()],
        ]);
        let rep = classical_point_check(&swap, &q, 1e-10);
        assert!(!rep.passes);
        assert!(rep.unitarity_residual == 0.0);
        // UᵗQŪQ⁻¹ = diag(2, 1/2), so the worst entry deviation from I is 1
        assert!(rep.relation_residual >= 1.0);
        assert!(UnitaryPoint::validated(swap, &q, 1e-10).is_err());
        // Q = I/n: relations reduce to unitarity, any unitary passes
        let uni: DensityFunctional<CRational> = DensityFunctional::uniform(2).unwrap();
        let rot = Mat::from_rows(vec![
            vec![cq(3, 5), cq(4, 5)],
            vec![cq(-4, 5), cq(3, 5)],
        ]);
        assert!(classical_point_check(&rot, &uni, 1e-10).passes);
    }

    #[test]
    fn phi_invariance_at_passing_points() {
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let u = Mat::diag(vec![CRational::i(), CRational::one().neg()]);
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let b: TQ = matrix_unit(2, i, j).unwrap();
            let moved = adjoint_action_point(&u, 1, &b).unwrap();
            assert_eq!(q.phi(&moved).unwrap(), q.phi(&b).unwrap());
        }
    }

    #[test]
    fn density_validation_rejects_bad_input() {
        // trace ≠ 1
        let m = Mat::diag(vec![cq(1, 2), cq(1, 3)]);
        assert!(DensityFunctional::new(m, 1e-10).is_err());
        // not positive
        let m = Mat::diag(vec![cq(3, 2), cq(-1, 2)]);
        assert!(DensityFunctional::new(m, 1e-10).is_err());
        // not self-adjoint
        let m = Mat::from_rows(vec![
            vec![cq(1, 2), cq(1, 4)],
            vec![cq(1, 8), cq(1, 2)],
        ]);
        assert!(DensityFunctional::new(m, 1e-10).is_err());
    }

    #[test]
    fn restriction_consistency_of_product_states() {
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let e12: TQ = matrix_unit(2, 1, 2).unwrap();
        let e21: TQ = matrix_unit(2, 2, 1).unwrap();
        let x = e12.tensor(&e21).unwrap(); // 2 legs
        let phi2 = q.product_functional(2, &x).unwrap();
        for extra in 1..=2 {
            let mut padded = x.clone();
            for _ in 0..extra {
                padded = padded
                    .tensor(&TensorOperator::identity(2, 1).unwrap())
                    .unwrap();
            }
            assert_eq!(q.product_functional(2 + extra, &padded).unwrap(), phi2);
        }
    }
}
