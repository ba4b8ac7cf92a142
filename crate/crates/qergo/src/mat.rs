//! Dense matrices over a [`Scalar`] backend.
//!
//! Everything here is deliberately dense: the operator sizes are capped at
//! desk scale (n^{2k} entries ≤ ~10^6), so no sparse storage is used.
//! Multiplication skips exact zeros, which is what makes exact-rational
//! products of tensor-leg operators cheap — they carry O(n^k) nonzero entries.

use crate::error::{Error, Result};
use crate::scalar::{parse_exact_entry, parse_float_entry, C64, CRational, Scalar};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diag(entries: Vec<S>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    /// Matrix product with zero-skipping on both factors.
    pub fn mul(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        let mut out: Mat<S> = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self.data[i * self.cols + l];
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(l);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow.iter()) {
                    if b.is_zero() {
                        continue;
                    }
                    *o = o.add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn neg(&self) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> S {
        assert!(self.is_square());
        let mut t = S::zero();
        for i in 0..self.rows {
            t = t.add(&self[(i, i)]);
        }
        t
    }

    /// Tr(AB) without forming the product.
    pub fn trace_of_product(&self, rhs: &Mat<S>) -> S {
        assert_eq!(self.cols, rhs.rows);
        assert_eq!(self.rows, rhs.cols);
        let mut t = S::zero();
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self.data[i * self.cols + l];
                if a.is_zero() {
                    continue;
                }
                let b = &rhs[(l, i)];
                if b.is_zero() {
                    continue;
                }
                t = t.add(&a.mul(b));
            }
        }
        t
    }

    /// Hilbert-Schmidt inner product ⟨A,B⟩ = Σ conj(a_ij) b_ij.
    pub fn hs_inner(&self, rhs: &Mat<S>) -> S {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut t = S::zero();
        for (a, b) in self.data.iter().zip(&rhs.data) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            t = t.add(&a.conj().mul(b));
        }
        t
    }

    /// Kronecker product; self indexes the high-order digits.
    pub fn kron(&self, rhs: &Mat<S>) -> Mat<S> {
        let mut out = Mat::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = &self[(i1, j1)];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        let b = &rhs[(i2, j2)];
                        if b.is_zero() {
                            continue;
                        }
                        out[(i1 * rhs.rows + i2, j1 * rhs.cols + j2)] = a.mul(b);
                    }
                }
            }
        }
        out
    }

    /// k-fold Kronecker power (k ≥ 0; k = 0 gives the 1×1 identity).
    pub fn kron_pow(&self, k: usize) -> Mat<S> {
        let mut out = Mat::identity(1);
        for _ in 0..k {
            out = out.kron(self);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Mat<S>) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.residual(b))
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|a| {
                let v = a.abs();
                v * v
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Rank by Gaussian elimination.
    ///
    /// On the exact backend pivots are any nonzero entry and `tol` is ignored;
    /// on the floating backend a pivot must exceed `tol * max_abs`.
    pub fn rank(&self, tol: f64) -> usize {
        let cutoff = if S::EXACT {
            0.0
        } else {
            tol * self.max_abs().max(1e-300)
        };
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            // best pivot in this column at or below `row`
            let mut best: Option<(usize, f64)> = None;
            for r in row..m.rows {
                let a = &m[(r, col)];
                if a.is_zero() {
                    continue;
                }
                let w = a.abs();
                if w > cutoff && best.map_or(true, |(_, bw)| w > bw) {
                    best = Some((r, w));
                }
            }
            let Some((piv, _)) = best else { continue };
            m.swap_rows(row, piv);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for r in (row + 1)..m.rows {
                let factor = m[(r, col)].mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = factor.mul(&m[(row, c)]);
                    m[(r, c)] = m[(r, c)].sub(&sub);
                }
                m[(r, col)] = S::zero();
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self, tol: f64) -> (Mat<S>, Vec<usize>) {
        let cutoff = if S::EXACT {
            0.0
        } else {
            tol * self.max_abs().max(1e-300)
        };
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let mut best: Option<(usize, f64)> = None;
            for r in row..m.rows {
                let a = &m[(r, col)];
                if a.is_zero() {
                    continue;
                }
                let w = a.abs();
                if w > cutoff && best.map_or(true, |(_, bw)| w > bw) {
                    best = Some((r, w));
                }
            }
            let Some((piv, _)) = best else { continue };
            m.swap_rows(row, piv);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].mul(&inv);
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let sub = factor.mul(&m[(row, c)]);
                    m[(r, c)] = m[(r, c)].sub(&sub);
                }
                m[(r, col)] = S::zero();
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of {x : Mx = 0} from the reduced row echelon form.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref(tol);
        let mut basis = Vec::new();
        let mut piv_of_col = vec![None; self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            piv_of_col[pc] = Some(prow);
        }
        for free in 0..self.cols {
            if piv_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                v[pc] = r[(prow, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by Gaussian elimination with pivoting.
    pub fn det(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut best: Option<(usize, f64)> = None;
            for r in col..n {
                let a = &m[(r, col)];
                if a.is_zero() {
                    continue;
                }
                let w = a.abs();
                if best.map_or(true, |(_, bw)| w > bw) {
                    best = Some((r, w));
                }
            }
            let Some((piv, _)) = best else {
                return S::zero();
            };
            if piv != col {
                m.swap_rows(col, piv);
                det = det.neg();
            }
            det = det.mul(&m[(col, col)]);
            let inv = m[(col, col)].inv().expect("nonzero pivot");
            for r in (col + 1)..n {
                let factor = m[(r, col)].mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor.mul(&m[(col, c)]);
                    m[(r, c)] = m[(r, c)].sub(&sub);
                }
            }
        }
        det
    }

    /// Render in the plain-text exchange format: a `rows cols` header line,
    /// then row-major whitespace-separated entries (`p/q` exact, `(re,im)` float).
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let e = &self[(i, j)];
                    if S::EXACT {
                        format!("{e}")
                    } else {
                        format!("({},{})", e.re_f64(), e.im_f64())
                    }
                })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl Mat<CRational> {
    pub fn parse_text(text: &str) -> Result<Self> {
        parse_matrix_text(text, parse_exact_entry)
    }

    pub fn to_c64(&self) -> Mat<C64> {
        Mat::from_fn(self.rows, self.cols, |i, j| {
            let e = &self[(i, j)];
            C64::new(e.re_f64(), e.im_f64())
        })
    }
}

impl Mat<C64> {
    pub fn parse_text_float(text: &str) -> Result<Self> {
        parse_matrix_text(text, parse_float_entry)
    }
}

fn parse_matrix_text<S: Scalar>(text: &str, parse: impl Fn(&str) -> Result<S>) -> Result<Mat<S>> {
    let mut tokens = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.split_whitespace());
    let rows: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("empty matrix text".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad row count: {e}")))?;
    let cols: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("missing column count".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad column count: {e}")))?;
    let mut data = Vec::with_capacity(rows * cols);
    for tok in tokens {
        data.push(parse(tok)?);
    }
    if data.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {} entries, found {}",
            rows * cols,
            data.len()
        )));
    }
    Ok(Mat { rows, cols, data })
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Returns eigenvalues in descending order with matching orthonormal
/// eigenvector columns. Sizes here are ≤ a few hundred, where Jacobi is
/// both accurate and fully deterministic.
pub fn hermitian_eigen(h: &Mat<C64>) -> (Vec<f64>, Mat<C64>) {
    assert!(h.is_square());
    let n = h.rows();
    let mut a = h.clone();
    let mut v: Mat<C64> = Mat::identity(n);
    let scale = a.frobenius_norm().max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                // small-magnitude root of t² − 2τt − 1 = 0
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // columns: col_p ← c·col_p + s·conj(phase)·col_q,
                //          col_q ← −s·phase·col_p + c·col_q
                let sp = phase.scale(s);
                for r in 0..n {
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    a[(r, p)] = arp.scale(c) + arq * sp.conj();
                    a[(r, q)] = arq.scale(c) - arp * sp;
                }
                for cidx in 0..n {
                    let apc = a[(p, cidx)];
                    let aqc = a[(q, cidx)];
                    a[(p, cidx)] = apc.scale(c) + aqc * sp;
                    a[(q, cidx)] = aqc.scale(c) - apc * sp.conj();
                }
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = vrp.scale(c) + vrq * sp.conj();
                    v[(r, q)] = vrq.scale(c) - vrp * sp;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| evals[y].partial_cmp(&evals[x]).unwrap());
    let sorted: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let vecs = Mat::from_fn(n, n, |r, c| v[(r, order[c])]);
    (sorted, vecs)
}

/// Operator norm via the largest eigenvalue of A*A.
pub fn operator_norm(a: &Mat<C64>) -> f64 {
    let g = a.adjoint().mul(a);
    let (evals, _) = hermitian_eigen(&g);
    evals.first().copied().unwrap_or(0.0).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn q(n: i64, d: i64) -> CRational {
        CRational::from_ratio(n, d)
    }

    #[test]
    fn mul_and_kron_agree_with_hand_values() {
        let a = Mat::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(0, 1), q(1, 1)]]);
        let b = Mat::from_rows(vec![vec![q(1, 2), q(0, 1)], vec![q(1, 1), q(1, 1)]]);
        let ab = a.mul(&b);
        assert_eq!(ab[(0, 0)], q(5, 2));
        assert_eq!(ab[(0, 1)], q(2, 1));
        assert_eq!(ab[(1, 0)], q(1, 1));
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 0)], q(1, 2));
        assert_eq!(k[(0, 2)], q(1, 1));
        assert_eq!(k[(3, 3)], q(1, 1));
    }

    #[test]
    fn trace_of_product_matches_full_product() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let a = Mat::from_fn(5, 5, |_, _| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        let b = Mat::from_fn(5, 5, |_, _| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        let direct = a.mul(&b).trace();
        let lazy = a.trace_of_product(&b);
        assert!((direct - lazy).norm() < 1e-12);
    }

    #[test]
    fn exact_rank_rref_nullspace() {
        // rank-2 matrix with a 1-dim nullspace over the rationals
        let m = Mat::from_rows(vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1)],
            vec![q(0, 1), q(1, 1), q(1, 1)],
        ]);
        assert_eq!(m.rank(0.0), 2);
        let ns = m.nullspace(0.0);
        assert_eq!(ns.len(), 1);
        // check Mv = 0 exactly
        for i in 0..3 {
            let mut acc = CRational::zero();
            for j in 0..3 {
                acc = acc.add(&m[(i, j)].mul(&ns[0][j]));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn det_exact() {
        let m = Mat::from_rows(vec![
            vec![q(1, 2), q(1, 3)],
            vec![q(1, 5), q(1, 7)],
        ]);
        assert_eq!(m.det(), q(1, 14).sub(&q(1, 15)));
        let singular = Mat::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]);
        assert!(singular.det().is_zero());
    }

    #[test]
    fn hermitian_eigen_recovers_spectrum() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let n = 7;
        let b = Mat::from_fn(n, n, |_, _| {
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let h = b.adjoint().mul(&b); // Hermitian PSD
        let (evals, vecs) = hermitian_eigen(&h);
        // eigen residual ‖Hv − λv‖ per column
        for c in 0..n {
            let mut col = Mat::zeros(n, 1);
            for r in 0..n {
                col[(r, 0)] = vecs[(r, c)];
            }
            let hv = h.mul(&col);
            let lv = col.scale(&C64::new(evals[c], 0.0));
            assert!(hv.max_abs_diff(&lv) < 1e-10, "eigen residual too big");
        }
        // orthonormal columns
        let gram = vecs.adjoint().mul(&vecs);
        assert!(gram.max_abs_diff(&Mat::identity(n)) < 1e-10);
        // descending & PSD
        for w in evals.windows(2) {
            assert!(w[0] >= w[1] - 1e-12);
        }
        assert!(evals[n - 1] > -1e-10);
        // trace preserved
        let tr: f64 = evals.iter().sum();
        assert!((tr - h.trace().re).abs() < 1e-10);
    }

    #[test]
    fn operator_norm_known_values() {
        let m = Mat::from_rows(vec![
            vec![C64::new(0.0, 0.0), C64::new(0.5, 0.0)],
            vec![C64::new(-0.5, 0.0), C64::new(0.0, 0.0)],
        ]);
        assert!((operator_norm(&m) - 0.5).abs() < 1e-12);
        let id: Mat<C64> = Mat::identity(3);
        assert!((operator_norm(&id) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn text_roundtrip_exact() {
        let m = Mat::from_rows(vec![vec![q(1, 3), q(-2, 1)], vec![q(0, 1), q(5, 7)]]);
        let text = m.to_text();
        let back = Mat::parse_text(&text).unwrap();
        assert_eq!(m, back);
        assert!(Mat::parse_text("2 2\n1/2 1/3\n1/4").is_err());
    }
}
