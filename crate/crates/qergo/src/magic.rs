//! The 4×4 magic unitary over two reflection projections.
//!
//! With u = diag(1, −1) and v(θ) the reflection by angle θ, the projections
//! p = (1−u)/2 and q = (1−v)/2 fill the block matrix
//!
//! ```text
//! [ p   1−p  0    0  ]
//! [ 1−p p    0    0  ]
//! [ 0   0    q   1−q ]
//! [ 0   0   1−q   q  ]
//! ```
//!
//! whose entries are projections with rows and columns summing to the
//! identity — a quantum permutation of four points. Alternating words in p, q
//! grow linearly in rank across an angle grid, which witnesses that the
//! algebra generated by two free order-two unitaries is infinite dimensional.

use crate::error::{Error, Result};
use crate::mat::{operator_norm, Mat};
use crate::rat::Rat;
use crate::scalar::{C64, CRational, Scalar};
use rand::Rng;
use serde::Serialize;

/// The generating pair p = (1−u)/2, q = (1−v(θ))/2 at angle θ.
#[derive(Clone, Debug)]
pub struct ProjectionPair {
    pub theta: f64,
    pub p: Mat<C64>,
    pub q: Mat<C64>,
}

impl ProjectionPair {
    pub fn new(theta: f64) -> Self {
        ProjectionPair {
            theta,
            p: projection_p(),
            q: projection_q(theta),
        }
    }

    /// The order-two unitary u = 1 − 2p = diag(1, −1).
    pub fn u(&self) -> Mat<C64> {
        reflect_of(&self.p)
    }

    /// The order-two unitary v(θ) = 1 − 2q.
    pub fn v(&self) -> Mat<C64> {
        reflect_of(&self.q)
    }
}

fn reflect_of(p: &Mat<C64>) -> Mat<C64> {
    let id: Mat<C64> = Mat::identity(p.rows());
    id.sub(&p.scale(&C64::new(2.0, 0.0)))
}

fn projection_p() -> Mat<C64> {
    Mat::from_rows(vec![
        vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
        vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
    ])
}

fn projection_q(theta: f64) -> Mat<C64> {
    let (c, s) = (theta.cos(), theta.sin());
    Mat::from_rows(vec![
        vec![C64::new((1.0 - c) / 2.0, 0.0), C64::new(-s / 2.0, 0.0)],
        vec![C64::new(-s / 2.0, 0.0), C64::new((1.0 + c) / 2.0, 0.0)],
    ])
}

/// A 4×4 array of d×d projection blocks with rows and columns summing to I_d.
#[derive(Clone, Debug)]
pub struct MagicUnitary<S: Scalar = C64> {
    entry_dim: usize,
    blocks: Vec<Mat<S>>, // row-major 4×4
}

impl<S: Scalar> MagicUnitary<S> {
    pub fn from_blocks(blocks: Vec<Mat<S>>) -> Result<Self> {
        if blocks.len() != 16 {
            return Err(Error::InvalidInput(format!(
                "need 16 blocks, got {}",
                blocks.len()
            )));
        }
        let d = blocks[0].rows();
        if blocks.iter().any(|b| b.rows() != d || b.cols() != d) {
            return Err(Error::DimensionMismatch(
                "all blocks must be square of one size".into(),
            ));
        }
        Ok(MagicUnitary {
            entry_dim: d,
            blocks,
        })
    }

    pub fn entry_dim(&self) -> usize {
        self.entry_dim
    }

    pub fn at(&self, i: usize, j: usize) -> &Mat<S> {
        &self.blocks[i * 4 + j]
    }

    pub fn set(&mut self, i: usize, j: usize, m: Mat<S>) {
        self.blocks[i * 4 + j] = m;
    }

    /// The identity pattern: I on the diagonal, 0 off it.
    pub fn identity_magic(entry_dim: usize) -> Self {
        let mut blocks = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                blocks.push(if i == j {
                    Mat::identity(entry_dim)
                } else {
                    Mat::zeros(entry_dim, entry_dim)
                });
            }
        }
        MagicUnitary {
            entry_dim,
            blocks,
        }
    }

    /// A classical permutation point: m_{ij} = [σ(j) = i] as 1×1 blocks.
    pub fn permutation(perm: [usize; 4]) -> Self {
        let mut blocks = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                blocks.push(if perm[j] == i {
                    Mat::identity(1)
                } else {
                    Mat::zeros(1, 1)
                });
            }
        }
        MagicUnitary {
            entry_dim: 1,
            blocks,
        }
    }
}

/// The θ-family block matrix with p on the upper 2×2 corner and q(θ) on the
/// lower one.
pub fn build_magic(theta: f64) -> MagicUnitary {
    let pair = ProjectionPair::new(theta);
    let id: Mat<C64> = Mat::identity(2);
    let zero: Mat<C64> = Mat::zeros(2, 2);
    let p = pair.p.clone();
    let pc = id.sub(&pair.p);
    let q = pair.q.clone();
    let qc = id.sub(&pair.q);
    MagicUnitary {
        entry_dim: 2,
        blocks: vec![
            p.clone(),
            pc.clone(),
            zero.clone(),
            zero.clone(),
            pc,
            p,
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            q.clone(),
            qc.clone(),
            zero.clone(),
            zero.clone(),
            qc,
            q,
        ],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MagicReport {
    pub entry_dim: usize,
    pub tol: f64,
    pub projection_residual: f64,
    pub selfadjoint_residual: f64,
    pub row_sum_residual: f64,
    pub col_sum_residual: f64,
    pub row_orthogonality_residual: f64,
    pub col_orthogonality_residual: f64,
    pub passed: bool,
}

/// Checks the quantum-permutation axioms: every entry is a self-adjoint
/// idempotent, rows and columns sum to the identity, and entries sharing a
/// row or column are mutually orthogonal.
pub fn verify_magic<S: Scalar>(m: &MagicUnitary<S>, tol: f64) -> MagicReport {
    let d = m.entry_dim;
    let id: Mat<S> = Mat::identity(d);
    let zero: Mat<S> = Mat::zeros(d, d);
    let mut proj: f64 = 0.0;
    let mut selfadj: f64 = 0.0;
    let mut row_sum: f64 = 0.0;
    let mut col_sum: f64 = 0.0;
    let mut row_orth: f64 = 0.0;
    let mut col_orth: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let e = m.at(i, j);
            proj = proj.max(e.mul(e).max_abs_diff(e));
            selfadj = selfadj.max(e.adjoint().max_abs_diff(e));
        }
    }
    for i in 0..4 {
        let mut rsum = zero.clone();
        let mut csum = zero.clone();
        for j in 0..4 {
            rsum = rsum.add(m.at(i, j));
            csum = csum.add(m.at(j, i));
        }
        row_sum = row_sum.max(rsum.max_abs_diff(&id));
        col_sum = col_sum.max(csum.max_abs_diff(&id));
    }
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                if j == l {
                    continue;
                }
                row_orth = row_orth.max(m.at(i, j).mul(m.at(i, l)).max_abs_diff(&zero));
                col_orth = col_orth.max(m.at(j, i).mul(m.at(l, i)).max_abs_diff(&zero));
            }
        }
    }
    let worst = proj
        .max(selfadj)
        .max(row_sum)
        .max(col_sum)
        .max(row_orth)
        .max(col_orth);
    MagicReport {
        entry_dim: d,
        tol,
        projection_residual: proj,
        selfadjoint_residual: selfadj,
        row_sum_residual: row_sum,
        col_sum_residual: col_sum,
        row_orthogonality_residual: row_orth,
        col_orthogonality_residual: col_orth,
        passed: if S::EXACT { worst == 0.0 } else { worst <= tol },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoactionReport {
    pub tol: f64,
    /// max over i,j,l of ‖α(δ_j)α(δ_l) − δ_{jl}α(δ_j)‖ componentwise
    pub homomorphism_residual: f64,
    /// ‖Σ_j α(δ_j) − 1⊗1‖
    pub unital_residual: f64,
    /// ‖α(δ_j)* − α(δ_j)‖
    pub selfadjoint_residual: f64,
    /// joint fixed-vector dimension of the 24 classical permutation points
    pub s4_fixed_dimension: usize,
    pub passed: bool,
}

/// With α(δ_j) = Σ_i δ_i ⊗ m_{ij}, verifies that α is a unital
/// *-homomorphism on the four-point function algebra, and that the classical
/// permutation points of the four-point action jointly fix only constants.
pub fn coaction_check<S: Scalar>(m: &MagicUnitary<S>, tol: f64) -> Result<CoactionReport> {
    let axioms = verify_magic(m, tol);
    if !axioms.passed {
        return Err(Error::InvalidInput(format!(
            "matrix fails the magic axioms (worst residual {:.3e})",
            axioms
                .projection_residual
                .max(axioms.row_sum_residual)
                .max(axioms.col_sum_residual)
        )));
    }
    let d = m.entry_dim;
    let id: Mat<S> = Mat::identity(d);
    let zero: Mat<S> = Mat::zeros(d, d);
    let mut hom: f64 = 0.0;
    let mut selfadj: f64 = 0.0;
    // α(δ_j)α(δ_l) is diagonal with i-component m_{ij} m_{il}
    for j in 0..4 {
        for l in 0..4 {
            for i in 0..4 {
                let prod = m.at(i, j).mul(m.at(i, l));
                let expect = if j == l { m.at(i, j).clone() } else { zero.clone() };
                hom = hom.max(prod.max_abs_diff(&expect));
            }
        }
        for i in 0..4 {
            selfadj = selfadj.max(m.at(i, j).adjoint().max_abs_diff(m.at(i, j)));
        }
    }
    let mut unital: f64 = 0.0;
    for i in 0..4 {
        let mut sum = zero.clone();
        for j in 0..4 {
            sum = sum.add(m.at(i, j));
        }
        unital = unital.max(sum.max_abs_diff(&id));
    }
    let s4_dim = permutation_fixed_dimension(&all_s4());
    Ok(CoactionReport {
        tol,
        homomorphism_residual: hom,
        unital_residual: unital,
        selfadjoint_residual: selfadj,
        s4_fixed_dimension: s4_dim,
        passed: hom.max(unital).max(selfadj) <= tol && s4_dim == 1,
    })
}

/// All 24 permutations of four points.
pub fn all_s4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut items = [0usize, 1, 2, 3];
    heap_permutations(&mut items, 4, &mut out);
    out.sort();
    out
}

fn heap_permutations(items: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == 1 {
        out.push(*items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// Dimension of the joint fixed space {x ∈ ℝ⁴ : Px = x for all listed
/// permutation matrices}, computed exactly over the rationals.
pub fn permutation_fixed_dimension(perms: &[[usize; 4]]) -> usize {
    use crate::scalar::CRational;
    let rows = perms.len() * 4;
    let mut constraints: Mat<CRational> = Mat::zeros(rows, 4);
    for (pi, perm) in perms.iter().enumerate() {
        for i in 0..4 {
            // (Px − x)_i = x_{σ⁻¹(i)} − x_i; using σ as a relabeling either
            // orientation spans the same constraint set
            let r = pi * 4 + i;
            constraints[(r, perm[i])] = CRational::one();
            let cur = constraints[(r, i)].clone();
            constraints[(r, i)] = cur.sub(&CRational::one());
        }
    }
    constraints.nullspace(0.0).len()
}

/// Φ-composition of two magic unitaries: N_{ij} = Σ_k m_{ik} ⊗ m'_{kj}.
/// The result is again magic, with entry dimension d·d'.
pub fn tensor_compose<S: Scalar>(m1: &MagicUnitary<S>, m2: &MagicUnitary<S>) -> MagicUnitary<S> {
    let d = m1.entry_dim * m2.entry_dim;
    let mut blocks = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            let mut sum: Mat<S> = Mat::zeros(d, d);
            for k in 0..4 {
                sum = sum.add(&m1.at(i, k).kron(m2.at(k, j)));
            }
            blocks.push(sum);
        }
    }
    MagicUnitary {
        entry_dim: d,
        blocks,
    }
}

/// The θ-family at an exact trigonometric-rational angle: cos θ and sin θ
/// given as rationals with cos² + sin² = 1 (Pythagorean data). On this
/// backend every magic residual is exactly zero.
pub fn build_magic_rational(
    cos: (i64, i64),
    sin: (i64, i64),
) -> Result<MagicUnitary<CRational>> {
    let c = Rat::ratio(cos.0, cos.1);
    let s = Rat::ratio(sin.0, sin.1);
    if c.mul(&c).add(&s.mul(&s)) != Rat::ONE {
        return Err(Error::InvalidInput(format!(
            "cos² + sin² ≠ 1 for ({}/{}, {}/{})",
            cos.0, cos.1, sin.0, sin.1
        )));
    }
    let half = Rat::ratio(1, 2);
    let re = |r: Rat| CRational::real(r);
    let p = Mat::from_rows(vec![
        vec![CRational::zero(), CRational::zero()],
        vec![CRational::zero(), CRational::one()],
    ]);
    let q = Mat::from_rows(vec![
        vec![
            re(Rat::ONE.sub(&c).mul(&half)),
            re(s.neg().mul(&half)),
        ],
        vec![
            re(s.neg().mul(&half)),
            re(Rat::ONE.add(&c).mul(&half)),
        ],
    ]);
    let id: Mat<CRational> = Mat::identity(2);
    let zero: Mat<CRational> = Mat::zeros(2, 2);
    let pc = id.sub(&p);
    let qc = id.sub(&q);
    MagicUnitary::from_blocks(vec![
        p.clone(),
        pc.clone(),
        zero.clone(),
        zero.clone(),
        pc,
        p,
        zero.clone(),
        zero.clone(),
        zero.clone(),
        zero.clone(),
        q.clone(),
        qc.clone(),
        zero.clone(),
        zero.clone(),
        qc,
        q,
    ])
}

/// ‖[p, q(θ)]‖ — zero exactly when θ ≡ 0 (mod π), |sin θ|/2 in general.
pub fn noncommutativity_witness(theta: f64) -> f64 {
    let pair = ProjectionPair::new(theta);
    let comm = pair.p.mul(&pair.q).sub(&pair.q.mul(&pair.p));
    operator_norm(&comm)
}

/// Alternating reduced words in {p, q} up to length `max_len`:
/// 1, p, q, pq, qp, pqp, qpq, …; there are 2L+1 of them.
pub fn alternating_words(max_len: usize) -> Vec<String> {
    let mut out = vec!["1".to_string()];
    for len in 1..=max_len {
        for start in ["p", "q"] {
            let mut w = String::new();
            for pos in 0..len {
                let even = pos % 2 == 0;
                w.push_str(if (start == "p") == even { "p" } else { "q" });
            }
            out.push(w);
        }
    }
    out
}

fn evaluate_alternating_word(word: &str, pair: &ProjectionPair) -> Mat<C64> {
    let mut acc: Mat<C64> = Mat::identity(2);
    if word == "1" {
        return acc;
    }
    for ch in word.chars() {
        acc = match ch {
            'p' => acc.mul(&pair.p),
            'q' => acc.mul(&pair.q),
            _ => unreachable!("alternating words contain only p and q"),
        };
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct WordRankReport {
    pub max_len: usize,
    pub expected: usize,
    pub rank: usize,
    pub grid_size: usize,
    pub seed: Option<u64>,
}

/// Evaluates every alternating reduced word of length ≤ L on the angle grid,
/// flattens the 2×2 values, and returns the rank of the resulting matrix.
/// Full rank 2L+1 is the linear-growth witness; a deficient grid errors with
/// the list of dependent words.
pub fn word_independence_rank(max_len: usize, grid: &[f64]) -> Result<WordRankReport> {
    if max_len < 1 {
        return Err(Error::InvalidInput("word length must be ≥ 1".into()));
    }
    if grid.len() < 4 * max_len {
        return Err(Error::InvalidInput(format!(
            "grid of {} angles is too small for words of length {max_len}; need ≥ {}",
            grid.len(),
            4 * max_len
        )));
    }
    let words = alternating_words(max_len);
    let pairs: Vec<ProjectionPair> = grid.iter().map(|&t| ProjectionPair::new(t)).collect();
    let cols = 4 * grid.len();
    let rows: Vec<Vec<f64>> = words
        .iter()
        .map(|w| {
            let mut row = Vec::with_capacity(cols);
            for pair in &pairs {
                let m = evaluate_alternating_word(w, pair);
                for i in 0..2 {
                    for j in 0..2 {
                        row.push(m[(i, j)].re);
                    }
                }
            }
            row
        })
        .collect();
    let (rank, dependent_rows) = row_rank_with_dependents(&rows, 1e-9);
    if rank < words.len() {
        return Err(Error::DegenerateGrid {
            rank,
            expected: words.len(),
            dependent: dependent_rows
                .into_iter()
                .map(|r| words[r].clone())
                .collect(),
        });
    }
    Ok(WordRankReport {
        max_len,
        expected: 2 * max_len + 1,
        rank,
        grid_size: grid.len(),
        seed: None,
    })
}

/// Seeded random grid of `count` distinct angles in (0, π).
pub fn random_angle_grid(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = crate::haar::seeded_rng(seed);
    (0..count)
        .map(|_| {
            let t: f64 = rng.gen();
            0.02 + t * (std::f64::consts::PI - 0.04)
        })
        .collect()
}

/// Row rank by elimination with partial pivoting; also reports which input
/// rows reduced to (numerical) zero against earlier ones.
fn row_rank_with_dependents(rows: &[Vec<f64>], tol: f64) -> (usize, Vec<usize>) {
    let mut reduced: Vec<(usize, Vec<f64>)> = Vec::new(); // (pivot col, row)
    let mut dependents = Vec::new();
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, &b| a.max(b.abs()))
        .max(1e-300);
    for (ri, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, prow) in &reduced {
            let factor = v[*pc] / prow[*pc];
            if factor != 0.0 {
                for (a, b) in v.iter_mut().zip(prow.iter()) {
                    *a -= factor * b;
                }
            }
        }
        let (mut best_col, mut best_val) = (0usize, 0.0f64);
        for (c, &x) in v.iter().enumerate() {
            if x.abs() > best_val {
                best_val = x.abs();
                best_col = c;
            }
        }
        if best_val <= tol * scale {
            dependents.push(ri);
        } else {
            reduced.push((best_col, v));
        }
    }
    (reduced.len(), dependents)
}
