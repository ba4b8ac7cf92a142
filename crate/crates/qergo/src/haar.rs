//! Monte Carlo Haar averaging onto classical fixed subspaces.
//!
//! For a compact matrix group G and level k, the fixed space
//! {b : U^{⊗k} b U^{*⊗k} = b for all U ∈ G} is estimated by averaging the
//! conjugation superoperator over Haar samples, sharpening the near-binary
//! spectrum by repeated squaring, and truncating at a relative singular-value
//! gap. Finite groups are averaged exactly by full enumeration.

use crate::error::{Error, Result};
use crate::mat::{hermitian_eigen, Mat};
use crate::scalar::C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::fmt;

/// The sampled group.
#[derive(Clone)]
pub enum GroupFamily {
    /// Real orthogonal matrices O(n), Haar distributed.
    Orthogonal(usize),
    /// Complex unitary matrices U(n), Haar distributed.
    Unitary(usize),
    /// Diagonal unitaries diag(e^{iθ_1}, …, e^{iθ_n}) with uniform phases.
    DiagonalTorus(usize),
    /// A finite set of unitaries, averaged exactly by full enumeration.
    Finite(Vec<Mat<C64>>),
}

impl GroupFamily {
    pub fn base_dim(&self) -> usize {
        match self {
            GroupFamily::Orthogonal(n)
            | GroupFamily::Unitary(n)
            | GroupFamily::DiagonalTorus(n) => *n,
            GroupFamily::Finite(ms) => ms.first().map_or(0, |m| m.rows()),
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Orthogonal(n) => write!(f, "O({n})"),
            GroupFamily::Unitary(n) => write!(f, "U({n})"),
            GroupFamily::DiagonalTorus(n) => write!(f, "T({n})"),
            GroupFamily::Finite(ms) => write!(f, "finite[{}]", ms.len()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AverageOptions {
    pub samples: usize,
    /// Number of repeated squarings applied to the averaged superoperator
    /// before the gap test; pushes non-fixed singular values from the Monte
    /// Carlo noise floor (~1/√samples) below the gap threshold.
    pub squarings: usize,
    /// Relative gap: rank r is the first index with σ_{r+1}/σ_r below this.
    pub gap_ratio: f64,
    pub seed: u64,
}

impl Default for AverageOptions {
    fn default() -> Self {
        AverageOptions {
            samples: 2000,
            squarings: 3,
            gap_ratio: 1e-4,
            seed: 1,
        }
    }
}

/// An orthonormal (Hilbert-Schmidt) basis of the estimated fixed subspace.
#[derive(Clone, Debug, Serialize)]
pub struct FixedSpace {
    pub n: usize,
    pub k: usize,
    pub family: String,
    pub dimension: usize,
    pub samples: usize,
    pub squarings: usize,
    pub gap_ratio: f64,
    pub seed: u64,
    /// Boosted singular values, descending.
    pub singular_values: Vec<f64>,
    #[serde(skip)]
    pub basis: Vec<Mat<C64>>,
}

pub fn seeded_rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha12Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-distributed real orthogonal matrix: QR of a real Ginibre matrix with
/// positive diagonal pivots.
pub fn sample_orthogonal(n: usize, rng: &mut ChaCha12Rng) -> Mat<C64> {
    let g = Mat::from_fn(n, n, |_, _| C64::new(gaussian(rng), 0.0));
    gram_schmidt_q(&g)
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with positive
/// real diagonal pivots.
pub fn sample_unitary(n: usize, rng: &mut ChaCha12Rng) -> Mat<C64> {
    let g = Mat::from_fn(n, n, |_, _| C64::new(gaussian(rng), gaussian(rng)));
    gram_schmidt_q(&g)
}

pub fn sample_diagonal_torus(n: usize, rng: &mut ChaCha12Rng) -> Mat<C64> {
    let phases: Vec<C64> = (0..n)
        .map(|_| {
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            C64::new(theta.cos(), theta.sin())
        })
        .collect();
    Mat::diag(phases)
}

pub fn sample_group(family: &GroupFamily, rng: &mut ChaCha12Rng) -> Mat<C64> {
    match family {
        GroupFamily::Orthogonal(n) => sample_orthogonal(*n, rng),
        GroupFamily::Unitary(n) => sample_unitary(*n, rng),
        GroupFamily::DiagonalTorus(n) => sample_diagonal_torus(*n, rng),
        GroupFamily::Finite(ms) => ms[rng.gen_range(0..ms.len())].clone(),
    }
}

/// Uniform complex entries centered at zero; generic operand for residual
/// checks.
pub fn random_complex_matrix(rows: usize, cols: usize, rng: &mut ChaCha12Rng) -> Mat<C64> {
    Mat::from_fn(rows, cols, |_, _| {
        C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    })
}

/// Modified Gram-Schmidt Q factor with each pivot normalized to positive
/// real, which makes the result Haar for Ginibre input.
fn gram_schmidt_q(g: &Mat<C64>) -> Mat<C64> {
    let n = g.rows();
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for prev in 0..j {
            let mut dot = C64::new(0.0, 0.0);
            for i in 0..n {
                dot += cols[prev][i].conj() * cols[j][i];
            }
            for i in 0..n {
                let s = dot * cols[prev][i];
                cols[j][i] -= s;
            }
        }
        // pivot r_jj = ⟨q_j_raw, g_j⟩ is made positive real by normalizing
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            cols[j][i] /= norm;
        }
    }
    Mat::from_fn(n, n, |i, j| cols[j][i])
}

/// Conjugation superoperator of Ad_{U^{⊗k}} on row-major vectorized matrices:
/// vec(AXA*) = (A ⊗ conj(A)) vec(X).
fn conjugation_superop(u: &Mat<C64>, k: usize) -> Mat<C64> {
    let uk = u.kron_pow(k);
    uk.kron(&uk.conj())
}

/// Estimate the fixed subspace of Ad_{U^{⊗k}} over the given group.
///
/// Errors with [`Error::NonConvergence`] when the boosted spectrum has no
/// relative gap at the configured ratio and is not the full space.
pub fn haar_average_fixed_space(
    family: &GroupFamily,
    k: usize,
    opts: &AverageOptions,
) -> Result<FixedSpace> {
    let n = family.base_dim();
    if n < 2 {
        return Err(Error::InvalidInput(
            "group family must act on dimension ≥ 2".into(),
        ));
    }
    let dim = n.pow(k as u32);
    let sdim = dim * dim;
    if sdim * sdim > 20_000_000 {
        return Err(Error::InvalidInput(format!(
            "superoperator too large at (n,k) = ({n},{k})"
        )));
    }
    let mut avg: Mat<C64> = Mat::zeros(sdim, sdim);
    let samples_used;
    match family {
        GroupFamily::Finite(ms) => {
            // exact average over the listed elements
            for m in ms {
                if m.rows() != n || m.cols() != n {
                    return Err(Error::DimensionMismatch(
                        "finite family members must share one dimension".into(),
                    ));
                }
                avg = avg.add(&conjugation_superop(m, k));
            }
            avg = avg.scale(&C64::new(1.0 / ms.len() as f64, 0.0));
            samples_used = ms.len();
        }
        _ => {
            let mut rng = seeded_rng(opts.seed);
            for _ in 0..opts.samples {
                let u = sample_group(family, &mut rng);
                avg = avg.add(&conjugation_superop(&u, k));
            }
            avg = avg.scale(&C64::new(1.0 / opts.samples as f64, 0.0));
            samples_used = opts.samples;
        }
    }
    let mut boosted = avg;
    for _ in 0..opts.squarings {
        boosted = boosted.mul(&boosted);
    }
    // singular values and right singular vectors from P*P
    let gram = boosted.adjoint().mul(&boosted);
    let (evals, vecs) = hermitian_eigen(&gram);
    let sigma: Vec<f64> = evals.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let mut rank = None;
    for r in 1..sigma.len() {
        if sigma[r] < opts.gap_ratio * sigma[r - 1] {
            rank = Some(r);
            break;
        }
    }
    let rank = match rank {
        Some(r) => r,
        None if sigma.last().copied().unwrap_or(0.0) >= 0.5 => sigma.len(),
        None => {
            return Err(Error::NonConvergence(format!(
                "no relative gap below {} in the boosted spectrum (σ range [{:.3e}, {:.3e}])",
                opts.gap_ratio,
                sigma.last().copied().unwrap_or(0.0),
                sigma.first().copied().unwrap_or(0.0),
            )))
        }
    };
    let basis: Vec<Mat<C64>> = (0..rank)
        .map(|c| Mat::from_fn(dim, dim, |i, j| vecs[(i * dim + j, c)]))
        .collect();
    Ok(FixedSpace {
        n,
        k,
        family: format!("{family}"),
        dimension: rank,
        samples: samples_used,
        squarings: opts.squarings,
        gap_ratio: opts.gap_ratio,
        seed: opts.seed,
        singular_values: sigma,
        basis,
    })
}

/// Relative residual of projecting `x` onto the span of an HS-orthonormal
/// basis: ‖x − Σ ⟨b,x⟩ b‖ / ‖x‖.
pub fn projection_residual(basis: &[Mat<C64>], x: &Mat<C64>) -> f64 {
    let norm = x.frobenius_norm();
    if norm == 0.0 {
        return 0.0;
    }
    let mut approx: Mat<C64> = Mat::zeros(x.rows(), x.cols());
    for b in basis {
        let c = b.hs_inner(x);
        approx = approx.add(&b.scale(&c));
    }
    x.sub(&approx).frobenius_norm() / norm
}
