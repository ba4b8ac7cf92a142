//! Jones projections inside M_n(ℂ)^{⊗k} and the Temperley-Lieb tower.
//!
//! The projection at position s is
//! e_s = I^{⊗(s−1)} ⊗ ρ ⊗ I^{⊗(k−s−1)},  ρ = (1/n) Σ_{i,j} e_{ij} ⊗ e_{ij},
//! with modulus β = n². Everything is verified on the matrix image: words are
//! evaluated as honest products in M_{n^k}, never by diagram rewriting.

use crate::error::{Error, Result};
use crate::haar::{self, AverageOptions, GroupFamily};
use crate::mat::Mat;
use crate::scalar::{C64, CRational, Scalar};
use crate::tensor::TensorOperator;
use serde::Serialize;
use std::fmt;

/// e_s at position 1 ≤ s ≤ k−1, together with its construction data.
#[derive(Clone, Debug)]
pub struct JonesProjection<S: Scalar> {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub op: TensorOperator<S>,
}

/// ρ = (1/n) Σ_{i,j} e_{ij} ⊗ e_{ij} as a two-leg matrix.
fn entangling_projection<S: Scalar>(n: usize) -> Mat<S> {
    let dim = n * n;
    let mut m = Mat::zeros(dim, dim);
    let inv_n = S::from_ratio(1, n as i64);
    for r in 0..n {
        for c in 0..n {
            m[(r * n + r, c * n + c)] = inv_n.clone();
        }
    }
    m
}

pub fn jones_projection<S: Scalar>(n: usize, k: usize, s: usize) -> Result<JonesProjection<S>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n = {n} < 2")));
    }
    if k < 2 || s < 1 || s > k - 1 {
        return Err(Error::IndexOutOfRange {
            what: "s",
            got: s,
            max: k.saturating_sub(1),
        });
    }
    // written entry-by-entry instead of through Kronecker chains: only n^k of
    // the n^{2k} entries are nonzero
    let dim = n.pow(k as u32);
    let pre = n.pow((s - 1) as u32);
    let post = n.pow((k - s - 1) as u32);
    let mut mat: Mat<S> = Mat::zeros(dim, dim);
    let inv_n = S::from_ratio(1, n as i64);
    for x in 0..pre {
        for r in 0..n {
            let row_hi = ((x * n + r) * n + r) * post;
            for c in 0..n {
                let col_hi = ((x * n + c) * n + c) * post;
                for y in 0..post {
                    mat[(row_hi + y, col_hi + y)] = inv_n.clone();
                }
            }
        }
    }
    Ok(JonesProjection {
        n,
        k,
        s,
        op: TensorOperator::new(n, k, mat)?,
    })
}

/// All of e_1 … e_{k−1} for one (n, k), built once and shared.
struct JonesFamily<S: Scalar> {
    n: usize,
    k: usize,
    e: Vec<TensorOperator<S>>,
}

impl<S: Scalar> JonesFamily<S> {
    fn new(n: usize, k: usize) -> Result<Self> {
        let e = (1..k)
            .map(|s| Ok(jones_projection::<S>(n, k, s)?.op))
            .collect::<Result<Vec<_>>>()?;
        Ok(JonesFamily { n, k, e })
    }

    fn at(&self, s: usize) -> &TensorOperator<S> {
        &self.e[s - 1]
    }
}

/// A word in the Jones normal form: a product of descending runs
/// (e_{i_1} e_{i_1−1} ⋯ e_{j_1}) ⋯ (e_{i_p} ⋯ e_{j_p}) with
/// i_1 < i_2 < ⋯, j_1 < j_2 < ⋯ and i_m ≥ j_m. The empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TlWord {
    runs: Vec<(usize, usize)>,
}

impl TlWord {
    pub fn empty() -> Self {
        TlWord { runs: Vec::new() }
    }

    pub fn new(runs: Vec<(usize, usize)>) -> Result<Self> {
        for w in runs.windows(2) {
            let ((i1, j1), (i2, j2)) = (w[0], w[1]);
            if i1 >= i2 || j1 >= j2 {
                return Err(Error::InvalidInput(format!(
                    "runs out of order: ({i1},{j1}) then ({i2},{j2})"
                )));
            }
        }
        for &(i, j) in &runs {
            if j < 1 || i < j {
                return Err(Error::InvalidInput(format!("bad run ({i},{j})")));
            }
        }
        Ok(TlWord { runs })
    }

    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    /// Letters of the word in product order.
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.runs.iter().flat_map(|&(i, j)| (j..=i).rev())
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(i, j)| i - j + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn max_letter(&self) -> usize {
        self.runs.last().map_or(0, |&(i, _)| i)
    }
}

impl fmt::Display for TlWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters().map(|s| format!("e{s}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All normal-form words on letters e_1 … e_{max_letter}, shortest first.
/// The unrestricted count is the Catalan number C_{max_letter+1}.
pub fn normal_words_on_letters(max_letter: usize, max_letters: Option<usize>) -> Vec<TlWord> {
    fn rec(
        max_letter: usize,
        cap: Option<usize>,
        min_i: usize,
        min_j: usize,
        used: usize,
        stack: &mut Vec<(usize, usize)>,
        out: &mut Vec<TlWord>,
    ) {
        for i in min_i..=max_letter {
            for j in min_j..=i {
                let run_len = i - j + 1;
                if let Some(c) = cap {
                    if used + run_len > c {
                        continue;
                    }
                }
                stack.push((i, j));
                out.push(TlWord { runs: stack.clone() });
                rec(max_letter, cap, i + 1, j + 1, used + run_len, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = vec![TlWord::empty()];
    if max_letter >= 1 {
        let mut stack = Vec::new();
        rec(max_letter, max_letters, 1, 1, 0, &mut stack, &mut out);
    }
    out.sort_by_key(|w| (w.len(), w.runs.clone()));
    out
}

/// Normal-form words on e_1 … e_{k−2} (the alphabet of the Markov check at
/// level k), up to `max_letters` letters; unrestricted count C_{k−1}.
pub fn enumerate_normal_words(k: usize, max_letters: Option<usize>) -> Result<Vec<TlWord>> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k = {k} < 2")));
    }
    Ok(normal_words_on_letters(k - 2, max_letters))
}

/// Evaluate the word as a matrix product of Jones projections in M_n^{⊗k}.
pub fn evaluate_word<S: Scalar>(w: &TlWord, n: usize, k: usize) -> Result<TensorOperator<S>> {
    let fam = JonesFamily::<S>::new(n, k)?;
    evaluate_with(&fam, w)
}

fn evaluate_with<S: Scalar>(fam: &JonesFamily<S>, w: &TlWord) -> Result<TensorOperator<S>> {
    if w.max_letter() > fam.k.saturating_sub(1) {
        return Err(Error::IndexOutOfRange {
            what: "word letter",
            got: w.max_letter(),
            max: fam.k - 1,
        });
    }
    let mut acc = TensorOperator::identity(fam.n, fam.k)?;
    for s in w.letters() {
        acc = acc.mul(fam.at(s))?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct TlRelationReport {
    pub n: usize,
    pub k: usize,
    pub beta: u64,
    pub backend: &'static str,
    /// max ‖e_s² − e_s‖ and ‖e_s* − e_s‖ over s
    pub idempotent_residual: f64,
    pub selfadjoint_residual: f64,
    /// max ‖e_s e_t − e_t e_s‖ over |s−t| ≥ 2
    pub commutation_residual: f64,
    /// max ‖β e_s e_t e_s − e_s‖ over |s−t| = 1
    pub jones_residual: f64,
    /// max |τ(e_s) − 1/β| over s
    pub trace_residual: f64,
    pub pairs_checked: usize,
    pub exact: bool,
    pub passed: bool,
}

/// Checks the three relation families (idempotent/self-adjoint, far
/// commutation, the modulus-β contraction) plus τ(e_s) = 1/β for all
/// positions at level k.
pub fn verify_tl_relations<S: Scalar>(n: usize, k: usize) -> Result<TlRelationReport> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k = {k} < 2")));
    }
    let fam = JonesFamily::<S>::new(n, k)?;
    let beta = S::from_i64((n * n) as i64);
    let inv_beta = S::from_ratio(1, (n * n) as i64);
    let mut idem: f64 = 0.0;
    let mut selfadj: f64 = 0.0;
    let mut comm: f64 = 0.0;
    let mut jones: f64 = 0.0;
    let mut trace: f64 = 0.0;
    let mut pairs = 0usize;
    for s in 1..k {
        let e = fam.at(s);
        idem = idem.max(e.mul(e)?.mat().max_abs_diff(e.mat()));
        selfadj = selfadj.max(e.adjoint().mat().max_abs_diff(e.mat()));
        let tau = crate::tensor::normalized_trace(e);
        trace = trace.max(tau.sub(&inv_beta).abs());
        pairs += 1;
    }
    for s in 1..k {
        for t in (s + 2)..k {
            let st = fam.at(s).mul(fam.at(t))?;
            let ts = fam.at(t).mul(fam.at(s))?;
            comm = comm.max(st.mat().max_abs_diff(ts.mat()));
            pairs += 1;
        }
    }
    for s in 1..k {
        for t in [s.wrapping_sub(1), s + 1] {
            if t < 1 || t > k - 1 {
                continue;
            }
            let ese = fam.at(s).mul(fam.at(t))?.mul(fam.at(s))?.scale(&beta);
            jones = jones.max(ese.mat().max_abs_diff(fam.at(s).mat()));
            pairs += 1;
        }
    }
    let worst = idem.max(selfadj).max(comm).max(jones).max(trace);
    Ok(TlRelationReport {
        n,
        k,
        beta: (n * n) as u64,
        backend: S::BACKEND,
        idempotent_residual: idem,
        selfadjoint_residual: selfadj,
        commutation_residual: comm,
        jones_residual: jones,
        trace_residual: trace,
        pairs_checked: pairs,
        exact: S::EXACT,
        passed: if S::EXACT { worst == 0.0 } else { worst <= 1e-10 },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkovRow {
    pub word: String,
    pub letters: usize,
    pub tau_w: String,
    pub tau_w_e: String,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkovReport {
    pub n: usize,
    pub k: usize,
    pub beta: u64,
    pub backend: &'static str,
    pub word_count: usize,
    pub max_residual: f64,
    pub exact: bool,
    pub passed: bool,
    pub rows: Vec<MarkovRow>,
}

/// Verifies τ(w e_{k−1}) = τ(w)/β for every normal-form word w on
/// e_1 … e_{k−2}, with τ the normalized trace and β = n².
pub fn markov_check<S: Scalar>(n: usize, k: usize) -> Result<MarkovReport> {
    if k < 3 {
        return Err(Error::InvalidInput(format!(
            "markov check needs k ≥ 3, got {k}"
        )));
    }
    let fam = JonesFamily::<S>::new(n, k)?;
    let words = enumerate_normal_words(k, None)?;
    let inv_beta = S::from_ratio(1, (n * n) as i64);
    let last = fam.at(k - 1);
    let mut rows = Vec::with_capacity(words.len());
    let mut max_residual: f64 = 0.0;
    for w in &words {
        let wm = evaluate_with(&fam, w)?;
        let tau_w = crate::tensor::normalized_trace(&wm);
        let dim = wm.dim() as i64;
        let tau_we = wm
            .mat()
            .trace_of_product(last.mat())
            .mul(&S::from_ratio(1, dim));
        let residual = tau_we.sub(&tau_w.mul(&inv_beta)).abs();
        max_residual = max_residual.max(residual);
        rows.push(MarkovRow {
            word: w.to_string(),
            letters: w.len(),
            tau_w: tau_w.to_string(),
            tau_w_e: tau_we.to_string(),
            residual,
        });
    }
    Ok(MarkovReport {
        n,
        k,
        beta: (n * n) as u64,
        backend: S::BACKEND,
        word_count: words.len(),
        max_residual,
        exact: S::EXACT,
        passed: if S::EXACT {
            max_residual == 0.0
        } else {
            max_residual <= 1e-10
        },
        rows,
    })
}

/// Dimension of the linear span of all products of Jones projections in
/// M_n^{⊗k}, computed as the rank of the Hilbert-Schmidt Gram matrix of the
/// normal-form word evaluations (words on e_1 … e_{k−1}).
///
/// The Gram rank equals the rank of the flattened evaluation matrix because
/// the Hilbert-Schmidt form is positive definite; the direct flattened rank
/// is kept as a test oracle.
pub fn tl_span_dimension<S: Scalar>(n: usize, k: usize) -> Result<usize> {
    if n < 2 || k < 2 || k > 6 {
        return Err(Error::InvalidInput(format!(
            "span dimension needs n ≥ 2 and 2 ≤ k ≤ 6, got ({n},{k})"
        )));
    }
    let fam = JonesFamily::<S>::new(n, k)?;
    let words = normal_words_on_letters(k - 1, None);
    let evals: Vec<TensorOperator<S>> = words
        .iter()
        .map(|w| evaluate_with(&fam, w))
        .collect::<Result<Vec<_>>>()?;
    let m = words.len();
    let gram = Mat::from_fn(m, m, |a, b| evals[a].mat().hs_inner(evals[b].mat()));
    Ok(gram.rank(1e-9))
}

#[derive(Clone, Debug, Serialize)]
pub struct ContrastReport {
    pub n: usize,
    pub k: usize,
    pub family: String,
    pub dim_tl: usize,
    pub dim_classical: usize,
    /// Whether every word evaluation sits inside the sampled fixed space.
    /// This holds for the orthogonal family (real entries commute with the
    /// entangling projections) and genuinely fails for the unitary one.
    pub contained: bool,
    /// worst relative residual of projecting a word evaluation onto the
    /// Monte Carlo fixed-space basis (limited by sampling noise)
    pub projection_residual: f64,
    /// worst ‖U^{⊗k} w − w U^{⊗k}‖ over fresh samples — the sharp
    /// containment check, independent of the estimated basis
    pub commutation_residual: f64,
    pub samples: usize,
    pub seed: u64,
    /// Containment is asserted only where it is a theorem (orthogonal family).
    pub passed: bool,
}

/// Compares the Temperley-Lieb span dimension with the Monte Carlo fixed-space
/// dimension of a classical group at the same (n, k), and checks that every
/// word evaluation lies in the classical fixed space.
pub fn quantum_vs_classical_contrast(
    n: usize,
    k: usize,
    family: GroupFamily,
    opts: &AverageOptions,
) -> Result<ContrastReport> {
    let dim_tl = tl_span_dimension::<CRational>(n, k)?;
    let fixed = haar::haar_average_fixed_space(&family, k, opts)?;
    let fam = JonesFamily::<CRational>::new(n, k)?;
    let words = normal_words_on_letters(k - 1, None);
    let mut proj_res: f64 = 0.0;
    let mut comm_res: f64 = 0.0;
    let mut rng = haar::seeded_rng(opts.seed ^ 0x5eed);
    let fresh: Vec<Mat<C64>> = (0..32)
        .map(|_| haar::sample_group(&family, &mut rng))
        .collect();
    for w in &words {
        let wc = evaluate_with(&fam, w)?.to_c64();
        proj_res = proj_res.max(haar::projection_residual(&fixed.basis, wc.mat()));
        for u in &fresh {
            let uk = u.kron_pow(k);
            let lhs = uk.mul(wc.mat());
            let rhs = wc.mat().mul(&uk);
            comm_res = comm_res.max(lhs.max_abs_diff(&rhs));
        }
    }
    let contained = dim_tl <= fixed.dimension && comm_res <= 1e-9;
    let containment_expected = matches!(family, GroupFamily::Orthogonal(_));
    Ok(ContrastReport {
        n,
        k,
        family: format!("{family}"),
        dim_tl,
        dim_classical: fixed.dimension,
        contained,
        projection_residual: proj_res,
        commutation_residual: comm_res,
        samples: opts.samples,
        seed: opts.seed,
        passed: !containment_expected || contained,
    })
}
