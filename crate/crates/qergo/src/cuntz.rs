//! Symbolic word calculus for the relations of n isometries.
//!
//! Normal form: every element is a linear combination of words
//! S_{i_1} ⋯ S_{i_r} S*_{j_s} ⋯ S*_{j_1}, reduced with S*_a S_b = δ_{ab}·1.
//! The completeness relation Σ_k S_k S_k* = 1 is deliberately NOT used for
//! rewriting — it would collapse the word basis — and is instead verified at
//! the state level.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::tensor::{self, ClassicalPointReport, DensityFunctional, TensorOperator};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Default cap on r+s when expanding the generator substitution.
pub const DEFAULT_WORD_CAP: usize = 12;

/// The normal-form word S_I S*_J with I = (i_1 … i_r), J = (j_1 … j_s),
/// generator indices 1-based. Both empty is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuntzWord {
    pub raised: Vec<u8>,
    pub lowered: Vec<u8>,
}

impl CuntzWord {
    pub fn unit() -> Self {
        CuntzWord {
            raised: Vec::new(),
            lowered: Vec::new(),
        }
    }

    pub fn grading(&self) -> (usize, usize) {
        (self.raised.len(), self.lowered.len())
    }

    pub fn total_len(&self) -> usize {
        self.raised.len() + self.lowered.len()
    }

    pub fn is_unit(&self) -> bool {
        self.raised.is_empty() && self.lowered.is_empty()
    }
}

impl fmt::Display for CuntzWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self.raised.iter().map(|i| format!("S{i}")).collect();
        for j in self.lowered.iter().rev() {
            parts.push(format!("S{j}*"));
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite linear combination of normal-form words over n generators.
#[derive(Clone, Debug, PartialEq)]
pub struct CuntzElement<S: Scalar> {
    n: usize,
    terms: BTreeMap<CuntzWord, S>,
}

impl<S: Scalar> CuntzElement<S> {
    pub fn zero(n: usize) -> Self {
        CuntzElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        Self::from_word(n, CuntzWord::unit(), S::one())
    }

    /// The generator S_i (1-based).
    pub fn generator(n: usize, i: u8) -> Result<Self> {
        if i < 1 || i as usize > n {
            return Err(Error::IndexOutOfRange {
                what: "generator",
                got: i as usize,
                max: n,
            });
        }
        Ok(Self::from_word(
            n,
            CuntzWord {
                raised: vec![i],
                lowered: Vec::new(),
            },
            S::one(),
        ))
    }

    /// The adjoint generator S*_i (1-based).
    pub fn generator_star(n: usize, i: u8) -> Result<Self> {
        Ok(Self::generator(n, i)?.adjoint())
    }

    pub fn from_word(n: usize, w: CuntzWord, coeff: S) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(w, coeff);
        }
        CuntzElement { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CuntzWord, &S)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.total_len()).max().unwrap_or(0)
    }

    fn insert(&mut self, w: CuntzWord, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            None => {
                self.terms.insert(w, c);
            }
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(w, sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_n(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&S::one().neg()))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        CuntzElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.mul(c)))
                .collect(),
        }
    }

    /// Normal-form product. (S_I S*_J)(S_K S*_L) reduces by matching J
    /// against K prefix-wise: a mismatch kills the term, otherwise the
    /// leftover indices migrate to the longer side.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_n(rhs)?;
        let mut out = Self::zero(self.n);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let j = &w1.lowered;
                let k = &w2.raised;
                let m = j.len().min(k.len());
                if j[..m] != k[..m] {
                    continue;
                }
                let word = if j.len() <= k.len() {
                    // S*_J S_K = S_{K[s..]}
                    let mut raised = w1.raised.clone();
                    raised.extend_from_slice(&k[m..]);
                    CuntzWord {
                        raised,
                        lowered: w2.lowered.clone(),
                    }
                } else {
                    // S*_J S_K = (S_{J[t..]})*, then merge into rhs's lowered
                    let mut lowered = w2.lowered.clone();
                    lowered.extend_from_slice(&j[m..]);
                    CuntzWord {
                        raised: w1.raised.clone(),
                        lowered,
                    }
                };
                out.insert(word, c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Antilinear involution: (S_I S*_J)* = S_J S*_I with conjugated coefficients.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            out.insert(
                CuntzWord {
                    raised: w.lowered.clone(),
                    lowered: w.raised.clone(),
                },
                c.conj(),
            );
        }
        out
    }

    /// Split by word grading (r, s) = (|I|, |J|).
    pub fn grading_decompose(&self) -> BTreeMap<(usize, usize), CuntzElement<S>> {
        let mut out: BTreeMap<(usize, usize), CuntzElement<S>> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.grading())
                .or_insert_with(|| Self::zero(self.n))
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// Σ_k S_k S_k*, kept as an n-term element (never rewritten to 1).
    pub fn range_projection_sum(n: usize) -> Result<Self> {
        let mut out = Self::zero(n);
        for i in 1..=n as u8 {
            out.insert(
                CuntzWord {
                    raised: vec![i],
                    lowered: vec![i],
                },
                S::one(),
            );
        }
        Ok(out)
    }

    fn check_n(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!(
                "generator counts {} vs {}",
                self.n, rhs.n
            )));
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Display for CuntzElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})·{w}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// ω_Q: vanishes on words with |I| ≠ |J|; on balanced words it is the product
/// state value ∏_l Q_{i_l j_l}, i.e. the product functional applied to the
/// matrix-unit image e_{i_1 j_1} ⊗ ⋯ ⊗ e_{i_r j_r}.
pub fn quasi_free_state<S: Scalar>(
    q: &DensityFunctional<S>,
    x: &CuntzElement<S>,
) -> Result<S> {
    if q.dim() != x.n {
        return Err(Error::DimensionMismatch(format!(
            "Q is {}×{} but the element has {} generators",
            q.dim(),
            q.dim(),
            x.n
        )));
    }
    let mut acc = S::zero();
    for (w, c) in &x.terms {
        let (r, s) = w.grading();
        if r != s {
            continue;
        }
        let mut val = S::one();
        for (&i, &j) in w.raised.iter().zip(&w.lowered) {
            val = val.mul(&q.q()[(i as usize - 1, j as usize - 1)]);
        }
        acc = acc.add(&c.mul(&val));
    }
    Ok(acc)
}

/// The matrix-unit image e_{i_1 j_1} ⊗ ⋯ ⊗ e_{i_r j_r} of a balanced word.
pub fn matrix_unit_image<S: Scalar>(n: usize, w: &CuntzWord) -> Result<TensorOperator<S>> {
    let (r, s) = w.grading();
    if r != s || r == 0 {
        return Err(Error::InvalidInput(format!(
            "matrix-unit image needs a balanced non-unit word, got grading ({r},{s})"
        )));
    }
    let mut acc: Option<TensorOperator<S>> = None;
    for (&i, &j) in w.raised.iter().zip(&w.lowered) {
        let unit = tensor::matrix_unit::<S>(n, i as usize, j as usize)?;
        acc = Some(match acc {
            None => unit,
            Some(prev) => prev.tensor(&unit)?,
        });
    }
    Ok(acc.unwrap())
}

/// The substitution S_j ↦ Σ_i U_{ij} S_i extended as a *-endomorphism,
/// evaluated at the matrix U. Grading is preserved.
pub fn act_classical<S: Scalar>(
    u: &Mat<S>,
    x: &CuntzElement<S>,
    cap: usize,
) -> Result<CuntzElement<S>> {
    let n = x.n;
    if u.rows() != n || u.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "U is {}×{}, element has {n} generators",
            u.rows(),
            u.cols()
        )));
    }
    let too_long = x.max_word_len();
    if too_long > cap {
        return Err(Error::WordTooLong {
            got: too_long,
            cap,
        });
    }
    let mut out = CuntzElement::zero(n);
    for (w, c) in &x.terms {
        // expand Π_l (Σ_a U_{a i_l} S_a) · Π_m (Σ_b U_{b j_m} S_b)*
        let mut partial: Vec<(CuntzWord, S)> = vec![(CuntzWord::unit(), c.clone())];
        for &i in &w.raised {
            let mut next = Vec::with_capacity(partial.len() * n);
            for (pw, pc) in &partial {
                for a in 1..=n as u8 {
                    let coeff = pc.mul(&u[(a as usize - 1, i as usize - 1)]);
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut nw = pw.clone();
                    nw.raised.push(a);
                    next.push((nw, coeff));
                }
            }
            partial = next;
        }
        for &j in &w.lowered {
            let mut next = Vec::with_capacity(partial.len() * n);
            for (pw, pc) in &partial {
                for b in 1..=n as u8 {
                    let coeff = pc.mul(&u[(b as usize - 1, j as usize - 1)].conj());
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut nw = pw.clone();
                    nw.lowered.push(b);
                    next.push((nw, coeff));
                }
            }
            partial = next;
        }
        for (nw, nc) in partial {
            out.insert(nw, nc);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceRow {
    pub word: String,
    pub value: String,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub n: usize,
    pub backend: &'static str,
    pub tol: f64,
    pub classical_point: ClassicalPointReport,
    pub words_checked: usize,
    pub max_deviation: f64,
    pub passed: bool,
    /// Invariance is only decidable at classical evaluation points; the full
    /// quantum-group statement has no finite model.
    pub note: &'static str,
    pub worst_rows: Vec<InvarianceRow>,
}

/// Verifies ω_Q(α_U(x)) = ω_Q(x) over the sample words. Flags U when it fails
/// the classical-point relations; the check still runs so that negative
/// controls report both failures.
pub fn invariance_check<S: Scalar>(
    u: &Mat<S>,
    q: &DensityFunctional<S>,
    sample_words: &[CuntzElement<S>],
    tol: f64,
) -> Result<InvarianceReport> {
    let point = tensor::classical_point_check(u, q, tol);
    let mut max_dev: f64 = 0.0;
    let mut rows: Vec<InvarianceRow> = Vec::new();
    for x in sample_words {
        let before = quasi_free_state(q, x)?;
        let after = quasi_free_state(q, &act_classical(u, x, DEFAULT_WORD_CAP)?)?;
        let dev = after.sub(&before).abs();
        if dev > max_dev {
            max_dev = dev;
            rows.push(InvarianceRow {
                word: x.to_string(),
                value: before.to_string(),
                deviation: dev,
            });
        }
    }
    rows.reverse();
    rows.truncate(3);
    let cutoff = if S::EXACT { 0.0 } else { tol };
    Ok(InvarianceReport {
        n: q.dim(),
        backend: S::BACKEND,
        tol,
        words_checked: sample_words.len(),
        max_deviation: max_dev,
        passed: point.passes && max_dev <= cutoff,
        note: "invariance tested at classical evaluation points only",
        classical_point: point,
        worst_rows: rows,
    })
}

/// All normal-form words S_I S*_J with r + s ≤ max_len, as single-term elements.
pub fn words_up_to<S: Scalar>(n: usize, max_len: usize) -> Vec<CuntzElement<S>> {
    fn multi_indices(n: usize, len: usize) -> Vec<Vec<u8>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for rest in multi_indices(n, len - 1) {
            for i in 1..=n as u8 {
                let mut v = rest.clone();
                v.push(i);
                out.push(v);
            }
        }
        out
    }
    let mut out = Vec::new();
    for r in 0..=max_len {
        for s in 0..=(max_len - r) {
            for raised in multi_indices(n, r) {
                for lowered in multi_indices(n, s) {
                    out.push(CuntzElement::from_word(
                        n,
                        CuntzWord {
                            raised: raised.clone(),
                            lowered,
                        },
                        S::one(),
                    ));
                }
            }
        }
    }
    out
}

/// Parse a product of generators like `"S1 S2 S2* S1*"` (or `"1"`) into a
/// normal-form element by multiplying left to right.
pub fn parse_element<S: Scalar>(n: usize, text: &str) -> Result<CuntzElement<S>> {
    let mut acc = CuntzElement::unit(n);
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (body, star) = match tok.strip_suffix('*') {
            Some(b) => (b, true),
            None => (tok, false),
        };
        let idx: u8 = body
            .strip_prefix('S')
            .or_else(|| body.strip_prefix('s'))
            .ok_or_else(|| Error::Parse(format!("expected S<i> or S<i>*, got {tok:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad generator index in {tok:?}: {e}")))?;
        let gen = if star {
            CuntzElement::generator_star(n, idx)?
        } else {
            CuntzElement::generator(n, idx)?
        };
        acc = acc.mul(&gen)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CRational;

    type E = CuntzElement<CRational>;

    fn gen(i: u8) -> E {
        CuntzElement::generator(2, i).unwrap()
    }

    fn gen_star(i: u8) -> E {
        CuntzElement::generator_star(2, i).unwrap()
    }

    #[test]
    fn isometry_relations() {
        // S*_1 S_1 = 1, S*_1 S_2 = 0
        assert_eq!(gen_star(1).mul(&gen(1)).unwrap(), E::unit(2));
        assert!(gen_star(1).mul(&gen(2)).unwrap().is_zero());
    }

    #[test]
    fn two_step_reduction() {
        // (S_1 S*_2)(S_2 S*_1) = S_1 S*_1
        let a = gen(1).mul(&gen_star(2)).unwrap();
        let b = gen(2).mul(&gen_star(1)).unwrap();
        let prod = a.mul(&b).unwrap();
        let expect = gen(1).mul(&gen_star(1)).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn partial_prefix_reduction() {
        // S*_1 · S_1 S_2 = S_2 and (S_1 S_2)* · S_1 = S*_2
        let s12 = gen(1).mul(&gen(2)).unwrap();
        assert_eq!(gen_star(1).mul(&s12).unwrap(), gen(2));
        assert_eq!(s12.adjoint().mul(&gen(1)).unwrap(), gen_star(2));
    }

    #[test]
    fn adjoint_is_antimultiplicative_involution() {
        let x = gen(1).mul(&gen_star(2)).unwrap();
        let y = gen(2).mul(&gen(1)).unwrap().mul(&gen_star(1)).unwrap();
        let lhs = x.mul(&y).unwrap().adjoint();
        let rhs = y.adjoint().mul(&x.adjoint()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(x.adjoint().adjoint(), x);
        assert_eq!(gen(1).adjoint(), gen_star(1));
    }

    #[test]
    fn quasi_free_state_values() {
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let s1s1 = gen(1).mul(&gen_star(1)).unwrap();
        assert_eq!(
            quasi_free_state(&q, &s1s1).unwrap(),
            CRational::from_ratio(1, 3)
        );
        // unbalanced words vanish
        assert!(quasi_free_state(&q, &gen(1)).unwrap().is_zero());
        // Σ_k S_k S_k* has state value Σ Q_kk = 1 = ω(1)
        let half: DensityFunctional<CRational> = DensityFunctional::uniform(2).unwrap();
        let sum = E::range_projection_sum(2).unwrap();
        assert_eq!(quasi_free_state(&half, &sum).unwrap(), CRational::one());
        assert_eq!(
            quasi_free_state(&half, &E::unit(2)).unwrap(),
            CRational::one()
        );
    }

    #[test]
    fn state_matches_matrix_unit_image() {
        let qm = Mat::from_rows(vec![
            vec![CRational::from_ratio(1, 2), CRational::from_ratio(1, 4)],
            vec![CRational::from_ratio(1, 4), CRational::from_ratio(1, 2)],
        ]);
        let q = DensityFunctional::new(qm, 1e-10).unwrap();
        for x in words_up_to::<CRational>(2, 4) {
            let (w, _) = x.terms().next().unwrap();
            let (r, s) = w.grading();
            if r != s || r == 0 {
                continue;
            }
            let img = matrix_unit_image::<CRational>(2, w).unwrap();
            let via_tensor = q.product_functional(r, &img).unwrap();
            let direct = quasi_free_state(&q, &x).unwrap();
            assert_eq!(via_tensor, direct, "word {w}");
        }
    }

    #[test]
    fn classical_action_basics() {
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let id: Mat<CRational> = Mat::identity(2);
        let x = gen(1).mul(&gen_star(2)).unwrap();
        assert_eq!(act_classical(&id, &x, 12).unwrap(), x);
        // U = diag(i, −1): S_1 ↦ i S_1
        let u = Mat::diag(vec![CRational::i(), CRational::from_i64(-1)]);
        assert!(tensor::classical_point_check(&u, &q, 1e-10).passes);
        let moved = act_classical(&u, &gen(1), 12).unwrap();
        assert_eq!(moved, gen(1).scale(&CRational::i()));
        // grading preserved, unital
        let decomposed = moved.grading_decompose();
        assert_eq!(decomposed.len(), 1);
        assert!(decomposed.contains_key(&(1, 0)));
        assert_eq!(act_classical(&u, &E::unit(2), 12).unwrap(), E::unit(2));
    }

    #[test]
    fn classical_action_preserves_completeness_sum() {
        // Σ_k α_U(S_k S_k*) = Σ_k S_k S_k* for unitary U (expand, use U U* = I)
        let u = Mat::from_rows(vec![
            vec![CRational::from_ratio(3, 5), CRational::from_ratio(4, 5)],
            vec![CRational::from_ratio(-4, 5), CRational::from_ratio(3, 5)],
        ]);
        let sum = E::range_projection_sum(2).unwrap();
        assert_eq!(act_classical(&u, &sum, 12).unwrap(), sum);
    }

    #[test]
    fn classical_action_is_multiplicative() {
        let u = Mat::from_rows(vec![
            vec![CRational::from_ratio(3, 5), CRational::from_ratio(4, 5)],
            vec![CRational::from_ratio(-4, 5), CRational::from_ratio(3, 5)],
        ]);
        let x = gen(1).mul(&gen_star(2)).unwrap();
        let y = gen(2).mul(&gen_star(2)).unwrap();
        let lhs = act_classical(&u, &x.mul(&y).unwrap(), 12).unwrap();
        let rhs = act_classical(&u, &x, 12)
            .unwrap()
            .mul(&act_classical(&u, &y, 12).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // star preserved
        let star = act_classical(&u, &x.adjoint(), 12).unwrap();
        assert_eq!(star, act_classical(&u, &x, 12).unwrap().adjoint());
    }

    #[test]
    fn word_cap_is_enforced() {
        let u: Mat<CRational> = Mat::identity(2);
        let mut long = E::unit(2);
        for _ in 0..7 {
            long = long.mul(&gen(1)).unwrap();
        }
        assert!(matches!(
            act_classical(&u, &long, 6),
            Err(Error::WordTooLong { got: 7, cap: 6 })
        ));
        assert!(act_classical(&u, &long, 12).is_ok());
    }

    #[test]
    fn grading_decompose_examples() {
        let x = gen(1)
            .add(&gen(1).mul(&gen_star(2)).unwrap())
            .unwrap();
        let parts = x.grading_decompose();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&(1, 0)], gen(1));
        assert_eq!(parts[&(1, 1)], gen(1).mul(&gen_star(2)).unwrap());
        let unit_parts = E::unit(2).grading_decompose();
        assert_eq!(unit_parts.len(), 1);
        assert!(unit_parts.contains_key(&(0, 0)));
    }

    #[test]
    fn invariance_negative_control() {
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let swap = Mat::from_rows(vec![
            vec![CRational::zero(), CRational::one()],
            vec![CRational::one(), CRational::zero()],
        ]);
        let words = words_up_to::<CRational>(2, 2);
        let rep = invariance_check(&swap, &q, &words, 1e-10).unwrap();
        assert!(!rep.passed);
        assert!(!rep.classical_point.passes);
        // ω(S_1 S*_1) moves from 1/3 to 2/3
        assert!(rep.max_deviation >= 1.0 / 3.0 - 1e-12);
    }

    #[test]
    fn invariance_at_diagonal_points() {
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let u = Mat::diag(vec![CRational::i(), CRational::i().neg()]);
        let words = words_up_to::<CRational>(2, 3);
        let rep = invariance_check(&u, &q, &words, 1e-10).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.max_deviation, 0.0);
    }

    #[test]
    fn gram_matrix_of_state_is_positive_semidefinite() {
        // ω_Q is a state: the Gram matrix ⟨x,y⟩ = ω_Q(x*y) over a word basis
        // is PSD (checked through the floating eigensolver)
        use crate::mat::hermitian_eigen;
        let q: DensityFunctional<CRational> =
            DensityFunctional::diagonal_from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let words = words_up_to::<CRational>(2, 3);
        let m = words.len();
        let gram = Mat::from_fn(m, m, |a, b| {
            let v = quasi_free_state(&q, &words[a].adjoint().mul(&words[b]).unwrap()).unwrap();
            crate::scalar::C64::new(v.re_f64(), v.im_f64())
        });
        assert!(gram.adjoint().max_abs_diff(&gram) < 1e-12);
        let (evals, _) = hermitian_eigen(&gram);
        assert!(evals[0] >= 1.0 - 1e-9); // ω(1·1) = 1 sits on the diagonal
        assert!(
            *evals.last().unwrap() >= -1e-10,
            "Gram not PSD: min eigenvalue {}",
            evals.last().unwrap()
        );
    }

    #[test]
    fn parse_and_display_words() {
        let x: E = parse_element(2, "S1 S2 S2* S1*").unwrap();
        let direct = gen(1)
            .mul(&gen(2))
            .unwrap()
            .mul(&gen_star(2))
            .unwrap()
            .mul(&gen_star(1))
            .unwrap();
        assert_eq!(x, direct);
        let (w, _) = x.terms().next().unwrap();
        assert_eq!(w.to_string(), "S1 S2 S2* S1*");
        // parsing reduces to normal form
        let reduced: E = parse_element(2, "S1* S1").unwrap();
        assert_eq!(reduced, E::unit(2));
        assert_eq!(parse_element::<CRational>(2, "1").unwrap(), E::unit(2));
        assert!(parse_element::<CRational>(2, "S3").is_err());
        assert!(parse_element::<CRational>(2, "T1").is_err());
    }
}
