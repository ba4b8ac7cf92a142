//! Cross-checks the matrix evaluation of Temperley-Lieb words against the
//! independent planar loop-counting oracle, and the Gram-based span
//! dimension against the direct flattened rank.

mod support;

use num::BigRational;
use qergo::scalar::CRational;
use qergo::tensor::normalized_trace;
use qergo::tl::{
    evaluate_word, markov_check, normal_words_on_letters, tl_span_dimension, TlWord,
};
use support::{flattened_rank, power_of, tau_oracle};

fn tau_matrix(word: &TlWord, n: usize, k: usize) -> BigRational {
    let op = evaluate_word::<CRational>(word, n, k).unwrap();
    let tau = normalized_trace(&op);
    assert!(tau.im.is_zero(), "trace of a TL word is real");
    tau.re.to_big()
}

#[test]
fn oracle_agrees_with_matrix_traces() {
    for n in [2usize, 3] {
        for k in 2..=5 {
            for w in normal_words_on_letters(k - 1, None) {
                assert_eq!(
                    tau_matrix(&w, n, k),
                    tau_oracle(&w, n, k),
                    "τ mismatch at (n,k) = ({n},{k}), word {w}"
                );
            }
        }
    }
}

#[test]
fn oracle_agrees_on_markov_products() {
    // τ(w e_{k−1}) computed by matrices equals the oracle on w extended
    for n in [2usize, 3] {
        for k in 3..=5 {
            for w in normal_words_on_letters(k - 2, None) {
                let mut runs = w.runs().to_vec();
                runs.push((k - 1, k - 1));
                let extended = TlWord::new(runs).unwrap();
                assert_eq!(
                    tau_matrix(&extended, n, k),
                    tau_oracle(&extended, n, k),
                    "(n,k) = ({n},{k}), word {extended}"
                );
                // and the Markov identity itself, by the oracle alone
                assert_eq!(
                    tau_oracle(&extended, n, k),
                    tau_oracle(&w, n, k) * power_of((n * n) as i64, -1),
                );
            }
        }
    }
}

#[test]
fn frozen_trace_values() {
    // τ(e₁e₂) at (2,3) and (3,3)
    let w = TlWord::new(vec![(1, 1), (2, 2)]).unwrap();
    assert_eq!(tau_oracle(&w, 2, 3), power_of(2, -4));
    assert_eq!(tau_matrix(&w, 2, 3), power_of(2, -4));
    assert_eq!(tau_oracle(&w, 3, 3), power_of(3, -4));
    // τ(e_s) = 1/n² regardless of position and level
    for n in [2usize, 3] {
        for k in 2..=5 {
            for s in 1..k {
                let w = TlWord::new(vec![(s, s)]).unwrap();
                assert_eq!(tau_oracle(&w, n, k), power_of(n as i64, -2));
            }
        }
    }
}

#[test]
fn markov_report_agrees_with_oracle_rows() {
    let rep = markov_check::<CRational>(2, 4).unwrap();
    for row in &rep.rows {
        assert_eq!(row.residual, 0.0);
    }
    assert_eq!(rep.word_count, 5);
}

#[test]
fn gram_rank_equals_flattened_rank() {
    for (n, k) in [(2usize, 2usize), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let words = normal_words_on_letters(k - 1, None);
        let evals: Vec<_> = words
            .iter()
            .map(|w| evaluate_word::<CRational>(w, n, k).unwrap().into_mat())
            .collect();
        let direct = flattened_rank(&evals);
        let via_gram = tl_span_dimension::<CRational>(n, k).unwrap();
        assert_eq!(direct, via_gram, "(n,k) = ({n},{k})");
    }
}

#[test]
fn span_dimension_monotone_in_k() {
    let mut prev = 0;
    for k in 2..=5 {
        let d = tl_span_dimension::<CRational>(2, k).unwrap();
        assert!(d >= prev);
        prev = d;
    }
}
