//! Independent oracles for the integration tests.
//!
//! The planar-pairing calculus here recomputes Temperley-Lieb traces by loop
//! counting only — no matrices — so it shares no code path with the library
//! implementation it checks.

#![allow(dead_code)]

use num::{BigInt, BigRational, One};
use qergo::mat::Mat;
use qergo::scalar::{CRational, Scalar};
use qergo::tl::TlWord;

/// A planar (k,k)-diagram: a perfect matching on k top and k bottom points.
/// Points are numbered 0..2k with top i = i and bottom i = k + i.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    k: usize,
    partner: Vec<usize>,
}

impl Diagram {
    pub fn identity(k: usize) -> Self {
        let mut partner = vec![0; 2 * k];
        for i in 0..k {
            partner[i] = k + i;
            partner[k + i] = i;
        }
        Diagram { k, partner }
    }

    /// The cup-cap generator at position s (1-based): top s−1 ↔ top s,
    /// bottom s−1 ↔ bottom s, all other strands through.
    pub fn cup_cap(k: usize, s: usize) -> Self {
        assert!(s >= 1 && s < k);
        let mut d = Self::identity(k);
        let (a, b) = (s - 1, s);
        d.partner[a] = b;
        d.partner[b] = a;
        d.partner[k + a] = k + b;
        d.partner[k + b] = k + a;
        d
    }

    /// Glue self's bottom to other's top; returns the composed diagram and
    /// the number of closed middle loops (each worth a factor n).
    pub fn compose(&self, other: &Diagram) -> (Diagram, usize) {
        let k = self.k;
        assert_eq!(k, other.k);
        // nodes: 0..2k = self's points, 2k..4k = other's points
        // edges: the two pairings plus gluing self-bottom-m ↔ other-top-m
        let pairing_neighbor = |node: usize| -> usize {
            if node < 2 * k {
                self.partner[node]
            } else {
                2 * k + other.partner[node - 2 * k]
            }
        };
        let glue_neighbor = |node: usize| -> Option<usize> {
            if node >= k && node < 2 * k {
                Some(2 * k + (node - k)) // self bottom m → other top m
            } else if node >= 2 * k && node < 3 * k {
                Some(node - k) // other top m → self bottom m
            } else {
                None
            }
        };
        let is_boundary = |node: usize| node < k || node >= 3 * k;
        let mut seen = vec![false; 4 * k];
        let mut new_partner = vec![usize::MAX; 2 * k];
        let to_new = |node: usize| -> usize {
            if node < k {
                node // new top
            } else {
                k + (node - 3 * k) // new bottom
            }
        };
        // boundary-to-boundary paths give the composed pairing
        for start in (0..k).chain(3 * k..4 * k) {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut node = start;
            let mut came_by_glue = true; // first move must follow a pairing edge
            loop {
                let next = if came_by_glue {
                    pairing_neighbor(node)
                } else {
                    glue_neighbor(node).expect("interior nodes carry a glue edge")
                };
                seen[next] = true;
                if is_boundary(next) {
                    new_partner[to_new(start)] = to_new(next);
                    new_partner[to_new(next)] = to_new(start);
                    break;
                }
                came_by_glue = !came_by_glue;
                node = next;
            }
        }
        // whatever interior nodes remain lie on closed loops; each component
        // is a simple cycle alternating glue and pairing edges
        let mut loops = 0;
        for start in k..3 * k {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut node = start;
            let mut use_glue = true; // leave the start along its glue edge
            loop {
                seen[node] = true;
                let next = if use_glue {
                    glue_neighbor(node).expect("loop nodes are interior")
                } else {
                    pairing_neighbor(node)
                };
                use_glue = !use_glue;
                node = next;
                if node == start {
                    break;
                }
            }
        }
        (
            Diagram {
                k,
                partner: new_partner,
            },
            loops,
        )
    }

    /// Number of loops when top i is glued to bottom i (the trace closure).
    pub fn closure_loops(&self) -> usize {
        let k = self.k;
        let mut seen = vec![false; 2 * k];
        let mut loops = 0;
        for start in 0..2 * k {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut node = start;
            let mut use_pairing = true;
            loop {
                seen[node] = true;
                let next = if use_pairing {
                    self.partner[node]
                } else if node < k {
                    node + k // closure edge top i — bottom i
                } else {
                    node - k
                };
                use_pairing = !use_pairing;
                node = next;
                if node == start && use_pairing {
                    break;
                }
            }
        }
        loops
    }
}

/// τ(w) recomputed by loop counting: the word is (1/n)^l ∏ T_{U_s}, products
/// of diagram matrices contribute n per internal loop, and the normalized
/// trace contributes n^{closure − k}.
pub fn tau_oracle(word: &TlWord, n: usize, k: usize) -> BigRational {
    let mut diagram = Diagram::identity(k);
    let mut internal_loops = 0usize;
    let mut letters = 0usize;
    for s in word.letters() {
        let (next, loops) = diagram.compose(&Diagram::cup_cap(k, s));
        diagram = next;
        internal_loops += loops;
        letters += 1;
    }
    let exponent =
        internal_loops as i64 + diagram.closure_loops() as i64 - letters as i64 - k as i64;
    power_of(n as i64, exponent)
}

pub fn power_of(base: i64, exponent: i64) -> BigRational {
    let mut acc = BigRational::one();
    let step = if exponent >= 0 {
        BigRational::from_integer(BigInt::from(base))
    } else {
        BigRational::new(BigInt::one(), BigInt::from(base))
    };
    for _ in 0..exponent.unsigned_abs() {
        acc *= step.clone();
    }
    acc
}

/// Direct flattened-row rank of a family of operators over the exact field —
/// the brute-force counterpart of the Gram-based span dimension.
pub fn flattened_rank(ops: &[Mat<CRational>]) -> usize {
    let rows = ops.len();
    if rows == 0 {
        return 0;
    }
    let dim = ops[0].rows();
    let flat = Mat::from_fn(rows, dim * dim, |r, c| ops[r][(c / dim, c % dim)].clone());
    flat.rank(0.0)
}

/// Random small-rational matrix for exact-backend tests.
pub fn random_rational_matrix(
    dim: usize,
    rng: &mut impl rand::Rng,
) -> Mat<CRational> {
    Mat::from_fn(dim, dim, |_, _| {
        CRational::from_ratio(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=4))
    })
}
