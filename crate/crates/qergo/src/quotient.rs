//! Coset quotient spaces of finite groups, computed exactly.
//!
//! For a subgroup H ≤ G with restriction map θ: C(G) → C(H), the subgroup
//! coaction is β(f)(h, g) = f(hg). Its fixed algebra consists of the
//! functions constant on right cosets Hg; E(f)(g) = (1/|H|) Σ_h f(hg) is the
//! conditional expectation onto it, the right-translation action on the
//! fixed algebra is ergodic, and the Haar state factors through E. All of
//! this is verified in exact rational arithmetic.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::{CRational, Scalar};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// A finite group presented by its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates the table as a group law: closure is structural, and
    /// associativity, identity, and inverses are checked exhaustively.
    pub fn new(name: impl Into<String>, mult: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &mult {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("table is not N×N over 0..N".into()));
            }
        }
        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|g| mult[e][g] == g && mult[g][e] == g) {
                identity = Some(e);
                break;
            }
        }
        let identity =
            identity.ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| mult[g][h] == identity && mult[h][g] == identity) {
                Some(h) => inverse[g] = h,
                None => {
                    return Err(Error::InvalidGroup(format!("element {g} has no inverse")))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
        if labels.len() != n {
            return Err(Error::InvalidGroup("label count mismatch".into()));
        }
        Ok(FiniteGroup {
            name: name.into(),
            mult,
            inverse,
            identity,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    /// The cyclic group ℤ/m.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let mult = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        let labels = (0..m).map(|i| format!("{i}")).collect();
        Self::new(format!("Z{m}"), mult, Some(labels))
    }

    /// The dihedral group of order 2m (symmetries of the m-gon).
    pub fn dihedral(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidGroup("dihedral needs m ≥ 2".into()));
        }
        // element 2i = rotation r^i, element 2i+1 = reflection r^i s
        let n = 2 * m;
        let idx = |rot: usize, refl: bool| 2 * rot + refl as usize;
        let mut mult = vec![vec![0usize; n]; n];
        for i in 0..m {
            for fi in [false, true] {
                for j in 0..m {
                    for fj in [false, true] {
                        // (r^i s^fi)(r^j s^fj): move s past r^j with s r = r^{-1} s
                        let rot = if fi { (i + m - j % m) % m } else { (i + j) % m };
                        mult[idx(i, fi)][idx(j, fj)] = idx(rot, fi ^ fj);
                    }
                }
            }
        }
        let labels = (0..n)
            .map(|e| {
                let (rot, refl) = (e / 2, e % 2 == 1);
                if refl {
                    format!("r{rot}s")
                } else {
                    format!("r{rot}")
                }
            })
            .collect();
        Self::new(format!("D{m}"), mult, Some(labels))
    }

    /// The symmetric group S_m for m ≤ 5, elements ordered lexicographically
    /// by image tuple; composition (στ)(x) = σ(τ(x)).
    pub fn symmetric(m: usize) -> Result<Self> {
        if m == 0 || m > 5 {
            return Err(Error::InvalidGroup(format!(
                "symmetric group supported for 1 ≤ m ≤ 5, got {m}"
            )));
        }
        let perms = all_permutations(m);
        let index_of = |p: &[usize]| perms.binary_search_by(|c| c.as_slice().cmp(p)).unwrap();
        let n = perms.len();
        let mut mult = vec![vec![0usize; n]; n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..m).map(|x| pa[pb[x]]).collect();
                mult[a][b] = index_of(&composed);
            }
        }
        let labels = perms
            .iter()
            .map(|p| {
                let images: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
                format!("[{}]", images.join(""))
            })
            .collect();
        Self::new(format!("S{m}"), mult, Some(labels))
    }

    /// Look up a permutation of S_m by its image tuple (0-based).
    pub fn permutation_index(&self, images: &[usize]) -> Option<usize> {
        let target = format!(
            "[{}]",
            images
                .iter()
                .map(|x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join("")
        );
        self.labels.iter().position(|l| l == &target)
    }

    /// Parses the text table format: first line N, then N lines of N indices.
    pub fn from_table_text(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(|l| l.split_whitespace());
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty group table".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad order: {e}")))?;
        let mut flat = Vec::with_capacity(n * n);
        for tok in tokens {
            flat.push(
                tok.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad index {tok:?}: {e}")))?,
            );
        }
        if flat.len() != n * n {
            return Err(Error::Parse(format!(
                "expected {} table entries, found {}",
                n * n,
                flat.len()
            )));
        }
        let mult = flat.chunks(n).map(|c| c.to_vec()).collect();
        Self::new(name, mult, None)
    }

    pub fn to_table_text(&self) -> String {
        let n = self.order();
        let mut s = format!("{n}\n");
        for a in 0..n {
            let row: Vec<String> = (0..n).map(|b| self.mult[a][b].to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, remaining: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..remaining.len() {
            let x = remaining.remove(i);
            prefix.push(x);
            rec(prefix, remaining, out);
            prefix.pop();
            remaining.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..m).collect(), &mut out);
    out.sort();
    out
}

/// A subgroup H ≤ G given by parent element indices, together with the
/// restriction surjection θ: C(G) → C(H).
#[derive(Clone, Debug)]
pub struct QuotientPair {
    group: FiniteGroup,
    subgroup: Vec<usize>,
}

impl QuotientPair {
    pub fn new(group: FiniteGroup, subgroup_elements: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = subgroup_elements.iter().copied().collect();
        if set.is_empty() || set.iter().any(|&g| g >= group.order()) {
            return Err(Error::InvalidGroup(
                "subgroup elements out of range or empty".into(),
            ));
        }
        if !set.contains(&group.identity()) {
            return Err(Error::InvalidGroup("subgroup misses the identity".into()));
        }
        for &a in &set {
            if !set.contains(&group.inv(a)) {
                return Err(Error::InvalidGroup(format!(
                    "subgroup not closed under inverse at {a}"
                )));
            }
            for &b in &set {
                if !set.contains(&group.mul(a, b)) {
                    return Err(Error::InvalidGroup(format!(
                        "subgroup not closed under product at ({a},{b})"
                    )));
                }
            }
        }
        Ok(QuotientPair {
            group,
            subgroup: set.into_iter().collect(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup_elements(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.subgroup.len()
    }

    /// θ: restriction of a function on G to H.
    pub fn theta(&self, f: &[CRational]) -> Vec<CRational> {
        self.subgroup.iter().map(|&h| f[h].clone()).collect()
    }

    /// Verifies that θ intertwines the coproducts: (θ⊗θ)Φ_G = Φ_H θ on a
    /// full basis. Holds structurally because H embeds as a subgroup; checked
    /// exhaustively anyway.
    pub fn theta_intertwines_coproducts(&self) -> bool {
        let g = &self.group;
        for base in 0..g.order() {
            let f = delta(g.order(), base);
            // (θ⊗θ)Φ_G(f)(a,b) = f(ab) for a,b ∈ H
            for (ai, &a) in self.subgroup.iter().enumerate() {
                for (bi, &b) in self.subgroup.iter().enumerate() {
                    let lhs = f[g.mul(a, b)].clone();
                    // Φ_H(θf)(a,b) = θf(a·b), same product since H is closed
                    let theta_f = self.theta(&f);
                    let prod_in_h = self
                        .subgroup
                        .iter()
                        .position(|&x| x == g.mul(self.subgroup[ai], self.subgroup[bi]))
                        .expect("closed");
                    if lhs != theta_f[prod_in_h] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The indicator basis vector δ_g.
pub fn delta(order: usize, g: usize) -> Vec<CRational> {
    let mut v = vec![CRational::zero(); order];
    v[g] = CRational::one();
    v
}

/// Haar state: h_G(f) = (1/|G|) Σ_g f(g).
pub fn haar_state(group: &FiniteGroup, f: &[CRational]) -> CRational {
    let mut acc = CRational::zero();
    for x in f {
        acc = acc.add(x);
    }
    acc.mul(&CRational::from_ratio(1, group.order() as i64))
}

/// β(f)(h, g) = f(hg) as an |H| × |G| matrix over exact rationals.
pub fn subgroup_coaction(pair: &QuotientPair, f: &[CRational]) -> Result<Mat<CRational>> {
    let g = pair.group();
    if f.len() != g.order() {
        return Err(Error::DimensionMismatch(format!(
            "function has {} entries, group order {}",
            f.len(),
            g.order()
        )));
    }
    Ok(Mat::from_fn(pair.subgroup_order(), g.order(), |hi, gi| {
        f[g.mul(pair.subgroup_elements()[hi], gi)].clone()
    }))
}

/// The fixed algebra of β: functions with f(hg) = f(g), i.e. constant on
/// right cosets Hg.
#[derive(Clone, Debug, Serialize)]
pub struct FixedAlgebra {
    pub dimension: usize,
    /// Basis functions (row per basis vector, rendered exactly).
    #[serde(skip)]
    pub basis: Vec<Vec<CRational>>,
    /// True when every basis vector is a 0/1 coset indicator.
    pub basis_is_indicators: bool,
}

/// Solves the linear system β(a) = 1 ⊗ a exactly; the reduced nullspace
/// basis comes out as the right-coset indicator functions.
pub fn fixed_algebra(pair: &QuotientPair) -> FixedAlgebra {
    let g = pair.group();
    let n = g.order();
    let rows = pair.subgroup_order() * n;
    // constraint per (h, g): a(hg) − a(g) = 0
    let mut system: Mat<CRational> = Mat::zeros(rows, n);
    for (hi, &h) in pair.subgroup_elements().iter().enumerate() {
        for gi in 0..n {
            let r = hi * n + gi;
            let hg = g.mul(h, gi);
            if hg == gi {
                continue;
            }
            system[(r, hg)] = CRational::one();
            system[(r, gi)] = CRational::one().neg();
        }
    }
    let basis = system.nullspace(0.0);
    let one = CRational::one();
    let indicators = basis
        .iter()
        .all(|v| v.iter().all(|x| x.is_zero() || *x == one));
    FixedAlgebra {
        dimension: basis.len(),
        basis,
        basis_is_indicators: indicators,
    }
}

/// E(f)(g) = (1/|H|) Σ_{h∈H} f(hg), the conditional expectation onto the
/// fixed algebra.
pub fn projection_e(pair: &QuotientPair, f: &[CRational]) -> Result<Vec<CRational>> {
    let g = pair.group();
    if f.len() != g.order() {
        return Err(Error::DimensionMismatch(format!(
            "function has {} entries, group order {}",
            f.len(),
            g.order()
        )));
    }
    let inv_h = CRational::from_ratio(1, pair.subgroup_order() as i64);
    Ok((0..g.order())
        .map(|gi| {
            let mut acc = CRational::zero();
            for &h in pair.subgroup_elements() {
                acc = acc.add(&f[g.mul(h, gi)]);
            }
            acc.mul(&inv_h)
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ErgodicityReport {
    pub group: String,
    pub subgroup_order: usize,
    pub index: usize,
    pub fixed_dimension: usize,
    /// Dimension of {a ∈ C(H\G) : a(gg') = a(g) for all g'}; 1 means ergodic.
    pub invariant_dimension: usize,
    pub ergodic: bool,
}

/// Restricts the right-translation coaction to the fixed algebra and solves
/// α(a) = a ⊗ 1 exactly.
pub fn ergodicity_check(pair: &QuotientPair) -> ErgodicityReport {
    let g = pair.group();
    let n = g.order();
    let fixed = fixed_algebra(pair);
    let dim = fixed.dimension;
    // unknowns: coefficients over the fixed basis; constraints over (g, g')
    let mut system: Mat<CRational> = Mat::zeros(n * n, dim);
    for gi in 0..n {
        for gj in 0..n {
            let r = gi * n + gj;
            for (c, b) in fixed.basis.iter().enumerate() {
                system[(r, c)] = b[g.mul(gi, gj)].sub(&b[gi]);
            }
        }
    }
    let solutions = system.nullspace(0.0).len();
    ErgodicityReport {
        group: g.name().to_string(),
        subgroup_order: pair.subgroup_order(),
        index: pair.index(),
        fixed_dimension: dim,
        invariant_dimension: solutions,
        ergodic: solutions == 1,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegrationReport {
    pub group: String,
    pub subgroup_order: usize,
    pub index: usize,
    /// h_G(δ_g) = ω(E(δ_g)) for every basis element, exactly.
    pub integration_formula_exact: bool,
    /// (ω ⊗ id)α(a) = ω(a)·1 for every fixed-algebra basis element, exactly.
    pub omega_invariant: bool,
    /// E∘E = E, E(1) = 1, and E of nonnegative basis functions nonnegative.
    pub e_idempotent: bool,
    pub e_unital: bool,
    pub e_positive_on_basis: bool,
    /// sup-norm of E(δ_g) never exceeds that of δ_g (norm-one shadow).
    pub e_contractive_on_basis: bool,
    pub passed: bool,
}

/// Exact verification of the integration formula h_G = ω ∘ E together with
/// the projection properties of E and the invariance of ω.
pub fn integration_formula_check(pair: &QuotientPair) -> Result<IntegrationReport> {
    let g = pair.group();
    let n = g.order();
    let mut formula_ok = true;
    let mut idempotent_ok = true;
    let mut positive_ok = true;
    let mut contractive_ok = true;
    for gi in 0..n {
        let f = delta(n, gi);
        let ef = projection_e(pair, &f)?;
        // ω is the restriction of h_G to the fixed algebra, and E(f) is fixed
        let lhs = haar_state(g, &f);
        let rhs = haar_state(g, &ef);
        formula_ok &= lhs == rhs;
        let eef = projection_e(pair, &ef)?;
        idempotent_ok &= eef == ef;
        positive_ok &= ef.iter().all(|x| x.im.is_zero() && x.re.is_nonnegative());
        let sup = |v: &[CRational]| {
            v.iter()
                .map(|x| x.abs())
                .fold(0.0f64, f64::max)
        };
        contractive_ok &= sup(&ef) <= sup(&f) + 1e-15;
    }
    let ones = vec![CRational::one(); n];
    let unital_ok = projection_e(pair, &ones)? == ones;
    // ω-invariance on the fixed algebra: (1/|G|) Σ_g a(gg') = ω(a) for all g'
    let fixed = fixed_algebra(pair);
    let mut omega_ok = true;
    for b in &fixed.basis {
        let omega = haar_state(g, b);
        for gj in 0..n {
            let mut acc = CRational::zero();
            for gi in 0..n {
                acc = acc.add(&b[g.mul(gi, gj)]);
            }
            omega_ok &= acc.mul(&CRational::from_ratio(1, n as i64)) == omega;
        }
    }
    let passed =
        formula_ok && idempotent_ok && unital_ok && positive_ok && contractive_ok && omega_ok;
    Ok(IntegrationReport {
        group: g.name().to_string(),
        subgroup_order: pair.subgroup_order(),
        index: pair.index(),
        integration_formula_exact: formula_ok,
        omega_invariant: omega_ok,
        e_idempotent: idempotent_ok,
        e_unital: unital_ok,
        e_positive_on_basis: positive_ok,
        e_contractive_on_basis: contractive_ok,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfAxiomReport {
    pub group: String,
    pub coassociative: bool,
    pub counit_law: bool,
    pub passed: bool,
}

/// Coassociativity (Φ⊗id)Φ = (id⊗Φ)Φ and the counit law on the full
/// indicator basis. For the function algebra of a finite group these reduce
/// to associativity and the identity law, but they are checked on the nose.
pub fn hopf_axiom_check(group: &FiniteGroup) -> HopfAxiomReport {
    let n = group.order();
    let mut coassoc = true;
    let mut counit = true;
    for base in 0..n {
        let f = delta(n, base);
        // Φf as a function of two variables: (a,b) ↦ f(ab)
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // (Φ⊗id)Φ(f)(a,b,c) = f((ab)c); (id⊗Φ)Φ(f)(a,b,c) = f(a(bc))
                    let left = f[group.mul(group.mul(a, b), c)].clone();
                    let right = f[group.mul(a, group.mul(b, c))].clone();
                    coassoc &= left == right;
                }
            }
            // (ε⊗id)Φ(f)(a) = f(e·a) = f(a), (id⊗ε)Φ(f)(a) = f(a·e)
            counit &= f[group.mul(group.identity(), a)] == f[a];
            counit &= f[group.mul(a, group.identity())] == f[a];
        }
    }
    HopfAxiomReport {
        group: group.name().to_string(),
        coassociative: coassoc,
        counit_law: counit,
        passed: coassoc && counit,
    }
}

/// The four built-in pairs exercised by the quotient checks.
pub fn builtin_pair(name: &str) -> Result<QuotientPair> {
    match name {
        "s4:s3" => {
            // S_3 inside S_4 as the stabilizer of the last point
            let g = FiniteGroup::symmetric(4)?;
            let elements: Vec<usize> = (0..g.order())
                .filter(|&e| {
                    // stabilizer: label [..4] i.e. permutation fixes 3 (0-based)
                    perm_images_of(&g, e)[3] == 3
                })
                .collect();
            QuotientPair::new(g, &elements)
        }
        "s3:a3" => {
            let g = FiniteGroup::symmetric(3)?;
            let elements: Vec<usize> = (0..g.order())
                .filter(|&e| perm_parity(&perm_images_of(&g, e)) == 0)
                .collect();
            QuotientPair::new(g, &elements)
        }
        "s3:z2" => {
            // the two-element subgroup generated by the transposition (12)
            let g = FiniteGroup::symmetric(3)?;
            let id = g.identity();
            let swap = g
                .permutation_index(&[1, 0, 2])
                .expect("transposition exists");
            QuotientPair::new(g, &[id, swap])
        }
        "z6:z2" => {
            let g = FiniteGroup::cyclic(6)?;
            QuotientPair::new(g, &[0, 3])
        }
        other => Err(Error::InvalidInput(format!(
            "unknown builtin pair {other:?}; available: s4:s3, s3:a3, s3:z2, z6:z2"
        ))),
    }
}

fn perm_images_of(g: &FiniteGroup, e: usize) -> Vec<usize> {
    // recover the image tuple from the label "[...]"
    let label = g.label(e);
    label
        .trim_matches(['[', ']'])
        .chars()
        .map(|c| c.to_digit(10).unwrap() as usize - 1)
        .collect()
}

fn perm_parity(images: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// Renders a function as exact "label: p/q" lines.
pub fn render_function(group: &FiniteGroup, f: &[CRational]) -> String {
    let mut s = String::new();
    for (g, v) in f.iter().enumerate() {
        let _ = writeln!(s, "{}: {}", group.label(g), v);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_validate() {
        for g in [
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
        ] {
            assert!(hopf_axiom_check(&g).passed, "{}", g.name());
        }
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::dihedral(5).unwrap().order(), 10);
        assert!(FiniteGroup::symmetric(6).is_err());
    }

    #[test]
    fn bad_tables_are_rejected() {
        // a latin square that is not associative (order 5 loop)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::new("loop5", t, None),
            Err(Error::InvalidGroup(_))
        ));
        // missing inverses / identity
        let t = vec![vec![0, 0], vec![0, 0]];
        assert!(FiniteGroup::new("bad", t, None).is_err());
    }

    #[test]
    fn table_text_roundtrip() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let text = g.to_table_text();
        let back = FiniteGroup::from_table_text("Z4", &text).unwrap();
        assert_eq!(back.order(), 4);
        assert_eq!(back.mul(1, 3), 0);
        assert!(FiniteGroup::from_table_text("bad", "2\n0 1\n1").is_err());
    }

    #[test]
    fn subgroup_validation() {
        let g = FiniteGroup::symmetric(3).unwrap();
        // not closed: {e, 3-cycle} misses its inverse-square combination
        let id = g.identity();
        let cycle = g.permutation_index(&[1, 2, 0]).unwrap();
        assert!(QuotientPair::new(g.clone(), &[id, cycle]).is_err());
        assert!(QuotientPair::new(g.clone(), &[cycle]).is_err());
        // A_3 works
        let pair = builtin_pair("s3:a3").unwrap();
        assert_eq!(pair.subgroup_order(), 3);
        assert_eq!(pair.index(), 2);
        assert!(pair.theta_intertwines_coproducts());
    }

    #[test]
    fn coaction_is_evaluation_of_products() {
        let pair = builtin_pair("s3:z2").unwrap();
        let g = pair.group();
        let f = delta(g.order(), g.identity());
        let beta = subgroup_coaction(&pair, &f).unwrap();
        // β(δ_e)(h,g) = [hg = e]
        for (hi, &h) in pair.subgroup_elements().iter().enumerate() {
            for gi in 0..g.order() {
                let expect = g.mul(h, gi) == g.identity();
                assert_eq!(!beta[(hi, gi)].is_zero(), expect);
            }
        }
        // constant functions are sent to 1 ⊗ f
        let c = vec![CRational::from_ratio(2, 7); g.order()];
        let beta_c = subgroup_coaction(&pair, &c).unwrap();
        assert!(beta_c
            .entries()
            .all(|x| *x == CRational::from_ratio(2, 7)));
    }

    #[test]
    fn two_path_coaction_agreement() {
        // (θ⊗1)Φ_G(f) evaluated directly vs β(f) entrywise
        let pair = builtin_pair("s3:a3").unwrap();
        let g = pair.group();
        for base in 0..g.order() {
            let f = delta(g.order(), base);
            let beta = subgroup_coaction(&pair, &f).unwrap();
            for (hi, &h) in pair.subgroup_elements().iter().enumerate() {
                for gi in 0..g.order() {
                    // Φ_G(f)(x, y) = f(xy), then restrict x to H
                    assert_eq!(beta[(hi, gi)], f[g.mul(h, gi)]);
                }
            }
        }
    }

    #[test]
    fn fixed_algebra_dimensions_and_indicators() {
        for (name, dim) in [("s4:s3", 4), ("s3:a3", 2), ("s3:z2", 3), ("z6:z2", 3)] {
            let pair = builtin_pair(name).unwrap();
            let fixed = fixed_algebra(&pair);
            assert_eq!(fixed.dimension, dim, "{name}");
            assert_eq!(fixed.dimension, pair.index(), "{name}");
            assert!(fixed.basis_is_indicators, "{name}");
        }
        // trivial subgroup: everything is fixed
        let g = FiniteGroup::symmetric(3).unwrap();
        let id = g.identity();
        let pair = QuotientPair::new(g, &[id]).unwrap();
        assert_eq!(fixed_algebra(&pair).dimension, 6);
    }

    #[test]
    fn even_odd_indicators_for_a3() {
        let pair = builtin_pair("s3:a3").unwrap();
        let fixed = fixed_algebra(&pair);
        // each basis vector is supported exactly on a parity class
        for b in &fixed.basis {
            let support: Vec<usize> = (0..6).filter(|&i| !b[i].is_zero()).collect();
            assert_eq!(support.len(), 3);
            let parities: BTreeSet<usize> = support
                .iter()
                .map(|&e| perm_parity(&perm_images_of(pair.group(), e)))
                .collect();
            assert_eq!(parities.len(), 1);
        }
    }

    #[test]
    fn projection_examples() {
        let pair = builtin_pair("s3:a3").unwrap();
        let g = pair.group();
        // E(δ_e) = (1/3)·indicator of A_3
        let f = delta(g.order(), g.identity());
        let ef = projection_e(&pair, &f).unwrap();
        for e in 0..g.order() {
            let in_a3 = pair.subgroup_elements().contains(&e);
            if in_a3 {
                assert_eq!(ef[e], CRational::from_ratio(1, 3));
            } else {
                assert!(ef[e].is_zero());
            }
        }
        // already-invariant functions are fixed by E
        assert_eq!(projection_e(&pair, &ef).unwrap(), ef);
    }

    #[test]
    fn ergodicity_all_pairs() {
        for name in ["s4:s3", "s3:a3", "s3:z2", "z6:z2"] {
            let rep = ergodicity_check(&builtin_pair(name).unwrap());
            assert!(rep.ergodic, "{name}: {rep:?}");
            assert_eq!(rep.invariant_dimension, 1);
        }
        // degenerate control H = G: scalars only, still dimension 1
        let g = FiniteGroup::cyclic(5).unwrap();
        let all: Vec<usize> = (0..5).collect();
        let pair = QuotientPair::new(g, &all).unwrap();
        let rep = ergodicity_check(&pair);
        assert_eq!(rep.fixed_dimension, 1);
        assert_eq!(rep.invariant_dimension, 1);
    }

    #[test]
    fn integration_formula_all_pairs() {
        for name in ["s4:s3", "s3:a3", "s3:z2", "z6:z2"] {
            let rep = integration_formula_check(&builtin_pair(name).unwrap()).unwrap();
            assert!(rep.passed, "{name}: {rep:?}");
        }
    }

    #[test]
    fn integration_values_match_hand_computation() {
        // (S_4, S_3): both sides equal 1/4 on a coset indicator
        let pair = builtin_pair("s4:s3").unwrap();
        let g = pair.group();
        let fixed = fixed_algebra(&pair);
        for b in &fixed.basis {
            assert_eq!(haar_state(g, b), CRational::from_ratio(1, 4));
        }
        // (S_3, A_3): h_G(δ_g) = ω(E(δ_g)) = 1/6
        let pair = builtin_pair("s3:a3").unwrap();
        let g = pair.group();
        let f = delta(g.order(), 2);
        let ef = projection_e(&pair, &f).unwrap();
        assert_eq!(haar_state(g, &ef), CRational::from_ratio(1, 6));
    }
}
