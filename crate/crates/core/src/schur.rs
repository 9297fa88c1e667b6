//! Young symmetrizers and the expansion of the canonical highest-weight functional.
//!
//! Permutations act on tensor words on the right: `(w·g)_k = w_{g(k)}`, so
//! `w·(g h) = (w·g)·h` with `g h = g ∘ h`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::factorial_exact;
use crate::series::VarLabel;
use crate::weight::{Signature, Weight};

/// Permutation of `{0..d-1}` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.0.len()];
        let mut s = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.0[k];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    pub fn act<T: Clone>(&self, word: &[T]) -> Vec<T> {
        self.0.iter().map(|&k| word[k].clone()).collect()
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// All permutations of `{0..d-1}` preserving each of the given disjoint sets.
fn set_stabilizer(sets: &[Vec<usize>], d: usize) -> Vec<Perm> {
    let mut acc = vec![Perm::identity(d)];
    for set in sets {
        let mut next = Vec::new();
        for base in &acc {
            for image in permutations_of(set) {
                let mut g = base.0.clone();
                for (src, dst) in set.iter().zip(&image) {
                    g[*src] = *dst;
                }
                next.push(Perm(g));
            }
        }
        acc = next;
    }
    acc
}

fn group_size(sets: &[Vec<usize>]) -> u128 {
    sets.iter()
        .map(|s| (1..=s.len() as u128).fold(1u128, |a, k| a.saturating_mul(k)))
        .fold(1u128, |a, k| a.saturating_mul(k))
}

/// Row-major tableau of a partition: `(rows, columns)` as sets of cells.
pub fn tableau(partition: &[usize]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut rows = Vec::new();
    let mut next = 0;
    for &len in partition {
        rows.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    let width = partition.first().copied().unwrap_or(0);
    let cols = (0..width)
        .map(|c| rows.iter().filter(|r| r.len() > c).map(|r| r[c]).collect())
        .collect();
    (rows, cols)
}

/// Element of `Z[S_d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub d: usize,
    pub coeffs: BTreeMap<Perm, BigInt>,
}

impl GroupAlgebraElement {
    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<Perm, BigInt> = BTreeMap::new();
        for (g, a) in &self.coeffs {
            for (h, b) in &other.coeffs {
                *coeffs.entry(g.compose(h)).or_default() += a * b;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        GroupAlgebraElement { d: self.d, coeffs }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut coeffs: BTreeMap<Perm, BigInt> = self
            .coeffs
            .iter()
            .map(|(g, c)| (g.clone(), c * k))
            .collect();
        coeffs.retain(|_, c| !c.is_zero());
        GroupAlgebraElement { d: self.d, coeffs }
    }

    /// `word · self` as a map from words to coefficients.
    pub fn act_on_word<T: Clone + Ord>(&self, word: &[T]) -> BTreeMap<Vec<T>, BigInt> {
        let mut out: BTreeMap<Vec<T>, BigInt> = BTreeMap::new();
        for (g, c) in &self.coeffs {
            *out.entry(g.act(word)).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The scalar `s` with `self·self = s·self`, if any.
    pub fn quasi_idempotent_scalar(&self) -> Option<BigInt> {
        let sq = self.mul(self);
        let (g, c) = self.coeffs.iter().next()?;
        let (s, r) = sq.coeffs.get(g).cloned().unwrap_or_default().div_rem(c);
        (r.is_zero() && sq == self.scale(&s)).then_some(s)
    }
}

/// Row symmetrizer followed by column antisymmetrizer: `c = (Σ_rows p)(Σ_cols sgn(q) q)`.
pub fn young_symmetrizer(partition: &[usize], d: usize) -> Result<GroupAlgebraElement> {
    if partition.iter().sum::<usize>() != d {
        return Err(Error::ShapeMismatch(format!(
            "partition {partition:?} does not sum to {d}"
        )));
    }
    let (rows, cols) = tableau(partition);
    let mut coeffs: BTreeMap<Perm, BigInt> = BTreeMap::new();
    let qs = set_stabilizer(&cols, d);
    for p in set_stabilizer(&rows, d) {
        for q in &qs {
            *coeffs.entry(p.compose(q)).or_default() += q.sign();
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(GroupAlgebraElement { d, coeffs })
}

/// `Σ a_l · l` over ordered tuples of Serre-Tate labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetrizedFunctional {
    sig: Signature,
    depth: usize,
    terms: BTreeMap<Vec<VarLabel>, BigInt>,
}

impl SymmetrizedFunctional {
    pub fn new(
        sig: Signature,
        depth: usize,
        terms: BTreeMap<Vec<VarLabel>, BigInt>,
    ) -> Result<Self> {
        if terms.keys().any(|t| t.len() != depth) {
            return Err(Error::ShapeMismatch(
                "tuple length differs from depth".into(),
            ));
        }
        let mut terms = terms;
        terms.retain(|_, c| !c.is_zero());
        Ok(SymmetrizedFunctional { sig, depth, terms })
    }

    /// The depth-0 functional with coefficient 1.
    pub fn unit(sig: &Signature) -> Self {
        let terms = [(Vec::new(), BigInt::one())].into_iter().collect();
        SymmetrizedFunctional {
            sig: sig.clone(),
            depth: 0,
            terms,
        }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn terms(&self) -> &BTreeMap<Vec<VarLabel>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Collapse tuples to sorted order; the elementary thetas commute, so this
    /// is the operator the functional defines.
    pub fn canonical(&self) -> SymmetrizedFunctional {
        let mut terms: BTreeMap<Vec<VarLabel>, BigInt> = BTreeMap::new();
        for (t, c) in &self.terms {
            let mut s = t.clone();
            s.sort();
            *terms.entry(s).or_default() += c;
        }
        terms.retain(|_, c| !c.is_zero());
        SymmetrizedFunctional {
            sig: self.sig.clone(),
            depth: self.depth,
            terms,
        }
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| if c < &BigInt::zero() { -c } else { c.clone() })
            .max()
            .unwrap_or_default()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term<'a> {
            tuple: &'a [VarLabel],
            coeff: String,
        }
        serde_json::json!({
            "depth": self.depth,
            "terms": self.terms.iter().map(|(t, c)| Term { tuple: t, coeff: c.to_string() }).collect::<Vec<_>>(),
        })
    }
}

/// Concatenation product of tuples.
pub fn functional_product(
    f: &SymmetrizedFunctional,
    g: &SymmetrizedFunctional,
) -> Result<SymmetrizedFunctional> {
    if f.sig != g.sig {
        return Err(Error::ShapeMismatch(
            "functionals over different signatures".into(),
        ));
    }
    let mut terms: BTreeMap<Vec<VarLabel>, BigInt> = BTreeMap::new();
    for (a, x) in &f.terms {
        for (b, y) in &g.terms {
            let mut t = a.clone();
            t.extend_from_slice(b);
            *terms.entry(t).or_default() += x * y;
        }
    }
    SymmetrizedFunctional::new(f.sig.clone(), f.depth + g.depth, terms)
}

/// `Σ a_l ∏ α(l_k)`, with `alpha` aligned to `sig.variables()`.
pub fn apply_functional(f: &SymmetrizedFunctional, alpha: &[i64]) -> BigInt {
    let vars = f.sig.variables();
    let value =
        |l: &VarLabel| BigInt::from(alpha[vars.binary_search(l).expect("label of the signature")]);
    f.terms
        .iter()
        .map(|(t, c)| t.iter().map(value).fold(c.clone(), |acc, v| acc * v))
        .sum()
}

/// One tensor block: letters of a `±` part at one place.
struct Block {
    place: usize,
    partition: Vec<usize>,
    letters: Vec<usize>,
}

impl Block {
    fn highest_weight_word(&self) -> Vec<usize> {
        self.partition
            .iter()
            .zip(&self.letters)
            .flat_map(|(&len, &l)| std::iter::repeat_n(l, len))
            .collect()
    }

    fn column_group(&self) -> (Vec<Vec<usize>>, usize) {
        let d = self.partition.iter().sum();
        (tableau(&self.partition).1, d)
    }
}

fn blocks(k: &Weight) -> Vec<(Block, Block)> {
    let sig = k.sig();
    (0..sig.num_places())
        .map(|tau| {
            let ap = sig.a_plus(tau);
            let part = |v: &[i64]| -> (Vec<usize>, Vec<usize>) {
                v.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(r, &x)| (x as usize, r))
                    .unzip()
            };
            let (pp, pr) = part(k.plus(tau));
            let (mp, mr) = part(k.minus(tau));
            (
                Block {
                    place: tau,
                    partition: pp,
                    letters: pr.iter().map(|r| r + 1).collect(),
                },
                Block {
                    place: tau,
                    partition: mp,
                    letters: mr.iter().map(|r| ap + r + 1).collect(),
                },
            )
        })
        .collect()
}

type WordSum = BTreeMap<Vec<usize>, BigInt>;

fn check_weight(k: &Weight) -> Result<u64> {
    k.sum_symmetric_depth().ok_or(Error::NotSumSymmetric)
}

/// Pair the k-th `+` letter with the k-th `-` letter at every place and
/// concatenate places in order.
fn pair_words(
    per_place: Vec<(WordSum, WordSum)>,
    places: &[usize],
) -> BTreeMap<Vec<VarLabel>, BigInt> {
    let mut acc: BTreeMap<Vec<VarLabel>, BigInt> =
        [(Vec::new(), BigInt::one())].into_iter().collect();
    for ((plus, minus), &tau) in per_place.iter().zip(places) {
        let mut next: BTreeMap<Vec<VarLabel>, BigInt> = BTreeMap::new();
        for (wp, a) in plus {
            for (wm, b) in minus {
                let labels: Vec<VarLabel> = wp
                    .iter()
                    .zip(wm)
                    .map(|(&i, &j)| VarLabel::new(tau, i, j))
                    .collect();
                for (t, c) in &acc {
                    let mut full = t.clone();
                    full.extend_from_slice(&labels);
                    *next.entry(full).or_default() += c * a * b;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

pub const MAX_EXPLICIT_GROUP: u128 = 5_000_000;
pub const MAX_ORDERED_TERMS: u128 = 2_000_000;

/// Group elements summed by [`lcan_expand`].
pub fn explicit_work(k: &Weight) -> u128 {
    blocks(k)
        .iter()
        .flat_map(|(p, m)| [p, m])
        .map(|b| {
            let (rows, cols) = tableau(&b.partition);
            group_size(&rows).saturating_mul(group_size(&cols))
        })
        .fold(0u128, |a, w| a.saturating_add(w))
}

/// Expand `∏(κ_i!)^{-1} · ⊗(b^∨_i)^{⊗κ_i} · c_κ` by explicit summation over the
/// full Young symmetrizer of every block, then divide exactly.
pub fn lcan_expand(k: &Weight) -> Result<SymmetrizedFunctional> {
    let depth = check_weight(k)? as usize;
    let bl = blocks(k);
    let work = explicit_work(k);
    if work > MAX_EXPLICIT_GROUP {
        return Err(Error::ExpansionTooLarge(work));
    }
    let mut per_place = Vec::new();
    for (p, m) in &bl {
        let side = |b: &Block| -> Result<BTreeMap<Vec<usize>, BigInt>> {
            let d = b.partition.iter().sum();
            Ok(young_symmetrizer(&b.partition, d)?.act_on_word(&b.highest_weight_word()))
        };
        per_place.push((side(p)?, side(m)?));
    }
    let places: Vec<usize> = bl.iter().map(|(p, _)| p.place).collect();
    let raw = pair_words(per_place, &places);
    let norm: BigUint = k
        .entries()
        .iter()
        .flatten()
        .map(|&x| factorial_exact(x as u64))
        .product();
    let norm = BigInt::from(norm);
    let mut terms = BTreeMap::new();
    for (t, c) in raw {
        let (q, r) = c.div_rem(&norm);
        assert!(
            r.is_zero(),
            "inexact factorial division for {:?}: {c} / {norm}",
            k.entries()
        );
        terms.insert(t, q);
    }
    SymmetrizedFunctional::new(k.sig().clone(), depth, terms)
}

/// Same functional from the column antisymmetrizers alone: the highest-weight
/// word is fixed by every row permutation, so the row sum contributes exactly
/// `∏ κ_i!`, which cancels the normalization.
pub fn lcan_column_form(k: &Weight) -> Result<SymmetrizedFunctional> {
    let depth = check_weight(k)? as usize;
    let bl = blocks(k);
    let size: u128 = bl
        .iter()
        .flat_map(|(p, m)| [p, m])
        .map(|b| group_size(&b.column_group().0))
        .fold(1u128, |a, b| a.saturating_mul(b));
    if size > MAX_ORDERED_TERMS {
        return Err(Error::ExpansionTooLarge(size));
    }
    let side = |b: &Block| -> BTreeMap<Vec<usize>, BigInt> {
        let (cols, d) = b.column_group();
        let w = b.highest_weight_word();
        let mut out = BTreeMap::new();
        for q in set_stabilizer(&cols, d) {
            *out.entry(q.act(&w)).or_insert_with(BigInt::zero) += q.sign();
        }
        out
    };
    let per_place = bl.iter().map(|(p, m)| (side(p), side(m))).collect();
    let places: Vec<usize> = bl.iter().map(|(p, _)| p.place).collect();
    SymmetrizedFunctional::new(k.sig().clone(), depth, pair_words(per_place, &places))
}

/// Number of ordered terms the column form would produce.
pub fn ordered_term_count(k: &Weight) -> u128 {
    blocks(k)
        .iter()
        .flat_map(|(p, m)| [p, m])
        .map(|b| group_size(&b.column_group().0))
        .fold(1u128, |a, b| a.saturating_mul(b))
}
