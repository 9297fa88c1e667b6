//! Theta operators and their eigenvalue polynomials.
//!
//! Every operator here is diagonal on `(1+t)^α`; the work is computing the
//! eigenvalue, either from the symmetrized functional (the definition) or
//! from leading minors of the exponent matrix.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{factorial_exact, mod_floor, teichmuller, twist_exponent, PAdicInt, RingCtx};
use crate::schur::{
    explicit_work, lcan_column_form, lcan_expand, ordered_term_count, SymmetrizedFunctional,
    MAX_ORDERED_TERMS,
};
use crate::series::{MultiIndex, ShiftedSeries, VarLabel};
use crate::weight::{
    congruence_hypotheses, CongruenceHypotheses, PAdicCharacterApprox, Signature, Weight,
};

/// Integer polynomial in the exponents `α(l)`, variables ordered as `sig.variables()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPolynomial {
    vars: Vec<VarLabel>,
    terms: BTreeMap<MultiIndex, BigInt>,
}

impl ThetaPolynomial {
    pub fn one(sig: &Signature) -> Self {
        let vars = sig.variables();
        let terms = [(vec![0; vars.len()], BigInt::one())].into_iter().collect();
        ThetaPolynomial { vars, terms }
    }

    pub fn from_functional(f: &SymmetrizedFunctional) -> Self {
        let vars = f.sig().variables();
        let mut terms: BTreeMap<MultiIndex, BigInt> = BTreeMap::new();
        for (t, c) in f.terms() {
            let mut e = vec![0u32; vars.len()];
            for l in t {
                e[vars.binary_search(l).expect("label of the signature")] += 1;
            }
            *terms.entry(e).or_default() += c;
        }
        terms.retain(|_, c| !c.is_zero());
        ThetaPolynomial { vars, terms }
    }

    pub fn from_terms(vars: Vec<VarLabel>, mut terms: BTreeMap<MultiIndex, BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        ThetaPolynomial { vars, terms }
    }

    pub fn vars(&self) -> &[VarLabel] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<MultiIndex, BigInt> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(u, v)| u + v).collect();
                *terms.entry(e).or_default() += x * y;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ThetaPolynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ThetaPolynomial {
            vars: self.vars.clone(),
            terms: [(vec![0; self.vars.len()], BigInt::one())]
                .into_iter()
                .collect(),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, alpha: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(alpha)
                    .fold(c.clone(), |acc, (&k, a)| acc * a.pow(k))
            })
            .sum()
    }

    pub fn eval_i64(&self, alpha: &[i64]) -> BigInt {
        let a: Vec<BigInt> = alpha.iter().map(|&x| BigInt::from(x)).collect();
        self.eval(&a)
    }

    pub fn eval_u32(&self, alpha: &[u32]) -> BigInt {
        let a: Vec<BigInt> = alpha.iter().map(|&x| BigInt::from(x)).collect();
        self.eval(&a)
    }

    /// Value modulo `modulus`, using modular exponentiation.
    pub fn eval_mod(&self, alpha: &[u32], modulus: &BigUint) -> BigUint {
        let mut acc = BigUint::zero();
        for (e, c) in &self.terms {
            let mut t = mod_floor(c, modulus);
            for (&k, &a) in e.iter().zip(alpha) {
                if k > 0 {
                    t = t * BigUint::from(a).modpow(&BigUint::from(k), modulus) % modulus;
                }
            }
            acc = (acc + t) % modulus;
        }
        acc
    }

    /// Coefficients reduced once for repeated word-sized evaluation.
    pub fn reduce_mod(&self, modulus: u32) -> ModularPoly {
        let m = BigUint::from(modulus);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let c = crate::padic::to_u64(&mod_floor(c, &m)).expect("reduced below modulus");
                let sparse = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| (i, k))
                    .collect();
                (c, sparse)
            })
            .filter(|(c, _)| *c != 0)
            .collect();
        ModularPoly {
            modulus: modulus as u64,
            terms,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vars": self.vars,
            "terms": self.terms.iter().map(|(e, c)| serde_json::json!({"exponents": e, "coeff": c.to_string()})).collect::<Vec<_>>(),
        })
    }
}

/// A theta polynomial with coefficients in `Z/N`, `N < 2^32`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPoly {
    modulus: u64,
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl ModularPoly {
    pub fn eval(&self, alpha: &[u32]) -> u64 {
        let n = self.modulus;
        let pow = |mut b: u64, mut e: u32| {
            let mut r = 1 % n;
            b %= n;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % n;
                }
                b = b * b % n;
                e >>= 1;
            }
            r
        };
        self.terms.iter().fold(0, |acc, (c, e)| {
            (acc + e
                .iter()
                .fold(*c, |t, &(i, k)| t * pow(alpha[i] as u64, k) % n))
                % n
        })
    }
}

/// `θ^{d}`: product of elementary thetas with multiplicities `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaWord {
    pub d: BTreeMap<VarLabel, u32>,
}

pub fn theta_word_apply(s: &ShiftedSeries, w: &ThetaWord) -> Result<ShiftedSeries> {
    let idx: Vec<(usize, u32)> =
        w.d.iter()
            .map(|(l, &k)| {
                s.var_index(l)
                    .map(|i| (i, k))
                    .ok_or(Error::VariableMismatch)
            })
            .collect::<Result<_>>()?;
    Ok(s.scale_by(|a| {
        idx.iter()
            .map(|&(i, k)| BigInt::from(a[i]).pow(k))
            .product()
    }))
}

/// How a [`ThetaKappa`] obtained its polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaRoute {
    /// Full Young symmetrizer summation with exact factorial division.
    Symmetrizer,
    /// Column antisymmetrizers of the highest-weight word.
    ColumnForm,
    /// Product over fundamental symmetric weights.
    Fundamental,
}

/// `θ^κ` for a sum-symmetric weight.
/// Largest explicit symmetrizer sum used when building an operator.
pub const EXPLICIT_OPERATOR_WORK: u128 = 50_000;

#[derive(Debug, Clone)]
pub struct ThetaKappa {
    pub kappa: Weight,
    pub functional: Option<SymmetrizedFunctional>,
    pub poly: ThetaPolynomial,
    pub route: ThetaRoute,
}

/// The symmetric weight `(1^i, 0.. | 1^i, 0..)` at place `tau`.
pub fn fundamental_weight(sig: &Signature, tau: usize, i: usize) -> Weight {
    let mut w = Weight::zero(sig);
    let ap = sig.a_plus(tau);
    let mut entries = w.entries().to_vec();
    for r in 0..i {
        entries[tau][r] = 1;
        entries[tau][ap + r] = 1;
    }
    w = Weight::new(sig.clone(), entries).expect("same shape");
    w
}

impl ThetaKappa {
    pub fn new(kappa: &Weight) -> Result<Self> {
        if kappa.sum_symmetric_depth().is_none() {
            return Err(Error::NotSumSymmetric);
        }
        if explicit_work(kappa) <= EXPLICIT_OPERATOR_WORK {
            let f = lcan_expand(kappa)?;
            return Ok(Self::from_functional(kappa, f, ThetaRoute::Symmetrizer));
        }
        if ordered_term_count(kappa) <= MAX_ORDERED_TERMS / 10 {
            let f = lcan_column_form(kappa)?;
            return Ok(Self::from_functional(kappa, f, ThetaRoute::ColumnForm));
        }
        Self::via_fundamental(kappa)
    }

    fn from_functional(kappa: &Weight, f: SymmetrizedFunctional, route: ThetaRoute) -> Self {
        let poly = ThetaPolynomial::from_functional(&f);
        ThetaKappa {
            kappa: kappa.clone(),
            functional: Some(f),
            poly,
            route,
        }
    }

    /// Symmetric weights only: `θ^κ = ∏ (θ^{ω_{τ,i}})^{κ_i - κ_{i+1}}`.
    pub fn via_fundamental(kappa: &Weight) -> Result<Self> {
        if !kappa.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let sig = kappa.sig();
        let mut poly = ThetaPolynomial::one(sig);
        for tau in 0..sig.num_places() {
            let mu = kappa.plus(tau);
            for i in 1..=mu.len() {
                let next = mu.get(i).copied().unwrap_or(0);
                let e = (mu[i - 1] - next) as u64;
                if e == 0 {
                    continue;
                }
                let f = lcan_expand(&fundamental_weight(sig, tau, i))?;
                poly = poly.mul(&ThetaPolynomial::from_functional(&f).pow(e));
            }
        }
        Ok(ThetaKappa {
            kappa: kappa.clone(),
            functional: None,
            poly,
            route: ThetaRoute::Fundamental,
        })
    }

    pub fn eigenvalue(&self, alpha: &[u32]) -> BigInt {
        self.poly.eval_u32(alpha)
    }

    pub fn apply(&self, s: &ShiftedSeries) -> Result<ShiftedSeries> {
        if s.vars() != self.poly.vars() {
            return Err(Error::VariableMismatch);
        }
        Ok(s.scale_by(|a| self.eigenvalue(a)))
    }
}

/// The definitional eigenvalue `Σ a_l ∏ α(l_k)`.
pub fn phi_oracle(kappa: &Weight, alpha: &[u32]) -> Result<BigInt> {
    Ok(ThetaKappa::new(kappa)?.eigenvalue(alpha))
}

pub fn theta_kappa_apply(s: &ShiftedSeries, kappa: &Weight) -> Result<ShiftedSeries> {
    ThetaKappa::new(kappa)?.apply(s)
}

/// `Σ a_l θ^{d(l)} s`, summing word by word.
pub fn theta_kappa_apply_by_words(
    s: &ShiftedSeries,
    f: &SymmetrizedFunctional,
) -> Result<ShiftedSeries> {
    let mut acc = ShiftedSeries::zero(s.ctx(), s.vars().to_vec(), s.cap());
    for (t, c) in f.terms() {
        let mut d = BTreeMap::new();
        for l in t {
            *d.entry(*l).or_insert(0) += 1;
        }
        let part = theta_word_apply(s, &ThetaWord { d })?;
        acc = acc.add(&part.scale(&PAdicInt::from_bigint(s.ctx(), c))?)?;
    }
    Ok(acc)
}

/// Exact determinant by fraction-free elimination.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Leading `i×i` minor at place `tau`: entry `(r, c)` is `α(l_{c, a_+ + r})`.
/// `None` when the minor does not exist (`i > min(a_+, a_-)`).
pub fn leading_minor(sig: &Signature, alpha: &[BigInt], tau: usize, i: usize) -> Option<BigInt> {
    let (ap, am) = sig.places()[tau];
    if i > ap.min(am) {
        return None;
    }
    let vars = sig.variables();
    let at = |r: usize, c: usize| {
        alpha[vars
            .binary_search(&VarLabel::new(tau, c, ap + r))
            .expect("label")]
        .clone()
    };
    let m: Vec<Vec<BigInt>> = (1..=i)
        .map(|r| (1..=i).map(|c| at(r, c)).collect())
        .collect();
    Some(det_bareiss(&m))
}

/// `∏_τ (a_+!·m_{a_+})^{κ_{a_+}} ∏_{i<a_+} (i!·m_i)^{κ_i-κ_{i+1}}`; missing minors count as 0.
pub fn phi_kappa_minor(kappa: &Weight, alpha: &[u32]) -> Result<BigInt> {
    if kappa.sum_symmetric_depth().is_none() {
        return Err(Error::NotSumSymmetric);
    }
    let a: Vec<BigInt> = alpha.iter().map(|&x| BigInt::from(x)).collect();
    let sig = kappa.sig();
    let mut acc = BigInt::one();
    for tau in 0..sig.num_places() {
        let mu = kappa.plus(tau);
        for i in 1..=mu.len() {
            let next = if i < mu.len() { mu[i] } else { 0 };
            let e = (mu[i - 1] - next) as u32;
            if e == 0 {
                continue;
            }
            let m = leading_minor(sig, &a, tau, i).unwrap_or_default();
            acc *= (BigInt::from(factorial_exact(i as u64)) * m).pow(e);
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PhiEquivalence {
    Equal {
        grid_size: usize,
    },
    ConstantRatio {
        grid_size: usize,
        minor_over_oracle: String,
    },
    Mismatch {
        grid_size: usize,
        alpha: MultiIndex,
        oracle: String,
        minor: String,
    },
}

impl PhiEquivalence {
    /// `minor / oracle` as a rational, `1` when equal.
    pub fn ratio(&self) -> Option<BigRational> {
        match self {
            PhiEquivalence::Equal { .. } => Some(BigRational::one()),
            PhiEquivalence::ConstantRatio {
                minor_over_oracle, ..
            } => {
                let (n, d) = minor_over_oracle
                    .split_once('/')
                    .unwrap_or((minor_over_oracle, "1"));
                Some(BigRational::new(n.parse().ok()?, d.parse().ok()?))
            }
            PhiEquivalence::Mismatch { .. } => None,
        }
    }
}

pub fn phi_equivalence_report(
    kappa: &Weight,
    grid: impl IntoIterator<Item = MultiIndex>,
) -> Result<PhiEquivalence> {
    if !kappa.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let t = ThetaKappa::new(kappa)?;
    let mut ratio: Option<BigRational> = None;
    let mut n = 0;
    for alpha in grid {
        n += 1;
        let o = t.eigenvalue(&alpha);
        let m = phi_kappa_minor(kappa, &alpha)?;
        let mismatch = || PhiEquivalence::Mismatch {
            grid_size: n,
            alpha: alpha.clone(),
            oracle: o.to_string(),
            minor: m.to_string(),
        };
        match (o.is_zero(), m.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return Ok(mismatch()),
            _ => {}
        }
        let r = BigRational::new(m.clone(), o.clone());
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev == r => {}
            Some(_) => return Ok(mismatch()),
        }
    }
    Ok(match ratio {
        Some(r) if !r.is_one() => PhiEquivalence::ConstantRatio {
            grid_size: n,
            minor_over_oracle: r.to_string(),
        },
        _ => PhiEquivalence::Equal { grid_size: n },
    })
}

/// Characters `ζ_i(x) = x^{k_i} ω(x)^{e_i}` on the `+` indices of each place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterZeta {
    pub sig: Signature,
    pub exponents: Vec<Vec<i64>>,
    pub twists: Vec<Vec<i64>>,
}

impl CharacterZeta {
    pub fn from_weight(k: &Weight) -> Self {
        let sig = k.sig().clone();
        let exponents: Vec<Vec<i64>> = (0..sig.num_places()).map(|t| k.plus(t).to_vec()).collect();
        let twists = exponents.iter().map(|e| vec![0; e.len()]).collect();
        CharacterZeta {
            sig,
            exponents,
            twists,
        }
    }

    pub fn with_twists(mut self, twists: Vec<Vec<i64>>) -> Result<Self> {
        if twists.len() != self.exponents.len()
            || twists
                .iter()
                .zip(&self.exponents)
                .any(|(a, b)| a.len() != b.len())
        {
            return Err(Error::ShapeMismatch("twist shape".into()));
        }
        self.twists = twists;
        Ok(self)
    }

    pub fn trivial(sig: &Signature) -> Self {
        CharacterZeta::from_weight(&Weight::zero(sig))
    }

    /// `x^k ω(x)^e` for a unit `x`.
    fn eval_factor(x: &PAdicInt, k: i64, e: i64) -> Result<PAdicInt> {
        let w = teichmuller(x).pow(twist_exponent(e, x.ctx().p()));
        x.pow_signed(k)?.mul(&w)
    }
}

/// The character formula for `φ_ζ`; zero when a needed argument is a non-unit.
pub fn phi_zeta(zeta: &CharacterZeta, alpha: &[BigInt], ctx: &Arc<RingCtx>) -> Result<PAdicInt> {
    let sig = &zeta.sig;
    let mut acc = PAdicInt::one(ctx);
    let p = ctx.p();
    for tau in 0..sig.num_places() {
        let (k, e) = (&zeta.exponents[tau], &zeta.twists[tau]);
        for i in 1..=k.len() {
            let (dk, de) = if i < k.len() {
                (k[i - 1] - k[i], e[i - 1] - e[i])
            } else {
                (k[i - 1], e[i - 1])
            };
            let trivial = dk == 0 && twist_exponent(de, p) == 0;
            let arg = match leading_minor(sig, alpha, tau, i) {
                Some(m) => {
                    PAdicInt::from_bigint(ctx, &(BigInt::from(factorial_exact(i as u64)) * m))
                }
                None if trivial => continue,
                None => return Ok(PAdicInt::zero(ctx)),
            };
            if !arg.is_unit() {
                return Ok(PAdicInt::zero(ctx));
            }
            acc = acc.mul(&CharacterZeta::eval_factor(&arg, dk, de)?)?;
        }
    }
    Ok(acc)
}

/// `θ^χ` at level `m`: result lives in `Z/p^{m+1}`.
pub fn theta_chi_apply(s: &ShiftedSeries, chi: &PAdicCharacterApprox) -> Result<ShiftedSeries> {
    if !chi.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let avail = s.ctx().precision();
    if chi.level + 1 > avail {
        return Err(Error::InsufficientPrecision {
            requested: chi.level + 1,
            available: avail,
        });
    }
    let target = s.ctx().with_precision(chi.level + 1)?;
    let low = s.reduce(&target)?;
    match &chi.twists {
        None => {
            let t = ThetaKappa::new(&chi.representative)?;
            t.apply(&low)
        }
        Some(tw) => {
            let zeta = CharacterZeta::from_weight(&chi.representative).with_twists(tw.clone())?;
            let mut terms = Vec::new();
            for (a, c) in low.terms() {
                let f = phi_zeta(&zeta, &bigints(a), &target)?;
                terms.push((a.clone(), c.mul(&f)?));
            }
            ShiftedSeries::from_terms(&target, low.vars().to_vec(), low.cap(), terms)
        }
    }
}

/// Grid of exponent vectors: full `[0, bound)^v` or a deterministic sample.
#[derive(Debug, Clone, Serialize)]
pub struct GridSpec {
    pub bound: u32,
    pub max_points: u64,
    pub seed: u64,
}

impl GridSpec {
    pub fn residue_grid(p: u64) -> Self {
        GridSpec {
            bound: (p * p) as u32,
            max_points: 1_000_000,
            seed: 0,
        }
    }

    /// Ordered grid indices, with whether subsampling happened.
    pub fn indices(&self, num_vars: usize) -> (Vec<u64>, bool) {
        let total = (self.bound as u128).pow(num_vars as u32);
        if total <= self.max_points as u128 {
            return ((0..total as u64).collect(), false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let total = u64::try_from(total).unwrap_or(u64::MAX);
        let mut picks: Vec<u64> = if total <= usize::MAX as u64 {
            sample(&mut rng, total as usize, self.max_points as usize)
                .into_iter()
                .map(|x| x as u64)
                .collect()
        } else {
            use rand::Rng;
            (0..self.max_points)
                .map(|_| rng.gen_range(0..total))
                .collect()
        };
        picks.sort_unstable();
        picks.dedup();
        (picks, true)
    }

    pub fn decode(&self, mut k: u64, num_vars: usize) -> MultiIndex {
        let b = self.bound as u64;
        let mut a = vec![0u32; num_vars];
        for slot in a.iter_mut().rev() {
            *slot = (k % b) as u32;
            k /= b;
        }
        a
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceWitness {
    pub alpha: MultiIndex,
    pub value_kappa: String,
    pub value_kappa_prime: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub status: &'static str,
    pub hypotheses: CongruenceHypotheses,
    pub label: &'static str,
    pub modulus: String,
    pub grid_size: usize,
    pub subsampled: bool,
    pub witness: Option<CongruenceWitness>,
}

impl CongruenceReport {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Compare `φ_κ` and `φ_κ'` modulo `p^{m+1}` across the grid.
pub fn congruence_sweep(
    ctx: &Arc<RingCtx>,
    kappa: &Weight,
    kappa_prime: &Weight,
    m: u32,
    grid: &GridSpec,
) -> Result<CongruenceReport> {
    if m + 1 > ctx.precision() {
        return Err(Error::InsufficientPrecision {
            requested: m + 1,
            available: ctx.precision(),
        });
    }
    let hyp = congruence_hypotheses(kappa, kappa_prime, ctx.p(), m)?;
    let symmetric = kappa.is_symmetric() && kappa_prime.is_symmetric();
    let label = if hyp.all() && symmetric {
        "theorem"
    } else {
        "hypotheses not met - informational"
    };
    let t = ThetaKappa::new(kappa)?;
    let tp = ThetaKappa::new(kappa_prime)?;
    let modulus = BigUint::from(ctx.p()).pow(m + 1);
    let v = kappa.sig().variables().len();
    let (idx, subsampled) = grid.indices(v);
    let small = u32::try_from(&modulus)
        .ok()
        .map(|n| (t.poly.reduce_mod(n), tp.poly.reduce_mod(n)));
    let hit = idx.par_iter().find_first(|&&k| {
        let a = grid.decode(k, v);
        match &small {
            Some((f, g)) => f.eval(&a) != g.eval(&a),
            None => t.poly.eval_mod(&a, &modulus) != tp.poly.eval_mod(&a, &modulus),
        }
    });
    let witness = hit.map(|&k| {
        let a = grid.decode(k, v);
        CongruenceWitness {
            value_kappa: t.poly.eval_mod(&a, &modulus).to_string(),
            value_kappa_prime: tp.poly.eval_mod(&a, &modulus).to_string(),
            alpha: a,
        }
    });
    Ok(CongruenceReport {
        status: if witness.is_some() {
            "counterexample"
        } else {
            "ok"
        },
        hypotheses: hyp,
        label,
        modulus: modulus.to_string(),
        grid_size: idx.len(),
        subsampled,
        witness,
    })
}

/// Small helper for callers holding exponent residues as integers.
pub fn bigints(alpha: &[u32]) -> Vec<BigInt> {
    alpha.iter().map(|&x| BigInt::from(x)).collect()
}
