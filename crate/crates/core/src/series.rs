//! Truncated series in the Serre-Tate variables.
//!
//! [`ShiftedSeries`] stores `Σ c_α (1+t)^α`; [`MonomialSeries`] stores the same
//! kind of object in the plain `t^β` basis and exists for substitution
//! cross-checks and display.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Deref;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::padic::{PAdicInt, RingCtx};
use crate::weight::Signature;

pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// The label `l^τ_{i,j}` with `1 <= i <= a_+ < j <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarLabel {
    pub place: usize,
    pub i: usize,
    pub j: usize,
}

impl VarLabel {
    pub fn new(place: usize, i: usize, j: usize) -> Self {
        VarLabel { place, i, j }
    }
}

impl Serialize for VarLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.place, self.i, self.j].serialize(s)
    }
}

impl std::fmt::Display for VarLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "l[{}]_{},{}", self.place, self.i, self.j)
    }
}

impl Signature {
    /// All Serre-Tate labels, place-major, then `i`, then `j`.
    pub fn variables(&self) -> Vec<VarLabel> {
        let n = self.n();
        let mut v = Vec::new();
        for (tau, &(ap, _)) in self.places().iter().enumerate() {
            for i in 1..=ap {
                for j in ap + 1..=n {
                    v.push(VarLabel::new(tau, i, j));
                }
            }
        }
        v
    }
}

/// Exponent vector aligned with a series' variable list.
pub type MultiIndex = Vec<u32>;

fn binomial(n: u32, k: u32) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Sparse coefficient map shared by both bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSeries {
    ctx: Arc<RingCtx>,
    vars: Vec<VarLabel>,
    cap: u32,
    terms: BTreeMap<MultiIndex, PAdicInt>,
    truncated: bool,
}

impl SparseSeries {
    fn empty(ctx: &Arc<RingCtx>, vars: Vec<VarLabel>, cap: u32) -> Self {
        SparseSeries {
            ctx: ctx.clone(),
            vars,
            cap,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn vars(&self) -> &[VarLabel] {
        &self.vars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, PAdicInt> {
        &self.terms
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &[u32]) -> PAdicInt {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| PAdicInt::zero(&self.ctx))
    }

    pub fn var_index(&self, l: &VarLabel) -> Option<usize> {
        self.vars.iter().position(|v| v == l)
    }

    fn accumulate(&mut self, alpha: MultiIndex, c: PAdicInt) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&alpha) {
            Some(old) => old.add(&c).expect("shared context"),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&alpha);
        } else {
            self.terms.insert(alpha, sum);
        }
    }

    fn insert_checked(&mut self, alpha: MultiIndex, c: PAdicInt) -> Result<()> {
        if alpha.len() != self.vars.len() {
            return Err(Error::ShapeMismatch(
                "exponent length differs from variable count".into(),
            ));
        }
        let degree: u32 = alpha.iter().sum();
        if degree > self.cap {
            return Err(Error::DegreeCap {
                degree,
                cap: self.cap,
            });
        }
        if !Arc::ptr_eq(&self.ctx, c.ctx()) && **c.ctx() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        self.accumulate(alpha, c);
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        out.cap = self.cap.max(other.cap);
        out.truncated |= other.truncated;
        for (a, c) in &other.terms {
            out.accumulate(a.clone(), c.clone());
        }
        Ok(out)
    }

    fn map_coeffs(&self, f: impl Fn(&MultiIndex, &PAdicInt) -> PAdicInt) -> Self {
        let mut out = SparseSeries {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (a, c) in &self.terms {
            out.accumulate(a.clone(), f(a, c));
        }
        out
    }

    /// Convolution of exponents; valid in both bases.
    fn convolve(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let cap = self.cap.min(other.cap);
        let mut out = SparseSeries::empty(&self.ctx, self.vars.clone(), cap);
        out.truncated = self.truncated || other.truncated;
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let s: MultiIndex = a.iter().zip(b).map(|(u, v)| u + v).collect();
                if s.iter().sum::<u32>() > cap {
                    out.truncated = true;
                    continue;
                }
                out.accumulate(s, x.mul(y)?);
            }
        }
        Ok(out)
    }

    fn reduce(&self, target: &Arc<RingCtx>) -> Result<Self> {
        let mut out = SparseSeries::empty(target, self.vars.clone(), self.cap);
        out.truncated = self.truncated;
        for (a, c) in &self.terms {
            out.accumulate(a.clone(), c.reduce(target)?);
        }
        Ok(out)
    }

    fn serialize_as<S: Serializer>(
        &self,
        basis: &str,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            alpha: &'a MultiIndex,
            coeff: &'a PAdicInt,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            basis: &'a str,
            vars: &'a [VarLabel],
            cap: u32,
            truncated: bool,
            terms: Vec<Term<'a>>,
        }
        Repr {
            basis,
            vars: &self.vars,
            cap: self.cap,
            truncated: self.truncated,
            terms: self
                .terms
                .iter()
                .map(|(alpha, coeff)| Term { alpha, coeff })
                .collect(),
        }
        .serialize(s)
    }
}

/// `Σ c_α (1+t)^α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedSeries(SparseSeries);

/// `Σ c_β t^β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSeries(SparseSeries);

impl Deref for ShiftedSeries {
    type Target = SparseSeries;
    fn deref(&self) -> &SparseSeries {
        &self.0
    }
}

impl Deref for MonomialSeries {
    type Target = SparseSeries;
    fn deref(&self) -> &SparseSeries {
        &self.0
    }
}

impl Serialize for ShiftedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize_as("shifted", s)
    }
}

impl Serialize for MonomialSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize_as("monomial", s)
    }
}

macro_rules! common_ops {
    ($t:ident) => {
        impl $t {
            pub fn zero(ctx: &Arc<RingCtx>, vars: Vec<VarLabel>, cap: u32) -> Self {
                $t(SparseSeries::empty(ctx, vars, cap))
            }

            pub fn from_terms(
                ctx: &Arc<RingCtx>,
                vars: Vec<VarLabel>,
                cap: u32,
                terms: impl IntoIterator<Item = (MultiIndex, PAdicInt)>,
            ) -> Result<Self> {
                let mut s = SparseSeries::empty(ctx, vars, cap);
                for (a, c) in terms {
                    s.insert_checked(a, c)?;
                }
                Ok($t(s))
            }

            /// A single basis element with coefficient 1.
            pub fn basis_element(
                ctx: &Arc<RingCtx>,
                vars: Vec<VarLabel>,
                cap: u32,
                alpha: MultiIndex,
            ) -> Result<Self> {
                Self::from_terms(ctx, vars, cap, [(alpha, PAdicInt::one(ctx))])
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                Ok($t(self.0.add(&other.0)?))
            }

            pub fn neg(&self) -> Self {
                $t(self.0.map_coeffs(|_, c| c.neg()))
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.add(&other.neg())
            }

            pub fn scale(&self, k: &PAdicInt) -> Result<Self> {
                if **k.ctx() != *self.0.ctx {
                    return Err(Error::ContextMismatch);
                }
                Ok($t(self
                    .0
                    .map_coeffs(|_, c| c.mul(k).expect("checked context"))))
            }

            /// Multiply each coefficient by an exact integer depending on its exponent.
            pub fn scale_by(&self, f: impl Fn(&MultiIndex) -> BigInt) -> Self {
                $t(self.0.map_coeffs(|a, c| c.scale(&f(a))))
            }

            /// Multiply each coefficient by a residue depending on its exponent.
            pub fn scale_by_residue(&self, f: impl Fn(&MultiIndex) -> PAdicInt) -> Self {
                $t(self
                    .0
                    .map_coeffs(|a, c| c.mul(&f(a)).expect("shared context")))
            }

            pub fn mul(&self, other: &Self) -> Result<Self> {
                Ok($t(self.0.convolve(&other.0)?))
            }

            pub fn reduce(&self, target: &Arc<RingCtx>) -> Result<Self> {
                Ok($t(self.0.reduce(target)?))
            }

            pub fn to_json(&self) -> serde_json::Value {
                serde_json::to_value(self).expect("serializable")
            }
        }
    };
}

common_ops!(ShiftedSeries);
common_ops!(MonomialSeries);

impl ShiftedSeries {
    /// `(1+t)^α = Σ_{β<=α} C(α,β) t^β`.
    pub fn to_monomial(&self) -> MonomialSeries {
        let mut out = SparseSeries::empty(&self.ctx, self.vars.clone(), self.cap);
        out.truncated = self.truncated;
        for (alpha, c) in &self.terms {
            for_each_below(alpha, |beta| {
                let k: BigUint = alpha
                    .iter()
                    .zip(beta)
                    .map(|(&a, &b)| binomial(a, b))
                    .product();
                out.accumulate(beta.to_vec(), c.scale(&BigInt::from(k)));
            });
        }
        MonomialSeries(out)
    }

    /// `θ_l = (1+t_l) d/dt_l`, diagonal with eigenvalue `α(l)`.
    pub fn theta_elementary(&self, l: &VarLabel) -> Result<ShiftedSeries> {
        let k = self.var_index(l).ok_or(Error::VariableMismatch)?;
        Ok(self.scale_by(|a| BigInt::from(a[k])))
    }

    /// Set `t_l = 0` for every label outside `keep`.
    pub fn restrict_vars(&self, keep: &BTreeSet<VarLabel>) -> Result<ShiftedSeries> {
        if keep.iter().any(|l| self.var_index(l).is_none()) {
            return Err(Error::VariableMismatch);
        }
        let idx: Vec<usize> = (0..self.vars.len())
            .filter(|&k| keep.contains(&self.vars[k]))
            .collect();
        let vars = idx.iter().map(|&k| self.vars[k]).collect();
        let mut out = SparseSeries::empty(&self.ctx, vars, self.cap);
        out.truncated = self.truncated;
        for (alpha, c) in &self.terms {
            out.accumulate(idx.iter().map(|&k| alpha[k]).collect(), c.clone());
        }
        Ok(ShiftedSeries(out))
    }

    /// Relabel variables: the exponent of `l` moves to `sigma(l)`.
    pub fn weyl_act(&self, sigma: &BTreeMap<VarLabel, VarLabel>) -> Result<ShiftedSeries> {
        let target: Vec<usize> = self
            .vars
            .iter()
            .map(|l| {
                sigma
                    .get(l)
                    .and_then(|m| self.var_index(m))
                    .ok_or(Error::NotBijective)
            })
            .collect::<Result<_>>()?;
        let distinct: BTreeSet<usize> = target.iter().copied().collect();
        if distinct.len() != self.vars.len() || sigma.len() != self.vars.len() {
            return Err(Error::NotBijective);
        }
        let mut out = SparseSeries::empty(&self.ctx, self.vars.clone(), self.cap);
        out.truncated = self.truncated;
        for (alpha, c) in &self.terms {
            let mut beta = vec![0; alpha.len()];
            for (k, &t) in target.iter().enumerate() {
                beta[t] = alpha[k];
            }
            out.accumulate(beta, c.clone());
        }
        Ok(ShiftedSeries(out))
    }
}

impl MonomialSeries {
    /// `t^β = Σ_{γ<=β} C(β,γ) (-1)^{|β-γ|} (1+t)^γ`.
    pub fn to_shifted(&self) -> ShiftedSeries {
        let mut out = SparseSeries::empty(&self.ctx, self.vars.clone(), self.cap);
        out.truncated = self.truncated;
        for (beta, c) in &self.terms {
            for_each_below(beta, |gamma| {
                let k: BigUint = beta
                    .iter()
                    .zip(gamma)
                    .map(|(&a, &b)| binomial(a, b))
                    .product();
                let odd = beta.iter().zip(gamma).map(|(a, b)| a - b).sum::<u32>() % 2 == 1;
                let k = if odd {
                    -BigInt::from(k)
                } else {
                    BigInt::from(k)
                };
                out.accumulate(gamma.to_vec(), c.scale(&k));
            });
        }
        ShiftedSeries(out)
    }

    /// `(1+t_l) d/dt_l` in the monomial basis: `t^b -> b t^{b-1} + b t^b`.
    pub fn theta_elementary(&self, l: &VarLabel) -> Result<MonomialSeries> {
        let k = self.var_index(l).ok_or(Error::VariableMismatch)?;
        let mut out = SparseSeries::empty(&self.ctx, self.vars.clone(), self.cap);
        out.truncated = self.truncated;
        for (beta, c) in &self.terms {
            let b = beta[k];
            if b == 0 {
                continue;
            }
            let bc = c.scale(&BigInt::from(b));
            let mut lower = beta.clone();
            lower[k] -= 1;
            out.accumulate(lower, bc.clone());
            out.accumulate(beta.clone(), bc);
        }
        Ok(MonomialSeries(out))
    }

    /// Substitute `t_l = 0` for labels outside `keep`.
    pub fn substitute_zero(&self, keep: &BTreeSet<VarLabel>) -> Result<MonomialSeries> {
        if keep.iter().any(|l| self.var_index(l).is_none()) {
            return Err(Error::VariableMismatch);
        }
        let idx: Vec<usize> = (0..self.vars.len())
            .filter(|&k| keep.contains(&self.vars[k]))
            .collect();
        let vars = idx.iter().map(|&k| self.vars[k]).collect();
        let mut out = SparseSeries::empty(&self.ctx, vars, self.cap);
        out.truncated = self.truncated;
        for (beta, c) in &self.terms {
            let dropped_zero = (0..beta.len()).all(|k| idx.contains(&k) || beta[k] == 0);
            if dropped_zero {
                out.accumulate(idx.iter().map(|&k| beta[k]).collect(), c.clone());
            }
        }
        Ok(MonomialSeries(out))
    }
}

fn for_each_below(alpha: &[u32], mut f: impl FnMut(&[u32])) {
    let mut cur = vec![0u32; alpha.len()];
    loop {
        f(&cur);
        let mut k = 0;
        loop {
            if k == alpha.len() {
                return;
            }
            if cur[k] < alpha[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// All exponent vectors in `[0, bound)^vars`, in lexicographic order.
pub fn exponent_grid(num_vars: usize, bound: u32) -> impl Iterator<Item = MultiIndex> {
    let total = (bound as u64)
        .checked_pow(num_vars as u32)
        .unwrap_or(u64::MAX);
    (0..total).map(move |mut k| {
        let mut a = vec![0u32; num_vars];
        for slot in a.iter_mut().rev() {
            *slot = (k % bound as u64) as u32;
            k /= bound as u64;
        }
        a
    })
}

/// Coefficient map viewed as exact signed integers (symmetric lift).
pub fn signed_coeffs(s: &SparseSeries) -> BTreeMap<MultiIndex, BigInt> {
    s.terms()
        .iter()
        .map(|(a, c)| (a.clone(), c.to_signed()))
        .collect()
}
