//! Residues in Z/p^M.
//!
//! Every coefficient in the crate is a [`PAdicInt`]: an exact residue in
//! `[0, p^M)` tied to a shared [`RingCtx`].

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Modulus data shared by all residues of one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCtx {
    p: u64,
    precision: u32,
    n_bound: usize,
    modulus: BigUint,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl RingCtx {
    pub fn new(p: u64, precision: u32, n_bound: usize) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= n_bound as u64 {
            return Err(Error::PrimeTooSmall { p, n: n_bound });
        }
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        let modulus = BigUint::from(p).pow(precision);
        Ok(Arc::new(RingCtx {
            p,
            precision,
            n_bound,
            modulus,
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn n_bound(&self) -> usize {
        self.n_bound
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// Same prime and bound, different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Arc<Self>> {
        RingCtx::new(self.p, precision, self.n_bound)
    }
}

/// p-adic valuation of a residue; zero is saturated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "INFINITY"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PAdicInt {
    residue: BigUint,
    ctx: Arc<RingCtx>,
}

impl PartialEq for PAdicInt {
    fn eq(&self, other: &Self) -> bool {
        self.residue == other.residue && same_ctx(&self.ctx, &other.ctx)
    }
}

impl Eq for PAdicInt {}

fn same_ctx(a: &Arc<RingCtx>, b: &Arc<RingCtx>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PAdicInt {
    pub fn zero(ctx: &Arc<RingCtx>) -> Self {
        PAdicInt {
            residue: BigUint::zero(),
            ctx: ctx.clone(),
        }
    }

    pub fn one(ctx: &Arc<RingCtx>) -> Self {
        Self::from_biguint(ctx, BigUint::one())
    }

    pub fn from_biguint(ctx: &Arc<RingCtx>, v: BigUint) -> Self {
        PAdicInt {
            residue: v % &ctx.modulus,
            ctx: ctx.clone(),
        }
    }

    pub fn from_bigint(ctx: &Arc<RingCtx>, v: &BigInt) -> Self {
        let m = BigInt::from_biguint(Sign::Plus, ctx.modulus.clone());
        let r = v.mod_floor(&m);
        PAdicInt {
            residue: r.to_biguint().expect("nonnegative"),
            ctx: ctx.clone(),
        }
    }

    pub fn from_i64(ctx: &Arc<RingCtx>, v: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(v))
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// Symmetric lift in `(-p^M/2, p^M/2]`.
    pub fn to_signed(&self) -> BigInt {
        let r = BigInt::from(self.residue.clone());
        let m = BigInt::from(self.ctx.modulus.clone());
        if &r * 2 > m {
            r - m
        } else {
            r
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_biguint(
            &self.ctx,
            &self.residue + &other.residue,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let v = &self.residue + &self.ctx.modulus - &other.residue;
        Ok(Self::from_biguint(&self.ctx, v))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_biguint(
            &self.ctx,
            &self.residue * &other.residue,
        ))
    }

    pub fn neg(&self) -> Self {
        if self.residue.is_zero() {
            return self.clone();
        }
        PAdicInt {
            residue: &self.ctx.modulus - &self.residue,
            ctx: self.ctx.clone(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_bigint(&self.ctx, &(BigInt::from(self.residue.clone()) * k))
    }

    pub fn pow(&self, e: u64) -> Self {
        PAdicInt {
            residue: self.residue.modpow(&BigUint::from(e), &self.ctx.modulus),
            ctx: self.ctx.clone(),
        }
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.ctx.p).is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        let a = BigInt::from(self.residue.clone());
        let m = BigInt::from(self.ctx.modulus.clone());
        let g = a.extended_gcd(&m);
        debug_assert!(g.gcd.is_one());
        Ok(Self::from_bigint(&self.ctx, &g.x))
    }

    /// `self^e` for a possibly negative exponent; negative powers need a unit.
    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn valuation(&self) -> Valuation {
        if self.residue.is_zero() {
            return Valuation::Infinite;
        }
        let p = BigUint::from(self.ctx.p);
        let mut r = self.residue.clone();
        let mut v = 0;
        while (&r % &p).is_zero() {
            r /= &p;
            v += 1;
        }
        Valuation::Finite(v)
    }

    /// Reduce into a context of lower (or equal) precision with the same prime.
    pub fn reduce(&self, target: &Arc<RingCtx>) -> Result<Self> {
        if target.p != self.ctx.p {
            return Err(Error::ContextMismatch);
        }
        if target.precision > self.ctx.precision {
            return Err(Error::InsufficientPrecision {
                requested: target.precision,
                available: self.ctx.precision,
            });
        }
        Ok(Self::from_biguint(target, self.residue.clone()))
    }
}

/// True iff `p^m` divides `a - b`.
pub fn congruent(a: &PAdicInt, b: &PAdicInt, m: u32) -> Result<bool> {
    a.check(b)?;
    if m > a.ctx.precision {
        return Err(Error::InsufficientPrecision {
            requested: m,
            available: a.ctx.precision,
        });
    }
    let pm = BigUint::from(a.ctx.p).pow(m);
    Ok((&a.residue % &pm) == (&b.residue % &pm))
}

pub fn factorial_exact(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Teichmuller-type projection `x -> x^(p^(M-1))`, exact on (p-1)-th roots of unity.
pub fn teichmuller(x: &PAdicInt) -> PAdicInt {
    let e = BigUint::from(x.ctx.p).pow(x.ctx.precision - 1);
    PAdicInt {
        residue: x.residue.modpow(&e, &x.ctx.modulus),
        ctx: x.ctx.clone(),
    }
}

/// Reduce a signed exponent modulo `p - 1` into `[0, p - 1)`.
pub fn twist_exponent(e: i64, p: u64) -> u64 {
    e.rem_euclid((p - 1) as i64) as u64
}

impl fmt::Display for PAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod {}^{}",
            self.residue, self.ctx.p, self.ctx.precision
        )
    }
}

impl Serialize for PAdicInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PAdicInt", 3)?;
        st.serialize_field("residue", &self.residue.to_string())?;
        st.serialize_field("p", &self.ctx.p)?;
        st.serialize_field("M", &self.ctx.precision)?;
        st.end()
    }
}

/// Exact residue of a signed integer modulo `modulus`.
pub fn mod_floor(v: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    v.mod_floor(&m).to_biguint().expect("nonnegative")
}

pub fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

pub fn abs_big(v: &BigInt) -> BigUint {
    v.abs().to_biguint().expect("nonnegative")
}
