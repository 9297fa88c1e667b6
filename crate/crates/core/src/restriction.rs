//! Restriction from an ambient signature to a block-diagonal partition.
//!
//! Variables `l_{i,j}` whose row and column lie in the same block survive;
//! the rest are set to zero.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::PAdicInt;
use crate::series::{MonomialSeries, MultiIndex, ShiftedSeries, VarLabel};
use crate::theta::{ThetaKappa, ThetaPolynomial};
use crate::weight::{
    PAdicCharacterApprox, PartitionedSignature, Signature, Weight, WeylConjugation,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionMap {
    part: PartitionedSignature,
    keep: BTreeSet<VarLabel>,
    /// Kept ambient label -> (block, label in the block's own signature).
    local: BTreeMap<VarLabel, (usize, VarLabel)>,
}

pub fn build_restriction(part: &PartitionedSignature) -> RestrictionMap {
    let sig = part.ambient();
    let mut local = BTreeMap::new();
    for b in 0..part.parts().len() {
        for tau in 0..sig.num_places() {
            let (pp, pm) = part.block_positions(b, tau);
            let ap_local = part.parts()[b].a_plus(tau);
            for (ri, &i) in pp.iter().enumerate() {
                for (rj, &j) in pm.iter().enumerate() {
                    local.insert(
                        VarLabel::new(tau, i, j),
                        (b, VarLabel::new(tau, ri + 1, ap_local + rj + 1)),
                    );
                }
            }
        }
    }
    RestrictionMap {
        part: part.clone(),
        keep: local.keys().copied().collect(),
        local,
    }
}

impl RestrictionMap {
    pub fn partition(&self) -> &PartitionedSignature {
        &self.part
    }

    pub fn keep(&self) -> &BTreeSet<VarLabel> {
        &self.keep
    }

    pub fn dropped(&self) -> Vec<VarLabel> {
        self.part
            .ambient()
            .variables()
            .into_iter()
            .filter(|l| !self.keep.contains(l))
            .collect()
    }

    pub fn local_label(&self, l: &VarLabel) -> Option<(usize, VarLabel)> {
        self.local.get(l).copied()
    }

    /// Kept labels in ambient order.
    pub fn kept_vars(&self) -> Vec<VarLabel> {
        self.part
            .ambient()
            .variables()
            .into_iter()
            .filter(|l| self.keep.contains(l))
            .collect()
    }
}

/// `t_l -> 0` for dropped labels; kept labels retain their ambient names.
pub fn res_series(s: &ShiftedSeries, r: &RestrictionMap) -> Result<ShiftedSeries> {
    if s.vars() != r.part.ambient().variables().as_slice() {
        return Err(Error::VariableMismatch);
    }
    s.restrict_vars(&r.keep)
}

/// Same map through the monomial basis.
pub fn res_series_monomial(s: &ShiftedSeries, r: &RestrictionMap) -> Result<ShiftedSeries> {
    let m: MonomialSeries = s.to_monomial();
    Ok(m.substitute_zero(&r.keep)?.to_shifted())
}

/// `θ'^λ` on the partitioned side: the product of each block's own operator.
#[derive(Debug, Clone)]
pub struct PartitionedTheta {
    map: RestrictionMap,
    blocks: Vec<ThetaKappa>,
}

impl PartitionedTheta {
    pub fn new(lambda: &Weight, part: &PartitionedSignature) -> Result<Self> {
        let comps = part.restrict_components(lambda)?;
        let blocks = comps
            .iter()
            .map(ThetaKappa::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(PartitionedTheta {
            map: build_restriction(part),
            blocks,
        })
    }

    /// Eigenvalue on `(1+t)^α` with `α` over the kept labels.
    pub fn eigenvalue(&self, kept: &[VarLabel], alpha: &[u32]) -> BigInt {
        let mut local: Vec<Vec<u32>> = self
            .blocks
            .iter()
            .map(|t| vec![0; t.poly.vars().len()])
            .collect();
        for (l, &a) in kept.iter().zip(alpha) {
            let (b, ll) = self.map.local[l];
            let k = self.blocks[b]
                .poly
                .vars()
                .binary_search(&ll)
                .expect("local label");
            local[b][k] = a;
        }
        self.blocks
            .iter()
            .zip(&local)
            .map(|(t, a)| t.eigenvalue(a))
            .product()
    }

    /// The operator as a polynomial in the ambient exponents (dropped ones absent).
    pub fn ambient_poly(&self) -> ThetaPolynomial {
        let sig = self.map.part.ambient();
        let vars = sig.variables();
        let mut acc = ThetaPolynomial::one(sig);
        for (b, t) in self.blocks.iter().enumerate() {
            let mut lifted: BTreeMap<MultiIndex, BigInt> = BTreeMap::new();
            for (e, c) in t.poly.terms() {
                let mut full = vec![0u32; vars.len()];
                for (k, &x) in e.iter().enumerate() {
                    let ll = t.poly.vars()[k];
                    let amb = self
                        .map
                        .local
                        .iter()
                        .find(|(_, v)| **v == (b, ll))
                        .map(|(a, _)| *a)
                        .expect("local label has an ambient name");
                    full[vars.binary_search(&amb).expect("ambient label")] = x;
                }
                lifted.insert(full, c.clone());
            }
            acc = acc.mul(&ThetaPolynomial::from_terms(vars.clone(), lifted));
        }
        acc
    }

    pub fn apply(&self, s: &ShiftedSeries) -> Result<ShiftedSeries> {
        let kept = self.map.kept_vars();
        if s.vars() != kept.as_slice() {
            return Err(Error::VariableMismatch);
        }
        Ok(s.scale_by(|a| self.eigenvalue(&kept, a)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutationReport {
    pub verdict: bool,
    pub hypotheses_met: bool,
    pub label: &'static str,
    /// `res(θ^λ s)`.
    pub lhs: ShiftedSeries,
    /// `θ'^λ(res s)`.
    pub rhs: ShiftedSeries,
    pub defect: ShiftedSeries,
}

/// Compare `res ∘ θ^λ` with `θ'^λ ∘ res` on `s`.
pub fn check_pure_commutation(
    lambda: &Weight,
    part: &PartitionedSignature,
    s: &ShiftedSeries,
) -> Result<CommutationReport> {
    let (pure, _) = part.is_pure(lambda)?;
    let hypotheses_met = pure && lambda.is_symmetric();
    let r = build_restriction(part);
    let lhs = res_series(&ThetaKappa::new(lambda)?.apply(s)?, &r)?;
    let rhs = PartitionedTheta::new(lambda, part)?.apply(&res_series(s, &r)?)?;
    let defect = lhs.sub(&rhs)?;
    Ok(CommutationReport {
        verdict: defect.is_zero(),
        hypotheses_met,
        label: if hypotheses_met {
            "theorem"
        } else {
            "informational"
        },
        lhs,
        rhs,
        defect,
    })
}

/// Polynomial form of the commutation: `θ^λ` and `θ'^λ` agree as polynomials in
/// the ambient exponents, which is commutation on every `(1+t)^α`.
pub fn commutes_on_basis(lambda: &Weight, part: &PartitionedSignature) -> Result<bool> {
    let amb = ThetaKappa::new(lambda)?;
    Ok(amb.poly == PartitionedTheta::new(lambda, part)?.ambient_poly())
}

/// The series `t_{1,4} t_{2,3}` over signature (2,2), written in the shifted basis.
pub fn builtin_witness(
    ctx: &std::sync::Arc<crate::padic::RingCtx>,
    sig: &Signature,
) -> Result<ShiftedSeries> {
    let vars = sig.variables();
    let mut beta = vec![0u32; vars.len()];
    for l in [VarLabel::new(0, 1, 4), VarLabel::new(0, 2, 3)] {
        let k = vars
            .binary_search(&l)
            .map_err(|_| Error::Invalid("witness needs labels (1,4) and (2,3)".into()))?;
        beta[k] = 1;
    }
    let m = MonomialSeries::from_terms(
        ctx,
        vars,
        crate::series::DEFAULT_DEGREE_CAP,
        [(beta, PAdicInt::one(ctx))],
    )?;
    Ok(m.to_shifted())
}

/// `g_σ(t_l) = t_{σ(l)}` for the block transposition of a Weyl conjugation.
pub fn weyl_var_map(conj: &WeylConjugation) -> BTreeMap<VarLabel, VarLabel> {
    let pi = conj.position_map();
    conj.original
        .ambient()
        .variables()
        .into_iter()
        .map(|l| {
            (
                l,
                VarLabel::new(l.place, pi[l.place][l.i - 1], pi[l.place][l.j - 1]),
            )
        })
        .collect()
}

fn invert(m: &BTreeMap<VarLabel, VarLabel>) -> BTreeMap<VarLabel, VarLabel> {
    m.iter().map(|(a, b)| (*b, *a)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct WeylExtensionReport {
    pub verdict: bool,
    pub block_index: usize,
    pub lambda0: Weight,
    /// `θ'^χ(res s)`.
    pub lhs: ShiftedSeries,
    /// `res(g_σ θ^{χ^σ} g_σ^{-1} s)`.
    pub rhs: ShiftedSeries,
}

/// Verify `θ'^χ ∘ res = res ∘ (g_σ ∘ θ^{χ^σ} ∘ g_σ^{-1})` modulo `p^{m+1}`.
pub fn extend_via_weyl(
    chi: &PAdicCharacterApprox,
    part: &PartitionedSignature,
    s: &ShiftedSeries,
) -> Result<WeylExtensionReport> {
    let lambda = &chi.representative;
    let conj = part.weyl_conjugate_to_dominant(lambda)?;
    let avail = s.ctx().precision();
    if chi.level + 1 > avail {
        return Err(Error::InsufficientPrecision {
            requested: chi.level + 1,
            available: avail,
        });
    }
    let target = s.ctx().with_precision(chi.level + 1)?;
    let low = s.reduce(&target)?;
    let r = build_restriction(part);
    let lhs = PartitionedTheta::new(lambda, part)?.apply(&res_series(&low, &r)?)?;
    let sigma = weyl_var_map(&conj);
    let pulled = low.weyl_act(&invert(&sigma))?;
    let acted = ThetaKappa::new(&conj.lambda0)?.apply(&pulled)?;
    let rhs = res_series(&acted.weyl_act(&sigma)?, &r)?;
    Ok(WeylExtensionReport {
        verdict: lhs == rhs,
        block_index: conj.index,
        lambda0: conj.lambda0.clone(),
        lhs,
        rhs,
    })
}
