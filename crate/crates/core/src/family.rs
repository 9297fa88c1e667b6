//! Toy model of Eisenstein coefficients and their moment tables.
//!
//! `K = Q(√-d)` with `p` split, so `O_K ⊗ Z_p = Z_p × Z_p` through the two
//! embeddings `σ, σ̄`; everything is computed modulo `p^M`. Hermitian
//! exponents have rational-integer diagonals and off-diagonal entries
//! `x + y√-d`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{congruent, teichmuller, twist_exponent, PAdicInt, RingCtx};
use crate::restriction::build_restriction;
use crate::theta::{det_bareiss, phi_zeta, CharacterZeta, ThetaKappa};
use crate::weight::{PartitionedSignature, Signature, Weight};

/// Element of `O_K ⊗ Z/p^M`, as its two embeddings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToyElem {
    pub sigma: PAdicInt,
    pub sigma_bar: PAdicInt,
}

impl ToyElem {
    pub fn rational(x: &PAdicInt) -> Self {
        ToyElem {
            sigma: x.clone(),
            sigma_bar: x.clone(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.sigma.is_unit() && self.sigma_bar.is_unit()
    }

    pub fn mul(&self, o: &ToyElem) -> Result<ToyElem> {
        Ok(ToyElem {
            sigma: self.sigma.mul(&o.sigma)?,
            sigma_bar: self.sigma_bar.mul(&o.sigma_bar)?,
        })
    }

    pub fn inv(&self) -> Result<ToyElem> {
        Ok(ToyElem {
            sigma: self.sigma.inv()?,
            sigma_bar: self.sigma_bar.inv()?,
        })
    }

    pub fn conj(&self) -> ToyElem {
        ToyElem {
            sigma: self.sigma_bar.clone(),
            sigma_bar: self.sigma.clone(),
        }
    }

    /// `N_{K/E}(x) = σ(x)σ̄(x)`.
    pub fn norm(&self) -> PAdicInt {
        self.sigma.mul(&self.sigma_bar).expect("shared context")
    }
}

/// The split CM model.
#[derive(Debug, Clone)]
pub struct ToyCM {
    ctx: Arc<RingCtx>,
    d: u64,
    sqrt_neg_d: PAdicInt,
    roots_of_unity: Vec<ToyElem>,
}

fn squarefree(d: u64) -> bool {
    (2..).take_while(|k| k * k <= d).all(|k| !d.is_multiple_of(k * k))
}

impl ToyCM {
    /// Smallest squarefree `d` with `-d` a square mod `p`, lifted by Newton iteration.
    pub fn new(ctx: &Arc<RingCtx>) -> Result<Self> {
        let p = ctx.p();
        if p == 2 {
            return Err(Error::Invalid("toy model needs an odd prime".into()));
        }
        let (d, r0) = (1..p)
            .filter(|&d| squarefree(d))
            .find_map(|d| (1..p).find(|&r| (r * r + d) % p == 0).map(|r| (d, r)))
            .ok_or_else(|| Error::Invalid("no split imaginary quadratic field".into()))?;
        let neg_d = PAdicInt::from_i64(ctx, -(d as i64));
        let two = PAdicInt::from_i64(ctx, 2);
        let mut r = PAdicInt::from_i64(ctx, r0 as i64);
        for _ in 0..ctx.precision() {
            let f = r.mul(&r)?.sub(&neg_d)?;
            r = r.sub(&f.mul(&two.mul(&r)?.inv()?)?)?;
        }
        debug_assert_eq!(r.mul(&r)?, neg_d);
        let mut cm = ToyCM {
            ctx: ctx.clone(),
            d,
            sqrt_neg_d: r,
            roots_of_unity: Vec::new(),
        };
        let one = PAdicInt::one(ctx);
        let gens: Vec<ToyElem> = match d {
            1 => vec![cm.global(0, 1)],
            3 => {
                let half = two.inv()?;
                let s = &cm.sqrt_neg_d;
                vec![ToyElem {
                    sigma: one.add(s)?.mul(&half)?,
                    sigma_bar: one.sub(s)?.mul(&half)?,
                }]
            }
            _ => vec![ToyElem::rational(&one.neg())],
        };
        let mut units = vec![ToyElem::rational(&one)];
        loop {
            let next = units.last().expect("nonempty").mul(&gens[0])?;
            if next == units[0] {
                break;
            }
            units.push(next);
        }
        cm.roots_of_unity = units;
        Ok(cm)
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn sqrt_neg_d(&self) -> &PAdicInt {
        &self.sqrt_neg_d
    }

    /// Image of the global element `x + y√-d`.
    pub fn global(&self, x: i64, y: i64) -> ToyElem {
        let (x, y) = (
            PAdicInt::from_i64(&self.ctx, x),
            PAdicInt::from_i64(&self.ctx, y),
        );
        let ys = y.mul(&self.sqrt_neg_d).expect("shared context");
        ToyElem {
            sigma: x.add(&ys).expect("ctx"),
            sigma_bar: x.sub(&ys).expect("ctx"),
        }
    }

    /// Global units `O_K^×` (all roots of unity for imaginary quadratic `K`).
    pub fn global_units(&self) -> &[ToyElem] {
        &self.roots_of_unity
    }

    pub fn random_elem(&self, rng: &mut impl Rng) -> ToyElem {
        let m = self.ctx.modulus().clone();
        let draw = |rng: &mut dyn rand::RngCore| {
            let bytes: Vec<u8> = (0..(m.bits() / 8 + 2)).map(|_| rng.gen()).collect();
            PAdicInt::from_biguint(&self.ctx, num_bigint::BigUint::from_bytes_le(&bytes))
        };
        ToyElem {
            sigma: draw(rng),
            sigma_bar: draw(rng),
        }
    }

    pub fn random_unit(&self, rng: &mut impl Rng) -> ToyElem {
        loop {
            let e = self.random_elem(rng);
            if e.is_unit() {
                return e;
            }
        }
    }
}

/// `N_{k,ν}(b) = σ(b)^k (σ(b)/σ̄(b))^ν`.
pub fn norm_knu(b: &ToyElem, k: i64, nu: i64) -> Result<PAdicInt> {
    let a = b.sigma.pow_signed(k + nu)?;
    a.mul(&b.sigma_bar.pow_signed(-nu)?)
}

/// A positive Hermitian exponent over `Z[√-d]` (`n <= 2`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HermitianExponent {
    pub diag: Vec<i64>,
    /// Upper off-diagonal entries `x + y√-d`, row-major.
    pub off: Vec<(i64, i64)>,
}

impl HermitianExponent {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Determinant (a rational integer).
    pub fn det(&self, d: u64) -> i64 {
        match self.n() {
            1 => self.diag[0],
            2 => {
                let (x, y) = self.off[0];
                self.diag[0] * self.diag[1] - (x * x + d as i64 * y * y)
            }
            _ => unreachable!("n <= 2"),
        }
    }

    pub fn is_positive(&self, d: u64) -> bool {
        self.diag[0] > 0 && self.det(d) > 0
    }

    /// Global entry `(r, c)` as `x + y√-d`.
    pub fn entry(&self, r: usize, c: usize) -> (i64, i64) {
        if r == c {
            (self.diag[r], 0)
        } else if r < c {
            self.off[0]
        } else {
            let (x, y) = self.off[0];
            (x, -y)
        }
    }

    /// `σ(α)` as a matrix over `Z/p^M`; its transpose is `σ̄(α)`.
    pub fn sigma_matrix(&self, cm: &ToyCM) -> Vec<Vec<PAdicInt>> {
        (0..self.n())
            .map(|r| {
                (0..self.n())
                    .map(|c| {
                        let (x, y) = self.entry(r, c);
                        cm.global(x, y).sigma
                    })
                    .collect()
            })
            .collect()
    }
}

/// Positive Hermitian exponents with entries of height at most `cap`.
pub fn enumerate_hermitian(n: usize, cap: i64, d: u64) -> Result<Vec<HermitianExponent>> {
    let mut out = Vec::new();
    match n {
        1 => {
            for a in 1..=cap {
                out.push(HermitianExponent {
                    diag: vec![a],
                    off: vec![],
                });
            }
        }
        2 => {
            for a in 1..=cap {
                for c in 1..=cap {
                    for x in -cap..=cap {
                        for y in -cap..=cap {
                            let h = HermitianExponent {
                                diag: vec![a, c],
                                off: vec![(x, y)],
                            };
                            if h.is_positive(d) {
                                out.push(h);
                            }
                        }
                    }
                }
            }
        }
        _ => {
            return Err(Error::Invalid(format!(
                "Hermitian enumeration supports n <= 2, got {n}"
            )))
        }
    }
    out.sort();
    Ok(out)
}

/// Unitary part data: `χ_u(x) = ω(σx)^{k+ν+e_σ} ω(σ̄x)^{-ν+e_σ̄}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiU {
    pub e_sigma: i64,
    pub e_sigma_bar: i64,
}

impl ChiU {
    pub fn trivial() -> Self {
        ChiU {
            e_sigma: 0,
            e_sigma_bar: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FData {
    pub k: i64,
    pub nu: i64,
    pub chi_u: ChiU,
    pub zeta: CharacterZeta,
}

impl FData {
    /// Checks that the twist of `χ_u` is trivial on the global units, which is
    /// what the transformation law needs.
    pub fn new(cm: &ToyCM, k: i64, nu: i64, chi_u: ChiU, zeta: CharacterZeta) -> Result<Self> {
        let n = zeta.sig.n();
        if zeta.sig.num_places() != 1 || zeta.sig.a_plus(0) * 2 != n {
            return Err(Error::Invalid(
                "family data needs a single place of signature (n,n)".into(),
            ));
        }
        let data = FData { k, nu, chi_u, zeta };
        let p = cm.ctx.p();
        for e in cm.global_units() {
            let w = teichmuller(&e.sigma)
                .pow(twist_exponent(data.chi_u.e_sigma, p))
                .mul(&teichmuller(&e.sigma_bar).pow(twist_exponent(data.chi_u.e_sigma_bar, p)))?;
            if w != PAdicInt::one(&cm.ctx) {
                return Err(Error::Invalid(
                    "twist of χ_u is not trivial on global units".into(),
                ));
            }
        }
        Ok(data)
    }

    pub fn size(&self) -> usize {
        self.zeta.sig.a_plus(0)
    }

    pub fn chi_u(&self, x: &ToyElem) -> Result<PAdicInt> {
        let p = x.sigma.ctx().p();
        let a = teichmuller(&x.sigma).pow(twist_exponent(self.k + self.nu + self.chi_u.e_sigma, p));
        let b = teichmuller(&x.sigma_bar).pow(twist_exponent(-self.nu + self.chi_u.e_sigma_bar, p));
        a.mul(&b)
    }
}

/// Exponent vector for signature `(n,n)`: `α(l_{c, n+r}) = M[r][c]`.
pub fn exponent_vector(m: &[Vec<PAdicInt>]) -> Vec<BigInt> {
    let n = m.len();
    let sig = Signature::single(n, n).expect("n >= 1");
    sig.variables()
        .iter()
        .map(|l| BigInt::from(m[l.j - n - 1][l.i - 1].residue().clone()))
        .collect()
}

fn transpose(m: &[Vec<PAdicInt>]) -> Vec<Vec<PAdicInt>> {
    (0..m.len())
        .map(|r| (0..m.len()).map(|c| m[c][r].clone()).collect())
        .collect()
}

fn det_mod(m: &[Vec<PAdicInt>]) -> PAdicInt {
    let ctx = m[0][0].ctx().clone();
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigInt::from(x.residue().clone()))
                .collect()
        })
        .collect();
    PAdicInt::from_bigint(&ctx, &det_bareiss(&big))
}

/// `F_{χ_u,ζ}(x, y) = χ_u(x) φ_ζ(N_{K/E}(x) ᵗy)` on units × invertible matrices, else 0.
pub fn build_f(data: &FData) -> impl Fn(&ToyElem, &[Vec<PAdicInt>]) -> Result<PAdicInt> + '_ {
    move |x, y| {
        let ctx = x.sigma.ctx().clone();
        if !x.is_unit() || !det_mod(y).is_unit() {
            return Ok(PAdicInt::zero(&ctx));
        }
        let nx = x.norm();
        let arg: Vec<Vec<PAdicInt>> = transpose(y)
            .iter()
            .map(|r| r.iter().map(|v| v.mul(&nx)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        data.chi_u(x)?
            .mul(&phi_zeta(&data.zeta, &exponent_vector(&arg), &ctx)?)
    }
}

/// `Σ_a F(a, N(a)^{-1}α) N_{k,ν}(a^{-1} det α) N_{E/Q}(det α)^{-n}`; zero when `det α` is not a unit.
pub fn coefficient(
    cm: &ToyCM,
    alpha: &HermitianExponent,
    a_set: &[ToyElem],
    data: &FData,
) -> Result<PAdicInt> {
    let ctx = cm.ctx();
    let det = PAdicInt::from_i64(ctx, alpha.det(cm.d));
    if !det.is_unit() {
        return Ok(PAdicInt::zero(ctx));
    }
    let f = build_f(data);
    let a_mat = alpha.sigma_matrix(cm);
    let n = alpha.n() as i64;
    let tail = det.pow_signed(-n)?;
    let mut acc = PAdicInt::zero(ctx);
    for a in a_set {
        if !a.is_unit() {
            return Err(Error::NonUnit);
        }
        let na_inv = a.norm().inv()?;
        let y: Vec<Vec<PAdicInt>> = a_mat
            .iter()
            .map(|r| r.iter().map(|v| v.mul(&na_inv)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let nk = norm_knu(&a.inv()?.mul(&ToyElem::rational(&det))?, data.k, data.nu)?;
        acc = acc.add(&f(a, &y)?.mul(&nk)?.mul(&tail)?)?;
    }
    Ok(acc)
}

/// A q-expansion: coefficients indexed by exponent keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QExpansion {
    pub n: usize,
    pub entries: BTreeMap<HermitianExponent, PAdicInt>,
}

impl QExpansion {
    pub fn from_coefficients(
        cm: &ToyCM,
        n: usize,
        cap: i64,
        data: &FData,
        a_set: &[ToyElem],
    ) -> Result<Self> {
        let alphas = enumerate_hermitian(n, cap, cm.d)?;
        let entries = alphas
            .par_iter()
            .map(|h| Ok((h.clone(), coefficient(cm, h, a_set, data)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect();
        Ok(QExpansion { n, entries })
    }
}

/// `c(α) -> φ_κ(σ(α)) c(α)`, with the exponent block read off `σ(α)`.
pub fn apply_theta_q(cm: &ToyCM, q: &QExpansion, kappa: &Weight) -> Result<QExpansion> {
    let sig = Signature::single(q.n, q.n)?;
    if kappa.sig() != &sig {
        return Err(Error::ShapeMismatch(
            "κ must live on signature (n,n)".into(),
        ));
    }
    let theta = ThetaKappa::new(kappa)?;
    let ctx = cm.ctx();
    let entries = q
        .entries
        .iter()
        .map(|(h, c)| {
            let alpha = exponent_vector(&h.sigma_matrix(cm));
            let phi = PAdicInt::from_bigint(ctx, &theta.poly.eval(&alpha));
            Ok((h.clone(), c.mul(&phi)?))
        })
        .collect::<Result<_>>()?;
    Ok(QExpansion { n: q.n, entries })
}

/// Character data of one moment: `χ̃ ψ κ`.
#[derive(Debug, Clone, Serialize)]
pub struct MomentData {
    pub k: i64,
    pub nu: i64,
    pub chi_u: ChiU,
    /// Teichmuller exponents of `ψ` on the `+` torus coordinates.
    pub psi: Vec<i64>,
    pub kappa: Weight,
}

impl MomentData {
    fn f_data(&self, cm: &ToyCM) -> Result<FData> {
        let zeta = CharacterZeta::trivial(self.kappa.sig()).with_twists(vec![self.psi.clone()])?;
        FData::new(cm, self.k, self.nu, self.chi_u.clone(), zeta)
    }

    /// `χ_u(a) N_{k,ν}(a^{-1}x) ψ(t) κ(t)` at a point of `X_p × T(Z_p)`.
    pub fn character_value(&self, cm: &ToyCM, pt: &SamplePoint) -> Result<PAdicInt> {
        let f = self.f_data(cm)?;
        let mut v = f
            .chi_u(&pt.a)?
            .mul(&norm_knu(&pt.a.inv()?.mul(&pt.x)?, self.k, self.nu)?)?;
        let p = cm.ctx.p();
        for (i, t) in pt.t.iter().take(self.psi.len()).enumerate() {
            let e = self.kappa.place(0)[i];
            let tw = teichmuller(t).pow(twist_exponent(self.psi[i], p));
            v = v.mul(&t.pow_signed(e)?)?.mul(&tw)?;
        }
        Ok(v)
    }
}

/// Moment table, keyed by the kept exponent entries after restriction.
#[derive(Debug, Clone, Serialize)]
pub struct MomentTable {
    pub data: MomentData,
    pub partition: Vec<Vec<(usize, usize)>>,
    pub lattice: String,
    pub entries: BTreeMap<Vec<(i64, i64)>, PAdicInt>,
}

impl MomentTable {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "char": {"k": self.data.k, "nu": self.data.nu, "chi_u": self.data.chi_u, "psi": self.data.psi},
            "kappa": self.data.kappa.entries(),
            "partition": self.partition,
            "lattice": self.lattice,
            "entries": self.entries.iter().map(|(a, c)| serde_json::json!({"alpha": a, "coeff": c})).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("alpha,coeff\n");
        for (a, c) in &self.entries {
            let key: Vec<String> = a
                .iter()
                .map(|(x, y)| {
                    if *y == 0 {
                        x.to_string()
                    } else {
                        format!("{x}{y:+}i")
                    }
                })
                .collect();
            s.push_str(&format!("\"{}\",{}\n", key.join(" "), c.residue()));
        }
        s
    }
}

/// `res Θ^κ G_{k,ν,F_{χ_u,ψ}}` on the toy lattice up to height `cap`.
pub fn measure_moment(
    cm: &ToyCM,
    data: &MomentData,
    cap: i64,
    part: Option<&PartitionedSignature>,
) -> Result<MomentTable> {
    let n = data.kappa.sig().n() / 2;
    if data.k < n as i64 {
        return Err(Error::BelowEisensteinRange { k: data.k, n });
    }
    if !data.kappa.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let f = data.f_data(cm)?;
    let q = QExpansion::from_coefficients(
        cm,
        n,
        cap,
        &f,
        &[ToyElem::rational(&PAdicInt::one(cm.ctx()))],
    )?;
    let q = apply_theta_q(cm, &q, &data.kappa)?;
    let part = part
        .cloned()
        .unwrap_or_else(|| PartitionedSignature::trivial(data.kappa.sig()));
    if part.ambient() != data.kappa.sig() {
        return Err(Error::ShapeMismatch(
            "partition of a different signature".into(),
        ));
    }
    let kept = build_restriction(&part).kept_vars();
    let mut entries: BTreeMap<Vec<(i64, i64)>, PAdicInt> = BTreeMap::new();
    for (h, c) in q.entries {
        let key: Vec<(i64, i64)> = kept.iter().map(|l| h.entry(l.j - n - 1, l.i - 1)).collect();
        let slot = entries
            .entry(key)
            .or_insert_with(|| PAdicInt::zero(cm.ctx()));
        *slot = slot.add(&c)?;
    }
    Ok(MomentTable {
        data: data.clone(),
        partition: part.parts().iter().map(|s| s.places().to_vec()).collect(),
        lattice: format!(
            "stand-in: Hermitian matrices over Z[sqrt(-{})], entries of height <= {cap}",
            cm.d
        ),
        entries,
    })
}

/// A point of `X_p × T(Z_p)`: unit `a`, idele coordinate `x`, torus coordinates `t`.
#[derive(Debug, Clone, Serialize)]
pub struct SamplePoint {
    #[serde(skip)]
    pub a: ToyElem,
    #[serde(skip)]
    pub x: ToyElem,
    pub t: Vec<PAdicInt>,
}

/// Table points `(1, det α, t_α)` for every α with unit minors, plus `extra` random points.
pub fn kummer_sample(
    cm: &ToyCM,
    n: usize,
    cap: i64,
    extra: usize,
    seed: u64,
) -> Result<Vec<SamplePoint>> {
    let ctx = cm.ctx();
    let one = ToyElem::rational(&PAdicInt::one(ctx));
    let mut pts = Vec::new();
    for h in enumerate_hermitian(n, cap, cm.d)? {
        let a = h.sigma_matrix(cm);
        let mut t = Vec::new();
        let mut prev = PAdicInt::one(ctx);
        let mut ok = true;
        for i in 1..=n {
            let sub: Vec<Vec<PAdicInt>> = a[..i].iter().map(|r| r[..i].to_vec()).collect();
            let m = det_mod(&sub).mul(&PAdicInt::from_biguint(
                ctx,
                crate::padic::factorial_exact(i as u64),
            ))?;
            if !m.is_unit() {
                ok = false;
                break;
            }
            t.push(m.mul(&prev.inv()?)?);
            prev = m;
        }
        let det = PAdicInt::from_i64(ctx, h.det(cm.d));
        if ok && det.is_unit() {
            t.extend((0..n).map(|_| PAdicInt::one(ctx)));
            pts.push(SamplePoint {
                a: one.clone(),
                x: ToyElem::rational(&det),
                t,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        let a = cm.random_unit(&mut rng);
        let x = cm.random_unit(&mut rng);
        let t = (0..2 * n).map(|_| cm.random_unit(&mut rng).sigma).collect();
        pts.push(SamplePoint { a, x, t });
    }
    Ok(pts)
}

/// `Σ b_i · (moment i)` for integer coefficients `b_i`.
#[derive(Debug, Clone, Serialize)]
pub struct KummerTest {
    pub terms: Vec<(i64, MomentData)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KummerOutcome {
    pub status: &'static str,
    pub premise_points: usize,
    pub entries_checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KummerReport {
    pub m: u32,
    pub outcomes: Vec<KummerOutcome>,
}

impl KummerReport {
    pub fn counterexamples(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.status == "counterexample")
            .count()
    }
}

/// Abstract Kummer congruences: whenever the character combination vanishes
/// mod `p^m` on the sample, the moment combination must vanish mod `p^m`.
pub fn kummer_certify(
    cm: &ToyCM,
    tests: &[KummerTest],
    m: u32,
    sample: &[SamplePoint],
    cap: i64,
    part: Option<&PartitionedSignature>,
) -> Result<KummerReport> {
    let ctx = cm.ctx();
    let mut outcomes = Vec::new();
    for test in tests {
        let combo = |vals: Vec<PAdicInt>| -> Result<PAdicInt> {
            let mut acc = PAdicInt::zero(ctx);
            for ((b, _), v) in test.terms.iter().zip(vals) {
                acc = acc.add(&v.scale(&BigInt::from(*b)))?;
            }
            Ok(acc)
        };
        let mut premise_fail = None;
        for (k, pt) in sample.iter().enumerate() {
            let vals = test
                .terms
                .iter()
                .map(|(_, d)| d.character_value(cm, pt))
                .collect::<Result<Vec<_>>>()?;
            if !congruent(&combo(vals)?, &PAdicInt::zero(ctx), m)? {
                premise_fail = Some(k);
                break;
            }
        }
        if let Some(k) = premise_fail {
            outcomes.push(KummerOutcome {
                status: "premise not satisfied, no claim",
                premise_points: k + 1,
                entries_checked: 0,
                witness: Some(format!("sample point {k}")),
            });
            continue;
        }
        let tables = test
            .terms
            .iter()
            .map(|(_, d)| measure_moment(cm, d, cap, part))
            .collect::<Result<Vec<_>>>()?;
        let mut witness = None;
        let keys: Vec<_> = tables[0].entries.keys().cloned().collect();
        for key in &keys {
            let vals = tables
                .iter()
                .map(|t| {
                    t.entries
                        .get(key)
                        .cloned()
                        .unwrap_or_else(|| PAdicInt::zero(ctx))
                })
                .collect();
            let v = combo(vals)?;
            if !congruent(&v, &PAdicInt::zero(ctx), m)? {
                witness = Some(format!("alpha {key:?}: combination {}", v.residue()));
                break;
            }
        }
        outcomes.push(KummerOutcome {
            status: if witness.is_some() {
                "counterexample"
            } else {
                "ok"
            },
            premise_points: sample.len(),
            entries_checked: keys.len(),
            witness,
        });
    }
    Ok(KummerReport { m, outcomes })
}
