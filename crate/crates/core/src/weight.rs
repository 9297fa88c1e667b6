//! Signatures, weights and signature partitions.
//!
//! Indices follow the usual 1-based convention in the math (`κ_1..κ_n`, with
//! the `+` block in positions `1..=a_+`), while Rust vectors are 0-based.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct Signature {
    places: Vec<(usize, usize)>,
}

impl TryFrom<Vec<(usize, usize)>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<(usize, usize)>) -> Result<Self> {
        Signature::new(v)
    }
}

impl From<Signature> for Vec<(usize, usize)> {
    fn from(s: Signature) -> Self {
        s.places
    }
}

impl Signature {
    pub fn new(places: Vec<(usize, usize)>) -> Result<Self> {
        let first = places
            .first()
            .ok_or_else(|| Error::InvalidSignature("no places".into()))?;
        let n = first.0 + first.1;
        if n == 0 {
            return Err(Error::InvalidSignature("n = 0".into()));
        }
        if places.iter().any(|&(a, b)| a + b != n) {
            return Err(Error::InvalidSignature(
                "a_+ + a_- differs between places".into(),
            ));
        }
        Ok(Signature { places })
    }

    pub fn single(a_plus: usize, a_minus: usize) -> Result<Self> {
        Signature::new(vec![(a_plus, a_minus)])
    }

    pub fn n(&self) -> usize {
        self.places[0].0 + self.places[0].1
    }

    pub fn places(&self) -> &[(usize, usize)] {
        &self.places
    }

    pub fn num_places(&self) -> usize {
        self.places.len()
    }

    pub fn a_plus(&self, tau: usize) -> usize {
        self.places[tau].0
    }

    pub fn a_minus(&self, tau: usize) -> usize {
        self.places[tau].1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight {
    sig: Signature,
    entries: Vec<Vec<i64>>,
}

impl Weight {
    pub fn new(sig: Signature, entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.len() != sig.num_places() || entries.iter().any(|e| e.len() != sig.n()) {
            return Err(Error::ShapeMismatch(format!(
                "weight {entries:?} does not fit signature {:?}",
                sig.places()
            )));
        }
        Ok(Weight { sig, entries })
    }

    pub fn zero(sig: &Signature) -> Self {
        Weight {
            sig: sig.clone(),
            entries: vec![vec![0; sig.n()]; sig.num_places()],
        }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn place(&self, tau: usize) -> &[i64] {
        &self.entries[tau]
    }

    pub fn plus(&self, tau: usize) -> &[i64] {
        &self.entries[tau][..self.sig.a_plus(tau)]
    }

    pub fn minus(&self, tau: usize) -> &[i64] {
        &self.entries[tau][self.sig.a_plus(tau)..]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.entries.iter().enumerate().all(|(tau, k)| {
            let ap = self.sig.a_plus(tau);
            (1..k.len()).all(|i| i == ap || k[i - 1] >= k[i])
        })
    }

    pub fn is_positive_dominant(&self) -> bool {
        self.is_dominant() && self.entries.iter().flatten().all(|&x| x >= 0)
    }

    /// Depth `e_κ` when κ is sum-symmetric.
    pub fn sum_symmetric_depth(&self) -> Option<u64> {
        if !self.is_positive_dominant() {
            return None;
        }
        let mut e = 0u64;
        for tau in 0..self.sig.num_places() {
            let dp: i64 = self.plus(tau).iter().sum();
            let dm: i64 = self.minus(tau).iter().sum();
            if dp != dm {
                return None;
            }
            e += dp as u64;
        }
        Some(e)
    }

    pub fn is_sum_symmetric(&self) -> (bool, u64) {
        match self.sum_symmetric_depth() {
            Some(e) => (true, e),
            None => (false, 0),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.sum_symmetric_depth().is_some()
            && (0..self.sig.num_places()).all(|tau| {
                let (p, m) = (self.plus(tau), self.minus(tau));
                (0..p.len().min(m.len())).all(|i| p[i] == m[i])
            })
    }

    /// The character product `κκ'`, i.e. entrywise sum.
    pub fn product(&self, other: &Weight) -> Result<Weight> {
        if self.sig != other.sig {
            return Err(Error::ShapeMismatch(
                "weights over different signatures".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Weight {
            sig: self.sig.clone(),
            entries,
        })
    }

    /// Positions are 1-based ambient indices per place: `result[x] = self[map[x]]`.
    pub fn permute(&self, maps: &[Vec<usize>]) -> Weight {
        let entries = self
            .entries
            .iter()
            .zip(maps)
            .map(|(k, m)| m.iter().map(|&x| k[x - 1]).collect())
            .collect();
        Weight {
            sig: self.sig.clone(),
            entries,
        }
    }
}

/// Which congruence hypotheses hold for a pair of weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceHypotheses {
    pub entrywise: bool,
    pub gaps: bool,
    pub pivot: bool,
}

impl CongruenceHypotheses {
    pub fn all(&self) -> bool {
        self.entrywise && self.gaps && self.pivot
    }
}

pub fn congruence_hypotheses(
    k: &Weight,
    kp: &Weight,
    p: u64,
    m: u32,
) -> Result<CongruenceHypotheses> {
    if k.sig != kp.sig {
        return Err(Error::ShapeMismatch(
            "weights over different signatures".into(),
        ));
    }
    let modulus = BigInt::from(p).pow(m) * BigInt::from(p - 1);
    let mut h = CongruenceHypotheses {
        entrywise: true,
        gaps: true,
        pivot: true,
    };
    let mm = m as i64;
    for tau in 0..k.sig.num_places() {
        let (a, b) = (k.place(tau), kp.place(tau));
        for (x, y) in a.iter().zip(b) {
            if (BigInt::from(*x) - BigInt::from(*y)) % &modulus != BigInt::from(0) {
                h.entrywise = false;
            }
        }
        let ap = k.sig.a_plus(tau);
        for i in 1..ap {
            let (g, gp) = (a[i - 1] - a[i], b[i - 1] - b[i]);
            if g != gp && g.min(gp) <= mm {
                h.gaps = false;
            }
        }
        if ap >= 1 {
            let (x, y) = (a[ap - 1], b[ap - 1]);
            if x != y && x.min(y) <= mm {
                h.pivot = false;
            }
        }
    }
    Ok(h)
}

/// The three hypotheses of the congruence theorem, exactly as stated.
pub fn weight_congruent(k: &Weight, kp: &Weight, p: u64, m: u32) -> bool {
    congruence_hypotheses(k, kp, p, m)
        .map(|h| h.all())
        .unwrap_or(false)
}

/// A p-adic character known modulo `p^m(p-1)` through an integer representative,
/// with optional finite-order twists `ω^{e}` per index (ω the Teichmuller character).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PAdicCharacterApprox {
    pub representative: Weight,
    pub level: u32,
    pub twists: Option<Vec<Vec<i64>>>,
}

impl PAdicCharacterApprox {
    pub fn new(representative: Weight, level: u32) -> Self {
        PAdicCharacterApprox {
            representative,
            level,
            twists: None,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.representative.is_symmetric()
    }
}

/// A partition of a signature into blocks over the same set of places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionedSignature {
    ambient: Signature,
    parts: Vec<Signature>,
}

impl PartitionedSignature {
    pub fn new(ambient: Signature, parts: Vec<Signature>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidSignature("empty partition".into()));
        }
        for tau in 0..ambient.num_places() {
            let mut sp = 0;
            let mut sm = 0;
            for part in &parts {
                if part.num_places() != ambient.num_places() {
                    return Err(Error::InvalidSignature(
                        "part has wrong number of places".into(),
                    ));
                }
                sp += part.a_plus(tau);
                sm += part.a_minus(tau);
            }
            if (sp, sm) != ambient.places()[tau] {
                return Err(Error::InvalidSignature(format!(
                    "parts sum to ({sp},{sm}) at place {tau}, ambient is {:?}",
                    ambient.places()[tau]
                )));
            }
        }
        Ok(PartitionedSignature { ambient, parts })
    }

    pub fn trivial(ambient: &Signature) -> Self {
        PartitionedSignature {
            ambient: ambient.clone(),
            parts: vec![ambient.clone()],
        }
    }

    pub fn ambient(&self) -> &Signature {
        &self.ambient
    }

    pub fn parts(&self) -> &[Signature] {
        &self.parts
    }

    /// 1-based ambient positions of block `b` at place `tau`: (plus positions, minus positions).
    pub fn block_positions(&self, b: usize, tau: usize) -> (Vec<usize>, Vec<usize>) {
        let ap = self.ambient.a_plus(tau);
        let po: usize = self.parts[..b].iter().map(|s| s.a_plus(tau)).sum();
        let mo: usize = self.parts[..b].iter().map(|s| s.a_minus(tau)).sum();
        let plus = (1..=self.parts[b].a_plus(tau)).map(|k| po + k).collect();
        let minus = (1..=self.parts[b].a_minus(tau))
            .map(|k| ap + mo + k)
            .collect();
        (plus, minus)
    }

    /// Block index owning 1-based ambient position `x` at place `tau`.
    pub fn block_of(&self, tau: usize, x: usize) -> usize {
        (0..self.parts.len())
            .find(|&b| {
                let (p, m) = self.block_positions(b, tau);
                p.contains(&x) || m.contains(&x)
            })
            .expect("position inside the signature")
    }

    pub fn restrict_components(&self, w: &Weight) -> Result<Vec<Weight>> {
        if w.sig() != &self.ambient {
            return Err(Error::ShapeMismatch(
                "weight is not over the ambient signature".into(),
            ));
        }
        (0..self.parts.len())
            .map(|b| {
                let entries = (0..self.ambient.num_places())
                    .map(|tau| {
                        let (p, m) = self.block_positions(b, tau);
                        p.iter().chain(&m).map(|&x| w.place(tau)[x - 1]).collect()
                    })
                    .collect();
                Weight::new(self.parts[b].clone(), entries)
            })
            .collect()
    }

    /// `(true, Some(i))` when exactly block `i` is nontrivial and sum-symmetric;
    /// `(true, None)` for the zero weight.
    pub fn is_pure(&self, w: &Weight) -> Result<(bool, Option<usize>)> {
        let comps = self.restrict_components(w)?;
        let nontrivial: Vec<usize> = (0..comps.len()).filter(|&b| !comps[b].is_zero()).collect();
        Ok(match nontrivial.as_slice() {
            [] => (true, None),
            [i] if comps[*i].sum_symmetric_depth().is_some() => (true, Some(*i)),
            _ => (false, None),
        })
    }

    /// Blocks reordered by the transposition `(0 i)`.
    pub fn swapped(&self, i: usize) -> PartitionedSignature {
        let mut parts = self.parts.clone();
        parts.swap(0, i);
        PartitionedSignature {
            ambient: self.ambient.clone(),
            parts,
        }
    }

    pub fn weyl_conjugate_to_dominant(&self, w: &Weight) -> Result<WeylConjugation> {
        let (pure, idx) = self.is_pure(w)?;
        if !pure {
            return Err(Error::NotPure);
        }
        let index = match idx {
            Some(i) if i != 0 && !w.is_dominant() => i,
            _ => 0,
        };
        let conj = WeylConjugation {
            original: self.clone(),
            index,
            lambda0: w.clone(),
        };
        let lambda0 = w.permute(&conj.position_map());
        Ok(WeylConjugation { lambda0, ..conj })
    }
}

/// The block transposition `(0 index)` together with the dominant conjugate `λ0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylConjugation {
    pub original: PartitionedSignature,
    pub index: usize,
    pub lambda0: Weight,
}

impl WeylConjugation {
    pub fn is_identity(&self) -> bool {
        self.index == 0
    }

    pub fn permuted(&self) -> PartitionedSignature {
        self.original.swapped(self.index)
    }

    /// Per place, `map[x-1]` is the original-layout position of permuted-layout position `x`.
    pub fn position_map(&self) -> Vec<Vec<usize>> {
        let permuted = self.permuted();
        let sig = self.original.ambient();
        (0..sig.num_places())
            .map(|tau| {
                let mut map = vec![0; sig.n()];
                for b in 0..permuted.parts().len() {
                    let src = if b == 0 {
                        self.index
                    } else if b == self.index {
                        0
                    } else {
                        b
                    };
                    let (pp, pm) = permuted.block_positions(b, tau);
                    let (op, om) = self.original.block_positions(src, tau);
                    for (x, y) in pp.iter().zip(&op).chain(pm.iter().zip(&om)) {
                        map[x - 1] = *y;
                    }
                }
                map
            })
            .collect()
    }
}
