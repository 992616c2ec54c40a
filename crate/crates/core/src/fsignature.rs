//! F-signature of Gorenstein rings through the free-rank identity
//! `a_q = λ(R/J^[q]) − λ(R/(J, Δ)^[q])`, where `J` is a parameter ideal and
//! `Δ` generates the socle of `R/J`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::exact::{serialize_ratio, serialize_ratio_opt, serialize_ratios};
use crate::frobenius::{
    bracket_power, find_minimal_reduction, quotient_colength, FrobeniusPower, RingFile, RingPresentation,
};
use crate::groebner::{socle_basis, IdealHandle};

/// Number of candidate parameter ideals tried before giving up.
pub const DEFAULT_TRIALS: usize = 50;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FreeRankSample {
    pub q: u64,
    #[serde(rename = "lenJ")]
    pub len_j: u64,
    #[serde(rename = "lenJD")]
    pub len_jd: u64,
    pub a1q: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub s_q: BigRational,
}

/// One free-rank sample at `q`. `delta` must represent a nonzero socle
/// element of `R/J`.
pub fn free_rank_sample(
    ring: &RingPresentation,
    j: &IdealHandle,
    delta: &Polynomial,
    q: FrobeniusPower,
) -> Result<FreeRankSample> {
    if ring.lift_ideal(j)?.contains(delta)? {
        return Err(Error::Argument(format!("socle representative {delta} lies in J")));
    }
    let jq = bracket_power(j, q)?;
    let len_j = quotient_colength(ring, &jq)?.finite().ok_or(Error::NotZeroDimensional)?;
    let jdq = jq.with_generators(&[delta.frobenius(q.q())])?;
    let len_jd = quotient_colength(ring, &jdq)?.finite().ok_or(Error::NotZeroDimensional)?;
    let a1q = len_j - len_jd;
    let s_q = BigRational::new(BigInt::from(a1q), BigInt::from(q.q()).pow(ring.dimension() as u32));
    Ok(FreeRankSample {
        q: q.q(),
        len_j,
        len_jd,
        a1q,
        s_q,
    })
}

#[derive(Clone, Debug)]
pub struct FSignatureEstimate {
    pub j: IdealHandle,
    pub delta: Polynomial,
    pub samples: Vec<FreeRankSample>,
    /// `s_q` at the largest `q`.
    pub s: BigRational,
    /// `|s_q − s|` for each sample.
    pub trend: Vec<BigRational>,
}

/// Samples `s_q` for `q = p, ..., p^e_max` using a minimal reduction found
/// with the given seed.
pub fn fsignature_estimate_seeded(ring: &RingPresentation, e_max: u32, seed: u64) -> Result<FSignatureEstimate> {
    if e_max == 0 {
        return Err(Error::Argument("e_max must be at least 1".into()));
    }
    let j = find_minimal_reduction(ring, DEFAULT_TRIALS, seed)?;
    let socle = socle_basis(&ring.lift_ideal(&j)?, &ring.maximal_ideal())?;
    let delta = socle
        .into_iter()
        .next()
        .ok_or_else(|| Error::Argument("empty socle".into()))?;
    let mut samples = Vec::new();
    for e in 1..=e_max {
        let q = FrobeniusPower::from_exponent(ring.characteristic(), e)?;
        samples.push(free_rank_sample(ring, &j, &delta, q)?);
    }
    let s = samples.last().unwrap().s_q.clone();
    let trend = samples.iter().map(|x| (&x.s_q - &s).abs()).collect();
    Ok(FSignatureEstimate {
        j,
        delta,
        samples,
        s,
        trend,
    })
}

pub fn fsignature_estimate(ring: &RingPresentation, e_max: u32) -> Result<FSignatureEstimate> {
    fsignature_estimate_seeded(ring, e_max, 0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub holds: bool,
    #[serde(serialize_with = "serialize_ratio")]
    pub slack: BigRational,
}

/// `(e − 1)(1 − s) ≥ e_HK − 1`; slack is the left side minus the right.
pub fn check_lower_inequality(e: u64, s: &BigRational, ehk: &BigRational) -> InequalityReport {
    let one = BigRational::one();
    let slack = BigRational::from_integer(BigInt::from(e) - 1) * (&one - s) - (ehk - &one);
    InequalityReport {
        holds: !slack.is_negative(),
        slack,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpperBoundReport {
    pub holds: bool,
    #[serde(serialize_with = "serialize_ratio")]
    pub slack: BigRational,
    /// The bound is attained.
    pub equality: bool,
}

/// `s ≤ (e_HK(I) − e_HK(J)) / λ(J/I)` for `m`-primary `I ⊆ J`.
pub fn check_upper_bound(
    s: &BigRational,
    ehk_i: &BigRational,
    ehk_j: &BigRational,
    len_ji: u64,
) -> Result<UpperBoundReport> {
    if len_ji == 0 {
        return Err(Error::Argument("λ(J/I) must be positive".into()));
    }
    let bound = (ehk_i - ehk_j) / BigRational::from_integer(BigInt::from(len_ji));
    let slack = bound - s;
    Ok(UpperBoundReport {
        holds: !slack.is_negative(),
        equality: slack.is_zero(),
        slack,
    })
}

/// True iff `s_q = 1` for every `q ≤ p^e_max`. Errors when the answer
/// contradicts what the presentation shows (no relations, or a relation with
/// a linear term, is regular).
pub fn regularity_check(ring: &RingPresentation, e_max: u32) -> Result<bool> {
    let est = fsignature_estimate(ring, e_max)?;
    let regular = est.samples.iter().all(|x| x.s_q.is_one());
    if ring.relations().len() <= 1 && regular != ring.is_regular_presentation() {
        return Err(Error::Unsupported(format!(
            "free-rank samples say regular = {regular}, the presentation says otherwise"
        )));
    }
    Ok(regular)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AdeFamily {
    A,
    D,
    E6,
    E7,
    E8,
}

/// A rational double point `A_n` (`n ≥ 1`), `D_n` (`n ≥ 4`), `E_6`, `E_7` or
/// `E_8` in three variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AdeSpec {
    pub family: AdeFamily,
    pub n: u32,
}

impl AdeSpec {
    pub fn a(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("A_n needs n ≥ 1".into()));
        }
        Ok(AdeSpec { family: AdeFamily::A, n })
    }

    pub fn d(n: u32) -> Result<Self> {
        if n < 4 {
            return Err(Error::Argument("D_n needs n ≥ 4".into()));
        }
        Ok(AdeSpec { family: AdeFamily::D, n })
    }

    pub fn e6() -> Self {
        AdeSpec { family: AdeFamily::E6, n: 6 }
    }

    pub fn e7() -> Self {
        AdeSpec { family: AdeFamily::E7, n: 7 }
    }

    pub fn e8() -> Self {
        AdeSpec { family: AdeFamily::E8, n: 8 }
    }

    pub fn min_characteristic(self) -> u32 {
        match self.family {
            AdeFamily::A => 2,
            AdeFamily::D => 3,
            AdeFamily::E6 | AdeFamily::E7 => 5,
            AdeFamily::E8 => 7,
        }
    }

    /// `(exponent of x, y, z)` terms of the normal form.
    fn terms(self) -> Vec<[u32; 3]> {
        let n = self.n;
        match self.family {
            AdeFamily::A => vec![[1, 1, 0], [0, 0, n + 1]],
            AdeFamily::D => vec![[2, 0, 0], [0, 1, 2], [0, n - 1, 0]],
            AdeFamily::E6 => vec![[2, 0, 0], [0, 3, 0], [0, 0, 4]],
            AdeFamily::E7 => vec![[2, 0, 0], [0, 3, 0], [0, 1, 3]],
            AdeFamily::E8 => vec![[2, 0, 0], [0, 3, 0], [0, 0, 5]],
        }
    }

    /// The normal form in `x, y, z`.
    pub fn equation(self) -> String {
        let names = ["x", "y", "z"].map(String::from);
        self.terms()
            .iter()
            .map(|e| Monomial::from_exponents(e).render(&names))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The hypersurface `F_p[x,y,z]/(f)`. `A_n` is refused in characteristic
    /// 2 and when `p` divides `n + 1`.
    pub fn ring(self, p: u64) -> Result<RingPresentation> {
        if p < self.min_characteristic() as u64 {
            return Err(Error::Argument(format!(
                "{self} is listed for characteristic ≥ {}, got {p}",
                self.min_characteristic()
            )));
        }
        if self.family == AdeFamily::A && (p == 2 || (self.n as u64 + 1).is_multiple_of(p)) {
            return Err(Error::Unsupported(format!(
                "{self} is only run in odd characteristic not dividing {}",
                self.n + 1
            )));
        }
        RingPresentation::hypersurface(p, &["x", "y", "z"], &self.equation())
    }

    /// Recognizes a relation that is literally one of the normal forms in
    /// the ring's first three variables.
    pub fn identify(f: &Polynomial) -> Option<AdeSpec> {
        let ring = f.ring();
        if ring.nvars() != 3 {
            return None;
        }
        let deg = f.total_degree()? as u32;
        let mut candidates = vec![AdeSpec::e6(), AdeSpec::e7(), AdeSpec::e8()];
        candidates.extend((1..=deg).map(|n| AdeSpec { family: AdeFamily::A, n }));
        candidates.extend((4..=deg + 1).map(|n| AdeSpec { family: AdeFamily::D, n }));
        candidates.into_iter().find(|spec| {
            let g = Polynomial::from_terms(ring, spec.terms().iter().map(|e| (Monomial::from_exponents(e), 1)));
            &g == f
        })
    }
}

impl fmt::Display for AdeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            AdeFamily::A => write!(f, "A_{}", self.n),
            AdeFamily::D => write!(f, "D_{}", self.n),
            AdeFamily::E6 => f.write_str("E_6"),
            AdeFamily::E7 => f.write_str("E_7"),
            AdeFamily::E8 => f.write_str("E_8"),
        }
    }
}

/// The F-signature of the rational double point in characteristic `p`.
pub fn ade_expected(spec: AdeSpec, p: u32) -> Result<BigRational> {
    if p < spec.min_characteristic() {
        return Err(Error::Argument(format!(
            "the value for {spec} holds in characteristic ≥ {}, got {p}",
            spec.min_characteristic()
        )));
    }
    let den: u64 = match spec.family {
        AdeFamily::A => spec.n as u64 + 1,
        AdeFamily::D => 4 * (spec.n as u64 - 2),
        AdeFamily::E6 => 24,
        AdeFamily::E7 => 48,
        AdeFamily::E8 => 120,
    };
    Ok(BigRational::new(BigInt::one(), BigInt::from(den)))
}

/// Rational double points with the characteristics they are sampled in.
pub fn ade_suite() -> Vec<(AdeSpec, u32)> {
    vec![
        (AdeSpec { family: AdeFamily::A, n: 1 }, 3),
        (AdeSpec { family: AdeFamily::A, n: 2 }, 5),
        (AdeSpec { family: AdeFamily::D, n: 4 }, 3),
        (AdeSpec::e6(), 5),
        (AdeSpec::e7(), 5),
        (AdeSpec::e8(), 7),
    ]
}

/// Known value of `s(R)` for the presentation: `1` when it is visibly
/// regular, the table value for a rational double point in normal form.
pub fn expected_signature(ring: &RingPresentation) -> Option<BigRational> {
    if ring.is_regular_presentation() {
        return Some(BigRational::one());
    }
    let spec = AdeSpec::identify(ring.hypersurface_relation()?)?;
    ade_expected(spec, ring.characteristic()).ok()
}

#[derive(Clone, Debug, Serialize)]
pub struct FSignatureReport {
    pub ring: RingFile,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub delta: String,
    pub samples: Vec<FreeRankSample>,
    #[serde(serialize_with = "serialize_ratio")]
    pub s: BigRational,
    #[serde(serialize_with = "serialize_ratios")]
    pub trend: Vec<BigRational>,
    #[serde(serialize_with = "serialize_ratio_opt")]
    pub expected: Option<BigRational>,
}

impl FSignatureReport {
    pub fn new(ring: &RingPresentation, est: &FSignatureEstimate) -> Self {
        FSignatureReport {
            ring: ring.to_file(),
            j: est.j.render_generators(),
            delta: est.delta.render(),
            samples: est.samples.clone(),
            s: est.s.clone(),
            trend: est.trend.clone(),
            expected: expected_signature(ring),
        }
    }
}
