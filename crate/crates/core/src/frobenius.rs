//! Frobenius bracket powers and Hilbert–Kunz functions of hypersurfaces and
//! polynomial rings over `F_p`.
//!
//! A [`RingPresentation`] is `S/(relations)` for the ambient polynomial ring
//! `S`; lengths over it are computed in `S` by adjoining the relations.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_poly, parse_poly_list, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{colength, socle_basis, IdealHandle, LengthValue};

/// On-disk ring description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub dim: usize,
}

/// `S/(relations)` with `S = F_p[vars]`: a polynomial ring (no relations) or
/// a hypersurface (one relation vanishing at the origin).
#[derive(Clone, Debug)]
pub struct RingPresentation {
    ring: Arc<PolyRing>,
    relations: Vec<Polynomial>,
    dimension: usize,
}

impl RingPresentation {
    pub fn new(ring: &Arc<PolyRing>, relations: Vec<Polynomial>) -> Result<Self> {
        for f in &relations {
            f.check_ring(&Polynomial::zero(ring))?;
            if f.is_zero() {
                return Err(Error::Argument("zero relation".into()));
            }
            if f.order_at_origin() == Some(0) {
                return Err(Error::Argument(format!(
                    "relation {f} does not vanish at the origin"
                )));
            }
        }
        if relations.len() >= ring.nvars() {
            return Err(Error::Argument("presentation has dimension zero".into()));
        }
        Ok(RingPresentation {
            dimension: ring.nvars() - relations.len(),
            ring: ring.clone(),
            relations,
        })
    }

    pub fn polynomial_ring(p: u64, vars: &[&str]) -> Result<Self> {
        Self::new(&PolyRing::new(p, vars)?, Vec::new())
    }

    pub fn hypersurface(p: u64, vars: &[&str], f: &str) -> Result<Self> {
        let ring = PolyRing::new(p, vars)?;
        let f = parse_poly(f, &ring)?;
        Self::new(&ring, vec![f])
    }

    pub fn from_file(file: &RingFile) -> Result<Self> {
        let names: Vec<&str> = file.vars.iter().map(String::as_str).collect();
        let ring = PolyRing::new(file.characteristic, &names)?;
        let relations = file
            .relations
            .iter()
            .map(|r| parse_poly(r, &ring))
            .collect::<Result<Vec<_>>>()?;
        let out = Self::new(&ring, relations)?;
        if out.dimension != file.dim {
            return Err(Error::Input(format!(
                "declared dim {} but the presentation has dimension {}",
                file.dim, out.dimension
            )));
        }
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RingFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> RingFile {
        RingFile {
            characteristic: self.characteristic() as u64,
            vars: self.ring.vars().to_vec(),
            relations: self.relations.iter().map(|r| r.render()).collect(),
            dim: self.dimension,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_hypersurface(&self) -> bool {
        self.relations.len() == 1
    }

    /// The single relation of a hypersurface.
    pub fn hypersurface_relation(&self) -> Option<&Polynomial> {
        if self.is_hypersurface() {
            self.relations.first()
        } else {
            None
        }
    }

    /// True when the presentation is visibly regular at the origin: no
    /// relations, or a hypersurface whose relation has a linear term.
    pub fn is_regular_presentation(&self) -> bool {
        self.relations.is_empty()
            || (self.is_hypersurface() && self.relations[0].order_at_origin() == Some(1))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_poly(text, &self.ring)
    }

    /// Ideal from a comma-separated generator list.
    pub fn parse_ideal(&self, text: &str) -> Result<IdealHandle> {
        IdealHandle::new(&self.ring, parse_poly_list(text, &self.ring)?)
    }

    pub fn maximal_ideal(&self) -> IdealHandle {
        IdealHandle::maximal(&self.ring)
    }

    /// `I + (relations)` in the ambient ring.
    pub fn lift_ideal(&self, ideal: &IdealHandle) -> Result<IdealHandle> {
        if !crate::algebra::same_ring(ideal.ring(), &self.ring) {
            return Err(Error::Context("ideal does not belong to this ring".into()));
        }
        ideal.with_generators(&self.relations)
    }
}

/// `q = p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FrobeniusPower {
    #[serde(skip)]
    p: u32,
    #[serde(skip)]
    e: u32,
    q: u64,
}

impl FrobeniusPower {
    pub fn from_exponent(p: u32, e: u32) -> Result<Self> {
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::Argument(format!("{p}^{e} is too large")))?;
        Ok(FrobeniusPower { p, e, q })
    }

    /// Validates that `q` is a power of `p` (including `q = 1`).
    pub fn new(p: u32, q: u64) -> Result<Self> {
        let mut e = 0;
        let mut acc = 1u64;
        while acc < q {
            acc = acc.saturating_mul(p as u64);
            e += 1;
        }
        if acc != q || p < 2 {
            return Err(Error::Argument(format!("{q} is not a power of {p}")));
        }
        Self::from_exponent(p, e)
    }

    pub fn q(self) -> u64 {
        self.q
    }

    pub fn exponent(self) -> u32 {
        self.e
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }
}

/// `I^[q]`, generated by the `q`-th powers of the generators of `I`.
pub fn bracket_power(ideal: &IdealHandle, q: FrobeniusPower) -> Result<IdealHandle> {
    if q.characteristic() != ideal.ring().characteristic() {
        return Err(Error::Argument(format!(
            "{} is not a power of the characteristic {}",
            q.q(),
            ideal.ring().characteristic()
        )));
    }
    let gens = ideal.generators().iter().map(|g| g.frobenius(q.q())).collect();
    IdealHandle::new(ideal.ring(), gens)
}

/// `λ_R(R/I)`, computed as the colength of `I + relations` in the ambient
/// ring. Infinite when that ideal is not zero-dimensional.
pub fn quotient_colength(ring: &RingPresentation, ideal: &IdealHandle) -> Result<LengthValue> {
    Ok(colength(&ring.lift_ideal(ideal)?))
}

/// One value `λ(R/I^[q])` of the Hilbert–Kunz function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HkSample {
    pub q: u64,
    pub length: u64,
}

/// Samples of `q ↦ λ(R/I^[q])` for `q = p, p^2, ..., p^e_max`.
pub fn hk_function(ring: &RingPresentation, ideal: &IdealHandle, e_max: u32) -> Result<Vec<HkSample>> {
    if e_max == 0 {
        return Err(Error::Argument("e_max must be at least 1".into()));
    }
    let p = ring.characteristic();
    let mut out = Vec::new();
    for e in 1..=e_max {
        let q = FrobeniusPower::from_exponent(p, e)?;
        let len = quotient_colength(ring, &bracket_power(ideal, q)?)?
            .finite()
            .ok_or(Error::NotZeroDimensional)?;
        out.push(HkSample { q: q.q(), length: len });
    }
    Ok(out)
}

/// Leading-coefficient fit `λ(q) ≈ e_HK q^d + β q^(d-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HkEstimate {
    pub samples: Vec<HkSample>,
    pub ehk: BigRational,
    pub beta: BigRational,
    /// Largest relative deviation of the fit from the samples not used in it.
    pub residual: f64,
}

impl HkEstimate {
    pub fn ehk_f64(&self) -> f64 {
        self.ehk.to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact secant through the two largest-`q` samples.
pub fn hk_estimate(samples: &[HkSample], d: usize) -> Result<HkEstimate> {
    if samples.len() < 2 {
        return Err(Error::Argument("Hilbert–Kunz fit needs at least two samples".into()));
    }
    if d == 0 {
        return Err(Error::Argument("dimension must be positive".into()));
    }
    let mut samples = samples.to_vec();
    samples.sort_by_key(|s| s.q);
    let n = samples.len();
    let (a, b) = (&samples[n - 2], &samples[n - 1]);
    if a.q == b.q {
        return Err(Error::Argument("duplicate q in samples".into()));
    }
    let pow = |q: u64, k: usize| BigInt::from(q).pow(k as u32);
    let big = |v: u64| BigRational::from_integer(BigInt::from(v));
    // λ_a = E q_a^d + β q_a^(d-1), λ_b = E q_b^d + β q_b^(d-1)
    let (a11, a12) = (pow(a.q, d), pow(a.q, d - 1));
    let (a21, a22) = (pow(b.q, d), pow(b.q, d - 1));
    let det = BigRational::from_integer(&a11 * &a22 - &a12 * &a21);
    let ehk = (big(a.length) * BigRational::from_integer(a22.clone())
        - big(b.length) * BigRational::from_integer(a12.clone()))
        / det.clone();
    let beta = (big(b.length) * BigRational::from_integer(a11) - big(a.length) * BigRational::from_integer(a21)) / det;
    let mut residual = 0.0f64;
    for s in &samples[..n - 2] {
        let fit = &ehk * BigRational::from_integer(pow(s.q, d)) + &beta * BigRational::from_integer(pow(s.q, d - 1));
        let err = ((fit - big(s.length)) / big(s.length.max(1))).to_f64().unwrap_or(f64::INFINITY);
        residual = residual.max(err.abs());
    }
    if ehk <= BigRational::zero() {
        return Err(Error::Argument("samples give a non-positive leading coefficient".into()));
    }
    Ok(HkEstimate {
        samples,
        ehk,
        beta,
        residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplicityMethod {
    OrderOfRelation,
    ParameterColengthLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityRecord {
    pub e: u64,
    pub method: MultiplicityMethod,
}

/// Hilbert–Samuel multiplicity `e(R)`: the order of the relation for a
/// hypersurface, `1` for a polynomial ring (checked as `λ(R/m^[p])/p^d`).
pub fn multiplicity(ring: &RingPresentation) -> Result<MultiplicityRecord> {
    match ring.relations().len() {
        0 => {
            let q = FrobeniusPower::from_exponent(ring.characteristic(), 1)?;
            let len = quotient_colength(ring, &bracket_power(&ring.maximal_ideal(), q)?)?
                .finite()
                .ok_or(Error::NotZeroDimensional)?;
            let qd = q.q().pow(ring.dimension() as u32);
            debug_assert_eq!(len % qd, 0);
            Ok(MultiplicityRecord {
                e: len / qd,
                method: MultiplicityMethod::ParameterColengthLimit,
            })
        }
        1 => Ok(MultiplicityRecord {
            e: ring.relations()[0].order_at_origin().unwrap(),
            method: MultiplicityMethod::OrderOfRelation,
        }),
        n => Err(Error::Unsupported(format!(
            "multiplicity of a presentation with {n} relations"
        ))),
    }
}

/// `λ(R/J^[q]) / q^d` for a parameter ideal `J`; equals `e(J)`, and `e(R)`
/// when `J` is a minimal reduction of the maximal ideal.
pub fn multiplicity_cross_check(ring: &RingPresentation, j: &IdealHandle, q: FrobeniusPower) -> Result<BigRational> {
    let len = quotient_colength(ring, &bracket_power(j, q)?)?
        .finite()
        .ok_or(Error::NotZeroDimensional)?;
    Ok(BigRational::new(
        BigInt::from(len),
        BigInt::from(q.q()).pow(ring.dimension() as u32),
    ))
}

fn candidate_reductions(ring: &RingPresentation) -> Vec<Vec<Polynomial>> {
    let r = ring.ring();
    let n = r.nvars();
    let var = |i| Polynomial::var(r, i);
    let Some(f) = ring.hypersurface_relation() else {
        return vec![(0..n).map(var).collect()];
    };
    if n < 2 {
        return vec![];
    }
    let rest: Vec<Polynomial> = (2..n).map(var).collect();
    let with_rest = |first: Polynomial| {
        let mut v = vec![first];
        v.extend(rest.iter().cloned());
        v
    };
    let has_square = |i: usize| {
        let mut sq = crate::algebra::Monomial::one(n);
        sq.set_exponent(i, 2);
        !f.coefficient(&sq).is_zero()
    };
    // With v_i^2 in f, killing the other variables leaves k[v_i]/(v_i^2).
    let others = |i: usize| (0..n).filter(|&k| k != i).map(var).collect::<Vec<_>>();
    let mut out = Vec::new();
    if has_square(0) {
        out.push(others(0));
    } else {
        out.push(with_rest(&var(0) - &var(1)));
        out.push(with_rest(&var(0) + &var(1)));
    }
    out.extend((1..n).filter(|&i| has_square(i)).map(others));
    out
}

/// Searches for a parameter ideal `J` with `λ(R/J) = e(R)`, i.e. a minimal
/// reduction of the maximal ideal. Fixed candidates by shape of the relation
/// come first, then random linear forms drawn from `seed`.
pub fn find_minimal_reduction(ring: &RingPresentation, trials: usize, seed: u64) -> Result<IdealHandle> {
    let e = multiplicity(ring)?.e;
    let d = ring.dimension();
    let r = ring.ring();
    let m_len = quotient_colength(ring, &ring.maximal_ideal())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ring.characteristic();
    let fixed = candidate_reductions(ring);
    let mut last = String::from("none");
    for t in 0..trials {
        let gens = match fixed.get(t) {
            Some(g) => g.clone(),
            None => (0..d)
                .map(|_| {
                    Polynomial::from_terms(
                        r,
                        (0..r.nvars()).map(|i| (crate::algebra::Monomial::var(r.nvars(), i), rng.gen_range(0..p))),
                    )
                })
                .collect(),
        };
        let j = IdealHandle::new(r, gens)?;
        last = format!("{j:?}");
        let Some(len) = quotient_colength(ring, &j)?.finite() else {
            continue;
        };
        if len != e {
            continue;
        }
        // dim m/J = λ(R/J) − λ(R/m)
        if e == 2 && m_len.finite().map(|m| len - m) != Some(1) {
            continue;
        }
        return Ok(j);
    }
    Err(Error::SearchFailure { trials, last })
}

/// Cohen–Macaulay type of `R` read off a parameter ideal: `dim_k` of the
/// socle of `R/J`.
pub fn cm_type(ring: &RingPresentation, j: &IdealHandle) -> Result<usize> {
    Ok(socle_basis(&ring.lift_ideal(j)?, &ring.maximal_ideal())?.len())
}
