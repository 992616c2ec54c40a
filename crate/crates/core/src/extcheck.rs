//! Matrix factorizations of a hypersurface `f` and `Ext^1` between their
//! cokernels, computed by exact linear algebra over the ambient ring.
//!
//! For `M = coker φ_M` with 2-periodic resolution `(φ_M, ψ_M)` and
//! `N = coker φ_N`, an `Ext^1` class is an `m × n` matrix `V` with
//! `V ψ_M = φ_N W` for some `W` (a cocycle), modulo
//! `U φ_M + φ_N H` (coboundaries). Both spaces are cut to polynomial degree
//! `≤ t` and the quotient dimension is read off an echelon form; `t` is
//! raised until two consecutive truncations agree.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{monomials_of_degree, monomials_up_to_degree, parse_poly, Monomial, PolyMatrix, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};

/// On-disk matrix factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfFile {
    pub f: String,
    pub size: usize,
    pub phi: Vec<Vec<String>>,
    pub psi: Vec<Vec<String>>,
}

/// A pair `(φ, ψ)` of square matrices meant to satisfy `φψ = ψφ = f·Id`.
/// Use [`mf_validate`] before computing with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    f: Polynomial,
    phi: PolyMatrix,
    psi: PolyMatrix,
}

impl MatrixFactorization {
    pub fn new(f: Polynomial, phi: PolyMatrix, psi: PolyMatrix) -> Result<Self> {
        for m in [&phi, &psi] {
            if let Some(e) = m.entries().first() {
                f.check_ring(e)?;
            }
        }
        Ok(MatrixFactorization { f, phi, psi })
    }

    /// Parses a factorization file over `ring`. The declared size must
    /// match both matrices.
    pub fn from_file(file: &MfFile, ring: &Arc<PolyRing>) -> Result<Self> {
        let f = parse_poly(&file.f, ring)?;
        let matrix = |rows: &[Vec<String>]| -> Result<PolyMatrix> {
            let rows = rows
                .iter()
                .map(|row| row.iter().map(|e| parse_poly(e, ring)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if rows.len() != file.size || rows.iter().any(|r| r.len() != file.size) {
                return Err(Error::Input(format!("matrix is not {0}×{0}", file.size)));
            }
            PolyMatrix::from_rows(rows)
        };
        Self::new(f, matrix(&file.phi)?, matrix(&file.psi)?)
    }

    pub fn from_json(text: &str, ring: &Arc<PolyRing>) -> Result<Self> {
        let file: MfFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_file(&file, ring)
    }

    pub fn to_file(&self) -> MfFile {
        MfFile {
            f: self.f.render(),
            size: self.size(),
            phi: self.phi.render(),
            psi: self.psi.render(),
        }
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix {
        &self.psi
    }

    pub fn size(&self) -> usize {
        self.phi.rows()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.f.ring()
    }

    /// `(ψ, φ)`: the factorization of the first syzygy of `coker φ`.
    pub fn swapped(&self) -> Self {
        MatrixFactorization {
            f: self.f.clone(),
            phi: self.psi.clone(),
            psi: self.phi.clone(),
        }
    }

    fn max_degree(&self) -> u32 {
        self.phi.max_degree().max(self.psi.max_degree()) as u32
    }
}

/// Whether `φψ = ψφ = f·Id` holds exactly. Errors when the matrices are
/// not square of one size.
pub fn mf_validate(mf: &MatrixFactorization) -> Result<bool> {
    let n = mf.phi.rows();
    if !mf.phi.is_square() || !mf.psi.is_square() || mf.psi.rows() != n {
        return Err(Error::Argument(format!(
            "φ is {}×{} and ψ is {}×{}",
            mf.phi.rows(),
            mf.phi.cols(),
            mf.psi.rows(),
            mf.psi.cols()
        )));
    }
    let target = PolyMatrix::scalar(&mf.f, n);
    Ok(mf.phi.try_mul(&mf.psi)? == target && mf.psi.try_mul(&mf.phi)? == target)
}

/// A finite value or `UNSTABLE`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtValue {
    Finite(u64),
    Unstable,
}

impl ExtValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtValue::Finite(n) => Some(n),
            ExtValue::Unstable => None,
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(n) => write!(f, "{n}"),
            ExtValue::Unstable => f.write_str("UNSTABLE"),
        }
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtValue::Finite(n) => s.serialize_u64(*n),
            ExtValue::Unstable => s.serialize_str("UNSTABLE"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    pub length: ExtValue,
    pub annihilator_exponent: ExtValue,
    /// The larger of the two agreeing truncation degrees, or `t_max`.
    pub truncation_degree_used: u32,
}

/// Entry `(row, col)` of an `m × n` matrix times a monomial.
type Coord = (usize, usize, Monomial);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum CocycleKey {
    Image(Coord),
    V(Coord),
    W(Coord),
}

/// `μ E_rc A`: row `r` of the result is `μ` times row `c` of `A`.
fn left_unit(rows: usize, r: usize, c: usize, mu: &Monomial, a: &PolyMatrix) -> Vec<(Coord, u32)> {
    debug_assert!(r < rows);
    let mut out = Vec::new();
    for j in 0..a.cols() {
        for (m, v) in a.get(c, j).terms() {
            out.push(((r, j, m.mul(mu)), *v));
        }
    }
    out
}

/// `μ A E_rc`: column `c` of the result is `μ` times column `r` of `A`.
fn right_unit(a: &PolyMatrix, r: usize, c: usize, mu: &Monomial) -> Vec<(Coord, u32)> {
    let mut out = Vec::new();
    for i in 0..a.rows() {
        for (m, v) in a.get(i, r).terms() {
            out.push(((i, c, m.mul(mu)), *v));
        }
    }
    out
}

/// Linear algebra for one pair `(M, N)`.
struct ExtSystem<'a> {
    m: &'a MatrixFactorization,
    n: &'a MatrixFactorization,
    ring: &'a Arc<PolyRing>,
    rows: usize,
    cols: usize,
}

impl<'a> ExtSystem<'a> {
    fn new(m: &'a MatrixFactorization, n: &'a MatrixFactorization) -> Result<Self> {
        if !crate::algebra::same_ring(m.ring(), n.ring()) {
            return Err(Error::Argument("factorizations live in different rings".into()));
        }
        if m.f != n.f {
            return Err(Error::Argument(format!("factorizations of {} and {}", m.f, n.f)));
        }
        for mf in [m, n] {
            if !mf_validate(mf)? {
                return Err(Error::Argument("not a matrix factorization".into()));
            }
        }
        Ok(ExtSystem {
            m,
            n,
            ring: m.ring(),
            rows: n.size(),
            cols: m.size(),
        })
    }

    fn units(&self, deg: u32) -> impl Iterator<Item = (usize, usize, Monomial)> + '_ {
        let mons = monomials_up_to_degree(self.ring.nvars(), deg);
        (0..self.rows).flat_map(move |r| {
            let mons = mons.clone();
            (0..self.cols).flat_map(move |c| mons.clone().into_iter().map(move |mu| (r, c, mu)))
        })
    }

    /// Basis of cocycles `V` of degree `≤ t`.
    fn cocycles(&self, t: u32) -> Vec<SparseVec<Coord>> {
        let k = self.ring.field();
        let (psi_m, phi_n) = (&self.m.psi, &self.n.phi);
        // deg W ≤ deg(V ψ_M) + (rows − 1) deg φ_N, from W = adj(φ_N) V ψ_M / det φ_N
        let tw = t + psi_m.max_degree() as u32 + (self.rows as u32).saturating_sub(1) * phi_n.max_degree() as u32;
        let mut ech: Echelon<CocycleKey> = Echelon::new(k);
        for (r, c, mu) in self.units(t) {
            let mut e: Vec<(CocycleKey, u32)> = left_unit(self.rows, r, c, &mu, psi_m)
                .into_iter()
                .map(|(x, v)| (CocycleKey::Image(x), v))
                .collect();
            e.push((CocycleKey::V((r, c, mu)), 1));
            ech.insert(&SparseVec::from_entries(k, e));
        }
        for (r, c, mu) in self.units(tw) {
            let mut e: Vec<(CocycleKey, u32)> = right_unit(phi_n, r, c, &mu)
                .into_iter()
                .map(|(x, v)| (CocycleKey::Image(x), k.neg(v)))
                .collect();
            e.push((CocycleKey::W((r, c, mu)), 1));
            ech.insert(&SparseVec::from_entries(k, e));
        }
        ech.rows()
            .filter(|row| matches!(row.leading(), Some(CocycleKey::V(_))))
            .map(|row| {
                SparseVec::from_entries(
                    k,
                    row.entries().iter().filter_map(|(key, v)| match key {
                        CocycleKey::V(x) => Some((*x, *v)),
                        _ => None,
                    }),
                )
            })
            .collect()
    }

    /// Adds coboundary generators `μ E φ_M` and `φ_N μ E` with
    /// `from < deg μ ≤ to`.
    fn extend_coboundaries(&self, ech: &mut Echelon<Coord>, from: Option<u32>, to: u32) {
        let k = self.ring.field();
        let start = from.map_or(0, |d| d + 1);
        for d in start..=to {
            for mu in monomials_of_degree(self.ring.nvars(), d) {
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        ech.insert(&SparseVec::from_entries(k, left_unit(self.rows, r, c, &mu, &self.m.phi)));
                        ech.insert(&SparseVec::from_entries(k, right_unit(&self.n.phi, r, c, &mu)));
                    }
                }
            }
        }
    }

    fn slack(&self) -> u32 {
        self.m.max_degree().max(self.n.max_degree())
    }

    /// `(length, annihilator exponent)` at truncation `t`. The exponent is
    /// `None` when no `a ≤ length` works at this truncation.
    fn truncated(&self, t: u32) -> (u64, Option<u64>) {
        let k = self.ring.field();
        let z = self.cocycles(t);
        // Coboundaries of degree ≤ d are combinations of generators of degree
        // ≤ d + C for a constant C; 2d + slack exceeds that once d ≥ C.
        let mut b: Echelon<Coord> = Echelon::new(k);
        let mut have = 2 * t + self.slack();
        self.extend_coboundaries(&mut b, None, have);
        let mut with_z = b.clone();
        let reps: Vec<SparseVec<Coord>> = z.iter().filter(|v| with_z.insert(v).is_some()).cloned().collect();
        let length = reps.len() as u64;
        for a in 0..=length as u32 {
            let need = 2 * (t + a) + self.slack();
            if need > have {
                self.extend_coboundaries(&mut b, Some(have), need);
                have = need;
            }
            let killed = monomials_of_degree(self.ring.nvars(), a)
                .iter()
                .all(|mu| reps.iter().all(|v| b.contains(&v.map_keys(|(r, c, m)| (*r, *c, m.mul(mu))))));
            if killed {
                return (length, Some(a as u64));
            }
        }
        (length, None)
    }

    fn stabilize(&self, t_max: u32) -> ExtReport {
        let start = self.slack();
        let mut prev: Option<(u64, Option<u64>)> = None;
        for t in start..=t_max {
            let cur = self.truncated(t);
            if prev == Some(cur) {
                if let (len, Some(a)) = cur {
                    return ExtReport {
                        length: ExtValue::Finite(len),
                        annihilator_exponent: ExtValue::Finite(a),
                        truncation_degree_used: t,
                    };
                }
            }
            prev = Some(cur);
        }
        ExtReport {
            length: ExtValue::Unstable,
            annihilator_exponent: ExtValue::Unstable,
            truncation_degree_used: t_max,
        }
    }
}

/// `λ(Ext^1_R(coker φ_M, coker φ_N))` over `R = S/(f)`, reported once two
/// consecutive truncation degrees agree on length and annihilator exponent;
/// `UNSTABLE` if that does not happen by `t_max`.
pub fn ext1_length(m: &MatrixFactorization, n: &MatrixFactorization, t_max: u32) -> Result<ExtReport> {
    Ok(ExtSystem::new(m, n)?.stabilize(t_max))
}

/// `(length, annihilator exponent)` at one fixed truncation degree `t`,
/// without any stabilization. The exponent is `None` when no `a ≤ length`
/// kills the truncated module.
pub fn truncated_ext1(m: &MatrixFactorization, n: &MatrixFactorization, t: u32) -> Result<(u64, Option<u64>)> {
    Ok(ExtSystem::new(m, n)?.truncated(t))
}

/// Like [`ext1_length`], but an unstable result is an error.
pub fn annihilator_exponent(m: &MatrixFactorization, n: &MatrixFactorization, t_max: u32) -> Result<ExtReport> {
    let report = ext1_length(m, n, t_max)?;
    if report.length == ExtValue::Unstable {
        return Err(Error::Unstable(t_max));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub h: u64,
    pub ext: ExtReport,
    /// The maximal ideal to the power `h` kills `Ext^1`.
    pub passed: bool,
}

/// Checks `m^h · Ext^1(M, N) = 0` for a class count `h` supplied by the
/// caller.
pub fn theorem_main_witness(
    m: &MatrixFactorization,
    n: &MatrixFactorization,
    h: u64,
    t_max: u32,
) -> Result<WitnessReport> {
    let ext = annihilator_exponent(m, n, t_max)?;
    let a = ext.annihilator_exponent.finite().unwrap();
    Ok(WitnessReport { h, ext, passed: a <= h })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleCheck {
    /// Whether `Δ e_i ∈ J M` for each generator `e_i` of `M`.
    pub per_generator: Vec<bool>,
    pub holds: bool,
    /// `N` with `m^N` killing `M/JM` near the origin.
    pub order: u32,
}

/// Whether `Δ · M ⊆ J · M` for `M = coker φ`, checked near the origin.
///
/// Works in `(S/m^N)^n` modulo `J S^n + im φ`, raising `N` until the
/// quotient stops growing; at that point `m^N` already kills the local
/// module `M/JM`, so membership there is exact.
pub fn socle_multiplication_check(
    mf: &MatrixFactorization,
    j: &[Polynomial],
    delta: &Polynomial,
    n_max: u32,
) -> Result<SocleCheck> {
    if !mf_validate(mf)? {
        return Err(Error::Argument("not a matrix factorization".into()));
    }
    let ring = mf.ring();
    for g in j.iter().chain([delta]) {
        mf.f.check_ring(g)?;
    }
    let k = ring.field();
    let size = mf.size();
    let nv = ring.nvars();
    let truncate = |entries: Vec<(Coord, u32)>, n: u32| {
        SparseVec::from_entries(k, entries.into_iter().filter(|((_, _, m), _)| m.degree() < n as u64))
    };
    let span = |n: u32| -> Echelon<Coord> {
        let mut ech = Echelon::new(k);
        if n == 0 {
            return ech;
        }
        for mu in monomials_up_to_degree(nv, n - 1) {
            for i in 0..size {
                for g in j {
                    let e = g.terms().iter().map(|(m, v)| ((i, 0, m.mul(&mu)), *v)).collect();
                    ech.insert(&truncate(e, n));
                }
                let col = (0..size)
                    .flat_map(|r| mf.phi.get(r, i).terms().iter().map(move |(m, v)| ((r, 0, m.mul(&mu)), *v)))
                    .collect();
                ech.insert(&truncate(col, n));
            }
        }
        ech
    };
    let quotient_dim = |n: u32, ech: &Echelon<Coord>| {
        (size * monomials_up_to_degree(nv, n.saturating_sub(1)).len() * usize::from(n > 0)) - ech.rank()
    };
    let mut prev = quotient_dim(0, &Echelon::new(k));
    for n in 1..=n_max {
        let ech = span(n);
        let cur = quotient_dim(n, &ech);
        if cur == prev {
            let per_generator: Vec<bool> = (0..size)
                .map(|i| {
                    let e = delta.terms().iter().map(|(m, v)| ((i, 0, *m), *v)).collect();
                    ech.contains(&truncate(e, n))
                })
                .collect();
            return Ok(SocleCheck {
                holds: per_generator.iter().all(|&b| b),
                per_generator,
                order: n,
            });
        }
        prev = cur;
    }
    Err(Error::Unstable(n_max))
}
