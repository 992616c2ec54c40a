//! Lattice-point counts for the degree-`n` Veronese subring of `k[[x,y]]`.
//!
//! Monomials `x^a y^b` with `0 ≤ a, b < p` form a free basis of `S` over
//! `S^p`; sorting them by `a + b mod n` splits each rank-one module of the
//! Veronese ring into Frobenius pushforwards of the others. The resulting
//! decomposition matrix is circulant with entries
//! `m_k = #{(a, b) : a + b ≡ k (mod n)}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::algebra::is_prime;
use crate::error::{Error, Result};
use crate::exact::{ratio_string, serialize_ratio, serialize_ratios};

/// Absolute tolerance for `1/s ≈ |G|`.
pub const GROUP_ORDER_TOLERANCE: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VeroneseSpec {
    pub p: u64,
    pub n: u64,
}

impl VeroneseSpec {
    pub fn new(p: u64, n: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::Argument("Veronese degree must be at least 1".into()));
        }
        if n.is_multiple_of(p) {
            return Err(Error::Unsupported(format!("characteristic {p} divides the degree {n}")));
        }
        Ok(VeroneseSpec { p, n })
    }
}

/// How many `a ∈ [0, p)` fall in each residue class mod `n`.
fn residue_tally(p: u64, n: u64) -> Vec<u64> {
    (0..n).map(|r| p / n + u64::from(r < p % n)).collect()
}

/// `#{(a, b) ∈ [0, p)^2 : a + b ≡ k (mod n)}`.
pub fn mk_count(p: u64, n: u64, k: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Argument("modulus must be positive".into()));
    }
    if k >= n {
        return Err(Error::Argument(format!("residue {k} out of range for n = {n}")));
    }
    let c = residue_tally(p, n);
    Ok((0..n).map(|r| c[r as usize] * c[((k + n - r) % n) as usize]).sum())
}

/// Row `i` is the rank-one module `I_i` (`I_0 = R`), column `j` counts its
/// summands isomorphic to `I_j^[p]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionMatrix {
    pub p: u64,
    pub n: u64,
    pub entries: Vec<Vec<u64>>,
}

impl DecompositionMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

/// `a_ij = m_{(i − j) mod n}`.
pub fn decomposition_matrix(spec: VeroneseSpec) -> Result<DecompositionMatrix> {
    let VeroneseSpec { p, n } = spec;
    let m: Vec<u64> = (0..n).map(|k| mk_count(p, n, k)).collect::<Result<_>>()?;
    let entries = (0..n)
        .map(|i| (0..n).map(|j| m[((i + n - j) % n) as usize]).collect())
        .collect();
    Ok(DecompositionMatrix { p, n, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    /// `⌊p^2/n⌋`
    pub floor: u64,
    /// `p^2 mod n`
    pub remainder: u64,
    /// Rows whose sum is not `p^2`.
    pub bad_row_sums: Vec<usize>,
    /// Entries `(i, j)` outside `[floor, floor + remainder]`.
    pub out_of_range: Vec<(usize, usize)>,
    /// Entries `(i, j)` differing by more than one from the next entry in
    /// the row, cyclically.
    pub jumps: Vec<(usize, usize)>,
    pub passed: bool,
}

pub fn bounds_check(a: &DecompositionMatrix) -> BoundsReport {
    let p2 = a.p * a.p;
    let (floor, remainder) = (p2 / a.n, p2 % a.n);
    let size = a.size();
    let mut report = BoundsReport {
        floor,
        remainder,
        bad_row_sums: Vec::new(),
        out_of_range: Vec::new(),
        jumps: Vec::new(),
        passed: false,
    };
    for (i, row) in a.entries.iter().enumerate() {
        if row.iter().sum::<u64>() != p2 {
            report.bad_row_sums.push(i);
        }
        for (j, &v) in row.iter().enumerate() {
            if v < floor || v > floor + remainder {
                report.out_of_range.push((i, j));
            }
            if v.abs_diff(row[(j + 1) % size]) > 1 {
                report.jumps.push((i, j));
            }
        }
    }
    report.passed = report.bad_row_sums.is_empty() && report.out_of_range.is_empty() && report.jumps.is_empty();
    report
}

/// `(A^s)_{00} / p^{2s}` for `s = 1, ..., s_max`.
pub fn power_limit(a: &DecompositionMatrix, s_max: u32) -> Result<Vec<BigRational>> {
    if s_max == 0 {
        return Err(Error::Argument("s_max must be at least 1".into()));
    }
    let size = a.size();
    let p2 = BigInt::from(a.p * a.p);
    let mut row: Vec<BigInt> = (0..size).map(|j| BigInt::from(u64::from(j == 0))).collect();
    let mut den = BigInt::from(1);
    let mut out = Vec::new();
    for _ in 0..s_max {
        row = (0..size)
            .map(|j| (0..size).map(|k| &row[k] * a.entries[k][j]).sum())
            .collect();
        den *= &p2;
        out.push(BigRational::new(row[0].clone(), den.clone()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupOrderReport {
    pub n: u64,
    /// Free rank of `S` over `R`.
    pub f: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub s: BigRational,
    pub order_estimate: f64,
    pub passed: bool,
}

/// Compares `f / s` with `n = |G|`, where `G` is the cyclic group whose
/// invariant ring is the Veronese subring and `f = 1`.
pub fn group_order_check(spec: VeroneseSpec, s: &BigRational) -> Result<GroupOrderReport> {
    if !s.is_positive() {
        return Err(Error::Argument(format!("signature {} is not positive", ratio_string(s))));
    }
    let order_estimate = s.recip().to_f64().unwrap_or(f64::INFINITY);
    Ok(GroupOrderReport {
        n: spec.n,
        f: 1,
        s: s.clone(),
        order_estimate,
        passed: (order_estimate - spec.n as f64).abs() <= GROUP_ORDER_TOLERANCE,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VeroneseReport {
    pub p: u64,
    pub n: u64,
    pub m: Vec<u64>,
    pub matrix: Vec<Vec<u64>>,
    pub bounds: BoundsReport,
    #[serde(serialize_with = "serialize_ratios")]
    pub limits: Vec<BigRational>,
    pub group_order: GroupOrderReport,
}

/// Matrix, bounds, normalized powers up to `s_max` and the group-order
/// comparison at `s_max`.
pub fn veronese_report(spec: VeroneseSpec, s_max: u32) -> Result<VeroneseReport> {
    let a = decomposition_matrix(spec)?;
    let limits = power_limit(&a, s_max)?;
    let group_order = group_order_check(spec, limits.last().unwrap())?;
    Ok(VeroneseReport {
        p: spec.p,
        n: spec.n,
        m: (0..spec.n).map(|k| mk_count(spec.p, spec.n, k)).collect::<Result<_>>()?,
        bounds: bounds_check(&a),
        matrix: a.entries,
        limits,
        group_order,
    })
}
