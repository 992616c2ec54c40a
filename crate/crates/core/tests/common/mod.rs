//! Independent reference computations shared by the integration tests.
//!
//! Nothing here touches the library's Gröbner or echelon code: lengths come
//! from dense Gaussian elimination over `F_p` or from closed-form counts.

#![allow(dead_code)]

use std::collections::HashMap;

use frobsig::algebra::{monomials_up_to_degree, Monomial, Polynomial};
use frobsig::extcheck::{MatrixFactorization, MfFile};
use frobsig::frobenius::RingPresentation;
use frobsig::fsignature::{AdeFamily, AdeSpec};

/// Dense row space over `F_p`, one pivot column per stored row.
pub struct DenseRows {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl DenseRows {
    pub fn new(p: u64) -> Self {
        DenseRows { p, rows: Vec::new() }
    }

    fn inv(&self, a: u64) -> u64 {
        let mut r = 1;
        let (mut b, mut e) = (a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + (self.p - c) * y) % self.p;
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether it was independent.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = self.inv(v[pivot]);
        let v: Vec<u64> = v.iter().map(|x| x * s % self.p).collect();
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = (*x + (self.p - c) * y) % self.p;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// `dim S_{≤D} − dim span{μ g : deg(μ g) ≤ D}`.
pub fn macaulay_count(gens: &[Polynomial], deg: u32) -> u64 {
    let ring = gens[0].ring();
    let p = ring.characteristic() as u64;
    let n = ring.nvars();
    let mons = monomials_up_to_degree(n, deg);
    let index: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = DenseRows::new(p);
    for g in gens {
        let Some(dg) = g.total_degree() else { continue };
        if dg > deg as u64 {
            continue;
        }
        for mu in monomials_up_to_degree(n, deg - dg as u32) {
            let mut v = vec![0u64; mons.len()];
            for (m, c) in g.terms() {
                v[index[&m.mul(&mu)]] = *c as u64;
            }
            rows.insert(v);
        }
    }
    (mons.len() - rows.rank()) as u64
}

/// `λ(S/I)` by the Macaulay count, raising `D` until three consecutive
/// values agree.
pub fn macaulay_colength(gens: &[Polynomial], max_deg: u32) -> u64 {
    let mut history = Vec::new();
    for d in 1..=max_deg {
        history.push(macaulay_count(gens, d));
        if history.len() >= 3 && history[history.len() - 3..].iter().all(|&x| x == history[history.len() - 1]) {
            return history[history.len() - 1];
        }
    }
    panic!("Macaulay count did not settle by degree {max_deg}: {history:?}");
}

/// Whether `f` lies in span{μ g : deg(μ g) ≤ D}.
pub fn macaulay_contains(gens: &[Polynomial], f: &Polynomial, deg: u32) -> bool {
    let ring = f.ring();
    let p = ring.characteristic() as u64;
    let n = ring.nvars();
    let mons = monomials_up_to_degree(n, deg);
    let index: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = DenseRows::new(p);
    for g in gens {
        let dg = g.total_degree().unwrap_or(0);
        if dg > deg as u64 {
            continue;
        }
        for mu in monomials_up_to_degree(n, deg - dg as u32) {
            let mut v = vec![0u64; mons.len()];
            for (m, c) in g.terms() {
                v[index[&m.mul(&mu)]] = *c as u64;
            }
            rows.insert(v);
        }
    }
    let mut v = vec![0u64; mons.len()];
    for (m, c) in f.terms() {
        v[index[m]] = *c as u64;
    }
    rows.reduce(v).iter().all(|&x| x == 0)
}

/// Counts exponent vectors not divisible by any generator by walking the
/// whole box below the pure-power bounds. `None` if some variable has no
/// pure power.
pub fn enumerate_staircase(gens: &[Vec<u32>], nvars: usize) -> Option<u64> {
    let mut bounds = vec![None; nvars];
    for g in gens {
        let support: Vec<usize> = (0..nvars).filter(|&i| g[i] > 0).collect();
        if support.is_empty() {
            return Some(0);
        }
        if support.len() == 1 {
            let i = support[0];
            bounds[i] = Some(bounds[i].map_or(g[i], |b: u32| b.min(g[i])));
        }
    }
    let bounds: Vec<u32> = bounds.into_iter().collect::<Option<_>>()?;
    let mut count = 0;
    let mut e = vec![0u32; nvars];
    loop {
        if !gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return Some(count);
            }
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// `#{(a, b) ∈ [0, q)^2 : a ≡ b (mod n + 1)}`: the free rank of the
/// `q`-th Frobenius pushforward of the `A_n` singularity, a quotient of
/// `k[u, v]` by a cyclic group of order `n + 1`.
pub fn an_free_rank(n: u64, q: u64) -> u64 {
    let mut total = 0;
    for a in 0..q {
        for b in 0..q {
            if a % (n + 1) == b % (n + 1) {
                total += 1;
            }
        }
    }
    total
}

/// `#{(a, b) ∈ [0, p)^2 : a + b ≡ k (mod n)}` by the double loop.
pub fn enumerate_mk(p: u64, n: u64, k: u64) -> u64 {
    let mut c = 0;
    for a in 0..p {
        for b in 0..p {
            if (a + b) % n == k {
                c += 1;
            }
        }
    }
    c
}

/// Terms `(i, j, c)` of `c y^i z^j`.
pub type Terms = Vec<(u32, u32, i64)>;
/// Weights of `y` and `z`.
pub type Weights = (usize, usize);

/// Dense polynomial in `y, z` truncated to the box `y^q = z^q = 0`,
/// indexed `[i * q + j]` for `y^i z^j`.
fn box_poly(g: &[(u32, u32, i64)], q: usize, p: u64) -> Vec<u64> {
    let mut v = vec![0u64; q * q];
    for &(i, j, c) in g {
        if (i as usize) < q && (j as usize) < q {
            let c = c.rem_euclid(p as i64) as u64;
            v[i as usize * q + j as usize] = (v[i as usize * q + j as usize] + c) % p;
        }
    }
    v
}

fn box_mul(a: &[u64], b: &[u64], q: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; q * q];
    for (ia, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        let (i1, j1) = (ia / q, ia % q);
        for (ib, &cb) in b.iter().enumerate() {
            if cb == 0 {
                continue;
            }
            let (i2, j2) = (ib / q, ib % q);
            if i1 + i2 < q && j1 + j2 < q {
                let k = (i1 + i2) * q + j1 + j2;
                out[k] = (out[k] + ca * cb) % p;
            }
        }
    }
    out
}

/// `dim_k (h A)` for `A = k[y, z]/(y^q, z^q)` and `h` homogeneous for the
/// weights `w`: one dense rank per weighted degree.
fn box_ideal_dim(h: &[u64], q: usize, p: u64, w: (usize, usize)) -> usize {
    let weight = |k: usize| w.0 * (k / q) + w.1 * (k % q);
    let mut by_weight: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..q * q {
        by_weight.entry(weight(k)).or_default().push(k);
    }
    let Some(hw) = h.iter().position(|&c| c != 0).map(weight) else {
        return 0;
    };
    let mut total = 0;
    for (wt, mus) in &by_weight {
        let Some(targets) = by_weight.get(&(wt + hw)) else { continue };
        let col: HashMap<usize, usize> = targets.iter().enumerate().map(|(c, &k)| (k, c)).collect();
        let mut rows = DenseRows::new(p);
        for &mu in mus {
            let (i, j) = (mu / q, mu % q);
            let mut v = vec![0u64; targets.len()];
            for (k, &c) in h.iter().enumerate() {
                if c != 0 && k / q + i < q && k % q + j < q {
                    v[col[&((k / q + i) * q + k % q + j)]] = c;
                }
            }
            rows.insert(v);
        }
        total += rows.rank();
    }
    total
}

/// `(λ(R/(y^q, z^q)), λ(R/(x^q, y^q, z^q)))` for `R = k[x,y,z]/(x^2 + g)`
/// with `g ∈ (y, z)` homogeneous for the weights `w` and odd `q`.
///
/// `R/(y^q, z^q)` is free over `A = k[y,z]/(y^q, z^q)` on `1, x`, and
/// `x^q = x h`, `x^{q+1} = −g h` with `h = (−g)^{(q−1)/2}`, so the second
/// quotient drops `dim hA + dim ghA`.
pub fn double_point_lengths(g: &[(u32, u32, i64)], w: (usize, usize), p: u64, q: u64) -> (u64, u64) {
    assert!(q % 2 == 1);
    let qs = q as usize;
    let neg_g: Vec<(u32, u32, i64)> = g.iter().map(|&(i, j, c)| (i, j, -c)).collect();
    let neg_g = box_poly(&neg_g, qs, p);
    let mut h = box_poly(&[(0, 0, 1)], qs, p);
    for _ in 0..(q - 1) / 2 {
        h = box_mul(&h, &neg_g, qs, p);
    }
    let gh = box_mul(&neg_g, &h, qs, p);
    let full = 2 * q * q;
    (full, full - box_ideal_dim(&h, qs, p, w) as u64 - box_ideal_dim(&gh, qs, p, w) as u64)
}

/// `g` and its weights for the D and E relations `x^2 + g(y, z)`.
pub fn double_point_data(spec: AdeSpec) -> Option<(Terms, Weights)> {
    match spec.family {
        AdeFamily::A => None,
        AdeFamily::D => {
            let n = spec.n;
            // y z^2 + y^(n-1): weights (2, n - 2)
            Some((vec![(1, 2, 1), (n - 1, 0, 1)], (2, n as usize - 2)))
        }
        AdeFamily::E6 => Some((vec![(3, 0, 1), (0, 4, 1)], (4, 3))),
        AdeFamily::E7 => Some((vec![(3, 0, 1), (1, 3, 1)], (3, 2))),
        AdeFamily::E8 => Some((vec![(3, 0, 1), (0, 5, 1)], (5, 3))),
    }
}

/// Matrix factorization over the ring of `ring`, entries as strings.
pub fn mf(ring: &RingPresentation, f: &str, phi: &[&[&str]], psi: &[&[&str]]) -> MatrixFactorization {
    let rows = |m: &[&[&str]]| m.iter().map(|row| row.iter().map(|s| s.to_string()).collect()).collect();
    let file = MfFile { f: f.into(), size: phi.len(), phi: rows(phi), psi: rows(psi) };
    MatrixFactorization::from_file(&file, ring.ring()).unwrap()
}

/// Name, relation, `φ` and `ψ`.
type FactorizationRow = (&'static str, &'static str, &'static [&'static [&'static str]], &'static [&'static [&'static str]]);

/// Nontrivial factorizations of plane curve ADE singularities over `F_p`,
/// each with its hypersurface ring.
pub fn curve_mfs(p: u64) -> Vec<(&'static str, RingPresentation, MatrixFactorization)> {
    let table: [FactorizationRow; 7] = [
        ("A1 rank 1", "x*y", &[&["x"]], &[&["y"]]),
        ("A2 rank 2", "y^2 - x^3", &[&["y", "x^2"], &["x", "y"]], &[&["y", "-x^2"], &["-x", "y"]]),
        ("A3 rank 1", "y^2 - x^4", &[&["y - x^2"]], &[&["y + x^2"]]),
        ("A3 rank 2", "y^2 - x^4", &[&["y", "x"], &["x^3", "y"]], &[&["y", "-x"], &["-x^3", "y"]]),
        ("A4 rank 2", "y^2 - x^5", &[&["y", "x^3"], &["x^2", "y"]], &[&["y", "-x^3"], &["-x^2", "y"]]),
        ("D4 rank 1", "x^2*y - y^3", &[&["y"]], &[&["x^2 - y^2"]]),
        ("D4 rank 1 line", "x^2*y - y^3", &[&["x - y"]], &[&["x*y + y^2"]]),
    ];
    table
        .iter()
        .map(|&(name, f, phi, psi)| {
            let ring = RingPresentation::hypersurface(p, &["x", "y"], f).unwrap();
            let m = mf(&ring, f, phi, psi);
            (name, ring, m)
        })
        .collect()
}
