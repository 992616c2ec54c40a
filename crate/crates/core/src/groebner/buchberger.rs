//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller installation of both Buchberger criteria.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::{Monomial, PolyRing, Polynomial};

use super::reduce::{normal_form_terms, Divisors};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct State {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
    sugar: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (self.lm(i), self.lm(j));
        let lcm = a.lcm(b);
        let sugar = (self.sugar[i] + lcm.degree() - a.degree()).max(self.sugar[j] + lcm.degree() - b.degree());
        Pair {
            i: i.min(j),
            j: i.max(j),
            lcm,
            sugar,
        }
    }

    /// Gebauer–Möller update for a new basis element `h`.
    fn update(&mut self, h: usize) {
        let lm_h = *self.lm(h);
        let candidates: Vec<Pair> = (0..h).filter(|&g| self.active[g]).map(|g| self.pair(g, h)).collect();

        // Chain criterion among the new pairs: drop (g, h) when another new pair
        // has an lcm strictly dividing it; keep coprime ones for now so they can
        // shadow others, then drop them by the product criterion.
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in candidates.iter().enumerate() {
            let coprime = self.lm(p.i).is_coprime(&lm_h);
            let shadowed = !coprime
                && candidates.iter().enumerate().any(|(jdx, other)| {
                    jdx != idx
                        && other.lcm.divides(&p.lcm)
                        && (other.lcm != p.lcm || jdx < idx)
                });
            if !shadowed {
                kept.push(p.clone());
            }
        }
        // Among equal lcms keep a single representative, preferring a coprime
        // one (which then removes the whole class).
        let mut unique: Vec<Pair> = Vec::new();
        for p in kept {
            match unique.iter_mut().find(|q| q.lcm == p.lcm) {
                Some(q) => {
                    if self.lm(p.i).is_coprime(&lm_h) {
                        *q = p;
                    }
                }
                None => unique.push(p),
            }
        }
        let fresh: Vec<Pair> = unique
            .into_iter()
            .filter(|p| !self.lm(p.i).is_coprime(&lm_h))
            .collect();

        // Chain criterion on old pairs.
        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !(lm_h.divides(&p.lcm)
                    && self.lm(p.i).lcm(&lm_h) != p.lcm
                    && self.lm(p.j).lcm(&lm_h) != p.lcm)
            })
            .collect();
        self.pairs.extend(fresh);

        for g in 0..h {
            if self.active[g] && lm_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn add(&mut self, p: Polynomial, sugar: u64) {
        self.polys.push(p.monic());
        self.sugar.push(sugar);
        self.active.push(false);
        let h = self.polys.len() - 1;
        self.update(h);
    }

    /// Smallest sugar, then smallest lcm, then generator indices.
    fn pop_pair(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then_with(|| order.cmp(&p.lcm, &q.lcm))
                .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn active_basis(&self) -> Vec<Polynomial> {
        (0..self.polys.len())
            .filter(|&i| self.active[i])
            .map(|i| self.polys[i].clone())
            .collect()
    }
}

fn s_polynomial(ring: &Arc<PolyRing>, f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let uf = lcm.checked_div(f.leading_monomial().unwrap()).unwrap();
    let ug = lcm.checked_div(g.leading_monomial().unwrap()).unwrap();
    let a = Polynomial::from_sorted(ring, f.terms()[1..].iter().map(|&(m, c)| (m.mul(&uf), c)).collect());
    a.add_scaled(
        &Polynomial::from_sorted(ring, g.terms()[1..].to_vec()),
        ring.characteristic() - 1,
        &ug,
    )
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// increasing leading monomial. Empty for the zero ideal.
pub(crate) fn reduced_groebner_basis(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut st = State {
        ring: ring.clone(),
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        // Inter-reduce incoming generators against what is already there.
        let basis = st.active_basis();
        let nf = normal_form_terms(ring, g.terms(), &Divisors::new(&basis));
        if nf.is_empty() {
            continue;
        }
        let nf = Polynomial::from_sorted(ring, nf);
        if nf.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        st.add(nf, g.total_degree().unwrap());
    }

    while let Some(pair) = st.pop_pair() {
        let s = s_polynomial(ring, &st.polys[pair.i], &st.polys[pair.j], &pair.lcm);
        let basis = st.active_basis();
        let nf = normal_form_terms(ring, s.terms(), &Divisors::new(&basis));
        if nf.is_empty() {
            continue;
        }
        let nf = Polynomial::from_sorted(ring, nf);
        if nf.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        st.add(nf, pair.sugar);
    }

    interreduce(ring, st.active_basis())
}

/// Turns a minimal Gröbner basis into the reduced one.
fn interreduce(ring: &Arc<PolyRing>, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| ring.order().cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut out: Vec<Polynomial> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &basis[i];
        let tail = normal_form_terms(ring, &g.terms()[1..], &Divisors::new(&others));
        let mut terms = vec![g.terms()[0]];
        terms.extend(tail);
        out.push(Polynomial::from_sorted(ring, terms).monic());
    }
    debug_assert!(out.windows(2).all(|w| ring
        .order()
        .cmp(w[0].leading_monomial().unwrap(), w[1].leading_monomial().unwrap())
        == Ordering::Less));
    out
}
