use std::sync::Arc;

use crate::algebra::{Monomial, PolyRing, Polynomial};

/// Divisibility mask: bit `b` of variable `i` is set when the exponent of
/// `x_i` reaches `b + 1` (saturating). `a | m` implies `mask(a) & !mask(m) == 0`.
fn divmask(m: &Monomial) -> u64 {
    let n = m.nvars().max(1);
    let bits = (64 / n).min(16) as u32;
    let mut mask = 0u64;
    for (i, &e) in m.exponents().iter().enumerate() {
        let filled = e.min(bits);
        if filled > 0 {
            mask |= ((1u64 << filled) - 1) << (i as u32 * bits);
        }
    }
    mask
}

/// Leading monomials of a monic basis, prepared for divisor lookup.
pub(crate) struct Divisors<'a> {
    basis: &'a [Polynomial],
    masks: Vec<u64>,
}

impl<'a> Divisors<'a> {
    pub(crate) fn new(basis: &'a [Polynomial]) -> Self {
        debug_assert!(basis.iter().all(|g| g.leading_coefficient() == Some(1)));
        let masks = basis.iter().map(|g| divmask(g.leading_monomial().unwrap())).collect();
        Divisors { basis, masks }
    }

    #[inline]
    pub(crate) fn find(&self, m: &Monomial) -> Option<&'a Polynomial> {
        let mm = divmask(m);
        self.basis
            .iter()
            .zip(&self.masks)
            .find(|(g, &gm)| gm & !mm == 0 && g.leading_monomial().unwrap().divides(m))
            .map(|(g, _)| g)
    }
}

/// Full normal form of the term list `f` modulo a monic basis. The result is
/// a sorted term list supported on monomials not divisible by any leading
/// monomial.
pub(crate) fn normal_form_terms(
    ring: &Arc<PolyRing>,
    f: &[(Monomial, u32)],
    divisors: &Divisors<'_>,
) -> Vec<(Monomial, u32)> {
    let k = ring.field();
    let mut work: Vec<(Monomial, u32)> = f.to_vec();
    let mut rem = Vec::new();
    let mut idx = 0;
    while idx < work.len() {
        let (m, c) = work[idx];
        match divisors.find(&m) {
            Some(g) => {
                let shift = m.checked_div(g.leading_monomial().unwrap()).unwrap();
                work = crate::algebra::merge_scaled(ring, &work[idx + 1..], &g.terms()[1..], k.neg(c), &shift);
                idx = 0;
            }
            None => {
                rem.push((m, c));
                idx += 1;
            }
        }
    }
    rem
}
