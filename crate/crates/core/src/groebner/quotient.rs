use std::collections::HashMap;
use std::sync::Arc;

use super::{normal_form, IdealHandle};
use crate::algebra::{MonomialOrder, OrderKind, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};

/// The ring with one extra variable `t` that is eliminated first.
fn elimination_ring(ring: &Arc<PolyRing>) -> Result<Arc<PolyRing>> {
    let n = ring.nvars();
    let mut name = "_t".to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    let mut vars = ring.vars().to_vec();
    vars.push(name);
    let mut priority = vec![n];
    priority.extend_from_slice(ring.order().priority());
    let order = MonomialOrder::new(OrderKind::Eliminate { block: 1 }, priority)?;
    PolyRing::with_order(ring.characteristic() as u64, vars, order)
}

fn lift(f: &Polynomial, target: &Arc<PolyRing>) -> Polynomial {
    Polynomial::from_terms(target, f.terms().iter().map(|&(m, c)| (m.extended(1), c)))
}

/// Exact quotient `f / g`; errors if `g` does not divide `f`.
fn exact_division(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let ring = f.ring();
    let k = ring.field();
    let lm = *g.leading_monomial().unwrap();
    let inv = k.inv(g.leading_coefficient().unwrap()).unwrap();
    let mut rem = f.clone();
    let mut quotient = Vec::new();
    while let Some(&(m, c)) = rem.terms().first() {
        let shift = m
            .checked_div(&lm)
            .ok_or_else(|| Error::Argument(format!("{g} does not divide {f}")))?;
        let coeff = k.mul(c, inv);
        quotient.push((shift, coeff));
        rem = rem.add_scaled(g, k.neg(coeff), &shift);
    }
    Ok(Polynomial::from_terms(ring, quotient))
}

/// `(I : g) = { h : h g ∈ I }`.
///
/// Computed as `(I ∩ (g)) / g`, with the intersection obtained by eliminating
/// `t` from `t I + (1 - t) g`.
pub fn colon_ideal(ideal: &IdealHandle, g: &Polynomial) -> Result<IdealHandle> {
    let ring = ideal.ring();
    g.check_ring(&Polynomial::zero(ring))?;
    if g.is_zero() {
        return Err(Error::Argument("colon by the zero polynomial".into()));
    }
    if g.is_constant() || ideal.is_unit() {
        let out = IdealHandle::new(ring, ideal.basis().to_vec())?;
        out.basis();
        return Ok(out);
    }
    let ext = elimination_ring(ring)?;
    let n = ring.nvars();
    let t = Polynomial::var(&ext, n);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens: Vec<Polynomial> = ideal.basis().iter().map(|f| &t * &lift(f, &ext)).collect();
    gens.push(&one_minus_t * &lift(g, &ext));
    let elim = IdealHandle::new(&ext, gens)?;

    let mut quotients = Vec::new();
    for h in elim.basis() {
        if h.leading_monomial().unwrap().exponent(n) > 0 {
            continue;
        }
        let down = Polynomial::from_terms(ring, h.terms().iter().map(|&(m, c)| (m.truncated(1).unwrap(), c)));
        quotients.push(exact_division(&down, g)?);
    }
    let out = IdealHandle::new(ring, quotients)?;
    out.basis();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum SocleKey {
    Image(usize, usize),
    Source(usize),
}

/// A `k`-basis of `(I : m) / I`, each element supported on standard
/// monomials of `I`, ordered by decreasing leading monomial. Its length is
/// the Cohen–Macaulay type of `S/I`.
pub fn socle_basis(ideal: &IdealHandle, maximal: &IdealHandle) -> Result<Vec<Polynomial>> {
    let ring = ideal.ring();
    if !crate::algebra::same_ring(ring, maximal.ring()) {
        return Err(Error::Context("maximal ideal from a different ring".into()));
    }
    let all_vars = IdealHandle::maximal(ring);
    if !(maximal.contains_ideal(&all_vars)? && all_vars.contains_ideal(maximal)?) {
        return Err(Error::Argument("socle needs the ideal of all variables".into()));
    }
    let std = ideal.standard_monomials().ok_or(Error::NotZeroDimensional)?;
    if std.is_empty() {
        return Ok(Vec::new());
    }
    let index: HashMap<_, _> = std.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let k = ring.field();

    let mut echelon: Echelon<SocleKey> = Echelon::new(k);
    for (i, b) in std.iter().enumerate() {
        let mut entries = vec![(SocleKey::Source(i), 1)];
        for (j, v) in all_vars.generators().iter().enumerate() {
            let nf = normal_form(&v.mul_monomial(b), ideal)?;
            entries.extend(nf.terms().iter().map(|(m, c)| (SocleKey::Image(j, index[m]), *c)));
        }
        echelon.insert(&SparseVec::from_entries(k, entries));
    }

    let mut kernel: Echelon<usize> = Echelon::new(k);
    for row in echelon.rows() {
        if let Some(SocleKey::Source(_)) = row.leading() {
            kernel.insert(&row.map_keys(|key| match key {
                SocleKey::Source(i) => *i,
                SocleKey::Image(..) => unreachable!(),
            }));
        }
    }
    Ok(kernel
        .reduced_rows()
        .into_iter()
        .map(|row| Polynomial::from_terms(ring, row.entries().iter().map(|&(i, c)| (std[i], c))))
        .collect())
}
