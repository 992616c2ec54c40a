//! Gröbner bases over `F_p`: normal forms, standard monomials, colengths,
//! colon ideals and socles of Artinian quotients.

mod buchberger;
mod quotient;
mod reduce;
mod staircase;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::algebra::{same_ring, Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

pub use quotient::{colon_ideal, socle_basis};
pub use staircase::{staircase_count, staircase_monomials};

use reduce::{normal_form_terms, Divisors};

/// `λ(S/I)`: a finite dimension or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthValue {
    Finite(u64),
    Infinite,
}

impl LengthValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            LengthValue::Finite(n) => Some(n),
            LengthValue::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, LengthValue::Finite(_))
    }
}

impl fmt::Display for LengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthValue::Finite(n) => write!(f, "{n}"),
            LengthValue::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for LengthValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LengthValue::Finite(n) => s.serialize_u64(*n),
            LengthValue::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

/// An ideal of the ambient polynomial ring together with its (lazily
/// computed, cached) reduced Gröbner basis.
///
/// The basis is computed at most once; concurrent readers see either nothing
/// or the finished basis.
pub struct IdealHandle {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        IdealHandle {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            basis,
        }
    }
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render_generators().join(", "))
    }
}

impl IdealHandle {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if !same_ring(ring, g.ring()) {
                return Err(Error::Context("generator from a different ring".into()));
            }
        }
        Ok(IdealHandle {
            ring: ring.clone(),
            generators,
            basis: OnceLock::new(),
        })
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Arc<PolyRing>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Self::new(ring, gens).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn render_generators(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.render()).collect()
    }

    /// `I + (extra)`
    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<IdealHandle> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        IdealHandle::new(&self.ring, gens)
    }

    /// Reduced Gröbner basis, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        self.basis
            .get_or_init(|| buchberger::reduced_groebner_basis(&self.ring, &self.generators))
    }

    pub fn has_basis(&self) -> bool {
        self.basis.get().is_some()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis().iter().map(|g| *g.leading_monomial().unwrap()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis().first().is_some_and(|g| g.is_constant())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Standard monomials in decreasing monomial order, or `None` if infinite.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let mut mons = staircase_monomials(&self.leading_monomials(), self.ring.nvars())?;
        let order = self.ring.order();
        mons.sort_by(|a, b| order.cmp(b, a));
        Some(mons)
    }
}

/// Computes and caches the reduced Gröbner basis; returns the same handle.
pub fn groebner_basis(ideal: &IdealHandle) -> &IdealHandle {
    ideal.basis();
    ideal
}

/// Remainder of `f` on division by the reduced basis of `ideal`. It is zero
/// exactly when `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, ideal: &IdealHandle) -> Result<Polynomial> {
    if !same_ring(f.ring(), &ideal.ring) {
        return Err(Error::Context("polynomial and ideal live in different rings".into()));
    }
    let basis = ideal.basis();
    let terms = normal_form_terms(&ideal.ring, f.terms(), &Divisors::new(basis));
    Ok(Polynomial::from_sorted(&ideal.ring, terms))
}

/// `dim_k S/I`, counted from the staircase of the leading monomials.
pub fn colength(ideal: &IdealHandle) -> LengthValue {
    match staircase_count(&ideal.leading_monomials(), ideal.ring.nvars()) {
        Some(n) => LengthValue::Finite(n),
        None => LengthValue::Infinite,
    }
}
