use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{FpScalar, Monomial, MonomialOrder, PrimeField, MAX_VARS};
use crate::error::{Error, Result};

/// The ambient ring `F_p[x_0, ..., x_{n-1}]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    /// A ring with the default graded reverse lexicographic order.
    pub fn new(p: u64, vars: &[&str]) -> Result<Arc<PolyRing>> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let order = MonomialOrder::grevlex(names.len());
        Self::with_order(p, names, order)
    }

    pub fn with_order(p: u64, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<PolyRing>> {
        let field = PrimeField::new(p)?;
        if vars.len() > MAX_VARS {
            return Err(Error::Unsupported(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Argument(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Argument(format!("variable `{v}` declared twice")));
            }
        }
        if order.nvars() != vars.len() {
            return Err(Error::Argument("monomial order does not match the variable count".into()));
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.modulus()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Same field and variables, different order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Arc<PolyRing>> {
        Self::with_order(self.field.modulus() as u64, self.vars.clone(), order)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// A sparse polynomial over a [`PolyRing`].
///
/// Terms are kept in strictly decreasing order under the ring's monomial
/// order with no zero coefficients, so structural equality is equality of
/// polynomials.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        Self::from_sorted(ring, if c == 0 { vec![] } else { vec![(Monomial::one(ring.nvars()), c)] })
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index), 1)
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: u32) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let c = c % ring.characteristic();
        Self::from_sorted(ring, if c == 0 { vec![] } else { vec![(m, c)] })
    }

    /// Builds a polynomial from arbitrary terms; like monomials are combined.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let k = ring.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = k.add(*e, c % k.modulus());
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> FpScalar {
        let c = self
            .terms
            .binary_search_by(|(t, _)| self.ring.order.cmp(m, t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0);
        self.ring.field.element(c as i64)
    }

    /// Highest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree of a term (the order of vanishing at the origin).
    pub fn order_at_origin(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Context(format!(
                "F_{}[{}] vs F_{}[{}]",
                self.ring.characteristic(),
                self.ring.vars.join(","),
                other.ring.characteristic(),
                other.ring.vars.join(",")
            )))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, 1, &Monomial::one(self.ring.nvars())))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let minus_one = self.ring.characteristic() - 1;
        Ok(self.add_scaled(other, minus_one, &Monomial::one(self.ring.nvars())))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.terms.len() < other.terms.len() {
            return other.try_mul(self);
        }
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &other.terms {
            acc = acc.add_scaled(self, *c, m);
        }
        Ok(acc)
    }

    /// `self + c * mono * other`, merging the two sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, c: u32, mono: &Monomial) -> Polynomial {
        let terms = merge_scaled(&self.ring, &self.terms, &other.terms, c, mono);
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let k = self.ring.field;
        let c = c % k.modulus();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(&self.ring, self.terms.iter().map(|&(m, a)| (m, k.mul(a, c))).collect())
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial::from_sorted(&self.ring, self.terms.iter().map(|&(m, a)| (m.mul(mono), a)).collect())
    }

    /// Scales so that the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(1) | None => self.clone(),
            Some(c) => self.scale(self.ring.field.inv(c).unwrap()),
        }
    }

    /// `self^n` by repeated squaring; `self^0 = 1`.
    pub fn pow(&self, mut n: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Raises to a power of the characteristic: `(sum c_i m_i)^q = sum c_i m_i^q`.
    pub fn frobenius(&self, q: u64) -> Polynomial {
        let k = self.ring.field;
        let e = u32::try_from(q).expect("Frobenius exponent too large");
        Polynomial::from_sorted(&self.ring, self.terms.iter().map(|&(m, c)| (m.pow(e), k.pow(c, q))).collect())
    }

    /// Re-expresses the polynomial in another ring with the same field and
    /// variable count (e.g. a different monomial order).
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars());
        assert_eq!(ring.field, self.ring.field);
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Substitutes a polynomial for each variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, *c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&images[i].pow(e as u64))?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Canonical text form, parseable by [`parse_poly`](super::parse_poly).
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else if *c == 1 {
                    m.render(&self.ring.vars)
                } else {
                    format!("{}*{}", c, m.render(&self.ring.vars))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

pub(crate) fn merge_scaled(
    ring: &PolyRing,
    a: &[(Monomial, u32)],
    b: &[(Monomial, u32)],
    c: u32,
    mono: &Monomial,
) -> Vec<(Monomial, u32)> {
    let k = ring.field;
    let c = c % k.modulus();
    if c == 0 || b.is_empty() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj = b.first().map(|&(m, v)| (m.mul(mono), k.mul(v, c)));
    while i < a.len() {
        let Some((bm, bv)) = bj else { break };
        match ring.order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, bv));
                j += 1;
                bj = b.get(j).map(|&(m, v)| (m.mul(mono), k.mul(v, c)));
            }
            Ordering::Equal => {
                let s = k.add(a[i].1, bv);
                if s != 0 {
                    out.push((bm, s));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|&(m, v)| (m.mul(mono), k.mul(v, c)));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some(t) = bj {
        out.push(t);
        out.extend(b[j + 1..].iter().map(|&(m, v)| (m.mul(mono), k.mul(v, c))));
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.render())
    }
}

// Operator impls panic on mismatched rings; the `try_*` methods report it.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.characteristic() - 1)
    }
}
