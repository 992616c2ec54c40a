use std::fmt;

/// Upper bound on the number of ambient variables (one slot is reserved for
/// the auxiliary variable used by colon computations).
pub const MAX_VARS: usize = 8;

/// An exponent vector `x_0^{a_0} ... x_{n-1}^{a_{n-1}}`.
///
/// The derived `Ord` is the raw storage order (lexicographic on the exponent
/// array). It is only used for keys in maps; polynomial arithmetic always goes
/// through a [`MonomialOrder`](super::MonomialOrder).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    nvars: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Self::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn set_exponent(&mut self, i: usize, e: u32) {
        assert!(i < self.nvars());
        self.exps[i] = e;
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.exponents().iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents().iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] += other.exps[i];
        }
        out
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    #[inline]
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] = self.exps[i].checked_sub(other.exps[i])?;
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] = self.exps[i].max(other.exps[i]);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] = self.exps[i]
                .checked_mul(k)
                .expect("exponent overflow in monomial power");
        }
        out
    }

    /// Same exponents with `extra` trailing zero variables appended.
    pub fn extended(&self, extra: usize) -> Monomial {
        let mut out = *self;
        assert!(self.nvars() + extra <= MAX_VARS, "too many variables");
        out.nvars += extra as u8;
        out
    }

    /// Drops the trailing `count` variables, which must have exponent zero.
    pub fn truncated(&self, count: usize) -> Option<Monomial> {
        let n = self.nvars() - count;
        if self.exps[n..self.nvars()].iter().any(|&e| e != 0) {
            return None;
        }
        let mut out = *self;
        out.exps[n..].iter_mut().for_each(|e| *e = 0);
        out.nvars = n as u8;
        Some(out)
    }

    /// Renders using the given variable names; `1` for the unit monomial.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// All monomials in `nvars` variables of total degree exactly `deg`.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Monomial::one(nvars);
    fn rec(i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        let n = cur.nvars();
        if i + 1 == n {
            cur.exps[i] = left;
            out.push(*cur);
            cur.exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur.exps[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur.exps[i] = 0;
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// All monomials in `nvars` variables of total degree at most `deg`.
pub fn monomials_up_to_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    (0..=deg)
        .flat_map(|d| monomials_of_degree(nvars, d))
        .collect()
}
