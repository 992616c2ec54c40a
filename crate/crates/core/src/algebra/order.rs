use std::cmp::Ordering;

use super::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Graded reverse lexicographic.
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// Block order: grevlex on the first `block` variables (by priority),
    /// ties broken by grevlex on the rest. Any monomial involving the block
    /// is larger than every monomial free of it.
    Eliminate { block: usize },
}

/// A monomial order together with a variable priority.
///
/// `priority[0]` is the index of the most significant variable. With the
/// identity priority, `x_0 > x_1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || seen[v] {
                return Err(Error::Argument(format!(
                    "variable priority {priority:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        if let OrderKind::Eliminate { block } = kind {
            if block > priority.len() {
                return Err(Error::Argument("elimination block too large".into()));
            }
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.lex_on(&self.priority, a, b),
            OrderKind::GrevLex => self.grevlex_on(&self.priority, a, b),
            OrderKind::Eliminate { block } => {
                let (head, tail) = self.priority.split_at(block);
                self.grevlex_on(head, a, b)
                    .then_with(|| self.grevlex_on(tail, a, b))
            }
        }
    }

    #[inline]
    fn lex_on(&self, vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
        for &v in vars {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    #[inline]
    fn grevlex_on(&self, vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
        let da: u64 = vars.iter().map(|&v| a.exponent(v) as u64).sum();
        let db: u64 = vars.iter().map(|&v| b.exponent(v) as u64).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for &v in vars.iter().rev() {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}
