use std::sync::Arc;

use super::{PolyRing, Polynomial};
use crate::error::{Error, Result};

/// A dense matrix with polynomial entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        Self::scalar(&Polynomial::one(ring), n)
    }

    /// `f * Id_n`
    pub fn scalar(f: &Polynomial, n: usize) -> Self {
        let mut m = Self::zeros(f.ring(), n, n);
        for i in 0..n {
            m.entries[i * n + i] = f.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Argument("matrix rows have different lengths".into()));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        if let Some(first) = entries.first() {
            for e in &entries {
                first.check_ring(e)?;
            }
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    /// Largest total degree among the entries (0 for the zero matrix).
    pub fn max_degree(&self) -> u64 {
        self.entries.iter().filter_map(|e| e.total_degree()).max().unwrap_or(0)
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Argument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = match self.entries.first().or(other.entries.first()) {
            Some(e) => e.ring().clone(),
            None => return Ok(PolyMatrix { rows: self.rows, cols: other.cols, entries: vec![] }),
        };
        let mut out = Self::zeros(&ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&ring);
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).render()).collect())
            .collect()
    }
}
