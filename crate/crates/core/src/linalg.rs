//! Sparse row echelon forms over `F_p` with arbitrary ordered column keys.
//!
//! The column order is the order of the key type: the pivot of a row is its
//! smallest key. Choosing the key order lets callers read off kernels (put
//! image coordinates first) or intersections with coordinate subspaces (put
//! the coordinates to be killed first).

use std::collections::BTreeMap;

use crate::algebra::PrimeField;

/// A sparse vector: strictly increasing keys, nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec<K> {
    entries: Vec<(K, u32)>,
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Collects entries, summing duplicate keys.
    pub fn from_entries(field: PrimeField, entries: impl IntoIterator<Item = (K, u32)>) -> Self {
        let mut acc: BTreeMap<K, u32> = BTreeMap::new();
        for (k, v) in entries {
            let e = acc.entry(k).or_insert(0);
            *e = field.add(*e, v % field.modulus());
        }
        SparseVec {
            entries: acc.into_iter().filter(|&(_, v)| v != 0).collect(),
        }
    }

    pub fn entries(&self) -> &[(K, u32)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<&K> {
        self.entries.first().map(|e| &e.0)
    }

    pub fn scale(&self, field: PrimeField, c: u32) -> Self {
        if c == 0 {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), field.mul(*v, c))).collect(),
        }
    }

    /// Re-keys the vector; the map must be injective on the support.
    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> SparseVec<L> {
        let mut entries: Vec<(L, u32)> = self.entries.iter().map(|(k, v)| (f(k), *v)).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        debug_assert!(entries.windows(2).all(|w| w[0].0 != w[1].0));
        SparseVec { entries }
    }

    pub fn filter_keys(&self, keep: impl Fn(&K) -> bool) -> Self {
        SparseVec {
            entries: self.entries.iter().filter(|(k, _)| keep(k)).cloned().collect(),
        }
    }
}

impl<K: Ord + Clone> Default for SparseVec<K> {
    fn default() -> Self {
        Self::new()
    }
}

/// Rows in echelon form, indexed by pivot; every pivot coefficient is one.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    field: PrimeField,
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(field: PrimeField) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let k = self.field;
        let mut acc: BTreeMap<K, u32> = v.entries.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((key, val)) = acc.pop_first() {
            match self.rows.get(&key) {
                Some(row) => {
                    let c = k.neg(val);
                    for (rk, rv) in &row.entries[1..] {
                        let e = acc.entry(rk.clone()).or_insert(0);
                        *e = k.add(*e, k.mul(*rv, c));
                        if *e == 0 {
                            acc.remove(rk);
                        }
                    }
                }
                None => out.push((key, val)),
            }
        }
        SparseVec { entries: out }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the row space. Returns the new pivot when `v` was
    /// independent of the existing rows.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<K> {
        let r = self.reduce(v);
        let (pivot, lead) = r.entries.first().cloned()?;
        let row = r.scale(self.field, self.field.inv(lead).unwrap());
        self.rows.insert(pivot.clone(), row);
        Some(pivot)
    }

    /// Rows reduced against each other (reduced row echelon form), in pivot
    /// order.
    pub fn reduced_rows(&self) -> Vec<SparseVec<K>> {
        let mut done: Echelon<K> = Echelon::new(self.field);
        let mut out: Vec<SparseVec<K>> = Vec::new();
        // Back substitution from the last pivot.
        for (pivot, row) in self.rows.iter().rev() {
            let tail = SparseVec {
                entries: row.entries[1..].to_vec(),
            };
            let mut reduced = done.reduce(&tail);
            reduced.entries.insert(0, (pivot.clone(), 1));
            done.rows.insert(pivot.clone(), reduced.clone());
            out.push(reduced);
        }
        out.reverse();
        out
    }
}
