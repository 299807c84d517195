//! Sparse vectors and an incremental echelon basis whose pivots sit at the
//! largest coordinate of each row.
//!
//! Used where the ambient space is large but vectors are short (word
//! spaces of free constructions). Ordering coordinates so that "heavier"
//! basis elements get larger indices makes `span ∩ (first n coordinates)`
//! readable from the pivots.

use std::collections::{BTreeMap, HashMap};

use crate::kernel::scalar::{Field, Scalar};

pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn axpy(target: &mut SparseVec, c: &Scalar, x: &SparseVec) {
    for (k, v) in x {
        add_entry(target, *k, &(c * v));
    }
}

pub fn add_entry(target: &mut SparseVec, k: usize, v: &Scalar) {
    if v.is_zero() {
        return;
    }
    match target.get_mut(&k) {
        Some(e) => {
            let s = &*e + v;
            if s.is_zero() {
                target.remove(&k);
            } else {
                *e = s;
            }
        }
        None => {
            target.insert(k, v.clone());
        }
    }
}

pub fn scale(x: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(k, v)| (*k, v * c)).collect()
}

#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: Field,
    rows: HashMap<usize, Vec<(usize, Scalar)>>,
}

impl SparseEchelon {
    pub fn new(field: Field) -> Self {
        SparseEchelon {
            field,
            rows: HashMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: usize) -> bool {
        self.rows.contains_key(&k)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// The stored row with pivot `k` (pivot coefficient 1, other entries
    /// at smaller coordinates).
    pub fn row(&self, k: usize) -> Option<SparseVec> {
        self.rows
            .get(&k)
            .map(|r| r.iter().cloned().chain([(k, self.field.one())]).collect())
    }

    /// Normal form of `v` modulo the span: supported on non-pivot
    /// coordinates only.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work = v.clone();
        let mut out = SparseVec::new();
        while let Some((k, c)) = work.pop_last() {
            match self.rows.get(&k) {
                Some(row) => {
                    let neg = -&c;
                    for (j, a) in row {
                        add_entry(&mut work, *j, &(&neg * a));
                    }
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        out
    }

    /// Adds `v` to the span; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&k, lead)) = r.last_key_value() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading coefficient");
        let row: Vec<(usize, Scalar)> = r
            .iter()
            .filter(|(j, _)| **j != k)
            .map(|(j, a)| (*j, a * &inv))
            .collect();
        self.rows.insert(k, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(f: Field, e: &[(usize, i64)]) -> SparseVec {
        e.iter().map(|&(k, v)| (k, f.from_i64(v))).filter(|(_, v)| !v.is_zero()).collect()
    }

    #[test]
    fn pivots_are_leading_coordinates() {
        let f = Field::Rational;
        let mut e = SparseEchelon::new(f);
        assert!(e.insert(&sv(f, &[(0, 1), (3, 2)])));
        assert!(e.insert(&sv(f, &[(1, 1), (3, 1)])));
        assert!(!e.insert(&sv(f, &[(0, 1), (1, -2)])));
        assert_eq!(e.rank(), 2);
        let mut piv: Vec<usize> = e.pivots().collect();
        piv.sort();
        assert_eq!(piv, vec![1, 3]);
        assert!(e.contains(&sv(f, &[(0, 2), (1, -4)])));
        let r = e.reduce(&sv(f, &[(3, 1)]));
        assert_eq!(r.keys().copied().collect::<Vec<_>>(), vec![0]);
    }
}
