//! Incremental row echelon forms over GF(p) with sparse, keyed columns.

use crate::field::PrimeField;
use std::collections::HashMap;
use std::hash::Hash;

/// A growing set of linearly independent sparse rows.
///
/// Columns are arbitrary ordered keys; rows are kept sorted by decreasing
/// key and every stored row has leading coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    field: PrimeField,
    pivots: HashMap<K, usize>,
    rows: Vec<Vec<(K, u32)>>,
}

impl<K: Copy + Ord + Hash> Echelon<K> {
    pub fn new(field: PrimeField) -> Self {
        Self {
            field,
            pivots: HashMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(K, u32)>] {
        &self.rows
    }

    fn normalize(&self, mut row: Vec<(K, u32)>) -> Vec<(K, u32)> {
        row.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(K, u32)> = Vec::with_capacity(row.len());
        for (k, c) in row {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 = self.field.add(last.1, c),
                _ => out.push((k, c % self.field.characteristic())),
            }
        }
        out.retain(|e| e.1 != 0);
        out
    }

    /// Remainder of `row` after eliminating every pivot column.
    pub fn reduce(&self, row: Vec<(K, u32)>) -> Vec<(K, u32)> {
        let f = self.field;
        let mut cur = self.normalize(row);
        let mut start = 0;
        loop {
            let hit = cur[start..]
                .iter()
                .position(|(k, _)| self.pivots.contains_key(k))
                .map(|i| i + start);
            let Some(i) = hit else { return cur };
            let (k, c) = cur[i];
            let prow = &self.rows[self.pivots[&k]];
            let m = f.neg(c);
            let mut merged = Vec::with_capacity(cur.len() + prow.len());
            merged.extend_from_slice(&cur[..i]);
            let (mut a, mut b) = (i, 0);
            while a < cur.len() || b < prow.len() {
                if b == prow.len() || (a < cur.len() && cur[a].0 > prow[b].0) {
                    merged.push(cur[a]);
                    a += 1;
                } else if a == cur.len() || prow[b].0 > cur[a].0 {
                    merged.push((prow[b].0, f.mul(m, prow[b].1)));
                    b += 1;
                } else {
                    let v = f.add(cur[a].1, f.mul(m, prow[b].1));
                    if v != 0 {
                        merged.push((cur[a].0, v));
                    }
                    a += 1;
                    b += 1;
                }
            }
            cur = merged;
            start = i;
        }
    }

    /// Adds `row` if it is independent of the stored rows; reports whether
    /// it was.
    pub fn insert(&mut self, row: Vec<(K, u32)>) -> bool {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        let inv = self.field.inv(r[0].1);
        for e in r.iter_mut() {
            e.1 = self.field.mul(e.1, inv);
        }
        self.pivots.insert(r[0].0, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn is_in_span(&self, row: Vec<(K, u32)>) -> bool {
        self.reduce(row).is_empty()
    }
}
