use std::collections::BTreeMap;

use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::scalar::Scalar;

pub(crate) type SparseRow = BTreeMap<u32, Scalar>;

/// Row space kept in echelon form with each row's largest column as pivot,
/// so reduction rewrites longer paths in terms of shorter ones.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: FxHashMap<u32, SparseRow>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.rows.contains_key(&col)
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((&top, _)) = row.iter().next_back() else { return false };
            match self.rows.get(&top) {
                Some(pivot) => {
                    let c = row[&top].clone();
                    subtract(&mut row, pivot, &c);
                }
                None => {
                    let lead = row[&top].clone();
                    for v in row.values_mut() {
                        *v /= &lead;
                    }
                    self.rows.insert(top, row);
                    return true;
                }
            }
        }
    }

    /// Unique representative of `row` modulo the span, supported on
    /// non-pivot columns.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut out = SparseRow::new();
        while let Some((top, c)) = row.pop_last() {
            match self.rows.get(&top) {
                Some(pivot) => {
                    for (&k, v) in pivot.range(..top) {
                        let e = row.entry(k).or_insert_with(Scalar::zero);
                        *e -= &c * v;
                        if e.is_zero() {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    out.insert(top, c);
                }
            }
        }
        out
    }
}

/// `row -= c · pivot`, where `pivot` has leading coefficient one.
fn subtract(row: &mut SparseRow, pivot: &SparseRow, c: &Scalar) {
    for (&k, v) in pivot {
        let e = row.entry(k).or_insert_with(Scalar::zero);
        *e -= c * v;
        if e.is_zero() {
            row.remove(&k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn row(entries: &[(u32, i64)]) -> SparseRow {
        entries.iter().map(|&(k, v)| (k, int(v))).collect()
    }

    #[test]
    fn reduction_expresses_large_columns_by_small_ones() {
        let mut e = Echelon::default();
        assert!(e.insert(row(&[(5, 2), (1, 4)])));
        assert!(e.insert(row(&[(5, 1), (3, 1)])));
        assert!(!e.insert(row(&[(3, 2), (1, -4)])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.reduce(row(&[(5, 1)])), row(&[(1, -2)]));
        assert_eq!(e.reduce(row(&[(3, 1)])), row(&[(1, 2)]));
    }
}
