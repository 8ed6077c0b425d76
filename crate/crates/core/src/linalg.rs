//! Gaussian elimination over a finite field.

use crate::field::FiniteField;

/// Incremental row echelon form for sparse rows. Each stored row is
/// normalized so that its lowest nonzero column (the pivot) holds 1.
pub struct SparseEchelon {
    field: FiniteField,
    ncols: usize,
    /// `pivots[c]` is the stored row whose pivot is column `c`.
    pivots: Vec<Option<Vec<(usize, u32)>>>,
    rank: usize,
    scratch: Vec<u32>,
}

impl SparseEchelon {
    pub fn new(field: &FiniteField, ncols: usize) -> SparseEchelon {
        SparseEchelon {
            field: field.clone(),
            ncols,
            pivots: vec![None; ncols],
            rank: 0,
            scratch: vec![0; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against the stored rows and keeps it if independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, row: &[(usize, u32)]) -> bool {
        if self.rank == self.ncols {
            return false;
        }
        let f = &self.field;
        let mut lo = usize::MAX;
        let mut hi = 0;
        for &(c, v) in row {
            if v != 0 {
                self.scratch[c] = f.add(self.scratch[c], v);
                lo = lo.min(c);
                hi = hi.max(c);
            }
        }
        if lo == usize::MAX {
            return false;
        }
        let mut col = lo;
        let mut found = None;
        while col <= hi {
            let v = self.scratch[col];
            if v != 0 {
                match &self.pivots[col] {
                    Some(prow) => {
                        let factor = f.neg(v);
                        for &(c, pv) in prow {
                            self.scratch[c] = f.add(self.scratch[c], f.mul(factor, pv));
                            hi = hi.max(c);
                        }
                    }
                    None => {
                        found = Some(col);
                        break;
                    }
                }
            }
            col += 1;
        }
        let Some(pivot) = found else {
            for c in lo..=hi {
                self.scratch[c] = 0;
            }
            return false;
        };
        // Remaining columns past the pivot are kept unreduced.
        let inv = f.inv(self.scratch[pivot]).unwrap();
        let mut stored = Vec::new();
        for c in pivot..=hi {
            let v = self.scratch[c];
            if v != 0 {
                stored.push((c, f.mul(v, inv)));
            }
        }
        for c in lo..=hi {
            self.scratch[c] = 0;
        }
        self.pivots[pivot] = Some(stored);
        self.rank += 1;
        true
    }
}

/// Rank of a dense matrix.
pub fn dense_rank(field: &FiniteField, rows: &[Vec<u32>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut ech = SparseEchelon::new(field, ncols);
    for r in rows {
        let sparse: Vec<(usize, u32)> = r
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, v)| *v != 0)
            .collect();
        ech.insert(&sparse);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_extension, make_prime_field};

    #[test]
    fn rank_over_f3() {
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(
            dense_rank(&f3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]),
            2
        );
        assert_eq!(dense_rank(&f3, &[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(dense_rank(&f3, &[vec![0, 0]]), 0);
    }

    #[test]
    fn repeated_inserts_do_not_grow() {
        let f4 = make_extension(&make_prime_field(2).unwrap(), 2).unwrap();
        let mut e = SparseEchelon::new(&f4, 4);
        assert!(e.insert(&[(1, 2), (3, 1)]));
        assert!(!e.insert(&[(1, 3), (3, f4.div(3, 2).unwrap())]));
        assert!(e.insert(&[(0, 1), (1, 1)]));
        assert!(!e.insert(&[]));
        assert_eq!(e.rank(), 2);
    }
}
