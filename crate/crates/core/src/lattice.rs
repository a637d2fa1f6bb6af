//! Integer lattices in column Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Basis of an integer lattice in column Hermite normal form.
///
/// Columns are stored left to right. Column `k` has its pivot in row
/// `pivot_rows[k]`, is zero above it, and the pivot rows strictly increase.
/// Pivots are positive and every entry to the left of a pivot lies in
/// `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    columns: Vec<Vec<BigInt>>,
    pivot_rows: Vec<usize>,
    ambient_dim: usize,
}

impl LatticeBasis {
    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Product of the pivots, i.e. the index of the lattice in `Z^m` when it
    /// has full rank.
    pub fn pivot_product(&self) -> BigInt {
        self.columns
            .iter()
            .zip(&self.pivot_rows)
            .map(|(c, &r)| c[r].clone())
            .product()
    }

    /// Integer coordinates of `v` in this basis, or `None` if `v` is not a
    /// lattice point.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        let mut next_row = 0;
        for (col, &row) in self.columns.iter().zip(&self.pivot_rows) {
            if residual[next_row..row].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, rem) = residual[row].div_rem(&col[row]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, c) in residual.iter_mut().zip(col) {
                    *x -= &q * c;
                }
            }
            coords.push(q);
            next_row = row + 1;
        }
        if residual.iter().all(Zero::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&big)
    }
}

fn axpy(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Column Hermite normal form of the integer span of `vectors`.
///
/// All vectors must share one length `m`; an empty input or the zero lattice
/// yields an empty basis.
pub fn hnf(vectors: &[Vec<i64>]) -> LatticeBasis {
    let ambient_dim = vectors.first().map_or(0, Vec::len);
    let mut cols: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| {
            assert_eq!(v.len(), ambient_dim, "vectors must share a length");
            v.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut pc = 0;
    for row in 0..ambient_dim {
        if pc == cols.len() {
            break;
        }
        // Euclid on the row entries of the not yet pivoted columns.
        loop {
            let smallest = (pc..cols.len())
                .filter(|&j| !cols[j][row].is_zero())
                .min_by(|&a, &b| cols[a][row].abs().cmp(&cols[b][row].abs()));
            let Some(s) = smallest else { break };
            cols.swap(pc, s);
            let mut done = true;
            for j in pc + 1..cols.len() {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = cols[j][row].div_floor(&cols[pc][row]);
                let (head, tail) = cols.split_at_mut(j);
                axpy(&mut tail[0], &q, &head[pc]);
                if !cols[j][row].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pc >= cols.len() || cols[pc][row].is_zero() {
            continue;
        }
        if cols[pc][row].is_negative() {
            for x in cols[pc].iter_mut() {
                *x = -x.clone();
            }
        }
        let (head, tail) = cols.split_at_mut(pc);
        let pivot = &tail[0];
        for col in head.iter_mut() {
            let q = col[row].div_floor(&pivot[row]);
            if !q.is_zero() {
                axpy(col, &q, pivot);
            }
        }
        pivot_rows.push(row);
        pc += 1;
    }
    cols.truncate(pc);
    debug_assert!(cols
        .iter()
        .zip(&pivot_rows)
        .all(|(c, &r)| c[r] >= BigInt::one()));
    LatticeBasis {
        columns: cols,
        pivot_rows,
        ambient_dim,
    }
}
