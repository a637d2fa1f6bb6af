#![allow(dead_code)]

use rootspin::{positive_roots, Family, FamilyRank, RootSystem};

pub fn id(family: Family, rank: usize) -> FamilyRank {
    FamilyRank::new(family, rank).unwrap()
}

pub fn system(label: &str) -> RootSystem {
    positive_roots(label.parse().unwrap())
}

/// Counts zero signed sums by recomputing every sum from scratch.
pub fn naive_count(roots: &[Vec<i64>]) -> u128 {
    let r = roots.len();
    let m = roots.first().map_or(0, Vec::len);
    let mut hits = 0;
    for mask in 0u64..1 << r {
        let mut sum = vec![0i64; m];
        for (i, root) in roots.iter().enumerate() {
            let s = if mask >> i & 1 == 1 { -1 } else { 1 };
            for (acc, &c) in sum.iter_mut().zip(root) {
                *acc += s * c;
            }
        }
        if sum.iter().all(|&x| x == 0) {
            hits += 1;
        }
    }
    hits
}

pub fn subsystem(sys: &RootSystem, keep: &[usize]) -> RootSystem {
    let roots = keep.iter().map(|&i| sys.root(i).to_vec()).collect();
    RootSystem::from_roots(sys.id(), roots, sys.denominator()).unwrap()
}

pub fn with_roots(sys: &RootSystem, roots: Vec<Vec<i64>>) -> RootSystem {
    RootSystem::from_roots(sys.id(), roots, sys.denominator()).unwrap()
}

/// Upper unitriangular matrix with ones on the first two superdiagonals.
pub fn unimodular(m: usize) -> Vec<Vec<i64>> {
    let mut u = vec![vec![0i64; m]; m];
    for i in 0..m {
        u[i][i] = 1;
        if i + 1 < m {
            u[i][i + 1] = 1;
        }
        if i + 2 < m {
            u[i][i + 2] = -2;
        }
    }
    u
}

pub fn transformed(sys: &RootSystem, u: &[Vec<i64>]) -> RootSystem {
    let roots = sys
        .roots()
        .iter()
        .map(|v| {
            u.iter()
                .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    with_roots(sys, roots)
}

pub fn negated(sys: &RootSystem, mask: u64) -> RootSystem {
    let roots = sys
        .roots()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if mask >> i & 1 == 1 {
                v.iter().map(|c| -c).collect()
            } else {
                v.clone()
            }
        })
        .collect();
    with_roots(sys, roots)
}

pub fn permuted(sys: &RootSystem, order: &[usize]) -> RootSystem {
    with_roots(sys, order.iter().map(|&i| sys.root(i).to_vec()).collect())
}

/// Every admissible system with at most `max_r` roots and rank at most 12.
pub fn small_ids(max_r: usize) -> Vec<FamilyRank> {
    let mut out = Vec::new();
    for family in [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ] {
        for rank in 1..=12 {
            if let Ok(id) = FamilyRank::new(family, rank) {
                if rootspin::root_count(id) <= max_r {
                    out.push(id);
                }
            }
        }
    }
    out
}
