//! Explicit zero signed sums for every family that admits one.
//!
//! A certificate is a list of blocks. Each block assigns signs to a disjoint
//! set of roots and sums to zero on its own, and the blocks together cover
//! every root. Flipping the signs of any subset of blocks therefore gives
//! another solution, so `k` blocks prove at least `2^k` solutions.
//!
//! Root indices are 0-based positions in the canonical order of
//! [`positive_roots`]. Every construction is resolved by coordinates, not by
//! hand-computed indices, and must pass [`CertificateFamily::verify`].

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{positive_roots, Family, FamilyRank, RootSystem};
use crate::sigsum::SignVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockEntry {
    pub root_index: usize,
    pub sign: i8,
}

/// Partial sign assignment summing to zero on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub label: String,
    pub entries: Vec<BlockEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFamily {
    system_id: FamilyRank,
    root_count: usize,
    blocks: Vec<Block>,
}

/// Why a certificate failed to verify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    SystemMismatch {
        expected: FamilyRank,
        found: FamilyRank,
    },
    RootCount {
        expected: usize,
        found: usize,
    },
    BadSign {
        block: String,
        sign: i8,
    },
    OutOfRange {
        block: String,
        index: usize,
    },
    Duplicate {
        index: usize,
    },
    Uncovered {
        index: usize,
    },
    NonZero {
        block: String,
        sum: Vec<i64>,
    },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::SystemMismatch { expected, found } => {
                write!(f, "certificate for {found} checked against {expected}")
            }
            VerifyError::RootCount { expected, found } => {
                write!(f, "certificate covers {found} roots, system has {expected}")
            }
            VerifyError::BadSign { block, sign } => write!(f, "block {block}: sign {sign}"),
            VerifyError::OutOfRange { block, index } => {
                write!(f, "block {block}: root index {index} out of range")
            }
            VerifyError::Duplicate { index } => write!(f, "root {index} used twice"),
            VerifyError::Uncovered { index } => write!(f, "root {index} not covered"),
            VerifyError::NonZero { block, sum } => {
                write!(f, "block {block} sums to {sum:?}")
            }
        }
    }
}

impl CertificateFamily {
    pub fn system_id(&self) -> FamilyRank {
        self.system_id
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `2^(number of blocks)`.
    pub fn lower_bound(&self) -> u128 {
        1u128 << self.blocks.len().min(127)
    }

    /// The solution with every block taken with its stored signs.
    pub fn witness(&self) -> SignVector {
        self.induced(0)
    }

    /// The solution obtained by negating block `b` whenever bit `b` of
    /// `flips` is set.
    pub fn induced(&self, flips: u64) -> SignVector {
        let mut signs = vec![1i8; self.root_count];
        for (b, block) in self.blocks.iter().enumerate() {
            let flip = if flips >> b & 1 == 1 { -1 } else { 1 };
            for e in &block.entries {
                if let Some(slot) = signs.get_mut(e.root_index) {
                    *slot = e.sign * flip;
                }
            }
        }
        SignVector::new(signs).expect("block signs are ±1")
    }

    /// Checks the partition structure, then sums each block by direct
    /// coordinate addition.
    pub fn verify(&self, system: &RootSystem) -> Result<(), VerifyError> {
        if self.system_id != system.id() {
            return Err(VerifyError::SystemMismatch {
                expected: system.id(),
                found: self.system_id,
            });
        }
        let r = system.len();
        if self.root_count != r {
            return Err(VerifyError::RootCount {
                expected: r,
                found: self.root_count,
            });
        }
        let mut seen = vec![false; r];
        for block in &self.blocks {
            let mut sum = vec![0i64; system.ambient_dim()];
            for e in &block.entries {
                if e.sign != 1 && e.sign != -1 {
                    return Err(VerifyError::BadSign {
                        block: block.label.clone(),
                        sign: e.sign,
                    });
                }
                let Some(used) = seen.get_mut(e.root_index) else {
                    return Err(VerifyError::OutOfRange {
                        block: block.label.clone(),
                        index: e.root_index,
                    });
                };
                if *used {
                    return Err(VerifyError::Duplicate {
                        index: e.root_index,
                    });
                }
                *used = true;
                for (s, &c) in sum.iter_mut().zip(system.root(e.root_index)) {
                    *s += i64::from(e.sign) * c;
                }
            }
            if sum.iter().any(|&x| x != 0) {
                return Err(VerifyError::NonZero {
                    block: block.label.clone(),
                    sum,
                });
            }
        }
        if let Some(index) = seen.iter().position(|&u| !u) {
            return Err(VerifyError::Uncovered { index });
        }
        Ok(())
    }
}

/// `true` iff `cert` verifies against `system`.
pub fn verify(system: &RootSystem, cert: &CertificateFamily) -> bool {
    cert.verify(system).is_ok()
}

fn alt(j: usize) -> i8 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Resolves formula terms against the canonical root order. Indices passed
/// to the helpers are 1-based subscripts of `λ`.
struct Builder<'a> {
    system: &'a RootSystem,
    entries: Vec<BlockEntry>,
}

impl<'a> Builder<'a> {
    fn new(system: &'a RootSystem) -> Self {
        Builder {
            system,
            entries: Vec::new(),
        }
    }

    /// Adds `sign * (Σ coeff λ_i)` where the root is given unscaled.
    fn term(&mut self, sign: i8, coeffs: &[(usize, i64)]) -> Result<&mut Self> {
        let m = self.system.ambient_dim();
        let d = self.system.denominator();
        let mut v = vec![0i64; m];
        for &(i, c) in coeffs {
            v[i - 1] += c * d;
        }
        self.raw(sign, &v)
    }

    /// Adds `sign * root` for a root given in scaled coordinates.
    fn raw(&mut self, sign: i8, scaled: &[i64]) -> Result<&mut Self> {
        let index = self.system.index_of(scaled).ok_or_else(|| {
            Error::Invariant(format!("{scaled:?} is not a root of {}", self.system.id()))
        })?;
        self.entries.push(BlockEntry {
            root_index: index,
            sign,
        });
        Ok(self)
    }

    fn diff(&mut self, sign: i8, i: usize, j: usize) -> Result<&mut Self> {
        self.term(sign, &[(i, 1), (j, -1)])
    }

    fn add(&mut self, sign: i8, i: usize, j: usize) -> Result<&mut Self> {
        self.term(sign, &[(i, 1), (j, 1)])
    }

    fn finish(&mut self, label: impl Into<String>) -> Block {
        Block {
            label: label.into(),
            entries: std::mem::take(&mut self.entries),
        }
    }
}

/// `λ_i + μ` in the `A_n` presentation, `μ = Σ λ_j`.
fn a_shifted(n: usize, i: usize) -> Vec<(usize, i64)> {
    (1..=n).map(|j| (j, if j == i { 2 } else { 1 })).collect()
}

fn a_even(sys: &RootSystem) -> Result<Vec<Block>> {
    let n = sys.id().rank();
    let k = n / 2;
    let mut b = Builder::new(sys);
    let mut blocks = Vec::new();
    for l in 1..k {
        for j in 2 * l + 1..=2 * k {
            b.diff(alt(j), 2 * l, j)?;
        }
        for j in 2 * l + 2..=2 * k {
            b.diff(-alt(j), 2 * l + 1, j)?;
        }
        blocks.push(b.finish(format!("S_{l}")));
    }
    b.term(1, &a_shifted(n, 1))?;
    for j in 2..=2 * k {
        b.diff(-alt(j), 1, j)?;
        b.term(-alt(j), &a_shifted(n, j))?;
    }
    blocks.push(b.finish("T"));
    Ok(blocks)
}

fn c_blocks(sys: &RootSystem) -> Result<Vec<Block>> {
    let n = sys.id().rank();
    let (k, eps) = (n / 4, n % 4);
    let mut b = Builder::new(sys);
    let mut blocks = Vec::new();
    for l in 0..k {
        let base = 4 * l;
        let (p, q, s, t) = (base + 1, base + 2, base + 3, base + 4);
        b.diff(1, p, q)?.add(1, p, q)?;
        for j in base + 3..=n {
            b.add(1, p, j)?.diff(-1, p, j)?;
        }
        b.diff(1, q, s)?.add(1, q, s)?;
        for j in base + 4..=n {
            b.add(-1, q, j)?.diff(1, q, j)?;
        }
        for j in base + 4..=n {
            b.add(1, s, j)?.diff(-1, s, j)?;
        }
        for j in base + 5..=n {
            b.add(-1, t, j)?.diff(1, t, j)?;
        }
        for i in [p, q, s, t] {
            b.term(-1, &[(i, 2)])?;
        }
        blocks.push(b.finish(format!("S'_{l}")));
    }
    if eps == 3 {
        let (p, q, s) = (4 * k + 1, 4 * k + 2, 4 * k + 3);
        b.diff(1, p, q)?
            .diff(-1, p, s)?
            .diff(1, q, s)?
            .add(1, p, q)?
            .add(1, p, s)?
            .add(1, q, s)?;
        for i in [p, q, s] {
            b.term(-1, &[(i, 2)])?;
        }
        blocks.push(b.finish("T'"));
    }
    Ok(blocks)
}

fn d_blocks(sys: &RootSystem) -> Result<Vec<Block>> {
    let n = sys.id().rank();
    let k = n / 4;
    let mut b = Builder::new(sys);
    let mut blocks = Vec::new();
    for l in 0..k {
        let base = 4 * l;
        let (p, q, s, t) = (base + 1, base + 2, base + 3, base + 4);
        // (-1)^j with j the global subscript
        for j in base + 2..=n {
            b.diff(alt(j), p, j)?.add(-alt(j), p, j)?;
        }
        b.diff(1, q, s)?.add(1, q, s)?;
        for j in base + 4..=n {
            b.diff(-alt(j), q, j)?.add(alt(j), q, j)?;
        }
        b.diff(-1, s, t)?.add(-1, s, t)?;
        for j in base + 5..=n {
            b.diff(alt(j), s, j)?.add(-alt(j), s, j)?;
        }
        for j in base + 5..=n {
            b.diff(-alt(j), t, j)?.add(alt(j), t, j)?;
        }
        blocks.push(b.finish(format!("S''_{l}")));
    }
    Ok(blocks)
}

fn e6_blocks(sys: &RootSystem) -> Result<Vec<Block>> {
    const DIFFS: [(usize, usize, i8); 15] = [
        (1, 2, -1),
        (1, 3, 1),
        (1, 4, 1),
        (1, 5, 1),
        (1, 6, -1),
        (2, 3, 1),
        (2, 4, 1),
        (2, 5, -1),
        (2, 6, 1),
        (3, 4, -1),
        (3, 5, 1),
        (3, 6, -1),
        (4, 5, -1),
        (4, 6, -1),
        (5, 6, 1),
    ];
    const TRIPLES: [(usize, usize, usize, i8); 20] = [
        (1, 2, 3, -1),
        (1, 2, 4, -1),
        (1, 2, 5, -1),
        (1, 2, 6, -1),
        (1, 3, 4, -1),
        (1, 3, 5, 1),
        (1, 3, 6, 1),
        (1, 4, 5, 1),
        (1, 4, 6, 1),
        (1, 5, 6, -1),
        (2, 3, 4, 1),
        (2, 3, 5, -1),
        (2, 3, 6, 1),
        (2, 4, 5, 1),
        (2, 4, 6, -1),
        (2, 5, 6, -1),
        (3, 4, 5, 1),
        (3, 4, 6, 1),
        (3, 5, 6, -1),
        (4, 5, 6, -1),
    ];
    let mut b = Builder::new(sys);
    b.term(1, &[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1)])?;
    for (i, j, s) in DIFFS {
        b.diff(s, i, j)?;
    }
    for (i, j, k, s) in TRIPLES {
        b.term(s, &[(i, 1), (j, 1), (k, 1)])?;
    }
    Ok(vec![b.finish("E6")])
}

fn e8_blocks(sys: &RootSystem) -> Result<Vec<Block>> {
    let nu = |extra: &[(usize, i64)]| -> Vec<i64> {
        let mut v = vec![1i64; 8];
        for &(i, c) in extra {
            v[i - 1] += c;
        }
        v
    };
    let mut b = Builder::new(sys);
    let mut blocks = Vec::new();

    // Σ (λi+λj+λk) = Σ (ν-λi-λj) = 21ν
    for i in 1..=8 {
        for j in i + 1..=8 {
            for k in j + 1..=8 {
                b.term(1, &[(i, 1), (j, 1), (k, 1)])?;
            }
        }
    }
    for i in 1..=8 {
        for j in i + 1..=8 {
            b.raw(-1, &nu(&[(i, -1), (j, -1)]))?;
        }
    }
    blocks.push(b.finish("triples"));

    // Σ_{j=2..8} (-1)^j (λ1-λj) + Σ_{j=1..8} (-1)^j (λj+ν) = 0
    for j in 2..=8 {
        b.diff(alt(j), 1, j)?;
    }
    for j in 1..=8 {
        b.raw(alt(j), &nu(&[(j, 1)]))?;
    }
    blocks.push(b.finish("alternating"));

    // {λi-λj : 2 <= i < j <= 8} carries the A6 certificate: A6 index i maps
    // to subscript i+1 and λi+μ maps to λ_{i+1}-λ8.
    let a6 = positive_roots(FamilyRank::new(Family::A, 6)?);
    for block in a_even(&a6)? {
        for e in &block.entries {
            let root = a6.root(e.root_index);
            if let Some(neg) = root.iter().position(|&c| c == -1) {
                let pos = root.iter().position(|&c| c == 1).expect("difference root");
                b.diff(e.sign, pos + 2, neg + 2)?;
            } else {
                let i = root.iter().position(|&c| c == 2).expect("shifted root");
                b.diff(e.sign, i + 2, 8)?;
            }
        }
        blocks.push(b.finish(format!("A6 {}", block.label)));
    }
    Ok(blocks)
}

fn f4_blocks(sys: &RootSystem) -> Result<Vec<Block>> {
    let mut b = Builder::new(sys);
    for (i, s) in [(1, 1), (2, -1), (3, -1), (4, -1)] {
        b.term(s, &[(i, 1)])?;
    }
    for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
        b.diff(-1, i, j)?;
    }
    for (i, j, s) in [
        (1, 2, -1),
        (1, 3, 1),
        (1, 4, -1),
        (2, 3, 1),
        (2, 4, 1),
        (3, 4, -1),
    ] {
        b.add(s, i, j)?;
    }
    // ½(λ1 ± λ2 ± λ3 ± λ4), already in scaled coordinates
    let halves: [([i64; 4], i8); 8] = [
        ([1, 1, 1, 1], 1),
        ([1, -1, 1, 1], -1),
        ([1, 1, -1, 1], 1),
        ([1, 1, 1, -1], 1),
        ([1, -1, -1, 1], 1),
        ([1, -1, 1, -1], 1),
        ([1, 1, -1, -1], 1),
        ([1, -1, -1, -1], 1),
    ];
    for (v, s) in halves {
        b.raw(s, &v)?;
    }
    Ok(vec![b.finish("F4")])
}

fn g2_blocks(sys: &RootSystem) -> Result<Vec<Block>> {
    let mut b = Builder::new(sys);
    b.raw(1, &[1, 0])?.raw(1, &[0, 1])?.raw(1, &[-1, -1])?;
    let first = b.finish("short");
    b.raw(-1, &[1, -1])?.raw(-1, &[1, 2])?.raw(1, &[2, 1])?;
    Ok(vec![first, b.finish("long")])
}

/// Whether the family admits a zero signed sum at all.
pub fn admits_solution(id: FamilyRank) -> bool {
    let n = id.rank();
    match id.family() {
        Family::A => n.is_multiple_of(2),
        Family::B => false,
        Family::C => matches!(n % 4, 0 | 3),
        Family::D => matches!(n % 4, 0 | 1),
        Family::E => n != 7,
        Family::F | Family::G => true,
    }
}

/// Certificate for `id`, or `None` exactly when the family has no solution.
pub fn certificate(id: FamilyRank) -> Result<Option<CertificateFamily>> {
    if !admits_solution(id) {
        return Ok(None);
    }
    let sys = positive_roots(id);
    let blocks = match id.family() {
        Family::A => a_even(&sys)?,
        Family::B => unreachable!("B_n has no solutions"),
        Family::C => c_blocks(&sys)?,
        Family::D => d_blocks(&sys)?,
        Family::E if id.rank() == 6 => e6_blocks(&sys)?,
        Family::E => e8_blocks(&sys)?,
        Family::F => f4_blocks(&sys)?,
        Family::G => g2_blocks(&sys)?,
    };
    Ok(Some(CertificateFamily {
        system_id: id,
        root_count: sys.len(),
        blocks,
    }))
}

/// Known lower bound on the number of solutions: zero for families without
/// solutions, the exact value for `E6`, `F4` and `G2`, `369600` for `E8`, and
/// the block bound otherwise.
pub fn lower_bound(id: FamilyRank) -> Result<u128> {
    if !admits_solution(id) {
        return Ok(0);
    }
    let n = id.rank();
    let exponent = match id.family() {
        Family::A => n / 2,
        Family::C | Family::D => (n + 1) / 4,
        Family::E if n == 6 => return Ok(13_697_920),
        Family::E => return Ok(369_600),
        Family::F => return Ok(34_432),
        Family::G => return Ok(4),
        Family::B => unreachable!(),
    };
    if exponent >= 128 {
        return Err(Error::CountOverflow);
    }
    Ok(1u128 << exponent)
}
