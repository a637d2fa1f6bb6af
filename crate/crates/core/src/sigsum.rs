//! Zero signed sums of root lists.
//!
//! A sign vector `ε ∈ {±1}^r` is a solution when `Σ ε_i a_i = 0`. This module
//! counts solutions exactly (Gray-code brute force and meet-in-the-middle),
//! decides existence, and provides the parity obstruction `Σ a_i ∈ 2L`
//! where `L` is the lattice spanned by the roots.
//!
//! Sign masks use bit `i` set for `ε_i = -1`.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::certs;
use crate::error::{Error, Result};
use crate::lattice::hnf;
use crate::rootsys::RootSystem;

pub const DEFAULT_BRUTE_LIMIT: usize = 26;
pub const DEFAULT_MITM_LIMIT: usize = 48;
pub const DEFAULT_MEMORY_BUDGET: u64 = 8 << 30;

/// Number of high-order sign bits fixed per parallel task.
const PREFIX_BITS: usize = 8;

/// Halves up to this many roots are walked on the calling thread.
const SEQUENTIAL_MAX: usize = 16;

/// Signs `ε_i ∈ {+1, -1}` indexed by the canonical root order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<SignVector> {
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidInput(format!("sign {bad} is not ±1")));
        }
        Ok(SignVector(signs))
    }

    pub fn all_positive(len: usize) -> SignVector {
        SignVector(vec![1; len])
    }

    /// Signs from a mask where bit `i` set means `ε_i = -1`.
    pub fn from_mask(len: usize, mask: u64) -> SignVector {
        SignVector(
            (0..len)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| -s).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    Exact,
    LowerBound,
    ExistsOnly,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    MeetInMiddle,
    Obstruction,
    Certificate,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BruteForce => "brute_force",
            Method::MeetInMiddle => "meet_in_middle",
            Method::Obstruction => "obstruction",
            Method::Certificate => "certificate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub kind: CountKind,
    pub value: u128,
    pub method: Method,
    pub elapsed: Duration,
    /// Best-effort estimate of the largest table held, in bytes.
    pub memory_peak: u64,
}

impl CountResult {
    fn exact(value: u128, method: Method, started: Instant, memory_peak: u64) -> CountResult {
        debug_assert!(value.is_multiple_of(2), "exact counts are even");
        let kind = if value == 0 {
            CountKind::Zero
        } else {
            CountKind::Exact
        };
        CountResult {
            kind,
            value,
            method,
            elapsed: started.elapsed(),
            memory_peak,
        }
    }
}

/// `Σ ε_i a_i` in scaled integer coordinates.
pub fn signed_sum(system: &RootSystem, eps: &SignVector) -> Result<Vec<i64>> {
    if eps.len() != system.len() {
        return Err(Error::LengthMismatch {
            expected: system.len(),
            found: eps.len(),
        });
    }
    let mut acc = vec![0i64; system.ambient_dim()];
    for (root, &s) in system.roots().iter().zip(eps.signs()) {
        for (a, &c) in acc.iter_mut().zip(root) {
            *a += i64::from(s) * c;
        }
    }
    Ok(acc)
}

/// Flat row-major copy of a slice of roots.
struct Half {
    coords: Vec<i64>,
    dim: usize,
}

impl Half {
    fn new(roots: &[Vec<i64>], dim: usize) -> Half {
        Half {
            coords: roots.iter().flatten().copied().collect(),
            dim,
        }
    }

    fn len(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    fn root(&self, i: usize) -> &[i64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    fn sum_for_mask(&self, mask: u64) -> Vec<i64> {
        let mut acc = vec![0; self.dim];
        for i in 0..self.len() {
            let neg = mask >> i & 1 == 1;
            for (a, &c) in acc.iter_mut().zip(self.root(i)) {
                if neg {
                    *a -= c;
                } else {
                    *a += c;
                }
            }
        }
        acc
    }

    /// Visits every mask that agrees with `start` on bits `>= low_bits`, in
    /// reflected Gray-code order over the low bits, with the running sum.
    fn gray_walk(&self, start: u64, low_bits: usize, mut visit: impl FnMut(u64, &[i64])) {
        let mut mask = start;
        let mut sum = self.sum_for_mask(mask);
        visit(mask, &sum);
        for t in 1u64..(1u64 << low_bits) {
            let bit = t.trailing_zeros() as usize;
            mask ^= 1 << bit;
            let root = self.root(bit);
            if mask >> bit & 1 == 1 {
                for (a, &c) in sum.iter_mut().zip(root) {
                    *a -= 2 * c;
                }
            } else {
                for (a, &c) in sum.iter_mut().zip(root) {
                    *a += 2 * c;
                }
            }
            visit(mask, &sum);
        }
    }

    /// Splits the enumeration into prefix tasks: `(start_mask, low_bits)`.
    fn tasks(&self) -> (Vec<u64>, usize) {
        let n = self.len();
        let prefix = if n <= SEQUENTIAL_MAX {
            0
        } else {
            n.min(PREFIX_BITS)
        };
        let low = n - prefix;
        ((0..1u64 << prefix).map(|p| p << low).collect(), low)
    }
}

/// Maps every task, on the pool only when there is more than one, and sums
/// the results with overflow checks.
fn sum_tasks<F>(starts: &[u64], f: F) -> Result<u128>
where
    F: Fn(u64) -> Result<u128> + Sync,
{
    let add = |a: u128, b: u128| a.checked_add(b).ok_or(Error::CountOverflow);
    if starts.len() == 1 {
        return f(starts[0]);
    }
    starts
        .par_iter()
        .map(|&start| f(start))
        .try_reduce(|| 0u128, add)
}

fn check_limit(system: &RootSystem, limit_r: usize, what: &str) -> Result<()> {
    if system.len() > limit_r {
        return Err(Error::ResourceLimit(format!(
            "{what} needs r <= {limit_r}, system has r = {}",
            system.len()
        )));
    }
    if system.len() > 63 {
        return Err(Error::ResourceLimit(
            "sign masks are limited to 63 roots".into(),
        ));
    }
    Ok(())
}

/// Exact count by full enumeration of all `2^r` sign vectors in Gray-code
/// order, one root update per step.
pub fn count_bruteforce(system: &RootSystem, limit_r: usize) -> Result<CountResult> {
    check_limit(system, limit_r, "brute force")?;
    let started = Instant::now();
    let half = Half::new(system.roots(), system.ambient_dim());
    let (starts, low) = half.tasks();
    let total = sum_tasks(&starts, |start| {
        let mut hits = 0u64;
        half.gray_walk(start, low, |_, sum| {
            if sum.iter().all(|&x| x == 0) {
                hits += 1;
            }
        });
        Ok(hits as u128)
    })?;
    Ok(CountResult::exact(total, Method::BruteForce, started, 0))
}

/// Every solution, in increasing mask order. Intended for small systems.
pub fn collect_witnesses(system: &RootSystem, limit_r: usize) -> Result<Vec<SignVector>> {
    check_limit(system, limit_r, "witness collection")?;
    let half = Half::new(system.roots(), system.ambient_dim());
    let mut masks = Vec::new();
    half.gray_walk(0, half.len(), |mask, sum| {
        if sum.iter().all(|&x| x == 0) {
            masks.push(mask);
        }
    });
    masks.sort_unstable();
    Ok(masks
        .into_iter()
        .map(|m| SignVector::from_mask(system.len(), m))
        .collect())
}

/// Packs bounded integer vectors into `u128` keys.
#[derive(Debug, Clone)]
pub(crate) struct KeyPacker {
    bounds: Vec<i64>,
    shifts: Vec<u32>,
}

impl KeyPacker {
    /// Per coordinate `c`, the bound is `B_c = Σ_i |a_ic|` over `roots`; the
    /// offset value `x + B_c` takes `⌈log2(2 B_c + 1)⌉` bits. Returns `None`
    /// when the total exceeds 128 bits.
    pub(crate) fn for_roots(roots: &[Vec<i64>], dim: usize) -> Option<KeyPacker> {
        let mut bounds = vec![0i64; dim];
        for root in roots {
            for (b, &c) in bounds.iter_mut().zip(root) {
                *b += c.abs();
            }
        }
        let mut shifts = Vec::with_capacity(dim);
        let mut used = 0u32;
        for &b in &bounds {
            shifts.push(used);
            let span = (2 * b + 1) as u64;
            used += 64 - (span - 1).leading_zeros();
            if used > 128 {
                return None;
            }
        }
        Some(KeyPacker { bounds, shifts })
    }

    /// Key of `sign * v`, or `None` if it lies outside the bounds.
    #[inline]
    pub(crate) fn pack(&self, v: &[i64], sign: i64) -> Option<u128> {
        let mut key = 0u128;
        for ((&x, &b), &s) in v.iter().zip(&self.bounds).zip(&self.shifts) {
            let x = sign * x;
            if x < -b || x > b {
                return None;
            }
            key |= ((x + b) as u128) << s;
        }
        Some(key)
    }

    #[cfg(test)]
    pub(crate) fn bits(&self) -> u32 {
        let last = self
            .bounds
            .last()
            .map_or(0, |&b| 64 - (2 * b as u64).leading_zeros());
        self.shifts.last().copied().unwrap_or(0) + last
    }
}

/// Options for the meet-in-the-middle counter.
#[derive(Debug, Clone)]
pub struct MitmOptions {
    pub limit_r: usize,
    pub memory_budget: u64,
    /// Skip key packing and use vector-keyed maps.
    pub force_generic_keys: bool,
}

impl Default for MitmOptions {
    fn default() -> Self {
        MitmOptions {
            limit_r: DEFAULT_MITM_LIMIT,
            memory_budget: DEFAULT_MEMORY_BUDGET,
            force_generic_keys: false,
        }
    }
}

/// Left-half length. Contiguous split at `⌈r/2⌉` or `⌊r/2⌋`, whichever
/// better balances the total coordinate magnitude; ties go to `⌈r/2⌉`.
pub fn split_point(roots: &[Vec<i64>]) -> usize {
    let r = roots.len();
    let weight = |range: &[Vec<i64>]| -> i64 { range.iter().flatten().map(|c| c.abs()).sum() };
    let imbalance = |p: usize| (weight(&roots[..p]) - weight(&roots[p..])).abs();
    let (hi, lo) = (r.div_ceil(2), r / 2);
    if imbalance(lo) < imbalance(hi) {
        lo
    } else {
        hi
    }
}

// Bytes per map entry including hash table overhead, rough.
const PACKED_ENTRY_BYTES: u64 = 48;

fn generic_entry_bytes(dim: usize) -> u64 {
    64 + 8 * dim as u64
}

fn estimate_left_table(left_len: usize, dim: usize, packed: bool) -> u64 {
    let entries = 1u64 << left_len;
    entries.saturating_mul(if packed {
        PACKED_ENTRY_BYTES
    } else {
        generic_entry_bytes(dim)
    })
}

/// Exact count by meet-in-the-middle with default options.
pub fn count_mitm(system: &RootSystem, limit_r: usize) -> Result<CountResult> {
    count_mitm_with(
        system,
        &MitmOptions {
            limit_r,
            ..MitmOptions::default()
        },
    )
}

/// Exact count by meet-in-the-middle: every signed sum of the left half goes
/// into a multiplicity map, then each right-half sum `s` looks up `-s`.
pub fn count_mitm_with(system: &RootSystem, opts: &MitmOptions) -> Result<CountResult> {
    check_limit(system, opts.limit_r, "meet-in-the-middle")?;
    let started = Instant::now();
    let dim = system.ambient_dim();
    let p = split_point(system.roots());
    let left = Half::new(&system.roots()[..p], dim);
    let right = Half::new(&system.roots()[p..], dim);
    let packer = if opts.force_generic_keys {
        None
    } else {
        KeyPacker::for_roots(&system.roots()[..p], dim)
    };
    let estimate = estimate_left_table(p, dim, packer.is_some());
    if estimate > opts.memory_budget {
        return Err(Error::ResourceLimit(format!(
            "left table needs about {estimate} bytes, budget is {}",
            opts.memory_budget
        )));
    }
    let total = match &packer {
        Some(packer) => join_packed(&left, &right, packer)?,
        None => join_generic(&left, &right)?,
    };
    Ok(CountResult::exact(
        total,
        Method::MeetInMiddle,
        started,
        estimate,
    ))
}

fn join_packed(left: &Half, right: &Half, packer: &KeyPacker) -> Result<u128> {
    let (starts, low) = left.tasks();
    let walk = |start: u64| {
        let mut keys = Vec::with_capacity(1 << low);
        left.gray_walk(start, low, |_, sum| {
            keys.push(
                packer
                    .pack(sum, 1)
                    .expect("left sums lie within their bounds"),
            );
        });
        keys
    };
    let chunks: Vec<Vec<u128>> = if starts.len() == 1 {
        vec![walk(starts[0])]
    } else {
        starts.par_iter().map(|&start| walk(start)).collect()
    };
    let mut table: HashMap<u128, u64> = HashMap::with_capacity(1 << left.len());
    for key in chunks.into_iter().flatten() {
        *table.entry(key).or_insert(0) += 1;
    }
    let (starts, low) = right.tasks();
    sum_tasks(&starts, |start| {
        let mut acc = 0u128;
        let mut overflow = false;
        right.gray_walk(start, low, |_, sum| {
            if let Some(key) = packer.pack(sum, -1) {
                if let Some(&m) = table.get(&key) {
                    match acc.checked_add(m as u128) {
                        Some(v) => acc = v,
                        None => overflow = true,
                    }
                }
            }
        });
        if overflow {
            Err(Error::CountOverflow)
        } else {
            Ok(acc)
        }
    })
}

fn join_generic(left: &Half, right: &Half) -> Result<u128> {
    let mut table: HashMap<Vec<i64>, u64> = HashMap::new();
    left.gray_walk(0, left.len(), |_, sum| {
        *table.entry(sum.to_vec()).or_insert(0) += 1;
    });
    let (starts, low) = right.tasks();
    sum_tasks(&starts, |start| {
        let mut acc = 0u128;
        let mut neg = vec![0i64; right.dim];
        right.gray_walk(start, low, |_, sum| {
            for (n, &x) in neg.iter_mut().zip(sum) {
                *n = -x;
            }
            if let Some(&m) = table.get(&neg) {
                acc += m as u128;
            }
        });
        Ok(acc)
    })
}

/// First solution found by a meet-in-the-middle search, if any.
pub fn find_witness_mitm(system: &RootSystem, opts: &MitmOptions) -> Result<Option<SignVector>> {
    check_limit(system, opts.limit_r, "meet-in-the-middle search")?;
    let dim = system.ambient_dim();
    let p = split_point(system.roots());
    let left = Half::new(&system.roots()[..p], dim);
    let right = Half::new(&system.roots()[p..], dim);
    let estimate = estimate_left_table(p, dim, false);
    if estimate > opts.memory_budget {
        return Err(Error::ResourceLimit(format!(
            "left table needs about {estimate} bytes, budget is {}",
            opts.memory_budget
        )));
    }
    let mut table: HashMap<Vec<i64>, u64> = HashMap::new();
    left.gray_walk(0, left.len(), |mask, sum| {
        table.entry(sum.to_vec()).or_insert(mask);
    });
    let mut found = None;
    let mut neg = vec![0i64; dim];
    // gray_walk has no early exit; the search space is bounded by the limit
    right.gray_walk(0, right.len(), |mask, sum| {
        if found.is_some() {
            return;
        }
        for (n, &x) in neg.iter_mut().zip(sum) {
            *n = -x;
        }
        if let Some(&lmask) = table.get(&neg) {
            found = Some(lmask | mask << p);
        }
    });
    Ok(found.map(|m| SignVector::from_mask(system.len(), m)))
}

/// Outcome of the parity test `Σ a_i ∈ 2L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// The necessary condition holds; existence is not implied.
    Pass,
    /// No zero signed sum can exist.
    Fail(String),
}

impl Obstruction {
    pub fn passes(&self) -> bool {
        matches!(self, Obstruction::Pass)
    }
}

/// Every signed sum is congruent to `Σ a_i` modulo `2L`, so a zero signed sum
/// requires `Σ a_i ∈ 2L`.
pub fn obstruction_2l(system: &RootSystem) -> Obstruction {
    let total = signed_sum(system, &SignVector::all_positive(system.len()))
        .expect("all-positive vector has matching length");
    if let Some(c) = total.iter().position(|x| x % 2 != 0) {
        return Obstruction::Fail(format!(
            "coordinate {} of the root sum is odd ({})",
            c + 1,
            total[c]
        ));
    }
    let half: Vec<BigInt> = total.iter().map(|&x| BigInt::from(x / 2)).collect();
    let lattice = hnf(system.roots());
    if lattice.contains(&half) {
        Obstruction::Pass
    } else {
        Obstruction::Fail("half the root sum is not in the root lattice".into())
    }
}

/// How existence was settled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExistenceProof {
    Obstruction(String),
    Certificate,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Existence {
    pub exists: bool,
    pub witness: Option<SignVector>,
    pub proof: ExistenceProof,
}

/// Obstruction first, then a family certificate, then a search.
pub fn exists_strong_dependence(system: &RootSystem) -> Result<Existence> {
    exists_strong_dependence_with(system, &MitmOptions::default())
}

pub fn exists_strong_dependence_with(system: &RootSystem, opts: &MitmOptions) -> Result<Existence> {
    if let Obstruction::Fail(reason) = obstruction_2l(system) {
        return Ok(Existence {
            exists: false,
            witness: None,
            proof: ExistenceProof::Obstruction(reason),
        });
    }
    if let Ok(Some(cert)) = certs::certificate(system.id()) {
        if cert.verify(system).is_ok() {
            let witness = cert.witness();
            return Ok(Existence {
                exists: true,
                witness: Some(witness),
                proof: ExistenceProof::Certificate,
            });
        }
    }
    let witness = find_witness_mitm(system, opts)?;
    Ok(Existence {
        exists: witness.is_some(),
        witness,
        proof: ExistenceProof::Search,
    })
}
