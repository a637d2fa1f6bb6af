//! Positive root systems of the complex simple Lie algebras.
//!
//! Roots are stored as integer vectors sharing one global denominator (2 for
//! `F4`, 1 for everything else), so all downstream arithmetic stays integral.
//! The order of roots is part of the public contract: sign vectors and
//! certificates index into it.
//!
//! Ordering rules, per family row (rows taken top to bottom):
//! * index patterns `(i)`, `(i, j)`, `(i, j, k)` are enumerated
//!   lexicographically;
//! * the eight half-roots of `F4` follow the sign pattern on
//!   `(λ2, λ3, λ4)` lexicographically with `+` before `-`;
//! * `G2` is listed as `λ1, λ2, -λ1-λ2, λ1-λ2, λ1+2λ2, 2λ1+λ2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Family letter of a complex simple Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                Family::from_letter(c).ok_or_else(|| Error::InvalidFamily(s.to_string()))
            }
            _ => Err(Error::InvalidFamily(s.to_string())),
        }
    }
}

/// A family together with a rank inside the admissible range.
///
/// The admissible ranges are `A n≥1`, `B n≥2`, `C n≥3`, `D n≥4`,
/// `E n∈{6,7,8}`, `F4` and `G2`. Isomorphic low-rank aliases such as `C2`
/// are rejected, not remapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyRank {
    family: Family,
    rank: usize,
}

impl FamilyRank {
    pub fn new(family: Family, rank: usize) -> Result<FamilyRank> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(FamilyRank { family, rank })
        } else {
            Err(Error::InvalidRank { family, rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for FamilyRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for FamilyRank {
    type Err = Error;

    /// Parses compact labels such as `E8`, `a4` or `D 5`.
    fn from_str(s: &str) -> Result<FamilyRank> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::InvalidFamily(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .trim()
            .parse()
            .map_err(|_| Error::InvalidFamily(s.to_string()))?;
        FamilyRank::new(family, rank)
    }
}

/// Number of positive roots, by closed form.
pub fn root_count(id: FamilyRank) -> usize {
    let n = id.rank;
    match id.family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

/// Ordered list of positive roots in scaled integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    id: FamilyRank,
    roots: Vec<Vec<i64>>,
    denominator: i64,
    ambient_dim: usize,
}

impl RootSystem {
    /// Builds a system from arbitrary scaled roots. Used for sub-families and
    /// transformed systems; `positive_roots` is the canonical constructor.
    pub fn from_roots(
        id: FamilyRank,
        roots: Vec<Vec<i64>>,
        denominator: i64,
    ) -> Result<RootSystem> {
        let ambient_dim = roots.first().map_or(0, Vec::len);
        if denominator <= 0 {
            return Err(Error::InvalidInput("denominator must be positive".into()));
        }
        for root in &roots {
            if root.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: root.len(),
                });
            }
            if root.iter().all(|&c| c == 0) {
                return Err(Error::InvalidInput("zero root".into()));
            }
        }
        Ok(RootSystem {
            id,
            roots,
            denominator,
            ambient_dim,
        })
    }

    pub fn id(&self) -> FamilyRank {
        self.id
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, index: usize) -> &[i64] {
        &self.roots[index]
    }

    /// Number of roots `r`.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Position of a root given in scaled coordinates.
    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == coords)
    }

    /// Root list in the line-oriented text format used by the `roots` command:
    /// a header `family rank r ambient_dim denominator` and one root per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {} {}\n",
            self.id.family,
            self.id.rank,
            self.len(),
            self.ambient_dim,
            self.denominator
        );
        for root in &self.roots {
            let line: Vec<String> = root.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn unit(m: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

fn combo(m: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; m];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

fn differences(m: usize, n: usize, out: &mut Vec<Vec<i64>>) {
    for i in 0..n {
        for j in i + 1..n {
            out.push(combo(m, &[(i, 1), (j, -1)]));
        }
    }
}

fn sums(m: usize, n: usize, out: &mut Vec<Vec<i64>>) {
    for i in 0..n {
        for j in i + 1..n {
            out.push(combo(m, &[(i, 1), (j, 1)]));
        }
    }
}

fn triples(m: usize, n: usize, out: &mut Vec<Vec<i64>>) {
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(combo(m, &[(i, 1), (j, 1), (k, 1)]));
            }
        }
    }
}

/// Positive roots in canonical order.
pub fn positive_roots(id: FamilyRank) -> RootSystem {
    let n = id.rank;
    let mut roots = Vec::with_capacity(root_count(id));
    let mut denominator = 1;
    match id.family {
        Family::A => {
            differences(n, n, &mut roots);
            for i in 0..n {
                let mut v = vec![1; n];
                v[i] += 1;
                roots.push(v);
            }
        }
        Family::B | Family::C => {
            differences(n, n, &mut roots);
            sums(n, n, &mut roots);
            let scale = if id.family == Family::C { 2 } else { 1 };
            for i in 0..n {
                roots.push(unit(n, i).into_iter().map(|c| c * scale).collect());
            }
        }
        Family::D => {
            differences(n, n, &mut roots);
            sums(n, n, &mut roots);
        }
        Family::E => {
            differences(n, n, &mut roots);
            triples(n, n, &mut roots);
            match n {
                6 => roots.push(vec![1; 6]),
                7 => {
                    for i in 0..7 {
                        let mut v = vec![1; 7];
                        v[i] -= 1;
                        roots.push(v);
                    }
                }
                _ => {
                    for i in 0..8 {
                        let mut v = vec![1; 8];
                        v[i] += 1;
                        roots.push(v);
                    }
                    for i in 0..8 {
                        for j in i + 1..8 {
                            let mut v = vec![1; 8];
                            v[i] -= 1;
                            v[j] -= 1;
                            roots.push(v);
                        }
                    }
                }
            }
        }
        Family::F => {
            denominator = 2;
            let mut full = Vec::new();
            differences(4, 4, &mut full);
            sums(4, 4, &mut full);
            for i in 0..4 {
                full.push(unit(4, i));
            }
            roots.extend(
                full.into_iter()
                    .map(|v| v.into_iter().map(|c| 2 * c).collect()),
            );
            // sign bits on (λ2, λ3, λ4), plus first
            for pattern in 0..8u32 {
                let mut v = vec![1; 4];
                for (bit, slot) in (1..4).enumerate() {
                    if pattern & (1 << (2 - bit)) != 0 {
                        v[slot] = -1;
                    }
                }
                roots.push(v);
            }
        }
        Family::G => {
            roots.extend([
                vec![1, 0],
                vec![0, 1],
                vec![-1, -1],
                vec![1, -1],
                vec![1, 2],
                vec![2, 1],
            ]);
        }
    }
    RootSystem {
        id,
        ambient_dim: n,
        roots,
        denominator,
    }
}
