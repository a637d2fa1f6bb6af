//! Exterior-algebra model of the spin representation.
//!
//! Spinors are elements of `Λ•L'` where `L'` is spanned by `y_1 … y_r`, one
//! generator per positive root. Coefficients live in `Q[i, √2]`. The
//! generators act by
//!
//! * `x_j · η = i√2 (x_j ⌟ η)`, contraction with the Koszul sign
//!   `(-1)^(position - 1)`;
//! * `y_j · η = i√2 (y_j ∧ η)`;
//! * `e1 = (x_j + y_j)/√2`, `e2 = i (x_j - y_j)/√2`.
//!
//! The Cartan action is `½ Σ_j a_j(X) e1(j) e2(j) η`. Its joint kernel is
//! the space of invariant spinors and is used as an independent check of the
//! signed-sum counts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

pub const DEFAULT_ORACLE_LIMIT: usize = 14;

/// Exact scalar `re + im·i + rt·√2 + irt·i√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: Rational64,
    pub im: Rational64,
    pub rt: Rational64,
    pub irt: Rational64,
}

impl Scalar {
    pub fn new(re: Rational64, im: Rational64, rt: Rational64, irt: Rational64) -> Scalar {
        Scalar { re, im, rt, irt }
    }

    pub fn rational(x: Rational64) -> Scalar {
        Scalar::new(
            x,
            Rational64::zero(),
            Rational64::zero(),
            Rational64::zero(),
        )
    }

    pub fn int(x: i64) -> Scalar {
        Scalar::rational(Rational64::from_integer(x))
    }

    pub fn i() -> Scalar {
        Scalar::new(
            Rational64::zero(),
            Rational64::one(),
            Rational64::zero(),
            Rational64::zero(),
        )
    }

    /// `i√2`.
    pub fn i_sqrt2() -> Scalar {
        Scalar::new(
            Rational64::zero(),
            Rational64::zero(),
            Rational64::zero(),
            Rational64::one(),
        )
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Scalar {
        Scalar::new(
            Rational64::zero(),
            Rational64::zero(),
            Rational64::new(1, 2),
            Rational64::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rt.is_zero() && self.irt.is_zero()
    }

    /// Lies in `Q[i]`, i.e. the `√2` parts vanish.
    pub fn is_gaussian(&self) -> bool {
        self.rt.is_zero() && self.irt.is_zero()
    }

    pub fn is_purely_imaginary(&self) -> bool {
        self.re.is_zero() && self.is_gaussian()
    }
}

impl Zero for Scalar {
    fn zero() -> Scalar {
        Scalar::int(0)
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        Scalar::new(
            self.re + o.re,
            self.im + o.im,
            self.rt + o.rt,
            self.irt + o.irt,
        )
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self + (-o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im, -self.rt, -self.irt)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    // basis 1, i, s, is with i² = -1, s² = 2
    fn mul(self, o: Scalar) -> Scalar {
        let two = Rational64::from_integer(2);
        let (a, b, c, d) = (self.re, self.im, self.rt, self.irt);
        let (e, f, g, h) = (o.re, o.im, o.rt, o.irt);
        Scalar::new(
            a * e - b * f + two * c * g - two * d * h,
            a * f + b * e + two * c * h + two * d * g,
            a * g + c * e - b * h - d * f,
            a * h + d * e + b * g + c * f,
        )
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({})i + ({})√2 + ({})i√2",
            self.re, self.im, self.rt, self.irt
        )
    }
}

/// `y_{j1} ∧ … ∧ y_{jk}` as a bitmask, bit `j-1` for `y_j`.
pub type Monomial = u64;

/// Finitely supported combination of monomials over `r` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinorElement {
    generators: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SpinorElement {
    pub fn zero(generators: usize) -> SpinorElement {
        SpinorElement {
            generators,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1 ∈ Λ⁰L'`.
    pub fn one(generators: usize) -> SpinorElement {
        SpinorElement::monomial(generators, 0, Scalar::int(1))
    }

    pub fn monomial(generators: usize, mono: Monomial, coeff: Scalar) -> SpinorElement {
        let mut out = SpinorElement::zero(generators);
        out.add_term(mono, coeff);
        out
    }

    /// Monomial from 1-based indices, in any order; repeated indices give 0.
    pub fn wedge_of(generators: usize, indices: &[usize]) -> Result<SpinorElement> {
        let mut out = SpinorElement::one(generators);
        for &j in indices.iter().rev() {
            out = act_y(j, &out)?;
        }
        // undo the i√2 factor from each y action
        let scale = (0..indices.len()).fold(Scalar::int(1), |acc, _| {
            acc * Scalar::new(
                Rational64::zero(),
                Rational64::zero(),
                Rational64::zero(),
                Rational64::new(-1, 2),
            )
        });
        Ok(out.scaled(scale))
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, mono: Monomial) -> Scalar {
        self.terms.get(&mono).copied().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *entry = *entry + coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn scaled(&self, s: Scalar) -> SpinorElement {
        let mut out = SpinorElement::zero(self.generators);
        for (&m, &c) in &self.terms {
            out.add_term(m, c * s);
        }
        out
    }

    pub fn plus(&self, other: &SpinorElement) -> SpinorElement {
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn minus(&self, other: &SpinorElement) -> SpinorElement {
        self.plus(&other.scaled(Scalar::int(-1)))
    }
}

fn check_index(j: usize, eta: &SpinorElement) -> Result<u64> {
    if j == 0 || j > eta.generators || j > 64 {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: eta.generators,
        });
    }
    Ok(1u64 << (j - 1))
}

fn koszul(mono: Monomial, bit: u64) -> Scalar {
    if (mono & (bit - 1)).count_ones().is_multiple_of(2) {
        Scalar::int(1)
    } else {
        Scalar::int(-1)
    }
}

/// `x_j · η = i√2 (x_j ⌟ η)`.
pub fn act_x(j: usize, eta: &SpinorElement) -> Result<SpinorElement> {
    let bit = check_index(j, eta)?;
    let mut out = SpinorElement::zero(eta.generators);
    for (&m, &c) in &eta.terms {
        if m & bit != 0 {
            out.add_term(m ^ bit, c * koszul(m, bit) * Scalar::i_sqrt2());
        }
    }
    Ok(out)
}

/// `y_j · η = i√2 (y_j ∧ η)`.
pub fn act_y(j: usize, eta: &SpinorElement) -> Result<SpinorElement> {
    let bit = check_index(j, eta)?;
    let mut out = SpinorElement::zero(eta.generators);
    for (&m, &c) in &eta.terms {
        if m & bit == 0 {
            out.add_term(m | bit, c * koszul(m, bit) * Scalar::i_sqrt2());
        }
    }
    Ok(out)
}

/// Clifford action of `e1(j)` (`axis = 1`) or `e2(j)` (`axis = 2`).
pub fn act_e(j: usize, axis: u8, eta: &SpinorElement) -> Result<SpinorElement> {
    let x = act_x(j, eta)?;
    let y = act_y(j, eta)?;
    match axis {
        1 => Ok(x.plus(&y).scaled(Scalar::inv_sqrt2())),
        2 => Ok(x.minus(&y).scaled(Scalar::i() * Scalar::inv_sqrt2())),
        _ => Err(Error::InvalidInput(format!(
            "axis must be 1 or 2, got {axis}"
        ))),
    }
}

/// Element of the Cartan subalgebra in coordinates dual to `λ_1 … λ_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanElement(pub Vec<Rational64>);

impl CartanElement {
    pub fn basis(m: usize, k: usize) -> CartanElement {
        let mut v = vec![Rational64::zero(); m];
        v[k] = Rational64::one();
        CartanElement(v)
    }

    pub fn from_ints(v: &[i64]) -> CartanElement {
        CartanElement(v.iter().map(|&x| Rational64::from_integer(x)).collect())
    }
}

/// `a_j(X)` for the unscaled root.
fn root_value(system: &RootSystem, j: usize, x: &CartanElement) -> Rational64 {
    let dot = system
        .root(j)
        .iter()
        .zip(&x.0)
        .fold(Rational64::zero(), |acc, (&c, &xc)| acc + xc * c);
    dot / Rational64::from_integer(system.denominator())
}

/// `½ Σ_j a_j(X) e1(j) e2(j) η`.
pub fn cartan_act(
    system: &RootSystem,
    x: &CartanElement,
    eta: &SpinorElement,
) -> Result<SpinorElement> {
    if x.0.len() != system.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: system.ambient_dim(),
            found: x.0.len(),
        });
    }
    if eta.generators != system.len() {
        return Err(Error::DimensionMismatch {
            expected: system.len(),
            found: eta.generators,
        });
    }
    let mut out = SpinorElement::zero(eta.generators);
    for j in 0..system.len() {
        let weight = root_value(system, j, x);
        if weight.is_zero() {
            continue;
        }
        let term = act_e(j + 1, 1, &act_e(j + 1, 2, eta)?)?;
        out = out.plus(&term.scaled(Scalar::rational(weight / Rational64::from_integer(2))));
    }
    Ok(out)
}

/// Eigenvalue of `cartan_act(X)` on a monomial, after checking that the
/// action is diagonal there with a purely imaginary eigenvalue.
pub fn monomial_eigenvalue(
    system: &RootSystem,
    x: &CartanElement,
    mono: Monomial,
) -> Result<Scalar> {
    let eta = SpinorElement::monomial(system.len(), mono, Scalar::int(1));
    let image = cartan_act(system, x, &eta)?;
    if image.terms.keys().any(|&m| m != mono) {
        return Err(Error::Invariant(format!(
            "Cartan action is not diagonal on monomial {mono:#b}"
        )));
    }
    let value = image.coefficient(mono);
    if !value.is_purely_imaginary() {
        return Err(Error::Invariant(format!(
            "eigenvalue {value} on monomial {mono:#b} is not purely imaginary"
        )));
    }
    Ok(value)
}

/// Dimension of the joint kernel of the Cartan action.
pub fn invariant_dimension(system: &RootSystem, limit_r: usize) -> Result<u128> {
    let r = system.len();
    if r > limit_r || r > 63 {
        return Err(Error::ResourceLimit(format!(
            "spin representation has dimension 2^{r}, limit is 2^{limit_r}"
        )));
    }
    let m = system.ambient_dim();
    let basis: Vec<CartanElement> = (0..m).map(|k| CartanElement::basis(m, k)).collect();
    (0..1u64 << r)
        .into_par_iter()
        .map(|mono| -> Result<u128> {
            let mut annihilated = true;
            for x in &basis {
                if !monomial_eigenvalue(system, x, mono)?.is_zero() {
                    annihilated = false;
                }
            }
            Ok(u128::from(annihilated))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}
