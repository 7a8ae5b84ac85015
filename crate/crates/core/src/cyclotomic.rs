//! Exact arithmetic in the cyclotomic rings `Q(ω_L)`, `ω_L = e^{2πi/L}`.
//!
//! A [`CyclotomicScalar`] stores rational coefficients of `1, ω_L, ..., ω_L^{d-1}`
//! where `d = φ(L)` is the degree of the cyclotomic polynomial `Φ_L`. Every
//! value is kept reduced modulo `Φ_L`, so two scalars at the same level are
//! equal exactly when their coefficient vectors are. Zero testing therefore
//! never touches floating point.
//!
//! Binary operations embed both operands into the level `lcm(L, L')`. Levels
//! above [`max_level`] are refused with [`Error::ResourceBound`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Rational coefficient type.
pub type Rational = Ratio<i128>;

pub const DEFAULT_MAX_LEVEL: u64 = 10_000;

static MAX_LEVEL: AtomicU64 = AtomicU64::new(DEFAULT_MAX_LEVEL);

/// Current process-wide level bound.
pub fn max_level() -> u64 {
    MAX_LEVEL.load(Ordering::Relaxed)
}

/// Replaces the process-wide level bound, returning the previous one.
pub fn set_max_level(level: u64) -> u64 {
    MAX_LEVEL.swap(level.max(1), Ordering::Relaxed)
}

fn check_level(level: u64) -> Result<()> {
    if level == 0 {
        return Err(Error::invalid("cyclotomic level must be positive"));
    }
    let limit = max_level();
    if level > limit {
        return Err(Error::ResourceBound {
            what: "cyclotomic level",
            value: level,
            limit,
        });
    }
    Ok(())
}

/// Integer coefficients of `Φ_L`, constant term first. Computed by dividing
/// `x^L - 1` by `Φ_d` for every proper divisor `d` of `L`.
pub fn cyclotomic_polynomial(level: u64) -> Result<Arc<Vec<i128>>> {
    check_level(level)?;
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i128>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("poisoned").get(&level) {
        return Ok(hit.clone());
    }
    let mut poly = vec![0i128; level as usize + 1];
    poly[0] = -1;
    poly[level as usize] = 1;
    for d in 1..level {
        if level.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d)?;
            poly = divide_monic_exact(&poly, &divisor);
        }
    }
    let poly = Arc::new(poly);
    cache.lock().expect("poisoned").insert(level, poly.clone());
    Ok(poly)
}

fn divide_monic_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i128; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (t, &d) in den.iter().enumerate() {
                rem[i + t] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, the degree of `Φ_L`.
pub fn totient(level: u64) -> u64 {
    let mut n = level;
    let mut out = level;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Exact element of `Q(ω_L)`.
#[derive(Clone, Debug)]
pub struct CyclotomicScalar {
    level: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicScalar {
    pub fn zero(level: u64) -> Result<Self> {
        check_level(level)?;
        Ok(CyclotomicScalar {
            level,
            coeffs: vec![Rational::zero(); totient(level) as usize],
        })
    }

    pub fn from_rational(value: Rational) -> Self {
        CyclotomicScalar {
            level: 1,
            coeffs: vec![value],
        }
    }

    pub fn from_integer(value: i128) -> Self {
        Self::from_rational(Rational::from_integer(value))
    }

    /// `ω_L^k` with `k` reduced modulo `L`.
    pub fn root_of_unity(level: u64, k: i64) -> Result<Self> {
        let mut counts = vec![0i128; level.max(1) as usize];
        counts[k.rem_euclid(level.max(1) as i64) as usize] = 1;
        Self::from_exponent_counts(level, &counts)
    }

    /// `Σ_j counts[j] ω_L^j` for an exponent-indexed integer vector (any length;
    /// indices are read modulo `L`).
    pub fn from_exponent_counts(level: u64, counts: &[i128]) -> Result<Self> {
        let coeffs: Vec<Rational> = counts.iter().map(|&c| Rational::from_integer(c)).collect();
        Self::from_power_coefficients(level, coeffs)
    }

    /// `Σ_j coeffs[j] ω_L^j` with rational coefficients.
    pub fn from_power_coefficients(level: u64, coeffs: Vec<Rational>) -> Result<Self> {
        check_level(level)?;
        let l = level as usize;
        let mut folded = vec![Rational::zero(); l];
        for (j, c) in coeffs.into_iter().enumerate() {
            folded[j % l] += c;
        }
        let phi = cyclotomic_polynomial(level)?;
        Ok(CyclotomicScalar {
            level,
            coeffs: reduce(folded, &phi),
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Canonical coefficients on `1, ω_L, ..., ω_L^{φ(L)-1}`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(j, c)| if j == 0 { c.is_one() } else { c.is_zero() })
    }

    /// Rewrites the value at level `target`, which must be a multiple of the
    /// current level.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.level) {
            return Err(Error::invalid(format!(
                "level {} does not divide {target}",
                self.level
            )));
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let stride = (target / self.level) as usize;
        let mut spread = vec![Rational::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            spread[j * stride] = *c;
        }
        Self::from_power_coefficients(target, spread)
    }

    /// Expresses the value at the lower level `target` (a divisor of the
    /// current level), or `None` when it does not lie in `Q(ω_target)`.
    pub fn restrict(&self, target: u64) -> Result<Option<Self>> {
        if target == 0 || !self.level.is_multiple_of(target) {
            return Err(Error::invalid(format!(
                "level {target} does not divide {}",
                self.level
            )));
        }
        let dim = totient(target) as usize;
        let columns: Vec<Vec<Rational>> = (0..dim)
            .map(|i| {
                Ok(Self::root_of_unity(target, i as i64)?
                    .embed(self.level)?
                    .coeffs)
            })
            .collect::<Result<_>>()?;
        Ok(
            solve_rational(&columns, &self.coeffs).map(|coeffs| CyclotomicScalar {
                level: target,
                coeffs,
            }),
        )
    }

    fn common_level(&self, other: &Self) -> Result<u64> {
        let level = self.level.lcm(&other.level);
        check_level(level)?;
        Ok(level)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let level = self.common_level(other)?;
        let a = self.embed(level)?;
        let b = other.embed(level)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(CyclotomicScalar { level, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let level = self.common_level(other)?;
        let a = self.embed(level)?;
        let b = other.embed(level)?;
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let phi = cyclotomic_polynomial(level)?;
        Ok(CyclotomicScalar {
            level,
            coeffs: reduce(prod, &phi),
        })
    }

    fn neg_ref(&self) -> Self {
        CyclotomicScalar {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: Rational) -> Self {
        CyclotomicScalar {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Complex conjugate: `ω^j ↦ ω^{-j}`.
    pub fn conj(&self) -> Self {
        let l = self.level as usize;
        let mut spread = vec![Rational::zero(); l];
        for (j, c) in self.coeffs.iter().enumerate() {
            spread[(l - j) % l] += c;
        }
        Self::from_power_coefficients(self.level, spread).expect("level already validated")
    }

    /// Multiplicative inverse in the field `Q(ω_L)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("inverse of zero"));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.level)?
            .iter()
            .map(|&c| Rational::from_integer(c))
            .collect();
        let inv = poly_inverse_mod(&self.coeffs, &phi);
        Self::from_power_coefficients(self.level, inv)
    }

    /// Numerical value. The error is bounded by a few ulps times
    /// `Σ |c_j|`, the ℓ¹ norm of the canonical coefficients.
    pub fn to_complex(&self) -> Complex<f64> {
        let l = self.level as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / l;
                let v = *c.numer() as f64 / *c.denom() as f64;
                Complex::new(v * angle.cos(), v * angle.sin())
            })
            .sum()
    }

    /// `(re, im)` pair of [`CyclotomicScalar::to_complex`].
    pub fn to_float(&self) -> (f64, f64) {
        let z = self.to_complex();
        (z.re, z.im)
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().copied().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }
}

impl PartialEq for CyclotomicScalar {
    fn eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }
}

impl Add for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    /// Panics when the common level exceeds [`max_level`]; use
    /// [`CyclotomicScalar::checked_add`] to handle that case.
    fn add(self, rhs: Self) -> CyclotomicScalar {
        self.checked_add(rhs).expect("cyclotomic level bound")
    }
}

impl Sub for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: Self) -> CyclotomicScalar {
        self.checked_sub(rhs).expect("cyclotomic level bound")
    }
}

impl Mul for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: Self) -> CyclotomicScalar {
        self.checked_mul(rhs).expect("cyclotomic level bound")
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        self.neg_ref()
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "w{}^{j}", self.level)?,
                (_, false) => write!(f, "{mag}*w{}^{j}", self.level)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Remainder of `poly` modulo the monic integer polynomial `phi`.
fn reduce(mut poly: Vec<Rational>, phi: &[i128]) -> Vec<Rational> {
    let d = phi.len() - 1;
    for i in (d..poly.len()).rev() {
        let c = poly[i];
        if c.is_zero() {
            continue;
        }
        for (t, &p) in phi.iter().enumerate() {
            if p != 0 {
                poly[i - d + t] -= c * Rational::from_integer(p);
            }
        }
    }
    poly.resize(d, Rational::zero());
    poly
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = *den.last().expect("nonzero divisor");
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let c = *rem.last().unwrap() / lead;
        quot[shift] = c;
        for (t, d) in den.iter().enumerate() {
            rem[shift + t] -= c * d;
        }
        rem = trim(rem);
    }
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Inverse of `a` modulo the irreducible `modulus`, by the extended Euclidean
/// algorithm over `Q[x]`.
fn poly_inverse_mod(a: &[Rational], modulus: &[Rational]) -> Vec<Rational> {
    let (mut r0, mut r1) = (trim(modulus.to_vec()), trim(a.to_vec()));
    let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    debug_assert_eq!(r0.len(), 1, "non-unit gcd in a field");
    let c = r0[0];
    t0.iter().map(|t| t / c).collect()
}

/// Solves `Σ_i x_i columns[i] = rhs` exactly; `None` if inconsistent.
fn solve_rational(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                let pivot_row = m[row].clone();
                for (v, pv) in m[r].iter_mut().zip(pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols];
    }
    Some(x)
}
