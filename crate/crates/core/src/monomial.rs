//! Exact monomial matrices whose nonzero entries are roots of unity.
//!
//! [`MonomialMatrix`] is a phase-decorated permutation matrix and carries every
//! Weyl-Heisenberg element. [`PartialMonomial`] drops the requirement that each
//! row be occupied; it covers matrix units `E_ij`, diagonal projectors and their
//! Kronecker products with monomials, and is closed under multiplication.

use std::fmt;

use nalgebra::{Complex, DMatrix, DVector};
use num_integer::Integer;

use crate::cyclotomic::CyclotomicScalar;
use crate::error::{Error, Result};

/// A root of unity `e^{2πi num/den}`, stored as a reduced fraction in `Q/Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ONE: Phase = Phase { num: 0, den: 1 };
    pub const MINUS_ONE: Phase = Phase { num: 1, den: 2 };

    /// `ω_level^k`.
    pub fn root(level: u64, k: i64) -> Phase {
        assert!(level > 0, "root of unity of level 0");
        let num = k.rem_euclid(level as i64) as u64;
        let g = num.gcd(&level);
        Phase {
            num: num / g,
            den: level / g,
        }
    }

    /// Order of the phase as a root of unity.
    pub fn order(&self) -> u64 {
        self.den
    }

    /// The exponent `k` with `self = ω_level^k`, if `level` is a multiple of the order.
    pub fn exponent_at(&self, level: u64) -> Option<u64> {
        level
            .is_multiple_of(self.den)
            .then(|| self.num * (level / self.den))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Phase) -> Phase {
        let den = self.den.lcm(&other.den);
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        Phase::root(den, num as i64)
    }

    pub fn inv(self) -> Phase {
        Phase::root(self.den, -(self.num as i64))
    }

    pub fn pow(self, k: i64) -> Phase {
        let num = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        Phase::root(self.den, num as i64)
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn to_cyclotomic(self) -> Result<CyclotomicScalar> {
        CyclotomicScalar::root_of_unity(self.den, self.num as i64)
    }

    pub fn to_complex(self) -> Complex<f64> {
        let angle = 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64;
        Complex::new(angle.cos(), angle.sin())
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "1")
        } else {
            write!(f, "e(2πi·{}/{})", self.num, self.den)
        }
    }
}

/// Sums phases exactly into a cyclotomic scalar.
pub fn sum_phases<I: IntoIterator<Item = Phase>>(phases: I) -> Result<CyclotomicScalar> {
    let phases: Vec<Phase> = phases.into_iter().collect();
    let level = phases.iter().fold(1u64, |acc, p| acc.lcm(&p.den));
    let mut counts = vec![0i128; level as usize];
    for p in &phases {
        counts[p.exponent_at(level).expect("level is a common multiple") as usize] += 1;
    }
    CyclotomicScalar::from_exponent_counts(level, &counts)
}

/// Phase-decorated permutation matrix: entry `(ρ, perm[ρ])` equals
/// `phases[ρ]`, every other entry is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    phases: Vec<Phase>,
}

impl MonomialMatrix {
    pub fn identity(dim: usize) -> Self {
        MonomialMatrix {
            perm: (0..dim).collect(),
            phases: vec![Phase::ONE; dim],
        }
    }

    pub fn new(perm: Vec<usize>, phases: Vec<Phase>) -> Result<Self> {
        if perm.len() != phases.len() {
            return Err(Error::DimensionMismatch {
                left: perm.len(),
                right: phases.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &c in &perm {
            if c >= perm.len() || std::mem::replace(&mut seen[c], true) {
                return Err(Error::invalid("column map is not a permutation"));
            }
        }
        Ok(MonomialMatrix { perm, phases })
    }

    /// Permutation matrix with `M e_x = e_{image[x]}`, i.e. `M[image[x], x] = 1`.
    pub fn from_column_images(image: &[usize]) -> Result<Self> {
        let mut perm = vec![usize::MAX; image.len()];
        for (x, &y) in image.iter().enumerate() {
            if y >= image.len() || perm[y] != usize::MAX {
                return Err(Error::invalid("image map is not a permutation"));
            }
            perm[y] = x;
        }
        Ok(MonomialMatrix {
            perm,
            phases: vec![Phase::ONE; image.len()],
        })
    }

    pub fn diagonal(phases: Vec<Phase>) -> Self {
        MonomialMatrix {
            perm: (0..phases.len()).collect(),
            phases,
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Column of the nonzero entry in each row.
    pub fn columns(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<Phase> {
        (self.perm[row] == col).then(|| self.phases[row])
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let (perm, phases) = self
            .perm
            .iter()
            .zip(&self.phases)
            .map(|(&mid, &a)| (other.perm[mid], a.mul(other.phases[mid])))
            .unzip();
        Ok(MonomialMatrix { perm, phases })
    }

    /// Conjugate transpose, which is also the inverse.
    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phases = vec![Phase::ONE; n];
        for (row, (&col, &ph)) in self.perm.iter().zip(&self.phases).enumerate() {
            perm[col] = row;
            phases[col] = ph.inv();
        }
        MonomialMatrix { perm, phases }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.adjoint() } else { self.clone() };
        let mut acc = MonomialMatrix::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base).expect("same dimension");
        }
        acc
    }

    pub fn scale(&self, phase: Phase) -> Self {
        MonomialMatrix {
            perm: self.perm.clone(),
            phases: self.phases.iter().map(|p| p.mul(phase)).collect(),
        }
    }

    /// Kronecker product with row-major index `(a, b) ↦ a * other.dim() + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.dim();
        let mut perm = Vec::with_capacity(self.dim() * m);
        let mut phases = Vec::with_capacity(self.dim() * m);
        for (&c1, &p1) in self.perm.iter().zip(&self.phases) {
            for (&c2, &p2) in other.perm.iter().zip(&other.phases) {
                perm.push(c1 * m + c2);
                phases.push(p1.mul(p2));
            }
        }
        MonomialMatrix { perm, phases }
    }

    /// `self · x · self^{-1}`.
    pub fn conjugate(&self, x: &Self) -> Result<Self> {
        self.mul(x)?.mul(&self.adjoint())
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(r, &c)| r == c) && self.phases.iter().all(Phase::is_one)
    }

    /// `Some(α)` when `self = α · other` for a phase `α`.
    pub fn proportionality(&self, other: &Self) -> Option<Phase> {
        if self.dim() != other.dim() || self.perm != other.perm {
            return None;
        }
        let ratio = |r: usize| self.phases[r].mul(other.phases[r].inv());
        let alpha = if self.dim() == 0 {
            Phase::ONE
        } else {
            ratio(0)
        };
        (0..self.dim()).all(|r| ratio(r) == alpha).then_some(alpha)
    }

    pub fn trace(&self) -> Result<CyclotomicScalar> {
        sum_phases(
            self.perm
                .iter()
                .zip(&self.phases)
                .enumerate()
                .filter(|(r, (c, _))| r == *c)
                .map(|(_, (_, &p))| p),
        )
    }

    /// Hilbert-Schmidt inner product `Tr(self · other^†)`.
    pub fn hs_inner(&self, other: &Self) -> Result<CyclotomicScalar> {
        self.mul(&other.adjoint())?.trace()
    }

    pub fn to_dense(&self) -> DMatrix<Complex<f64>> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (r, (&c, p)) in self.perm.iter().zip(&self.phases).enumerate() {
            m[(r, c)] = p.to_complex();
        }
        m
    }

    /// Row strings in exponent notation relative to `ω_level`: nonzero entries
    /// print as `w^k`, zeros as `0`.
    pub fn exponent_rows(&self, level: u64) -> Vec<String> {
        let n = self.dim();
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| match self.entry(r, c) {
                        Some(p) => match p.exponent_at(level) {
                            Some(k) => format!("w^{k}"),
                            None => p.to_string(),
                        },
                        None => "0".to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

/// Matrix with at most one nonzero entry per row and per column, each a root
/// of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialMonomial {
    rows: Vec<Option<(usize, Phase)>>,
}

impl PartialMonomial {
    pub fn zero(dim: usize) -> Self {
        PartialMonomial {
            rows: vec![None; dim],
        }
    }

    pub fn new(rows: Vec<Option<(usize, Phase)>>) -> Result<Self> {
        let mut seen = vec![false; rows.len()];
        for (c, _) in rows.iter().flatten() {
            if *c >= rows.len() || std::mem::replace(&mut seen[*c], true) {
                return Err(Error::invalid("column occupied twice or out of range"));
            }
        }
        Ok(PartialMonomial { rows })
    }

    /// Matrix unit `E_ij`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(dim);
        m.rows[i] = Some((j, Phase::ONE));
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Option<(usize, Phase)>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<Phase> {
        match self.rows[row] {
            Some((c, p)) if c == col => Some(p),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Option::is_none)
    }

    /// Occupied positions `(row, col, phase)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, Phase)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, e)| e.map(|(c, p)| (r, c, p)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().flatten().count()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|e| e.and_then(|(mid, a)| other.rows[mid].map(|(c, b)| (c, a.mul(b)))))
            .collect();
        Ok(PartialMonomial { rows })
    }

    pub fn adjoint(&self) -> Self {
        let mut rows = vec![None; self.dim()];
        for (r, c, p) in self.support() {
            rows[c] = Some((r, p.inv()));
        }
        PartialMonomial { rows }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let m = other.dim();
        let mut rows = Vec::with_capacity(self.dim() * m);
        for a in &self.rows {
            for b in &other.rows {
                rows.push(match (a, b) {
                    (Some((c1, p1)), Some((c2, p2))) => Some((c1 * m + c2, p1.mul(*p2))),
                    _ => None,
                });
            }
        }
        PartialMonomial { rows }
    }

    pub fn scale(&self, phase: Phase) -> Self {
        PartialMonomial {
            rows: self
                .rows
                .iter()
                .map(|e| e.map(|(c, p)| (c, p.mul(phase))))
                .collect(),
        }
    }

    pub fn trace(&self) -> Result<CyclotomicScalar> {
        sum_phases(self.support().filter(|(r, c, _)| r == c).map(|(_, _, p)| p))
    }

    /// Hilbert-Schmidt inner product `Tr(self · other^†)`.
    pub fn hs_inner(&self, other: &Self) -> Result<CyclotomicScalar> {
        sum_phases(
            self.support()
                .filter_map(|(r, c, p)| other.entry(r, c).map(|q| p.mul(q.inv()))),
        )
    }

    pub fn to_dense(&self) -> DMatrix<Complex<f64>> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (r, c, p) in self.support() {
            m[(r, c)] = p.to_complex();
        }
        m
    }

    /// Row-major vectorization, index `r * dim + c`.
    pub fn to_vector(&self) -> DVector<Complex<f64>> {
        let n = self.dim();
        let mut v = DVector::zeros(n * n);
        for (r, c, p) in self.support() {
            v[r * n + c] = p.to_complex();
        }
        v
    }

    pub fn exponent_rows(&self, level: u64) -> Vec<String> {
        let n = self.dim();
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| match self.entry(r, c) {
                        Some(p) => match p.exponent_at(level) {
                            Some(k) => format!("w^{k}"),
                            None => p.to_string(),
                        },
                        None => "0".to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

impl From<&MonomialMatrix> for PartialMonomial {
    fn from(m: &MonomialMatrix) -> Self {
        PartialMonomial {
            rows: m
                .columns()
                .iter()
                .zip(m.phases())
                .map(|(&c, &p)| Some((c, p)))
                .collect(),
        }
    }
}
