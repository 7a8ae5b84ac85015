//! MAD-groups of inner automorphisms of `M_N(ℂ)` and the fine gradings they
//! induce.
//!
//! Up to conjugation every maximal Abelian group of diagonalizable inner
//! automorphisms is `P_{N_1} ⊗ ... ⊗ P_{N_f} ⊗ D(m)` with prime powers `N_i`
//! and `N_1 ⋯ N_f · m = N`. Each such group is represented here by canonical
//! generators: clock and shift in every Pauli factor, and one generic
//! diagonal matrix for `D(m)`.

mod automorphism;
mod eigen;
mod grading;

use std::fmt;

pub use automorphism::{
    cartan_representative, mad_generators, mad_of_pauli_group, InnerAutomorphism, PauliMadGroup,
};
pub use eigen::{
    joint_eigenspaces, EigenGrading, EigenSpace, GradingMatch, SubspaceMatch, CLUSTER_TOL,
    MAX_EIGEN_N, SEPARATION_FLOOR,
};
pub use grading::{
    build_grading, verify_grading_closure, CartanLabel, ClosureTable, GradedPiece, Grading,
    GradingCertificate, PieceLabel,
};

use crate::classify::enumerate_kinematics;
use crate::error::{Error, Result};
use crate::numtheory::prime_power;

/// `P_{N_1} ⊗ ... ⊗ P_{N_f} ⊗ D(m)`. Pauli factors are kept in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MadGroupDescriptor {
    pauli_factors: Vec<u64>,
    diagonal_size: u64,
}

impl MadGroupDescriptor {
    pub fn new(mut pauli_factors: Vec<u64>, diagonal_size: u64) -> Result<Self> {
        if diagonal_size == 0 {
            return Err(Error::invalid("diagonal size m must be >= 1"));
        }
        if let Some(&bad) = pauli_factors.iter().find(|&&q| prime_power(q).is_none()) {
            return Err(Error::invalid(format!(
                "Pauli factor {bad} is not a prime power >= 2"
            )));
        }
        pauli_factors.sort_unstable_by(|a, b| b.cmp(a));
        let descriptor = MadGroupDescriptor {
            pauli_factors,
            diagonal_size,
        };
        descriptor.checked_n()?;
        Ok(descriptor)
    }

    /// Parses `"2,2,m=1"`: comma-separated prime powers and an optional
    /// `m=<int>` (default 1), validated against `N_1 ⋯ N_f · m = n`.
    pub fn parse(s: &str, n: u64) -> Result<Self> {
        let mut factors = Vec::new();
        let mut m = None;
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some(v) = token.strip_prefix("m=") {
                if m.is_some() {
                    return Err(Error::invalid("m given twice"));
                }
                m = Some(v.trim().parse::<u64>().map_err(|_| {
                    Error::invalid(format!("m must be a positive integer, got {v:?}"))
                })?);
            } else {
                factors.push(token.parse::<u64>().map_err(|_| {
                    Error::invalid(format!("Pauli factor {token:?} is not an integer"))
                })?);
            }
        }
        let d = Self::new(factors, m.unwrap_or(1))?;
        let total = d.checked_n()?;
        if total != n {
            return Err(Error::invalid(format!(
                "product constraint violated: N_1 ⋯ N_f · m = {total}, expected N = {n}"
            )));
        }
        Ok(d)
    }

    fn checked_n(&self) -> Result<u64> {
        self.pauli_factors
            .iter()
            .try_fold(self.diagonal_size, |acc, &q| acc.checked_mul(q))
            .ok_or_else(|| Error::invalid("descriptor dimension overflows u64"))
    }

    /// `N = N_1 ⋯ N_f · m`.
    pub fn n(&self) -> u64 {
        self.checked_n().expect("validated on construction")
    }

    /// Pauli factor orders, largest first.
    pub fn pauli_factors(&self) -> &[u64] {
        &self.pauli_factors
    }

    pub fn diagonal_size(&self) -> u64 {
        self.diagonal_size
    }

    pub fn is_pure_pauli(&self) -> bool {
        self.diagonal_size == 1
    }

    /// `Π N_i² · (1 + m(m-1))`.
    pub fn piece_count(&self) -> u128 {
        let m = self.diagonal_size as u128;
        self.pauli_factors
            .iter()
            .map(|&q| (q as u128).pow(2))
            .product::<u128>()
            * (1 + m * (m - 1))
    }
}

impl fmt::Display for MadGroupDescriptor {
    /// `P3⊗P2⊗D(1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in &self.pauli_factors {
            write!(f, "P{q}⊗")?;
        }
        write!(f, "D({})", self.diagonal_size)
    }
}

/// One descriptor per conjugacy class of MAD-groups in `Inn(M_n(ℂ))`.
///
/// Ordered by `m` ascending; for fixed `m` the Pauli parts follow the
/// classification order of Abelian groups of order `n / m`.
pub fn enumerate_mad_groups(n: u64) -> Result<Vec<MadGroupDescriptor>> {
    if n == 0 {
        return Err(Error::invalid("N must be >= 1"));
    }
    let mut out = Vec::new();
    for m in (1..=n).filter(|m| n.is_multiple_of(*m)) {
        for t in enumerate_kinematics(n / m)? {
            out.push(MadGroupDescriptor::new(
                t.elementary_divisors().to_vec(),
                m,
            )?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::count_kinematics;

    fn names(n: u64) -> Vec<String> {
        enumerate_mad_groups(n)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    #[test]
    fn small_lists() {
        assert_eq!(names(1), ["D(1)"]);
        assert_eq!(names(2), ["P2⊗D(1)", "D(2)"]);
        assert_eq!(names(6), ["P3⊗P2⊗D(1)", "P3⊗D(2)", "P2⊗D(3)", "D(6)"]);
        let eight = names(8);
        assert_eq!(eight.len(), 7);
        assert_eq!(eight.last().unwrap(), "D(8)");
    }

    #[test]
    fn pure_pauli_count_matches_classification() {
        for n in 1..=300 {
            let pure = enumerate_mad_groups(n)
                .unwrap()
                .iter()
                .filter(|d| d.is_pure_pauli())
                .count();
            assert_eq!(pure as u128, count_kinematics(n).unwrap(), "N = {n}");
        }
    }

    #[test]
    fn parsing() {
        let d = MadGroupDescriptor::parse("2,2,m=1", 4).unwrap();
        assert_eq!(d.pauli_factors(), &[2, 2]);
        assert_eq!(d.diagonal_size(), 1);
        assert_eq!(
            MadGroupDescriptor::parse("2, 3", 6).unwrap().to_string(),
            "P3⊗P2⊗D(1)"
        );
        assert_eq!(
            MadGroupDescriptor::parse("m=6", 6).unwrap().to_string(),
            "D(6)"
        );
        assert_eq!(
            MadGroupDescriptor::parse("2,m=2", 4).unwrap().piece_count(),
            12
        );
        assert!(MadGroupDescriptor::parse("2,2,m=2", 4).is_err());
        assert!(MadGroupDescriptor::parse("6", 6).is_err());
        assert!(MadGroupDescriptor::parse("2,m=0", 2).is_err());
        assert!(MadGroupDescriptor::parse("2,x", 4).is_err());
        assert!(MadGroupDescriptor::parse("m=2,m=2", 4).is_err());
        let err = MadGroupDescriptor::parse("2,2,m=2", 4)
            .unwrap_err()
            .to_string();
        assert!(err.contains("product constraint"), "{err}");
    }
}
