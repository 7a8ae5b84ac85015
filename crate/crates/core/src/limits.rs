use crate::error::{Error, Result};

/// Resource bounds shared by every construction that enumerates groups or
/// materializes matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest matrix dimension (or configuration-group order) built explicitly.
    pub max_matrix_n: u64,
    /// Largest N accepted by the classification routines.
    pub max_classify_n: u64,
    /// Largest number of graded pieces a grading may have.
    pub max_subspaces: u64,
}

impl Limits {
    pub const DEFAULT_MAX_MATRIX_N: u64 = 64;
    pub const DEFAULT_MAX_CLASSIFY_N: u64 = 1_000_000;
    pub const DEFAULT_MAX_SUBSPACES: u64 = 4096;

    pub fn check_matrix_n(&self, n: u64) -> Result<()> {
        check("matrix dimension", n, self.max_matrix_n)
    }

    pub fn check_classify_n(&self, n: u64) -> Result<()> {
        check("classification order", n, self.max_classify_n)
    }

    pub fn check_subspaces(&self, count: u64) -> Result<()> {
        check("graded piece count", count, self.max_subspaces)
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_matrix_n: Self::DEFAULT_MAX_MATRIX_N,
            max_classify_n: Self::DEFAULT_MAX_CLASSIFY_N,
            max_subspaces: Self::DEFAULT_MAX_SUBSPACES,
        }
    }
}

fn check(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::ResourceBound { what, value, limit })
    } else {
        Ok(())
    }
}
