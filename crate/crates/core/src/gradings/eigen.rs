//! Numerical simultaneous eigenspaces of commuting inner automorphisms.
//!
//! This is an oracle for the exact gradings, not a substitute: the closure
//! tables never depend on it. Each `Ad_M` acts on the `N²`-dimensional space
//! of matrices (row-major vectorization). Commutation is checked exactly
//! first. The space is then refined one generator at a time: on each current
//! subspace the restricted operator `B` is normal, so its eigenspaces are
//! those of the Hermitian parts `(B + B^*)/2` and `(B - B^*)/(2i)`, which are
//! split in turn with a Hermitian eigensolver.
//!
//! Eigenvalues closer than [`CLUSTER_TOL`] are merged. A gap between
//! [`CLUSTER_TOL`] and [`SEPARATION_FLOOR`] is ambiguous and reported as
//! [`Error::NumericalSeparation`] instead of guessed.

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::limits::Limits;

use super::{Grading, InnerAutomorphism};

pub const CLUSTER_TOL: f64 = 1e-8;
pub const SEPARATION_FLOOR: f64 = 1e-5;
/// Largest `N` for which the dense `N² × N²` computation is attempted.
pub const MAX_EIGEN_N: u64 = 16;

type CMatrix = DMatrix<Complex<f64>>;

/// A joint eigenspace with orthonormal basis columns in `ℂ^{N²}`.
#[derive(Debug, Clone)]
pub struct EigenSpace {
    /// One eigenvalue per generator.
    pub eigenvalues: Vec<Complex<f64>>,
    pub basis: CMatrix,
}

impl EigenSpace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }
}

#[derive(Debug, Clone)]
pub struct EigenGrading {
    pub n: usize,
    pub spaces: Vec<EigenSpace>,
}

/// Best match of one exact piece against the numerical eigenspaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceMatch {
    pub piece: usize,
    pub space: usize,
    /// Frobenius distance between the two orthogonal projectors.
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct GradingMatch {
    pub matches: Vec<SubspaceMatch>,
    pub max_distance: f64,
    /// Every space is matched by exactly one piece of equal dimension.
    pub bijective: bool,
}

impl GradingMatch {
    pub fn within(&self, tol: f64) -> bool {
        self.bijective && self.max_distance < tol
    }
}

impl EigenGrading {
    /// Pairs each piece of `g` with the eigenspace of largest overlap and
    /// reports projector distances.
    pub fn match_grading(&self, g: &Grading) -> Result<GradingMatch> {
        if g.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: g.n(),
                right: self.n,
            });
        }
        let mut matches = Vec::with_capacity(g.pieces().len());
        let mut used = vec![0usize; self.spaces.len()];
        let mut bijective = g.pieces().len() == self.spaces.len();
        for (i, piece) in g.pieces().iter().enumerate() {
            let n2 = self.n * self.n;
            let mut exact = CMatrix::zeros(n2, piece.dim());
            for (k, b) in piece.basis.iter().enumerate() {
                let v = b.to_vector();
                let norm = v.norm();
                exact.set_column(k, &(v / Complex::new(norm, 0.0)));
            }
            let overlap = |s: &EigenSpace| (exact.adjoint() * &s.basis).norm_squared();
            let best = (0..self.spaces.len())
                .max_by(|&a, &b| overlap(&self.spaces[a]).total_cmp(&overlap(&self.spaces[b])))
                .ok_or_else(|| Error::invalid("no eigenspaces"))?;
            let space = &self.spaces[best];
            bijective &= space.dim() == piece.dim();
            used[best] += 1;
            let distance = (&exact * exact.adjoint() - space.projector()).norm();
            matches.push(SubspaceMatch {
                piece: i,
                space: best,
                distance,
            });
        }
        bijective &= used.iter().all(|&u| u == 1);
        let max_distance = matches.iter().map(|m| m.distance).fold(0.0, f64::max);
        Ok(GradingMatch {
            matches,
            max_distance,
            bijective,
        })
    }
}

/// Simultaneous eigenspaces of pairwise commuting, normal `Ad` operators.
/// An empty generator list yields the whole algebra as one space.
pub fn joint_eigenspaces(
    generators: &[InnerAutomorphism],
    n: usize,
    limits: &Limits,
) -> Result<EigenGrading> {
    limits.check_matrix_n(n as u64)?;
    if n as u64 > MAX_EIGEN_N {
        return Err(Error::ResourceBound {
            what: "joint eigenspace dimension",
            value: n as u64,
            limit: MAX_EIGEN_N,
        });
    }
    for (i, a) in generators.iter().enumerate() {
        if a.dim() != n {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: n,
            });
        }
        if !a.is_normal() {
            return Err(Error::invalid(format!(
                "generator {i} is not a normal operator"
            )));
        }
        for (j, b) in generators.iter().enumerate().skip(i + 1) {
            if !a.commutes_with(b)? {
                return Err(Error::NonCommuting(format!("generators {i} and {j}")));
            }
        }
    }
    let n2 = n * n;
    let mut spaces = vec![EigenSpace {
        eigenvalues: Vec::new(),
        basis: CMatrix::identity(n2, n2),
    }];
    for a in generators {
        let columns = a.operator_columns();
        let mut refined = Vec::new();
        for s in spaces {
            // A · V, applied column by column through the monomial operator.
            let mut av = CMatrix::zeros(n2, s.dim());
            for (col, &(row, c)) in columns.iter().enumerate() {
                for k in 0..s.dim() {
                    av[(row, k)] += c * s.basis[(col, k)];
                }
            }
            let b = s.basis.adjoint() * av;
            for (value, local) in split_normal(&b)? {
                let mut eigenvalues = s.eigenvalues.clone();
                eigenvalues.push(value);
                refined.push(EigenSpace {
                    eigenvalues,
                    basis: &s.basis * local,
                });
            }
        }
        spaces = refined;
    }
    limits.check_subspaces(spaces.len() as u64)?;
    Ok(EigenGrading { n, spaces })
}

/// Eigenspaces of a normal matrix, as (eigenvalue, orthonormal basis) pairs.
fn split_normal(b: &CMatrix) -> Result<Vec<(Complex<f64>, CMatrix)>> {
    let i = Complex::new(0.0, 1.0);
    let h = (b + b.adjoint()).scale(0.5);
    let k = (b - b.adjoint()) * (Complex::new(0.5, 0.0) / i);
    let mut out = Vec::new();
    for (re, u) in hermitian_clusters(&h)? {
        let kr = u.adjoint() * &k * &u;
        for (im, w) in hermitian_clusters(&kr)? {
            out.push((Complex::new(re, im), &u * w));
        }
    }
    Ok(out)
}

/// Groups the eigenvectors of a Hermitian matrix by eigenvalue.
fn hermitian_clusters(h: &CMatrix) -> Result<Vec<(f64, CMatrix)>> {
    let sym = (h + h.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for w in 0..order.len() {
        let idx = order[w];
        if w > 0 {
            let gap = eig.eigenvalues[idx] - eig.eigenvalues[order[w - 1]];
            if gap > CLUSTER_TOL && gap < SEPARATION_FLOOR {
                return Err(Error::NumericalSeparation(format!(
                    "eigenvalue gap {gap:.3e} lies between {CLUSTER_TOL:e} and {SEPARATION_FLOOR:e}"
                )));
            }
            if gap <= CLUSTER_TOL {
                groups.last_mut().expect("nonempty").push(idx);
                continue;
            }
        }
        groups.push(vec![idx]);
    }
    Ok(groups
        .into_iter()
        .map(|g| {
            let value = g.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / g.len() as f64;
            let cols: Vec<_> = g
                .iter()
                .map(|&i| eig.eigenvectors.column(i).into_owned())
                .collect();
            (value, CMatrix::from_columns(&cols))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::{build_grading, cartan_representative, mad_generators, MadGroupDescriptor};
    use super::*;
    use crate::pauli::{p_matrix, q_matrix};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn pauli_three() {
        let gens = [
            InnerAutomorphism::from_monomial(q_matrix(3)),
            InnerAutomorphism::from_monomial(p_matrix(3)),
        ];
        let eg = joint_eigenspaces(&gens, 3, &limits()).unwrap();
        assert_eq!(eg.spaces.len(), 9);
        assert!(eg.spaces.iter().all(|s| s.dim() == 1));
        let g = build_grading(&MadGroupDescriptor::new(vec![3], 1).unwrap(), &limits()).unwrap();
        let m = eg.match_grading(&g).unwrap();
        assert!(m.within(1e-8), "{m:?}");
    }

    #[test]
    fn identity_generator() {
        let eg = joint_eigenspaces(&[InnerAutomorphism::identity(3)], 3, &limits()).unwrap();
        assert_eq!(eg.spaces.len(), 1);
        assert_eq!(eg.spaces[0].dim(), 9);
        assert!((eg.spaces[0].eigenvalues[0] - Complex::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cartan_three() {
        let eg = joint_eigenspaces(&[cartan_representative(3).unwrap()], 3, &limits()).unwrap();
        let mut dims: Vec<usize> = eg.spaces.iter().map(EigenSpace::dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, [1, 1, 1, 1, 1, 1, 3]);
        let g = build_grading(&MadGroupDescriptor::new(vec![], 3).unwrap(), &limits()).unwrap();
        assert!(eg.match_grading(&g).unwrap().within(1e-8));
    }

    #[test]
    fn mixed_descriptors_match() {
        for d in super::super::enumerate_mad_groups(6).unwrap() {
            let gens = mad_generators(&d).unwrap();
            let eg = joint_eigenspaces(&gens, 6, &limits()).unwrap();
            let g = build_grading(&d, &limits()).unwrap();
            let m = eg.match_grading(&g).unwrap();
            assert!(m.within(1e-8), "{d}: {}", m.max_distance);
        }
    }

    #[test]
    fn rejects_non_commuting() {
        let gens = [
            InnerAutomorphism::from_monomial(p_matrix(2)),
            cartan_representative(2).unwrap(),
        ];
        assert!(matches!(
            joint_eigenspaces(&gens, 2, &limits()),
            Err(Error::NonCommuting(_))
        ));
    }

    #[test]
    fn reports_ambiguous_gap() {
        let h = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex::new(0.0, 0.0),
            Complex::new(1e-6, 0.0),
        ]));
        assert!(matches!(
            hermitian_clusters(&h),
            Err(Error::NumericalSeparation(_))
        ));
    }
}
