//! Generalized Pauli matrices, the finite Weyl-Heisenberg group and the
//! Schwinger operator basis.
//!
//! `Q_N = diag(1, ω, ..., ω^{N-1})` is the clock and `P_N` the one-step shift
//! with `(P_N)_{ρσ} = δ_{ρ+1,σ}`; they satisfy `P Q = ω Q P`. Every group
//! element `ω^j Q^k P^l` is held exactly as a [`MonomialMatrix`], and every
//! identity is verified without floating point.

use std::collections::{HashMap, HashSet};

use nalgebra::{Complex, DMatrix};
use num_traits::Zero;

use crate::cyclotomic::{CyclotomicScalar, Rational};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monomial::{MonomialMatrix, Phase};
use crate::numtheory::mod_inverse;

/// Clock matrix `Q_N`.
pub fn q_matrix(n: usize) -> MonomialMatrix {
    assert!(n >= 1, "dimension must be positive");
    MonomialMatrix::diagonal((0..n).map(|r| Phase::root(n as u64, r as i64)).collect())
}

/// Shift matrix `P_N`, `(P_N)_{ρσ} = δ_{ρ+1,σ}`.
pub fn p_matrix(n: usize) -> MonomialMatrix {
    assert!(n >= 1, "dimension must be positive");
    MonomialMatrix::new((0..n).map(|r| (r + 1) % n).collect(), vec![Phase::ONE; n])
        .expect("cyclic shift is a permutation")
}

/// The element `ω^phase Q^q P^p` of the Weyl-Heisenberg group `Π_N`, in its
/// unique normal form with exponents in `Z_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhGroupElement {
    pub n: u64,
    pub phase: u64,
    pub q: u64,
    pub p: u64,
}

impl WhGroupElement {
    pub fn new(n: u64, phase: i64, q: i64, p: i64) -> Self {
        assert!(n >= 1, "dimension must be positive");
        let m = n as i64;
        WhGroupElement {
            n,
            phase: phase.rem_euclid(m) as u64,
            q: q.rem_euclid(m) as u64,
            p: p.rem_euclid(m) as u64,
        }
    }

    pub fn identity(n: u64) -> Self {
        Self::new(n, 0, 0, 0)
    }

    /// `(ω^a Q^k P^l)(ω^b Q^k' P^l') = ω^{a+b+l k'} Q^{k+k'} P^{l+l'}`, from
    /// `P^l Q^k' = ω^{l k'} Q^k' P^l`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n as usize,
                right: other.n as usize,
            });
        }
        let n = self.n as u128;
        let phase =
            (self.phase as u128 + other.phase as u128 + self.p as u128 * other.q as u128) % n;
        Ok(WhGroupElement {
            n: self.n,
            phase: phase as u64,
            q: (self.q + other.q) % self.n,
            p: (self.p + other.p) % self.n,
        })
    }

    pub fn inverse(&self) -> Self {
        // (ω^a Q^k P^l)^{-1} = P^{-l} Q^{-k} ω^{-a} = ω^{-a + l k} Q^{-k} P^{-l}
        let n = self.n as i64;
        let lk = (self.p as i128 * self.q as i128 % n as i128) as i64;
        Self::new(
            self.n,
            -(self.phase as i64) + lk,
            -(self.q as i64),
            -(self.p as i64),
        )
    }

    pub fn is_central(&self) -> bool {
        self.q == 0 && self.p == 0
    }

    /// The exact matrix `ω^phase Q^q P^p`.
    pub fn to_matrix(&self) -> MonomialMatrix {
        let n = self.n as usize;
        let level = self.n;
        // (Q^q P^p)_{ρ, ρ+p} = ω^{qρ}
        let perm = (0..n).map(|r| (r + self.p as usize) % n).collect();
        let phases = (0..n)
            .map(|r| Phase::root(level, (self.phase + self.q * r as u64) as i64))
            .collect();
        MonomialMatrix::new(perm, phases).expect("shift is a permutation")
    }
}

/// Letters of a word in the generators of `Π_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Omega,
    Q,
    P,
}

/// Reduces a word `g_1^{e_1} g_2^{e_2} ...` to normal form.
pub fn wh_normal_form(word: &[(Generator, i64)], n: u64) -> WhGroupElement {
    word.iter()
        .fold(WhGroupElement::identity(n), |acc, &(g, e)| {
            let letter = match g {
                Generator::Omega => WhGroupElement::new(n, e, 0, 0),
                Generator::Q => WhGroupElement::new(n, 0, e, 0),
                Generator::P => WhGroupElement::new(n, 0, 0, e),
            };
            acc.mul(&letter).expect("same dimension")
        })
}

/// All `N³` normal forms.
pub fn wh_elements(n: u64) -> impl Iterator<Item = WhGroupElement> {
    (0..n).flat_map(move |j| {
        (0..n).flat_map(move |k| {
            (0..n).map(move |l| WhGroupElement::new(n, j as i64, k as i64, l as i64))
        })
    })
}

/// `|Π_N|`, counted as the number of distinct matrices among all normal forms.
pub fn wh_group_order(n: u64, limits: &Limits) -> Result<u64> {
    limits.check_matrix_n(n)?;
    let distinct: HashSet<MonomialMatrix> = wh_elements(n).map(|g| g.to_matrix()).collect();
    Ok(distinct.len() as u64)
}

/// Elements of `Π_N` commuting with both generators `Q` and `P`.
pub fn wh_center(n: u64, limits: &Limits) -> Result<Vec<WhGroupElement>> {
    limits.check_matrix_n(n)?;
    let q = q_matrix(n as usize);
    let p = p_matrix(n as usize);
    let mut center = Vec::new();
    for g in wh_elements(n) {
        let m = g.to_matrix();
        if m.mul(&q)? == q.mul(&m)? && m.mul(&p)? == p.mul(&m)? {
            center.push(g);
        }
    }
    Ok(center)
}

/// Discrete Weyl displacement operator `W(ρ, j) = ω^{jρ/2} Q^ρ P^j` for odd `N`,
/// where `1/2` is the inverse of 2 modulo `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylOperator {
    pub rho: u64,
    pub j: u64,
    pub element: WhGroupElement,
}

impl WeylOperator {
    pub fn n(&self) -> u64 {
        self.element.n
    }

    pub fn to_matrix(&self) -> MonomialMatrix {
        self.element.to_matrix()
    }
}

fn half(n: u64) -> Result<u64> {
    mod_inverse(2, n).filter(|_| n % 2 == 1).ok_or_else(|| {
        Error::invalid(format!(
            "Weyl operators need odd N (got {n}); use schwinger_basis for even dimensions"
        ))
    })
}

pub fn weyl_operator(n: u64, rho: i64, j: i64) -> Result<WeylOperator> {
    let inv2 = half(n)? as i128;
    let m = n as i64;
    let (rho, j) = (rho.rem_euclid(m), j.rem_euclid(m));
    let phase = (j as i128 * rho as i128 % n as i128 * inv2 % n as i128) as i64;
    Ok(WeylOperator {
        rho: rho as u64,
        j: j as u64,
        element: WhGroupElement::new(n, phase, rho, j),
    })
}

/// Exponent `c` in `W(ρ,j) W(ρ',j') = ω^c W(ρ+ρ', j+j')`, namely
/// `c = (ρ' j - ρ j') / 2 mod N`.
pub fn ray_cocycle(n: u64, (rho, j): (u64, u64), (rho2, j2): (u64, u64)) -> Result<u64> {
    let inv2 = half(n)? as i128;
    let n = n as i128;
    let diff = (rho2 as i128 * j as i128 - rho as i128 * j2 as i128).rem_euclid(n);
    Ok((diff * inv2 % n) as u64)
}

/// Checks the ray-representation law exactly on monomial matrices for one pair.
pub fn check_ray_law(a: &WeylOperator, b: &WeylOperator) -> Result<bool> {
    let n = a.n();
    let lhs = a.to_matrix().mul(&b.to_matrix())?;
    let c = ray_cocycle(n, (a.rho, a.j), (b.rho, b.j))?;
    let sum = weyl_operator(n, (a.rho + b.rho) as i64, (a.j + b.j) as i64)?;
    let rhs = sum.to_matrix().scale(Phase::root(n, c as i64));
    Ok(lhs == rhs)
}

/// A monomial matrix with the symbolic weight `1/√norm`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedMonomial {
    pub monomial: MonomialMatrix,
    /// The operator is `monomial / sqrt(norm)`.
    pub norm: u64,
}

impl WeightedMonomial {
    /// Hilbert-Schmidt inner product `Tr(A B^*)`; exact when both weights agree,
    /// since `1/√a · 1/√a = 1/a`.
    pub fn hs_inner(&self, other: &Self) -> Result<CyclotomicScalar> {
        if self.norm != other.norm {
            return Err(Error::invalid(
                "weights differ; inner product leaves the cyclotomic field",
            ));
        }
        Ok(self
            .monomial
            .hs_inner(&other.monomial)?
            .scale(Rational::new(1, self.norm as i128)))
    }

    pub fn to_dense(&self) -> DMatrix<Complex<f64>> {
        self.monomial.to_dense() / Complex::new((self.norm as f64).sqrt(), 0.0)
    }
}

/// Basis element `S(ρ, j) = Q^ρ P^j / √N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchwingerOperator {
    pub rho: u64,
    pub j: u64,
    pub operator: WeightedMonomial,
}

/// The `N²` operators `S(ρ, j)` ordered by `ρ`, then `j`.
pub fn schwinger_basis(n: u64) -> Vec<SchwingerOperator> {
    (0..n)
        .flat_map(|rho| (0..n).map(move |j| (rho, j)))
        .map(|(rho, j)| SchwingerOperator {
            rho,
            j,
            operator: WeightedMonomial {
                monomial: WhGroupElement::new(n, 0, rho as i64, j as i64).to_matrix(),
                norm: n,
            },
        })
        .collect()
}

/// Outcome of an exact Gram-matrix check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GramCertificate {
    pub basis_size: usize,
    pub pairs_checked: usize,
}

/// Verifies that the Hilbert-Schmidt Gram matrix of `ops` is exactly the identity.
///
/// Operators are bucketed by their permutation. `Tr(A B^*)` only collects
/// rows where the permutations of `A` and `B` agree, so a pair of buckets whose
/// permutations agree nowhere contributes exact zeros without computing traces.
pub fn certify_orthonormal(ops: &[WeightedMonomial]) -> Result<GramCertificate> {
    let mut buckets: Vec<(&[usize], Vec<usize>)> = Vec::new();
    let mut lookup: HashMap<&[usize], usize> = HashMap::new();
    for (i, op) in ops.iter().enumerate() {
        let key = op.monomial.columns();
        let slot = *lookup.entry(key).or_insert_with(|| {
            buckets.push((key, Vec::new()));
            buckets.len() - 1
        });
        buckets[slot].1.push(i);
    }
    let mut pairs_checked = 0;
    for (perm_a, members_a) in &buckets {
        for (perm_b, members_b) in &buckets {
            if perm_a.len() != perm_b.len() {
                return Err(Error::DimensionMismatch {
                    left: perm_a.len(),
                    right: perm_b.len(),
                });
            }
            pairs_checked += members_a.len() * members_b.len();
            if perm_a.iter().zip(perm_b.iter()).all(|(x, y)| x != y) {
                continue;
            }
            for &a in members_a {
                for &b in members_b {
                    let g = ops[a].hs_inner(&ops[b])?;
                    let ok = if a == b { g.is_one() } else { g.is_zero() };
                    if !ok {
                        return Err(Error::verification(
                            "Hilbert-Schmidt orthonormality",
                            format!("Gram entry ({a}, {b}) = {g}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(GramCertificate {
        basis_size: ops.len(),
        pairs_checked,
    })
}

/// Coefficients of a matrix in the Schwinger basis.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub n: usize,
    /// `coefficients[(ρ, j)] = Tr(X S(ρ,j)^*)`.
    pub coefficients: DMatrix<Complex<f64>>,
}

impl Expansion {
    /// `Σ c_{ρj} S(ρ, j)`.
    pub fn reconstruct(&self) -> DMatrix<Complex<f64>> {
        let n = self.n;
        let mut out = DMatrix::zeros(n, n);
        for s in schwinger_basis(n as u64) {
            let c = self.coefficients[(s.rho as usize, s.j as usize)];
            if !c.is_zero() {
                out += s.operator.to_dense() * c;
            }
        }
        out
    }

    /// Labels `(ρ, j)` whose coefficient exceeds `tol` in modulus.
    pub fn support(&self, tol: f64) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|r| (0..n).map(move |j| (r, j)))
            .filter(|&(r, j)| self.coefficients[(r, j)].norm() > tol)
            .collect()
    }
}

/// Expands `x` in the Schwinger basis; reconstruction is accurate to roughly
/// `N² · ε · ‖x‖`.
pub fn expand_in_basis(x: &DMatrix<Complex<f64>>, n: usize) -> Result<Expansion> {
    if x.nrows() != n || x.ncols() != n {
        return Err(Error::DimensionMismatch {
            left: x.nrows().max(x.ncols()),
            right: n,
        });
    }
    let mut coefficients = DMatrix::zeros(n, n);
    for s in schwinger_basis(n as u64) {
        let c = (x * s.operator.to_dense().adjoint()).trace();
        coefficients[(s.rho as usize, s.j as usize)] = c;
    }
    Ok(Expansion { n, coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn dense_eq(a: &DMatrix<Complex<f64>>, b: &DMatrix<Complex<f64>>) -> bool {
        (a - b).norm() < 1e-10
    }

    #[test]
    fn pauli_two_is_sigma_z_and_x() {
        let z = q_matrix(2).to_dense();
        let x = p_matrix(2).to_dense();
        let one = Complex::new(1.0, 0.0);
        let sigma_z = DMatrix::from_row_slice(2, 2, &[one, Complex::zero(), Complex::zero(), -one]);
        let sigma_x = DMatrix::from_row_slice(2, 2, &[Complex::zero(), one, one, Complex::zero()]);
        assert!(dense_eq(&z, &sigma_z));
        assert!(dense_eq(&x, &sigma_x));
        assert!(q_matrix(1).is_identity() && p_matrix(1).is_identity());
    }

    #[test]
    fn clock_three() {
        let q = q_matrix(3);
        assert_eq!(
            q.phases(),
            &[Phase::ONE, Phase::root(3, 1), Phase::root(3, 2)]
        );
        assert_eq!(q.exponent_rows(3), vec!["w^0 0 0", "0 w^1 0", "0 0 w^2"]);
    }

    #[test]
    fn shift_order() {
        assert!(p_matrix(4).pow(4).is_identity());
        assert!(!p_matrix(4).pow(2).is_identity());
        let p5 = p_matrix(5);
        assert!(p5.mul(&p5.adjoint()).unwrap().is_identity());
    }

    #[test]
    fn commutation_relation() {
        let (q, p) = (q_matrix(3), p_matrix(3));
        assert_eq!(
            p.mul(&q).unwrap(),
            q.mul(&p).unwrap().scale(Phase::root(3, 1))
        );
    }

    #[test]
    fn squared_qp() {
        let n = 4;
        let qp = q_matrix(n).mul(&p_matrix(n)).unwrap();
        let expected = WhGroupElement::new(4, 1, 2, 2).to_matrix();
        assert_eq!(qp.mul(&qp).unwrap(), expected);
        let g = WhGroupElement::new(4, 0, 1, 1);
        assert_eq!(g.mul(&g).unwrap(), WhGroupElement::new(4, 1, 2, 2));
    }

    #[test]
    fn normal_forms() {
        for n in 1..=7 {
            assert_eq!(
                wh_normal_form(&[(P, 1), (Q, 1)], n),
                WhGroupElement::new(n, 1, 1, 1)
            );
            assert_eq!(
                wh_normal_form(&[(Q, n as i64)], n),
                WhGroupElement::identity(n)
            );
        }
        // P² Q³ P Q in dimension 5, against the product of explicit matrices.
        let word = [(P, 2), (Q, 3), (P, 1), (Q, 1)];
        let (q, p) = (q_matrix(5), p_matrix(5));
        let by_matrices = p
            .pow(2)
            .mul(&q.pow(3))
            .unwrap()
            .mul(&p)
            .unwrap()
            .mul(&q)
            .unwrap();
        let nf = wh_normal_form(&word, 5);
        assert_eq!(nf.to_matrix(), by_matrices);
        // ω^{2·3 + 3·1} Q^4 P^3 = ω^9 = ω^4 in Z_5.
        assert_eq!(nf, WhGroupElement::new(5, 4, 4, 3));
    }

    #[test]
    fn inverse_is_inverse() {
        for g in wh_elements(4) {
            assert_eq!(g.mul(&g.inverse()).unwrap(), WhGroupElement::identity(4));
        }
    }

    #[test]
    fn group_order_and_center() {
        let limits = Limits::default();
        assert_eq!(wh_group_order(2, &limits).unwrap(), 8);
        assert_eq!(wh_group_order(3, &limits).unwrap(), 27);
        let center = wh_center(2, &limits).unwrap();
        let mats: Vec<_> = center.iter().map(|g| g.to_matrix()).collect();
        assert_eq!(
            mats,
            vec![
                MonomialMatrix::identity(2),
                MonomialMatrix::identity(2).scale(Phase::MINUS_ONE)
            ]
        );
        assert_eq!(wh_center(3, &limits).unwrap().len(), 3);
        let tight = Limits {
            max_matrix_n: 4,
            ..Limits::default()
        };
        assert!(matches!(
            wh_group_order(5, &tight),
            Err(Error::ResourceBound { .. })
        ));
    }

    #[test]
    fn center_commutes_with_every_qp() {
        let n = 5;
        let center = wh_center(n, &Limits::default()).unwrap();
        assert_eq!(center.len(), 5);
        for z in center {
            let zm = z.to_matrix();
            for k in 0..n as i64 {
                for l in 0..n as i64 {
                    let g = WhGroupElement::new(n, 0, k, l).to_matrix();
                    assert_eq!(zm.mul(&g).unwrap(), g.mul(&zm).unwrap());
                }
            }
        }
    }

    #[test]
    fn weyl_operator_examples() {
        assert!(weyl_operator(3, 0, 0).unwrap().to_matrix().is_identity());
        // W(1,1) = ω^{inv(2)} Q P with inv(2) = 2 mod 3.
        let w11 = weyl_operator(3, 1, 1).unwrap().to_matrix();
        let expected = q_matrix(3)
            .mul(&p_matrix(3))
            .unwrap()
            .scale(Phase::root(3, 2));
        assert_eq!(w11, expected);
        assert_eq!(w11.exponent_rows(3), vec!["0 w^2 0", "0 0 w^0", "w^1 0 0"]);
        assert!(weyl_operator(4, 1, 1).is_err());
    }

    #[test]
    fn weyl_two_orderings_agree() {
        // ω^{jρ/2} Q^ρ P^j = ω^{-jρ/2} P^j Q^ρ
        let n = 5u64;
        let inv2 = 3i64;
        for rho in 0..5i64 {
            for j in 0..5i64 {
                let w = weyl_operator(n, rho, j).unwrap().to_matrix();
                let other = p_matrix(5)
                    .pow(j)
                    .mul(&q_matrix(5).pow(rho))
                    .unwrap()
                    .scale(Phase::root(n, -(j * rho * inv2)));
                assert_eq!(w, other);
            }
        }
    }

    #[test]
    fn ray_law_dimension_five() {
        let n = 5u64;
        let ops: Vec<_> = (0..n)
            .flat_map(|r| (0..n).map(move |j| weyl_operator(n, r as i64, j as i64).unwrap()))
            .collect();
        for a in &ops {
            for b in &ops {
                assert!(check_ray_law(a, b).unwrap());
            }
        }
    }

    #[test]
    fn schwinger_two_is_pauli_basis() {
        let basis = schwinger_basis(2);
        assert_eq!(basis.len(), 4);
        let (q, p) = (q_matrix(2), p_matrix(2));
        let expected = [
            MonomialMatrix::identity(2),
            p.clone(),
            q.clone(),
            q.mul(&p).unwrap(),
        ];
        let got: Vec<_> = basis.iter().map(|s| s.operator.monomial.clone()).collect();
        assert_eq!(got, expected);
        let ops: Vec<_> = basis.into_iter().map(|s| s.operator).collect();
        assert_eq!(certify_orthonormal(&ops).unwrap().pairs_checked, 16);
    }

    #[test]
    fn schwinger_four_orthonormal() {
        let ops: Vec<_> = schwinger_basis(4).into_iter().map(|s| s.operator).collect();
        assert_eq!(certify_orthonormal(&ops).unwrap().pairs_checked, 256);
    }

    #[test]
    fn non_orthonormal_set_is_rejected() {
        let m = WeightedMonomial {
            monomial: q_matrix(3),
            norm: 3,
        };
        let err = certify_orthonormal(&[m.clone(), m]).unwrap_err();
        assert!(matches!(err, Error::Verification { .. }));
    }

    #[test]
    fn expansion_of_identity_and_clock() {
        let n = 3;
        let e = expand_in_basis(&MonomialMatrix::identity(n).to_dense(), n).unwrap();
        assert_eq!(e.support(1e-12), vec![(0, 0)]);
        assert!((e.coefficients[(0, 0)] - Complex::new(3f64.sqrt(), 0.0)).norm() < 1e-12);
        let e = expand_in_basis(&q_matrix(n).to_dense(), n).unwrap();
        assert_eq!(e.support(1e-12), vec![(1, 0)]);
        assert!(expand_in_basis(&DMatrix::zeros(2, 3), 3).is_err());
    }
}
