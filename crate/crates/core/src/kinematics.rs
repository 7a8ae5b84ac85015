//! Systems of imprimitivity on finite Abelian configuration groups.
//!
//! A configuration group `Z_{n_1} × ... × Z_{n_s}` acts on itself by
//! translation. Group elements and configuration points are index tuples,
//! linearized in row-major order (last factor fastest); the same convention
//! fixes the Kronecker product of matrices, so tensor statements reduce to
//! literal equalities of monomial matrices.

use std::collections::HashMap;
use std::fmt;

use nalgebra::{Complex, DMatrix};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monomial::{sum_phases, MonomialMatrix, PartialMonomial, Phase};
use crate::numtheory::crt_split;
use crate::pauli::{
    certify_orthonormal, p_matrix, q_matrix, schwinger_basis, GramCertificate, WeightedMonomial,
};

/// `Z_{n_1} × ... × Z_{n_s}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConfigGroup {
    orders: Vec<u64>,
}

impl ConfigGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::invalid("cyclic orders must be >= 1"));
        }
        Ok(ConfigGroup { orders })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Row-major index of a tuple (components reduced modulo their orders).
    pub fn linear_index(&self, tuple: &[u64]) -> usize {
        assert_eq!(tuple.len(), self.orders.len(), "tuple length");
        tuple
            .iter()
            .zip(&self.orders)
            .fold(0u64, |acc, (&g, &n)| acc * n + g % n) as usize
    }

    pub fn element(&self, index: usize) -> Vec<u64> {
        let mut rest = index as u64;
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = rest % n;
            rest /= n;
        }
        out
    }

    /// Index of `a - b`.
    pub fn difference(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.element(a), self.element(b));
        let diff: Vec<u64> = ta
            .iter()
            .zip(&tb)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + n - y) % n)
            .collect();
        self.linear_index(&diff)
    }

    /// Index of `a + b`.
    pub fn sum(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.element(a), self.element(b));
        let s: Vec<u64> = ta.iter().zip(&tb).map(|(&x, &y)| x + y).collect();
        self.linear_index(&s)
    }

    pub fn product(&self, other: &ConfigGroup) -> ConfigGroup {
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        ConfigGroup { orders }
    }
}

impl fmt::Display for ConfigGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z_{n}")).collect();
        if parts.is_empty() {
            write!(f, "Z_1")
        } else {
            write!(f, "{}", parts.join(" × "))
        }
    }
}

/// Counts of the identities examined when a system is certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemCertificate {
    pub homomorphism_pairs: u64,
    pub pvm_pairs: u64,
    pub covariance_pairs: u64,
}

/// A representation `U` of the configuration group together with a
/// projection-valued measure `E` on it, satisfying
/// `U(j) E(ρ) U(j)^{-1} = E(ρ - j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprimitivitySystem {
    config: ConfigGroup,
    u: Vec<MonomialMatrix>,
    e: Vec<PartialMonomial>,
    certificate: SystemCertificate,
}

impl ImprimitivitySystem {
    pub fn config(&self) -> &ConfigGroup {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.u.first().map_or(0, MonomialMatrix::dim)
    }

    /// `U(j)` for the linear group index `j`.
    pub fn u(&self, j: usize) -> &MonomialMatrix {
        &self.u[j]
    }

    /// `E(ρ)` for the linear point index `ρ`.
    pub fn e(&self, rho: usize) -> &PartialMonomial {
        &self.e[rho]
    }

    pub fn representation(&self) -> &[MonomialMatrix] {
        &self.u
    }

    pub fn projectors(&self) -> &[PartialMonomial] {
        &self.e
    }

    pub fn certificate(&self) -> SystemCertificate {
        self.certificate
    }

    fn assemble(
        config: ConfigGroup,
        u: Vec<MonomialMatrix>,
        e: Vec<PartialMonomial>,
    ) -> Result<Self> {
        let mut system = ImprimitivitySystem {
            config,
            u,
            e,
            certificate: SystemCertificate {
                homomorphism_pairs: 0,
                pvm_pairs: 0,
                covariance_pairs: 0,
            },
        };
        system.certificate = system.verify()?;
        Ok(system)
    }

    /// Exhaustively checks the homomorphism law, the PVM axioms and covariance.
    pub fn verify(&self) -> Result<SystemCertificate> {
        let order = self.config.order() as usize;
        let dim = self.dim();
        let mut homomorphism_pairs = 0;
        for a in 0..order {
            for b in 0..order {
                if self.u[a].mul(&self.u[b])? != self.u[self.config.sum(a, b)] {
                    return Err(Error::verification(
                        "U(j) U(j') = U(j + j')",
                        format!(
                            "fails at j = {:?}, j' = {:?}",
                            self.config.element(a),
                            self.config.element(b)
                        ),
                    ));
                }
                homomorphism_pairs += 1;
            }
        }
        let mut pvm_pairs = 0;
        for a in 0..order {
            for b in 0..order {
                let prod = self.e[a].mul(&self.e[b])?;
                let ok = if a == b {
                    prod == self.e[a]
                } else {
                    prod.is_zero()
                };
                if !ok {
                    return Err(Error::verification(
                        "E(ρ) E(σ) = δ E(ρ)",
                        format!("fails at ρ = {a}, σ = {b}"),
                    ));
                }
                pvm_pairs += 1;
            }
        }
        let mut cells: HashMap<(usize, usize), Vec<Phase>> = HashMap::new();
        for proj in &self.e {
            for (r, c, p) in proj.support() {
                cells.entry((r, c)).or_default().push(p);
            }
        }
        for r in 0..dim {
            let diag = sum_phases(cells.remove(&(r, r)).unwrap_or_default())?;
            if !diag.is_one() {
                return Err(Error::verification(
                    "Σ E(ρ) = I",
                    format!("diagonal entry {r} = {diag}"),
                ));
            }
        }
        for ((r, c), phases) in cells {
            if !sum_phases(phases)?.is_zero() {
                return Err(Error::verification(
                    "Σ E(ρ) = I",
                    format!("off-diagonal entry ({r}, {c})"),
                ));
            }
        }
        let mut covariance_pairs = 0;
        for j in 0..order {
            let uj = PartialMonomial::from(&self.u[j]);
            let uj_inv = uj.adjoint();
            for rho in 0..order {
                let lhs = uj.mul(&self.e[rho])?.mul(&uj_inv)?;
                if lhs != self.e[self.config.difference(rho, j)] {
                    return Err(Error::verification(
                        "U(j) E(ρ) U(j)^{-1} = E(ρ - j)",
                        format!("fails at j = {j}, ρ = {rho}"),
                    ));
                }
                covariance_pairs += 1;
            }
        }
        Ok(SystemCertificate {
            homomorphism_pairs,
            pvm_pairs,
            covariance_pairs,
        })
    }

    /// `(ψ, E(ρ) ψ) = |ψ_ρ|²` for a state normalized to within `1e-9`.
    pub fn position_probability(&self, psi: &[Complex<f64>], rho: usize) -> Result<f64> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: psi.len(),
                right: self.dim(),
            });
        }
        if rho >= self.e.len() {
            return Err(Error::invalid(format!(
                "point {rho} outside the configuration space"
            )));
        }
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "state is not normalized: (ψ, ψ) = {norm}"
            )));
        }
        let prob = self.e[rho]
            .support()
            .map(|(r, c, p)| psi[r].conj() * p.to_complex() * psi[c])
            .sum::<Complex<f64>>();
        Ok(prob.re)
    }

    /// Dimension of the commutant of `{U(j)} ∪ {E(ρ)}`, computed numerically
    /// from the singular values of the stacked commutator equations with
    /// absolute tolerance `1e-8`. A value of 1 certifies irreducibility.
    pub fn commutant_dimension(&self, limits: &Limits) -> Result<usize> {
        let n = self.dim();
        limits.check_matrix_n(n as u64)?;
        let mut generators: Vec<DMatrix<Complex<f64>>> = Vec::new();
        for (k, _) in self.config.orders().iter().enumerate() {
            let mut unit = vec![0u64; self.config.orders().len()];
            unit[k] = 1;
            generators.push(self.u[self.config.linear_index(&unit)].to_dense());
        }
        generators.extend(self.e.iter().map(PartialMonomial::to_dense));
        commutant_dimension(&generators, 1e-8)
    }
}

/// Null-space dimension of `X ↦ (A X - X A)_A` over the given matrices.
pub fn commutant_dimension(generators: &[DMatrix<Complex<f64>>], tol: f64) -> Result<usize> {
    let Some(first) = generators.first() else {
        return Err(Error::invalid("no generators"));
    };
    let n = first.nrows();
    let id = DMatrix::<Complex<f64>>::identity(n, n);
    let mut stacked = DMatrix::<Complex<f64>>::zeros(generators.len() * n * n, n * n);
    for (g, a) in generators.iter().enumerate() {
        // row-major vec: vec(AX) = (A ⊗ I) vec X, vec(XA) = (I ⊗ Aᵀ) vec X
        let block = a.kronecker(&id) - id.kronecker(&a.transpose());
        stacked
            .view_mut((g * n * n, 0), (n * n, n * n))
            .copy_from(&block);
    }
    let svd = stacked.svd(false, false);
    Ok(svd.singular_values.iter().filter(|&&s| s < tol).count())
}

/// The unique irreducible system on `config`: `U(j) = ⊗_i P_{n_i}^{j_i}` and
/// `E(ρ)` the projector onto the basis vector `e_ρ`.
pub fn regular_system(config: &ConfigGroup, limits: &Limits) -> Result<ImprimitivitySystem> {
    let order = config.order();
    limits.check_matrix_n(order)?;
    let shifts: Vec<MonomialMatrix> = config
        .orders()
        .iter()
        .map(|&n| p_matrix(n as usize))
        .collect();
    let u = (0..order as usize)
        .map(|j| {
            config
                .element(j)
                .iter()
                .zip(&shifts)
                .fold(MonomialMatrix::identity(1), |acc, (&g, p)| {
                    acc.kron(&p.pow(g as i64))
                })
        })
        .collect();
    let e = (0..order as usize)
        .map(|rho| PartialMonomial::unit(order as usize, rho, rho))
        .collect();
    ImprimitivitySystem::assemble(config.clone(), u, e)
}

/// The system on the direct product group with Kronecker-product operators.
pub fn tensor_system(
    a: &ImprimitivitySystem,
    b: &ImprimitivitySystem,
    limits: &Limits,
) -> Result<ImprimitivitySystem> {
    let config = a.config.product(&b.config);
    limits.check_matrix_n(config.order())?;
    let u =
        a.u.iter()
            .flat_map(|x| b.u.iter().map(move |y| x.kron(y)))
            .collect();
    let e =
        a.e.iter()
            .flat_map(|x| b.e.iter().map(move |y| x.kron(y)))
            .collect();
    ImprimitivitySystem::assemble(config, u, e)
}

/// The CRT permutation witnessing that the `Z_N` system is unitarily
/// equivalent to the tensor product over the prime-power moduli of `N`.
#[derive(Debug, Clone)]
pub struct CrtEquivalence {
    pub n: u64,
    pub moduli: Vec<u64>,
    /// `image[x]` is the row-major index of `(x mod N_1, ..., x mod N_f)`.
    pub image: Vec<usize>,
    /// `T` with `T e_x = e_{image[x]}`.
    pub permutation: MonomialMatrix,
    /// `c_k` with `T Q_N T^{-1} = ⊗_k Q_{N_k}^{c_k}`; `c_k = (N/N_k)^{-1} mod N_k`.
    pub clock_exponents: Vec<u64>,
    pub checks: Vec<Check>,
}

impl CrtEquivalence {
    pub fn passed(&self) -> bool {
        Check::all_passed(&self.checks)
    }

    /// Cycle notation of `x ↦ image[x]`, fixed points omitted; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        cycle_notation(&self.image)
    }
}

pub fn cycle_notation(image: &[usize]) -> String {
    let mut seen = vec![false; image.len()];
    let mut out = String::new();
    for start in 0..image.len() {
        if seen[start] || image[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x.to_string());
            x = image[x];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

pub fn crt_equivalence(n: u64, limits: &Limits) -> Result<CrtEquivalence> {
    limits.check_matrix_n(n)?;
    let split = crt_split(n)?;
    let moduli = split.moduli();
    let target = ConfigGroup::new(moduli.clone())?;
    let image: Vec<usize> = (0..n)
        .map(|x| target.linear_index(&split.residues(x)))
        .collect();
    let t = MonomialMatrix::from_column_images(&image)?;
    let t_inv = t.adjoint();
    let tp = PartialMonomial::from(&t);
    let tp_inv = tp.adjoint();

    let cyclic = regular_system(&ConfigGroup::cyclic(n)?, limits)?;
    let factors: Vec<ImprimitivitySystem> = moduli
        .iter()
        .map(|&m| regular_system(&ConfigGroup::cyclic(m)?, limits))
        .collect::<Result<_>>()?;
    let mut tensor = factors[0].clone();
    for f in &factors[1..] {
        tensor = tensor_system(&tensor, f, limits)?;
    }

    let mut checks = Vec::new();
    let u_ok = (0..n as usize).all(|j| {
        t.mul(cyclic.u(j))
            .and_then(|m| m.mul(&t_inv))
            .is_ok_and(|m| &m == tensor.u(image[j]))
    });
    checks.push(Check::new("T U_N(j) T^-1 = ⊗ U_Nk(j mod N_k)", u_ok, n));
    let e_ok = (0..n as usize).all(|rho| {
        tp.mul(cyclic.e(rho))
            .and_then(|m| m.mul(&tp_inv))
            .is_ok_and(|m| &m == tensor.e(image[rho]))
    });
    checks.push(Check::new("T E_N(ρ) T^-1 = ⊗ E_Nk(ρ mod N_k)", e_ok, n));

    let kron_all = |mats: Vec<MonomialMatrix>| {
        mats.into_iter()
            .fold(MonomialMatrix::identity(1), |acc, m| acc.kron(&m))
    };
    let shift_target = kron_all(moduli.iter().map(|&m| p_matrix(m as usize)).collect());
    let shift_ok = t.conjugate(&p_matrix(n as usize))? == shift_target;
    checks.push(Check::new("T P_N T^-1 = ⊗ P_Nk", shift_ok, 1));
    let clock_exponents: Vec<u64> = split
        .components()
        .iter()
        .map(|c| c.cofactor_inverse)
        .collect();
    let clock_target = kron_all(
        moduli
            .iter()
            .zip(&clock_exponents)
            .map(|(&m, &c)| q_matrix(m as usize).pow(c as i64))
            .collect(),
    );
    let clock_ok = t.conjugate(&q_matrix(n as usize))? == clock_target;
    checks.push(Check::new("T Q_N T^-1 = ⊗ Q_Nk^c_k", clock_ok, 1));

    Ok(CrtEquivalence {
        n,
        moduli,
        image,
        permutation: t,
        clock_exponents,
        checks,
    })
}

/// One operator of a tensor Weyl system: the Kronecker product of
/// `S(ρ_i, j_i)` over the cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorWeylOperator {
    /// `(ρ_i, j_i)` per factor.
    pub labels: Vec<(u64, u64)>,
    pub operator: WeightedMonomial,
}

#[derive(Debug, Clone)]
pub struct WeylSystem {
    pub config: ConfigGroup,
    pub operators: Vec<TensorWeylOperator>,
    pub certificate: GramCertificate,
}

/// The `Π n_i²` Kronecker products of per-factor Schwinger operators, with
/// their exact orthonormality certificate.
pub fn weyl_system(config: &ConfigGroup, limits: &Limits) -> Result<WeylSystem> {
    let order = config.order();
    limits.check_matrix_n(order)?;
    let mut operators = vec![TensorWeylOperator {
        labels: Vec::new(),
        operator: WeightedMonomial {
            monomial: MonomialMatrix::identity(1),
            norm: 1,
        },
    }];
    for &n in config.orders() {
        let basis = schwinger_basis(n);
        operators = operators
            .iter()
            .flat_map(|acc| {
                basis.iter().map(move |s| {
                    let mut labels = acc.labels.clone();
                    labels.push((s.rho, s.j));
                    TensorWeylOperator {
                        labels,
                        operator: WeightedMonomial {
                            monomial: acc.operator.monomial.kron(&s.operator.monomial),
                            norm: acc.operator.norm * s.operator.norm,
                        },
                    }
                })
            })
            .collect();
    }
    let plain: Vec<WeightedMonomial> = operators.iter().map(|o| o.operator.clone()).collect();
    let certificate = certify_orthonormal(&plain)?;
    Ok(WeylSystem {
        config: config.clone(),
        operators,
        certificate,
    })
}
