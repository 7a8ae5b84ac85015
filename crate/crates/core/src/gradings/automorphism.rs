//! Inner automorphisms `Ad_M(X) = M X M^{-1}` with exact representatives.

use std::collections::HashSet;

use nalgebra::{Complex, DMatrix};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::check::Check;
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monomial::{MonomialMatrix, Phase};
use crate::pauli::{p_matrix, q_matrix};

use super::MadGroupDescriptor;

/// `Ad_M` for `M = diag(scales) · monomial` with positive rational scales.
///
/// Representatives are only meaningful up to a nonzero scalar; equality of
/// automorphisms is [`InnerAutomorphism::projectively_equal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerAutomorphism {
    scales: Vec<Rational>,
    monomial: MonomialMatrix,
}

/// Normal form of a representative modulo scalars, used for hashing.
type ProjectiveKey = (Vec<usize>, Vec<Phase>, Vec<Rational>);

impl InnerAutomorphism {
    pub fn new(scales: Vec<Rational>, monomial: MonomialMatrix) -> Result<Self> {
        if scales.len() != monomial.dim() {
            return Err(Error::DimensionMismatch {
                left: scales.len(),
                right: monomial.dim(),
            });
        }
        if scales.iter().any(|s| !s.is_positive()) {
            return Err(Error::invalid("scales must be positive"));
        }
        Ok(InnerAutomorphism { scales, monomial })
    }

    pub fn from_monomial(monomial: MonomialMatrix) -> Self {
        InnerAutomorphism {
            scales: vec![Rational::one(); monomial.dim()],
            monomial,
        }
    }

    pub fn diagonal(scales: Vec<Rational>) -> Result<Self> {
        let n = scales.len();
        Self::new(scales, MonomialMatrix::identity(n))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_monomial(MonomialMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.monomial.dim()
    }

    pub fn scales(&self) -> &[Rational] {
        &self.scales
    }

    pub fn monomial(&self) -> &MonomialMatrix {
        &self.monomial
    }

    /// `Ad_M ∘ Ad_N = Ad_{MN}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let monomial = self.monomial.mul(&other.monomial)?;
        let scales = self
            .scales
            .iter()
            .zip(self.monomial.columns())
            .map(|(s, &c)| s * other.scales[c])
            .collect();
        Ok(InnerAutomorphism { scales, monomial })
    }

    /// `(Ad_M)^{-1} = Ad_{M^{-1}}`.
    pub fn inverse(&self) -> Self {
        let mut scales = vec![Rational::zero(); self.dim()];
        for (s, &c) in self.scales.iter().zip(self.monomial.columns()) {
            scales[c] = s.recip();
        }
        InnerAutomorphism {
            scales,
            monomial: self.monomial.adjoint(),
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..k {
            acc = acc.compose(self).expect("same dimension");
        }
        acc
    }

    pub fn kron(&self, other: &Self) -> Self {
        let scales = self
            .scales
            .iter()
            .flat_map(|a| other.scales.iter().map(move |b| a * b))
            .collect();
        InnerAutomorphism {
            scales,
            monomial: self.monomial.kron(&other.monomial),
        }
    }

    /// Representative divided by its first entry, so that `M` and `αM` share a key.
    fn projective_key(&self) -> ProjectiveKey {
        let (s0, a0) = (self.scales[0], self.monomial.phases()[0].inv());
        (
            self.monomial.columns().to_vec(),
            self.monomial.phases().iter().map(|p| p.mul(a0)).collect(),
            self.scales.iter().map(|s| s / s0).collect(),
        )
    }

    /// `Ad_M = Ad_N` iff `M = αN` for a scalar `α`.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.projective_key() == other.projective_key()
    }

    pub fn is_identity(&self) -> bool {
        self.projectively_equal(&Self::identity(self.dim()))
    }

    /// `Ad_M Ad_N = Ad_N Ad_M`, i.e. `MN = α NM`.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self
            .compose(other)?
            .projectively_equal(&other.compose(self)?))
    }

    /// `Ad_M(E_ij) = c · E_kl`, returned as `(|c|, arg c, k, l)`.
    pub fn apply_unit(&self, i: usize, j: usize) -> (Rational, Phase, usize, usize) {
        let n = self.dim();
        let mut preimage = vec![0; n];
        for (r, &c) in self.monomial.columns().iter().enumerate() {
            preimage[c] = r;
        }
        let (k, l) = (preimage[i], preimage[j]);
        let phases = self.monomial.phases();
        (
            self.scales[k] / self.scales[l],
            phases[k].mul(phases[l].inv()),
            k,
            l,
        )
    }

    /// The `N² × N²` matrix of `Ad_M` on row-major vectorized matrices, as one
    /// `(row, coefficient)` per column; `Ad_M` maps matrix units to multiples
    /// of matrix units, so the operator is itself monomial.
    pub fn operator_columns(&self) -> Vec<(usize, Complex<f64>)> {
        let n = self.dim();
        (0..n * n)
            .map(|col| {
                let (mag, phase, k, l) = self.apply_unit(col / n, col % n);
                (
                    k * n + l,
                    phase.to_complex() * mag.to_f64().expect("finite"),
                )
            })
            .collect()
    }

    pub fn operator_dense(&self) -> DMatrix<Complex<f64>> {
        let n2 = self.dim() * self.dim();
        let mut m = DMatrix::zeros(n2, n2);
        for (col, (row, c)) in self.operator_columns().into_iter().enumerate() {
            m[(row, col)] = c;
        }
        m
    }

    /// Exact normality test of the operator `Ad_M`: a monomial operator is
    /// normal iff the coefficient magnitude at each column equals the one
    /// landing in the row of the same index.
    pub fn is_normal(&self) -> bool {
        let n = self.dim();
        let mut column_mag = vec![Rational::zero(); n * n];
        let mut row_mag = vec![Rational::zero(); n * n];
        for (col, slot) in column_mag.iter_mut().enumerate() {
            let (mag, _, k, l) = self.apply_unit(col / n, col % n);
            *slot = mag;
            row_mag[k * n + l] = mag;
        }
        column_mag == row_mag
    }
}

/// `diag(p_1, ..., p_m)` over the first `m` primes, checked to be generic:
/// the ratios `p_i / p_j`, `i ≠ j`, are pairwise distinct and different from 1.
pub fn cartan_representative(m: usize) -> Result<InnerAutomorphism> {
    let primes: Vec<i128> = (2i128..)
        .filter(|&k| crate::numtheory::is_prime(k as u64))
        .take(m)
        .collect();
    let mut ratios = HashSet::new();
    for (i, &a) in primes.iter().enumerate() {
        for (j, &b) in primes.iter().enumerate() {
            if i != j {
                let r = Rational::new(a, b);
                if r.is_one() || !ratios.insert(r) {
                    return Err(Error::verification(
                        "generic diagonal representative",
                        format!("ratio λ_{i}/λ_{j} repeats"),
                    ));
                }
            }
        }
    }
    InnerAutomorphism::diagonal(primes.into_iter().map(Rational::from_integer).collect())
}

/// Canonical generators of the MAD-group `d`: `Ad_Q` and `Ad_P` embedded in
/// each Pauli factor, then the generic `Ad_D` of the `D(m)` factor when `m > 1`.
pub fn mad_generators(d: &MadGroupDescriptor) -> Result<Vec<InnerAutomorphism>> {
    let factors = d.pauli_factors();
    let m = d.diagonal_size() as usize;
    let embed = |k: usize, x: MonomialMatrix| {
        let mut acc = MonomialMatrix::identity(1);
        for (i, &q) in factors.iter().enumerate() {
            acc = acc.kron(&if i == k {
                x.clone()
            } else {
                MonomialMatrix::identity(q as usize)
            });
        }
        InnerAutomorphism::from_monomial(acc.kron(&MonomialMatrix::identity(m)))
    };
    let mut out = Vec::new();
    for (k, &q) in factors.iter().enumerate() {
        out.push(embed(k, q_matrix(q as usize)));
        out.push(embed(k, p_matrix(q as usize)));
    }
    if m > 1 {
        let pauli_dim: u64 = factors.iter().product();
        out.push(InnerAutomorphism::identity(pauli_dim as usize).kron(&cartan_representative(m)?));
    }
    Ok(out)
}

/// `{Ad_{Q^i P^j}}`, certified to form a group isomorphic to `Z_N × Z_N`.
#[derive(Debug, Clone)]
pub struct PauliMadGroup {
    pub n: u64,
    /// `((i, j), Ad_{Q^i P^j})`, ordered by `i` then `j`.
    pub elements: Vec<((u64, u64), InnerAutomorphism)>,
    pub checks: Vec<Check>,
}

impl PauliMadGroup {
    pub fn passed(&self) -> bool {
        Check::all_passed(&self.checks)
    }

    pub fn get(&self, i: u64, j: u64) -> &InnerAutomorphism {
        &self.elements[((i % self.n) * self.n + j % self.n) as usize].1
    }
}

pub fn mad_of_pauli_group(n: u64, limits: &Limits) -> Result<PauliMadGroup> {
    if n < 2 {
        return Err(Error::invalid("N must be >= 2"));
    }
    limits.check_matrix_n(n)?;
    let ad_q = InnerAutomorphism::from_monomial(q_matrix(n as usize));
    let ad_p = InnerAutomorphism::from_monomial(p_matrix(n as usize));
    let elements: Vec<((u64, u64), InnerAutomorphism)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                (i, j),
                ad_q.pow(i).compose(&ad_p.pow(j)).expect("same dimension"),
            )
        })
        .collect();
    let group = PauliMadGroup {
        n,
        elements,
        checks: Vec::new(),
    };

    let order_ok =
        |g: &InnerAutomorphism| (1..n).all(|k| !g.pow(k).is_identity()) && g.pow(n).is_identity();
    let distinct: HashSet<ProjectiveKey> = group
        .elements
        .iter()
        .map(|(_, g)| g.projective_key())
        .collect();
    let mut closure_ok = true;
    let mut pairs = 0;
    for ((i, j), a) in &group.elements {
        for ((k, l), b) in &group.elements {
            closure_ok &= a.compose(b)?.projectively_equal(group.get(i + k, j + l));
            pairs += 1;
        }
    }
    let checks = vec![
        Check::new("Ad_Q has order N", order_ok(&ad_q), n),
        Check::new("Ad_P has order N", order_ok(&ad_p), n),
        Check::new("Ad_Q Ad_P = Ad_P Ad_Q", ad_q.commutes_with(&ad_p)?, 1),
        Check::new(
            "N² distinct automorphisms",
            distinct.len() as u64 == n * n,
            n * n,
        ),
        Check::new("Ad_{(i,j)} Ad_{(k,l)} = Ad_{(i+k,j+l)}", closure_ok, pairs),
    ];
    Ok(PauliMadGroup { checks, ..group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::PartialMonomial;
    use proptest::prelude::*;

    fn ad(m: MonomialMatrix) -> InnerAutomorphism {
        InnerAutomorphism::from_monomial(m)
    }

    #[test]
    fn klein_four() {
        let g = mad_of_pauli_group(2, &Limits::default()).unwrap();
        assert_eq!(g.elements.len(), 4);
        assert!(g.passed(), "{:?}", g.checks);
        for (_, x) in &g.elements {
            assert!(x.compose(x).unwrap().is_identity());
        }
    }

    #[test]
    fn five_commutes_projectively() {
        let (q, p) = (q_matrix(5), p_matrix(5));
        let qp = q.mul(&p).unwrap();
        assert!(ad(q.clone())
            .compose(&ad(p.clone()))
            .unwrap()
            .projectively_equal(&ad(qp.clone())));
        assert!(ad(p).compose(&ad(q)).unwrap().projectively_equal(&ad(qp)));
        assert!(mad_of_pauli_group(5, &Limits::default()).unwrap().passed());
    }

    #[test]
    fn clock_order_four() {
        let q = ad(q_matrix(4));
        assert!(q.pow(4).is_identity());
        assert!(!q.pow(2).is_identity());
    }

    #[test]
    fn unit_action_matches_dense() {
        let m = InnerAutomorphism::new(
            vec![
                Rational::from_integer(2),
                Rational::from_integer(3),
                Rational::from_integer(5),
            ],
            q_matrix(3).mul(&p_matrix(3)).unwrap(),
        )
        .unwrap();
        let dense = {
            let base = m.monomial().to_dense();
            let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                3,
                m.scales()
                    .iter()
                    .map(|s| Complex::new(s.to_f64().unwrap(), 0.0)),
            ));
            d * base
        };
        let inv = dense.clone().try_inverse().unwrap();
        let op = m.operator_dense();
        for i in 0..3 {
            for j in 0..3 {
                let x = PartialMonomial::unit(3, i, j).to_dense();
                let y = &dense * x * &inv;
                let col = op.column(i * 3 + j);
                for k in 0..3 {
                    for l in 0..3 {
                        assert!((y[(k, l)] - col[k * 3 + l]).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_is_generic_and_normal() {
        let d = cartan_representative(6).unwrap();
        assert_eq!(d.scales()[5], Rational::from_integer(13));
        assert!(d.is_normal());
        assert!(ad(p_matrix(4)).is_normal());
        let skew = InnerAutomorphism::new(
            vec![Rational::from_integer(1), Rational::from_integer(2)],
            p_matrix(2),
        )
        .unwrap();
        assert!(!skew.is_normal());
    }

    #[test]
    fn generators_commute() {
        for d in super::super::enumerate_mad_groups(12).unwrap() {
            let gens = mad_generators(&d).unwrap();
            for a in &gens {
                for b in &gens {
                    assert!(a.commutes_with(b).unwrap(), "{d}");
                }
            }
        }
        assert!(!ad(p_matrix(2))
            .commutes_with(&cartan_representative(2).unwrap())
            .unwrap());
    }

    fn arb_automorphism(n: usize) -> impl Strategy<Value = InnerAutomorphism> {
        (
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(0i64..12, n),
            prop::collection::vec(1i128..6, n),
        )
            .prop_map(|(perm, ks, ss)| {
                let phases = ks.into_iter().map(|k| Phase::root(12, k)).collect();
                InnerAutomorphism::new(
                    ss.into_iter().map(Rational::from_integer).collect(),
                    MonomialMatrix::new(perm, phases).unwrap(),
                )
                .unwrap()
            })
    }

    fn act(a: &InnerAutomorphism, i: usize, j: usize) -> (Rational, Phase, usize, usize) {
        a.apply_unit(i, j)
    }

    proptest! {
        #[test]
        fn composition(a in arb_automorphism(4), b in arb_automorphism(4)) {
            let ab = a.compose(&b).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let (m1, p1, k, l) = act(&b, i, j);
                    let (m2, p2, k2, l2) = act(&a, k, l);
                    prop_assert_eq!(act(&ab, i, j), (m1 * m2, p1.mul(p2), k2, l2));
                }
            }
        }

        #[test]
        fn inverse(a in arb_automorphism(4)) {
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
        }

        #[test]
        fn projective_kernel(a in arb_automorphism(4), k in 0i64..12, s in 1i128..9) {
            let scaled = InnerAutomorphism::new(
                a.scales().iter().map(|x| x * Rational::from_integer(s)).collect(),
                a.monomial().scale(Phase::root(12, k)),
            ).unwrap();
            prop_assert!(scaled.projectively_equal(&a));
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert_eq!(act(&scaled, i, j), act(&a, i, j));
                }
            }
        }

        #[test]
        fn distinct_actions_are_not_projectively_equal(a in arb_automorphism(3), b in arb_automorphism(3)) {
            let same_action = (0..3).all(|i| (0..3).all(|j| act(&a, i, j) == act(&b, i, j)));
            prop_assert_eq!(same_action, a.projectively_equal(&b));
        }
    }
}
