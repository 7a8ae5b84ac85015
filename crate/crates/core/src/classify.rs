//! Classification of finite Abelian groups of a given order, i.e. of the
//! inequivalent finite quantum kinematics in dimension `N`.
//!
//! A group type is named by its elementary divisors (prime powers). For
//! `N = Π p_i^{r_i}` the types are in bijection with tuples of partitions of
//! the exponents `r_i`, so their number is `Π p(r_i)`.
//!
//! Types are listed in a fixed order: the partition attached to each prime
//! runs through [`partitions`] (lexicographically decreasing), and the
//! partition of the smallest prime varies fastest. For `N = 180` this gives
//! `2^2.3^2.5, 2.2.3^2.5, 2^2.3.3.5, 2.2.3.3.5`, equivalently
//! `Z_180, Z_2×Z_90, Z_3×Z_60, Z_6×Z_30`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::{factorize, partition_count, partitions, prime_power, Partition};

/// Elementary-divisor type of a finite Abelian group, sorted by prime and
/// then by descending exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupType {
    divisors: Vec<u64>,
}

impl AbelianGroupType {
    /// Validates and canonically orders a multiset of prime powers.
    pub fn new(mut divisors: Vec<u64>) -> Result<Self> {
        let mut keyed = Vec::with_capacity(divisors.len());
        for &d in &divisors {
            let (p, r) = prime_power(d)
                .ok_or_else(|| Error::invalid(format!("{d} is not a prime power >= 2")))?;
            keyed.push((p, std::cmp::Reverse(r), d));
        }
        keyed.sort();
        divisors = keyed.into_iter().map(|(_, _, d)| d).collect();
        Ok(AbelianGroupType { divisors })
    }

    /// The trivial group (order 1).
    pub fn trivial() -> Self {
        AbelianGroupType {
            divisors: Vec::new(),
        }
    }

    pub fn elementary_divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    /// Prime-power notation with `.` separators, e.g. `2.2.3^2.5`.
    pub fn notation(&self) -> String {
        if self.divisors.is_empty() {
            return "1".into();
        }
        self.divisors
            .iter()
            .map(|&d| {
                let (p, r) = prime_power(d).expect("validated");
                if r == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{r}")
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Powers of each prime, largest first.
    fn by_prime(&self) -> BTreeMap<u64, Vec<u64>> {
        let mut map: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in &self.divisors {
            let (p, _) = prime_power(d).expect("validated");
            map.entry(p).or_default().push(d);
        }
        map
    }
}

impl fmt::Display for AbelianGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", cyclic_product(&self.divisors))
    }
}

fn cyclic_product(orders: &[u64]) -> String {
    if orders.is_empty() {
        return "Z_1".into();
    }
    orders
        .iter()
        .map(|n| format!("Z_{n}"))
        .collect::<Vec<_>>()
        .join(" × ")
}

/// Invariant factors `n_1 ≥ n_2 ≥ ... ≥ n_s ≥ 2` with `n_{i+1} | n_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantFactorList {
    factors: Vec<u64>,
}

impl InvariantFactorList {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&n| n < 2) {
            return Err(Error::invalid("invariant factors must be >= 2"));
        }
        if let Some(w) = factors.windows(2).find(|w| w[0] % w[1] != 0) {
            return Err(Error::invalid(format!(
                "divisibility chain broken: {} does not divide {}",
                w[1], w[0]
            )));
        }
        Ok(InvariantFactorList { factors })
    }

    /// Largest first.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }
}

impl fmt::Display for InvariantFactorList {
    /// Smallest factor first, e.g. `Z_2 × Z_90`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut asc = self.factors.clone();
        asc.reverse();
        write!(f, "{}", cyclic_product(&asc))
    }
}

/// Every Abelian group type of order `n`, in the canonical order described in
/// the module docs. `n = 1` yields the single trivial type.
pub fn enumerate_kinematics(n: u64) -> Result<Vec<AbelianGroupType>> {
    let fact = factorize(n)?;
    let per_prime: Vec<(u64, Vec<Partition>)> = fact
        .factors()
        .iter()
        .map(|&(p, r)| (p, partitions(r)))
        .collect();
    let total: usize = per_prime.iter().map(|(_, ps)| ps.len()).product();
    let mut out = Vec::with_capacity(total);
    let mut index = vec![0usize; per_prime.len()];
    for _ in 0..total {
        let divisors = per_prime
            .iter()
            .zip(&index)
            .flat_map(|((p, ps), &i)| ps[i].parts().iter().map(move |&e| p.pow(e)))
            .collect();
        out.push(AbelianGroupType { divisors });
        // odometer, smallest prime fastest
        for (slot, (_, ps)) in index.iter_mut().zip(&per_prime) {
            *slot += 1;
            if *slot < ps.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}

/// `Π p(r_i)` over the prime exponents of `n`.
pub fn count_kinematics(n: u64) -> Result<u128> {
    Ok(factorize(n)?
        .factors()
        .iter()
        .map(|&(_, r)| partition_count(r))
        .product())
}

/// Assembles invariant factors: the `i`-th factor multiplies the `i`-th
/// largest power of every prime.
pub fn to_invariant_factors(t: &AbelianGroupType) -> InvariantFactorList {
    let by_prime = t.by_prime();
    let rank = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let factors = (0..rank)
        .map(|i| {
            by_prime
                .values()
                .map(|powers| powers.get(i).copied().unwrap_or(1))
                .product()
        })
        .collect();
    InvariantFactorList { factors }
}

/// Splits each invariant factor into its prime-power components.
pub fn from_invariant_factors(list: &InvariantFactorList) -> AbelianGroupType {
    reduce_product(list.factors()).expect("invariant factors are >= 2")
}

/// Elementary divisors of `Z_{m_1} × ... × Z_{m_k}`.
pub fn reduce_product(orders: &[u64]) -> Result<AbelianGroupType> {
    let mut divisors = Vec::new();
    for &m in orders {
        if m < 2 {
            return Err(Error::invalid(format!("cyclic order {m} must be >= 2")));
        }
        divisors.extend(factorize(m)?.prime_powers());
    }
    AbelianGroupType::new(divisors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisor_lists(n: u64) -> Vec<Vec<u64>> {
        enumerate_kinematics(n)
            .unwrap()
            .into_iter()
            .map(|t| t.elementary_divisors().to_vec())
            .collect()
    }

    #[test]
    fn order_180() {
        assert_eq!(
            divisor_lists(180),
            vec![
                vec![4, 9, 5],
                vec![2, 2, 9, 5],
                vec![4, 3, 3, 5],
                vec![2, 2, 3, 3, 5]
            ]
        );
        let notation: Vec<_> = enumerate_kinematics(180)
            .unwrap()
            .iter()
            .map(|t| t.notation())
            .collect();
        assert_eq!(
            notation,
            ["2^2.3^2.5", "2.2.3^2.5", "2^2.3.3.5", "2.2.3.3.5"]
        );
        let invariant: Vec<_> = enumerate_kinematics(180)
            .unwrap()
            .iter()
            .map(|t| to_invariant_factors(t).to_string())
            .collect();
        assert_eq!(
            invariant,
            ["Z_180", "Z_2 × Z_90", "Z_3 × Z_60", "Z_6 × Z_30"]
        );
    }

    #[test]
    fn small_orders() {
        assert_eq!(divisor_lists(7), vec![vec![7]]);
        assert_eq!(divisor_lists(8), vec![vec![8], vec![4, 2], vec![2, 2, 2]]);
        assert_eq!(divisor_lists(1), vec![Vec::<u64>::new()]);
        assert!(enumerate_kinematics(0).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(count_kinematics(180).unwrap(), 4);
        assert_eq!(count_kinematics(49).unwrap(), 2);
        assert_eq!(count_kinematics(64).unwrap(), 11);
        assert_eq!(count_kinematics(1).unwrap(), 1);
    }

    #[test]
    fn invariant_factor_examples() {
        let t = AbelianGroupType::new(vec![2, 2, 9, 5]).unwrap();
        assert_eq!(to_invariant_factors(&t).factors(), &[90, 2]);
        let t = AbelianGroupType::new(vec![4, 9, 5]).unwrap();
        assert_eq!(to_invariant_factors(&t).factors(), &[180]);
        for t in enumerate_kinematics(64).unwrap() {
            assert_eq!(from_invariant_factors(&to_invariant_factors(&t)), t);
        }
    }

    #[test]
    fn reduce_product_examples() {
        assert_eq!(
            reduce_product(&[6, 15]).unwrap().elementary_divisors(),
            &[2, 3, 3, 5]
        );
        assert_eq!(
            reduce_product(&[180]).unwrap().elementary_divisors(),
            &[4, 9, 5]
        );
        assert_eq!(
            reduce_product(&[2, 2]).unwrap().elementary_divisors(),
            &[2, 2]
        );
        assert!(reduce_product(&[1, 4]).is_err());
    }

    #[test]
    fn malformed_inputs() {
        assert!(AbelianGroupType::new(vec![6]).is_err());
        assert!(AbelianGroupType::new(vec![1]).is_err());
        assert!(InvariantFactorList::new(vec![6, 4]).is_err());
        assert!(InvariantFactorList::new(vec![4, 1]).is_err());
        assert!(InvariantFactorList::new(vec![12, 6, 2]).is_ok());
    }

    #[test]
    fn canonical_ordering_is_enforced() {
        let t = AbelianGroupType::new(vec![5, 2, 9, 4, 3]).unwrap();
        assert_eq!(t.elementary_divisors(), &[4, 2, 9, 3, 5]);
    }
}
