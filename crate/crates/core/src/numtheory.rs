//! Integer factorization, partitions and Chinese Remainder data.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Canonical prime factorization `n = p_1^{r_1} ... p_f^{r_f}` with strictly
/// increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs, primes ascending.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The prime powers `p_k^{r_k}`, in prime order.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, r)| p.pow(r)).collect()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, r)| p.pow(r)).product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, r)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            if r == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{r}")?;
            }
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factorizes `n` by trial division, stopping early once the cofactor is
/// certified prime.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("cannot factorize 0"));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    let mut cofactor_prime = is_prime(rest);
    while rest > 1 {
        if cofactor_prime || p.saturating_mul(p) > rest {
            factors.push((rest, 1));
            break;
        }
        if rest.is_multiple_of(p) {
            let mut r = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                r += 1;
            }
            factors.push((p, r));
            cofactor_prime = is_prime(rest);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Ok(Factorization { n, factors })
}

/// If `q` is a prime power `p^r` with `r >= 1`, returns `(p, r)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factorize(q).ok()?;
    match f.factors() {
        [single] => Some(*single),
        _ => None,
    }
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All partitions of `r` in lexicographically decreasing order, so `[r]`
/// comes first and `[1, ..., 1]` last.
pub fn partitions(r: u32) -> Vec<Partition> {
    fn extend(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    extend(r, r, &mut Vec::new(), &mut out);
    out
}

/// The partition function p(r), by Euler's pentagonal-number recurrence.
pub fn partition_count(r: u32) -> u128 {
    let r = r as usize;
    let mut p = vec![0u128; r + 1];
    p[0] = 1;
    for n in 1..=r {
        let mut acc: i128 = 0;
        for k in 1.. {
            let k = k as i64;
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[n - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                acc += sign * p[n - g2] as i128;
            }
        }
        p[n] = acc as u128;
    }
    p[r]
}

/// One coprime component of a CRT splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtComponent {
    /// `N_k = p_k^{r_k}`.
    pub modulus: u64,
    /// `n / N_k`.
    pub cofactor: u64,
    /// Inverse of `cofactor` modulo `N_k`.
    pub cofactor_inverse: u64,
    /// The idempotent `e_k = cofactor * cofactor_inverse mod n`:
    /// `e_k ≡ 1 (mod N_k)` and `e_k ≡ 0` modulo the other moduli.
    pub idempotent: u64,
}

/// The ring isomorphism `Z_n ≅ Z_{N_1} × ... × Z_{N_f}` over the prime-power
/// moduli of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtSplit {
    n: u64,
    components: Vec<CrtComponent>,
}

impl CrtSplit {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn components(&self) -> &[CrtComponent] {
        &self.components
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.modulus).collect()
    }

    /// `x ↦ (x mod N_1, ..., x mod N_f)`.
    pub fn residues(&self, x: u64) -> Vec<u64> {
        self.components.iter().map(|c| x % c.modulus).collect()
    }

    /// Inverse of [`CrtSplit::residues`]: `Σ a_k e_k mod n`.
    pub fn reconstruct(&self, residues: &[u64]) -> Result<u64> {
        if residues.len() != self.components.len() {
            return Err(Error::DimensionMismatch {
                left: residues.len(),
                right: self.components.len(),
            });
        }
        let n = self.n as u128;
        let x = self
            .components
            .iter()
            .zip(residues)
            .fold(0u128, |acc, (c, &a)| {
                (acc + (a % c.modulus) as u128 * c.idempotent as u128) % n
            });
        Ok(x as u64)
    }
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let egcd = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if egcd.gcd != 1 {
        return None;
    }
    Some(egcd.x.rem_euclid(m as i128) as u64)
}

/// Splits `Z_n` into its prime-power components. A prime power yields a
/// single component.
pub fn crt_split(n: u64) -> Result<CrtSplit> {
    if n < 2 {
        return Err(Error::invalid(format!("crt_split needs n >= 2, got {n}")));
    }
    let components = factorize(n)?
        .prime_powers()
        .into_iter()
        .map(|modulus| {
            let cofactor = n / modulus;
            let cofactor_inverse =
                mod_inverse(cofactor % modulus, modulus).expect("coprime by construction");
            let idempotent = ((cofactor as u128 * cofactor_inverse as u128) % n as u128) as u64;
            CrtComponent {
                modulus,
                cofactor,
                cofactor_inverse,
                idempotent,
            }
        })
        .collect();
    Ok(CrtSplit { n, components })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut p = 2;
        while n > 1 {
            while n.is_multiple_of(p) {
                match out.last_mut() {
                    Some((q, r)) if *q == p => *r += 1,
                    _ => out.push((p, 1)),
                }
                n /= p;
            }
            p += 1;
        }
        out
    }

    fn dp_partition_count(r: usize) -> u128 {
        let mut ways = vec![0u128; r + 1];
        ways[0] = 1;
        for part in 1..=r {
            for total in part..=r {
                ways[total] += ways[total - part];
            }
        }
        ways[r]
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(180).unwrap().factors(), &[(2, 2), (3, 2), (5, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(97).unwrap().factors(), &[(97, 1)]);
        assert!(factorize(0).is_err());
        assert_eq!(factorize(180).unwrap().to_string(), "2^2.3^2.5");
    }

    #[test]
    fn factorize_matches_trial_division() {
        for n in 1..3000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.factors(), trial_division_oracle(n).as_slice(), "n = {n}");
            assert_eq!(f.product(), n);
        }
    }

    #[test]
    fn factorize_large_semiprime() {
        let n = 1_000_003u64 * 999_983;
        assert_eq!(
            factorize(n).unwrap().factors(),
            &[(999_983, 1), (1_000_003, 1)]
        );
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn partitions_examples() {
        let parts = |r| {
            partitions(r)
                .into_iter()
                .map(|p| p.parts().to_vec())
                .collect::<Vec<_>>()
        };
        assert_eq!(parts(1), vec![vec![1]]);
        assert_eq!(parts(2), vec![vec![2], vec![1, 1]]);
        assert_eq!(parts(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn partitions_are_sorted_complete_and_distinct() {
        for r in 1..=14 {
            let ps = partitions(r);
            assert!(ps.windows(2).all(|w| w[0] > w[1]), "r = {r}");
            assert!(ps.iter().all(|p| p.total() == r));
            assert_eq!(ps.len() as u128, partition_count(r));
        }
    }

    #[test]
    fn partition_count_matches_dp_oracle() {
        assert_eq!(partition_count(1), 1);
        assert_eq!(partition_count(2), 2);
        assert_eq!(partition_count(4), 5);
        for r in 1..=40 {
            assert_eq!(
                partition_count(r),
                dp_partition_count(r as usize),
                "r = {r}"
            );
        }
    }

    #[test]
    fn crt_split_examples() {
        let six = crt_split(6).unwrap();
        assert_eq!(six.moduli(), vec![2, 3]);
        let images: std::collections::HashSet<_> = (0..6).map(|x| six.residues(x)).collect();
        assert_eq!(images.len(), 6);
        assert_eq!(crt_split(180).unwrap().moduli(), vec![4, 9, 5]);
        assert_eq!(crt_split(8).unwrap().moduli(), vec![8]);
        assert!(crt_split(1).is_err());
    }

    #[test]
    fn crt_round_trip_exhaustive() {
        for n in 2..500u64 {
            let split = crt_split(n).unwrap();
            assert_eq!(split.moduli().iter().product::<u64>(), n);
            for c in split.components() {
                for other in split.components() {
                    let expected = u64::from(c.modulus == other.modulus);
                    assert_eq!(c.idempotent % other.modulus, expected % other.modulus);
                }
            }
            for x in 0..n {
                assert_eq!(split.reconstruct(&split.residues(x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
