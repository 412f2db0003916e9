//! Exact arithmetic on multi-indices over prime positions.
//!
//! A positive integer factors as n = ∏ p_j^{α_j}; the exponent vector
//! α(n) identifies the multiplicative semigroup (ℕ, ·) with the additive
//! semigroup Z₊(∞) of finitely supported exponent sequences. Positions
//! are 1-based prime indices (position j ↔ p_j), so index arithmetic
//! never touches the size of the underlying integers. Everything here is
//! exact: primes come from a shared growing sieve, factorials, binomials
//! and multinomials are arbitrary precision.

use std::cmp::Ordering;
use std::fmt;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Finitely supported vector of non-negative integer exponents, stored as
/// (position, exponent) pairs with strictly increasing positions and no
/// zero exponents. The empty vector is α = 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex {
    entries: Vec<(u32, u32)>,
}

impl MultiIndex {
    pub fn zero() -> Self {
        MultiIndex::default()
    }

    /// Single entry at `position` with the given exponent (zero exponent
    /// collapses to α = 0).
    pub fn unit(position: u32, exponent: u32) -> Self {
        assert!(position >= 1, "positions are 1-based");
        if exponent == 0 {
            return MultiIndex::zero();
        }
        MultiIndex {
            entries: vec![(position, exponent)],
        }
    }

    /// Builds from (position, exponent) pairs, validating canonical form.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut last = 0u32;
        for &(pos, exp) in pairs {
            if pos == 0 || pos <= last || exp == 0 {
                return Err(Error::InvalidMultiIndex);
            }
            last = pos;
        }
        Ok(MultiIndex {
            entries: pairs.to_vec(),
        })
    }

    /// Builds from a dense exponent slice; `exps[i]` is the exponent at
    /// position i + 1, zeros are skipped.
    pub fn from_exponents(exps: &[u32]) -> Self {
        MultiIndex {
            entries: exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i as u32 + 1, e))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn exponent(&self, position: u32) -> u32 {
        self.entries
            .binary_search_by_key(&position, |&(p, _)| p)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// |α|: the total degree.
    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|&(p, _)| p)
    }

    pub fn position_count(&self) -> usize {
        self.entries.len()
    }

    pub fn min_position(&self) -> Option<u32> {
        self.entries.first().map(|&(p, _)| p)
    }

    pub fn max_position(&self) -> Option<u32> {
        self.entries.last().map(|&(p, _)| p)
    }

    /// Componentwise sum α + β.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            match (self.entries.get(i), other.entries.get(j)) {
                (Some(&(pa, ea)), Some(&(pb, eb))) => {
                    if pa == pb {
                        out.push((pa, ea + eb));
                        i += 1;
                        j += 1;
                    } else if pa < pb {
                        out.push((pa, ea));
                        i += 1;
                    } else {
                        out.push((pb, eb));
                        j += 1;
                    }
                }
                (Some(&e), None) => {
                    out.push(e);
                    i += 1;
                }
                (None, Some(&e)) => {
                    out.push(e);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        MultiIndex { entries: out }
    }

    /// Componentwise difference α − β, None unless β ≤ α.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut out = Vec::with_capacity(self.entries.len());
        let mut i = 0;
        for &(pb, eb) in &other.entries {
            loop {
                let &(pa, ea) = self.entries.get(i)?;
                if pa < pb {
                    out.push((pa, ea));
                    i += 1;
                } else if pa == pb {
                    if ea < eb {
                        return None;
                    }
                    if ea > eb {
                        out.push((pa, ea - eb));
                    }
                    i += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend_from_slice(&self.entries[i..]);
        Some(MultiIndex { entries: out })
    }
}

/// Lexicographic order on the full exponent sequence (α_1, α_2, …):
/// the first position where the exponents differ decides.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let (mut x, mut y) = (a.next(), b.next());
        loop {
            match (x, y) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(pa, ea)), Some(&(pb, eb))) => {
                    if pa < pb {
                        return Ordering::Greater;
                    }
                    if pb < pa {
                        return Ordering::Less;
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {
                            x = a.next();
                            y = b.next();
                        }
                        o => return o,
                    }
                }
            }
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (p, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{p},{e}]")?;
        }
        write!(f, "]")
    }
}

struct PrimeCache {
    primes: Vec<u64>,
    limit: u64,
}

static PRIMES: RwLock<PrimeCache> = RwLock::new(PrimeCache {
    primes: Vec::new(),
    limit: 1,
});

fn sieve_up_to(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn grow_cache(min_count: usize, min_limit: u64) {
    let mut cache = PRIMES.write().unwrap();
    if cache.primes.len() >= min_count && cache.limit >= min_limit {
        return;
    }
    // Rosser-type upper bound for the n-th prime keeps the resieve count O(log).
    let count_bound = if min_count < 6 {
        16
    } else {
        let n = min_count as f64;
        (n * (n.ln() + n.ln().ln())).ceil() as u64 + 16
    };
    let new_limit = cache
        .limit
        .saturating_mul(2)
        .max(min_limit)
        .max(count_bound)
        .max(64);
    cache.primes = sieve_up_to(new_limit);
    cache.limit = new_limit;
}

fn with_primes<T>(min_count: usize, min_limit: u64, f: impl FnOnce(&[u64]) -> T) -> T {
    {
        let cache = PRIMES.read().unwrap();
        if cache.primes.len() >= min_count && cache.limit >= min_limit {
            return f(&cache.primes);
        }
    }
    grow_cache(min_count, min_limit);
    let cache = PRIMES.read().unwrap();
    f(&cache.primes)
}

/// The first `count` primes, starting from p_1 = 2.
pub fn primes(count: usize) -> Vec<u64> {
    with_primes(count, 0, |p| p[..count].to_vec())
}

/// p_index with 1-based indexing: nth_prime(1) = 2.
pub fn nth_prime(index: usize) -> u64 {
    assert!(index >= 1, "prime indices are 1-based");
    with_primes(index, 0, |p| p[index - 1])
}

/// 1-based index of a prime, None if `p` is not prime.
pub fn prime_index(p: u64) -> Option<usize> {
    if p < 2 {
        return None;
    }
    with_primes(0, p, |primes| primes.binary_search(&p).ok().map(|i| i + 1))
}

pub(crate) fn primes_up_to(limit: u64) -> Vec<u64> {
    with_primes(0, limit.max(2), |primes| {
        let cut = primes.partition_point(|&q| q <= limit);
        primes[..cut].to_vec()
    })
}

/// Smallest-prime-factor table for 0..=n_max (entries 0 and 1 are 0).
pub(crate) fn smallest_prime_factor_table(n_max: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// The Bohr lift n ↦ α(n): exponents of the prime factorization.
pub fn lift_u64(n: u64) -> MultiIndex {
    assert!(n >= 1, "lift is defined on positive integers");
    let mut m = n;
    let mut entries = Vec::new();
    let mut idx = 0usize;
    while m > 1 {
        let p = nth_prime(idx + 1);
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            entries.push((idx as u32 + 1, e));
        }
        idx += 1;
    }
    if m > 1 {
        let pos = prime_index(m).expect("residual factor is prime") as u32;
        entries.push((pos, 1));
    }
    entries.sort_by_key(|&(p, _)| p);
    MultiIndex { entries }
}

/// Arbitrary-precision Bohr lift.
pub fn lift(n: &BigUint) -> MultiIndex {
    if let Some(m) = n.to_u64() {
        return lift_u64(m);
    }
    let mut m = n.clone();
    let mut entries = Vec::new();
    let one = BigUint::one();
    let mut idx = 0usize;
    loop {
        let p = BigUint::from(nth_prime(idx + 1));
        if &p * &p > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            entries.push((idx as u32 + 1, e));
        }
        idx += 1;
    }
    if m > one {
        let r = m.to_u64().expect("prime factor too large to index");
        let pos = prime_index(r).expect("residual factor is prime") as u32;
        entries.push((pos, 1));
    }
    entries.sort_by_key(|&(p, _)| p);
    MultiIndex { entries }
}

/// The inverse lift α ↦ ∏ p_j^{α_j}.
pub fn unlift(alpha: &MultiIndex) -> BigUint {
    let mut acc = BigUint::one();
    for &(pos, exp) in alpha.entries() {
        acc *= BigUint::from(nth_prime(pos as usize)).pow(exp);
    }
    acc
}

/// unlift(α) as u64 when it does not exceed `cap`, None otherwise.
pub fn value_within(alpha: &MultiIndex, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for &(pos, exp) in alpha.entries() {
        let p = nth_prime(pos as usize);
        for _ in 0..exp {
            acc = acc.checked_mul(p)?;
            if acc > cap {
                return None;
            }
        }
    }
    Some(acc)
}

/// Möbius function: μ(1) = 1, (−1)^k on squarefree n with k prime
/// factors, 0 otherwise.
pub fn mobius_u64(n: u64) -> i8 {
    let alpha = lift_u64(n);
    if alpha.entries().iter().any(|&(_, e)| e >= 2) {
        0
    } else if alpha.position_count() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mobius(n: &BigUint) -> i8 {
    let alpha = lift(n);
    if alpha.entries().iter().any(|&(_, e)| e >= 2) {
        0
    } else if alpha.position_count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// μ on 0..=n_max in one sieve pass (index 0 unused, set to 0).
pub fn mobius_table(n_max: usize) -> Vec<i8> {
    let spf = smallest_prime_factor_table(n_max);
    let mut mu = vec![0i8; n_max + 1];
    if n_max >= 1 {
        mu[1] = 1;
    }
    for i in 2..=n_max {
        let p = spf[i] as usize;
        let m = i / p;
        mu[i] = if m % p == 0 { 0 } else { -mu[m] };
    }
    mu
}

pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// |α|! / α! — exact, and necessarily an integer.
pub fn multinomial(alpha: &MultiIndex) -> BigUint {
    let mut acc = BigUint::one();
    let mut running = 0u64;
    for &(_, e) in alpha.entries() {
        running += e as u64;
        acc *= binomial(running, e as u64);
    }
    acc
}

/// α! / |α|! in lowest terms.
pub fn multinomial_ratio(alpha: &MultiIndex) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(multinomial(alpha)))
}

/// Enumerates every ordered pair (α, β) with α + β = γ, in lexicographic
/// order of α.
pub fn decompositions(gamma: &MultiIndex) -> Decompositions {
    Decompositions {
        positions: gamma.support().collect(),
        caps: gamma.entries().iter().map(|&(_, e)| e).collect(),
        current: vec![0; gamma.position_count()],
        done: false,
    }
}

pub struct Decompositions {
    positions: Vec<u32>,
    caps: Vec<u32>,
    current: Vec<u32>,
    done: bool,
}

impl Iterator for Decompositions {
    type Item = (MultiIndex, MultiIndex);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let alpha = MultiIndex {
            entries: self
                .positions
                .iter()
                .zip(&self.current)
                .filter(|(_, &e)| e > 0)
                .map(|(&p, &e)| (p, e))
                .collect(),
        };
        let beta = MultiIndex {
            entries: self
                .positions
                .iter()
                .zip(self.caps.iter().zip(&self.current))
                .filter(|(_, (&c, &e))| c > e)
                .map(|(&p, (&c, &e))| (p, c - e))
                .collect(),
        };
        // odometer: rightmost position varies fastest, so α ascends
        // lexicographically as an exponent sequence
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.caps[i] {
                self.current[i] += 1;
                break;
            }
            self.current[i] = 0;
        }
        Some((alpha, beta))
    }
}

/// Σ over α + β = γ, |α| = k of γ!/(α! β!); equals C(|γ|, k), but the sum
/// is carried out term by term so the identity can be verified.
pub fn vandermonde_sum(gamma: &MultiIndex, k: u64) -> Result<BigUint> {
    let degree = gamma.degree();
    if k > degree {
        return Err(Error::VandermondeRange { k, degree });
    }
    let mut acc = BigUint::zero();
    for (alpha, _) in decompositions(gamma) {
        if alpha.degree() != k {
            continue;
        }
        let mut term = BigUint::one();
        for &(pos, e) in alpha.entries() {
            term *= binomial(gamma.exponent(pos) as u64, e as u64);
        }
        acc += term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_primes() {
        assert_eq!(primes(1), vec![2]);
        assert_eq!(primes(5), vec![2, 3, 5, 7, 11]);
        let p25 = primes(25);
        assert_eq!(p25.len(), 25);
        assert_eq!(*p25.last().unwrap(), 97);
    }

    #[test]
    fn lift_examples() {
        assert!(lift_u64(1).is_zero());
        assert_eq!(lift_u64(12).entries(), &[(1, 2), (2, 1)]);
        assert_eq!(lift_u64(97).entries(), &[(25, 1)]);
    }

    #[test]
    fn unlift_examples() {
        assert_eq!(unlift(&MultiIndex::zero()), BigUint::from(1u32));
        let a = MultiIndex::from_pairs(&[(1, 2), (2, 1)]).unwrap();
        assert_eq!(unlift(&a), BigUint::from(12u32));
        assert_eq!(unlift(&MultiIndex::unit(3, 1)), BigUint::from(5u32));
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius_u64(1), 1);
        assert_eq!(mobius_u64(12), 0);
        assert_eq!(mobius_u64(30), -1);
    }

    #[test]
    fn mobius_unit_identity() {
        // Σ_{d|n} μ(d) = [n = 1] for n <= 10^4
        let n_max = 10_000usize;
        let mu = mobius_table(n_max);
        let mut sums = vec![0i64; n_max + 1];
        for d in 1..=n_max {
            if mu[d] == 0 {
                continue;
            }
            let mut m = d;
            while m <= n_max {
                sums[m] += mu[d] as i64;
                m += d;
            }
        }
        assert_eq!(sums[1], 1);
        for n in 2..=n_max {
            assert_eq!(sums[n], 0, "divisor sum of mu at n = {n}");
        }
    }

    #[test]
    fn mobius_table_matches_pointwise() {
        let mu = mobius_table(500);
        for n in 1..=500 {
            assert_eq!(mu[n], mobius_u64(n as u64));
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&MultiIndex::zero()), BigUint::from(1u32));
        let a = MultiIndex::from_pairs(&[(1, 1), (2, 1)]).unwrap();
        assert_eq!(multinomial(&a), BigUint::from(2u32));
        let b = MultiIndex::from_pairs(&[(1, 2), (2, 1)]).unwrap();
        assert_eq!(multinomial(&b), BigUint::from(3u32));
    }

    #[test]
    fn multinomial_divides_factorial_exactly() {
        let a = MultiIndex::from_pairs(&[(1, 3), (2, 2), (4, 5)]).unwrap();
        let num = factorial(a.degree());
        let mut den = BigUint::from(1u32);
        for &(_, e) in a.entries() {
            den *= factorial(e as u64);
        }
        assert_eq!(&num % &den, BigUint::from(0u32));
        assert_eq!(num / den, multinomial(&a));
        // and in lowest terms the ratio α!/|α|! has unit numerator
        assert_eq!(multinomial_ratio(&a).numer(), &BigInt::from(1));
    }

    #[test]
    fn decomposition_examples() {
        let pairs: Vec<_> = decompositions(&MultiIndex::zero()).collect();
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].0.is_zero() && pairs[0].1.is_zero());

        let g = MultiIndex::unit(1, 2);
        let pairs: Vec<_> = decompositions(&g).collect();
        assert_eq!(pairs.len(), 3);
        let exps: Vec<u32> = pairs.iter().map(|(a, _)| a.exponent(1)).collect();
        assert_eq!(exps, vec![0, 1, 2]);

        let g = MultiIndex::from_pairs(&[(1, 1), (2, 1)]).unwrap();
        let pairs: Vec<_> = decompositions(&g).collect();
        assert_eq!(pairs.len(), 4);
        for (a, b) in &pairs {
            assert_eq!(a.add(b), g);
        }
        // lexicographic order of α as a sequence
        let mut sorted = pairs.clone();
        sorted.sort_by(|x, y| x.0.cmp(&y.0));
        assert!(pairs.iter().zip(&sorted).all(|(p, q)| p.0 == q.0));
    }

    #[test]
    fn vandermonde_examples() {
        let g = MultiIndex::from_pairs(&[(1, 2), (2, 1)]).unwrap();
        assert_eq!(vandermonde_sum(&g, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(vandermonde_sum(&g, 1).unwrap(), BigUint::from(3u32));
        let g3 = MultiIndex::from_pairs(&[(1, 1), (2, 1), (3, 1)]).unwrap();
        assert_eq!(vandermonde_sum(&g3, 2).unwrap(), BigUint::from(3u32));
        assert!(matches!(
            vandermonde_sum(&g3, 4),
            Err(Error::VandermondeRange { .. })
        ));
    }

    #[test]
    fn lex_order_is_sequence_order() {
        // (1,0,..) > (0,5,..)
        let a = MultiIndex::unit(1, 1);
        let b = MultiIndex::unit(2, 5);
        assert!(a > b);
        let c = MultiIndex::from_pairs(&[(1, 1), (3, 2)]).unwrap();
        let d = MultiIndex::from_pairs(&[(1, 1), (2, 1)]).unwrap();
        assert!(c < d);
    }

    #[test]
    fn roundtrip_dense_range() {
        for n in 1..=3000u64 {
            assert_eq!(unlift(&lift_u64(n)).to_u64().unwrap(), n);
        }
    }

    proptest! {
        #[test]
        fn roundtrip_sampled(n in 1u64..1_000_000) {
            prop_assert_eq!(unlift(&lift_u64(n)).to_u64().unwrap(), n);
        }

        #[test]
        fn lift_is_monoid_homomorphism(m in 1u64..1000, n in 1u64..1000) {
            prop_assert_eq!(lift_u64(m * n), lift_u64(m).add(&lift_u64(n)));
        }

        #[test]
        fn roundtrip_from_index(exps in proptest::collection::vec(0u32..4, 1..6)) {
            let alpha = MultiIndex::from_exponents(&exps);
            prop_assume!(alpha.degree() <= 20);
            prop_assert_eq!(lift(&unlift(&alpha)), alpha);
        }

        #[test]
        fn multinomial_is_positive_integer(exps in proptest::collection::vec(0u32..5, 1..5)) {
            let alpha = MultiIndex::from_exponents(&exps);
            let m = multinomial(&alpha);
            prop_assert!(m >= BigUint::from(1u32));
            let num = factorial(alpha.degree());
            let den: BigUint = alpha.entries().iter()
                .map(|&(_, e)| factorial(e as u64))
                .product();
            prop_assert_eq!(&num % &den, BigUint::from(0u32));
            prop_assert_eq!(num / den, m);
        }

        #[test]
        fn decomposition_count(exps in proptest::collection::vec(0u32..4, 1..4)) {
            let gamma = MultiIndex::from_exponents(&exps);
            let expected: usize = gamma.entries().iter()
                .map(|&(_, e)| e as usize + 1)
                .product();
            prop_assert_eq!(decompositions(&gamma).count(), expected);
        }
    }
}
