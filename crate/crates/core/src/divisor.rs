//! Index arithmetic and geometric-valued arithmetic functions.
//!
//! Sequence indices are ordinary positive integers; only the values of the
//! arithmetic functions live in the geometric field. The Möbius function,
//! the Dirichlet identity and the Dirichlet unit all take integer exponents,
//! so identities built only from them hold exactly.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{gsum, GReal};

/// Default upper bound for [`Factorizer`].
pub const DEFAULT_FACTOR_BOUND: usize = 10_000_000;

const SMALL_PRIME_LIMIT: usize = 3163; // > sqrt(DEFAULT_FACTOR_BOUND)
const SMALL_PRIME_COUNT: usize = count_primes(SMALL_PRIME_LIMIT);

/// Primes below `SMALL_PRIME_LIMIT`, ascending.
static SMALL_PRIMES: [u32; SMALL_PRIME_COUNT] = small_primes();

const fn sieve() -> [bool; SMALL_PRIME_LIMIT] {
    let mut composite = [false; SMALL_PRIME_LIMIT];
    composite[0] = true;
    composite[1] = true;
    let mut i = 2;
    while i * i < SMALL_PRIME_LIMIT {
        if !composite[i] {
            let mut j = i * i;
            while j < SMALL_PRIME_LIMIT {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    composite
}

const fn count_primes(limit: usize) -> usize {
    let composite = sieve();
    let mut count = 0;
    let mut i = 0;
    while i < limit {
        if !composite[i] {
            count += 1;
        }
        i += 1;
    }
    count
}

const fn small_primes() -> [u32; SMALL_PRIME_COUNT] {
    let composite = sieve();
    let mut out = [0u32; SMALL_PRIME_COUNT];
    let mut k = 0;
    let mut i = 0;
    while i < SMALL_PRIME_LIMIT {
        if !composite[i] {
            out[k] = i as u32;
            k += 1;
        }
        i += 1;
    }
    out
}

/// All divisors of `n` in increasing order, `1` and `n` included.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn divisors(n: usize) -> Vec<usize> {
    assert!(n >= 1, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(mut m: usize, mut n: usize) -> usize {
    while n != 0 {
        let r = m % n;
        m = n;
        n = r;
    }
    m
}

/// Trial-division factorizer with a configurable upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factorizer {
    bound: usize,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer { bound: DEFAULT_FACTOR_BOUND }
    }
}

impl Factorizer {
    pub fn new(bound: usize) -> Self {
        Factorizer { bound }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Domain("index must be at least 1"));
        }
        if n > self.bound {
            return Err(Error::Capacity {
                what: "factorization index",
                requested: n as u64,
                limit: self.bound as u64,
            });
        }
        Ok(())
    }

    /// Prime factorization of `n` as `(prime, multiplicity)` pairs with
    /// ascending primes; empty for `n = 1`.
    pub fn factorize(&self, n: usize) -> Result<Vec<(usize, u32)>> {
        self.check(n)?;
        let mut rest = n;
        let mut out = Vec::new();
        let mut take = |rest: &mut usize, p: usize| {
            let mut k = 0;
            while rest.is_multiple_of(p) {
                *rest /= p;
                k += 1;
            }
            if k > 0 {
                out.push((p, k));
            }
        };
        for &p in SMALL_PRIMES.iter() {
            let p = p as usize;
            if p * p > rest {
                break;
            }
            take(&mut rest, p);
        }
        // only reached for bounds above the small-prime table
        let mut d = SMALL_PRIME_LIMIT | 1;
        while d.saturating_mul(d) <= rest {
            take(&mut rest, d);
            d += 2;
        }
        if rest > 1 {
            out.push((rest, 1));
        }
        Ok(out)
    }

    /// Exponent of the geometric Möbius function: `1` for `n = 1`, `(-1)^k`
    /// for a product of `k` distinct primes, `0` when a square divides `n`.
    pub fn mobius_exponent(&self, n: usize) -> Result<i8> {
        let factors = self.factorize(n)?;
        if factors.iter().any(|&(_, k)| k >= 2) {
            Ok(0)
        } else if factors.len() % 2 == 0 {
            Ok(1)
        } else {
            Ok(-1)
        }
    }

    pub fn mobius(&self, n: usize) -> Result<GReal> {
        self.mobius_exponent(n).map(|k| GReal::from_int(k.into()))
    }

    /// Geometric sum of `μ_G(k)` over the divisors `k` of `n`.
    pub fn divisor_mobius_sum(&self, n: usize) -> Result<GReal> {
        self.check(n)?;
        let terms = divisors(n)
            .into_iter()
            .map(|k| self.mobius(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(gsum(terms))
    }
}

/// Factorization under the default bound.
pub fn factorize(n: usize) -> Result<Vec<(usize, u32)>> {
    Factorizer::default().factorize(n)
}

/// The geometric Möbius function under the default factorization bound.
pub fn mobius_g(n: usize) -> Result<GReal> {
    Factorizer::default().mobius(n)
}

pub fn divisor_mobius_sum(n: usize) -> Result<GReal> {
    Factorizer::default().divisor_mobius_sum(n)
}

/// Möbius exponents for `1..=n`, index `0` unused.
///
/// Computed from the recurrence `Σ_{d|m} μ(d) = [m = 1]` by pushing each
/// value onto its proper multiples, without factorizing.
pub fn mobius_prefix(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n >= 1 {
        mu[1] = 1;
    }
    for i in 1..=n {
        let m = mu[i];
        if m != 0 {
            let mut j = 2 * i;
            while j <= n {
                mu[j] -= m;
                j += i;
            }
        }
    }
    mu
}

/// Dirichlet identity: `e` at `1`, `e^0` elsewhere.
pub fn dirichlet_identity(n: usize) -> GReal {
    if n == 1 {
        GReal::ONE
    } else {
        GReal::ZERO
    }
}

/// Dirichlet unit: `e` everywhere.
pub fn dirichlet_unit(_n: usize) -> GReal {
    GReal::ONE
}

/// A geometric-valued function on the positive integers, evaluable on
/// `1..=bound()`.
///
/// Implementations must be deterministic.
pub trait ArithFn {
    fn bound(&self) -> usize;

    /// Value at `n`, without bound checks.
    fn eval_unchecked(&self, n: usize) -> Result<GReal>;

    fn eval(&self, n: usize) -> Result<GReal> {
        if n == 0 {
            return Err(Error::Domain("index must be at least 1"));
        }
        if n > self.bound() {
            return Err(Error::Capacity {
                what: "arithmetic function index",
                requested: n as u64,
                limit: self.bound() as u64,
            });
        }
        self.eval_unchecked(n)
    }
}

impl<T: ArithFn + ?Sized> ArithFn for &T {
    fn bound(&self) -> usize {
        (**self).bound()
    }
    fn eval_unchecked(&self, n: usize) -> Result<GReal> {
        (**self).eval_unchecked(n)
    }
}

/// The geometric Möbius function as an [`ArithFn`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Mobius(pub Factorizer);

impl ArithFn for Mobius {
    fn bound(&self) -> usize {
        self.0.bound()
    }
    fn eval_unchecked(&self, n: usize) -> Result<GReal> {
        self.0.mobius(n)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DirichletIdentity;

impl ArithFn for DirichletIdentity {
    fn bound(&self) -> usize {
        usize::MAX
    }
    fn eval_unchecked(&self, n: usize) -> Result<GReal> {
        Ok(dirichlet_identity(n))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DirichletUnit;

impl ArithFn for DirichletUnit {
    fn bound(&self) -> usize {
        usize::MAX
    }
    fn eval_unchecked(&self, n: usize) -> Result<GReal> {
        Ok(dirichlet_unit(n))
    }
}

/// An arithmetic function materialized on `1..=bound`.
///
/// Every value is computed once at construction, so repeated evaluation is a
/// table lookup and the table can be shared across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct Tabulated {
    values: Vec<GReal>,
}

impl Tabulated {
    /// Tabulates `rule` on `1..=bound`.
    pub fn from_fn<F>(bound: usize, mut rule: F) -> Self
    where
        F: FnMut(usize) -> GReal,
    {
        Tabulated { values: (1..=bound).map(&mut rule).collect() }
    }

    /// Tabulates another function on `1..=bound`.
    pub fn memoize<A: ArithFn>(f: &A, bound: usize) -> Result<Self> {
        let values = (1..=bound).map(|n| f.eval(n)).collect::<Result<Vec<_>>>()?;
        Ok(Tabulated { values })
    }

    /// Takes `values[i]` as the value at `i + 1`.
    pub fn from_values(values: Vec<GReal>) -> Self {
        Tabulated { values }
    }

    pub fn values(&self) -> &[GReal] {
        &self.values
    }
}

impl ArithFn for Tabulated {
    fn bound(&self) -> usize {
        self.values.len()
    }
    fn eval_unchecked(&self, n: usize) -> Result<GReal> {
        Ok(self.values[n - 1])
    }
}

/// Dirichlet product `(f ∗ g)(n) = ⊕_{k|n} f(n/k) ⊙ g(k)`.
pub fn dirichlet_convolve<F, G>(f: &F, g: &G, n: usize) -> Result<GReal>
where
    F: ArithFn + ?Sized,
    G: ArithFn + ?Sized,
{
    if n == 0 {
        return Err(Error::Domain("index must be at least 1"));
    }
    let terms = divisors(n)
        .into_iter()
        .map(|k| Ok(f.eval(n / k)?.gmul(g.eval(k)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(gsum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn prime_table() {
        assert_eq!(&SMALL_PRIMES[..6], &[2, 3, 5, 7, 11, 13]);
        assert_eq!(SMALL_PRIMES.len(), 446);
        assert_eq!(*SMALL_PRIMES.last().unwrap(), 3137);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        for n in 1..300 {
            let brute: Vec<usize> = (1..=n).filter(|k| n % k == 0).collect();
            assert_eq!(divisors(n), brute);
        }
    }

    #[test]
    #[should_panic]
    fn divisors_of_zero() {
        divisors(0);
    }

    #[test]
    fn gcds() {
        assert_eq!(gcd(8, 12), 4);
        assert_eq!(gcd(37, 1), 1);
        assert_eq!(gcd(1, 37), 1);
        assert_eq!(gcd(7, 7), 7);
    }

    #[test]
    fn factorizations() {
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert_eq!(factorize(12).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(30).unwrap(), vec![(2, 1), (3, 1), (5, 1)]);
        assert_eq!(factorize(9_999_991).unwrap(), vec![(9_999_991, 1)]);
        assert_eq!(factorize(3137 * 3137).unwrap(), vec![(3137, 2)]);
        assert!(matches!(factorize(10_000_001), Err(Error::Capacity { .. })));
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
    }

    #[test]
    fn factorization_beyond_table() {
        let big = Factorizer::new(usize::MAX);
        // 10007 and 10009 are both above the small-prime table
        assert_eq!(big.factorize(10007 * 10009).unwrap(), vec![(10007, 1), (10009, 1)]);
        assert_eq!(big.factorize(10007 * 10007 * 2).unwrap(), vec![(2, 1), (10007, 2)]);
        let small = Factorizer::new(100);
        assert!(small.factorize(101).is_err());
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_g(1).unwrap(), GReal::ONE);
        assert_eq!(mobius_g(4).unwrap(), GReal::ZERO);
        assert_eq!(mobius_g(6).unwrap(), GReal::ONE);
        assert_eq!(mobius_g(2).unwrap(), GReal::from_int(-1));
        assert_eq!(mobius_g(30).unwrap(), GReal::from_int(-1));
        assert_eq!(mobius_g(18).unwrap(), GReal::ZERO);
    }

    #[test]
    fn mobius_prefix_matches_factorization() {
        let table = mobius_prefix(2000);
        for (n, &mu) in table.iter().enumerate().skip(1) {
            assert_eq!(mu, Factorizer::default().mobius_exponent(n).unwrap(), "n={n}");
        }
        assert_eq!(mobius_prefix(0), vec![0]);
    }

    #[test]
    fn divisor_mobius_sums() {
        assert_eq!(divisor_mobius_sum(1).unwrap(), GReal::ONE);
        assert_eq!(divisor_mobius_sum(6).unwrap(), GReal::ZERO);
        assert_eq!(divisor_mobius_sum(12).unwrap(), GReal::ZERO);
    }

    #[test]
    fn identity_and_unit() {
        assert_eq!(dirichlet_identity(1), GReal::ONE);
        assert_eq!(dirichlet_identity(2), GReal::ZERO);
        assert_eq!(dirichlet_identity(100), GReal::ZERO);
        assert_eq!(dirichlet_unit(1), GReal::ONE);
        assert_eq!(dirichlet_unit(7), GReal::ONE);
        assert_eq!(dirichlet_unit(1_000_000), GReal::ONE);
    }

    #[test]
    fn convolution_examples() {
        let mu = Mobius::default();
        for n in 1..200 {
            assert_eq!(
                dirichlet_convolve(&DirichletUnit, &mu, n).unwrap(),
                dirichlet_identity(n)
            );
        }
        // six divisors pairs (k, 6/k), each contributing e ⊙ e = e
        assert_eq!(
            dirichlet_convolve(&DirichletUnit, &DirichletUnit, 6).unwrap(),
            GReal::from_int(4)
        );
        let f = Tabulated::from_fn(50, |n| GReal::from_exponent((n as f64).sqrt()).unwrap());
        for n in 1..=50 {
            assert_eq!(dirichlet_convolve(&f, &DirichletIdentity, n).unwrap(), f.eval(n).unwrap());
            assert_eq!(dirichlet_convolve(&DirichletIdentity, &f, n).unwrap(), f.eval(n).unwrap());
        }
    }

    #[test]
    fn convolution_capacity() {
        let f = Tabulated::from_fn(10, |_| GReal::ONE);
        assert!(dirichlet_convolve(&f, &DirichletUnit, 10).is_ok());
        assert!(matches!(
            dirichlet_convolve(&f, &DirichletUnit, 11),
            Err(Error::Capacity { .. })
        ));
        assert!(dirichlet_convolve(&f, &f, 0).is_err());
    }

    #[test]
    fn memoized_table_agrees() {
        let mu = Mobius::default();
        let table = Tabulated::memoize(&mu, 100).unwrap();
        for n in 1..=100 {
            assert_eq!(table.eval(n).unwrap(), mu.eval(n).unwrap());
        }
        assert!(Tabulated::memoize(&Mobius(Factorizer::new(5)), 6).is_err());
    }
}
