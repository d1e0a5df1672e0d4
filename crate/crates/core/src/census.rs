//! Five-way classification of the integers in `[1, n]` and the bookkeeping
//! identities that tie the class counts to the Mertens function.
//!
//! Every integer lands in exactly one class: the unit, the primes, the
//! non-squarefree numbers, and the squarefree composites split by the parity
//! of their distinct-prime count. Squarefree-even numbers carry `mu = +1`,
//! primes and squarefree-odd numbers carry `mu = -1`, so
//! `M(n) = 1 + squarefree_even - primes - squarefree_odd`.

use serde::Serialize;

use crate::arith::{self, ArithError, SieveOpts};

/// The class of a single integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Class {
    /// The unit, `n = 1`.
    One,
    /// A prime.
    Prime,
    /// Divisible by some prime square (`mu = 0`).
    NonSquarefree,
    /// Squarefree composite with an even number of prime factors (`mu = +1`).
    SquarefreeEven,
    /// Squarefree composite with an odd number of prime factors (`mu = -1`).
    SquarefreeOdd,
}

impl Class {
    fn from_signature(squarefree: bool, omega: u8) -> Class {
        if !squarefree {
            Class::NonSquarefree
        } else if omega == 1 {
            Class::Prime
        } else if omega % 2 == 0 {
            Class::SquarefreeEven
        } else {
            Class::SquarefreeOdd
        }
    }
}

/// Classifies one integer by trial division. Independent of the sieve, so the
/// two routes can be checked against each other.
pub fn classify(n: u64) -> Result<Class, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    if n == 1 {
        return Ok(Class::One);
    }
    let (squarefree, omega) = arith::trial_signature(n);
    Ok(Class::from_signature(squarefree, omega))
}

/// Class counts for `[1, n]`, plus `M(n)` accumulated in the same pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassificationCensus {
    pub n: u64,
    pub ones: u64,
    pub primes: u64,
    pub nonsquarefree: u64,
    pub squarefree_even: u64,
    pub squarefree_odd: u64,
    pub mertens: i64,
}

impl ClassificationCensus {
    fn empty() -> ClassificationCensus {
        ClassificationCensus {
            n: 0,
            ones: 0,
            primes: 0,
            nonsquarefree: 0,
            squarefree_even: 0,
            squarefree_odd: 0,
            mertens: 0,
        }
    }

    fn absorb(&mut self, k: u64, class: Class, mu: i8) {
        self.n = k;
        match class {
            Class::One => self.ones += 1,
            Class::Prime => self.primes += 1,
            Class::NonSquarefree => self.nonsquarefree += 1,
            Class::SquarefreeEven => self.squarefree_even += 1,
            Class::SquarefreeOdd => self.squarefree_odd += 1,
        }
        self.mertens += i64::from(mu);
    }

    /// Total across the five classes.
    pub fn partition_sum(&self) -> u64 {
        self.ones + self.primes + self.nonsquarefree + self.squarefree_even + self.squarefree_odd
    }

    /// The five classes are exhaustive and disjoint: counts sum to `n`.
    pub fn partition_holds(&self) -> bool {
        self.partition_sum() == self.n
    }

    /// `M(n) = 1 + squarefree_even - primes - squarefree_odd`.
    pub fn mertens_identity_holds(&self) -> bool {
        let signed = self.ones as i64 + self.squarefree_even as i64
            - self.primes as i64
            - self.squarefree_odd as i64;
        signed == self.mertens
    }
}

/// Streams the running census for every `k` in `[1, n]` in ascending order.
///
/// `visit` sees the census state after each integer is absorbed, so callers
/// can check identities pointwise without materializing `n` snapshots.
pub fn census_scan(
    n: u64,
    opts: &SieveOpts,
    mut visit: impl FnMut(&ClassificationCensus),
) -> Result<(), ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    let mut census = ClassificationCensus::empty();
    arith::stream_sieved(1, n, opts, |seg| {
        for (i, (&mu, &omega)) in seg.mu.iter().zip(seg.omega.iter()).enumerate() {
            let k = seg.lo + i as u64;
            let class = if k == 1 {
                Class::One
            } else {
                Class::from_signature(mu != 0, omega)
            };
            census.absorb(k, class, mu);
            visit(&census);
        }
    });
    Ok(())
}

/// The census of `[1, n]` in one shot.
pub fn classify_census(n: u64, opts: &SieveOpts) -> Result<ClassificationCensus, ArithError> {
    let mut last = ClassificationCensus::empty();
    census_scan(n, opts, |c| last = *c)?;
    Ok(last)
}
