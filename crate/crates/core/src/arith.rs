//! Exact integer groundwork: Mobius values, segmented sieving, integer roots.
//!
//! Two independent routes to the Mobius function live here on purpose.
//! [`mobius`] factors one value by trial division and is the reference
//! oracle; [`sieve_mobius_range`] sieves a whole segment with the primes up
//! to `sqrt(hi)`. The test suite holds them against each other, so neither
//! can drift without the other noticing.

use serde::Serialize;
use thiserror::Error;

use crate::par;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("argument must be at least 1")]
    ZeroArgument,
    #[error("empty range: lo {lo} exceeds hi {hi}")]
    EmptyRange { lo: u64, hi: u64 },
    #[error("segment of {len} values exceeds the configured cap of {cap}")]
    SegmentTooLong { len: u64, cap: u64 },
    #[error("root degree must be at least 1")]
    ZeroRootDegree,
    #[error("checkpoints must be ascending and lie in [1, n]")]
    BadCheckpoints,
}

/// Streaming parameters shared by every range scan in the crate.
///
/// Results never depend on either field: segments are sieved independently
/// and folded in ascending order regardless of how the work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveOpts {
    /// Values per sieve segment. Bounds peak memory (about ten bytes per
    /// value per in-flight segment).
    pub segment_len: usize,
    /// Worker threads used to sieve segments. `1` keeps everything on the
    /// calling thread.
    pub workers: usize,
}

impl Default for SieveOpts {
    fn default() -> Self {
        Self { segment_len: 1 << 20, workers: 1 }
    }
}

/// Mobius values for a contiguous range, `values[i] = mu(lo + i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MobiusSegment {
    pub lo: u64,
    pub hi: u64,
    pub values: Vec<i8>,
}

/// Mobius function by trial division: `1` for squarefree values with an even
/// number of prime factors, `-1` for an odd number, `0` when any square
/// divides. This is the reference implementation the sieve is checked
/// against; it shares no code with the sieve.
pub fn mobius(n: u64) -> Result<i8, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    let mut m = n;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d <= m / d {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Squarefree flag and count of distinct prime factors, by trial division.
pub(crate) fn trial_signature(n: u64) -> (bool, u8) {
    let mut m = n;
    let mut omega = 0u8;
    let mut squarefree = true;
    let mut d = 2u64;
    while d <= m / d {
        if m % d == 0 {
            omega += 1;
            m /= d;
            while m % d == 0 {
                squarefree = false;
                m /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        omega += 1;
    }
    (squarefree, omega)
}

/// Largest `r` with `r^k <= n`. The float seed is corrected by exact
/// overflow-guarded integer comparisons, so the bracket `r^k <= n < (r+1)^k`
/// holds for every input.
pub fn integer_kth_root(n: u64, k: u32) -> Result<u64, ArithError> {
    if k == 0 {
        return Err(ArithError::ZeroRootDegree);
    }
    if k == 1 || n <= 1 {
        return Ok(n);
    }
    if k >= 64 {
        // n >= 2 here, and 2^64 overflows u64, so the root is exactly 1.
        return Ok(1);
    }
    let mut r = (n as f64).powf(1.0 / f64::from(k)).round() as u64;
    r = r.max(1);
    while !pow_fits(r, k, n) {
        r -= 1;
    }
    while pow_fits(r + 1, k, n) {
        r += 1;
    }
    Ok(r)
}

/// `base^k <= n`, evaluated without overflow.
fn pow_fits(base: u64, k: u32, n: u64) -> bool {
    let mut acc = 1u64;
    for _ in 0..k {
        acc = match acc.checked_mul(base) {
            Some(v) if v <= n => v,
            _ => return false,
        };
    }
    true
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    integer_kth_root(n, 2).expect("degree 2 is valid")
}

/// Mobius values for `[lo, hi]` by segmented sieving, with the default
/// segment cap (see [`SieveOpts`]).
pub fn sieve_mobius_range(lo: u64, hi: u64) -> Result<MobiusSegment, ArithError> {
    sieve_mobius_range_with(lo, hi, &SieveOpts::default())
}

/// Mobius values for `[lo, hi]` with an explicit segment cap.
pub fn sieve_mobius_range_with(
    lo: u64,
    hi: u64,
    opts: &SieveOpts,
) -> Result<MobiusSegment, ArithError> {
    if lo == 0 {
        return Err(ArithError::ZeroArgument);
    }
    if hi < lo {
        return Err(ArithError::EmptyRange { lo, hi });
    }
    let len = hi - lo + 1;
    let cap = opts.segment_len.max(1) as u64;
    if len > cap {
        return Err(ArithError::SegmentTooLong { len, cap });
    }
    let primes = primes_up_to(isqrt(hi));
    let seg = sieve_segment(lo, hi, &primes);
    Ok(MobiusSegment { lo, hi, values: seg.mu })
}

/// One sieved segment with the factor data the census needs.
pub(crate) struct SievedSegment {
    pub lo: u64,
    pub mu: Vec<i8>,
    pub omega: Vec<u8>,
}

/// Sieves `[lo, hi]` given every prime up to `sqrt(hi)`. Each value's prime
/// factors below the bound are divided out; a leftover cofactor above 1 is
/// exactly one more prime.
fn sieve_segment(lo: u64, hi: u64, primes: &[u64]) -> SievedSegment {
    let len = (hi - lo + 1) as usize;
    let mut rem: Vec<u64> = (lo..=hi).collect();
    let mut negative = vec![false; len];
    let mut omega = vec![0u8; len];
    let mut square = vec![false; len];
    for &p in primes {
        if p.checked_mul(p).map_or(true, |pp| pp > hi) {
            break;
        }
        let start = match lo.div_ceil(p).checked_mul(p) {
            Some(s) if s <= hi => s,
            _ => continue,
        };
        let mut m = start;
        loop {
            let i = (m - lo) as usize;
            let mut count = 0u32;
            while rem[i] % p == 0 {
                rem[i] /= p;
                count += 1;
            }
            omega[i] += 1;
            negative[i] = !negative[i];
            if count >= 2 {
                square[i] = true;
            }
            m = match m.checked_add(p) {
                Some(next) if next <= hi => next,
                _ => break,
            };
        }
    }
    let mut mu = vec![0i8; len];
    for i in 0..len {
        if rem[i] > 1 {
            omega[i] += 1;
            negative[i] = !negative[i];
        }
        if !square[i] {
            mu[i] = if negative[i] { -1 } else { 1 };
        }
    }
    SievedSegment { lo, mu, omega }
}

/// All primes up to `limit`, by a plain sieve of Eratosthenes.
pub(crate) fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Sieves `[lo, hi]` segment by segment and visits each segment in ascending
/// order. Segments within a wave are sieved in parallel when
/// `opts.workers > 1`; the visit order (and therefore every result derived
/// from it) is identical for any worker count or segment size.
pub(crate) fn stream_sieved(
    lo: u64,
    hi: u64,
    opts: &SieveOpts,
    mut visit: impl FnMut(&SievedSegment),
) {
    debug_assert!(lo >= 1 && lo <= hi);
    let primes = primes_up_to(isqrt(hi));
    let seg_len = opts.segment_len.max(1) as u64;
    let workers = opts.workers.max(1);
    let mut starts = Vec::new();
    let mut s = lo;
    loop {
        starts.push(s);
        let end = s.saturating_add(seg_len - 1).min(hi);
        if end == hi {
            break;
        }
        s = end + 1;
    }
    let mut done = 0usize;
    while done < starts.len() {
        let wave = (starts.len() - done).min(workers);
        let batch = par::run_ordered(wave, workers, |i| {
            let s0 = starts[done + i];
            let e0 = s0.saturating_add(seg_len - 1).min(hi);
            sieve_segment(s0, e0, &primes)
        });
        for seg in &batch {
            visit(seg);
        }
        done += wave;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_first_ten() {
        let expect: [i8; 10] = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1).unwrap(), e, "mu({})", i + 1);
        }
    }

    #[test]
    fn mobius_rejects_zero() {
        assert_eq!(mobius(0), Err(ArithError::ZeroArgument));
    }

    #[test]
    fn sieve_matches_oracle_from_one() {
        let seg = sieve_mobius_range(1, 3000).unwrap();
        for n in 1..=3000u64 {
            assert_eq!(seg.values[(n - 1) as usize], mobius(n).unwrap(), "mu({n})");
        }
    }

    #[test]
    fn sieve_matches_oracle_high_window() {
        let (lo, hi) = (999_950_000, 999_952_000);
        let seg = sieve_mobius_range(lo, hi).unwrap();
        for n in lo..=hi {
            assert_eq!(seg.values[(n - lo) as usize], mobius(n).unwrap(), "mu({n})");
        }
    }

    #[test]
    fn sieve_validates_bounds() {
        assert_eq!(sieve_mobius_range(0, 5), Err(ArithError::ZeroArgument));
        assert_eq!(sieve_mobius_range(9, 5), Err(ArithError::EmptyRange { lo: 9, hi: 5 }));
        let tight = SieveOpts { segment_len: 10, workers: 1 };
        assert_eq!(
            sieve_mobius_range_with(1, 11, &tight),
            Err(ArithError::SegmentTooLong { len: 11, cap: 10 })
        );
    }

    #[test]
    fn roots_spot_values() {
        assert_eq!(integer_kth_root(100, 2).unwrap(), 10);
        assert_eq!(integer_kth_root(100, 3).unwrap(), 4);
        assert_eq!(integer_kth_root(48, 5).unwrap(), 2);
        assert_eq!(integer_kth_root(99, 2).unwrap(), 9);
        assert_eq!(integer_kth_root(1, 17).unwrap(), 1);
        assert_eq!(integer_kth_root(0, 3).unwrap(), 0);
        assert_eq!(isqrt(10_000_000_000_000_000_000), 3_162_277_660);
    }

    #[test]
    fn roots_edge_degrees() {
        assert_eq!(integer_kth_root(7, 0), Err(ArithError::ZeroRootDegree));
        assert_eq!(integer_kth_root(u64::MAX, 1).unwrap(), u64::MAX);
        assert_eq!(integer_kth_root(u64::MAX, 2).unwrap(), 4_294_967_295);
        assert_eq!(integer_kth_root(u64::MAX, 63).unwrap(), 2);
        assert_eq!(integer_kth_root(u64::MAX, 64).unwrap(), 1);
        assert_eq!(integer_kth_root(2, 1000).unwrap(), 1);
        // exact powers sit on the bracket boundary
        assert_eq!(integer_kth_root(1 << 63, 63).unwrap(), 2);
        assert_eq!(integer_kth_root((1 << 63) - 1, 63).unwrap(), 1);
    }

    #[test]
    fn stream_is_invariant_under_scheduling() {
        let collect = |opts: &SieveOpts| {
            let mut all = Vec::new();
            stream_sieved(1, 50_000, opts, |seg| all.extend_from_slice(&seg.mu));
            all
        };
        let base = collect(&SieveOpts { segment_len: 1 << 20, workers: 1 });
        for (seg_len, workers) in [(700, 1), (700, 4), (4096, 8), (50_000, 2)] {
            let got = collect(&SieveOpts { segment_len: seg_len, workers });
            assert_eq!(got, base, "segment_len={seg_len} workers={workers}");
        }
    }
}
