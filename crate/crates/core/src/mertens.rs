//! Prefix sums of the Mobius function (the Mertens function `M`).

use serde::Serialize;

use crate::arith::{self, ArithError, SieveOpts};

/// `M(n)` sampled at a checkpoint grid, plus the largest scaled excursion
/// `|M(k)| / sqrt(k)` seen anywhere in the scanned range.
///
/// Ratio tracking starts at `k = 2`: `M(1) = 1` makes the `k = 1` ratio
/// exactly 1 regardless of anything else, which would mask the statistic the
/// field exists to expose.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MertensTrace {
    /// Ascending checkpoint values of `n`.
    pub grid: Vec<u64>,
    /// `M(n)` for each checkpoint, same order.
    pub values: Vec<i64>,
    /// Largest `|M(k)| / sqrt(k)` over `2 <= k <= n` (0 when `n < 2`).
    pub max_abs_ratio: f64,
    /// The `k` achieving `max_abs_ratio` (0 when `n < 2`).
    pub max_abs_ratio_at: u64,
}

/// Scans `M(k)` for `k` in `[1, n]`, recording values at `checkpoints` (which
/// must be strictly ascending and lie in `[1, n]`).
///
/// Segments are sieved in parallel per `opts`, but the fold runs in ascending
/// order, so the trace is identical for every worker count and segment size.
pub fn mertens_prefix(
    n: u64,
    checkpoints: &[u64],
    opts: &SieveOpts,
) -> Result<MertensTrace, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    if !checkpoints.windows(2).all(|w| w[0] < w[1])
        || checkpoints.iter().any(|&c| c == 0 || c > n)
    {
        return Err(ArithError::BadCheckpoints);
    }
    let mut values = Vec::with_capacity(checkpoints.len());
    let mut next_cp = 0usize;
    let mut m = 0i64;
    let mut best = 0.0f64;
    let mut best_at = 0u64;
    arith::stream_sieved(1, n, opts, |seg| {
        for (i, &mu) in seg.mu.iter().enumerate() {
            let k = seg.lo + i as u64;
            m += i64::from(mu);
            if k >= 2 {
                let ratio = m.unsigned_abs() as f64 / (k as f64).sqrt();
                if ratio > best {
                    best = ratio;
                    best_at = k;
                }
            }
            if next_cp < checkpoints.len() && checkpoints[next_cp] == k {
                values.push(m);
                next_cp += 1;
            }
        }
    });
    Ok(MertensTrace {
        grid: checkpoints.to_vec(),
        values,
        max_abs_ratio: best,
        max_abs_ratio_at: best_at,
    })
}
