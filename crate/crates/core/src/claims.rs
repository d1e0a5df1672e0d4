//! Machine-checkable verdicts for the inequality claims: Mertens-function
//! bounds of the shape `(a sqrt(n) + b n^{1/3} + d n^{1/4} + e)`, the
//! census-vs-series gap, overlap counts for repeated root values, and the
//! even/odd floored-sum comparison.
//!
//! A verdict never fails the process: a claim that does not hold is a result,
//! carried in [`ClaimVerdict`] with `holds_everywhere = false`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, SieveOpts};
use crate::series;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ClaimsError {
    #[error("argument must be at least {min}, got {n}")]
    ArgumentTooSmall { n: u64, min: u64 },
    #[error("range must start at 1 or above")]
    ZeroRangeStart,
    #[error("scale constant must be finite and exceed 1, got {c}")]
    BadConstant { c: f64 },
    #[error("threshold values must be finite")]
    BadThreshold,
}

/// The two readings of "how often do repeated values occur" for the floored
/// root table `floor(n^{1/k})`, `2 <= k <= floor(sqrt(n))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OverlapKind {
    /// `sum_{k=3}^{floor(sqrt(n))} (floor(n^{1/k}) - 1)`: the table's total
    /// count of entries at least 2, minus the distinct slot count.
    MultisetExcess,
    /// Number of pairs `(a, k)` with `a >= 2`, `k >= 2`, `a^k <= n`, minus
    /// the number of distinct perfect powers up to `n`.
    PerfectPowerMultiplicity,
}

/// Which side of a two-sided bound a claim asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundSide {
    /// Quantity stays below the bound: margin is `bound - quantity`.
    Upper,
    /// Quantity stays above the bound: margin is `quantity - bound`.
    Lower,
}

/// Coefficients for a bound of the shape
/// `a sqrt(n) + b n^{1/3} + d n^{1/4} + e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCoeffs {
    pub a: f64,
    pub b: f64,
    pub d: f64,
    pub e: f64,
}

/// Whether the coefficient shape is multiplied by `c/(c-1)` or used as-is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundScale {
    /// Multiply by `c/(c-1)`.
    CFactor,
    /// Use the coefficients unscaled; `c` is inert but still recorded.
    Unit,
}

/// A parameterized bound. `c` must be finite and exceed 1 so the `c/(c-1)`
/// factor stays finite and positive, even when the scale is `Unit` and the
/// factor never materializes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSpec {
    pub claim_id: &'static str,
    pub c: f64,
    pub coeffs: BoundCoeffs,
    pub scale: BoundScale,
}

impl BoundSpec {
    pub fn scale_factor(&self) -> f64 {
        match self.scale {
            BoundScale::CFactor => self.c / (self.c - 1.0),
            BoundScale::Unit => 1.0,
        }
    }

    /// Evaluates the bound at `n`. The quarter root is `sqrt(sqrt(n))` so the
    /// value is reproducible across toolchains.
    pub fn bound_at(&self, n: u64) -> f64 {
        let x = n as f64;
        let rt2 = x.sqrt();
        let rt3 = x.cbrt();
        let rt4 = rt2.sqrt();
        self.scale_factor()
            * (self.coeffs.a * rt2 + self.coeffs.b * rt3 + self.coeffs.d * rt4 + self.coeffs.e)
    }

    fn validate(&self) -> Result<(), ClaimsError> {
        if !(self.c.is_finite() && self.c > 1.0) {
            return Err(ClaimsError::BadConstant { c: self.c });
        }
        Ok(())
    }
}

/// What a bound is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    /// `|M(n)|` against the coefficient bound, scanned at every `n`.
    AbsMertens,
    /// `n` against `c * F1(n)` (real mode). The coefficient shape does not
    /// participate; only `c` does. Scanned on a geometric grid (powers of 2
    /// and 10 plus both endpoints): the full-range scan is quadratic in `n`,
    /// and `F1(n) >= sqrt(n) + (n - 2) >= n` for `n >= 4` settles every
    /// skipped point for any `c > 1`.
    CensusGap,
    /// An overlap count against the coefficient bound, scanned at every `n`.
    Overlap { kind: OverlapKind, side: BoundSide },
}

/// Outcome of scanning one claim over a range.
///
/// A point holds when its margin is at least 0, so the three fields stay
/// consistent: `holds_everywhere` iff `first_violation` is absent iff
/// `worst_margin >= 0`. Touching a bound exactly counts as holding. Over an
/// empty range the verdict is vacuously true with `worst_margin` infinite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimVerdict {
    pub claim_id: String,
    #[serde(rename = "range")]
    pub n_range: (u64, u64),
    #[serde(rename = "holds")]
    pub holds_everywhere: bool,
    pub first_violation: Option<u64>,
    pub worst_margin: f64,
    /// The `n` achieving `worst_margin` (first such on ties; 0 when empty).
    pub argmax_n: u64,
}

struct VerdictAccum {
    worst: f64,
    at: u64,
    first: Option<u64>,
}

impl VerdictAccum {
    fn new() -> VerdictAccum {
        VerdictAccum { worst: f64::INFINITY, at: 0, first: None }
    }

    fn observe(&mut self, n: u64, margin: f64) {
        if margin < self.worst {
            self.worst = margin;
            self.at = n;
        }
        if margin < 0.0 && self.first.is_none() {
            self.first = Some(n);
        }
    }

    fn into_verdict(self, claim_id: &str, lo: u64, hi: u64) -> ClaimVerdict {
        ClaimVerdict {
            claim_id: claim_id.to_string(),
            n_range: (lo, hi),
            holds_everywhere: self.first.is_none(),
            first_violation: self.first,
            worst_margin: self.worst,
            argmax_n: self.at,
        }
    }
}

/// Incrementally maintained table of `floor(n^{1/k})` for `2 <= k <= 63`,
/// advanced by one `n` at a time. Exponents above 63 never matter: `2^64`
/// exceeds any `u64`, so those roots are identically 1 and are accounted for
/// analytically by the sum accessors.
struct RootTable {
    n: u64,
    /// `floor(sqrt(n))`, the slot cap for capped sums.
    cap: u64,
    next_square: Option<u64>,
    roots: [u64; 64],
    /// `(m, k)` pairs, sorted by `m`: at `n = m` the root for `k` increments.
    events: Vec<(u64, u32)>,
    ptr: usize,
}

impl RootTable {
    fn new(lo: u64, hi: u64) -> RootTable {
        let mut roots = [1u64; 64];
        for (k, slot) in roots.iter_mut().enumerate().skip(2) {
            *slot = arith::integer_kth_root(lo, k as u32).expect("k >= 2");
        }
        let mut events = Vec::new();
        for k in 2u32..64 {
            for a in 2u64.. {
                match a.checked_pow(k) {
                    Some(m) if m <= hi => {
                        if m > lo {
                            events.push((m, k));
                        }
                    }
                    _ => break,
                }
            }
        }
        events.sort_unstable();
        let cap = arith::isqrt(lo);
        RootTable {
            n: lo,
            cap,
            next_square: (cap + 1).checked_mul(cap + 1),
            roots,
            events,
            ptr: 0,
        }
    }

    fn advance(&mut self) {
        self.n += 1;
        if self.next_square == Some(self.n) {
            self.cap += 1;
            self.next_square = (self.cap + 1).checked_mul(self.cap + 1);
        }
        while self.ptr < self.events.len() && self.events[self.ptr].0 == self.n {
            self.roots[self.events[self.ptr].1 as usize] += 1;
            self.ptr += 1;
        }
    }

    /// Sum of `floor(n^{1/k})` over even `k` in `[2, cap]`.
    fn even_capped_sum(&self) -> u64 {
        let top = self.cap.min(63) as usize;
        let mut sum = 0u64;
        let mut k = 2;
        while k <= top {
            sum += self.roots[k];
            k += 2;
        }
        if self.cap >= 64 {
            sum += self.cap / 2 - 31;
        }
        sum
    }

    /// Sum of `floor(n^{1/k})` over odd `k` in `[3, cap]`.
    fn odd_capped_sum(&self) -> u64 {
        let top = self.cap.min(63) as usize;
        let mut sum = 0u64;
        let mut k = 3;
        while k <= top {
            sum += self.roots[k];
            k += 2;
        }
        if self.cap >= 65 {
            sum += (self.cap + 1) / 2 - 32;
        }
        sum
    }

    /// `sum_{k=3}^{cap} (floor(n^{1/k}) - 1)`; slots past 63 contribute 0.
    fn multiset_excess(&self) -> u64 {
        let top = self.cap.min(63) as usize;
        let mut sum = 0u64;
        for k in 3..=top {
            sum += self.roots[k] - 1;
        }
        sum
    }

    /// Number of pairs `(a, k)`, `a >= 2`, `k >= 2`, `a^k <= n`. No cap:
    /// slots with root 1 contribute 0.
    fn power_pairs(&self) -> u64 {
        self.roots[2..].iter().map(|&r| r - 1).sum()
    }
}

/// All distinct perfect powers `a^k <= hi` (`a >= 2`, `k >= 2`), ascending.
fn distinct_powers_up_to(hi: u64) -> Vec<u64> {
    let mut v = Vec::new();
    for k in 2u32..64 {
        for a in 2u64.. {
            match a.checked_pow(k) {
                Some(m) if m <= hi => v.push(m),
                _ => break,
            }
        }
        if 2u64.checked_pow(k).map_or(true, |m| m > hi) {
            break;
        }
    }
    v.sort_unstable();
    v.dedup();
    v
}

/// Exact overlap count for a single `n` by direct root extraction, the
/// route independent of the incremental scan.
pub fn overlap_count(n: u64, kind: OverlapKind) -> Result<u64, ClaimsError> {
    if n < 4 {
        return Err(ClaimsError::ArgumentTooSmall { n, min: 4 });
    }
    let log2n = u64::from(n.ilog2());
    Ok(match kind {
        OverlapKind::MultisetExcess => {
            // Roots for k > log2(n) are 1 and contribute nothing.
            let top = arith::isqrt(n).min(log2n);
            (3..=top)
                .map(|k| arith::integer_kth_root(n, k as u32).expect("k >= 3") - 1)
                .sum()
        }
        OverlapKind::PerfectPowerMultiplicity => {
            let pairs: u64 = (2..=log2n)
                .map(|k| arith::integer_kth_root(n, k as u32).expect("k >= 2") - 1)
                .sum();
            pairs - distinct_powers_up_to(n).len() as u64
        }
    })
}

/// Streams `(n, overlap_count(n, kind))` for every `n` in `[lo, hi]` in one
/// incremental pass.
pub fn overlap_scan(
    kind: OverlapKind,
    lo: u64,
    hi: u64,
    mut visit: impl FnMut(u64, u64),
) -> Result<(), ClaimsError> {
    if lo < 4 {
        return Err(ClaimsError::ArgumentTooSmall { n: lo, min: 4 });
    }
    if lo > hi {
        return Ok(());
    }
    let mut table = RootTable::new(lo, hi);
    match kind {
        OverlapKind::MultisetExcess => {
            visit(lo, table.multiset_excess());
            for n in lo + 1..=hi {
                table.advance();
                visit(n, table.multiset_excess());
            }
        }
        OverlapKind::PerfectPowerMultiplicity => {
            let distinct = distinct_powers_up_to(hi);
            let mut seen = distinct.partition_point(|&m| m <= lo) as u64;
            visit(lo, table.power_pairs() - seen);
            for n in lo + 1..=hi {
                table.advance();
                if distinct.get(seen as usize) == Some(&n) {
                    seen += 1;
                }
                visit(n, table.power_pairs() - seen);
            }
        }
    }
    Ok(())
}

/// Floored root sums of `[2, floor(sqrt(n))]` split by index parity:
/// `(sum over even k >= 2, sum over odd k >= 3)`. Direct evaluation.
pub fn floored_parity_sums(n: u64) -> Result<(u64, u64), ClaimsError> {
    if n == 0 {
        return Err(ClaimsError::ArgumentTooSmall { n, min: 1 });
    }
    let mut even = 0u64;
    let mut odd = 0u64;
    for k in 2..=arith::isqrt(n) {
        let r = arith::integer_kth_root(n, k as u32).expect("k >= 2");
        if k % 2 == 0 {
            even += r;
        } else {
            odd += r;
        }
    }
    Ok((even, odd))
}

/// Streams `(n, even_sum, odd_sum)` over `[lo, hi]` incrementally.
pub fn floored_parity_scan(lo: u64, hi: u64, mut visit: impl FnMut(u64, u64, u64)) {
    if lo == 0 || lo > hi {
        return;
    }
    let mut table = RootTable::new(lo, hi);
    visit(lo, table.even_capped_sum(), table.odd_capped_sum());
    for n in lo + 1..=hi {
        table.advance();
        visit(n, table.even_capped_sum(), table.odd_capped_sum());
    }
}

/// Endpoints plus every power of 2 and of 10 inside `[lo, hi]`, ascending.
fn geometric_grid(lo: u64, hi: u64) -> Vec<u64> {
    let mut grid = BTreeSet::new();
    grid.insert(lo);
    grid.insert(hi);
    for base in [2u64, 10] {
        let mut p = 1u64;
        while let Some(next) = p.checked_mul(base) {
            p = next;
            if p > hi {
                break;
            }
            if p >= lo {
                grid.insert(p);
            }
        }
    }
    grid.into_iter().collect()
}

/// Scans `quantity` against `spec` over `[lo, hi]` and records the verdict.
/// A point holds when its margin (bound minus quantity, oriented by the
/// claim's side) is at least 0. `lo > hi` yields the vacuous verdict.
pub fn check_bound(
    spec: &BoundSpec,
    quantity: Quantity,
    lo: u64,
    hi: u64,
    opts: &SieveOpts,
) -> Result<ClaimVerdict, ClaimsError> {
    spec.validate()?;
    if lo == 0 {
        return Err(ClaimsError::ZeroRangeStart);
    }
    let mut acc = VerdictAccum::new();
    if lo <= hi {
        match quantity {
            Quantity::AbsMertens => {
                let mut m = 0i64;
                arith::stream_sieved(1, hi, opts, |seg| {
                    for (i, &mu) in seg.mu.iter().enumerate() {
                        let n = seg.lo + i as u64;
                        m += i64::from(mu);
                        if n >= lo {
                            acc.observe(n, spec.bound_at(n) - m.unsigned_abs() as f64);
                        }
                    }
                });
            }
            Quantity::CensusGap => {
                for n in geometric_grid(lo, hi) {
                    let f1 = series::f1_real(n);
                    acc.observe(n, spec.c * f1 - n as f64);
                }
            }
            Quantity::Overlap { kind, side } => {
                overlap_scan(kind, lo, hi, |n, count| {
                    let bound = spec.bound_at(n);
                    let margin = match side {
                        BoundSide::Upper => bound - count as f64,
                        BoundSide::Lower => count as f64 - bound,
                    };
                    acc.observe(n, margin);
                })?;
            }
        }
    }
    Ok(acc.into_verdict(spec.claim_id, lo, hi))
}

/// The two exponent readings of the scaled square-root bound: its logarithm
/// base `n`, and that logarithm's excess over one half. The first tends to
/// 1/2 from above as `n` grows; the excess is the `epsilon` in
/// `n^{1/2 + epsilon}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundExponent {
    pub n: u64,
    pub c: f64,
    /// `ln((c/(c-1)) (sqrt(n)/2 + 1)) / ln n`.
    pub log_n_bound: f64,
    /// `log_n_bound - 1/2`.
    pub excess_over_half: f64,
}

pub fn bound_exponent(n: u64, c: f64) -> Result<BoundExponent, ClaimsError> {
    if n < 2 {
        return Err(ClaimsError::ArgumentTooSmall { n, min: 2 });
    }
    if !(c.is_finite() && c > 1.0) {
        return Err(ClaimsError::BadConstant { c });
    }
    let x = n as f64;
    let bound = c / (c - 1.0) * (0.5 * x.sqrt() + 1.0);
    let log_n_bound = bound.ln() / x.ln();
    Ok(BoundExponent { n, c, log_n_bound, excess_over_half: log_n_bound - 0.5 })
}

/// One threshold comparison from [`mertens_extrema`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdCheck {
    pub threshold: f64,
    /// Whether `max |M(n)|/sqrt(n)` in range exceeded the threshold.
    pub exceeded: bool,
}

/// Extremes of the scaled Mertens ratio `M(n)/sqrt(n)`.
///
/// The scan starts at `n = 2`: the `n = 1` ratio is exactly 1 by definition
/// and would pin every maximum to the degenerate point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MertensExtrema {
    pub n_max: u64,
    pub max_ratio: f64,
    pub max_ratio_at: u64,
    pub min_ratio: f64,
    pub min_ratio_at: u64,
    pub max_abs_ratio: f64,
    pub max_abs_ratio_at: u64,
    pub thresholds: Vec<ThresholdCheck>,
}

pub fn mertens_extrema(
    n_max: u64,
    thresholds: &[f64],
    opts: &SieveOpts,
) -> Result<MertensExtrema, ClaimsError> {
    if n_max < 10 {
        return Err(ClaimsError::ArgumentTooSmall { n: n_max, min: 10 });
    }
    if thresholds.iter().any(|t| !t.is_finite()) {
        return Err(ClaimsError::BadThreshold);
    }
    let mut m = 0i64;
    let mut max = f64::NEG_INFINITY;
    let mut max_at = 0u64;
    let mut min = f64::INFINITY;
    let mut min_at = 0u64;
    arith::stream_sieved(1, n_max, opts, |seg| {
        for (i, &mu) in seg.mu.iter().enumerate() {
            let n = seg.lo + i as u64;
            m += i64::from(mu);
            if n < 2 {
                continue;
            }
            let ratio = m as f64 / (n as f64).sqrt();
            if ratio > max {
                max = ratio;
                max_at = n;
            }
            if ratio < min {
                min = ratio;
                min_at = n;
            }
        }
    });
    let (max_abs_ratio, max_abs_ratio_at) =
        if max.abs() >= min.abs() { (max.abs(), max_at) } else { (min.abs(), min_at) };
    let thresholds = thresholds
        .iter()
        .map(|&threshold| ThresholdCheck { threshold, exceeded: max_abs_ratio > threshold })
        .collect();
    Ok(MertensExtrema {
        n_max,
        max_ratio: max,
        max_ratio_at: max_at,
        min_ratio: min,
        min_ratio_at: min_at,
        max_abs_ratio,
        max_abs_ratio_at,
        thresholds,
    })
}

/// What a registered claim checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ClaimKind {
    Bound { spec: BoundSpec, quantity: Quantity },
    /// Even-index floored root sum stays at or above the odd-index sum,
    /// both capped at `floor(sqrt(n))`; margins are exact integers.
    FlooredEvenOdd,
}

/// A claim from the built-in registry: id, default lower scan endpoint, and
/// what to check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegisteredClaim {
    pub id: &'static str,
    pub lo: u64,
    pub kind: ClaimKind,
}

fn cfactor_claim(id: &'static str, c: f64, coeffs: BoundCoeffs) -> RegisteredClaim {
    RegisteredClaim {
        id,
        lo: 1,
        kind: ClaimKind::Bound {
            spec: BoundSpec { claim_id: id, c, coeffs, scale: BoundScale::CFactor },
            quantity: Quantity::AbsMertens,
        },
    }
}

fn gap_claim(id: &'static str, c: f64) -> RegisteredClaim {
    RegisteredClaim {
        id,
        lo: 4,
        kind: ClaimKind::Bound {
            spec: BoundSpec {
                claim_id: id,
                c,
                coeffs: BoundCoeffs { a: 0.0, b: 0.0, d: 0.0, e: 0.0 },
                scale: BoundScale::Unit,
            },
            quantity: Quantity::CensusGap,
        },
    }
}

fn overlap_claim(id: &'static str, kind: OverlapKind, side: BoundSide) -> RegisteredClaim {
    let a = match side {
        BoundSide::Upper => 1.5,
        BoundSide::Lower => 0.5,
    };
    RegisteredClaim {
        id,
        lo: 16,
        kind: ClaimKind::Bound {
            // c is inert under Unit scale; any finite value validates.
            spec: BoundSpec {
                claim_id: id,
                c: 1.3,
                coeffs: BoundCoeffs { a, b: 0.0, d: 0.0, e: 0.0 },
                scale: BoundScale::Unit,
            },
            quantity: Quantity::Overlap { kind, side },
        },
    }
}

/// The built-in claim registry, in reporting order. Every id appears exactly
/// once; an audit runs all of them to a shared upper endpoint.
pub fn registry() -> Vec<RegisteredClaim> {
    let half_sqrt = BoundCoeffs { a: 0.5, b: 0.0, d: 0.0, e: 1.0 };
    let refined = BoundCoeffs { a: 0.25, b: 1.0, d: -1.25, e: 1.0 };
    vec![
        cfactor_claim("mertens-half-sqrt-c1.1", 1.1, half_sqrt),
        cfactor_claim("mertens-half-sqrt-c1.2", 1.2, half_sqrt),
        cfactor_claim("mertens-half-sqrt-c1.3", 1.3, half_sqrt),
        cfactor_claim("mertens-refined-c1.1", 1.1, refined),
        cfactor_claim("mertens-refined-c1.2", 1.2, refined),
        cfactor_claim("mertens-refined-c1.3", 1.3, refined),
        RegisteredClaim {
            id: "mertens-explicit",
            lo: 1,
            kind: ClaimKind::Bound {
                spec: BoundSpec {
                    claim_id: "mertens-explicit",
                    // The explicit coefficient set is the c = 1.3 instance
                    // with the scale factor pre-multiplied in.
                    c: 1.3,
                    coeffs: BoundCoeffs { a: 1.084, b: 4.34, d: -5.42, e: 4.34 },
                    scale: BoundScale::Unit,
                },
                quantity: Quantity::AbsMertens,
            },
        },
        gap_claim("census-gap-c1.1", 1.1),
        gap_claim("census-gap-c1.2", 1.2),
        gap_claim("census-gap-c1.3", 1.3),
        overlap_claim("overlap-upper-multiset", OverlapKind::MultisetExcess, BoundSide::Upper),
        overlap_claim("overlap-lower-multiset", OverlapKind::MultisetExcess, BoundSide::Lower),
        overlap_claim(
            "overlap-upper-powerpairs",
            OverlapKind::PerfectPowerMultiplicity,
            BoundSide::Upper,
        ),
        overlap_claim(
            "overlap-lower-powerpairs",
            OverlapKind::PerfectPowerMultiplicity,
            BoundSide::Lower,
        ),
        RegisteredClaim { id: "floored-even-odd", lo: 16, kind: ClaimKind::FlooredEvenOdd },
    ]
}

/// Runs one registered claim from its default `lo` up to `hi`.
pub fn run_claim(
    claim: &RegisteredClaim,
    hi: u64,
    opts: &SieveOpts,
) -> Result<ClaimVerdict, ClaimsError> {
    match &claim.kind {
        ClaimKind::Bound { spec, quantity } => check_bound(spec, *quantity, claim.lo, hi, opts),
        ClaimKind::FlooredEvenOdd => {
            let mut acc = VerdictAccum::new();
            floored_parity_scan(claim.lo, hi, |n, even, odd| {
                acc.observe(n, even as f64 - odd as f64);
            });
            Ok(acc.into_verdict(claim.id, claim.lo, hi))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SieveOpts {
        SieveOpts::default()
    }

    fn assert_close(got: f64, want: f64, tol: f64) {
        assert!((got - want).abs() <= tol * want.abs().max(1.0), "got {got:.17e}, want {want:.17e}");
    }

    #[test]
    fn overlap_spot_values() {
        assert_eq!(overlap_count(4, OverlapKind::MultisetExcess), Ok(0));
        assert_eq!(overlap_count(16, OverlapKind::MultisetExcess), Ok(2));
        assert_eq!(overlap_count(100, OverlapKind::MultisetExcess), Ok(7));
        assert_eq!(overlap_count(10_000, OverlapKind::MultisetExcess), Ok(46));
        assert_eq!(overlap_count(4, OverlapKind::PerfectPowerMultiplicity), Ok(0));
        assert_eq!(overlap_count(16, OverlapKind::PerfectPowerMultiplicity), Ok(1));
        assert_eq!(overlap_count(100, OverlapKind::PerfectPowerMultiplicity), Ok(4));
        assert_eq!(overlap_count(10_000, OverlapKind::PerfectPowerMultiplicity), Ok(21));
        assert_eq!(
            overlap_count(3, OverlapKind::MultisetExcess),
            Err(ClaimsError::ArgumentTooSmall { n: 3, min: 4 })
        );
    }

    #[test]
    fn scan_matches_direct_overlap_counts() {
        for kind in [OverlapKind::MultisetExcess, OverlapKind::PerfectPowerMultiplicity] {
            let mut checked = 0;
            overlap_scan(kind, 4, 3000, |n, count| {
                assert_eq!(count, overlap_count(n, kind).unwrap(), "{kind:?} at n = {n}");
                checked += 1;
            })
            .unwrap();
            assert_eq!(checked, 2997);
        }
        // A window that starts far from 1 must seed its table correctly.
        overlap_scan(OverlapKind::PerfectPowerMultiplicity, 59_000, 60_100, |n, count| {
            assert_eq!(count, overlap_count(n, OverlapKind::PerfectPowerMultiplicity).unwrap(), "n = {n}");
        })
        .unwrap();
    }

    #[test]
    fn multiset_excess_is_monotone() {
        let mut prev = 0u64;
        overlap_scan(OverlapKind::MultisetExcess, 4, 5000, |_, count| {
            assert!(count >= prev);
            prev = count;
        })
        .unwrap();
    }

    #[test]
    fn parity_sums_spot_values() {
        assert_eq!(floored_parity_sums(16), Ok((6, 2)));
        assert_eq!(floored_parity_sums(27), Ok((7, 4)));
        assert_eq!(floored_parity_sums(32), Ok((7, 5)));
        assert_eq!(floored_parity_sums(100), Ok((17, 8)));
        assert_eq!(floored_parity_sums(10_000), Ok((165, 79)));
    }

    #[test]
    fn parity_scan_matches_direct() {
        floored_parity_scan(1, 2500, |n, even, odd| {
            assert_eq!((even, odd), floored_parity_sums(n).unwrap(), "n = {n}");
        });
        floored_parity_scan(999_000, 999_400, |n, even, odd| {
            assert_eq!((even, odd), floored_parity_sums(n).unwrap(), "n = {n}");
        });
    }

    #[test]
    fn bound_value_spot_checks() {
        let spec = BoundSpec {
            claim_id: "t",
            c: 1.3,
            coeffs: BoundCoeffs { a: 0.5, b: 0.0, d: 0.0, e: 1.0 },
            scale: BoundScale::CFactor,
        };
        assert_close(spec.bound_at(1_000_000), 2171.000_000_000_000_5, 1e-13);
        let explicit = BoundSpec {
            claim_id: "t2",
            c: 1.3,
            coeffs: BoundCoeffs { a: 1.084, b: 4.34, d: -5.42, e: 4.34 },
            scale: BoundScale::Unit,
        };
        assert_close(explicit.bound_at(1_000_000), 1350.944_550_818_873_7, 1e-13);
    }

    #[test]
    fn mertens_bound_verdict_small_range() {
        let reg = registry();
        let half_13 = reg.iter().find(|c| c.id == "mertens-half-sqrt-c1.3").unwrap();
        let verdict = run_claim(half_13, 2000, &opts()).unwrap();
        assert!(verdict.holds_everywhere);
        assert_eq!(verdict.first_violation, None);
        assert_eq!(verdict.argmax_n, 1);
        assert_close(verdict.worst_margin, 5.5, 1e-13);

        let explicit = reg.iter().find(|c| c.id == "mertens-explicit").unwrap();
        let verdict = run_claim(explicit, 2000, &opts()).unwrap();
        assert_eq!(verdict.argmax_n, 1);
        assert_close(verdict.worst_margin, 3.343_999_999_999_999_4, 1e-13);
    }

    #[test]
    fn overlap_verdicts_small_range() {
        let reg = registry();
        let upper_m = reg.iter().find(|c| c.id == "overlap-upper-multiset").unwrap();
        let v = run_claim(upper_m, 5000, &opts()).unwrap();
        assert!(v.holds_everywhere);
        assert_eq!(v.argmax_n, 16);
        assert_close(v.worst_margin, 4.0, 1e-14);

        let upper_p = reg.iter().find(|c| c.id == "overlap-upper-powerpairs").unwrap();
        let v = run_claim(upper_p, 5000, &opts()).unwrap();
        assert!(v.holds_everywhere);
        assert_eq!(v.argmax_n, 16);
        assert_close(v.worst_margin, 5.0, 1e-14);

        // The lower bound is touched exactly at n = 16 (count 2, bound 2.0),
        // which counts as holding; the first strict failure is n = 17.
        let lower_m = reg.iter().find(|c| c.id == "overlap-lower-multiset").unwrap();
        let v = run_claim(lower_m, 5000, &opts()).unwrap();
        assert!(!v.holds_everywhere);
        assert_eq!(v.first_violation, Some(17));

        let lower_p = reg.iter().find(|c| c.id == "overlap-lower-powerpairs").unwrap();
        let v = run_claim(lower_p, 5000, &opts()).unwrap();
        assert_eq!(v.first_violation, Some(16));
    }

    #[test]
    fn violation_is_minimal() {
        let reg = registry();
        let lower_m = reg.iter().find(|c| c.id == "overlap-lower-multiset").unwrap();
        let v = run_claim(lower_m, 300, &opts()).unwrap();
        let first = v.first_violation.unwrap();
        for n in 16..first {
            let count = overlap_count(n, OverlapKind::MultisetExcess).unwrap() as f64;
            assert!(count - 0.5 * (n as f64).sqrt() >= 0.0, "unexpected violation at {n}");
        }
        let count = overlap_count(first, OverlapKind::MultisetExcess).unwrap() as f64;
        assert!(count - 0.5 * (first as f64).sqrt() < 0.0);
    }

    #[test]
    fn worst_margin_is_self_consistent() {
        let reg = registry();
        for id in ["overlap-lower-multiset", "overlap-upper-powerpairs", "floored-even-odd"] {
            let claim = reg.iter().find(|c| c.id == id).unwrap();
            let v = run_claim(claim, 4000, &opts()).unwrap();
            let recomputed = match claim.kind {
                ClaimKind::Bound { spec, quantity: Quantity::Overlap { kind, side } } => {
                    let count = overlap_count(v.argmax_n, kind).unwrap() as f64;
                    let bound = spec.bound_at(v.argmax_n);
                    match side {
                        BoundSide::Upper => bound - count,
                        BoundSide::Lower => count - bound,
                    }
                }
                ClaimKind::FlooredEvenOdd => {
                    let (even, odd) = floored_parity_sums(v.argmax_n).unwrap();
                    even as f64 - odd as f64
                }
                _ => unreachable!(),
            };
            assert_eq!(v.worst_margin, recomputed, "{id}");
        }
    }

    #[test]
    fn parity_claim_small_range() {
        let reg = registry();
        let parity = reg.iter().find(|c| c.id == "floored-even-odd").unwrap();
        let v = run_claim(parity, 5000, &opts()).unwrap();
        assert!(v.holds_everywhere);
        assert_eq!(v.worst_margin, 2.0);
        assert_eq!(v.argmax_n, 32);
    }

    #[test]
    fn census_gap_verdict() {
        let reg = registry();
        let gap = reg.iter().find(|c| c.id == "census-gap-c1.1").unwrap();
        let v = run_claim(gap, 10_000, &opts()).unwrap();
        assert!(v.holds_everywhere);
        assert_eq!(v.argmax_n, 4);
        assert_close(v.worst_margin, 1.501_776_075_775_424, 1e-12);
    }

    #[test]
    fn vacuous_range_holds() {
        let spec = BoundSpec {
            claim_id: "t",
            c: 1.2,
            coeffs: BoundCoeffs { a: 0.5, b: 0.0, d: 0.0, e: 1.0 },
            scale: BoundScale::CFactor,
        };
        let v = check_bound(&spec, Quantity::AbsMertens, 10, 5, &opts()).unwrap();
        assert!(v.holds_everywhere);
        assert_eq!(v.first_violation, None);
        assert_eq!(v.worst_margin, f64::INFINITY);
    }

    #[test]
    fn rejects_bad_constants_and_ranges() {
        let mut spec = BoundSpec {
            claim_id: "t",
            c: 1.0,
            coeffs: BoundCoeffs { a: 0.5, b: 0.0, d: 0.0, e: 1.0 },
            scale: BoundScale::CFactor,
        };
        let got = check_bound(&spec, Quantity::AbsMertens, 1, 10, &opts());
        assert_eq!(got, Err(ClaimsError::BadConstant { c: 1.0 }));
        spec.c = 1.2;
        let got = check_bound(&spec, Quantity::AbsMertens, 0, 10, &opts());
        assert_eq!(got, Err(ClaimsError::ZeroRangeStart));
        assert_eq!(bound_exponent(1, 1.3), Err(ClaimsError::ArgumentTooSmall { n: 1, min: 2 }));
        assert_eq!(bound_exponent(100, 1.0), Err(ClaimsError::BadConstant { c: 1.0 }));
        assert_eq!(
            mertens_extrema(5, &[], &opts()),
            Err(ClaimsError::ArgumentTooSmall { n: 5, min: 10 })
        );
        assert_eq!(
            mertens_extrema(100, &[f64::NAN], &opts()),
            Err(ClaimsError::BadThreshold)
        );
    }

    #[test]
    fn bound_exponent_spot_values() {
        let e = bound_exponent(1_000_000, 1.3).unwrap();
        assert_close(e.log_n_bound, 0.556_109_970_575_736_67, 1e-12);
        assert_close(e.excess_over_half, 0.056_109_970_575_736_675, 1e-12);
        let e = bound_exponent(10_000, 1.2).unwrap();
        assert_close(e.log_n_bound, 0.621_430_356_620_395, 1e-12);
        let e = bound_exponent(1_000_000, 1.1).unwrap();
        assert_close(e.log_n_bound, 0.623_538_401_837_578_46, 1e-12);
    }

    #[test]
    fn extrema_small_range() {
        let ex = mertens_extrema(100, &[0.5, 1.06], &opts()).unwrap();
        assert_close(ex.max_ratio, 0.205_195_670_417_030_82, 1e-13);
        assert_eq!(ex.max_ratio_at, 95);
        assert_close(ex.min_ratio, -0.894_427_190_999_915_86, 1e-13);
        assert_eq!(ex.min_ratio_at, 5);
        assert_close(ex.max_abs_ratio, 0.894_427_190_999_915_86, 1e-13);
        assert_eq!(ex.max_abs_ratio_at, 5);
        assert_eq!(ex.thresholds[0].exceeded, true);
        assert_eq!(ex.thresholds[1].exceeded, false);
    }

    #[test]
    fn registry_ids_are_unique_and_complete() {
        let reg = registry();
        assert_eq!(reg.len(), 15);
        let mut ids: Vec<_> = reg.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 15);
    }
}
