//! Number-theory laboratory around the Mobius function and its summatory
//! (Mertens) function.
//!
//! The crate is organized as a set of small engines that cross-check each
//! other:
//!
//! - [`arith`]: exact integer groundwork. A trial-division Mobius oracle, a
//!   segmented Mobius sieve, overflow-guarded integer k-th roots, and a
//!   deterministic segment streamer that the other modules share.
//! - [`census`]: partitions `[1, n]` into five exhaustive classes (the unit,
//!   primes, non-squarefree numbers, squarefree with an even or odd number of
//!   prime factors) and ties the class counts to the Mertens function.
//! - [`mertens`]: prefix sums of the Mobius function with checkpoint traces
//!   and scaled-ratio tracking.
//! - [`series`]: finite sums of integer roots `n^(1/k)` in real and floored
//!   arithmetic, geometric progressions over root exponents, their closed
//!   forms, and ratio probes between the two.
//! - [`claims`]: machine-checkable verdicts for quantitative bounds on
//!   `|M(n)|`, overlap counts of repeated roots, and floored-sum
//!   inequalities, scanned over explicit ranges.
//! - [`zeta`]: partial sums of the Dirichlet series `sum mu(n) / n^s`
//!   evaluated directly and by summation by parts, with harmonic-series
//!   comparison columns.
//!
//! Every floating-point accumulation goes through compensated summation
//! ([`kahan::KahanSum`]), and all range scans are deterministic: worker
//! counts and segment sizes change wall time, never results.

pub mod arith;
pub mod census;
pub mod claims;
pub mod kahan;
pub mod mertens;
pub(crate) mod par;
pub mod series;
pub mod zeta;

pub use arith::{
    integer_kth_root, isqrt, mobius, sieve_mobius_range, sieve_mobius_range_with, ArithError,
    MobiusSegment, SieveOpts,
};
pub use census::{classify, classify_census, census_scan, Class, ClassificationCensus};
pub use claims::{
    bound_exponent, check_bound, mertens_extrema, overlap_count, registry, run_claim, BoundExponent,
    BoundCoeffs, BoundScale, BoundSide, BoundSpec, ClaimKind, ClaimsError, ClaimVerdict,
    MertensExtrema, OverlapKind, Quantity, RegisteredClaim, ThresholdCheck,
};
pub use mertens::{mertens_prefix, MertensTrace};
pub use series::{
    closed_form_sum, eval_progression, eval_series, ratio_probe, root_gap_check, ClosedForm,
    EvalMode, Family, RatioProbe, RatioTrace, RootGapCheck, SeriesError, SeriesSample, SeriesSpec,
};
pub use zeta::{
    partial_sum_abel, partial_sum_direct, partial_sum_trace, sigma_sweep, Complex64, ComplexPoint,
    PartialSumTrace, SigmaReport, ZetaError,
};
