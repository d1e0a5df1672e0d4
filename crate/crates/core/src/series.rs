//! Finite sums of integer roots `n^{1/k}` and the geometric progressions
//! built to shadow them, together with closed forms and decay probes.
//!
//! Each root-series family sums `n^{1/k}` over a different index set:
//!
//! * `F1`: `k = 2, 3, ..., n`
//! * `F2`: `k = 2, 3, ..., floor(sqrt(n))`
//! * `F4`: even `k = 4, 6, ..., floor(sqrt(n))`
//!
//! and evaluates either with real roots (`exp(ln n / k)`) or floored integer
//! roots. The progression families are geometric sums in the exponent:
//!
//! * `PHI1`: `2 * sum_{j=0}^{ceil(n/2)-1} n^{j/n}`
//! * `PHI2`: `2 * (1 + sum_{k=1}^{floor(floor(sqrt(n))/2)} n^{k/sqrt(n)})`
//! * `PHI4`: `4 * sum over sqrt(n)/8 steps of ratio n^{2/sqrt(n)}`, where a
//!   fractional step count is handled by an exact partial final term (see
//!   [`eval_progression`]).

use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::kahan::KahanSum;

/// Which sum to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    F1,
    F2,
    F4,
    Phi1,
    Phi2,
    Phi4,
}

/// Root-taking convention for the series families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EvalMode {
    /// Real roots, `exp(ln n / k)`.
    Real,
    /// Integer roots, `floor(n^{1/k})`. Undefined for progressions.
    Floored,
}

/// A fully specified evaluation request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeriesSpec {
    pub family: Family,
    pub mode: EvalMode,
    pub n: u64,
}

/// The result of evaluating a spec: the value and how many terms contributed.
///
/// In floored mode the value is an exact integer stored in an `f64` (term
/// sums here stay far below 2^53).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSample {
    pub spec: SeriesSpec,
    pub value: f64,
    pub term_count: u64,
}

/// Closed forms for the two progressions that collapse exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosedForm {
    /// `2 (sqrt(n) - 1) / (n^{1/n} - 1)`, the collapsed form of `PHI1`.
    S1,
    /// `4 (n^{1/4} - 1) / (n^{2/sqrt(n)} - 1)`, the collapsed form of `PHI4`.
    S4,
}

/// Decay ratios comparing a series against its shadowing progression or
/// closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RatioProbe {
    /// `n / S1(n)`.
    K1,
    /// Tail sum `sum_{k=floor(sqrt(n))}^{n} n^{1/k}` against
    /// `2 * sum_{j=0}^{(n - 2 floor(sqrt(n)))/2} n^{j/n}`.
    K2,
    /// `F4` (real) against `PHI4`.
    K3,
    /// `sqrt(n) / S4(n)`.
    K4,
}

/// A probe evaluated along a grid of `n` values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioTrace {
    pub probe: RatioProbe,
    pub grid: Vec<u64>,
    pub ratios: Vec<f64>,
}

/// Comparison of the first-step root gap `n^{1/n} - 1` against `2/sqrt(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootGapCheck {
    pub n: u64,
    pub gap: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("{family:?} is a progression, not a root series")]
    NotASeries { family: Family },
    #[error("{family:?} is a root series, not a progression")]
    NotAProgression { family: Family },
    #[error("floored mode is undefined for progressions")]
    FlooredProgression,
    #[error("n must be at least {min}, got {n}")]
    ArgumentTooSmall { n: u64, min: u64 },
    #[error("probe grid must not be empty")]
    EmptyGrid,
}

/// Above this `n`, `F1` in real mode switches to a split evaluation: exact
/// head terms plus a compensated `expm1` tail, avoiding `n` full `exp` calls
/// while keeping every term's deviation from 1 in the sum.
const F1_SPLIT_MIN: u64 = 10_000_000;

fn real_root(ln_n: f64, k: u64) -> f64 {
    (ln_n / k as f64).exp()
}

/// `F1` real mode by direct term-by-term summation.
fn f1_real_direct(n: u64) -> f64 {
    let ln_n = (n as f64).ln();
    let mut acc = KahanSum::new();
    for k in 2..=n {
        acc.add(real_root(ln_n, k));
    }
    acc.value()
}

/// `F1` real mode, split form: head roots summed exactly, tail summed as
/// `count + sum expm1(ln n / k)` so the near-1 terms do not drown.
fn f1_real_split(n: u64) -> f64 {
    let ln_n = (n as f64).ln();
    let head_end = (8 * u64::from(n.ilog2())).min(n);
    let mut head = KahanSum::new();
    for k in 2..=head_end {
        head.add(real_root(ln_n, k));
    }
    let mut tail = KahanSum::new();
    for k in head_end + 1..=n {
        tail.add((ln_n / k as f64).exp_m1());
    }
    let tail_ones = n.saturating_sub(head_end) as f64;
    head.value() + tail_ones + tail.value()
}

pub(crate) fn f1_real(n: u64) -> f64 {
    if n > F1_SPLIT_MIN {
        f1_real_split(n)
    } else {
        f1_real_direct(n)
    }
}

/// `F1` floored mode. Roots collapse to 1 once `2^k > n`, so only
/// `k <= log2(n)` need an actual root extraction.
fn f1_floored(n: u64) -> u64 {
    let cutoff = u64::from(n.ilog2()).min(n);
    let mut sum = 0u64;
    for k in 2..=cutoff {
        sum += arith::integer_kth_root(n, k as u32).expect("k >= 2");
    }
    sum + (n - cutoff.max(1))
}

fn even_upper(limit: u64) -> impl Iterator<Item = u64> {
    (4..=limit).step_by(2)
}

/// Evaluates one of the root-series families `F1`, `F2`, `F4`.
pub fn eval_series(spec: SeriesSpec) -> Result<SeriesSample, SeriesError> {
    if matches!(spec.family, Family::Phi1 | Family::Phi2 | Family::Phi4) {
        return Err(SeriesError::NotASeries { family: spec.family });
    }
    if spec.n < 2 {
        return Err(SeriesError::ArgumentTooSmall { n: spec.n, min: 2 });
    }
    let n = spec.n;
    let root_cap = arith::isqrt(n);
    let (value, term_count) = match (spec.family, spec.mode) {
        (Family::F1, EvalMode::Real) => (f1_real(n), n - 1),
        (Family::F1, EvalMode::Floored) => (f1_floored(n) as f64, n - 1),
        (Family::F2, EvalMode::Real) => {
            let ln_n = (n as f64).ln();
            let mut acc = KahanSum::new();
            for k in 2..=root_cap {
                acc.add(real_root(ln_n, k));
            }
            (acc.value(), root_cap.saturating_sub(1))
        }
        (Family::F2, EvalMode::Floored) => {
            let mut sum = 0u64;
            for k in 2..=root_cap {
                sum += arith::integer_kth_root(n, k as u32).expect("k >= 2");
            }
            (sum as f64, root_cap.saturating_sub(1))
        }
        (Family::F4, EvalMode::Real) => {
            let ln_n = (n as f64).ln();
            let mut acc = KahanSum::new();
            let mut count = 0u64;
            for k in even_upper(root_cap) {
                acc.add(real_root(ln_n, k));
                count += 1;
            }
            (acc.value(), count)
        }
        (Family::F4, EvalMode::Floored) => {
            let mut sum = 0u64;
            let mut count = 0u64;
            for k in even_upper(root_cap) {
                sum += arith::integer_kth_root(n, k as u32).expect("k >= 4");
                count += 1;
            }
            (sum as f64, count)
        }
        (Family::Phi1 | Family::Phi2 | Family::Phi4, _) => unreachable!(),
    };
    Ok(SeriesSample { spec, value, term_count })
}

/// Evaluates one of the progression families `PHI1`, `PHI2`, `PHI4`.
///
/// `PHI4` walks `sqrt(n)/8` steps of the ratio `q = n^{2/sqrt(n)}` starting
/// from 1. When the step count is fractional the final step is taken
/// partially: the full steps are summed term by term and the remainder is
/// closed off as `(n^{1/4} - q^{floor(m)}) / (q - 1)`, which agrees with the
/// plain ladder whenever `sqrt(n)/8` is a whole number and makes the sum
/// collapse to its closed form for every `n`.
pub fn eval_progression(spec: SeriesSpec) -> Result<SeriesSample, SeriesError> {
    if matches!(spec.family, Family::F1 | Family::F2 | Family::F4) {
        return Err(SeriesError::NotAProgression { family: spec.family });
    }
    if spec.mode == EvalMode::Floored {
        return Err(SeriesError::FlooredProgression);
    }
    if spec.n < 4 {
        return Err(SeriesError::ArgumentTooSmall { n: spec.n, min: 4 });
    }
    let n = spec.n;
    let ln_n = (n as f64).ln();
    let (value, term_count) = match spec.family {
        Family::Phi1 => {
            let m = n.div_ceil(2);
            let mut acc = KahanSum::new();
            for j in 0..m {
                acc.add((ln_n * j as f64 / n as f64).exp());
            }
            (2.0 * acc.value(), m)
        }
        Family::Phi2 => {
            let m = arith::isqrt(n) / 2;
            let rt = (n as f64).sqrt();
            let mut acc = KahanSum::new();
            acc.add(1.0);
            for k in 1..=m {
                acc.add((ln_n * k as f64 / rt).exp());
            }
            (2.0 * acc.value(), m + 1)
        }
        Family::Phi4 => {
            let rt = (n as f64).sqrt();
            let ln_q = 2.0 * ln_n / rt;
            let steps = rt / 8.0;
            let full = steps.floor();
            let mut acc = KahanSum::new();
            for j in 0..full as u64 {
                acc.add((ln_q * j as f64).exp());
            }
            let partial = ((0.25 * ln_n).exp() - (ln_q * full).exp()) / ln_q.exp_m1();
            acc.add(partial);
            (4.0 * acc.value(), steps.ceil() as u64)
        }
        Family::F1 | Family::F2 | Family::F4 => unreachable!(),
    };
    Ok(SeriesSample { spec, value, term_count })
}

/// Evaluates a closed form. Requires `n >= 2` so the denominators are
/// nonzero; uses `expm1` throughout since `n^{1/n} - 1` and
/// `n^{2/sqrt(n)} - 1` both vanish as `n` grows.
pub fn closed_form_sum(form: ClosedForm, n: u64) -> Result<f64, SeriesError> {
    if n < 2 {
        return Err(SeriesError::ArgumentTooSmall { n, min: 2 });
    }
    let ln_n = (n as f64).ln();
    let value = match form {
        ClosedForm::S1 => {
            let rt = (n as f64).sqrt();
            2.0 * (rt - 1.0) / (ln_n / n as f64).exp_m1()
        }
        ClosedForm::S4 => {
            let rt = (n as f64).sqrt();
            let quarter = rt.sqrt();
            4.0 * (quarter - 1.0) / (2.0 * ln_n / rt).exp_m1()
        }
    };
    Ok(value)
}

/// Tail of `F1` from `k = floor(sqrt(n))` to `n`, real roots, summed as
/// `count + sum expm1` so the mass of near-1 terms is kept exactly.
fn f3_real(n: u64) -> f64 {
    let ln_n = (n as f64).ln();
    let lo = arith::isqrt(n);
    let mut acc = KahanSum::new();
    for k in lo..=n {
        acc.add((ln_n / k as f64).exp_m1());
    }
    (n - lo + 1) as f64 + acc.value()
}

/// Progression shadowing the `F1` tail: `2 * sum_{j=0}^{m} n^{j/n}` with
/// `m = (n - 2 floor(sqrt(n))) / 2`.
fn phi3(n: u64) -> f64 {
    let ln_n = (n as f64).ln();
    let m = (n - 2 * arith::isqrt(n)) / 2;
    let mut acc = KahanSum::new();
    for j in 0..=m {
        acc.add((ln_n * j as f64 / n as f64).exp());
    }
    2.0 * acc.value()
}

/// Evaluates a decay probe along `grid` (each entry must be at least 16,
/// keeping every numerator and denominator in its defined range).
pub fn ratio_probe(probe: RatioProbe, grid: &[u64]) -> Result<RatioTrace, SeriesError> {
    if grid.is_empty() {
        return Err(SeriesError::EmptyGrid);
    }
    if let Some(&n) = grid.iter().find(|&&n| n < 16) {
        return Err(SeriesError::ArgumentTooSmall { n, min: 16 });
    }
    let mut ratios = Vec::with_capacity(grid.len());
    for &n in grid {
        let r = match probe {
            RatioProbe::K1 => n as f64 / closed_form_sum(ClosedForm::S1, n)?,
            RatioProbe::K2 => f3_real(n) / phi3(n),
            RatioProbe::K3 => {
                let f4 = eval_series(SeriesSpec { family: Family::F4, mode: EvalMode::Real, n })?;
                let phi4 =
                    eval_progression(SeriesSpec { family: Family::Phi4, mode: EvalMode::Real, n })?;
                f4.value / phi4.value
            }
            RatioProbe::K4 => (n as f64).sqrt() / closed_form_sum(ClosedForm::S4, n)?,
        };
        ratios.push(r);
    }
    Ok(RatioTrace { probe, grid: grid.to_vec(), ratios })
}

/// Checks that the first-step gap `n^{1/n} - 1` sits inside `[0, 2/sqrt(n))`.
pub fn root_gap_check(n: u64) -> Result<RootGapCheck, SeriesError> {
    if n < 1 {
        return Err(SeriesError::ArgumentTooSmall { n, min: 1 });
    }
    let gap = ((n as f64).ln() / n as f64).exp_m1();
    let bound = 2.0 / (n as f64).sqrt();
    Ok(RootGapCheck { n, gap, bound, holds: (0.0..bound).contains(&gap) })
}
