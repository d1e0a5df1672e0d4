//! Partial sums of the Dirichlet series `sum mu(n) n^{-s}` at real and
//! complex `s`, in direct form and in summation-by-parts form.
//!
//! The two forms are algebraically identical once the boundary term is kept:
//!
//! `sum_{n<=N} mu(n) n^{-s}
//!    = sum_{n=1}^{N-1} M(n) (n^{-s} - (n+1)^{-s}) + M(N) N^{-s}`
//!
//! The boundary term `M(N) N^{-s}` is reported separately at every
//! checkpoint so its size is visible where an asymptotic argument would
//! drop it.

pub use num_complex::Complex64;
use thiserror::Error;

use crate::arith::{self, SieveOpts};
use crate::kahan::KahanSum;

/// A point `s = sigma + i t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> ComplexPoint {
        ComplexPoint { sigma, t }
    }
}

/// `n^{-s} = e^{-sigma ln n} (cos(t ln n) - i sin(t ln n))`.
fn power_neg(s: ComplexPoint, n: u64) -> Complex64 {
    let ln = (n as f64).ln();
    let w = (-s.sigma * ln).exp();
    let ang = s.t * ln;
    Complex64::new(w * ang.cos(), -(w * ang.sin()))
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ZetaError {
    #[error("sigma must be positive and finite, got {sigma}")]
    BadSigma { sigma: f64 },
    #[error("the sum needs at least one term")]
    ZeroLength,
    #[error("checkpoints must be strictly ascending and within [1, n_max]")]
    BadCheckpoints,
    #[error("comparison constant must be finite and exceed 1, got {c}")]
    BadConstant { c: f64 },
}

/// Partial sums recorded at a checkpoint grid.
///
/// `direct_values` and `abel_values` are filled according to which entry
/// point ran; [`partial_sum_trace`] fills both, and they agree to 1e-9
/// relative at every checkpoint. `boundary_values` carries the kept boundary
/// term `M(N) N^{-s}` whenever the summation-by-parts form is computed.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumTrace {
    pub s: ComplexPoint,
    pub grid: Vec<u64>,
    pub direct_values: Vec<Complex64>,
    pub abel_values: Vec<Complex64>,
    pub boundary_values: Vec<Complex64>,
    /// `factor * H_N` at each checkpoint when a harmonic majorant was
    /// requested (the comparison series for sigma = 1/2).
    pub harmonic_bound: Option<Vec<f64>>,
    /// Largest `|partial sum|` over every `n <= n_max` (not just
    /// checkpoints), when the direct form ran; 0 otherwise.
    pub max_abs_direct: f64,
    pub max_abs_direct_at: u64,
}

fn validate(s: ComplexPoint, n_max: u64, checkpoints: &[u64]) -> Result<(), ZetaError> {
    if !(s.sigma.is_finite() && s.sigma > 0.0) || !s.t.is_finite() {
        return Err(ZetaError::BadSigma { sigma: s.sigma });
    }
    if n_max == 0 {
        return Err(ZetaError::ZeroLength);
    }
    if !checkpoints.windows(2).all(|w| w[0] < w[1])
        || checkpoints.iter().any(|&c| c == 0 || c > n_max)
    {
        return Err(ZetaError::BadCheckpoints);
    }
    Ok(())
}

fn trace_impl(
    s: ComplexPoint,
    n_max: u64,
    checkpoints: &[u64],
    want_direct: bool,
    want_abel: bool,
    harmonic_factor: Option<f64>,
    opts: &SieveOpts,
) -> Result<PartialSumTrace, ZetaError> {
    validate(s, n_max, checkpoints)?;
    let cap = checkpoints.len();
    let mut direct_values = Vec::with_capacity(if want_direct { cap } else { 0 });
    let mut abel_values = Vec::with_capacity(if want_abel { cap } else { 0 });
    let mut boundary_values = Vec::with_capacity(if want_abel { cap } else { 0 });
    let mut harmonic = harmonic_factor.map(|_| Vec::with_capacity(cap));

    let mut m = 0i64;
    let mut direct_re = KahanSum::new();
    let mut direct_im = KahanSum::new();
    let mut prefix_re = KahanSum::new();
    let mut prefix_im = KahanSum::new();
    let mut harm = KahanSum::new();
    let mut next_cp = 0usize;
    let mut max_sq = 0.0f64;
    let mut max_at = 0u64;
    // n^{-s} for the n about to be processed, carried across iterations so
    // each power is evaluated once.
    let mut pending = power_neg(s, 1);

    arith::stream_sieved(1, n_max, opts, |seg| {
        for (i, &mu) in seg.mu.iter().enumerate() {
            let n = seg.lo + i as u64;
            let pn = pending;
            let pn1 = power_neg(s, n + 1);
            pending = pn1;
            m += i64::from(mu);
            if want_direct && mu != 0 {
                if mu > 0 {
                    direct_re.add(pn.re);
                    direct_im.add(pn.im);
                } else {
                    direct_re.add(-pn.re);
                    direct_im.add(-pn.im);
                }
            }
            if want_direct {
                let sq = direct_re.value() * direct_re.value()
                    + direct_im.value() * direct_im.value();
                if sq > max_sq {
                    max_sq = sq;
                    max_at = n;
                }
            }
            harm.add(1.0 / n as f64);
            if next_cp < checkpoints.len() && checkpoints[next_cp] == n {
                next_cp += 1;
                if want_direct {
                    direct_values.push(Complex64::new(direct_re.value(), direct_im.value()));
                }
                if want_abel {
                    let boundary = Complex64::new(m as f64 * pn.re, m as f64 * pn.im);
                    boundary_values.push(boundary);
                    abel_values.push(Complex64::new(
                        prefix_re.value() + boundary.re,
                        prefix_im.value() + boundary.im,
                    ));
                }
                if let (Some(col), Some(factor)) = (harmonic.as_mut(), harmonic_factor) {
                    col.push(factor * harm.value());
                }
            }
            if want_abel {
                let mf = m as f64;
                prefix_re.add(mf * (pn.re - pn1.re));
                prefix_im.add(mf * (pn.im - pn1.im));
            }
        }
    });

    Ok(PartialSumTrace {
        s,
        grid: checkpoints.to_vec(),
        direct_values,
        abel_values,
        boundary_values,
        harmonic_bound: harmonic,
        max_abs_direct: max_sq.sqrt(),
        max_abs_direct_at: max_at,
    })
}

/// Direct accumulation of `sum_{n<=N} mu(n) n^{-s}` at each checkpoint.
pub fn partial_sum_direct(
    s: ComplexPoint,
    n_max: u64,
    checkpoints: &[u64],
    opts: &SieveOpts,
) -> Result<PartialSumTrace, ZetaError> {
    trace_impl(s, n_max, checkpoints, true, false, None, opts)
}

/// Summation-by-parts form with the boundary term kept.
pub fn partial_sum_abel(
    s: ComplexPoint,
    n_max: u64,
    checkpoints: &[u64],
    opts: &SieveOpts,
) -> Result<PartialSumTrace, ZetaError> {
    trace_impl(s, n_max, checkpoints, false, true, None, opts)
}

/// Both forms in one pass, for side-by-side comparison.
pub fn partial_sum_trace(
    s: ComplexPoint,
    n_max: u64,
    checkpoints: &[u64],
    opts: &SieveOpts,
) -> Result<PartialSumTrace, ZetaError> {
    trace_impl(s, n_max, checkpoints, true, true, None, opts)
}

/// One sigma's trace plus the comparison constants attached to it.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaReport {
    pub sigma: f64,
    pub trace: PartialSumTrace,
    /// `0.25 c / ((sigma - 1/2)(c - 1))` for sigma above one half: the
    /// claimed convergence constant, reported next to the measured sums.
    pub claimed_constant: Option<f64>,
}

/// Runs the trace at each real `sigma`, attaching the harmonic majorant
/// `(0.25 c / (c-1)) H_N` at sigma exactly one half and the claimed
/// convergence constant above one half.
pub fn sigma_sweep(
    sigmas: &[f64],
    n_max: u64,
    checkpoints: &[u64],
    c: f64,
    opts: &SieveOpts,
) -> Result<Vec<SigmaReport>, ZetaError> {
    if !(c.is_finite() && c > 1.0) {
        return Err(ZetaError::BadConstant { c });
    }
    let mut reports = Vec::with_capacity(sigmas.len());
    for &sigma in sigmas {
        let s = ComplexPoint::new(sigma, 0.0);
        let harmonic_factor = (sigma == 0.5).then(|| 0.25 * c / (c - 1.0));
        let trace = trace_impl(s, n_max, checkpoints, true, true, harmonic_factor, opts)?;
        let claimed_constant =
            (sigma > 0.5).then(|| 0.25 * c / ((sigma - 0.5) * (c - 1.0)));
        reports.push(SigmaReport { sigma, trace, claimed_constant });
    }
    Ok(reports)
}
