//! Assembly of the audit report: every registered claim verdict plus the
//! summary statistics (Mertens checkpoints and extrema, bound exponents,
//! ratio probes, root gaps, a census, and the zeta partial-sum sweeps) in
//! one self-contained JSON document. Identical config and version produce
//! identical bytes.

use std::collections::BTreeSet;

use anyhow::Result;
use mertens_lab::{
    classify_census, mertens_extrema, mertens_prefix, ratio_probe, registry, root_gap_check,
    run_claim, sigma_sweep, BoundExponent, ClaimVerdict, ClassificationCensus, Complex64,
    MertensExtrema, MertensTrace, PartialSumTrace, RatioProbe, RatioTrace, RootGapCheck,
    SieveOpts,
};
use serde::Serialize;

use crate::config::EngineConfig;

/// Constants c for which the scaled square-root bound is tabulated.
pub const AUDIT_C_VALUES: [f64; 3] = [1.1, 1.2, 1.3];

/// Real parts for the zeta partial-sum sweep: the critical line, a point
/// just off it, and a point of textbook absolute convergence.
pub const AUDIT_SIGMAS: [f64; 3] = [0.5, 0.6, 2.0];

/// The c used for the sweep's comparison constants.
pub const AUDIT_C_REFERENCE: f64 = 1.3;

/// Ceilings for max |M(n)|/sqrt(n): the classical numerical ceiling 1.06
/// observed at desk ranges, and the leading coefficient (c/(c-1))/2 of the
/// scaled square-root bound at c = 1.3.
pub const AUDIT_THRESHOLDS: [f64; 2] = [1.06, 13.0 / 6.0];

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub version: String,
    pub config: AuditConfig,
    pub verdicts: Vec<ClaimVerdict>,
    pub summary: AuditSummary,
}

/// The semantic configuration of an audit: everything that can change a
/// number in the report. Engine knobs (workers, segment size) are absent on
/// purpose; they change wall time only, and the report's bytes must not
/// depend on them.
#[derive(Debug, Clone, Serialize)]
pub struct AuditConfig {
    pub n_max: u64,
    pub c_values: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub ratio_thresholds: Vec<f64>,
    pub zeta_reference_c: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditSummary {
    pub mertens: MertensTrace,
    pub extrema: MertensExtrema,
    pub bound_exponents: Vec<BoundExponent>,
    pub ratio_probes: Vec<RatioTrace>,
    pub root_gaps: Vec<RootGapCheck>,
    pub census: ClassificationCensus,
    pub sigma_reports: Vec<ZetaTraceJson>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexParts {
    pub re: f64,
    pub im: f64,
}

/// JSON view of a partial-sum trace. Complex values are split into
/// re/im pairs; optional comparison columns are omitted when absent.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaTraceJson {
    pub sigma: f64,
    pub t: f64,
    pub grid: Vec<u64>,
    pub direct: Vec<ComplexParts>,
    pub abel: Vec<ComplexParts>,
    pub boundary: Vec<ComplexParts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harmonic_bound: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_constant: Option<f64>,
    pub max_abs_direct: f64,
    pub max_abs_direct_at: u64,
}

impl ZetaTraceJson {
    pub fn new(trace: &PartialSumTrace, claimed_constant: Option<f64>) -> Self {
        let split = |values: &[Complex64]| -> Vec<ComplexParts> {
            values.iter().map(|z| ComplexParts { re: z.re, im: z.im }).collect()
        };
        Self {
            sigma: trace.s.sigma,
            t: trace.s.t,
            grid: trace.grid.clone(),
            direct: split(&trace.direct_values),
            abel: split(&trace.abel_values),
            boundary: split(&trace.boundary_values),
            harmonic_bound: trace.harmonic_bound.clone(),
            claimed_constant,
            max_abs_direct: trace.max_abs_direct,
            max_abs_direct_at: trace.max_abs_direct_at,
        }
    }
}

/// Checkpoints at every power of ten up to `n`, ending at `n` itself.
pub fn decade_grid(n: u64) -> Vec<u64> {
    let mut grid = Vec::new();
    let mut p = 1u64;
    while p <= n {
        grid.push(p);
        match p.checked_mul(10) {
            Some(next) => p = next,
            None => break,
        }
    }
    if grid.last() != Some(&n) {
        grid.push(n);
    }
    grid
}

/// Powers of two and ten in [16, n], plus both endpoints. Empty when
/// n < 16, the smallest argument the ratio probes accept.
pub fn probe_grid(n: u64) -> Vec<u64> {
    if n < 16 {
        return Vec::new();
    }
    let mut set = BTreeSet::from([16, n]);
    let mut p = 16u64;
    while p <= n {
        set.insert(p);
        match p.checked_mul(2) {
            Some(next) => p = next,
            None => break,
        }
    }
    let mut q = 100u64;
    while q <= n {
        set.insert(q);
        match q.checked_mul(10) {
            Some(next) => q = next,
            None => break,
        }
    }
    set.into_iter().collect()
}

fn exponent_grid(n_max: u64) -> Vec<u64> {
    let mut set = BTreeSet::new();
    if n_max >= 2 {
        set.insert(n_max);
    }
    let mut p = 100u64;
    while p <= n_max {
        set.insert(p);
        match p.checked_mul(10) {
            Some(next) => p = next,
            None => break,
        }
    }
    set.into_iter().collect()
}

fn root_gap_grid(n_max: u64) -> Vec<u64> {
    let mut set: BTreeSet<u64> =
        [16, 100, 10_000, 1_000_000].into_iter().filter(|&v| v <= n_max).collect();
    set.insert(n_max);
    set.into_iter().collect()
}

/// Runs the whole registry and all summary scans at `n_max`. Requires
/// `n_max >= 10` (the extrema scan's smallest domain).
pub fn build_audit(n_max: u64, engine: &EngineConfig) -> Result<AuditReport> {
    let opts: SieveOpts = engine.sieve_opts();

    let mut verdicts = Vec::new();
    for claim in registry() {
        verdicts.push(run_claim(&claim, n_max, &opts)?);
    }

    let mertens = mertens_prefix(n_max, &decade_grid(n_max), &opts)?;
    let extrema = mertens_extrema(n_max, &AUDIT_THRESHOLDS, &opts)?;

    let mut bound_exponents = Vec::new();
    for n in exponent_grid(n_max) {
        for c in AUDIT_C_VALUES {
            bound_exponents.push(mertens_lab::bound_exponent(n, c)?);
        }
    }

    let grid = probe_grid(n_max);
    let mut ratio_probes = Vec::new();
    if !grid.is_empty() {
        for probe in [RatioProbe::K1, RatioProbe::K2, RatioProbe::K3, RatioProbe::K4] {
            ratio_probes.push(ratio_probe(probe, &grid)?);
        }
    }

    let mut root_gaps = Vec::new();
    for n in root_gap_grid(n_max) {
        root_gaps.push(root_gap_check(n)?);
    }

    let census = classify_census(n_max, &opts)?;

    let sweep = sigma_sweep(&AUDIT_SIGMAS, n_max, &decade_grid(n_max), AUDIT_C_REFERENCE, &opts)?;
    let sigma_reports =
        sweep.iter().map(|r| ZetaTraceJson::new(&r.trace, r.claimed_constant)).collect();

    Ok(AuditReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: AuditConfig {
            n_max,
            c_values: AUDIT_C_VALUES.to_vec(),
            sigmas: AUDIT_SIGMAS.to_vec(),
            ratio_thresholds: AUDIT_THRESHOLDS.to_vec(),
            zeta_reference_c: AUDIT_C_REFERENCE,
        },
        verdicts,
        summary: AuditSummary {
            mertens,
            extrema,
            bound_exponents,
            ratio_probes,
            root_gaps,
            census,
            sigma_reports,
        },
    })
}
