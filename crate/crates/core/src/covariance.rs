//! Numerical certification of covariance and non-covariance claims.
//!
//! Each `check_*` function returns a [`CheckVerdict`]. Exact-algebra identities are
//! held to [`EXACT_TOLERANCE`]; claims that only hold up to `O(c⁻²)` are held to ten
//! times the expected truncation term. Scaling claims are certified by
//! [`order_scan`], which fits a power law in `c`.

use std::collections::BTreeMap;

use nalgebra::Vector4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spacetime::{
    boost_event, boost_matrix, inverse_residual, BoostKind, BoostSpec, Event, FrameMatrix, Vec3,
};
use crate::states::{
    default_steps, extended_boost_wave_in, galilei_boost_wave, phase_shift_boost,
    probe_energy_momentum, probe_phase_gradient, schrodinger_residual, EnergyMomentum,
    LinearPhaseWave, PhaseLinear, PlaneWave, WaveField,
};

/// Threshold for identities that hold exactly in real arithmetic, relative to
/// `max(1, magnitude of the terms involved)`.
pub const EXACT_TOLERANCE: f64 = 1e-12;
/// Agreement expected between two finite-difference evaluations of the same derivative,
/// relative to `max(1, |gradient|)`.
pub const FD_TOLERANCE: f64 = 1e-8;
/// Safety factor on the expected size of an `O(c⁻²)` truncation term.
pub const TRUNCATION_FACTOR: f64 = 10.0;
/// Relative tolerance for closed forms of the inverse-boost residual.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-14;
/// Residuals at or below this value are treated as exact zeros by [`order_scan`].
pub const SCAN_FLOOR: f64 = 1e-15;
pub const MIN_SCAN_SAMPLES: usize = 4;
/// Seed of the randomized part of [`probe_events`].
pub const PROBE_SEED: u64 = 0x005e_ed0f_c0de;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckVerdict {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
    pub details: BTreeMap<String, f64>,
}

impl CheckVerdict {
    pub fn new(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            threshold,
            passed: residual <= threshold,
            details: BTreeMap::new(),
        }
    }

    /// A verdict over several criteria: the residual is the worst `measured / limit`
    /// ratio and the threshold is 1.
    fn combined(name: impl Into<String>, criteria: &[(&str, f64, f64)]) -> Self {
        let ratio = criteria
            .iter()
            .map(|&(_, measured, limit)| measured / limit)
            .fold(0.0, f64::max);
        let mut verdict = Self::new(name, ratio, 1.0);
        for &(key, measured, limit) in criteria {
            verdict.details.insert(key.to_string(), measured);
            verdict.details.insert(format!("{key}_limit"), limit);
        }
        verdict
    }

    pub fn with_detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceReport {
    pub verdicts: Vec<CheckVerdict>,
    pub inputs: BTreeMap<String, serde_json::Value>,
    /// Checks that could not be decided for the configured inputs.
    pub inconclusive: Vec<String>,
    pub overall: bool,
}

impl CovarianceReport {
    pub fn new(
        mut verdicts: Vec<CheckVerdict>,
        inputs: BTreeMap<String, serde_json::Value>,
    ) -> Self {
        verdicts.sort_by(|a, b| a.name.cmp(&b.name));
        let overall = verdicts.iter().all(|v| v.passed);
        Self {
            verdicts,
            inputs,
            inconclusive: Vec::new(),
            overall,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanSample {
    pub c: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderScanResult {
    pub samples: Vec<ScanSample>,
    /// Least-squares slope of `ln residual` against `ln c`; `None` when fewer than two
    /// residuals clear [`SCAN_FLOOR`].
    pub fitted_exponent: Option<f64>,
    /// Coefficient of determination of the fit, in `[0, 1]`.
    pub fit_quality: Option<f64>,
    /// Every residual sat at or below [`SCAN_FLOOR`].
    pub converged_to_zero: bool,
}

impl OrderScanResult {
    /// Exponent no larger than `bound` with quality at least `min_quality`.
    pub fn decays_at_least(&self, bound: f64, min_quality: f64) -> bool {
        matches!(
            (self.fitted_exponent, self.fit_quality),
            (Some(e), Some(q)) if e <= bound && q >= min_quality
        )
    }

    pub fn exponent_near(&self, expected: f64, tolerance: f64, min_quality: f64) -> bool {
        matches!(
            (self.fitted_exponent, self.fit_quality),
            (Some(e), Some(q)) if (e - expected).abs() <= tolerance && q >= min_quality
        )
    }
}

/// Evaluates `residual` at each `c` and fits `residual ∝ c^k` in log-log space.
pub fn order_scan(
    residual: impl Fn(f64) -> Result<f64>,
    c_values: &[f64],
) -> Result<OrderScanResult> {
    if c_values.len() < MIN_SCAN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: c_values.len(),
            need: MIN_SCAN_SAMPLES,
        });
    }
    if c_values.iter().any(|c| !c.is_finite() || *c <= 0.0) {
        return Err(Error::InvalidParameter(
            "scan values of c must be positive and finite".into(),
        ));
    }
    if c_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "scan values of c must be strictly increasing".into(),
        ));
    }
    let samples = c_values
        .iter()
        .map(|&c| {
            let r = residual(c)?;
            if !(r >= 0.0) || !r.is_finite() {
                return Err(Error::NonFinite("scan residual"));
            }
            Ok(ScanSample { c, residual: r })
        })
        .collect::<Result<Vec<_>>>()?;

    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.residual > SCAN_FLOOR)
        .map(|s| (s.c.ln(), s.residual.ln()))
        .collect();
    let converged_to_zero = points.is_empty();
    let (fitted_exponent, fit_quality) = match fit_line(&points) {
        Some((slope, r2)) => (Some(slope), Some(r2)),
        None => (None, None),
    };
    Ok(OrderScanResult {
        samples,
        fitted_exponent,
        fit_quality,
        converged_to_zero,
    })
}

/// Least-squares slope and R².
fn fit_line(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let ss_res = (syy - slope * sxy).max(0.0);
    let r2 = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Some((slope, r2))
}

/// The nine grid events `{0, ½, 1} × {x = 0, ½, 1}` followed by eight pseudo-random
/// events with `t ∈ [0, 1]` and `r ∈ [-1, 1]³`.
pub fn probe_events(seed: u64) -> Vec<Event> {
    let grid = [0.0, 0.5, 1.0];
    let mut events: Vec<Event> = grid
        .iter()
        .flat_map(|&t| {
            grid.iter()
                .map(move |&x| Event::new(t, Vec3::new(x, 0.0, 0.0)))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let t = rng.gen_range(0.0..=1.0);
        let r = Vec3::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        events.push(Event::new(t, r));
    }
    events
}

fn rest_wave_for(w: &PlaneWave, c: f64) -> Result<PlaneWave> {
    PlaneWave::with_rest_energy(w.mass(), w.momentum(), c)
}

/// `max(1, |terms|)`: the scale against which rounding in an exact identity is judged.
fn term_scale(terms: &[f64]) -> f64 {
    terms.iter().fold(1.0, |acc, t| acc.max(t.abs()))
}

/// Conservative size of the `O(c⁻²)` terms dropped by the extended boost:
/// `(p²/2m + m v² + |p||v|)·|v|(1 + |v|)/c²`.
pub fn truncation_scale(w: &PlaneWave, v: Vec3, c: f64) -> f64 {
    let p = w.momentum().norm();
    let speed = v.norm();
    let energy = w.kinetic_energy() + w.mass() * speed * speed + p * speed;
    energy * speed * (1.0 + speed) / (c * c)
}

pub fn check_galilei_noncovariance(w: &PlaneWave, v: Vec3) -> Result<CheckVerdict> {
    let p = w.momentum();
    let pv = p.dot(v);
    if pv == 0.0 {
        return Err(Error::Inconclusive(
            "p·v = 0: a Galilei boost leaves this wave on-shell".into(),
        ));
    }
    let boosted = galilei_boost_wave(w, v)?;
    let gap = schrodinger_residual(&boosted, w.mass(), w.rest_c())?;
    let claim_error = (gap - pv.abs()).abs();
    let exact_limit = EXACT_TOLERANCE * term_scale(&[w.kinetic_energy(), pv, boosted.energy]);

    let em = boosted.energy_momentum();
    let (h_t, h_r) = default_steps(&em);
    let probed = probe_energy_momentum(&boosted.field(), &Event::ORIGIN, h_t, h_r)?;
    let momentum_drift = (probed.momentum - p).max_abs();
    let fd_limit = FD_TOLERANCE * p.max_abs().max(1.0);

    Ok(CheckVerdict::combined(
        "galilei_noncovariance",
        &[
            ("off_shell_claim_error", claim_error, exact_limit),
            ("probed_momentum_drift", momentum_drift, fd_limit),
        ],
    )
    .with_detail("off_shell_gap", gap)
    .with_detail("expected_gap", pv.abs())
    .with_detail("boosted_energy", boosted.energy))
}

pub fn check_phase_shift_covariance(w: &PlaneWave, v: Vec3) -> Result<CheckVerdict> {
    let m = w.mass();
    let out = phase_shift_boost(w, v, m)?;
    let expected_p = w.momentum() + v * m;
    let expected_e = w.rest_energy() + expected_p.norm_squared() / (2.0 * m);
    let residual = (out.energy - expected_e)
        .abs()
        .max((out.momentum - expected_p).max_abs());
    let shell = schrodinger_residual(&out, m, w.rest_c())?;
    let limit = EXACT_TOLERANCE * term_scale(&[w.energy_momentum().energy, expected_e]);
    Ok(CheckVerdict::new("phase_shift_covariance", residual, limit)
        .with_detail("boosted_energy", out.energy)
        .with_detail("on_shell_residual", shell))
}

/// Applies the phase factor built for `rule_mass` to a resting particle of
/// `particle_mass` and measures how far the momentum lands from `particle_mass·v`.
pub fn check_mass_dependence(rule_mass: f64, particle_mass: f64, v: Vec3) -> Result<CheckVerdict> {
    if rule_mass == particle_mass {
        return Err(Error::InvalidParameter("the two masses must differ".into()));
    }
    if v.norm() == 0.0 {
        return Err(Error::Inconclusive(
            "v = 0: no phase shift is applied".into(),
        ));
    }
    let w = PlaneWave::new(particle_mass, Vec3::ZERO)?;
    let out = phase_shift_boost(&w, v, rule_mass)?;
    let covariant = phase_shift_boost(&w, v, particle_mass)?;
    let measured = (out.momentum - covariant.momentum).norm();
    let expected = (v * (rule_mass - particle_mass)).norm();
    let off_shell = schrodinger_residual(&out, particle_mass, None)?;
    let limit = EXACT_TOLERANCE * term_scale(&[rule_mass * v.norm(), particle_mass * v.norm()]);
    let mut verdict = CheckVerdict::new("mass_dependence", (measured - expected).abs(), limit)
        .with_detail("momentum_gap", measured)
        .with_detail("expected_gap", expected)
        .with_detail("off_shell_residual", off_shell);
    if !(off_shell > 0.0) {
        verdict.passed = false;
    }
    Ok(verdict)
}

/// Extended-boost covariance, with the untruncated field composed through `frame`.
pub fn check_extended_covariance_in(
    w: &PlaneWave,
    b: &BoostSpec,
    frame: &FrameMatrix,
) -> Result<CheckVerdict> {
    if b.kind != BoostKind::Extended {
        return Err(Error::WrongBoostKind {
            expected: "extended",
            actual: b.kind.name(),
        });
    }
    let out = extended_boost_wave_in(w, b, frame)?;
    let m = w.mass();
    let expected_p = w.momentum() - b.v * m;
    let expected_kinetic = expected_p.norm_squared() / (2.0 * m);
    let algebra_error = (out.truncated_kinetic - expected_kinetic)
        .abs()
        .max((out.truncated.momentum - expected_p).max_abs());
    let algebra_limit = EXACT_TOLERANCE
        * term_scale(&[
            w.kinetic_energy(),
            w.rest_energy() * b.proper_time_term(),
            w.momentum().dot(b.v),
            expected_kinetic,
        ]);

    let probed = probe_truncation_gap(&out.untruncated, &out.truncated)?;
    let fd_floor = FD_TOLERANCE * out.truncated.energy.abs().max(1.0);
    let gap_limit = TRUNCATION_FACTOR * truncation_scale(w, b.v, b.c) + fd_floor;

    Ok(CheckVerdict::combined(
        "extended_covariance",
        &[
            ("truncated_algebra_error", algebra_error, algebra_limit),
            ("untruncated_gap", probed, gap_limit),
        ],
    )
    .with_detail("boosted_energy", out.truncated.energy)
    .with_detail("boosted_kinetic_energy", out.truncated_kinetic))
}

pub fn check_extended_covariance(w: &PlaneWave, b: &BoostSpec) -> Result<CheckVerdict> {
    check_extended_covariance_in(w, b, &boost_matrix(b)?)
}

fn probe_truncation_gap(field: &WaveField, truncated: &LinearPhaseWave) -> Result<f64> {
    let em = truncated.energy_momentum();
    let (h_t, h_r) = default_steps(&em);
    let probed = probe_energy_momentum(field, &Event::ORIGIN, h_t, h_r)?;
    Ok(probed.max_abs_diff(&em))
}

/// Max-norm `(E, p)` gap between the probed untruncated field and the truncated
/// extended-boost result at light speed `c`.
pub fn extended_truncation_gap(w: &PlaneWave, v: Vec3, c: f64) -> Result<f64> {
    let w = rest_wave_for(w, c)?;
    let b = BoostSpec::extended(v, c)?;
    let out = extended_boost_wave_in(&w, &b, &boost_matrix(&b)?)?;
    probe_truncation_gap(&out.untruncated, &out.truncated)
}

/// Both sides of the derivative transformation at a primed event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSides {
    /// Gradient of the composed field with respect to primed coordinates.
    pub primed: Vector4<f64>,
    /// Unprimed gradient pushed through the exact inverse Jacobian.
    pub chain_rule: Vector4<f64>,
    /// Unprimed gradient pushed through the reversed-velocity matrix.
    pub reversed_boost: Vector4<f64>,
}

/// Finite-difference gradients on either side of the frame change `frame` at the primed
/// event `e_primed`.
pub fn operator_sides(
    w: &PlaneWave,
    b: &BoostSpec,
    frame: &FrameMatrix,
    e_primed: &Event,
) -> Result<OperatorSides> {
    let inverse = frame.inverse()?;
    let field = w.field();
    let composed = field.pulled_back(inverse);

    let primed_scale = w.as_linear().in_frame(frame)?.energy_momentum();
    let (h_t, h_r) = default_steps(&primed_scale);
    let primed = probe_phase_gradient(&composed, e_primed, h_t, h_r)?;

    let e = inverse.apply(e_primed);
    let (h_t, h_r) = default_steps(&w.energy_momentum());
    let unprimed = probe_phase_gradient(&field, &e, h_t, h_r)?;

    let chain_rule = inverse.transpose().0 * unprimed;
    let reversed = boost_matrix(&b.reversed())?;
    let reversed_boost = reversed.transpose().0 * unprimed;
    Ok(OperatorSides {
        primed,
        chain_rule,
        reversed_boost,
    })
}

pub fn check_operator_transform(w: &PlaneWave, b: &BoostSpec, e: &Event) -> Result<CheckVerdict> {
    check_operator_transform_in(w, b, &boost_matrix(b)?, e)
}

/// Operator-transform check with the frame change given explicitly.
///
/// Always requires the primed finite-difference gradient to match the chain rule. For
/// extended boosts it also requires the probed boosted momentum to equal `p - mv` up to
/// the expected `O(c⁻²)` term, which is where the rest energy supplies the `mv` shift.
pub fn check_operator_transform_in(
    w: &PlaneWave,
    b: &BoostSpec,
    frame: &FrameMatrix,
    e: &Event,
) -> Result<CheckVerdict> {
    b.validate()?;
    let sides = operator_sides(w, b, frame, e)?;
    let scale = sides.primed.amax().max(1.0);
    let mismatch = (sides.primed - sides.chain_rule).amax() / scale;
    let reversed_gap = (sides.chain_rule - sides.reversed_boost).amax();
    let name = format!("operator_transform_{}", b.kind.name());

    let verdict = match b.kind {
        BoostKind::Extended => {
            if !w.includes_rest_energy() {
                return Err(Error::MissingRestEnergy);
            }
            let probed = EnergyMomentum::from_gradient(&sides.primed);
            let expected = w.momentum() - b.v * w.mass();
            let shift_error = (probed.momentum - expected).max_abs();
            let shift_limit = TRUNCATION_FACTOR * truncation_scale(w, b.v, b.c)
                + FD_TOLERANCE * probed.momentum.max_abs().max(1.0);
            CheckVerdict::combined(
                name,
                &[
                    ("chain_rule_mismatch", mismatch, FD_TOLERANCE),
                    ("momentum_shift_error", shift_error, shift_limit),
                ],
            )
            .with_detail("probed_momentum_x", probed.momentum.x)
            .with_detail("probed_momentum_y", probed.momentum.y)
            .with_detail("probed_momentum_z", probed.momentum.z)
        }
        _ => CheckVerdict::new(name, mismatch, FD_TOLERANCE),
    };
    Ok(verdict.with_detail("reversed_boost_gap", reversed_gap))
}

/// `|p'_probed - (p - mv)|` for the rest-energy wave boosted with the extended boost
/// at light speed `c`, probed at the primed origin.
pub fn extended_momentum_error(w: &PlaneWave, v: Vec3, c: f64) -> Result<f64> {
    let w = rest_wave_for(w, c)?;
    let b = BoostSpec::extended(v, c)?;
    let sides = operator_sides(&w, &b, &boost_matrix(&b)?, &Event::ORIGIN)?;
    let probed = EnergyMomentum::from_gradient(&sides.primed);
    Ok((probed.momentum - (w.momentum() - v * w.mass())).max_abs())
}

/// Max over [`probe_events`] of the difference between the exactly boosted
/// relativistic wave and the truncated extended-boost phase.
///
/// The relativistic wave has `E = √(m²c⁴ + p²c²)` and is composed with the inverse
/// Lorentz boost; `w` supplies only the mass and momentum.
pub fn lorentz_reference_gap(w: &PlaneWave, v: Vec3, c: f64) -> Result<f64> {
    let w = rest_wave_for(w, c)?;
    let lorentz_back = BoostSpec::lorentz(-v, c)?;
    let extended = BoostSpec::extended(v, c)?;
    let truncated = extended_boost_wave_in(&w, &extended, &boost_matrix(&extended)?)?.truncated;

    let m = w.mass();
    let p = w.momentum();
    let c2 = c * c;
    let relativistic = LinearPhaseWave::new((m * m * c2 * c2 + p.norm_squared() * c2).sqrt(), p);

    let mut gap: f64 = 0.0;
    for e in probe_events(PROBE_SEED) {
        let source = boost_event(&e, &lorentz_back)?;
        gap = gap.max((relativistic.phase_at(&source) - truncated.phase_at(&e)).abs());
    }
    Ok(gap)
}

/// Verdict on the closed forms of `T(-v)T(v) - I`:
/// `(0,0) = s²`, `(i,0) = v_i s`, `(0,i) = -v_i s/c²`, `(i,j) = -v_i v_j/c²`, `s = v²/2c²`.
pub fn check_inverse_residual(b: &BoostSpec) -> Result<CheckVerdict> {
    let r = inverse_residual(b)?;
    let closed = inverse_residual_closed_form(b.v, b.c);
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let expected = closed.entry(i, j);
            let err = (r.entry(i, j) - expected).abs();
            let rel = match (expected == 0.0, err == 0.0) {
                (_, true) => 0.0,
                (true, false) => f64::MAX,
                (false, false) => err / expected.abs(),
            };
            worst = worst.max(rel);
        }
    }
    Ok(
        CheckVerdict::new("inverse_residual_closed_form", worst, CLOSED_FORM_TOLERANCE)
            .with_detail("entry_00", r.entry(0, 0))
            .with_detail("entry_10", r.entry(1, 0)),
    )
}

pub fn inverse_residual_closed_form(v: Vec3, c: f64) -> FrameMatrix {
    let c2 = c * c;
    let s = 0.5 * v.norm_squared() / c2;
    let v = v.to_array();
    let mut rows = [[0.0; 4]; 4];
    rows[0][0] = s * s;
    for i in 0..3 {
        rows[i + 1][0] = v[i] * s;
        rows[0][i + 1] = -v[i] * s / c2;
        for j in 0..3 {
            rows[i + 1][j + 1] = -v[i] * v[j] / c2;
        }
    }
    FrameMatrix::from_rows(rows)
}

/// Phase change of `w` after a round trip `T(-v)T(v)` at `e`, i.e. `φ(e + R·e) - φ(e)`
/// with `R` the inverse residual.
pub fn round_trip_phase_change(w: &PlaneWave, b: &BoostSpec, e: &Event) -> Result<f64> {
    let r = inverse_residual(b)?;
    let moved = r.apply(e);
    Ok(w.as_linear().phase_at(&moved))
}

/// Runs `check` for one instance per draw from a seeded generator and folds the
/// verdicts into one: the residual is the worst `residual / threshold` ratio.
pub fn batch_verdict(
    name: &str,
    verdicts: impl IntoIterator<Item = Result<CheckVerdict>>,
) -> Result<CheckVerdict> {
    let mut worst: f64 = 0.0;
    let mut count = 0usize;
    let mut failures = 0usize;
    for v in verdicts {
        let v = v?;
        count += 1;
        if !v.passed {
            failures += 1;
        }
        worst = worst.max(v.residual / v.threshold);
    }
    let mut verdict = CheckVerdict::new(name, worst, 1.0)
        .with_detail("instances", count as f64)
        .with_detail("failures", failures as f64);
    if failures > 0 {
        verdict.passed = false;
    }
    Ok(verdict)
}

/// Random instance for the batch suites: `m ∈ [0.1, 10]`, `|p| ≤ 5`, `|v| ≤ max_speed`.
pub fn random_instance(rng: &mut impl Rng, max_speed: f64) -> (f64, Vec3, Vec3) {
    let m = rng.gen_range(0.1..=10.0);
    let p = random_in_ball(rng, 5.0);
    let v = random_in_ball(rng, max_speed);
    (m, p, v)
}

pub fn random_in_ball(rng: &mut impl Rng, radius: f64) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if v.norm_squared() <= 1.0 {
            return v * radius;
        }
    }
}
