//! Non-inertial coordinate histories and the phase they accumulate.
//!
//! A history `ξ(t)` displaces the spatial origin, `r' = r - ξ(t)`, while the time line
//! keeps the extended-boost corrections with the instantaneous velocity. A particle
//! observed along such a history picks up the phase `∫ ½ m |ξ̇|² dt` relative to an
//! observer that stays put.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::spacetime::{Event, Vec3};

#[derive(Debug, Clone, PartialEq)]
pub enum Trajectory {
    /// `ξ = 0` for all `t ≥ 0`.
    Rest,
    /// `ξ = ½ a t² · axis` on `[0, t1]`.
    QuadraticRamp { accel: f64, t1: f64, axis: Vec3 },
    /// `ξ = A sin²(πt/t1) · axis` on `[0, t1]` and zero afterwards.
    SmoothBump { amplitude: f64, t1: f64, axis: Vec3 },
    /// Straight segments between samples; `ξ̇` is piecewise constant.
    PiecewiseLinear { samples: Vec<(f64, Vec3)> },
    /// Samples with second-order finite-difference velocities at the nodes.
    Tabulated {
        samples: Vec<(f64, Vec3)>,
        velocities: Vec<Vec3>,
    },
    /// `ξ(t_start + t_end - t)`.
    Reversed(Box<Trajectory>),
}

/// Which velocity enters the time line of [`noninertial_transform`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum VelocityMode {
    /// `v = ξ̇(t)` at the event's time.
    #[default]
    Instantaneous,
    Fixed(Vec3),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwinPhaseResult {
    pub phi: f64,
    pub estimated_error: f64,
    pub evaluations: usize,
}

fn check_samples(samples: &[(f64, Vec3)], min_len: usize) -> Result<()> {
    if samples.len() < min_len {
        return Err(Error::InvalidParameter(format!(
            "trajectory needs at least {min_len} samples, got {}",
            samples.len()
        )));
    }
    for (t, xi) in samples {
        if !t.is_finite() || !xi.is_finite() {
            return Err(Error::NonFinite("trajectory sample"));
        }
    }
    if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::InvalidParameter(
            "trajectory sample times must be strictly increasing".into(),
        ));
    }
    Ok(())
}

fn check_window(t1: f64, axis: Vec3) -> Result<()> {
    if !t1.is_finite() || t1 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "active window end must be positive, got {t1}"
        )));
    }
    if !axis.is_finite() || axis.norm() == 0.0 {
        return Err(Error::InvalidParameter(
            "trajectory axis must be non-zero".into(),
        ));
    }
    Ok(())
}

/// Node velocities by three-point differences, one-sided at the ends.
fn node_velocities(samples: &[(f64, Vec3)]) -> Vec<Vec3> {
    let n = samples.len();
    if n == 2 {
        let v = (samples[1].1 - samples[0].1) * (1.0 / (samples[1].0 - samples[0].0));
        return vec![v, v];
    }
    let three_point = |i0: usize, at: usize| -> Vec3 {
        let (t0, x0) = samples[i0];
        let (t1, x1) = samples[i0 + 1];
        let (t2, x2) = samples[i0 + 2];
        let h1 = t1 - t0;
        let h2 = t2 - t1;
        let (c0, c1, c2) = match at {
            0 => (
                -(2.0 * h1 + h2) / (h1 * (h1 + h2)),
                (h1 + h2) / (h1 * h2),
                -h1 / (h2 * (h1 + h2)),
            ),
            1 => (
                -h2 / (h1 * (h1 + h2)),
                (h2 - h1) / (h1 * h2),
                h1 / (h2 * (h1 + h2)),
            ),
            _ => (
                h2 / (h1 * (h1 + h2)),
                -(h1 + h2) / (h1 * h2),
                (h1 + 2.0 * h2) / (h2 * (h1 + h2)),
            ),
        };
        x0 * c0 + x1 * c1 + x2 * c2
    };
    (0..n)
        .map(|i| match i {
            0 => three_point(0, 0),
            i if i == n - 1 => three_point(n - 3, 2),
            i => three_point(i - 1, 1),
        })
        .collect()
}

/// Index `i` of the segment `[t_i, t_{i+1}]` holding `t`.
fn segment_index(samples: &[(f64, Vec3)], t: f64) -> usize {
    let upper = samples.partition_point(|(ts, _)| *ts <= t);
    upper.saturating_sub(1).min(samples.len() - 2)
}

fn lerp(a: Vec3, b: Vec3, s: f64) -> Vec3 {
    a + (b - a) * s
}

impl Trajectory {
    pub fn quadratic_ramp(accel: f64, t1: f64) -> Result<Self> {
        Self::quadratic_ramp_along(accel, t1, Vec3::X)
    }

    pub fn quadratic_ramp_along(accel: f64, t1: f64, axis: Vec3) -> Result<Self> {
        check_window(t1, axis)?;
        if !accel.is_finite() {
            return Err(Error::NonFinite("ramp acceleration"));
        }
        Ok(Self::QuadraticRamp { accel, t1, axis })
    }

    pub fn smooth_bump(amplitude: f64, t1: f64) -> Result<Self> {
        Self::smooth_bump_along(amplitude, t1, Vec3::X)
    }

    pub fn smooth_bump_along(amplitude: f64, t1: f64, axis: Vec3) -> Result<Self> {
        check_window(t1, axis)?;
        if !amplitude.is_finite() {
            return Err(Error::NonFinite("bump amplitude"));
        }
        Ok(Self::SmoothBump {
            amplitude,
            t1,
            axis,
        })
    }

    pub fn piecewise_linear(samples: Vec<(f64, Vec3)>) -> Result<Self> {
        check_samples(&samples, 2)?;
        Ok(Self::PiecewiseLinear { samples })
    }

    /// Scalar displacements along `x`.
    pub fn piecewise_linear_1d(samples: &[(f64, f64)]) -> Result<Self> {
        Self::piecewise_linear(samples.iter().map(|&(t, x)| (t, Vec3::X * x)).collect())
    }

    pub fn tabulated(samples: Vec<(f64, Vec3)>) -> Result<Self> {
        check_samples(&samples, 2)?;
        let velocities = node_velocities(&samples);
        Ok(Self::Tabulated {
            samples,
            velocities,
        })
    }

    pub fn tabulated_1d(samples: &[(f64, f64)]) -> Result<Self> {
        Self::tabulated(samples.iter().map(|&(t, x)| (t, Vec3::X * x)).collect())
    }

    /// Parses a mini-spec: `rest`, `quad:a=<a>,t1=<t1>`, `bump:amp=<A>,t1=<t1>` or
    /// `file:<path>` (one `t ξ` pair per line, strictly increasing `t`; read as a
    /// tabulated history).
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "rest" {
            return Ok(Self::Rest);
        }
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::TrajectoryParse(format!("unknown trajectory '{spec}'")))?;
        match kind {
            "quad" => {
                let [a, t1] = parse_params(rest, ["a", "t1"])?;
                Self::quadratic_ramp(a, t1)
            }
            "bump" => {
                let [amp, t1] = parse_params(rest, ["amp", "t1"])?;
                Self::smooth_bump(amp, t1)
            }
            "file" => {
                let text = std::fs::read_to_string(rest)
                    .map_err(|e| Error::TrajectoryParse(format!("{rest}: {e}")))?;
                Self::tabulated_1d(&parse_table(&text)?)
            }
            _ => Err(Error::TrajectoryParse(format!(
                "unknown trajectory kind '{kind}'"
            ))),
        }
    }

    /// Closed time interval on which `xi` is defined.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Self::Rest | Self::SmoothBump { .. } => (0.0, f64::INFINITY),
            Self::QuadraticRamp { t1, .. } => (0.0, *t1),
            Self::PiecewiseLinear { samples } | Self::Tabulated { samples, .. } => {
                (samples[0].0, samples[samples.len() - 1].0)
            }
            Self::Reversed(inner) => inner.domain(),
        }
    }

    /// Interval outside of which `ξ̇` vanishes or is undefined.
    pub fn active_window(&self) -> (f64, f64) {
        match self {
            Self::Rest => (0.0, 0.0),
            Self::SmoothBump { t1, .. } => (0.0, *t1),
            Self::Reversed(inner) => inner.active_window(),
            _ => self.domain(),
        }
    }

    fn check_time(&self, t: f64) -> Result<()> {
        let (start, end) = self.domain();
        if t >= start && t <= end {
            Ok(())
        } else {
            Err(Error::OutsideDomain { t, start, end })
        }
    }

    pub fn xi(&self, t: f64) -> Result<Vec3> {
        self.check_time(t)?;
        Ok(match self {
            Self::Rest => Vec3::ZERO,
            Self::QuadraticRamp { accel, axis, .. } => *axis * (0.5 * accel * t * t),
            Self::SmoothBump {
                amplitude,
                t1,
                axis,
                ..
            } => {
                if t >= *t1 {
                    Vec3::ZERO
                } else {
                    *axis * (amplitude * (PI * t / t1).sin().powi(2))
                }
            }
            Self::PiecewiseLinear { samples } | Self::Tabulated { samples, .. } => {
                let i = segment_index(samples, t);
                let (t0, x0) = samples[i];
                let (t1, x1) = samples[i + 1];
                lerp(x0, x1, (t - t0) / (t1 - t0))
            }
            Self::Reversed(inner) => {
                let (start, end) = inner.domain();
                inner.xi(start + end - t)?
            }
        })
    }

    pub fn xi_dot(&self, t: f64) -> Result<Vec3> {
        self.check_time(t)?;
        Ok(match self {
            Self::Rest => Vec3::ZERO,
            Self::QuadraticRamp { accel, axis, .. } => *axis * (accel * t),
            Self::SmoothBump {
                amplitude,
                t1,
                axis,
                ..
            } => {
                if t >= *t1 {
                    Vec3::ZERO
                } else {
                    *axis * (amplitude * PI / t1 * (2.0 * PI * t / t1).sin())
                }
            }
            Self::PiecewiseLinear { samples } => {
                let i = segment_index(samples, t);
                let (t0, x0) = samples[i];
                let (t1, x1) = samples[i + 1];
                (x1 - x0) * (1.0 / (t1 - t0))
            }
            Self::Tabulated {
                samples,
                velocities,
            } => {
                let i = segment_index(samples, t);
                let (t0, t1) = (samples[i].0, samples[i + 1].0);
                lerp(velocities[i], velocities[i + 1], (t - t0) / (t1 - t0))
            }
            Self::Reversed(inner) => {
                let (start, end) = inner.domain();
                -inner.xi_dot(start + end - t)?
            }
        })
    }

    /// The history run backwards in time over the same domain.
    pub fn time_reversed(&self) -> Trajectory {
        let flip = |samples: &[(f64, Vec3)]| -> Vec<(f64, Vec3)> {
            let (start, end) = (samples[0].0, samples[samples.len() - 1].0);
            samples
                .iter()
                .rev()
                .map(|&(t, x)| (start + end - t, x))
                .collect()
        };
        match self {
            Self::Rest => Self::Rest,
            Self::SmoothBump { .. } => self.clone(),
            Self::PiecewiseLinear { samples } => Self::PiecewiseLinear {
                samples: flip(samples),
            },
            Self::Tabulated {
                samples,
                velocities,
            } => Self::Tabulated {
                samples: flip(samples),
                velocities: velocities.iter().rev().map(|&v| -v).collect(),
            },
            Self::Reversed(inner) => (**inner).clone(),
            Self::QuadraticRamp { .. } => Self::Reversed(Box::new(self.clone())),
        }
    }

    /// Multiplies every displacement by `k`.
    pub fn scaled(&self, k: f64) -> Trajectory {
        let scale = |samples: &[(f64, Vec3)]| -> Vec<(f64, Vec3)> {
            samples.iter().map(|&(t, x)| (t, x * k)).collect()
        };
        match self {
            Self::Rest => Self::Rest,
            Self::QuadraticRamp { accel, t1, axis } => Self::QuadraticRamp {
                accel: accel * k,
                t1: *t1,
                axis: *axis,
            },
            Self::SmoothBump {
                amplitude,
                t1,
                axis,
            } => Self::SmoothBump {
                amplitude: amplitude * k,
                t1: *t1,
                axis: *axis,
            },
            Self::PiecewiseLinear { samples } => Self::PiecewiseLinear {
                samples: scale(samples),
            },
            Self::Tabulated {
                samples,
                velocities,
            } => Self::Tabulated {
                samples: scale(samples),
                velocities: velocities.iter().map(|&v| v * k).collect(),
            },
            Self::Reversed(inner) => Self::Reversed(Box::new(inner.scaled(k))),
        }
    }
}

fn parse_params<const N: usize>(text: &str, names: [&str; N]) -> Result<[f64; N]> {
    let mut out = [f64::NAN; N];
    for part in text.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::TrajectoryParse(format!("expected key=value, got '{part}'")))?;
        let slot = names
            .iter()
            .position(|n| *n == key.trim())
            .ok_or_else(|| Error::TrajectoryParse(format!("unknown parameter '{key}'")))?;
        out[slot] = value
            .trim()
            .parse()
            .map_err(|_| Error::TrajectoryParse(format!("bad number '{value}'")))?;
    }
    if let Some(i) = out.iter().position(|x| !x.is_finite()) {
        return Err(Error::TrajectoryParse(format!(
            "missing parameter '{}'",
            names[i]
        )));
    }
    Ok(out)
}

fn parse_table(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|_| {
                Error::TrajectoryParse(format!("line {}: bad number '{s}'", lineno + 1))
            })
        };
        match cols.as_slice() {
            [t, xi] => rows.push((parse(t)?, parse(xi)?)),
            _ => {
                return Err(Error::TrajectoryParse(format!(
                    "line {}: expected two columns",
                    lineno + 1
                )))
            }
        }
    }
    if rows.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::TrajectoryParse(
            "times must be strictly increasing".into(),
        ));
    }
    if rows.len() < 2 {
        return Err(Error::TrajectoryParse("need at least two samples".into()));
    }
    Ok(rows)
}

impl FromStr for Trajectory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_spec(s)
    }
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rest => f.write_str("rest"),
            Self::QuadraticRamp { accel, t1, .. } => write!(f, "quad:a={accel},t1={t1}"),
            Self::SmoothBump { amplitude, t1, .. } => write!(f, "bump:amp={amplitude},t1={t1}"),
            Self::PiecewiseLinear { samples } => {
                write!(f, "piecewise-linear({} samples)", samples.len())
            }
            Self::Tabulated { samples, .. } => write!(f, "tabulated({} samples)", samples.len()),
            Self::Reversed(inner) => write!(f, "reversed({inner})"),
        }
    }
}

/// `r' = r - ξ(t)`, `t' = (1 + v²/2c²)t - v·r/c²`.
pub fn noninertial_transform(
    e: &Event,
    traj: &Trajectory,
    c: f64,
    mode: VelocityMode,
) -> Result<Event> {
    if !e.is_finite() {
        return Err(Error::NonFinite("event"));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "light speed must be positive, got {c}"
        )));
    }
    let xi = traj.xi(e.t)?;
    let v = match mode {
        VelocityMode::Instantaneous => traj.xi_dot(e.t)?,
        VelocityMode::Fixed(v) => v,
    };
    let c2 = c * c;
    let t = (1.0 + 0.5 * v.norm_squared() / c2) * e.t - v.dot(e.r) / c2;
    Ok(Event::new(t, e.r - xi))
}

pub fn twin_phase(traj: &Trajectory, m: f64) -> Result<TwinPhaseResult> {
    twin_phase_with(traj, m, &QuadOptions::default())
}

/// [`twin_phase`] with explicit quadrature settings.
pub fn twin_phase_with(traj: &Trajectory, m: f64, opts: &QuadOptions) -> Result<TwinPhaseResult> {
    if !m.is_finite() || m <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "mass must be positive, got {m}"
        )));
    }
    match traj {
        Trajectory::Rest => Ok(TwinPhaseResult {
            phi: 0.0,
            estimated_error: 0.0,
            evaluations: 0,
        }),
        Trajectory::PiecewiseLinear { samples } => {
            let mut total = TwinPhaseResult {
                phi: 0.0,
                estimated_error: 0.0,
                evaluations: 0,
            };
            for w in samples.windows(2) {
                let v2 = (w[1].1 - w[0].1).norm_squared() / (w[1].0 - w[0].0).powi(2);
                let seg = integrate(|_| 0.5 * m * v2, w[0].0, w[1].0, opts)?;
                total.phi += seg.value;
                total.estimated_error += seg.error;
                total.evaluations += seg.evaluations;
            }
            Ok(total)
        }
        Trajectory::Tabulated {
            samples,
            velocities,
        } => Ok(tabulated_phase(samples, velocities, m)),
        _ => {
            let (a, b) = traj.active_window();
            let r = integrate(
                |t| match traj.xi_dot(t) {
                    Ok(v) => 0.5 * m * v.norm_squared(),
                    Err(_) => f64::NAN,
                },
                a,
                b,
                opts,
            )?;
            Ok(TwinPhaseResult {
                phi: r.value,
                estimated_error: r.error,
                evaluations: r.evaluations,
            })
        }
    }
}

/// Trapezoid rule over the node velocities; the error estimate compares against the
/// rule on every other node.
fn tabulated_phase(samples: &[(f64, Vec3)], velocities: &[Vec3], m: f64) -> TwinPhaseResult {
    let integrand: Vec<f64> = velocities
        .iter()
        .map(|v| 0.5 * m * v.norm_squared())
        .collect();
    let trapezoid = |stride: usize| -> f64 {
        let mut idx: Vec<usize> = (0..samples.len()).step_by(stride).collect();
        if *idx.last().unwrap() != samples.len() - 1 {
            idx.push(samples.len() - 1);
        }
        idx.windows(2)
            .map(|w| {
                0.5 * (integrand[w[0]] + integrand[w[1]]) * (samples[w[1]].0 - samples[w[0]].0)
            })
            .sum()
    };
    let fine = trapezoid(1);
    let estimated_error = if samples.len() >= 3 {
        (fine - trapezoid(2)).abs() / 3.0
    } else {
        0.0
    };
    TwinPhaseResult {
        phi: fine,
        estimated_error,
        evaluations: samples.len(),
    }
}

/// Relative phase `φ(a) - φ(b)` between two histories of the same particle.
pub fn phase_difference(a: &Trajectory, b: &Trajectory, m: f64) -> Result<f64> {
    Ok(twin_phase(a, m)?.phi - twin_phase(b, m)?.phi)
}
