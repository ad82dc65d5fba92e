//! Plane-wave states and their transformation under boosts.
//!
//! Natural units with `ħ = 1`; the light speed `c` stays explicit. Every wave here
//! is a pure phase `exp(iφ)` with `φ(t, r) = E·t - p·r`, and observables are read
//! off as `E = ∂φ/∂t`, `p = -∇φ`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use nalgebra::Vector4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spacetime::{boost_matrix, BoostKind, BoostSpec, Event, FrameMatrix, Vec3};

/// Smallest accepted particle mass.
pub const MIN_MASS: f64 = 1e-9;

/// Relative finite-difference step, in units of the characteristic scale.
pub const DEFAULT_STEP_FACTOR: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyMomentum {
    pub energy: f64,
    pub momentum: Vec3,
}

impl EnergyMomentum {
    pub fn new(energy: f64, momentum: Vec3) -> Self {
        Self { energy, momentum }
    }

    /// Max-norm distance over `(E, p)`.
    pub fn max_abs_diff(&self, other: &EnergyMomentum) -> f64 {
        (self.energy - other.energy)
            .abs()
            .max((self.momentum - other.momentum).max_abs())
    }

    /// Phase gradient `(∂t φ, ∂x φ, ∂y φ, ∂z φ)`.
    pub fn gradient(&self) -> Vector4<f64> {
        Vector4::new(
            self.energy,
            -self.momentum.x,
            -self.momentum.y,
            -self.momentum.z,
        )
    }

    pub fn from_gradient(g: &Vector4<f64>) -> Self {
        Self::new(g[0], Vec3::new(-g[1], -g[2], -g[3]))
    }
}

/// Waves whose phase is linear in `(t, r)`.
pub trait PhaseLinear {
    fn energy_momentum(&self) -> EnergyMomentum;

    fn phase_at(&self, e: &Event) -> f64 {
        let em = self.energy_momentum();
        em.energy * e.t - em.momentum.dot(e.r)
    }

    fn field(&self) -> WaveField {
        let em = self.energy_momentum();
        WaveField::from_phase(move |e| em.energy * e.t - em.momentum.dot(e.r))
    }
}

/// A free particle `exp(i(mc²[rest] + p²/2m)t - ip·r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWave {
    mass: f64,
    momentum: Vec3,
    /// Light speed when the rest-energy term is included.
    rest_c: Option<f64>,
}

impl PlaneWave {
    pub fn new(mass: f64, momentum: Vec3) -> Result<Self> {
        let w = Self {
            mass,
            momentum,
            rest_c: None,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn with_rest_energy(mass: f64, momentum: Vec3, c: f64) -> Result<Self> {
        let w = Self {
            mass,
            momentum,
            rest_c: Some(c),
        };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<()> {
        if !self.mass.is_finite() || !self.momentum.is_finite() {
            return Err(Error::NonFinite("plane wave"));
        }
        if self.mass < MIN_MASS {
            return Err(Error::InvalidParameter(format!(
                "mass must be at least {MIN_MASS}, got {}",
                self.mass
            )));
        }
        if let Some(c) = self.rest_c {
            if !c.is_finite() || c <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "light speed must be positive and finite, got {c}"
                )));
            }
        }
        Ok(())
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn momentum(&self) -> Vec3 {
        self.momentum
    }

    pub fn rest_c(&self) -> Option<f64> {
        self.rest_c
    }

    pub fn includes_rest_energy(&self) -> bool {
        self.rest_c.is_some()
    }

    pub fn rest_energy(&self) -> f64 {
        self.rest_c.map_or(0.0, |c| self.mass * c * c)
    }

    pub fn kinetic_energy(&self) -> f64 {
        self.momentum.norm_squared() / (2.0 * self.mass)
    }

    /// The same particle without the rest-energy term.
    pub fn without_rest_energy(&self) -> Self {
        Self {
            rest_c: None,
            ..*self
        }
    }

    pub fn with_momentum(&self, momentum: Vec3) -> Result<Self> {
        let w = Self { momentum, ..*self };
        w.validate()?;
        Ok(w)
    }

    pub fn as_linear(&self) -> LinearPhaseWave {
        LinearPhaseWave::new(self.rest_energy() + self.kinetic_energy(), self.momentum)
    }
}

impl PhaseLinear for PlaneWave {
    fn energy_momentum(&self) -> EnergyMomentum {
        EnergyMomentum::new(self.rest_energy() + self.kinetic_energy(), self.momentum)
    }
}

/// `exp(i(E·t - p·r))` with no dispersion constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearPhaseWave {
    pub energy: f64,
    pub momentum: Vec3,
}

impl LinearPhaseWave {
    pub fn new(energy: f64, momentum: Vec3) -> Self {
        Self { energy, momentum }
    }

    /// The wave expressed in the frame `e' = M·e`, i.e. `ψ'(e') = ψ(M⁻¹·e')`.
    pub fn in_frame(&self, frame: &FrameMatrix) -> Result<LinearPhaseWave> {
        let inverse = frame.inverse()?;
        let g = inverse.transpose().0 * self.energy_momentum().gradient();
        let em = EnergyMomentum::from_gradient(&g);
        Ok(Self::new(em.energy, em.momentum))
    }

    /// The phase with boosted coordinates substituted: `ψ(M·e)` as a function of `e`.
    pub fn substituted(&self, frame: &FrameMatrix) -> LinearPhaseWave {
        let g = frame.transpose().0 * self.energy_momentum().gradient();
        let em = EnergyMomentum::from_gradient(&g);
        Self::new(em.energy, em.momentum)
    }
}

impl PhaseLinear for LinearPhaseWave {
    fn energy_momentum(&self) -> EnergyMomentum {
        EnergyMomentum::new(self.energy, self.momentum)
    }
}

/// Multiplier `exp(i(alpha·t - beta·r))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseFactor {
    pub alpha: f64,
    pub beta: Vec3,
}

impl PhaseFactor {
    /// The mass-dependent Galilei phase shift `exp(i(½mv²t - mv·r))`.
    pub fn galilei_shift(mass: f64, v: Vec3) -> Self {
        Self {
            alpha: 0.5 * mass * v.norm_squared(),
            beta: v * mass,
        }
    }

    pub fn apply(&self, w: &LinearPhaseWave) -> LinearPhaseWave {
        LinearPhaseWave::new(w.energy + self.alpha, w.momentum + self.beta)
    }
}

/// A complex field over spacetime.
#[derive(Clone)]
pub struct WaveField(Arc<dyn Fn(&Event) -> Complex64 + Send + Sync>);

impl WaveField {
    pub fn new(f: impl Fn(&Event) -> Complex64 + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn from_phase(phase: impl Fn(&Event) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(move |e| Complex64::from_polar(1.0, phase(e)))
    }

    pub fn eval(&self, e: &Event) -> Complex64 {
        (self.0)(e)
    }

    /// The field seen in the frame `e' = M·e`: evaluates `self` at `M⁻¹·e'`.
    pub fn in_frame(&self, frame: &FrameMatrix) -> Result<WaveField> {
        let inverse = frame.inverse()?;
        Ok(self.pulled_back(inverse))
    }

    /// `e ↦ self(map·e)`.
    pub fn pulled_back(&self, map: FrameMatrix) -> WaveField {
        let inner = self.clone();
        WaveField::new(move |e| inner.eval(&map.apply(e)))
    }
}

impl fmt::Debug for WaveField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("WaveField(..)")
    }
}

pub fn phase_at(w: &impl PhaseLinear, e: &Event) -> f64 {
    w.phase_at(e)
}

pub fn energy_momentum(w: &impl PhaseLinear) -> EnergyMomentum {
    w.energy_momentum()
}

/// `|E - (mc²[rest] + p²/2m)|`; zero iff `w` solves the free Schrödinger equation.
///
/// `rest_c` is the light speed when the rest-energy term is included.
pub fn schrodinger_residual(w: &LinearPhaseWave, mass: f64, rest_c: Option<f64>) -> Result<f64> {
    if !(mass >= MIN_MASS) {
        return Err(Error::InvalidParameter(format!(
            "mass must be at least {MIN_MASS}, got {mass}"
        )));
    }
    let rest = rest_c.map_or(0.0, |c| mass * c * c);
    Ok((w.energy - (rest + w.momentum.norm_squared() / (2.0 * mass))).abs())
}

/// `ψ(t, r - vt)`: energy shifts by `p·v`, momentum stays put.
pub fn galilei_boost_wave(w: &PlaneWave, v: Vec3) -> Result<LinearPhaseWave> {
    if !v.is_finite() {
        return Err(Error::NonFinite("boost velocity"));
    }
    let em = w.energy_momentum();
    Ok(LinearPhaseWave::new(
        em.energy + em.momentum.dot(v),
        em.momentum,
    ))
}

/// Galilei boost followed by the phase factor built for `rule_mass`.
pub fn phase_shift_boost(w: &PlaneWave, v: Vec3, rule_mass: f64) -> Result<LinearPhaseWave> {
    if !rule_mass.is_finite() || rule_mass <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "phase-shift rule mass must be positive, got {rule_mass}"
        )));
    }
    let boosted = galilei_boost_wave(w, v)?;
    Ok(PhaseFactor::galilei_shift(rule_mass, v).apply(&boosted))
}

/// Output of [`extended_boost_wave`].
#[derive(Debug, Clone)]
pub struct ExtendedBoost {
    /// Leading-order result `(mc² + (p - mv)²/2m, p - mv)`.
    pub truncated: LinearPhaseWave,
    /// Kinetic part of `truncated.energy`, kept apart from the large rest term.
    pub truncated_kinetic: f64,
    /// Exact composition of the rest-energy wave with the inverse frame map.
    pub untruncated: WaveField,
    /// Analytic coefficients of `untruncated`.
    pub untruncated_coefficients: LinearPhaseWave,
}

/// Extended boost of a rest-energy plane wave.
///
/// The truncated result substitutes the approximate inverse `t = (1 + v²/2c²)t' + v·r'/c²`,
/// `r = r' + vt'` and keeps exactly the `1/c²` terms that multiply the rest energy `mc²`.
pub fn extended_boost_wave(w: &PlaneWave, b: &BoostSpec) -> Result<ExtendedBoost> {
    if b.kind != BoostKind::Extended {
        return Err(Error::WrongBoostKind {
            expected: "extended",
            actual: b.kind.name(),
        });
    }
    let frame = boost_matrix(b)?;
    extended_boost_wave_in(w, b, &frame)
}

/// Like [`extended_boost_wave`], but the untruncated field is composed with an
/// arbitrary `frame` in place of the boost's own matrix.
pub fn extended_boost_wave_in(
    w: &PlaneWave,
    b: &BoostSpec,
    frame: &FrameMatrix,
) -> Result<ExtendedBoost> {
    b.validate()?;
    let c = w.rest_c().ok_or(Error::MissingRestEnergy)?;
    if c != b.c {
        return Err(Error::InvalidParameter(format!(
            "wave light speed {c} differs from boost light speed {}",
            b.c
        )));
    }
    let v = b.v;
    let rest = w.rest_energy();
    let p = w.momentum();
    // E₀(1 + v²/2c²) - p·v with the (p²/2m)·v²/2c² product dropped.
    let kinetic = w.kinetic_energy() + rest * b.proper_time_term() - p.dot(v);
    // p - E₀v/c² with the (p²/2m)·v/c² product dropped.
    let momentum = p - v * (rest / (c * c));
    let truncated = LinearPhaseWave::new(rest + kinetic, momentum);

    let untruncated = w.field().in_frame(frame)?;
    let untruncated_coefficients = w.as_linear().in_frame(frame)?;
    Ok(ExtendedBoost {
        truncated,
        truncated_kinetic: kinetic,
        untruncated,
        untruncated_coefficients,
    })
}

/// Finite-difference steps `(h_t, h_r)` for probing a wave with the given energy and
/// momentum scales. Each step is [`DEFAULT_STEP_FACTOR`] times the characteristic
/// period-over-2π of its axis, capped at the factor itself for slow waves.
pub fn default_steps(em: &EnergyMomentum) -> (f64, f64) {
    let h_t = DEFAULT_STEP_FACTOR / em.energy.abs().max(1.0);
    let h_r = DEFAULT_STEP_FACTOR / em.momentum.max_abs().max(1.0);
    (h_t, h_r)
}

const AXIS_NAMES: [&str; 4] = ["t", "x", "y", "z"];

/// Central-difference phase gradient `(∂t φ, ∂x φ, ∂y φ, ∂z φ)` of `f` at `e`.
///
/// Each phase difference is taken as `arg(f(e+δ)·conj(f(e-δ)))`, which is exact for
/// differences below π; anything above π/2 is refused as an aliasing risk.
pub fn probe_phase_gradient(f: &WaveField, e: &Event, h_t: f64, h_r: f64) -> Result<Vector4<f64>> {
    if !(h_t > 0.0 && h_r > 0.0) || !h_t.is_finite() || !h_r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "finite-difference steps must be positive, got h_t = {h_t}, h_r = {h_r}"
        )));
    }
    let mut g = Vector4::zeros();
    for axis in 0..4 {
        let h = if axis == 0 { h_t } else { h_r };
        let plus = f.eval(&e.shifted(axis, h));
        let minus = f.eval(&e.shifted(axis, -h));
        let scale = plus.norm().min(minus.norm());
        if !(scale > 1e-300) {
            return Err(Error::VanishingField);
        }
        let dphi = (plus * minus.conj()).arg();
        if dphi.abs() > FRAC_PI_2 {
            return Err(Error::StepTooLarge {
                axis: AXIS_NAMES[axis],
                phase_change: dphi,
            });
        }
        g[axis] = dphi / (2.0 * h);
    }
    Ok(g)
}

pub fn probe_energy_momentum(
    f: &WaveField,
    e: &Event,
    h_t: f64,
    h_r: f64,
) -> Result<EnergyMomentum> {
    probe_phase_gradient(f, e, h_t, h_r).map(|g| EnergyMomentum::from_gradient(&g))
}
