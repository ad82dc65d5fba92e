//! Coordinate boosts of spacetime events.
//!
//! Events are stored as raw `(t, x, y, z)` coordinates rather than `(ct, x, y, z)`,
//! so the extended boost matrix has mixed units: row 0 maps into time, rows 1..=3
//! into length. All three boost kinds are linear maps and are exposed both as
//! event transforms and as [`FrameMatrix`] values.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector4};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed ratio above which the extended boost leaves its intended low-velocity regime.
pub const EXTENDED_VALIDITY_RATIO: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };
    pub const X: Vec3 = Vec3 {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn component(self, axis: usize) -> f64 {
        match axis {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("spatial axis index {axis} out of range"),
        }
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Self { x, y, z }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, rhs: Vec3) {
        *self = *self + rhs;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A spacetime point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub r: Vec3,
}

impl Event {
    pub const ORIGIN: Event = Event {
        t: 0.0,
        r: Vec3::ZERO,
    };

    pub const fn new(t: f64, r: Vec3) -> Self {
        Self { t, r }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.r.is_finite()
    }

    /// Components in `(t, x, y, z)` order.
    pub fn to_vector(&self) -> Vector4<f64> {
        Vector4::new(self.t, self.r.x, self.r.y, self.r.z)
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        Self::new(v[0], Vec3::new(v[1], v[2], v[3]))
    }

    /// Shift one coordinate (0 = t, 1..=3 = x, y, z) by `delta`.
    pub fn shifted(&self, axis: usize, delta: f64) -> Self {
        let mut v = self.to_vector();
        v[axis] += delta;
        Self::from_vector(&v)
    }

    pub fn max_abs_diff(&self, other: &Event) -> f64 {
        (self.t - other.t).abs().max((self.r - other.r).max_abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoostKind {
    /// `t' = t`, `r' = r - v t`.
    Galilei,
    /// Galilei boost plus the proper-time and simultaneity terms in the time line.
    Extended,
    /// Exact special-relativistic boost.
    Lorentz,
}

impl BoostKind {
    pub fn name(self) -> &'static str {
        match self {
            BoostKind::Galilei => "galilei",
            BoostKind::Extended => "extended",
            BoostKind::Lorentz => "lorentz",
        }
    }
}

impl fmt::Display for BoostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostSpec {
    pub v: Vec3,
    pub c: f64,
    pub kind: BoostKind,
}

impl BoostSpec {
    pub fn new(v: Vec3, c: f64, kind: BoostKind) -> Result<Self> {
        let spec = Self { v, c, kind };
        spec.validate()?;
        Ok(spec)
    }

    pub fn galilei(v: Vec3, c: f64) -> Result<Self> {
        Self::new(v, c, BoostKind::Galilei)
    }

    pub fn extended(v: Vec3, c: f64) -> Result<Self> {
        Self::new(v, c, BoostKind::Extended)
    }

    pub fn lorentz(v: Vec3, c: f64) -> Result<Self> {
        Self::new(v, c, BoostKind::Lorentz)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.v.is_finite() {
            return Err(Error::NonFinite("boost velocity"));
        }
        if !self.c.is_finite() {
            return Err(Error::NonFinite("light speed"));
        }
        if self.c <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "light speed must be positive, got {}",
                self.c
            )));
        }
        let speed = self.v.norm();
        if self.kind != BoostKind::Galilei && speed >= self.c {
            return Err(Error::Superluminal { speed, c: self.c });
        }
        Ok(())
    }

    /// The same velocity and light speed with the velocity reversed.
    pub fn reversed(&self) -> Self {
        Self {
            v: -self.v,
            ..*self
        }
    }

    pub fn with_kind(&self, kind: BoostKind) -> Self {
        Self { kind, ..*self }
    }

    pub fn beta(&self) -> f64 {
        self.v.norm() / self.c
    }

    /// `false` when an extended boost runs with `|v|/c` above [`EXTENDED_VALIDITY_RATIO`].
    /// Advisory only: every operation still computes outside the regime.
    pub fn within_validity_regime(&self) -> bool {
        self.kind != BoostKind::Extended || self.beta() <= EXTENDED_VALIDITY_RATIO
    }

    /// `v²/(2c²)`, the proper-time coefficient.
    pub fn proper_time_term(&self) -> f64 {
        0.5 * self.v.norm_squared() / (self.c * self.c)
    }

    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.v.norm_squared() / (self.c * self.c)).sqrt()
    }
}

/// A 4×4 linear map acting on `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameMatrix(pub Matrix4<f64>);

impl FrameMatrix {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn zeros() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        Self(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[(i, j)];
            }
        }
        out
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    pub fn apply(&self, e: &Event) -> Event {
        Event::from_vector(&(self.0 * e.to_vector()))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn inverse(&self) -> Result<Self> {
        self.0.try_inverse().map(Self).ok_or(Error::SingularMatrix)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &FrameMatrix) -> f64 {
        (self.0 - other.0).amax()
    }

    /// Resets the time row to `(1, 0, 0, 0)`, discarding every `1/c²` entry of an
    /// extended boost. Turns an extended matrix into the Galilei one.
    pub fn without_time_corrections(&self) -> Self {
        let mut m = self.0;
        m[(0, 0)] = 1.0;
        for j in 1..4 {
            m[(0, j)] = 0.0;
        }
        Self(m)
    }
}

impl fmt::Display for FrameMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            writeln!(
                f,
                "[{:>14e} {:>14e} {:>14e} {:>14e}]",
                row[0], row[1], row[2], row[3]
            )?;
        }
        Ok(())
    }
}

fn check_event(e: &Event) -> Result<()> {
    if e.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite("event"))
    }
}

pub fn boost_event(e: &Event, b: &BoostSpec) -> Result<Event> {
    b.validate()?;
    check_event(e)?;
    let v = b.v;
    let moved = e.r - v * e.t;
    let out = match b.kind {
        BoostKind::Galilei => Event::new(e.t, moved),
        BoostKind::Extended => {
            let c2 = b.c * b.c;
            let t = (1.0 + b.proper_time_term()) * e.t - v.dot(e.r) / c2;
            Event::new(t, moved)
        }
        BoostKind::Lorentz => {
            let speed2 = v.norm_squared();
            if speed2 == 0.0 {
                return Ok(*e);
            }
            let gamma = b.gamma();
            let t = gamma * (e.t - v.dot(e.r) / (b.c * b.c));
            let parallel = v * (v.dot(e.r) / speed2);
            let perpendicular = e.r - parallel;
            Event::new(t, perpendicular + (parallel - v * e.t) * gamma)
        }
    };
    Ok(out)
}

pub fn boost_matrix(b: &BoostSpec) -> Result<FrameMatrix> {
    b.validate()?;
    let v = b.v.to_array();
    let mut m = Matrix4::identity();
    match b.kind {
        BoostKind::Galilei => {
            for i in 0..3 {
                m[(i + 1, 0)] = -v[i];
            }
        }
        BoostKind::Extended => {
            let c2 = b.c * b.c;
            m[(0, 0)] = 1.0 + b.proper_time_term();
            for i in 0..3 {
                m[(0, i + 1)] = -v[i] / c2;
                m[(i + 1, 0)] = -v[i];
            }
        }
        BoostKind::Lorentz => {
            let speed2 = b.v.norm_squared();
            if speed2 > 0.0 {
                let gamma = b.gamma();
                let c2 = b.c * b.c;
                m[(0, 0)] = gamma;
                for i in 0..3 {
                    m[(0, i + 1)] = -gamma * v[i] / c2;
                    m[(i + 1, 0)] = -gamma * v[i];
                    for j in 0..3 {
                        m[(i + 1, j + 1)] += (gamma - 1.0) * v[i] * v[j] / speed2;
                    }
                }
            }
        }
    }
    Ok(FrameMatrix(m))
}

pub fn compose(a: &FrameMatrix, b: &FrameMatrix) -> FrameMatrix {
    FrameMatrix(a.0 * b.0)
}

/// `T(-v)·T(v) - I` for the extended boost.
///
/// The product is formed in exact rational arithmetic from the binary values of
/// `v` and `c`, then rounded once per entry. The entries are of order `v⁴/c⁴` and
/// `v³/c²`, far below the rounding noise of an `f64` product of near-identity
/// matrices.
pub fn inverse_residual(b: &BoostSpec) -> Result<FrameMatrix> {
    if b.kind != BoostKind::Extended {
        return Err(Error::WrongBoostKind {
            expected: "extended",
            actual: b.kind.name(),
        });
    }
    b.validate()?;
    let forward = exact_extended_matrix(b.v, b.c)?;
    let backward = exact_extended_matrix(-b.v, b.c)?;

    let mut out = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = BigRational::zero();
            for k in 0..4 {
                acc += &backward[i][k] * &forward[k][j];
            }
            if i == j {
                acc -= BigRational::one();
            }
            out[(i, j)] = acc
                .to_f64()
                .ok_or(Error::NonFinite("inverse residual entry"))?;
        }
    }
    Ok(FrameMatrix(out))
}

fn exact(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or(Error::NonFinite("rational conversion"))
}

fn exact_extended_matrix(v: Vec3, c: f64) -> Result<[[BigRational; 4]; 4]> {
    let c2 = exact(c)? * exact(c)?;
    let vs = [exact(v.x)?, exact(v.y)?, exact(v.z)?];
    let speed2 = vs.iter().fold(BigRational::zero(), |acc, x| acc + x * x);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));

    let mut m: [[BigRational; 4]; 4] = Default::default();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m[0][0] = BigRational::one() + half * &speed2 / &c2;
    for i in 0..3 {
        m[0][i + 1] = -(&vs[i] / &c2);
        m[i + 1][0] = -vs[i].clone();
    }
    Ok(m)
}
