//! The common five-dimensional carrier space and frame bookkeeping.
//!
//! Both geometries share the coordinate space `R^5`. The Galilean reading is
//! `(mx, mt, m)` with a spatial 3-block, the Lorentzian reading is
//! `(mx^mu, m)` with the time component at index 3. In both, the fifth
//! coordinate is the mass.

use crate::measure::Dimension;
use nalgebra::{Vector3, Vector4, Vector5};
use std::fmt;
use std::str::FromStr;

/// Which of the two mechanical-space geometries an object belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Newton,
    Einstein,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Newton => f.write_str("newton"),
            Flavor::Einstein => f.write_str("einstein"),
        }
    }
}

/// Identifier of an inertial reference frame. Names are resolved to ids at
/// the application boundary; the standard coordinate frame is id 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FrameId(pub u32);

impl FrameId {
    pub const STANDARD: FrameId = FrameId(0);
}

impl fmt::Display for FrameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "frame{}", self.0)
    }
}

/// An element of the five-dimensional space, expressed in a named frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiveVector {
    pub coords: Vector5<f64>,
    pub frame: FrameId,
}

impl FiveVector {
    pub fn new(coords: Vector5<f64>, frame: FrameId) -> Self {
        FiveVector { coords, frame }
    }

    pub fn zero(frame: FrameId) -> Self {
        FiveVector::new(Vector5::zeros(), frame)
    }

    /// Galilean layout `(mx, mt, m)`.
    pub fn newtonian(mx: Vector3<f64>, mt: f64, m: f64, frame: FrameId) -> Self {
        FiveVector::new(Vector5::new(mx.x, mx.y, mx.z, mt, m), frame)
    }

    /// Lorentzian layout `(mx, m)` with the time component at index 3.
    pub fn einsteinian(mx: Vector4<f64>, m: f64, frame: FrameId) -> Self {
        FiveVector::new(Vector5::new(mx.x, mx.y, mx.z, mx.w, m), frame)
    }

    /// First three coordinates.
    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.coords[0], self.coords[1], self.coords[2])
    }

    /// First four coordinates (the `M_0`-direction block in the Lorentzian
    /// reading).
    pub fn spacetime(&self) -> Vector4<f64> {
        Vector4::new(self.coords[0], self.coords[1], self.coords[2], self.coords[3])
    }

    /// Fourth coordinate: `mt` in the Galilean reading, the time component
    /// of `mx` in the Lorentzian one.
    pub fn time_component(&self) -> f64 {
        self.coords[3]
    }

    /// Fifth coordinate, the mass.
    pub fn mass_component(&self) -> f64 {
        self.coords[4]
    }

    pub fn norm_inf(&self) -> f64 {
        self.coords.iter().fold(0.0f64, |acc, c| acc.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

impl FromStr for FiveVector {
    type Err = String;

    /// Text form: five whitespace-separated decimal numbers, standard frame.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 5 {
            return Err(format!("expected 5 numbers, found {}", parts.len()));
        }
        let mut coords = Vector5::zeros();
        for (i, p) in parts.iter().enumerate() {
            coords[i] = p
                .parse::<f64>()
                .map_err(|e| format!("bad number `{p}`: {e}"))?;
        }
        Ok(FiveVector::new(coords, FrameId::STANDARD))
    }
}

impl fmt::Display for FiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            fmt_sig17(self.coords[0]),
            fmt_sig17(self.coords[1]),
            fmt_sig17(self.coords[2]),
            fmt_sig17(self.coords[3]),
            fmt_sig17(self.coords[4])
        )
    }
}

/// A spatial 3-vector of magnitudes sharing one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QVec3 {
    pub components: Vector3<f64>,
    pub dim: Dimension,
}

impl QVec3 {
    pub fn new(components: Vector3<f64>, dim: Dimension) -> Self {
        QVec3 { components, dim }
    }

    pub fn norm(&self) -> f64 {
        self.components.norm()
    }
}

impl fmt::Display for QVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} {} {}) {}",
            fmt_sig17(self.components.x),
            fmt_sig17(self.components.y),
            fmt_sig17(self.components.z),
            self.dim
        )
    }
}

/// Fixed 17-significant-digit rendering used for all file and report output,
/// enough to round-trip any f64.
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}
