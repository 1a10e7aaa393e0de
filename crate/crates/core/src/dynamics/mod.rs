//! Pointlike particles: sampled trajectories with their derived kinematic
//! functions, force fields and the equation of motion, fixed-step
//! fourth-order integration with constraint maintenance, and multi-particle
//! aggregates.

mod aggregate;
mod fields;
mod integrate;

pub use aggregate::{aggregate, Aggregate};
pub use fields::{
    AntisymmetricMomentumField, FieldError, ForceField, InverseSquareField, IsotropicOscillator,
    ZeroField,
};
pub use integrate::integrate;

use crate::measure::{Dimension, Quantity};
use crate::minkowski::eta;
use crate::space::{FiveVector, Flavor, FrameId};
use nalgebra::Vector5;
use thiserror::Error;

/// Relative tolerance on the conserved mass along a trajectory.
pub const TOL_MASS: f64 = 1e-9;
/// Tolerance on finite-difference mass-shell checks (limited by the
/// truncation error of the derivative stencils, not by the integrator).
pub const TOL_SHELL_FD: f64 = 1e-6;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DynamicsError {
    #[error("trajectory has {got} samples, need at least {need}")]
    TooFewSamples { got: usize, need: usize },
    #[error("invalid initial data: {constraint}")]
    BadInitialData { constraint: String },
    #[error(transparent)]
    FieldDomain(#[from] FieldError),
    #[error("force is not orthogonal to the momentum: <F,p> residual {residual:.3e}")]
    ForceNotOrthogonal { residual: f64 },
    #[error("trajectories belong to different frames")]
    FrameMismatch,
    #[error("internal angular momentum requires an oriented space")]
    NotOriented,
    #[error("expected a {expected} trajectory, found {got}")]
    WrongFlavor { expected: Flavor, got: Flavor },
    #[error("parameter {t} does not coincide with a sample of every trajectory")]
    ParameterNotSampled { t: f64 },
    #[error("pairwise mass sum is too close to zero")]
    MassPairSingular,
    #[error("invalid trajectory: {reason}")]
    InvalidTrajectory { reason: String },
}

/// A sampled particle path with uniform parameter step.
///
/// Construction validates the defining constraints: the mass coordinate is
/// constant and equal to the mass tag; Galilean paths are naturally
/// parametrized by their time evaluation, Lorentzian ones by proper time
/// (`|df/ds| = m`, checked by finite differences).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    flavor: Flavor,
    mass: f64,
    start: f64,
    step: f64,
    points: Vec<Vector5<f64>>,
    frame: FrameId,
}

impl Trajectory {
    pub fn new(
        flavor: Flavor,
        mass: f64,
        start: f64,
        step: f64,
        points: Vec<Vector5<f64>>,
        frame: FrameId,
    ) -> Result<Trajectory, DynamicsError> {
        if points.is_empty() {
            return Err(DynamicsError::TooFewSamples { got: 0, need: 1 });
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(DynamicsError::InvalidTrajectory {
                reason: format!("step must be positive and finite, got {step}"),
            });
        }
        if mass == 0.0 || !mass.is_finite() {
            return Err(DynamicsError::InvalidTrajectory {
                reason: "mass must be nonzero and finite".to_string(),
            });
        }
        if flavor == Flavor::Einstein && mass < 0.0 {
            return Err(DynamicsError::InvalidTrajectory {
                reason: "a naturally parametrized relativistic particle has positive mass"
                    .to_string(),
            });
        }
        let t = Trajectory {
            flavor,
            mass,
            start,
            step,
            points,
            frame,
        };
        t.check_invariants()?;
        Ok(t)
    }

    fn check_invariants(&self) -> Result<(), DynamicsError> {
        let mtol = TOL_MASS * self.mass.abs().max(1.0);
        for (i, p) in self.points.iter().enumerate() {
            if !p.iter().all(|c| c.is_finite()) {
                return Err(DynamicsError::InvalidTrajectory {
                    reason: format!("non-finite sample at index {i}"),
                });
            }
            if (p[4] - self.mass).abs() > mtol {
                return Err(DynamicsError::InvalidTrajectory {
                    reason: format!(
                        "mass coordinate {} at index {i} deviates from the mass {}",
                        p[4], self.mass
                    ),
                });
            }
            if self.flavor == Flavor::Newton {
                let tau = p[3] / p[4];
                let t = self.param(i);
                if (tau - t).abs() > TOL_MASS * t.abs().max(1.0) {
                    return Err(DynamicsError::InvalidTrajectory {
                        reason: format!(
                            "natural parametrization violated at index {i}: tau = {tau}, parameter = {t}"
                        ),
                    });
                }
            }
        }
        if self.flavor == Flavor::Einstein && self.points.len() >= 5 {
            let d = derivative_samples(&self.points, self.step);
            for (i, v) in d.iter().enumerate() {
                let speed = (-eta(&spacetime(v), &spacetime(v))).max(0.0).sqrt();
                if (speed - self.mass).abs() > TOL_SHELL_FD * self.mass.max(1.0) {
                    return Err(DynamicsError::InvalidTrajectory {
                        reason: format!(
                            "natural parametrization violated at index {i}: |df| = {speed}, mass = {}",
                            self.mass
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn mass_quantity(&self) -> Quantity {
        Quantity::new(self.mass, Dimension::kg())
    }

    pub fn frame(&self) -> FrameId {
        self.frame
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn param(&self, index: usize) -> f64 {
        self.start + index as f64 * self.step
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.start, self.param(self.points.len() - 1))
    }

    pub fn point(&self, index: usize) -> FiveVector {
        FiveVector::new(self.points[index], self.frame)
    }

    pub fn raw_points(&self) -> &[Vector5<f64>] {
        &self.points
    }

    /// Index of the sample at parameter `t`, when `t` lies on the grid.
    pub fn sample_index(&self, t: f64) -> Option<usize> {
        let x = (t - self.start) / self.step;
        let i = x.round();
        if i < 0.0 || i as usize >= self.points.len() {
            return None;
        }
        if (self.param(i as usize) - t).abs() > 1e-9 * t.abs().max(1.0) {
            return None;
        }
        Some(i as usize)
    }
}

fn spacetime(v: &Vector5<f64>) -> nalgebra::Vector4<f64> {
    nalgebra::Vector4::new(v[0], v[1], v[2], v[3])
}

/// Fourth-order finite differences on a uniform grid: the five-point
/// central stencil in the interior and one-sided stencils of the same order
/// at the first and last two samples.
pub(crate) fn derivative_samples(points: &[Vector5<f64>], h: f64) -> Vec<Vector5<f64>> {
    let n = points.len();
    assert!(n >= 5);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d = if i >= 2 && i + 2 < n {
            (points[i - 2] - points[i - 1] * 8.0 + points[i + 1] * 8.0 - points[i + 2]) / (12.0 * h)
        } else if i == 0 {
            (points[0] * -25.0 + points[1] * 48.0 - points[2] * 36.0 + points[3] * 16.0
                - points[4] * 3.0)
                / (12.0 * h)
        } else if i == 1 {
            (points[0] * -3.0 - points[1] * 10.0 + points[2] * 18.0 - points[3] * 6.0
                + points[4])
                / (12.0 * h)
        } else if i + 2 == n {
            (points[n - 5] * -1.0 + points[n - 4] * 6.0 - points[n - 3] * 18.0
                + points[n - 2] * 10.0
                + points[n - 1] * 3.0)
                / (12.0 * h)
        } else {
            (points[n - 5] * 3.0 - points[n - 4] * 16.0 + points[n - 3] * 36.0
                - points[n - 2] * 48.0
                + points[n - 1] * 25.0)
                / (12.0 * h)
        };
        out.push(d);
    }
    out
}

/// The four kinematic functions derived from a trajectory. Momentum is the
/// finite-difference derivative, velocity is momentum over mass, force is
/// the derivative of momentum, acceleration is force over mass; the
/// identities `p = m v` and `F = m a` therefore hold by construction.
#[derive(Debug, Clone)]
pub struct Kinematics {
    pub momentum: Vec<Vector5<f64>>,
    pub velocity: Vec<Vector5<f64>>,
    pub force: Vec<Vector5<f64>>,
    pub acceleration: Vec<Vector5<f64>>,
}

pub fn derive_kinematics(f: &Trajectory) -> Result<Kinematics, DynamicsError> {
    if f.len() < 5 {
        return Err(DynamicsError::TooFewSamples {
            got: f.len(),
            need: 5,
        });
    }
    let momentum = derivative_samples(f.raw_points(), f.step());
    let velocity: Vec<_> = momentum.iter().map(|p| p / f.mass()).collect();
    let force = derivative_samples(&momentum, f.step());
    let acceleration: Vec<_> = force.iter().map(|p| p / f.mass()).collect();
    Ok(Kinematics {
        momentum,
        velocity,
        force,
        acceleration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::FrameId;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector3;

    fn straight_line(mass: f64, velocity: Vector3<f64>, n: usize, h: f64) -> Trajectory {
        let points: Vec<Vector5<f64>> = (0..n)
            .map(|i| {
                let t = i as f64 * h;
                let x = velocity * t;
                Vector5::new(mass * x.x, mass * x.y, mass * x.z, mass * t, mass)
            })
            .collect();
        Trajectory::new(Flavor::Newton, mass, 0.0, h, points, FrameId::STANDARD).unwrap()
    }

    #[test]
    fn rest_particle_kinematics() {
        let mass = 2.0;
        let f = straight_line(mass, Vector3::zeros(), 9, 0.1);
        let k = derive_kinematics(&f).unwrap();
        for (p, force) in k.momentum.iter().zip(&k.force) {
            // p = (m x', m, 0) with x' = 0.
            assert_abs_diff_eq!(p[0], 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p[3], mass, epsilon = 1e-10);
            assert_abs_diff_eq!(p[4], 0.0, epsilon = 1e-12);
            assert!(force.amax() < 1e-9);
        }
    }

    #[test]
    fn uniform_motion_has_constant_velocity_and_zero_acceleration() {
        let w = Vector3::new(0.5, -1.0, 0.25);
        let f = straight_line(1.5, w, 11, 0.05);
        let k = derive_kinematics(&f).unwrap();
        for (v, a) in k.velocity.iter().zip(&k.acceleration) {
            assert_abs_diff_eq!(v[0], w.x, epsilon = 1e-9);
            assert_abs_diff_eq!(v[1], w.y, epsilon = 1e-9);
            assert_abs_diff_eq!(v[2], w.z, epsilon = 1e-9);
            assert_abs_diff_eq!(v[3], 1.0, epsilon = 1e-9);
            assert_abs_diff_eq!(v[4], 0.0, epsilon = 1e-12);
            assert!(a.amax() < 1e-8);
        }
    }

    #[test]
    fn momentum_is_mass_times_velocity_by_construction() {
        let f = straight_line(3.0, Vector3::new(1.0, 0.0, 0.0), 7, 0.1);
        let k = derive_kinematics(&f).unwrap();
        for (p, v) in k.momentum.iter().zip(&k.velocity) {
            assert_eq!(*p, v * f.mass());
        }
    }

    #[test]
    fn einstein_rest_particle_rest_energy() {
        let mass = 2.0;
        let points: Vec<Vector5<f64>> = (0..9)
            .map(|i| {
                let tau = i as f64 * 0.1;
                Vector5::new(0.0, 0.0, 0.0, mass * tau, mass)
            })
            .collect();
        let f =
            Trajectory::new(Flavor::Einstein, mass, 0.0, 0.1, points, FrameId::STANDARD).unwrap();
        let k = derive_kinematics(&f).unwrap();
        let p = &k.momentum[4];
        assert_abs_diff_eq!(p[3], mass, epsilon = 1e-9);
        // Rest energy |p|^2 / m = m c^2 with c = 1.
        let norm2 = -crate::minkowski::eta(&super::spacetime(p), &super::spacetime(p));
        assert_abs_diff_eq!(norm2 / mass, mass, epsilon = 1e-8);
    }

    #[test]
    fn broken_natural_parametrization_is_rejected() {
        // mt grows at the wrong rate.
        let points: Vec<Vector5<f64>> = (0..9)
            .map(|i| Vector5::new(0.0, 0.0, 0.0, 2.0 * i as f64 * 0.1, 1.0))
            .collect();
        assert!(matches!(
            Trajectory::new(Flavor::Newton, 1.0, 0.0, 0.1, points, FrameId::STANDARD),
            Err(DynamicsError::InvalidTrajectory { .. })
        ));
    }

    #[test]
    fn too_few_samples_for_derivatives() {
        let f = straight_line(1.0, Vector3::zeros(), 3, 0.1);
        assert!(matches!(
            derive_kinematics(&f),
            Err(DynamicsError::TooFewSamples { got: 3, need: 5 })
        ));
    }

    #[test]
    fn finite_difference_order_on_polynomials() {
        // The stencils are exact on quartics.
        let h = 0.1;
        let points: Vec<Vector5<f64>> = (0..9)
            .map(|i| {
                let t: f64 = i as f64 * h;
                Vector5::new(t.powi(4), t.powi(3), t.powi(2), t, 1.0)
            })
            .collect();
        let d = derivative_samples(&points, h);
        for (i, di) in d.iter().enumerate() {
            let t = i as f64 * h;
            assert_abs_diff_eq!(di[0], 4.0 * t.powi(3), epsilon = 1e-10);
            assert_abs_diff_eq!(di[1], 3.0 * t.powi(2), epsilon = 1e-11);
            assert_abs_diff_eq!(di[2], 2.0 * t, epsilon = 1e-11);
            assert_abs_diff_eq!(di[3], 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(di[4], 0.0, epsilon = 1e-12);
        }
    }
}
