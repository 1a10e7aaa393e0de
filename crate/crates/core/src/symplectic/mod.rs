//! The manifolds of timelike lines in the mass hyperplanes, their
//! generalized symplectic forms, and the induced group actions.
//!
//! A timelike line in the hyperplane of mass `m` is stored in canonical
//! chart coordinates `(velocity, offset)`:
//!
//! - Galilean: `velocity` is the 3-velocity of the line, `offset` its
//!   spatial position in the time-zero slice; the line's points are
//!   `m (offset + velocity s, s, 1)`.
//! - Lorentzian: `velocity` is the unit future timelike direction, `offset`
//!   the Lorentz-orthogonal fiber coordinate; the points are
//!   `m (offset + velocity s, 1)`.
//!
//! The symplectic form on tangent pairs `(dv_i, dq_i)` is
//! `m (<dv_1, dq_2> - <dv_2, dq_1>)` with the Euclidean respectively
//! Lorentzian product, valued in the line `[kgm]^2/[kgs]` (that is,
//! `[kgm][m]/[s]`). The form ignores components of `dq` along the line
//! direction, so finite-difference tangents need no exact projection.

mod hamiltonian;
mod verify;

pub use hamiltonian::{hamiltonian_flow_check, FlowReport};
pub use verify::{
    equivalence_verdict, verify_scaling_diagram, verify_symplectic_action, ActionReport,
    EquivalenceReport, ScalingReport,
};

use crate::groups::{
    ExtendedElement, ExtendedGalileiElement, ExtendedPoincareElement, GalileiElement,
    GroupElement, PoincareElement,
};
use crate::measure::{Dimension, Quantity};
use crate::minkowski::eta;
use crate::space::{Flavor, FrameId};
use nalgebra::{Vector3, Vector4};
use num_rational::Rational64;
use thiserror::Error;

/// Tangency residual bound for Lorentzian line points and tangents.
pub const TOL_TANGENCY: f64 = 1e-10;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SymplecticError {
    #[error("tangency violation: residual {residual:.3e} exceeds {tol:.1e}")]
    TangencyViolation { residual: f64, tol: f64 },
    #[error("line direction is not future timelike")]
    NotTimelike,
    #[error("flavors do not match")]
    FlavorMismatch,
    #[error("zero mass line point")]
    ZeroMass,
    #[error("extended element rescales mass by {found}, expected {expected}")]
    ScaleMismatch { expected: f64, found: f64 },
}

/// The dimension `[kgm]^2 / [kgs]` of the symplectic form's values.
pub fn omega_dimension() -> Dimension {
    Dimension::kgm()
        .pow(Rational64::from_integer(2))
        .div(&Dimension::kgs())
}

/// A point of the timelike-line manifold, in canonical chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum LinePoint {
    Newton {
        mass: f64,
        velocity: Vector3<f64>,
        offset: Vector3<f64>,
        frame: FrameId,
    },
    Einstein {
        mass: f64,
        velocity: Vector4<f64>,
        offset: Vector4<f64>,
        frame: FrameId,
    },
}

impl LinePoint {
    pub fn newton(mass: f64, velocity: Vector3<f64>, offset: Vector3<f64>) -> LinePoint {
        LinePoint::Newton {
            mass,
            velocity,
            offset,
            frame: FrameId::STANDARD,
        }
    }

    /// Canonicalize a Lorentzian line point: normalize the direction to a
    /// unit future vector and project the offset onto its orthogonal
    /// complement.
    pub fn einstein(
        mass: f64,
        direction: Vector4<f64>,
        offset: Vector4<f64>,
    ) -> Result<LinePoint, SymplecticError> {
        if mass == 0.0 {
            return Err(SymplecticError::ZeroMass);
        }
        let q = eta(&direction, &direction);
        if q >= 0.0 {
            return Err(SymplecticError::NotTimelike);
        }
        let mut v = direction / (-q).sqrt();
        if v[3] < 0.0 {
            v = -v;
        }
        let offset = offset + eta(&offset, &v) * v;
        Ok(LinePoint::Einstein {
            mass,
            velocity: v,
            offset,
            frame: FrameId::STANDARD,
        })
    }

    pub fn flavor(&self) -> Flavor {
        match self {
            LinePoint::Newton { .. } => Flavor::Newton,
            LinePoint::Einstein { .. } => Flavor::Einstein,
        }
    }

    pub fn mass(&self) -> f64 {
        match self {
            LinePoint::Newton { mass, .. } | LinePoint::Einstein { mass, .. } => *mass,
        }
    }

    pub fn mass_quantity(&self) -> Quantity {
        Quantity::new(self.mass(), Dimension::kg())
    }

    /// Two points of the underlying line in the mass hyperplane, as raw
    /// five-vector coordinates: the base point and the base point plus the
    /// direction.
    pub fn two_points(&self) -> (nalgebra::Vector5<f64>, nalgebra::Vector5<f64>) {
        match self {
            LinePoint::Newton {
                mass,
                velocity,
                offset,
                ..
            } => {
                let base = nalgebra::Vector5::new(
                    mass * offset.x,
                    mass * offset.y,
                    mass * offset.z,
                    0.0,
                    *mass,
                );
                let dir = nalgebra::Vector5::new(velocity.x, velocity.y, velocity.z, 1.0, 0.0);
                (base, base + dir)
            }
            LinePoint::Einstein {
                mass,
                velocity,
                offset,
                ..
            } => {
                let base = nalgebra::Vector5::new(
                    mass * offset[0],
                    mass * offset[1],
                    mass * offset[2],
                    mass * offset[3],
                    *mass,
                );
                let dir =
                    nalgebra::Vector5::new(velocity[0], velocity[1], velocity[2], velocity[3], 0.0);
                (base, base + dir)
            }
        }
    }

    /// Reconstruct the canonical chart point from two distinct points of a
    /// line (their difference must be timelike / have nonzero time
    /// component). This is the chart-independent route used to cross-check
    /// the closed-form group action.
    pub fn from_two_points(
        flavor: Flavor,
        a: &nalgebra::Vector5<f64>,
        b: &nalgebra::Vector5<f64>,
    ) -> Result<LinePoint, SymplecticError> {
        let mass = a[4];
        if mass == 0.0 {
            return Err(SymplecticError::ZeroMass);
        }
        match flavor {
            Flavor::Newton => {
                let d = b - a;
                if d[3].abs() < 1e-14 {
                    return Err(SymplecticError::NotTimelike);
                }
                let w = Vector3::new(d[0] / d[3], d[1] / d[3], d[2] / d[3]);
                // Intersect with the time-zero slice: a - (a4/d4) d.
                let s = a[3] / d[3];
                let base = a - d * s;
                let q = Vector3::new(base[0], base[1], base[2]) / mass;
                Ok(LinePoint::newton(mass, w, q))
            }
            Flavor::Einstein => {
                let d = Vector4::new(b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3]);
                let x = Vector4::new(a[0], a[1], a[2], a[3]) / mass;
                LinePoint::einstein(mass, d, x)
            }
        }
    }
}

/// A tangent vector at a line point, in chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Tangent {
    Newton { dv: Vector3<f64>, dq: Vector3<f64> },
    Einstein { dv: Vector4<f64>, dq: Vector4<f64> },
}

impl Tangent {
    pub fn newton(dv: Vector3<f64>, dq: Vector3<f64>) -> Tangent {
        Tangent::Newton { dv, dq }
    }

    pub fn einstein(dv: Vector4<f64>, dq: Vector4<f64>) -> Tangent {
        Tangent::Einstein { dv, dq }
    }

    pub fn zero(flavor: Flavor) -> Tangent {
        match flavor {
            Flavor::Newton => Tangent::newton(Vector3::zeros(), Vector3::zeros()),
            Flavor::Einstein => Tangent::einstein(Vector4::zeros(), Vector4::zeros()),
        }
    }
}

/// The canonical generalized symplectic form
/// `m (<dv_1, dq_2> - <dv_2, dq_1>)`, valued in `[kgm]^2/[kgs]`.
///
/// Lorentzian tangents must have their velocity component tangent to the
/// unit hyperboloid (`<dv, velocity> = 0` within tolerance).
pub fn omega(x: &LinePoint, u1: &Tangent, u2: &Tangent) -> Result<Quantity, SymplecticError> {
    match (x, u1, u2) {
        (LinePoint::Einstein { velocity, .. }, Tangent::Einstein { dv: dv1, .. }, Tangent::Einstein { dv: dv2, .. }) => {
            for dv in [dv1, dv2] {
                let residual = eta(dv, velocity).abs();
                let tol = TOL_TANGENCY * dv.amax().max(1.0);
                if residual > tol {
                    return Err(SymplecticError::TangencyViolation { residual, tol });
                }
            }
        }
        (LinePoint::Newton { .. }, Tangent::Newton { .. }, Tangent::Newton { .. }) => {}
        _ => return Err(SymplecticError::FlavorMismatch),
    }
    Ok(Quantity::new(omega_raw(x, u1, u2), omega_dimension()))
}

/// The form without the tangency guard; finite-difference tangents carry
/// harmless second-order normal components that the formula ignores.
pub(crate) fn omega_raw(x: &LinePoint, u1: &Tangent, u2: &Tangent) -> f64 {
    match (x, u1, u2) {
        (
            LinePoint::Newton { mass, .. },
            Tangent::Newton { dv: dv1, dq: dq1 },
            Tangent::Newton { dv: dv2, dq: dq2 },
        ) => mass * (dv1.dot(dq2) - dv2.dot(dq1)),
        (
            LinePoint::Einstein { mass, .. },
            Tangent::Einstein { dv: dv1, dq: dq1 },
            Tangent::Einstein { dv: dv2, dq: dq2 },
        ) => mass * (eta(dv1, dq2) - eta(dv2, dq1)),
        _ => f64::NAN,
    }
}

/// Action of a group element on a line point, in closed form on the chart.
pub fn act_on_line(g: &GroupElement, x: &LinePoint) -> Result<LinePoint, SymplecticError> {
    match (g, x) {
        (GroupElement::Galilei(g), LinePoint::Newton { .. }) => Ok(act_galilei(g, x)),
        (GroupElement::Poincare(p), LinePoint::Einstein { .. }) => act_poincare(p, x),
        _ => Err(SymplecticError::FlavorMismatch),
    }
}

fn act_galilei(g: &GalileiElement, x: &LinePoint) -> LinePoint {
    let LinePoint::Newton {
        mass,
        velocity,
        offset,
        frame,
    } = x
    else {
        unreachable!()
    };
    let w = g.rotation() * velocity + g.velocity();
    let q = g.rotation() * offset + g.spatial_translation() - w * g.time_shift();
    LinePoint::Newton {
        mass: *mass,
        velocity: w,
        offset: q,
        frame: *frame,
    }
}

fn act_poincare(p: &PoincareElement, x: &LinePoint) -> Result<LinePoint, SymplecticError> {
    let LinePoint::Einstein {
        mass,
        velocity,
        offset,
        frame,
    } = x
    else {
        unreachable!()
    };
    let direction = p.lorentz() * velocity;
    let base = p.lorentz() * offset + p.translation();
    let mut out = LinePoint::einstein(*mass, direction, base)?;
    if let LinePoint::Einstein { frame: f, .. } = &mut out {
        *f = *frame;
    }
    Ok(out)
}

/// Action of an extended element: it carries the line manifold of mass `m`
/// onto the one of mass `(mass scale) * m`.
pub fn act_on_line_extended(
    g: &ExtendedElement,
    x: &LinePoint,
) -> Result<LinePoint, SymplecticError> {
    match (g, x) {
        (ExtendedElement::Galilei(g), LinePoint::Newton { .. }) => act_extended_galilei(g, x),
        (ExtendedElement::Poincare(p), LinePoint::Einstein { .. }) => act_extended_poincare(p, x),
        _ => Err(SymplecticError::FlavorMismatch),
    }
}

fn act_extended_galilei(
    g: &ExtendedGalileiElement,
    x: &LinePoint,
) -> Result<LinePoint, SymplecticError> {
    let LinePoint::Newton { frame, .. } = x else {
        unreachable!()
    };
    let (base, second) = x.two_points();
    let m = g.matrix();
    let mut out = LinePoint::from_two_points(Flavor::Newton, &(m * base), &(m * second))?;
    if let LinePoint::Newton { frame: f, .. } = &mut out {
        *f = *frame;
    }
    Ok(out)
}

fn act_extended_poincare(
    p: &ExtendedPoincareElement,
    x: &LinePoint,
) -> Result<LinePoint, SymplecticError> {
    let LinePoint::Einstein { frame, .. } = x else {
        unreachable!()
    };
    let (base, second) = x.two_points();
    let m = p.matrix();
    let mut out = LinePoint::from_two_points(Flavor::Einstein, &(m * base), &(m * second))?;
    if let LinePoint::Einstein { frame: f, .. } = &mut out {
        *f = *frame;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{rng_from_seed, sample, GroupFamily};
    use crate::minkowski::boost;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    #[test]
    fn omega_is_antisymmetric_and_normalized() {
        let x = LinePoint::newton(1.0, Vector3::zeros(), Vector3::zeros());
        let u1 = Tangent::newton(Vector3::x(), Vector3::zeros());
        let u2 = Tangent::newton(Vector3::zeros(), Vector3::x());
        let w = omega(&x, &u1, &u2).unwrap();
        assert_eq!(w.magnitude, 1.0);
        assert_eq!(w.dim, omega_dimension());
        let flipped = omega(&x, &u2, &u1).unwrap();
        assert_eq!(flipped.magnitude, -1.0);
        assert_eq!(omega(&x, &u1, &u1).unwrap().magnitude, 0.0);
    }

    #[test]
    fn omega_scales_linearly_in_the_mass() {
        let u1 = Tangent::newton(Vector3::new(0.3, 1.0, -0.2), Vector3::new(0.1, 0.0, 0.5));
        let u2 = Tangent::newton(Vector3::new(-1.0, 0.4, 0.0), Vector3::new(0.7, 0.2, -0.3));
        let x1 = LinePoint::newton(1.0, Vector3::zeros(), Vector3::zeros());
        let x2 = LinePoint::newton(2.0, Vector3::zeros(), Vector3::zeros());
        let w1 = omega(&x1, &u1, &u2).unwrap().magnitude;
        let w2 = omega(&x2, &u1, &u2).unwrap().magnitude;
        assert_abs_diff_eq!(w2, 2.0 * w1, epsilon = 1e-15);
    }

    #[test]
    fn einstein_tangency_is_enforced() {
        let x = LinePoint::einstein(
            1.0,
            Vector4::new(0.0, 0.0, 0.0, 1.0),
            Vector4::new(0.5, 0.0, 0.0, 0.0),
        )
        .unwrap();
        let bad = Tangent::einstein(Vector4::new(0.0, 0.0, 0.0, 1.0), Vector4::zeros());
        let good = Tangent::einstein(Vector4::new(1.0, 0.0, 0.0, 0.0), Vector4::zeros());
        assert!(matches!(
            omega(&x, &bad, &good),
            Err(SymplecticError::TangencyViolation { .. })
        ));
        assert!(omega(&x, &good, &good).is_ok());
    }

    #[test]
    fn identity_fixes_line_points() {
        let x = LinePoint::newton(1.5, Vector3::new(0.2, 0.0, -1.0), Vector3::new(1.0, 2.0, 3.0));
        let out = act_on_line(&GroupElement::identity(GroupFamily::Galilei), &x).unwrap();
        assert_eq!(out, x);
    }

    #[test]
    fn spatial_translation_shifts_the_offset() {
        let x = LinePoint::newton(2.0, Vector3::new(0.5, 0.0, 0.0), Vector3::zeros());
        let a = Vector3::new(1.0, -2.0, 0.5);
        let g = GroupElement::Galilei(GalileiElement::translation(a, 0.0));
        match act_on_line(&g, &x).unwrap() {
            LinePoint::Newton {
                velocity, offset, ..
            } => {
                assert_eq!(velocity, Vector3::new(0.5, 0.0, 0.0));
                assert_eq!(offset, a);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn galilei_boost_adds_to_the_velocity() {
        let x = LinePoint::newton(1.0, Vector3::new(0.5, 0.0, 0.0), Vector3::new(0.0, 1.0, 0.0));
        let g = GroupElement::Galilei(GalileiElement::boost(Vector3::new(0.25, 0.0, 0.0)));
        match act_on_line(&g, &x).unwrap() {
            LinePoint::Newton {
                velocity, offset, ..
            } => {
                assert_eq!(velocity, Vector3::new(0.75, 0.0, 0.0));
                // A boost fixes the time-zero slice pointwise.
                assert_eq!(offset, Vector3::new(0.0, 1.0, 0.0));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn action_matches_the_two_point_oracle() {
        let mut rng = rng_from_seed(59);
        for seed in 0..200u64 {
            let x = LinePoint::newton(
                1.0 + (seed % 3) as f64,
                Vector3::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ),
                Vector3::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ),
            );
            let g = sample(GroupFamily::Galilei, seed, 1.0);
            let closed = act_on_line(&g, &x).unwrap();
            let (a, b) = x.two_points();
            let oracle = LinePoint::from_two_points(
                Flavor::Newton,
                &(g.matrix() * a),
                &(g.matrix() * b),
            )
            .unwrap();
            match (&closed, &oracle) {
                (
                    LinePoint::Newton {
                        velocity: v1,
                        offset: q1,
                        ..
                    },
                    LinePoint::Newton {
                        velocity: v2,
                        offset: q2,
                        ..
                    },
                ) => {
                    assert!((v1 - v2).amax() < 1e-11, "velocity mismatch at {seed}");
                    assert!((q1 - q2).amax() < 1e-10, "offset mismatch at {seed}");
                }
                _ => unreachable!(),
            }
        }

        for seed in 0..200u64 {
            let x = LinePoint::einstein(
                1.0 + (seed % 2) as f64,
                crate::einstein::sample_unit_timelike(&mut rng, 1.5),
                Vector4::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ),
            )
            .unwrap();
            let g = sample(GroupFamily::Poincare, 300 + seed, 1.0);
            let closed = act_on_line(&g, &x).unwrap();
            let (a, b) = x.two_points();
            let oracle = LinePoint::from_two_points(
                Flavor::Einstein,
                &(g.matrix() * a),
                &(g.matrix() * b),
            )
            .unwrap();
            match (&closed, &oracle) {
                (
                    LinePoint::Einstein {
                        velocity: v1,
                        offset: q1,
                        ..
                    },
                    LinePoint::Einstein {
                        velocity: v2,
                        offset: q2,
                        ..
                    },
                ) => {
                    assert!((v1 - v2).amax() < 1e-10, "velocity mismatch at {seed}");
                    assert!((q1 - q2).amax() < 1e-9, "offset mismatch at {seed}");
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn einstein_canonicalization_projects_the_offset() {
        let v = boost(&Vector3::x(), 0.7) * Vector4::new(0.0, 0.0, 0.0, 1.0);
        let x = LinePoint::einstein(1.0, v, Vector4::new(1.0, 2.0, 3.0, 4.0)).unwrap();
        if let LinePoint::Einstein {
            velocity, offset, ..
        } = x
        {
            assert_abs_diff_eq!(eta(&velocity, &velocity), -1.0, epsilon = 1e-14);
            assert!(eta(&offset, &velocity).abs() < 1e-13);
        }
    }
}
