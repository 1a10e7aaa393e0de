//! Force fields: evaluators from (point, momentum) states to second
//! derivatives of the trajectory. The domain is whatever the evaluator
//! accepts; rejections are reported, not modeled geometrically.

use crate::minkowski::eta;
use crate::space::Flavor;
use nalgebra::{Vector4, Vector5};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
#[error("force field `{field}` rejected the state: {reason}")]
pub struct FieldError {
    pub field: String,
    pub reason: String,
}

/// A force field evaluator. Implementations must be safe for concurrent
/// evaluation (`Sync`); a field that is not should serialize internally.
pub trait ForceField: Sync {
    fn flavor(&self) -> Flavor;
    fn name(&self) -> &'static str;
    /// The force five-vector at the given state. Galilean forces are purely
    /// spatial; Lorentzian ones lie in the mass-zero block and must be
    /// orthogonal to the momentum.
    fn evaluate(
        &self,
        point: &Vector5<f64>,
        momentum: &Vector5<f64>,
    ) -> Result<Vector5<f64>, FieldError>;
}

/// The only field invariant under the full symmetry group; determines free
/// particles.
pub struct ZeroField {
    pub flavor: Flavor,
}

impl ForceField for ZeroField {
    fn flavor(&self) -> Flavor {
        self.flavor
    }

    fn name(&self) -> &'static str {
        "zero"
    }

    fn evaluate(&self, _: &Vector5<f64>, _: &Vector5<f64>) -> Result<Vector5<f64>, FieldError> {
        Ok(Vector5::zeros())
    }
}

/// Galilean isotropic oscillator `m x'' = -k x`.
pub struct IsotropicOscillator {
    pub stiffness: f64,
}

impl ForceField for IsotropicOscillator {
    fn flavor(&self) -> Flavor {
        Flavor::Newton
    }

    fn name(&self) -> &'static str {
        "isotropic-oscillator"
    }

    fn evaluate(
        &self,
        point: &Vector5<f64>,
        _momentum: &Vector5<f64>,
    ) -> Result<Vector5<f64>, FieldError> {
        let m = point[4];
        if m.abs() < 1e-12 {
            return Err(FieldError {
                field: self.name().to_string(),
                reason: "zero mass coordinate".to_string(),
            });
        }
        // m x'' = -k x, so f'' = (m x'', 0, 0) = -(k/m) (mx, 0, 0).
        let scale = -self.stiffness / m;
        Ok(Vector5::new(
            scale * point[0],
            scale * point[1],
            scale * point[2],
            0.0,
            0.0,
        ))
    }
}

/// Galilean attractive inverse-square field `x'' = -kappa x / |x|^3`,
/// undefined at the origin.
pub struct InverseSquareField {
    pub strength: f64,
}

impl ForceField for InverseSquareField {
    fn flavor(&self) -> Flavor {
        Flavor::Newton
    }

    fn name(&self) -> &'static str {
        "inverse-square"
    }

    fn evaluate(
        &self,
        point: &Vector5<f64>,
        _momentum: &Vector5<f64>,
    ) -> Result<Vector5<f64>, FieldError> {
        let m = point[4];
        if m.abs() < 1e-12 {
            return Err(FieldError {
                field: self.name().to_string(),
                reason: "zero mass coordinate".to_string(),
            });
        }
        let x = nalgebra::Vector3::new(point[0] / m, point[1] / m, point[2] / m);
        let r = x.norm();
        if r < 1e-9 {
            return Err(FieldError {
                field: self.name().to_string(),
                reason: format!("evaluation at radius {r:.3e} is outside the open domain"),
            });
        }
        let acc = -self.strength / (r * r * r) * x;
        Ok(Vector5::new(m * acc.x, m * acc.y, m * acc.z, 0.0, 0.0))
    }
}

/// Lorentzian magnetic-type force, antisymmetric in the momentum:
/// `F = lambda (p2, -p1, 0, 0)`. Orthogonality `<F, p> = 0` is structural.
pub struct AntisymmetricMomentumField {
    pub strength: f64,
}

impl ForceField for AntisymmetricMomentumField {
    fn flavor(&self) -> Flavor {
        Flavor::Einstein
    }

    fn name(&self) -> &'static str {
        "antisymmetric-relativistic"
    }

    fn evaluate(
        &self,
        _point: &Vector5<f64>,
        momentum: &Vector5<f64>,
    ) -> Result<Vector5<f64>, FieldError> {
        let f = Vector5::new(
            self.strength * momentum[1],
            -self.strength * momentum[0],
            0.0,
            0.0,
            0.0,
        );
        debug_assert!(
            eta(
                &Vector4::new(f[0], f[1], f[2], f[3]),
                &Vector4::new(momentum[0], momentum[1], momentum[2], momentum[3])
            )
            .abs()
                < 1e-12 * momentum.amax().max(1.0).powi(2)
        );
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetric_force_is_orthogonal_to_momentum() {
        let field = AntisymmetricMomentumField { strength: 0.7 };
        let p = Vector5::new(0.3, -1.2, 0.5, 2.0, 0.0);
        let f = field.evaluate(&Vector5::zeros(), &p).unwrap();
        let fp = eta(
            &Vector4::new(f[0], f[1], f[2], f[3]),
            &Vector4::new(p[0], p[1], p[2], p[3]),
        );
        assert_eq!(fp, 0.0);
    }

    #[test]
    fn inverse_square_rejects_the_origin() {
        let field = InverseSquareField { strength: 1.0 };
        let at_origin = Vector5::new(0.0, 0.0, 0.0, 0.0, 1.0);
        assert!(field.evaluate(&at_origin, &Vector5::zeros()).is_err());
    }
}
