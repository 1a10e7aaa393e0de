//! The Poincaré group and its 12-dimensional extension, in block form.
//!
//! A group element is
//!
//! ```text
//! [ L  x ]        L in SO+(3,1)  (signature +++-, time at index 3),
//! [ 0  1 ]        x a spacetime translation
//! ```
//!
//! An extended element has `A = n L` with nonzero `n` and a nonzero mass
//! scale `b`. Orthochronicity pins the sign of `n` through `A_44`.

use super::{GroupError, GroupFamily, TOL_COMPOSE_DRIFT, TOL_ORTHONORMAL};
use crate::minkowski::{eta_matrix, eta_orthonormalize, lorentz_residual};
use crate::space::FiveVector;
use nalgebra::{Matrix4, Matrix5, Vector4};

#[derive(Debug, Clone, PartialEq)]
pub struct PoincareElement {
    lorentz: Matrix4<f64>,
    translation: Vector4<f64>,
}

impl PoincareElement {
    pub fn identity() -> Self {
        PoincareElement {
            lorentz: Matrix4::identity(),
            translation: Vector4::zeros(),
        }
    }

    pub fn new(lorentz: Matrix4<f64>, translation: Vector4<f64>) -> Result<Self, GroupError> {
        let p = PoincareElement {
            lorentz,
            translation,
        };
        p.validate(TOL_ORTHONORMAL)?;
        Ok(p)
    }

    pub fn translation_element(x: Vector4<f64>) -> Self {
        PoincareElement {
            lorentz: Matrix4::identity(),
            translation: x,
        }
    }

    pub fn lorentz(&self) -> Matrix4<f64> {
        self.lorentz
    }

    pub fn translation(&self) -> Vector4<f64> {
        self.translation
    }

    /// Residuals are measured relative to the natural scale of each
    /// condition (the block magnitude squared for the metric condition,
    /// fourth power for the determinant): composition chains of boosts grow
    /// like the exponential of the accumulated rapidity.
    pub fn validate(&self, tol: f64) -> Result<(), GroupError> {
        let scale = self.lorentz.amax().max(1.0);
        let residual = (lorentz_residual(&self.lorentz) / (scale * scale))
            .max((self.lorentz.determinant() - 1.0).abs() / scale.powi(4))
            .max(if self.lorentz[(3, 3)] >= 1.0 - tol {
                0.0
            } else {
                1.0
            });
        if residual > tol {
            return Err(GroupError::MembershipViolation {
                family: GroupFamily::Poincare,
                residual,
                tol,
            });
        }
        Ok(())
    }

    pub fn matrix(&self) -> Matrix5<f64> {
        let mut m = Matrix5::identity();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = self.lorentz[(i, j)];
            }
            m[(i, 4)] = self.translation[i];
        }
        m
    }

    /// `(w, z) -> (Lw + xz, z)`.
    pub fn apply(&self, p: &FiveVector) -> FiveVector {
        let w = p.spacetime();
        let z = p.mass_component();
        FiveVector::einsteinian(self.lorentz * w + self.translation * z, z, p.frame)
    }

    pub fn compose(&self, other: &PoincareElement) -> Result<PoincareElement, GroupError> {
        let p = PoincareElement {
            lorentz: self.lorentz * other.lorentz,
            translation: self.lorentz * other.translation + self.translation,
        };
        p.validate(TOL_COMPOSE_DRIFT)?;
        Ok(p)
    }

    pub fn inverse(&self) -> PoincareElement {
        // L^-1 = eta L^T eta for pseudo-orthogonal L.
        let linv = eta_matrix() * self.lorentz.transpose() * eta_matrix();
        PoincareElement {
            lorentz: linv,
            translation: -(linv * self.translation),
        }
    }

    pub fn reorthonormalized(&self) -> PoincareElement {
        PoincareElement {
            lorentz: eta_orthonormalize(&self.lorentz),
            translation: self.translation,
        }
    }
}

/// Diagonal scale block `diag(a, a, a, a, b)` of the extended group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareScale {
    pub spacetime: f64,
    pub mass: f64,
}

impl PoincareScale {
    pub fn identity() -> Self {
        PoincareScale {
            spacetime: 1.0,
            mass: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedPoincareElement {
    linear: Matrix4<f64>,
    translation_col: Vector4<f64>,
    mass_scale: f64,
}

impl ExtendedPoincareElement {
    pub fn new(
        linear: Matrix4<f64>,
        translation_col: Vector4<f64>,
        mass_scale: f64,
    ) -> Result<Self, GroupError> {
        let p = ExtendedPoincareElement {
            linear,
            translation_col,
            mass_scale,
        };
        p.validate(TOL_ORTHONORMAL)?;
        Ok(p)
    }

    pub fn from_group(p: &PoincareElement) -> Self {
        Self::from_parts(&PoincareScale::identity(), p)
    }

    pub fn from_parts(c: &PoincareScale, p: &PoincareElement) -> Self {
        ExtendedPoincareElement {
            linear: p.lorentz * c.spacetime,
            translation_col: p.translation * c.spacetime,
            mass_scale: c.mass,
        }
    }

    pub fn mass_scale(&self) -> f64 {
        self.mass_scale
    }

    pub fn linear(&self) -> Matrix4<f64> {
        self.linear
    }

    /// The scalar `n` with `A = n L`, recovered as `|det A|^(1/4)` with the
    /// sign taken from the time-time entry (L is orthochronous).
    pub fn spacetime_scale(&self) -> Result<f64, GroupError> {
        let det = self.linear.determinant();
        if det <= 0.0 || !det.is_finite() {
            return Err(GroupError::NotInExtendedGroup {
                reason: format!("spacetime block determinant {det:.3e} is not n^4 > 0"),
            });
        }
        let magnitude = det.abs().powf(0.25);
        Ok(if self.linear[(3, 3)] >= 0.0 {
            magnitude
        } else {
            -magnitude
        })
    }

    pub fn validate(&self, tol: f64) -> Result<(), GroupError> {
        let n = self.spacetime_scale()?;
        let l = self.linear / n;
        let residual = lorentz_residual(&l).max((l.determinant() - 1.0).abs());
        if residual > tol || l[(3, 3)] < 1.0 - tol {
            return Err(GroupError::NotInExtendedGroup {
                reason: format!("A/n is not in SO+(3,1): residual {residual:.3e}"),
            });
        }
        if self.mass_scale == 0.0 {
            return Err(GroupError::NotInExtendedGroup {
                reason: "zero mass scale".to_string(),
            });
        }
        Ok(())
    }

    pub fn matrix(&self) -> Matrix5<f64> {
        let mut m = Matrix5::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = self.linear[(i, j)];
            }
            m[(i, 4)] = self.translation_col[i];
        }
        m[(4, 4)] = self.mass_scale;
        m
    }

    pub fn apply(&self, p: &FiveVector) -> FiveVector {
        let w = p.spacetime();
        let z = p.mass_component();
        FiveVector::einsteinian(
            self.linear * w + self.translation_col * z,
            self.mass_scale * z,
            p.frame,
        )
    }

    pub fn compose(&self, other: &ExtendedPoincareElement) -> Result<Self, GroupError> {
        let p = ExtendedPoincareElement {
            linear: self.linear * other.linear,
            translation_col: self.linear * other.translation_col
                + self.translation_col * other.mass_scale,
            mass_scale: self.mass_scale * other.mass_scale,
        };
        p.validate(TOL_COMPOSE_DRIFT)?;
        Ok(p)
    }

    pub fn factorize(&self) -> Result<(PoincareScale, PoincareElement), GroupError> {
        self.validate(TOL_ORTHONORMAL)?;
        let n = self.spacetime_scale()?;
        let c = PoincareScale {
            spacetime: n,
            mass: self.mass_scale,
        };
        let p = PoincareElement {
            lorentz: self.linear / n,
            translation: self.translation_col / n,
        };
        p.validate(TOL_ORTHONORMAL)?;
        Ok((c, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::boost;
    use crate::space::FrameId;
    use nalgebra::Vector3;

    #[test]
    fn inverse_undoes_the_action() {
        let p = PoincareElement {
            lorentz: boost(&Vector3::new(1.0, -0.5, 0.25), 1.1),
            translation: Vector4::new(1.0, 2.0, 3.0, 4.0),
        };
        let v = FiveVector::einsteinian(Vector4::new(0.3, 0.1, -0.7, 2.0), 1.5, FrameId::STANDARD);
        let back = p.inverse().apply(&p.apply(&v));
        assert!((back.coords - v.coords).norm() < 1e-13);
    }

    #[test]
    fn non_orthochronous_blocks_are_rejected() {
        let mut l = Matrix4::identity();
        l[(3, 3)] = -1.0;
        l[(2, 2)] = -1.0; // keep det = +1
        assert!(PoincareElement::new(l, Vector4::zeros()).is_err());
    }
}
