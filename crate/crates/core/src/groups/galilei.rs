//! The Galilei group and its 13-dimensional extension, in block form.
//!
//! A group element is the block matrix
//!
//! ```text
//! [ O  v  x ]        O in SO(3), v boost velocity,
//! [ 0  1  t ]        x spatial translation, t time translation
//! [ 0  0  1 ]
//! ```
//!
//! An extended element replaces the blocks by `A` with `A A^T = n Id`
//! (n > 0), free columns, and nonzero diagonal scales `d`, `e`.

use super::{GroupError, GroupFamily, TOL_COMPOSE_DRIFT, TOL_ORTHONORMAL};
use crate::space::FiveVector;
use nalgebra::{Matrix3, Matrix5, Vector3};

fn mat3_residual(a: &Matrix3<f64>) -> f64 {
    a.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalileiElement {
    rotation: Matrix3<f64>,
    velocity: Vector3<f64>,
    translation: Vector3<f64>,
    time_shift: f64,
}

impl GalileiElement {
    pub fn identity() -> Self {
        GalileiElement {
            rotation: Matrix3::identity(),
            velocity: Vector3::zeros(),
            translation: Vector3::zeros(),
            time_shift: 0.0,
        }
    }

    pub fn new(
        rotation: Matrix3<f64>,
        velocity: Vector3<f64>,
        translation: Vector3<f64>,
        time_shift: f64,
    ) -> Result<Self, GroupError> {
        let g = GalileiElement {
            rotation,
            velocity,
            translation,
            time_shift,
        };
        g.validate(TOL_ORTHONORMAL)?;
        Ok(g)
    }

    pub fn translation(x: Vector3<f64>, t: f64) -> Self {
        GalileiElement {
            rotation: Matrix3::identity(),
            velocity: Vector3::zeros(),
            translation: x,
            time_shift: t,
        }
    }

    pub fn boost(v: Vector3<f64>) -> Self {
        GalileiElement {
            rotation: Matrix3::identity(),
            velocity: v,
            translation: Vector3::zeros(),
            time_shift: 0.0,
        }
    }

    pub fn rotation_element(o: Matrix3<f64>) -> Result<Self, GroupError> {
        Self::new(o, Vector3::zeros(), Vector3::zeros(), 0.0)
    }

    pub fn rotation(&self) -> Matrix3<f64> {
        self.rotation
    }

    pub fn velocity(&self) -> Vector3<f64> {
        self.velocity
    }

    pub fn spatial_translation(&self) -> Vector3<f64> {
        self.translation
    }

    pub fn time_shift(&self) -> f64 {
        self.time_shift
    }

    pub fn validate(&self, tol: f64) -> Result<(), GroupError> {
        let ortho = self.rotation * self.rotation.transpose() - Matrix3::identity();
        let residual = mat3_residual(&ortho).max((self.rotation.determinant() - 1.0).abs());
        if residual > tol {
            return Err(GroupError::MembershipViolation {
                family: GroupFamily::Galilei,
                residual,
                tol,
            });
        }
        Ok(())
    }

    pub fn matrix(&self) -> Matrix5<f64> {
        let mut m = Matrix5::identity();
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = self.rotation[(i, j)];
            }
            m[(i, 3)] = self.velocity[i];
            m[(i, 4)] = self.translation[i];
        }
        m[(3, 4)] = self.time_shift;
        m
    }

    /// `(x, y, z) -> (Ox + vy + az, y + tz, z)`.
    pub fn apply(&self, p: &FiveVector) -> FiveVector {
        let x = p.spatial();
        let y = p.time_component();
        let z = p.mass_component();
        let sx = self.rotation * x + self.velocity * y + self.translation * z;
        FiveVector::newtonian(sx, y + self.time_shift * z, z, p.frame)
    }

    pub fn compose(&self, other: &GalileiElement) -> Result<GalileiElement, GroupError> {
        let g = GalileiElement {
            rotation: self.rotation * other.rotation,
            velocity: self.rotation * other.velocity + self.velocity,
            translation: self.rotation * other.translation
                + self.velocity * other.time_shift
                + self.translation,
            time_shift: self.time_shift + other.time_shift,
        };
        g.validate(TOL_COMPOSE_DRIFT)?;
        Ok(g)
    }

    pub fn inverse(&self) -> GalileiElement {
        let ot = self.rotation.transpose();
        GalileiElement {
            rotation: ot,
            velocity: -(ot * self.velocity),
            translation: ot * (self.velocity * self.time_shift - self.translation),
            time_shift: -self.time_shift,
        }
    }

    /// Gram-Schmidt on the rotation block's columns.
    pub fn reorthonormalized(&self) -> GalileiElement {
        let c0: Vector3<f64> = self.rotation.column(0).into_owned();
        let c0 = c0.normalize();
        let c1: Vector3<f64> = self.rotation.column(1).into_owned();
        let c1 = (c1 - c0 * c0.dot(&c1)).normalize();
        let c2 = c0.cross(&c1);
        GalileiElement {
            rotation: Matrix3::from_columns(&[c0, c1, c2]),
            velocity: self.velocity,
            translation: self.translation,
            time_shift: self.time_shift,
        }
    }
}

/// Diagonal scale block `diag(a, a, a, b, c)` of the extended group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GalileiScale {
    pub spatial: f64,
    pub time: f64,
    pub mass: f64,
}

impl GalileiScale {
    pub fn identity() -> Self {
        GalileiScale {
            spatial: 1.0,
            time: 1.0,
            mass: 1.0,
        }
    }

    pub fn matrix(&self) -> Matrix5<f64> {
        Matrix5::from_diagonal(&nalgebra::Vector5::new(
            self.spatial,
            self.spatial,
            self.spatial,
            self.time,
            self.mass,
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedGalileiElement {
    linear: Matrix3<f64>,
    velocity_col: Vector3<f64>,
    translation_col: Vector3<f64>,
    time_scale: f64,
    time_shift: f64,
    mass_scale: f64,
}

impl ExtendedGalileiElement {
    pub fn new(
        linear: Matrix3<f64>,
        velocity_col: Vector3<f64>,
        translation_col: Vector3<f64>,
        time_scale: f64,
        time_shift: f64,
        mass_scale: f64,
    ) -> Result<Self, GroupError> {
        let g = ExtendedGalileiElement {
            linear,
            velocity_col,
            translation_col,
            time_scale,
            time_shift,
            mass_scale,
        };
        g.validate(TOL_ORTHONORMAL)?;
        Ok(g)
    }

    pub fn from_group(g: &GalileiElement) -> Self {
        Self::from_parts(&GalileiScale::identity(), g)
    }

    /// Block product `c * g`; the inverse of `factorize`.
    pub fn from_parts(c: &GalileiScale, g: &GalileiElement) -> Self {
        ExtendedGalileiElement {
            linear: g.rotation * c.spatial,
            velocity_col: g.velocity * c.spatial,
            translation_col: g.translation * c.spatial,
            time_scale: c.time,
            time_shift: g.time_shift * c.time,
            mass_scale: c.mass,
        }
    }

    pub fn mass_scale(&self) -> f64 {
        self.mass_scale
    }

    pub fn time_scale(&self) -> f64 {
        self.time_scale
    }

    pub fn linear(&self) -> Matrix3<f64> {
        self.linear
    }

    pub fn validate(&self, tol: f64) -> Result<(), GroupError> {
        let aat = self.linear * self.linear.transpose();
        let n = aat.trace() / 3.0;
        if !(n > 0.0) {
            return Err(GroupError::NotInExtendedGroup {
                reason: format!("spatial block has nonpositive squared scale {n:.3e}"),
            });
        }
        let residual = mat3_residual(&(aat - Matrix3::identity() * n));
        if residual > tol * n.max(1.0) {
            return Err(GroupError::NotInExtendedGroup {
                reason: format!("A A^T deviates from n Id by {residual:.3e}"),
            });
        }
        if self.time_scale == 0.0 || self.mass_scale == 0.0 {
            return Err(GroupError::NotInExtendedGroup {
                reason: "zero diagonal scale".to_string(),
            });
        }
        Ok(())
    }

    pub fn matrix(&self) -> Matrix5<f64> {
        let mut m = Matrix5::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = self.linear[(i, j)];
            }
            m[(i, 3)] = self.velocity_col[i];
            m[(i, 4)] = self.translation_col[i];
        }
        m[(3, 3)] = self.time_scale;
        m[(3, 4)] = self.time_shift;
        m[(4, 4)] = self.mass_scale;
        m
    }

    pub fn apply(&self, p: &FiveVector) -> FiveVector {
        let x = p.spatial();
        let y = p.time_component();
        let z = p.mass_component();
        let sx = self.linear * x + self.velocity_col * y + self.translation_col * z;
        FiveVector::newtonian(
            sx,
            self.time_scale * y + self.time_shift * z,
            self.mass_scale * z,
            p.frame,
        )
    }

    pub fn compose(&self, other: &ExtendedGalileiElement) -> Result<Self, GroupError> {
        let g = ExtendedGalileiElement {
            linear: self.linear * other.linear,
            velocity_col: self.linear * other.velocity_col + self.velocity_col * other.time_scale,
            translation_col: self.linear * other.translation_col
                + self.velocity_col * other.time_shift
                + self.translation_col * other.mass_scale,
            time_scale: self.time_scale * other.time_scale,
            time_shift: self.time_scale * other.time_shift + self.time_shift * other.mass_scale,
            mass_scale: self.mass_scale * other.mass_scale,
        };
        g.validate(TOL_COMPOSE_DRIFT)?;
        Ok(g)
    }

    /// The unique `(c, g)` with `c` diagonal and `g` in the Galilei group.
    /// The spatial factor's sign is pinned by `det A = s^3`.
    pub fn factorize(&self) -> Result<(GalileiScale, GalileiElement), GroupError> {
        self.validate(TOL_ORTHONORMAL)?;
        let s = self.linear.determinant().cbrt();
        if s == 0.0 || !s.is_finite() {
            return Err(GroupError::NotInExtendedGroup {
                reason: "singular spatial block".to_string(),
            });
        }
        let c = GalileiScale {
            spatial: s,
            time: self.time_scale,
            mass: self.mass_scale,
        };
        let g = GalileiElement {
            rotation: self.linear / s,
            velocity: self.velocity_col / s,
            translation: self.translation_col / s,
            time_shift: self.time_shift / self.time_scale,
        };
        g.validate(TOL_ORTHONORMAL)?;
        Ok((c, g))
    }
}
