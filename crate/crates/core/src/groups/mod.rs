//! Matrix realizations of the Galilei and Poincaré groups on `R^5`, their
//! extended automorphism groups, the unique scale-times-isometry
//! factorization, membership validation, deterministic sampling, and the
//! subgroup lattice classification.
//!
//! Every element stores exact block parameters; the 5x5 matrix is derived on
//! demand. Validation tolerances are absolute residual bounds on the block
//! invariants. Re-orthonormalization is an explicit operation and is never
//! applied silently, so composition chains expose their raw numerical drift.

mod classify;
mod galilei;
mod poincare;
mod sample;

pub use classify::{classify_subgroup, inclusions, normal_subgroup_tags, SubgroupTag};
pub use galilei::{ExtendedGalileiElement, GalileiElement, GalileiScale};
pub use poincare::{ExtendedPoincareElement, PoincareElement, PoincareScale};
pub use sample::{rng_from_seed, sample, sample_extended, sample_lorentz, sample_rotation};

use crate::space::FiveVector;
use nalgebra::Matrix5;
use thiserror::Error;

/// Residual bound for orthogonality / pseudo-orthogonality checks.
pub const TOL_ORTHONORMAL: f64 = 1e-10;
/// Drift guard applied after composition; exceeding it means the caller
/// should re-orthonormalize before continuing.
pub const TOL_COMPOSE_DRIFT: f64 = 1e-6;
/// Residual bound for subgroup-membership conditions.
pub const TOL_CLASSIFY: f64 = 1e-10;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GroupError {
    #[error("membership violation in {family:?}: residual {residual:.3e} exceeds {tol:.1e}")]
    MembershipViolation {
        family: GroupFamily,
        residual: f64,
        tol: f64,
    },
    #[error("not an extended-group element: {reason}")]
    NotInExtendedGroup { reason: String },
    #[error("operands belong to different group families")]
    FamilyMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    Galilei,
    Poincare,
}

/// A validated element of one of the two symmetry groups.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    Galilei(GalileiElement),
    Poincare(PoincareElement),
}

impl GroupElement {
    pub fn identity(family: GroupFamily) -> Self {
        match family {
            GroupFamily::Galilei => GroupElement::Galilei(GalileiElement::identity()),
            GroupFamily::Poincare => GroupElement::Poincare(PoincareElement::identity()),
        }
    }

    pub fn family(&self) -> GroupFamily {
        match self {
            GroupElement::Galilei(_) => GroupFamily::Galilei,
            GroupElement::Poincare(_) => GroupFamily::Poincare,
        }
    }

    pub fn matrix(&self) -> Matrix5<f64> {
        match self {
            GroupElement::Galilei(g) => g.matrix(),
            GroupElement::Poincare(p) => p.matrix(),
        }
    }

    /// The linear action on the carrier space.
    pub fn apply(&self, v: &FiveVector) -> FiveVector {
        match self {
            GroupElement::Galilei(g) => g.apply(v),
            GroupElement::Poincare(p) => p.apply(v),
        }
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        match (self, other) {
            (GroupElement::Galilei(a), GroupElement::Galilei(b)) => {
                Ok(GroupElement::Galilei(a.compose(b)?))
            }
            (GroupElement::Poincare(a), GroupElement::Poincare(b)) => {
                Ok(GroupElement::Poincare(a.compose(b)?))
            }
            _ => Err(GroupError::FamilyMismatch),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Galilei(g) => GroupElement::Galilei(g.inverse()),
            GroupElement::Poincare(p) => GroupElement::Poincare(p.inverse()),
        }
    }

    pub fn validate(&self, tol: f64) -> Result<(), GroupError> {
        match self {
            GroupElement::Galilei(g) => g.validate(tol),
            GroupElement::Poincare(p) => p.validate(tol),
        }
    }

    pub fn reorthonormalized(&self) -> GroupElement {
        match self {
            GroupElement::Galilei(g) => GroupElement::Galilei(g.reorthonormalized()),
            GroupElement::Poincare(p) => GroupElement::Poincare(p.reorthonormalized()),
        }
    }
}

/// A validated element of one of the extended (automorphism) groups.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtendedElement {
    Galilei(ExtendedGalileiElement),
    Poincare(ExtendedPoincareElement),
}

/// The scale factor in the unique `gbar = c g` factorization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleElement {
    Galilei(GalileiScale),
    Poincare(PoincareScale),
}

impl ExtendedElement {
    pub fn family(&self) -> GroupFamily {
        match self {
            ExtendedElement::Galilei(_) => GroupFamily::Galilei,
            ExtendedElement::Poincare(_) => GroupFamily::Poincare,
        }
    }

    pub fn matrix(&self) -> Matrix5<f64> {
        match self {
            ExtendedElement::Galilei(g) => g.matrix(),
            ExtendedElement::Poincare(p) => p.matrix(),
        }
    }

    pub fn apply(&self, v: &FiveVector) -> FiveVector {
        match self {
            ExtendedElement::Galilei(g) => g.apply(v),
            ExtendedElement::Poincare(p) => p.apply(v),
        }
    }

    /// The factor by which the element rescales the mass coordinate.
    pub fn mass_scale(&self) -> f64 {
        match self {
            ExtendedElement::Galilei(g) => g.mass_scale(),
            ExtendedElement::Poincare(p) => p.mass_scale(),
        }
    }

    pub fn validate(&self, tol: f64) -> Result<(), GroupError> {
        match self {
            ExtendedElement::Galilei(g) => g.validate(tol),
            ExtendedElement::Poincare(p) => p.validate(tol),
        }
    }
}

/// Unique factorization of an extended element into a scale block and a
/// group element. The reconstruction `c * g` reproduces the input matrix.
pub fn factorize_extended(
    element: &ExtendedElement,
) -> Result<(ScaleElement, GroupElement), GroupError> {
    match element {
        ExtendedElement::Galilei(g) => {
            let (c, h) = g.factorize()?;
            Ok((ScaleElement::Galilei(c), GroupElement::Galilei(h)))
        }
        ExtendedElement::Poincare(p) => {
            let (c, h) = p.factorize()?;
            Ok((ScaleElement::Poincare(c), GroupElement::Poincare(h)))
        }
    }
}

/// Max-norm distance between two matrices.
pub fn mat5_residual(a: &Matrix5<f64>, b: &Matrix5<f64>) -> f64 {
    (a - b).iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}
