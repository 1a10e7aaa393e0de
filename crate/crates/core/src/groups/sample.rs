//! Deterministic, seed-driven sampling of group elements for property
//! sweeps. Rotations are uniform via normalized quaternions; Lorentz
//! elements are rotation * boost * rotation with rapidity in [-2, 2] to keep
//! conditioning mild; extended scales stay within a factor of two of unity.

use super::{
    ExtendedElement, ExtendedGalileiElement, ExtendedPoincareElement, GalileiElement,
    GalileiScale, GroupElement, GroupFamily, PoincareElement, PoincareScale,
};
use crate::minkowski::boost;
use nalgebra::{Matrix3, Matrix4, Quaternion, UnitQuaternion, Vector3, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly distributed rotation from a normalized Gaussian quaternion.
pub fn sample_rotation(rng: &mut ChaCha8Rng) -> Matrix3<f64> {
    let w: f64 = rng.sample(StandardNormal);
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    let z: f64 = rng.sample(StandardNormal);
    UnitQuaternion::from_quaternion(Quaternion::new(w, x, y, z))
        .to_rotation_matrix()
        .into_inner()
}

fn embed_rotation(o: &Matrix3<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = o[(i, j)];
        }
    }
    m
}

/// `R1 * boost(e3, chi) * R2` with uniform rotations and `chi` in [-2, 2].
pub fn sample_lorentz(rng: &mut ChaCha8Rng) -> Matrix4<f64> {
    let r1 = embed_rotation(&sample_rotation(rng));
    let r2 = embed_rotation(&sample_rotation(rng));
    let rapidity = rng.random_range(-2.0..2.0);
    r1 * boost(&Vector3::z(), rapidity) * r2
}

fn uniform3(rng: &mut ChaCha8Rng, scale: f64) -> Vector3<f64> {
    Vector3::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}

fn uniform4(rng: &mut ChaCha8Rng, scale: f64) -> Vector4<f64> {
    Vector4::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}

/// Nonzero scale factor with magnitude in [0.5, 2] and random sign.
fn mild_scale(rng: &mut ChaCha8Rng) -> f64 {
    let magnitude = rng.random_range(0.5..2.0);
    if rng.random_range(0.0..1.0) < 0.5 {
        -magnitude
    } else {
        magnitude
    }
}

pub(crate) fn sample_with_rng(
    family: GroupFamily,
    rng: &mut ChaCha8Rng,
    scale: f64,
) -> GroupElement {
    match family {
        GroupFamily::Galilei => GroupElement::Galilei(sample_galilei(rng, scale)),
        GroupFamily::Poincare => GroupElement::Poincare(sample_poincare(rng, scale)),
    }
}

pub(crate) fn sample_galilei(rng: &mut ChaCha8Rng, scale: f64) -> GalileiElement {
    GalileiElement::new(
        sample_rotation(rng),
        uniform3(rng, scale),
        uniform3(rng, scale),
        rng.random_range(-scale..scale),
    )
    .expect("sampled rotation is orthonormal")
}

pub(crate) fn sample_poincare(rng: &mut ChaCha8Rng, scale: f64) -> PoincareElement {
    PoincareElement::new(sample_lorentz(rng), uniform4(rng, scale))
        .expect("sampled Lorentz block is pseudo-orthonormal")
}

pub(crate) fn sample_extended_with_rng(
    family: GroupFamily,
    rng: &mut ChaCha8Rng,
    scale: f64,
) -> ExtendedElement {
    match family {
        GroupFamily::Galilei => {
            let c = GalileiScale {
                spatial: mild_scale(rng),
                time: mild_scale(rng),
                mass: mild_scale(rng),
            };
            let g = sample_galilei(rng, scale);
            ExtendedElement::Galilei(ExtendedGalileiElement::from_parts(&c, &g))
        }
        GroupFamily::Poincare => {
            let c = PoincareScale {
                spacetime: mild_scale(rng),
                mass: mild_scale(rng),
            };
            let p = sample_poincare(rng, scale);
            ExtendedElement::Poincare(ExtendedPoincareElement::from_parts(&c, &p))
        }
    }
}

/// Deterministic sample: the same seed always yields the same element.
pub fn sample(family: GroupFamily, seed: u64, scale: f64) -> GroupElement {
    assert!(scale > 0.0, "scale must be positive");
    sample_with_rng(family, &mut rng_from_seed(seed), scale)
}

/// Deterministic extended-group sample.
pub fn sample_extended(family: GroupFamily, seed: u64, scale: f64) -> ExtendedElement {
    assert!(scale > 0.0, "scale must be positive");
    sample_extended_with_rng(family, &mut rng_from_seed(seed), scale)
}
