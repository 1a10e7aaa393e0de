//! The Galilean reading of the five-dimensional space: invariant orbit
//! decomposition, the equivariant evaluation maps for mass, mass-time and
//! mass-distance, the generalized Euclidean scalar product, normalized
//! events and four-velocities, time evaluation, and synchronous distance.

use crate::measure::{Dimension, Quantity};
use crate::space::{FiveVector, FrameId};
use nalgebra::Vector3;
use num_rational::Rational64;
use std::fmt;
use thiserror::Error;

/// Base tolerance for orbit-boundary decisions; scaled by `max(1, |p|_inf)`.
pub const TOL_CLASS: f64 = 1e-9;
/// Two events count as synchronous when their times differ by less.
pub const TOL_SYNC: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum NewtonError {
    #[error("vector is not in the mass-zero hyperplane (m = {mass:.3e})")]
    NotInMassZero { mass: f64 },
    #[error("vector is not in the spacelike slice (mt = {mt:.3e}, m = {mass:.3e})")]
    NotInSpacelikeSlice { mt: f64, mass: f64 },
    #[error("zero mass component")]
    ZeroMass,
    #[error("events are not synchronous: |dt| = {dt:.3e} exceeds {tol:.1e}")]
    NotSynchronous { dt: f64, tol: f64 },
    #[error("event requires fifth coordinate 1, found {found:.3e}")]
    NotNormalized { found: f64 },
}

pub(crate) fn class_tol(p: &FiveVector) -> f64 {
    TOL_CLASS * p.norm_inf().max(1.0)
}

/// Whether the Galilean space carries the extra orientation structure on
/// which vector products (and hence internal angular momentum) depend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceOrientation {
    Oriented,
    Unoriented,
}

/// Mass evaluation: the fifth coordinate, as a `[kg]` quantity. Linear and
/// invariant under the whole group.
pub fn eval_m(p: &FiveVector) -> Quantity {
    Quantity::new(p.mass_component(), Dimension::kg())
}

/// Mass-time evaluation on the hyperplane `M_0`, as a `[kgs]` quantity.
pub fn eval_mt(p: &FiveVector) -> Result<Quantity, NewtonError> {
    if p.mass_component().abs() > class_tol(p) {
        return Err(NewtonError::NotInMassZero {
            mass: p.mass_component(),
        });
    }
    Ok(Quantity::new(p.time_component(), Dimension::kgs()))
}

/// Mass-distance evaluation on `E_0`: the Euclidean norm of the spatial
/// block, as a nonnegative `|kgm|` quantity.
pub fn eval_md(p: &FiveVector) -> Result<Quantity, NewtonError> {
    let tol = class_tol(p);
    if p.mass_component().abs() > tol || p.time_component().abs() > tol {
        return Err(NewtonError::NotInSpacelikeSlice {
            mt: p.time_component(),
            mass: p.mass_component(),
        });
    }
    Ok(Quantity::new(p.spatial().norm(), Dimension::kgm().abs()))
}

/// The generalized Euclidean scalar product on `E_0`, computed by
/// polarization from the mass-distance map:
/// `<v, w> = ((md(v+w))^2 - (md(v-w))^2) / 4`, valued in `[kgm]^2`.
pub fn scalar_product(v: &FiveVector, w: &FiveVector) -> Result<Quantity, NewtonError> {
    // Domain checks as for md.
    eval_md(v)?;
    eval_md(w)?;
    let sum = (v.spatial() + w.spatial()).norm_squared();
    let diff = (v.spatial() - w.spatial()).norm_squared();
    Ok(Quantity::new(
        0.25 * (sum - diff),
        Dimension::kgm().pow(Rational64::from_integer(2)),
    ))
}

/// Invariant-orbit label of a five-vector.
#[derive(Debug, Clone, PartialEq)]
pub enum OrbitClass {
    /// Mass hyperplane `M_m`, `m != 0`.
    HyperplaneM(Quantity),
    /// Mass-time hyperplane `E_mt` inside `M_0`, `mt != 0`.
    HyperplaneE(Quantity),
    /// Sphere of radius `md > 0` inside `E_0`.
    SphereS(Quantity),
    /// The origin (the degenerate sphere `S_0`).
    Origin,
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitClass::HyperplaneM(m) => write!(f, "HyperplaneM {{ m = {m} }}"),
            OrbitClass::HyperplaneE(mt) => write!(f, "HyperplaneE {{ mt = {mt} }}"),
            OrbitClass::SphereS(md) => write!(f, "SphereS {{ md = {md} }}"),
            OrbitClass::Origin => f.write_str("Origin"),
        }
    }
}

/// Exhaustive, mutually exclusive orbit classification.
pub fn classify_orbit(p: &FiveVector) -> OrbitClass {
    let tol = class_tol(p);
    if p.mass_component().abs() > tol {
        return OrbitClass::HyperplaneM(eval_m(p));
    }
    if p.time_component().abs() > tol {
        return OrbitClass::HyperplaneE(Quantity::new(p.time_component(), Dimension::kgs()));
    }
    let md = p.spatial().norm();
    if md > tol {
        return OrbitClass::SphereS(Quantity::new(md, Dimension::kgm().abs()));
    }
    OrbitClass::Origin
}

/// A spacetime event: the canonical representative `(x, t, 1)` of a line of
/// the spacetime `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event(FiveVector);

impl Event {
    /// Requires the fifth coordinate to be exactly 1.
    pub fn new(p: FiveVector) -> Result<Event, NewtonError> {
        if p.mass_component() != 1.0 {
            return Err(NewtonError::NotNormalized {
                found: p.mass_component(),
            });
        }
        Ok(Event(p))
    }

    pub fn position(&self) -> Vector3<f64> {
        self.0.spatial()
    }

    pub fn time(&self) -> f64 {
        self.0.time_component()
    }

    pub fn as_five_vector(&self) -> &FiveVector {
        &self.0
    }

    pub fn from_position_time(x: Vector3<f64>, t: f64, frame: FrameId) -> Event {
        Event(FiveVector::newtonian(x, t, 1.0, frame))
    }
}

/// A four-velocity: the canonical representative `(v, 1, 0)` of a point of
/// the velocity space `V(1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVelocity(FiveVector);

impl FourVelocity {
    pub fn new(p: FiveVector) -> Result<FourVelocity, NewtonError> {
        if p.time_component() != 1.0 || p.mass_component() != 0.0 {
            return Err(NewtonError::NotNormalized {
                found: p.time_component(),
            });
        }
        Ok(FourVelocity(p))
    }

    pub fn from_velocity(v: Vector3<f64>, frame: FrameId) -> FourVelocity {
        FourVelocity(FiveVector::newtonian(v, 1.0, 0.0, frame))
    }

    pub fn velocity(&self) -> Vector3<f64> {
        self.0.spatial()
    }

    pub fn as_five_vector(&self) -> &FiveVector {
        &self.0
    }
}

/// Place evaluation `u(p) = p / m(p)`, the event whose line contains `p`.
pub fn eval_u(p: &FiveVector) -> Result<Event, NewtonError> {
    let m = p.mass_component();
    if m.abs() <= class_tol(p) {
        return Err(NewtonError::ZeroMass);
    }
    let mut coords = p.coords / m;
    coords[4] = 1.0;
    Ok(Event(FiveVector::new(coords, p.frame)))
}

/// Time evaluation `tau(p) = mt(p) / m(p)`, as an `[s]` quantity.
pub fn eval_tau(p: &FiveVector) -> Result<Quantity, NewtonError> {
    let m = p.mass_component();
    if m.abs() <= class_tol(p) {
        return Err(NewtonError::ZeroMass);
    }
    Ok(Quantity::new(
        p.time_component() / m,
        Dimension::second(),
    ))
}

/// Distance between two events of one synchronous slice, as an `[m]`
/// quantity. Invariant under the simultaneous action of any group element.
pub fn synchronous_distance(a: &Event, b: &Event) -> Result<Quantity, NewtonError> {
    let dt = (a.time() - b.time()).abs();
    if dt > TOL_SYNC {
        return Err(NewtonError::NotSynchronous { dt, tol: TOL_SYNC });
    }
    Ok(Quantity::new(
        (a.position() - b.position()).norm(),
        Dimension::meter(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{rng_from_seed, sample, GroupElement, GroupFamily};
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    fn fv(a: f64, b: f64, c: f64, d: f64, e: f64) -> FiveVector {
        FiveVector::new(nalgebra::Vector5::new(a, b, c, d, e), FrameId::STANDARD)
    }

    #[test]
    fn mass_projection() {
        assert_eq!(eval_m(&fv(0.0, 0.0, 0.0, 0.0, 0.0)).magnitude, 0.0);
        assert_eq!(eval_m(&fv(2.0, 4.0, 6.0, 3.0, 1.5)).magnitude, 1.5);
        assert_eq!(eval_m(&fv(1.0, 0.0, 0.0, 0.0, -2.0)).dim, Dimension::kg());
    }

    #[test]
    fn mass_time_projection_and_domain() {
        assert_eq!(eval_mt(&fv(1.0, 1.0, 1.0, 7.0, 0.0)).unwrap().magnitude, 7.0);
        assert!(matches!(
            eval_mt(&fv(1.0, 1.0, 1.0, 7.0, 2.0)),
            Err(NewtonError::NotInMassZero { .. })
        ));
    }

    #[test]
    fn mass_distance_is_a_euclidean_norm() {
        let q = eval_md(&fv(3.0, 4.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(q.magnitude, 5.0);
        assert!(q.dim.is_absolute());
        assert!(matches!(
            eval_md(&fv(1.0, 0.0, 0.0, 1.0, 0.0)),
            Err(NewtonError::NotInSpacelikeSlice { .. })
        ));
    }

    #[test]
    fn polarization_matches_dot_product() {
        let mut rng = rng_from_seed(29);
        for _ in 0..1000 {
            let v = fv(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                0.0,
                0.0,
            );
            let w = fv(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                0.0,
                0.0,
            );
            let lhs = scalar_product(&v, &w).unwrap().magnitude;
            let rhs = v.spatial().dot(&w.spatial());
            let scale = v.spatial().norm() * w.spatial().norm() + rhs.abs();
            assert!((lhs - rhs).abs() <= 1e-12 * scale.max(1.0));
        }
        // Orthogonal unit vectors, exactly zero by cancellation.
        let z = scalar_product(&fv(1.0, 0.0, 0.0, 0.0, 0.0), &fv(0.0, 1.0, 0.0, 0.0, 0.0))
            .unwrap();
        assert_eq!(z.magnitude, 0.0);
        let d = scalar_product(&fv(3.0, 4.0, 0.0, 0.0, 0.0), &fv(3.0, 4.0, 0.0, 0.0, 0.0))
            .unwrap();
        assert_eq!(d.magnitude, 25.0);
    }

    #[test]
    fn orbit_classification_examples() {
        assert!(matches!(
            classify_orbit(&fv(0.0, 0.0, 0.0, 0.0, 3.0)),
            OrbitClass::HyperplaneM(m) if m.magnitude == 3.0
        ));
        assert!(matches!(
            classify_orbit(&fv(1.0, 2.0, 2.0, 0.0, 0.0)),
            OrbitClass::SphereS(md) if (md.magnitude - 3.0).abs() < 1e-15
        ));
        assert!(matches!(
            classify_orbit(&fv(0.0, 0.0, 0.0, 0.0, 0.0)),
            OrbitClass::Origin
        ));
        assert!(matches!(
            classify_orbit(&fv(0.0, 0.0, 0.0, -2.0, 0.0)),
            OrbitClass::HyperplaneE(mt) if mt.magnitude == -2.0
        ));
    }

    #[test]
    fn place_and_time_evaluations() {
        let p = fv(2.0, 4.0, 6.0, 3.0, 1.5);
        let u = eval_u(&p).unwrap();
        assert_abs_diff_eq!(u.position().x, 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u.time(), 2.0, epsilon = 1e-15);
        assert_eq!(u.as_five_vector().mass_component(), 1.0);
        assert!(matches!(
            eval_u(&fv(1.0, 1.0, 1.0, 1.0, 0.0)),
            Err(NewtonError::ZeroMass)
        ));
        assert_eq!(eval_tau(&fv(0.0, 0.0, 0.0, 6.0, 2.0)).unwrap().magnitude, 3.0);
        assert_eq!(eval_tau(&fv(0.0, 0.0, 0.0, 0.0, 1.0)).unwrap().magnitude, 0.0);
    }

    #[test]
    fn time_translation_shifts_tau() {
        let g = GroupElement::Galilei(crate::groups::GalileiElement::translation(
            nalgebra::Vector3::zeros(),
            2.5,
        ));
        let mut rng = rng_from_seed(31);
        for _ in 0..100 {
            let p = fv(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(0.5..2.0),
            );
            let before = eval_tau(&p).unwrap().magnitude;
            let after = eval_tau(&g.apply(&p)).unwrap().magnitude;
            assert_abs_diff_eq!(after, before + 2.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn synchronous_distance_examples() {
        let a = Event::from_position_time(Vector3::zeros(), 1.0, FrameId::STANDARD);
        let b = Event::from_position_time(Vector3::new(3.0, 4.0, 0.0), 1.0, FrameId::STANDARD);
        assert_eq!(synchronous_distance(&a, &a).unwrap().magnitude, 0.0);
        let d = synchronous_distance(&a, &b).unwrap();
        assert_eq!(d.magnitude, 5.0);
        assert_eq!(d.dim, Dimension::meter());
        let c = Event::from_position_time(Vector3::zeros(), 2.0, FrameId::STANDARD);
        assert!(matches!(
            synchronous_distance(&a, &c),
            Err(NewtonError::NotSynchronous { .. })
        ));
    }

    #[test]
    fn synchronous_distance_is_galilei_invariant() {
        let mut rng = rng_from_seed(37);
        for seed in 0..200u64 {
            let g = sample(GroupFamily::Galilei, seed, 1.0);
            let t = rng.random_range(-1.0..1.0);
            let a = Event::from_position_time(
                Vector3::new(
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                ),
                t,
                FrameId::STANDARD,
            );
            let b = Event::from_position_time(
                Vector3::new(
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                ),
                t,
                FrameId::STANDARD,
            );
            let d0 = synchronous_distance(&a, &b).unwrap().magnitude;
            let ga = eval_u(&g.apply(a.as_five_vector())).unwrap();
            let gb = eval_u(&g.apply(b.as_five_vector())).unwrap();
            let d1 = synchronous_distance(&ga, &gb).unwrap().magnitude;
            assert!((d0 - d1).abs() < 1e-12 * d0.max(1.0));
        }
    }

    #[test]
    fn product_structure_reconstructs_vectors() {
        // Away from M_0 the space factors as spacetime x mass; the
        // reconstruction m(p) * u(p) recovers the coordinates.
        let mut rng = rng_from_seed(41);
        for _ in 0..500 {
            let p = fv(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                // Keep the mass well away from zero.
                rng.random_range(0.2..3.0) * if rng.random_range(0.0..1.0) < 0.5 { -1.0 } else { 1.0 },
            );
            let m = eval_m(&p).magnitude;
            let u = eval_u(&p).unwrap();
            let rebuilt = u.as_five_vector().coords * m;
            assert!((rebuilt - p.coords).amax() <= 1e-14 * p.norm_inf().max(1.0));
        }
    }

    #[test]
    fn evaluation_maps_are_linear() {
        let mut rng = rng_from_seed(43);
        for _ in 0..500 {
            let p = fv(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            let q = fv(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            let a = rng.random_range(-2.0..2.0);
            let combo = FiveVector::new(p.coords * a + q.coords, FrameId::STANDARD);
            let lhs = eval_m(&combo).magnitude;
            let rhs = a * eval_m(&p).magnitude + eval_m(&q).magnitude;
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
        }
    }
}
