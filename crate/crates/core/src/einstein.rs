//! The Lorentzian reading of the five-dimensional space: causal orbit
//! decomposition, the evaluation maps, the light-cone reflection
//! construction behind the velocity of light, spacetime distance, proper
//! time, and the Beltrami-Cayley-Klein ball model of the velocity space.
//!
//! Signature is `(+++-)` with the time component at index 3 of the `M_0`
//! block. Future means a positive time component.

use crate::dynamics::Trajectory;
use crate::measure::{Dimension, Quantity};
use crate::minkowski::eta;
use crate::space::{FiveVector, Flavor, FrameId, QVec3};
use nalgebra::{Vector3, Vector4};
use num_rational::Rational64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::fmt;
use thiserror::Error;

/// Base tolerance for causal-boundary decisions; scaled by the vector size.
pub const TOL_CLASS: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EinsteinError {
    #[error("vector is not in the mass-zero hyperplane (m = {mass:.3e})")]
    NotInMassZero { mass: f64 },
    #[error("vector is not timelike or lightlike (<x,x> = {q:.3e})")]
    NotTimelike { q: f64 },
    #[error("vector is not spacelike or lightlike (<x,x> = {q:.3e})")]
    NotSpacelike { q: f64 },
    #[error("zero mass component")]
    ZeroMass,
    #[error("event requires fifth coordinate 1, found {found:.3e}")]
    NotNormalized { found: f64 },
    #[error("vector lies on the spacelike subspace; the ball map is undefined there")]
    OnSpacelikePlane,
    #[error("parameter {param} outside the trajectory interval [{lo}, {hi}]")]
    OutOfInterval { param: f64, lo: f64, hi: f64 },
    #[error("spanning vectors do not span a Lorentzian plane")]
    DegeneratePlane,
    #[error("operation requires an Einsteinian trajectory")]
    WrongFlavor,
}

fn class_tol(p: &FiveVector) -> f64 {
    TOL_CLASS * p.norm_inf().max(1.0)
}

fn quadratic_tol(x: &Vector4<f64>) -> f64 {
    let scale = x.amax().max(1.0);
    TOL_CLASS * scale * scale
}

/// The generalized Lorentzian product on `M_0`, valued in `[kgm]^2`
/// (negative values are the timelike range `-(mt)^2`).
pub fn lorentz_product(v: &FiveVector, w: &FiveVector) -> Result<Quantity, EinsteinError> {
    for p in [v, w] {
        if p.mass_component().abs() > class_tol(p) {
            return Err(EinsteinError::NotInMassZero {
                mass: p.mass_component(),
            });
        }
    }
    Ok(Quantity::new(
        eta(&v.spacetime(), &w.spacetime()),
        Dimension::kgm().pow(Rational64::from_integer(2)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    Future,
    Past,
}

impl fmt::Display for Sheet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sheet::Future => f.write_str("future"),
            Sheet::Past => f.write_str("past"),
        }
    }
}

/// Causal orbit label of a five-vector.
#[derive(Debug, Clone, PartialEq)]
pub enum CausalClass {
    HyperplaneM(Quantity),
    /// One sheet of the two-sheeted hyperboloid of constant `mt`; the sign
    /// of `mt` matches the sheet.
    HyperboloidH { mt: Quantity, sheet: Sheet },
    /// One-sheeted quadric of constant `md > 0`.
    QuadricS(Quantity),
    LightCone,
    Origin,
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CausalClass::HyperplaneM(m) => write!(f, "HyperplaneM {{ m = {m} }}"),
            CausalClass::HyperboloidH { mt, sheet } => {
                write!(f, "HyperboloidH {{ mt = {mt}, sheet = {sheet} }}")
            }
            CausalClass::QuadricS(md) => write!(f, "QuadricS {{ md = {md} }}"),
            CausalClass::LightCone => f.write_str("LightCone"),
            CausalClass::Origin => f.write_str("Origin"),
        }
    }
}

/// Exhaustive causal classification. Orthochronous transformations preserve
/// the label including the sheet.
pub fn classify_causal(p: &FiveVector) -> CausalClass {
    let tol = class_tol(p);
    if p.mass_component().abs() > tol {
        return CausalClass::HyperplaneM(eval_m(p));
    }
    let x = p.spacetime();
    if x.amax() <= tol {
        return CausalClass::Origin;
    }
    let q = eta(&x, &x);
    let qtol = quadratic_tol(&x);
    if q.abs() <= qtol {
        return CausalClass::LightCone;
    }
    if q < 0.0 {
        let mt = (-q).sqrt();
        let (mt, sheet) = if x[3] > 0.0 {
            (mt, Sheet::Future)
        } else {
            (-mt, Sheet::Past)
        };
        CausalClass::HyperboloidH {
            mt: Quantity::new(mt, Dimension::kgs()),
            sheet,
        }
    } else {
        CausalClass::QuadricS(Quantity::new(q.sqrt(), Dimension::kgm().abs()))
    }
}

/// Mass evaluation: the fifth coordinate as `[kg]`.
pub fn eval_m(p: &FiveVector) -> Quantity {
    Quantity::new(p.mass_component(), Dimension::kg())
}

/// Mass-time evaluation `sign(x4) * sqrt(-<x,x>)` on the timelike part of
/// `M_0`, as `[kgs]`. Lightlike vectors are on the boundary and give 0.
pub fn eval_mt(p: &FiveVector) -> Result<Quantity, EinsteinError> {
    if p.mass_component().abs() > class_tol(p) {
        return Err(EinsteinError::NotInMassZero {
            mass: p.mass_component(),
        });
    }
    let x = p.spacetime();
    let q = eta(&x, &x);
    if q > quadratic_tol(&x) {
        return Err(EinsteinError::NotTimelike { q });
    }
    let mt = (-q).max(0.0).sqrt();
    Ok(Quantity::new(
        if x[3] >= 0.0 { mt } else { -mt },
        Dimension::kgs(),
    ))
}

/// Mass-distance evaluation `sqrt(<x,x>)` on the spacelike part of `M_0`,
/// as nonnegative `|kgm|`. Lightlike vectors give 0.
pub fn eval_md(p: &FiveVector) -> Result<Quantity, EinsteinError> {
    if p.mass_component().abs() > class_tol(p) {
        return Err(EinsteinError::NotInMassZero {
            mass: p.mass_component(),
        });
    }
    let x = p.spacetime();
    let q = eta(&x, &x);
    if q < -quadratic_tol(&x) {
        return Err(EinsteinError::NotSpacelike { q });
    }
    Ok(Quantity::new(q.max(0.0).sqrt(), Dimension::kgm().abs()))
}

/// The velocity of light: exactly 1 in `|[m]/[s]|` in every inertial frame.
/// The geometric construction behind the value is checked by
/// [`LorentzianPlane::reflection_residual`].
pub fn speed_of_light() -> Quantity {
    Quantity::new(1.0, Dimension::meter().div(&Dimension::second()).abs())
}

/// An eta-orthonormal basis of a two-dimensional Lorentzian subspace of
/// `M_0`: one unit spacelike and one unit future timelike direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianPlane {
    pub spacelike: Vector4<f64>,
    pub timelike: Vector4<f64>,
}

impl LorentzianPlane {
    /// Orthonormalize a spanning pair; the first vector must have a timelike
    /// component in the span.
    pub fn from_spanning(a: &Vector4<f64>, b: &Vector4<f64>) -> Result<Self, EinsteinError> {
        let qa = eta(a, a);
        if qa >= 0.0 {
            return Err(EinsteinError::DegeneratePlane);
        }
        let mut u = a / (-qa).sqrt();
        if u[3] < 0.0 {
            u = -u;
        }
        let s = b + eta(b, &u) * u;
        let qs = eta(&s, &s);
        if qs <= 1e-12 * b.amax().max(1.0).powi(2) {
            return Err(EinsteinError::DegeneratePlane);
        }
        Ok(LorentzianPlane {
            spacelike: s / qs.sqrt(),
            timelike: u,
        })
    }

    /// In-plane coordinates `(alpha, beta)` of `w` over `(spacelike,
    /// timelike)`.
    pub fn coordinates(&self, w: &Vector4<f64>) -> (f64, f64) {
        (eta(w, &self.spacelike), -eta(w, &self.timelike))
    }

    /// Reflection across one of the two null lines of the plane:
    /// `(alpha, beta) -> (beta, alpha)` for the line spanned by `s + u`, and
    /// `(alpha, beta) -> (-beta, -alpha)` for the one spanned by `s - u`.
    pub fn reflect_across_null(&self, w: &Vector4<f64>, first_line: bool) -> Vector4<f64> {
        let (alpha, beta) = self.coordinates(w);
        if first_line {
            beta * self.spacelike + alpha * self.timelike
        } else {
            -beta * self.spacelike - alpha * self.timelike
        }
    }

    /// Residual of the light-cone reflection construction: the null-line
    /// reflection must carry the unit-`mt` hyperbola point onto the unit-`md`
    /// quadric point, and the two reflections must be opposite. Zero residual
    /// realizes a velocity of light equal to 1.
    pub fn reflection_residual(&self) -> f64 {
        let r1 = self.reflect_across_null(&self.timelike, true);
        let r2 = self.reflect_across_null(&self.timelike, false);
        let to_quadric = (r1 - self.spacelike).amax();
        let unit_md = (eta(&r1, &r1) - 1.0).abs();
        let opposite = (r1 + r2).amax();
        to_quadric.max(unit_md).max(opposite)
    }
}

/// A spacetime event: canonical representative `(x, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventE(FiveVector);

impl EventE {
    pub fn new(p: FiveVector) -> Result<EventE, EinsteinError> {
        if p.mass_component() != 1.0 {
            return Err(EinsteinError::NotNormalized {
                found: p.mass_component(),
            });
        }
        Ok(EventE(p))
    }

    pub fn from_position(x: Vector4<f64>, frame: FrameId) -> EventE {
        EventE(FiveVector::einsteinian(x, 1.0, frame))
    }

    pub fn position(&self) -> Vector4<f64> {
        self.0.spacetime()
    }

    pub fn as_five_vector(&self) -> &FiveVector {
        &self.0
    }
}

/// Place evaluation `u(p) = p/m(p)`.
pub fn eval_u(p: &FiveVector) -> Result<EventE, EinsteinError> {
    let m = p.mass_component();
    if m.abs() <= class_tol(p) {
        return Err(EinsteinError::ZeroMass);
    }
    let mut coords = p.coords / m;
    coords[4] = 1.0;
    Ok(EventE(FiveVector::new(coords, p.frame)))
}

/// Separation of two events under the Lorentz norm. Spacelike separations
/// are `[m]`-valued, timelike ones `|[s]|`-valued.
#[derive(Debug, Clone, PartialEq)]
pub enum SpacetimeInterval {
    Spacelike(Quantity),
    Timelike(Quantity),
    Lightlike,
}

impl fmt::Display for SpacetimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpacetimeInterval::Spacelike(d) => write!(f, "spacelike {d}"),
            SpacetimeInterval::Timelike(d) => write!(f, "timelike {d}"),
            SpacetimeInterval::Lightlike => f.write_str("lightlike"),
        }
    }
}

pub fn spacetime_distance(a: &EventE, b: &EventE) -> SpacetimeInterval {
    let delta = a.position() - b.position();
    let q = eta(&delta, &delta);
    if q.abs() <= quadratic_tol(&delta) && delta.amax() > 0.0 {
        return SpacetimeInterval::Lightlike;
    }
    if q > 0.0 {
        SpacetimeInterval::Spacelike(Quantity::new(q.sqrt(), Dimension::meter()))
    } else if q < 0.0 {
        SpacetimeInterval::Timelike(Quantity::new((-q).sqrt(), Dimension::second().abs()))
    } else {
        SpacetimeInterval::Lightlike
    }
}

/// Proper time along a particle between two parameter values: the particle
/// parameter is proper time by the natural parametrization, so this is the
/// parameter difference, as nonnegative `|[s]|`.
pub fn proper_time(f: &Trajectory, a: f64, b: f64) -> Result<Quantity, EinsteinError> {
    if f.flavor() != Flavor::Einstein {
        return Err(EinsteinError::WrongFlavor);
    }
    let (lo, hi) = f.interval();
    let slack = 1e-9 * (hi - lo).abs().max(1.0);
    for param in [a, b] {
        if param < lo - slack || param > hi + slack {
            return Err(EinsteinError::OutOfInterval { param, lo, hi });
        }
    }
    Ok(Quantity::new((a - b).abs(), Dimension::second().abs()))
}

/// A spacelike 3-subspace `E` of `M_0` together with its unit timelike
/// normal, as an eta-orthonormal frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacelikeSubspace {
    basis: [Vector4<f64>; 3],
    time_axis: Vector4<f64>,
}

impl SpacelikeSubspace {
    /// The coordinate subspace spanned by `e1, e2, e3`, normal `e4`.
    pub fn standard() -> Self {
        SpacelikeSubspace {
            basis: [
                Vector4::new(1.0, 0.0, 0.0, 0.0),
                Vector4::new(0.0, 1.0, 0.0, 0.0),
                Vector4::new(0.0, 0.0, 1.0, 0.0),
            ],
            time_axis: Vector4::new(0.0, 0.0, 0.0, 1.0),
        }
    }

    /// The orthogonal complement of a timelike direction, with a basis
    /// completed from the coordinate axes.
    pub fn from_time_axis(axis: &Vector4<f64>) -> Result<Self, EinsteinError> {
        let q = eta(axis, axis);
        if q >= 0.0 {
            return Err(EinsteinError::NotTimelike { q });
        }
        let mut u = axis / (-q).sqrt();
        if u[3] < 0.0 {
            u = -u;
        }
        let seeds = [
            Vector4::new(1.0, 0.0, 0.0, 0.0),
            Vector4::new(0.0, 1.0, 0.0, 0.0),
            Vector4::new(0.0, 0.0, 1.0, 0.0),
            Vector4::new(0.0, 0.0, 0.0, 1.0),
        ];
        let mut basis: Vec<Vector4<f64>> = Vec::with_capacity(3);
        for seed in seeds {
            if basis.len() == 3 {
                break;
            }
            let mut v = seed + eta(&seed, &u) * u;
            for b in &basis {
                v -= eta(&v, b) * b;
            }
            let qs = eta(&v, &v);
            if qs > 1e-8 {
                basis.push(v / qs.sqrt());
            }
        }
        if basis.len() != 3 {
            return Err(EinsteinError::DegeneratePlane);
        }
        Ok(SpacelikeSubspace {
            basis: [basis[0], basis[1], basis[2]],
            time_axis: u,
        })
    }

    pub fn basis(&self) -> &[Vector4<f64>; 3] {
        &self.basis
    }

    pub fn time_axis(&self) -> Vector4<f64> {
        self.time_axis
    }

    pub fn validate(&self, tol: f64) -> Result<(), EinsteinError> {
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = eta(&self.basis[i], &self.basis[j]);
                if (got - want).abs() > tol {
                    return Err(EinsteinError::DegeneratePlane);
                }
            }
            if eta(&self.basis[i], &self.time_axis).abs() > tol {
                return Err(EinsteinError::DegeneratePlane);
            }
        }
        Ok(())
    }

    /// E-adapted coordinates: three spacelike components and the
    /// coefficient along the timelike normal.
    pub fn adapted_coordinates(&self, x: &Vector4<f64>) -> (Vector3<f64>, f64) {
        let spatial = Vector3::new(
            eta(x, &self.basis[0]),
            eta(x, &self.basis[1]),
            eta(x, &self.basis[2]),
        );
        (spatial, -eta(x, &self.time_axis))
    }
}

/// The two orthogonal projections determined by `E`: onto `E` and onto its
/// (timelike) complement. Their sum is the identity.
pub fn orthogonal_projections(
    e: &SpacelikeSubspace,
    x: &Vector4<f64>,
) -> (Vector4<f64>, Vector4<f64>) {
    let (spatial, time) = e.adapted_coordinates(x);
    let mut on_e = Vector4::zeros();
    for i in 0..3 {
        on_e += spatial[i] * e.basis[i];
    }
    let on_perp = time * e.time_axis;
    (on_e, on_perp)
}

/// The ball map `v -> P_E(v) / |P_E_perp(v)|` in E-adapted coordinates,
/// with the convention that 0 maps to 0. Unit timelike vectors land inside
/// the open unit ball, lightlike ones on its boundary sphere.
pub fn cayley_map4(
    e: &SpacelikeSubspace,
    x: &Vector4<f64>,
) -> Result<Vector3<f64>, EinsteinError> {
    if x.amax() == 0.0 {
        return Ok(Vector3::zeros());
    }
    let (spatial, time) = e.adapted_coordinates(x);
    if time == 0.0 {
        return Err(EinsteinError::OnSpacelikePlane);
    }
    Ok(spatial / time.abs())
}

/// Five-vector front end of [`cayley_map4`]; the argument must lie in `M_0`
/// and the image carries the dimension `[m]/[s]` of a three-velocity.
pub fn cayley_map(e: &SpacelikeSubspace, v: &FiveVector) -> Result<QVec3, EinsteinError> {
    if v.mass_component().abs() > class_tol(v) {
        return Err(EinsteinError::NotInMassZero {
            mass: v.mass_component(),
        });
    }
    let components = cayley_map4(e, &v.spacetime())?;
    Ok(QVec3::new(
        components,
        Dimension::meter().div(&Dimension::second()),
    ))
}

/// Geodesic distance on the velocity space (the hyperboloid model of
/// hyperbolic 3-space): `arccosh(-<v, w>)` for unit future timelike `v, w`.
pub fn hyperbolic_distance(v: &Vector4<f64>, w: &Vector4<f64>) -> f64 {
    (-eta(v, w)).max(1.0).acosh()
}

/// Unit future timelike vector with the given rapidity and a uniformly
/// random direction.
pub fn sample_unit_timelike(rng: &mut ChaCha8Rng, max_rapidity: f64) -> Vector4<f64> {
    let mut n = Vector3::new(
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
    );
    if n.norm() < 1e-12 {
        n = Vector3::x();
    }
    let n = n.normalize();
    let chi = rng.random_range(0.0..max_rapidity);
    Vector4::new(
        chi.sinh() * n.x,
        chi.sinh() * n.y,
        chi.sinh() * n.z,
        chi.cosh(),
    )
}
