//! Numerical verification of the symplectic structure: invariance of the
//! form under the group action, the mass-scaling square, and the
//! equivalence classification of line manifolds with different masses.
//!
//! Tangent pushforwards use central finite differences at steps 1e-4 and
//! 5e-5 combined by Richardson extrapolation; the group action on chart
//! coordinates is algebraically messy and this reaches 1e-6 reliably.

use super::{
    act_on_line, act_on_line_extended, omega, omega_raw, LinePoint, SymplecticError, Tangent,
};
use crate::einstein::sample_unit_timelike;
use crate::groups::{
    factorize_extended, rng_from_seed, ExtendedElement, GroupFamily, ScaleElement,
};
use crate::minkowski::eta;
use crate::report::Report;
use crate::space::Flavor;
use nalgebra::{Vector3, Vector4};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Coarser of the two finite-difference steps.
pub const FD_STEP: f64 = 1e-4;
/// Residual bound for the symplectic-action and scaling sweeps.
pub const TOL_SYMPLECTIC: f64 = 1e-6;

fn family_of(flavor: Flavor) -> GroupFamily {
    match flavor {
        Flavor::Newton => GroupFamily::Galilei,
        Flavor::Einstein => GroupFamily::Poincare,
    }
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

pub(crate) fn sample_line(flavor: Flavor, mass: f64, rng: &mut ChaCha8Rng) -> LinePoint {
    match flavor {
        Flavor::Newton => LinePoint::newton(mass, uniform3(rng, 1.0), uniform3(rng, 1.0)),
        Flavor::Einstein => {
            let v = sample_unit_timelike(rng, 2.0);
            LinePoint::einstein(mass, v, uniform4(rng, 1.0)).expect("unit timelike direction")
        }
    }
}

pub(crate) fn sample_tangent(x: &LinePoint, rng: &mut ChaCha8Rng) -> Tangent {
    match x {
        LinePoint::Newton { .. } => Tangent::newton(uniform3(rng, 1.0), uniform3(rng, 1.0)),
        LinePoint::Einstein { velocity, .. } => {
            let raw = uniform4(rng, 1.0);
            // Project onto the tangent space of the unit hyperboloid.
            let dv = raw + eta(&raw, velocity) * velocity;
            Tangent::einstein(dv, uniform4(rng, 1.0))
        }
    }
}

fn displaced(x: &LinePoint, u: &Tangent, eps: f64) -> LinePoint {
    match (x, u) {
        (
            LinePoint::Newton {
                mass,
                velocity,
                offset,
                frame,
            },
            Tangent::Newton { dv, dq },
        ) => LinePoint::Newton {
            mass: *mass,
            velocity: velocity + dv * eps,
            offset: offset + dq * eps,
            frame: *frame,
        },
        (
            LinePoint::Einstein {
                mass,
                velocity,
                offset,
                frame,
            },
            Tangent::Einstein { dv, dq },
        ) => {
            let mut moved = LinePoint::einstein(*mass, velocity + dv * eps, offset + dq * eps)
                .expect("small displacement of a timelike direction stays timelike");
            if let LinePoint::Einstein { frame: f, .. } = &mut moved {
                *f = *frame;
            }
            moved
        }
        _ => unreachable!("tangent flavor matches the point"),
    }
}

pub(crate) fn chart_tangent_diff(a: &LinePoint, b: &LinePoint, denom: f64) -> Tangent {
    match (a, b) {
        (
            LinePoint::Newton {
                velocity: va,
                offset: qa,
                ..
            },
            LinePoint::Newton {
                velocity: vb,
                offset: qb,
                ..
            },
        ) => Tangent::newton((va - vb) / denom, (qa - qb) / denom),
        (
            LinePoint::Einstein {
                velocity: va,
                offset: qa,
                ..
            },
            LinePoint::Einstein {
                velocity: vb,
                offset: qb,
                ..
            },
        ) => Tangent::einstein((va - vb) / denom, (qa - qb) / denom),
        _ => unreachable!(),
    }
}

pub(crate) fn tangent_richardson(fine: &Tangent, coarse: &Tangent) -> Tangent {
    // Richardson: (4 fine - coarse) / 3 eliminates the quadratic error term.
    match (fine, coarse) {
        (Tangent::Newton { dv: f1, dq: f2 }, Tangent::Newton { dv: c1, dq: c2 }) => {
            Tangent::newton((f1 * 4.0 - c1) / 3.0, (f2 * 4.0 - c2) / 3.0)
        }
        (Tangent::Einstein { dv: f1, dq: f2 }, Tangent::Einstein { dv: c1, dq: c2 }) => {
            Tangent::einstein((f1 * 4.0 - c1) / 3.0, (f2 * 4.0 - c2) / 3.0)
        }
        _ => unreachable!(),
    }
}

/// Finite-difference pushforward of a chart tangent through a line map.
pub(crate) fn pushforward<F>(
    map: F,
    x: &LinePoint,
    u: &Tangent,
) -> Result<Tangent, SymplecticError>
where
    F: Fn(&LinePoint) -> Result<LinePoint, SymplecticError>,
{
    let central = |eps: f64| -> Result<Tangent, SymplecticError> {
        let plus = map(&displaced(x, u, eps))?;
        let minus = map(&displaced(x, u, -eps))?;
        Ok(chart_tangent_diff(&plus, &minus, 2.0 * eps))
    };
    let coarse = central(FD_STEP)?;
    let fine = central(FD_STEP / 2.0)?;
    Ok(tangent_richardson(&fine, &coarse))
}

#[derive(Debug, Clone)]
pub struct ActionReport {
    pub flavor: Flavor,
    pub mass: f64,
    pub trials: usize,
    pub seed: u64,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl ActionReport {
    pub fn pass(&self) -> bool {
        self.max_residual < self.tolerance
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("symplectic-action");
        r.line("flavor", self.flavor);
        r.number("mass", self.mass);
        r.line("trials", self.trials);
        r.line("seed", self.seed);
        r.number("max_residual", self.max_residual);
        r.number("tolerance", self.tolerance);
        r.verdict("form_invariant", self.pass());
        r
    }
}

/// For random `(g, x, u1, u2)`, compare the form evaluated on pushed-forward
/// tangents at the transformed point against its value at the source.
pub fn verify_symplectic_action(
    flavor: Flavor,
    mass: f64,
    trials: usize,
    seed: u64,
) -> Result<ActionReport, SymplecticError> {
    let mut rng = rng_from_seed(seed);
    let mut max_residual: f64 = 0.0;
    for trial in 0..trials {
        let g = crate::groups::sample(family_of(flavor), seed.wrapping_add(trial as u64), 1.0);
        let x = sample_line(flavor, mass, &mut rng);
        let u1 = sample_tangent(&x, &mut rng);
        let u2 = sample_tangent(&x, &mut rng);
        let before = omega(&x, &u1, &u2)?.magnitude;
        let moved = act_on_line(&g, &x)?;
        let t1 = pushforward(|p| act_on_line(&g, p), &x, &u1)?;
        let t2 = pushforward(|p| act_on_line(&g, p), &x, &u2)?;
        let after = omega_raw(&moved, &t1, &t2);
        let residual = (after - before).abs() / before.abs().max(1.0);
        max_residual = max_residual.max(residual);
    }
    Ok(ActionReport {
        flavor,
        mass,
        trials,
        seed,
        max_residual,
        tolerance: TOL_SYMPLECTIC,
    })
}

#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub flavor: Flavor,
    pub mass_from: f64,
    pub mass_to: f64,
    /// Induced scalar action on the value line `[kgm]^2/[kgs]`.
    pub value_scale: f64,
    pub trials: usize,
    pub seed: u64,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl ScalingReport {
    pub fn pass(&self) -> bool {
        self.max_residual < self.tolerance
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("mass-scaling-diagram");
        r.line("flavor", self.flavor);
        r.number("mass_from", self.mass_from);
        r.number("mass_to", self.mass_to);
        r.number("value_scale", self.value_scale);
        r.line("trials", self.trials);
        r.line("seed", self.seed);
        r.number("max_residual", self.max_residual);
        r.number("tolerance", self.tolerance);
        r.verdict("diagram_commutes", self.pass());
        r
    }
}

/// The scalar by which an extended element acts on the value line of the
/// form: `spatial^2 / time` for the Galilean scales, the signed spacetime
/// factor `n` for the Lorentzian ones.
pub fn value_line_scale(gbar: &ExtendedElement) -> Result<f64, SymplecticError> {
    let (c, _) = factorize_extended(gbar).map_err(|_| SymplecticError::NotTimelike)?;
    Ok(match c {
        ScaleElement::Galilei(c) => c.spatial * c.spatial / c.time,
        ScaleElement::Poincare(c) => c.spacetime,
    })
}

/// Verify the commuting square: pushing tangents through the extended
/// element and evaluating the form at mass `m2` equals the value-line
/// action applied to the form at mass `m1`.
pub fn verify_scaling_diagram(
    flavor: Flavor,
    mass_from: f64,
    mass_to: f64,
    gbar: &ExtendedElement,
    trials: usize,
    seed: u64,
) -> Result<ScalingReport, SymplecticError> {
    if family_of(flavor) != gbar.family() {
        return Err(SymplecticError::FlavorMismatch);
    }
    let expected = mass_to / mass_from;
    let found = gbar.mass_scale();
    if (found - expected).abs() > 1e-9 * expected.abs().max(1.0) {
        return Err(SymplecticError::ScaleMismatch { expected, found });
    }
    let gtilde = value_line_scale(gbar)?;
    let mut rng = rng_from_seed(seed);
    let mut max_residual: f64 = 0.0;
    for _ in 0..trials {
        let x = sample_line(flavor, mass_from, &mut rng);
        let u1 = sample_tangent(&x, &mut rng);
        let u2 = sample_tangent(&x, &mut rng);
        let before = omega(&x, &u1, &u2)?.magnitude;
        let moved = act_on_line_extended(gbar, &x)?;
        let t1 = pushforward(|p| act_on_line_extended(gbar, p), &x, &u1)?;
        let t2 = pushforward(|p| act_on_line_extended(gbar, p), &x, &u2)?;
        let after = omega_raw(&moved, &t1, &t2);
        let residual = (after - gtilde * before).abs() / (gtilde * before).abs().max(1.0);
        max_residual = max_residual.max(residual);
    }
    Ok(ScalingReport {
        flavor,
        mass_from,
        mass_to,
        value_scale: gtilde,
        trials,
        seed,
        max_residual,
        tolerance: TOL_SYMPLECTIC,
    })
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub flavor: Flavor,
    pub mass_from: f64,
    pub mass_to: f64,
    pub trials: usize,
    pub seed: u64,
    /// Best residual of the identity-scale intertwiner over the two value
    /// line identifications (the value line is unoriented, so its sign is
    /// not canonical).
    pub best_residual: f64,
    pub tolerance: f64,
    pub equivalent: bool,
}

impl EquivalenceReport {
    pub fn expected_equivalent(&self) -> bool {
        (self.mass_from.abs() - self.mass_to.abs()).abs()
            < 1e-12 * self.mass_from.abs().max(1.0)
    }

    pub fn matches_expectation(&self) -> bool {
        self.equivalent == self.expected_equivalent()
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("mass-equivalence");
        r.line("flavor", self.flavor);
        r.number("mass_from", self.mass_from);
        r.number("mass_to", self.mass_to);
        r.line("trials", self.trials);
        r.line("seed", self.seed);
        r.number("identity_intertwiner_residual", self.best_residual);
        r.line("equivalent", self.equivalent);
        r.line("expected_equivalent", self.expected_equivalent());
        r.verdict("classification_correct", self.matches_expectation());
        r
    }
}

/// Attempt the identity-scale intertwiner between the line manifolds of two
/// masses: the chart-identity map is equivariant (the group action on chart
/// coordinates does not involve the mass), so the manifolds are equivalent
/// exactly when it preserves the form up to the sign ambiguity of the
/// unoriented value line. That happens iff `|m1| = |m2|`.
pub fn equivalence_verdict(
    flavor: Flavor,
    mass_from: f64,
    mass_to: f64,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport, SymplecticError> {
    let mut rng = rng_from_seed(seed);
    let mut plus: f64 = 0.0;
    let mut minus: f64 = 0.0;
    for _ in 0..trials {
        let x1 = sample_line(flavor, mass_from, &mut rng);
        let x2 = match &x1 {
            LinePoint::Newton {
                velocity, offset, ..
            } => LinePoint::newton(mass_to, *velocity, *offset),
            LinePoint::Einstein {
                velocity, offset, ..
            } => LinePoint::einstein(mass_to, *velocity, *offset)?,
        };
        let u1 = sample_tangent(&x1, &mut rng);
        let u2 = sample_tangent(&x1, &mut rng);
        let w1 = omega(&x1, &u1, &u2)?.magnitude;
        let w2 = omega(&x2, &u1, &u2)?.magnitude;
        let scale = w1.abs().max(1.0);
        plus = plus.max((w2 - w1).abs() / scale);
        minus = minus.max((w2 + w1).abs() / scale);
    }
    let best_residual = plus.min(minus);
    Ok(EquivalenceReport {
        flavor,
        mass_from,
        mass_to,
        trials,
        seed,
        best_residual,
        tolerance: TOL_SYMPLECTIC,
        equivalent: best_residual < TOL_SYMPLECTIC,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{
        sample_extended, ExtendedGalileiElement, ExtendedPoincareElement, GalileiElement,
        GalileiScale, PoincareElement, PoincareScale,
    };

    #[test]
    fn zero_tangents_have_zero_residual() {
        let x = LinePoint::newton(1.0, Vector3::x(), Vector3::y());
        let g = crate::groups::sample(GroupFamily::Galilei, 5, 1.0);
        let u = Tangent::zero(Flavor::Newton);
        let before = omega(&x, &u, &u).unwrap().magnitude;
        let t = pushforward(|p| act_on_line(&g, p), &x, &u).unwrap();
        let after = omega_raw(&act_on_line(&g, &x).unwrap(), &t, &t);
        assert_eq!(before, 0.0);
        assert_eq!(after, 0.0);
    }

    #[test]
    fn action_is_symplectic_for_both_flavors() {
        for (flavor, mass) in [
            (Flavor::Newton, 1.0),
            (Flavor::Newton, 2.0),
            (Flavor::Einstein, 1.0),
            (Flavor::Einstein, 2.0),
        ] {
            let report = verify_symplectic_action(flavor, mass, 100, 7).unwrap();
            assert!(
                report.pass(),
                "{flavor} mass {mass}: residual {:e}",
                report.max_residual
            );
        }
    }

    #[test]
    fn plain_group_elements_give_unit_value_scale() {
        let g = GalileiElement::boost(Vector3::new(0.4, 0.0, -0.1));
        let gbar = ExtendedElement::Galilei(ExtendedGalileiElement::from_group(&g));
        assert!((value_line_scale(&gbar).unwrap() - 1.0).abs() < 1e-12);
        let report = verify_scaling_diagram(Flavor::Newton, 1.5, 1.5, &gbar, 50, 11).unwrap();
        assert!(report.pass());
        // Plain invariance is much tighter than the generic tolerance.
        assert!(report.max_residual < 1e-9);
    }

    #[test]
    fn mass_reflection_commutes_with_unit_value_scale() {
        let c = GalileiScale {
            spatial: 1.0,
            time: 1.0,
            mass: -1.0,
        };
        let gbar = ExtendedElement::Galilei(ExtendedGalileiElement::from_parts(
            &c,
            &GalileiElement::identity(),
        ));
        let report = verify_scaling_diagram(Flavor::Newton, 1.0, -1.0, &gbar, 100, 13).unwrap();
        assert!((report.value_scale - 1.0).abs() < 1e-12);
        assert!(report.pass(), "residual {:e}", report.max_residual);

        let c = PoincareScale {
            spacetime: 1.0,
            mass: -1.0,
        };
        let pbar = ExtendedElement::Poincare(ExtendedPoincareElement::from_parts(
            &c,
            &PoincareElement::identity(),
        ));
        let report = verify_scaling_diagram(Flavor::Einstein, 2.0, -2.0, &pbar, 100, 13).unwrap();
        assert!(report.pass(), "residual {:e}", report.max_residual);
    }

    #[test]
    fn generic_extended_elements_commute_with_their_value_scale() {
        for seed in 0..10u64 {
            let gbar = sample_extended(GroupFamily::Galilei, 100 + seed, 1.0);
            let m1 = 1.0;
            let m2 = gbar.mass_scale() * m1;
            let report = verify_scaling_diagram(Flavor::Newton, m1, m2, &gbar, 40, seed).unwrap();
            assert!(
                report.pass(),
                "galilei seed {seed}: residual {:e} (scale {})",
                report.max_residual,
                report.value_scale
            );

            let pbar = sample_extended(GroupFamily::Poincare, 200 + seed, 1.0);
            let m2 = pbar.mass_scale() * m1;
            let report =
                verify_scaling_diagram(Flavor::Einstein, m1, m2, &pbar, 40, seed).unwrap();
            assert!(
                report.pass(),
                "poincare seed {seed}: residual {:e} (scale {})",
                report.max_residual,
                report.value_scale
            );
        }
    }

    #[test]
    fn scale_mismatch_is_rejected() {
        let gbar = ExtendedElement::Galilei(ExtendedGalileiElement::from_group(
            &GalileiElement::identity(),
        ));
        assert!(matches!(
            verify_scaling_diagram(Flavor::Newton, 1.0, 2.0, &gbar, 10, 3),
            Err(SymplecticError::ScaleMismatch { .. })
        ));
    }

    #[test]
    fn doubling_the_mass_scales_the_form_by_two() {
        let report = equivalence_verdict(Flavor::Newton, 1.0, 2.0, 100, 17).unwrap();
        assert!(!report.equivalent);
        // The identity intertwiner misses by the factor two.
        assert!((report.best_residual - 1.0).abs() < 0.5);
    }

    #[test]
    fn equivalence_grid_reproduces_the_sign_rule() {
        let grid = [-2.0, -1.0, 1.0, 2.0, 3.0];
        for flavor in [Flavor::Newton, Flavor::Einstein] {
            for &m1 in &grid {
                for &m2 in &grid {
                    let r = equivalence_verdict(flavor, m1, m2, 50, 19).unwrap();
                    assert!(
                        r.matches_expectation(),
                        "{flavor} {m1} -> {m2}: residual {:e}",
                        r.best_residual
                    );
                }
            }
        }
    }

    #[test]
    fn nondegeneracy_on_random_points() {
        let mut rng = rng_from_seed(23);
        for flavor in [Flavor::Newton, Flavor::Einstein] {
            let x = sample_line(flavor, 1.0, &mut rng);
            for _ in 0..100 {
                let u1 = sample_tangent(&x, &mut rng);
                let mut found = false;
                for _ in 0..8 {
                    let u2 = sample_tangent(&x, &mut rng);
                    if omega(&x, &u1, &u2).unwrap().magnitude.abs() > 1e-12 {
                        found = true;
                        break;
                    }
                }
                assert!(found, "degenerate direction in {flavor}");
            }
        }
    }

    #[test]
    fn cotangent_chart_is_symplectic() {
        // Mapping a Lorentzian line to (spatial part of the direction,
        // mass-weighted spatial position in the time-zero slice) carries the
        // form to the canonical one on R^3 x R^3.
        let mut rng = rng_from_seed(29);
        let mass = 1.5;
        let chart = |p: &LinePoint| -> (Vector3<f64>, Vector3<f64>) {
            let LinePoint::Einstein {
                velocity, offset, ..
            } = p
            else {
                unreachable!()
            };
            let y = offset - velocity * (offset[3] / velocity[3]);
            (
                Vector3::new(velocity[0], velocity[1], velocity[2]),
                Vector3::new(y[0], y[1], y[2]) * mass,
            )
        };
        for _ in 0..200 {
            let x = sample_line(Flavor::Einstein, mass, &mut rng);
            let u1 = sample_tangent(&x, &mut rng);
            let u2 = sample_tangent(&x, &mut rng);
            let w = omega(&x, &u1, &u2).unwrap().magnitude;

            // Pushforward through the chart by the same finite-difference
            // scheme used everywhere else.
            let push = |u: &Tangent| -> (Vector3<f64>, Vector3<f64>) {
                let d = |eps: f64| {
                    let (a1, b1) = chart(&displaced(&x, u, eps));
                    let (a2, b2) = chart(&displaced(&x, u, -eps));
                    ((a1 - a2) / (2.0 * eps), (b1 - b2) / (2.0 * eps))
                };
                let (ca, cb) = d(FD_STEP);
                let (fa, fb) = d(FD_STEP / 2.0);
                ((fa * 4.0 - ca) / 3.0, (fb * 4.0 - cb) / 3.0)
            };
            let (da1, db1) = push(&u1);
            let (da2, db2) = push(&u2);
            let canonical = da1.dot(&db2) - da2.dot(&db1);
            assert!(
                (canonical - w).abs() < 1e-6 * w.abs().max(1.0),
                "pullback residual {:e}",
                (canonical - w).abs()
            );
        }
    }
}
