//! Classical fixed-step fourth-order integration of the equation of motion
//! `f'' = F(f, f')`, with per-step mass-shell re-projection in the
//! Lorentzian case.

use super::{DynamicsError, ForceField, Trajectory};
use crate::minkowski::eta;
use crate::space::{FiveVector, Flavor};
use nalgebra::{Vector4, Vector5};

const TOL_INITIAL: f64 = 1e-9;
/// Residual bound on `<F, p> = 0` at every Lorentzian field evaluation.
const TOL_ORTHOGONAL: f64 = 1e-8;

fn spacetime(v: &Vector5<f64>) -> Vector4<f64> {
    Vector4::new(v[0], v[1], v[2], v[3])
}

fn check_initial_data(
    flavor: Flavor,
    point: &Vector5<f64>,
    momentum: &Vector5<f64>,
) -> Result<f64, DynamicsError> {
    let mass = point[4];
    if mass == 0.0 {
        return Err(DynamicsError::BadInitialData {
            constraint: "the initial point must have nonzero mass coordinate (m(f(t0)) != 0)"
                .to_string(),
        });
    }
    let tol = TOL_INITIAL * mass.abs().max(1.0);
    if momentum[4].abs() > tol {
        return Err(DynamicsError::BadInitialData {
            constraint: format!(
                "the initial momentum must lie in the mass-zero hyperplane, found m-component {}",
                momentum[4]
            ),
        });
    }
    match flavor {
        Flavor::Newton => {
            if (momentum[3] - mass).abs() > tol {
                return Err(DynamicsError::BadInitialData {
                    constraint: format!(
                        "the initial momentum must satisfy m0 = mt(f'(t0)); found mt = {}, m0 = {}",
                        momentum[3], mass
                    ),
                });
            }
        }
        Flavor::Einstein => {
            if mass < 0.0 {
                return Err(DynamicsError::BadInitialData {
                    constraint: "a naturally parametrized relativistic particle has positive mass"
                        .to_string(),
                });
            }
            let p = spacetime(momentum);
            let norm = (-eta(&p, &p)).max(0.0).sqrt();
            if (norm - mass).abs() > tol {
                return Err(DynamicsError::BadInitialData {
                    constraint: format!(
                        "the initial momentum must lie on the mass shell (|f'| = m c); found |p| = {norm}, m = {mass}"
                    ),
                });
            }
            if momentum[3] <= 0.0 {
                return Err(DynamicsError::BadInitialData {
                    constraint: "the initial momentum must be future-pointing".to_string(),
                });
            }
        }
    }
    Ok(mass)
}

/// Check the integration preconditions without integrating; returns the
/// particle mass. Galilean data must satisfy `m0 = mt(f'(t0))` with the
/// momentum in the mass-zero hyperplane; Lorentzian momenta must sit on the
/// mass shell and point to the future.
pub fn validate_initial_data(
    flavor: Flavor,
    point: &FiveVector,
    momentum: &FiveVector,
) -> Result<f64, DynamicsError> {
    if point.frame != momentum.frame {
        return Err(DynamicsError::FrameMismatch);
    }
    check_initial_data(flavor, &point.coords, &momentum.coords)
}

struct Derivatives<'a> {
    field: &'a dyn ForceField,
}

impl Derivatives<'_> {
    fn force(&self, y: &Vector5<f64>, p: &Vector5<f64>) -> Result<Vector5<f64>, DynamicsError> {
        let f = self.field.evaluate(y, p)?;
        if self.field.flavor() == Flavor::Einstein {
            let fp = eta(&spacetime(&f), &spacetime(p));
            let scale = spacetime(&f).amax().max(1.0) * spacetime(p).amax().max(1.0);
            if fp.abs() > TOL_ORTHOGONAL * scale {
                return Err(DynamicsError::ForceNotOrthogonal {
                    residual: fp.abs() / scale,
                });
            }
        }
        Ok(f)
    }
}

/// Integrate the second-order system from validated initial data with `n`
/// steps of size `h`. Lorentzian momenta are rescaled to the mass shell
/// after every step: the natural-parametrization constraint is hard, and
/// the discrete scheme would otherwise drift at fourth order.
pub fn integrate(
    field: &dyn ForceField,
    initial_point: &FiveVector,
    initial_momentum: &FiveVector,
    step: f64,
    steps: usize,
) -> Result<Trajectory, DynamicsError> {
    if initial_point.frame != initial_momentum.frame {
        return Err(DynamicsError::FrameMismatch);
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(DynamicsError::BadInitialData {
            constraint: format!("step must be positive and finite, got {step}"),
        });
    }
    let flavor = field.flavor();
    let mass = check_initial_data(flavor, &initial_point.coords, &initial_momentum.coords)?;
    let derivs = Derivatives { field };

    let mut y = initial_point.coords;
    let mut p = initial_momentum.coords;
    let mut points = Vec::with_capacity(steps + 1);
    points.push(y);

    let h = step;
    for _ in 0..steps {
        let k1y = p;
        let k1p = derivs.force(&y, &p)?;
        let y2 = y + k1y * (h / 2.0);
        let p2 = p + k1p * (h / 2.0);
        let k2y = p2;
        let k2p = derivs.force(&y2, &p2)?;
        let y3 = y + k2y * (h / 2.0);
        let p3 = p + k2p * (h / 2.0);
        let k3y = p3;
        let k3p = derivs.force(&y3, &p3)?;
        let y4 = y + k3y * h;
        let p4 = p + k3p * h;
        let k4y = p4;
        let k4p = derivs.force(&y4, &p4)?;

        y += (k1y + k2y * 2.0 + k3y * 2.0 + k4y) * (h / 6.0);
        p += (k1p + k2p * 2.0 + k3p * 2.0 + k4p) * (h / 6.0);

        if flavor == Flavor::Einstein {
            // Re-project onto the mass shell, preserving direction.
            let sp = spacetime(&p);
            let norm = (-eta(&sp, &sp)).max(0.0).sqrt();
            if norm > 0.0 {
                let factor = mass / norm;
                for i in 0..4 {
                    p[i] *= factor;
                }
            }
        }
        points.push(y);
    }

    let start = match flavor {
        // Natural parametrization: the parameter is the time evaluation.
        Flavor::Newton => initial_point.coords[3] / mass,
        // Proper time with the origin fixed at the initial point.
        Flavor::Einstein => 0.0,
    };
    Trajectory::new(flavor, mass, start, h, points, initial_point.frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{
        derive_kinematics, AntisymmetricMomentumField, IsotropicOscillator, ZeroField,
    };
    use crate::space::FrameId;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector3;

    fn newton_initial(
        mass: f64,
        x: Vector3<f64>,
        v: Vector3<f64>,
        t: f64,
    ) -> (FiveVector, FiveVector) {
        let point = FiveVector::newtonian(x * mass, mass * t, mass, FrameId::STANDARD);
        let momentum = FiveVector::newtonian(v * mass, mass, 0.0, FrameId::STANDARD);
        (point, momentum)
    }

    #[test]
    fn zero_field_yields_straight_lines() {
        let field = ZeroField {
            flavor: Flavor::Newton,
        };
        let mass = 1.5;
        let x0 = Vector3::new(0.25, -1.0, 2.0);
        let v0 = Vector3::new(1.0, 0.5, -0.75);
        let (p0, q0) = newton_initial(mass, x0, v0, 0.0);
        let traj = integrate(&field, &p0, &q0, 1e-3, 1000).unwrap();
        for i in 0..traj.len() {
            let t = traj.param(i);
            let expect = x0 + v0 * t;
            let got = traj.point(i).spatial() / mass;
            assert!(
                (got - expect).amax() < 1e-12,
                "deviation {:e} at step {i}",
                (got - expect).amax()
            );
        }
    }

    #[test]
    fn oscillator_matches_the_closed_form_over_one_period() {
        let k = 2.0f64;
        let mass = 1.5;
        let omega = (k / mass).sqrt();
        let period = std::f64::consts::TAU / omega;
        let x0 = Vector3::new(1.0, 0.0, -0.5);
        let v0 = Vector3::new(0.0, 0.8, 0.0);
        let field = IsotropicOscillator { stiffness: k };
        let (p0, q0) = newton_initial(mass, x0, v0, 0.0);
        let n = 1000;
        let traj = integrate(&field, &p0, &q0, period / n as f64, n).unwrap();
        let mut max_err: f64 = 0.0;
        for i in 0..traj.len() {
            let t = traj.param(i);
            let expect = x0 * (omega * t).cos() + v0 * ((omega * t).sin() / omega);
            let got = traj.point(i).spatial() / mass;
            max_err = max_err.max((got - expect).amax());
        }
        assert!(max_err < 1e-6, "oscillator error {max_err:e}");
    }

    #[test]
    fn newtonian_mass_and_mass_time_are_exactly_conserved() {
        let field = IsotropicOscillator { stiffness: 1.0 };
        let (p0, q0) = newton_initial(2.0, Vector3::x(), Vector3::y(), 0.0);
        let traj = integrate(&field, &p0, &q0, 1e-2, 500).unwrap();
        for i in 0..traj.len() {
            assert_eq!(traj.point(i).mass_component(), 2.0);
        }
        let k = derive_kinematics(&traj).unwrap();
        for p in &k.momentum {
            assert_abs_diff_eq!(p[3], 2.0, epsilon = 1e-8);
            assert_eq!(p[4], 0.0);
        }
    }

    #[test]
    fn relativistic_magnetic_field_conserves_the_shell() {
        let mass = 1.0;
        let chi = 0.6f64;
        let p0 = FiveVector::einsteinian(
            nalgebra::Vector4::new(mass * chi.sinh(), 0.0, 0.0, mass * chi.cosh()),
            0.0,
            FrameId::STANDARD,
        );
        let x0 = FiveVector::einsteinian(nalgebra::Vector4::zeros(), mass, FrameId::STANDARD);
        let field = AntisymmetricMomentumField { strength: 0.5 };
        let traj = integrate(&field, &x0, &p0, 1e-3, 10_000).unwrap();
        let k = derive_kinematics(&traj).unwrap();
        for p in &k.momentum {
            let sp = super::spacetime(p);
            let norm = (-eta(&sp, &sp)).sqrt();
            assert!((norm - mass).abs() < 1e-9, "shell drift {:e}", norm - mass);
        }
        // The derived velocity is unit and orthogonal to the acceleration.
        for (v, a) in k.velocity.iter().zip(&k.acceleration) {
            let sv = super::spacetime(v);
            let sa = super::spacetime(a);
            assert!(((-eta(&sv, &sv)).sqrt() - 1.0).abs() < 1e-8);
            assert!(eta(&sa, &sv).abs() < 1e-6);
        }
    }

    #[test]
    fn off_shell_momentum_is_rejected() {
        let p0 = FiveVector::einsteinian(
            nalgebra::Vector4::new(0.5, 0.0, 0.0, 1.0),
            0.0,
            FrameId::STANDARD,
        );
        let x0 = FiveVector::einsteinian(nalgebra::Vector4::zeros(), 1.0, FrameId::STANDARD);
        let field = ZeroField {
            flavor: Flavor::Einstein,
        };
        match integrate(&field, &x0, &p0, 1e-3, 10) {
            Err(DynamicsError::BadInitialData { constraint }) => {
                assert!(constraint.contains("mass shell"), "got: {constraint}");
            }
            other => panic!("expected BadInitialData, got {other:?}"),
        }
    }

    #[test]
    fn newtonian_mt_mismatch_is_rejected() {
        let point = FiveVector::newtonian(Vector3::zeros(), 0.0, 1.0, FrameId::STANDARD);
        let momentum = FiveVector::newtonian(Vector3::zeros(), 2.0, 0.0, FrameId::STANDARD);
        let field = ZeroField {
            flavor: Flavor::Newton,
        };
        match integrate(&field, &point, &momentum, 1e-3, 10) {
            Err(DynamicsError::BadInitialData { constraint }) => {
                assert!(constraint.contains("mt(f'(t0))"), "got: {constraint}");
            }
            other => panic!("expected BadInitialData, got {other:?}"),
        }
    }

    #[test]
    fn galilei_covariance_of_free_motion() {
        use crate::groups::{sample, GroupFamily};
        let field = ZeroField {
            flavor: Flavor::Newton,
        };
        for seed in 0..20u64 {
            let g = sample(GroupFamily::Galilei, seed, 1.0);
            let (p0, q0) = newton_initial(
                1.25,
                Vector3::new(0.3, -0.6, 0.9),
                Vector3::new(-0.2, 0.4, 0.1),
                0.0,
            );
            let direct = integrate(&field, &g.apply(&p0), &g.apply(&q0), 1e-2, 200).unwrap();
            let then = integrate(&field, &p0, &q0, 1e-2, 200).unwrap();
            // Transforming shifts the time evaluation, so compare points by
            // index rather than by parameter.
            for i in (0..direct.len()).step_by(40) {
                let transformed = g.apply(&then.point(i));
                assert!(
                    (transformed.coords - direct.point(i).coords).amax() < 1e-10,
                    "covariance failure at sample {i}"
                );
            }
        }
    }
}
