//! Dual-path Hamiltonian flow check: integrate the vector field obtained
//! from the symplectic form and a Hamiltonian candidate by finite-difference
//! gradients, and compare against the group's own time translation applied
//! to the line point directly.
//!
//! The Lorentzian check runs two candidates, the mass-shell energy
//! `sqrt(m^2 c^4 + |p|^2 c^2)` (with `p = m v` the spatial momentum
//! coordinate) and the quartic variant `sqrt(m^2 c^4 + m^2 |v|^4)`, and the
//! report states which of them generates the time translations.

use super::verify::sample_line;
use super::{act_on_line, omega_raw, LinePoint, SymplecticError, Tangent};
use crate::groups::{rng_from_seed, GalileiElement, GroupElement, PoincareElement};
use crate::report::Report;
use crate::space::Flavor;
use nalgebra::{Matrix6, Vector3, Vector4, Vector6};

/// Deviation bound for the candidate that generates the time translations.
pub const TOL_FLOW: f64 = 1e-6;

/// Chart state: velocity-like block in the first three slots, position-like
/// block in the last three. Galilean lines use (velocity, offset); the
/// Lorentzian chart uses the spatial part of the unit direction and the
/// spatial position in the time-zero slice.
fn chart_of(x: &LinePoint) -> Vector6<f64> {
    match x {
        LinePoint::Newton {
            velocity, offset, ..
        } => Vector6::new(
            velocity.x, velocity.y, velocity.z, offset.x, offset.y, offset.z,
        ),
        LinePoint::Einstein {
            velocity, offset, ..
        } => {
            let y = offset - velocity * (offset[3] / velocity[3]);
            Vector6::new(velocity[0], velocity[1], velocity[2], y[0], y[1], y[2])
        }
    }
}

fn chart_point(flavor: Flavor, mass: f64, s: &Vector6<f64>) -> LinePoint {
    let a = Vector3::new(s[0], s[1], s[2]);
    let b = Vector3::new(s[3], s[4], s[5]);
    match flavor {
        Flavor::Newton => LinePoint::newton(mass, a, b),
        Flavor::Einstein => {
            let v = Vector4::new(a.x, a.y, a.z, (1.0 + a.norm_squared()).sqrt());
            LinePoint::einstein(mass, v, Vector4::new(b.x, b.y, b.z, 0.0))
                .expect("chart direction is unit timelike")
        }
    }
}

/// Lift a chart basis direction to a line tangent by central differences of
/// the chart parametrization (Richardson-extrapolated).
fn lift_basis(flavor: Flavor, mass: f64, s: &Vector6<f64>, axis: usize) -> Tangent {
    let central = |eps: f64| {
        let mut fwd = *s;
        let mut bwd = *s;
        fwd[axis] += eps;
        bwd[axis] -= eps;
        let plus = chart_point(flavor, mass, &fwd);
        let minus = chart_point(flavor, mass, &bwd);
        super::verify::chart_tangent_diff(&plus, &minus, 2.0 * eps)
    };
    let coarse = central(1e-4);
    let fine = central(5e-5);
    super::verify::tangent_richardson(&fine, &coarse)
}

/// The matrix of the form on the lifted chart basis.
fn omega_matrix(flavor: Flavor, mass: f64, s: &Vector6<f64>) -> Matrix6<f64> {
    let x = chart_point(flavor, mass, s);
    let lifts: Vec<Tangent> = (0..6).map(|i| lift_basis(flavor, mass, s, i)).collect();
    Matrix6::from_fn(|i, j| omega_raw(&x, &lifts[i], &lifts[j]))
}

fn gradient(h: &dyn Fn(&Vector6<f64>) -> f64, s: &Vector6<f64>) -> Vector6<f64> {
    let mut g = Vector6::zeros();
    for i in 0..6 {
        let step = 1e-6 * s[i].abs().max(1.0);
        let mut fwd = *s;
        let mut bwd = *s;
        fwd[i] += step;
        bwd[i] -= step;
        g[i] = (h(&fwd) - h(&bwd)) / (2.0 * step);
    }
    g
}

/// Solve `omega(X, .) = dH` for the Hamiltonian vector field.
fn hamiltonian_field(
    flavor: Flavor,
    mass: f64,
    h: &dyn Fn(&Vector6<f64>) -> f64,
    s: &Vector6<f64>,
) -> Vector6<f64> {
    let omega_t = omega_matrix(flavor, mass, s).transpose();
    let grad = gradient(h, s);
    omega_t
        .lu()
        .solve(&grad)
        .expect("the form is nondegenerate on the chart")
}

fn rk4_flow(
    flavor: Flavor,
    mass: f64,
    h: &dyn Fn(&Vector6<f64>) -> f64,
    start: &Vector6<f64>,
    step: f64,
    steps: usize,
) -> Vector6<f64> {
    let mut s = *start;
    let field = |state: &Vector6<f64>| hamiltonian_field(flavor, mass, h, state);
    for _ in 0..steps {
        let k1 = field(&s);
        let k2 = field(&(s + k1 * (step / 2.0)));
        let k3 = field(&(s + k2 * (step / 2.0)));
        let k4 = field(&(s + k3 * step));
        s += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (step / 6.0);
    }
    s
}

fn time_translation(flavor: Flavor, duration: f64) -> GroupElement {
    match flavor {
        Flavor::Newton => {
            GroupElement::Galilei(GalileiElement::translation(Vector3::zeros(), duration))
        }
        Flavor::Einstein => GroupElement::Poincare(PoincareElement::translation_element(
            Vector4::new(0.0, 0.0, 0.0, duration),
        )),
    }
}

#[derive(Debug, Clone)]
pub struct CandidateOutcome {
    pub name: &'static str,
    pub deviation: f64,
    pub generates: bool,
}

#[derive(Debug, Clone)]
pub struct FlowReport {
    pub flavor: Flavor,
    pub mass: f64,
    pub step: f64,
    pub steps: usize,
    pub seed: u64,
    pub candidates: Vec<CandidateOutcome>,
    pub tolerance: f64,
}

impl FlowReport {
    /// Some candidate generates the group's time translations.
    pub fn pass(&self) -> bool {
        self.candidates.iter().any(|c| c.generates)
    }

    pub fn generating_candidate(&self) -> Option<&CandidateOutcome> {
        self.candidates.iter().find(|c| c.generates)
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("hamiltonian-flow");
        r.line("flavor", self.flavor);
        r.number("mass", self.mass);
        r.number("step", self.step);
        r.line("steps", self.steps);
        r.line("seed", self.seed);
        for c in &self.candidates {
            r.number(format!("deviation[{}]", c.name), c.deviation);
            r.line(format!("generates_time_translation[{}]", c.name), c.generates);
        }
        r.line(
            "generating_candidate",
            self.generating_candidate()
                .map(|c| c.name)
                .unwrap_or("none"),
        );
        r.verdict("flow_matches_group", self.pass());
        r
    }
}

/// Integrate each Hamiltonian candidate for the duration `step * steps` and
/// compare the final chart state with the group time translation applied to
/// the same starting line.
pub fn hamiltonian_flow_check(
    flavor: Flavor,
    mass: f64,
    step: f64,
    steps: usize,
    seed: u64,
) -> Result<FlowReport, SymplecticError> {
    let mut rng = rng_from_seed(seed);
    let x0 = sample_line(flavor, mass, &mut rng);
    let s0 = chart_of(&x0);
    let duration = step * steps as f64;
    let target = chart_of(&act_on_line(&time_translation(flavor, duration), &x0)?);

    let candidates: Vec<(&'static str, Box<dyn Fn(&Vector6<f64>) -> f64>)> = match flavor {
        Flavor::Newton => vec![(
            "m|v|^2/2",
            Box::new(move |s: &Vector6<f64>| {
                0.5 * mass * (s[0] * s[0] + s[1] * s[1] + s[2] * s[2])
            }),
        )],
        Flavor::Einstein => vec![
            (
                "sqrt(m^2c^4+|p|^2c^2)",
                Box::new(move |s: &Vector6<f64>| {
                    let v2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
                    (mass * mass + mass * mass * v2).sqrt()
                }),
            ),
            (
                "sqrt(m^2c^4+m^2|v|^4)",
                Box::new(move |s: &Vector6<f64>| {
                    let v2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
                    (mass * mass + mass * mass * v2 * v2).sqrt()
                }),
            ),
        ],
    };

    let mut outcomes = Vec::new();
    for (name, h) in &candidates {
        let end = rk4_flow(flavor, mass, h.as_ref(), &s0, step, steps);
        let deviation = (end - target).amax();
        outcomes.push(CandidateOutcome {
            name,
            deviation,
            generates: deviation < TOL_FLOW,
        });
    }
    Ok(FlowReport {
        flavor,
        mass,
        step,
        steps,
        seed,
        candidates: outcomes,
        tolerance: TOL_FLOW,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rest_line_is_a_fixed_point_matching_the_group() {
        // Zero velocity: the gradient vanishes and the group translation
        // leaves the offset unchanged.
        let x0 = LinePoint::newton(1.0, Vector3::zeros(), Vector3::new(0.5, -0.25, 1.0));
        let s0 = chart_of(&x0);
        let h = |s: &Vector6<f64>| 0.5 * (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
        let end = rk4_flow(Flavor::Newton, 1.0, &h, &s0, 1e-2, 100);
        assert!((end - s0).amax() < 1e-12);
        let moved = act_on_line(&time_translation(Flavor::Newton, 1.0), &x0).unwrap();
        assert_eq!(chart_of(&moved), s0);
    }

    #[test]
    fn newtonian_flow_matches_group_translation() {
        let report = hamiltonian_flow_check(Flavor::Newton, 1.0, 1e-3, 1000, 3).unwrap();
        assert!(report.pass(), "deviation {:e}", report.candidates[0].deviation);
    }

    #[test]
    fn galilei_time_translation_moves_offsets_backwards() {
        let w = Vector3::new(0.5, 0.0, 0.0);
        let x0 = LinePoint::newton(1.0, w, Vector3::zeros());
        let moved = act_on_line(&time_translation(Flavor::Newton, 2.0), &x0).unwrap();
        match moved {
            LinePoint::Newton {
                velocity, offset, ..
            } => {
                assert_eq!(velocity, w);
                assert_abs_diff_eq!(offset.x, -1.0, epsilon = 1e-14);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn einstein_flow_selects_the_mass_shell_energy() {
        let report = hamiltonian_flow_check(Flavor::Einstein, 1.0, 1e-3, 1000, 5).unwrap();
        let std = &report.candidates[0];
        let quartic = &report.candidates[1];
        assert!(std.generates, "mass-shell deviation {:e}", std.deviation);
        assert!(
            !quartic.generates,
            "quartic candidate unexpectedly matches: {:e}",
            quartic.deviation
        );
        assert_eq!(
            report.generating_candidate().unwrap().name,
            "sqrt(m^2c^4+|p|^2c^2)"
        );
    }
}
