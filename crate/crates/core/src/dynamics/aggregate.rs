//! Multi-particle aggregates: center of mass, total momentum, and internal
//! angular momentum, the latter only in an oriented space where the vector
//! product is available.

use super::{derive_kinematics, DynamicsError, Trajectory};
use crate::measure::Dimension;
use crate::newton::SpaceOrientation;
use crate::space::{FiveVector, Flavor, QVec3};
use nalgebra::{Vector3, Vector5};
use num_rational::Rational64;

#[derive(Debug, Clone)]
pub struct Aggregate {
    /// The literal sum of the particle five-vectors; lands in the mass
    /// hyperplane of the total mass.
    pub center_of_mass: FiveVector,
    /// Derivative of the sum.
    pub total_momentum: FiveVector,
    /// Pairwise internal angular momentum, valued in `[kgm]^2 / [kgs]`.
    pub internal_angular_momentum: QVec3,
}

/// Evaluate the aggregate quantities at a common parameter value, which must
/// coincide with a sample of every trajectory.
pub fn aggregate(
    trajectories: &[Trajectory],
    t: f64,
    orientation: SpaceOrientation,
) -> Result<Aggregate, DynamicsError> {
    if orientation == SpaceOrientation::Unoriented {
        return Err(DynamicsError::NotOriented);
    }
    let first = trajectories.first().ok_or(DynamicsError::TooFewSamples {
        got: 0,
        need: 1,
    })?;
    let frame = first.frame();
    for f in trajectories {
        if f.flavor() != Flavor::Newton {
            return Err(DynamicsError::WrongFlavor {
                expected: Flavor::Newton,
                got: f.flavor(),
            });
        }
        if f.frame() != frame {
            return Err(DynamicsError::FrameMismatch);
        }
    }

    let mut points = Vec::with_capacity(trajectories.len());
    let mut momenta = Vec::with_capacity(trajectories.len());
    for f in trajectories {
        let i = f
            .sample_index(t)
            .ok_or(DynamicsError::ParameterNotSampled { t })?;
        let k = derive_kinematics(f)?;
        points.push(f.raw_points()[i]);
        momenta.push(k.momentum[i]);
    }

    let sum_point: Vector5<f64> = points.iter().sum();
    let sum_momentum: Vector5<f64> = momenta.iter().sum();

    let mut j = Vector3::zeros();
    for i in 0..trajectories.len() {
        for k in (i + 1)..trajectories.len() {
            let mi = trajectories[i].mass();
            let mk = trajectories[k].mass();
            if (mi + mk).abs() < 1e-12 {
                return Err(DynamicsError::MassPairSingular);
            }
            // (mk f_i - mi f_k) / (mi + mk), spatial block.
            let arm = (spatial(&points[i]) * mk - spatial(&points[k]) * mi) / (mi + mk);
            // (f_i/mi - f_k/mk)' = p_i/mi - p_k/mk, spatial block.
            let rel = spatial(&momenta[i]) / mi - spatial(&momenta[k]) / mk;
            j += arm.cross(&rel);
        }
    }

    // [kgm] * [m]/[s] reduces to [kgm]^2 / [kgs].
    let j_dim = Dimension::kgm()
        .pow(Rational64::from_integer(2))
        .div(&Dimension::kgs());

    Ok(Aggregate {
        center_of_mass: FiveVector::new(sum_point, frame),
        total_momentum: FiveVector::new(sum_momentum, frame),
        internal_angular_momentum: QVec3::new(j, j_dim),
    })
}

fn spatial(v: &Vector5<f64>) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::FrameId;
    use approx::assert_abs_diff_eq;

    fn circular_pair(mass: f64, radius: f64, omega: f64, n: usize, h: f64) -> [Trajectory; 2] {
        let make = |sign: f64| {
            let points: Vec<Vector5<f64>> = (0..n)
                .map(|i| {
                    let t = i as f64 * h;
                    let x = sign * radius * (omega * t).cos();
                    let y = sign * radius * (omega * t).sin();
                    Vector5::new(mass * x, mass * y, 0.0, mass * t, mass)
                })
                .collect();
            Trajectory::new(Flavor::Newton, mass, 0.0, h, points, FrameId::STANDARD).unwrap()
        };
        [make(1.0), make(-1.0)]
    }

    #[test]
    fn single_particle_aggregate_is_the_particle() {
        let [f, _] = circular_pair(1.0, 1.0, 1.0, 64, 0.01);
        let a = aggregate(std::slice::from_ref(&f), 0.1, SpaceOrientation::Oriented).unwrap();
        let i = f.sample_index(0.1).unwrap();
        assert_eq!(a.center_of_mass.coords, f.raw_points()[i]);
        assert_eq!(a.internal_angular_momentum.components, Vector3::zeros());
    }

    #[test]
    fn symmetric_pair_reduces_to_the_doubled_mass_axis() {
        let [f1, f2] = circular_pair(1.0, 1.0, 1.0, 64, 0.01);
        let a = aggregate(&[f1, f2], 0.2, SpaceOrientation::Oriented).unwrap();
        // Opposite positions cancel; the sum lies on the time axis in M_2.
        assert_abs_diff_eq!(a.center_of_mass.spatial().norm(), 0.0, epsilon = 1e-12);
        assert_eq!(a.center_of_mass.mass_component(), 2.0);
        assert!(a.total_momentum.spatial().norm() < 1e-7);
        assert_abs_diff_eq!(a.total_momentum.time_component(), 2.0, epsilon = 1e-7);
    }

    #[test]
    fn circular_orbit_conserves_internal_angular_momentum() {
        let mass = 1.0;
        let radius = 1.0;
        let omega = std::f64::consts::TAU; // one period per unit time
        let h = 1e-3;
        let n = 1001;
        let pair = circular_pair(mass, radius, omega, n, h);
        // J for the symmetric pair: (m/2) |2r x 2 r omega| = 2 m r^2 omega.
        let expected = 2.0 * mass * radius * radius * omega;
        let mut reference = None;
        for step in (2..n - 2).step_by(97) {
            let t = step as f64 * h;
            let a = aggregate(&pair, t, SpaceOrientation::Oriented).unwrap();
            let j = a.internal_angular_momentum.components;
            assert_abs_diff_eq!(j.norm(), expected, epsilon = 1e-8 * expected);
            match reference {
                None => reference = Some(j),
                Some(r) => {
                    assert!((j - r).amax() < 1e-8, "J drifted by {:e}", (j - r).amax())
                }
            }
        }
    }

    #[test]
    fn unoriented_space_refuses_the_vector_product() {
        let pair = circular_pair(1.0, 1.0, 1.0, 16, 0.01);
        assert!(matches!(
            aggregate(&pair, 0.05, SpaceOrientation::Unoriented),
            Err(DynamicsError::NotOriented)
        ));
    }

    #[test]
    fn frame_mismatch_is_detected() {
        let [f1, _] = circular_pair(1.0, 1.0, 1.0, 16, 0.01);
        let other = Trajectory::new(
            Flavor::Newton,
            1.0,
            0.0,
            0.01,
            f1.raw_points().to_vec(),
            FrameId(1),
        )
        .unwrap();
        assert!(matches!(
            aggregate(&[f1, other], 0.05, SpaceOrientation::Oriented),
            Err(DynamicsError::FrameMismatch)
        ));
    }
}
