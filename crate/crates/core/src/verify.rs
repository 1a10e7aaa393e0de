//! Seed-driven verification sweeps over the structural claims: invariance
//! of the evaluation maps, uniqueness of the extended-group factorization,
//! the measure-line identities, the light-cone reflection construction, the
//! ball model of the velocity space, and the dynamics oracles. The
//! command-line front end and the acceptance tests share these entry points.

use crate::dynamics::{
    derive_kinematics, integrate, AntisymmetricMomentumField, DynamicsError, IsotropicOscillator,
    ZeroField,
};
use crate::einstein::{
    classify_causal, hyperbolic_distance, sample_unit_timelike, CausalClass, LorentzianPlane,
    SpacelikeSubspace,
};
use crate::groups::{
    classify_subgroup, factorize_extended, rng_from_seed, ExtendedElement, GroupElement,
    GroupFamily,
};
use crate::measure::{parse_dimension, Dimension, Quantity};
use crate::newton::{classify_orbit, OrbitClass};
use crate::report::Report;
use crate::space::{FiveVector, Flavor, FrameId};
use nalgebra::{Vector3, Vector4, Vector5};
use num_rational::Rational64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Relative drift bound for the invariance and factorization sweeps.
pub const TOL_INVARIANCE: f64 = 1e-12;

fn uniform5(rng: &mut ChaCha8Rng, scale: f64) -> Vector5<f64> {
    Vector5::from_fn(|_, _| rng.random_range(-scale..scale))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[derive(Debug, Clone)]
pub struct InvarianceOutcome {
    pub flavor: Flavor,
    pub elements: usize,
    pub points: usize,
    pub seed: u64,
    pub max_m_drift: f64,
    pub max_mt_drift: f64,
    pub max_md_drift: f64,
    pub class_mismatches: usize,
    pub tolerance: f64,
}

impl InvarianceOutcome {
    pub fn pass(&self) -> bool {
        self.max_m_drift < self.tolerance
            && self.max_mt_drift < self.tolerance
            && self.max_md_drift < self.tolerance
            && self.class_mismatches == 0
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("invariance");
        r.line("flavor", self.flavor);
        r.line("elements", self.elements);
        r.line("points", self.points);
        r.line("seed", self.seed);
        r.number("max_m_drift", self.max_m_drift);
        r.number("max_mt_drift", self.max_mt_drift);
        r.number("max_md_drift", self.max_md_drift);
        r.line("class_mismatches", self.class_mismatches);
        r.number("tolerance", self.tolerance);
        r.verdict("evaluation_maps_invariant", self.pass());
        r
    }
}

fn orbit_match(a: &OrbitClass, b: &OrbitClass) -> bool {
    match (a, b) {
        (OrbitClass::HyperplaneM(x), OrbitClass::HyperplaneM(y))
        | (OrbitClass::HyperplaneE(x), OrbitClass::HyperplaneE(y))
        | (OrbitClass::SphereS(x), OrbitClass::SphereS(y)) => {
            rel(x.magnitude, y.magnitude) < 1e-9
        }
        (OrbitClass::Origin, OrbitClass::Origin) => true,
        _ => false,
    }
}

fn causal_match(a: &CausalClass, b: &CausalClass) -> bool {
    match (a, b) {
        (CausalClass::HyperplaneM(x), CausalClass::HyperplaneM(y))
        | (CausalClass::QuadricS(x), CausalClass::QuadricS(y)) => {
            rel(x.magnitude, y.magnitude) < 1e-9
        }
        (
            CausalClass::HyperboloidH { mt: x, sheet: s1 },
            CausalClass::HyperboloidH { mt: y, sheet: s2 },
        ) => s1 == s2 && rel(x.magnitude, y.magnitude) < 1e-9,
        (CausalClass::LightCone, CausalClass::LightCone) => true,
        (CausalClass::Origin, CausalClass::Origin) => true,
        _ => false,
    }
}

/// Random group elements against random points: the mass, mass-time, and
/// mass-distance evaluations must not move, and the orbit label (with its
/// parameter, and for Lorentzian hyperboloids the sheet) must be preserved.
pub fn invariance_suite(
    flavor: Flavor,
    elements: usize,
    points: usize,
    seed: u64,
) -> InvarianceOutcome {
    let mut rng = rng_from_seed(seed);
    let family = match flavor {
        Flavor::Newton => GroupFamily::Galilei,
        Flavor::Einstein => GroupFamily::Poincare,
    };
    let mut out = InvarianceOutcome {
        flavor,
        elements,
        points,
        seed,
        max_m_drift: 0.0,
        max_mt_drift: 0.0,
        max_md_drift: 0.0,
        class_mismatches: 0,
        tolerance: TOL_INVARIANCE,
    };
    for e in 0..elements {
        let g = crate::groups::sample(family, seed.wrapping_add(e as u64), 1.0);
        for _ in 0..points {
            match flavor {
                Flavor::Newton => newton_invariance_trial(&g, &mut rng, &mut out),
                Flavor::Einstein => einstein_invariance_trial(&g, &mut rng, &mut out),
            }
        }
    }
    out
}

fn newton_invariance_trial(g: &GroupElement, rng: &mut ChaCha8Rng, out: &mut InvarianceOutcome) {
    use crate::newton::{eval_m, eval_md, eval_mt};

    let generic = FiveVector::new(uniform5(rng, 2.0), FrameId::STANDARD);
    let moved = g.apply(&generic);
    out.max_m_drift = out
        .max_m_drift
        .max(rel(eval_m(&moved).magnitude, eval_m(&generic).magnitude));
    if !orbit_match(&classify_orbit(&moved), &classify_orbit(&generic)) {
        out.class_mismatches += 1;
    }

    let mut in_m0 = uniform5(rng, 2.0);
    in_m0[4] = 0.0;
    let p = FiveVector::new(in_m0, FrameId::STANDARD);
    let moved = g.apply(&p);
    out.max_mt_drift = out.max_mt_drift.max(rel(
        eval_mt(&moved).expect("stays in M_0").magnitude,
        eval_mt(&p).expect("in M_0").magnitude,
    ));
    if !orbit_match(&classify_orbit(&moved), &classify_orbit(&p)) {
        out.class_mismatches += 1;
    }

    let mut in_e0 = uniform5(rng, 2.0);
    in_e0[3] = 0.0;
    in_e0[4] = 0.0;
    let p = FiveVector::new(in_e0, FrameId::STANDARD);
    let moved = g.apply(&p);
    out.max_md_drift = out.max_md_drift.max(rel(
        eval_md(&moved).expect("stays in E_0").magnitude,
        eval_md(&p).expect("in E_0").magnitude,
    ));
    if !orbit_match(&classify_orbit(&moved), &classify_orbit(&p)) {
        out.class_mismatches += 1;
    }
}

fn einstein_invariance_trial(g: &GroupElement, rng: &mut ChaCha8Rng, out: &mut InvarianceOutcome) {
    use crate::einstein::{eval_m, eval_md, eval_mt};

    let generic = FiveVector::new(uniform5(rng, 2.0), FrameId::STANDARD);
    let moved = g.apply(&generic);
    out.max_m_drift = out
        .max_m_drift
        .max(rel(eval_m(&moved).magnitude, eval_m(&generic).magnitude));
    if !causal_match(&classify_causal(&moved), &classify_causal(&generic)) {
        out.class_mismatches += 1;
    }

    // Timelike representative: scaled unit timelike vector, either sheet.
    let scale = rng.random_range(0.2..2.0);
    let sign = if rng.random_range(0.0..1.0) < 0.5 { -1.0 } else { 1.0 };
    let v = sample_unit_timelike(rng, 1.5) * scale * sign;
    let p = FiveVector::einsteinian(v, 0.0, FrameId::STANDARD);
    let moved = g.apply(&p);
    out.max_mt_drift = out.max_mt_drift.max(rel(
        eval_mt(&moved).expect("stays timelike").magnitude,
        eval_mt(&p).expect("timelike").magnitude,
    ));
    if !causal_match(&classify_causal(&moved), &classify_causal(&p)) {
        out.class_mismatches += 1;
    }

    // Spacelike representative.
    let x = Vector4::new(
        rng.random_range(1.0..2.0),
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
    );
    let p = FiveVector::einsteinian(x, 0.0, FrameId::STANDARD);
    if crate::minkowski::eta(&x, &x) > 0.0 {
        let moved = g.apply(&p);
        out.max_md_drift = out.max_md_drift.max(rel(
            eval_md(&moved).expect("stays spacelike").magnitude,
            eval_md(&p).expect("spacelike").magnitude,
        ));
        if !causal_match(&classify_causal(&moved), &classify_causal(&p)) {
            out.class_mismatches += 1;
        }
    }

    // Lightlike rays stay on the cone.
    let n = Vector3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    );
    if n.norm() > 1e-6 {
        let n = n.normalize();
        let null = FiveVector::einsteinian(Vector4::new(n.x, n.y, n.z, 1.0), 0.0, FrameId::STANDARD);
        if !causal_match(&classify_causal(&g.apply(&null)), &CausalClass::LightCone) {
            out.class_mismatches += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct FactorizationOutcome {
    pub family: GroupFamily,
    pub trials: usize,
    pub seed: u64,
    pub max_reconstruction: f64,
    pub max_uniqueness: f64,
    pub reconstruction_tolerance: f64,
    pub uniqueness_tolerance: f64,
}

impl FactorizationOutcome {
    pub fn pass(&self) -> bool {
        self.max_reconstruction < self.reconstruction_tolerance
            && self.max_uniqueness < self.uniqueness_tolerance
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("factorization");
        r.line("family", format!("{:?}", self.family));
        r.line("trials", self.trials);
        r.line("seed", self.seed);
        r.number("max_reconstruction_residual", self.max_reconstruction);
        r.number("max_uniqueness_residual", self.max_uniqueness);
        r.number("reconstruction_tolerance", self.reconstruction_tolerance);
        r.number("uniqueness_tolerance", self.uniqueness_tolerance);
        r.verdict("factorization_exact_and_unique", self.pass());
        r
    }
}

/// Factorize random extended elements, rebuild them from the parts, and
/// factorize again: the reconstruction must match entrywise and the two
/// factorizations must agree.
pub fn factorization_suite(family: GroupFamily, trials: usize, seed: u64) -> FactorizationOutcome {
    let mut out = FactorizationOutcome {
        family,
        trials,
        seed,
        max_reconstruction: 0.0,
        max_uniqueness: 0.0,
        reconstruction_tolerance: TOL_INVARIANCE,
        uniqueness_tolerance: 1e-10,
    };
    for t in 0..trials {
        let gbar = crate::groups::sample_extended(family, seed.wrapping_add(t as u64), 1.0);
        let (c, g) = factorize_extended(&gbar).expect("sampled extended element factorizes");
        let rebuilt = rebuild(&c, &g);
        let scale = gbar.matrix().amax();
        let recon = (rebuilt.matrix() - gbar.matrix()).amax() / scale.max(1.0);
        out.max_reconstruction = out.max_reconstruction.max(recon);

        let (c2, g2) = factorize_extended(&rebuilt).expect("rebuilt element factorizes");
        let unique = scale_distance(&c, &c2).max((g.matrix() - g2.matrix()).amax());
        out.max_uniqueness = out.max_uniqueness.max(unique);
    }
    out
}

fn rebuild(c: &crate::groups::ScaleElement, g: &GroupElement) -> ExtendedElement {
    use crate::groups::{
        ExtendedGalileiElement, ExtendedPoincareElement, ScaleElement,
    };
    match (c, g) {
        (ScaleElement::Galilei(c), GroupElement::Galilei(g)) => {
            ExtendedElement::Galilei(ExtendedGalileiElement::from_parts(c, g))
        }
        (ScaleElement::Poincare(c), GroupElement::Poincare(p)) => {
            ExtendedElement::Poincare(ExtendedPoincareElement::from_parts(c, p))
        }
        _ => unreachable!("factorization preserves the family"),
    }
}

fn scale_distance(a: &crate::groups::ScaleElement, b: &crate::groups::ScaleElement) -> f64 {
    use crate::groups::ScaleElement;
    match (a, b) {
        (ScaleElement::Galilei(a), ScaleElement::Galilei(b)) => (a.spatial - b.spatial)
            .abs()
            .max((a.time - b.time).abs())
            .max((a.mass - b.mass).abs()),
        (ScaleElement::Poincare(a), ScaleElement::Poincare(b)) => {
            (a.spacetime - b.spacetime).abs().max((a.mass - b.mass).abs())
        }
        _ => f64::INFINITY,
    }
}

#[derive(Debug, Clone)]
pub struct MeasureOutcome {
    pub dimensions: usize,
    pub roundtrips: usize,
    pub seed: u64,
    pub identity_failures: usize,
    pub roundtrip_failures: usize,
    pub parity_failures: usize,
}

impl MeasureOutcome {
    pub fn pass(&self) -> bool {
        self.identity_failures == 0 && self.roundtrip_failures == 0 && self.parity_failures == 0
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("measure-algebra");
        r.line("dimensions", self.dimensions);
        r.line("roundtrips", self.roundtrips);
        r.line("seed", self.seed);
        r.line("identity_failures", self.identity_failures);
        r.line("roundtrip_failures", self.roundtrip_failures);
        r.line("parity_failures", self.parity_failures);
        r.verdict("measure_identities_exact", self.pass());
        r
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational64 {
    Rational64::new(rng.random_range(-12i64..=12), rng.random_range(1i64..=6))
}

fn random_dimension(rng: &mut ChaCha8Rng) -> Dimension {
    let mut d = Dimension::dimensionless();
    for base in crate::measure::BaseLine::ALL {
        d = d.mul(&Dimension::base(base).pow(random_rational(rng)));
    }
    if rng.random_range(0.0..1.0) < 0.3 {
        d = d.abs();
    }
    d
}

/// Exact identity checks on generated dimensions (zero tolerance: exponents
/// are exact rationals), the orientation parity rule, and the parser
/// round-trip through the canonical rendering.
pub fn measure_suite(dimensions: usize, roundtrips: usize, seed: u64) -> MeasureOutcome {
    let mut rng = rng_from_seed(seed);
    let mut out = MeasureOutcome {
        dimensions,
        roundtrips,
        seed,
        identity_failures: 0,
        roundtrip_failures: 0,
        parity_failures: 0,
    };

    for _ in 0..dimensions {
        let a = random_dimension(&mut rng);
        let b = random_dimension(&mut rng);
        let v = random_dimension(&mut rng);

        // D (x) (B / D) = B and (V/A)/B = V/(A (x) B), on exponents.
        if !a.mul(&b.div(&a)).same_exponents(&b) {
            out.identity_failures += 1;
        }
        if !v.div(&a).div(&b).same_exponents(&v.div(&a.mul(&b))) {
            out.identity_failures += 1;
        }
        // Roots invert powers for every index up to 12.
        for n in 1..=12u32 {
            let powered = a.pow(Rational64::from_integer(n as i64));
            if !powered.root(n).same_exponents(&a) {
                out.identity_failures += 1;
            }
        }
    }

    for base in crate::measure::BaseLine::ALL {
        for p in -12i64..=12 {
            let d = Dimension::base(base).pow(Rational64::from_integer(p));
            let expected = base.oriented() || p % 2 == 0;
            if d.is_oriented() != expected {
                out.parity_failures += 1;
            }
        }
    }

    for _ in 0..roundtrips {
        let d = random_dimension(&mut rng);
        match parse_dimension(&d.pretty()) {
            Ok(parsed) if parsed == d => {}
            _ => out.roundtrip_failures += 1,
        }
    }

    out
}

#[derive(Debug, Clone)]
pub struct LightOutcome {
    pub planes: usize,
    pub conjugations: usize,
    pub seed: u64,
    pub speed: Quantity,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl LightOutcome {
    pub fn pass(&self) -> bool {
        self.speed.magnitude == 1.0 && self.max_residual < self.tolerance
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("velocity-of-light");
        r.line("planes", self.planes);
        r.line("conjugations", self.conjugations);
        r.line("seed", self.seed);
        r.line("speed", &self.speed);
        r.number("max_reflection_residual", self.max_residual);
        r.number("tolerance", self.tolerance);
        r.verdict("speed_is_one_in_every_frame", self.pass());
        r
    }
}

/// The light-cone reflection construction on random Lorentzian planes, and
/// again after conjugating the spanning vectors by random extended
/// elements: the unit hyperbola point must land on the unit quadric, so the
/// speed of light is 1 independent of the plane and the frame.
pub fn light_suite(planes: usize, conjugations: usize, seed: u64) -> LightOutcome {
    let mut rng = rng_from_seed(seed);
    let mut max_residual: f64 = 0.0;

    let spanning = |rng: &mut ChaCha8Rng| {
        let a = sample_unit_timelike(rng, 2.0);
        let b = Vector4::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        (a, b)
    };

    let mut checked = 0usize;
    while checked < planes {
        let (a, b) = spanning(&mut rng);
        if let Ok(plane) = LorentzianPlane::from_spanning(&a, &b) {
            max_residual = max_residual.max(plane.reflection_residual());
            checked += 1;
        }
    }

    let mut done = 0usize;
    let mut attempt = 0u64;
    while done < conjugations {
        let gbar = crate::groups::sample_extended(
            GroupFamily::Poincare,
            seed.wrapping_add(1000 + attempt),
            1.0,
        );
        attempt += 1;
        let linear = match &gbar {
            ExtendedElement::Poincare(p) => p.linear(),
            _ => unreachable!(),
        };
        let (a, b) = spanning(&mut rng);
        // The extended element acts linearly on M_0; the transformed span
        // determines the same construction in the new frame.
        if let Ok(plane) = LorentzianPlane::from_spanning(&(linear * a), &(linear * b)) {
            max_residual = max_residual.max(plane.reflection_residual());
            done += 1;
        }
    }

    LightOutcome {
        planes,
        conjugations,
        seed,
        speed: crate::einstein::speed_of_light(),
        max_residual,
        tolerance: 1e-12,
    }
}

#[derive(Debug, Clone)]
pub struct CayleyOutcome {
    pub samples: usize,
    pub boosts: usize,
    pub seed: u64,
    pub max_ball_norm: f64,
    pub outside_ball: usize,
    pub monotone: bool,
    pub max_distance_drift: f64,
    pub distance_tolerance: f64,
}

impl CayleyOutcome {
    pub fn pass(&self) -> bool {
        self.outside_ball == 0
            && self.max_ball_norm < 1.0
            && self.monotone
            && self.max_distance_drift < self.distance_tolerance
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("cayley-hyperbolic");
        r.line("samples", self.samples);
        r.line("boosts", self.boosts);
        r.line("seed", self.seed);
        r.number("max_ball_norm", self.max_ball_norm);
        r.line("outside_ball", self.outside_ball);
        r.line("norm_monotone_in_rapidity", self.monotone);
        r.number("max_distance_drift", self.max_distance_drift);
        r.number("distance_tolerance", self.distance_tolerance);
        r.verdict("ball_model_isometric", self.pass());
        r
    }
}

/// Sampled four-velocities map inside the open unit ball, the image norm
/// grows monotonically with rapidity, and boosts act isometrically on the
/// hyperboloid distance.
pub fn cayley_suite(samples: usize, boosts: usize, seed: u64) -> CayleyOutcome {
    let mut rng = rng_from_seed(seed);
    let e = SpacelikeSubspace::standard();
    let mut out = CayleyOutcome {
        samples,
        boosts,
        seed,
        max_ball_norm: 0.0,
        outside_ball: 0,
        monotone: true,
        max_distance_drift: 0.0,
        distance_tolerance: 1e-9,
    };

    for _ in 0..samples {
        let v = sample_unit_timelike(&mut rng, 5.0);
        let image = crate::einstein::cayley_map4(&e, &v).expect("four-velocities are off E");
        let norm = image.norm();
        out.max_ball_norm = out.max_ball_norm.max(norm);
        if norm >= 1.0 {
            out.outside_ball += 1;
        }
    }

    // Image norm is tanh(rapidity): strictly increasing toward the boundary.
    let mut last = -1.0f64;
    for k in 0..60 {
        let chi = 0.2 * k as f64;
        let v = Vector4::new(chi.sinh(), 0.0, 0.0, chi.cosh());
        let norm = crate::einstein::cayley_map4(&e, &v).unwrap().norm();
        if norm <= last {
            out.monotone = false;
        }
        last = norm;
    }

    for b in 0..boosts {
        let g = crate::groups::sample(GroupFamily::Poincare, seed.wrapping_add(500 + b as u64), 1.0);
        let l = match &g {
            GroupElement::Poincare(p) => p.lorentz(),
            _ => unreachable!(),
        };
        let v = sample_unit_timelike(&mut rng, 2.0);
        let w = sample_unit_timelike(&mut rng, 2.0);
        let before = hyperbolic_distance(&v, &w);
        let after = hyperbolic_distance(&(l * v), &(l * w));
        out.max_distance_drift = out.max_distance_drift.max((before - after).abs());
    }

    out
}

#[derive(Debug, Clone)]
pub struct DynamicsOutcome {
    pub seed: u64,
    pub straight_line_deviation: f64,
    pub oscillator_error: f64,
    pub unit_velocity_drift: f64,
    pub orthogonality_residual: f64,
    pub covariance_residual: f64,
}

impl DynamicsOutcome {
    pub fn pass(&self) -> bool {
        self.straight_line_deviation < 1e-12
            && self.oscillator_error < 1e-6
            && self.unit_velocity_drift < 1e-8
            && self.orthogonality_residual < 1e-6
            && self.covariance_residual < 1e-10
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("dynamics");
        r.line("seed", self.seed);
        r.number("straight_line_deviation", self.straight_line_deviation);
        r.number("oscillator_error", self.oscillator_error);
        r.number("unit_velocity_drift", self.unit_velocity_drift);
        r.number("orthogonality_residual", self.orthogonality_residual);
        r.number("covariance_residual", self.covariance_residual);
        r.verdict("straight_within_1e-12", self.straight_line_deviation < 1e-12);
        r.verdict("oscillator_within_1e-6", self.oscillator_error < 1e-6);
        r.verdict("unit_velocity_within_1e-8", self.unit_velocity_drift < 1e-8);
        r.verdict(
            "acceleration_orthogonal_within_1e-6",
            self.orthogonality_residual < 1e-6,
        );
        r.verdict("covariance_within_1e-10", self.covariance_residual < 1e-10);
        r
    }
}

/// The dynamics oracles: free motion against the analytic line, the
/// oscillator against its closed form, the relativistic kinematic
/// identities along an integrated path, and commutation of free integration
/// with the group action.
pub fn dynamics_suite(seed: u64) -> Result<DynamicsOutcome, DynamicsError> {
    let frame = FrameId::STANDARD;

    // Free particle vs the analytic straight line, 1e3 steps.
    let mass = 1.25;
    let x0 = Vector3::new(0.3, -0.7, 0.1);
    let v0 = Vector3::new(0.9, 0.4, -0.2);
    let point = FiveVector::newtonian(x0 * mass, 0.0, mass, frame);
    let momentum = FiveVector::newtonian(v0 * mass, mass, 0.0, frame);
    let free = integrate(&ZeroField { flavor: Flavor::Newton }, &point, &momentum, 1e-3, 1000)?;
    let mut straight_dev: f64 = 0.0;
    for i in 0..free.len() {
        let t = free.param(i);
        let expect = x0 + v0 * t;
        straight_dev = straight_dev.max((free.point(i).spatial() / mass - expect).amax());
    }

    // Oscillator vs the closed form over one period.
    let k = 2.0;
    let omega = (k / mass).sqrt();
    let period = std::f64::consts::TAU / omega;
    let osc = integrate(
        &IsotropicOscillator { stiffness: k },
        &point,
        &momentum,
        period / 1000.0,
        1000,
    )?;
    let mut osc_err: f64 = 0.0;
    for i in 0..osc.len() {
        let t = osc.param(i);
        let expect = x0 * (omega * t).cos() + v0 * ((omega * t).sin() / omega);
        osc_err = osc_err.max((osc.point(i).spatial() / mass - expect).amax());
    }

    // Relativistic identities along a magnetic-type trajectory.
    let m_rel = 1.0;
    let chi = 0.8f64;
    let rel_point = FiveVector::einsteinian(Vector4::zeros(), m_rel, frame);
    let rel_momentum = FiveVector::einsteinian(
        Vector4::new(m_rel * chi.sinh(), 0.0, 0.0, m_rel * chi.cosh()),
        0.0,
        frame,
    );
    let rel = integrate(
        &AntisymmetricMomentumField { strength: 0.4 },
        &rel_point,
        &rel_momentum,
        1e-3,
        10_000,
    )?;
    let kin = derive_kinematics(&rel)?;
    let mut unit_drift: f64 = 0.0;
    let mut ortho: f64 = 0.0;
    for (v, a) in kin.velocity.iter().zip(&kin.acceleration) {
        let sv = Vector4::new(v[0], v[1], v[2], v[3]);
        let sa = Vector4::new(a[0], a[1], a[2], a[3]);
        unit_drift = unit_drift.max(((-crate::minkowski::eta(&sv, &sv)).sqrt() - 1.0).abs());
        ortho = ortho.max(crate::minkowski::eta(&sa, &sv).abs());
    }

    // Free integration commutes with the group action.
    let mut covariance: f64 = 0.0;
    for s in 0..10u64 {
        let g = crate::groups::sample(GroupFamily::Galilei, seed.wrapping_add(s), 1.0);
        let direct = integrate(
            &ZeroField { flavor: Flavor::Newton },
            &g.apply(&point),
            &g.apply(&momentum),
            1e-2,
            100,
        )?;
        let plain = integrate(&ZeroField { flavor: Flavor::Newton }, &point, &momentum, 1e-2, 100)?;
        for i in (0..direct.len()).step_by(10) {
            covariance =
                covariance.max((g.apply(&plain.point(i)).coords - direct.point(i).coords).amax());
        }
    }

    Ok(DynamicsOutcome {
        seed,
        straight_line_deviation: straight_dev,
        oscillator_error: osc_err,
        unit_velocity_drift: unit_drift,
        orthogonality_residual: ortho,
        covariance_residual: covariance,
    })
}

#[derive(Debug, Clone)]
pub struct NormalityOutcome {
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
}

impl NormalityOutcome {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("normal-subgroups");
        r.line("trials", self.trials);
        r.line("seed", self.seed);
        r.line("failures", self.failures);
        r.verdict("conjugation_preserves_normal_tags", self.pass());
        r
    }
}

/// Conjugating representatives of the normal subgroups by random group
/// elements must preserve their lattice tags.
pub fn normality_suite(trials: usize, seed: u64) -> NormalityOutcome {
    use crate::groups::{GalileiElement, PoincareElement, SubgroupTag};
    let mut rng = rng_from_seed(seed);
    let mut failures = 0usize;
    for t in 0..trials {
        let g = crate::groups::sample(GroupFamily::Galilei, seed.wrapping_add(t as u64), 1.0);
        let x = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let reps: Vec<(SubgroupTag, GalileiElement)> = vec![
            (SubgroupTag::T3, GalileiElement::translation(x, 0.0)),
            (SubgroupTag::T4, GalileiElement::translation(x, 0.5)),
            (
                SubgroupTag::BT3,
                GalileiElement::boost(x)
                    .compose(&GalileiElement::translation(x * 0.5, 0.0))
                    .expect("boost compose translation"),
            ),
            (
                SubgroupTag::BT4,
                GalileiElement::boost(x)
                    .compose(&GalileiElement::translation(x, 0.25))
                    .expect("boost compose translation"),
            ),
            (
                SubgroupTag::SOBT3,
                GalileiElement::new(crate::groups::sample_rotation(&mut rng), x, x, 0.0)
                    .expect("rotation block"),
            ),
        ];
        for (tag, n) in reps {
            let conj = g
                .compose(&GroupElement::Galilei(n))
                .and_then(|gn| gn.compose(&g.inverse()));
            match conj {
                Ok(c) if classify_subgroup(&c).contains(&tag) => {}
                _ => failures += 1,
            }
        }

        let p = crate::groups::sample(GroupFamily::Poincare, seed.wrapping_add(5000 + t as u64), 1.0);
        let n = GroupElement::Poincare(PoincareElement::translation_element(Vector4::new(
            x.x, x.y, x.z, 0.3,
        )));
        let conj = p.compose(&n).and_then(|pn| pn.compose(&p.inverse()));
        match conj {
            Ok(c) if classify_subgroup(&c).contains(&SubgroupTag::T4) => {}
            _ => failures += 1,
        }
    }
    NormalityOutcome {
        trials,
        seed,
        failures,
    }
}
