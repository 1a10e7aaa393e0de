//! Line-oriented scenario files: `[section]` headers with `key = value`
//! entries, `#` comments, and blank lines. Sections declare the flavor,
//! named frames, particles with their force fields and integration
//! parameters, and verification requests (seeds mandatory).

use crate::CliError;
use mechspace_core::dynamics::{
    validate_initial_data, AntisymmetricMomentumField, ForceField, InverseSquareField,
    IsotropicOscillator, ZeroField,
};
use mechspace_core::space::{FiveVector, Flavor, FrameId};
use nalgebra::Vector5;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct ParticleSpec {
    pub frame: FrameId,
    pub frame_name: String,
    pub mass: f64,
    pub point: FiveVector,
    pub momentum: FiveVector,
    pub field: FieldSpec,
    pub step: f64,
    pub steps: usize,
    pub derived: bool,
    pub concurrent: bool,
}

#[derive(Debug, Clone)]
pub enum FieldSpec {
    Zero,
    IsotropicOscillator { stiffness: f64 },
    InverseSquare { strength: f64 },
    AntisymmetricRelativistic { strength: f64 },
}

impl FieldSpec {
    pub fn name(&self) -> &'static str {
        match self {
            FieldSpec::Zero => "zero",
            FieldSpec::IsotropicOscillator { .. } => "isotropic-oscillator",
            FieldSpec::InverseSquare { .. } => "inverse-square",
            FieldSpec::AntisymmetricRelativistic { .. } => "antisymmetric-relativistic",
        }
    }

    pub fn build(&self, flavor: Flavor) -> Box<dyn ForceField> {
        match self {
            FieldSpec::Zero => Box::new(ZeroField { flavor }),
            FieldSpec::IsotropicOscillator { stiffness } => Box::new(IsotropicOscillator {
                stiffness: *stiffness,
            }),
            FieldSpec::InverseSquare { strength } => Box::new(InverseSquareField {
                strength: *strength,
            }),
            FieldSpec::AntisymmetricRelativistic { strength } => {
                Box::new(AntisymmetricMomentumField {
                    strength: *strength,
                })
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifySpec {
    pub suite: String,
    pub seed: u64,
    pub trials: Option<usize>,
    pub flavor: Option<Flavor>,
    pub mass: f64,
    pub mass2: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub flavor: Flavor,
    pub frames: Vec<String>,
    pub particles: Vec<ParticleSpec>,
    pub verifications: Vec<VerifySpec>,
}

struct Section {
    name: String,
    line: usize,
    entries: HashMap<String, (String, usize)>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(v, _)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key).ok_or_else(|| CliError::Parse {
            line: self.line,
            message: format!("section [{}] is missing `{key}`", self.name),
        })
    }

    fn line_of(&self, key: &str) -> usize {
        self.entries.get(key).map(|(_, l)| *l).unwrap_or(self.line)
    }
}

fn split_sections(text: &str) -> Result<Vec<Section>, CliError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(CliError::Parse {
                line: line_no,
                message: "unterminated section header".to_string(),
            })?;
            sections.push(Section {
                name: name.trim().to_string(),
                line: line_no,
                entries: HashMap::new(),
            });
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(CliError::Parse {
            line: line_no,
            message: "expected `key = value`".to_string(),
        })?;
        let section = sections.last_mut().ok_or(CliError::Parse {
            line: line_no,
            message: "entry before any [section] header".to_string(),
        })?;
        section.entries.insert(
            key.trim().to_string(),
            (value.trim().to_string(), line_no),
        );
    }
    Ok(sections)
}

fn parse_f64(s: &Section, key: &str) -> Result<f64, CliError> {
    s.require(key)?.parse::<f64>().map_err(|e| CliError::Parse {
        line: s.line_of(key),
        message: format!("bad number for `{key}`: {e}"),
    })
}

fn parse_usize(s: &Section, key: &str) -> Result<usize, CliError> {
    s.require(key)?
        .parse::<usize>()
        .map_err(|e| CliError::Parse {
            line: s.line_of(key),
            message: format!("bad integer for `{key}`: {e}"),
        })
}

fn parse_bool(s: &Section, key: &str, default: bool) -> Result<bool, CliError> {
    match s.get(key) {
        None => Ok(default),
        Some("true") => Ok(true),
        Some("false") => Ok(false),
        Some(other) => Err(CliError::Parse {
            line: s.line_of(key),
            message: format!("`{key}` must be true or false, found `{other}`"),
        }),
    }
}

pub fn parse_flavor(text: &str) -> Option<Flavor> {
    match text {
        "newton" | "n" | "newtonian" => Some(Flavor::Newton),
        "einstein" | "e" | "einsteinian" => Some(Flavor::Einstein),
        _ => None,
    }
}

fn parse_five(s: &Section, key: &str, frame: FrameId) -> Result<FiveVector, CliError> {
    let text = s.require(key)?;
    let parts: Vec<f64> = text
        .split_whitespace()
        .map(|p| p.parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Parse {
            line: s.line_of(key),
            message: format!("bad number in `{key}`: {e}"),
        })?;
    if parts.len() != 5 {
        return Err(CliError::Parse {
            line: s.line_of(key),
            message: format!("`{key}` needs 5 numbers, found {}", parts.len()),
        });
    }
    Ok(FiveVector::new(
        Vector5::from_iterator(parts),
        frame,
    ))
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, CliError> {
        let sections = split_sections(text)?;
        let mut flavor = None;
        let mut frames: Vec<String> = Vec::new();
        let mut particles = Vec::new();
        let mut verifications = Vec::new();

        for s in &sections {
            match s.name.as_str() {
                "scenario" => {
                    let text = s.require("flavor")?;
                    flavor = Some(parse_flavor(text).ok_or(CliError::Parse {
                        line: s.line_of("flavor"),
                        message: format!("unknown flavor `{text}`"),
                    })?);
                }
                "frame" => {
                    frames.push(s.require("name")?.to_string());
                }
                "particle" | "verify" => {} // second pass below
                other => {
                    return Err(CliError::Parse {
                        line: s.line,
                        message: format!("unknown section [{other}]"),
                    })
                }
            }
        }

        let flavor = flavor.ok_or(CliError::Parse {
            line: 1,
            message: "missing [scenario] section with a flavor".to_string(),
        })?;
        if frames.is_empty() {
            frames.push("standard".to_string());
        }

        for s in &sections {
            match s.name.as_str() {
                "particle" => particles.push(Self::parse_particle(s, flavor, &frames)?),
                "verify" => verifications.push(Self::parse_verify(s)?),
                _ => {}
            }
        }

        let scenario = Scenario {
            flavor,
            frames,
            particles,
            verifications,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    fn parse_particle(
        s: &Section,
        flavor: Flavor,
        frames: &[String],
    ) -> Result<ParticleSpec, CliError> {
        let frame_name = s.require("frame")?.to_string();
        let frame_index = frames
            .iter()
            .position(|f| *f == frame_name)
            .ok_or(CliError::Validation {
                message: format!("particle references undeclared frame `{frame_name}`"),
            })?;
        let frame = FrameId(frame_index as u32);

        let field = match s.require("field")? {
            "zero" => FieldSpec::Zero,
            "isotropic-oscillator" => FieldSpec::IsotropicOscillator {
                stiffness: parse_f64(s, "param")?,
            },
            "inverse-square" => FieldSpec::InverseSquare {
                strength: parse_f64(s, "param")?,
            },
            "antisymmetric-relativistic" => FieldSpec::AntisymmetricRelativistic {
                strength: parse_f64(s, "param")?,
            },
            other => {
                return Err(CliError::Parse {
                    line: s.line_of("field"),
                    message: format!("unknown force field `{other}`"),
                })
            }
        };
        let field_flavor = match field {
            FieldSpec::Zero => flavor,
            FieldSpec::IsotropicOscillator { .. } | FieldSpec::InverseSquare { .. } => {
                Flavor::Newton
            }
            FieldSpec::AntisymmetricRelativistic { .. } => Flavor::Einstein,
        };
        if field_flavor != flavor {
            return Err(CliError::Validation {
                message: format!(
                    "force field `{}` belongs to the {field_flavor} theory, scenario is {flavor}",
                    field.name()
                ),
            });
        }

        Ok(ParticleSpec {
            frame,
            frame_name,
            mass: parse_f64(s, "mass")?,
            point: parse_five(s, "point", frame)?,
            momentum: parse_five(s, "momentum", frame)?,
            field,
            step: parse_f64(s, "step")?,
            steps: parse_usize(s, "steps")?,
            derived: parse_bool(s, "derived", false)?,
            concurrent: parse_bool(s, "concurrent", true)?,
        })
    }

    fn parse_verify(s: &Section) -> Result<VerifySpec, CliError> {
        let seed = s
            .require("seed")?
            .parse::<u64>()
            .map_err(|e| CliError::Parse {
                line: s.line_of("seed"),
                message: format!("bad seed: {e}"),
            })?;
        let trials = match s.get("trials") {
            None => None,
            Some(_) => Some(parse_usize(s, "trials")?),
        };
        let flavor = match s.get("flavor") {
            None => None,
            Some(text) => Some(parse_flavor(text).ok_or(CliError::Parse {
                line: s.line_of("flavor"),
                message: format!("unknown flavor `{text}`"),
            })?),
        };
        let mass = match s.get("mass") {
            None => 1.0,
            Some(_) => parse_f64(s, "mass")?,
        };
        let mass2 = match s.get("mass2") {
            None => None,
            Some(_) => Some(parse_f64(s, "mass2")?),
        };
        Ok(VerifySpec {
            suite: s.require("suite")?.to_string(),
            seed,
            trials,
            flavor,
            mass,
            mass2,
        })
    }

    /// Load-time validation: every particle's initial data must satisfy the
    /// integration preconditions for its flavor.
    fn validate(&self) -> Result<(), CliError> {
        for (i, p) in self.particles.iter().enumerate() {
            if (p.point.mass_component() - p.mass).abs() > 1e-9 * p.mass.abs().max(1.0) {
                return Err(CliError::Validation {
                    message: format!(
                        "particle {}: declared mass {} disagrees with the point's mass coordinate {}",
                        i + 1,
                        p.mass,
                        p.point.mass_component()
                    ),
                });
            }
            validate_initial_data(self.flavor, &p.point, &p.momentum).map_err(|e| {
                CliError::Validation {
                    message: format!("particle {}: {e}", i + 1),
                }
            })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "\
# demo
[scenario]
flavor = newton

[frame]
name = lab

[particle]
frame = lab
mass = 1.5
point = 0 0 0 0 1.5
momentum = 1.5 0 0 1.5 0
field = zero
step = 0.001
steps = 100

[verify]
suite = measure
seed = 7
trials = 100
";

    #[test]
    fn parses_a_complete_scenario() {
        let s = Scenario::parse(GOOD).unwrap();
        assert_eq!(s.flavor, Flavor::Newton);
        assert_eq!(s.frames, vec!["lab"]);
        assert_eq!(s.particles.len(), 1);
        assert_eq!(s.verifications.len(), 1);
        assert_eq!(s.verifications[0].seed, 7);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "[scenario]\nflavor = newton\n\n[particle]\nmass\n";
        match Scenario::parse(bad) {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_frame_is_a_validation_error() {
        let bad = GOOD.replace("frame = lab", "frame = ship");
        assert!(matches!(
            Scenario::parse(&bad),
            Err(CliError::Validation { .. })
        ));
    }

    #[test]
    fn off_shell_relativistic_momentum_names_the_constraint() {
        let text = "\
[scenario]
flavor = einstein

[frame]
name = lab

[particle]
frame = lab
mass = 1
point = 0 0 0 0 1
momentum = 0.5 0 0 1 0
field = zero
step = 0.001
steps = 10
";
        match Scenario::parse(text) {
            Err(CliError::Validation { message }) => {
                assert!(message.contains("mass shell"), "got: {message}");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn missing_seed_is_rejected() {
        let bad = GOOD.replace("seed = 7", "# seed omitted");
        assert!(matches!(Scenario::parse(&bad), Err(CliError::Parse { .. })));
    }
}
