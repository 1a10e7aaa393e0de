//! Exact algebra of one-dimensional real linear spaces ("measure lines").
//!
//! A physical dimension is represented as a vector of exact rational exponents
//! over the three primitive lines `kg`, `kgs`, `kgm` (mass, mass-time,
//! mass-distance), together with an `absolute` flag recording passage through
//! the absolute-value construction. Distance and time are derived:
//! `[m] = |kgm/kg|` and `[s] = kgs/kg`.
//!
//! Orientation is not stored; it is computed from the parity rules (even
//! integer powers of a line are oriented, `kgm` is oriented as a base line,
//! `kg` and `kgs` are not) together with the explicit absolute flag. This
//! makes dimension equality exact and decidable.

mod parse;

pub use parse::{parse_dimension, DimParseError};

use num_rational::Rational64;
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

/// The three primitive measure lines.
///
/// `Kgm` labels the family of invariant spheres/quadrics and is oriented
/// (its labels form the nonnegative half of an oriented line); `Kg` and
/// `Kgs` label invariant hyperplanes and are unoriented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseLine {
    Kg,
    Kgs,
    Kgm,
}

impl BaseLine {
    pub const ALL: [BaseLine; 3] = [BaseLine::Kg, BaseLine::Kgs, BaseLine::Kgm];

    pub fn symbol(self) -> &'static str {
        match self {
            BaseLine::Kg => "kg",
            BaseLine::Kgs => "kgs",
            BaseLine::Kgm => "kgm",
        }
    }

    /// Whether the base line carries a canonical orientation.
    pub fn oriented(self) -> bool {
        matches!(self, BaseLine::Kgm)
    }

    fn index(self) -> usize {
        match self {
            BaseLine::Kg => 0,
            BaseLine::Kgs => 1,
            BaseLine::Kgm => 2,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MeasureError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: Dimension, right: Dimension },
    #[error("division by zero magnitude")]
    DivisionByZero,
    #[error("even root of a negative magnitude")]
    NegativeRoot,
    #[error("negative magnitude in an absolute (nonnegative) dimension")]
    NegativeAbsolute,
}

/// A physical dimension: exact rational exponents over `{kg, kgs, kgm}` plus
/// an absolute-value flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    exps: [Rational64; 3],
    absolute: bool,
}

impl Dimension {
    pub const NONE: Dimension = Dimension {
        exps: [
            Rational64::new_raw(0, 1),
            Rational64::new_raw(0, 1),
            Rational64::new_raw(0, 1),
        ],
        absolute: false,
    };

    pub fn dimensionless() -> Dimension {
        Dimension::NONE
    }

    pub fn base(line: BaseLine) -> Dimension {
        let mut exps = [Rational64::zero(); 3];
        exps[line.index()] = Rational64::from_integer(1);
        Dimension {
            exps,
            absolute: false,
        }
    }

    pub fn kg() -> Dimension {
        Dimension::base(BaseLine::Kg)
    }

    pub fn kgs() -> Dimension {
        Dimension::base(BaseLine::Kgs)
    }

    pub fn kgm() -> Dimension {
        Dimension::base(BaseLine::Kgm)
    }

    /// The measure line of distance, `[m] = |kgm/kg|`.
    pub fn meter() -> Dimension {
        Dimension::kgm().div(&Dimension::kg()).abs()
    }

    /// The measure line of time periods, `[s] = kgs/kg`.
    pub fn second() -> Dimension {
        Dimension::kgs().div(&Dimension::kg())
    }

    pub fn exponent(&self, line: BaseLine) -> Rational64 {
        self.exps[line.index()]
    }

    pub fn is_dimensionless(&self) -> bool {
        self.exps.iter().all(|e| e.is_zero())
    }

    pub fn is_absolute(&self) -> bool {
        self.absolute
    }

    /// Orientation computed from the parity rules plus the absolute flag:
    /// a factor contributes an orientation ambiguity only when it is an
    /// unoriented base line raised to a power that is not an even integer.
    pub fn is_oriented(&self) -> bool {
        if self.absolute {
            return true;
        }
        BaseLine::ALL.iter().all(|&b| {
            let e = self.exps[b.index()];
            b.oriented() || (e.is_integer() && e.to_integer() % 2 == 0)
        })
    }

    /// Exponents agree, flags ignored. The appendix identities hold at this
    /// level (the spaces are canonically isomorphic, not equal).
    pub fn same_exponents(&self, other: &Dimension) -> bool {
        self.exps == other.exps
    }

    /// Tensor product. The result is a nonnegative half-line only when both
    /// factors are.
    pub fn mul(&self, other: &Dimension) -> Dimension {
        let mut exps = [Rational64::zero(); 3];
        for i in 0..3 {
            exps[i] = self.exps[i] + other.exps[i];
        }
        Dimension {
            exps,
            absolute: self.absolute && other.absolute,
        }
    }

    pub fn inv(&self) -> Dimension {
        let mut exps = [Rational64::zero(); 3];
        for i in 0..3 {
            exps[i] = -self.exps[i];
        }
        Dimension {
            exps,
            absolute: self.absolute,
        }
    }

    /// Quotient `W/D = Hom(D, W)`, realized as exponent subtraction.
    pub fn div(&self, other: &Dimension) -> Dimension {
        self.mul(&other.inv())
    }

    /// Absolute value: same exponents, oriented nonnegative half. Idempotent.
    pub fn abs(&self) -> Dimension {
        Dimension {
            exps: self.exps,
            absolute: true,
        }
    }

    /// Integer or rational power. A proper rational power `p/q` factors as
    /// the q-th root of the p-th power.
    pub fn pow(&self, exponent: Rational64) -> Dimension {
        if exponent.is_zero() {
            return Dimension::NONE;
        }
        if exponent.is_integer() {
            let mut exps = [Rational64::zero(); 3];
            for i in 0..3 {
                exps[i] = self.exps[i] * exponent;
            }
            return Dimension {
                exps,
                absolute: self.absolute,
            };
        }
        self.pow(Rational64::from_integer(*exponent.numer()))
            .root(*exponent.denom() as u32)
    }

    /// n-th root. When the input is unoriented the root is taken of the
    /// absolute value, so the result is flagged absolute in that case.
    pub fn root(&self, n: u32) -> Dimension {
        assert!(n >= 1, "root index must be positive");
        let divisor = Rational64::from_integer(n as i64);
        let mut exps = [Rational64::zero(); 3];
        for i in 0..3 {
            exps[i] = self.exps[i] / divisor;
        }
        Dimension {
            exps,
            absolute: self.absolute || !self.is_oriented(),
        }
    }

    /// Canonical form: bases in the fixed order `kg, kgs, kgm` joined by `*`,
    /// exponents as `^p` or `^p/q` (omitted when 1), `|...|` when absolute.
    /// The dimensionless case prints as `kg^0` so that every dimension has a
    /// parseable rendering.
    pub fn pretty(&self) -> String {
        let mut factors = Vec::new();
        for b in BaseLine::ALL {
            let e = self.exps[b.index()];
            if e.is_zero() {
                continue;
            }
            if e == Rational64::from_integer(1) {
                factors.push(b.symbol().to_string());
            } else if e.is_integer() {
                factors.push(format!("{}^{}", b.symbol(), e.numer()));
            } else {
                factors.push(format!("{}^{}/{}", b.symbol(), e.numer(), e.denom()));
            }
        }
        let body = if factors.is_empty() {
            "kg^0".to_string()
        } else {
            factors.join("*")
        };
        if self.absolute {
            format!("|{}|", body)
        } else {
            body
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// A real magnitude tagged with a dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub magnitude: f64,
    pub dim: Dimension,
}

impl Quantity {
    /// Callers are responsible for keeping absolute dimensions nonnegative;
    /// the checked arithmetic below reports violations instead.
    pub fn new(magnitude: f64, dim: Dimension) -> Quantity {
        debug_assert!(
            !dim.is_absolute() || magnitude >= 0.0 || magnitude.is_nan(),
            "absolute dimension with negative magnitude"
        );
        Quantity { magnitude, dim }
    }

    pub fn dimensionless(magnitude: f64) -> Quantity {
        Quantity::new(magnitude, Dimension::NONE)
    }

    pub fn kg(magnitude: f64) -> Quantity {
        Quantity::new(magnitude, Dimension::kg())
    }

    pub fn kgs(magnitude: f64) -> Quantity {
        Quantity::new(magnitude, Dimension::kgs())
    }

    pub fn seconds(magnitude: f64) -> Quantity {
        Quantity::new(magnitude, Dimension::second())
    }

    pub fn meters(magnitude: f64) -> Quantity {
        Quantity::new(magnitude, Dimension::meter())
    }

    pub fn add(&self, other: &Quantity) -> Result<Quantity, MeasureError> {
        if self.dim != other.dim {
            return Err(MeasureError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Quantity::new(self.magnitude + other.magnitude, self.dim))
    }

    pub fn sub(&self, other: &Quantity) -> Result<Quantity, MeasureError> {
        if self.dim != other.dim {
            return Err(MeasureError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let magnitude = self.magnitude - other.magnitude;
        if self.dim.is_absolute() && magnitude < 0.0 {
            return Err(MeasureError::NegativeAbsolute);
        }
        Ok(Quantity::new(magnitude, self.dim))
    }

    pub fn mul(&self, other: &Quantity) -> Quantity {
        Quantity {
            magnitude: self.magnitude * other.magnitude,
            dim: self.dim.mul(&other.dim),
        }
    }

    pub fn div(&self, other: &Quantity) -> Result<Quantity, MeasureError> {
        if other.magnitude == 0.0 {
            return Err(MeasureError::DivisionByZero);
        }
        Ok(Quantity {
            magnitude: self.magnitude / other.magnitude,
            dim: self.dim.div(&other.dim),
        })
    }

    pub fn abs(&self) -> Quantity {
        Quantity {
            magnitude: self.magnitude.abs(),
            dim: self.dim.abs(),
        }
    }

    pub fn root(&self, n: u32) -> Result<Quantity, MeasureError> {
        assert!(n >= 1, "root index must be positive");
        if n % 2 == 0 && self.magnitude < 0.0 {
            return Err(MeasureError::NegativeRoot);
        }
        let dim = self.dim.root(n);
        // An unoriented input passes through |.| before the root is taken.
        let base = if dim.is_absolute() {
            self.magnitude.abs()
        } else {
            self.magnitude
        };
        let magnitude = match n {
            1 => base,
            2 => base.sqrt(),
            3 => base.cbrt(),
            _ => {
                if base < 0.0 {
                    -(-base).powf(1.0 / n as f64)
                } else {
                    base.powf(1.0 / n as f64)
                }
            }
        };
        Ok(Quantity { magnitude, dim })
    }

    pub fn scale(&self, factor: f64) -> Quantity {
        Quantity {
            magnitude: self.magnitude * factor,
            dim: if factor < 0.0 && self.dim.is_absolute() {
                // Scaling out of the nonnegative half lands in the full line.
                Dimension {
                    exps: self.dim.exps,
                    absolute: false,
                }
            } else {
                self.dim
            },
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.magnitude, self.dim)
    }
}
