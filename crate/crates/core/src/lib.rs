//! Five-dimensional mechanical spaces with Galilei and Poincaré symmetry.
//!
//! The carrier space is `R^5`; the symmetry group acts linearly and its
//! orbit decomposition encodes mass, time, and distance as one-dimensional
//! "measure lines" rather than bare numbers. This crate provides:
//!
//! - [`measure`]: the exact rational-exponent algebra of measure lines
//!   (product, quotient, absolute value, roots) plus an expression parser;
//! - [`groups`]: block-matrix realizations of the two symmetry groups and
//!   their extended automorphism groups, with the unique scale-times-isometry
//!   factorization and subgroup-lattice classification;
//! - [`newton`] / [`einstein`]: the invariant decompositions, evaluation
//!   maps, generalized scalar products, the light-cone constructions, and
//!   the Beltrami–Cayley–Klein ball model of the velocity space;
//! - [`dynamics`]: pointlike particles, force fields, a fixed-step
//!   fourth-order integrator with constraint maintenance, and multi-particle
//!   aggregates;
//! - [`symplectic`]: the manifolds of timelike lines in the mass
//!   hyperplanes, their generalized symplectic forms, and numerical
//!   verification of symplecticity, mass-scaling, and Hamiltonian flows;
//! - [`verify`]: seed-driven verification sweeps shared by the test suite
//!   and the command-line front end.

pub mod dynamics;
pub mod einstein;
pub mod groups;
pub mod measure;
pub mod minkowski;
pub mod newton;
pub mod report;
pub mod space;
pub mod symplectic;
pub mod verify;

pub use measure::{Dimension, Quantity};
pub use space::{FiveVector, Flavor, FrameId};
