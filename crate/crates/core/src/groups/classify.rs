//! Subgroup-lattice membership tags.
//!
//! Galilean tags follow the net of subgroups generated by translations,
//! boosts, and rotations; Lorentzian tags cover the homogeneous group, the
//! stabilizers of the three causal types of vectors (checked against the
//! canonical representatives `e4`, `e1`, `e1 + e4`), and the canonical boost
//! one-parameter group acting in the `(e3, e4)` plane.

use super::{GalileiElement, GroupElement, GroupFamily, PoincareElement, TOL_CLASSIFY};
use nalgebra::{Matrix3, Vector4};
use std::collections::BTreeSet;
use std::fmt;

/// Subgroup tags of the two lattices. The names follow the conventional
/// labels: `T` translations (superscript = dimension), `B` boosts, `SO`
/// rotations, concatenation = generated subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgroupTag {
    T4,
    B,
    SOg,
    BT4,
    T3,
    BT3,
    SOBT3,
    SOB,
    LFull,
    StabTimelike,
    StabSpacelike,
    StabLightlike,
    Boost,
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubgroupTag::T4 => "T4",
            SubgroupTag::B => "B",
            SubgroupTag::SOg => "SOg",
            SubgroupTag::BT4 => "BT4",
            SubgroupTag::T3 => "T3",
            SubgroupTag::BT3 => "BT3",
            SubgroupTag::SOBT3 => "SOBT3",
            SubgroupTag::SOB => "SOB",
            SubgroupTag::LFull => "L_full",
            SubgroupTag::StabTimelike => "stab_timelike",
            SubgroupTag::StabSpacelike => "stab_spacelike",
            SubgroupTag::StabLightlike => "stab_lightlike",
            SubgroupTag::Boost => "boost",
        };
        f.write_str(s)
    }
}

/// The normal subgroups, by family.
pub fn normal_subgroup_tags(family: GroupFamily) -> &'static [SubgroupTag] {
    match family {
        GroupFamily::Galilei => &[
            SubgroupTag::T3,
            SubgroupTag::T4,
            SubgroupTag::BT3,
            SubgroupTag::BT4,
            SubgroupTag::SOBT3,
        ],
        GroupFamily::Poincare => &[SubgroupTag::T4],
    }
}

/// Inclusion arrows of the lattice: `(smaller, larger)` pairs. Any tag set
/// returned by `classify_subgroup` is upward-closed along these.
pub fn inclusions(family: GroupFamily) -> &'static [(SubgroupTag, SubgroupTag)] {
    match family {
        GroupFamily::Galilei => &[
            (SubgroupTag::T3, SubgroupTag::T4),
            (SubgroupTag::T3, SubgroupTag::BT3),
            (SubgroupTag::T4, SubgroupTag::BT4),
            (SubgroupTag::BT3, SubgroupTag::BT4),
            (SubgroupTag::BT3, SubgroupTag::SOBT3),
            (SubgroupTag::B, SubgroupTag::BT3),
            (SubgroupTag::B, SubgroupTag::SOB),
            (SubgroupTag::SOg, SubgroupTag::SOB),
            (SubgroupTag::SOB, SubgroupTag::SOBT3),
        ],
        GroupFamily::Poincare => &[
            (SubgroupTag::StabTimelike, SubgroupTag::LFull),
            (SubgroupTag::StabSpacelike, SubgroupTag::LFull),
            (SubgroupTag::StabLightlike, SubgroupTag::LFull),
            (SubgroupTag::Boost, SubgroupTag::LFull),
        ],
    }
}

fn near_identity3(m: &Matrix3<f64>, tol: f64) -> bool {
    (m - Matrix3::identity())
        .iter()
        .all(|x| x.abs() <= tol)
}

fn near_zero(x: f64, tol: f64) -> bool {
    x.abs() <= tol
}

fn classify_galilei(g: &GalileiElement, tol: f64) -> BTreeSet<SubgroupTag> {
    let mut tags = BTreeSet::new();
    let rot_trivial = near_identity3(&g.rotation(), tol);
    let no_boost = g.velocity().amax() <= tol;
    let no_shift = g.spatial_translation().amax() <= tol;
    let no_time = near_zero(g.time_shift(), tol);

    if rot_trivial && no_boost {
        tags.insert(SubgroupTag::T4);
        if no_time {
            tags.insert(SubgroupTag::T3);
        }
    }
    if rot_trivial {
        tags.insert(SubgroupTag::BT4);
        if no_time {
            tags.insert(SubgroupTag::BT3);
        }
    }
    if rot_trivial && no_shift && no_time {
        tags.insert(SubgroupTag::B);
    }
    if no_boost && no_shift && no_time {
        tags.insert(SubgroupTag::SOg);
    }
    if no_shift && no_time {
        tags.insert(SubgroupTag::SOB);
    }
    if no_time {
        tags.insert(SubgroupTag::SOBT3);
    }
    tags
}

fn is_canonical_boost(l: &nalgebra::Matrix4<f64>, tol: f64) -> bool {
    // Identity on span(e1, e2), hyperbolic rotation on span(e3, e4).
    for i in 0..2 {
        for j in 0..4 {
            let want = if i == j { 1.0 } else { 0.0 };
            if (l[(i, j)] - want).abs() > tol || (l[(j, i)] - want).abs() > tol {
                return false;
            }
        }
    }
    let c = l[(3, 3)];
    let s = l[(3, 2)];
    (l[(2, 2)] - c).abs() <= tol
        && (l[(2, 3)] - s).abs() <= tol
        && (c * c - s * s - 1.0).abs() <= tol.max(1e-9)
        && c >= 1.0 - tol
}

fn classify_poincare(p: &PoincareElement, tol: f64) -> BTreeSet<SubgroupTag> {
    let mut tags = BTreeSet::new();
    let l = p.lorentz();
    let homogeneous = p.translation().amax() <= tol;
    let l_trivial = (l - nalgebra::Matrix4::identity())
        .iter()
        .all(|x| x.abs() <= tol);

    if l_trivial {
        tags.insert(SubgroupTag::T4);
    }
    if homogeneous {
        tags.insert(SubgroupTag::LFull);
        let e1 = Vector4::new(1.0, 0.0, 0.0, 0.0);
        let e4 = Vector4::new(0.0, 0.0, 0.0, 1.0);
        let null = e1 + e4;
        if ((l * e4) - e4).amax() <= tol {
            tags.insert(SubgroupTag::StabTimelike);
        }
        if ((l * e1) - e1).amax() <= tol {
            tags.insert(SubgroupTag::StabSpacelike);
        }
        if ((l * null) - null).amax() <= tol {
            tags.insert(SubgroupTag::StabLightlike);
        }
        if is_canonical_boost(&l, tol) {
            tags.insert(SubgroupTag::Boost);
        }
    }
    tags
}

/// All lattice tags whose defining block conditions the element satisfies
/// within the classification tolerance.
pub fn classify_subgroup(g: &GroupElement) -> BTreeSet<SubgroupTag> {
    match g {
        GroupElement::Galilei(g) => classify_galilei(g, TOL_CLASSIFY),
        GroupElement::Poincare(p) => classify_poincare(p, TOL_CLASSIFY),
    }
}
