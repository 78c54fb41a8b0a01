//! Normal-surface coordinates, matching equations and Haken sums.
//!
//! Coordinates are stored per tetrahedron as `[t0, t1, t2, t3, q0, q1, q2]`: triangle `ti`
//! cuts off vertex `i`; quad `qj` separates the pairs in [`QUAD_PAIRS`]`[j]`.
//!
//! [`QUAD_PAIRS`]: crate::simplex::QUAD_PAIRS

mod disk_complex;
mod special;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::simplex::{face_vertices, quad_type};
use crate::skeleton::Skeleton;
use crate::triangulation::Triangulation;

pub use disk_complex::{
    connected_components, euler_characteristic, surface_topology, ArcSlot, BoundaryCurve, ComponentTopology, DiskComplex,
    DiskKind, SurfaceTopology,
};
pub use special::{peripheral_surface, recognize_special, thin_edge_pattern, PeripheralObstruction, Special};

/// Number of coordinates per tetrahedron.
pub const COORDS_PER_TET: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalSurface {
    coords: Vec<BigUint>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("coordinate vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("coordinate `{0}` is not a non-negative integer")]
    BadCoordinate(String),
    #[error("coordinates too large to expand into individual disks")]
    TooLarge,
    #[error("surface violates the quad condition in tetrahedron {0}")]
    QuadCondition(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("Haken sum undefined: distinct quad types in tetrahedron {tet}")]
pub struct IncompatibleQuads {
    pub tet: usize,
}

impl NormalSurface {
    pub fn new(coords: Vec<BigUint>) -> NormalSurface {
        NormalSurface { coords }
    }

    pub fn zero(n_tets: usize) -> NormalSurface {
        NormalSurface { coords: vec![BigUint::zero(); COORDS_PER_TET * n_tets] }
    }

    pub fn from_u64s(values: &[u64]) -> NormalSurface {
        NormalSurface { coords: values.iter().map(|&v| BigUint::from(v)).collect() }
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.coords
    }

    pub fn n_tets(&self) -> usize {
        self.coords.len() / COORDS_PER_TET
    }

    pub fn triangle(&self, tet: usize, vertex: usize) -> &BigUint {
        &self.coords[COORDS_PER_TET * tet + vertex]
    }

    pub fn quad(&self, tet: usize, kind: usize) -> &BigUint {
        &self.coords[COORDS_PER_TET * tet + 4 + kind]
    }

    pub fn set(&mut self, index: usize, value: BigUint) {
        self.coords[index] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
    }

    /// The nonzero quad type in `tet`, if exactly one is present.
    pub fn quad_type_in(&self, tet: usize) -> Option<usize> {
        (0..3).find(|&j| !self.quad(tet, j).is_zero())
    }

    pub fn has_quads(&self) -> bool {
        (0..self.n_tets()).any(|t| self.quad_type_in(t).is_some())
    }

    /// First tetrahedron carrying two distinct quad types, if any.
    pub fn quad_violation(&self) -> Option<usize> {
        (0..self.n_tets()).find(|&t| (0..3).filter(|&j| !self.quad(t, j).is_zero()).count() > 1)
    }

    pub fn scaled(&self, k: u64) -> NormalSurface {
        NormalSurface { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// Plain coordinate sum, without the quad-compatibility check of [`haken_sum`].
    pub fn add(&self, other: &NormalSurface) -> NormalSurface {
        assert_eq!(self.coords.len(), other.coords.len());
        NormalSurface { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    /// Coordinate difference when `other <= self` entrywise.
    pub fn checked_sub(&self, other: &NormalSurface) -> Option<NormalSurface> {
        if self.coords.len() != other.coords.len() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coords.len());
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if b > a {
                return None;
            }
            out.push(a - b);
        }
        Some(NormalSurface { coords: out })
    }

    /// Entrywise `self >= other`.
    pub fn dominates(&self, other: &NormalSurface) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a >= b)
    }

    /// Small-integer copy of the coordinates, for expanding into individual disks.
    pub fn to_counts(&self) -> Result<Vec<usize>, SurfaceError> {
        self.coords.iter().map(|c| c.to_usize().ok_or(SurfaceError::TooLarge)).collect()
    }

    pub fn to_i64s(&self) -> Result<Vec<i64>, SurfaceError> {
        self.coords.iter().map(|c| c.to_i64().ok_or(SurfaceError::TooLarge)).collect()
    }

    pub fn from_i64s(values: &[i64]) -> NormalSurface {
        NormalSurface {
            coords: values
                .iter()
                .map(|&v| BigUint::from(u64::try_from(v).expect("non-negative coordinate")))
                .collect(),
        }
    }

    /// Divides out the gcd of the coordinates.
    pub fn primitive(&self) -> NormalSurface {
        let g = self.coords.iter().fold(BigUint::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        if g.is_zero() || g == BigUint::from(1u8) {
            return self.clone();
        }
        NormalSurface { coords: self.coords.iter().map(|c| c / &g).collect() }
    }

    /// Number of normal disks.
    pub fn disk_count(&self) -> BigUint {
        self.coords.iter().sum()
    }

    /// Number of arcs on each face of `tri` cutting off each corner: `(tet, face, vertex) -> count`.
    pub fn arc_count(&self, tet: usize, face: usize, vertex: usize) -> BigUint {
        self.triangle(tet, vertex) + self.quad(tet, quad_type(vertex, face))
    }

    /// True when no normal arc lies on a boundary face.
    pub fn is_closed(&self, tri: &Triangulation) -> bool {
        for t in 0..tri.size() {
            for f in 0..4 {
                if tri.gluing(t, f).is_none() && face_vertices(f).iter().any(|&v| !self.arc_count(t, f, v).is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for NormalSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for NormalSurface {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coords = s
            .split_whitespace()
            .map(|tok| tok.parse::<BigUint>().map_err(|_| SurfaceError::BadCoordinate(tok.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() % COORDS_PER_TET != 0 {
            return Err(SurfaceError::LengthMismatch {
                got: coords.len(),
                expected: COORDS_PER_TET * (coords.len() / COORDS_PER_TET + 1),
            });
        }
        Ok(NormalSurface { coords })
    }
}

impl Serialize for NormalSurface {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// One matching equation: the arcs of one type on one internal face, counted from both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingEquation {
    /// `(tet, face)` on the first side.
    pub from: (usize, usize),
    /// `(tet, face)` on the second side.
    pub to: (usize, usize),
    /// Corner of the first face that the arcs cut off.
    pub vertex: usize,
    /// Raw terms: `+1` on the first side's triangle and quad, `-1` on the second side's.
    pub terms: [(usize, i8); 4],
}

impl MatchingEquation {
    /// Terms with repeated variables merged and zero coefficients dropped.
    pub fn combined(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(4);
        for &(var, c) in &self.terms {
            match out.iter_mut().find(|(v, _)| *v == var) {
                Some(slot) => slot.1 += c as i64,
                None => out.push((var, c as i64)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        out.sort();
        out
    }

    pub fn evaluate(&self, coords: &[BigUint]) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, &(var, c)| acc + BigInt::from(c) * BigInt::from(coords[var].clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingSystem {
    pub n_tets: usize,
    pub equations: Vec<MatchingEquation>,
}

impl MatchingSystem {
    pub fn build(tri: &Triangulation) -> MatchingSystem {
        let mut equations = Vec::new();
        for ((a, f), g) in tri.internal_face_pairs() {
            let b = g.tet;
            let bf = g.perm.apply(f);
            for v in face_vertices(f) {
                let bv = g.perm.apply(v);
                equations.push(MatchingEquation {
                    from: (a, f),
                    to: (b, bf),
                    vertex: v,
                    terms: [
                        (COORDS_PER_TET * a + v, 1),
                        (COORDS_PER_TET * a + 4 + quad_type(v, f), 1),
                        (COORDS_PER_TET * b + bv, -1),
                        (COORDS_PER_TET * b + 4 + quad_type(bv, bf), -1),
                    ],
                });
            }
        }
        MatchingSystem { n_tets: tri.size(), equations }
    }

    pub fn dimension(&self) -> usize {
        COORDS_PER_TET * self.n_tets
    }

    /// Dense integer rows, one per equation.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.equations
            .iter()
            .map(|eq| {
                let mut row = vec![0i64; self.dimension()];
                for &(var, c) in &eq.terms {
                    row[var] += c as i64;
                }
                row
            })
            .collect()
    }

    pub fn satisfied_by(&self, coords: &[BigUint]) -> bool {
        self.equations.iter().all(|eq| eq.evaluate(coords).is_zero())
    }
}

/// Builds the matching equations of `tri`.
pub fn matching_system(tri: &Triangulation) -> MatchingSystem {
    MatchingSystem::build(tri)
}

/// Matching equations plus the quad condition.
pub fn is_admissible(tri: &Triangulation, surface: &NormalSurface) -> Result<bool, SurfaceError> {
    let expected = COORDS_PER_TET * tri.size();
    if surface.coords.len() != expected {
        return Err(SurfaceError::LengthMismatch { got: surface.coords.len(), expected });
    }
    if surface.quad_violation().is_some() {
        return Ok(false);
    }
    Ok(MatchingSystem::build(tri).satisfied_by(&surface.coords))
}

/// The surface made of one triangle at every corner belonging to vertex class `vertex`.
pub fn vertex_linking(tri: &Triangulation, skel: &Skeleton, vertex: usize) -> NormalSurface {
    let mut s = NormalSurface::zero(tri.size());
    for &(t, v) in &skel.vertices[vertex].corners {
        s.coords[COORDS_PER_TET * t + v] = BigUint::from(1u8);
    }
    s
}

/// Coordinate sum of two quad-compatible surfaces.
pub fn haken_sum(a: &NormalSurface, b: &NormalSurface) -> Result<NormalSurface, IncompatibleQuads> {
    assert_eq!(a.coords.len(), b.coords.len(), "surfaces on different triangulations");
    for t in 0..a.n_tets() {
        if let (Some(x), Some(y)) = (a.quad_type_in(t), b.quad_type_in(t)) {
            if x != y {
                return Err(IncompatibleQuads { tet: t });
            }
        }
    }
    Ok(a.add(b))
}
