//! Boundary curves, slopes and slope censuses.
//!
//! A slope is recorded as the primitive vector of weights that one boundary curve puts on
//! the edges of its boundary component, in the order of [`Skeleton::boundary_components`].
//! Curves whose weights match the link of a boundary vertex are trivial.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{decompose_over, surfaces_up_to, SurfaceList};
use crate::normal::{
    connected_components, haken_sum, recognize_special, surface_topology, ArcSlot, DiskComplex, NormalSurface, Special,
    SurfaceError,
};
use crate::simplex::{face_vertices, quad_type};
use crate::skeleton::Skeleton;
use crate::triangulation::Triangulation;

/// One closed curve of `S ∩ ∂M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TracedCurve {
    pub boundary_component: usize,
    pub surface_component: usize,
    pub arcs: Vec<ArcSlot>,
    /// Crossings with each edge of the boundary component.
    pub weights: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCurveSystem {
    /// Arc counts on each boundary face, one per corner in ascending vertex order.
    pub face_arcs: Vec<((usize, usize), [u64; 3])>,
    /// Weight on each boundary edge class.
    pub edge_weights: Vec<(usize, u64)>,
    pub curves: Vec<TracedCurve>,
}

impl BoundaryCurveSystem {
    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }
}

/// Restricts `S` to `∂M` and traces its curves.
pub fn boundary_curves(tri: &Triangulation, skel: &Skeleton, s: &NormalSurface) -> Result<BoundaryCurveSystem, SurfaceError> {
    let counts = s.to_counts()?;
    let arcs = |t: usize, f: usize, v: usize| {
        let c = &counts[7 * t..7 * t + 7];
        (c[v] + c[4 + quad_type(v, f)]) as u64
    };
    let face_arcs = skel.boundary_faces.iter().map(|&(t, f)| ((t, f), face_vertices(f).map(|v| arcs(t, f, v)))).collect();
    let mut edge_weights = Vec::new();
    for (e, class) in skel.edges.iter().enumerate() {
        if class.boundary {
            let (t, te) = class.members[0];
            let (a, b) = crate::simplex::EDGE_VERTICES[te];
            let c = (0..4).find(|&c| c != a && c != b).unwrap();
            edge_weights.push((e, arcs(t, c, a) + arcs(t, c, b)));
        }
    }
    let complex = DiskComplex::build(tri, s)?;
    let curves = complex
        .boundary_curves()
        .into_iter()
        .map(|curve| {
            let edges: Vec<usize> = curve.crossings.iter().map(|&(t, te)| skel.tet_edges[t][te]).collect();
            let b = skel.edge_component[edges[0]].expect("boundary curves cross boundary edges");
            let order = &skel.boundary_components[b].edges;
            let mut weights = vec![0u64; order.len()];
            for e in edges {
                weights[order.iter().position(|&x| x == e).expect("edge lies in the component")] += 1;
            }
            TracedCurve { boundary_component: b, surface_component: curve.component, arcs: curve.arcs, weights }
        })
        .collect();
    Ok(BoundaryCurveSystem { face_arcs, edge_weights, curves })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SlopeClass {
    pub component: usize,
    pub weights: Vec<u64>,
    /// On a one-vertex torus, the two smaller edge weights; the third is their sum for an essential curve.
    pub torus_pair: Option<(u64, u64)>,
}

impl SlopeClass {
    /// Divides `weights` by their gcd. Zero vectors have no class.
    pub fn from_weights(component: usize, weights: &[u64], one_vertex_torus: bool) -> Option<SlopeClass> {
        let g = weights.iter().fold(0u64, |g, &w| g.gcd(&w));
        if g == 0 {
            return None;
        }
        let weights: Vec<u64> = weights.iter().map(|w| w / g).collect();
        let torus_pair = (one_vertex_torus && weights.len() == 3).then(|| {
            let mut sorted = weights.clone();
            sorted.sort_unstable();
            (sorted[0], sorted[1])
        });
        Some(SlopeClass { component, weights, torus_pair })
    }
}

impl fmt::Display for SlopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "component={} weights={}", self.component, ws.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Slope {
    Trivial,
    Class(SlopeClass),
}

fn is_one_vertex_torus(skel: &Skeleton, b: usize) -> bool {
    let comp = &skel.boundary_components[b];
    comp.vertices.len() == 1 && comp.euler_characteristic() == 0
}

/// Weights of the link of boundary vertex `w` in its boundary component.
fn vertex_link_weights(skel: &Skeleton, b: usize, w: usize) -> Vec<u64> {
    skel.boundary_components[b]
        .edges
        .iter()
        .map(|&e| {
            let (x, y) = skel.edges[e].endpoints;
            (x == w) as u64 + (y == w) as u64
        })
        .collect()
}

pub fn slope_class(skel: &Skeleton, curve: &TracedCurve) -> Slope {
    let b = curve.boundary_component;
    if skel.boundary_components[b].vertices.iter().any(|&w| vertex_link_weights(skel, b, w) == curve.weights) {
        return Slope::Trivial;
    }
    match SlopeClass::from_weights(b, &curve.weights, is_one_vertex_torus(skel, b)) {
        Some(class) => Slope::Class(class),
        None => Slope::Trivial,
    }
}

/// Slope classes of the nontrivial boundary curves of `s`, sorted.
pub fn slopes_of(tri: &Triangulation, skel: &Skeleton, s: &NormalSurface) -> Result<Vec<SlopeClass>, SurfaceError> {
    let system = boundary_curves(tri, skel, s)?;
    let mut out: Vec<SlopeClass> = system
        .curves
        .iter()
        .filter_map(|c| match slope_class(skel, c) {
            Slope::Class(class) => Some(class),
            Slope::Trivial => None,
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSurface {
    pub surface: NormalSurface,
    pub euler: i64,
    pub slopes: Vec<SlopeClass>,
    /// Multipliers over the fundamental surfaces, when requested and found.
    pub decomposition: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeCensus {
    pub triangulation: String,
    pub chi_min: i64,
    pub bound: u64,
    /// Number of census surfaces realising each class.
    pub classes: BTreeMap<SlopeClass, usize>,
    pub surfaces: Vec<CensusSurface>,
}

impl SlopeCensus {
    pub fn class_set(&self) -> Vec<&SlopeClass> {
        self.classes.keys().collect()
    }

    /// One line per class: `component=<k> weights=<w1,...> count=<c>`.
    pub fn to_text(&self) -> String {
        let mut out = format!("# slopes {} chi>={} bound={}\n", self.triangulation, self.chi_min, self.bound);
        for (class, count) in &self.classes {
            out.push_str(&format!("{class} count={count}\n"));
        }
        out
    }
}

/// Slopes of connected surfaces with `χ ≥ chi_min` and every coordinate at most `bound`.
pub fn slope_census(tri: &Triangulation, chi_min: i64, bound: u64) -> SlopeCensus {
    census_from(tri, &surfaces_up_to(tri, bound), chi_min, bound, None)
}

/// As [`slope_census`], also writing each surface over `fundamentals`.
pub fn slope_census_with_decompositions(tri: &Triangulation, chi_min: i64, bound: u64, fundamentals: &SurfaceList) -> SlopeCensus {
    census_from(tri, &surfaces_up_to(tri, bound), chi_min, bound, Some(fundamentals))
}

fn census_from(tri: &Triangulation, list: &SurfaceList, chi_min: i64, bound: u64, fundamentals: Option<&SurfaceList>) -> SlopeCensus {
    let skel = Skeleton::build(tri);
    let mut classes: BTreeMap<SlopeClass, usize> = BTreeMap::new();
    let mut surfaces = Vec::new();
    for s in list.iter().filter(|s| !s.is_zero()) {
        let Ok(topo) = surface_topology(tri, s) else { continue };
        if topo.components != 1 || topo.euler < chi_min || topo.boundary_curves == 0 {
            continue;
        }
        let Ok(mut slopes) = slopes_of(tri, &skel, s) else { continue };
        if slopes.is_empty() {
            continue;
        }
        slopes.dedup();
        for class in &slopes {
            *classes.entry(class.clone()).or_default() += 1;
        }
        let decomposition = fundamentals.and_then(|f| decompose_over(s, &f.surfaces));
        surfaces.push(CensusSurface { surface: s.clone(), euler: topo.euler, slopes, decomposition });
    }
    SlopeCensus { triangulation: tri.name().to_string(), chi_min, bound, classes, surfaces }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SumCase {
    /// `F' + A` is `F'` together with a disjoint copy of `A`.
    DisjointUnion,
    /// `F' + A` splits off a vertex-linking disk.
    VertexDiskSplit,
    /// `F' + A` matches `F'` in euler characteristic, slopes and component count.
    IsotopicReplacement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SumClassification {
    Case(SumCase),
    NotApplicable { diagnostics: String },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SumError {
    #[error("the second surface is not a thin edge-linking annulus")]
    NotThinAnnulus,
    #[error("the sum is not defined: quad types differ in tetrahedron {0}")]
    Undefined(usize),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumReport {
    pub sum: NormalSurface,
    pub euler_before: i64,
    pub euler_after: i64,
    pub classification: SumClassification,
}

fn sorted_components(tri: &Triangulation, s: &NormalSurface) -> Result<Vec<NormalSurface>, SurfaceError> {
    let mut c = connected_components(tri, s)?;
    c.sort();
    Ok(c)
}

/// Classifies `F' + A` for a thin edge-linking annulus `A`.
pub fn classify_thin_annulus_sum(tri: &Triangulation, skel: &Skeleton, f: &NormalSurface, a: &NormalSurface) -> Result<SumReport, SumError> {
    if !matches!(recognize_special(tri, skel, a), Special::ThinEdgeLinking(_)) {
        return Err(SumError::NotThinAnnulus);
    }
    let sum = haken_sum(f, a).map_err(|e| SumError::Undefined(e.tet))?;
    let before = surface_topology(tri, f)?;
    let after = surface_topology(tri, &sum)?;
    let report = |classification| SumReport { sum: sum.clone(), euler_before: before.euler, euler_after: after.euler, classification };

    let mut expected = if f.is_zero() { Vec::new() } else { sorted_components(tri, f)? };
    expected.push(a.clone());
    expected.sort();
    let parts = sorted_components(tri, &sum)?;
    if parts == expected {
        return Ok(report(SumClassification::Case(SumCase::DisjointUnion)));
    }
    let disk_split = after
        .per_component
        .iter()
        .any(|c| c.is_disk() && matches!(recognize_special(tri, skel, &c.surface), Special::VertexLinking(_)));
    if disk_split {
        return Ok(report(SumClassification::Case(SumCase::VertexDiskSplit)));
    }
    let slopes_before = slopes_of(tri, skel, f)?;
    let slopes_after = slopes_of(tri, skel, &sum)?;
    if before.euler == after.euler && before.components == after.components && slopes_before == slopes_after {
        return Ok(report(SumClassification::Case(SumCase::IsotopicReplacement)));
    }
    let diagnostics = format!(
        "euler {} -> {}, components {} -> {}, slopes {:?} -> {:?}",
        before.euler, after.euler, before.components, after.components, slopes_before, slopes_after
    );
    Ok(report(SumClassification::NotApplicable { diagnostics }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::normal::{thin_edge_pattern, vertex_linking};

    #[test]
    fn closed_surfaces_have_no_curves() {
        let tri = fixtures::figure_eight();
        let skel = Skeleton::build(&tri);
        assert!(boundary_curves(&tri, &skel, &vertex_linking(&tri, &skel, 0)).unwrap().is_empty());
    }

    #[test]
    fn boundary_vertex_link_is_trivial() {
        let tri = fixtures::solid_torus();
        let skel = Skeleton::build(&tri);
        for v in 0..skel.vertex_count() {
            let system = boundary_curves(&tri, &skel, &vertex_linking(&tri, &skel, v)).unwrap();
            assert_eq!(system.curves.len(), 1);
            assert_eq!(slope_class(&skel, &system.curves[0]), Slope::Trivial);
        }
    }

    #[test]
    fn gcd_reduction() {
        let class = SlopeClass::from_weights(0, &[2, 4, 6], true).unwrap();
        assert_eq!(class.weights, vec![1, 2, 3]);
        assert_eq!(class.torus_pair, Some((1, 2)));
        assert_eq!(class.to_string(), "component=0 weights=1,2,3");
        assert!(SlopeClass::from_weights(0, &[0, 0], false).is_none());
    }

    #[test]
    fn thin_annulus_curves_are_parallel() {
        let tri = fixtures::solid_torus();
        let skel = Skeleton::build(&tri);
        let a = (0..skel.edge_count()).find_map(|e| thin_edge_pattern(&tri, &skel, e)).unwrap();
        let system = boundary_curves(&tri, &skel, &a).unwrap();
        assert_eq!(system.curves.len(), 2);
        assert_eq!(system.curves[0].weights, system.curves[1].weights);
    }

    #[test]
    fn census_is_monotone() {
        let tri = fixtures::solid_torus();
        let small = slope_census(&tri, -2, 2);
        let large = slope_census(&tri, -2, 4);
        assert!(small.classes.keys().all(|c| large.classes.contains_key(c)));
        assert!(slope_census(&tri, 5, 4).classes.is_empty());
    }

    #[test]
    fn sum_with_itself_is_disjoint() {
        let tri = fixtures::solid_torus();
        let skel = Skeleton::build(&tri);
        let a = (0..skel.edge_count()).find_map(|e| thin_edge_pattern(&tri, &skel, e)).unwrap();
        let r = classify_thin_annulus_sum(&tri, &skel, &a, &a).unwrap();
        assert_eq!(r.classification, SumClassification::Case(SumCase::DisjointUnion));
        assert_eq!(r.euler_after, r.euler_before);
    }
}
