//! 0-efficiency, annular-efficiency and boundary-efficiency checks over enumerated surfaces.
//!
//! Verdicts never claim more than the enumeration shows. Where a full decision needs an
//! incompressibility or isotopy test, the report is `Undetermined` and carries the surfaces
//! that would have to be examined.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{fundamental_surfaces, vertex_surfaces, Provenance, SizeExceeded};
use crate::normal::{peripheral_surface, recognize_special, surface_topology, ComponentTopology, NormalSurface, PeripheralObstruction, Special};
use crate::skeleton::{classify_vertices, Skeleton, VertexKind};
use crate::slopes::slopes_of;
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    ZeroEfficient,
    AnnularEfficient,
    BoundaryEfficiencyCandidates,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Fails,
    Undetermined { reason: String },
}

/// A surface backing a verdict, with the data used to classify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub surface: NormalSurface,
    pub euler: i64,
    pub orientable: bool,
    pub boundary_curves: usize,
    pub special: Special,
    pub note: String,
}

impl Witness {
    fn new(tri: &Triangulation, skel: &Skeleton, c: &ComponentTopology, note: impl Into<String>) -> Witness {
        Witness {
            surface: c.surface.clone(),
            euler: c.euler,
            orientable: c.orientable,
            boundary_curves: c.boundary_curves,
            special: recognize_special(tri, skel, &c.surface),
            note: note.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TriangulationKind {
    Closed,
    Ideal,
    Bounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EfficiencyReport {
    pub property: Property,
    pub kind: TriangulationKind,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub provenance: Provenance,
    /// Hypotheses on the manifold that the verdict relies on but does not check.
    pub assumptions: Vec<String>,
}

impl fmt::Display for EfficiencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match &self.verdict {
            Verdict::Holds => "holds".to_string(),
            Verdict::Fails => "fails".to_string(),
            Verdict::Undetermined { reason } => format!("undetermined ({reason})"),
        };
        writeln!(f, "{:?} [{:?}, searched {} surfaces]: {verdict}", self.property, self.kind, self.provenance)?;
        for a in &self.assumptions {
            writeln!(f, "  assumes {a}")?;
        }
        for w in &self.witnesses {
            writeln!(
                f,
                "  witness {} euler={} orientable={} boundary_curves={} special={:?} {}",
                w.surface, w.euler, w.orientable, w.boundary_curves, w.special, w.note
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EfficiencyError {
    #[error("no normal boundary: {0}")]
    NoNormalBoundary(PeripheralObstruction),
    #[error("boundary efficiency needs a triangulation with boundary")]
    NoBoundary,
    #[error(transparent)]
    TooLarge(#[from] SizeExceeded),
}

pub fn triangulation_kind(tri: &Triangulation, skel: &Skeleton) -> TriangulationKind {
    let ideal = classify_vertices(tri, skel)
        .map(|kinds| kinds.iter().any(|k| matches!(k, VertexKind::Ideal { .. })))
        .unwrap_or(false);
    if ideal {
        TriangulationKind::Ideal
    } else if skel.boundary_faces.is_empty() {
        TriangulationKind::Closed
    } else {
        TriangulationKind::Bounded
    }
}

/// Every connected component of every vertex surface.
fn vertex_components(tri: &Triangulation) -> Vec<ComponentTopology> {
    let mut out: Vec<ComponentTopology> = Vec::new();
    for s in vertex_surfaces(tri).iter() {
        if let Ok(topo) = surface_topology(tri, s) {
            for c in topo.per_component {
                if !out.iter().any(|o| o.surface == c.surface) {
                    out.push(c);
                }
            }
        }
    }
    out
}

pub fn check_zero_efficient(tri: &Triangulation) -> EfficiencyReport {
    let skel = Skeleton::build(tri);
    let kind = triangulation_kind(tri, &skel);
    let mut witnesses = Vec::new();
    for c in vertex_components(tri) {
        let linking = matches!(recognize_special(tri, &skel, &c.surface), Special::VertexLinking(_));
        let bad = match kind {
            TriangulationKind::Bounded => c.is_disk() && !linking,
            TriangulationKind::Closed => c.is_sphere() && !linking,
            TriangulationKind::Ideal => c.is_sphere(),
        };
        if bad {
            let note = if c.is_disk() { "normal disk, not vertex-linking" } else { "normal sphere" };
            witnesses.push(Witness::new(tri, &skel, &c, note));
        }
    }
    let verdict = if witnesses.is_empty() { Verdict::Holds } else { Verdict::Fails };
    EfficiencyReport { property: Property::ZeroEfficient, kind, verdict, witnesses, provenance: Provenance::Vertex, assumptions: Vec::new() }
}

/// Staged: reports the 0-efficiency failure first, then examines vertex annuli.
pub fn check_annular_efficient(tri: &Triangulation) -> EfficiencyReport {
    let skel = Skeleton::build(tri);
    let kind = triangulation_kind(tri, &skel);
    let report = |verdict, witnesses| EfficiencyReport {
        property: Property::AnnularEfficient,
        kind,
        verdict,
        witnesses,
        provenance: Provenance::Vertex,
        assumptions: Vec::new(),
    };
    if kind != TriangulationKind::Bounded {
        let reason = "annular-efficiency defined for material triangulations".to_string();
        return report(Verdict::Undetermined { reason }, Vec::new());
    }
    let zero = check_zero_efficient(tri);
    if zero.verdict != Verdict::Holds {
        let witnesses = zero.witnesses.into_iter().map(|w| Witness { note: format!("not 0-efficient: {}", w.note), ..w }).collect();
        return report(Verdict::Fails, witnesses);
    }
    let mut failing = Vec::new();
    let mut open = Vec::new();
    for c in vertex_components(tri) {
        if !c.is_annulus() || matches!(recognize_special(tri, &skel, &c.surface), Special::ThinEdgeLinking(_)) {
            continue;
        }
        let essential = slopes_of(tri, &skel, &c.surface).map(|s| !s.is_empty()).unwrap_or(false);
        if essential {
            failing.push(Witness::new(tri, &skel, &c, "annulus with essential boundary, not thin edge-linking"));
        } else {
            open.push(Witness::new(tri, &skel, &c, "annulus with inessential boundary, not thin edge-linking"));
        }
    }
    if !failing.is_empty() {
        report(Verdict::Fails, failing)
    } else if !open.is_empty() {
        report(Verdict::Undetermined { reason: "incompressibility oracle required".to_string() }, open)
    } else {
        report(Verdict::Holds, Vec::new())
    }
}

/// Closed connected fundamental surfaces shaped like a boundary component but not boundary-linking.
pub fn boundary_efficiency_candidates(tri: &Triangulation) -> Result<EfficiencyReport, EfficiencyError> {
    let skel = Skeleton::build(tri);
    if skel.boundary_faces.is_empty() {
        return Err(EfficiencyError::NoBoundary);
    }
    peripheral_surface(tri, &skel).map_err(EfficiencyError::NoNormalBoundary)?;
    let genera: Vec<i64> = skel.boundary_components.iter().map(|b| (2 - b.euler_characteristic()) / 2).collect();
    let mut witnesses = Vec::new();
    for s in fundamental_surfaces(tri)?.iter() {
        if s.is_zero() || !s.is_closed(tri) {
            continue;
        }
        let Ok(topo) = surface_topology(tri, s) else { continue };
        let [c] = topo.per_component.as_slice() else { continue };
        if !c.orientable || !genera.contains(&(c.genus as i64)) {
            continue;
        }
        if matches!(recognize_special(tri, &skel, s), Special::BoundaryLinking(_)) {
            continue;
        }
        witnesses.push(Witness::new(tri, &skel, c, format!("closed orientable genus {}", c.genus)));
    }
    let verdict = if witnesses.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Undetermined { reason: "isotopy into the boundary not decided".to_string() }
    };
    Ok(EfficiencyReport {
        property: Property::BoundaryEfficiencyCandidates,
        kind: triangulation_kind(tri, &skel),
        verdict,
        witnesses,
        provenance: Provenance::Fundamental,
        assumptions: vec!["M is irreducible, boundary-irreducible and an-annular".to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn figure_eight_is_zero_efficient() {
        let r = check_zero_efficient(&fixtures::figure_eight());
        assert_eq!((r.kind, r.verdict), (TriangulationKind::Ideal, Verdict::Holds));
        let a = check_annular_efficient(&fixtures::figure_eight());
        assert!(matches!(a.verdict, Verdict::Undetermined { .. }));
    }

    #[test]
    fn solid_torus_is_never_annular_efficient() {
        let r = check_annular_efficient(&fixtures::solid_torus());
        assert_ne!(r.verdict, Verdict::Holds);
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn lone_tetrahedron_has_quad_disks() {
        let r = check_zero_efficient(&fixtures::unglued());
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.witnesses.len(), 3);
        assert!(r.witnesses.iter().all(|w| w.euler == 1 && w.boundary_curves == 1));
    }

    #[test]
    fn layered_has_no_normal_boundary() {
        assert!(matches!(boundary_efficiency_candidates(&fixtures::layered()), Err(EfficiencyError::NoNormalBoundary(_))));
        assert_eq!(boundary_efficiency_candidates(&fixtures::figure_eight()), Err(EfficiencyError::NoBoundary));
    }

    #[test]
    fn two_tetrahedron_sphere() {
        let r = check_zero_efficient(&fixtures::two_tet_sphere());
        assert_eq!(r.kind, TriangulationKind::Closed);
        for w in &r.witnesses {
            assert_eq!((w.euler, w.boundary_curves), (2, 0));
            assert!(!matches!(w.special, Special::VertexLinking(_)));
        }
    }
}
