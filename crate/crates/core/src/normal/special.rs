//! Vertex-linking, boundary-linking and thin edge-linking surfaces.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use super::{is_admissible, vertex_linking, DiskComplex, NormalSurface, COORDS_PER_TET};
use crate::simplex::{edge_index, face_vertices, quad_type, EDGE_VERTICES};
use crate::skeleton::Skeleton;
use crate::triangulation::Triangulation;
use crate::union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Special {
    VertexLinking(usize),
    /// Boundary-linking surface of the given boundary component.
    BoundaryLinking(usize),
    ThinEdgeLinking(usize),
    None,
}

/// The cells of one tetrahedron that lie in `∂M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryPattern {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<usize>,
}

impl fmt::Display for BoundaryPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        let es: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}{b}")).collect();
        let fs: Vec<String> = self.faces.iter().map(|x| x.to_string()).collect();
        write!(f, "vertices [{}] edges [{}] faces [{}]", vs.join(" "), es.join(" "), fs.join(" "))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PeripheralObstruction {
    #[error("not normal: in tetrahedron {tet} the boundary pattern {pattern} has a non-normal frontier")]
    NotNormal { tet: usize, pattern: BoundaryPattern },
}

/// The boundary-linking surface of each boundary component, indexed like
/// [`Skeleton::boundary_components`].
///
/// Inside each tetrahedron the boundary cells split into connected pieces; each piece
/// must be contractible and its frontier must cross every tet-edge at most once, in
/// which case the frontier is a normal triangle or quad.
pub fn peripheral_surface(tri: &Triangulation, skel: &Skeleton) -> Result<Vec<NormalSurface>, PeripheralObstruction> {
    let mut out: Vec<Vec<u64>> = vec![vec![0; COORDS_PER_TET * tri.size()]; skel.boundary_components.len()];
    for t in 0..tri.size() {
        let pattern = boundary_pattern(tri, skel, t);
        let obstruction = || PeripheralObstruction::NotNormal { tet: t, pattern: pattern.clone() };
        let mut uf = UnionFind::new(4);
        for &(a, b) in &pattern.edges {
            uf.union(a, b);
        }
        let (labels, _) = uf.labels();
        let mut seen = Vec::new();
        for &v in &pattern.vertices {
            let label = labels[v];
            if seen.contains(&label) {
                continue;
            }
            seen.push(label);
            let piece: Vec<usize> = pattern.vertices.iter().copied().filter(|&w| labels[w] == label).collect();
            let edges = pattern.edges.iter().filter(|(a, _)| piece.contains(a)).count();
            let faces = pattern.faces.iter().filter(|&&f| face_vertices(f).iter().all(|w| piece.contains(w))).count();
            if piece.len() as i64 - edges as i64 + faces as i64 != 1 {
                return Err(obstruction());
            }
            let mut crossed = [0u8; 6];
            for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                if pattern.edges.contains(&(a, b)) {
                    continue;
                }
                crossed[e] = piece.contains(&a) as u8 + piece.contains(&b) as u8;
            }
            if crossed.iter().any(|&c| c > 1) {
                return Err(obstruction());
            }
            let coord = match frontier_disk(&crossed) {
                Some(c) => c,
                None => return Err(obstruction()),
            };
            let comp = skel.vertex_component[skel.tet_vertices[t][v]].expect("boundary vertex lies in a boundary component");
            out[comp][COORDS_PER_TET * t + coord] += 1;
        }
    }
    let surfaces: Vec<NormalSurface> = out.iter().map(|c| NormalSurface::from_u64s(c)).collect();
    debug_assert!(surfaces.iter().all(|s| is_admissible(tri, s).unwrap_or(false)));
    Ok(surfaces)
}

/// Coordinate index of the normal disk crossing exactly the tet-edges marked in `crossed`.
fn frontier_disk(crossed: &[u8; 6]) -> Option<usize> {
    let set: Vec<(usize, usize)> = EDGE_VERTICES.iter().enumerate().filter(|(e, _)| crossed[*e] == 1).map(|(_, &p)| p).collect();
    match set.len() {
        3 => (0..4).find(|&v| set.iter().all(|&(a, b)| a == v || b == v)),
        4 => {
            let missing: Vec<(usize, usize)> = EDGE_VERTICES.iter().copied().filter(|p| !set.contains(p)).collect();
            let (a, b) = missing[0];
            let (c, d) = missing[1];
            let disjoint = a != c && a != d && b != c && b != d;
            disjoint.then(|| 4 + quad_type(a, b))
        }
        _ => None,
    }
}

fn boundary_pattern(tri: &Triangulation, skel: &Skeleton, t: usize) -> BoundaryPattern {
    let vertices = (0..4).filter(|&v| skel.vertices[skel.tet_vertices[t][v]].boundary).collect();
    let edges = EDGE_VERTICES.iter().copied().filter(|&(a, b)| skel.edges[skel.tet_edges[t][edge_index(a, b)]].boundary).collect();
    let faces = (0..4).filter(|&f| tri.gluing(t, f).is_none()).collect();
    BoundaryPattern { vertices, edges, faces }
}

/// The cycle of quads around edge class `edge`, when that is an admissible annulus.
///
/// Requires `edge` to lie in `∂M` or to join distinct boundary components, and no face
/// to carry two tet-edges of its class.
pub fn thin_edge_pattern(tri: &Triangulation, skel: &Skeleton, edge: usize) -> Option<NormalSurface> {
    let class = &skel.edges[edge];
    if !class.boundary {
        let (a, b) = class.endpoints;
        match (skel.vertex_component[a], skel.vertex_component[b]) {
            (Some(x), Some(y)) if x != y => {}
            _ => return None,
        }
    }
    for t in 0..tri.size() {
        for f in 0..4 {
            let fv = face_vertices(f);
            let hits = [(fv[0], fv[1]), (fv[0], fv[2]), (fv[1], fv[2])]
                .iter()
                .filter(|&&(a, b)| skel.edge_of(t, a, b) == edge)
                .count();
            if hits > 1 {
                return None;
            }
        }
    }
    let mut s = NormalSurface::zero(tri.size());
    for &(t, e) in &class.members {
        let (a, b) = EDGE_VERTICES[e];
        let idx = COORDS_PER_TET * t + 4 + quad_type(a, b);
        s.set(idx, &s.coords()[idx] + BigUint::from(1u8));
    }
    if s.quad_violation().is_some() || !is_admissible(tri, &s).unwrap_or(false) {
        return None;
    }
    let topo = DiskComplex::build(tri, &s).ok()?.topology();
    (topo.components == 1 && topo.per_component[0].is_annulus()).then_some(s)
}

/// Recognises canonical surfaces by exact coordinate equality.
pub fn recognize_special(tri: &Triangulation, skel: &Skeleton, surface: &NormalSurface) -> Special {
    if let Some(v) = (0..skel.vertex_count()).find(|&v| vertex_linking(tri, skel, v) == *surface) {
        return Special::VertexLinking(v);
    }
    if !skel.boundary_faces.is_empty() {
        if let Ok(peripheral) = peripheral_surface(tri, skel) {
            if let Some(c) = peripheral.iter().position(|p| p == surface) {
                return Special::BoundaryLinking(c);
            }
        }
    }
    if (0..tri.size()).any(|t| (0..4).any(|v| !surface.triangle(t, v).is_zero())) {
        return Special::None;
    }
    match (0..skel.edge_count()).find(|&e| thin_edge_pattern(tri, skel, e).as_ref() == Some(surface)) {
        Some(e) => Special::ThinEdgeLinking(e),
        None => Special::None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::perm::Perm4;

    #[test]
    fn single_boundary_face_gives_opposite_triangle() {
        // two tetrahedra glued along three faces; each keeps one face on the boundary
        let mut tri = Triangulation::unglued("pair", 2);
        let id = Perm4::new([0, 2, 1, 3]).unwrap();
        for f in [0, 1, 2] {
            tri.join(0, f, 1, id);
        }
        let skel = Skeleton::build(&tri);
        let pattern = boundary_pattern(&tri, &skel, 0);
        assert_eq!((pattern.vertices.len(), pattern.edges.len(), pattern.faces), (3, 3, vec![3]));
        let p = peripheral_surface(&tri, &skel).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].to_string(), "0 0 0 1 0 0 0 0 0 0 1 0 0 0");
    }

    #[test]
    fn lone_tetrahedron_boundary_is_not_normal() {
        let tri = Triangulation::unglued("t", 1);
        let skel = Skeleton::build(&tri);
        assert!(matches!(peripheral_surface(&tri, &skel), Err(PeripheralObstruction::NotNormal { tet: 0, .. })));
    }

    #[test]
    fn frontier_disks_by_crossing_set() {
        // star of vertex 2 -> triangle at 2
        let mut c = [0u8; 6];
        for (a, b) in [(0, 2), (1, 2), (2, 3)] {
            c[edge_index(a, b)] = 1;
        }
        assert_eq!(frontier_disk(&c), Some(2));
        // 4-cycle missing 01 and 23 -> quad type 0
        let mut c = [1u8; 6];
        c[0] = 0;
        c[5] = 0;
        assert_eq!(frontier_disk(&c), Some(4));
        // path of three edges is not a disk
        let mut c = [0u8; 6];
        for (a, b) in [(0, 1), (1, 2), (2, 3)] {
            c[edge_index(a, b)] = 1;
        }
        assert_eq!(frontier_disk(&c), None);
    }

    #[test]
    fn links_are_recognised() {
        for tri in fixtures::all_named() {
            let skel = Skeleton::build(&tri);
            for v in 0..skel.vertex_count() {
                let link = vertex_linking(&tri, &skel, v);
                assert_eq!(recognize_special(&tri, &skel, &link), Special::VertexLinking(v), "{}", tri.name());
            }
        }
    }

    #[test]
    fn thin_patterns_are_annuli() {
        for tri in fixtures::all_named() {
            let skel = Skeleton::build(&tri);
            for e in 0..skel.edge_count() {
                if let Some(s) = thin_edge_pattern(&tri, &skel, e) {
                    let topo = DiskComplex::build(&tri, &s).unwrap().topology();
                    assert_eq!((topo.euler, topo.boundary_curves), (0, 2), "{} edge {e}", tri.name());
                    assert_eq!(recognize_special(&tri, &skel, &s), Special::ThinEdgeLinking(e));
                }
            }
        }
    }
}
