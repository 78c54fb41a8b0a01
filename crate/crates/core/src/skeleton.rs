//! Edge and vertex classes, boundary structure and vertex-link classification.

use serde::Serialize;
use thiserror::Error;

use crate::normal::{vertex_linking, DiskComplex};
use crate::simplex::{edge_index, face_vertices, EDGE_VERTICES};
use crate::triangulation::Triangulation;
use crate::union_find::{ParityUnionFind, UnionFind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    /// `(tet, tet-edge index)` pairs identified to this edge.
    pub members: Vec<(usize, usize)>,
    pub boundary: bool,
    /// The edge is identified with itself in reverse.
    pub self_reversed: bool,
    /// Vertex classes at the two ends, oriented along the first member.
    pub endpoints: (usize, usize),
}

impl EdgeClass {
    pub fn index(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    /// `(tet, vertex)` corners identified to this vertex.
    pub corners: Vec<(usize, usize)>,
    pub boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    pub faces: Vec<(usize, usize)>,
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl BoundaryComponent {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Skeleton {
    pub edges: Vec<EdgeClass>,
    pub vertices: Vec<VertexClass>,
    /// Edge class of each tet-edge.
    pub tet_edges: Vec<[usize; 6]>,
    /// Whether the tet-edge runs against the orientation of its class's first member.
    pub tet_edge_reversed: Vec<[bool; 6]>,
    pub tet_vertices: Vec<[usize; 4]>,
    pub boundary_faces: Vec<(usize, usize)>,
    pub boundary_components: Vec<BoundaryComponent>,
    /// Boundary component containing each vertex class, if any.
    pub vertex_component: Vec<Option<usize>>,
    /// Boundary component containing each edge class, if any.
    pub edge_component: Vec<Option<usize>>,
}

impl Skeleton {
    pub fn build(tri: &Triangulation) -> Skeleton {
        let n = tri.size();
        let mut edge_uf = ParityUnionFind::new(6 * n);
        let mut self_reversed_roots = Vec::new();
        let mut vert_uf = UnionFind::new(4 * n);

        for t in 0..n {
            for f in 0..4 {
                let Some(g) = tri.gluing(t, f) else { continue };
                let fv = face_vertices(f);
                for &a in &fv {
                    vert_uf.union(4 * t + a, 4 * g.tet + g.perm.apply(a));
                }
                for i in 0..3 {
                    for j in i + 1..3 {
                        let (a, b) = (fv[i], fv[j]);
                        let (ia, ib) = (g.perm.apply(a), g.perm.apply(b));
                        let src = 6 * t + edge_index(a, b);
                        let dst = 6 * g.tet + edge_index(ia, ib);
                        if !edge_uf.union(src, dst, ia > ib) {
                            self_reversed_roots.push(src);
                        }
                    }
                }
            }
        }

        // vertices
        let (vlabels, nv) = vert_uf.labels();
        let mut vertices: Vec<VertexClass> = (0..nv).map(|_| VertexClass { corners: Vec::new(), boundary: false }).collect();
        let mut tet_vertices = vec![[0usize; 4]; n];
        for t in 0..n {
            for v in 0..4 {
                let c = vlabels[4 * t + v];
                tet_vertices[t][v] = c;
                vertices[c].corners.push((t, v));
            }
        }

        // edges: dense labels by first appearance
        let mut root_label = vec![usize::MAX; 6 * n];
        let mut edges: Vec<EdgeClass> = Vec::new();
        let mut tet_edges = vec![[0usize; 6]; n];
        let mut tet_edge_reversed = vec![[false; 6]; n];
        let mut root_parity_of_first = Vec::new();
        for t in 0..n {
            for e in 0..6 {
                let (root, parity) = edge_uf.find(6 * t + e);
                if root_label[root] == usize::MAX {
                    root_label[root] = edges.len();
                    let (a, b) = EDGE_VERTICES[e];
                    edges.push(EdgeClass {
                        members: Vec::new(),
                        boundary: false,
                        self_reversed: false,
                        endpoints: (tet_vertices[t][a], tet_vertices[t][b]),
                    });
                    root_parity_of_first.push(parity);
                }
                let label = root_label[root];
                tet_edges[t][e] = label;
                tet_edge_reversed[t][e] = parity ^ root_parity_of_first[label];
                edges[label].members.push((t, e));
            }
        }
        for x in self_reversed_roots {
            let (root, _) = edge_uf.find(x);
            edges[root_label[root]].self_reversed = true;
        }

        // boundary
        let mut boundary_faces = Vec::new();
        for t in 0..n {
            for f in 0..4 {
                if tri.gluing(t, f).is_none() {
                    boundary_faces.push((t, f));
                    let fv = face_vertices(f);
                    for &a in &fv {
                        vertices[tet_vertices[t][a]].boundary = true;
                    }
                    for i in 0..3 {
                        for j in i + 1..3 {
                            edges[tet_edges[t][edge_index(fv[i], fv[j])]].boundary = true;
                        }
                    }
                }
            }
        }

        // boundary components: faces joined along shared edge classes
        let mut face_uf = UnionFind::new(boundary_faces.len());
        let mut first_face_on_edge = vec![usize::MAX; edges.len()];
        for (i, &(t, f)) in boundary_faces.iter().enumerate() {
            let fv = face_vertices(f);
            for a in 0..3 {
                for b in a + 1..3 {
                    let ec = tet_edges[t][edge_index(fv[a], fv[b])];
                    if first_face_on_edge[ec] == usize::MAX {
                        first_face_on_edge[ec] = i;
                    } else {
                        face_uf.union(first_face_on_edge[ec], i);
                    }
                }
            }
        }
        let (flabels, ncomp) = face_uf.labels();
        let mut boundary_components: Vec<BoundaryComponent> =
            (0..ncomp).map(|_| BoundaryComponent { faces: Vec::new(), edges: Vec::new(), vertices: Vec::new() }).collect();
        let mut vertex_component = vec![None; vertices.len()];
        let mut edge_component = vec![None; edges.len()];
        for (i, &(t, f)) in boundary_faces.iter().enumerate() {
            let c = flabels[i];
            boundary_components[c].faces.push((t, f));
            let fv = face_vertices(f);
            for &a in &fv {
                vertex_component[tet_vertices[t][a]] = Some(c);
            }
            for a in 0..3 {
                for b in a + 1..3 {
                    edge_component[tet_edges[t][edge_index(fv[a], fv[b])]] = Some(c);
                }
            }
        }
        for (v, c) in vertex_component.iter().enumerate() {
            if let Some(c) = c {
                boundary_components[*c].vertices.push(v);
            }
        }
        for (e, c) in edge_component.iter().enumerate() {
            if let Some(c) = c {
                boundary_components[*c].edges.push(e);
            }
        }

        Skeleton {
            edges,
            vertices,
            tet_edges,
            tet_edge_reversed,
            tet_vertices,
            boundary_faces,
            boundary_components,
            vertex_component,
            edge_component,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edge class of the tet-edge joining vertices `a` and `b` of `tet`.
    pub fn edge_of(&self, tet: usize, a: usize, b: usize) -> usize {
        self.tet_edges[tet][edge_index(a, b)]
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_faces.is_empty()
    }
}

/// Topological type of a vertex, read off its link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    /// Link is a 2-sphere.
    InteriorMaterial,
    /// Link is a disk.
    BoundaryMaterial,
    /// Link is a closed orientable surface of the given genus (at least 1).
    Ideal { genus: u64 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("edge {edge} is identified with itself in reverse")]
    BadEdge { edge: usize },
    #[error("link of vertex {vertex} is not a surface")]
    VertexLinkNotSurface { vertex: usize },
    #[error("link of vertex {vertex} is not a sphere, disk or closed orientable surface (euler {euler}, {boundary_curves} boundary curves, orientable {orientable})")]
    BadVertexLink { vertex: usize, euler: i64, boundary_curves: usize, orientable: bool },
}

/// Classifies each vertex class by the topology of its vertex-linking surface.
pub fn classify_vertices(tri: &Triangulation, skel: &Skeleton) -> Result<Vec<VertexKind>, LinkError> {
    if let Some(edge) = skel.edges.iter().position(|e| e.self_reversed) {
        return Err(LinkError::BadEdge { edge });
    }
    let mut out = Vec::with_capacity(skel.vertex_count());
    for v in 0..skel.vertex_count() {
        let link = vertex_linking(tri, skel, v);
        let complex = DiskComplex::build(tri, &link).expect("vertex links have unit coordinates");
        if !complex.is_manifold() {
            return Err(LinkError::VertexLinkNotSurface { vertex: v });
        }
        let topo = complex.topology();
        let bad = LinkError::BadVertexLink {
            vertex: v,
            euler: topo.euler,
            boundary_curves: topo.boundary_curves,
            orientable: topo.orientable,
        };
        if topo.components != 1 {
            return Err(LinkError::VertexLinkNotSurface { vertex: v });
        }
        let kind = match (topo.boundary_curves, topo.euler, topo.orientable) {
            (0, 2, _) => VertexKind::InteriorMaterial,
            (1, 1, _) => VertexKind::BoundaryMaterial,
            (0, chi, true) if chi <= 0 && chi % 2 == 0 => VertexKind::Ideal { genus: ((2 - chi) / 2) as u64 },
            _ => return Err(bad),
        };
        out.push(kind);
    }
    Ok(out)
}
