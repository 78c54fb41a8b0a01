//! Regions of `M \ S` inside each tetrahedron and the face pieces that glue them.
//!
//! With `t_v` triangles of `S` at corner `v` and `q` quads of type `j`, a tetrahedron splits
//! into a corner region and `t_v - 1` triangular blocks at every corner with `t_v ≥ 1`, plus
//! either one central region (`q = 0`) or `q + 1` slabs between the quads. Slab 0 lies on the
//! side of the pair holding vertex 0.
//!
//! On a face, the arcs cutting off corner `v` bound strips `(v, p)`: strip `p` lies between
//! arc `p - 1` and arc `p` (strip 0 touches the vertex). Beyond every arc lies the central piece.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::normal::NormalSurface;
use crate::simplex::{face_vertices, quad_partner, quad_side, quad_type, QUAD_PAIRS};
use crate::triangulation::Triangulation;
use crate::union_find::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RegionKind {
    /// Contains vertex `vertex`, cut off by its innermost triangle.
    Corner { vertex: usize },
    /// Between triangles `layer` and `layer + 1` at `vertex`.
    TriBlock { vertex: usize, layer: usize },
    /// The central region of a tetrahedron without quads, every corner truncated.
    TruncTet,
    /// The central region of a tetrahedron without quads that still holds some vertices.
    Central { vertices: Vec<usize> },
    /// The outer slab on `side` of the quads, both of its vertices truncated.
    TruncPrism { side: usize },
    /// The outer slab on `side` of the quads, holding some of its vertices.
    SideSlab { side: usize, vertices: Vec<usize> },
    /// Between quads `layer - 1` and `layer`.
    QuadBlock { layer: usize },
}

impl RegionKind {
    pub fn contains_vertex(&self) -> bool {
        matches!(self, RegionKind::Corner { .. } | RegionKind::Central { .. } | RegionKind::SideSlab { .. })
    }

    pub fn is_product_block(&self) -> bool {
        matches!(self, RegionKind::TriBlock { .. } | RegionKind::QuadBlock { .. })
    }
}

/// A region named by its tetrahedron and kind, e.g. `0:tet`, `1:tri/2/0`, `3:quad/1`, `2:prism/0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RegionRef {
    pub tet: usize,
    pub kind: RegionKind,
}

impl fmt::Display for RegionRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match &self.kind {
            RegionKind::Corner { vertex } => write!(f, "{}:corner/{vertex}", self.tet),
            RegionKind::TriBlock { vertex, layer } => write!(f, "{}:tri/{vertex}/{layer}", self.tet),
            RegionKind::TruncTet => write!(f, "{}:tet", self.tet),
            RegionKind::Central { vertices } => write!(f, "{}:central/{}", self.tet, list(vertices)),
            RegionKind::TruncPrism { side } => write!(f, "{}:prism/{side}", self.tet),
            RegionKind::SideSlab { side, vertices } => write!(f, "{}:slab/{side}/{}", self.tet, list(vertices)),
            RegionKind::QuadBlock { layer } => write!(f, "{}:quad/{layer}", self.tet),
        }
    }
}

impl FromStr for RegionRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad region reference `{s}`");
        let (tet, rest) = s.split_once(':').ok_or_else(bad)?;
        let tet: usize = tet.parse().map_err(|_| bad())?;
        let parts: Vec<&str> = rest.split('/').collect();
        let num = |i: usize| parts.get(i).and_then(|p| p.parse::<usize>().ok()).ok_or_else(bad);
        let list = |i: usize| -> Result<Vec<usize>, String> {
            parts.get(i).ok_or_else(bad)?.split(',').map(|x| x.parse().map_err(|_| bad())).collect()
        };
        let kind = match parts[0] {
            "corner" => RegionKind::Corner { vertex: num(1)? },
            "tri" => RegionKind::TriBlock { vertex: num(1)?, layer: num(2)? },
            "tet" => RegionKind::TruncTet,
            "central" => RegionKind::Central { vertices: list(1)? },
            "prism" => RegionKind::TruncPrism { side: num(1)? },
            "slab" => RegionKind::SideSlab { side: num(1)?, vertices: list(2)? },
            "quad" => RegionKind::QuadBlock { layer: num(1)? },
            _ => return Err(bad()),
        };
        Ok(RegionRef { tet, kind })
    }
}

/// Counts of `S` in one tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TetLayout {
    pub triangles: [usize; 4],
    /// Quad type and count, when `S` has quads here.
    pub quads: Option<(usize, usize)>,
}

impl TetLayout {
    /// Arcs of `S` cutting off corner `v` of face `f`.
    pub fn arcs(&self, f: usize, v: usize) -> usize {
        self.triangles[v] + self.quads_at(f, v)
    }

    /// Quad arcs of `S` cutting off corner `v` of face `f`.
    pub fn quads_at(&self, f: usize, v: usize) -> usize {
        match self.quads {
            Some((j, q)) if quad_type(v, f) == j => q,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct TetRegions {
    pub corner: [Option<usize>; 4],
    pub tri_blocks: [Vec<usize>; 4],
    pub central: Option<usize>,
    pub slabs: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Region {
    pub tet: usize,
    pub kind: RegionKind,
    pub component: usize,
}

impl Region {
    pub fn reference(&self) -> RegionRef {
        RegionRef { tet: self.tet, kind: self.kind.clone() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementComponent {
    pub regions: Vec<usize>,
    pub has_vertex: bool,
    pub meets_boundary: bool,
}

/// All regions of `M \ S` and the components they form.
#[derive(Clone, Debug)]
pub struct Cells {
    pub layouts: Vec<TetLayout>,
    pub regions: Vec<Region>,
    pub(crate) per_tet: Vec<TetRegions>,
    pub components: Vec<ComplementComponent>,
}

impl Cells {
    pub fn build(tri: &Triangulation, s: &NormalSurface, counts: &[usize]) -> Cells {
        let n = tri.size();
        let mut layouts = Vec::with_capacity(n);
        let mut regions: Vec<Region> = Vec::new();
        let mut per_tet = Vec::with_capacity(n);
        let push = |regions: &mut Vec<Region>, tet: usize, kind: RegionKind| {
            regions.push(Region { tet, kind, component: 0 });
            regions.len() - 1
        };
        for t in 0..n {
            let c = &counts[7 * t..7 * t + 7];
            let triangles = [c[0], c[1], c[2], c[3]];
            let quads = s.quad_type_in(t).map(|j| (j, c[4 + j]));
            layouts.push(TetLayout { triangles, quads });
            let mut tr = TetRegions { corner: [None; 4], tri_blocks: Default::default(), central: None, slabs: Vec::new() };
            for v in 0..4 {
                if triangles[v] >= 1 {
                    tr.corner[v] = Some(push(&mut regions, t, RegionKind::Corner { vertex: v }));
                    for layer in 0..triangles[v] - 1 {
                        tr.tri_blocks[v].push(push(&mut regions, t, RegionKind::TriBlock { vertex: v, layer }));
                    }
                }
            }
            match quads {
                None => {
                    let vertices: Vec<usize> = (0..4).filter(|&v| triangles[v] == 0).collect();
                    let kind = if vertices.is_empty() { RegionKind::TruncTet } else { RegionKind::Central { vertices } };
                    tr.central = Some(push(&mut regions, t, kind));
                }
                Some((j, q)) => {
                    for m in 0..=q {
                        let kind = if m == 0 || m == q {
                            let side = if m == 0 { 0 } else { 1 };
                            let pair = if side == 0 { QUAD_PAIRS[j].0 } else { QUAD_PAIRS[j].1 };
                            let vertices: Vec<usize> = pair.iter().copied().filter(|&v| triangles[v] == 0).collect();
                            if vertices.is_empty() {
                                RegionKind::TruncPrism { side }
                            } else {
                                RegionKind::SideSlab { side, vertices }
                            }
                        } else {
                            RegionKind::QuadBlock { layer: m }
                        };
                        tr.slabs.push(push(&mut regions, t, kind));
                    }
                }
            }
            per_tet.push(tr);
        }

        let mut cells = Cells { layouts, regions, per_tet, components: Vec::new() };
        let mut uf = UnionFind::new(cells.regions.len());
        let mut meets_boundary = vec![false; cells.regions.len()];
        for t in 0..n {
            for f in 0..4 {
                let pieces = cells.face_pieces(t, f);
                match tri.gluing(t, f) {
                    None => {
                        for (_, r) in pieces {
                            meets_boundary[r] = true;
                        }
                    }
                    Some(g) => {
                        for (piece, r) in pieces {
                            let other = cells.piece_region(g.tet, g.perm.apply(f), piece.map(|(v, p)| (g.perm.apply(v), p)));
                            uf.union(r, other);
                        }
                    }
                }
            }
        }
        let (labels, count) = uf.labels();
        let mut components: Vec<ComplementComponent> =
            (0..count).map(|_| ComplementComponent { regions: Vec::new(), has_vertex: false, meets_boundary: false }).collect();
        for (r, region) in cells.regions.iter_mut().enumerate() {
            let c = labels[r];
            region.component = c;
            components[c].regions.push(r);
            components[c].has_vertex |= region.kind.contains_vertex();
            components[c].meets_boundary |= meets_boundary[r];
        }
        cells.components = components;
        cells
    }

    /// Region holding strip `(v, p)` of face `f` of `tet`.
    pub fn strip_region(&self, tet: usize, f: usize, v: usize, p: usize) -> usize {
        let layout = &self.layouts[tet];
        let regions = &self.per_tet[tet];
        let tv = layout.triangles[v];
        if p < tv {
            return if p == 0 { regions.corner[v].expect("corner exists") } else { regions.tri_blocks[v][p - 1] };
        }
        let (j, q) = layout.quads.expect("strip beyond the triangles lies between quads");
        debug_assert!(quad_type(v, f) == j && p < tv + q);
        let k = p - tv;
        regions.slabs[if quad_side(j, v) == 0 { k } else { q - k }]
    }

    /// Region holding the central piece of face `f` of `tet`.
    pub fn central_region(&self, tet: usize, f: usize) -> usize {
        let regions = &self.per_tet[tet];
        match self.layouts[tet].quads {
            None => regions.central.expect("central region exists"),
            Some((j, q)) => {
                let side_of_face = quad_side(j, quad_partner(j, f));
                regions.slabs[if side_of_face == 0 { q } else { 0 }]
            }
        }
    }

    pub(crate) fn piece_region(&self, tet: usize, f: usize, piece: Option<(usize, usize)>) -> usize {
        match piece {
            Some((v, p)) => self.strip_region(tet, f, v, p),
            None => self.central_region(tet, f),
        }
    }

    /// Every piece of face `f` of `tet` with its region: strips as `Some((v, p))`, the central piece as `None`.
    pub(crate) fn face_pieces(&self, tet: usize, f: usize) -> Vec<(Option<(usize, usize)>, usize)> {
        let mut out = Vec::new();
        for v in face_vertices(f) {
            for p in 0..self.layouts[tet].arcs(f, v) {
                out.push((Some((v, p)), self.strip_region(tet, f, v, p)));
            }
        }
        out.push((None, self.central_region(tet, f)));
        out
    }

    pub fn find(&self, r: &RegionRef) -> Option<usize> {
        self.regions.iter().position(|x| x.tet == r.tet && x.kind == r.kind)
    }
}
