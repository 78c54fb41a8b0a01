//! Crushing a triangulation along a closed normal surface.
//!
//! `S` cuts every tetrahedron into regions (see [`cells`]). The complement component `X`
//! holding no vertex is assembled from truncated tetrahedra, truncated prisms and product
//! blocks. When the product part is a disjoint union of trivial products over disks, `X` is
//! not entirely product, and the prisms form no cycle, each truncated tetrahedron becomes a
//! tetrahedron of the crushed ideal triangulation. Its hexagons are paired either directly or
//! through a chain of prisms, each prism swapping the two vertices not on its edge.

pub mod cells;
mod transport;

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

pub use cells::{Cells, ComplementComponent, Region, RegionKind, RegionRef, TetLayout};
pub use transport::{lift, place_in_blocks, push_forward, BlockAssignment, DiskType, PlacedDisks, PlacementError};

use crate::normal::{is_admissible, NormalSurface};
use crate::perm::Perm4;
use crate::simplex::{edge_index, face_vertices, quad_partner, quad_side, QUAD_PAIRS};
use crate::skeleton::{classify_vertices, Skeleton, VertexKind};
use crate::triangulation::{Gluing, Triangulation};
use crate::union_find::UnionFind;

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum Rejection {
    #[error("surface is not admissible")]
    NotAdmissible,
    #[error("surface meets the boundary")]
    NotClosed,
    #[error("every complement component contains a vertex")]
    NoVertexFreeComponent,
    #[error("{} vertex-free complement components; designate one of {}", .0.len(), list_refs(.0))]
    AmbiguousX(Vec<RegionRef>),
    #[error("the chosen complement component meets the boundary")]
    XMeetsBoundary,
    #[error("no region {0}")]
    UnknownRegion(RegionRef),
    #[error("designated region {0} lies in a component containing a vertex")]
    DesignatedContainsVertex(RegionRef),
}

fn list_refs(refs: &[RegionRef]) -> String {
    refs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    #[error(transparent)]
    Rejected(#[from] Rejection),
    #[error("X is entirely product")]
    XIsProduct,
    #[error("product component {component} has base euler characteristic {euler}, not a disk")]
    NontrivialProduct { component: usize, euler: i64 },
    #[error("truncated prisms form a cycle: {}", list_prisms(.0))]
    CycleOfTruncatedPrisms(Vec<PrismRef>),
}

impl Rejection {
    pub fn kind(&self) -> &'static str {
        match self {
            Rejection::NotAdmissible => "NotAdmissible",
            Rejection::NotClosed => "NotClosed",
            Rejection::NoVertexFreeComponent => "NoVertexFreeComponent",
            Rejection::AmbiguousX(_) => "AmbiguousX",
            Rejection::XMeetsBoundary => "XMeetsBoundary",
            Rejection::UnknownRegion(_) => "UnknownRegion",
            Rejection::DesignatedContainsVertex(_) => "DesignatedContainsVertex",
        }
    }
}

impl Obstruction {
    /// Variant name, looking through `Rejected`.
    pub fn kind(&self) -> &'static str {
        match self {
            Obstruction::Rejected(r) => r.kind(),
            Obstruction::XIsProduct => "XIsProduct",
            Obstruction::NontrivialProduct { .. } => "NontrivialProduct",
            Obstruction::CycleOfTruncatedPrisms(_) => "CycleOfTruncatedPrisms",
        }
    }
}

fn list_prisms(prisms: &[PrismRef]) -> String {
    prisms.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

/// Regions of `M \ S` with the chosen vertex-free component `X`.
#[derive(Clone, Debug)]
pub struct CellDecomposition {
    pub surface: NormalSurface,
    pub cells: Cells,
    pub x: usize,
}

impl CellDecomposition {
    pub fn in_x(&self, region: usize) -> bool {
        self.cells.regions[region].component == self.x
    }

    pub fn x_regions(&self) -> Vec<usize> {
        self.cells.components[self.x].regions.clone()
    }

    /// Source tetrahedra whose central region is a truncated tetrahedron of `X`, ascending.
    pub fn trunc_tets(&self) -> Vec<usize> {
        self.x_regions()
            .into_iter()
            .filter(|&r| self.cells.regions[r].kind == RegionKind::TruncTet)
            .map(|r| self.cells.regions[r].tet)
            .collect()
    }

    pub fn prisms(&self) -> Vec<PrismRef> {
        self.x_regions()
            .into_iter()
            .filter_map(|r| match self.cells.regions[r].kind {
                RegionKind::TruncPrism { side } => Some(PrismRef { tet: self.cells.regions[r].tet, side }),
                _ => None,
            })
            .collect()
    }

    pub fn count(&self, pred: impl Fn(&RegionKind) -> bool) -> usize {
        self.x_regions().into_iter().filter(|&r| pred(&self.cells.regions[r].kind)).count()
    }
}

/// Builds the regions of `M \ S` and selects `X`.
pub fn decompose(tri: &Triangulation, s: &NormalSurface, designated: Option<&RegionRef>) -> Result<CellDecomposition, Rejection> {
    if s.n_tets() != tri.size() || !is_admissible(tri, s).unwrap_or(false) {
        return Err(Rejection::NotAdmissible);
    }
    if !s.is_closed(tri) {
        return Err(Rejection::NotClosed);
    }
    let counts = s.to_counts().map_err(|_| Rejection::NotAdmissible)?;
    let cells = Cells::build(tri, s, &counts);
    let x = match designated {
        Some(r) => {
            let region = cells.find(r).ok_or_else(|| Rejection::UnknownRegion(r.clone()))?;
            let c = cells.regions[region].component;
            if cells.components[c].has_vertex {
                return Err(Rejection::DesignatedContainsVertex(r.clone()));
            }
            c
        }
        None => {
            let free: Vec<usize> = (0..cells.components.len()).filter(|&c| !cells.components[c].has_vertex).collect();
            match free.as_slice() {
                [] => return Err(Rejection::NoVertexFreeComponent),
                [c] => *c,
                _ => {
                    let reps = free.iter().map(|&c| cells.regions[cells.components[c].regions[0]].reference()).collect();
                    return Err(Rejection::AmbiguousX(reps));
                }
            }
        }
    };
    if cells.components[x].meets_boundary {
        return Err(Rejection::XMeetsBoundary);
    }
    Ok(CellDecomposition { surface: s.clone(), cells, x })
}

/// The truncated prism on `side` of the quads in `tet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrismRef {
    pub tet: usize,
    pub side: usize,
}

impl fmt::Display for PrismRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:prism/{}", self.tet, self.side)
    }
}

/// A hexagonal face of a truncated tetrahedron: the central piece of face `face` of source tet `tet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Hexagon {
    pub tet: usize,
    pub face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrismChain {
    pub prisms: Vec<PrismRef>,
    /// The truncated-tetrahedron hexagons at the two ends, or `None` for a cycle.
    pub ends: Option<(Hexagon, Hexagon)>,
    /// Vertex relabelling from the first end to the second.
    pub perm: Perm4,
}

impl PrismChain {
    pub fn is_cycle(&self) -> bool {
        self.ends.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrismChains {
    /// Terminating chains with at least one prism, then cycles.
    pub chains: Vec<PrismChain>,
}

impl PrismChains {
    pub fn cycle(&self) -> Option<&PrismChain> {
        self.chains.iter().find(|c| c.is_cycle())
    }
}

enum Step {
    Hexagon(Hexagon, Perm4),
    Prism(PrismRef, usize, Perm4),
}

impl CellDecomposition {
    /// Crosses the gluing on face `face` of `tet` (central piece) and reports what lies beyond,
    /// composing `perm` with the gluing (and the prism's swap when a prism is entered).
    fn step(&self, tri: &Triangulation, tet: usize, face: usize, perm: Perm4) -> Step {
        let g = tri.gluing(tet, face).expect("X avoids the boundary");
        let perm = g.perm.compose(&perm);
        let f = g.perm.apply(face);
        let region = self.cells.central_region(g.tet, f);
        match self.cells.regions[region].kind {
            RegionKind::TruncTet => Step::Hexagon(Hexagon { tet: g.tet, face: f }, perm),
            RegionKind::TruncPrism { side } => {
                let (j, _) = self.cells.layouts[g.tet].quads.expect("prisms sit beside quads");
                let [c, d] = if side == 0 { QUAD_PAIRS[j].1 } else { QUAD_PAIRS[j].0 };
                let swap = Perm4::transposition(c, d);
                Step::Prism(PrismRef { tet: g.tet, side }, swap.apply(f), swap.compose(&perm))
            }
            _ => unreachable!("hexagons of X meet only truncated tetrahedra and prisms"),
        }
    }

    /// Follows the hexagon gluings starting across face `face` of `tet`.
    fn walk(&self, tri: &Triangulation, tet: usize, face: usize, stop: Option<PrismRef>) -> (Vec<PrismRef>, Option<Hexagon>, Perm4) {
        let mut prisms = Vec::new();
        let (mut t, mut f, mut perm) = (tet, face, Perm4::IDENTITY);
        loop {
            match self.step(tri, t, f, perm) {
                Step::Hexagon(h, p) => return (prisms, Some(h), p),
                Step::Prism(prism, exit, p) => {
                    if Some(prism) == stop {
                        return (prisms, None, p);
                    }
                    prisms.push(prism);
                    (t, f, perm) = (prism.tet, exit, p);
                }
            }
        }
    }
}

/// The hexagon faces of a prism: the central pieces of the faces opposite the other pair's vertices.
fn prism_hexagons(dec: &CellDecomposition, prism: PrismRef) -> [usize; 2] {
    let (j, _) = dec.cells.layouts[prism.tet].quads.expect("prisms sit beside quads");
    if prism.side == 0 {
        QUAD_PAIRS[j].1
    } else {
        QUAD_PAIRS[j].0
    }
}

/// Partitions the prisms of `X` into terminating chains and cycles.
pub fn prism_chains(tri: &Triangulation, dec: &CellDecomposition) -> PrismChains {
    let mut seen: Vec<PrismRef> = Vec::new();
    let mut chains = Vec::new();
    for t in dec.trunc_tets() {
        for f in 0..4 {
            let (prisms, end, perm) = dec.walk(tri, t, f, None);
            let start = Hexagon { tet: t, face: f };
            let end = end.expect("walks from a truncated tetrahedron terminate");
            if prisms.is_empty() || (end.tet, end.face) < (start.tet, start.face) {
                continue;
            }
            seen.extend(prisms.iter().copied());
            chains.push(PrismChain { prisms, ends: Some((start, end)), perm });
        }
    }
    for prism in dec.prisms() {
        if seen.contains(&prism) {
            continue;
        }
        let [_, exit] = prism_hexagons(dec, prism);
        let (mut prisms, end, perm) = dec.walk(tri, prism.tet, exit, Some(prism));
        debug_assert!(end.is_none());
        prisms.insert(0, prism);
        seen.extend(prisms.iter().copied());
        chains.push(PrismChain { prisms, ends: None, perm });
    }
    PrismChains { chains }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductComponent {
    pub vertical_edges: usize,
    pub trapezoids: usize,
    pub blocks: Vec<RegionRef>,
}

impl ProductComponent {
    /// Euler characteristic of the base complex.
    pub fn euler(&self) -> i64 {
        self.vertical_edges as i64 - self.trapezoids as i64 + self.blocks.len() as i64
    }

    pub fn is_trivial(&self) -> bool {
        self.euler() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductRegion {
    pub components: Vec<ProductComponent>,
    pub x_is_product: bool,
}

impl ProductRegion {
    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(ProductComponent::is_trivial)
    }
}

/// Interns keys into union-find nodes.
struct Nodes<K> {
    index: HashMap<K, usize>,
    uf: UnionFind,
}

impl<K: std::hash::Hash + Eq> Nodes<K> {
    fn new() -> Self {
        Nodes { index: HashMap::new(), uf: UnionFind::new(0) }
    }

    fn id(&mut self, key: K) -> usize {
        let next = self.index.len();
        *self.index.entry(key).or_insert_with(|| {
            self.uf.push();
            next
        })
    }
}

/// Components of the combinatorial product: vertical edges, trapezoids and product blocks of `X`.
pub fn product_region(tri: &Triangulation, dec: &CellDecomposition) -> ProductRegion {
    let cells = &dec.cells;
    let n = tri.size();
    // vertical edges keyed (tet, tet-edge, segment counted from the lower endpoint)
    let mut verticals: Nodes<(usize, usize, usize)> = Nodes::new();
    let weight = |t: usize, a: usize, b: usize| {
        let c = (0..4).find(|&c| c != a && c != b).unwrap();
        cells.layouts[t].arcs(c, a) + cells.layouts[t].arcs(c, b)
    };
    let segment_key = |t: usize, a: usize, b: usize, from_a: usize| {
        let w = weight(t, a, b);
        (t, edge_index(a, b), if a < b { from_a } else { w - from_a })
    };
    for t in 0..n {
        for a in 0..4 {
            for b in a + 1..4 {
                let w = weight(t, a, b);
                let c = (0..4).find(|&c| c != a && c != b).unwrap();
                let (na, nb) = (cells.layouts[t].arcs(c, a), cells.layouts[t].arcs(c, b));
                for i in 1..w {
                    let region = if i < na {
                        cells.strip_region(t, c, a, i)
                    } else if w - i < nb {
                        cells.strip_region(t, c, b, w - i)
                    } else {
                        cells.central_region(t, c)
                    };
                    if dec.in_x(region) {
                        verticals.id((t, edge_index(a, b), i));
                    }
                }
            }
        }
    }
    let mut trapezoids: Nodes<(usize, usize, usize, usize)> = Nodes::new();
    for t in 0..n {
        for f in 0..4 {
            for v in face_vertices(f) {
                for p in 1..cells.layouts[t].arcs(f, v) {
                    if dec.in_x(cells.strip_region(t, f, v, p)) {
                        trapezoids.id((t, f, v, p));
                    }
                }
            }
        }
    }
    for ((t, f), g) in tri.internal_face_pairs() {
        let Gluing { tet: u, perm } = g;
        for v in face_vertices(f) {
            for p in 1..cells.layouts[t].arcs(f, v) {
                if let (Some(&x), Some(&y)) =
                    (trapezoids.index.get(&(t, f, v, p)), trapezoids.index.get(&(u, perm.apply(f), perm.apply(v), p)))
                {
                    trapezoids.uf.union(x, y);
                }
            }
            for w in face_vertices(f) {
                if w <= v {
                    continue;
                }
                for i in 1..weight(t, v, w) {
                    let x = verticals.index.get(&segment_key(t, v, w, i)).copied();
                    let y = verticals.index.get(&segment_key(u, perm.apply(v), perm.apply(w), i)).copied();
                    if let (Some(x), Some(y)) = (x, y) {
                        verticals.uf.union(x, y);
                    }
                }
            }
        }
    }

    let blocks: Vec<usize> = dec.x_regions().into_iter().filter(|&r| cells.regions[r].kind.is_product_block()).collect();
    let (vlabels, vcount) = verticals.uf.labels();
    let (tlabels, tcount) = trapezoids.uf.labels();
    // combined nodes: vertical classes, then trapezoid classes, then blocks
    let mut all = UnionFind::new(vcount + tcount + blocks.len());
    for (&(t, f, v, p), &id) in &trapezoids.index {
        for w in face_vertices(f) {
            if w == v {
                continue;
            }
            let key = segment_key(t, v, w, p);
            let vid = verticals.index[&key];
            all.union(vcount + tlabels[id], vlabels[vid]);
        }
    }
    for (k, &r) in blocks.iter().enumerate() {
        let region = &cells.regions[r];
        let t = region.tet;
        let layout = cells.layouts[t];
        let walls: Vec<(usize, usize, usize)> = match region.kind {
            RegionKind::TriBlock { vertex, layer } => {
                (0..4).filter(|&f| f != vertex).map(|f| (f, vertex, layer + 1)).collect()
            }
            RegionKind::QuadBlock { layer } => {
                let (j, q) = layout.quads.unwrap();
                (0..4)
                    .map(|f| {
                        let c = quad_partner(j, f);
                        let k = if quad_side(j, c) == 0 { layer } else { q - layer };
                        (f, c, layout.triangles[c] + k)
                    })
                    .collect()
            }
            _ => unreachable!(),
        };
        for (f, v, p) in walls {
            let id = trapezoids.index[&(t, f, v, p)];
            all.union(vcount + tcount + k, vcount + tlabels[id]);
        }
    }
    let (labels, count) = all.labels();
    let mut components: Vec<ProductComponent> =
        (0..count).map(|_| ProductComponent { vertical_edges: 0, trapezoids: 0, blocks: Vec::new() }).collect();
    for i in 0..vcount {
        components[labels[i]].vertical_edges += 1;
    }
    for i in 0..tcount {
        components[labels[vcount + i]].trapezoids += 1;
    }
    for (k, &r) in blocks.iter().enumerate() {
        components[labels[vcount + tcount + k]].blocks.push(cells.regions[r].reference());
    }
    let x_is_product = dec.x_regions().iter().all(|&r| cells.regions[r].kind.is_product_block());
    ProductRegion { components, x_is_product }
}

/// How a face of the crushed triangulation was paired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FaceRoute {
    Direct,
    /// Through the prisms of the given chain.
    Chain(usize),
}

/// A successful crush.
#[derive(Clone, Debug)]
pub struct CrushOutcome {
    pub source: Triangulation,
    pub decomposition: CellDecomposition,
    pub chains: PrismChains,
    pub product: ProductRegion,
    pub crushed: Triangulation,
    /// Source tetrahedron of each crushed tetrahedron.
    pub tet_source: Vec<usize>,
    pub routes: Vec<[FaceRoute; 4]>,
    /// Whether every vertex of the crushed triangulation is ideal.
    pub ideal: bool,
}

impl CrushOutcome {
    pub fn surface(&self) -> &NormalSurface {
        &self.decomposition.surface
    }

    /// The correspondence sidecar: one `tet` line per crushed tetrahedron, then one `face`
    /// line per crushed face, then one `chain` line per prism chain.
    pub fn correspondence(&self) -> String {
        let mut out = String::from("# nsurf crush correspondence v1\n");
        for (i, t) in self.tet_source.iter().enumerate() {
            writeln!(out, "tet {i} {t}").unwrap();
        }
        for i in 0..self.crushed.size() {
            for f in 0..4 {
                let g = self.crushed.gluing(i, f).expect("crushed triangulations are closed");
                write!(out, "face {i} {f} {} {} {}", g.tet, g.perm.apply(f), g.perm).unwrap();
                match self.routes[i][f] {
                    FaceRoute::Direct => out.push_str(" direct\n"),
                    FaceRoute::Chain(c) => writeln!(out, " chain {c}").unwrap(),
                }
            }
        }
        for (c, chain) in self.chains.chains.iter().enumerate() {
            writeln!(out, "chain {c} {}", list_prisms(&chain.prisms)).unwrap();
        }
        out
    }
}

/// Crushes `tri` along `s`, or names the condition that fails.
pub fn crush_along(tri: &Triangulation, s: &NormalSurface, designated: Option<&RegionRef>) -> Result<CrushOutcome, Obstruction> {
    let dec = decompose(tri, s, designated)?;
    let product = product_region(tri, &dec);
    if product.x_is_product {
        return Err(Obstruction::XIsProduct);
    }
    if let Some((component, c)) = product.components.iter().enumerate().find(|(_, c)| !c.is_trivial()) {
        return Err(Obstruction::NontrivialProduct { component, euler: c.euler() });
    }
    let chains = prism_chains(tri, &dec);
    if let Some(cycle) = chains.cycle() {
        return Err(Obstruction::CycleOfTruncatedPrisms(cycle.prisms.clone()));
    }

    let tet_source = dec.trunc_tets();
    let mut index = vec![usize::MAX; tri.size()];
    for (i, &t) in tet_source.iter().enumerate() {
        index[t] = i;
    }
    let mut crushed = Triangulation::unglued(format!("{}-crushed", tri.name()), tet_source.len());
    let mut routes = vec![[FaceRoute::Direct, FaceRoute::Direct, FaceRoute::Direct, FaceRoute::Direct]; tet_source.len()];
    for (i, &t) in tet_source.iter().enumerate() {
        for f in 0..4 {
            let (prisms, end, perm) = dec.walk(tri, t, f, None);
            let end = end.expect("no cycles remain");
            crushed.join(i, f, index[end.tet], perm);
            if !prisms.is_empty() {
                let c = chains
                    .chains
                    .iter()
                    .position(|c| c.prisms.first() == prisms.first() || c.prisms.last() == prisms.first())
                    .expect("every walk belongs to a chain");
                routes[i][f] = FaceRoute::Chain(c);
            }
        }
    }
    let skel = Skeleton::build(&crushed);
    let ideal = classify_vertices(&crushed, &skel)
        .map(|kinds| kinds.iter().all(|k| matches!(k, VertexKind::Ideal { .. })))
        .unwrap_or(false);
    Ok(CrushOutcome { source: tri.clone(), decomposition: dec, chains, product, crushed, tet_source, routes, ideal })
}
