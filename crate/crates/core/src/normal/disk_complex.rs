//! The cell structure a normal surface inherits from the triangulation.
//!
//! Every coordinate copy becomes one disk. On each face the arcs cutting off corner `v`
//! are stacked outward from `v`: triangle copies first, then quad copies. Quad copy `c`
//! of type `j` is numbered from the side holding vertex 0, so its position from a corner
//! on the far side is reversed. Surface vertices are the points where disks cross
//! tetrahedron edges, indexed from the lower-numbered endpoint.

use serde::Serialize;

use super::{NormalSurface, SurfaceError, COORDS_PER_TET};
use crate::simplex::{edge_index, face_vertices, quad_partner, quad_side, quad_type, EDGE_VERTICES};
use crate::triangulation::Triangulation;
use crate::union_find::{ParityUnionFind, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DiskKind {
    Triangle(usize),
    Quad(usize),
}

impl DiskKind {
    /// Index into the 7 per-tetrahedron coordinates.
    pub fn coordinate(self) -> usize {
        match self {
            DiskKind::Triangle(v) => v,
            DiskKind::Quad(j) => 4 + j,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Disk {
    tet: usize,
    kind: DiskKind,
    copy: usize,
}

/// One normal arc on one face of one tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArcSlot {
    pub tet: usize,
    pub face: usize,
    /// The corner of the face that the arc cuts off.
    pub corner: usize,
    /// Position counted outward from the corner.
    pub position: usize,
}

/// A closed curve of `S ∩ ∂M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCurve {
    /// Surface component the curve bounds.
    pub component: usize,
    pub arcs: Vec<ArcSlot>,
    /// One `(tet, tet-edge)` representative for each point where the curve crosses a boundary edge.
    pub crossings: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentTopology {
    pub euler: i64,
    pub orientable: bool,
    pub boundary_curves: usize,
    pub genus: u64,
    pub surface: NormalSurface,
}

impl ComponentTopology {
    pub fn is_sphere(&self) -> bool {
        self.euler == 2 && self.boundary_curves == 0
    }

    pub fn is_disk(&self) -> bool {
        self.euler == 1 && self.boundary_curves == 1
    }

    pub fn is_annulus(&self) -> bool {
        self.euler == 0 && self.boundary_curves == 2 && self.orientable
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceTopology {
    pub euler: i64,
    pub orientable: bool,
    pub components: usize,
    pub boundary_curves: usize,
    /// Genus, when the surface is connected.
    pub genus: Option<u64>,
    pub per_component: Vec<ComponentTopology>,
}

#[derive(Clone, Debug)]
pub struct DiskComplex {
    counts: Vec<usize>,
    disks: Vec<Disk>,
    /// First disk index of each coordinate.
    disk_base: Vec<usize>,
    /// First slot index of each `(tet, face, corner)`; unused when `corner == face`.
    slot_base: Vec<[[usize; 4]; 4]>,
    slots: Vec<ArcSlot>,
    slot_disk: Vec<usize>,
    /// The disk's positive side faces the arc's corner.
    slot_flag: Vec<bool>,
    slot_arc: Vec<usize>,
    arc_count: usize,
    /// Surface-vertex classes at the two ends of each slot.
    slot_points: Vec<[usize; 2]>,
    point_count: usize,
    point_rep: Vec<(usize, usize)>,
    boundary_slot: Vec<bool>,
    disk_component: Vec<usize>,
    component_count: usize,
    component_orientable: Vec<bool>,
}

impl DiskComplex {
    pub fn build(tri: &Triangulation, surface: &NormalSurface) -> Result<DiskComplex, SurfaceError> {
        let n = tri.size();
        if surface.coords().len() != COORDS_PER_TET * n {
            return Err(SurfaceError::LengthMismatch { got: surface.coords().len(), expected: COORDS_PER_TET * n });
        }
        if let Some(t) = surface.quad_violation() {
            return Err(SurfaceError::QuadCondition(t));
        }
        let counts = surface.to_counts()?;
        let tri_count = |t: usize, v: usize| counts[COORDS_PER_TET * t + v];
        let quad_count = |t: usize, j: usize| counts[COORDS_PER_TET * t + 4 + j];

        let mut disks = Vec::new();
        let mut disk_base = Vec::with_capacity(counts.len());
        for t in 0..n {
            for c in 0..COORDS_PER_TET {
                disk_base.push(disks.len());
                let kind = if c < 4 { DiskKind::Triangle(c) } else { DiskKind::Quad(c - 4) };
                for copy in 0..counts[COORDS_PER_TET * t + c] {
                    disks.push(Disk { tet: t, kind, copy });
                }
            }
        }

        // arc slots
        let mut slot_base = vec![[[usize::MAX; 4]; 4]; n];
        let mut slots = Vec::new();
        let mut slot_disk = Vec::new();
        let mut slot_flag = Vec::new();
        for t in 0..n {
            for f in 0..4 {
                for v in face_vertices(f) {
                    slot_base[t][f][v] = slots.len();
                    let tv = tri_count(t, v);
                    let j = quad_type(v, f);
                    let q = quad_count(t, j);
                    for p in 0..tv + q {
                        slots.push(ArcSlot { tet: t, face: f, corner: v, position: p });
                        let (disk, flag) = if p < tv {
                            (disk_base[COORDS_PER_TET * t + v] + p, true)
                        } else {
                            let k = p - tv;
                            let copy = if quad_side(j, v) == 0 { k } else { q - 1 - k };
                            (disk_base[COORDS_PER_TET * t + 4 + j] + copy, quad_side(j, v) == 0)
                        };
                        slot_disk.push(disk);
                        slot_flag.push(flag);
                    }
                }
            }
        }

        // surface vertices on tet-edges
        let mut point_base = vec![[0usize; 6]; n];
        let mut point_weight = vec![[0usize; 6]; n];
        let mut total_points = 0;
        for t in 0..n {
            for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                let w = tri_count(t, a) + tri_count(t, b) + (0..3).filter(|&j| j != quad_type(a, b)).map(|j| quad_count(t, j)).sum::<usize>();
                point_base[t][e] = total_points;
                point_weight[t][e] = w;
                total_points += w;
            }
        }
        let point_key = |t: usize, from: usize, to: usize, dist: usize| {
            let e = edge_index(from, to);
            let idx = if from < to { dist } else { point_weight[t][e] - 1 - dist };
            point_base[t][e] + idx
        };
        let slot_point_keys: Vec<[usize; 2]> = slots
            .iter()
            .map(|s| {
                let others: Vec<usize> = face_vertices(s.face).into_iter().filter(|&w| w != s.corner).collect();
                [
                    point_key(s.tet, s.corner, others[0], s.position),
                    point_key(s.tet, s.corner, others[1], s.position),
                ]
            })
            .collect();

        let mut arc_uf = UnionFind::new(slots.len());
        let mut point_uf = UnionFind::new(total_points);
        let mut boundary_slot = vec![false; slots.len()];
        for (i, s) in slots.iter().enumerate() {
            match tri.gluing(s.tet, s.face) {
                None => boundary_slot[i] = true,
                Some(g) => {
                    let other = slot_base[g.tet][g.perm.apply(s.face)][g.perm.apply(s.corner)] + s.position;
                    arc_uf.union(i, other);
                    let others: Vec<usize> = face_vertices(s.face).into_iter().filter(|&w| w != s.corner).collect();
                    for &w in &others {
                        let here = point_key(s.tet, s.corner, w, s.position);
                        let there = point_key(g.tet, g.perm.apply(s.corner), g.perm.apply(w), s.position);
                        point_uf.union(here, there);
                    }
                }
            }
        }
        let (slot_arc, arc_count) = arc_uf.labels();
        let (point_label, point_count) = point_uf.labels();
        let mut point_rep = vec![(usize::MAX, usize::MAX); point_count];
        for t in (0..n).rev() {
            for e in (0..6).rev() {
                for i in 0..point_weight[t][e] {
                    point_rep[point_label[point_base[t][e] + i]] = (t, e);
                }
            }
        }
        let slot_points = slot_point_keys.iter().map(|&[a, b]| [point_label[a], point_label[b]]).collect();

        // components and two-sidedness
        let mut comp_uf = UnionFind::new(disks.len());
        let mut side_uf = ParityUnionFind::new(disks.len());
        let mut arc_first = vec![usize::MAX; arc_count];
        let mut one_sided_disks = Vec::new();
        for i in 0..slots.len() {
            let a = slot_arc[i];
            if arc_first[a] == usize::MAX {
                arc_first[a] = i;
                continue;
            }
            let j = arc_first[a];
            comp_uf.union(slot_disk[i], slot_disk[j]);
            if !side_uf.union(slot_disk[i], slot_disk[j], slot_flag[i] ^ slot_flag[j]) {
                one_sided_disks.push(slot_disk[i]);
            }
        }
        let (disk_component, component_count) = comp_uf.labels();
        let mut component_orientable = vec![true; component_count];
        for d in one_sided_disks {
            component_orientable[disk_component[d]] = false;
        }

        Ok(DiskComplex {
            counts,
            disks,
            disk_base,
            slot_base,
            slots,
            slot_disk,
            slot_flag,
            slot_arc,
            arc_count,
            slot_points,
            point_count,
            point_rep,
            boundary_slot,
            disk_component,
            component_count,
            component_orientable,
        })
    }

    pub fn disk_count(&self) -> usize {
        self.disks.len()
    }

    pub fn edge_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertex_count(&self) -> usize {
        self.point_count
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.point_count as i64 - self.arc_count as i64 + self.disks.len() as i64
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Number of arc slots on face `face` of `tet` cutting off `corner`.
    pub fn arcs_on(&self, tet: usize, face: usize, corner: usize) -> usize {
        let t = &self.counts[COORDS_PER_TET * tet..COORDS_PER_TET * (tet + 1)];
        t[corner] + t[4 + quad_type(corner, face)]
    }

    /// The slot of the arc at `position` from `corner` on `face` of `tet`.
    pub fn slot(&self, tet: usize, face: usize, corner: usize, position: usize) -> ArcSlot {
        self.slots[self.slot_base[tet][face][corner] + position]
    }

    /// Every arc slot on an internal face shares its arc with exactly one other slot.
    pub fn pairing_is_perfect(&self) -> bool {
        let mut per_arc = vec![0usize; self.arc_count];
        for &a in &self.slot_arc {
            per_arc[a] += 1;
        }
        self.slot_arc
            .iter()
            .zip(&self.boundary_slot)
            .all(|(&a, &b)| if b { per_arc[a] == 1 } else { per_arc[a] == 2 })
    }

    /// Slots of each disk together with the faces they lie on.
    fn disk_slots(&self, d: usize) -> Vec<(usize, usize)> {
        let disk = self.disks[d];
        let t = disk.tet;
        let tri_count = |v: usize| self.counts[COORDS_PER_TET * t + v];
        match disk.kind {
            DiskKind::Triangle(v) => (0..4)
                .filter(|&f| f != v)
                .map(|f| (f, self.slot_base[t][f][v] + disk.copy))
                .collect(),
            DiskKind::Quad(j) => {
                let q = self.counts[COORDS_PER_TET * t + 4 + j];
                (0..4)
                    .map(|f| {
                        let c = quad_partner(j, f);
                        let k = if quad_side(j, c) == 0 { disk.copy } else { q - 1 - disk.copy };
                        (f, self.slot_base[t][f][c] + tri_count(c) + k)
                    })
                    .collect()
            }
        }
    }

    /// Every surface vertex has a connected link, i.e. the complex is a surface.
    pub fn is_manifold(&self) -> bool {
        // corners of disks join the two arcs meeting at a surface vertex
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.point_count];
        let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.point_count];
        for (i, pts) in self.slot_points.iter().enumerate() {
            for &p in pts {
                incident[p].push(self.slot_arc[i]);
            }
        }
        for d in 0..self.disks.len() {
            let arcs = self.disk_slots(d);
            for x in 0..arcs.len() {
                for y in x + 1..arcs.len() {
                    let (sx, sy) = (arcs[x].1, arcs[y].1);
                    if let Some(p) = self.corner_point(d, sx, sy) {
                        links[p].push((self.slot_arc[sx], self.slot_arc[sy]));
                    }
                }
            }
        }
        for p in 0..self.point_count {
            let mut arcs = incident[p].clone();
            arcs.sort_unstable();
            arcs.dedup();
            if arcs.len() <= 1 {
                continue;
            }
            let mut uf = UnionFind::new(arcs.len());
            for &(a, b) in &links[p] {
                let ia = arcs.binary_search(&a).expect("incident arc");
                let ib = arcs.binary_search(&b).expect("incident arc");
                uf.union(ia, ib);
            }
            if uf.labels().1 != 1 {
                return false;
            }
        }
        true
    }

    /// The surface vertex where the sides of disk `d` in slots `sx` and `sy` meet, if they meet.
    fn corner_point(&self, d: usize, sx: usize, sy: usize) -> Option<usize> {
        let (fx, fy) = (self.slots[sx].face, self.slots[sy].face);
        let edge: Vec<usize> = (0..4).filter(|&v| v != fx && v != fy).collect();
        let crosses = match self.disks[d].kind {
            DiskKind::Triangle(v) => edge.contains(&v),
            DiskKind::Quad(j) => quad_type(edge[0], edge[1]) != j,
        };
        if !crosses {
            return None;
        }
        let corner = self.slots[sx].corner;
        let far = if edge[0] == corner { edge[1] } else { edge[0] };
        let others: Vec<usize> = face_vertices(fx).into_iter().filter(|&w| w != corner).collect();
        let k = others.iter().position(|&w| w == far).expect("edge lies in the face");
        Some(self.slot_points[sx][k])
    }

    pub fn components(&self) -> Vec<NormalSurface> {
        let mut out: Vec<Vec<u64>> = vec![vec![0; self.counts.len()]; self.component_count];
        for (d, disk) in self.disks.iter().enumerate() {
            out[self.disk_component[d]][COORDS_PER_TET * disk.tet + disk.kind.coordinate()] += 1;
        }
        out.iter().map(|c| NormalSurface::from_u64s(c)).collect()
    }

    /// Component index of each copy of coordinate `coord`, in copy order.
    pub fn copy_components(&self, coord: usize) -> &[usize] {
        let start = self.disk_base[coord];
        &self.disk_component[start..start + self.counts[coord]]
    }

    pub fn boundary_curves(&self) -> Vec<BoundaryCurve> {
        let boundary: Vec<usize> = (0..self.slots.len()).filter(|&i| self.boundary_slot[i]).collect();
        let mut uf = UnionFind::new(boundary.len());
        let mut by_point = vec![usize::MAX; self.point_count];
        for (k, &i) in boundary.iter().enumerate() {
            for &p in &self.slot_points[i] {
                if by_point[p] == usize::MAX {
                    by_point[p] = k;
                } else {
                    uf.union(by_point[p], k);
                }
            }
        }
        let (labels, count) = uf.labels();
        let mut curves: Vec<BoundaryCurve> =
            (0..count).map(|_| BoundaryCurve { component: 0, arcs: Vec::new(), crossings: Vec::new() }).collect();
        let mut points: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (k, &i) in boundary.iter().enumerate() {
            let c = labels[k];
            curves[c].component = self.disk_component[self.slot_disk[i]];
            curves[c].arcs.push(self.slots[i]);
            points[c].extend_from_slice(&self.slot_points[i]);
        }
        for (c, mut pts) in points.into_iter().enumerate() {
            pts.sort_unstable();
            pts.dedup();
            curves[c].crossings = pts.into_iter().map(|p| self.point_rep[p]).collect();
        }
        curves
    }

    pub fn topology(&self) -> SurfaceTopology {
        let k = self.component_count;
        let mut faces = vec![0i64; k];
        let mut edges = vec![0i64; k];
        let mut vertices = vec![0i64; k];
        for d in 0..self.disks.len() {
            faces[self.disk_component[d]] += 1;
        }
        let mut arc_seen = vec![false; self.arc_count];
        let mut point_seen = vec![false; self.point_count];
        for i in 0..self.slots.len() {
            let c = self.disk_component[self.slot_disk[i]];
            let a = self.slot_arc[i];
            if !arc_seen[a] {
                arc_seen[a] = true;
                edges[c] += 1;
            }
            for &p in &self.slot_points[i] {
                if !point_seen[p] {
                    point_seen[p] = true;
                    vertices[c] += 1;
                }
            }
        }
        let mut curves = vec![0usize; k];
        for curve in self.boundary_curves() {
            curves[curve.component] += 1;
        }
        let surfaces = self.components();
        let per_component: Vec<ComponentTopology> = (0..k)
            .map(|c| {
                let euler = vertices[c] - edges[c] + faces[c];
                let orientable = self.component_orientable[c];
                let b = curves[c] as i64;
                let genus = if orientable { (2 - euler - b) / 2 } else { 2 - euler - b };
                ComponentTopology {
                    euler,
                    orientable,
                    boundary_curves: curves[c],
                    genus: genus.max(0) as u64,
                    surface: surfaces[c].clone(),
                }
            })
            .collect();
        SurfaceTopology {
            euler: self.euler_characteristic(),
            orientable: self.component_orientable.iter().all(|&o| o),
            components: k,
            boundary_curves: curves.iter().sum(),
            genus: if k == 1 { Some(per_component[0].genus) } else { None },
            per_component,
        }
    }

    /// Whether the slot's disk has its positive side toward the slot's corner.
    pub fn faces_corner(&self, slot: ArcSlot) -> bool {
        self.slot_flag[self.slot_base[slot.tet][slot.face][slot.corner] + slot.position]
    }
}

/// χ of an admissible surface.
pub fn euler_characteristic(tri: &Triangulation, surface: &NormalSurface) -> Result<i64, SurfaceError> {
    Ok(DiskComplex::build(tri, surface)?.euler_characteristic())
}

/// Connected components, as coordinate vectors.
pub fn connected_components(tri: &Triangulation, surface: &NormalSurface) -> Result<Vec<NormalSurface>, SurfaceError> {
    Ok(DiskComplex::build(tri, surface)?.components())
}

pub fn surface_topology(tri: &Triangulation, surface: &NormalSurface) -> Result<SurfaceTopology, SurfaceError> {
    Ok(DiskComplex::build(tri, surface)?.topology())
}
