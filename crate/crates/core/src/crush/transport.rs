//! Moving closed normal surfaces across a crush.
//!
//! Disks of a second surface `F` are placed into the slots between the disks of `S`: a
//! triangle at corner `v` into one of the `t_v + 1` slots of that corner, a quad into one of
//! the `q + 1` slabs. Across each glued face the arcs in every strip must match. Any
//! non-negative solution realises `F` disjoint from `S`, and restricting the slots to `X`
//! places it inside `X`. Disks in truncated tetrahedra become the disks of the crushed
//! surface; the rest collapse.

use serde::Serialize;
use thiserror::Error;

use super::{CellDecomposition, CrushOutcome, RegionRef};
use crate::linsolve::BoundedSystem;
use crate::normal::{is_admissible, NormalSurface, COORDS_PER_TET};
use crate::simplex::{face_vertices, quad_side, quad_type};
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DiskType {
    Triangle(usize),
    Quad(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlacedDisks {
    pub region: RegionRef,
    pub disk: DiskType,
    pub count: u64,
}

/// Where each disk of a placed surface sits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockAssignment {
    pub disks: Vec<PlacedDisks>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum PlacementError {
    #[error("surface is not admissible on this triangulation")]
    NotAdmissible,
    #[error("surface meets the boundary")]
    NotClosed,
    #[error("surface cannot be made disjoint from the crushing surface{}", .tet.map(|t| format!(" (tetrahedron {t})")).unwrap_or_default())]
    NotDisjoint { tet: Option<usize> },
    #[error("surface can be made disjoint from the crushing surface only with a component outside X")]
    VertexSideComponent,
    #[error("coordinates too large for placement")]
    TooLarge,
    #[error("no surface on the source maps to this one")]
    InternalInconsistency,
}

struct SlotVar {
    tet: usize,
    disk: DiskType,
    region: usize,
}

/// Slot variables and the strip-matching equations between them.
struct Slots {
    vars: Vec<SlotVar>,
    /// `tri[t][v][k]`: triangle at `v` in slot `k`.
    tri: Vec<[Vec<usize>; 4]>,
    /// `slab[t][m]`: quad of `S`'s type in slab `m`.
    slab: Vec<Vec<usize>>,
    /// Quads of each type in tetrahedra where `S` has none.
    central_quads: Vec<Option<[usize; 3]>>,
    equations: Vec<Vec<(usize, i64)>>,
}

impl Slots {
    fn build(tri: &Triangulation, dec: &CellDecomposition) -> Slots {
        let cells = &dec.cells;
        let mut slots = Slots { vars: Vec::new(), tri: Vec::new(), slab: Vec::new(), central_quads: Vec::new(), equations: Vec::new() };
        for t in 0..tri.size() {
            let layout = cells.layouts[t];
            let regions = &cells.per_tet[t];
            let mut tris: [Vec<usize>; 4] = Default::default();
            for v in 0..4 {
                let tv = layout.triangles[v];
                for k in 0..=tv {
                    let region = if k == 0 && tv > 0 {
                        regions.corner[v].unwrap()
                    } else if k < tv {
                        regions.tri_blocks[v][k - 1]
                    } else {
                        match layout.quads {
                            None => regions.central.unwrap(),
                            Some((j, q)) => regions.slabs[if quad_side(j, v) == 0 { 0 } else { q }],
                        }
                    };
                    tris[v].push(slots.push(t, DiskType::Triangle(v), region));
                }
            }
            slots.tri.push(tris);
            match layout.quads {
                Some((j, q)) => {
                    let slab = (0..=q).map(|m| slots.push(t, DiskType::Quad(j), regions.slabs[m])).collect();
                    slots.slab.push(slab);
                    slots.central_quads.push(None);
                }
                None => {
                    let central = regions.central.unwrap();
                    let quads = [0, 1, 2].map(|j| slots.push(t, DiskType::Quad(j), central));
                    slots.slab.push(Vec::new());
                    slots.central_quads.push(Some(quads));
                }
            }
        }
        for ((t, f), g) in tri.internal_face_pairs() {
            let f2 = g.perm.apply(f);
            for v in face_vertices(f) {
                for s in 0..=cells.layouts[t].arcs(f, v) {
                    let mut eq: Vec<(usize, i64)> = slots.arcs_at(dec, t, f, v, s).into_iter().map(|x| (x, 1)).collect();
                    eq.extend(slots.arcs_at(dec, g.tet, f2, g.perm.apply(v), s).into_iter().map(|x| (x, -1)));
                    slots.equations.push(eq);
                }
            }
        }
        slots
    }

    fn push(&mut self, tet: usize, disk: DiskType, region: usize) -> usize {
        self.vars.push(SlotVar { tet, disk, region });
        self.vars.len() - 1
    }

    /// Variables whose disks leave an arc in strip `s` at corner `v` of face `f`
    /// (`s` equal to the arc count of `S` there means the central piece).
    fn arcs_at(&self, dec: &CellDecomposition, t: usize, f: usize, v: usize, s: usize) -> Vec<usize> {
        let layout = dec.cells.layouts[t];
        let tv = layout.triangles[v];
        let mut out = Vec::new();
        if s <= tv {
            out.push(self.tri[t][v][s]);
        }
        match layout.quads {
            Some((j, q)) if quad_type(v, f) == j && s >= tv => {
                let k = s - tv;
                out.push(self.slab[t][if quad_side(j, v) == 0 { k } else { q - k }]);
            }
            None if s == tv => out.push(self.central_quads[t].unwrap()[quad_type(v, f)]),
            _ => {}
        }
        out
    }

    fn system(&self, upper: i64) -> BoundedSystem {
        let mut sys = BoundedSystem::new(self.vars.len(), upper);
        for eq in &self.equations {
            sys.add_equation(eq, 0);
        }
        for quads in self.central_quads.iter().flatten() {
            sys.add_exclusive_group(quads.to_vec());
        }
        sys
    }
}

fn checked_counts(tri: &Triangulation, f: &NormalSurface) -> Result<Vec<i64>, PlacementError> {
    if f.n_tets() != tri.size() || !is_admissible(tri, f).unwrap_or(false) {
        return Err(PlacementError::NotAdmissible);
    }
    if !f.is_closed(tri) {
        return Err(PlacementError::NotClosed);
    }
    f.to_i64s().map_err(|_| PlacementError::TooLarge)
}

/// Slot values realising `F` disjoint from `S`, inside `X` when `inside_x`.
fn solve_placement(tri: &Triangulation, dec: &CellDecomposition, slots: &Slots, x: &[i64], inside_x: bool) -> Option<Vec<i64>> {
    let mut sys = slots.system(x.iter().copied().max().unwrap_or(0));
    for t in 0..tri.size() {
        let base = COORDS_PER_TET * t;
        for v in 0..4 {
            let terms: Vec<(usize, i64)> = slots.tri[t][v].iter().map(|&k| (k, 1)).collect();
            sys.add_equation(&terms, x[base + v]);
        }
        match dec.cells.layouts[t].quads {
            Some((j, _)) => {
                let terms: Vec<(usize, i64)> = slots.slab[t].iter().map(|&k| (k, 1)).collect();
                sys.add_equation(&terms, x[base + 4 + j]);
            }
            None => {
                for (j, &k) in slots.central_quads[t].unwrap().iter().enumerate() {
                    sys.add_equation(&[(k, 1)], x[base + 4 + j]);
                }
            }
        }
    }
    if inside_x {
        for (k, var) in slots.vars.iter().enumerate() {
            if !dec.in_x(var.region) {
                sys.fix(k, 0);
            }
        }
    }
    sys.first_solution()
}

fn placement(outcome: &CrushOutcome, f: &NormalSurface) -> Result<(Slots, Vec<i64>), PlacementError> {
    let tri = &outcome.source;
    let dec = &outcome.decomposition;
    let x = checked_counts(tri, f)?;
    for t in 0..tri.size() {
        if let (Some((j, _)), Some(k)) = (dec.cells.layouts[t].quads, f.quad_type_in(t)) {
            if j != k {
                return Err(PlacementError::NotDisjoint { tet: Some(t) });
            }
        }
    }
    let slots = Slots::build(tri, dec);
    if let Some(values) = solve_placement(tri, dec, &slots, &x, true) {
        return Ok((slots, values));
    }
    if solve_placement(tri, dec, &slots, &x, false).is_some() {
        return Err(PlacementError::VertexSideComponent);
    }
    Err(PlacementError::NotDisjoint { tet: None })
}

/// Places every disk of `F` in a region of `X`, disjoint from `S`.
pub fn place_in_blocks(outcome: &CrushOutcome, f: &NormalSurface) -> Result<BlockAssignment, PlacementError> {
    let (slots, values) = placement(outcome, f)?;
    let cells = &outcome.decomposition.cells;
    let disks = slots
        .vars
        .iter()
        .zip(&values)
        .filter(|(_, &n)| n > 0)
        .map(|(var, &n)| PlacedDisks { region: cells.regions[var.region].reference(), disk: var.disk, count: n as u64 })
        .collect();
    Ok(BlockAssignment { disks })
}

fn crushed_coordinates(outcome: &CrushOutcome, slots: &Slots, values: &[i64]) -> NormalSurface {
    let mut out = vec![0i64; COORDS_PER_TET * outcome.tet_source.len()];
    for (i, &t) in outcome.tet_source.iter().enumerate() {
        for v in 0..4 {
            out[COORDS_PER_TET * i + v] = values[*slots.tri[t][v].last().unwrap()];
        }
        for (j, &k) in slots.central_quads[t].expect("truncated tetrahedra carry no quads of S").iter().enumerate() {
            out[COORDS_PER_TET * i + 4 + j] = values[k];
        }
    }
    NormalSurface::from_i64s(&out)
}

/// The image of `F` on the crushed triangulation.
pub fn push_forward(outcome: &CrushOutcome, f: &NormalSurface) -> Result<NormalSurface, PlacementError> {
    let (slots, values) = placement(outcome, f)?;
    Ok(crushed_coordinates(outcome, &slots, &values))
}

/// The surface on the source whose image is `F*`.
pub fn lift(outcome: &CrushOutcome, image: &NormalSurface) -> Result<NormalSurface, PlacementError> {
    let x = checked_counts(&outcome.crushed, image)?;
    let dec = &outcome.decomposition;
    let slots = Slots::build(&outcome.source, dec);
    let mut sys = slots.system(x.iter().sum());
    for (k, var) in slots.vars.iter().enumerate() {
        if !dec.in_x(var.region) {
            sys.fix(k, 0);
        }
    }
    for (i, &t) in outcome.tet_source.iter().enumerate() {
        for v in 0..4 {
            sys.fix(*slots.tri[t][v].last().unwrap(), x[COORDS_PER_TET * i + v]);
        }
        for (j, &k) in slots.central_quads[t].unwrap().iter().enumerate() {
            sys.fix(k, x[COORDS_PER_TET * i + 4 + j]);
        }
    }
    let values = sys.first_solution().ok_or(PlacementError::InternalInconsistency)?;
    let mut out = vec![0i64; COORDS_PER_TET * outcome.source.size()];
    for (var, &n) in slots.vars.iter().zip(&values) {
        let c = match var.disk {
            DiskType::Triangle(v) => v,
            DiskType::Quad(j) => 4 + j,
        };
        out[COORDS_PER_TET * var.tet + c] += n;
    }
    Ok(NormalSurface::from_i64s(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crush::crush_along;
    use crate::enumerate::surfaces_up_to;
    use crate::fixtures;
    use crate::normal::vertex_linking;
    use crate::skeleton::Skeleton;

    #[test]
    fn identity_crush_transports_identically() {
        let tri = fixtures::figure_eight();
        let link = vertex_linking(&tri, &Skeleton::build(&tri), 0);
        let outcome = crush_along(&tri, &link, None).unwrap();
        assert_eq!(push_forward(&outcome, &NormalSurface::zero(2)).unwrap(), NormalSurface::zero(2));
        for s in surfaces_up_to(&tri, 2).iter() {
            assert_eq!(push_forward(&outcome, s).unwrap(), *s);
            assert_eq!(lift(&outcome, s).unwrap(), *s);
        }
    }

    #[test]
    fn parallel_copy_sits_in_x() {
        let tri = fixtures::figure_eight();
        let link = vertex_linking(&tri, &Skeleton::build(&tri), 0);
        let outcome = crush_along(&tri, &link, None).unwrap();
        let assignment = place_in_blocks(&outcome, &link).unwrap();
        assert_eq!(assignment.disks.len(), 8);
        assert!(assignment.disks.iter().all(|d| d.region.to_string().ends_with(":tet") && d.count == 1));
    }
}
