//! Vertex, fundamental and bounded enumeration of normal surfaces.
//!
//! Admissibility is not convex, so both cone algorithms run separately on every
//! quad-compatible face of the orthant: in each tetrahedron only one quad coordinate is
//! allowed to be nonzero. Results are merged, deduplicated and sorted lexicographically.

mod dd;
mod hilbert;

use std::fmt;

use serde::Serialize;

pub use dd::extreme_rays;
pub use hilbert::{hilbert_basis, SizeExceeded};

use crate::linsolve::BoundedSystem;
use crate::normal::{matching_system, MatchingSystem, NormalSurface, COORDS_PER_TET};
use crate::triangulation::Triangulation;

/// Environment variable holding the candidate cap for fundamental enumeration.
pub const MAX_CANDIDATES_ENV: &str = "NSURF_MAX_CANDIDATES";
pub const DEFAULT_MAX_CANDIDATES: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Vertex,
    Fundamental,
    Bounded(u64),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Vertex => f.write_str("vertex"),
            Provenance::Fundamental => f.write_str("fundamental"),
            Provenance::Bounded(b) => write!(f, "bounded {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceList {
    pub provenance: Provenance,
    pub surfaces: Vec<NormalSurface>,
}

impl SurfaceList {
    /// Sorts and deduplicates.
    pub fn new(provenance: Provenance, mut surfaces: Vec<NormalSurface>) -> SurfaceList {
        surfaces.sort();
        surfaces.dedup();
        SurfaceList { provenance, surfaces }
    }

    pub fn len(&self) -> usize {
        self.surfaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.surfaces.is_empty()
    }

    pub fn contains(&self, s: &NormalSurface) -> bool {
        self.surfaces.binary_search(s).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, NormalSurface> {
        self.surfaces.iter()
    }

    /// Closed surfaces only.
    pub fn closed(&self, tri: &Triangulation) -> Vec<NormalSurface> {
        self.surfaces.iter().filter(|s| s.is_closed(tri)).cloned().collect()
    }
}

impl<'a> IntoIterator for &'a SurfaceList {
    type Item = &'a NormalSurface;
    type IntoIter = std::slice::Iter<'a, NormalSurface>;

    fn into_iter(self) -> Self::IntoIter {
        self.surfaces.iter()
    }
}

/// The matching equations as dense integer rows.
#[derive(Clone, Debug)]
pub struct SolutionCone {
    pub dimension: usize,
    pub rows: Vec<Vec<i64>>,
}

impl SolutionCone {
    pub fn new(system: &MatchingSystem) -> SolutionCone {
        SolutionCone { dimension: system.dimension(), rows: system.rows() }
    }

    /// The rows restricted to `columns`, with all-zero rows dropped.
    pub fn restricted(&self, columns: &[usize]) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| columns.iter().map(|&c| r[c]).collect::<Vec<i64>>())
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Coordinates allowed by the quad-type choice `choice[t]` in each tetrahedron.
fn domain_columns(choice: &[usize]) -> Vec<usize> {
    let mut cols = Vec::with_capacity(5 * choice.len());
    for (t, &j) in choice.iter().enumerate() {
        for v in 0..4 {
            cols.push(COORDS_PER_TET * t + v);
        }
        cols.push(COORDS_PER_TET * t + 4 + j);
    }
    cols
}

/// All `3^n` quad-type choices, in lexicographic order.
fn domains(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = 3usize.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut choice = vec![0; n];
        for slot in choice.iter_mut().rev() {
            *slot = k % 3;
            k /= 3;
        }
        choice
    })
}

/// Scatters a domain vector back to full coordinates.
fn expand(dimension: usize, columns: &[usize], values: &[num_bigint::BigUint]) -> NormalSurface {
    let mut s = NormalSurface::zero(dimension / COORDS_PER_TET);
    for (&c, v) in columns.iter().zip(values) {
        s.set(c, v.clone());
    }
    s
}

/// Primitive representatives of the admissible extreme rays of the solution cone.
pub fn vertex_surfaces(tri: &Triangulation) -> SurfaceList {
    let cone = SolutionCone::new(&matching_system(tri));
    let mut out = Vec::new();
    for choice in domains(tri.size()) {
        let cols = domain_columns(&choice);
        for ray in extreme_rays(cols.len(), &cone.restricted(&cols)) {
            out.push(expand(cone.dimension, &cols, &ray));
        }
    }
    SurfaceList::new(Provenance::Vertex, out)
}

/// Candidate cap from [`MAX_CANDIDATES_ENV`], falling back to [`DEFAULT_MAX_CANDIDATES`].
pub fn candidate_cap_from_env() -> usize {
    std::env::var(MAX_CANDIDATES_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_CANDIDATES)
}

/// Admissible solutions that are not sums of two nonzero admissible solutions.
pub fn fundamental_surfaces(tri: &Triangulation) -> Result<SurfaceList, SizeExceeded> {
    fundamental_surfaces_capped(tri, candidate_cap_from_env())
}

pub fn fundamental_surfaces_capped(tri: &Triangulation, cap: usize) -> Result<SurfaceList, SizeExceeded> {
    let cone = SolutionCone::new(&matching_system(tri));
    let mut out = Vec::new();
    for choice in domains(tri.size()) {
        let cols = domain_columns(&choice);
        for v in hilbert_basis(cols.len(), &cone.restricted(&cols), cap)? {
            out.push(expand(cone.dimension, &cols, &v));
        }
    }
    Ok(SurfaceList::new(Provenance::Fundamental, out))
}

/// Matching equations plus the quad condition as a bounded search problem over all `7n` coordinates.
pub fn bounded_system(tri: &Triangulation, bound: u64) -> BoundedSystem {
    let system = matching_system(tri);
    let mut sys = BoundedSystem::new(system.dimension(), bound as i64);
    for eq in &system.equations {
        let terms: Vec<(usize, i64)> = eq.terms.iter().map(|&(v, c)| (v, c as i64)).collect();
        sys.add_equation(&terms, 0);
    }
    for t in 0..tri.size() {
        sys.add_exclusive_group((4..7).map(|j| COORDS_PER_TET * t + j).collect());
    }
    sys
}

/// Every admissible vector with all entries at most `bound`.
pub fn surfaces_up_to(tri: &Triangulation, bound: u64) -> SurfaceList {
    let sys = bounded_system(tri, bound);
    let mut out = Vec::new();
    sys.for_each_solution(|x| {
        out.push(NormalSurface::from_i64s(x));
        true
    });
    SurfaceList::new(Provenance::Bounded(bound), out)
}

/// Non-negative integer multipliers writing `target` as a sum of `generators`, if any exist.
///
/// Only generators whose support lies inside the support of `target` take part, which
/// also keeps every partial sum quad-compatible.
pub fn decompose_over(target: &NormalSurface, generators: &[NormalSurface]) -> Option<Vec<u64>> {
    let t = target.to_i64s().ok()?;
    let usable: Vec<usize> = (0..generators.len())
        .filter(|&k| generators[k].coords().iter().zip(&t).all(|(g, &x)| x > 0 || num_traits::Zero::is_zero(g)))
        .filter(|&k| !generators[k].is_zero())
        .collect();
    let gens: Vec<Vec<i64>> = usable.iter().map(|&k| generators[k].to_i64s()).collect::<Result<_, _>>().ok()?;
    let max = t.iter().copied().max().unwrap_or(0);
    let mut sys = BoundedSystem::new(usable.len(), max);
    for (c, &value) in t.iter().enumerate() {
        let terms: Vec<(usize, i64)> = gens.iter().enumerate().filter(|(_, g)| g[c] != 0).map(|(k, g)| (k, g[c])).collect();
        if terms.is_empty() && value != 0 {
            return None;
        }
        if !terms.is_empty() {
            sys.add_equation(&terms, value);
        }
    }
    let mult = sys.first_solution()?;
    let mut out = vec![0u64; generators.len()];
    for (i, &k) in usable.iter().enumerate() {
        out[k] = mult[i] as u64;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::normal::{is_admissible, vertex_linking};
    use crate::skeleton::Skeleton;

    #[test]
    fn unglued_tetrahedron_rays_are_unit_vectors() {
        let tri = fixtures::unglued();
        let v = vertex_surfaces(&tri);
        assert_eq!(v.len(), 7);
        let f = fundamental_surfaces(&tri).unwrap();
        assert_eq!(f.surfaces, v.surfaces);
    }

    #[test]
    fn figure_eight_has_its_link_as_a_vertex() {
        let tri = fixtures::figure_eight();
        let skel = Skeleton::build(&tri);
        let v = vertex_surfaces(&tri);
        assert!(v.contains(&vertex_linking(&tri, &skel, 0)));
        assert!(v.iter().all(|s| is_admissible(&tri, s).unwrap()));
        assert!(surfaces_up_to(&tri, 1).contains(&vertex_linking(&tri, &skel, 0)));
    }

    #[test]
    fn bounded_enumeration_basics() {
        let tri = fixtures::solid_torus();
        let zero = surfaces_up_to(&tri, 0);
        assert_eq!(zero.surfaces, vec![NormalSurface::zero(1)]);
        let one = surfaces_up_to(&tri, 1);
        let two = surfaces_up_to(&tri, 2);
        assert!(one.iter().all(|s| two.contains(s)));
        assert!(two.iter().all(|s| is_admissible(&tri, s).unwrap()));
    }

    #[test]
    fn vertices_are_fundamental() {
        for tri in [fixtures::solid_torus(), fixtures::layered(), fixtures::figure_eight()] {
            let v = vertex_surfaces(&tri);
            let f = fundamental_surfaces(&tri).unwrap();
            assert!(v.iter().all(|s| f.contains(s)), "{}", tri.name());
        }
    }

    #[test]
    fn candidate_cap_is_enforced() {
        assert!(fundamental_surfaces_capped(&fixtures::figure_eight(), 3).is_err());
    }

    #[test]
    fn decomposition_over_generators() {
        let tri = fixtures::figure_eight();
        let skel = Skeleton::build(&tri);
        let link = vertex_linking(&tri, &skel, 0);
        let f = fundamental_surfaces(&tri).unwrap();
        let mult = decompose_over(&link.scaled(3), &f.surfaces).unwrap();
        let total = mult.iter().zip(&f.surfaces).fold(NormalSurface::zero(2), |acc, (&m, g)| acc.add(&g.scaled(m)));
        assert_eq!(total, link.scaled(3));
    }
}
