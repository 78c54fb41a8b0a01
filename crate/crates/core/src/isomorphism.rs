//! Combinatorial isomorphism of labelled triangulations by exhaustive search.

use serde::Serialize;

use crate::normal::{NormalSurface, COORDS_PER_TET};
use crate::perm::Perm4;
use crate::simplex::{quad_type, QUAD_PAIRS};
use crate::skeleton::Skeleton;
use crate::triangulation::Triangulation;

/// Tetrahedron `t` of the source maps to `tets[t]` of the target, relabelling vertices by `perms[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub tets: Vec<usize>,
    pub perms: Vec<Perm4>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Isomorphism {
        Isomorphism { tets: (0..n).collect(), perms: vec![Perm4::IDENTITY; n] }
    }

    pub fn is_identity(&self) -> bool {
        self.tets.iter().enumerate().all(|(i, &t)| i == t) && self.perms.iter().all(|p| *p == Perm4::IDENTITY)
    }

    pub fn inverse(&self) -> Isomorphism {
        let n = self.tets.len();
        let mut tets = vec![0; n];
        let mut perms = vec![Perm4::IDENTITY; n];
        for t in 0..n {
            tets[self.tets[t]] = t;
            perms[self.tets[t]] = self.perms[t].inverse();
        }
        Isomorphism { tets, perms }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Isomorphism) -> Isomorphism {
        let tets = self.tets.iter().map(|&t| other.tets[t]).collect();
        let perms = self.tets.iter().zip(&self.perms).map(|(&t, p)| other.perms[t].compose(p)).collect();
        Isomorphism { tets, perms }
    }

    /// Carries normal coordinates across the isomorphism.
    pub fn map_surface(&self, s: &NormalSurface) -> NormalSurface {
        let mut out = NormalSurface::zero(self.tets.len());
        for t in 0..self.tets.len() {
            let u = self.tets[t];
            let p = self.perms[t];
            for v in 0..4 {
                out.set(COORDS_PER_TET * u + p.apply(v), s.triangle(t, v).clone());
            }
            for j in 0..3 {
                let [a, b] = QUAD_PAIRS[j].0;
                out.set(COORDS_PER_TET * u + 4 + quad_type(p.apply(a), p.apply(b)), s.quad(t, j).clone());
            }
        }
        out
    }

    /// Checks that the map sends every gluing of `a` to a gluing of `b`.
    pub fn verify(&self, a: &Triangulation, b: &Triangulation) -> bool {
        a.size() == b.size() && (0..a.size()).all(|t| (0..4).all(|f| consistent(a, b, &self.tets, &self.perms, t, f)))
    }
}

fn consistent(a: &Triangulation, b: &Triangulation, tets: &[usize], perms: &[Perm4], t: usize, f: usize) -> bool {
    let u = tets[t];
    let p = perms[t];
    match (a.gluing(t, f), b.gluing(u, p.apply(f))) {
        (None, None) => true,
        (Some(g), Some(h)) => h.tet == tets[g.tet] && h.perm == perms[g.tet].compose(&g.perm).compose(&p.inverse()),
        _ => false,
    }
}

fn tet_signature(skel: &Skeleton, t: usize) -> Vec<usize> {
    let mut s: Vec<usize> = skel.tet_edges[t].iter().map(|&e| skel.edges[e].index()).collect();
    s.sort_unstable();
    s
}

/// Finds an isomorphism `a → b`, if one exists.
pub fn isomorphic(a: &Triangulation, b: &Triangulation) -> Option<Isomorphism> {
    let n = a.size();
    if n != b.size() || a.boundary_face_count() != b.boundary_face_count() {
        return None;
    }
    let (sa, sb) = (Skeleton::build(a), Skeleton::build(b));
    let mut ia: Vec<usize> = sa.edges.iter().map(|e| e.index()).collect();
    let mut ib: Vec<usize> = sb.edges.iter().map(|e| e.index()).collect();
    ia.sort_unstable();
    ib.sort_unstable();
    if ia != ib || sa.vertex_count() != sb.vertex_count() {
        return None;
    }
    let sig_a: Vec<Vec<usize>> = (0..n).map(|t| tet_signature(&sa, t)).collect();
    let sig_b: Vec<Vec<usize>> = (0..n).map(|t| tet_signature(&sb, t)).collect();
    let mut search = Search {
        a,
        b,
        sig_a,
        sig_b,
        tets: vec![usize::MAX; n],
        perms: vec![Perm4::IDENTITY; n],
        used: vec![false; n],
    };
    search.next_component().then_some(Isomorphism { tets: search.tets, perms: search.perms })
}

struct Search<'a> {
    a: &'a Triangulation,
    b: &'a Triangulation,
    sig_a: Vec<Vec<usize>>,
    sig_b: Vec<Vec<usize>>,
    tets: Vec<usize>,
    perms: Vec<Perm4>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn next_component(&mut self) -> bool {
        let Some(root) = self.tets.iter().position(|&u| u == usize::MAX) else {
            return true;
        };
        for u in 0..self.b.size() {
            if self.used[u] || self.sig_a[root] != self.sig_b[u] {
                continue;
            }
            for p in Perm4::all() {
                let mut assigned = Vec::new();
                if self.propagate(root, u, p, &mut assigned) && self.next_component() {
                    return true;
                }
                for t in assigned {
                    self.used[self.tets[t]] = false;
                    self.tets[t] = usize::MAX;
                }
            }
        }
        false
    }

    /// Maps `root → (u, p)` and follows gluings through its component.
    fn propagate(&mut self, root: usize, u: usize, p: Perm4, assigned: &mut Vec<usize>) -> bool {
        self.assign(root, u, p, assigned);
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            for f in 0..4 {
                let Some(g) = self.a.gluing(t, f) else {
                    if self.b.gluing(self.tets[t], self.perms[t].apply(f)).is_some() {
                        return false;
                    }
                    continue;
                };
                let Some(h) = self.b.gluing(self.tets[t], self.perms[t].apply(f)) else {
                    return false;
                };
                // forced image of the neighbour: perms[g.tet] = h.perm ∘ perms[t] ∘ g.perm⁻¹
                let q = h.perm.compose(&self.perms[t]).compose(&g.perm.inverse());
                if self.tets[g.tet] == usize::MAX {
                    if self.used[h.tet] || self.sig_a[g.tet] != self.sig_b[h.tet] {
                        return false;
                    }
                    self.assign(g.tet, h.tet, q, assigned);
                    stack.push(g.tet);
                } else if self.tets[g.tet] != h.tet || self.perms[g.tet] != q {
                    return false;
                }
            }
        }
        true
    }

    fn assign(&mut self, t: usize, u: usize, p: Perm4, assigned: &mut Vec<usize>) {
        self.tets[t] = u;
        self.perms[t] = p;
        self.used[u] = true;
        assigned.push(t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn reflexive_and_relabelled() {
        let fig8 = fixtures::figure_eight();
        let iso = isomorphic(&fig8, &fig8).unwrap();
        assert!(iso.verify(&fig8, &fig8));

        let perms = [Perm4::new([3, 1, 0, 2]).unwrap(), Perm4::new([1, 2, 3, 0]).unwrap()];
        let re = fig8.relabelled(&[1, 0], &perms);
        let iso = isomorphic(&re, &fig8).unwrap();
        assert!(iso.verify(&re, &fig8));
        assert!(!iso.is_identity());
        assert!(iso.inverse().verify(&fig8, &re));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        assert!(isomorphic(&fixtures::figure_eight(), &fixtures::solid_torus()).is_none());
        assert!(isomorphic(&fixtures::layered(), &fixtures::figure_eight()).is_none());
    }

    #[test]
    fn composition_is_an_isomorphism() {
        let fig8 = fixtures::figure_eight();
        let p1 = [Perm4::new([3, 1, 0, 2]).unwrap(), Perm4::new([1, 2, 3, 0]).unwrap()];
        let p2 = [Perm4::new([0, 2, 1, 3]).unwrap(), Perm4::new([2, 3, 0, 1]).unwrap()];
        let a = fig8.relabelled(&[1, 0], &p1);
        let b = fig8.relabelled(&[0, 1], &p2);
        let ab = isomorphic(&a, &b).unwrap();
        let bf = isomorphic(&b, &fig8).unwrap();
        assert!(ab.then(&bf).verify(&a, &fig8));
    }

    #[test]
    fn surfaces_follow_the_map() {
        let fig8 = fixtures::figure_eight();
        let perms = [Perm4::new([3, 1, 0, 2]).unwrap(), Perm4::new([1, 2, 3, 0]).unwrap()];
        let re = fig8.relabelled(&[1, 0], &perms);
        let iso = isomorphic(&fig8, &re).unwrap();
        for s in crate::enumerate::surfaces_up_to(&fig8, 2).iter() {
            assert!(crate::normal::is_admissible(&re, &iso.map_surface(s)).unwrap());
        }
    }
}
