//! Named triangulations shipped with the crate, plus seeded random triangulations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crush::{crush_along, decompose, CrushOutcome, Obstruction, Rejection, RegionRef};
use crate::enumerate::surfaces_up_to;
use crate::normal::NormalSurface;
use crate::perm::Perm4;
use crate::skeleton::{classify_vertices, Skeleton};
use crate::triangulation::Triangulation;

pub const UNGLUED: &str = include_str!("../fixtures/unglued.tri");
pub const FIG8: &str = include_str!("../fixtures/fig8.tri");
pub const SOLID_TORUS: &str = include_str!("../fixtures/solid_torus.tri");
pub const LAYERED: &str = include_str!("../fixtures/layered.tri");
pub const TWO_TET_SPHERE: &str = include_str!("../fixtures/two_tet_sphere.tri");

fn load(name: &str, text: &str) -> Triangulation {
    Triangulation::parse(name, text).expect("shipped fixture parses")
}

pub fn unglued() -> Triangulation {
    load("unglued", UNGLUED)
}

/// The two-tetrahedron ideal triangulation of the figure-eight knot complement.
pub fn figure_eight() -> Triangulation {
    load("fig8", FIG8)
}

/// One tetrahedron with two faces folded together; boundary is a one-vertex torus.
pub fn solid_torus() -> Triangulation {
    load("solid_torus", SOLID_TORUS)
}

/// [`solid_torus`] with a second tetrahedron layered on its index-1 edge.
pub fn layered() -> Triangulation {
    load("layered", LAYERED)
}

pub fn two_tet_sphere() -> Triangulation {
    load("two_tet_sphere", TWO_TET_SPHERE)
}

pub fn all_named() -> Vec<Triangulation> {
    vec![unglued(), figure_eight(), solid_torus(), layered(), two_tet_sphere()]
}

/// Looks up a shipped fixture by name.
pub fn by_name(name: &str) -> Option<Triangulation> {
    all_named().into_iter().find(|t| t.name() == name)
}

/// Random gluing of `n` tetrahedra with `pairs` internal face pairs, every gluing by an odd
/// permutation. The result is orientable but need not be a manifold.
pub fn random_gluing(n: usize, pairs: usize, rng: &mut impl Rng) -> Triangulation {
    assert!(2 * pairs <= 4 * n, "not enough faces");
    let mut slots: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..4).map(move |f| (t, f))).collect();
    slots.shuffle(rng);
    let mut tri = Triangulation::unglued(format!("random-{n}-{pairs}"), n);
    for k in 0..pairs {
        let (a, f) = slots[2 * k];
        let (b, g) = slots[2 * k + 1];
        let choices: Vec<Perm4> = Perm4::all().filter(|p| p.is_odd() && p.apply(f) == g).collect();
        let perm = *choices.choose(rng).expect("three odd permutations map f to g");
        tri.join(a, f, b, perm);
    }
    tri
}

/// Draws random gluings until one is connected and passes validation and vertex classification.
///
/// Returns `None` after `attempts` failures. Closed results have `pairs == 2n`.
pub fn random_valid(n: usize, pairs: usize, seed: u64, attempts: usize) -> Option<Triangulation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let mut tri = random_gluing(n, pairs, &mut rng);
        if !tri.is_connected() || !tri.validate().passed() {
            continue;
        }
        let skel = Skeleton::build(&tri);
        if classify_vertices(&tri, &skel).is_ok() {
            tri.set_name(format!("random-{n}-{pairs}-s{seed}"));
            return Some(tri);
        }
    }
    None
}

/// A closed surface in a triangulation with a chosen vertex-free complement component.
#[derive(Clone, Debug)]
pub struct CrushCase {
    pub tri: Triangulation,
    pub surface: NormalSurface,
    pub x: RegionRef,
}

impl CrushCase {
    pub fn crush(&self) -> Result<CrushOutcome, Obstruction> {
        crush_along(&self.tri, &self.surface, Some(&self.x))
    }

    /// Plain-text record: the triangulation, then `surface <coords>` and `x <region>` lines.
    pub fn to_text(&self) -> String {
        format!("{}# surface {}\n# x {}\n", self.tri.to_text(), self.surface, self.x)
    }

    pub fn parse(name: &str, text: &str) -> Option<CrushCase> {
        let tri = Triangulation::parse(name, text).ok()?;
        let field = |key: &str| text.lines().find_map(|l| l.strip_prefix("# ")?.strip_prefix(key)?.strip_prefix(' ').map(str::to_string));
        let surface = field("surface")?.parse().ok()?;
        let x = field("x")?.parse().ok()?;
        Some(CrushCase { tri, surface, x })
    }
}

/// Every nonzero closed surface with coordinates at most `bound`, paired with each
/// vertex-free complement component that avoids the boundary.
pub fn crush_cases(tri: &Triangulation, bound: u64) -> Vec<CrushCase> {
    let mut out = Vec::new();
    for s in surfaces_up_to(tri, bound).closed(tri) {
        if s.is_zero() {
            continue;
        }
        let xs = match decompose(tri, &s, None) {
            Ok(dec) => vec![dec.cells.regions[dec.x_regions()[0]].reference()],
            Err(Rejection::AmbiguousX(refs)) => refs,
            Err(_) => continue,
        };
        for x in xs {
            if decompose(tri, &s, Some(&x)).is_ok() {
                out.push(CrushCase { tri: tri.clone(), surface: s.clone(), x });
            }
        }
    }
    out
}

/// Seeded random triangulations with `1..=max_tets` tetrahedra and at most
/// `max_boundary_faces` boundary faces, closed ones first for each size.
pub fn random_corpus(max_tets: usize, seeds: u64, max_boundary_faces: usize) -> Vec<Triangulation> {
    let mut out = Vec::new();
    for n in 1..=max_tets {
        for pairs in (1..=2 * n).rev().filter(|p| 4 * n - 2 * p <= max_boundary_faces) {
            for seed in 0..seeds {
                if let Some(tri) = random_valid(n, pairs, seed, 200) {
                    out.push(tri);
                }
            }
        }
    }
    out
}
