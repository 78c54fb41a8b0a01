//! Permutations of the four vertex labels of a tetrahedron.

use std::fmt;

/// A permutation of `{0,1,2,3}`, stored as the images of `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its image array, returning `None` unless it is a bijection.
    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn inverse(&self) -> Perm4 {
        let mut out = [0u8; 4];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm4(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut out = [0u8; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[other.0[i] as usize];
        }
        Perm4(out)
    }

    /// Transposition swapping `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Perm4 {
        let mut out = [0u8, 1, 2, 3];
        out.swap(a, b);
        Perm4(out)
    }

    pub fn is_odd(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }

    /// All 24 permutations in lexicographic order of their image arrays.
    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..4u8).flat_map(|a| {
            (0..4u8).flat_map(move |b| {
                (0..4u8).flat_map(move |c| (0..4u8).filter_map(move |d| Perm4::new([a, b, c, d])))
            })
        })
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl serde::Serialize for Perm4 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
