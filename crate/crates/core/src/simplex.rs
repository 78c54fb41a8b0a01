//! Fixed combinatorics of a single tetrahedron: edges, faces and quad types.

/// Tetrahedron edges as vertex pairs; edge `i` is `EDGE_VERTICES[i]`.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Quad type `j` separates the pair `QUAD_PAIRS[j].0` from `QUAD_PAIRS[j].1`.
/// The first pair always contains vertex 0.
pub const QUAD_PAIRS: [([usize; 2], [usize; 2]); 3] = [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])];

pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {a}{b}"),
    }
}

/// The edge opposite edge `e`.
pub fn opposite_edge(e: usize) -> usize {
    5 - e
}

/// Quad type whose separated pairs contain the edge `{a, b}`.
pub fn quad_type(a: usize, b: usize) -> usize {
    match edge_index(a, b) {
        0 | 5 => 0,
        1 | 4 => 1,
        2 | 3 => 2,
        _ => unreachable!(),
    }
}

/// The vertex on the same side as `v` for quad type `j`.
pub fn quad_partner(j: usize, v: usize) -> usize {
    let (p, q) = QUAD_PAIRS[j];
    if p[0] == v {
        p[1]
    } else if p[1] == v {
        p[0]
    } else if q[0] == v {
        q[1]
    } else {
        q[0]
    }
}

/// 0 if `v` is in the first pair of quad type `j` (the pair holding vertex 0), else 1.
pub fn quad_side(j: usize, v: usize) -> usize {
    if QUAD_PAIRS[j].0.contains(&v) {
        0
    } else {
        1
    }
}

/// Whether quad type `j` crosses edge `{a, b}`.
pub fn quad_crosses(j: usize, a: usize, b: usize) -> bool {
    quad_type(a, b) != j
}

/// Vertices of face `f` (all vertices except `f`), ascending.
pub fn face_vertices(f: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_types_pair_opposite_edges() {
        for e in 0..6 {
            let (a, b) = EDGE_VERTICES[e];
            let (c, d) = EDGE_VERTICES[opposite_edge(e)];
            assert_eq!(quad_type(a, b), quad_type(c, d));
            assert!(!quad_crosses(quad_type(a, b), a, b));
            assert_eq!(quad_partner(quad_type(a, b), a), b);
        }
    }

    #[test]
    fn every_quad_crosses_four_edges() {
        for j in 0..3 {
            let crossing = EDGE_VERTICES.iter().filter(|(a, b)| quad_crosses(j, *a, *b)).count();
            assert_eq!(crossing, 4);
        }
    }
}
