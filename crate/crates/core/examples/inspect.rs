//! Parse a gluing table and print its skeleton: `inspect [file.tri]` (default: figure-eight).

use nsurf::normal::peripheral_surface;
use nsurf::skeleton::classify_vertices;
use nsurf::{fixtures, Skeleton, Triangulation};

fn main() -> anyhow::Result<()> {
    let tri = match std::env::args().nth(1) {
        Some(path) => Triangulation::parse(path.clone(), &std::fs::read_to_string(&path)?)?,
        None => fixtures::figure_eight(),
    };
    let report = tri.validate();
    println!("{}: {} tetrahedra, {}", tri.name(), tri.size(), report.summary());
    let skel = Skeleton::build(&tri);
    println!("{} edges, {} vertices, {} boundary faces", skel.edge_count(), skel.vertex_count(), skel.boundary_faces.len());
    for (e, class) in skel.edges.iter().enumerate() {
        println!("  edge {e}: degree {} boundary={}", class.members.len(), class.boundary);
    }
    for (v, kind) in classify_vertices(&tri, &skel)?.iter().enumerate() {
        println!("  vertex {v}: {kind:?}");
    }
    for (b, comp) in skel.boundary_components.iter().enumerate() {
        println!("  boundary {b}: {} faces, euler {}", comp.faces.len(), comp.euler_characteristic());
    }
    if !skel.boundary_faces.is_empty() {
        match peripheral_surface(&tri, &skel) {
            Ok(surfaces) => surfaces.iter().for_each(|s| println!("  boundary-linking surface {s}")),
            Err(e) => println!("  no normal boundary: {e}"),
        }
    }
    Ok(())
}
