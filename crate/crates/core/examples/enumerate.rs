//! Vertex, fundamental and bounded enumeration on the named fixtures.

use nsurf::enumerate::{fundamental_surfaces, surfaces_up_to, vertex_surfaces};
use nsurf::fixtures;
use nsurf::normal::{recognize_special, surface_topology};
use nsurf::Skeleton;

fn main() -> anyhow::Result<()> {
    for tri in fixtures::all_named() {
        let skel = Skeleton::build(&tri);
        let vertex = vertex_surfaces(&tri);
        let fundamental = fundamental_surfaces(&tri)?;
        let bounded = surfaces_up_to(&tri, 2);
        println!(
            "{}: {} vertex, {} fundamental, {} with coordinates <= 2",
            tri.name(),
            vertex.len(),
            fundamental.len(),
            bounded.len()
        );
        for s in &vertex {
            let topo = surface_topology(&tri, s)?;
            println!(
                "  {s}  euler={} components={} boundary_curves={} orientable={} {:?}",
                topo.euler,
                topo.components,
                topo.boundary_curves,
                topo.orientable,
                recognize_special(&tri, &skel, s)
            );
        }
    }
    Ok(())
}
