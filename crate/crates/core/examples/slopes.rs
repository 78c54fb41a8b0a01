//! Boundary-slope census and thin-annulus sums on the solid tori.

use nsurf::enumerate::surfaces_up_to;
use nsurf::fixtures;
use nsurf::normal::thin_edge_pattern;
use nsurf::slopes::{classify_thin_annulus_sum, slope_census};
use nsurf::Skeleton;

fn main() {
    for tri in [fixtures::solid_torus(), fixtures::layered()] {
        let census = slope_census(&tri, -2, 6);
        print!("{}", census.to_text());
        for s in census.surfaces.iter().take(5) {
            println!("  {}  euler={} slopes={:?}", s.surface, s.euler, s.slopes.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        }

        let skel = Skeleton::build(&tri);
        for a in (0..skel.edge_count()).filter_map(|e| thin_edge_pattern(&tri, &skel, e)) {
            println!("thin edge-linking annulus {a}");
            for f in surfaces_up_to(&tri, 2).iter().filter(|f| !f.is_zero()).take(6) {
                match classify_thin_annulus_sum(&tri, &skel, f, &a) {
                    Ok(r) => println!("  {f} + A: euler {} -> {}, {:?}", r.euler_before, r.euler_after, r.classification),
                    Err(e) => println!("  {f} + A: {e}"),
                }
            }
        }
    }
}
