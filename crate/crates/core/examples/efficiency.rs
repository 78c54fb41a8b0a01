//! Efficiency reports for each named fixture.

use nsurf::efficiency::{boundary_efficiency_candidates, check_annular_efficient, check_zero_efficient};
use nsurf::fixtures;

fn main() {
    for tri in fixtures::all_named() {
        println!("== {}", tri.name());
        print!("{}", check_zero_efficient(&tri));
        print!("{}", check_annular_efficient(&tri));
        match boundary_efficiency_candidates(&tri) {
            Ok(report) => print!("{report}"),
            Err(e) => println!("BoundaryEfficiencyCandidates: {e}"),
        }
    }
}
