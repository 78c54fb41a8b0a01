//! Crush along closed normal surfaces and carry surfaces across the crush.

use nsurf::crush::{crush_along, decompose, lift, push_forward, Obstruction};
use nsurf::enumerate::{surfaces_up_to, vertex_surfaces};
use nsurf::fixtures;
use nsurf::isomorphism::isomorphic;

fn main() {
    let fig8 = fixtures::figure_eight();
    let link = vertex_surfaces(&fig8).iter().next().cloned().unwrap();
    let outcome = crush_along(&fig8, &link, None).expect("crushing the vertex link");
    println!("fig8 crushed along its vertex link:\n{}", outcome.crushed.to_text());
    println!("isomorphic to fig8: {}", isomorphic(&outcome.crushed, &fig8).is_some());
    print!("{}", outcome.correspondence());

    // Two parallel copies of the link leave a product region between them, and the far
    // side as a second candidate component.
    let doubled = link.scaled(2);
    match decompose(&fig8, &doubled, None) {
        Err(e) => println!("2 x link: {e}"),
        Ok(_) => unreachable!("both sides are vertex-free"),
    }
    for x in ["0:tri/0/0", "1:tet"] {
        match crush_along(&fig8, &doubled, Some(&x.parse().unwrap())) {
            Ok(o) => println!("  X = {x}: crushed to {} tetrahedra", o.crushed.size()),
            Err(e) => println!("  X = {x}: {e}"),
        }
    }

    for f in surfaces_up_to(&fig8, 2).closed(&fig8).iter().filter(|s| !s.is_zero()) {
        let image = push_forward(&outcome, f).unwrap();
        assert_eq!(lift(&outcome, &image).as_ref(), Ok(f));
    }

    let case = nsurf::fixtures::CrushCase::parse("cycle", include_str!("../fixtures/obstructions/prism-cycle.txt")).unwrap();
    match case.crush() {
        Err(e @ Obstruction::CycleOfTruncatedPrisms(_)) => println!("{}: {e}", case.tri.name()),
        other => println!("unexpected: {:?}", other.map(|o| o.crushed.size())),
    }
}
