//! Relabel a triangulation at random and recover the isomorphism.

use nsurf::enumerate::vertex_surfaces;
use nsurf::fixtures;
use nsurf::isomorphism::isomorphic;
use nsurf::Perm4;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tri = fixtures::layered();
    let mut order: Vec<usize> = (0..tri.size()).collect();
    order.shuffle(&mut rng);
    let all: Vec<Perm4> = Perm4::all().collect();
    let perms: Vec<Perm4> = (0..tri.size()).map(|_| *all.choose(&mut rng).unwrap()).collect();
    let relabelled = tri.relabelled(&order, &perms);
    println!("original:\n{}relabelled:\n{}", tri.to_text(), relabelled.to_text());

    let iso = isomorphic(&tri, &relabelled).expect("relabelling is an isomorphism");
    println!("tetrahedron map {:?}, vertex maps {:?}", iso.tets, iso.perms.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    for s in vertex_surfaces(&tri).iter() {
        println!("  {s}  ->  {}", iso.map_surface(s));
    }
    assert!(isomorphic(&fixtures::figure_eight(), &tri).is_none());
}
