//! Seeded fixture generator.
//!
//! Draws random triangulations with at most two boundary faces, writes a few of them to
//! `fixtures/random/`, and writes one crush instance for each obstruction kind to
//! `fixtures/obstructions/`. Output is fully determined by the arguments:
//! `generate_fixtures [max_tets] [seeds] [surface_bound]`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use nsurf::crush::Obstruction;
use nsurf::fixtures::{crush_cases, random_corpus};

fn main() -> anyhow::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let max_tets = args.first().copied().unwrap_or(2) as usize;
    let seeds = args.get(1).copied().unwrap_or(30);
    let bound = args.get(2).copied().unwrap_or(2);

    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let random_dir = root.join("random");
    let obstruction_dir = root.join("obstructions");
    fs::create_dir_all(&random_dir)?;
    fs::create_dir_all(&obstruction_dir)?;

    let corpus = random_corpus(max_tets, seeds, 2);
    let mut found = BTreeMap::new();
    let mut successes = 0;
    for tri in &corpus {
        for case in crush_cases(tri, bound) {
            let kind = match case.crush() {
                Ok(_) => {
                    successes += 1;
                    continue;
                }
                Err(Obstruction::XIsProduct) => "x-is-product",
                Err(Obstruction::NontrivialProduct { .. }) => "nontrivial-product",
                Err(Obstruction::CycleOfTruncatedPrisms(_)) => "prism-cycle",
                Err(Obstruction::Rejected(_)) => continue,
            };
            found.entry(kind).or_insert(case);
        }
    }
    for tri in corpus.iter().filter(|t| ["-s0", "-s1", "-s2"].iter().any(|s| t.name().ends_with(s))) {
        fs::write(random_dir.join(format!("{}.tri", tri.name())), tri.to_text())?;
    }
    for (kind, case) in &found {
        fs::write(obstruction_dir.join(format!("{kind}.txt")), case.to_text())?;
        println!("{kind}: {} x={} surface={}", case.tri.name(), case.x, case.surface);
    }
    for kind in ["x-is-product", "nontrivial-product", "prism-cycle"] {
        if !found.contains_key(kind) {
            println!("{kind}: none with at most {max_tets} tetrahedra, {seeds} seeds, bound {bound}");
        }
    }
    println!("{} triangulations, {successes} successful crushes", corpus.len());
    Ok(())
}
