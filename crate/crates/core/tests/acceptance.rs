//! Acceptance criteria 1-10. Runs as a plain binary so each criterion prints one line.
//!
//! Every comparison is exact; the constants below pin the bounds each criterion uses.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use nsurf::commands::{self, SurfaceFile, EXIT_FAILS, EXIT_OK};
use nsurf::crush::{crush_along, lift, push_forward, CrushOutcome, Obstruction, RegionKind};
use nsurf::efficiency::{boundary_efficiency_candidates, check_annular_efficient, EfficiencyError, Verdict};
use nsurf::enumerate::{surfaces_up_to, vertex_surfaces};
use nsurf::fixtures::{self, crush_cases, random_corpus, CrushCase};
use nsurf::isomorphism::isomorphic;
use nsurf::normal::{connected_components, surface_topology, thin_edge_pattern, MatchingSystem, NormalSurface};
use nsurf::slopes::{classify_thin_annulus_sum, slope_census, SumClassification, SumError};
use nsurf::{Skeleton, Triangulation};
use num_traits::ToPrimitive;

/// Criterion 2: oracle bound and largest fixture size.
const VERTEX_ORACLE_BOUND: u64 = 6;
const VERTEX_ORACLE_MAX_TETS: usize = 3;
/// Criteria 3 and 4: bounded enumerations used for the bijection.
const IDENTITY_BOUND: u64 = 2;
const BIJECTION_BOUND: u64 = 3;
const MIN_RANDOM_CRUSHES: usize = 5;
const SUCCESSES_PER_KIND: usize = 3;
/// Generator search space for criteria 4 and 5.
const GENERATOR_MAX_TETS: usize = 2;
const GENERATOR_SEEDS: u64 = 30;
const GENERATOR_SURFACE_BOUND: u64 = 3;
/// Criterion 6.
const LAYERED_BOUND: u64 = 6;
/// Criterion 7.
const LEMMA_BOUND: u64 = 4;
/// Criterion 8.
const CENSUS_CHI_MIN: i64 = -2;
const CENSUS_BOUNDS: [u64; 2] = [2, 4];
const STABLE_BOUNDS: (u64, u64) = (6, 8);
/// Random corpus for criteria 2, 7, 8 and 9.
const CORPUS_MAX_TETS: usize = 3;
const CORPUS_SEEDS: u64 = 3;
/// Random triangulations keep bounded enumerations at desk scale by staying nearly closed.
const MAX_BOUNDARY_FACES: usize = 2;

fn named() -> Vec<Triangulation> {
    fixtures::all_named()
}

fn corpus() -> Vec<Triangulation> {
    let mut all = named();
    all.extend(random_corpus(CORPUS_MAX_TETS, CORPUS_SEEDS, MAX_BOUNDARY_FACES));
    all
}

fn bounded(tri: &Triangulation) -> bool {
    tri.boundary_face_count() > 0
}

// ------------------------------------------------------------ 1

fn matching_shape() -> String {
    let all = corpus();
    for tri in &all {
        let system = MatchingSystem::build(tri);
        assert_eq!(system.equations.len(), 3 * tri.internal_face_pairs().len(), "{}", tri.name());
    }
    assert_eq!(MatchingSystem::build(&fixtures::solid_torus()).equations.len(), 3);
    assert_eq!(MatchingSystem::build(&fixtures::figure_eight()).equations.len(), 12);
    format!("{} triangulations", all.len())
}

// ------------------------------------------------------------ 2

/// Rank of integer rows by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                for k in 0..cols {
                    rows[i][k] = rows[i][k] * a - rows[r][k] * b;
                }
                let g = rows[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

/// An admissible vector spans an extreme ray of its quad domain exactly when the matching
/// columns on its support have corank one.
fn is_vertex_by_rank(system: &MatchingSystem, s: &NormalSurface) -> bool {
    let support = s.support();
    let rows: Vec<Vec<i128>> = system
        .equations
        .iter()
        .map(|eq| {
            let mut row = vec![0i128; support.len()];
            for &(var, c) in &eq.terms {
                if let Ok(k) = support.binary_search(&var) {
                    row[k] += c as i128;
                }
            }
            row
        })
        .collect();
    rank(rows) + 1 == support.len()
}

fn is_primitive(s: &NormalSurface) -> bool {
    s.coords().iter().fold(num_bigint::BigUint::from(0u8), |g, c| num_integer::Integer::gcd(&g, c)) == 1u8.into()
}

fn vertex_oracle() -> String {
    let fixtures: Vec<Triangulation> = corpus().into_iter().filter(|t| t.size() <= VERTEX_ORACLE_MAX_TETS).collect();
    let mut total = 0;
    for tri in &fixtures {
        let system = MatchingSystem::build(tri);
        let oracle: BTreeSet<NormalSurface> = surfaces_up_to(tri, VERTEX_ORACLE_BOUND)
            .iter()
            .filter(|s| !s.is_zero() && is_primitive(s) && is_vertex_by_rank(&system, s))
            .cloned()
            .collect();
        let computed: BTreeSet<NormalSurface> = vertex_surfaces(tri).iter().cloned().collect();
        assert_eq!(computed, oracle, "{}", tri.name());
        total += computed.len();
    }
    format!("{} triangulations, {total} vertex surfaces", fixtures.len())
}

// ------------------------------------------------------------ 3 and 4

fn topology_key(tri: &Triangulation, s: &NormalSurface) -> (i64, bool, usize, Option<u64>) {
    let t = surface_topology(tri, s).expect("closed surface");
    (t.euler, t.orientable, t.components, t.genus)
}

/// Checks lift and push_forward invert each other over the closed surfaces with
/// coordinates at most `bound` on both sides. Returns how many surfaces crossed each way.
fn check_bijection(o: &CrushOutcome, bound: u64) -> (usize, usize) {
    let source = &o.source;
    let mut pushed = 0;
    for f in surfaces_up_to(source, bound).closed(source) {
        let Ok(image) = push_forward(o, &f) else { continue };
        assert_eq!(lift(o, &image).as_ref(), Ok(&f), "lift(push({f})) in {}", source.name());
        assert_eq!(topology_key(source, &f), topology_key(&o.crushed, &image), "topology of {f} in {}", source.name());
        pushed += 1;
    }
    let mut lifted = 0;
    for g in surfaces_up_to(&o.crushed, bound).closed(&o.crushed) {
        let f = lift(o, &g).unwrap_or_else(|e| panic!("lift of {g} from {} failed: {e:?}", source.name()));
        assert_eq!(push_forward(o, &f).as_ref(), Ok(&g), "push(lift({g})) in {}", source.name());
        assert_eq!(topology_key(source, &f), topology_key(&o.crushed, &g));
        lifted += 1;
    }
    (pushed, lifted)
}

fn identity_crush() -> String {
    let fig8 = fixtures::figure_eight();
    let link = vertex_surfaces(&fig8).iter().next().cloned().expect("fig8 has its link");
    assert_eq!(link, NormalSurface::from_u64s(&[1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0]));
    let o = crush_along(&fig8, &link, None).expect("identity crush");
    let iso = isomorphic(&o.crushed, &fig8).expect("crushed fig8 is fig8");
    assert!(iso.verify(&o.crushed, &fig8));
    let (pushed, lifted) = check_bijection(&o, IDENTITY_BOUND);
    assert_eq!(pushed, lifted);
    format!("T* isomorphic to fig8; {pushed} closed surfaces (B={IDENTITY_BOUND}) round-trip")
}

struct Sweep {
    successes: Vec<(CrushCase, CrushOutcome)>,
    obstructions: BTreeMap<&'static str, CrushCase>,
    tried: usize,
}

fn obstruction_kind(o: &Obstruction) -> Option<&'static str> {
    match o {
        Obstruction::XIsProduct => Some("x-is-product"),
        Obstruction::NontrivialProduct { .. } => Some("nontrivial-product"),
        Obstruction::CycleOfTruncatedPrisms(_) => Some("prism-cycle"),
        Obstruction::Rejected(_) => None,
    }
}

/// The seeded generator: every crush case over the random corpus, in corpus order.
///
/// Successes are kept for criterion 4, favouring ones whose X has prisms or product
/// blocks and ones that shrink the triangulation, then one per triangulation.
fn sweep() -> Sweep {
    let mut sweep = Sweep { successes: Vec::new(), obstructions: BTreeMap::new(), tried: 0 };
    let mut all = Vec::new();
    for tri in random_corpus(GENERATOR_MAX_TETS, GENERATOR_SEEDS, MAX_BOUNDARY_FACES) {
        for case in crush_cases(&tri, GENERATOR_SURFACE_BOUND) {
            sweep.tried += 1;
            match case.crush() {
                Ok(o) => all.push((case, o)),
                Err(e) => {
                    if let Some(kind) = obstruction_kind(&e) {
                        sweep.obstructions.entry(kind).or_insert(case);
                    }
                }
            }
        }
    }
    let prisms = |o: &CrushOutcome| !o.decomposition.prisms().is_empty();
    let blocks = |o: &CrushOutcome| o.decomposition.count(RegionKind::is_product_block) > 0;
    let shrinks = |o: &CrushOutcome| o.crushed.size() < o.source.size();
    let kinds: [&dyn Fn(&CrushOutcome) -> bool; 4] = [&prisms, &blocks, &shrinks, &|_| true];
    for pick in kinds {
        let mut taken = 0;
        for (case, o) in &all {
            let fresh = !sweep.successes.iter().any(|(c, _): &(CrushCase, CrushOutcome)| c.tri.name() == case.tri.name() && c.surface == case.surface);
            if taken < SUCCESSES_PER_KIND && fresh && pick(o) {
                sweep.successes.push((case.clone(), o.clone()));
                taken += 1;
            }
        }
    }
    sweep
}

fn surface_bijection(sweep: &Sweep) -> String {
    assert!(sweep.successes.len() >= MIN_RANDOM_CRUSHES, "only {} random crushes succeed", sweep.successes.len());
    let mut with_prisms = 0;
    let mut with_blocks = 0;
    let mut shrinking = 0;
    let mut crossings = 0;
    for (case, o) in &sweep.successes {
        assert!(o.crushed.validate().passed(), "{}", case.tri.name());
        with_prisms += usize::from(!o.decomposition.prisms().is_empty());
        with_blocks += usize::from(o.decomposition.count(RegionKind::is_product_block) > 0);
        shrinking += usize::from(o.crushed.size() < o.source.size());
        let (pushed, lifted) = check_bijection(o, BIJECTION_BOUND);
        crossings += pushed + lifted;
    }
    let fig8 = fixtures::figure_eight();
    let link = vertex_surfaces(&fig8).iter().next().cloned().unwrap();
    check_bijection(&crush_along(&fig8, &link, None).unwrap(), BIJECTION_BOUND);
    format!(
        "{} random crushes ({with_prisms} with prisms, {with_blocks} with product blocks, {shrinking} shrinking) + fig8 identity; {crossings} round trips at B={BIJECTION_BOUND}",
        sweep.successes.len()
    )
}

fn obstruction_trichotomy(sweep: &Sweep) -> String {
    let archive = Path::new(env!("CARGO_TARGET_TMPDIR")).join("obstructions");
    std::fs::create_dir_all(&archive).unwrap();
    let mut found = Vec::new();
    for kind in ["x-is-product", "nontrivial-product", "prism-cycle"] {
        let case = sweep.obstructions.get(kind).unwrap_or_else(|| panic!("generator found no {kind} instance"));
        let text = case.to_text();
        std::fs::write(archive.join(format!("{kind}.txt")), &text).unwrap();
        let reread = CrushCase::parse(case.tri.name(), &text).unwrap();
        assert_eq!(obstruction_kind(&reread.crush().unwrap_err()), Some(kind));
        found.push(format!("{kind}: {} {}", case.tri.name(), case.x));
    }
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/obstructions");
    for kind in ["x-is-product", "nontrivial-product", "prism-cycle"] {
        let text = std::fs::read_to_string(shipped.join(format!("{kind}.txt"))).unwrap();
        let case = CrushCase::parse(kind, &text).unwrap();
        assert_eq!(obstruction_kind(&case.crush().unwrap_err()), Some(kind), "shipped {kind}");
    }
    format!("{} cases tried; {}; archived in {}", sweep.tried, found.join("; "), archive.display())
}

// ------------------------------------------------------------ 6

fn layered() -> String {
    let tri = fixtures::layered();
    let vertex = vertex_surfaces(&tri);
    assert!(vertex.iter().all(|s| !s.is_closed(&tri)), "closed vertex surface in layered");
    for b in 0..=LAYERED_BOUND {
        let closed: Vec<_> = surfaces_up_to(&tri, b).closed(&tri).into_iter().filter(|s| !s.is_zero()).collect();
        assert!(closed.is_empty(), "closed surface at B={b}: {}", closed[0]);
    }
    assert!(matches!(boundary_efficiency_candidates(&tri), Err(EfficiencyError::NoNormalBoundary(_))));
    format!("{} vertex surfaces, none closed; no closed surface for B<={LAYERED_BOUND}; NoNormalBoundary", vertex.len())
}

// ------------------------------------------------------------ 7

fn haken_lemma() -> String {
    let mut instances = 0;
    let mut fixtures_used = BTreeSet::new();
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    for tri in corpus().into_iter().filter(bounded).filter(|t| t.size() <= 2) {
        let skel = Skeleton::build(&tri);
        let annuli: BTreeSet<NormalSurface> = (0..skel.edge_count()).filter_map(|e| thin_edge_pattern(&tri, &skel, e)).collect();
        if annuli.is_empty() {
            continue;
        }
        fixtures_used.insert(tri.name().to_string());
        let list = surfaces_up_to(&tri, LEMMA_BOUND);
        for a in &annuli {
            let chi_a = surface_topology(&tri, a).unwrap().euler;
            for f in list.iter() {
                match classify_thin_annulus_sum(&tri, &skel, f, a) {
                    Err(SumError::Undefined(_)) => continue,
                    Err(e) => panic!("{}: {f} + {a}: {e}", tri.name()),
                    Ok(report) => {
                        if let SumClassification::NotApplicable { diagnostics } = &report.classification {
                            panic!("{}: {f} + {a} matches no case: {diagnostics}", tri.name());
                        }
                        let chi_f = if f.is_zero() { 0 } else { surface_topology(&tri, f).unwrap().euler };
                        assert_eq!(report.euler_after, chi_f + chi_a, "euler of {f} + {a}");
                        assert_eq!(report.euler_before, chi_f);
                        *cases.entry(format!("{:?}", report.classification)).or_default() += 1;
                        instances += 1;
                    }
                }
            }
        }
    }
    assert!(fixtures_used.contains("solid_torus") && fixtures_used.contains("layered"));
    format!("{instances} sums over {} fixtures; {cases:?}", fixtures_used.len())
}

// ------------------------------------------------------------ 8

fn class_set(tri: &Triangulation, bound: u64) -> BTreeSet<String> {
    slope_census(tri, CENSUS_CHI_MIN, bound).classes.keys().map(|c| c.to_string()).collect()
}

fn census() -> String {
    let fixtures: Vec<Triangulation> = corpus().into_iter().filter(|t| t.size() <= 2).collect();
    let mut nonempty = 0;
    for tri in &fixtures {
        let sets: Vec<BTreeSet<String>> = CENSUS_BOUNDS.iter().map(|&b| class_set(tri, b)).chain([class_set(tri, CENSUS_BOUNDS[1] + 2)]).collect();
        for w in sets.windows(2) {
            assert!(w[0].is_subset(&w[1]), "{}: census not monotone", tri.name());
        }
        nonempty += usize::from(!sets[sets.len() - 1].is_empty());
    }
    let mut stable = Vec::new();
    for tri in corpus().into_iter().filter(|t| t.size() <= 2) {
        if check_annular_efficient(&tri).verdict == Verdict::Holds {
            let (a, b) = STABLE_BOUNDS;
            assert_eq!(class_set(&tri, a), class_set(&tri, b), "{}: census changes from B={a} to B={b}", tri.name());
            stable.push(tri.name().to_string());
        }
    }
    assert!(!stable.is_empty(), "no annular-efficient fixture");
    format!(
        "monotone on {} fixtures ({nonempty} with slopes); stable {}->{} on {} annular-efficient fixtures",
        fixtures.len(),
        STABLE_BOUNDS.0,
        STABLE_BOUNDS.1,
        stable.len()
    )
}

// ------------------------------------------------------------ 9

/// Vertex links built straight from the corner classes.
fn vertex_links(tri: &Triangulation) -> BTreeSet<NormalSurface> {
    let skel = Skeleton::build(tri);
    skel.vertices
        .iter()
        .map(|v| {
            let mut c = vec![0u64; 7 * tri.size()];
            for &(t, corner) in &v.corners {
                c[7 * t + corner] += 1;
            }
            NormalSurface::from_u64s(&c)
        })
        .collect()
}

fn efficiency_consistency() -> String {
    let mut holds = 0;
    let mut checked = 0;
    for tri in corpus() {
        let verdict = check_annular_efficient(&tri).verdict;
        checked += 1;
        if verdict != Verdict::Holds {
            continue;
        }
        holds += 1;
        let links = vertex_links(&tri);
        for s in vertex_surfaces(&tri).iter() {
            for c in connected_components(&tri, s).unwrap() {
                let t = surface_topology(&tri, &c).unwrap();
                let sphere = t.euler == 2 && t.boundary_curves == 0;
                let disk = t.euler == 1 && t.boundary_curves == 1;
                assert!(!sphere, "{}: normal sphere {c}", tri.name());
                assert!(!disk || links.contains(&c), "{}: non-vertex-linking disk {c}", tri.name());
            }
        }
    }
    assert_ne!(check_annular_efficient(&fixtures::solid_torus()).verdict, Verdict::Holds);
    assert!(holds > 0, "no annular-efficient fixture");
    format!("{holds} of {checked} fixtures annular-efficient, all consistent; solid_torus not Holds")
}

// ------------------------------------------------------------ 10

fn run_cli(args: &[String]) -> commands::Output {
    commands::run(std::iter::once("nsurf".to_string()).chain(args.iter().cloned()))
}

fn digests(dir: &Path) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        out.insert(name, commands::sha256_hex(&std::fs::read(&path).unwrap()));
    }
    out
}

fn determinism() -> String {
    let fixtures_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let fx = |name: &str| fixtures_dir.join(name).display().to_string();
    let work = tempfile::tempdir().unwrap();
    let surfaces = work.path().join("fig8-vertex");
    let out = run_cli(&["enumerate".into(), fx("fig8.tri"), "vertex".into(), "-o".into(), surfaces.display().to_string()]);
    assert_eq!(out.code, EXIT_OK);
    let link_file = surfaces.join("surfaces.txt");
    assert_eq!(SurfaceFile::parse(&std::fs::read_to_string(&link_file).unwrap()).unwrap().surfaces.len(), 1);

    let commands: Vec<(Vec<String>, i32)> = vec![
        (vec!["info".into(), fx("fig8.tri"), fx("solid_torus.tri"), fx("layered.tri")], EXIT_OK),
        (vec!["enumerate".into(), fx("unglued.tri"), "vertex".into()], EXIT_OK),
        (vec!["enumerate".into(), fx("solid_torus.tri"), "fundamental".into()], EXIT_OK),
        (vec!["enumerate".into(), fx("layered.tri"), "bounded".into(), "--bound".into(), "3".into()], EXIT_OK),
        (vec!["check".into(), fx("fig8.tri"), "--zero".into()], EXIT_OK),
        (vec!["check".into(), fx("solid_torus.tri"), "--zero".into(), "--annular".into()], EXIT_FAILS),
        (vec!["check".into(), fx("layered.tri"), "--boundary".into()], EXIT_FAILS),
        (vec!["crush".into(), fx("fig8.tri"), link_file.display().to_string()], EXIT_OK),
        (vec!["slopes".into(), fx("solid_torus.tri"), "--chi-min".into(), "-2".into(), "--bound".into(), "6".into()], EXIT_OK),
        (vec!["--json".into(), "slopes".into(), fx("layered.tri"), "--chi-min".into(), "-2".into(), "--bound".into(), "3".into()], EXIT_OK),
    ];
    let mut files = 0;
    for (k, (args, code)) in commands.iter().enumerate() {
        let mut runs = Vec::new();
        for rep in 0..2 {
            let mut full = args.clone();
            let dir = work.path().join(format!("run{k}-{rep}"));
            if args.iter().all(|a| a != "info") {
                full.extend(["-o".to_string(), dir.display().to_string()]);
            }
            let out = run_cli(&full);
            assert_eq!(out.code, *code, "{args:?}: {}", out.stderr);
            let d = if dir.exists() { digests(&dir) } else { BTreeMap::new() };
            runs.push((commands::sha256_hex(out.stdout.as_bytes()), d));
        }
        assert_eq!(runs[0], runs[1], "{args:?} differs between runs");
        files += runs[0].1.len();
    }
    format!("{} commands, {files} files byte-identical across reruns", commands.len())
}

// ------------------------------------------------------------

type Criterion = (u32, &'static str, Duration, Box<dyn FnOnce() -> String + Send>);
type Outcome = (u32, &'static str, Duration, Duration, Result<String, String>);

fn main() {
    let started = Instant::now();
    let sweep = std::sync::Arc::new(sweep());
    let sweep_time = started.elapsed();
    let (s4, s5) = (sweep.clone(), sweep.clone());
    let criteria: Vec<Criterion> = vec![
        (1, "matching-system shape", Duration::from_secs(1), Box::new(matching_shape)),
        (2, "vertex enumeration equals rank oracle", Duration::from_secs(30), Box::new(vertex_oracle)),
        (3, "identity crush of fig8", Duration::from_secs(10), Box::new(identity_crush)),
        (4, "crush surface bijection", Duration::from_secs(120), Box::new(move || surface_bijection(&s4))),
        (5, "obstruction trichotomy", Duration::from_secs(120), Box::new(move || obstruction_trichotomy(&s5))),
        (6, "layered fixture", Duration::from_secs(10), Box::new(layered)),
        (7, "thin-annulus sum lemma", Duration::from_secs(60), Box::new(haken_lemma)),
        (8, "slope census", Duration::from_secs(120), Box::new(census)),
        (9, "efficiency consistency", Duration::from_secs(30), Box::new(efficiency_consistency)),
        (10, "CLI determinism", Duration::from_secs(30), Box::new(determinism)),
    ];
    let results: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .into_iter()
            .map(|(n, name, budget, f)| {
                scope.spawn(move || {
                    let t = Instant::now();
                    let r = catch_unwind(AssertUnwindSafe(f)).map_err(|e| {
                        e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
                    });
                    (n, name, budget, t.elapsed(), r)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    println!("generator sweep: {:.1}s", sweep_time.as_secs_f64());
    let mut failed = 0;
    for (n, name, budget, took, r) in &results {
        let secs = took.as_secs_f64();
        let budget = budget.as_secs_f64().to_u64().unwrap_or(0);
        match r {
            Ok(detail) => println!("criterion {n:2} PASS {name} ({secs:.1}s, budget {budget}s): {detail}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:2} FAIL {name} ({secs:.1}s, budget {budget}s): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", results.len() - failed, started.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
