use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use nsurf::commands::{run, SurfaceFile, EXIT_FAILS, EXIT_INPUT, EXIT_OK, EXIT_UNDETERMINED};
use nsurf::isomorphism::isomorphic;
use nsurf::normal::recognize_special;
use nsurf::{fixtures, NormalSurface, Skeleton, Triangulation};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn nsurf(args: &[&str]) -> nsurf::commands::Output {
    run(std::iter::once("nsurf").chain(args.iter().copied()))
}

fn out_dir(root: &tempfile::TempDir, name: &str) -> PathBuf {
    root.path().join(name)
}

fn surfaces_in(dir: &Path, file: &str) -> SurfaceFile {
    SurfaceFile::parse(&fs::read_to_string(dir.join(file)).unwrap()).unwrap()
}

#[test]
fn info_summaries() {
    let out = nsurf(&["info", &fixture("fig8.tri")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("summary=2 tets, 2 edges, 1 ideal vertex genus 1, closed pseudo-manifold\n"), "{}", out.stdout);

    let out = nsurf(&["info", &fixture("solid_torus.tri")]);
    assert!(out.stdout.contains("tets=1\n"));
    assert!(out.stdout.contains("vertices=1\n"));
    assert!(out.stdout.contains("boundary_components=1\n"));
    assert!(out.stdout.contains("boundary.0=torus"));
}

#[test]
fn info_json_lists_every_file() {
    let out = nsurf(&["info", "--json", &fixture("fig8.tri"), &fixture("layered.tri")]);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let reports = value.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["file"], "fig8.tri");
    assert_eq!(reports[1]["tets"], 2);
}

#[test]
fn malformed_file_reports_line() {
    let root = tempfile::tempdir().unwrap();
    let path = root.path().join("bad.tri");
    fs::write(&path, "# comment\ntets 2\n0: 1:1302 1:2031 1:0321 1:2103\n1: 0:1302 0:2031 0:0321 0:9999\n").unwrap();
    let out = nsurf(&["info", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
}

#[test]
fn invalid_gluing_is_an_input_error() {
    let root = tempfile::tempdir().unwrap();
    let path = root.path().join("half.tri");
    fs::write(&path, "tets 2\n0: 1:0123 - - -\n1: - - - -\n").unwrap();
    let out = nsurf(&["check", path.to_str().unwrap(), "-o", root.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("invalid triangulation"));
}

#[test]
fn enumerate_modes() {
    let root = tempfile::tempdir().unwrap();
    let dir = out_dir(&root, "fig8");
    assert_eq!(nsurf(&["enumerate", &fixture("fig8.tri"), "vertex", "-o", dir.to_str().unwrap()]).code, EXIT_OK);
    let file = surfaces_in(&dir, "surfaces.txt");
    assert_eq!(file.header["coords"], "ncoord-v1");
    assert_eq!(file.header["triangulation"], "fig8");
    assert_eq!(file.surfaces, vec![NormalSurface::from_u64s(&[1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0])]);

    let dir = out_dir(&root, "unglued");
    nsurf(&["enumerate", &fixture("unglued.tri"), "vertex", "-o", dir.to_str().unwrap()]);
    let units: Vec<NormalSurface> = (0..7)
        .map(|k| {
            let mut c = [0u64; 7];
            c[6 - k] = 1;
            NormalSurface::from_u64s(&c)
        })
        .collect();
    assert_eq!(surfaces_in(&dir, "surfaces.txt").surfaces, units);

    let dir = out_dir(&root, "zero");
    nsurf(&["enumerate", &fixture("layered.tri"), "bounded", "--bound", "0", "-o", dir.to_str().unwrap()]);
    assert_eq!(surfaces_in(&dir, "surfaces.txt").surfaces, vec![NormalSurface::zero(2)]);

    assert_eq!(nsurf(&["enumerate", &fixture("layered.tri"), "bounded", "-o", dir.to_str().unwrap()]).code, EXIT_INPUT);
}

#[test]
fn manifest_lists_artifacts_with_digests() {
    let root = tempfile::tempdir().unwrap();
    let dir = out_dir(&root, "m");
    nsurf(&["enumerate", &fixture("solid_torus.tri"), "fundamental", "-o", dir.to_str().unwrap()]);
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "enumerate");
    assert_eq!(manifest["coord_version"], "ncoord-v1");
    assert!(manifest["elapsed_ms"].is_null());
    let artifact = &manifest["artifacts"][0];
    assert_eq!(artifact["file"], "surfaces.txt");
    let bytes = fs::read(dir.join("surfaces.txt")).unwrap();
    assert_eq!(artifact["sha256"], nsurf::commands::sha256_hex(&bytes));
    let input = fs::read(fixture("solid_torus.tri")).unwrap();
    assert_eq!(manifest["inputs"][0]["sha256"], nsurf::commands::sha256_hex(&input));
}

#[test]
fn candidate_cap_makes_fundamental_undetermined() {
    let root = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_nsurf");
    let status = Command::new(bin)
        .args(["enumerate", &fixture("unglued.tri"), "fundamental", "-o", root.path().to_str().unwrap()])
        .env("NSURF_MAX_CANDIDATES", "1")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_UNDETERMINED), "{}", String::from_utf8_lossy(&status.stdout));
}

#[test]
fn layered_boundary_check_fails_without_normal_boundary() {
    let root = tempfile::tempdir().unwrap();
    let out = nsurf(&["check", &fixture("layered.tri"), "--boundary", "-o", root.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAILS);
    assert!(out.stdout.contains("NoNormalBoundary"));
    assert!(root.path().join("obstruction-boundary-efficient.txt").exists());

    let out = nsurf(&["check", &fixture("fig8.tri"), "--boundary", "-o", root.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn check_exit_codes() {
    let root = tempfile::tempdir().unwrap();
    let dir = root.path().to_str().unwrap();
    assert_eq!(nsurf(&["check", &fixture("fig8.tri"), "-o", dir]).code, EXIT_OK);
    assert_eq!(nsurf(&["check", &fixture("fig8.tri"), "--annular", "-o", dir]).code, EXIT_UNDETERMINED);
    assert_eq!(nsurf(&["check", &fixture("two_tet_sphere.tri"), "--zero", "-o", dir]).code, EXIT_FAILS);
}

#[test]
fn witnesses_round_trip() {
    let root = tempfile::tempdir().unwrap();
    let dir = root.path();
    let out = nsurf(&["check", &fixture("two_tet_sphere.tri"), "--zero", "--json", "-o", dir.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAILS);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let witnesses = report["checks"][0]["report"]["witnesses"].as_array().unwrap().clone();

    let tri = fixtures::two_tet_sphere();
    let skel = Skeleton::build(&tri);
    let file = surfaces_in(dir, "witnesses-zero-efficient.txt");
    assert_eq!(file.surfaces.len(), witnesses.len());
    for (s, w) in file.surfaces.iter().zip(&witnesses) {
        assert_eq!(w["surface"], s.to_string());
        let special = serde_json::to_value(recognize_special(&tri, &skel, s)).unwrap();
        assert_eq!(w["special"], special);
    }
    let rerun = nsurf::efficiency::check_zero_efficient(&tri);
    let listed: Vec<NormalSurface> = rerun.witnesses.iter().map(|w| w.surface.clone()).collect();
    assert_eq!(listed, file.surfaces);
}

#[test]
fn crush_figure_eight_along_its_link() {
    let root = tempfile::tempdir().unwrap();
    let surfaces = out_dir(&root, "s");
    nsurf(&["enumerate", &fixture("fig8.tri"), "vertex", "-o", surfaces.to_str().unwrap()]);
    let dir = out_dir(&root, "c");
    let out = nsurf(&["crush", &fixture("fig8.tri"), surfaces.join("surfaces.txt").to_str().unwrap(), "-o", dir.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let crushed = Triangulation::parse("crushed", &fs::read_to_string(dir.join("crushed.tri")).unwrap()).unwrap();
    assert!(isomorphic(&crushed, &fixtures::figure_eight()).is_some());
    let sidecar = fs::read_to_string(dir.join("crushed.corr")).unwrap();
    assert!(sidecar.starts_with("# nsurf crush correspondence v1\n"));
    assert_eq!(sidecar.lines().filter(|l| l.starts_with("face ")).count(), 8);
}

#[test]
fn crush_obstruction_writes_witness() {
    let root = tempfile::tempdir().unwrap();
    let case = fixtures::CrushCase::parse("cycle", include_str!("../fixtures/obstructions/prism-cycle.txt")).unwrap();
    let tri_path = root.path().join("cycle.tri");
    fs::write(&tri_path, case.tri.to_text()).unwrap();
    let surface_path = root.path().join("s.txt");
    fs::write(&surface_path, format!("{}\n", case.surface)).unwrap();
    let dir = out_dir(&root, "o");
    let x = case.x.to_string();
    let out = nsurf(&["crush", tri_path.to_str().unwrap(), surface_path.to_str().unwrap(), "--x", &x, "-o", dir.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAILS);
    assert!(out.stdout.contains("verdict=obstruction"));
    let witness = fs::read_to_string(dir.join("obstruction.txt")).unwrap();
    assert!(witness.contains("CycleOfTruncatedPrisms"));
    assert_eq!(SurfaceFile::parse(&witness.replace("obstruction=", "# ").replace("detail=", "# ")).unwrap().surfaces, vec![case.surface]);

    let out = nsurf(&["crush", tri_path.to_str().unwrap(), surface_path.to_str().unwrap(), "--x", "9:tet", "-o", dir.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAILS);
    assert!(out.stdout.contains("kind=UnknownRegion\n"), "{}", out.stdout);
}

#[test]
fn crush_rejects_wrong_length_surface() {
    let root = tempfile::tempdir().unwrap();
    let surface_path = root.path().join("s.txt");
    fs::write(&surface_path, "1 1 1 1 0 0 0\n").unwrap();
    let out = nsurf(&["crush", &fixture("fig8.tri"), surface_path.to_str().unwrap(), "-o", root.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn slopes_census_file_is_stable() {
    let root = tempfile::tempdir().unwrap();
    let mut digests = Vec::new();
    for rep in 0..2 {
        let dir = out_dir(&root, &format!("r{rep}"));
        let out = nsurf(&["slopes", &fixture("solid_torus.tri"), "--chi-min", "-2", "--bound", "6", "-o", dir.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_OK);
        digests.push(nsurf::commands::sha256_hex(&fs::read(dir.join("census.txt")).unwrap()));
    }
    assert_eq!(digests[0], digests[1]);
}

#[test]
fn binary_exit_status_matches() {
    let bin = env!("CARGO_BIN_EXE_nsurf");
    let status = Command::new(bin).args(["info", &fixture("fig8.tri")]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&status.stdout).contains("tets=2"));
    let status = Command::new(bin).args(["info", "/nonexistent.tri"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_INPUT));
}
