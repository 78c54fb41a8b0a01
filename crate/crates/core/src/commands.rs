//! The `nsurf` command line: argument parsing, file formats, reports and run manifests.
//!
//! Every command returns an [`Output`] instead of printing, so the binary stays a thin
//! wrapper and tests can drive commands in-process. Exit codes: 0 success or holds,
//! 1 fails or obstruction, 2 bad input, 3 undetermined.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::crush::{crush_along, FaceRoute, Obstruction, RegionRef};
use crate::efficiency::{
    boundary_efficiency_candidates, check_annular_efficient, check_zero_efficient, EfficiencyError, EfficiencyReport,
    Property, Verdict,
};
use crate::enumerate::{fundamental_surfaces, surfaces_up_to, vertex_surfaces, SurfaceList};
use crate::normal::{peripheral_surface, NormalSurface, COORDS_PER_TET};
use crate::skeleton::{classify_vertices, Skeleton, VertexKind};
use crate::slopes::slope_census;
use crate::triangulation::Triangulation;
use crate::COORD_VERSION;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Parser)]
#[command(name = "nsurf", version, about = "Normal surfaces, crushing, efficiency and boundary slopes")]
pub struct Cli {
    /// Print reports as JSON instead of key=value lines.
    #[arg(long, global = true)]
    pub json: bool,
    /// Record wall-clock timing in the run manifest (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarise one or more triangulation files.
    Info {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Enumerate normal surfaces into a surface file.
    Enumerate {
        path: PathBuf,
        mode: Mode,
        /// Coordinate bound for `bounded` mode.
        #[arg(long, required_if_eq("mode", "bounded"))]
        bound: Option<u64>,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Efficiency checks; with no flag, runs --zero.
    Check {
        path: PathBuf,
        #[arg(long)]
        zero: bool,
        #[arg(long)]
        annular: bool,
        #[arg(long)]
        boundary: bool,
        #[arg(long, short, default_value = ".")]
        out: PathBuf,
    },
    /// Crush along a closed normal surface taken from a surface file.
    Crush {
        path: PathBuf,
        surface: PathBuf,
        /// Which surface of the file to use, counting from 0.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Region of the complement component to crush, e.g. `1:tet`.
        #[arg(long)]
        x: Option<RegionRef>,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Boundary-slope census of connected surfaces with bounded coordinates.
    Slopes {
        path: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        chi_min: i64,
        #[arg(long)]
        bound: u64,
        #[arg(long, short)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Vertex,
    Fundamental,
    Bounded,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn input_error(message: impl Into<String>) -> Output {
        Output { code: EXIT_INPUT, stdout: String::new(), stderr: message.into() + "\n" }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FileDigest {
    pub file: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub inputs: Vec<FileDigest>,
    pub kernel_version: String,
    pub coord_version: String,
    pub verdicts: Vec<String>,
    /// Files written next to the manifest.
    pub artifacts: Vec<FileDigest>,
    pub elapsed_ms: Option<u128>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes through a temporary file in the same directory, then renames into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

/// A parsed surface file: `#`-comment header lines of the form `# key=value`, then one
/// surface per line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceFile {
    pub header: BTreeMap<String, String>,
    pub surfaces: Vec<NormalSurface>,
}

impl SurfaceFile {
    pub fn parse(text: &str) -> Result<SurfaceFile, String> {
        let mut file = SurfaceFile::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((k, v)) = comment.trim().split_once('=') {
                    file.header.entry(k.trim().to_string()).or_insert_with(|| v.trim().to_string());
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let s = line.parse::<NormalSurface>().map_err(|e| format!("line {}: {e}", i + 1))?;
            file.surfaces.push(s);
        }
        if let Some(tag) = file.header.get("coords") {
            if tag != COORD_VERSION {
                return Err(format!("coordinate convention `{tag}` is not {COORD_VERSION}"));
            }
        }
        Ok(file)
    }

    /// Checks every surface has `7n` coordinates.
    pub fn check_size(&self, tri: &Triangulation) -> Result<(), String> {
        let want = COORDS_PER_TET * tri.size();
        match self.surfaces.iter().position(|s| s.coords().len() != want) {
            Some(k) => Err(format!("surface {k} has {} coordinates, expected {want}", self.surfaces[k].coords().len())),
            None => Ok(()),
        }
    }
}

/// Renders a surface file; `comments[k]`, when present, is written above surface `k`.
pub fn surface_file_text(tri_name: &str, provenance: &str, surfaces: &[NormalSurface], comments: &[String]) -> String {
    let mut out = String::from("# nsurf surfaces\n");
    writeln!(out, "# triangulation={tri_name}").unwrap();
    writeln!(out, "# coords={COORD_VERSION}").unwrap();
    writeln!(out, "# provenance={provenance}").unwrap();
    writeln!(out, "# count={}", surfaces.len()).unwrap();
    for (k, s) in surfaces.iter().enumerate() {
        if let Some(c) = comments.get(k) {
            writeln!(out, "# {c}").unwrap();
        }
        writeln!(out, "{s}").unwrap();
    }
    out
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Output { code, stdout: String::new(), stderr: text }
            } else {
                Output { code, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Output {
    let ctx = Ctx { json: cli.json, timing: cli.timing, start: Instant::now() };
    let result = match &cli.command {
        Command::Info { paths } => return cmd_info(&ctx, paths),
        Command::Enumerate { path, mode, bound, out } => cmd_enumerate(&ctx, path, *mode, *bound, out),
        Command::Check { path, zero, annular, boundary, out } => {
            let zero = *zero || !(*annular || *boundary);
            cmd_check(&ctx, path, zero, *annular, *boundary, out)
        }
        Command::Crush { path, surface, index, x, out } => cmd_crush(&ctx, path, surface, *index, x.as_ref(), out),
        Command::Slopes { path, chi_min, bound, out } => cmd_slopes(&ctx, path, *chi_min, *bound, out),
    };
    result.unwrap_or_else(|e| e)
}

struct Ctx {
    json: bool,
    timing: bool,
    start: Instant,
}

impl Ctx {
    fn emit<R: Serialize>(&self, code: i32, report: &R, lines: &[(String, String)]) -> Output {
        let stdout = if self.json {
            serde_json::to_string_pretty(report).expect("reports serialize") + "\n"
        } else {
            key_values(lines)
        };
        Output { code, stdout, stderr: String::new() }
    }
}

fn key_values(lines: &[(String, String)]) -> String {
    lines.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

struct Input {
    tri: Triangulation,
    digest: FileDigest,
}

fn file_label(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

fn read_bytes(path: &Path) -> Result<(String, FileDigest), Output> {
    let bytes = fs::read(path).map_err(|e| Output::input_error(format!("{}: {e}", path.display())))?;
    let digest = FileDigest { file: file_label(path), sha256: sha256_hex(&bytes) };
    let text = String::from_utf8(bytes).map_err(|_| Output::input_error(format!("{}: not UTF-8", path.display())))?;
    Ok((text, digest))
}

fn read_triangulation(path: &Path) -> Result<Input, Output> {
    let (text, digest) = read_bytes(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let tri = Triangulation::parse(name, &text).map_err(|e| Output::input_error(format!("{}: {e}", path.display())))?;
    let report = tri.validate();
    if !report.passed() {
        return Err(Output::input_error(format!("{}: invalid triangulation: {}", path.display(), report.summary())));
    }
    Ok(Input { tri, digest })
}

struct Artifacts {
    dir: PathBuf,
    written: Vec<FileDigest>,
}

impl Artifacts {
    fn new(dir: &Path) -> Result<Artifacts, Output> {
        fs::create_dir_all(dir).map_err(|e| Output::input_error(format!("{}: {e}", dir.display())))?;
        Ok(Artifacts { dir: dir.to_path_buf(), written: Vec::new() })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf, Output> {
        let path = self.dir.join(name);
        write_atomic(&path, contents.as_bytes())
            .map_err(|e| Output::input_error(format!("{}: {e}", path.display())))?;
        self.written.push(FileDigest { file: name.to_string(), sha256: sha256_hex(contents.as_bytes()) });
        Ok(path)
    }

    fn finish(mut self, ctx: &Ctx, command: &str, parameters: BTreeMap<String, String>, inputs: Vec<FileDigest>, verdicts: Vec<String>) -> Result<RunManifest, Output> {
        self.written.sort_by(|a, b| a.file.cmp(&b.file));
        let manifest = RunManifest {
            command: command.to_string(),
            parameters,
            inputs,
            kernel_version: env!("CARGO_PKG_VERSION").to_string(),
            coord_version: COORD_VERSION.to_string(),
            verdicts,
            artifacts: self.written,
            elapsed_ms: ctx.timing.then(|| ctx.start.elapsed().as_millis()),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        let path = self.dir.join(MANIFEST_FILE);
        write_atomic(&path, text.as_bytes()).map_err(|e| Output::input_error(format!("{}: {e}", path.display())))?;
        Ok(manifest)
    }
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

// ---------------------------------------------------------------- info

#[derive(Clone, Debug, Serialize)]
pub struct BoundarySummary {
    pub faces: usize,
    pub euler: i64,
    pub surface: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InfoReport {
    pub file: String,
    pub sha256: String,
    pub tets: usize,
    pub edges: usize,
    pub vertices: usize,
    pub vertex_kinds: Vec<String>,
    pub boundary_components: Vec<BoundarySummary>,
    pub orientable: bool,
    pub normal_boundary: String,
    pub summary: String,
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn surface_name(euler: i64) -> String {
    match euler {
        2 => "sphere".to_string(),
        0 => "torus".to_string(),
        e => format!("genus {} surface", (2 - e) / 2),
    }
}

fn vertex_kind_text(k: &VertexKind) -> String {
    match k {
        VertexKind::InteriorMaterial => "interior".to_string(),
        VertexKind::BoundaryMaterial => "boundary".to_string(),
        VertexKind::Ideal { genus } => format!("ideal genus {genus}"),
    }
}

/// Builds the info report, or the vertex-link failure that makes the input unusable.
pub fn info_report(tri: &Triangulation, digest: FileDigest) -> Result<InfoReport, String> {
    let skel = Skeleton::build(tri);
    let kinds = classify_vertices(tri, &skel).map_err(|e| e.to_string())?;
    let boundary: Vec<BoundarySummary> = skel
        .boundary_components
        .iter()
        .map(|b| {
            let euler = b.euler_characteristic();
            BoundarySummary { faces: b.faces.len(), euler, surface: surface_name(euler) }
        })
        .collect();
    let normal_boundary = if boundary.is_empty() {
        "none".to_string()
    } else {
        match peripheral_surface(tri, &skel) {
            Ok(_) => "normal".to_string(),
            Err(e) => format!("obstructed ({e})"),
        }
    };

    let mut parts = vec![plural(tri.size(), "tet"), plural(skel.edge_count(), "edge")];
    let mut groups: BTreeMap<String, usize> = BTreeMap::new();
    for k in &kinds {
        *groups.entry(vertex_kind_text(k)).or_default() += 1;
    }
    for (text, count) in &groups {
        let (head, tail) = text.split_once(' ').map_or((text.as_str(), ""), |(h, t)| (h, t));
        let noun = if *count == 1 { "vertex" } else { "vertices" };
        let tail = if tail.is_empty() { String::new() } else { format!(" {tail}") };
        parts.push(format!("{count} {head} {noun}{tail}"));
    }
    if boundary.is_empty() {
        let ideal = kinds.iter().any(|k| matches!(k, VertexKind::Ideal { .. }));
        parts.push(if ideal { "closed pseudo-manifold".to_string() } else { "closed manifold".to_string() });
    } else {
        let names: Vec<&str> = boundary.iter().map(|b| b.surface.as_str()).collect();
        parts.push(format!("{} ({})", plural(boundary.len(), "boundary component"), names.join(", ")));
    }

    Ok(InfoReport {
        file: digest.file,
        sha256: digest.sha256,
        tets: tri.size(),
        edges: skel.edge_count(),
        vertices: skel.vertex_count(),
        vertex_kinds: kinds.iter().map(vertex_kind_text).collect(),
        boundary_components: boundary,
        orientable: tri.validate().orientable,
        normal_boundary,
        summary: parts.join(", "),
    })
}

fn info_lines(r: &InfoReport) -> Vec<(String, String)> {
    let mut lines = vec![kv("file", &r.file), kv("tets", r.tets), kv("edges", r.edges), kv("vertices", r.vertices)];
    for (v, k) in r.vertex_kinds.iter().enumerate() {
        lines.push(kv(&format!("vertex.{v}"), k));
    }
    lines.push(kv("boundary_components", r.boundary_components.len()));
    for (b, c) in r.boundary_components.iter().enumerate() {
        lines.push(kv(&format!("boundary.{b}"), format!("{} faces={} euler={}", c.surface, c.faces, c.euler)));
    }
    lines.push(kv("orientable", r.orientable));
    lines.push(kv("normal_boundary", &r.normal_boundary));
    lines.push(kv("summary", &r.summary));
    lines
}

fn cmd_info(ctx: &Ctx, paths: &[PathBuf]) -> Output {
    let results: Vec<Result<InfoReport, Output>> = std::thread::scope(|scope| {
        let handles: Vec<_> = paths
            .iter()
            .map(|p| {
                scope.spawn(move || {
                    let input = read_triangulation(p)?;
                    info_report(&input.tri, input.digest).map_err(|e| Output::input_error(format!("{}: {e}", p.display())))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("info worker panicked")).collect()
    });

    let mut out = Output::default();
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(report) => reports.push(report),
            Err(e) => {
                out.code = out.code.max(e.code);
                out.stderr.push_str(&e.stderr);
            }
        }
    }
    out.stdout = if ctx.json {
        serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
    } else {
        reports.iter().map(|r| key_values(&info_lines(r))).collect::<Vec<_>>().join("\n")
    };
    out
}

// ---------------------------------------------------------------- enumerate

#[derive(Clone, Debug, Serialize)]
pub struct EnumerateReport {
    pub provenance: String,
    pub surfaces: usize,
    pub closed: usize,
    pub file: String,
    pub manifest: RunManifest,
}

fn cmd_enumerate(ctx: &Ctx, path: &Path, mode: Mode, bound: Option<u64>, out: &Path) -> Result<Output, Output> {
    let input = read_triangulation(path)?;
    let list: SurfaceList = match mode {
        Mode::Vertex => vertex_surfaces(&input.tri),
        Mode::Fundamental => match fundamental_surfaces(&input.tri) {
            Ok(l) => l,
            Err(e) => {
                let lines = [kv("verdict", "undetermined"), kv("reason", e)];
                return Ok(Output { code: EXIT_UNDETERMINED, stdout: key_values(&lines), stderr: String::new() });
            }
        },
        Mode::Bounded => surfaces_up_to(&input.tri, bound.expect("clap requires --bound")),
    };
    let provenance = list.provenance.to_string();
    let closed = list.closed(&input.tri).len();
    let mut artifacts = Artifacts::new(out)?;
    let text = surface_file_text(input.tri.name(), &provenance, &list.surfaces, &[]);
    let file = "surfaces.txt";
    artifacts.write(file, &text)?;
    let mut p = vec![("mode", format!("{mode:?}").to_lowercase())];
    if let Some(b) = bound {
        p.push(("bound", b.to_string()));
    }
    let verdict = format!("{}, {closed} closed", plural(list.len(), "surface"));
    let manifest = artifacts.finish(ctx, "enumerate", params(&p), vec![input.digest], vec![verdict])?;
    let report = EnumerateReport { provenance, surfaces: list.len(), closed, file: file.to_string(), manifest };
    let lines = [
        kv("provenance", &report.provenance),
        kv("surfaces", report.surfaces),
        kv("closed", report.closed),
        kv("file", file),
    ];
    Ok(ctx.emit(EXIT_OK, &report, &lines))
}

// ---------------------------------------------------------------- check

fn property_slug(p: Property) -> &'static str {
    match p {
        Property::ZeroEfficient => "zero-efficient",
        Property::AnnularEfficient => "annular-efficient",
        Property::BoundaryEfficiencyCandidates => "boundary-efficient",
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Holds => "holds".to_string(),
        Verdict::Fails => "fails".to_string(),
        Verdict::Undetermined { reason } => format!("undetermined: {reason}"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub property: String,
    pub verdict: String,
    pub exit: i32,
    pub report: Option<EfficiencyReport>,
    pub witness_file: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckEntry>,
    pub manifest: RunManifest,
}

/// The witness file for a report: its surfaces, each annotated with its classification.
pub fn witness_file_text(tri: &Triangulation, report: &EfficiencyReport) -> String {
    let surfaces: Vec<NormalSurface> = report.witnesses.iter().map(|w| w.surface.clone()).collect();
    let comments: Vec<String> = report
        .witnesses
        .iter()
        .map(|w| {
            format!(
                "euler={} orientable={} boundary_curves={} special={:?} note={}",
                w.euler, w.orientable, w.boundary_curves, w.special, w.note
            )
        })
        .collect();
    let provenance = format!("witness {} {}", property_slug(report.property), verdict_text(&report.verdict));
    surface_file_text(tri.name(), &provenance, &surfaces, &comments)
}

fn cmd_check(ctx: &Ctx, path: &Path, zero: bool, annular: bool, boundary: bool, out: &Path) -> Result<Output, Output> {
    let input = read_triangulation(path)?;
    let tri = &input.tri;
    let mut reports: Vec<(Property, Result<EfficiencyReport, EfficiencyError>)> = Vec::new();
    if zero {
        reports.push((Property::ZeroEfficient, Ok(check_zero_efficient(tri))));
    }
    if annular {
        reports.push((Property::AnnularEfficient, Ok(check_annular_efficient(tri))));
    }
    if boundary {
        reports.push((Property::BoundaryEfficiencyCandidates, boundary_efficiency_candidates(tri)));
    }

    let mut artifacts = Artifacts::new(out)?;
    let mut checks = Vec::new();
    for (property, result) in reports {
        let slug = property_slug(property);
        let entry = match result {
            Ok(report) => {
                let exit = match report.verdict {
                    Verdict::Holds => EXIT_OK,
                    Verdict::Fails => EXIT_FAILS,
                    Verdict::Undetermined { .. } => EXIT_UNDETERMINED,
                };
                let witness_file = if report.witnesses.is_empty() {
                    None
                } else {
                    let name = format!("witnesses-{slug}.txt");
                    artifacts.write(&name, &witness_file_text(tri, &report))?;
                    Some(name)
                };
                CheckEntry { property: slug.to_string(), verdict: verdict_text(&report.verdict), exit, report: Some(report), witness_file }
            }
            Err(EfficiencyError::NoBoundary) => {
                return Err(Output::input_error(format!("{}: {}", path.display(), EfficiencyError::NoBoundary)));
            }
            Err(e @ EfficiencyError::NoNormalBoundary(_)) => {
                let name = format!("obstruction-{slug}.txt");
                let text = format!("# nsurf obstruction\n# triangulation={}\nobstruction=NoNormalBoundary\ndetail={e}\n", tri.name());
                artifacts.write(&name, &text)?;
                let verdict = format!("fails: NoNormalBoundary ({e})");
                CheckEntry { property: slug.to_string(), verdict, exit: EXIT_FAILS, report: None, witness_file: Some(name) }
            }
            Err(e @ EfficiencyError::TooLarge(_)) => {
                let verdict = format!("undetermined: {e}");
                CheckEntry { property: slug.to_string(), verdict, exit: EXIT_UNDETERMINED, report: None, witness_file: None }
            }
        };
        checks.push(entry);
    }

    let code = if checks.iter().any(|c| c.exit == EXIT_FAILS) {
        EXIT_FAILS
    } else if checks.iter().any(|c| c.exit == EXIT_UNDETERMINED) {
        EXIT_UNDETERMINED
    } else {
        EXIT_OK
    };
    let verdicts = checks.iter().map(|c| format!("{}: {}", c.property, c.verdict)).collect();
    let flags = [("zero", zero), ("annular", annular), ("boundary", boundary)];
    let p: Vec<(&str, String)> = flags.iter().map(|&(k, v)| (k, v.to_string())).collect();
    let manifest = artifacts.finish(ctx, "check", params(&p), vec![input.digest], verdicts)?;

    let mut lines = Vec::new();
    for c in &checks {
        lines.push(kv(c.property.as_str(), &c.verdict));
        if let Some(r) = &c.report {
            lines.push(kv(&format!("{}.kind", c.property), format!("{:?}", r.kind)));
            lines.push(kv(&format!("{}.searched", c.property), r.provenance));
            lines.push(kv(&format!("{}.witnesses", c.property), r.witnesses.len()));
            for a in &r.assumptions {
                lines.push(kv(&format!("{}.assumes", c.property), a));
            }
        }
        if let Some(w) = &c.witness_file {
            lines.push(kv(&format!("{}.witness_file", c.property), w));
        }
    }
    Ok(ctx.emit(code, &CheckReport { checks, manifest }, &lines))
}

// ---------------------------------------------------------------- crush

#[derive(Clone, Debug, Serialize)]
pub struct CrushReport {
    pub verdict: String,
    pub obstruction: Option<Obstruction>,
    pub tets: Option<usize>,
    pub ideal: Option<bool>,
    pub chains: Option<usize>,
    pub chain_faces: Option<usize>,
    pub files: Vec<String>,
    pub manifest: RunManifest,
}

fn cmd_crush(ctx: &Ctx, path: &Path, surface: &Path, index: usize, x: Option<&RegionRef>, out: &Path) -> Result<Output, Output> {
    let input = read_triangulation(path)?;
    let (text, surface_digest) = read_bytes(surface)?;
    let file = SurfaceFile::parse(&text).map_err(|e| Output::input_error(format!("{}: {e}", surface.display())))?;
    file.check_size(&input.tri).map_err(|e| Output::input_error(format!("{}: {e}", surface.display())))?;
    let s = file.surfaces.get(index).ok_or_else(|| {
        Output::input_error(format!("{}: no surface {index} ({} in file)", surface.display(), file.surfaces.len()))
    })?;

    let mut p = vec![("index", index.to_string())];
    if let Some(x) = x {
        p.push(("x", x.to_string()));
    }
    let mut artifacts = Artifacts::new(out)?;
    let inputs = vec![input.digest.clone(), surface_digest];
    match crush_along(&input.tri, s, x) {
        Ok(outcome) => {
            let mut crushed = outcome.crushed.clone();
            crushed.set_name(format!("{} crushed", input.tri.name()));
            artifacts.write("crushed.tri", &crushed.to_text())?;
            artifacts.write("crushed.corr", &outcome.correspondence())?;
            let chain_faces = outcome.routes.iter().flatten().filter(|r| matches!(r, FaceRoute::Chain(_))).count();
            let verdict = format!("crushed to {}", plural(crushed.size(), "tet"));
            let manifest = artifacts.finish(ctx, "crush", params(&p), inputs, vec![verdict.clone()])?;
            let report = CrushReport {
                verdict,
                obstruction: None,
                tets: Some(crushed.size()),
                ideal: Some(outcome.ideal),
                chains: Some(outcome.chains.chains.len()),
                chain_faces: Some(chain_faces),
                files: vec!["crushed.tri".to_string(), "crushed.corr".to_string()],
                manifest,
            };
            let lines = [
                kv("verdict", "crushed"),
                kv("tets", crushed.size()),
                kv("ideal", outcome.ideal),
                kv("chains", outcome.chains.chains.len()),
                kv("chain_faces", chain_faces),
                kv("triangulation_file", "crushed.tri"),
                kv("correspondence_file", "crushed.corr"),
            ];
            Ok(ctx.emit(EXIT_OK, &report, &lines))
        }
        Err(obstruction) => {
            let text = format!(
                "# nsurf obstruction\n# triangulation={}\n# coords={COORD_VERSION}\nobstruction={}\ndetail={obstruction}\n{s}\n",
                input.tri.name(),
                obstruction.kind()
            );
            artifacts.write("obstruction.txt", &text)?;
            let verdict = format!("obstruction: {obstruction}");
            let manifest = artifacts.finish(ctx, "crush", params(&p), inputs, vec![verdict.clone()])?;
            let lines = [kv("verdict", "obstruction"), kv("kind", obstruction.kind()), kv("obstruction", &obstruction), kv("witness_file", "obstruction.txt")];
            let report = CrushReport {
                verdict,
                obstruction: Some(obstruction),
                tets: None,
                ideal: None,
                chains: None,
                chain_faces: None,
                files: vec!["obstruction.txt".to_string()],
                manifest,
            };
            Ok(ctx.emit(EXIT_FAILS, &report, &lines))
        }
    }
}

// ---------------------------------------------------------------- slopes

#[derive(Clone, Debug, Serialize)]
pub struct SlopesReport {
    pub classes: Vec<String>,
    pub surfaces: usize,
    pub file: String,
    pub manifest: RunManifest,
}

fn cmd_slopes(ctx: &Ctx, path: &Path, chi_min: i64, bound: u64, out: &Path) -> Result<Output, Output> {
    let input = read_triangulation(path)?;
    let census = slope_census(&input.tri, chi_min, bound);
    let mut artifacts = Artifacts::new(out)?;
    let file = "census.txt";
    let text = format!("# triangulation={}\n# coords={COORD_VERSION}\n{}", input.tri.name(), census.to_text());
    artifacts.write(file, &text)?;
    let classes: Vec<String> = census.classes.iter().map(|(c, n)| format!("{c} count={n}")).collect();
    let verdict = format!("{} slope classes from {} surfaces", classes.len(), census.surfaces.len());
    let p = [("chi_min", chi_min.to_string()), ("bound", bound.to_string())];
    let manifest = artifacts.finish(ctx, "slopes", params(&p), vec![input.digest], vec![verdict])?;
    let mut lines = vec![kv("classes", classes.len()), kv("surfaces", census.surfaces.len())];
    for (k, c) in classes.iter().enumerate() {
        lines.push(kv(&format!("class.{k}"), c));
    }
    lines.push(kv("file", file));
    let report = SlopesReport { classes, surfaces: census.surfaces.len(), file: file.to_string(), manifest };
    Ok(ctx.emit(EXIT_OK, &report, &lines))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_file_round_trip() {
        let surfaces = vec![NormalSurface::from_u64s(&[1, 0, 0, 0, 0, 0, 0]), NormalSurface::from_u64s(&[0, 0, 0, 0, 0, 2, 0])];
        let text = surface_file_text("t", "vertex", &surfaces, &["first".to_string()]);
        let file = SurfaceFile::parse(&text).unwrap();
        assert_eq!(file.surfaces, surfaces);
        assert_eq!(file.header["coords"], COORD_VERSION);
        assert_eq!(file.header["provenance"], "vertex");
    }

    #[test]
    fn surface_file_rejects_other_conventions() {
        assert!(SurfaceFile::parse("# coords=qcoord\n0 0 0\n").is_err());
        assert!(SurfaceFile::parse("1 2 x 0 0 0 0\n").unwrap_err().starts_with("line 1"));
    }

    #[test]
    fn atomic_write_leaves_no_temporary() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.txt");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn unknown_subcommand_is_an_input_error() {
        assert_eq!(run(["nsurf", "frobnicate"]).code, EXIT_INPUT);
        assert_eq!(run(["nsurf", "--help"]).code, EXIT_OK);
    }
}
