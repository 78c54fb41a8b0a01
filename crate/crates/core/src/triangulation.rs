//! Tetrahedra with face gluings, the gluing-table text format, and validation.
//!
//! Conventions: face `i` of a tetrahedron is the face opposite vertex `i`. A gluing of
//! face `f` of tetrahedron `t` is a pair `(t', σ)` where `σ` sends the vertex labels of
//! `t` to those of `t'`; the image face is `σ(f)`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::perm::Perm4;

/// Where a face of a tetrahedron is glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    name: String,
    gluings: Vec<[Option<Gluing>; 4]>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("tetrahedron index {index} out of range (file declares {count})")]
    TetOutOfRange { index: usize, count: usize },
    #[error("malformed permutation `{0}`")]
    MalformedPermutation(String),
}

/// Problems found by [`Triangulation::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `(tet, face)` slots whose gluing does not invert the gluing pointing at them.
    pub involution_failures: Vec<(usize, usize)>,
    /// `(tet, face)` slots glued to themselves.
    pub self_gluings: Vec<(usize, usize)>,
    /// Gluings that point at a tetrahedron that does not exist.
    pub dangling: Vec<(usize, usize)>,
    pub orientable: bool,
    /// Every gluing permutation is odd, so the stored tetrahedron orientations already agree.
    pub coherently_oriented: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.involution_failures.is_empty()
            && self.self_gluings.is_empty()
            && self.dangling.is_empty()
            && self.orientable
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            return "valid, orientable".to_string();
        }
        let mut parts = Vec::new();
        if !self.dangling.is_empty() {
            parts.push(format!("dangling gluings at {:?}", self.dangling));
        }
        if !self.involution_failures.is_empty() {
            parts.push(format!("involution fails at {:?}", self.involution_failures));
        }
        if !self.self_gluings.is_empty() {
            parts.push(format!("faces glued to themselves {:?}", self.self_gluings));
        }
        if !self.orientable {
            parts.push("non-orientable".to_string());
        }
        parts.join("; ")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid triangulation: {0}")]
pub struct InvalidTriangulation(pub String);

impl Triangulation {
    /// `n` tetrahedra with every face on the boundary.
    pub fn unglued(name: impl Into<String>, n: usize) -> Triangulation {
        Triangulation { name: name.into(), gluings: vec![[None; 4]; n] }
    }

    pub fn from_gluings(name: impl Into<String>, gluings: Vec<[Option<Gluing>; 4]>) -> Triangulation {
        Triangulation { name: name.into(), gluings }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    /// Glues face `face` of `tet` to face `perm(face)` of `other`, setting both directions.
    pub fn join(&mut self, tet: usize, face: usize, other: usize, perm: Perm4) {
        self.gluings[tet][face] = Some(Gluing { tet: other, perm });
        self.gluings[other][perm.apply(face)] = Some(Gluing { tet, perm: perm.inverse() });
    }

    pub fn add_tetrahedron(&mut self) -> usize {
        self.gluings.push([None; 4]);
        self.gluings.len() - 1
    }

    /// Internal face pairs `(tet, face)` with the lexicographically smaller end first.
    pub fn internal_face_pairs(&self) -> Vec<((usize, usize), Gluing)> {
        let mut out = Vec::new();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if let Some(g) = g {
                    if (t, f) < (g.tet, g.perm.apply(f)) {
                        out.push(((t, f), *g));
                    }
                }
            }
        }
        out
    }

    /// Whether the dual graph is connected. The empty triangulation counts as connected.
    pub fn is_connected(&self) -> bool {
        let mut uf = crate::union_find::UnionFind::new(self.size());
        for ((t, _), g) in self.internal_face_pairs() {
            uf.union(t, g.tet);
        }
        uf.labels().1 <= 1
    }

    pub fn boundary_face_count(&self) -> usize {
        self.gluings.iter().flatten().filter(|g| g.is_none()).count()
    }

    /// Parses the gluing-table format: `tets <n>` followed by one line per tetrahedron.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Triangulation, ParseError> {
        let mut count: Option<usize> = None;
        let mut rows: Vec<Option<[Option<Gluing>; 4]>> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let content = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let tokens = tokenize(content);
            if tokens.is_empty() {
                continue;
            }
            let Some(n) = count else {
                let (col, head) = tokens[0];
                if head != "tets" {
                    return Err(syntax(line_no, col, "expected `tets <n>` header"));
                }
                if tokens.len() != 2 {
                    return Err(syntax(line_no, col, "header must be exactly `tets <n>`"));
                }
                let (ncol, ntok) = tokens[1];
                let n = ntok
                    .parse::<usize>()
                    .map_err(|_| syntax(line_no, ncol, &format!("bad tetrahedron count `{ntok}`")))?;
                count = Some(n);
                rows = vec![None; n];
                continue;
            };

            let (col, label) = tokens[0];
            let Some(idx_text) = label.strip_suffix(':') else {
                return Err(syntax(line_no, col, "expected `<t>:` at start of line"));
            };
            let idx = idx_text
                .parse::<usize>()
                .map_err(|_| syntax(line_no, col, &format!("bad tetrahedron label `{label}`")))?;
            if idx >= n {
                return Err(ParseError {
                    line: line_no,
                    column: col,
                    kind: ParseErrorKind::TetOutOfRange { index: idx, count: n },
                });
            }
            if rows[idx].is_some() {
                return Err(syntax(line_no, col, &format!("tetrahedron {idx} listed twice")));
            }
            if tokens.len() != 5 {
                return Err(syntax(line_no, col, "expected four face entries"));
            }
            let mut faces = [None; 4];
            for (f, &(ecol, entry)) in tokens[1..].iter().enumerate() {
                faces[f] = parse_entry(entry, n, line_no, ecol)?;
            }
            rows[idx] = Some(faces);
        }

        let Some(n) = count else {
            return Err(syntax(1, 1, "missing `tets <n>` header"));
        };
        let mut gluings = Vec::with_capacity(n);
        for (t, row) in rows.into_iter().enumerate() {
            match row {
                Some(r) => gluings.push(r),
                None => {
                    return Err(syntax(text.lines().count().max(1), 1, &format!("tetrahedron {t} missing")))
                }
            }
        }
        Ok(Triangulation { name: name.into(), gluings })
    }

    /// Emits the gluing-table format accepted by [`Triangulation::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.name.is_empty() {
            let _ = writeln!(out, "# {}", self.name);
        }
        let _ = writeln!(out, "tets {}", self.size());
        for (t, faces) in self.gluings.iter().enumerate() {
            let _ = write!(out, "{t}:");
            for g in faces {
                match g {
                    None => out.push_str(" -"),
                    Some(g) => {
                        let _ = write!(out, " {}:{}", g.tet, g.perm);
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.size();
        let mut report = ValidationReport { orientable: true, coherently_oriented: true, ..Default::default() };
        let mut checked = vec![[false; 4]; n];

        for t in 0..n {
            for f in 0..4 {
                let Some(g) = self.gluings[t][f] else { continue };
                if g.tet >= n {
                    report.dangling.push((t, f));
                    continue;
                }
                let target_face = g.perm.apply(f);
                if g.tet == t && target_face == f {
                    report.self_gluings.push((t, f));
                    continue;
                }
                if checked[t][f] {
                    continue;
                }
                checked[t][f] = true;
                let back = self.gluings[g.tet][target_face];
                let ok = matches!(back, Some(b) if b.tet == t && b.perm == g.perm.inverse());
                if !ok {
                    report.involution_failures.push((g.tet, target_face));
                }
                checked[g.tet][target_face] = true;
                if !g.perm.is_odd() {
                    report.coherently_oriented = false;
                }
            }
        }

        // Orientation propagation: a gluing is orientation-compatible when the relative
        // sign of the two tetrahedra times the permutation parity is "reversing".
        let mut sign: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if sign[start].is_some() {
                continue;
            }
            sign[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(t) = queue.pop_front() {
                let st = sign[t].expect("visited");
                for f in 0..4 {
                    let Some(g) = self.gluings[t][f] else { continue };
                    if g.tet >= n {
                        continue;
                    }
                    let want = if g.perm.is_odd() { st } else { !st };
                    match sign[g.tet] {
                        None => {
                            sign[g.tet] = Some(want);
                            queue.push_back(g.tet);
                        }
                        Some(s) if s != want => report.orientable = false,
                        Some(_) => {}
                    }
                }
            }
        }
        report
    }

    /// Validates and returns an error carrying the report summary when validation fails.
    pub fn require_valid(&self) -> Result<(), InvalidTriangulation> {
        let report = self.validate();
        if report.passed() {
            Ok(())
        } else {
            Err(InvalidTriangulation(report.summary()))
        }
    }

    /// Renumbers tetrahedra: new tetrahedron `i` is old tetrahedron `order[i]`.
    pub fn relabelled(&self, order: &[usize], vertex_perms: &[Perm4]) -> Triangulation {
        let n = self.size();
        let mut new_index = vec![0; n];
        for (i, &old) in order.iter().enumerate() {
            new_index[old] = i;
        }
        let mut out = Triangulation::unglued(self.name.clone(), n);
        for (i, &old) in order.iter().enumerate() {
            // vertex v of old tet becomes vertex vertex_perms[old](v) of new tet i
            let p = vertex_perms[old];
            for f in 0..4 {
                if let Some(g) = self.gluings[old][f] {
                    let q = vertex_perms[g.tet];
                    let perm = q.compose(&g.perm).compose(&p.inverse());
                    out.gluings[i][p.apply(f)] = Some(Gluing { tet: new_index[g.tet], perm });
                }
            }
        }
        out
    }
}

fn tokenize(content: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &content[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &content[s..]));
    }
    out
}

fn syntax(line: usize, column: usize, msg: &str) -> ParseError {
    ParseError { line, column, kind: ParseErrorKind::Syntax(msg.to_string()) }
}

fn parse_entry(entry: &str, n: usize, line: usize, column: usize) -> Result<Option<Gluing>, ParseError> {
    if entry == "-" {
        return Ok(None);
    }
    let Some((tet_text, perm_text)) = entry.split_once(':') else {
        return Err(syntax(line, column, &format!("expected `-` or `<t>:<perm>`, found `{entry}`")));
    };
    let tet = tet_text
        .parse::<usize>()
        .map_err(|_| syntax(line, column, &format!("bad tetrahedron index `{tet_text}`")))?;
    if tet >= n {
        return Err(ParseError { line, column, kind: ParseErrorKind::TetOutOfRange { index: tet, count: n } });
    }
    let malformed = || ParseError {
        line,
        column: column + tet_text.len() + 1,
        kind: ParseErrorKind::MalformedPermutation(perm_text.to_string()),
    };
    let bytes = perm_text.as_bytes();
    if bytes.len() != 4 || !bytes.iter().all(|b| (b'0'..=b'3').contains(b)) {
        return Err(malformed());
    }
    let images = [bytes[0] - b'0', bytes[1] - b'0', bytes[2] - b'0', bytes[3] - b'0'];
    let perm = Perm4::new(images).ok_or_else(malformed)?;
    Ok(Some(Gluing { tet, perm }))
}
