//! Plain-text polytope and certificate files, and OFF mesh export.
//!
//! Polytope file:
//!
//! ```text
//! polytope
//! name cube-1        (optional)
//! dim 3
//! v -1 -1 -1
//! ...
//! ```
//!
//! Certificate file:
//!
//! ```text
//! certificate
//! dim 3
//! v x y z                                         (host vertices)
//! piece simplex <provenance> <facet> x0 y0 z0 ... x3 y3 z3
//! piece box <provenance> <facet> ax ay az e1x e1y e1z e2x e2y e2z e3x e3y e3z
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Writers emit vertices in
//! lexicographic order so equal inputs give identical bytes.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::covering::{CoverPiece, CoveringCertificate, Parallelepiped, PieceShape, Provenance, Simplex};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull3, Polytope3};
use crate::lattice::LatticePoint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub name: Option<String>,
    pub polytope: Polytope3,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn ints(line: usize, toks: &[&str], count: usize) -> Result<Vec<BigInt>> {
    if toks.len() != count {
        return Err(perr(line, format!("expected {count} integers, found {}", toks.len())));
    }
    toks.iter()
        .map(|t| t.parse::<BigInt>().map_err(|_| perr(line, format!("not an integer: {t}"))))
        .collect()
}

fn point(c: &[BigInt]) -> LatticePoint {
    LatticePoint::new(c[0].clone(), c[1].clone(), c[2].clone())
}

type Records<'a> = Vec<(usize, Vec<&'a str>)>;

/// Reads header `kind`, an optional name, `dim 3` and `v` records; returns the remaining
/// records for the caller.
fn read_common<'a>(
    text: &'a str,
    kind: &str,
) -> Result<(Option<String>, Vec<LatticePoint>, Records<'a>)> {
    let mut it = records(text);
    match it.next() {
        Some((_, t)) if t == [kind] => {}
        Some((l, _)) => return Err(perr(l, format!("expected header `{kind}`"))),
        None => return Err(perr(0, "empty file")),
    }
    let mut name = None;
    let mut dim_seen = false;
    let mut verts = Vec::new();
    let mut rest = Vec::new();
    for (l, t) in it {
        match t[0] {
            "name" if t.len() >= 2 => name = Some(t[1..].join(" ")),
            "dim" => {
                if t.len() != 2 || t[1] != "3" {
                    return Err(perr(l, "only `dim 3` is supported"));
                }
                dim_seen = true;
            }
            "v" => verts.push(point(&ints(l, &t[1..], 3)?)),
            _ => rest.push((l, t)),
        }
    }
    if !dim_seen {
        return Err(perr(0, "missing `dim 3`"));
    }
    Ok((name, verts, rest))
}

pub fn read_polytope(text: &str) -> Result<PolytopeFile> {
    let (name, verts, rest) = read_common(text, "polytope")?;
    if let Some((l, t)) = rest.first() {
        return Err(perr(*l, format!("unknown record `{}`", t[0])));
    }
    Ok(PolytopeFile {
        name,
        polytope: convex_hull3(&verts)?,
    })
}

pub fn write_polytope(p: &Polytope3, name: Option<&str>) -> String {
    let mut s = String::from("polytope\n");
    if let Some(n) = name {
        writeln!(s, "name {n}").unwrap();
    }
    s.push_str("dim 3\n");
    for v in p.vertices() {
        writeln!(s, "v {} {} {}", v.x, v.y, v.z).unwrap();
    }
    s
}

pub fn read_certificate(text: &str) -> Result<CoveringCertificate> {
    let (_, verts, rest) = read_common(text, "certificate")?;
    let host = convex_hull3(&verts)?;
    let mut pieces = Vec::new();
    for (l, t) in rest {
        if t[0] != "piece" || t.len() < 4 {
            return Err(perr(l, format!("unknown record `{}`", t[0])));
        }
        let prov = Provenance::parse(t[2]).ok_or_else(|| perr(l, format!("unknown provenance `{}`", t[2])))?;
        let facet: usize = t[3].parse().map_err(|_| perr(l, format!("bad facet index `{}`", t[3])))?;
        let c = ints(l, &t[4..], 12)?;
        let pts: Vec<LatticePoint> = c.chunks(3).map(point).collect();
        let piece = match t[1] {
            "simplex" => CoverPiece::simplex(Simplex::new(pts.try_into().unwrap()), prov, facet),
            "box" => {
                let [a, e1, e2, e3]: [LatticePoint; 4] = pts.try_into().unwrap();
                CoverPiece::boxed(Parallelepiped { anchor: a, e1, e2, e3 }, prov, facet)
            }
            other => return Err(perr(l, format!("unknown piece type `{other}`"))),
        };
        pieces.push(piece);
    }
    Ok(CoveringCertificate { host, pieces })
}

fn push_points(s: &mut String, pts: &[&LatticePoint]) {
    for p in pts {
        write!(s, " {} {} {}", p.x, p.y, p.z).unwrap();
    }
}

pub fn write_certificate(cert: &CoveringCertificate) -> String {
    let mut s = String::from("certificate\ndim 3\n");
    for v in cert.host.vertices() {
        writeln!(s, "v {} {} {}", v.x, v.y, v.z).unwrap();
    }
    for pc in &cert.pieces {
        match &pc.shape {
            PieceShape::Simplex(x) => {
                write!(s, "piece simplex {} {}", pc.provenance, pc.facet).unwrap();
                push_points(&mut s, &x.vertices.iter().collect::<Vec<_>>());
            }
            PieceShape::Box(b) => {
                write!(s, "piece box {} {}", pc.provenance, pc.facet).unwrap();
                push_points(&mut s, &[&b.anchor, &b.e1, &b.e2, &b.e3]);
            }
        }
        s.push('\n');
    }
    s
}

/// Boundary mesh in OFF format with facets counterclockwise from outside.
pub fn polytope_to_off(p: &Polytope3) -> String {
    let mut s = String::from("OFF\n");
    writeln!(s, "{} {} {}", p.vertices().len(), p.facets().len(), p.edges().len()).unwrap();
    for v in p.vertices() {
        writeln!(s, "{} {} {}", v.x, v.y, v.z).unwrap();
    }
    for f in p.facets() {
        let idx: Vec<String> = f.vertices.iter().map(usize::to_string).collect();
        writeln!(s, "{} {}", idx.len(), idx.join(" ")).unwrap();
    }
    s
}

/// One OFF block per piece, each introduced by a `# piece` comment. An empty certificate
/// exports the host and returns a warning.
pub fn certificate_to_off(cert: &CoveringCertificate) -> (String, Vec<String>) {
    if cert.pieces.is_empty() {
        let mut s = String::from("# empty certificate: host polytope only\n");
        s.push_str(&polytope_to_off(&cert.host));
        return (s, vec!["certificate has no pieces; exported the host only".into()]);
    }
    let mut s = String::new();
    let mut warnings = Vec::new();
    for (i, pc) in cert.pieces.iter().enumerate() {
        let kind = if pc.is_box() { "box" } else { "simplex" };
        writeln!(s, "# piece {i} {kind} {} facet {}", pc.provenance, pc.facet).unwrap();
        match convex_hull3(&pc.vertices()) {
            Ok(h) => s.push_str(&polytope_to_off(&h)),
            Err(e) => warnings.push(format!("piece {i}: {e}")),
        }
    }
    (s, warnings)
}

/// Counts `OFF` headers in a multi-block export.
pub fn off_block_count(text: &str) -> usize {
    text.lines().filter(|l| l.trim() == "OFF").count()
}
