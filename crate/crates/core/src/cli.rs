//! The `polycover` command line. Exit codes: 0 success, 1 a mathematical failure or a
//! refused input, 2 a usage, parse or I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::analysis::{check_centrally_symmetric, check_smooth, decompose_exhaustive, idp_check};
use crate::covering::{cover_polytope, require_cs_smooth, verify_cover, CoverIndex, CoverReport, CoveringCertificate};
use crate::error::Error;
use crate::generators::{chisel, counterexample_simplex, cube, random_cs_smooth, ChiselSpec};
use crate::geometry::Polytope3;
use crate::io::{certificate_to_off, polytope_to_off, read_certificate, read_polytope, write_certificate, write_polytope};
use crate::lattice::LatticePoint;

#[derive(Parser, Debug)]
#[command(name = "polycover", version, about = "Exact covers and IDP checks for lattice 3-polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check smoothness, central symmetry and IDP up to a bound. With no flags, checks all three.
    Check {
        file: PathBuf,
        #[arg(long)]
        smooth: bool,
        #[arg(long)]
        centrally_symmetric: bool,
        #[arg(long)]
        idp: bool,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Build a covering certificate and verify it on the (1/N)-grid.
    Cover {
        file: PathBuf,
        /// Certificate output; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        verify_grid: u32,
    },
    /// Re-verify a certificate file.
    Verify {
        cert: PathBuf,
        #[arg(long, default_value_t = 4)]
        grid: u32,
    },
    /// Write a point of nP as a sum of n lattice points of P.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Generate a polytope file.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 1)]
        n: i64,
        /// Chisel vertices as `x,y,z;x,y,z`, each cut together with its antipode.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        chisels: usize,
        #[arg(long, default_value_t = 1)]
        depth: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a polytope or a certificate as OFF meshes.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Off)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Cube,
    Chiseled,
    Counterexample,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Off,
}

/// A failed command: exit code and message for stderr.
struct Fail(i32, String);

type CmdResult = std::result::Result<i32, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

fn math(e: Error) -> Fail {
    match e {
        Error::Parse { .. } | Error::InvalidParameter(_) => Fail(2, e.to_string()),
        _ => Fail(1, e.to_string()),
    }
}

fn read_file(path: &Path) -> std::result::Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_polytope(path: &Path) -> std::result::Result<(Option<String>, Polytope3), Fail> {
    let f = read_polytope(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((f.name, f.polytope))
}

fn load_certificate(path: &Path) -> std::result::Result<CoveringCertificate, Fail> {
    read_certificate(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> std::result::Result<(), Fail> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string())),
    }
}

fn parse_point(s: &str) -> std::result::Result<LatticePoint, Fail> {
    let c: Vec<&str> = s.split(',').map(str::trim).collect();
    if c.len() != 3 {
        return Err(usage(format!("point `{s}` must be x,y,z")));
    }
    let mut v = Vec::with_capacity(3);
    for t in c {
        v.push(t.parse::<BigInt>().map_err(|_| usage(format!("not an integer: `{t}`")))?);
    }
    let [x, y, z]: [BigInt; 3] = v.try_into().unwrap();
    Ok(LatticePoint::new(x, y, z))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn print_report(out: &mut dyn Write, r: &CoverReport) {
    let _ = writeln!(out, "verify (N={}): {}", r.grid_denominator, verdict(r.passed()));
    for (i, v) in r.outside_vertices.iter().take(10) {
        let _ = writeln!(out, "  piece {i} vertex {v} outside host");
    }
    for (i, why) in r.bad_pieces.iter().take(10) {
        let _ = writeln!(out, "  piece {i}: {why}");
    }
    if !r.uncovered_lattice.is_empty() {
        let _ = writeln!(out, "  {} uncovered lattice points", r.uncovered_lattice.len());
    }
    if !r.uncovered_grid.is_empty() {
        let _ = writeln!(out, "  {} uncovered grid points", r.uncovered_grid.len());
    }
    if let Some(w) = r.witness() {
        let _ = writeln!(out, "  witness {w}");
    }
}

fn cmd_check(out: &mut dyn Write, file: &Path, smooth: bool, cs: bool, idp: bool, nmax: usize) -> CmdResult {
    let (_, p) = load_polytope(file)?;
    let all = !(smooth || cs || idp);
    let mut ok = true;
    if smooth || all {
        let r = check_smooth(&p);
        ok &= r.is_smooth;
        let _ = writeln!(out, "smooth: {}", verdict(r.is_smooth));
        if !r.is_simple {
            let _ = writeln!(out, "  not simple");
        }
        for o in &r.offending_vertices {
            match &o.determinant {
                Some(d) => writeln!(out, "  vertex {} has edge determinant {d}", o.vertex),
                None => writeln!(out, "  vertex {} has {} edges", o.vertex, o.directions.len()),
            }
            .ok();
        }
    }
    if cs || all {
        let r = check_centrally_symmetric(&p);
        ok &= r.origin_centered;
        let _ = writeln!(out, "centrally symmetric about 0: {}", verdict(r.origin_centered));
        if let (false, Some(c)) = (r.origin_centered, &r.center) {
            let _ = writeln!(out, "  symmetric about {c}");
        }
    }
    if idp || all {
        let r = idp_check(&p, nmax).map_err(math)?;
        ok &= r.is_idp_up_to;
        let _ = writeln!(out, "idp up to n={}: {}", r.checked_up_to, verdict(r.is_idp_up_to));
        if let Some((n, w)) = &r.failure {
            let _ = writeln!(out, "  n={n} witness {w}");
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_cover(out: &mut dyn Write, err: &mut dyn Write, file: &Path, dest: Option<&Path>, grid: u32) -> CmdResult {
    let (_, p) = load_polytope(file)?;
    if grid == 0 {
        return Err(usage("--verify-grid must be at least 1"));
    }
    require_cs_smooth(&p).map_err(|e| Fail(1, format!("refused: {e}")))?;
    let cert = cover_polytope(&p).map_err(math)?;
    let boxes = cert.pieces.iter().filter(|pc| pc.is_box()).count();
    let report = verify_cover(&cert, grid).map_err(math)?;
    emit(out, dest, &write_certificate(&cert))?;
    let log: &mut dyn Write = if dest.is_some() { out } else { err };
    let _ = writeln!(
        log,
        "pieces: {} ({boxes} boxes, {} simplices)",
        cert.pieces.len(),
        cert.pieces.len() - boxes
    );
    print_report(log, &report);
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_verify(out: &mut dyn Write, file: &Path, grid: u32) -> CmdResult {
    let cert = load_certificate(file)?;
    if grid == 0 {
        return Err(usage("--grid must be at least 1"));
    }
    let report = verify_cover(&cert, grid).map_err(math)?;
    let _ = writeln!(out, "pieces: {}", cert.pieces.len());
    print_report(out, &report);
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_decompose(out: &mut dyn Write, file: &Path, point: &str, n: usize, cert: Option<&Path>) -> CmdResult {
    let (_, p) = load_polytope(file)?;
    let target = parse_point(point)?;
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    if !p.contains_scaled(&target, &BigInt::from(n)) {
        return Err(Fail(1, format!("point {target} is outside {n}P")));
    }
    let cert = match cert {
        Some(c) => {
            let c = load_certificate(c)?;
            if c.host != p {
                return Err(usage("certificate host differs from the polytope"));
            }
            Some(c)
        }
        None => cover_polytope(&p).ok(),
    };
    let w = match &cert {
        Some(c) => CoverIndex::new(c).decompose(&target, n).map_err(math)?,
        None => match decompose_exhaustive(&p, &target, n) {
            Ok(w) => w,
            Err(Error::NoDecomposition(_)) => {
                return Err(Fail(1, format!("no decomposition: {target} is not a sum of {n} lattice points of P")))
            }
            Err(e) => return Err(math(e)),
        },
    };
    let parts: Vec<String> = w.parts.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "{target} = {}", parts.join(" + "));
    if cert.is_none() {
        let _ = writeln!(out, "  (exhaustive search; no certificate)");
    }
    Ok(0)
}

fn parse_pairs(s: &str) -> std::result::Result<Vec<LatticePoint>, Fail> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(parse_point).collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    out: &mut dyn Write,
    kind: GenKind,
    n: i64,
    pairs: Option<&str>,
    seed: u64,
    chisels: usize,
    depth: u64,
    dest: Option<&Path>,
) -> CmdResult {
    let gen_err = |e: Error| usage(e.to_string());
    let (name, p) = match kind {
        GenKind::Cube => (format!("cube {n}"), cube(n).map_err(gen_err)?),
        GenKind::Counterexample => ("counterexample".to_string(), counterexample_simplex()),
        GenKind::Random => (
            format!("random seed {seed} n {n} chisels {chisels}"),
            random_cs_smooth(seed, n, chisels).map_err(gen_err)?,
        ),
        GenKind::Chiseled => {
            let vs = parse_pairs(pairs.ok_or_else(|| usage("chiseled needs --pairs"))?)?;
            if depth == 0 {
                return Err(usage("--depth must be at least 1"));
            }
            let mut p = cube(n).map_err(gen_err)?;
            for v in &vs {
                let spec = ChiselSpec {
                    vertex: v.clone(),
                    depth: BigInt::from(depth),
                    antipodal: true,
                };
                p = chisel(&p, &spec).map_err(gen_err)?;
            }
            (format!("cube {n} chiseled at {}", pairs.unwrap_or_default().trim()), p)
        }
    };
    emit(out, dest, &write_polytope(&p, Some(&name)))?;
    Ok(0)
}

fn cmd_export(out: &mut dyn Write, err: &mut dyn Write, file: &Path, dest: Option<&Path>) -> CmdResult {
    let text = read_file(file)?;
    let is_cert = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l == "certificate");
    let off = if is_cert {
        let cert = read_certificate(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
        let (off, warnings) = certificate_to_off(&cert);
        for w in warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        off
    } else {
        let (_, p) = load_polytope(file)?;
        polytope_to_off(&p)
    };
    emit(out, dest, &off)?;
    Ok(0)
}

/// Sizes the global rayon pool from `POLYCOVER_THREADS` when set.
pub fn init_threads(err: &mut dyn Write) {
    let Ok(v) = std::env::var("POLYCOVER_THREADS") else {
        return;
    };
    match v.trim().parse::<usize>() {
        Ok(k) if k > 0 => {
            if rayon::ThreadPoolBuilder::new().num_threads(k).build_global().is_err() {
                let _ = writeln!(err, "warning: thread pool already initialized");
            }
        }
        _ => {
            let _ = writeln!(err, "warning: ignoring POLYCOVER_THREADS={v}");
        }
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let res = match cli.command {
        Command::Check {
            file,
            smooth,
            centrally_symmetric,
            idp,
            nmax,
        } => cmd_check(out, &file, smooth, centrally_symmetric, idp, nmax),
        Command::Cover { file, out: dest, verify_grid } => cmd_cover(out, err, &file, dest.as_deref(), verify_grid),
        Command::Verify { cert, grid } => cmd_verify(out, &cert, grid),
        Command::Decompose { file, point, n, cert } => cmd_decompose(out, &file, &point, n, cert.as_deref()),
        Command::Gen {
            kind,
            n,
            pairs,
            seed,
            chisels,
            depth,
            out: dest,
        } => cmd_gen(out, kind, n, pairs.as_deref(), seed, chisels, depth, dest.as_deref()),
        Command::Export { file, format: Format::Off, out: dest } => cmd_export(out, err, &file, dest.as_deref()),
    };
    match res {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("polycover").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_codes() {
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["check", "/nonexistent/file"]).0, 2);
    }

    #[test]
    fn gen_to_stdout() {
        let (code, out, _) = call(&["gen", "cube", "--n", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().filter(|l| l.starts_with("v ")).count(), 8);
        assert_eq!(call(&["gen", "cube", "--n", "0"]).0, 2);
        assert_eq!(call(&["gen", "chiseled", "--n", "2"]).0, 2);
        assert_eq!(call(&["gen", "chiseled", "--n", "2", "--pairs", "2,2"]).0, 2);
    }

    #[test]
    fn point_parsing() {
        assert_eq!(parse_point(" 1, -2,3").ok().unwrap(), LatticePoint::new(1, -2, 3));
        assert!(parse_point("1,2").is_err());
        assert_eq!(parse_pairs("2,2,2; 2,2,-2;").ok().unwrap().len(), 2);
    }
}
