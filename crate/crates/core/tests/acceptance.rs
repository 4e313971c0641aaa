//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use polycover::analysis::{idp_check, minkowski_pair_check, normalized_volume, vertex_parallelepiped_empty};
use polycover::covering::{
    cayley_cover, cover_polytope, extend_triangle_to_square, facet_dilation_ratio, full_triangulation2,
    is_unimodular_triangle_facet, push_facet, verify_cover, CoverIndex, CoveringCertificate,
};
use polycover::generators::{chisel, corpus, counterexample_simplex, cube, ChiselSpec};
use polycover::geometry::{convex_hull3, facet_polygon, fan_coarsens, normal_fan2, slice, NormalFan2, Polytope3};
use polycover::lattice::{det_columns, q, LatticePoint, LinearForm, RationalPoint};

fn p(x: i64, y: i64, z: i64) -> LatticePoint {
    LatticePoint::new(x, y, z)
}

type Criterion = (&'static str, fn(&Ctx));

struct Ctx {
    corpus: Vec<(String, Polytope3)>,
    certs: Vec<CoveringCertificate>,
}

fn chiseled_cube2() -> Polytope3 {
    chisel(&cube(2).unwrap(), &ChiselSpec::antipodal(p(2, 2, 2))).unwrap()
}

fn c1_counterexample(_: &Ctx) {
    let s = counterexample_simplex();
    let r = idp_check(&s, 2).unwrap();
    assert!(!r.is_idp_up_to);
    assert_eq!(r.failure, Some((2, p(1, 1, 1))));
    let (ok, w) = minkowski_pair_check(&s, &s);
    assert!(!ok);
    assert_eq!(w, Some(p(1, 1, 1)));
    // oracle: brute-force pair sums
    let pts = s.lattice_points();
    assert_eq!(pts.len(), 4);
    assert!(pts.iter().all(|a| pts.iter().all(|b| a + b != p(1, 1, 1))));
    assert!(s.contains_scaled(&p(1, 1, 1), &BigInt::from(2)));
}

fn c2_corpus_covers(ctx: &Ctx) {
    assert!(ctx.corpus.len() >= 25);
    for ((name, poly), cert) in ctx.corpus.iter().zip(&ctx.certs) {
        let rep = verify_cover(cert, 4).unwrap();
        assert!(rep.passed(), "{name}: {rep:?}");
        let idp = idp_check(poly, 4).unwrap();
        assert!(idp.is_idp_up_to, "{name}: {:?}", idp.failure);
    }
}

fn c3_constructive_idp(ctx: &Ctx) {
    for ((name, poly), cert) in ctx.corpus.iter().zip(&ctx.certs) {
        let mut idx = CoverIndex::new(cert);
        for n in 1..=3usize {
            for pt in poly.dilate(&BigInt::from(n)).lattice_points() {
                let w = idx.decompose(&pt, n).unwrap_or_else(|e| panic!("{name}: {pt}, n={n}: {e}"));
                assert_eq!(w.parts.len(), n);
                let mut sum = LatticePoint::zero();
                for part in &w.parts {
                    assert!(poly.contains_lattice(part), "{name}: part {part}");
                    sum = &sum + part;
                }
                assert_eq!(sum, pt, "{name}");
            }
        }
    }
}

fn c4_square_extension(ctx: &Ctx) {
    let mut tried = 0usize;
    for (name, poly) in &ctx.corpus {
        for fi in 0..poly.facets().len() {
            if is_unimodular_triangle_facet(poly, fi) {
                continue;
            }
            let f = facet_polygon(poly, fi);
            for t in full_triangulation2(&f).unwrap() {
                let sq = extend_triangle_to_square(&f, &t).unwrap_or_else(|e| panic!("{name} facet {fi}: {e}"));
                let corners = sq.corners();
                for v in &t {
                    assert!(corners.contains(&f.chart.to_3d(v)));
                }
                tried += 1;
            }
        }
    }
    assert!(tried > 0);
}

fn c5_cayley(_: &Ctx) {
    let f = [p(0, 0, 0), p(1, 0, 0), p(0, 1, 0)];
    for r in 1..=3i64 {
        let fp = [p(0, 0, 1), p(r, 0, 1), p(0, r, 1)];
        let pieces = cayley_cover(&f, &fp, r as usize, 0).unwrap();
        assert_eq!(pieces.len() as i64, 3 * r * r);
        for pc in &pieces {
            let v = pc.vertices();
            let d = det_columns(&(&v[1] - &v[0]), &(&v[2] - &v[0]), &(&v[3] - &v[0]));
            assert!(d == BigInt::one() || d == -BigInt::one(), "det {d}");
        }
        let host = convex_hull3(&[f.to_vec(), fp.to_vec()].concat()).unwrap();
        // frustum volume h/3·(A + A' + √(AA')) with A = 1/2, A' = r²/2, h = 1, times 3!
        let expected = r * r + r + 1;
        assert_eq!(normalized_volume(&host), BigInt::from(expected));
        for n in [1i64, 4] {
            let nb = BigInt::from(n);
            for g in host.dilate(&nb).lattice_points() {
                let x = RationalPoint::from_scaled(&g, &nb);
                assert!(pieces.iter().any(|pc| pc.contains(&x)), "r={r}: {x}");
            }
        }
    }
}

fn c6_facet_pushing(ctx: &Ctx) {
    let q2 = chiseled_cube2();
    let a = LinearForm::new(p(-1, -1, -1));
    let fi = q2.facets().iter().position(|f| f.normal == a).unwrap();
    let pf = push_facet(&q2, fi);
    let mut got = pf.lattice_vertices().unwrap();
    got.sort();
    assert_eq!(got, vec![p(0, 2, 2), p(2, 0, 2), p(2, 2, 0)]);
    assert_eq!(facet_dilation_ratio(&q2, fi).unwrap().r, BigInt::from(2));
    for (name, poly) in &ctx.corpus {
        for (fi, f) in poly.facets().iter().enumerate() {
            let level = BigRational::from_integer(&f.offset + BigInt::one());
            let s = slice(poly, &f.normal, &level).unwrap();
            assert!(s.vertices.iter().all(RationalPoint::is_integral), "{name} facet {fi}");
            let fp = facet_polygon(poly, fi);
            let fine = normal_fan2(&fp).unwrap();
            let coarse = NormalFan2::from_rays(s.normal_rays_in(&fp.chart));
            assert!(fan_coarsens(&coarse, &fine), "{name} facet {fi}");
            let pushed = push_facet(poly, fi);
            assert!(pushed.is_lattice && pushed.coarsens);
        }
    }
}

fn c7_fan_coarsening(_: &Ctx) {
    let c = cube(1).unwrap();
    let a = LinearForm::new(p(1, 1, 1));
    let fan = |c0: BigRational| slice(&c, &a, &c0).unwrap().normal_fan().unwrap();
    let f1 = fan(q(-1, 2));
    let f2 = fan(q(1, 3));
    assert_eq!(f1, f2);
    let at0 = slice(&c, &a, &BigRational::zero()).unwrap();
    let at1 = slice(&c, &a, &BigRational::one()).unwrap();
    assert_eq!(at0.vertices.len(), 6);
    assert_eq!(at1.vertices.len(), 3);
    let (h, t) = (at0.normal_fan().unwrap(), at1.normal_fan().unwrap());
    assert_eq!(h, f1);
    assert!(fan_coarsens(&t, &h));
    assert!(!fan_coarsens(&h, &t));
}

fn c8_empty_parallelepipeds(ctx: &Ctx) {
    for (name, poly) in &ctx.corpus {
        for vi in 0..poly.vertices().len() {
            assert!(vertex_parallelepiped_empty(poly, vi).unwrap(), "{name} vertex {vi}");
        }
    }
    let s = counterexample_simplex();
    let o = s.vertex_index(&p(0, 0, 0)).unwrap();
    assert!(!vertex_parallelepiped_empty(&s, o).unwrap());
}

fn c9_mutation(_: &Ctx) {
    let c = cube(1).unwrap();
    let cert = cover_polytope(&c).unwrap();
    assert_eq!(cert.pieces.len(), 12);
    for i in 0..cert.pieces.len() {
        let mut m = cert.clone();
        m.pieces.remove(i);
        let rep = verify_cover(&m, 4).unwrap();
        assert!(!rep.passed(), "deleting piece {i}");
        let w = rep.witness().expect("witness");
        assert!(c.contains(&w));
        assert!(cert.pieces[i].contains(&w));
        assert!(m.pieces.iter().all(|pc| !pc.contains(&w)));
    }
}

fn c10_determinism(ctx: &Ctx) {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_polycover");
    let inputs = [
        ("chiseled", polycover::io::write_polytope(&chiseled_cube2(), None)),
        ("random", polycover::io::write_polytope(&ctx.corpus.last().unwrap().1, None)),
    ];
    for (name, text) in inputs {
        let input = dir.path().join(format!("{name}.txt"));
        std::fs::write(&input, text).unwrap();
        let mut outs = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("{name}-{run}.cert"));
            let st = Command::new(bin)
                .args(["cover", input.to_str().unwrap(), "--out", out.to_str().unwrap()])
                .output()
                .unwrap();
            assert!(st.status.success());
            outs.push(std::fs::read(&out).unwrap());
        }
        assert!(!outs[0].is_empty());
        assert_eq!(outs[0], outs[1], "{name}");
    }
}

fn main() {
    let t0 = Instant::now();
    let corpus = corpus();
    let certs = corpus
        .iter()
        .map(|(name, poly)| cover_polytope(poly).unwrap_or_else(|e| panic!("cover {name}: {e}")))
        .collect();
    let ctx = Ctx { corpus, certs };
    let criteria: [Criterion; 10] = [
        ("counterexample witness (1,1,1)", c1_counterexample),
        ("corpus covers verify and are IDP up to 4", c2_corpus_covers),
        ("cover-based decompositions for n <= 3", c3_constructive_idp),
        ("square extension never fails", c4_square_extension),
        ("Cayley covers for r = 1, 2, 3", c5_cayley),
        ("pushed facets are lattice and coarsen", c6_facet_pushing),
        ("slice fans of the cube along (1,1,1)", c7_fan_coarsening),
        ("vertex parallelepipeds are empty", c8_empty_parallelepipeds),
        ("single-piece deletions are caught", c9_mutation),
        ("cover output is byte-identical", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(|| f(&ctx))).is_ok();
        failed += usize::from(!ok);
        println!(
            "criterion {} {name}: {} ({:.2}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/10 passed in {:.1}s ({} corpus polytopes)",
        10 - failed,
        t0.elapsed().as_secs_f64(),
        ctx.corpus.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
