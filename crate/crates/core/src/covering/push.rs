use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::analysis::check_centrally_symmetric;
use crate::error::{Error, Result};
use crate::geometry::{
    facet_polygon, fan_coarsens, is_lattice_polygon, normal_fan2, slice, NormalFan2, Polytope3, RationalPolygon,
};
use crate::lattice::{qi, LatticePoint};

/// The slice `F' = P ∩ {a(x) = c + 1}` next to the facet `F = P ∩ {a(x) = c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushedFacet {
    pub facet: usize,
    pub level: BigInt,
    /// `None` when `P` has lattice width 1 in the facet direction.
    pub polygon: Option<RationalPolygon>,
    pub is_lattice: bool,
    /// Whether the normal fan of `F'` coarsens that of `F`. Fans of degenerate slices are
    /// taken to be the normals of the segment (or none for a point).
    pub coarsens: bool,
}

impl PushedFacet {
    pub fn lattice_vertices(&self) -> Option<Vec<LatticePoint>> {
        self.polygon.as_ref()?.lattice_vertices()
    }
}

pub fn push_facet(p: &Polytope3, fi: usize) -> PushedFacet {
    let f = &p.facets()[fi];
    let level = &f.offset + BigInt::one();
    let polygon = slice(p, &f.normal, &qi(&level)).ok();
    let (is_lattice, coarsens) = match &polygon {
        None => (false, false),
        Some(q) => {
            let fp = facet_polygon(p, fi);
            let fine = normal_fan2(&fp).expect("facets are 2-dimensional");
            let coarse = NormalFan2::from_rays(q.normal_rays_in(&fp.chart));
            (is_lattice_polygon(q), fan_coarsens(&coarse, &fine))
        }
    };
    PushedFacet {
        facet: fi,
        level,
        polygon,
        is_lattice,
        coarsens,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationRatio {
    pub r: BigInt,
    /// `F' = r·F + translation`.
    pub translation: LatticePoint,
    /// Vertices of `F'` matched to the facet's vertex cycle.
    pub pushed: [LatticePoint; 3],
}

/// The integer `r` with `F' = rF + t` for a unimodular-triangle facet `F`.
pub fn facet_dilation_ratio(p: &Polytope3, fi: usize) -> Result<DilationRatio> {
    let fv = p.facet_vertices(fi);
    if fv.len() != 3 || !(&fv[1] - &fv[0]).cross(&(&fv[2] - &fv[0])).content().is_one() {
        return Err(Error::NotUnimodular(format!("facet {fi} is not a unimodular triangle")));
    }
    let pushed = push_facet(p, fi);
    let gv = pushed
        .lattice_vertices()
        .ok_or_else(|| Error::NotHomothetic(format!("pushed slice of facet {fi} is not a lattice polygon")))?;
    let sym = check_centrally_symmetric(p);
    let out = match gv.len() {
        1 => DilationRatio {
            r: BigInt::zero(),
            translation: gv[0].clone(),
            pushed: [gv[0].clone(), gv[0].clone(), gv[0].clone()],
        },
        3 => {
            let u = &fv[1] - &fv[0];
            let v = &fv[2] - &fv[0];
            let found = (0..3).find_map(|k| {
                let g = [gv[k].clone(), gv[(k + 1) % 3].clone(), gv[(k + 2) % 3].clone()];
                let gu = &g[1] - &g[0];
                let r = gu.content();
                (gu == u.scale(&r) && &g[2] - &g[0] == v.scale(&r)).then_some((r, g))
            });
            let (r, g) = found.ok_or_else(|| Error::NotHomothetic(format!("pushed slice {gv:?} of facet {fi}")))?;
            DilationRatio {
                translation: &g[0] - &fv[0].scale(&r),
                r,
                pushed: g,
            }
        }
        _ => return Err(Error::NotHomothetic(format!("pushed slice {gv:?} of facet {fi}"))),
    };
    if sym.origin_centered && out.r < BigInt::from(2) {
        return Err(Error::SymmetricRatioTooSmall(out.r.to_string()));
    }
    Ok(out)
}
