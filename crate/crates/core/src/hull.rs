//! Exact facet enumeration by brute force over `d`-subsets.
//!
//! Each affinely independent `d`-subset spans a hyperplane whose primitive
//! integer normal comes from the signed maximal minors of its edge matrix.
//! The hyperplane is a facet iff every point lies on one side of it.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolytope};
use crate::linalg;

/// Primitive inequality `normal · x <= offset`, tight on a facet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetInequality {
    normal: Vec<BigInt>,
    offset: BigInt,
}

impl FacetInequality {
    pub fn new(normal: Vec<BigInt>, offset: BigInt) -> Self {
        FacetInequality { normal, offset }
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    /// `offset - normal · x`; nonnegative exactly on the closed half-space.
    pub fn slack(&self, x: &[BigInt]) -> BigInt {
        &self.offset - linalg::dot(&self.normal, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointLocation {
    Interior,
    Boundary,
    Outside,
}

/// Facets of the convex hull of a full-dimensional polytope, sorted by normal then offset.
pub fn enumerate_facets(p: &LatticePolytope) -> Vec<FacetInequality> {
    facets_of_points(p.dim(), p.points())
}

const PARALLEL_THRESHOLD: usize = 2048;

/// Facets of `conv(points)` in `R^dim`. The points must affinely span `R^dim`;
/// repeated points are harmless.
pub(crate) fn facets_of_points(dim: usize, points: &[LatticePoint]) -> Vec<FacetInequality> {
    let subsets: Vec<Vec<usize>> = (0..points.len()).combinations(dim).collect();
    let found: BTreeSet<FacetInequality> = if subsets.len() >= PARALLEL_THRESHOLD {
        subsets
            .par_iter()
            .filter_map(|s| supporting_hyperplane(points, s))
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    } else {
        subsets
            .iter()
            .filter_map(|s| supporting_hyperplane(points, s))
            .collect()
    };
    found.into_iter().collect()
}

fn supporting_hyperplane(points: &[LatticePoint], subset: &[usize]) -> Option<FacetInequality> {
    let base = &points[subset[0]];
    let edges: Vec<Vec<BigInt>> = subset[1..].iter().map(|&i| points[i].sub(base)).collect();
    let mut normal = linalg::orthogonal_complement(&edges);
    let g = linalg::content(&normal);
    if g.is_zero() {
        return None;
    }
    if !g.is_one() {
        for a in normal.iter_mut() {
            *a /= &g;
        }
    }
    let offset = linalg::dot(&normal, base.coords());

    let mut below = false;
    let mut above = false;
    for p in points {
        let v = linalg::dot(&normal, p.coords());
        if v < offset {
            below = true;
        } else if v > offset {
            above = true;
        }
        if below && above {
            return None;
        }
    }
    if above {
        Some(FacetInequality::new(
            normal.into_iter().map(|a| -a).collect(),
            -offset,
        ))
    } else {
        Some(FacetInequality::new(normal, offset))
    }
}

/// Locates `x` relative to the polytope described by a complete facet system.
pub fn classify_point(facets: &[FacetInequality], x: &LatticePoint) -> Result<PointLocation> {
    let mut on_boundary = false;
    for f in facets {
        if f.normal.len() != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: f.normal.len(),
                found: x.dim(),
            });
        }
        let s = f.slack(x.coords());
        if s.is_negative() {
            return Ok(PointLocation::Outside);
        }
        if s.is_zero() {
            on_boundary = true;
        }
    }
    Ok(if on_boundary {
        PointLocation::Boundary
    } else {
        PointLocation::Interior
    })
}

/// The points of `p` that are vertices of its convex hull, in input order.
pub fn hull_vertices(p: &LatticePolytope, facets: &[FacetInequality]) -> Vec<LatticePoint> {
    p.points()
        .iter()
        .filter(|x| {
            let tight: Vec<Vec<BigInt>> = facets
                .iter()
                .filter(|f| f.slack(x.coords()).is_zero())
                .map(|f| f.normal.clone())
                .collect();
            linalg::rank(&tight) == p.dim()
        })
        .cloned()
        .collect()
}
