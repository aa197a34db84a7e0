//! Explicit simplex decompositions of the bipyramid-type polytopes and of the
//! prism-type polytopes at `c = 0`, certified by containment and volume.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::counting::{self, ScanLimits};
use crate::error::{Error, Result};
use crate::families;
use crate::hull::{self, PointLocation};
use crate::lattice::{affine_rank, LatticePoint, LatticePolytope};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Simplex {
    pub vertices: Vec<LatticePoint>,
    #[serde(serialize_with = "crate::lattice::serialize_bigint")]
    pub nvol: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexDecomposition {
    pub ambient: LatticePolytope,
    pub simplices: Vec<Simplex>,
}

impl SimplexDecomposition {
    pub fn total_nvol(&self) -> BigInt {
        self.simplices.iter().map(|s| &s.nvol).sum()
    }
}

/// `|det(v_1 - v_0, ..., v_d - v_0)|` for `d + 1` points of `Z^d`.
pub fn simplex_nvol(vertices: &[LatticePoint]) -> Result<BigInt> {
    let dim = vertices.len().saturating_sub(1);
    if dim == 0 {
        return Err(Error::DegenerateSimplex { dim: 0, rank: 0 });
    }
    if let Some(bad) = vertices.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let rows: Vec<Vec<BigInt>> = vertices[1..].iter().map(|v| v.sub(&vertices[0])).collect();
    let det = linalg::determinant(&rows).abs();
    if det.sign() == num_bigint::Sign::NoSign {
        return Err(Error::DegenerateSimplex {
            dim,
            rank: affine_rank(vertices)?,
        });
    }
    Ok(det)
}

fn simplex(vertices: Vec<LatticePoint>) -> Result<Simplex> {
    let nvol = simplex_nvol(&vertices)?;
    Ok(Simplex { vertices, nvol })
}

/// The simplex through `0, e_1..e_{d-1}` and the far apex, followed by the
/// `d - 1` simplices that swap one `e_i` for the near apex.
pub fn bipyramid_triangulation(c: u64, d: usize, n: u64) -> Result<SimplexDecomposition> {
    let (ambient, _) = families::bipyramid(c, d, n)?;
    // vertex order: 0, e_1..e_{d-1}, near apex, far apex
    let pts = ambient.points();
    let (near, far) = (&pts[d], &pts[d + 1]);

    let mut simplices = vec![simplex(pts[..d].iter().chain([far]).cloned().collect())?];
    for i in 1..d {
        let verts = pts[..d]
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, p)| p)
            .chain([near, far])
            .cloned()
            .collect();
        simplices.push(simplex(verts)?);
    }
    Ok(SimplexDecomposition { ambient, simplices })
}

/// Vertex labels of the prism-type polytope at `c = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BVertex {
    /// `e_i`, `1 <= i <= d - 1`
    E(usize),
    /// `-e_1 - ... - e_{d-1}`
    W,
    /// `e_i + e_d`, `0 <= i <= j` (with `e_0 = 0`)
    Lifted(usize),
}

impl BVertex {
    pub fn point(self, d: usize) -> LatticePoint {
        match self {
            BVertex::E(i) => LatticePoint::unit(d, i - 1),
            BVertex::W => {
                let mut p = LatticePoint::origin(d).into_coords();
                for x in p.iter_mut().take(d - 1) {
                    *x = BigInt::from(-1);
                }
                LatticePoint::new(p)
            }
            BVertex::Lifted(0) => LatticePoint::unit(d, d - 1),
            BVertex::Lifted(i) => LatticePoint::unit(d, i - 1).add(&LatticePoint::unit(d, d - 1)),
        }
    }
}

/// The `d`-subsets `W` of the vertex set whose cones `conv(W ∪ {0})`
/// triangulate the prism-type polytope at `c = 0`.
///
/// Excluded are: subsets holding both `e'_s` and `e_t` for `s < t <= j`, the
/// bottom face `{e_1..e_{d-1}, w}`, and for each `1 <= ξ <= j` the subset
/// `{e_1..e_{ξ-1}, e'_ξ..e'_j, e_{j+1}..e_{d-1}, w}`.
pub fn b_set(d: usize, j: usize) -> Result<Vec<Vec<BVertex>>> {
    if d < 3 || j >= d {
        return Err(Error::Domain(format!(
            "B-set needs d >= 3 and 0 <= j <= d - 1, got d = {d}, j = {j}"
        )));
    }
    let mut labels: Vec<BVertex> = (1..d).map(BVertex::E).collect();
    labels.push(BVertex::W);
    labels.extend((0..=j).map(BVertex::Lifted));

    let bottom: Vec<BVertex> = {
        let mut b: Vec<BVertex> = (1..d).map(BVertex::E).collect();
        b.push(BVertex::W);
        b.sort();
        b
    };
    let staircases: Vec<Vec<BVertex>> = (1..=j)
        .map(|xi| {
            let mut s: Vec<BVertex> = (1..xi).map(BVertex::E).collect();
            s.extend((xi..=j).map(BVertex::Lifted));
            s.extend((j + 1..d).map(BVertex::E));
            s.push(BVertex::W);
            s.sort();
            s
        })
        .collect();

    let result = labels
        .into_iter()
        .combinations(d)
        .filter_map(|mut subset| {
            subset.sort();
            let crossing = (0..=j).any(|s| {
                subset.contains(&BVertex::Lifted(s))
                    && (s + 1..=j).any(|t| subset.contains(&BVertex::E(t)))
            });
            let excluded = crossing || subset == bottom || staircases.contains(&subset);
            (!excluded).then_some(subset)
        })
        .collect();
    Ok(result)
}

/// Sizes of the B-set grouped by `ξ_W = min{ξ : e'_ξ ∈ W}`; index `ξ` holds the count.
pub fn b_set_tally(d: usize, j: usize) -> Result<Vec<usize>> {
    let mut tally = vec![0; j + 1];
    for w in b_set(d, j)? {
        let xi = w
            .iter()
            .filter_map(|v| match v {
                BVertex::Lifted(i) => Some(*i),
                _ => None,
            })
            .min()
            .ok_or_else(|| Error::Consistency("B-set member without a lifted vertex".into()))?;
        tally[xi] += 1;
    }
    Ok(tally)
}

/// `conv(W ∪ {0})` for every `W` in the B-set; each must be unimodular.
pub fn prism_zero_triangulation(d: usize, j: usize) -> Result<SimplexDecomposition> {
    let (ambient, _) = families::prism_type(0, d, j)?;
    let simplices = b_set(d, j)?
        .into_iter()
        .map(|w| {
            let mut verts = vec![LatticePoint::origin(d)];
            verts.extend(w.iter().map(|v| v.point(d)));
            let s = simplex(verts).map_err(|e| {
                Error::Consistency(format!("cone over {w:?} is not a simplex: {e}"))
            })?;
            if !s.nvol.is_one() {
                return Err(Error::Consistency(format!(
                    "cone over {w:?} has normalized volume {}, expected 1",
                    s.nvol
                )));
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplexDecomposition { ambient, simplices })
}

/// True iff every simplex vertex lies in the ambient polytope, every recorded
/// volume matches its determinant, and the volumes add up to the ambient
/// normalized volume counted independently.
pub fn verify_decomposition(dec: &SimplexDecomposition, limits: ScanLimits) -> Result<bool> {
    let facets = hull::enumerate_facets(&dec.ambient);
    for s in &dec.simplices {
        for v in &s.vertices {
            if hull::classify_point(&facets, v)? == PointLocation::Outside {
                return Ok(false);
            }
        }
        match simplex_nvol(&s.vertices) {
            Ok(nvol) if nvol == s.nvol => {}
            _ => return Ok(false),
        }
    }
    let ambient = counting::normalized_volume(&dec.ambient, limits)?;
    Ok(dec.total_nvol() == ambient)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nvols(dec: &SimplexDecomposition) -> Vec<i64> {
        use num_traits::ToPrimitive;
        dec.simplices.iter().map(|s| s.nvol.to_i64().unwrap()).collect()
    }

    fn pts(list: &[&[i64]]) -> Vec<LatticePoint> {
        list.iter().map(|p| LatticePoint::from_i64s(p)).collect()
    }

    #[test]
    fn simplex_volumes() {
        // σ at d = 3, c = 1: apex e_3 + 3Σe_i
        assert_eq!(
            simplex_nvol(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[3, 3, 4]])).unwrap(),
            BigInt::from(4)
        );
        // σ(1) at d = 3, c = 1, n = 0
        assert_eq!(
            simplex_nvol(&pts(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1], &[3, 3, 4]])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            simplex_nvol(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap(),
            BigInt::one()
        );
        assert!(matches!(
            simplex_nvol(&pts(&[&[0, 0], &[1, 1], &[2, 2]])),
            Err(Error::DegenerateSimplex { dim: 2, rank: 1 })
        ));
    }

    #[test]
    fn bipyramid_simplex_volumes() {
        assert_eq!(nvols(&bipyramid_triangulation(3, 4, 5).unwrap()), vec![13, 7, 7, 7]);
        assert_eq!(nvols(&bipyramid_triangulation(1, 3, 0).unwrap()), vec![4, 3, 3]);
        assert_eq!(nvols(&bipyramid_triangulation(1, 3, 2).unwrap()), vec![4, 1, 1]);
    }

    #[test]
    fn b_set_sizes() {
        for d in 3..=6 {
            assert_eq!(b_set(d, 0).unwrap().len(), d);
        }
        assert_eq!(b_set(4, 2).unwrap().len(), 10);
        assert_eq!(b_set(3, 2).unwrap().len(), 7);
        assert!(b_set(3, 3).is_err());
    }

    #[test]
    fn b_set_tally_by_first_lifted_vertex() {
        assert_eq!(b_set_tally(5, 3).unwrap(), vec![5, 4, 4, 4]);
        assert_eq!(b_set_tally(3, 0).unwrap(), vec![3]);
    }

    #[test]
    fn verification() {
        let lim = ScanLimits::default();
        assert!(verify_decomposition(&bipyramid_triangulation(3, 4, 5).unwrap(), lim).unwrap());
        assert!(verify_decomposition(&prism_zero_triangulation(4, 2).unwrap(), lim).unwrap());
        assert_eq!(prism_zero_triangulation(3, 0).unwrap().total_nvol(), BigInt::from(3));
        assert_eq!(prism_zero_triangulation(3, 2).unwrap().total_nvol(), BigInt::from(7));

        let mut short = bipyramid_triangulation(3, 4, 5).unwrap();
        short.simplices.pop();
        assert!(!verify_decomposition(&short, lim).unwrap());

        let mut wrong = prism_zero_triangulation(3, 1).unwrap();
        wrong.simplices[0].nvol = BigInt::from(2);
        assert!(!verify_decomposition(&wrong, lim).unwrap());
    }
}
