//! Constructors for the bipyramid-type, prism and prism-type families, the
//! simplices with a single interior diagonal, and two fixed examples.
//!
//! Each family constructor returns its closed-form `(b, c, nvol)` alongside
//! the polytope. Nothing here checks the prediction; that is left to callers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolytope};

/// Closed-form profile claimed for a family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyPrediction {
    pub b: u64,
    pub c: u64,
    #[serde(serialize_with = "crate::lattice::serialize_bigint")]
    pub nvol: BigInt,
}

impl FamilyPrediction {
    fn new(b: u64, c: u64, nvol: impl Into<BigInt>) -> Self {
        FamilyPrediction { b, c, nvol: nvol.into() }
    }
}

fn e(d: usize, i: usize) -> LatticePoint {
    LatticePoint::unit(d, i - 1)
}

/// `w = -e_1 - ... - e_{d-1}`.
fn w(d: usize) -> LatticePoint {
    let mut coords = vec![BigInt::from(-1); d];
    coords[d - 1] = BigInt::zero();
    LatticePoint::new(coords)
}

/// `e_d + k (e_1 + ... + e_d)`.
fn apex(d: usize, k: u64) -> LatticePoint {
    let k = BigInt::from(k);
    let mut coords = vec![k.clone(); d];
    coords[d - 1] = k + 1;
    LatticePoint::new(coords)
}

fn lift(p: &LatticePoint, height: u64) -> LatticePoint {
    let d = p.dim();
    p.add(&LatticePoint::unit(d, d - 1).scale(&BigInt::from(height)))
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}

fn base_simplex(d: usize) -> Vec<LatticePoint> {
    let mut pts = vec![LatticePoint::origin(d)];
    pts.extend((1..d).map(|i| e(d, i)));
    pts
}

/// Bipyramid type: `conv(0, e_1, ..., e_{d-1}, e_d + nΣe_i, e_d + cdΣe_i)`
/// for `c >= 1`, `d >= 3`, `0 <= n < cd`.
pub fn bipyramid(c: u64, d: usize, n: u64) -> Result<(LatticePolytope, FamilyPrediction)> {
    require(c >= 1, || format!("bipyramid needs c >= 1, got {c}"))?;
    require(d >= 3, || format!("bipyramid needs d >= 3, got {d}"))?;
    let cd = c * d as u64;
    require(n < cd, || format!("bipyramid needs 0 <= n < cd = {cd}, got n = {n}"))?;

    let mut pts = base_simplex(d);
    pts.push(apex(d, n));
    pts.push(apex(d, cd));
    let polytope = LatticePolytope::new(d, pts)?;

    let dd = d as u64;
    let nvol = BigInt::from(dd - 1) * BigInt::from(cd - n) + BigInt::from(cd + 1);
    Ok((polytope, FamilyPrediction::new(cd - n + dd + 1, c, nvol)))
}

/// The prism over the simplex `conv(e_1, ..., e_{d-1}, w)` of height `c + 1`.
pub fn prism(c: u64, d: usize) -> Result<(LatticePolytope, FamilyPrediction)> {
    require(d >= 3, || format!("prism needs d >= 3, got {d}"))?;
    let mut bottom: Vec<LatticePoint> = (1..d).map(|i| e(d, i)).collect();
    bottom.push(w(d));
    let top: Vec<LatticePoint> = bottom.iter().map(|p| lift(p, c + 1)).collect();
    bottom.extend(top);
    let polytope = LatticePolytope::new(d, bottom)?;

    let dd = d as u64;
    let nvol = BigInt::from(c + 1) * BigInt::from(dd * dd);
    Ok((polytope, FamilyPrediction::new(c * dd + 2 * dd + 2, c, nvol)))
}

/// Prism type: the prism with its top face cut so that `e_1..e_j` sit at
/// height `c + 1` and `e_{j+1}..e_{d-1}, w` at height `c`, plus the apex `(c+1)e_d`.
pub fn prism_type(c: u64, d: usize, j: usize) -> Result<(LatticePolytope, FamilyPrediction)> {
    require(d >= 3, || format!("prism type needs d >= 3, got {d}"))?;
    require(j < d, || format!("prism type needs 0 <= j <= d - 1 = {}, got j = {j}", d - 1))?;

    let mut pts: Vec<LatticePoint> = (1..d).map(|i| e(d, i)).collect();
    pts.push(w(d));
    pts.push(lift(&LatticePoint::origin(d), c + 1));
    pts.extend((1..=j).map(|i| lift(&e(d, i), c + 1)));
    pts.extend((j + 1..d).map(|i| lift(&e(d, i), c)));
    pts.push(lift(&w(d), c));
    // at c = 0 the lowered top vertices coincide with bottom ones
    let mut unique: Vec<LatticePoint> = Vec::with_capacity(pts.len());
    for p in pts {
        if !unique.contains(&p) {
            unique.push(p);
        }
    }
    let polytope = LatticePolytope::new(d, unique)?;

    let (dd, jj) = (d as u64, j as u64);
    let nvol = BigInt::from(c) * BigInt::from(dd * dd) + BigInt::from(jj * dd + dd - jj);
    Ok((polytope, FamilyPrediction::new(c * dd + dd + 2 + jj, c, nvol)))
}

/// The simplex `conv(0, e_1, ..., e_{d-1}, e_d + cdΣe_i)`.
pub fn ht_simplex(c: u64, d: usize) -> Result<(LatticePolytope, FamilyPrediction)> {
    require(c >= 1, || format!("simplex family needs c >= 1, got {c}"))?;
    require(d >= 3, || format!("simplex family needs d >= 3, got {d}"))?;
    let cd = c * d as u64;
    let mut pts = base_simplex(d);
    pts.push(apex(d, cd));
    let polytope = LatticePolytope::new(d, pts)?;
    Ok((polytope, FamilyPrediction::new(d as u64 + 1, c, cd + 1)))
}

/// `conv{±e_1 ± ... ± e_d}`, the cube `[-1, 1]^d`.
pub fn cube(d: usize) -> Result<LatticePolytope> {
    require((1..=16).contains(&d), || format!("cube needs 1 <= d <= 16, got {d}"))?;
    let pts = (0u32..1 << d)
        .map(|mask| {
            LatticePoint::new(
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { BigInt::one() } else { -BigInt::one() })
                    .collect(),
            )
        })
        .collect();
    LatticePolytope::new(d, pts)
}

/// `[-1, 1]^d` has `3^d` lattice points, only the origin interior, and volume `2^d`.
pub fn cube_prediction(d: usize) -> FamilyPrediction {
    let total = 3u64.pow(d as u32);
    let factorial: BigInt = (1..=d).map(BigInt::from).product();
    FamilyPrediction::new(total - 1, 1, factorial * BigInt::from(1u64 << d))
}

/// The six-vertex prism over the triangle `conv((-1,-1), (2,-1), (-1,2))`.
pub fn example_prism_r3() -> LatticePolytope {
    LatticePolytope::from_i64s(
        3,
        &[
            &[-1, -1, 1],
            &[2, -1, 1],
            &[-1, 2, 1],
            &[-1, -1, -1],
            &[2, -1, -1],
            &[-1, 2, -1],
        ],
    )
    .expect("fixed example is full-dimensional")
}

pub fn example_prism_r3_prediction() -> FamilyPrediction {
    FamilyPrediction::new(29, 1, 54)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(p: &LatticePolytope) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        p.points()
            .iter()
            .map(|x| x.coords().iter().map(|v| v.to_i64().unwrap()).collect())
            .collect()
    }

    #[test]
    fn bipyramid_3_4_5_vertices() {
        let (p, pred) = bipyramid(3, 4, 5).unwrap();
        assert_eq!(
            coords(&p),
            vec![
                vec![0, 0, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![5, 5, 5, 6],
                vec![12, 12, 12, 13]
            ]
        );
        assert_eq!(pred, FamilyPrediction::new(12, 3, 34));
    }

    #[test]
    fn predictions() {
        assert_eq!(bipyramid(1, 3, 0).unwrap().1, FamilyPrediction::new(7, 1, 10));
        assert_eq!(bipyramid(2, 3, 5).unwrap().1, FamilyPrediction::new(5, 2, 9));
        assert_eq!(prism(1, 3).unwrap().1, FamilyPrediction::new(11, 1, 18));
        assert_eq!(prism(0, 3).unwrap().1, FamilyPrediction::new(8, 0, 9));
        assert_eq!(prism(2, 4).unwrap().1, FamilyPrediction::new(18, 2, 48));
        assert_eq!(prism_type(1, 3, 1).unwrap().1, FamilyPrediction::new(9, 1, 14));
        assert_eq!(prism_type(1, 3, 0).unwrap().1, FamilyPrediction::new(8, 1, 12));
        assert_eq!(prism_type(2, 4, 3).unwrap().1, FamilyPrediction::new(17, 2, 45));
        assert_eq!(ht_simplex(1, 3).unwrap().1, FamilyPrediction::new(4, 1, 4));
        assert_eq!(ht_simplex(2, 3).unwrap().1, FamilyPrediction::new(4, 2, 7));
        assert_eq!(ht_simplex(3, 4).unwrap().1, FamilyPrediction::new(5, 3, 13));
        assert_eq!(cube_prediction(3), FamilyPrediction::new(26, 1, 48));
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(prism(2, 5).unwrap().0.points().len(), 10);
        assert_eq!(prism_type(2, 5, 3).unwrap().0.points().len(), 11);
        // at c = 0 the lowered vertices merge into the bottom face
        assert_eq!(prism_type(0, 4, 2).unwrap().0.points().len(), 4 + 3);
        assert_eq!(cube(4).unwrap().points().len(), 16);
    }

    #[test]
    fn parameter_ranges() {
        assert!(bipyramid(1, 3, 3).is_err());
        assert!(bipyramid(0, 3, 0).is_err());
        assert!(bipyramid(1, 2, 0).is_err());
        assert!(prism(0, 2).is_err());
        assert!(prism_type(1, 3, 3).is_err());
        assert!(ht_simplex(0, 4).is_err());
        assert!(cube(0).is_err());
    }
}
