//! The minimal-volume bound `nvol >= d c + (d - 1) b - d^2 + 2` (valid when
//! `c > 0`), the predicate for equality, and realization of triplets `(b, c, d)`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::counting::{self, LatticeProfile, ScanLimits};
use crate::error::{Error, Result};
use crate::families::{self, FamilyPrediction};
use crate::lattice::LatticePolytope;

/// The bound in normalized-volume units. Undefined for `c = 0`.
pub fn lower_bound_nvol(b: u64, c: u64, d: usize) -> Result<BigInt> {
    if c == 0 {
        return Err(Error::UndefinedBound);
    }
    let d = BigInt::from(d);
    Ok(&d * c + (&d - 1) * b - &d * &d + 2)
}

/// Outcome of the equality test; `Undefined` when there is no interior point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Castelnuovo,
    NotCastelnuovo,
    Undefined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Castelnuovo => "true",
            Verdict::NotCastelnuovo => "false",
            Verdict::Undefined => "undefined",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Castelnuovo => serializer.serialize_bool(true),
            Verdict::NotCastelnuovo => serializer.serialize_bool(false),
            Verdict::Undefined => serializer.serialize_str("undefined"),
        }
    }
}

pub fn verdict(profile: &LatticeProfile) -> Verdict {
    match lower_bound_nvol(profile.b, profile.c, profile.dim) {
        Ok(bound) if bound == profile.nvol => Verdict::Castelnuovo,
        Ok(_) => Verdict::NotCastelnuovo,
        Err(_) => Verdict::Undefined,
    }
}

/// Whether `p` attains the bound. Errors with [`Error::UndefinedBound`] when `c(p) = 0`.
pub fn is_castelnuovo(p: &LatticePolytope, limits: ScanLimits) -> Result<bool> {
    let profile = counting::profile(p, limits)?;
    match verdict(&profile) {
        Verdict::Castelnuovo => Ok(true),
        Verdict::NotCastelnuovo => Ok(false),
        Verdict::Undefined => Err(Error::UndefinedBound),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CastelnuovoTriplet {
    pub b: u64,
    pub c: u64,
    pub d: usize,
}

impl CastelnuovoTriplet {
    pub fn new(b: u64, c: u64, d: usize) -> Self {
        CastelnuovoTriplet { b, c, d }
    }

    /// `b >= c + d + 1`, `c >= 1`, `d >= 3`: the admissibility conditions
    /// attached to the definition of a triplet in dimension at least three.
    pub fn meets_admissibility_gate(&self) -> bool {
        self.c >= 1 && self.d >= 3 && self.b >= self.c + self.d as u64 + 1
    }
}

impl fmt::Display for CastelnuovoTriplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.b, self.c, self.d)
    }
}

/// Which family member witnesses a triplet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyTag {
    HtSimplex { c: u64, d: usize },
    Bipyramid { c: u64, d: usize, n: u64 },
    PrismType { c: u64, d: usize, j: usize },
    Prism { c: u64, d: usize },
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::HtSimplex { c, d } => write!(f, "ht-simplex(c={c}, d={d})"),
            FamilyTag::Bipyramid { c, d, n } => write!(f, "bipyramid(c={c}, d={d}, n={n})"),
            FamilyTag::PrismType { c, d, j } => write!(f, "prism-type(c={c}, d={d}, j={j})"),
            FamilyTag::Prism { c, d } => write!(f, "prism(c={c}, d={d})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub polytope: LatticePolytope,
    pub family: FamilyTag,
    pub prediction: FamilyPrediction,
}

/// `[d + 1, cd + 2d + 2]`, the values of `b` covered by the families for given `c >= 1`, `d >= 3`.
pub fn proven_range(c: u64, d: usize) -> (u64, u64) {
    let d = d as u64;
    (d + 1, c * d + 2 * d + 2)
}

/// Picks the family member with boundary count `b` and `c` interior points:
/// `b = d + 1` the simplex, then bipyramids up to `cd + d + 1`, prism types
/// up to `cd + 2d + 1`, and the full prism at `cd + 2d + 2`.
pub fn realize_triplet(b: u64, c: u64, d: usize) -> Result<Realization> {
    if c < 1 || d < 3 {
        return Err(Error::Domain(format!(
            "triplet realization needs c >= 1 and d >= 3, got c = {c}, d = {d}"
        )));
    }
    let triplet = CastelnuovoTriplet::new(b, c, d);
    let (lo, hi) = proven_range(c, d);
    if b < lo || b > hi {
        return Err(Error::NotRealizable { b, c, d, lo, hi });
    }
    if !triplet.meets_admissibility_gate() {
        log::warn!("triplet {triplet} does not satisfy b >= c + d + 1");
    }

    let dd = d as u64;
    let cd = c * dd;
    let (family, (polytope, prediction)) = if b == dd + 1 {
        (FamilyTag::HtSimplex { c, d }, families::ht_simplex(c, d)?)
    } else if b <= cd + dd + 1 {
        let n = cd + dd + 1 - b;
        (FamilyTag::Bipyramid { c, d, n }, families::bipyramid(c, d, n)?)
    } else if b <= cd + 2 * dd + 1 {
        let j = (b - cd - dd - 2) as usize;
        (FamilyTag::PrismType { c, d, j }, families::prism_type(c, d, j)?)
    } else {
        (FamilyTag::Prism { c, d }, families::prism(c, d)?)
    };
    if prediction.b != b || prediction.c != c {
        return Err(Error::Consistency(format!(
            "{family} predicts (b, c) = ({}, {}), requested ({b}, {c})",
            prediction.b, prediction.c
        )));
    }
    Ok(Realization {
        polytope,
        family,
        prediction,
    })
}

/// [`realize_triplet`] followed by measuring the witness. Any disagreement with
/// the request, or a witness that misses the bound, is a consistency error.
pub fn realize_and_verify(b: u64, c: u64, d: usize, limits: ScanLimits) -> Result<(Realization, LatticeProfile)> {
    let realization = realize_triplet(b, c, d)?;
    let profile = counting::profile(&realization.polytope, limits)?;
    if profile.b != b || profile.c != c {
        return Err(Error::Consistency(format!(
            "witness {} measures (b, c) = ({}, {}), requested ({b}, {c})",
            realization.family, profile.b, profile.c
        )));
    }
    if verdict(&profile) != Verdict::Castelnuovo {
        return Err(Error::Consistency(format!(
            "witness {} has nvol {} but the bound is {}",
            realization.family,
            profile.nvol,
            lower_bound_nvol(b, c, d)?
        )));
    }
    Ok((realization, profile))
}

/// The planar triplets: `(b, 1, 2)` for `3 <= b <= 9` and `(b, c, 2)` for
/// `2 <= c <= c_max`, `3 <= b <= 2c + 6`.
pub fn scott_triplets_d2(c_max: u64) -> Vec<CastelnuovoTriplet> {
    let mut out = Vec::new();
    for c in 1..=c_max {
        let b_max = if c == 1 { 9 } else { 2 * c + 6 };
        out.extend((3..=b_max).map(|b| CastelnuovoTriplet::new(b, c, 2)));
    }
    out
}
