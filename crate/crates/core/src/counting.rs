//! Lattice-point counting, dilation counts and the volume they determine.
//!
//! Points are found coordinate by coordinate. For every proper prefix length
//! `k` the scanner keeps the facet system of the projection of the polytope
//! onto the first `k + 1` coordinates, so only prefixes with a real extension
//! into the polytope are visited. The last coordinate is never scanned: the
//! boundary and interior points on each line are counted in closed form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::castelnuovo::lower_bound_nvol;
use crate::error::{Error, Result};
use crate::hull::{self, FacetInequality, PointLocation};
use crate::lattice::{LatticePoint, LatticePolytope, RationalValue};

pub const DEFAULT_BOX_LIMIT: u128 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BOX_LIMIT`].
pub const BOX_LIMIT_ENV: &str = "CASTELNUOVO_BOX_LIMIT";

/// Upper bound on the number of scan cells (prefix nodes plus lines) a single
/// dilation count may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanLimits {
    pub box_limit: u128,
}

impl Default for ScanLimits {
    fn default() -> Self {
        ScanLimits {
            box_limit: DEFAULT_BOX_LIMIT,
        }
    }
}

impl ScanLimits {
    pub fn new(box_limit: u128) -> Self {
        ScanLimits { box_limit }
    }

    /// Default limits, overridden by `CASTELNUOVO_BOX_LIMIT` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BOX_LIMIT_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u128>()
                .map(Self::new)
                .map_err(|_| Error::Domain(format!("{BOX_LIMIT_ENV} must be a nonnegative integer, got {v:?}"))),
            Err(_) => Ok(Self::default()),
        }
    }
}

/// `b`, `c` and normalized volume `d! vol(P)` of a polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeProfile {
    pub dim: usize,
    pub b: u64,
    pub c: u64,
    pub total: u64,
    #[serde(serialize_with = "crate::lattice::serialize_bigint")]
    pub nvol: BigInt,
}

/// Dilation counts `L(0), L(1), ..., L(T)` with `L(t) = |tP ∩ Z^d|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhrhartValues(Vec<u64>);

impl EhrhartValues {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    /// `Δ^order L(0)`. Requires `order < values().len()`.
    pub fn forward_difference(&self, order: usize) -> BigInt {
        assert!(order < self.0.len(), "not enough dilation counts for difference of order {order}");
        let mut binom = BigInt::one();
        let mut acc = BigInt::zero();
        // Σ_k (-1)^(order-k) C(order,k) L(k)
        for k in 0..=order {
            let term = &binom * BigInt::from(self.0[k]);
            if (order - k) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            binom = binom * BigInt::from(order - k) / BigInt::from(k + 1);
        }
        acc
    }

    /// Value at `t` of the Lagrange interpolant through all recorded counts.
    pub fn interpolate_at(&self, t: &BigInt) -> RationalValue {
        let nodes: Vec<BigInt> = (0..self.0.len()).map(BigInt::from).collect();
        let mut acc = RationalValue::zero();
        for (k, xk) in nodes.iter().enumerate() {
            let mut term = RationalValue::from_integer(BigInt::from(self.0[k]));
            for (j, xj) in nodes.iter().enumerate() {
                if j != k {
                    term *= RationalValue::new(t - xj, xk - xj);
                }
            }
            acc += term;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PointCounts {
    pub interior: u64,
    pub boundary: u64,
}

impl PointCounts {
    pub fn total(&self) -> u64 {
        self.interior + self.boundary
    }
}

/// Facet system of a polytope and of its coordinate projections, computed once
/// and reused for every dilation.
#[derive(Clone, Debug)]
pub struct LatticeScanner {
    dim: usize,
    facets: Vec<FacetInequality>,
    shadows: Vec<Vec<FacetInequality>>,
}

/// Integer bounds on one coordinate: closed (`lo..=hi`) and strict (`lo_s..=hi_s`).
struct LineBounds {
    lo: Option<BigInt>,
    hi: Option<BigInt>,
    lo_strict: Option<BigInt>,
    hi_strict: Option<BigInt>,
    flat_tight: bool,
    infeasible: bool,
}

impl LineBounds {
    fn new() -> Self {
        LineBounds {
            lo: None,
            hi: None,
            lo_strict: None,
            hi_strict: None,
            flat_tight: false,
            infeasible: false,
        }
    }

    /// Adds the constraint `a * x <= r`.
    fn add(&mut self, a: &BigInt, r: BigInt) {
        if a.is_zero() {
            if r.is_negative() {
                self.infeasible = true;
            } else if r.is_zero() {
                self.flat_tight = true;
            }
        } else if a.is_positive() {
            let hi = r.div_floor(a);
            let hi_strict = (&r - BigInt::one()).div_floor(a);
            tighten(&mut self.hi, hi, |new, old| new < old);
            tighten(&mut self.hi_strict, hi_strict, |new, old| new < old);
        } else {
            // x >= r / a with a < 0
            let lo = -((-&r).div_floor(a));
            let lo_strict = r.div_floor(a) + 1;
            tighten(&mut self.lo, lo, |new, old| new > old);
            tighten(&mut self.lo_strict, lo_strict, |new, old| new > old);
        }
    }

    fn closed(&self) -> Result<Option<(BigInt, BigInt)>> {
        if self.infeasible {
            return Ok(None);
        }
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => Ok((lo <= hi).then(|| (lo.clone(), hi.clone()))),
            _ => Err(Error::Consistency("facet system does not bound a line".into())),
        }
    }

    fn strict(&self) -> Option<(BigInt, BigInt)> {
        if self.flat_tight || self.infeasible {
            return None;
        }
        match (&self.lo_strict, &self.hi_strict) {
            (Some(lo), Some(hi)) if lo <= hi => Some((lo.clone(), hi.clone())),
            _ => None,
        }
    }
}

fn tighten(slot: &mut Option<BigInt>, value: BigInt, better: impl Fn(&BigInt, &BigInt) -> bool) {
    match slot {
        Some(old) if !better(&value, old) => {}
        _ => *slot = Some(value),
    }
}

fn span(lo: &BigInt, hi: &BigInt) -> Result<u64> {
    (hi - lo + 1u32)
        .to_u64()
        .ok_or_else(|| Error::Consistency("lattice point count exceeds 64 bits".into()))
}

/// Bounds on coordinate `prefix.len()` for the dilation by `t`.
fn bounds_for(facets: &[FacetInequality], prefix: &[BigInt], t: &BigInt) -> LineBounds {
    let k = prefix.len();
    let mut bounds = LineBounds::new();
    for f in facets {
        let a = f.normal();
        let partial: BigInt = a[..k].iter().zip(prefix).map(|(x, y)| x * y).sum();
        bounds.add(&a[k], f.offset() * t - partial);
    }
    bounds
}

struct Walk<'a, F> {
    scanner: &'a LatticeScanner,
    t: BigInt,
    limit: u128,
    visited: u128,
    on_line: F,
}

impl<F> Walk<'_, F>
where
    F: FnMut(&[BigInt], &LineBounds) -> Result<()>,
{
    fn visit(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited > self.limit {
            return Err(Error::BoxLimitExceeded {
                cells: self.visited,
                limit: self.limit,
            });
        }
        Ok(())
    }

    fn descend(&mut self, prefix: &mut Vec<BigInt>) -> Result<()> {
        self.visit()?;
        let k = prefix.len();
        let d = self.scanner.dim;
        if k + 1 == d {
            let bounds = bounds_for(&self.scanner.facets, prefix, &self.t);
            return (self.on_line)(prefix, &bounds);
        }
        let bounds = bounds_for(&self.scanner.shadows[k], prefix, &self.t);
        let Some((lo, hi)) = bounds.closed()? else {
            return Ok(());
        };
        let mut x = lo;
        while x <= hi {
            prefix.push(x.clone());
            self.descend(prefix)?;
            prefix.pop();
            x += 1;
        }
        Ok(())
    }
}

impl LatticeScanner {
    pub fn new(p: &LatticePolytope) -> Self {
        let dim = p.dim();
        let facets = hull::enumerate_facets(p);
        let shadows = (1..dim)
            .map(|k| {
                let mut projected: Vec<LatticePoint> = p
                    .points()
                    .iter()
                    .map(|x| LatticePoint::new(x.coords()[..k].to_vec()))
                    .collect();
                projected.sort();
                projected.dedup();
                hull::facets_of_points(k, &projected)
            })
            .collect();
        LatticeScanner { dim, facets, shadows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[FacetInequality] {
        &self.facets
    }

    fn walk<F>(&self, t: u64, limits: ScanLimits, on_line: F) -> Result<()>
    where
        F: FnMut(&[BigInt], &LineBounds) -> Result<()>,
    {
        let mut walk = Walk {
            scanner: self,
            t: BigInt::from(t),
            limit: limits.box_limit,
            visited: 0,
            on_line,
        };
        walk.descend(&mut Vec::with_capacity(self.dim))
    }

    /// Interior and boundary lattice points of the dilation `tP`, `t >= 1`.
    pub fn count(&self, t: u64, limits: ScanLimits) -> Result<PointCounts> {
        if t == 0 {
            return Err(Error::Domain("dilation factor must be positive".into()));
        }
        let mut counts = PointCounts::default();
        self.walk(t, limits, |_, bounds| {
            if let Some((lo, hi)) = bounds.closed()? {
                let all = span(&lo, &hi)?;
                let inner = match bounds.strict() {
                    Some((ls, hs)) => span(&ls, &hs)?,
                    None => 0,
                };
                counts.interior += inner;
                counts.boundary += all - inner;
            }
            Ok(())
        })?;
        Ok(counts)
    }

    /// Every lattice point of `tP` with its location, in lexicographic order.
    pub fn points(&self, t: u64, limits: ScanLimits) -> Result<Vec<(LatticePoint, PointLocation)>> {
        if t == 0 {
            return Err(Error::Domain("dilation factor must be positive".into()));
        }
        let mut out = Vec::new();
        self.walk(t, limits, |prefix, bounds| {
            let Some((lo, hi)) = bounds.closed()? else {
                return Ok(());
            };
            let strict = bounds.strict();
            let mut x = lo;
            while x <= hi {
                let interior = strict.as_ref().is_some_and(|(ls, hs)| ls <= &x && &x <= hs);
                let mut coords = prefix.to_vec();
                coords.push(x.clone());
                let location = if interior {
                    PointLocation::Interior
                } else {
                    PointLocation::Boundary
                };
                out.push((LatticePoint::new(coords), location));
                x += 1;
            }
            Ok(())
        })?;
        Ok(out)
    }

    pub fn ehrhart_values(&self, max_t: u64, limits: ScanLimits) -> Result<EhrhartValues> {
        let mut values = vec![1];
        for t in 1..=max_t {
            values.push(self.count(t, limits)?.total());
        }
        Ok(EhrhartValues(values))
    }
}

/// Every lattice point of `p` tagged interior or boundary.
pub fn enumerate_lattice_points(
    p: &LatticePolytope,
    limits: ScanLimits,
) -> Result<Vec<(LatticePoint, PointLocation)>> {
    LatticeScanner::new(p).points(1, limits)
}

pub fn ehrhart_values(p: &LatticePolytope, max_t: u64, limits: ScanLimits) -> Result<EhrhartValues> {
    LatticeScanner::new(p).ehrhart_values(max_t, limits)
}

/// `d! vol(P)`, read off as the `d`-th forward difference of the dilation counts.
pub fn normalized_volume(p: &LatticePolytope, limits: ScanLimits) -> Result<BigInt> {
    let values = ehrhart_values(p, p.dim() as u64, limits)?;
    volume_from_values(&values, p.dim())
}

fn volume_from_values(values: &EhrhartValues, dim: usize) -> Result<BigInt> {
    let nvol = values.forward_difference(dim);
    if nvol < BigInt::one() {
        return Err(Error::Consistency(format!(
            "normalized volume {nvol} from dilation counts {:?} is not positive",
            values.values()
        )));
    }
    Ok(nvol)
}

/// Interior point count from Ehrhart reciprocity: `(-1)^d L(-1)`.
pub fn interior_via_reciprocity(p: &LatticePolytope, limits: ScanLimits) -> Result<u64> {
    let values = ehrhart_values(p, p.dim() as u64, limits)?;
    interior_from_values(&values, p.dim())
}

fn interior_from_values(values: &EhrhartValues, dim: usize) -> Result<u64> {
    let at_minus_one = values.interpolate_at(&BigInt::from(-1));
    if !at_minus_one.is_integer() {
        return Err(Error::Consistency(format!(
            "Ehrhart interpolant takes the non-integer value {at_minus_one} at -1"
        )));
    }
    let mut value = at_minus_one.to_integer();
    if dim % 2 == 1 {
        value = -value;
    }
    value
        .to_u64()
        .ok_or_else(|| Error::Consistency(format!("reciprocity gives a negative interior count {value}")))
}

/// Profile plus the data needed to cross-check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub profile: LatticeProfile,
    pub ehrhart: EhrhartValues,
    pub interior_by_reciprocity: u64,
}

/// Profile, dilation counts `L(0..=d)` and the reciprocity interior count in one pass.
pub fn analyze(p: &LatticePolytope, limits: ScanLimits) -> Result<Analysis> {
    let scanner = LatticeScanner::new(p);
    let d = p.dim();
    let counts = scanner.count(1, limits)?;
    let ehrhart = scanner.ehrhart_values(d as u64, limits)?;
    if ehrhart.values()[1] != counts.total() {
        return Err(Error::Consistency(format!(
            "L(1) = {} but b + c = {}",
            ehrhart.values()[1],
            counts.total()
        )));
    }
    let nvol = volume_from_values(&ehrhart, d)?;
    let profile = LatticeProfile {
        dim: d,
        b: counts.boundary,
        c: counts.interior,
        total: counts.total(),
        nvol,
    };
    check_lower_bound(&profile)?;
    let interior_by_reciprocity = interior_from_values(&ehrhart, d)?;
    Ok(Analysis {
        profile,
        ehrhart,
        interior_by_reciprocity,
    })
}

/// `(b, c, nvol)` of `p`. A violation of the minimal-volume bound is reported
/// as an internal-consistency error.
pub fn profile(p: &LatticePolytope, limits: ScanLimits) -> Result<LatticeProfile> {
    let scanner = LatticeScanner::new(p);
    let d = p.dim();
    let counts = scanner.count(1, limits)?;
    let nvol = volume_from_values(&scanner.ehrhart_values(d as u64, limits)?, d)?;
    let profile = LatticeProfile {
        dim: d,
        b: counts.boundary,
        c: counts.interior,
        total: counts.total(),
        nvol,
    };
    check_lower_bound(&profile)?;
    Ok(profile)
}

fn check_lower_bound(profile: &LatticeProfile) -> Result<()> {
    if profile.c > 0 {
        let bound = lower_bound_nvol(profile.b, profile.c, profile.dim)?;
        if profile.nvol < bound {
            return Err(Error::Consistency(format!(
                "normalized volume {} is below the lower bound {bound} for b = {}, c = {}, d = {}",
                profile.nvol, profile.b, profile.c, profile.dim
            )));
        }
    }
    Ok(())
}
