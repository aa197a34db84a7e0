//! Random search for minimal-volume polytopes in a small box.
//!
//! Sample `i` draws its points from a ChaCha stream keyed by `(seed, i)`, so a
//! run is reproducible regardless of how samples are scheduled across threads.

use std::collections::BTreeSet;
use std::io::Write;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::castelnuovo::{verdict, CastelnuovoTriplet, Verdict};
use crate::counting::{self, ScanLimits};
use crate::error::{Error, Result};
use crate::hull;
use crate::lattice::{LatticePoint, LatticePolytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanParams {
    pub dim: usize,
    /// Points are drawn from `[0, box_size]^dim`.
    pub box_size: u64,
    pub samples: u64,
    pub seed: u64,
    /// Also keep samples that miss the bound.
    pub record_all: bool,
}

impl ScanParams {
    pub fn new(dim: usize, box_size: u64, samples: u64, seed: u64) -> Self {
        ScanParams {
            dim,
            box_size,
            samples,
            seed,
            record_all: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub sample_index: u64,
    pub seed: u64,
    pub triplet: CastelnuovoTriplet,
    #[serde(serialize_with = "crate::lattice::serialize_bigint")]
    pub nvol: BigInt,
    pub castelnuovo: Verdict,
    /// Vertices of the sampled hull.
    pub vertices: Vec<LatticePoint>,
}

/// The raw point set of sample `index`: between `d + 1` and `2d + 2` distinct
/// points, sorted.
pub fn sample_points(params: &ScanParams, index: u64) -> Vec<LatticePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index);
    let d = params.dim;
    let count = rng.gen_range(d + 1..=2 * d + 2);
    let points: BTreeSet<LatticePoint> = (0..count)
        .map(|_| {
            LatticePoint::new(
                (0..d)
                    .map(|_| BigInt::from(rng.gen_range(0..=params.box_size)))
                    .collect(),
            )
        })
        .collect();
    points.into_iter().collect()
}

fn run_sample(params: &ScanParams, index: u64, limits: ScanLimits) -> Result<Option<ScanRecord>> {
    let points = sample_points(params, index);
    let Ok(polytope) = LatticePolytope::new(params.dim, points) else {
        return Ok(None);
    };
    let profile = match counting::profile(&polytope, limits) {
        Ok(p) => p,
        Err(Error::BoxLimitExceeded { cells, limit }) => {
            log::warn!("scan sample {index} skipped: {cells} cells exceed the limit of {limit}");
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let castelnuovo = verdict(&profile);
    if castelnuovo == Verdict::NotCastelnuovo && !params.record_all {
        return Ok(None);
    }
    let facets = hull::enumerate_facets(&polytope);
    Ok(Some(ScanRecord {
        sample_index: index,
        seed: params.seed,
        triplet: CastelnuovoTriplet::new(profile.b, profile.c, params.dim),
        nvol: profile.nvol,
        castelnuovo,
        vertices: hull::hull_vertices(&polytope, &facets),
    }))
}

/// Samples random lattice polytopes and records every one attaining the bound,
/// plus those without interior points (verdict undefined). Degenerate samples
/// and samples over the scan limit are skipped.
pub fn scan(params: &ScanParams, limits: ScanLimits) -> Result<Vec<ScanRecord>> {
    if params.dim == 0 || params.box_size == 0 {
        return Err(Error::Domain(format!(
            "scan needs d >= 1 and box >= 1, got d = {}, box = {}",
            params.dim, params.box_size
        )));
    }
    let results: Vec<Option<ScanRecord>> = (0..params.samples)
        .into_par_iter()
        .map(|i| run_sample(params, i, limits))
        .collect::<Result<_>>()?;
    Ok(results.into_iter().flatten().collect())
}

/// Records contradicting the expectation that, for `c >= 2` and `d >= 3`,
/// minimal-volume polytopes have `b <= cd + 2d + 2`.
pub fn conjecture_violations(records: &[ScanRecord]) -> Vec<&ScanRecord> {
    records
        .iter()
        .filter(|r| {
            let t = r.triplet;
            r.castelnuovo == Verdict::Castelnuovo
                && t.d >= 3
                && t.c >= 2
                && t.b > t.c * t.d as u64 + 2 * t.d as u64 + 2
        })
        .collect()
}

fn vertices_json(vertices: &[LatticePoint]) -> String {
    serde_json::to_string(vertices).expect("vertex serialization cannot fail")
}

/// CSV with header `sample_index,b,c,d,nvol,castelnuovo,vertices_json`.
pub fn write_csv<W: Write>(records: &[ScanRecord], out: W) -> Result<()> {
    let io_err = |e: csv::Error| Error::Format(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["sample_index", "b", "c", "d", "nvol", "castelnuovo", "vertices_json"])
        .map_err(io_err)?;
    for r in records {
        w.write_record([
            r.sample_index.to_string(),
            r.triplet.b.to_string(),
            r.triplet.c.to_string(),
            r.triplet.d.to_string(),
            r.nvol.to_string(),
            r.castelnuovo.to_string(),
            vertices_json(&r.vertices),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Format(e.to_string()))
}

/// One JSON object per record.
pub fn write_jsonl<W: Write>(records: &[ScanRecord], mut out: W) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| Error::Format(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Error::Format(e.to_string()))?;
    }
    Ok(())
}
