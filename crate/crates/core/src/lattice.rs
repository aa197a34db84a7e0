//! Lattice points, validated lattice polytopes and their JSON form.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Exact rational value, always kept in lowest terms with a positive denominator.
pub type RationalValue = num_rational::BigRational;

/// A point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(Vec<BigInt>);

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); dim])
    }

    /// The `i`-th canonical unit vector (0-based) of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut coords = vec![BigInt::zero(); dim];
        coords[i] = BigInt::from(1);
        LatticePoint(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn sub(&self, other: &LatticePoint) -> Vec<BigInt> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<BigInt>> for LatticePoint {
    fn from(coords: Vec<BigInt>) -> Self {
        LatticePoint(coords)
    }
}

/// Rank of the difference vectors `p_i - p_0`.
pub fn affine_rank(points: &[LatticePoint]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let dim = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let rows: Vec<Vec<BigInt>> = points[1..].iter().map(|p| p.sub(first)).collect();
    Ok(linalg::rank(&rows))
}

/// A full-dimensional lattice polytope given by a list of integer points.
///
/// The list is the declared vertex set; points that turn out not to be
/// vertices of the convex hull are tolerated, duplicates are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl LatticePolytope {
    /// Validates `points` as the vertex list of a `dim`-dimensional polytope.
    pub fn new(dim: usize, points: Vec<LatticePoint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("polytope dimension must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::DuplicateVertex(p.to_string()));
            }
        }
        let rank = affine_rank(&points)?;
        if rank != dim {
            return Err(Error::NotFullDimensional { dim, rank });
        }
        Ok(LatticePolytope { dim, points })
    }

    pub fn from_i64s(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(dim, points.iter().map(|p| LatticePoint::from_i64s(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// The `t`-fold dilation, every point multiplied by `t >= 1`.
    pub fn dilate(&self, t: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::Domain("dilation factor must be positive".into()));
        }
        let k = BigInt::from(t);
        Ok(LatticePolytope {
            dim: self.dim,
            points: self.points.iter().map(|p| p.scale(&k)).collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polytope serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Same as [`LatticePolytope::new`].
pub fn validate_polytope(dim: usize, points: Vec<LatticePoint>) -> Result<LatticePolytope> {
    LatticePolytope::new(dim, points)
}

/// Integer in the interchange format: a JSON number when `|x| < 2^53`,
/// otherwise a decimal string. Both forms are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

const SAFE_JSON_BOUND: i64 = 1 << 53;

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() < SAFE_JSON_BOUND => serializer.serialize_i64(v),
            _ => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonInt, E> {
                Err(E::custom(format!("expected an integer, found {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("invalid integer string {v:?}")))
            }
        }

        deserializer.deserialize_any(IntVisitor)
    }
}

pub(crate) fn serialize_bigint<S: Serializer>(x: &BigInt, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    JsonInt(x.clone()).serialize(serializer)
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<Vec<JsonInt>>,
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&JsonInt(x.clone()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<JsonInt>::deserialize(deserializer)?;
        Ok(LatticePoint(raw.into_iter().map(|x| x.0).collect()))
    }
}

impl Serialize for LatticePolytope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeJson {
            dim: self.dim,
            vertices: self
                .points
                .iter()
                .map(|p| p.0.iter().cloned().map(JsonInt).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticePolytope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolytopeJson::deserialize(deserializer)?;
        let points = raw
            .vertices
            .into_iter()
            .map(|v| LatticePoint(v.into_iter().map(|x| x.0).collect()))
            .collect();
        LatticePolytope::new(raw.dim, points).map_err(de::Error::custom)
    }
}
