//! Brute-force reference computations in `i128`, written without any of the
//! library's geometry so they can serve as independent oracles.
#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use lattice_castelnuovo::LatticePolytope;
use num_traits::ToPrimitive;

pub type Pt = Vec<i128>;

pub fn to_i128(p: &LatticePolytope) -> Vec<Pt> {
    p.points()
        .iter()
        .map(|x| x.coords().iter().map(|v| v.to_i128().unwrap()).collect())
        .collect()
}

/// Leibniz expansion.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let prod: i128 = (0..n).map(|i| m[i][perm[i]]).product();
            if inversions % 2 == 0 {
                prod
            } else {
                -prod
            }
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Facet hyperplanes found by testing every `d`-subset with cofactor normals.
pub fn facets(vertices: &[Pt]) -> BTreeSet<(Pt, i128)> {
    let d = vertices[0].len();
    let mut out = BTreeSet::new();
    for subset in vertices.iter().combinations(d) {
        let rows: Vec<Pt> = subset[1..]
            .iter()
            .map(|v| v.iter().zip(subset[0]).map(|(a, b)| a - b).collect())
            .collect();
        let mut normal: Pt = (0..d)
            .map(|k| {
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|r| (0..d).filter(|&i| i != k).map(|i| r[i]).collect())
                    .collect();
                let m = if minor.is_empty() { 1 } else { det(&minor) };
                if k % 2 == 0 {
                    m
                } else {
                    -m
                }
            })
            .collect();
        let g = normal.iter().fold(0, |g, &x| gcd(g, x));
        if g == 0 {
            continue;
        }
        normal.iter_mut().for_each(|x| *x /= g);
        let dot = |v: &Pt| normal.iter().zip(v).map(|(a, b)| a * b).sum::<i128>();
        let off = dot(subset[0]);
        let vals: Vec<i128> = vertices.iter().map(dot).collect();
        if vals.iter().all(|&v| v <= off) {
            out.insert((normal, off));
        } else if vals.iter().all(|&v| v >= off) {
            out.insert((normal.iter().map(|x| -x).collect(), -off));
        }
    }
    out
}

/// Every full-dimensional simplex spanned by the vertices, stored as base
/// point, adjugate of the edge matrix and its determinant. A point lies in
/// `conv(vertices)` iff it has nonnegative barycentric coordinates in one of
/// them (Carathéodory).
pub struct SimplexCover {
    simplices: Vec<(Pt, Vec<Vec<i128>>, i128)>,
}

impl SimplexCover {
    pub fn new(vertices: &[Pt]) -> Self {
        let d = vertices[0].len();
        let simplices = vertices
            .iter()
            .combinations(d + 1)
            .filter_map(|s| {
                // columns v_i - v_0
                let m: Vec<Vec<i128>> = (0..d).map(|r| (1..=d).map(|c| s[c][r] - s[0][r]).collect()).collect();
                let full = det(&m);
                if full == 0 {
                    return None;
                }
                let adj: Vec<Vec<i128>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| {
                                let minor: Vec<Vec<i128>> = (0..d)
                                    .filter(|&r| r != j)
                                    .map(|r| (0..d).filter(|&c| c != i).map(|c| m[r][c]).collect())
                                    .collect();
                                let v = if minor.is_empty() { 1 } else { det(&minor) };
                                if (i + j) % 2 == 0 {
                                    v
                                } else {
                                    -v
                                }
                            })
                            .collect()
                    })
                    .collect();
                Some((s[0].clone(), adj, full))
            })
            .collect();
        SimplexCover { simplices }
    }

    pub fn contains(&self, x: &[i128]) -> bool {
        self.simplices.iter().any(|(base, adj, full)| {
            let rhs: Pt = x.iter().zip(base).map(|(a, b)| a - b).collect();
            let mut sum = 0;
            for row in adj {
                let num = row.iter().zip(&rhs).map(|(a, b)| a * b).sum::<i128>() * full.signum();
                if num < 0 {
                    return false;
                }
                sum += num;
            }
            sum <= full.abs()
        })
    }
}

pub fn contains(vertices: &[Pt], x: &[i128]) -> bool {
    SimplexCover::new(vertices).contains(x)
}

const NUDGE: i128 = 100_003;

/// Interior iff every axis nudge by `1/NUDGE` stays inside; exact as long as
/// `NUDGE` exceeds every facet-normal coefficient.
pub struct InteriorTest(SimplexCover);

impl InteriorTest {
    pub fn new(vertices: &[Pt]) -> Self {
        let scaled: Vec<Pt> = vertices.iter().map(|v| v.iter().map(|a| a * NUDGE).collect()).collect();
        InteriorTest(SimplexCover::new(&scaled))
    }

    pub fn is_interior(&self, x: &[i128]) -> bool {
        let base: Pt = x.iter().map(|a| a * NUDGE).collect();
        (0..x.len()).all(|i| {
            [-1, 1].iter().all(|&s| {
                let mut y = base.clone();
                y[i] += s;
                self.0.contains(&y)
            })
        })
    }
}

pub fn is_interior(vertices: &[Pt], x: &[i128]) -> bool {
    InteriorTest::new(vertices).is_interior(x)
}

fn bounding_box(vertices: &[Pt], t: i128) -> Vec<(i128, i128)> {
    let d = vertices[0].len();
    (0..d)
        .map(|k| {
            let lo = vertices.iter().map(|v| v[k]).min().unwrap() * t;
            let hi = vertices.iter().map(|v| v[k]).max().unwrap() * t;
            (lo, hi)
        })
        .collect()
}

fn box_points(bounds: &[(i128, i128)]) -> impl Iterator<Item = Pt> + '_ {
    bounds.iter().map(|&(lo, hi)| lo..=hi).multi_cartesian_product()
}

/// `(b, c)` by scanning the bounding box.
pub fn boundary_interior(vertices: &[Pt]) -> (u64, u64) {
    let (mut b, mut c) = (0, 0);
    let cover = SimplexCover::new(vertices);
    let inner = InteriorTest::new(vertices);
    for x in box_points(&bounding_box(vertices, 1)) {
        if cover.contains(&x) {
            if inner.is_interior(&x) {
                c += 1;
            } else {
                b += 1;
            }
        }
    }
    (b, c)
}

/// `|tP ∩ Z^d|` for `t = 0..=max_t`.
pub fn dilation_counts(vertices: &[Pt], max_t: i128) -> Vec<u64> {
    let mut out = vec![1];
    for t in 1..=max_t {
        let dilated: Vec<Pt> = vertices.iter().map(|v| v.iter().map(|a| a * t).collect()).collect();
        let cover = SimplexCover::new(&dilated);
        let n = box_points(&bounding_box(vertices, t))
            .filter(|x| cover.contains(x))
            .count();
        out.push(n as u64);
    }
    out
}

/// `Δ^d L(0)`.
pub fn nvol_from_counts(counts: &[u64], d: usize) -> i128 {
    let mut binom: i128 = 1;
    let mut acc: i128 = 0;
    for k in 0..=d {
        let term = binom * counts[k] as i128;
        acc += if (d - k) % 2 == 0 { term } else { -term };
        binom = binom * (d - k) as i128 / (k + 1) as i128;
    }
    acc
}

/// `(b, c, nvol)` entirely from the brute-force routines.
pub fn profile(p: &LatticePolytope) -> (u64, u64, i128) {
    let v = to_i128(p);
    let (b, c) = boundary_interior(&v);
    let nvol = nvol_from_counts(&dilation_counts(&v, p.dim() as i128), p.dim());
    (b, c, nvol)
}
