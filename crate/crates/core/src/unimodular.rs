//! Affine unimodular maps `x -> Ux + t`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::Result;
use crate::lattice::{LatticePoint, LatticePolytope};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMap {
    matrix: Vec<Vec<BigInt>>,
    shift: Vec<BigInt>,
}

impl UnimodularMap {
    pub fn identity(dim: usize) -> Self {
        let matrix = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        UnimodularMap {
            matrix,
            shift: vec![BigInt::zero(); dim],
        }
    }

    /// Returns `None` unless `matrix` is square with determinant `±1`.
    pub fn new(matrix: Vec<Vec<BigInt>>, shift: Vec<BigInt>) -> Option<Self> {
        let n = matrix.len();
        if shift.len() != n || matrix.iter().any(|r| r.len() != n) {
            return None;
        }
        if !linalg::determinant(&matrix).abs().is_one() {
            return None;
        }
        Some(UnimodularMap { matrix, shift })
    }

    /// A random map built from `steps` elementary row operations (row
    /// additions with coefficient ±1, swaps and sign flips), followed by a
    /// translation with entries in `-max_shift..=max_shift`.
    pub fn random<R: Rng + ?Sized>(dim: usize, steps: usize, max_shift: i64, rng: &mut R) -> Self {
        let mut map = Self::identity(dim);
        if dim >= 2 {
            for _ in 0..steps {
                let i = rng.gen_range(0..dim);
                let mut j = rng.gen_range(0..dim - 1);
                if j >= i {
                    j += 1;
                }
                match rng.gen_range(0..4) {
                    0 | 1 => {
                        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                        let src = map.matrix[j].clone();
                        for (a, b) in map.matrix[i].iter_mut().zip(&src) {
                            *a += b * sign;
                        }
                    }
                    2 => map.matrix.swap(i, j),
                    _ => {
                        for a in map.matrix[i].iter_mut() {
                            *a = -&*a;
                        }
                    }
                }
            }
        } else if dim == 1 && rng.gen_bool(0.5) {
            map.matrix[0][0] = -BigInt::one();
        }
        for t in map.shift.iter_mut() {
            *t = BigInt::from(rng.gen_range(-max_shift..=max_shift));
        }
        map
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        let coords = self
            .matrix
            .iter()
            .zip(&self.shift)
            .map(|(row, t)| linalg::dot(row, p.coords()) + t)
            .collect();
        LatticePoint::new(coords)
    }

    pub fn apply_polytope(&self, p: &LatticePolytope) -> Result<LatticePolytope> {
        LatticePolytope::new(p.dim(), p.points().iter().map(|x| self.apply(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_maps_are_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 1..6 {
            for _ in 0..20 {
                let m = UnimodularMap::random(dim, 12, 5, &mut rng);
                assert!(linalg::determinant(m.matrix()).abs().is_one());
            }
        }
    }

    #[test]
    fn rejects_non_unimodular() {
        let two = vec![vec![BigInt::from(2)]];
        assert!(UnimodularMap::new(two, vec![BigInt::zero()]).is_none());
        let swap = vec![
            vec![BigInt::zero(), BigInt::one()],
            vec![BigInt::one(), BigInt::zero()],
        ];
        assert!(UnimodularMap::new(swap, vec![BigInt::one(), BigInt::zero()]).is_some());
    }
}
