//! Dimension of `closure(B·u)` from the rank of `[b, x] + u` at random `x ∈ u`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::shape::{m_basis, Composition, Root};

pub const DEFAULT_BOUND: i64 = 10_000;
pub const DEFAULT_TRIALS: u32 = 5;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Exact rank by fraction-free elimination.
pub fn rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Dimension of `[b, x] + u` inside `m` for random `x ∈ u`, maximised over
/// `trials` samples with coordinates uniform in `[-bound, bound]`.
///
/// `b` is the full upper triangular algebra. Only the image of `[b, x]` in
/// the coordinates outside `u` contributes beyond `dim u`, so that projection
/// is what gets ranked.
pub fn orbit_closure_dim_with(
    comp: &Composition,
    u_basis: &BTreeSet<Root>,
    trials: u32,
    seed: u64,
    bound: i64,
) -> usize {
    let n = comp.n();
    let excluded: Vec<Root> = m_basis(comp).into_iter().filter(|r| !u_basis.contains(r)).collect();
    if excluded.is_empty() {
        return u_basis.len();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let mut x: BTreeMap<Root, i64> = BTreeMap::new();
        for &r in u_basis {
            x.insert(r, rng.gen_range(-bound..=bound));
        }
        let xv = |p: usize, q: usize| x.get(&(p, q)).copied().unwrap_or(0);
        // [E_ab, x]_{pq} = δ_{pa} x_{bq} - δ_{qb} x_{pa}
        let mut rows = Vec::new();
        for a in 1..=n {
            for b in a..=n {
                let row: Vec<BigInt> = excluded
                    .iter()
                    .map(|&(p, q)| {
                        let mut v = 0;
                        if p == a {
                            v += xv(b, q);
                        }
                        if q == b {
                            v -= xv(p, a);
                        }
                        BigInt::from(v)
                    })
                    .collect();
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
        best = best.max(rank(rows));
        if best == excluded.len() {
            break;
        }
    }
    u_basis.len() + best
}

pub fn orbit_closure_dim(comp: &Composition, u_basis: &BTreeSet<Root>, trials: u32, seed: u64) -> usize {
    orbit_closure_dim_with(comp, u_basis, trials, seed, DEFAULT_BOUND)
}

/// `dim m - dim closure(B·u)`.
pub fn codim(comp: &Composition, u_basis: &BTreeSet<Root>, trials: u32, seed: u64) -> usize {
    m_basis(comp).len() - orbit_closure_dim(comp, u_basis, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(big(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank(big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank(vec![]), 0);
    }

    #[test]
    fn full_space_has_codim_zero() {
        let comp: Composition = "1,2,2,1".parse().unwrap();
        assert_eq!(codim(&comp, &m_basis(&comp), 5, 1), 0);
    }

    #[test]
    fn zero_space() {
        let comp: Composition = "1,1".parse().unwrap();
        assert_eq!(codim(&comp, &BTreeSet::new(), 5, 1), 1);
    }
}
