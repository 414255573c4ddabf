//! Seeded rational specializations of `C(W)` and the rank oracle they give.
//!
//! A generic specialization of `C(W)` realizes `M(W)`, but not every real
//! specialization does, so the oracle is probabilistic: it samples, compares
//! the realized matroid against `matroid_of`, and resamples on disagreement
//! up to a retry bound before reporting an error.

use crate::diagram::{CMatrixPattern, WilsonLoopDiagram};
use crate::error::{Error, Result};
use crate::matroid::{matroid_of, Matroid, MAX_GROUND};
use crate::sets::VertexSet;
use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default number of samples drawn before the oracle gives up.
pub const DEFAULT_ATTEMPTS: usize = 5;

/// A k x n rational matrix following a `CMatrixPattern`: structural zeros are
/// exactly the pattern's zeros, sampled slots are nonzero.
#[derive(Clone, Debug)]
pub struct RealizationSample {
    pattern: CMatrixPattern,
    entries: Vec<Vec<BigRational>>,
}

impl RealizationSample {
    /// Fills the pattern of `C(W)` from a seeded stream: numerators uniform
    /// in `1..=1000`, denominators 1, negated with probability 1/2 when
    /// `signed` is set.
    pub fn draw(d: &WilsonLoopDiagram, rng: &mut ChaCha8Rng, signed: bool) -> Self {
        let pattern = d.c_matrix_pattern();
        let entries = (0..pattern.k())
            .map(|row| {
                (1..=pattern.n())
                    .map(|col| {
                        if pattern.has_entry(row, col) {
                            let mut num: i64 = rng.gen_range(1..=1000);
                            if signed && rng.gen::<bool>() {
                                num = -num;
                            }
                            BigRational::from(BigInt::from(num))
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        RealizationSample { pattern, entries }
    }

    pub fn pattern(&self) -> &CMatrixPattern {
        &self.pattern
    }

    /// Entry at `(row, col)`; `col` is a 1-based vertex.
    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row][col - 1]
    }

    /// Exact rank of the column submatrix indexed by `cols`.
    pub fn column_rank(&self, cols: &VertexSet) -> usize {
        let rows: Vec<Vec<BigRational>> = (0..self.pattern.k())
            .map(|r| cols.iter().map(|c| self.entries[r][c - 1].clone()).collect())
            .collect();
        rational_rank(rows)
    }

    /// The matroid realized by this sample: column sets are independent when
    /// the corresponding submatrix has full column rank.
    pub fn realized_matroid(&self) -> Result<Matroid> {
        let n = self.pattern.n();
        if n > MAX_GROUND {
            return Err(Error::SizeBoundExceeded { n, max: MAX_GROUND });
        }
        let rank = self.column_rank(&VertexSet::full(n));
        let mut bases = Vec::new();
        for mask in 0u64..1 << n {
            if mask.count_ones() as usize == rank {
                let set = VertexSet::from_bits(n, mask);
                if self.column_rank(&set) == rank {
                    bases.push(set.to_vec());
                }
            }
        }
        Matroid::from_bases(n, &bases)
    }
}

/// Gaussian elimination over the rationals.
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = BigRational::one() / rows[rank][col].clone();
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() * inv.clone();
            for c in col..ncols {
                let sub = factor.clone() * rows[rank][c].clone();
                rows[r][c] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Realizes `M(W)` by a seeded rational specialization of `C(W)`.
///
/// Draws up to [`DEFAULT_ATTEMPTS`] samples from the seeded stream; each
/// realized matroid is compared against `matroid_of(d)` and disagreement
/// triggers a resample. Persistent disagreement is an error, never silently
/// ignored.
pub fn realization_rank_oracle(d: &WilsonLoopDiagram, seed: u64) -> Result<Matroid> {
    realization_rank_oracle_with(d, seed, false, DEFAULT_ATTEMPTS)
}

/// [`realization_rank_oracle`] with signed sampling and an explicit retry
/// bound.
pub fn realization_rank_oracle_with(
    d: &WilsonLoopDiagram,
    seed: u64,
    signed: bool,
    attempts: usize,
) -> Result<Matroid> {
    if !d.is_weakly_admissible() {
        return Err(Error::NotWeaklyAdmissible);
    }
    let expected = matroid_of(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts.max(1) {
        let sample = RealizationSample::draw(d, &mut rng, signed);
        let realized = sample.realized_matroid()?;
        if realized == expected {
            return Ok(realized);
        }
    }
    Err(Error::RealizationDisagreement { attempts: attempts.max(1) })
}
