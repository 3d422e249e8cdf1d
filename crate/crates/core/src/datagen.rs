//! Seeded synthetic basket data in the style of the IBM Quest generator.
//!
//! Simplified model: no item taxonomy and a single corruption mechanism.
//!
//! 1. `n_patterns` potential itemsets are drawn. Sizes are Poisson around
//!    `avg_pattern_len` (at least 1). Each pattern reuses an exponentially
//!    distributed fraction (mean 1/2) of the previous pattern's items and
//!    fills the rest uniformly from `n_items`.
//! 2. Each pattern gets a pick weight drawn from a unit exponential and a
//!    corruption level drawn from `N(corruption_mean, 0.1)` clamped to `[0, 1]`.
//! 3. Each transaction has a Poisson size around `avg_tx_len` (at least 1)
//!    and is filled with weighted pattern picks. A picked pattern loses its
//!    last item while a uniform draw stays below its corruption level. A
//!    pattern that would overflow the transaction is added anyway half of
//!    the time, otherwise it is carried over to the next transaction.
//!
//! Randomness comes from ChaCha8 seeded with `seed`, so output is identical
//! across platforms for identical parameters.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Exp1, Normal, Poisson};

use crate::db::{Transaction, TransactionDB};
use crate::error::Error;
use crate::itemset::{ItemDictionary, Itemset};

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub n_transactions: usize,
    pub avg_tx_len: f64,
    pub avg_pattern_len: f64,
    pub n_patterns: usize,
    pub n_items: usize,
    pub corruption_mean: f64,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n_transactions: 100_000,
            avg_tx_len: 5.0,
            avg_pattern_len: 2.0,
            n_patterns: 2000,
            n_items: 1000,
            corruption_mean: 0.5,
            seed: 0,
        }
    }
}

impl GenParams {
    /// `T<avg_tx_len>.I<avg_pattern_len>.D<n_transactions>` with the remaining defaults.
    pub fn quest(avg_tx_len: f64, avg_pattern_len: f64, n_transactions: usize, seed: u64) -> Self {
        GenParams {
            n_transactions,
            avg_tx_len,
            avg_pattern_len,
            seed,
            ..Default::default()
        }
    }

    /// Rejects unusable parameters; returns advisory warnings otherwise.
    pub fn validate(&self) -> Result<Vec<String>, Error> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.avg_tx_len) {
            return Err(Error::InvalidParams(format!(
                "average transaction length must be positive, got {}",
                self.avg_tx_len
            )));
        }
        if !positive(self.avg_pattern_len) {
            return Err(Error::InvalidParams(format!(
                "average pattern length must be positive, got {}",
                self.avg_pattern_len
            )));
        }
        if self.n_patterns == 0 || self.n_items == 0 {
            return Err(Error::InvalidParams(
                "pattern and item counts must be positive".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.corruption_mean) {
            return Err(Error::InvalidParams(format!(
                "corruption mean must lie in [0, 1], got {}",
                self.corruption_mean
            )));
        }
        let mut warnings = Vec::new();
        if self.avg_pattern_len > self.avg_tx_len {
            warnings.push(format!(
                "average pattern length {} exceeds average transaction length {}",
                self.avg_pattern_len, self.avg_tx_len
            ));
        }
        Ok(warnings)
    }
}

struct Pattern {
    items: Vec<u32>,
    corruption: f64,
}

/// Generates a database, interning items as their decimal numbers.
pub fn generate_db(p: &GenParams, dict: &mut ItemDictionary) -> Result<TransactionDB, Error> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    if p.n_transactions == 0 {
        return Ok(TransactionDB::default());
    }

    let patterns = draw_patterns(p, &mut rng)?;
    let cumulative = cumulative_weights(&patterns, &mut rng);
    let tx_len = Poisson::new(p.avg_tx_len).map_err(|e| Error::InvalidParams(e.to_string()))?;

    let mut transactions = Vec::with_capacity(p.n_transactions);
    let mut carried: Option<Vec<u32>> = None;
    for _ in 0..p.n_transactions {
        let size = (tx_len.sample(&mut rng) as usize).max(1);
        let mut items: BTreeSet<u32> = BTreeSet::new();
        while items.len() < size {
            let picked = match carried.take() {
                Some(pat) => pat,
                None => {
                    let pat = &patterns[pick(&cumulative, &mut rng)];
                    corrupt(pat, &mut rng)
                }
            };
            if !items.is_empty() && items.len() + picked.len() > size {
                if rng.random_bool(0.5) {
                    items.extend(picked);
                } else {
                    carried = Some(picked);
                }
                break;
            }
            items.extend(picked);
        }
        let ids = items
            .into_iter()
            .map(|item| dict.intern(&item.to_string()))
            .collect();
        transactions.push(Transaction::new(Itemset::from_ids(ids)));
    }
    Ok(TransactionDB::new(transactions))
}

fn draw_patterns(p: &GenParams, rng: &mut ChaCha8Rng) -> Result<Vec<Pattern>, Error> {
    let size_dist =
        Poisson::new(p.avg_pattern_len).map_err(|e| Error::InvalidParams(e.to_string()))?;
    let overlap = Exp::<f64>::new(2.0).map_err(|e| Error::InvalidParams(e.to_string()))?;
    let corruption =
        Normal::new(p.corruption_mean, 0.1).map_err(|e| Error::InvalidParams(e.to_string()))?;

    let mut patterns: Vec<Pattern> = Vec::with_capacity(p.n_patterns);
    for i in 0..p.n_patterns {
        let size = (size_dist.sample(rng) as usize).clamp(1, p.n_items);
        let mut items: BTreeSet<u32> = BTreeSet::new();
        if i > 0 {
            let prev = &patterns[i - 1].items;
            let frac = overlap.sample(rng).min(1.0);
            let reuse = ((frac * size as f64).round() as usize).min(prev.len());
            let mut pool = prev.clone();
            for _ in 0..reuse {
                let j = rng.random_range(0..pool.len());
                items.insert(pool.swap_remove(j));
            }
        }
        while items.len() < size {
            items.insert(rng.random_range(0..p.n_items as u32));
        }
        // Corruption drops from the end, so the order within a pattern matters.
        let mut items: Vec<u32> = items.into_iter().collect();
        items.shuffle(rng);
        patterns.push(Pattern {
            items,
            corruption: corruption.sample(rng).clamp(0.0, 1.0),
        });
    }
    Ok(patterns)
}

fn cumulative_weights(patterns: &[Pattern], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut acc = 0.0;
    let mut cumulative: Vec<f64> = patterns
        .iter()
        .map(|_| {
            let w: f64 = Exp1.sample(rng);
            acc += w;
            acc
        })
        .collect();
    for c in &mut cumulative {
        *c /= acc;
    }
    cumulative
}

fn pick(cumulative: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.random();
    cumulative
        .partition_point(|&c| c < u)
        .min(cumulative.len() - 1)
}

fn corrupt(pattern: &Pattern, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut keep = pattern.items.len();
    while keep > 0 && rng.random::<f64>() < pattern.corruption {
        keep -= 1;
    }
    pattern.items[..keep].to_vec()
}
