//! Incremental maintenance of frequent itemsets under a support-threshold change.
//!
//! Given the frequent itemsets `F` of a database `BD` (cardinality `D`) at
//! threshold `s`, and an increment `bd` (cardinality `d`), these procedures
//! compute the frequent itemsets of `BD ∪ bd` at a new threshold `s'`.
//!
//! An itemset outside `F` has at most `m − 1` occurrences in `BD`, where `m`
//! is the smallest count that qualified for `F`. To reach `s' × (D + d)` in
//! the union it therefore needs at least
//!
//! ```text
//! CPT = s'·(D + d) − m + 1
//! ```
//!
//! occurrences in `bd`. When `s·D` is an integer, `m = s·D` and this is
//! `s'·d + (s' − s)·D + 1`. The sign of CPT and its position relative to `d`
//! decide how much of `BD` must be revisited:
//!
//! * `CPT ≤ 0`: every old frequent itemset stays frequent, but any itemset
//!   might become frequent, so candidates are counted in `BD` unpruned.
//! * `0 < CPT ≤ d`: candidates are pruned by their `bd` count before `BD`
//!   is revisited.
//! * `CPT > d`: nothing new can become frequent and `BD` is never read.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::apriori::apriori_gen;
use crate::db::TransactionDB;
use crate::error::Error;
use crate::itemset::Itemset;
use crate::store::FrequentSetStore;
use crate::threshold::{Rational, Threshold};

/// How many stored itemsets [`maintain`] recounts against `BD` by default.
pub const DEFAULT_VALIDATION_SAMPLE: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    /// `CPT ≤ 0`: no old frequent itemset can be lost.
    NoLosersPossible,
    /// `0 < CPT ≤ d`.
    Mixed,
    /// `CPT > d`: no new frequent itemset can appear.
    NoWinnersPossible,
}

impl Scenario {
    pub fn tag(self) -> &'static str {
        match self {
            Scenario::NoLosersPossible => "no_losers",
            Scenario::Mixed => "mixed",
            Scenario::NoWinnersPossible => "no_winners",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `s'·d + (s' − s)·D + 1`, exactly.
pub fn compute_cpt(s: Threshold, s_prime: Threshold, big_d: u64, little_d: u64) -> Rational {
    let d = Rational::from_integer(little_d as i128);
    let big = Rational::from_integer(big_d as i128);
    s_prime.ratio() * d + (s_prime.ratio() - s.ratio()) * big + Rational::one()
}

/// The CPT that pruning and dispatch actually use.
///
/// Substitutes the smallest qualifying count `⌈s·D⌉` (at least 1) for `s·D`,
/// and likewise requires the union count to be at least 1. Equal to
/// [`compute_cpt`] whenever `s·D` is a positive integer and `s'·(D+d) ≥ 1`.
pub fn pruning_cpt(s: Threshold, s_prime: Threshold, big_d: u64, little_d: u64) -> Rational {
    let needed = s_prime.of(big_d + little_d).max(Rational::one());
    let old_min = Rational::from_integer(s.min_count(big_d) as i128);
    needed - old_min + Rational::one()
}

pub fn classify_scenario(cpt: Rational, little_d: u64) -> Scenario {
    if cpt <= Rational::zero() {
        Scenario::NoLosersPossible
    } else if cpt > Rational::from_integer(little_d as i128) {
        Scenario::NoWinnersPossible
    } else {
        Scenario::Mixed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaintenancePlan {
    pub s: Threshold,
    pub s_prime: Threshold,
    pub big_d: u64,
    pub little_d: u64,
    /// `s'·d + (s' − s)·D + 1`.
    pub cpt: Rational,
    /// Minimum `bd` count a winner needs; drives pruning and `scenario`.
    pub pruning_cpt: Rational,
    /// `s' × (D + d)`.
    pub min_supp: Rational,
    pub scenario: Scenario,
    min_count: u64,
    win_floor: i128,
}

impl MaintenancePlan {
    pub fn new(s: Threshold, s_prime: Threshold, big_d: u64, little_d: u64) -> Self {
        let pruning = pruning_cpt(s, s_prime, big_d, little_d);
        MaintenancePlan {
            s,
            s_prime,
            big_d,
            little_d,
            cpt: compute_cpt(s, s_prime, big_d, little_d),
            pruning_cpt: pruning,
            min_supp: s_prime.of(big_d + little_d),
            scenario: classify_scenario(pruning, little_d),
            min_count: s_prime.min_count(big_d + little_d),
            win_floor: pruning.ceil().to_integer(),
        }
    }

    pub fn total(&self) -> u64 {
        self.big_d + self.little_d
    }

    fn frequent(&self, count: u64) -> bool {
        count >= self.min_count
    }

    fn may_win(&self, inc_count: u64) -> bool {
        inc_count as i128 >= self.win_floor
    }
}

/// Counters collected while a procedure runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MaintenanceStats {
    pub big_db_passes: u64,
    pub inc_db_passes: u64,
    /// Candidates whose `bd` count was examined (old frequent itemsets excluded).
    pub candidates_generated: u64,
    /// Candidates discarded by the CPT before revisiting `BD`.
    pub candidates_pruned: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaintainOptions {
    /// Recount a sample of the stored itemsets against `BD` before maintaining.
    pub validate: bool,
    pub validation_sample: usize,
    pub seed: u64,
}

impl Default for MaintainOptions {
    fn default() -> Self {
        MaintainOptions {
            validate: true,
            validation_sample: DEFAULT_VALIDATION_SAMPLE,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Maintenance {
    pub store: FrequentSetStore,
    pub plan: MaintenancePlan,
    /// Passes exclude the validation recount.
    pub stats: MaintenanceStats,
}

/// Maintains `f` for `big_db ∪ inc_db` at `s_prime` with default options.
pub fn maintain(
    f: &FrequentSetStore,
    big_db: &TransactionDB,
    inc_db: &TransactionDB,
    s_prime: Threshold,
) -> Result<(FrequentSetStore, MaintenancePlan), Error> {
    let m = maintain_with(f, big_db, inc_db, s_prime, &MaintainOptions::default())?;
    Ok((m.store, m.plan))
}

pub fn maintain_with(
    f: &FrequentSetStore,
    big_db: &TransactionDB,
    inc_db: &TransactionDB,
    s_prime: Threshold,
    opts: &MaintainOptions,
) -> Result<Maintenance, Error> {
    if f.base_cardinality() != big_db.cardinality() {
        return Err(Error::InconsistentStore(format!(
            "store describes {} transactions, database has {}",
            f.base_cardinality(),
            big_db.cardinality()
        )));
    }
    if opts.validate {
        validate_sample(f, big_db, opts)?;
    }

    let plan = MaintenancePlan::new(
        f.base_threshold(),
        s_prime,
        big_db.cardinality(),
        inc_db.cardinality(),
    );
    let big_before = big_db.scan_count();
    let inc_before = inc_db.scan_count();
    let mut stats = MaintenanceStats::default();

    let store = match plan.scenario {
        Scenario::Mixed => mixed(f, big_db, inc_db, &plan, &mut stats),
        Scenario::NoLosersPossible => no_losers(f, big_db, inc_db, &plan, &mut stats),
        Scenario::NoWinnersPossible => no_winners(f, inc_db, &plan),
    };

    stats.big_db_passes = big_db.scan_count() - big_before;
    stats.inc_db_passes = inc_db.scan_count() - inc_before;
    Ok(Maintenance { store, plan, stats })
}

fn validate_sample(
    f: &FrequentSetStore,
    big_db: &TransactionDB,
    opts: &MaintainOptions,
) -> Result<(), Error> {
    f.validate(None)
        .map_err(|e| Error::InconsistentStore(e.to_string()))?;
    if f.is_empty() || opts.validation_sample == 0 {
        return Ok(());
    }
    let all: Vec<(&Itemset, u64)> = f.iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sample: Vec<(&Itemset, u64)> = all
        .choose_multiple(&mut rng, opts.validation_sample)
        .copied()
        .collect();
    let targets: Vec<Itemset> = sample.iter().map(|(x, _)| (*x).clone()).collect();
    let actual = big_db.count_supports(&targets);
    for (x, stored) in sample {
        let real = actual[x];
        if real != stored {
            return Err(Error::InconsistentStore(format!(
                "{x} is stored with count {stored} but occurs {real} times"
            )));
        }
    }
    Ok(())
}

/// The procedure for `0 < CPT ≤ d`.
pub fn imsc_mixed(
    f: &FrequentSetStore,
    big_db: &TransactionDB,
    inc_db: &TransactionDB,
    plan: &MaintenancePlan,
) -> FrequentSetStore {
    mixed(f, big_db, inc_db, plan, &mut MaintenanceStats::default())
}

/// The procedure for `CPT ≤ 0`.
pub fn imsc_no_losers(
    f: &FrequentSetStore,
    big_db: &TransactionDB,
    inc_db: &TransactionDB,
    plan: &MaintenancePlan,
) -> FrequentSetStore {
    no_losers(f, big_db, inc_db, plan, &mut MaintenanceStats::default())
}

/// The procedure for `CPT > d`. Never reads `BD`, so it does not take it.
pub fn imsc_no_winners(
    f: &FrequentSetStore,
    inc_db: &TransactionDB,
    plan: &MaintenancePlan,
) -> FrequentSetStore {
    no_winners(f, inc_db, plan)
}

fn inc_count(counts: &[u64], id: u32) -> u64 {
    counts.get(id as usize).copied().unwrap_or(0)
}

/// Old frequent 1-itemsets with their counts in `BD ∪ bd`.
fn updated_level_one(f: &FrequentSetStore, inc_items: &[u64]) -> Vec<(Itemset, u64)> {
    f.level(1)
        .into_iter()
        .flatten()
        .map(|(x, &c)| (x.clone(), c + inc_count(inc_items, x.items()[0])))
        .collect()
}

fn mixed(
    f: &FrequentSetStore,
    big_db: &TransactionDB,
    inc_db: &TransactionDB,
    plan: &MaintenancePlan,
    stats: &mut MaintenanceStats,
) -> FrequentSetStore {
    let mut out = FrequentSetStore::new(plan.total(), plan.s_prime);

    let inc_items = inc_db.count_items();
    let mut level: Vec<(Itemset, u64)> = updated_level_one(f, &inc_items)
        .into_iter()
        .filter(|&(_, c)| plan.frequent(c))
        .collect();

    // C1: items seen in bd that were not frequent in BD.
    let old_items = f.level(1);
    let fresh: Vec<(Itemset, u64)> = inc_items
        .iter()
        .enumerate()
        .filter(|&(id, &c)| c > 0 && !old_items.is_some_and(|l| l.contains_key(&[id as u32][..])))
        .map(|(id, &c)| (Itemset::singleton(id as u32), c))
        .collect();
    level.extend(complete_candidates(fresh, big_db, plan, stats));

    level_wise(f, big_db, inc_db, plan, stats, level, &mut out);
    out
}

fn no_losers(
    f: &FrequentSetStore,
    big_db: &TransactionDB,
    inc_db: &TransactionDB,
    plan: &MaintenancePlan,
    stats: &mut MaintenanceStats,
) -> FrequentSetStore {
    let mut out = FrequentSetStore::new(plan.total(), plan.s_prime);

    let inc_items = inc_db.count_items();
    let mut level: Vec<(Itemset, u64)> = updated_level_one(f, &inc_items)
        .into_iter()
        .filter(|&(_, c)| plan.frequent(c))
        .collect();

    // Any item outside F1 may win, including items absent from bd, so the
    // BD pass counts every item and the two counts are merged afterwards.
    let big_items = big_db.count_items();
    let old_items = f.level(1);
    let universe = inc_items.len().max(big_items.len());
    for id in 0..universe as u32 {
        if old_items.is_some_and(|l| l.contains_key(&[id][..])) {
            continue;
        }
        let total = inc_count(&inc_items, id) + inc_count(&big_items, id);
        if total == 0 {
            continue;
        }
        stats.candidates_generated += 1;
        if plan.frequent(total) {
            level.push((Itemset::singleton(id), total));
        }
    }

    level_wise(f, big_db, inc_db, plan, stats, level, &mut out);
    out
}

/// Counts the CPT survivors among `candidates` (which carry their `bd`
/// counts) in `BD`, returning those frequent in the union. Skips the `BD`
/// pass when nothing survives.
fn complete_candidates(
    candidates: Vec<(Itemset, u64)>,
    big_db: &TransactionDB,
    plan: &MaintenancePlan,
    stats: &mut MaintenanceStats,
) -> Vec<(Itemset, u64)> {
    stats.candidates_generated += candidates.len() as u64;
    let before = candidates.len();
    let survivors: Vec<(Itemset, u64)> = candidates
        .into_iter()
        .filter(|&(_, c)| plan.may_win(c))
        .collect();
    stats.candidates_pruned += (before - survivors.len()) as u64;
    if survivors.is_empty() {
        return Vec::new();
    }

    let targets: Vec<Itemset> = survivors.iter().map(|(x, _)| x.clone()).collect();
    let big_counts = big_db.count_distinct(&targets);
    survivors
        .into_iter()
        .zip(big_counts)
        .map(|((x, c), b)| (x, c + b))
        .filter(|&(_, c)| plan.frequent(c))
        .collect()
}

/// Levels k ≥ 2, shared by the two procedures that generate candidates.
fn level_wise(
    f: &FrequentSetStore,
    big_db: &TransactionDB,
    inc_db: &TransactionDB,
    plan: &MaintenancePlan,
    stats: &mut MaintenanceStats,
    mut level: Vec<(Itemset, u64)>,
    out: &mut FrequentSetStore,
) {
    let mut k = 1;
    while !level.is_empty() {
        level.sort_unstable();
        let prev: Vec<Itemset> = level.iter().map(|(x, _)| x.clone()).collect();
        out.extend_level(level);
        k += 1;

        let candidates = apriori_gen(&prev, k).into_itemsets();
        let inc_counts = inc_db.count_distinct(&candidates);

        // Only old frequent itemsets that are also candidates can persist;
        // their BD counts are already known.
        let mut fresh = Vec::new();
        level = Vec::new();
        for (x, c) in candidates.into_iter().zip(inc_counts) {
            match f.count(&x) {
                Some(old) => {
                    if plan.frequent(old + c) {
                        level.push((x, old + c));
                    }
                }
                None => fresh.push((x, c)),
            }
        }
        level.extend(complete_candidates(fresh, big_db, plan, stats));
    }
}

fn no_winners(
    f: &FrequentSetStore,
    inc_db: &TransactionDB,
    plan: &MaintenancePlan,
) -> FrequentSetStore {
    let mut out = FrequentSetStore::new(plan.total(), plan.s_prime);

    let inc_items = inc_db.count_items();
    let mut level: Vec<(Itemset, u64)> = updated_level_one(f, &inc_items)
        .into_iter()
        .filter(|&(_, c)| plan.frequent(c))
        .collect();

    let mut k = 1;
    while !level.is_empty() {
        out.extend_level(level);
        k += 1;
        let Some(old_level) = f.level(k) else {
            break;
        };
        let targets: Vec<Itemset> = old_level.keys().cloned().collect();
        let inc_counts = inc_db.count_distinct(&targets);
        level = targets
            .into_iter()
            .zip(inc_counts)
            .map(|(x, c)| {
                let total = f.count(&x).unwrap_or(0) + c;
                (x, total)
            })
            .filter(|&(_, c)| plan.frequent(c))
            .collect();
    }
    out
}

/// Winners, persistents and losers between two stores, by itemset only.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ItemsetClassification {
    pub winners: BTreeSet<Itemset>,
    pub persistents: BTreeSet<Itemset>,
    pub losers: BTreeSet<Itemset>,
}

pub fn classify_itemsets(
    f_old: &FrequentSetStore,
    f_new: &FrequentSetStore,
) -> ItemsetClassification {
    let old = f_old.itemsets();
    let new = f_new.itemsets();
    ItemsetClassification {
        winners: new.difference(&old).cloned().collect(),
        persistents: new.intersection(&old).cloned().collect(),
        losers: old.difference(&new).cloned().collect(),
    }
}
