//! Frequent itemset mining with incremental maintenance.
//!
//! Mine the frequent itemsets `F` of a database once, then keep them current
//! as batches of transactions arrive, even when the support threshold changes
//! between runs. [`maintain()`](maintain::maintain) reuses the stored counts
//! and revisits the original database only for itemsets that could actually
//! have become frequent.
//!
//! ```
//! use imsc::{fixtures, maintain, mine_apriori, Threshold};
//!
//! let (mut dict, bd) = fixtures::bd10();
//! let inc = fixtures::bd_1(&mut dict);
//! let f = mine_apriori(&bd, Threshold::percent(30)?);
//!
//! let (f_new, plan) = maintain(&f, &bd, &inc, Threshold::percent(35)?)?;
//! assert_eq!(f_new, mine_apriori(&bd.union(&inc), Threshold::percent(35)?));
//! assert_eq!(plan.scenario.tag(), "mixed");
//! # Ok::<(), imsc::Error>(())
//! ```

pub mod apriori;
pub mod bench;
pub mod datagen;
pub mod db;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod itemset;
pub mod maintain;
pub mod rules;
pub mod store;
pub mod threshold;

pub use apriori::{apriori_gen, mine_apriori, mine_bruteforce, CandidateSet};
pub use bench::{parse_sweep, run_bench, BenchOptions, BenchRow};
pub use datagen::{generate_db, GenParams};
pub use db::{SupportCounts, Transaction, TransactionDB};
pub use error::{Error, Result};
pub use itemset::{canonical_itemset, is_subset, ItemDictionary, ItemId, Itemset};
pub use maintain::{
    classify_itemsets, classify_scenario, compute_cpt, maintain, maintain_with, pruning_cpt,
    ItemsetClassification, MaintainOptions, Maintenance, MaintenancePlan, MaintenanceStats,
    Scenario,
};
pub use rules::{generate_rules, Rule};
pub use store::FrequentSetStore;
pub use threshold::{is_frequent, meets_threshold, Rational, Threshold};
