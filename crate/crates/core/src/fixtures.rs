//! The ten-transaction worked example and its increments.
//!
//! Items are single letters, so itemsets can be written as strings like `"ABC"`.

use crate::db::{Transaction, TransactionDB};
use crate::itemset::{ItemDictionary, Itemset};
use crate::store::FrequentSetStore;
use crate::threshold::Threshold;

pub const BD10: [&str; 10] = ["ABC", "ABC", "ABCD", "AB", "AC", "BCD", "CD", "D", "A", "A"];
pub const BD_1: [&str; 3] = ["ABD", "BD", "BCD"];
pub const BD_23: [&str; 3] = ["AB", "BC", "C"];

/// Interns the letters of `letters` and returns their itemset.
pub fn set(dict: &mut ItemDictionary, letters: &str) -> Itemset {
    Itemset::from_ids(
        letters
            .chars()
            .map(|c| dict.intern(c.encode_utf8(&mut [0; 4])))
            .collect(),
    )
}

/// Transactions written as letter strings, labelled with tids from `first_tid`.
pub fn db(dict: &mut ItemDictionary, rows: &[&str], first_tid: usize) -> TransactionDB {
    TransactionDB::new(
        rows.iter()
            .enumerate()
            .map(|(i, row)| Transaction::with_tid((first_tid + i).to_string(), set(dict, row)))
            .collect(),
    )
}

pub fn bd10() -> (ItemDictionary, TransactionDB) {
    let mut dict = ItemDictionary::new();
    let bd = db(&mut dict, &BD10, 1);
    (dict, bd)
}

/// First-scenario increment, tids 11 to 13.
pub fn bd_1(dict: &mut ItemDictionary) -> TransactionDB {
    db(dict, &BD_1, 11)
}

/// Increment shared by the second and third scenarios, tids 11 to 13.
pub fn bd_23(dict: &mut ItemDictionary) -> TransactionDB {
    db(dict, &BD_23, 11)
}

pub fn store(
    dict: &mut ItemDictionary,
    cardinality: u64,
    threshold: Threshold,
    entries: &[(&str, u64)],
) -> FrequentSetStore {
    let mut f = FrequentSetStore::new(cardinality, threshold);
    for &(letters, count) in entries {
        f.insert(set(dict, letters), count);
    }
    f
}

/// Frequent itemsets of BD10 at 30%.
pub fn f_at_30(dict: &mut ItemDictionary) -> FrequentSetStore {
    store(
        dict,
        10,
        Threshold::percent(30).unwrap(),
        &[
            ("A", 7),
            ("B", 5),
            ("C", 6),
            ("D", 4),
            ("AB", 4),
            ("AC", 4),
            ("BC", 4),
            ("CD", 3),
            ("ABC", 3),
        ],
    )
}

/// Frequent itemsets of BD10 at 50%.
pub fn f_at_50(dict: &mut ItemDictionary) -> FrequentSetStore {
    store(
        dict,
        10,
        Threshold::percent(50).unwrap(),
        &[("A", 7), ("B", 5), ("C", 6)],
    )
}
