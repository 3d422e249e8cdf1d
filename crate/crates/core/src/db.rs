//! Transaction databases, the scan ledger and support counting.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::itemset::{is_subset, ItemDictionary, ItemId, Itemset};

/// Absolute support counts keyed by itemset.
pub type SupportCounts = FxHashMap<Itemset, u64>;

/// Transactions per rayon work unit when counting.
const CHUNK: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub tid: Option<String>,
    pub items: Itemset,
}

impl Transaction {
    pub fn new(items: Itemset) -> Self {
        Transaction { tid: None, items }
    }

    pub fn with_tid(tid: impl Into<String>, items: Itemset) -> Self {
        Transaction {
            tid: Some(tid.into()),
            items,
        }
    }
}

/// An ordered multiset of transactions plus a counter of full passes made over it.
#[derive(Debug, Default)]
pub struct TransactionDB {
    transactions: Vec<Transaction>,
    scans: AtomicU64,
}

impl Clone for TransactionDB {
    fn clone(&self) -> Self {
        TransactionDB {
            transactions: self.transactions.clone(),
            scans: AtomicU64::new(self.scan_count()),
        }
    }
}

impl PartialEq for TransactionDB {
    fn eq(&self, other: &Self) -> bool {
        self.transactions == other.transactions
    }
}

impl Eq for TransactionDB {}

impl TransactionDB {
    pub fn new(transactions: Vec<Transaction>) -> Self {
        TransactionDB {
            transactions,
            scans: AtomicU64::new(0),
        }
    }

    pub fn from_itemsets(itemsets: impl IntoIterator<Item = Itemset>) -> Self {
        Self::new(itemsets.into_iter().map(Transaction::new).collect())
    }

    /// Builds a database from token lists, interning through `dict`.
    pub fn from_tokens<T, S>(rows: T, dict: &mut ItemDictionary) -> Self
    where
        T: IntoIterator,
        T::Item: AsRef<[S]>,
        S: AsRef<str>,
    {
        Self::from_itemsets(
            rows.into_iter()
                .map(|row| crate::itemset::canonical_itemset(row.as_ref(), dict))
                .collect::<Vec<_>>(),
        )
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn cardinality(&self) -> u64 {
        self.transactions.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Number of full passes performed by counting operations so far.
    pub fn scan_count(&self) -> u64 {
        self.scans.load(Ordering::SeqCst)
    }

    fn record_scan(&self) {
        self.scans.fetch_add(1, Ordering::SeqCst);
    }

    /// `self ∪ other` as a fresh database with an empty ledger.
    pub fn union(&self, other: &TransactionDB) -> TransactionDB {
        let mut transactions =
            Vec::with_capacity(self.transactions.len() + other.transactions.len());
        transactions.extend_from_slice(&self.transactions);
        transactions.extend_from_slice(&other.transactions);
        TransactionDB::new(transactions)
    }

    /// Splits into the first `at` transactions and the rest.
    pub fn split_at(&self, at: usize) -> (TransactionDB, TransactionDB) {
        let at = at.min(self.transactions.len());
        let (head, tail) = self.transactions.split_at(at);
        (
            TransactionDB::new(head.to_vec()),
            TransactionDB::new(tail.to_vec()),
        )
    }

    /// Sorted distinct item ids occurring in any transaction. Not counted as a scan.
    pub fn item_universe(&self) -> Vec<ItemId> {
        let mut ids: Vec<ItemId> = self
            .transactions
            .iter()
            .flat_map(|t| t.items.items().iter().copied())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Counts every item in one pass. Index `i` holds the count of item id `i`.
    pub fn count_items(&self) -> Vec<u64> {
        self.record_scan();
        self.transactions
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut counts: Vec<u64> = Vec::new();
                for t in chunk {
                    for &id in t.items.items() {
                        let i = id as usize;
                        if i >= counts.len() {
                            counts.resize(i + 1, 0);
                        }
                        counts[i] += 1;
                    }
                }
                counts
            })
            .reduce(Vec::new, add_counts)
    }

    /// Counts the support of every target in exactly one pass over the database.
    ///
    /// Targets may mix sizes. Each transaction either enumerates its own
    /// k-subsets against a hash index or tests each size-k target directly,
    /// whichever is fewer probes.
    pub fn count_supports(&self, targets: &[Itemset]) -> SupportCounts {
        let mut unique: Vec<Itemset> = targets.to_vec();
        unique.sort_unstable();
        unique.dedup();
        let totals = self.count_distinct(&unique);
        unique.into_iter().zip(totals).collect()
    }

    /// Counts of `targets` in input order, in one pass. Targets must be
    /// distinct.
    pub(crate) fn count_distinct(&self, targets: &[Itemset]) -> Vec<u64> {
        self.record_scan();

        let mut by_size: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
        for (idx, x) in targets.iter().enumerate() {
            by_size.entry(x.len()).or_default().push(idx);
        }
        let groups: Vec<SizeGroup<'_>> = by_size
            .into_iter()
            .map(|(k, members)| SizeGroup::new(k, members, targets))
            .collect();
        debug_assert_eq!(
            groups.iter().map(|g| g.index.len()).sum::<usize>(),
            targets.len(),
            "duplicate targets"
        );

        if groups.is_empty() {
            return Vec::new();
        }
        self.transactions
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut counts = vec![0u64; targets.len()];
                let mut buf = Vec::new();
                for t in chunk {
                    for g in &groups {
                        g.count_into(t.items.items(), targets, &mut counts, &mut buf);
                    }
                }
                counts
            })
            .reduce(|| vec![0; targets.len()], add_counts)
    }
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Targets of one size, with a slice-keyed index for subset enumeration.
struct SizeGroup<'a> {
    k: usize,
    members: Vec<usize>,
    index: FxHashMap<&'a [ItemId], usize>,
}

impl<'a> SizeGroup<'a> {
    fn new(k: usize, members: Vec<usize>, unique: &'a [Itemset]) -> Self {
        let index = members.iter().map(|&i| (unique[i].items(), i)).collect();
        SizeGroup { k, members, index }
    }

    fn count_into(
        &self,
        t: &[ItemId],
        unique: &[Itemset],
        counts: &mut [u64],
        buf: &mut Vec<ItemId>,
    ) {
        let n = t.len();
        if self.k > n {
            return;
        }
        if self.k == 0 {
            counts[self.members[0]] += 1;
            return;
        }
        if binomial_at_most(n, self.k, self.members.len()) {
            buf.clear();
            self.enumerate(t, 0, buf, counts);
        } else {
            for &i in &self.members {
                if is_subset(unique[i].items(), t) {
                    counts[i] += 1;
                }
            }
        }
    }

    fn enumerate(&self, t: &[ItemId], start: usize, buf: &mut Vec<ItemId>, counts: &mut [u64]) {
        if buf.len() == self.k {
            if let Some(&i) = self.index.get(buf.as_slice()) {
                counts[i] += 1;
            }
            return;
        }
        let need = self.k - buf.len();
        for j in start..=t.len() - need {
            buf.push(t[j]);
            self.enumerate(t, j + 1, buf, counts);
            buf.pop();
        }
    }
}

/// Whether C(n, k) ≤ limit, without overflowing.
fn binomial_at_most(n: usize, k: usize, limit: usize) -> bool {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > limit as u128 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn counts_against_fixture() {
        let (mut dict, bd) = fixtures::bd10();
        let a = fixtures::set(&mut dict, "A");
        let abc = fixtures::set(&mut dict, "ABC");
        let counts = bd.count_supports(&[a.clone(), abc.clone()]);
        assert_eq!(counts[&a], 7);
        assert_eq!(counts[&abc], 3);
        assert_eq!(bd.scan_count(), 1);
    }

    #[test]
    fn empty_itemset_counts_every_transaction() {
        let (_, bd) = fixtures::bd10();
        let counts = bd.count_supports(&[Itemset::empty()]);
        assert_eq!(counts[&Itemset::empty()], 10);
    }

    #[test]
    fn empty_targets_still_one_pass() {
        let (_, bd) = fixtures::bd10();
        assert!(bd.count_supports(&[]).is_empty());
        assert_eq!(bd.scan_count(), 1);
    }

    #[test]
    fn both_probe_strategies_agree() {
        // One huge transaction forces the direct-test path; short ones use enumeration.
        let mut dict = ItemDictionary::new();
        let long: Vec<String> = (0..30).map(|i| format!("i{i}")).collect();
        let rows = vec![long.clone(), long[..3].to_vec(), long[5..9].to_vec()];
        let db = TransactionDB::from_tokens(rows, &mut dict);
        let targets = vec![
            canonical(&mut dict, &["i0", "i1"]),
            canonical(&mut dict, &["i5", "i6", "i7"]),
            canonical(&mut dict, &["i0", "i29"]),
        ];
        let counts = db.count_supports(&targets);
        assert_eq!(counts[&targets[0]], 2);
        assert_eq!(counts[&targets[1]], 2);
        assert_eq!(counts[&targets[2]], 1);
    }

    #[test]
    fn item_counts_and_ledger() {
        let (mut dict, bd) = fixtures::bd10();
        let counts = bd.count_items();
        let d = dict.intern("D") as usize;
        assert_eq!(counts[d], 4);
        assert_eq!(bd.scan_count(), 1);
    }

    #[test]
    fn binomial_guard() {
        assert!(binomial_at_most(5, 2, 10));
        assert!(!binomial_at_most(5, 2, 9));
        assert!(binomial_at_most(3, 3, 1));
        assert!(!binomial_at_most(128, 64, usize::MAX));
    }

    fn canonical(dict: &mut ItemDictionary, tokens: &[&str]) -> Itemset {
        crate::itemset::canonical_itemset(tokens, dict)
    }
}
