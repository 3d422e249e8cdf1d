//! Level-wise candidate generation, the Apriori baseline miner and a
//! brute-force reference miner.

use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashSet;

use crate::db::TransactionDB;
use crate::error::Error;
use crate::itemset::{is_subset, Itemset};
use crate::store::FrequentSetStore;
use crate::threshold::{is_frequent, Threshold};

/// Largest item universe [`mine_bruteforce`] will enumerate.
pub const BRUTEFORCE_MAX_ITEMS: usize = 24;

/// Candidate k-itemsets with running support counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSet {
    pub level: usize,
    pub candidates: BTreeMap<Itemset, u64>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn itemsets(&self) -> impl Iterator<Item = &Itemset> + '_ {
        self.candidates.keys()
    }

    pub fn into_itemsets(self) -> Vec<Itemset> {
        self.candidates.into_keys().collect()
    }
}

/// Generates the k-candidates from the frequent (k−1)-itemsets.
///
/// Join: two members sharing their first k−2 items yield their union.
/// Prune: a joined itemset is kept only if every (k−1)-subset is a member.
pub fn apriori_gen<'a>(prev: impl IntoIterator<Item = &'a Itemset>, k: usize) -> CandidateSet {
    assert!(k >= 2, "apriori_gen needs k >= 2, got {k}");
    let sorted: BTreeSet<&Itemset> = prev.into_iter().collect();
    debug_assert!(sorted.iter().all(|x| x.len() == k - 1));
    let members: FxHashSet<&[u32]> = sorted.iter().map(|x| x.items()).collect();
    let sorted: Vec<&Itemset> = sorted.into_iter().collect();

    // Emitted in lexicographic order, so the map is bulk-built.
    let mut candidates = Vec::new();
    let prefix = k - 2;
    let mut start = 0;
    // Members sharing a prefix are contiguous in lexicographic order.
    while start < sorted.len() {
        let head = &sorted[start].items()[..prefix];
        let mut end = start + 1;
        while end < sorted.len() && &sorted[end].items()[..prefix] == head {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                let mut ids = sorted[i].items().to_vec();
                ids.push(sorted[j].items()[prefix]);
                if all_subsets_present(&ids, &members) {
                    candidates.push((Itemset::from_sorted_unchecked(ids), 0));
                }
            }
        }
        start = end;
    }

    CandidateSet {
        level: k,
        candidates: candidates.into_iter().collect(),
    }
}

fn all_subsets_present(ids: &[u32], members: &FxHashSet<&[u32]>) -> bool {
    // The two subsets dropping one of the last two items are the join parents.
    let k = ids.len();
    let mut buf = Vec::with_capacity(k - 1);
    (0..k.saturating_sub(2)).all(|skip| {
        buf.clear();
        buf.extend(
            ids.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &x)| x),
        );
        members.contains(buf.as_slice())
    })
}

/// Mines every itemset with `count ≥ s × |db|` level by level.
pub fn mine_apriori(db: &TransactionDB, s: Threshold) -> FrequentSetStore {
    let total = db.cardinality();
    let mut store = FrequentSetStore::new(total, s);
    let min = s.min_count(total);

    let item_counts = db.count_items();
    let mut current: Vec<Itemset> = Vec::new();
    for (id, &count) in item_counts.iter().enumerate() {
        if count >= min {
            let x = Itemset::singleton(id as u32);
            store.insert(x.clone(), count);
            current.push(x);
        }
    }

    let mut k = 2;
    while !current.is_empty() {
        let candidates = apriori_gen(&current, k);
        if candidates.is_empty() {
            break;
        }
        let candidates = candidates.into_itemsets();
        let counts = db.count_distinct(&candidates);
        let next: Vec<Itemset> = candidates
            .into_iter()
            .zip(counts)
            .filter(|&(_, c)| c >= min)
            .map(|(x, c)| {
                store.insert(x.clone(), c);
                x
            })
            .collect();
        current = next;
        k += 1;
    }
    store
}

/// Exhaustive reference miner for small item universes.
///
/// Enumerates every itemset contained in at least one transaction and counts
/// it by testing it against each transaction. Does not touch the scan ledger.
pub fn mine_bruteforce(db: &TransactionDB, s: Threshold) -> Result<FrequentSetStore, Error> {
    let universe = db.item_universe();
    if universe.len() > BRUTEFORCE_MAX_ITEMS {
        return Err(Error::UniverseTooLarge {
            items: universe.len(),
            limit: BRUTEFORCE_MAX_ITEMS,
        });
    }

    let mut seen: BTreeSet<Itemset> = BTreeSet::new();
    for t in db.transactions() {
        let items = t.items.items();
        for mask in 1u32..(1u32 << items.len()) {
            let ids = (0..items.len())
                .filter(|&b| mask & (1 << b) != 0)
                .map(|b| items[b])
                .collect();
            seen.insert(Itemset::from_sorted_unchecked(ids));
        }
    }

    let total = db.cardinality();
    let mut store = FrequentSetStore::new(total, s);
    for x in seen {
        let count = db
            .transactions()
            .iter()
            .filter(|t| is_subset(x.items(), t.items.items()))
            .count() as u64;
        if is_frequent(count, s, total) {
            store.insert(x, count);
        }
    }
    Ok(store)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::itemset::ItemDictionary;

    fn sets(dict: &mut ItemDictionary, words: &[&str]) -> Vec<Itemset> {
        words.iter().map(|w| fixtures::set(dict, w)).collect()
    }

    #[test]
    fn gen_all_pairs_from_four_items() {
        let mut dict = ItemDictionary::new();
        let prev = sets(&mut dict, &["A", "B", "C", "D"]);
        let c2 = apriori_gen(&prev, 2);
        assert_eq!(c2.level, 2);
        assert_eq!(
            c2.into_itemsets(),
            sets(&mut dict, &["AB", "AC", "AD", "BC", "BD", "CD"])
        );
    }

    #[test]
    fn gen_prunes_unsupported_join() {
        let mut dict = ItemDictionary::new();
        let _ = sets(&mut dict, &["A", "B", "C", "D"]);
        let prev = sets(&mut dict, &["AB", "BC", "BD"]);
        assert!(apriori_gen(&prev, 3).is_empty());
    }

    #[test]
    fn gen_empty_input() {
        assert!(apriori_gen(&Vec::<Itemset>::new(), 2).is_empty());
    }

    #[test]
    fn gen_keeps_fully_supported_join() {
        let mut dict = ItemDictionary::new();
        let prev = sets(&mut dict, &["AB", "AC", "BC", "CD"]);
        let c3 = apriori_gen(&prev, 3);
        assert_eq!(c3.into_itemsets(), sets(&mut dict, &["ABC"]));
    }

    #[test]
    fn gen_counts_start_at_zero() {
        let mut dict = ItemDictionary::new();
        let prev = sets(&mut dict, &["A", "B"]);
        let c2 = apriori_gen(&prev, 2);
        assert!(c2.candidates.values().all(|&c| c == 0));
    }

    #[test]
    fn mine_fixture_at_30_percent() {
        let (mut dict, bd) = fixtures::bd10();
        let f = mine_apriori(&bd, Threshold::percent(30).unwrap());
        assert_eq!(f, fixtures::f_at_30(&mut dict));
    }

    #[test]
    fn mine_fixture_at_50_percent() {
        let (mut dict, bd) = fixtures::bd10();
        let f = mine_apriori(&bd, Threshold::percent(50).unwrap());
        assert_eq!(f, fixtures::f_at_50(&mut dict));
    }

    #[test]
    fn mine_fixture_at_100_percent_is_empty() {
        let (_, bd) = fixtures::bd10();
        let f = mine_apriori(&bd, Threshold::one());
        assert!(f.is_empty());
        assert_eq!(f, mine_bruteforce(&bd, Threshold::one()).unwrap());
    }

    #[test]
    fn bruteforce_matches_on_fixture() {
        let (mut dict, bd) = fixtures::bd10();
        let s = Threshold::percent(30).unwrap();
        assert_eq!(
            mine_bruteforce(&bd, s).unwrap(),
            fixtures::f_at_30(&mut dict)
        );
    }

    #[test]
    fn bruteforce_edge_cases() {
        let empty = TransactionDB::default();
        assert!(mine_bruteforce(&empty, Threshold::percent(10).unwrap())
            .unwrap()
            .is_empty());

        let mut dict = ItemDictionary::new();
        let db = fixtures::db(&mut dict, &["AB"], 1);
        let f = mine_bruteforce(&db, Threshold::one()).unwrap();
        let want = fixtures::store(
            &mut dict,
            1,
            Threshold::one(),
            &[("A", 1), ("B", 1), ("AB", 1)],
        );
        assert_eq!(f, want);
    }

    #[test]
    fn bruteforce_guard() {
        let mut dict = ItemDictionary::new();
        let row: Vec<String> = (0..25).map(|i| format!("x{i}")).collect();
        let db = TransactionDB::from_tokens(vec![row], &mut dict);
        assert!(matches!(
            mine_bruteforce(&db, Threshold::one()),
            Err(Error::UniverseTooLarge { items: 25, .. })
        ));
    }

    #[test]
    fn level_scans_match_levels() {
        // BD10 at 30%: levels 1, 2, 3 are counted, C4 is empty.
        let (_, bd) = fixtures::bd10();
        mine_apriori(&bd, Threshold::percent(30).unwrap());
        assert_eq!(bd.scan_count(), 3);
    }
}
