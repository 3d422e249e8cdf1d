//! Leveled frequent-itemset stores.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::itemset::{ItemDictionary, Itemset};
use crate::threshold::{is_frequent, Threshold};

/// Itemset → absolute support, grouped by itemset size, annotated with the
/// database cardinality and threshold it describes.
#[derive(Debug, Clone)]
pub struct FrequentSetStore {
    /// `levels[k - 1]` holds the k-itemsets.
    levels: Vec<BTreeMap<Itemset, u64>>,
    base_cardinality: u64,
    base_threshold: Threshold,
}

impl FrequentSetStore {
    pub fn new(base_cardinality: u64, base_threshold: Threshold) -> Self {
        FrequentSetStore {
            levels: Vec::new(),
            base_cardinality,
            base_threshold,
        }
    }

    pub fn base_cardinality(&self) -> u64 {
        self.base_cardinality
    }

    pub fn base_threshold(&self) -> Threshold {
        self.base_threshold
    }

    /// Inserts or overwrites an itemset's count. The empty itemset is never stored.
    pub fn insert(&mut self, itemset: Itemset, count: u64) {
        let k = itemset.len();
        assert!(k > 0, "the empty itemset is not stored");
        if self.levels.len() < k {
            self.levels.resize_with(k, BTreeMap::new);
        }
        self.levels[k - 1].insert(itemset, count);
    }

    pub fn extend_level(&mut self, entries: impl IntoIterator<Item = (Itemset, u64)>) {
        for (x, c) in entries {
            self.insert(x, c);
        }
    }

    /// The k-itemsets, if any level k was ever populated.
    pub fn level(&self, k: usize) -> Option<&BTreeMap<Itemset, u64>> {
        if k == 0 {
            return None;
        }
        self.levels.get(k - 1).filter(|l| !l.is_empty())
    }

    /// Largest k with a nonempty level.
    pub fn max_level(&self) -> usize {
        self.levels
            .iter()
            .rposition(|l| !l.is_empty())
            .map_or(0, |i| i + 1)
    }

    pub fn count(&self, itemset: &Itemset) -> Option<u64> {
        let k = itemset.len();
        if k == 0 {
            return None;
        }
        self.levels.get(k - 1)?.get(itemset).copied()
    }

    pub fn contains(&self, itemset: &Itemset) -> bool {
        self.count(itemset).is_some()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All entries by ascending size, then ascending item ids.
    pub fn iter(&self) -> impl Iterator<Item = (&Itemset, u64)> + '_ {
        self.levels
            .iter()
            .flat_map(|l| l.iter().map(|(x, &c)| (x, c)))
    }

    pub fn itemsets(&self) -> BTreeSet<Itemset> {
        self.iter().map(|(x, _)| x.clone()).collect()
    }

    /// Checks every store invariant, naming the first offending itemset.
    ///
    /// `dict` is only used to render the itemset in the error.
    pub fn validate(&self, dict: Option<&ItemDictionary>) -> Result<(), Error> {
        let name = |x: &Itemset| match dict {
            Some(d) => d.render(x),
            None => x.to_string(),
        };
        let violation = |x: &Itemset, reason: String| Error::InvariantViolation {
            itemset: name(x),
            reason,
        };

        for (i, level) in self.levels.iter().enumerate() {
            let k = i + 1;
            for (x, &count) in level {
                if x.len() != k {
                    return Err(violation(x, format!("stored at level {k}")));
                }
                if !is_frequent(count, self.base_threshold, self.base_cardinality) {
                    return Err(violation(
                        x,
                        format!(
                            "count {count} is below {} of {}",
                            self.base_threshold, self.base_cardinality
                        ),
                    ));
                }
                if count > self.base_cardinality {
                    return Err(violation(
                        x,
                        format!(
                            "count {count} exceeds cardinality {}",
                            self.base_cardinality
                        ),
                    ));
                }
                if k < 2 {
                    continue;
                }
                for sub in x.drop_one_subsets() {
                    match self.count(&sub) {
                        None => {
                            return Err(violation(
                                x,
                                format!("subset {} is missing (downward closure)", name(&sub)),
                            ))
                        }
                        Some(sub_count) if sub_count < count => {
                            return Err(violation(
                                x,
                                format!(
                                    "count {count} exceeds the count {sub_count} of subset {}",
                                    name(&sub)
                                ),
                            ))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(())
    }
}

impl PartialEq for FrequentSetStore {
    fn eq(&self, other: &Self) -> bool {
        self.base_cardinality == other.base_cardinality
            && self.base_threshold == other.base_threshold
            && self.len() == other.len()
            && self.iter().eq(other.iter())
    }
}

impl Eq for FrequentSetStore {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_store_is_valid() {
        let (mut dict, _) = fixtures::bd10();
        let f = fixtures::f_at_30(&mut dict);
        f.validate(Some(&dict)).unwrap();
        assert_eq!(f.len(), 9);
        assert_eq!(f.max_level(), 3);
        assert_eq!(f.count(&fixtures::set(&mut dict, "CD")), Some(3));
    }

    #[test]
    fn detects_missing_subset() {
        let (mut dict, _) = fixtures::bd10();
        let mut f = FrequentSetStore::new(10, Threshold::percent(30).unwrap());
        f.insert(fixtures::set(&mut dict, "A"), 7);
        f.insert(fixtures::set(&mut dict, "AB"), 4);
        let err = f.validate(Some(&dict)).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation { ref itemset, .. } if itemset == "A B"));
    }

    #[test]
    fn detects_count_below_threshold_and_domination() {
        let (mut dict, _) = fixtures::bd10();
        let mut f = FrequentSetStore::new(10, Threshold::percent(30).unwrap());
        f.insert(fixtures::set(&mut dict, "A"), 2);
        assert!(f.validate(None).is_err());

        let mut g = FrequentSetStore::new(10, Threshold::percent(30).unwrap());
        g.insert(fixtures::set(&mut dict, "A"), 4);
        g.insert(fixtures::set(&mut dict, "B"), 5);
        g.insert(fixtures::set(&mut dict, "AB"), 5);
        assert!(g.validate(None).is_err());
    }

    #[test]
    fn equality_ignores_empty_trailing_levels() {
        let (mut dict, _) = fixtures::bd10();
        let a = FrequentSetStore::new(10, Threshold::zero());
        let mut b = FrequentSetStore::new(10, Threshold::zero());
        b.levels.resize_with(2, BTreeMap::new);
        assert_eq!(a, b);
        b.insert(fixtures::set(&mut dict, "A"), 1);
        assert_ne!(a, b);
    }
}
