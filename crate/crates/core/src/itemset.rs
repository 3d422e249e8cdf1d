//! Items, the interning dictionary and canonical itemsets.

use std::borrow::Borrow;
use std::fmt;

use rustc_hash::FxHashMap;

/// Dense item handle assigned by an [`ItemDictionary`].
pub type ItemId = u32;

/// Bijective mapping between item tokens and dense ids, in first-seen order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ItemDictionary {
    tokens: Vec<String>,
    ids: FxHashMap<String, ItemId>,
}

impl ItemDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, token: &str) -> ItemId {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = ItemId::try_from(self.tokens.len()).expect("more than u32::MAX items");
        self.tokens.push(token.to_owned());
        self.ids.insert(token.to_owned(), id);
        id
    }

    pub fn id(&self, token: &str) -> Option<ItemId> {
        self.ids.get(token).copied()
    }

    pub fn token(&self, id: ItemId) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Renders an itemset as its tokens joined by single spaces, in canonical order.
    pub fn render(&self, itemset: &Itemset) -> String {
        let mut out = String::new();
        for (i, &id) in itemset.items().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.token(id).unwrap_or("?"));
        }
        out
    }

    pub fn tokens_of<'a>(&'a self, itemset: &'a Itemset) -> impl Iterator<Item = &'a str> + 'a {
        itemset
            .items()
            .iter()
            .map(|&id| self.token(id).unwrap_or("?"))
    }
}

/// Strictly ascending, duplicate-free sequence of item ids.
///
/// Set equality is sequence equality, and the derived ordering is
/// lexicographic over ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    pub fn empty() -> Self {
        Itemset(Vec::new())
    }

    /// Sorts and deduplicates arbitrary ids.
    pub fn from_ids(mut ids: Vec<ItemId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Itemset(ids)
    }

    /// Wraps ids that are already strictly ascending.
    pub(crate) fn from_sorted_unchecked(ids: Vec<ItemId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Itemset(ids)
    }

    pub fn singleton(id: ItemId) -> Self {
        Itemset(vec![id])
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: ItemId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        is_subset(self.items(), other.items())
    }

    /// All subsets with exactly one item removed, in canonical form.
    pub fn drop_one_subsets(&self) -> impl Iterator<Item = Itemset> + '_ {
        (0..self.0.len()).map(move |skip| {
            let ids = self
                .0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &id)| id)
                .collect();
            Itemset(ids)
        })
    }

    /// Items of `self` that are not in `other`.
    pub fn difference(&self, other: &Itemset) -> Itemset {
        Itemset(
            self.0
                .iter()
                .copied()
                .filter(|id| !other.contains(*id))
                .collect(),
        )
    }
}

impl Borrow<[ItemId]> for Itemset {
    fn borrow(&self) -> &[ItemId] {
        &self.0
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

/// Interns `tokens` and returns their canonical itemset.
pub fn canonical_itemset<S: AsRef<str>>(tokens: &[S], dict: &mut ItemDictionary) -> Itemset {
    Itemset::from_ids(tokens.iter().map(|t| dict.intern(t.as_ref())).collect())
}

/// Merge-walk subset test over two strictly ascending slices.
pub fn is_subset(x: &[ItemId], t: &[ItemId]) -> bool {
    if x.len() > t.len() {
        return false;
    }
    let mut j = 0;
    for &item in x {
        loop {
            if j == t.len() {
                return false;
            }
            let cur = t[j];
            j += 1;
            if cur == item {
                break;
            }
            if cur > item {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_dedups_and_sorts() {
        let mut dict = ItemDictionary::new();
        let a = dict.intern("A");
        let b = dict.intern("B");
        let c = dict.intern("C");
        assert_eq!(
            canonical_itemset(&["B", "A", "A"], &mut dict).items(),
            &[a, b]
        );
        assert!(canonical_itemset::<&str>(&[], &mut dict).is_empty());
        assert_eq!(
            canonical_itemset(&["C", "A", "B"], &mut dict).items(),
            &[a, b, c]
        );
    }

    #[test]
    fn interning_is_dense_and_first_seen() {
        let mut dict = ItemDictionary::new();
        let x = canonical_itemset(&["Z", "Y", "Z"], &mut dict);
        assert_eq!(dict.id("Z"), Some(0));
        assert_eq!(dict.id("Y"), Some(1));
        assert_eq!(x.items(), &[0, 1]);
        assert_eq!(dict.token(1), Some("Y"));
        assert_eq!(dict.len(), 2);
    }

    #[test]
    fn subset_cases() {
        let mut dict = ItemDictionary::new();
        let abc = canonical_itemset(&["A", "B", "C"], &mut dict);
        let ab = canonical_itemset(&["A", "B"], &mut dict);
        let ad = canonical_itemset(&["A", "D"], &mut dict);
        assert!(ab.is_subset_of(&abc));
        assert!(Itemset::empty().is_subset_of(&abc));
        assert!(Itemset::empty().is_subset_of(&Itemset::empty()));
        assert!(!ad.is_subset_of(&abc));
        assert!(!abc.is_subset_of(&ab));
    }

    #[test]
    fn drop_one_subsets_are_canonical() {
        let x = Itemset::from_ids(vec![4, 1, 7]);
        let subs: Vec<_> = x.drop_one_subsets().collect();
        assert_eq!(
            subs,
            vec![
                Itemset::from_ids(vec![4, 7]),
                Itemset::from_ids(vec![1, 7]),
                Itemset::from_ids(vec![1, 4]),
            ]
        );
        assert_eq!(
            x.difference(&Itemset::singleton(4)),
            Itemset::from_ids(vec![1, 7])
        );
    }
}
