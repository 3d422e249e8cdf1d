//! Association rules from a frequent-itemset store.

use crate::error::Error;
use crate::itemset::Itemset;
use crate::store::FrequentSetStore;
use crate::threshold::{Rational, Threshold};

/// Itemsets larger than this are not expanded into rules.
pub const MAX_RULE_ITEMSET: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    /// Count of `antecedent ∪ consequent`.
    pub support_count: u64,
    pub confidence: Rational,
}

/// Emits `X → Z∖X` for every stored `Z` with at least two items and every
/// nonempty proper subset `X`, when `count(Z) / count(X) ≥ minconf`.
///
/// Rules come out ordered by the itemset `Z`, then by antecedent.
pub fn generate_rules(f: &FrequentSetStore, minconf: Threshold) -> Result<Vec<Rule>, Error> {
    let mut rules = Vec::new();
    for (z, z_count) in f.iter() {
        let k = z.len();
        if k < 2 {
            continue;
        }
        if k > MAX_RULE_ITEMSET {
            return Err(Error::InvariantViolation {
                itemset: z.to_string(),
                reason: format!("rule generation is limited to {MAX_RULE_ITEMSET} items"),
            });
        }
        let items = z.items();
        let mut from_z = Vec::new();
        for mask in 1u32..(1u32 << k) - 1 {
            let antecedent = Itemset::from_sorted_unchecked(
                (0..k)
                    .filter(|&b| mask & (1 << b) != 0)
                    .map(|b| items[b])
                    .collect(),
            );
            let x_count = f
                .count(&antecedent)
                .ok_or_else(|| Error::MissingSubsetCount(antecedent.to_string()))?;
            // cross-multiplied: z/x ≥ num/den
            if (z_count as i128) * minconf.denominator() >= minconf.numerator() * (x_count as i128)
            {
                let consequent = z.difference(&antecedent);
                from_z.push(Rule {
                    antecedent,
                    consequent,
                    support_count: z_count,
                    confidence: Rational::new(z_count as i128, x_count as i128),
                });
            }
        }
        from_z.sort();
        rules.extend(from_z);
    }
    Ok(rules)
}
