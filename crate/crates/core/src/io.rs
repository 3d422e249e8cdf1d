//! Text formats for transactions, frequent-set stores, rules and bench results.
//!
//! Transactions: one per line, whitespace-separated item tokens. Blank lines
//! and lines starting with `#` are skipped. A leading token ending in `:` is
//! the transaction's tid (`"11: A B D"`); a bare `":"` means no tid and is how
//! an empty untagged transaction is written.
//!
//! Stores:
//!
//! ```text
//! !version 1
//! !D 10
//! !minsup 3/10
//! 7<TAB>A
//! 4<TAB>A B
//! ```
//!
//! Body lines are `<count>\t<tokens>` (shown with `<TAB>` above), sorted by size and then by token sequence.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::bench::BenchRow;
use crate::db::{Transaction, TransactionDB};
use crate::error::Error;
use crate::itemset::{canonical_itemset, ItemDictionary};
use crate::rules::Rule;
use crate::store::FrequentSetStore;
use crate::threshold::{parse_rational, Threshold};

pub const FIS_VERSION: u32 = 1;

pub const BENCH_CSV_HEADER: [&str; 12] = [
    "s_prime_num",
    "s_prime_den",
    "cpt_num",
    "cpt_den",
    "scenario",
    "imsc_ms",
    "apriori_ms",
    "imsc_bd_passes",
    "imsc_inc_passes",
    "candidates_generated",
    "candidates_pruned",
    "frequent_count",
];

fn open(path: &Path) -> Result<BufReader<File>, Error> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn malformed(path: &Path, line: usize, reason: impl Into<String>) -> Error {
    Error::MalformedLine {
        path: path.to_path_buf(),
        line,
        reason: reason.into(),
    }
}

pub fn load_transactions(path: &Path, dict: &mut ItemDictionary) -> Result<TransactionDB, Error> {
    read_transactions(open(path)?, path, dict)
}

/// Parses transactions from any reader; `path` only labels errors.
pub fn read_transactions(
    reader: impl BufRead,
    path: &Path,
    dict: &mut ItemDictionary,
) -> Result<TransactionDB, Error> {
    let mut transactions = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace().peekable();
        let tid = match tokens.peek() {
            Some(first) if first.ends_with(':') => {
                let label = &first[..first.len() - 1];
                tokens.next();
                (!label.is_empty()).then(|| label.to_owned())
            }
            _ => None,
        };
        let items: Vec<&str> = tokens.collect();
        if let Some(bad) = items.iter().find(|t| t.ends_with(':')) {
            return Err(malformed(
                path,
                i + 1,
                format!("token {bad:?} looks like a tid but is not the first token"),
            ));
        }
        transactions.push(Transaction {
            tid,
            items: canonical_itemset(&items, dict),
        });
    }
    Ok(TransactionDB::new(transactions))
}

pub fn save_transactions(
    db: &TransactionDB,
    dict: &ItemDictionary,
    path: &Path,
) -> Result<(), Error> {
    let mut w = create(path)?;
    write_transactions(db, dict, &mut w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_transactions(
    db: &TransactionDB,
    dict: &ItemDictionary,
    w: &mut impl Write,
) -> std::io::Result<()> {
    for t in db.transactions() {
        let items = dict.render(&t.items);
        match (&t.tid, items.is_empty()) {
            (Some(tid), true) => writeln!(w, "{tid}:")?,
            (Some(tid), false) => writeln!(w, "{tid}: {items}")?,
            (None, true) => writeln!(w, ":")?,
            (None, false) => writeln!(w, "{items}")?,
        }
    }
    Ok(())
}

pub fn save_fis(store: &FrequentSetStore, dict: &ItemDictionary, path: &Path) -> Result<(), Error> {
    let mut w = create(path)?;
    write_fis(store, dict, &mut w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_fis(
    store: &FrequentSetStore,
    dict: &ItemDictionary,
    w: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(w, "!version {FIS_VERSION}")?;
    writeln!(w, "!D {}", store.base_cardinality())?;
    writeln!(w, "!minsup {}", store.base_threshold())?;
    let mut body: Vec<(Vec<&str>, u64)> = store
        .iter()
        .map(|(x, c)| (dict.tokens_of(x).collect(), c))
        .collect();
    body.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    for (tokens, count) in body {
        writeln!(w, "{count}\t{}", tokens.join(" "))?;
    }
    Ok(())
}

pub fn load_fis(path: &Path, dict: &mut ItemDictionary) -> Result<FrequentSetStore, Error> {
    read_fis(open(path)?, path, dict)
}

/// Parses a store and re-checks every store invariant.
pub fn read_fis(
    reader: impl BufRead,
    path: &Path,
    dict: &mut ItemDictionary,
) -> Result<FrequentSetStore, Error> {
    let mut version: Option<u32> = None;
    let mut cardinality: Option<u64> = None;
    let mut threshold: Option<Threshold> = None;
    let mut store: Option<FrequentSetStore> = None;

    for (i, line) in reader.lines().enumerate() {
        let n = i + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(header) = line.strip_prefix('!') {
            if store.is_some() {
                return Err(malformed(path, n, "header line after the body started"));
            }
            let (key, value) = header
                .split_once(' ')
                .ok_or_else(|| malformed(path, n, "header needs a key and a value"))?;
            let value = value.trim();
            match key {
                "version" => {
                    let v: u32 = value
                        .parse()
                        .map_err(|_| malformed(path, n, format!("bad version {value:?}")))?;
                    if v != FIS_VERSION {
                        return Err(malformed(path, n, format!("unsupported version {v}")));
                    }
                    version = Some(v);
                }
                "D" => {
                    cardinality =
                        Some(value.parse().map_err(|_| {
                            malformed(path, n, format!("bad cardinality {value:?}"))
                        })?);
                }
                "minsup" => {
                    let ratio = parse_rational(value)
                        .filter(|_| value.contains('/'))
                        .ok_or_else(|| malformed(path, n, format!("bad minsup {value:?}")))?;
                    threshold = Some(
                        Threshold::from_ratio(ratio)
                            .map_err(|e| malformed(path, n, e.to_string()))?,
                    );
                }
                other => return Err(malformed(path, n, format!("unknown header {other:?}"))),
            }
            continue;
        }

        let store = match &mut store {
            Some(s) => s,
            None => {
                let (Some(_), Some(d), Some(t)) = (version, cardinality, threshold) else {
                    return Err(malformed(
                        path,
                        n,
                        "body line before the !version, !D and !minsup headers",
                    ));
                };
                store.insert(FrequentSetStore::new(d, t))
            }
        };
        let (count, items) = line
            .split_once('\t')
            .ok_or_else(|| malformed(path, n, "expected <count><TAB><items>"))?;
        let count: u64 = count
            .parse()
            .map_err(|_| malformed(path, n, format!("bad count {count:?}")))?;
        let tokens: Vec<&str> = items.split(' ').collect();
        if tokens
            .iter()
            .any(|t| t.is_empty() || t.contains(char::is_whitespace))
        {
            return Err(malformed(
                path,
                n,
                "items must be single-space separated tokens",
            ));
        }
        let itemset = canonical_itemset(&tokens, dict);
        if itemset.len() != tokens.len() {
            return Err(malformed(path, n, "repeated item"));
        }
        if store.contains(&itemset) {
            return Err(Error::InvariantViolation {
                itemset: dict.render(&itemset),
                reason: format!("listed twice (line {n})"),
            });
        }
        store.insert(itemset, count);
    }

    let store = match store {
        Some(s) => s,
        None => match (version, cardinality, threshold) {
            (Some(_), Some(d), Some(t)) => FrequentSetStore::new(d, t),
            _ => return Err(malformed(path, 0, "missing !version, !D or !minsup header")),
        },
    };
    store.validate(Some(dict))?;
    Ok(store)
}

/// One rule per line: `<antecedent> => <consequent>\t<support>\t<confidence>`.
pub fn save_rules(rules: &[Rule], dict: &ItemDictionary, path: &Path) -> Result<(), Error> {
    let mut w = create(path)?;
    write_rules(rules, dict, &mut w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_rules(
    rules: &[Rule],
    dict: &ItemDictionary,
    w: &mut impl Write,
) -> std::io::Result<()> {
    for r in rules {
        writeln!(
            w,
            "{} => {}\t{}\t{}/{}",
            dict.render(&r.antecedent),
            dict.render(&r.consequent),
            r.support_count,
            r.confidence.numer(),
            r.confidence.denom()
        )?;
    }
    Ok(())
}

pub fn write_bench_csv(rows: &[BenchRow], path: &Path) -> Result<(), Error> {
    let file = create(path)?;
    write_bench(rows, file)?;
    Ok(())
}

pub fn write_bench<W: Write>(rows: &[BenchRow], w: W) -> Result<(), Error> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(BENCH_CSV_HEADER)?;
    for row in rows {
        out.write_record([
            row.s_prime.numerator().to_string(),
            row.s_prime.denominator().to_string(),
            row.cpt.numer().to_string(),
            row.cpt.denom().to_string(),
            row.scenario.tag().to_string(),
            format!("{:.3}", row.imsc_millis),
            format!("{:.3}", row.apriori_millis),
            row.imsc_bd_passes.to_string(),
            row.imsc_inc_passes.to_string(),
            row.candidates_generated.to_string(),
            row.candidates_pruned.to_string(),
            row.frequent_count.to_string(),
        ])?;
    }
    out.flush().map_err(|e| Error::io("<bench csv>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::io::Cursor;

    fn here() -> &'static Path {
        Path::new("<test>")
    }

    #[test]
    fn parses_plain_tid_and_duplicate_lines() {
        let mut dict = ItemDictionary::new();
        let text = "# comment\nA B D\n\n11: A B D\nB A A\n";
        let db = read_transactions(Cursor::new(text), here(), &mut dict).unwrap();
        assert_eq!(db.cardinality(), 3);
        let abd = fixtures::set(&mut dict, "ABD");
        assert_eq!(db.transactions()[0], Transaction::new(abd.clone()));
        assert_eq!(db.transactions()[1], Transaction::with_tid("11", abd));
        assert_eq!(db.transactions()[2].items, fixtures::set(&mut dict, "AB"));
    }

    #[test]
    fn misplaced_tid_is_malformed() {
        let mut dict = ItemDictionary::new();
        let err = read_transactions(Cursor::new("A\nA 12: B\n"), here(), &mut dict).unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 2, .. }));
    }

    #[test]
    fn empty_transactions_survive() {
        let mut dict = ItemDictionary::new();
        let db = TransactionDB::new(vec![
            Transaction::new(fixtures::set(&mut dict, "")),
            Transaction::with_tid("7", fixtures::set(&mut dict, "")),
        ]);
        let mut buf = Vec::new();
        write_transactions(&db, &dict, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), ":\n7:\n");
        let back = read_transactions(Cursor::new(buf), here(), &mut dict).unwrap();
        assert_eq!(back, db);
    }

    #[test]
    fn fis_body_layout() {
        let (mut dict, _) = fixtures::bd10();
        let f = fixtures::f_at_30(&mut dict);
        let mut buf = Vec::new();
        write_fis(&f, &dict, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let want = "!version 1\n!D 10\n!minsup 3/10\n\
                    7\tA\n5\tB\n6\tC\n4\tD\n4\tA B\n4\tA C\n4\tB C\n3\tC D\n3\tA B C\n";
        assert_eq!(text, want);
    }

    #[test]
    fn fis_rejects_count_below_threshold() {
        let mut dict = ItemDictionary::new();
        let text = "!version 1\n!D 10\n!minsup 3/10\n2\tA\n";
        assert!(matches!(
            read_fis(Cursor::new(text), here(), &mut dict),
            Err(Error::InvariantViolation { .. })
        ));
    }

    #[test]
    fn fis_header_only_is_empty() {
        let mut dict = ItemDictionary::new();
        let text = "!version 1\n!D 10\n!minsup 1/2\n";
        let f = read_fis(Cursor::new(text), here(), &mut dict).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.base_cardinality(), 10);
    }

    #[test]
    fn fis_malformed_inputs() {
        let cases = [
            "7\tA\n",
            "!version 2\n!D 10\n!minsup 1/2\n",
            "!version 1\n!D ten\n!minsup 1/2\n",
            "!version 1\n!D 10\n!minsup 0.5\n",
            "!version 1\n!D 10\n!minsup 1/2\n7 A\n",
            "!version 1\n!D 10\n!minsup 1/2\n7\tA  B\n",
            "!version 1\n!D 10\n!minsup 1/2\n7\tA A\n",
            "!version 1\n!D 10\n",
        ];
        for text in cases {
            let mut dict = ItemDictionary::new();
            assert!(
                matches!(
                    read_fis(Cursor::new(text), here(), &mut dict),
                    Err(Error::MalformedLine { .. })
                ),
                "{text:?}"
            );
        }
        let mut dict = ItemDictionary::new();
        let dup = "!version 1\n!D 10\n!minsup 1/2\n7\tA\n7\tA\n";
        assert!(matches!(
            read_fis(Cursor::new(dup), here(), &mut dict),
            Err(Error::InvariantViolation { .. })
        ));
    }
}
