//! Threshold-sweep harness comparing maintenance against a full re-mine.

use std::time::Instant;

use crate::apriori::mine_apriori;
use crate::db::TransactionDB;
use crate::error::Error;
use crate::maintain::{maintain_with, MaintainOptions, Maintenance, Scenario};
use crate::threshold::{parse_rational, Rational, Threshold};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub s_prime: Threshold,
    pub cpt: Rational,
    pub scenario: Scenario,
    /// Median wall-clock of maintenance, milliseconds.
    pub imsc_millis: f64,
    /// Median wall-clock of re-mining `BD ∪ bd`, milliseconds.
    pub apriori_millis: f64,
    pub imsc_bd_passes: u64,
    pub imsc_inc_passes: u64,
    pub candidates_generated: u64,
    pub candidates_pruned: u64,
    pub frequent_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchOptions {
    pub repeats: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { repeats: 3 }
    }
}

/// Expands `LO:HI:STEP` (each a threshold literal) into `LO, LO+STEP, …, ≤ HI`.
pub fn parse_sweep(spec: &str) -> Result<Vec<Threshold>, Error> {
    let bad = || Error::InvalidThreshold(format!("sweep {spec:?} is not LO:HI:STEP"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: Threshold = lo.parse()?;
    let hi: Threshold = hi.parse()?;
    let step = parse_rational(step).ok_or_else(bad)?;
    if step <= Rational::from_integer(0) || hi < lo {
        return Err(bad());
    }
    let mut points = Vec::new();
    let mut cur = lo.ratio();
    while cur <= hi.ratio() {
        points.push(Threshold::from_ratio(cur)?);
        cur += step;
    }
    Ok(points)
}

fn median(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2.0
    }
}

/// Mines `big_db` at `s` once, then for each `s'` times maintenance against
/// re-mining the union and checks both give the same store.
pub fn run_bench(
    big_db: &TransactionDB,
    inc_db: &TransactionDB,
    s: Threshold,
    sweep: &[Threshold],
    opts: &BenchOptions,
) -> Result<Vec<BenchRow>, Error> {
    if sweep.is_empty() || sweep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(
            "sweep must be nonempty and strictly ascending".into(),
        ));
    }
    let repeats = opts.repeats.max(1);
    let f = mine_apriori(big_db, s);
    let union = big_db.union(inc_db);
    let maintain_opts = MaintainOptions {
        validate: false,
        ..Default::default()
    };

    let mut rows = Vec::with_capacity(sweep.len());
    for &s_prime in sweep {
        let mut imsc_times = Vec::with_capacity(repeats);
        let mut first: Option<Maintenance> = None;
        for _ in 0..repeats {
            let start = Instant::now();
            let m = maintain_with(&f, big_db, inc_db, s_prime, &maintain_opts)?;
            imsc_times.push(start.elapsed().as_secs_f64() * 1e3);
            first.get_or_insert(m);
        }
        let m = first.expect("at least one repeat");

        let mut apriori_times = Vec::with_capacity(repeats);
        let mut baseline = None;
        for _ in 0..repeats {
            let start = Instant::now();
            let b = mine_apriori(&union, s_prime);
            apriori_times.push(start.elapsed().as_secs_f64() * 1e3);
            baseline.get_or_insert(b);
        }
        if baseline.as_ref() != Some(&m.store) {
            return Err(Error::BaselineMismatch(s_prime.to_string()));
        }

        rows.push(BenchRow {
            s_prime,
            cpt: m.plan.cpt,
            scenario: m.plan.scenario,
            imsc_millis: median(imsc_times),
            apriori_millis: median(apriori_times),
            imsc_bd_passes: m.stats.big_db_passes,
            imsc_inc_passes: m.stats.inc_db_passes,
            candidates_generated: m.stats.candidates_generated,
            candidates_pruned: m.stats.candidates_pruned,
            frequent_count: m.store.len() as u64,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::maintain::{classify_scenario, compute_cpt};

    #[test]
    fn sweep_expands_inclusively() {
        let pts = parse_sweep("5%:60%:5%").unwrap();
        assert_eq!(pts.len(), 12);
        assert_eq!(pts[0], Threshold::percent(5).unwrap());
        assert_eq!(pts[11], Threshold::percent(60).unwrap());
        assert_eq!(parse_sweep("0.005:0.05:0.0025").unwrap().len(), 19);
        assert_eq!(parse_sweep("1/10:1/10:1/10").unwrap().len(), 1);
    }

    #[test]
    fn sweep_rejects_garbage() {
        for bad in ["5%:60%", "60%:5%:5%", "5%:60%:0", "a:b:c", "5%:60%:5%:1"] {
            assert!(parse_sweep(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fixture_bench_rows() {
        let (mut dict, bd) = fixtures::bd10();
        let inc = fixtures::bd_23(&mut dict);
        let s = Threshold::percent(30).unwrap();
        let sweep = parse_sweep("10%:60%:10%").unwrap();
        let rows = run_bench(&bd, &inc, s, &sweep, &BenchOptions { repeats: 1 }).unwrap();
        assert_eq!(rows.len(), 6);
        for (row, &sp) in rows.iter().zip(&sweep) {
            assert_eq!(row.s_prime, sp);
            assert_eq!(row.cpt, compute_cpt(s, sp, 10, 3));
            assert_eq!(row.scenario, classify_scenario(row.cpt, 3));
            if row.scenario == Scenario::NoWinnersPossible {
                assert_eq!(row.imsc_bd_passes, 0);
            }
        }
        let mut csv = Vec::new();
        crate::io::write_bench(&rows, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("s_prime_num,s_prime_den,cpt_num,cpt_den,scenario,"));
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn unordered_sweep_rejected() {
        let (_, bd) = fixtures::bd10();
        let inc = TransactionDB::default();
        let s = Threshold::percent(30).unwrap();
        let sweep = [
            Threshold::percent(40).unwrap(),
            Threshold::percent(20).unwrap(),
        ];
        assert!(run_bench(&bd, &inc, s, &sweep, &BenchOptions::default()).is_err());
        assert!(run_bench(&bd, &inc, s, &[], &BenchOptions::default()).is_err());
    }
}
