use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use imsc::io::{
    load_fis, load_transactions, save_fis, save_rules, save_transactions, write_bench_csv,
};
use imsc::{
    classify_itemsets, generate_db, generate_rules, maintain_with, mine_apriori, parse_sweep,
    run_bench, BenchOptions, Error, GenParams, ItemDictionary, Itemset, MaintainOptions, Threshold,
};

#[derive(Debug, Parser)]
#[command(
    name = "imsc",
    version,
    about = "Frequent itemset mining and incremental maintenance"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mine frequent itemsets with Apriori.
    Mine {
        #[arg(long)]
        db: PathBuf,
        /// Support threshold: "30%", "0.30" or "3/10".
        #[arg(long)]
        minsup: Threshold,
        #[arg(long)]
        out: PathBuf,
    },
    /// Update a stored result for an increment at a possibly different threshold.
    Maintain {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        inc: PathBuf,
        #[arg(long)]
        fis: PathBuf,
        #[arg(long)]
        minsup: Threshold,
        #[arg(long)]
        out: PathBuf,
        /// Print the plan and the winner / persistent / loser itemsets.
        #[arg(long)]
        report: bool,
        /// Skip the sampled recount of the stored itemsets.
        #[arg(long)]
        no_validate: bool,
    },
    /// Generate association rules from a stored result.
    Rules {
        #[arg(long)]
        fis: PathBuf,
        #[arg(long)]
        minconf: Threshold,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate synthetic transactions.
    Gen {
        #[arg(long)]
        transactions: usize,
        #[arg(long)]
        avg_len: f64,
        #[arg(long)]
        avg_pattern_len: f64,
        #[arg(long, default_value_t = 2000)]
        patterns: usize,
        #[arg(long, default_value_t = 1000)]
        items: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep the new threshold and compare maintenance with re-mining.
    Bench {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        inc: PathBuf,
        #[arg(long)]
        minsup_old: Threshold,
        /// LO:HI:STEP, e.g. "5%:60%:5%".
        #[arg(long)]
        sweep: String,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Usage(String),
    Data(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Mine { db, minsup, out } => {
            let mut dict = ItemDictionary::new();
            let db = load_transactions(&db, &mut dict)?;
            let f = mine_apriori(&db, minsup);
            save_fis(&f, &dict, &out)?;
        }
        Command::Maintain {
            db,
            inc,
            fis,
            minsup,
            out,
            report,
            no_validate,
        } => {
            let mut dict = ItemDictionary::new();
            let big = load_transactions(&db, &mut dict)?;
            let inc = load_transactions(&inc, &mut dict)?;
            let f = load_fis(&fis, &mut dict)?;
            let opts = MaintainOptions {
                validate: !no_validate,
                ..Default::default()
            };
            let m = maintain_with(&f, &big, &inc, minsup, &opts)?;
            save_fis(&m.store, &dict, &out)?;
            if report {
                let cls = classify_itemsets(&f, &m.store);
                let list = |sets: &std::collections::BTreeSet<Itemset>| {
                    let mut rendered: Vec<(usize, String)> = sets
                        .iter()
                        .map(|x| (x.len(), format!("{{{}}}", dict.render(x))))
                        .collect();
                    rendered.sort();
                    rendered
                        .into_iter()
                        .map(|(_, s)| s)
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                println!("scenario={}", m.plan.scenario);
                println!("cpt={}", m.plan.cpt);
                println!("pruning_cpt={}", m.plan.pruning_cpt);
                println!("min_supp={}", m.plan.min_supp);
                println!("D={} d={}", m.plan.big_d, m.plan.little_d);
                println!("winners={}", list(&cls.winners));
                println!("persistents={}", list(&cls.persistents));
                println!("losers={}", list(&cls.losers));
                println!(
                    "passes: bd={} inc={}",
                    m.stats.big_db_passes, m.stats.inc_db_passes
                );
            }
        }
        Command::Rules { fis, minconf, out } => {
            let mut dict = ItemDictionary::new();
            let f = load_fis(&fis, &mut dict)?;
            let rules = generate_rules(&f, minconf)?;
            save_rules(&rules, &dict, &out)?;
        }
        Command::Gen {
            transactions,
            avg_len,
            avg_pattern_len,
            patterns,
            items,
            seed,
            out,
        } => {
            let params = GenParams {
                n_transactions: transactions,
                avg_tx_len: avg_len,
                avg_pattern_len,
                n_patterns: patterns,
                n_items: items,
                seed,
                ..Default::default()
            };
            match params.validate() {
                Ok(warnings) => warnings.iter().for_each(|w| eprintln!("warning: {w}")),
                Err(e) => return Err(CliError::Usage(e.to_string())),
            }
            let mut dict = ItemDictionary::new();
            let db = generate_db(&params, &mut dict)?;
            save_transactions(&db, &dict, &out)?;
        }
        Command::Bench {
            db,
            inc,
            minsup_old,
            sweep,
            csv,
            repeats,
        } => {
            let sweep = parse_sweep(&sweep).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut dict = ItemDictionary::new();
            let big = load_transactions(&db, &mut dict)?;
            let inc = load_transactions(&inc, &mut dict)?;
            let rows = run_bench(&big, &inc, minsup_old, &sweep, &BenchOptions { repeats })?;
            write_bench_csv(&rows, &csv)?;
        }
    }
    Ok(())
}
