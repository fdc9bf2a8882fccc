//! Acceptance gate: seven exhaustive or seeded campaigns with time limits.
//! Each prints one PASS/FAIL line; the test fails if any criterion fails.

use std::time::{Duration, Instant};

use kummer_genus::verify::{
    decomposition_campaign, genus_structure_campaign, index_campaign, product_formula_sweep,
    reciprocity_sweep, residue_symbol_sweep, splitting_campaign, sweep_data, ORACLE_BOUND,
};
use kummer_genus::{KummerDatum, SweepReport};

const SEED: u64 = 0;
const SWEEP_FIELDS: [u64; 8] = [3, 4, 5, 7, 8, 9, 11, 13];
const SYMBOL_FIELDS: [u64; 6] = [3, 4, 5, 7, 8, 9];
const PAIR_FIELDS: [u64; 4] = [3, 5, 7, 9];

struct Outcome {
    name: &'static str,
    report: SweepReport,
    limit: Duration,
    extra: String,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.report.passed() && self.report.cases > 0 && self.report.elapsed <= self.limit
    }

    fn line(&self) -> String {
        format!(
            "[{}] {}: {} cases, {} failures, {:.2?} (limit {:?}){}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.report.cases,
            self.report.failure_count,
            self.report.elapsed,
            self.limit,
            self.extra
        )
    }
}

fn data() -> Vec<KummerDatum> {
    sweep_data(&SWEEP_FIELDS, 12, 20, SEED).expect("sweep fields are valid")
}

fn with_generation(mut report: SweepReport, generation: Duration) -> SweepReport {
    report.elapsed += generation;
    report
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let sweep = data();
    let generation = start.elapsed();
    assert_eq!(sweep.len(), 20 * (2 + 2 + 3 + 4 + 2 + 4 + 4 + 6));

    let mut outcomes = Vec::new();

    outcomes.push(Outcome {
        name: "1 genus field degrees and ambiguous classes",
        report: with_generation(genus_structure_campaign(&sweep), generation),
        limit: Duration::from_secs(10),
        extra: String::new(),
    });

    outcomes.push(Outcome {
        name: "2 residue symbol vs enumeration, multiplicativity, constants",
        report: residue_symbol_sweep(&SYMBOL_FIELDS, 343, 2),
        limit: Duration::from_secs(30),
        extra: String::new(),
    });

    outcomes.push(Outcome {
        name: "3 product formula",
        report: product_formula_sweep(&PAIR_FIELDS, 3),
        limit: Duration::from_secs(60),
        extra: String::new(),
    });

    let rec = reciprocity_sweep(&PAIR_FIELDS, 3);
    let q7n2 = rec
        .tallies
        .get("unsigned_equality_failures[q=7,n=2]")
        .copied()
        .unwrap_or(0);
    let extra = format!(
        "; unsigned equality fails in {} cases ({} for q=7, n=2)",
        rec.tallies.get("unsigned_equality_failures").copied().unwrap_or(0),
        q7n2
    );
    outcomes.push(Outcome {
        name: "4 reciprocity (signed form)",
        report: rec,
        limit: Duration::from_secs(60),
        extra,
    });

    outcomes.push(Outcome {
        name: "5 splitting data vs factorization oracle",
        report: with_generation(splitting_campaign(&sweep, ORACLE_BOUND), generation),
        limit: Duration::from_secs(60),
        extra: String::new(),
    });

    let dec = with_generation(decomposition_campaign(&sweep, 3), generation);
    let extra = format!(
        "; {} inert, {} fully split",
        dec.tallies.get("inert").copied().unwrap_or(0),
        dec.tallies.get("fully_split").copied().unwrap_or(0)
    );
    outcomes.push(Outcome {
        name: "6 genus decomposition criteria",
        report: dec,
        limit: Duration::from_secs(60),
        extra,
    });

    let idx = with_generation(index_campaign(&sweep), generation);
    let extra = format!(
        "; {} data with inert infinity",
        idx.tallies.get("inert_infinity").copied().unwrap_or(0)
    );
    outcomes.push(Outcome {
        name: "7 index formulas",
        report: idx,
        limit: Duration::from_secs(5),
        extra,
    });

    for o in &outcomes {
        println!("{}", o.line());
        for f in o.report.failures.iter().take(5) {
            println!("    {}: {:?} {}", f.check, f.inputs, f.detail);
        }
    }
    assert!(q7n2 > 0, "expected unsigned reciprocity failures for q=7, n=2");
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.name).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
