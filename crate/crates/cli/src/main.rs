use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kummer_genus::decomposition::{genus_split_report, DecompositionError, PrimeOfK};
use kummer_genus::finite_field::prime_power;
use kummer_genus::genus::{ambiguous_class_count, galois_structure, genus_degrees, genus_field};
use kummer_genus::symbols::{
    hilbert_symbol, product_formula_check, reciprocity_relation, residue_symbol_composite,
};
use kummer_genus::verify::{
    genus_consistency_sweep, place_name, reciprocity_sweep, symbols_sweep, SweepReport,
};
use kummer_genus::{
    FqField, KummerDatum, MonicIrreducible, Place, Poly, PolyRing, RootOfUnity, SplittingData,
};

#[derive(Parser)]
#[command(name = "kgenus", version, about = "Genus fields and residue symbols for Kummer extensions of F_q(T)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field order, as `p^m` or an integer.
    #[arg(long)]
    q: String,
    /// Kummer degree, a divisor of q - 1.
    #[arg(long)]
    n: u32,
}

#[derive(Args, Clone)]
struct Output {
    /// Print JSON instead of text, to stdout or to the given file.
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    json: Option<Option<String>>,
    /// Seed for all randomized choices.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Datum, local splitting at the ramified places and infinity, and index formulas.
    Describe {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "D")]
        d: String,
        #[command(flatten)]
        out: Output,
    },
    /// The extended genus field, its degrees and ambiguous class count.
    Genus {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "D")]
        d: String,
        #[command(flatten)]
        out: Output,
    },
    /// Power residue symbol (top/bottom)_n.
    Symbol {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        top: String,
        #[arg(long)]
        bottom: String,
        #[command(flatten)]
        out: Output,
    },
    /// Hilbert symbol (R, S) at one place, or at every place with the product.
    Hilbert {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "R")]
        r: String,
        #[arg(long = "S")]
        s: String,
        /// A monic irreducible or `inf`; omit for the full product formula table.
        #[arg(long)]
        place: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Reciprocity relation between two distinct monic irreducibles.
    Reciprocity {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "Q")]
        q_prime: String,
        #[arg(long = "R")]
        r: String,
        #[command(flatten)]
        out: Output,
    },
    /// Splitting of Q in K and full decomposition in the genus field.
    Split {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "D")]
        d: String,
        #[arg(long = "Q")]
        q_prime: String,
        /// Expected inertia degree; a mismatch is an error.
        #[arg(long)]
        f: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive or seeded verification campaign.
    Sweep {
        #[arg(long, value_enum)]
        campaign: Campaign,
        /// Comma-separated field orders; defaults depend on the campaign.
        #[arg(long)]
        q: Option<String>,
        /// Degree bound for the exhaustive campaigns.
        #[arg(long)]
        degree: Option<usize>,
        /// Random data per (q, n) for the genus campaign.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Worker cap; campaigns currently run on one thread.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        threads: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Runs every campaign at the acceptance ranges (or small ranges with --quick).
    Selftest {
        #[arg(long)]
        quick: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Campaign {
    Reciprocity,
    Genus,
    Symbols,
}

/// Exit code 1: the input is invalid; exit code 2: a check failed.
enum Failure {
    Domain(String),
    Check(String),
}

type CmdResult = Result<(), Failure>;

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn parse_q(s: &str) -> Result<u64, Failure> {
    let s = s.trim();
    let q = match s.split_once('^') {
        Some((p, m)) => {
            let p: u64 = p.trim().parse().map_err(|_| domain(format!("bad prime in q: {s}")))?;
            let m: u32 = m.trim().parse().map_err(|_| domain(format!("bad exponent in q: {s}")))?;
            p.checked_pow(m).ok_or_else(|| domain(format!("q = {s} is too large")))?
        }
        None => s.parse().map_err(|_| domain(format!("q must be p^m or an integer, got {s}")))?,
    };
    if prime_power(q).is_none() {
        return Err(domain(format!("q = {q} is not a prime power")));
    }
    Ok(q)
}

fn make_field(s: &str) -> Result<FqField, Failure> {
    FqField::with_order(parse_q(s)?).map_err(domain)
}

fn parse_poly(ring: &PolyRing, name: &str, s: &str) -> Result<Poly, Failure> {
    ring.parse(s)
        .map_err(|e| domain(format!("--{name} {s:?}: {e}")))
}

fn parse_prime(ring: &PolyRing, name: &str, s: &str) -> Result<MonicIrreducible, Failure> {
    let p = parse_poly(ring, name, s)?;
    ring.monic_irreducible(p)
        .map_err(|e| domain(format!("--{name}: {e}")))
}

fn make_datum(field: &FieldArgs, d: &str) -> Result<KummerDatum, Failure> {
    let f = make_field(&field.q)?;
    let ring = PolyRing::new(f.clone());
    let d = parse_poly(&ring, "D", d)?;
    KummerDatum::normalize(&f, field.n, &d).map_err(domain)
}

fn emit(out: &Output, value: Value, text: impl FnOnce() -> String) -> CmdResult {
    match &out.json {
        None => print!("{}", text()),
        Some(None) => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
        Some(Some(path)) => {
            let body = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
            fs::write(path, body).map_err(|e| domain(format!("writing {path}: {e}")))?;
        }
    }
    Ok(())
}

fn symbol_json(f: &FqField, s: RootOfUnity) -> Value {
    json!({ "n": s.n(), "exponent": s.exponent(), "value": f.format_element(f.root_value(s)) })
}

fn splitting_json(s: SplittingData) -> Value {
    json!({ "e": s.e, "f": s.f, "g": s.g })
}

fn wrap(s: String) -> String {
    if s.contains(['+', '*']) {
        format!("({s})")
    } else {
        s
    }
}

fn galois_text(inv: &[u32]) -> String {
    if inv.is_empty() {
        return "trivial".to_string();
    }
    inv.iter().map(|e| format!("C{e}")).collect::<Vec<_>>().join(" x ")
}

fn describe(field: &FieldArgs, d: &str, out: &Output) -> CmdResult {
    let datum = make_datum(field, d)?;
    let ring = datum.ring();
    let mut places = Vec::new();
    for p in datum.ramified_primes() {
        let s = datum
            .local_splitting(&Place::Finite(p.clone()))
            .map_err(domain)?;
        places.push((ring.format(p.poly()), s));
    }
    places.push(("inf".to_string(), datum.infinity_splitting()));
    let inv = datum.invariants();
    let value = json!({
        "command": "describe",
        "datum": datum.to_record(),
        "D": ring.format(datum.d()),
        "places": places.iter().map(|(name, s)| json!({
            "place": name, "e": s.e, "f": s.f, "g": s.g,
        })).collect::<Vec<_>>(),
        "invariants": inv,
    });
    emit(out, value, || {
        let mut t = format!("K = {datum}\n");
        t += &format!("gamma = {}\n", datum.field().format_element(datum.gamma()));
        for (name, s) in &places {
            t += &format!("{name}: {s}\n");
        }
        t += &format!("delta index n^2/(e_inf f_inf): {}\n", inv.delta_index);
        t += &format!("|k_inf^* / k_inf^*n|: {}\n", inv.kinf_mod_n_order);
        t += &format!(
            "unit index: {}\n",
            match inv.unit_index_exact {
                Some(u) => u.to_string(),
                None => format!("divides {}", inv.unit_index_divides),
            }
        );
        t += &format!("Herbrand quotient of units: {}\n", inv.herbrand_u);
        t += &format!("|H^1(G, U_K^+)|: {}\n", inv.h1_u_plus);
        t += &format!("|I_K / I_k|: {}\n", inv.ik_over_ik);
        t
    })
}

fn genus(field: &FieldArgs, d: &str, out: &Output) -> CmdResult {
    let datum = make_datum(field, d)?;
    let ring = datum.ring();
    let gf = genus_field(&datum);
    let deg = genus_degrees(&datum);
    let gal = galois_structure(&datum);
    let amb = ambiguous_class_count(&datum);
    let value = json!({
        "command": "genus",
        "field": gf.to_string(),
        "constant_degree": gf.constant_degree(),
        "components": gf.components().iter().map(|(p, e)| json!({
            "P": ring.format(p.poly()), "e": e,
        })).collect::<Vec<_>>(),
        "degree_over_k": deg.over_k,
        "degree_over_K": deg.over_big_k,
        "galois_structure": gal,
        "ambiguous_classes": amb,
    });
    emit(out, value, || {
        format!(
            "{gf}\ndegrees: ({}, {})\ngalois structure: {}\nambiguous classes: {amb}\n",
            deg.over_k,
            deg.over_big_k,
            galois_text(&gal)
        )
    })
}

fn symbol(field: &FieldArgs, top: &str, bottom: &str, out: &Output) -> CmdResult {
    let f = make_field(&field.q)?;
    let ring = PolyRing::new(f.clone());
    let d = parse_poly(&ring, "top", top)?;
    let r = parse_poly(&ring, "bottom", bottom)?;
    let s = residue_symbol_composite(&ring, &d, &r, field.n).map_err(domain)?;
    let value = json!({
        "command": "symbol",
        "q": f.order(),
        "top": ring.format(&d),
        "bottom": ring.format(&r),
        "symbol": symbol_json(&f, s),
    });
    emit(out, value, || {
        format!(
            "({}/{})_{} = {s}\nexponent: {}\nvalue: {}\n",
            wrap(ring.format(&d)),
            wrap(ring.format(&r)),
            field.n,
            s.exponent(),
            f.format_element(f.root_value(s))
        )
    })
}

fn hilbert(field: &FieldArgs, r: &str, s: &str, place: Option<&str>, out: &Output) -> CmdResult {
    let f = make_field(&field.q)?;
    let ring = PolyRing::new(f.clone());
    let r = parse_poly(&ring, "R", r)?;
    let s = parse_poly(&ring, "S", s)?;
    let table = match place {
        Some("inf") => {
            let v = hilbert_symbol(&ring, &r, &s, &Place::Infinity, field.n).map_err(domain)?;
            (vec![(Place::Infinity, v)], None)
        }
        Some(p) => {
            let p = Place::Finite(parse_prime(&ring, "place", p)?);
            let v = hilbert_symbol(&ring, &r, &s, &p, field.n).map_err(domain)?;
            (vec![(p, v)], None)
        }
        None => {
            let pf = product_formula_check(&ring, &r, &s, field.n).map_err(domain)?;
            (pf.table, Some(pf.holds))
        }
    };
    let (rows, holds) = table;
    let value = json!({
        "command": "hilbert",
        "R": ring.format(&r),
        "S": ring.format(&s),
        "symbols": rows.iter().map(|(p, v)| json!({
            "place": place_name(&ring, p), "symbol": symbol_json(&f, *v),
        })).collect::<Vec<_>>(),
        "product_formula_holds": holds,
    });
    emit(out, value, || {
        let mut t = String::new();
        for (p, v) in &rows {
            t += &format!("({}, {})_{} = {v}\n", ring.format(&r), ring.format(&s), place_name(&ring, p));
        }
        if let Some(h) = holds {
            t += &format!("product formula holds: {h}\n");
        }
        t
    })
}

fn reciprocity(field: &FieldArgs, q: &str, r: &str, out: &Output) -> CmdResult {
    let f = make_field(&field.q)?;
    let ring = PolyRing::new(f.clone());
    let q = parse_prime(&ring, "Q", q)?;
    let r = parse_prime(&ring, "R", r)?;
    let rec = reciprocity_relation(&ring, &q, &r, field.n).map_err(domain)?;
    let value = json!({
        "command": "reciprocity",
        "Q": ring.format(q.poly()),
        "R": ring.format(r.poly()),
        "lhs": symbol_json(&f, rec.lhs),
        "sign_factor": symbol_json(&f, rec.sign_factor),
        "unsigned_equality_holds": rec.unsigned_equality_holds,
        "signed_equality_holds": rec.carlitz_equality_holds,
    });
    emit(out, value, || {
        format!(
            "(Q/R)_n (R/Q)_n^-1 = {}\nsign factor = {}\nequals 1: {}\nequals sign factor: {}\n",
            rec.lhs, rec.sign_factor, rec.unsigned_equality_holds, rec.carlitz_equality_holds
        )
    })
}

fn split(field: &FieldArgs, d: &str, q: &str, expected_f: Option<u32>, out: &Output) -> CmdResult {
    let datum = make_datum(field, d)?;
    let ring = datum.ring();
    let q = parse_prime(ring, "Q", q)?;
    let prime = PrimeOfK::above(&datum, &q).map_err(domain)?;
    if let Some(f) = expected_f {
        if f != prime.f {
            return Err(domain(DecompositionError::InertiaMismatch {
                prime: ring.format(q.poly()),
                expected: f,
                actual: prime.f,
            }));
        }
    }
    let splitting = SplittingData { e: prime.e, f: prime.f, g: prime.g };
    let report = if prime.e == 1 {
        Some(genus_split_report(&datum, &prime).map_err(domain)?)
    } else {
        None
    };
    let value = json!({
        "command": "split",
        "Q": ring.format(q.poly()),
        "splitting": splitting_json(splitting),
        "genus": report,
    });
    emit(out, value, || {
        let mut t = format!("{}: {splitting}\n", ring.format(q.poly()));
        match &report {
            None => t += "ramified in K; the genus criterion does not apply\n",
            Some(r) => {
                t += &format!("B = {}\n", r.b);
                t += &format!("n | deg B: {}\n", r.n_divides_deg_b);
                t += &format!("splits fully in genus field (via B): {}\n", r.via_b);
                t += &format!("splits fully in genus field (direct): {}\n", r.direct);
                t += &format!("n-th power variant: {}\n", r.nth_power_variant);
                for c in &r.components {
                    t += &format!(
                        "  P = {} e = {}: (B/P)_e = {}, (P*/Q)_e^f = {}, (B/P)_n = {}\n",
                        c.p, c.e, c.via_b, c.direct, c.nth_power
                    );
                }
            }
        }
        t
    })
}

fn parse_q_list(s: Option<&str>, default: &[u64]) -> Result<Vec<u64>, Failure> {
    match s {
        None => Ok(default.to_vec()),
        Some(s) => s.split(',').map(parse_q).collect(),
    }
}

fn report_outcome(reports: &[SweepReport], out: &Output, command: &str) -> CmdResult {
    let value = json!({ "command": command, "reports": reports });
    emit(out, value, || {
        let mut t = String::new();
        for r in reports {
            t += &format!(
                "[{}] {}\n",
                if r.passed() { "PASS" } else { "FAIL" },
                r.summary()
            );
            for (k, v) in &r.tallies {
                t += &format!("    {k}: {v}\n");
            }
            for f in &r.failures {
                t += &format!("    {}: {:?} {}\n", f.check, f.inputs, f.detail);
            }
        }
        t
    })?;
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.campaign.clone()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed campaigns: {}", failed.join(", "))))
    }
}

fn sweep(campaign: Campaign, q: Option<&str>, degree: Option<usize>, count: usize, out: &Output) -> CmdResult {
    let report = match campaign {
        Campaign::Reciprocity => {
            let qs = parse_q_list(q, &[3, 5, 7, 9])?;
            reciprocity_sweep(&qs, degree.unwrap_or(3))
        }
        Campaign::Genus => {
            let qs = parse_q_list(q, &[3, 4, 5, 7, 8, 9, 11, 13])?;
            genus_consistency_sweep(&qs, count, out.seed)
        }
        Campaign::Symbols => {
            let qs = parse_q_list(q, &[3, 5, 7, 9])?;
            symbols_sweep(&qs, 343, degree.unwrap_or(3))
        }
    };
    report_outcome(&[report], out, "sweep")
}

fn selftest(quick: bool, out: &Output) -> CmdResult {
    let reports = if quick {
        vec![
            genus_consistency_sweep(&[3, 4, 5, 7], 3, out.seed),
            symbols_sweep(&[3, 5], 27, 2),
            reciprocity_sweep(&[3, 5, 7], 2),
        ]
    } else {
        vec![
            genus_consistency_sweep(&[3, 4, 5, 7, 8, 9, 11, 13], 20, out.seed),
            symbols_sweep(&[3, 5, 7, 9], 343, 3),
            reciprocity_sweep(&[3, 5, 7, 9], 3),
        ]
    };
    report_outcome(&reports, out, "selftest")
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Describe { field, d, out } => describe(field, d, out),
        Command::Genus { field, d, out } => genus(field, d, out),
        Command::Symbol { field, top, bottom, out } => symbol(field, top, bottom, out),
        Command::Hilbert { field, r, s, place, out } => hilbert(field, r, s, place.as_deref(), out),
        Command::Reciprocity { field, q_prime, r, out } => reciprocity(field, q_prime, r, out),
        Command::Split { field, d, q_prime, f, out } => split(field, d, q_prime, *f, out),
        Command::Sweep { campaign, q, degree, count, threads: _, out } => {
            sweep(*campaign, q.as_deref(), *degree, *count, out)
        }
        Command::Selftest { quick, out } => selftest(*quick, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
    }
}
