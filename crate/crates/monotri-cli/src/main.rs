//! Command-line front end: single-trinomial queries, family counts, main
//! terms, reference-table reproduction, and the squarefree B-search.

mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use monotri::arith::{self, Effort};
use monotri::asymptotics::{main_term_family, round_half_away, FamilyMainTerm};
use monotri::families::{
    count_family, density_constant_cf, local_obstruction_scan, search_b, search_form,
    CountConfig, FamilySpec,
};
use monotri::intpoly::IntPoly;
use monotri::monogenic::{is_monogenic_with, FamilyKind, MonogenicError, MonogenicVerdict};
use monotri::trinomial::{
    d_value, discriminant_resultant_oracle, discriminant_swan, galois_order_bound,
    irreducibility_certificate, CertReason, CertStatus, SearchBudget, Trinomial, TrinomialError,
};
use output::{fingerprint, fmt_real, Format, Record};

#[derive(Parser)]
#[command(name = "monotri", version, about = "Monogenic trinomial toolkit")]
struct Cli {
    /// Output format: json, csv or md.
    #[arg(long, global = true, default_value = "md")]
    format: Format,
    /// Factorization effort preset: default or quick.
    #[arg(long, global = true, default_value = "default")]
    effort: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TrinomialArgs {
    #[arg(long = "n")]
    n: u32,
    #[arg(long = "m")]
    m: u32,
    #[arg(long = "A", allow_hyphen_values = true)]
    a: BigInt,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: BigInt,
}

#[derive(Subcommand)]
enum Command {
    /// Decide monogenicity of one trinomial; reports disc, D, the Galois
    /// order bound and the irreducibility certificate.
    Check(TrinomialArgs),
    /// Both discriminant computations (closed form and resultant oracle).
    Disc(TrinomialArgs),
    /// Exact family count up to X with the attached main term.
    Count {
        /// first, second or kappa2.
        #[arg(long)]
        kind: String,
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "m")]
        m: u32,
        #[arg(long = "X", default_value_t = 10_000)]
        x: u64,
        /// Worker threads (0 = all available).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Congruence-sieve threshold.
        #[arg(long, default_value_t = 100_000)]
        p0: u64,
        #[arg(long, default_value_t = 10_000_000)]
        cutoff: u64,
        /// Count only members with non-squarefree discriminant.
        #[arg(long)]
        nonsquarefree_disc: bool,
    },
    /// Evaluate a family main term.
    MainTerm {
        #[arg(long)]
        kind: String,
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "m")]
        m: u32,
        #[arg(long = "X", default_value_t = 10_000)]
        x: u64,
        #[arg(long, default_value_t = 10_000_000)]
        cutoff: u64,
    },
    /// Recompute a bundled reference table and compare cell by cell.
    Tables {
        /// table1, table2 or table3.
        which: String,
        #[arg(long = "X")]
        x: Option<u64>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, default_value_t = 10_000_000)]
        cutoff: u64,
    },
    /// Emit primes p > A with F(p) squarefree and the trinomial constant
    /// terms B = p r kappa.
    SearchB {
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "m")]
        m: u32,
        #[arg(long = "A")]
        a: u64,
        #[arg(long = "r")]
        r: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Scan for local obstructions of an integer form.
    Obstructions {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 100)]
        q_max: u64,
    },
    /// Partial product of the squarefree-value density constant.
    Cf {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 100)]
        q_max: u64,
    },
}

#[derive(Args)]
struct FormArgs {
    /// Comma-separated integer coefficients, lowest degree first.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n", "m", "a", "r"])]
    coeffs: Option<String>,
    /// Build the B-search form from (n, m, A, r) instead.
    #[arg(long = "n", requires_all = ["m", "a", "r"])]
    n: Option<u32>,
    #[arg(long = "m")]
    m: Option<u32>,
    #[arg(long = "A")]
    a: Option<u64>,
    #[arg(long = "r")]
    r: Option<u64>,
}

impl FormArgs {
    fn poly(&self) -> Result<IntPoly, String> {
        if let Some(cs) = &self.coeffs {
            let coeffs: Result<Vec<BigInt>, _> =
                cs.split(',').map(|c| c.trim().parse::<BigInt>()).collect();
            let coeffs = coeffs.map_err(|e| format!("bad coefficient list: {e}"))?;
            let f = IntPoly::new(coeffs);
            if f.is_zero() {
                return Err("the zero polynomial is not a valid form".into());
            }
            Ok(f)
        } else if let (Some(n), Some(m), Some(a), Some(r)) = (self.n, self.m, self.a, self.r) {
            search_form(n, m, a, r).map_err(|e| e.to_string())
        } else {
            Err("pass either --coeffs or all of --n --m --A --r".into())
        }
    }
}

fn parse_kind(s: &str) -> Result<FamilyKind, String> {
    match s {
        "first" | "first-type" => Ok(FamilyKind::FirstType),
        "second" | "second-type" => Ok(FamilyKind::SecondType),
        "kappa2" | "kappa2-type" => Ok(FamilyKind::Kappa2Type),
        other => Err(format!("unknown kind {other:?} (expected first, second or kappa2)")),
    }
}

fn parse_effort(s: &str) -> Result<Effort, String> {
    match s {
        "default" => Ok(Effort::default()),
        "quick" => Ok(Effort::quick()),
        other => Err(format!("unknown effort {other:?} (expected default or quick)")),
    }
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn invalid(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INVALID)
}

fn config_fingerprint(effort: &Effort, p0: u64, cutoff: u64, nsd: bool) -> String {
    fingerprint(&format!(
        "p0={p0};cutoff={cutoff};trial={};rho={};bigrho={};nsd={nsd}",
        effort.trial_limit, effort.rho_budget, effort.big_rho_budget
    ))
}

fn cert_tokens(status: &CertStatus, reason: &CertReason) -> (String, String) {
    let s = match status {
        CertStatus::ProvenIrreducible => "irreducible".to_string(),
        CertStatus::ProvenReducible(_) => "reducible".to_string(),
        CertStatus::Unknown => "unknown".to_string(),
    };
    let r = match reason {
        CertReason::Eisenstein(p) => format!("eisenstein-{p}"),
        CertReason::ModPWitness(p) => format!("mod-p-witness-{p}"),
        CertReason::FactorSearchExhausted => "factor-search".to_string(),
        CertReason::BudgetExceeded => "budget-exceeded".to_string(),
    };
    (s, r)
}

fn run_check(args: &TrinomialArgs, effort: Effort, format: Format) -> Result<ExitCode, String> {
    let tri = Trinomial::new(args.n, args.m, args.a.clone(), args.b.clone())
        .map_err(|e| e.to_string())?;
    let budget = SearchBudget { effort, ..SearchBudget::default() };
    let mut rec = Record::new();
    rec.push("n", args.n.to_string());
    rec.push("m", args.m.to_string());
    rec.push("A", args.a.to_string());
    rec.push("B", args.b.to_string());
    rec.push("disc", discriminant_swan(&tri).to_string());
    let divides = args.n.is_multiple_of(args.m);
    match d_value(&tri) {
        Ok(d) => rec.push("D", d.to_string()),
        Err(TrinomialError::NonDivisorExponent { .. }) => rec.push("D", "not-applicable"),
        Err(e) => return Err(e.to_string()),
    }
    if divides {
        rec.push("galois_order_bound", galois_order_bound(&tri).unwrap().to_string());
    } else {
        rec.push("galois_order_bound", "not-applicable");
    }
    let cert = irreducibility_certificate(&tri, &budget);
    let (cs, cr) = cert_tokens(&cert.status, &cert.reason);
    rec.push("irreducibility", cs);
    rec.push("irreducibility_reason", cr);

    let mut exit = ExitCode::SUCCESS;
    if divides {
        match is_monogenic_with(&tri, &budget) {
            Ok(MonogenicVerdict::Monogenic) => {
                rec.push("verdict", "monogenic");
            }
            Ok(MonogenicVerdict::NotMonogenic { witness }) => {
                rec.push("verdict", "not-monogenic");
                rec.push("witness", witness.to_string());
            }
            Ok(MonogenicVerdict::Unknown { reason }) => {
                rec.push("verdict", "unknown");
                rec.push("reason", format!("{reason:?}"));
                exit = ExitCode::from(EXIT_BUDGET);
            }
            Err(MonogenicError::Reducible) => {
                rec.push("verdict", "reducible");
            }
            Err(e) => return Err(e.to_string()),
        }
    } else {
        rec.push("verdict", "not-applicable");
    }
    print!("{}", rec.render(format));
    Ok(exit)
}

fn run_disc(args: &TrinomialArgs, format: Format) -> Result<ExitCode, String> {
    let tri = Trinomial::new(args.n, args.m, args.a.clone(), args.b.clone())
        .map_err(|e| e.to_string())?;
    let swan = discriminant_swan(&tri);
    let oracle = discriminant_resultant_oracle(&tri);
    let mut rec = Record::new();
    rec.push("n", args.n.to_string());
    rec.push("m", args.m.to_string());
    rec.push("A", args.a.to_string());
    rec.push("B", args.b.to_string());
    rec.push("disc_closed_form", swan.to_string());
    rec.push("disc_resultant", oracle.to_string());
    rec.push("agree", (swan == oracle).to_string());
    print!("{}", rec.render(format));
    Ok(if swan == oracle { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
}

fn render_rows(rows: &[Record], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = String::from("[");
            for (i, r) in rows.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&r.render(Format::Json));
            }
            out.push_str("]\n");
            out
        }
        Format::Csv => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                let header: Vec<&str> = first.fields().iter().map(|(k, _)| k.as_str()).collect();
                out.push_str(&header.join(","));
                out.push('\n');
                for r in rows {
                    let vals: Vec<&str> = r.fields().iter().map(|(_, v)| v.as_str()).collect();
                    out.push_str(&vals.join(","));
                    out.push('\n');
                }
            }
            out
        }
        Format::Md => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                let header: Vec<&str> = first.fields().iter().map(|(k, _)| k.as_str()).collect();
                out.push_str(&format!("| {} |\n", header.join(" | ")));
                out.push_str(&format!(
                    "|{}|\n",
                    header.iter().map(|_| " --- ").collect::<Vec<_>>().join("|")
                ));
                for r in rows {
                    let vals: Vec<&str> = r.fields().iter().map(|(_, v)| v.as_str()).collect();
                    out.push_str(&format!("| {} |\n", vals.join(" | ")));
                }
            }
            out
        }
    }
}

fn run_tables(
    which: &str,
    x: Option<u64>,
    workers: usize,
    cutoff: u64,
    effort: Effort,
    format: Format,
) -> Result<ExitCode, String> {
    let mut rows = Vec::new();
    let mut all_match = true;
    match which {
        "table1" => {
            // Quartic candidates with one hypothesis removed: disc and
            // polynomial verdict fixtures.
            let fixtures: [(i64, i64, i64, &str); 4] = [
                (2, 4, 9216, "NM"),
                (2, 10, 207360, "NM"),
                (5, 5, 2000, "NM"),
                (7, 7, 49392, "M"),
            ];
            for (a, b, disc_fix, verdict_fix) in fixtures {
                let tri = Trinomial::from_i64(4, 2, a, b).unwrap();
                let disc = discriminant_swan(&tri);
                let verdict = match is_monogenic_with(
                    &tri,
                    &SearchBudget { effort, ..SearchBudget::default() },
                ) {
                    Ok(MonogenicVerdict::Monogenic) => "M",
                    Ok(MonogenicVerdict::NotMonogenic { .. }) => "NM",
                    _ => "?",
                };
                let ok = disc == BigInt::from(disc_fix) && verdict == verdict_fix;
                all_match &= ok;
                let mut r = Record::new();
                r.push("A", a.to_string());
                r.push("B", b.to_string());
                r.push("disc", disc.to_string());
                r.push("disc_fixture", disc_fix.to_string());
                r.push("verdict", verdict);
                r.push("verdict_fixture", verdict_fix);
                r.push("match", ok.to_string());
                rows.push(r);
            }
        }
        "table2" | "table3" => {
            let (kind, fam, fixtures): (_, _, &[(u32, u32, u64, i64)]) = if which == "table2" {
                (
                    FamilyKind::FirstType,
                    FamilyMainTerm::FirstType,
                    &[
                        (24, 12, 460, 461),
                        (19, 1, 5549, 5548),
                        (14, 7, 624, 618),
                        (12, 3, 1380, 1383),
                        (8, 4, 1617, 1614),
                    ],
                )
            } else {
                (
                    FamilyKind::SecondType,
                    FamilyMainTerm::SecondType,
                    &[(24, 12, 232, 231), (14, 7, 102, 103), (12, 3, 688, 691), (8, 4, 1619, 1614)],
                )
            };
            let x_eff = x.unwrap_or(10_000);
            let compare = x.is_none() || x == Some(10_000);
            for &(n, m, count_fix, main_fix) in fixtures {
                let spec = FamilySpec::new(kind, n, m, x_eff).map_err(|e| e.to_string())?;
                let cfg = CountConfig { workers, cutoff, effort, ..CountConfig::default() };
                let res = count_family(&spec, &cfg).map_err(|e| e.to_string())?;
                let main = main_term_family(fam, n, m, x_eff, cutoff).map_err(|e| e.to_string())?;
                let rounded = round_half_away(main);
                let ok = res.actual == count_fix && rounded == main_fix;
                if compare {
                    all_match &= ok;
                }
                let mut r = Record::new();
                r.push("n", n.to_string());
                r.push("m", m.to_string());
                r.push("X", x_eff.to_string());
                r.push("actual", res.actual.to_string());
                r.push("main_term", fmt_real(main));
                r.push("main_term_rounded", rounded.to_string());
                if compare {
                    r.push("actual_fixture", count_fix.to_string());
                    r.push("main_term_fixture", main_fix.to_string());
                    r.push("match", ok.to_string());
                } else {
                    r.push("actual_fixture", "skipped");
                    r.push("main_term_fixture", "skipped");
                    r.push("match", "skipped");
                }
                rows.push(r);
            }
        }
        other => return Err(format!("unknown table {other:?} (expected table1/table2/table3)")),
    }
    print!("{}", render_rows(&rows, format));
    Ok(if all_match { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
}

fn real_main() -> ExitCode {
    let cli = Cli::parse();
    let effort = match parse_effort(&cli.effort) {
        Ok(e) => e,
        Err(msg) => return invalid(&msg),
    };
    let format = cli.format;
    let started = Instant::now();

    let result: Result<ExitCode, String> = match &cli.command {
        Command::Check(args) => run_check(args, effort, format),
        Command::Disc(args) => run_disc(args, format),
        Command::Count { kind, n, m, x, workers, p0, cutoff, nonsquarefree_disc } => (|| {
            let kind = parse_kind(kind)?;
            let spec = FamilySpec::new(kind, *n, *m, *x).map_err(|e| e.to_string())?;
            let cfg = CountConfig {
                p0: *p0,
                workers: *workers,
                cutoff: *cutoff,
                effort,
                nonsquarefree_disc_only: *nonsquarefree_disc,
            };
            let res = count_family(&spec, &cfg).map_err(|e| match e {
                monotri::families::FamiliesError::BudgetExhausted { a } => format!("budget:{a}"),
                other => other.to_string(),
            })?;
            let mut rec = Record::new();
            rec.push("kind", kind.to_string());
            rec.push("n", n.to_string());
            rec.push("m", m.to_string());
            rec.push("X", x.to_string());
            rec.push("actual", res.actual.to_string());
            match res.main_term {
                Some(v) => {
                    rec.push_real("main_term", v);
                    rec.push("main_term_rounded", round_half_away(v).to_string());
                }
                None => rec.push("main_term", "not-applicable"),
            }
            rec.push("config", config_fingerprint(&effort, *p0, *cutoff, *nonsquarefree_disc));
            print!("{}", rec.render(format));
            Ok(ExitCode::SUCCESS)
        })(),
        Command::MainTerm { kind, n, m, x, cutoff } => (|| {
            let kind = match parse_kind(kind)? {
                FamilyKind::FirstType => FamilyMainTerm::FirstType,
                FamilyKind::SecondType => FamilyMainTerm::SecondType,
                other => return Err(format!("no main-term formula for kind {other}")),
            };
            let v = main_term_family(kind, *n, *m, *x, *cutoff).map_err(|e| e.to_string())?;
            let mut rec = Record::new();
            rec.push("n", n.to_string());
            rec.push("m", m.to_string());
            rec.push("X", x.to_string());
            rec.push("cutoff", cutoff.to_string());
            rec.push_real("main_term", v);
            rec.push("main_term_rounded", round_half_away(v).to_string());
            print!("{}", rec.render(format));
            Ok(ExitCode::SUCCESS)
        })(),
        Command::Tables { which, x, workers, cutoff } => {
            run_tables(which, *x, *workers, *cutoff, effort, format)
        }
        Command::SearchB { n, m, a, r, count } => (|| {
            let hits = search_b(*n, *m, *a, *r, *count).map_err(|e| e.to_string())?;
            let kappa = arith::squarefree_kernel(*m as u64);
            let rows: Vec<Record> = hits
                .iter()
                .map(|h| {
                    let mut rec = Record::new();
                    rec.push("p", h.p.to_string());
                    rec.push("B", h.b.to_string());
                    rec.push("r_kappa", (r * kappa).to_string());
                    rec
                })
                .collect();
            print!("{}", render_rows(&rows, format));
            Ok(ExitCode::SUCCESS)
        })(),
        Command::Obstructions { form, q_max } => (|| {
            let f = form.poly()?;
            let obstructed = local_obstruction_scan(&f, *q_max);
            let mut rec = Record::new();
            rec.push(
                "coeffs",
                f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";"),
            );
            rec.push("q_max", q_max.to_string());
            rec.push(
                "obstructed_primes",
                if obstructed.is_empty() {
                    "none".to_string()
                } else {
                    obstructed.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(";")
                },
            );
            print!("{}", rec.render(format));
            Ok(ExitCode::SUCCESS)
        })(),
        Command::Cf { form, q_max } => (|| {
            let f = form.poly()?;
            let est = density_constant_cf(&f, *q_max).map_err(|e| e.to_string())?;
            let mut rec = Record::new();
            rec.push(
                "coeffs",
                f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";"),
            );
            rec.push("q_max", q_max.to_string());
            rec.push_real("value", est.value);
            rec.push_real("tail_bound", est.tail_bound);
            print!("{}", rec.render(format));
            Ok(ExitCode::SUCCESS)
        })(),
    };

    eprintln!("elapsed: {:.3?}", started.elapsed());
    match result {
        Ok(code) => code,
        Err(msg) => {
            if let Some(a) = msg.strip_prefix("budget:") {
                eprintln!("error: squarefree budget exhausted at A = {a}");
                ExitCode::from(EXIT_BUDGET)
            } else {
                invalid(&msg)
            }
        }
    }
}

fn main() -> ExitCode {
    real_main()
}
