//! `hzknot`: HOMFLY–PT polynomials, Harer–Zagier transforms and their
//! factorised-form decompositions from the command line.
//!
//! Exit codes: 0 success, 1 failed check or other error, 2 unparseable
//! input, 3 unsupported strand count, 4 no decomposition found.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hzknot::braid::torus_braid;
use hzknot::families::{coxeter_link_name, pretzel_braid, pretzel_braid_alt};
use hzknot::homfly::{alexander, homfly, jones, HomflyReport};
use hzknot::hz::{check_fact_conditions, factorise, hz_summation_oracle, hz_transform};
use hzknot::{
    decompose, predict_family, quiver_poly, verify_family, BraidWord, FactorCert, FamilyIndex, FixtureSet, HzError,
    QuiverSeries,
};

#[derive(Parser)]
#[command(
    name = "hzknot",
    version,
    about = "HOMFLY-PT polynomials and Harer-Zagier transforms of braid closures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct BraidArgs {
    /// Braid word: signed generator indices separated by spaces or commas,
    /// `-k` standing for the inverse of σ_k.
    #[arg(allow_hyphen_values = true)]
    braid: String,
    /// Number of strands (default: the fewest the letters need).
    #[arg(long)]
    strands: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl BraidArgs {
    fn word(&self) -> Result<BraidWord, HzError> {
        BraidWord::parse(&self.braid, self.strands)
    }
}

#[derive(Subcommand)]
enum Command {
    /// HOMFLY-PT polynomial with its Racah coefficients.
    Homfly(BraidArgs),
    /// Harer-Zagier transform, factorisability certificate and optionally a
    /// factorised-form decomposition.
    Hz {
        #[command(flatten)]
        braid: BraidArgs,
        /// Decompose into factorised forms.
        #[arg(long)]
        decompose: bool,
        /// Evaluate the sufficient factorisability conditions (3 to 5 strands).
        #[arg(long)]
        check_conditions: bool,
        /// Print the λ-series to this order, checked against direct
        /// substitution.
        #[arg(long, value_name = "N")]
        series_terms: Option<usize>,
    },
    /// Jones polynomial in q (the variable t = q²).
    Jones(BraidArgs),
    /// Alexander polynomial in q (the variable t = q²).
    Alexander(BraidArgs),
    /// Closed-form prediction for the family K^(m)_{j,k,l}, verified against
    /// the pipeline for m ≤ 5.
    Family {
        m: usize,
        #[arg(allow_negative_numbers = true)]
        j: i64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(allow_negative_numbers = true)]
        l: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Polynomial and HZ transform of an A, D or E Dynkin quiver's Coxeter
    /// link, cross-checked against a braid where one is known.
    Quiver {
        series: QuiverSeries,
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run every fixture of a JSON fixture file.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A command failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<HzError> for Failure {
    fn from(e: HzError) -> Self {
        let code = match &e {
            HzError::BraidParse(_)
            | HzError::InvalidLetter { .. }
            | HzError::InvalidDiagram(_)
            | HzError::Malformed(_)
            | HzError::Expr(_) => 2,
            HzError::UnsupportedStrands { .. } | HzError::TooFewStrands { .. } => 3,
            HzError::DecompositionNotFound { .. } => 4,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn mismatch(message: String) -> Failure {
    Failure { code: 1, message }
}

type CmdResult = Result<(), Failure>;

/// The braid word for display; the empty word prints as `()`.
fn show(b: &BraidWord) -> String {
    if b.is_empty() {
        "()".to_string()
    } else {
        b.to_string()
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialise"));
}

fn cmd_homfly(args: &BraidArgs) -> CmdResult {
    let b = args.word()?;
    let h = homfly(&b)?;
    let report = HomflyReport::new(&b, &h);
    match args.format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("report serialises");
            v["braid"] = json!(b.to_string());
            v["strands"] = json!(b.strands());
            v["writhe"] = json!(b.writhe());
            v["components"] = json!(h.components);
            print_json(&v);
        }
        Format::Text => {
            println!(
                "braid: {} ({} strands, writhe {}, {} component(s))",
                show(&b),
                b.strands(),
                b.writhe(),
                h.components
            );
            println!("H = {}", report.h);
            println!("Hbar = {}", report.hbar);
            println!("Racah coefficients:");
            for (q, p) in &report.racah {
                println!("  h^{q} = {p}");
            }
        }
    }
    Ok(())
}

fn cert_line(cert: &FactorCert) -> String {
    match cert {
        FactorCert::Factorisable { .. } => {
            let exps: Vec<String> = cert
                .full_factors()
                .iter()
                .map(|&(s, a)| if s < 0 { format!("{a}+") } else { a.to_string() })
                .collect();
            format!("factorisable, numerator exponents [{}]", exps.join(","))
        }
        FactorCert::NonFactorisable { .. } => "non-factorisable".to_string(),
    }
}

fn cmd_hz(args: &BraidArgs, with_decomposition: bool, conditions: bool, series_terms: Option<usize>) -> CmdResult {
    let b = args.word()?;
    let h = homfly(&b)?;
    let z = hz_transform(&h)?;
    let cert = factorise(&z);
    let decomposition = if with_decomposition {
        match decompose(&z) {
            Ok(d) => Some(d),
            Err(e @ HzError::DecompositionNotFound { .. }) => {
                println!("Z = {}", z.pretty());
                return Err(e.into());
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let report = if conditions {
        Some(check_fact_conditions(&b)?)
    } else {
        None
    };
    let series = match series_terms {
        Some(n) => {
            let s = z.series(n);
            let oracle = hz_summation_oracle(&h, n)?;
            if s != oracle {
                return Err(mismatch(format!(
                    "series {s:?} disagrees with direct substitution {oracle:?}"
                )));
            }
            Some(s)
        }
        None => None,
    };
    match args.format {
        Format::Json => {
            let mut v = json!({
                "braid": b.to_string(),
                "strands": b.strands(),
                "writhe": b.writhe(),
                "Z": z.to_string(),
                "hz": z.to_json(),
                "factorisable": cert.is_factorisable(),
            });
            if let Some(d) = &decomposition {
                v["decomposition"] = json!(d.to_string());
                v["decomposition_terms"] = d.to_json();
            }
            if let Some(r) = &report {
                v["conditions"] = serde_json::to_value(r).expect("report serialises");
            }
            if let Some(s) = &series {
                v["series"] = json!(s.iter().map(|p| p.to_string()).collect::<Vec<_>>());
            }
            print_json(&v);
        }
        Format::Text => {
            println!("braid: {} ({} strands, writhe {})", show(&b), b.strands(), b.writhe());
            println!("Z = {}", z.pretty());
            println!("beta = {:?}", z.beta_full());
            if !z.cancelled().is_empty() {
                println!("cancelled: {:?}", z.cancelled());
            }
            println!("{}", cert_line(&cert));
            if let Some(d) = &decomposition {
                println!("decomposition: {d}");
            }
            if let Some(r) = &report {
                println!(
                    "conditions: {}",
                    if r.satisfied() { "satisfied" } else { "not satisfied" }
                );
                for c in &r.conditions {
                    println!("  [{}] {}: {}", if c.satisfied { "ok" } else { "no" }, c.name, c.detail);
                }
                if let Some(alpha) = &r.predicted_alpha {
                    println!("  predicted alpha: {alpha:?}");
                }
            }
            if let Some(s) = &series {
                for (k, c) in s.iter().enumerate() {
                    println!("  λ^{k}: {c}");
                }
            }
        }
    }
    Ok(())
}

fn cmd_jones(args: &BraidArgs, alexander_poly: bool) -> CmdResult {
    let b = args.word()?;
    let (name, p) = if alexander_poly {
        ("alexander", alexander(&b)?)
    } else {
        ("jones", jones(&b)?)
    };
    match args.format {
        Format::Json => print_json(&json!({ "braid": b.to_string(), name: p.to_string() })),
        Format::Text => println!("{p}"),
    }
    Ok(())
}

fn cmd_family(m: usize, j: i64, k: i64, l: i64, format: Format) -> CmdResult {
    let idx = FamilyIndex::new(m, j, k, l);
    let braid = hzknot::braid::family_braid(idx)?;
    let prediction = predict_family(idx)?;
    let report = if m <= 5 { Some(verify_family(idx)?) } else { None };
    match format {
        Format::Json => {
            let mut v = json!({
                "family": idx.to_string(),
                "braid": braid.to_string(),
                "prediction": prediction,
                "Z": prediction.hz().to_string(),
            });
            if let Some(r) = &report {
                v["verification"] = serde_json::to_value(r).expect("report serialises");
                v["passed"] = json!(r.passed());
            }
            print_json(&v);
        }
        Format::Text => {
            println!("{idx}: braid {braid} (writhe {})", prediction.writhe);
            println!("h^[{},1] = {}", m - 1, prediction.h_top);
            println!("alpha = {:?}", prediction.alpha_descending());
            println!("beta = {:?}", prediction.beta.iter().rev().collect::<Vec<_>>());
            println!("Z = {}", prediction.hz().pretty());
            println!("Jones = {}", prediction.jones);
            match &report {
                Some(r) => {
                    for c in &r.checks {
                        println!(
                            "  [{}] {}: {}",
                            if c.satisfied { "ok" } else { "FAIL" },
                            c.name,
                            c.detail
                        );
                    }
                    println!("{}", if r.passed() { "verified" } else { "MISMATCH" });
                }
                None => println!("(prediction only: verification needs at most 5 strands)"),
            }
        }
    }
    match report {
        Some(r) if !r.passed() => Err(mismatch(format!("{idx}: prediction and pipeline disagree"))),
        _ => Ok(()),
    }
}

fn cmd_quiver(series: QuiverSeries, n: i64, format: Format) -> CmdResult {
    let p = quiver_poly(series, n)?;
    let z = p.hz()?;
    let (link, braid) = match series {
        QuiverSeries::E => (coxeter_link_name(n).map(str::to_string), Some(pretzel_braid(n)?)),
        QuiverSeries::A => (Some(format!("T(2,{})", n + 1)), Some(torus_braid(2, n + 1)?)),
        QuiverSeries::D => (None, None),
    };
    let mut checks = Vec::new();
    if let Some(b) = &braid {
        checks.push((format!("braid {b}"), hz_transform(&homfly(b)?)? == z));
    }
    if series == QuiverSeries::E && n % 2 == 1 {
        let alt = pretzel_braid_alt(n)?;
        checks.push((format!("braid {alt}"), hz_transform(&homfly(&alt)?)? == z));
    }
    match format {
        Format::Json => {
            let mut v = p.to_json()?;
            v["link"] = json!(link);
            v["cross_checks"] = json!(checks
                .iter()
                .map(|(b, ok)| json!({ "braid": b, "equal": ok }))
                .collect::<Vec<_>>());
            print_json(&v);
        }
        Format::Text => {
            println!("n\tlink\tZ");
            println!("{n}\t{}\t{}", link.as_deref().unwrap_or("-"), z.pretty());
            println!("P = {}", p.render_az());
            if let Some(d) = p.alexander() {
                println!("Alexander = {d}");
            }
            for (b, ok) in &checks {
                println!("{} {b}", if *ok { "matches" } else { "DIFFERS from" });
            }
        }
    }
    if checks.iter().all(|c| c.1) {
        Ok(())
    } else {
        Err(mismatch(format!("Z({}) differs from its braid", p.label())))
    }
}

fn cmd_verify(path: &PathBuf, format: Format) -> CmdResult {
    let set = FixtureSet::load(path)?;
    let outcomes = set.run();
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    match format {
        Format::Json => print_json(&json!({
            "passed": passed,
            "total": outcomes.len(),
            "fixtures": outcomes,
        })),
        Format::Text => {
            for o in &outcomes {
                if o.passed() {
                    println!("ok   {} ({} checks)", o.name, o.checks.len());
                    continue;
                }
                println!("FAIL {}", o.name);
                if let Some(e) = &o.error {
                    println!("  error: {e}");
                }
                for c in o.failures() {
                    println!("  {}: {}", c.name, c.detail);
                }
            }
            println!("{passed}/{} fixtures passed", outcomes.len());
        }
    }
    if passed == outcomes.len() {
        Ok(())
    } else {
        Err(mismatch(format!("{} fixture(s) failed", outcomes.len() - passed)))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Homfly(args) => cmd_homfly(args),
        Command::Hz {
            braid,
            decompose,
            check_conditions,
            series_terms,
        } => cmd_hz(braid, *decompose, *check_conditions, *series_terms),
        Command::Jones(args) => cmd_jones(args, false),
        Command::Alexander(args) => cmd_jones(args, true),
        Command::Family { m, j, k, l, format } => cmd_family(*m, *j, *k, *l, *format),
        Command::Quiver { series, n, format } => cmd_quiver(*series, *n, *format),
        Command::Verify { path, format } => cmd_verify(path, *format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
