//! Command-line front end: theorem-scale scans over prime families,
//! single-curve descent, torsion-curve construction, torsion queries, twisted
//! root numbers and torsion nonexistence reports.
//!
//! Primary output is JSON-lines (one record per line); scans also offer a CSV
//! projection. Exit codes: 0 success, 1 mathematical failure (e.g. a certify
//! scan with a missing certificate), 2 usage error.

use std::collections::HashMap;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use quadtwist::arith::primes_up_to;
use quadtwist::curves::{
    torsion_over_q, torsion_over_quadratic, CurveModel, Point, TorsionStructure, TwoTorsionModel,
};
use quadtwist::descent::{
    prove_rank_zero_2_10, prove_rank_zero_2_12, rank_bounds, DescentReport, RankZeroCertificate,
};
use quadtwist::classify::{cyclotomic_elimination, quadratic_nonexistence};
use quadtwist::families::{construct_torsion_curves, FamilyError, FamilyId, TorsionTarget};
use quadtwist::rootnum::{parity_prediction, twist_root_number, RootNumber, CONDUCTOR_X1_2_10, CONDUCTOR_X1_2_12, ROOT_NUMBER_X1_2_10, ROOT_NUMBER_X1_2_12};
use quadtwist::Rational;

#[derive(Parser)]
#[command(
    name = "quadtwist",
    about = "2-descent rank bounds, torsion and root numbers of quadratic twists",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonFlags,
}

#[derive(Args, Clone)]
struct CommonFlags {
    /// Torsor search bound for descent (default 1024, or `bound` in --config)
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Point-search height bound (default 10000, or `height` in --config)
    #[arg(long, global = true)]
    height: Option<u64>,
    /// Emit JSON lines (the default)
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit a CSV projection instead of JSON lines (scan only)
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for scans (default: all cores, or `workers` in --config)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Plain-text key=value configuration file; explicit flags win
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<String>,
}

/// Effective settings after merging flags over the config file.
struct Settings {
    bound: u64,
    height: u64,
    csv: bool,
    workers: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "2x10")]
    TwoByTen,
    #[value(name = "2x12")]
    TwoByTwelve,
}

impl FamilyArg {
    fn family(self) -> FamilyId {
        match self {
            FamilyArg::TwoByTen => FamilyId::X1_2_10,
            FamilyArg::TwoByTwelve => FamilyId::X1_2_12,
        }
    }

    fn target(self) -> TorsionTarget {
        match self {
            FamilyArg::TwoByTen => TorsionTarget::TwoByTen,
            FamilyArg::TwoByTwelve => TorsionTarget::TwoByTwelve,
        }
    }

    fn conductor(self) -> i64 {
        match self {
            FamilyArg::TwoByTen => CONDUCTOR_X1_2_10,
            FamilyArg::TwoByTwelve => CONDUCTOR_X1_2_12,
        }
    }

    fn base_root_number(self) -> RootNumber {
        match self {
            FamilyArg::TwoByTen => ROOT_NUMBER_X1_2_10,
            FamilyArg::TwoByTwelve => ROOT_NUMBER_X1_2_12,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ScanMode {
    /// Congruence rank-zero certificates only
    Certify,
    /// Descent rank bounds, root number and parity prediction
    Descend,
    /// Both certificates and descent
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Scan primes p ≡ residues (mod modulus), p ≤ max-prime, on twists d = −p
    Scan {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        modulus: u64,
        /// Comma-separated residue classes, each coprime to the modulus
        #[arg(long, value_delimiter = ',', required = true)]
        residues: Vec<u64>,
        #[arg(long)]
        max_prime: u64,
        #[arg(long, value_enum, default_value = "both")]
        mode: ScanMode,
    },
    /// 2-descent rank bounds for y² = x(x² + ax + b)
    Descend {
        /// Coefficient a (rational, e.g. -3 or 7/2)
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Coefficient b
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Construct curves with torsion 2x10 or 2x12 over Q(sqrt(d))
    Construct {
        #[arg(long, value_enum)]
        target: FamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Torsion subgroup of y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6
    /// over ℚ, or over ℚ(√d) with --d
    Torsion {
        /// Coefficients a1,a2,a3,a4,a6 (comma-separated rationals)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coefficients: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
    },
    /// Twisted root number and parity prediction for a family twist
    RootNumber {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Torsion groups eliminated over the n-th cyclotomic field
    Classify {
        #[arg(long)]
        n: u64,
    },
    /// Torsion groups eliminated over Q(sqrt(d)) for rational curves
    Eliminate {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
}

fn load_config(path: &str) -> Result<HashMap<String, String>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {path}: {e}"))?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(format!("config {path} line {}: expected key=value", i + 1));
        };
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn resolve_settings(common: &CommonFlags) -> Result<Settings, String> {
    let file = match &common.config {
        Some(path) => load_config(path)?,
        None => HashMap::new(),
    };
    let from_file = |key: &str| -> Result<Option<u64>, String> {
        file.get(key)
            .map(|v| v.parse::<u64>().map_err(|_| format!("config key {key}: bad value {v}")))
            .transpose()
    };
    Ok(Settings {
        bound: common.bound.or(from_file("bound")?).unwrap_or(1 << 10),
        height: common.height.or(from_file("height")?).unwrap_or(10_000),
        csv: common.csv,
        workers: common
            .workers
            .or(from_file("workers")?.map(|w| w as usize)),
    })
}

/// Prints one output line, exiting quietly when the consumer (e.g. `head`)
/// closes the pipe.
fn out(line: impl std::fmt::Display) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if writeln!(lock, "{line}").is_err() {
        std::process::exit(0);
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s).map_err(|e| format!("bad rational {s}: {e}"))
}

fn fmt_point(p: &Point) -> String {
    match p {
        Point::Infinity => "inf".to_string(),
        Point::Rational { x, y } => format!("({x}, {y})"),
        Point::Quadratic { x, y } => format!(
            "({} + {}*sqrt({}), {} + {}*sqrt({}))",
            x.u, x.v, x.d, y.u, y.v, y.d
        ),
    }
}

fn torsion_json(t: &TorsionStructure) -> serde_json::Value {
    serde_json::json!({
        "m": t.m,
        "n": t.n,
        "order": t.order(),
        "generators": t.generators.iter().map(fmt_point).collect::<Vec<_>>(),
    })
}

struct ScanRecord {
    family: FamilyId,
    d: BigInt,
    certificate: Option<RankZeroCertificate>,
    descent: Option<DescentReport>,
    root_number: Option<i8>,
    prediction: Option<quadtwist::rootnum::ParityPrediction>,
    elapsed_ms: u128,
    error: Option<String>,
}

impl ScanRecord {
    fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "family": self.family.as_str(),
            "d": self.d.to_string(),
            "elapsed_ms": self.elapsed_ms,
        });
        let map = obj.as_object_mut().unwrap();
        if let Some(c) = &self.certificate {
            map.insert("certificate".into(), c.to_json());
        }
        if let Some(r) = &self.descent {
            map.insert("descent".into(), r.to_json());
        }
        if let Some(w) = self.root_number {
            map.insert("root_number".into(), serde_json::json!(w));
        }
        if let Some(p) = &self.prediction {
            map.insert("prediction".into(), p.to_json());
        }
        if let Some(e) = &self.error {
            map.insert("error".into(), serde_json::json!(e));
        }
        obj
    }

    fn to_csv(&self) -> String {
        let (lower, upper, status) = match &self.descent {
            Some(r) => (
                r.rank_lower.to_string(),
                r.rank_upper.to_string(),
                r.status.to_string(),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.family.as_str(),
            self.d,
            self.certificate.is_some(),
            lower,
            upper,
            status,
            self.root_number.map(|w| w.to_string()).unwrap_or_default(),
            self.prediction
                .as_ref()
                .map(|p| p.conclusion.as_str().to_string())
                .unwrap_or_default(),
            self.elapsed_ms,
        )
    }
}

const SCAN_CSV_HEADER: &str =
    "family,d,has_certificate,rank_lower,rank_upper,status,root_number,conclusion,elapsed_ms";

fn scan_one(family: FamilyArg, p: u64, mode: ScanMode, bound: u64) -> ScanRecord {
    let start = Instant::now();
    let d = -BigInt::from(p);
    let mut record = ScanRecord {
        family: family.family(),
        d: d.clone(),
        certificate: None,
        descent: None,
        root_number: None,
        prediction: None,
        elapsed_ms: 0,
        error: None,
    };
    if matches!(mode, ScanMode::Certify | ScanMode::Both) {
        let cert = match family {
            FamilyArg::TwoByTen => prove_rank_zero_2_10(&d),
            FamilyArg::TwoByTwelve => prove_rank_zero_2_12(&d),
        };
        match cert {
            Ok(c) => record.certificate = Some(c),
            Err(e) => record.error = Some(e.to_string()),
        }
    }
    if matches!(mode, ScanMode::Descend | ScanMode::Both) {
        let base = quadtwist::families::family_two_torsion_model(family.family())
            .expect("family has 2-torsion");
        match base.twist(&d).map_err(|e| e.to_string()).and_then(|tw| {
            rank_bounds(&tw, bound).map_err(|e| e.to_string())
        }) {
            Ok(report) => record.descent = Some(report),
            Err(e) => record.error = Some(e),
        }
        match twist_root_number(family.base_root_number(), &BigInt::from(family.conductor()), &d)
        {
            Ok(w) => record.root_number = Some(w.value),
            Err(e) => record.error = Some(e.to_string()),
        }
        match parity_prediction(family.family(), &d, bound) {
            Ok(pred) => record.prediction = Some(pred),
            Err(e) => record.error = Some(e.to_string()),
        }
    }
    record.elapsed_ms = start.elapsed().as_millis();
    record
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn cmd_scan(
    family: FamilyArg,
    modulus: u64,
    residues: &[u64],
    max_prime: u64,
    mode: ScanMode,
    settings: &Settings,
) -> Result<ExitCode, String> {
    if modulus == 0 {
        return Err("modulus must be positive".into());
    }
    if residues.is_empty() {
        return Err("at least one residue class is required".into());
    }
    for &r in residues {
        if gcd_u64(r % modulus, modulus) != 1 {
            return Err(format!("residue {r} is not coprime to modulus {modulus}"));
        }
    }
    let primes: Vec<u64> = primes_up_to(max_prime)
        .into_iter()
        .filter(|p| residues.iter().any(|&r| p % modulus == r % modulus))
        .collect();
    let run = || -> Vec<ScanRecord> {
        use rayon::prelude::*;
        primes
            .par_iter()
            .map(|&p| scan_one(family, p, mode, settings.bound))
            .collect()
    };
    // records come back in prime order: par_iter preserves input order
    let records = match settings.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| e.to_string())?
            .install(run),
        None => run(),
    };
    if settings.csv {
        out(SCAN_CSV_HEADER);
        for r in &records {
            out(r.to_csv());
        }
    } else {
        for r in &records {
            out(r.to_json());
        }
    }
    let certify_complete = !matches!(mode, ScanMode::Certify)
        || records.iter().all(|r| r.certificate.is_some());
    if certify_complete && records.iter().all(|r| r.error.is_none() || !matches!(mode, ScanMode::Certify)) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let settings = resolve_settings(&cli.common)?;
    match cli.command {
        Command::Scan {
            family,
            modulus,
            residues,
            max_prime,
            mode,
        } => cmd_scan(family, modulus, &residues, max_prime, mode, &settings),
        Command::Descend { a, b } => {
            let a = parse_rational(&a)?;
            let b = parse_rational(&b)?;
            let model = TwoTorsionModel::new(a, b).map_err(|e| e.to_string())?;
            let report = rank_bounds(&model, settings.bound).map_err(|e| e.to_string())?;
            out(report.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct { target, d, count } => {
            match construct_torsion_curves(
                target.target(),
                &BigInt::from(d),
                count,
                settings.height,
            ) {
                Ok(curves) => {
                    let list: Vec<_> = curves.iter().map(|c| c.to_json()).collect();
                    out(serde_json::Value::Array(list));
                    Ok(ExitCode::SUCCESS)
                }
                Err(FamilyError::NoPointsFound {
                    report,
                    certificate,
                }) => {
                    let mut obj = serde_json::json!({
                        "error": "no points found up to the height bound",
                        "descent": report.to_json(),
                    });
                    if let Some(c) = certificate {
                        obj.as_object_mut()
                            .unwrap()
                            .insert("certificate".into(), c.to_json());
                    }
                    out(obj);
                    Ok(ExitCode::FAILURE)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Torsion { coefficients, d } => {
            if coefficients.len() != 5 {
                return Err(format!(
                    "--coefficients must be a1,a2,a3,a4,a6 (5 values, got {})",
                    coefficients.len()
                ));
            }
            let c: Vec<Rational> = coefficients
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()?;
            let e = CurveModel::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone());
            let t = match d {
                Some(d) => torsion_over_quadratic(&e, &BigInt::from(d)),
                None => torsion_over_q(&e),
            }
            .map_err(|e| e.to_string())?;
            out(torsion_json(&t));
            Ok(ExitCode::SUCCESS)
        }
        Command::RootNumber { family, d } => {
            let d = BigInt::from(d);
            let w = twist_root_number(
                family.base_root_number(),
                &BigInt::from(family.conductor()),
                &d,
            )
            .map_err(|e| e.to_string())?;
            let pred = parity_prediction(family.family(), &d, settings.bound)
                .map_err(|e| e.to_string())?;
            out(serde_json::json!({
                "family": family.family().as_str(),
                "d": d.to_string(),
                "root_number": w.value,
                "prediction": pred.to_json(),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { n } => {
            if n == 0 {
                return Err("n must be >= 1".into());
            }
            let report = cyclotomic_elimination(&BigInt::from(n));
            out(report.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Eliminate { d } => {
            let report = quadratic_nonexistence(&BigInt::from(d)).map_err(|e| e.to_string())?;
            out(report.to_json());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            // usage-shaped problems (bad residues, bad rationals, bad config)
            // exit 2; math errors from the library also land here as 1
            if msg.contains("residue")
                || msg.contains("bad rational")
                || msg.contains("config")
                || msg.contains("modulus")
                || msg.contains("must be")
            {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
