use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use subcodes::codes::io;
use subcodes::config::{DEFAULT_SEED, DEFAULT_THRESHOLD};
use subcodes::rules::table::{table1, TableRow};
use subcodes::rules::{self, Family, MdsFamilySpec, RuleResult, Verification};
use subcodes::subsystem::AnalysisReport;
use subcodes::{AnalysisConfig, DistanceMode, Error, ParamRecord, SubsystemCode, WeightMethod};

/// Exit codes beyond clap's usage error (2).
const EXIT_INPUT: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;
const EXIT_VERIFICATION: u8 = 5;
const EXIT_STRICT: u8 = 6;

#[derive(Parser)]
#[command(name = "subcodes", version, about = "Clifford subsystem codes from classical additive codes")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Largest coset enumerated exhaustively
    #[arg(long, global = true, env = "SUBCODES_THRESHOLD", default_value_t = DEFAULT_THRESHOLD)]
    threshold: u64,
    #[arg(long, global = true, env = "SUBCODES_WORKERS", default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, env = "SUBCODES_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, env = "SUBCODES_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Distance verification level
    #[arg(long, global = true, env = "SUBCODES_MODE", value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Treat a fallback from exact to witness distances as a failure
    #[arg(long, global = true, env = "SUBCODES_STRICT")]
    strict: bool,
    /// Write the report to this path instead of stdout
    #[arg(long, global = true, env = "SUBCODES_EMIT")]
    emit: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Witness,
    Skip,
}

#[derive(Subcommand)]
enum Command {
    /// Parameters, distance, purity and bounds of a code file
    Analyze { file: PathBuf },
    /// Apply a propagation rule
    Transform(TransformArgs),
    /// Regenerate the optimal pure MDS subsystem codes for q ∈ {3,4,5,7}
    Table1 {
        #[arg(long)]
        q: u32,
    },
    /// Build a member of a Reed–Solomon MDS family
    Family(FamilyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    ShrinkK,
    GrowK,
    ExtendN,
    ShortenN,
    CombineDisjoint,
    CombineNested,
    ToStabilizer,
    ToSubsystem,
}

#[derive(Args)]
struct TransformArgs {
    /// Code file (constructive rules)
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    rule: RuleArg,
    /// Parameter tuple, e.g. "[[5,1,0,3]]_2 pure"
    #[arg(long)]
    params: Option<String>,
    #[arg(long)]
    params2: Option<String>,
    #[arg(long)]
    r: Option<usize>,
    /// Caller asserts Q2 ⊆ Q1 (combine-nested)
    #[arg(long)]
    subset_assumed: bool,
    /// Trade in units of q instead of p (F_q-linear codes)
    #[arg(long)]
    fq_linear: bool,
    /// Write the resulting code file here
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 0)]
    delta: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    nu: Option<usize>,
}

struct Report {
    json: Value,
    text: String,
    csv: String,
    /// some exact distance request fell back to a witness
    downgraded: bool,
    /// a verification failed without raising an error
    failed: Option<String>,
}

impl RunArgs {
    fn config(&self) -> anyhow::Result<AnalysisConfig> {
        if self.threshold == 0 {
            bail!("--threshold must be at least 1");
        }
        if self.workers == 0 {
            bail!("--workers must be at least 1");
        }
        let distance = match self.mode {
            Mode::Exact => DistanceMode::Exact,
            Mode::Witness => DistanceMode::Witness,
            Mode::Skip => DistanceMode::Skip,
        };
        Ok(AnalysisConfig {
            threshold: self.threshold,
            workers: self.workers,
            seed: self.seed,
            distance,
            ..Default::default()
        })
    }
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn analysis_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "code        {}", r.bracket);
    let _ = writeln!(s, "dimensions  {}", r.params);
    match &r.distance {
        Some(d) => {
            let note = if d.downgraded { ", downgraded from exact" } else { "" };
            let _ = writeln!(s, "distance    {} ({}, case {:?}{note})", d.value, d.method.as_str(), d.case);
        }
        None => {
            let _ = writeln!(s, "distance    skipped");
        }
    }
    let _ = writeln!(s, "purity      {}", r.purity.label());
    let _ = writeln!(s, "linear      {}", r.linear);
    let _ = writeln!(s, "|C|, |D|    p^{}, p^{}", r.log_p_size_c, r.log_p_size_d);
    if let Some(b) = &r.singleton {
        let _ = writeln!(s, "singleton   slack {}, mds {}", opt(b.singleton_slack), opt(b.mds));
    }
    if let Some(b) = &r.hamming {
        let _ = writeln!(s, "hamming     slack {}, perfect {}", opt(b.hamming_slack.clone()), opt(b.perfect));
    }
    s
}

const ANALYSIS_CSV_HEADER: [&str; 14] = [
    "params",
    "bracket",
    "n",
    "q",
    "k",
    "r",
    "d",
    "method",
    "purity",
    "swt_c",
    "singleton_slack",
    "mds",
    "hamming_slack",
    "perfect",
];

fn analysis_csv_row(r: &AnalysisReport) -> Vec<String> {
    vec![
        r.params.clone(),
        r.bracket.clone(),
        r.n.to_string(),
        r.q.to_string(),
        r.k.clone(),
        r.r.clone(),
        opt(r.distance.as_ref().map(|d| d.value)),
        opt(r.distance.as_ref().map(|d| d.method.as_str())),
        r.purity.label(),
        opt(r.swt_c.map(|w| w.value)),
        opt(r.singleton.as_ref().and_then(|b| b.singleton_slack)),
        opt(r.singleton.as_ref().and_then(|b| b.mds)),
        opt(r.hamming.as_ref().and_then(|b| b.hamming_slack.clone())),
        opt(r.hamming.as_ref().and_then(|b| b.perfect)),
    ]
}

fn is_downgrade(code: &SubsystemCode) -> bool {
    code.distance().is_some_and(|d| d.downgraded && d.method == WeightMethod::Witness)
}

fn analyze(file: &PathBuf, cfg: &AnalysisConfig) -> anyhow::Result<Report> {
    let c = io::read_additive(file).with_context(|| format!("reading {}", file.display()))?;
    let code = SubsystemCode::derive(&c, cfg)?;
    let r = code.report();
    Ok(Report {
        json: serde_json::to_value(&r)?,
        text: analysis_text(&r),
        csv: csv_table(&ANALYSIS_CSV_HEADER, &[analysis_csv_row(&r)]),
        downgraded: is_downgrade(&code),
        failed: None,
    })
}

fn rule_report(res: &RuleResult) -> anyhow::Result<Report> {
    let out = res.params();
    let mut text = String::new();
    let _ = writeln!(text, "rule        {}", res.rule);
    let _ = writeln!(text, "output      {}  {}", out, out.dims_string());
    if let Some(code) = res.code() {
        text.push_str(&analysis_text(&code.report()));
    }
    for c in &res.claims {
        let _ = writeln!(text, "claim       {}  [{}]", c.statement, verification_str(c.verification));
    }
    let chain: Vec<&str> = res.provenance.iter().map(|s| s.rule.as_str()).collect();
    let _ = writeln!(text, "provenance  {}", chain.join(" → "));
    let rows: Vec<Vec<String>> = res
        .claims
        .iter()
        .map(|c| {
            vec![
                res.rule.clone(),
                out.to_string(),
                out.dims_string(),
                c.statement.clone(),
                verification_str(c.verification).into(),
            ]
        })
        .collect();
    let csv = csv_table(&["rule", "output", "params", "claim", "verification"], &rows);
    Ok(Report {
        json: serde_json::to_value(res)?,
        text,
        csv,
        downgraded: res.code().is_some_and(is_downgrade),
        failed: None,
    })
}

fn verification_str(v: Verification) -> &'static str {
    match v {
        Verification::VerifiedExhaustive => "verified_exhaustive",
        Verification::VerifiedAnalytic => "verified_analytic",
        Verification::WitnessConsistent => "witness_consistent",
        Verification::Asserted => "asserted",
    }
}

fn parse_params(s: Option<&String>, flag: &str) -> anyhow::Result<ParamRecord> {
    let s = s.ok_or_else(|| anyhow!("--{flag} is required for this rule"))?;
    Ok(s.parse()?)
}

fn transform(args: &TransformArgs, cfg: &AnalysisConfig) -> anyhow::Result<Report> {
    let load = || -> anyhow::Result<SubsystemCode> {
        let file = args.file.as_ref().ok_or_else(|| anyhow!("this rule needs a code file"))?;
        let c = io::read_additive(file).with_context(|| format!("reading {}", file.display()))?;
        Ok(SubsystemCode::derive(&c, cfg)?)
    };
    let coeff = |code: &SubsystemCode| if args.fq_linear { code.m() } else { 1 };
    let res = match args.rule {
        RuleArg::ShrinkK => {
            let code = load()?;
            rules::shrink_k(&code, coeff(&code), cfg)?
        }
        RuleArg::GrowK => {
            let code = load()?;
            rules::grow_k(&code, coeff(&code), cfg)?
        }
        RuleArg::ExtendN => rules::extend_length(&load()?, cfg)?,
        RuleArg::ToStabilizer => {
            let code = load()?;
            rules::subsystem_to_stabilizer(&code, coeff(&code), cfg)?
        }
        RuleArg::ToSubsystem => {
            let code = load()?;
            let r = args.r.ok_or_else(|| anyhow!("--r is required for to-subsystem"))?;
            rules::stabilizer_to_subsystem(&code, r, coeff(&code), cfg)?
        }
        RuleArg::ShortenN => rules::shorten_length(&parse_params(args.params.as_ref(), "params")?)?,
        RuleArg::CombineDisjoint => {
            let a = parse_params(args.params.as_ref(), "params")?;
            let b = parse_params(args.params2.as_ref(), "params2")?;
            rules::combine_disjoint(&a, &b, args.r.unwrap_or(0))?
        }
        RuleArg::CombineNested => {
            let a = parse_params(args.params.as_ref(), "params")?;
            let b = parse_params(args.params2.as_ref(), "params2")?;
            rules::combine_nested(&a, &b, args.r.unwrap_or(0), args.subset_assumed)?
        }
    };
    if let Some(path) = &args.output {
        let code = res.code().ok_or_else(|| anyhow!("--output needs a constructive rule"))?;
        io::write_additive(code.code(), path).with_context(|| format!("writing {}", path.display()))?;
    }
    rule_report(&res)
}

fn table_report(q: u32, cfg: &AnalysisConfig) -> anyhow::Result<Report> {
    let rows = table1(q, cfg)?;
    let mut text =
        format!("{:<22} {:<22} {:<4} {:<20} {:<6} family\n", "subsystem", "parent", "mark", "verification", "match");
    let mut csv_rows = Vec::new();
    for row in &rows {
        let fam = family_cell(row);
        let _ = writeln!(
            text,
            "{:<22} {:<22} {:<4} {:<20} {:<6} {}",
            row.code.to_string(),
            row.parent,
            row.mark,
            verification_str(row.verification),
            row.matches,
            fam
        );
        csv_rows.push(vec![
            row.code.to_string(),
            row.parent.clone(),
            row.mark.into(),
            verification_str(row.verification).into(),
            row.distance_method.clone(),
            row.matches.to_string(),
            opt(row.singleton_slack),
            fam,
        ]);
    }
    let header = [
        "subsystem",
        "parent",
        "mark",
        "verification",
        "distance_method",
        "matches",
        "singleton_slack",
        "family_check",
    ];
    let csv = csv_table(&header, &csv_rows);
    let bad: Vec<String> = rows.iter().filter(|r| !r.matches).map(|r| r.expected.clone()).collect();
    let fam_bad = rows.iter().any(|r| r.family_check.as_ref().is_some_and(|f| !f.matches));
    let failed = if !bad.is_empty() {
        Some(format!("rows not reproduced: {}", bad.join(", ")))
    } else if fam_bad {
        Some("a family cross-check disagrees".to_string())
    } else {
        None
    };
    Ok(Report {
        json: serde_json::json!({ "q": q, "rows": rows }),
        text,
        csv,
        downgraded: rows.iter().any(|r| r.verification == Verification::WitnessConsistent),
        failed,
    })
}

fn family_cell(row: &TableRow) -> String {
    match &row.family_check {
        Some(f) => format!("{} δ={} r={}: {}", f.family, f.delta, f.r, if f.matches { "agrees" } else { "differs" }),
        None => "-".into(),
    }
}

fn family(args: &FamilyArgs, cfg: &AnalysisConfig) -> anyhow::Result<Report> {
    let family = match args.family {
        FamilyArg::I => Family::I {
            n: args.n.ok_or_else(|| anyhow!("family i needs --n"))?,
            d: args.d.ok_or_else(|| anyhow!("family i needs --d"))?,
        },
        FamilyArg::Ii => Family::Ii { nu: args.nu.ok_or_else(|| anyhow!("family ii needs --nu"))? },
        FamilyArg::Iii => Family::Iii,
        FamilyArg::Iv => Family::Iv,
        FamilyArg::V => Family::V,
        FamilyArg::Vi => Family::Vi,
    };
    let spec = MdsFamilySpec { q: args.q, family, delta: args.delta, r: args.r };
    rule_report(&rules::mds_family(&spec, cfg)?)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::Parse(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::InvalidElement { .. }
            | Error::LengthMismatch { .. },
        ) => EXIT_INPUT,
        Some(Error::ClaimViolated(_) | Error::Construction(_)) => EXIT_VERIFICATION,
        Some(_) => EXIT_PRECONDITION,
        None => EXIT_INPUT,
    }
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let cfg = cli.run.config()?;
    match &cli.command {
        Command::Analyze { file } => analyze(file, &cfg),
        Command::Transform(args) => transform(args, &cfg),
        Command::Table1 { q } => table_report(*q, &cfg),
        Command::Family(args) => family(args, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match cli.run.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
        Format::Csv => report.csv,
        Format::Text => report.text,
    };
    match &cli.run.emit {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT);
            }
        }
        None => print!("{body}"),
    }
    if let Some(msg) = report.failed {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_VERIFICATION);
    }
    if report.downgraded {
        if cli.run.strict {
            eprintln!("error: exact distance fell back to a witness search (--strict)");
            return ExitCode::from(EXIT_STRICT);
        }
        eprintln!("warning: exact distance fell back to a witness search");
    }
    ExitCode::SUCCESS
}
