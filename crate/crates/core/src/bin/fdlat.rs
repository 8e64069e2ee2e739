use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fdlat::estimates::{f_lower_full, flat_lower, g3_doublestar, g_upper, EstimateParams, CERTIFIED_N_MAX};
use fdlat::oracle::{self, FiniteLattice};
use fdlat::report::{self, Campaign, CampaignConfig, Format, TableId, TableSpec};
use fdlat::{Error, Result};

#[derive(Parser)]
#[command(
    name = "fdlat",
    version,
    about = "Sperner-number estimates and generating-set sizes of powers of free distributive lattices"
)]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Csv,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the lower and upper estimates for one r over a range of n
    Estimate(EstimateArgs),
    /// Print one of the standard tables t51..t55
    Table(TableArgs),
    /// Decide Gmin(FD(r)^k) up to one of two adjacent values
    Gmin(GminArgs),
    /// Run a verification campaign (or `all`); exits 1 on any violation
    Verify(VerifyArgs),
    /// Exhaustive checks on small lattices and posets
    Oracle(OracleArgs),
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    n: u64,
    /// Last n of the range (default: --n)
    #[arg(long)]
    n_max: Option<u64>,
    /// Also evaluate f<p, r, 0, r>(n) for this p
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
    /// Evaluate g3** past n = 300, where it is not certified
    #[arg(long)]
    extend_beyond_300: bool,
}

#[derive(Args)]
struct TableArgs {
    /// t51, t52, t53, t54 or t55
    id: String,
    /// First n (default: the standard range)
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
}

#[derive(Args)]
struct GminArgs {
    #[arg(long)]
    r: u64,
    /// Exact k: digits, `<m>e<x>`, `<m>*10^<x>` or `10^<x>`; `1.489e1798` means 1489*10^1795
    #[arg(long)]
    k: String,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// separation, best_p, min_location, flat_vs_max, oracle_suite or all
    campaign: String,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    r_max: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    /// Allow min_location past n = 300 (reported, not certified)
    #[arg(long)]
    extend_beyond_300: bool,
    /// Print `n=.. min=.. argmin=[..] elapsed_ms=..` lines to stderr
    #[arg(long)]
    telemetry: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    check: OracleCheck,
}

#[derive(Subcommand)]
enum OracleCheck {
    /// J(FD(r)) against FSP(r, 0, r), r in 2..=5
    Lemma {
        #[arg(long)]
        r: u32,
    },
    /// Exact Sp(U, n) for the singleton or the 3-crown, n <= 6
    SpExact {
        #[arg(long, value_enum, default_value = "crown")]
        poset: PosetName,
        #[arg(long)]
        n: u64,
    },
    /// Build the fundamental-pair family and compare with the formula
    Family {
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 0)]
        a: u64,
        /// Defaults to r
        #[arg(long)]
        b: Option<u64>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        n: u64,
    },
    /// Smallest generating set of FD(r)^k by exhaustive search
    MinGenerating {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetName {
    Singleton,
    Crown,
}

fn emit(lines: &[String]) {
    let mut out = std::io::stdout().lock();
    for line in lines {
        let _ = writeln!(out, "{line}");
    }
}

fn estimate(args: EstimateArgs) -> Result<ExitCode> {
    let n_max = args.n_max.unwrap_or(args.n);
    if args.r < 3 || args.n < args.r || n_max < args.n {
        return Err(Error::Constraint(format!("need 3 <= r <= n <= n_max, got r={} n={}..={n_max}", args.r, args.n)));
    }
    if let Some(p) = args.p {
        EstimateParams::new(args.r, 0, args.r, p, args.n)?;
    }
    let crown = args.r == 3;
    if crown && n_max > CERTIFIED_N_MAX {
        if !args.extend_beyond_300 {
            return Err(Error::Constraint(format!(
                "g3** is certified only up to n = {CERTIFIED_N_MAX}; pass --extend-beyond-300"
            )));
        }
        eprintln!("warning: g3** past n = {CERTIFIED_N_MAX} is not certified to equal g3*");
    }
    let mut header = vec!["n".to_string(), "flat".into()];
    if let Some(p) = args.p {
        header.push(format!("f_p{p}"));
    }
    if crown {
        header.push("g_doublestar".into());
    }
    header.push("g_upper".into());
    let mut rows = Vec::new();
    for n in args.n..=n_max {
        let mut row = vec![n.to_string(), flat_lower(args.r, n)?.to_string()];
        if let Some(p) = args.p {
            row.push(f_lower_full(p, args.r, n)?.to_string());
        }
        if crown {
            row.push(g3_doublestar(n)?.to_string());
        }
        row.push(g_upper(args.r, n)?.to_string());
        rows.push(row);
    }
    let lines: Vec<String> = match Format::from(args.format) {
        Format::Csv => std::iter::once(header.join(",")).chain(rows.iter().map(|r| r.join(","))).collect(),
        Format::Json => rows
            .iter()
            .map(|row| {
                let mut m = serde_json::Map::new();
                m.insert("r".into(), args.r.into());
                for (k, v) in header.iter().zip(row) {
                    m.insert(k.clone(), if k == "n" { json!(v.parse::<u64>().unwrap_or(0)) } else { json!(v) });
                }
                Value::Object(m).to_string()
            })
            .collect(),
        Format::Text => std::iter::once(header.join("\t")).chain(rows.iter().map(|r| r.join("\t"))).collect(),
    };
    emit(&lines);
    Ok(ExitCode::SUCCESS)
}

fn table(args: TableArgs) -> Result<ExitCode> {
    let id: TableId = args.id.parse()?;
    let mut spec = TableSpec::standard(id);
    if args.n.is_some() || args.n_max.is_some() {
        let lo = args.n.unwrap_or(spec.n_lo);
        let hi = args.n_max.unwrap_or(lo.max(spec.n_hi));
        spec = spec.with_range(lo, hi)?;
    }
    print!("{}", report::emit_table(&spec, args.format.into())?);
    Ok(ExitCode::SUCCESS)
}

fn gmin(args: GminArgs) -> Result<ExitCode> {
    let res = report::gmin_query(args.r, &args.k)?;
    match args.format {
        OutFormat::Json | OutFormat::Csv => println!("{}", report::gmin_json(&res)),
        OutFormat::Text => print!("{}", report::gmin_text(&res)),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let campaigns: Vec<Campaign> =
        if args.campaign == "all" { Campaign::ALL.to_vec() } else { vec![args.campaign.parse()?] };
    let configs: Vec<(Campaign, CampaignConfig)> = campaigns
        .into_iter()
        .map(|c| {
            let d = c.default_config();
            let cfg = CampaignConfig {
                r_lo: args.r.unwrap_or(d.r_lo),
                r_hi: args.r_max.or(args.r).unwrap_or(d.r_hi),
                n_lo: args.n.or(d.n_lo),
                n_hi: args.n_max.unwrap_or(d.n_hi),
                extend_beyond_300: args.extend_beyond_300,
                telemetry: args.telemetry,
            };
            report::campaign::validate(c, &cfg).map(|_| (c, cfg))
        })
        .collect::<Result<_>>()?;
    let mut failed = false;
    for (c, cfg) in configs {
        if c == Campaign::MinLocation && cfg.n_hi > CERTIFIED_N_MAX {
            eprintln!("warning: min_location past n = {CERTIFIED_N_MAX} is reported, not certified");
        }
        let rep = report::run_campaign(c, &cfg)?;
        emit(&rep.records.iter().map(Value::to_string).collect::<Vec<_>>());
        eprintln!("{}", rep.summary_json());
        for w in &rep.warnings {
            eprintln!("warning: {w}");
        }
        failed |= !rep.passed();
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn oracle_cmd(args: OracleArgs) -> Result<ExitCode> {
    let (record, pass) = match args.check {
        OracleCheck::Lemma { r } => {
            let pass = oracle::check_lemma(r)?;
            (json!({"check": "lemma", "r": r, "pass": pass}), pass)
        }
        OracleCheck::SpExact { poset, n } => {
            let (name, res) = match poset {
                PosetName::Singleton => ("singleton", oracle::sp_exact(&oracle::FinitePoset::singleton(), n)?),
                PosetName::Crown => ("crown", oracle::sp_exact_crown(n)?),
            };
            (json!({"check": "sp_exact", "poset": name, "n": n, "value": res.value, "copies": res.copies}), true)
        }
        OracleCheck::Family { r, a, b, p, n } => {
            let params = EstimateParams::new(r, a, b.unwrap_or(r), p, n)?;
            let family = oracle::build_unrelated_family(&params)?;
            let expected = fdlat::estimates::f_lower_general(&params)?;
            let unrelated = oracle::pairwise_unrelated(&family);
            let pass = unrelated && fdlat::Natural::from(family.len()) == expected;
            let rec = json!({
                "check": "family", "r": r, "a": params.a, "b": params.b, "p": p, "n": n,
                "size": family.len(), "formula": expected.to_string(), "unrelated": unrelated, "pass": pass,
            });
            (rec, pass)
        }
        OracleCheck::MinGenerating { r, k } => {
            let base = oracle::LatticeTable::from_lattice(&oracle::build_fd(r)?)?;
            let lat = base.power(k)?;
            let res = oracle::min_generating_size(&lat, oracle::lattice::CLOSURE_CAP);
            let rec = json!({
                "check": "min_generating", "lattice": format!("FD({r})^{k}"), "size": lat.size(),
                "value": res.size, "lower_bound_only": res.lower_bound_only, "witness": res.witness,
                "closure_calls": res.closure_calls,
            });
            (rec, true)
        }
    };
    println!("{record}");
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Estimate(a) => estimate(a),
        Command::Table(a) => table(a),
        Command::Gmin(a) => gmin(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle_cmd(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
