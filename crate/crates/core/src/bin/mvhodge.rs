use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mvhodge::characters::character_table;
use mvhodge::exact::rat_to_string;
use mvhodge::hurwitz::{
    branch_points, bruteforce_cost, hurwitz_bruteforce, hurwitz_by_recursion, hurwitz_connected,
    hurwitz_disconnected,
};
use mvhodge::mv::{build_r, build_r_star, extract_c_gmu, hodge_polynomial, MvSeries};
use mvhodge::verify::{all_passed, render_json_lines, run_suites, RunConfig, Suite};
use mvhodge::{Error, Partition};

const BUDGET_ENV: &str = "MVHODGE_BUDGET";

#[derive(Parser)]
#[command(
    name = "mvhodge",
    version,
    about = "Exact Marino-Vafa / Hurwitz / Hodge computations"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Largest |mu| kept in partition-indexed series.
    #[arg(long, global = true, default_value_t = 6)]
    max_weight: i64,
    /// Lambda-order to which series are compared.
    #[arg(long, global = true, default_value_t = 12)]
    lambda_order: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Brute-force cap on enumerated tuples (default 10^7, or $MVHODGE_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Seed for randomized property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Pretty,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Method {
    /// Character sum, connected part by the exp/log relation.
    Char,
    /// Enumeration of transposition tuples.
    Brute,
    /// Cut-and-join recursion from H_{0,(1)} = 1.
    Connected,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Which {
    R,
    RStar,
}

#[derive(Subcommand)]
enum Command {
    /// Character table of S_d.
    Char {
        /// Degree, 1 <= d <= 12.
        #[arg(value_parser = clap::value_parser!(u8).range(1..=12))]
        degree: u8,
    },
    /// A Hurwitz number H_{g,mu} (or the disconnected count).
    Hurwitz {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        partition: Partition,
        #[arg(long, value_enum, default_value_t = Method::Char)]
        method: Method,
        /// Count all tuples rather than transitive ones.
        #[arg(long)]
        disconnected: bool,
    },
    /// The triple Hodge polynomial and C_{g,mu}(tau), read off R.
    Hodge {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        partition: Partition,
    },
    /// Dump R (or R•) term by term.
    MvSeries {
        #[arg(long, value_enum, default_value_t = Which::R)]
        which: Which,
    },
    /// Run named verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Parse { .. }
            | Error::Unsupported(_)
            | Error::TruncationExceeded { .. }
            | Error::SizeMismatch { .. } => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn run_config(g: &GlobalArgs) -> std::result::Result<RunConfig, Failure> {
    let (budget, budget_source) = match (g.budget, std::env::var(BUDGET_ENV)) {
        (Some(b), _) => (b, "flag".to_string()),
        (None, Ok(v)) => {
            let b = v.trim().parse::<u128>().map_err(|_| {
                Failure::Usage(format!(
                    "{BUDGET_ENV} must be a non-negative integer, got {v:?}"
                ))
            })?;
            (b, format!("env:{BUDGET_ENV}"))
        }
        (None, Err(_)) => (mvhodge::hurwitz::DEFAULT_BUDGET, "default".to_string()),
    };
    if g.max_weight < 1 || g.lambda_order < 0 {
        return Err(Failure::Usage(
            "--max-weight must be at least 1 and --lambda-order non-negative".into(),
        ));
    }
    Ok(RunConfig {
        max_weight: g.max_weight,
        lambda_order: g.lambda_order,
        format: g.format.name().into(),
        seed: g.seed,
        budget,
        budget_source,
    })
}

fn header(cfg: &RunConfig, command: &str) -> String {
    serde_json::to_string(&json!({"command": command, "config": cfg})).unwrap()
}

/// JSON: config line then one line per record. CSV: `# config` comment then rows.
/// Pretty: the records as indented JSON.
fn emit_records(
    cfg: &RunConfig,
    command: &str,
    format: Format,
    records: &[Value],
    csv_rows: Option<Vec<Vec<String>>>,
) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            out.push_str(&header(cfg, command));
            out.push('\n');
            for r in records {
                out.push_str(&serde_json::to_string(r).unwrap());
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str(&format!("# {}\n", header(cfg, command)));
            let rows = csv_rows.unwrap_or_else(|| {
                records
                    .iter()
                    .map(|r| vec![serde_json::to_string(r).unwrap()])
                    .collect()
            });
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.write_record(&row).expect("in-memory write");
            }
            out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
        }
        Format::Pretty => {
            out.push_str(&format!(
                "{command}  (max_weight {}, lambda_order {}, budget {} [{}], seed {})\n",
                cfg.max_weight, cfg.lambda_order, cfg.budget, cfg.budget_source, cfg.seed
            ));
            for r in records {
                out.push_str(&serde_json::to_string_pretty(r).unwrap());
                out.push('\n');
            }
        }
    }
    out
}

fn cmd_char(cfg: &RunConfig, format: Format, d: usize) -> String {
    let t = character_table(d);
    let labels: Vec<String> = t.partitions.iter().map(|p| p.label()).collect();
    let mut records = vec![json!({"anchor": "murnaghan-nakayama", "degree": d, "columns": labels})];
    let mut rows = vec![std::iter::once("nu\\mu".to_string())
        .chain(labels.iter().cloned())
        .collect::<Vec<_>>()];
    for (nu, vals) in t.partitions.iter().zip(&t.values) {
        records.push(json!({"row": nu.label(), "values": vals}));
        rows.push(
            std::iter::once(nu.label())
                .chain(vals.iter().map(|v| v.to_string()))
                .collect(),
        );
    }
    if format == Format::Pretty {
        let width = labels.iter().map(|l| l.len()).max().unwrap_or(1).max(4);
        let mut s = format!("char  degree {d}\n");
        for row in rows {
            s.push_str(
                &row.iter()
                    .map(|c| format!("{c:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            s.push('\n');
        }
        return s;
    }
    emit_records(cfg, "char", format, &records, Some(rows))
}

fn cmd_hurwitz(
    cfg: &RunConfig,
    format: Format,
    g: u32,
    mu: &Partition,
    method: Method,
    disconnected: bool,
) -> std::result::Result<String, Failure> {
    let r = branch_points(g, mu);
    if r < 0 {
        return Err(Failure::Usage(format!(
            "no covers of genus {g} with profile {mu}"
        )));
    }
    let r = r as u32;
    let value = match (method, disconnected) {
        (Method::Char, true) => hurwitz_disconnected(r, mu),
        (Method::Char, false) => hurwitz_connected(g, mu)?,
        (Method::Brute, conn) => hurwitz_bruteforce(r, mu, !conn, cfg.budget)?,
        (Method::Connected, false) => hurwitz_by_recursion(g, mu)?,
        (Method::Connected, true) => {
            return Err(Failure::Usage(
                "--method connected computes connected numbers; drop --disconnected".into(),
            ))
        }
    };
    let method_name = match method {
        Method::Char => "char",
        Method::Brute => "brute",
        Method::Connected => "connected",
    };
    let mut rec = json!({
        "anchor": if disconnected { "hurwitz-character-sum" } else { "hurwitz-connected" },
        "genus": g,
        "partition": mu,
        "branch_points": r,
        "method": method_name,
        "connected": !disconnected,
        "value": rat_to_string(&value),
    });
    if method == Method::Brute {
        rec["cost"] = json!(bruteforce_cost(mu.size(), r).to_string());
    }
    let rows = vec![
        vec![
            "genus".into(),
            "partition".into(),
            "branch_points".into(),
            "method".into(),
            "connected".into(),
            "value".into(),
        ],
        vec![
            g.to_string(),
            mu.label(),
            r.to_string(),
            method_name.into(),
            (!disconnected).to_string(),
            rat_to_string(&value),
        ],
    ];
    Ok(emit_records(cfg, "hurwitz", format, &[rec], Some(rows)))
}

fn checked_weight(cfg: &RunConfig, mu: &Partition) -> std::result::Result<(), Failure> {
    if mu.size() as i64 > cfg.max_weight {
        return Err(Error::TruncationExceeded {
            requested: mu.size() as i64,
            available: cfg.max_weight,
        }
        .into());
    }
    Ok(())
}

fn cmd_hodge(
    cfg: &RunConfig,
    format: Format,
    g: u32,
    mu: &Partition,
) -> std::result::Result<String, Failure> {
    checked_weight(cfg, mu)?;
    // Coefficients of p_mu do not depend on the weight cut-off, so build only up to |mu|.
    let r = build_r(&build_r_star(mu.size() as i64, cfg.lambda_order)?)?;
    let c = extract_c_gmu(&r, g, mu)?;
    let hodge = hodge_polynomial(&r, g, mu)?;
    let rec = json!({
        "anchor": "triple-hodge-definition",
        "genus": g,
        "partition": mu,
        "degree_bound": c.degree_bound(),
        "c_gmu": c.poly,
        "hodge": hodge,
    });
    let rows = vec![
        vec![
            "genus".into(),
            "partition".into(),
            "c_gmu".into(),
            "hodge".into(),
        ],
        vec![
            g.to_string(),
            mu.label(),
            serde_json::to_string(&c.poly).unwrap(),
            serde_json::to_string(&hodge).unwrap(),
        ],
    ];
    Ok(emit_records(cfg, "hodge", format, &[rec], Some(rows)))
}

fn cmd_mv_series(
    cfg: &RunConfig,
    format: Format,
    which: Which,
) -> std::result::Result<String, Failure> {
    let r_star = build_r_star(cfg.max_weight, cfg.lambda_order)?;
    let (name, series): (&str, MvSeries) = match which {
        Which::RStar => ("R•", r_star),
        Which::R => ("R", build_r(&r_star)?),
    };
    let mut records = vec![json!({
        "anchor": if which == Which::R { "connected-series" } else { "character-series" },
        "series": name,
        "effective_lambda_order": series.effective_order(),
        "terms": series.body.len(),
    })];
    let mut rows = vec![vec!["partition".to_string(), "coefficient".to_string()]];
    for (mu, coeff) in series.body.terms() {
        records.push(json!({"partition": mu, "coeff": coeff}));
        rows.push(vec![mu.label(), serde_json::to_string(coeff).unwrap()]);
    }
    Ok(emit_records(cfg, "mv-series", format, &records, Some(rows)))
}

fn cmd_verify(
    cfg: &RunConfig,
    format: Format,
    suite: &str,
) -> std::result::Result<(String, bool), Failure> {
    let suites = Suite::parse(suite)?;
    let records = run_suites(&suites, cfg)?;
    let ok = all_passed(&records);
    let command = format!("verify --suite {suite}");
    let text = match format {
        Format::Json => render_json_lines(cfg, &command, &records),
        Format::Csv => {
            let rows = std::iter::once(vec![
                "suite".into(),
                "id".into(),
                "anchor".into(),
                "passed".into(),
            ])
            .chain(records.iter().map(|r| {
                vec![
                    r.suite.to_string(),
                    r.id.clone(),
                    r.anchor.to_string(),
                    r.passed.to_string(),
                ]
            }))
            .collect();
            emit_records(cfg, &command, format, &[], Some(rows))
        }
        Format::Pretty => {
            let mut s = format!(
                "{command}  (max_weight {}, lambda_order {}, budget {} [{}], seed {})\n",
                cfg.max_weight, cfg.lambda_order, cfg.budget, cfg.budget_source, cfg.seed
            );
            for r in &records {
                s.push_str(&format!(
                    "{} {:<11} {:<28} [{}]\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.suite,
                    r.id,
                    r.anchor
                ));
            }
            let passed = records.iter().filter(|r| r.passed).count();
            s.push_str(&format!("{passed}/{} checks passed\n", records.len()));
            s
        }
    };
    Ok((text, ok))
}

fn run(cli: Cli) -> std::result::Result<(String, bool), Failure> {
    let cfg = run_config(&cli.global)?;
    let format = cli.global.format;
    match cli.command {
        Command::Char { degree } => Ok((cmd_char(&cfg, format, degree as usize), true)),
        Command::Hurwitz {
            genus,
            partition,
            method,
            disconnected,
        } => Ok((
            cmd_hurwitz(&cfg, format, genus, &partition, method, disconnected)?,
            true,
        )),
        Command::Hodge { genus, partition } => {
            Ok((cmd_hodge(&cfg, format, genus, &partition)?, true))
        }
        Command::MvSeries { which } => Ok((cmd_mv_series(&cfg, format, which)?, true)),
        Command::Verify { suite } => cmd_verify(&cfg, format, &suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
