//! `bec-ledger`: computes building operational energy ledgers from energy
//! balance sheet CSV files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use bec_core::accounting::{ledger_series, total_building_energy};
use bec_core::audit::{audit_csv, double_count_detector, heat_balance_check, AuditReport};
use bec_core::compare::compare_ledgers;
use bec_core::ingest::{
    read_balance_csv, read_conversion_csv, read_noncommercial_csv, ConversionTable,
};
use bec_core::model::DEFAULT_RECONCILIATION_TOLERANCE;
use bec_core::report::{write_reports, ReportInputs, ReportOutput, ReportSpec};
use bec_core::{AccountingPolicy, BalanceSheet, Decimal, NonCommercialRecord, YearSeries};
use clap::{Args, Parser, Subcommand};

mod exit;

use exit::{Failure, InputPathMissing};

#[derive(Parser, Debug)]
#[command(
    name = "bec-ledger",
    version,
    about = "Building operational energy ledger"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and reconcile the input files without computing anything.
    IngestCheck(Inputs),
    /// Compute the ledger and write ledger.csv plus the ledger plot files.
    Compute {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "eq3-default")]
        policy: String,
        #[command(flatten)]
        output: Output,
    },
    /// Check the heat column identities and look for re-added central heating.
    Audit {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "eq3-default")]
        policy: String,
        #[command(flatten)]
        output: Output,
    },
    /// Year-by-year difference between two policies.
    Compare {
        #[command(flatten)]
        inputs: Inputs,
        /// Pass exactly twice: policy A, then policy B.
        #[arg(long, num_args = 1, required = true)]
        policy: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Write every report file (or the ones named with --only).
    Report {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "eq3-default")]
        policy: String,
        #[command(flatten)]
        output: Output,
        /// Restrict to these outputs: ledger-table, composition,
        /// share-of-final, public-detail, noncommercial-detail, audit.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct Inputs {
    #[arg(long)]
    balance: PathBuf,
    #[arg(long)]
    noncommercial: Option<PathBuf>,
    /// Conversion table CSV (unit,factor_to_mtce).
    #[arg(long)]
    units: Option<PathBuf>,
    /// Inclusive year range `a..b`, or a single year.
    #[arg(long, value_parser = parse_years)]
    years: Option<(i32, i32)>,
    /// Tolerance in Mtce for reconciliation and heat audits.
    #[arg(long)]
    tolerance: Option<Decimal>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, env = "BEC_LEDGER_OUT", default_value = "bec-out")]
    out: PathBuf,
}

fn parse_years(s: &str) -> Result<(i32, i32), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<i32>()
            .map_err(|_| format!("invalid year '{t}'"))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let y = parse(s)?;
            (y, y)
        }
    };
    if a > b {
        return Err(format!("empty year range {a}..{b}"));
    }
    Ok((a, b))
}

/// Everything loaded from disk for one run.
struct Loaded {
    sheets: Vec<BalanceSheet>,
    records: YearSeries<NonCommercialRecord>,
    tolerance: Decimal,
}

fn require(path: &Path) -> anyhow::Result<()> {
    if !path.exists() {
        return Err(InputPathMissing(path.to_path_buf()).into());
    }
    Ok(())
}

impl Inputs {
    fn check_paths(&self) -> anyhow::Result<()> {
        require(&self.balance)?;
        for path in [&self.noncommercial, &self.units].into_iter().flatten() {
            require(path)?;
        }
        Ok(())
    }

    fn load(&self) -> anyhow::Result<Loaded> {
        self.check_paths()?;
        let units = match &self.units {
            Some(path) => read_conversion_csv(path)?,
            None => ConversionTable::default(),
        };
        let tolerance = self.tolerance.unwrap_or(DEFAULT_RECONCILIATION_TOLERANCE);
        let mut sheets = read_balance_csv(&self.balance, &units, tolerance)?;
        let mut records = match &self.noncommercial {
            Some(path) => read_noncommercial_csv(path)?,
            None => YearSeries::new(),
        };
        if let Some((a, b)) = self.years {
            sheets.retain(|s| (a..=b).contains(&s.year()));
            records.retain_years(a, b);
            if sheets.is_empty() {
                return Err(bec_core::Error::InvalidYearRange(format!(
                    "{a}..{b} contains no balance sheet year"
                ))
                .into());
            }
        }
        Ok(Loaded {
            sheets,
            records,
            tolerance,
        })
    }
}

fn policy(spec: &str) -> anyhow::Result<AccountingPolicy> {
    if bec_core::Preset::from_name(spec).is_none() && !Path::new(spec).exists() {
        return Err(InputPathMissing(PathBuf::from(spec)).into());
    }
    Ok(AccountingPolicy::resolve(spec)?)
}

fn ingest_check(inputs: &Inputs) -> anyhow::Result<ExitCode> {
    let loaded = inputs.load()?;
    for sheet in &loaded.sheets {
        println!(
            "{}: {} cells, final energy {} Mtce, reconciled",
            sheet.year(),
            sheet.cells().count(),
            sheet.final_energy()?
        );
    }
    if inputs.noncommercial.is_some() {
        println!("non-commercial records: {}", loaded.records.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn report_spec(out: &Path, outputs: Vec<ReportOutput>, years: Option<(i32, i32)>) -> ReportSpec {
    let mut spec = ReportSpec::new(out);
    spec.outputs = outputs;
    spec.years = years;
    spec
}

fn compute(inputs: &Inputs, policy_spec: &str, out: &Path) -> anyhow::Result<ExitCode> {
    let policy = policy(policy_spec)?;
    let loaded = inputs.load()?;
    let ledgers = ledger_series(&loaded.sheets, &loaded.records, &policy)?;
    for ledger in ledgers.values() {
        for w in ledger.warnings() {
            eprintln!("warning: {}: {w}", ledger.year());
        }
    }
    let spec = report_spec(out, vec![ReportOutput::LedgerTable], inputs.years);
    let written = write_reports(
        &spec,
        &ReportInputs {
            sheets: &loaded.sheets,
            records: &loaded.records,
            policy: &policy,
            ledgers: &ledgers,
            audits: None,
        },
    )?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

/// Heat identities plus the double-count detector for every sheet.
///
/// The detector runs on a ledger built without non-commercial energy when no
/// records were supplied; it looks only at the central heating term.
///
/// With `skip_missing_heat`, sheets without heat rows are left out with a
/// warning instead of failing the run.
fn audit_reports(
    loaded: &Loaded,
    policy: &AccountingPolicy,
    skip_missing_heat: bool,
) -> anyhow::Result<Vec<AuditReport>> {
    let mut reports = Vec::with_capacity(loaded.sheets.len());
    for sheet in &loaded.sheets {
        let mut report = match heat_balance_check(sheet, loaded.tolerance) {
            Err(e @ bec_core::Error::MissingHeatData { .. }) if skip_missing_heat => {
                eprintln!("warning: audit skipped: {e}");
                continue;
            }
            other => other?,
        };
        let record = loaded.records.get(sheet.year());
        let mut p = policy.clone();
        if record.is_none() {
            p.include_non_commercial = false;
        }
        let ledger = total_building_energy(sheet, record, &p)?;
        report.merge(double_count_detector(&ledger, sheet));
        reports.push(report);
    }
    Ok(reports)
}

fn audit(inputs: &Inputs, policy_spec: &str, out: &Path) -> anyhow::Result<ExitCode> {
    let policy = policy(policy_spec)?;
    let loaded = inputs.load()?;
    let reports = audit_reports(&loaded, &policy, false)?;
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let path = out.join("audit.csv");
    std::fs::write(&path, audit_csv(&reports))
        .with_context(|| format!("writing {}", path.display()))?;
    let mut all_pass = true;
    for report in &reports {
        print!("{}", report.to_text());
        all_pass &= report.overall_pass();
    }
    println!("wrote {}", path.display());
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("audit failed");
        Ok(Failure::Audit.into())
    }
}

fn compare(inputs: &Inputs, policies: &[String], out: &Path) -> anyhow::Result<ExitCode> {
    let [a, b] = policies else {
        return Err(exit::Usage(format!(
            "compare takes --policy exactly twice, got {}",
            policies.len()
        ))
        .into());
    };
    let (a, b) = (policy(a)?, policy(b)?);
    let loaded = inputs.load()?;
    let la = ledger_series(&loaded.sheets, &loaded.records, &a)?;
    let lb = ledger_series(&loaded.sheets, &loaded.records, &b)?;
    let comparison = compare_ledgers(&la, &lb)?;
    print!("{}", comparison.to_text());
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let path = out.join("compare.csv");
    std::fs::write(&path, comparison.to_csv())
        .with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn report(
    inputs: &Inputs,
    policy_spec: &str,
    out: &Path,
    only: &[String],
) -> anyhow::Result<ExitCode> {
    let policy = policy(policy_spec)?;
    let outputs = if only.is_empty() {
        ReportOutput::ALL.to_vec()
    } else {
        only.iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<ReportOutput>, _>>()?
    };
    let loaded = inputs.load()?;
    let ledgers = ledger_series(&loaded.sheets, &loaded.records, &policy)?;
    // Only an explicit `--only audit` insists on heat rows for every year.
    let audits = if outputs.contains(&ReportOutput::Audit) {
        Some(audit_reports(&loaded, &policy, only.is_empty())?)
    } else {
        None
    };
    let spec = report_spec(out, outputs, inputs.years);
    let written = write_reports(
        &spec,
        &ReportInputs {
            sheets: &loaded.sheets,
            records: &loaded.records,
            policy: &policy,
            ledgers: &ledgers,
            audits: audits.as_deref(),
        },
    )?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::IngestCheck(inputs) => ingest_check(inputs),
        Command::Compute {
            inputs,
            policy,
            output,
        } => compute(inputs, policy, &output.out),
        Command::Audit {
            inputs,
            policy,
            output,
        } => audit(inputs, policy, &output.out),
        Command::Compare {
            inputs,
            policy,
            output,
        } => compare(inputs, policy, &output.out),
        Command::Report {
            inputs,
            policy,
            output,
            only,
        } => report(inputs, policy, &output.out, only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            let (class, code) = exit::classify(&err);
            eprintln!("error[{class}]: {err:#}");
            code.into()
        }
    }
}
