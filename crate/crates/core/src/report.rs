//! Tables and plot-ready series.
//!
//! CSV outputs carry Mtce values at two decimals, exactly as held in the
//! ledger, so re-summing a rendered row reproduces its total. Plot files are
//! space-separated columns behind a `#` header line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::accounting::{
    composition_shares, public_breakdown, share_of_final, BuildingEnergyLedger,
};
use crate::audit::{audit_csv, AuditReport};
use crate::error::{Error, Result};
use crate::model::{BalanceSheet, NonCommercialRecord, YearSeries};
use crate::policy::AccountingPolicy;
use crate::quantity::Mtce;

pub const DEFAULT_PRECISION: u32 = 2;

/// A table rendered for people (aligned text) and for tools (CSV).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedTable {
    pub text: String,
    pub csv: String,
}

fn render(header: &[&str], rows: &[Vec<String>]) -> RenderedTable {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut text = String::new();
    let mut csv = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut text);
    csv.push_str(&header.join(","));
    csv.push('\n');
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut text);
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    RenderedTable { text, csv }
}

pub const LEDGER_HEADER: [&str; 7] = ["year", "RE", "PE", "NCE", "CH", "commercialNBE", "NBE"];

/// One row per year: RE, PE, NCE, re-added central heating (CH),
/// commercial building energy and NBE.
pub fn render_ledger_table(series: &YearSeries<BuildingEnergyLedger>) -> Result<RenderedTable> {
    if series.is_empty() {
        return Err(Error::EmptyReport);
    }
    let rows: Vec<Vec<String>> = series
        .values()
        .map(|l| {
            vec![
                l.year().to_string(),
                l.residential().to_string(),
                l.public().to_string(),
                l.non_commercial().to_string(),
                l.central_heating().to_string(),
                l.commercial_total().to_string(),
                l.total().to_string(),
            ]
        })
        .collect();
    Ok(render(&LEDGER_HEADER, &rows))
}

/// WRHR and Others consumption, their road fuels and the resulting
/// building consumption (transport electricity excluded).
pub fn render_public_detail(
    sheets: &[BalanceSheet],
    policy: &AccountingPolicy,
) -> Result<RenderedTable> {
    if sheets.is_empty() {
        return Err(Error::EmptyReport);
    }
    let mut ordered: Vec<&BalanceSheet> = sheets.iter().collect();
    ordered.sort_by_key(|s| s.year());
    let rows = ordered
        .into_iter()
        .map(|sheet| {
            let b = public_breakdown(sheet, policy)?;
            Ok(vec![
                sheet.year().to_string(),
                b.wrhr.to_string(),
                b.others.to_string(),
                b.gasoline.to_string(),
                b.diesel.to_string(),
                b.services.to_string(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(render(
        &["year", "WRHR", "others", "gasoline", "diesel", "building"],
        &rows,
    ))
}

pub fn render_noncommercial_detail(
    records: &YearSeries<NonCommercialRecord>,
) -> Result<RenderedTable> {
    if records.is_empty() {
        return Err(Error::EmptyReport);
    }
    let rows = records
        .values()
        .map(|r| {
            Ok(vec![
                r.year().to_string(),
                r.fuelwood_straw().to_string(),
                r.methane().to_string(),
                r.total()?.to_string(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(render(
        &["year", "fuelwood_straw", "methane", "total"],
        &rows,
    ))
}

/// Splits 100% across `parts` at `precision` decimals by largest remainder,
/// so a row always sums to exactly 100.
pub fn percentages(parts: &[Mtce], precision: u32) -> Vec<String> {
    let total: i128 = parts.iter().map(|p| i128::from(p.hundredths())).sum();
    let scale = 10i128.pow(precision);
    let units = 100 * scale;
    if total == 0 {
        return parts.iter().map(|_| format_units(0, precision)).collect();
    }
    let mut alloc: Vec<(usize, i128, i128)> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let num = i128::from(p.hundredths()) * units;
            (i, num / total, num % total)
        })
        .collect();
    let assigned: i128 = alloc.iter().map(|a| a.1).sum();
    let mut leftover = units - assigned;
    let mut order: Vec<usize> = (0..alloc.len()).collect();
    order.sort_by(|&x, &y| alloc[y].2.cmp(&alloc[x].2).then(x.cmp(&y)));
    for idx in order {
        if leftover == 0 {
            break;
        }
        if alloc[idx].2 > 0 {
            alloc[idx].1 += 1;
            leftover -= 1;
        }
    }
    alloc.iter().map(|a| format_units(a.1, precision)).collect()
}

fn format_units(units: i128, precision: u32) -> String {
    if precision == 0 {
        return units.to_string();
    }
    let scale = 10i128.pow(precision);
    format!(
        "{}.{:0width$}",
        units / scale,
        units % scale,
        width = precision as usize
    )
}

/// Composition of NBE in percent per year.
pub fn render_shares(
    series: &YearSeries<BuildingEnergyLedger>,
    precision: u32,
) -> Result<RenderedTable> {
    if series.is_empty() {
        return Err(Error::EmptyReport);
    }
    let rows = series
        .values()
        .map(|l| {
            if l.total().is_zero() {
                return Err(Error::EmptyLedger(l.year()));
            }
            let mut row = vec![l.year().to_string()];
            row.extend(percentages(
                &[
                    l.residential(),
                    l.public(),
                    l.non_commercial(),
                    l.central_heating(),
                ],
                precision,
            ));
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(render(
        &[
            "year",
            "residential_pct",
            "public_pct",
            "noncommercial_pct",
            "central_heating_pct",
        ],
        &rows,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    Residential,
    Public,
    NonCommercial,
    Total,
    Shares,
    ShareOfFinal,
}

impl PlotKind {
    pub const ALL: [PlotKind; 6] = [
        PlotKind::Residential,
        PlotKind::Public,
        PlotKind::NonCommercial,
        PlotKind::Total,
        PlotKind::Shares,
        PlotKind::ShareOfFinal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlotKind::Residential => "residential",
            PlotKind::Public => "public",
            PlotKind::NonCommercial => "noncommercial",
            PlotKind::Total => "total",
            PlotKind::Shares => "shares",
            PlotKind::ShareOfFinal => "share-of-final",
        }
    }

    pub fn file_name(self) -> String {
        format!("plot_{}.dat", self.name())
    }
}

impl FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlotKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::UnknownReportKind(s.into()))
    }
}

/// x–y(–y2…) columns for an external plotting tool.
///
/// `share-of-final` needs the per-year final energy consumption.
pub fn render_plot_series(
    series: &YearSeries<BuildingEnergyLedger>,
    kind: PlotKind,
    final_energy: Option<&YearSeries<Mtce>>,
) -> Result<String> {
    if series.is_empty() {
        return Err(Error::EmptyReport);
    }
    let mut out = String::new();
    let header = match kind {
        PlotKind::Residential => "year RE",
        PlotKind::Public => "year PE",
        PlotKind::NonCommercial => "year NCE",
        PlotKind::Total => "year commercialNBE NBE",
        PlotKind::Shares => "year residential_pct public_pct noncommercial_pct central_heating_pct",
        PlotKind::ShareOfFinal => "year share_of_final_pct share_of_final_incl_noncommercial_pct",
    };
    let _ = writeln!(out, "# {header}");
    for l in series.values() {
        let y = l.year();
        let cols: Vec<String> = match kind {
            PlotKind::Residential => vec![l.residential().to_string()],
            PlotKind::Public => vec![l.public().to_string()],
            PlotKind::NonCommercial => vec![l.non_commercial().to_string()],
            PlotKind::Total => vec![l.commercial_total().to_string(), l.total().to_string()],
            PlotKind::Shares => {
                composition_shares(l)?;
                percentages(
                    &[
                        l.residential(),
                        l.public(),
                        l.non_commercial(),
                        l.central_heating(),
                    ],
                    DEFAULT_PRECISION,
                )
            }
            PlotKind::ShareOfFinal => {
                let fe = final_energy
                    .and_then(|f| f.get(y))
                    .copied()
                    .ok_or(Error::YearMismatch(y))?;
                let commercial = share_of_final(l, fe, false)?;
                let with_nce = share_of_final(l, fe, true)?;
                vec![
                    format!("{:.4}", commercial.percent()),
                    format!("{:.4}", with_nce.percent()),
                ]
            }
        };
        let _ = writeln!(out, "{y} {}", cols.join(" "));
    }
    Ok(out)
}

/// Which files a report run produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportOutput {
    LedgerTable,
    Composition,
    ShareOfFinal,
    PublicDetail,
    NonCommercialDetail,
    Audit,
}

impl ReportOutput {
    pub const ALL: [ReportOutput; 6] = [
        ReportOutput::LedgerTable,
        ReportOutput::Composition,
        ReportOutput::ShareOfFinal,
        ReportOutput::PublicDetail,
        ReportOutput::NonCommercialDetail,
        ReportOutput::Audit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReportOutput::LedgerTable => "ledger-table",
            ReportOutput::Composition => "composition",
            ReportOutput::ShareOfFinal => "share-of-final",
            ReportOutput::PublicDetail => "public-detail",
            ReportOutput::NonCommercialDetail => "noncommercial-detail",
            ReportOutput::Audit => "audit",
        }
    }
}

impl FromStr for ReportOutput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReportOutput::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::UnknownReportKind(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportSpec {
    pub outputs: Vec<ReportOutput>,
    /// Inclusive year range; `None` means every available year.
    pub years: Option<(i32, i32)>,
    pub out_dir: PathBuf,
    /// Decimal places of percentage columns.
    pub precision: u32,
}

impl ReportSpec {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        ReportSpec {
            outputs: ReportOutput::ALL.to_vec(),
            years: None,
            out_dir: out_dir.into(),
            precision: DEFAULT_PRECISION,
        }
    }

    /// Range must be non-empty and overlap `available`.
    pub fn validate(&self, available: &[i32]) -> Result<()> {
        if let Some((a, b)) = self.years {
            if a > b {
                return Err(Error::InvalidYearRange(format!("{a}..{b} is empty")));
            }
            if !available.iter().any(|y| (a..=b).contains(y)) {
                return Err(Error::InvalidYearRange(format!(
                    "{a}..{b} contains no available year"
                )));
            }
        }
        Ok(())
    }
}

/// Everything a report run may draw on.
pub struct ReportInputs<'a> {
    pub sheets: &'a [BalanceSheet],
    pub records: &'a YearSeries<NonCommercialRecord>,
    pub policy: &'a AccountingPolicy,
    pub ledgers: &'a YearSeries<BuildingEnergyLedger>,
    /// Audit reports; required only when the audit output is requested.
    pub audits: Option<&'a [AuditReport]>,
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Writes the requested outputs into `spec.out_dir`, returning the paths.
pub fn write_reports(spec: &ReportSpec, inputs: &ReportInputs<'_>) -> Result<Vec<PathBuf>> {
    let dir = spec.out_dir.as_path();
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for output in &spec.outputs {
        match output {
            ReportOutput::LedgerTable => {
                let t = render_ledger_table(inputs.ledgers)?;
                written.push(write_file(dir, "ledger.csv", &t.csv)?);
                for kind in [PlotKind::Residential, PlotKind::Public, PlotKind::Total] {
                    let plot = render_plot_series(inputs.ledgers, kind, None)?;
                    written.push(write_file(dir, &kind.file_name(), &plot)?);
                }
            }
            ReportOutput::Composition => {
                let t = render_shares(inputs.ledgers, spec.precision)?;
                written.push(write_file(dir, "shares.csv", &t.csv)?);
                let plot = render_plot_series(inputs.ledgers, PlotKind::Shares, None)?;
                written.push(write_file(dir, &PlotKind::Shares.file_name(), &plot)?);
            }
            ReportOutput::ShareOfFinal => {
                let mut finals = YearSeries::new();
                for sheet in inputs.sheets {
                    finals.insert(sheet.year(), sheet.final_energy()?)?;
                }
                let plot =
                    render_plot_series(inputs.ledgers, PlotKind::ShareOfFinal, Some(&finals))?;
                written.push(write_file(dir, &PlotKind::ShareOfFinal.file_name(), &plot)?);
            }
            ReportOutput::PublicDetail => {
                let t = render_public_detail(inputs.sheets, inputs.policy)?;
                written.push(write_file(dir, "public_detail.csv", &t.csv)?);
            }
            ReportOutput::NonCommercialDetail => {
                let t = render_noncommercial_detail(inputs.records)?;
                written.push(write_file(dir, "noncommercial.csv", &t.csv)?);
                let plot = render_plot_series(inputs.ledgers, PlotKind::NonCommercial, None)?;
                written.push(write_file(
                    dir,
                    &PlotKind::NonCommercial.file_name(),
                    &plot,
                )?);
            }
            ReportOutput::Audit => {
                if let Some(audits) = inputs.audits {
                    written.push(write_file(dir, "audit.csv", &audit_csv(audits))?);
                }
            }
        }
    }
    Ok(written)
}
