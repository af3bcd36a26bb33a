//! Heat-column balance identities and the central-heating double-count check.

use std::fmt::Write as _;

use rust_decimal::Decimal;

use crate::accounting::BuildingEnergyLedger;
use crate::error::{Error, Result};
use crate::model::{BalanceSheet, FuelKind, SectorKind, TransformationItem};
use crate::quantity::Mtce;

/// Default audit tolerance: one printed decimal step.
pub const DEFAULT_AUDIT_TOLERANCE: Decimal = Decimal::from_parts(1, 0, 0, false, 2);

pub const AUDIT_CSV_HEADER: &str = "check,expected,actual,tolerance,pass";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Info,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: Mtce,
    pub actual: Mtce,
    pub tolerance: Decimal,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected.abs_diff(self.actual).to_decimal() <= self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub year: i32,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
}

impl AuditReport {
    pub fn new(year: i32) -> Self {
        AuditReport {
            year,
            checks: Vec::new(),
            findings: Vec::new(),
        }
    }

    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
            && self.findings.iter().all(|f| f.severity != Severity::Error)
    }

    pub fn merge(&mut self, other: AuditReport) {
        self.checks.extend(other.checks);
        self.findings.extend(other.findings);
    }

    fn info(&mut self, message: String) {
        self.findings.push(Finding {
            severity: Severity::Info,
            message,
        });
    }

    fn error(&mut self, message: String) {
        self.findings.push(Finding {
            severity: Severity::Error,
            message,
        });
    }

    /// CSV rows (no header); check names are prefixed with the year.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{}/{},{},{},{},{}",
                self.year,
                c.name,
                c.expected,
                c.actual,
                c.tolerance,
                c.passed()
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.overall_pass() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "audit {} : {verdict}", self.year);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  [{}] {:<32} expected {:>10}  actual {:>10}  tol {}",
                if c.passed() { "ok" } else { "!!" },
                c.name,
                c.expected,
                c.actual,
                c.tolerance
            );
        }
        for f in &self.findings {
            let tag = match f.severity {
                Severity::Info => "note",
                Severity::Error => "error",
            };
            let _ = writeln!(out, "  {tag}: {}", f.message);
        }
        out
    }
}

/// Serializes reports as `check,expected,actual,tolerance,pass`.
pub fn audit_csv(reports: &[AuditReport]) -> String {
    let mut out = format!("{AUDIT_CSV_HEADER}\n");
    for r in reports {
        out.push_str(&r.csv_rows());
    }
    out
}

fn heat_row(sheet: &BalanceSheet, item: TransformationItem) -> Option<Mtce> {
    sheet.transformation(item, FuelKind::Heat)
}

/// Checks the heat column identities:
///
/// 1. thermal power + heating supply + recovery = total transformation
/// 2. total transformation − loss = total final heat
/// 3. Σ sector heat cells = total final heat
///
/// Thermal power, recovery and loss count as zero when absent; the total
/// transformation, heating supply and total final rows are required.
pub fn heat_balance_check(sheet: &BalanceSheet, tolerance: Decimal) -> Result<AuditReport> {
    let year = sheet.year();
    let missing = |what: &str| Error::MissingHeatData {
        year,
        message: format!("no {what} row for heat"),
    };
    let total_xform = heat_row(sheet, TransformationItem::TotalTransformation)
        .ok_or_else(|| missing("total-transformation"))?;
    let supply = heat_row(sheet, TransformationItem::HeatingSupply)
        .ok_or_else(|| missing("heating-supply"))?;
    let total_final = sheet
        .total_final(FuelKind::Heat)
        .ok_or_else(|| missing("total-final"))?;

    let mut report = AuditReport::new(year);
    let optional = |item| heat_row(sheet, item).unwrap_or(Mtce::ZERO);
    for item in [
        TransformationItem::ThermalPower,
        TransformationItem::Recovery,
        TransformationItem::Loss,
    ] {
        if heat_row(sheet, item).is_none() {
            report.info(format!("no {item} heat row; counted as zero"));
        }
    }
    let thermal = optional(TransformationItem::ThermalPower);
    let recovery = optional(TransformationItem::Recovery);
    let loss = optional(TransformationItem::Loss);

    report.checks.push(Check {
        name: "heat-transformation-sum".into(),
        expected: total_xform,
        actual: Mtce::try_sum([thermal, supply, recovery])?,
        tolerance,
    });
    report.checks.push(Check {
        name: "heat-transformation-less-loss".into(),
        expected: total_final,
        actual: total_xform.signed_sub(loss)?,
        tolerance,
    });
    report.checks.push(Check {
        name: "heat-sector-sum".into(),
        expected: total_final,
        actual: sheet.fuel_cells_total(FuelKind::Heat)?,
        tolerance,
    });

    let largest = SectorKind::ALL
        .into_iter()
        .filter_map(|s| sheet.cell(s, FuelKind::Heat).map(|v| (s, v)))
        .max_by_key(|&(_, v)| v);
    if let Some((sector, heat)) = largest {
        if !total_final.is_zero() {
            report.info(format!(
                "{sector} is the largest heat consumer: {heat} of {total_final} Mtce ({:.2}%)",
                heat.to_f64() / total_final.to_f64() * 100.0
            ));
        }
    }
    Ok(report)
}

/// Heat already inside the final consumption of building sectors, by
/// residential (urban + rural), WRHR and Others.
pub fn building_heat_overlap(sheet: &BalanceSheet) -> Result<Vec<(&'static str, Mtce)>> {
    let residential = SectorKind::RESIDENTIAL
        .iter()
        .try_fold(Mtce::ZERO, |acc, &s| {
            acc.checked_add(sheet.cell_or_zero(s, FuelKind::Heat))
        })?;
    Ok(vec![
        ("residential", residential),
        ("wrhr", sheet.cell_or_zero(SectorKind::Wrhr, FuelKind::Heat)),
        (
            "others",
            sheet.cell_or_zero(SectorKind::Others, FuelKind::Heat),
        ),
    ])
}

/// Flags a ledger whose policy re-added central heating on top of final
/// consumption that already contains the heat.
///
/// The overlap is attributed through the building sectors' final heat cells.
pub fn double_count_detector(ledger: &BuildingEnergyLedger, sheet: &BalanceSheet) -> AuditReport {
    let mut report = AuditReport::new(ledger.year());
    if !ledger.policy().add_central_heating {
        return report;
    }
    let added = ledger.central_heating();
    report.checks.push(Check {
        name: "central-heating-not-readded".into(),
        expected: Mtce::ZERO,
        actual: added,
        tolerance: Decimal::ZERO,
    });
    let overlap = building_heat_overlap(sheet).unwrap_or_default();
    let overlap_total: Mtce = Mtce::try_sum(overlap.iter().map(|&(_, v)| v)).unwrap_or(Mtce::ZERO);
    report.error(format!(
        "double count: policy '{}' adds {added} Mtce of central heating while building sectors \
         already consume {overlap_total} Mtce of heat in final consumption",
        ledger.policy().name
    ));
    for (sector, heat) in overlap {
        if !heat.is_zero() {
            report.error(format!(
                "double count: {sector} heat {heat} Mtce counted twice"
            ));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accounting::total_building_energy;
    use crate::model::NonCommercialRecord;
    use crate::policy::Preset;

    fn q(s: &str) -> Mtce {
        s.parse().unwrap()
    }

    fn table_2013() -> BalanceSheet {
        let mut b = BalanceSheet::builder(2013);
        for (item, v) in [
            (TransformationItem::ThermalPower, "-16.54"),
            (TransformationItem::HeatingSupply, "123.48"),
            (TransformationItem::Recovery, "17.39"),
            (TransformationItem::TotalTransformation, "124.33"),
            (TransformationItem::Loss, "1.43"),
        ] {
            b.transformation(item, FuelKind::Heat, q(v)).unwrap();
        }
        for (s, v) in [
            (SectorKind::Agriculture, "0.04"),
            (SectorKind::Industry, "89.21"),
            (SectorKind::Construction, "0.27"),
            (SectorKind::TransportStoragePost, "0.78"),
            (SectorKind::Wrhr, "1.73"),
            (SectorKind::Others, "3.09"),
            (SectorKind::ResidentialUrban, "27.78"),
        ] {
            b.cell(s, FuelKind::Heat, q(v)).unwrap();
        }
        b.total_final(FuelKind::Heat, q("122.90")).unwrap();
        b.build()
    }

    #[test]
    fn heat_identities_hold() {
        let report = heat_balance_check(&table_2013(), Decimal::new(5, 3)).unwrap();
        assert!(report.overall_pass(), "{}", report.to_text());
        let actual: Vec<_> = report.checks.iter().map(|c| c.actual).collect();
        assert_eq!(actual, vec![q("124.33"), q("122.90"), q("122.90")]);
        assert!(report
            .findings
            .iter()
            .any(|f| f.message.starts_with("industry is the largest")));
    }

    #[test]
    fn broken_identity_fails() {
        let mut b = BalanceSheet::builder(2013);
        b.transformation(TransformationItem::HeatingSupply, FuelKind::Heat, q("100"))
            .unwrap();
        b.transformation(
            TransformationItem::TotalTransformation,
            FuelKind::Heat,
            q("110"),
        )
        .unwrap();
        b.cell(SectorKind::Industry, FuelKind::Heat, q("110"))
            .unwrap();
        b.total_final(FuelKind::Heat, q("110")).unwrap();
        let report = heat_balance_check(&b.build(), DEFAULT_AUDIT_TOLERANCE).unwrap();
        assert!(!report.overall_pass());
        assert!(!report.checks[0].passed());
        assert!(report.checks[1].passed());
    }

    #[test]
    fn missing_heat_rows() {
        let mut b = BalanceSheet::builder(2013);
        b.cell(SectorKind::Industry, FuelKind::Heat, q("1"))
            .unwrap();
        assert!(matches!(
            heat_balance_check(&b.build(), DEFAULT_AUDIT_TOLERANCE),
            Err(Error::MissingHeatData { year: 2013, .. })
        ));
    }

    #[test]
    fn detector_fires_only_for_readded_heating() {
        let sheet = table_2013();
        let rec = NonCommercialRecord::new(2013, q("64.26"), q("12.77")).unwrap();
        let naive =
            total_building_energy(&sheet, Some(&rec), &Preset::NaiveHeatingAdded.policy()).unwrap();
        let report = double_count_detector(&naive, &sheet);
        assert!(!report.overall_pass());
        assert!(
            report
                .findings
                .iter()
                .any(|f| f.severity == Severity::Error
                    && f.message.contains("residential heat 27.78"))
        );

        let base = total_building_energy(&sheet, Some(&rec), &Preset::Eq3Default.policy()).unwrap();
        let report = double_count_detector(&base, &sheet);
        assert!(report.overall_pass());
        assert!(report.checks.is_empty());
    }

    #[test]
    fn csv_layout() {
        let report = heat_balance_check(&table_2013(), DEFAULT_AUDIT_TOLERANCE).unwrap();
        let csv = audit_csv(&[report]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(AUDIT_CSV_HEADER));
        assert_eq!(
            lines.next(),
            Some("2013/heat-transformation-sum,124.33,124.33,0.01,true")
        );
    }
}
