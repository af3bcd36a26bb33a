//! Year-by-year differences between two policies' ledgers.

use std::fmt::Write as _;

use crate::accounting::{AdjustmentKind, BuildingEnergyLedger};
use crate::error::{Error, Result};
use crate::model::YearSeries;
use crate::quantity::Mtce;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonRow {
    pub year: i32,
    pub total_a: Mtce,
    pub total_b: Mtce,
    /// `b - a` for NBE, RE, PE, NCE and re-added central heating.
    pub delta_total: Mtce,
    pub delta_residential: Mtce,
    pub delta_public: Mtce,
    pub delta_non_commercial: Mtce,
    pub delta_central_heating: Mtce,
    /// `b - a` per itemized adjustment, in [`AdjustmentKind::ALL`] order.
    pub adjustment_deltas: Vec<(AdjustmentKind, Mtce)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub policy_a: String,
    pub policy_b: String,
    pub rows: Vec<ComparisonRow>,
}

fn row(a: &BuildingEnergyLedger, b: &BuildingEnergyLedger) -> Result<ComparisonRow> {
    let adjustment_deltas = AdjustmentKind::ALL
        .into_iter()
        .map(|k| Ok((k, b.adjustment(k).signed_sub(a.adjustment(k))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonRow {
        year: a.year(),
        total_a: a.total(),
        total_b: b.total(),
        delta_total: b.total().signed_sub(a.total())?,
        delta_residential: b.residential().signed_sub(a.residential())?,
        delta_public: b.public().signed_sub(a.public())?,
        delta_non_commercial: b.non_commercial().signed_sub(a.non_commercial())?,
        delta_central_heating: b.central_heating().signed_sub(a.central_heating())?,
        adjustment_deltas,
    })
}

/// Pairs ledgers by year; both series must cover the same years.
pub fn compare_ledgers(
    a: &YearSeries<BuildingEnergyLedger>,
    b: &YearSeries<BuildingEnergyLedger>,
) -> Result<Comparison> {
    let mut rows = Vec::with_capacity(a.len());
    for (year, la) in a.iter() {
        let lb = b.get(year).ok_or(Error::YearMismatch(year))?;
        rows.push(row(la, lb)?);
    }
    if let Some(extra) = b.years().find(|&y| a.get(y).is_none()) {
        return Err(Error::YearMismatch(extra));
    }
    let name = |s: &YearSeries<BuildingEnergyLedger>| {
        s.values()
            .next()
            .map(|l| l.policy().name.clone())
            .unwrap_or_default()
    };
    Ok(Comparison {
        policy_a: name(a),
        policy_b: name(b),
        rows,
    })
}

impl Comparison {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("year,NBE_a,NBE_b,delta_NBE,delta_RE,delta_PE,delta_NCE,delta_CH");
        for k in AdjustmentKind::ALL {
            let _ = write!(out, ",delta_{}", k.label());
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.year,
                r.total_a,
                r.total_b,
                r.delta_total,
                r.delta_residential,
                r.delta_public,
                r.delta_non_commercial,
                r.delta_central_heating
            );
            for (_, d) in &r.adjustment_deltas {
                let _ = write!(out, ",{d}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "A = {}, B = {}", self.policy_a, self.policy_b);
        let _ = writeln!(
            out,
            "{:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
            "year", "NBE(A)", "NBE(B)", "B-A", "dRE", "dPE", "dNCE", "dCH"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
                r.year,
                r.total_a.to_string(),
                r.total_b.to_string(),
                r.delta_total.to_string(),
                r.delta_residential.to_string(),
                r.delta_public.to_string(),
                r.delta_non_commercial.to_string(),
                r.delta_central_heating.to_string()
            );
            for (k, d) in &r.adjustment_deltas {
                if !d.is_zero() {
                    let _ = writeln!(out, "{:>6}   {k}: {d}", "");
                }
            }
        }
        out
    }
}
