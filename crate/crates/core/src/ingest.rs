//! CSV ingestion: balance sheets, non-commercial records and unit tables.
//!
//! Balance CSV (`year,sector,fuel,quantity,unit`):
//!
//! ```text
//! year,sector,fuel,quantity,unit
//! 2013,transport-storage-post,electricity,12.30,Mtce
//! 2013,xform:heating-supply,heat,123.48,Mtce
//! 2013,total-final,heat,122.90,Mtce
//! ```
//!
//! Sector `xform:<item>` rows are signed transformation entries and
//! `total-final` rows carry per-fuel total final consumption. Every quantity
//! is converted to Mtce through a [`ConversionTable`] and rounded to two
//! decimals.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use rust_decimal::Decimal;

use crate::error::{Error, Result};
use crate::model::{
    BalanceSheet, BalanceSheetBuilder, FuelKind, NonCommercialRecord, SectorKind,
    TransformationItem, YearSeries,
};
use crate::quantity::Mtce;

pub const BALANCE_HEADER: [&str; 5] = ["year", "sector", "fuel", "quantity", "unit"];
pub const NONCOMMERCIAL_HEADER: [&str; 3] = ["year", "fuelwood_straw_mtce", "methane_mtce"];
pub const CONVERSION_HEADER: [&str; 2] = ["unit", "factor_to_mtce"];

const XFORM_PREFIX: &str = "xform:";
const TOTAL_FINAL: &str = "total-final";

/// One unconverted row of a balance CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct RawCell {
    pub year: i32,
    pub sector: String,
    pub fuel: String,
    pub quantity: Decimal,
    pub unit: String,
}

/// Multipliers from physical or scaled units to Mtce.
#[derive(Clone, Debug, PartialEq)]
pub struct ConversionTable {
    factors: BTreeMap<String, Decimal>,
}

impl Default for ConversionTable {
    /// Identity and decimal-scaled coal-equivalent units only; fuel-specific
    /// factors have to come from a conversion file.
    fn default() -> Self {
        let mut factors = BTreeMap::new();
        factors.insert("mtce".to_string(), Decimal::ONE);
        factors.insert("ktce".to_string(), Decimal::new(1, 3));
        factors.insert("tce".to_string(), Decimal::new(1, 6));
        ConversionTable { factors }
    }
}

impl ConversionTable {
    fn key(unit: &str) -> String {
        unit.trim().to_lowercase()
    }

    pub fn factor(&self, unit: &str) -> Option<Decimal> {
        self.factors.get(&Self::key(unit)).copied()
    }

    /// Adds or replaces a unit. Factors must be positive and `Mtce` stays 1.
    pub fn insert(&mut self, unit: &str, factor: Decimal) -> Result<()> {
        let key = Self::key(unit);
        if key.is_empty() {
            return Err(Error::InvalidConversion {
                unit: unit.into(),
                message: "empty unit label".into(),
            });
        }
        if factor <= Decimal::ZERO {
            return Err(Error::InvalidConversion {
                unit: unit.into(),
                message: format!("factor {factor} must be positive"),
            });
        }
        if key == "mtce" && factor != Decimal::ONE {
            return Err(Error::InvalidConversion {
                unit: unit.into(),
                message: "the Mtce factor is fixed at 1".into(),
            });
        }
        self.factors.insert(key, factor);
        Ok(())
    }

    pub fn units(&self) -> impl Iterator<Item = (&str, Decimal)> + '_ {
        self.factors.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

/// Converts a raw quantity to Mtce, rounding half away from zero.
pub fn normalize(raw: &RawCell, table: &ConversionTable) -> Result<Mtce> {
    let factor = table.factor(&raw.unit).ok_or_else(|| Error::UnknownUnit {
        unit: raw.unit.clone(),
        line: None,
    })?;
    let value = raw
        .quantity
        .checked_mul(factor)
        .ok_or(Error::ArithmeticOverflow("unit conversion"))?;
    Mtce::from_decimal(value)
}

fn csv_reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(false)
        .from_reader(input)
}

fn check_header<R: Read>(reader: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let header = reader.headers()?;
    if header.is_empty() {
        return Ok(());
    }
    let found: Vec<String> = header.iter().map(|h| h.trim().to_lowercase()).collect();
    if found != expected {
        return Err(Error::Parse {
            line: 1,
            column: "header".into(),
            message: format!(
                "expected '{}', found '{}'",
                expected.join(","),
                found.join(",")
            ),
        });
    }
    Ok(())
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn field<'r>(record: &'r csv::StringRecord, idx: usize, name: &str) -> Result<&'r str> {
    record.get(idx).ok_or_else(|| Error::Parse {
        line: line_of(record),
        column: name.into(),
        message: "missing field".into(),
    })
}

fn parse_year(record: &csv::StringRecord) -> Result<i32> {
    let raw = field(record, 0, "year")?;
    raw.parse().map_err(|_| Error::Parse {
        line: line_of(record),
        column: "year".into(),
        message: format!("'{raw}' is not a year"),
    })
}

fn parse_decimal(record: &csv::StringRecord, idx: usize, name: &str) -> Result<Decimal> {
    let raw = field(record, idx, name)?;
    Decimal::from_str(raw)
        .or_else(|_| Decimal::from_scientific(raw))
        .map_err(|_| Error::Parse {
            line: line_of(record),
            column: name.into(),
            message: format!("'{raw}' is not a decimal number"),
        })
}

/// Where a balance row lands in the sheet.
enum RowTarget {
    Cell(SectorKind),
    Transformation(TransformationItem),
    TotalFinal,
}

fn classify_sector(label: &str, line: u64) -> Result<RowTarget> {
    let trimmed = label.trim();
    if let Some(item) = trimmed.strip_prefix(XFORM_PREFIX) {
        return item
            .parse()
            .map(RowTarget::Transformation)
            .map_err(|_| Error::UnknownSector {
                line,
                label: label.into(),
            });
    }
    if trimmed.eq_ignore_ascii_case(TOTAL_FINAL) {
        return Ok(RowTarget::TotalFinal);
    }
    trimmed
        .parse()
        .map(RowTarget::Cell)
        .map_err(|_| Error::UnknownSector {
            line,
            label: label.into(),
        })
}

fn with_line(err: Error, line: u64) -> Error {
    match err {
        Error::DuplicateCell { year, key, .. } => Error::DuplicateCell { line, year, key },
        Error::NegativeQuantity { value, context } => Error::NegativeQuantity {
            value,
            context: format!("line {line}: {context}"),
        },
        other => other,
    }
}

/// Parses a balance CSV into one sheet per year, ascending.
///
/// Sheets carrying total-final rows are reconciled against their sector
/// cells within `tolerance`.
pub fn parse_balance_csv<R: Read>(
    input: R,
    table: &ConversionTable,
    tolerance: Decimal,
) -> Result<Vec<BalanceSheet>> {
    let mut reader = csv_reader(input);
    check_header(&mut reader, &BALANCE_HEADER)?;
    let mut builders: BTreeMap<i32, BalanceSheetBuilder> = BTreeMap::new();

    for record in reader.records() {
        let record = record?;
        let line = line_of(&record);
        let year = parse_year(&record)?;
        let sector_label = field(&record, 1, "sector")?;
        let target = classify_sector(sector_label, line)?;
        let fuel_label = field(&record, 2, "fuel")?;
        let fuel: FuelKind = fuel_label.parse().map_err(|_| Error::UnknownFuel {
            line,
            label: fuel_label.into(),
        })?;
        let raw = RawCell {
            year,
            sector: sector_label.into(),
            fuel: fuel_label.into(),
            quantity: parse_decimal(&record, 3, "quantity")?,
            unit: field(&record, 4, "unit")?.into(),
        };
        let value = normalize(&raw, table).map_err(|e| match e {
            Error::UnknownUnit { unit, .. } => Error::UnknownUnit {
                unit,
                line: Some(line),
            },
            other => other,
        })?;

        let builder = builders
            .entry(year)
            .or_insert_with(|| BalanceSheetBuilder::new(year));
        let res = match target {
            RowTarget::Cell(sector) => builder.cell(sector, fuel, value).map(|_| ()),
            RowTarget::Transformation(item) => {
                builder.transformation(item, fuel, value).map(|_| ())
            }
            RowTarget::TotalFinal => builder.total_final(fuel, value).map(|_| ()),
        };
        res.map_err(|e| with_line(e, line))?;
    }

    builders
        .values()
        .map(|b| b.build_reconciled(tolerance))
        .collect()
}

pub fn read_balance_csv(
    path: &Path,
    table: &ConversionTable,
    tolerance: Decimal,
) -> Result<Vec<BalanceSheet>> {
    parse_balance_csv(open(path)?, table, tolerance)
}

/// Parses `year,fuelwood_straw_mtce,methane_mtce` rows.
pub fn parse_noncommercial_csv<R: Read>(input: R) -> Result<YearSeries<NonCommercialRecord>> {
    let mut reader = csv_reader(input);
    check_header(&mut reader, &NONCOMMERCIAL_HEADER)?;
    let mut series = YearSeries::new();
    for record in reader.records() {
        let record = record?;
        let line = line_of(&record);
        let year = parse_year(&record)?;
        let fuelwood = Mtce::from_decimal(parse_decimal(&record, 1, "fuelwood_straw_mtce")?)?;
        let methane = Mtce::from_decimal(parse_decimal(&record, 2, "methane_mtce")?)?;
        let rec =
            NonCommercialRecord::new(year, fuelwood, methane).map_err(|e| with_line(e, line))?;
        series.insert(year, rec)?;
    }
    Ok(series)
}

pub fn read_noncommercial_csv(path: &Path) -> Result<YearSeries<NonCommercialRecord>> {
    parse_noncommercial_csv(open(path)?)
}

/// Parses `unit,factor_to_mtce` rows on top of the default table.
pub fn parse_conversion_csv<R: Read>(input: R) -> Result<ConversionTable> {
    let mut reader = csv_reader(input);
    check_header(&mut reader, &CONVERSION_HEADER)?;
    let mut table = ConversionTable::default();
    for record in reader.records() {
        let record = record?;
        let unit = field(&record, 0, "unit")?;
        let factor = parse_decimal(&record, 1, "factor_to_mtce")?;
        table.insert(unit, factor)?;
    }
    Ok(table)
}

pub fn read_conversion_csv(path: &Path) -> Result<ConversionTable> {
    parse_conversion_csv(open(path)?)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Canonical balance CSV: ascending years, cells then transformation rows
/// then total-final rows, all in Mtce with two decimals.
pub fn write_balance_csv(sheets: &[BalanceSheet]) -> String {
    let mut out = String::new();
    out.push_str(&BALANCE_HEADER.join(","));
    out.push('\n');
    let mut ordered: Vec<&BalanceSheet> = sheets.iter().collect();
    ordered.sort_by_key(|s| s.year());
    for sheet in ordered {
        let y = sheet.year();
        for (sector, fuel, v) in sheet.cells() {
            let _ = writeln!(out, "{y},{sector},{fuel},{v},Mtce");
        }
        for e in sheet.transformation_entries() {
            let _ = writeln!(
                out,
                "{y},{XFORM_PREFIX}{},{},{},Mtce",
                e.item, e.fuel, e.value
            );
        }
        for (fuel, v) in sheet.total_final_entries() {
            let _ = writeln!(out, "{y},{TOTAL_FINAL},{fuel},{v},Mtce");
        }
    }
    out
}
