use std::path::PathBuf;

use crate::model::{FuelKind, SectorKind};
use crate::quantity::Mtce;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong between reading a file and writing a report.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("decimal overflow while computing {0}")]
    ArithmeticOverflow(&'static str),

    #[error("deduction {deduction} Mtce exceeds the {total} Mtce it is deducted from ({context})")]
    DeductionExceedsTotal {
        total: Mtce,
        deduction: Mtce,
        context: String,
    },

    #[error("negative quantity {value} for {context}")]
    NegativeQuantity { value: String, context: String },

    #[error("fraction {0} is outside [0, 1]")]
    FractionOutOfRange(String),

    #[error("line {line}: unknown sector label '{label}'")]
    UnknownSector { line: u64, label: String },

    #[error("line {line}: unknown fuel label '{label}'")]
    UnknownFuel { line: u64, label: String },

    #[error("unknown unit '{unit}'{}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    UnknownUnit { unit: String, line: Option<u64> },

    #[error("line {line}: duplicate cell for year {year}, {key}")]
    DuplicateCell { line: u64, year: i32, key: String },

    #[error("duplicate year {0}")]
    DuplicateYear(i32),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: String,
        message: String,
    },

    #[error("invalid conversion table entry '{unit}': {message}")]
    InvalidConversion { unit: String, message: String },

    #[error(
        "year {year}: {fuel} sector cells sum to {cells} Mtce but total final consumption is {total} Mtce"
    )]
    Reconciliation {
        year: i32,
        fuel: FuelKind,
        cells: Mtce,
        total: Mtce,
    },

    #[error("year {year}: no cells for sector {sector}")]
    MissingSector { year: i32, sector: String },

    #[error("year {year}: missing cell {sector}/{fuel}")]
    MissingCell {
        year: i32,
        sector: SectorKind,
        fuel: FuelKind,
    },

    #[error("year {year}: {message}")]
    MissingHeatData { year: i32, message: String },

    #[error("year {0}: no non-commercial record for a year that requires one")]
    YearMismatch(i32),

    #[error("final energy {0} Mtce is not a valid share denominator")]
    InvalidDenominator(Mtce),

    #[error("ledger for year {0} has zero total building energy")]
    EmptyLedger(i32),

    #[error("nothing to report")]
    EmptyReport,

    #[error("unknown report kind '{0}'")]
    UnknownReportKind(String),

    #[error("invalid year range: {0}")]
    InvalidYearRange(String),

    #[error("unknown policy key '{key}' on line {line}")]
    UnknownPolicyKey { line: usize, key: String },

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short class name used on the command line.
    pub fn class_name(&self) -> &'static str {
        match self {
            Error::ArithmeticOverflow(_) => "ArithmeticOverflow",
            Error::DeductionExceedsTotal { .. } => "DeductionExceedsTotal",
            Error::NegativeQuantity { .. } => "NegativeQuantity",
            Error::FractionOutOfRange(_) => "FractionOutOfRange",
            Error::UnknownSector { .. } => "UnknownSector",
            Error::UnknownFuel { .. } => "UnknownFuel",
            Error::UnknownUnit { .. } => "UnknownUnit",
            Error::DuplicateCell { .. } => "DuplicateCell",
            Error::DuplicateYear(_) => "DuplicateYear",
            Error::Parse { .. } => "ParseError",
            Error::InvalidConversion { .. } => "InvalidConversion",
            Error::Reconciliation { .. } => "ReconciliationMismatch",
            Error::MissingSector { .. } => "MissingSector",
            Error::MissingCell { .. } => "MissingCell",
            Error::MissingHeatData { .. } => "MissingHeatData",
            Error::YearMismatch(_) => "YearMismatch",
            Error::InvalidDenominator(_) => "InvalidDenominator",
            Error::EmptyLedger(_) => "EmptyLedger",
            Error::EmptyReport => "EmptyReport",
            Error::UnknownReportKind(_) => "UnknownReportKind",
            Error::InvalidYearRange(_) => "InvalidYearRange",
            Error::UnknownPolicyKey { .. } => "UnknownPolicyKey",
            Error::InvalidPolicy(_) => "InvalidPolicy",
            Error::Io { .. } => "IoError",
            Error::Csv(_) => "CsvError",
        }
    }

    /// True for errors caused by data that is absent rather than malformed.
    pub fn is_missing_data(&self) -> bool {
        matches!(
            self,
            Error::MissingSector { .. }
                | Error::MissingCell { .. }
                | Error::MissingHeatData { .. }
                | Error::YearMismatch(_)
        )
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::ArithmeticOverflow(_))
    }
}
