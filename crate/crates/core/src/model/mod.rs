//! In-memory model shared by ingestion, accounting, audit and reporting.
//! Every value here is immutable once built.

mod noncommercial;
mod series;
mod sheet;
mod taxonomy;

pub use noncommercial::NonCommercialRecord;
pub use series::YearSeries;
pub use sheet::{
    BalanceSheet, BalanceSheetBuilder, TransformationEntry, DEFAULT_RECONCILIATION_TOLERANCE,
};
pub use taxonomy::{FuelKind, SectorKind, TransformationItem, UnknownLabel};
