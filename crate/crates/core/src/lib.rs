//! Top-down accounting of building operational energy from national energy
//! balance sheets.
//!
//! The pipeline is [`ingest`] → [`accounting`] → [`audit`] → [`report`]:
//! balance-sheet CSVs are parsed into fixed-point [`model::BalanceSheet`]s,
//! an [`policy::AccountingPolicy`] turns each year into a
//! [`accounting::BuildingEnergyLedger`], the heat column is checked for
//! balance and for central heating counted twice, and results are rendered
//! as CSV tables and plot data.

pub mod accounting;
pub mod audit;
pub mod compare;
pub mod error;
pub mod ingest;
pub mod model;
pub mod policy;
pub mod quantity;
pub mod report;

pub use accounting::{BuildingEnergyLedger, CompositionShares, Share};
pub use error::{Error, Result};
pub use model::{BalanceSheet, FuelKind, NonCommercialRecord, SectorKind, YearSeries};
pub use policy::{AccountingPolicy, Preset};
pub use quantity::{Fraction, Mtce};
pub use rust_decimal::Decimal;
