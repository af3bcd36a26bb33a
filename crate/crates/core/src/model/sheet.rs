use std::collections::BTreeMap;

use rust_decimal::Decimal;

use crate::error::{Error, Result};
use crate::model::{FuelKind, SectorKind, TransformationItem};
use crate::quantity::Mtce;

/// Default tolerance for reconciling sector cells against total final rows.
pub const DEFAULT_RECONCILIATION_TOLERANCE: Decimal = Decimal::from_parts(1, 0, 0, false, 2);

/// One signed row of the transformation block (inputs negative, outputs positive).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransformationEntry {
    pub item: TransformationItem,
    pub fuel: FuelKind,
    pub value: Mtce,
}

/// One year's sector × fuel final consumption matrix with its transformation
/// rows and per-fuel total final consumption.
///
/// Built through [`BalanceSheetBuilder`]; immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceSheet {
    year: i32,
    cells: BTreeMap<(SectorKind, FuelKind), Mtce>,
    transformation: BTreeMap<(TransformationItem, FuelKind), Mtce>,
    total_final: BTreeMap<FuelKind, Mtce>,
}

impl BalanceSheet {
    pub fn builder(year: i32) -> BalanceSheetBuilder {
        BalanceSheetBuilder::new(year)
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn cell(&self, sector: SectorKind, fuel: FuelKind) -> Option<Mtce> {
        self.cells.get(&(sector, fuel)).copied()
    }

    /// Cell value, zero when absent.
    pub fn cell_or_zero(&self, sector: SectorKind, fuel: FuelKind) -> Mtce {
        self.cell(sector, fuel).unwrap_or(Mtce::ZERO)
    }

    pub fn cells(&self) -> impl Iterator<Item = (SectorKind, FuelKind, Mtce)> + '_ {
        self.cells.iter().map(|(&(s, f), &v)| (s, f, v))
    }

    pub fn has_sector(&self, sector: SectorKind) -> bool {
        self.cells.keys().any(|&(s, _)| s == sector)
    }

    /// Sum of a sector's commercial-fuel cells.
    pub fn sector_commercial_total(&self, sector: SectorKind) -> Result<Mtce> {
        Mtce::try_sum(
            self.cells
                .range(
                    (sector, FuelKind::ALL[0])..=(sector, FuelKind::ALL[FuelKind::ALL.len() - 1]),
                )
                .filter(|(&(_, f), _)| f.is_commercial())
                .map(|(_, &v)| v),
        )
    }

    /// Sum of one fuel across all sectors.
    pub fn fuel_cells_total(&self, fuel: FuelKind) -> Result<Mtce> {
        Mtce::try_sum(
            self.cells
                .iter()
                .filter(|(&(_, f), _)| f == fuel)
                .map(|(_, &v)| v),
        )
    }

    pub fn transformation(&self, item: TransformationItem, fuel: FuelKind) -> Option<Mtce> {
        self.transformation.get(&(item, fuel)).copied()
    }

    pub fn transformation_entries(&self) -> impl Iterator<Item = TransformationEntry> + '_ {
        self.transformation
            .iter()
            .map(|(&(item, fuel), &value)| TransformationEntry { item, fuel, value })
    }

    pub fn total_final(&self, fuel: FuelKind) -> Option<Mtce> {
        self.total_final.get(&fuel).copied()
    }

    pub fn total_final_entries(&self) -> impl Iterator<Item = (FuelKind, Mtce)> + '_ {
        self.total_final.iter().map(|(&f, &v)| (f, v))
    }

    /// Total final consumption of commercial energy: the sum of total-final
    /// rows when the sheet carries them, otherwise the sum of sector cells.
    pub fn final_energy(&self) -> Result<Mtce> {
        if self.total_final.is_empty() {
            Mtce::try_sum(
                self.cells
                    .iter()
                    .filter(|(&(_, f), _)| f.is_commercial())
                    .map(|(_, &v)| v),
            )
        } else {
            Mtce::try_sum(
                self.total_final
                    .iter()
                    .filter(|(f, _)| f.is_commercial())
                    .map(|(_, &v)| v),
            )
        }
    }

    /// Checks every total-final row against the sum of its sector cells.
    pub fn reconcile(&self, tolerance: Decimal) -> Result<()> {
        for (&fuel, &total) in &self.total_final {
            let cells = self.fuel_cells_total(fuel)?;
            if cells.abs_diff(total).to_decimal() > tolerance {
                return Err(Error::Reconciliation {
                    year: self.year,
                    fuel,
                    cells,
                    total,
                });
            }
        }
        Ok(())
    }
}

/// Accumulates cells for a [`BalanceSheet`], rejecting duplicates and
/// negative consumption.
#[derive(Debug, Clone)]
pub struct BalanceSheetBuilder {
    sheet: BalanceSheet,
}

impl BalanceSheetBuilder {
    pub fn new(year: i32) -> Self {
        BalanceSheetBuilder {
            sheet: BalanceSheet {
                year,
                cells: BTreeMap::new(),
                transformation: BTreeMap::new(),
                total_final: BTreeMap::new(),
            },
        }
    }

    pub fn year(&self) -> i32 {
        self.sheet.year
    }

    pub fn cell(&mut self, sector: SectorKind, fuel: FuelKind, value: Mtce) -> Result<&mut Self> {
        if value.is_negative() {
            return Err(Error::NegativeQuantity {
                value: value.to_string(),
                context: format!("{} {sector}/{fuel}", self.sheet.year),
            });
        }
        if self.sheet.cells.insert((sector, fuel), value).is_some() {
            return Err(self.duplicate(format!("{sector}/{fuel}")));
        }
        Ok(self)
    }

    pub fn transformation(
        &mut self,
        item: TransformationItem,
        fuel: FuelKind,
        value: Mtce,
    ) -> Result<&mut Self> {
        if self
            .sheet
            .transformation
            .insert((item, fuel), value)
            .is_some()
        {
            return Err(self.duplicate(format!("xform:{item}/{fuel}")));
        }
        Ok(self)
    }

    pub fn total_final(&mut self, fuel: FuelKind, value: Mtce) -> Result<&mut Self> {
        if value.is_negative() {
            return Err(Error::NegativeQuantity {
                value: value.to_string(),
                context: format!("{} total-final/{fuel}", self.sheet.year),
            });
        }
        if self.sheet.total_final.insert(fuel, value).is_some() {
            return Err(self.duplicate(format!("total-final/{fuel}")));
        }
        Ok(self)
    }

    fn duplicate(&self, key: String) -> Error {
        Error::DuplicateCell {
            line: 0,
            year: self.sheet.year,
            key,
        }
    }

    pub fn build(&self) -> BalanceSheet {
        self.sheet.clone()
    }

    /// Builds and checks the reconciliation invariant.
    pub fn build_reconciled(&self, tolerance: Decimal) -> Result<BalanceSheet> {
        self.sheet.reconcile(tolerance)?;
        Ok(self.sheet.clone())
    }
}
