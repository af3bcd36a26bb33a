//! Building energy ledger: residential, public and non-commercial terms and
//! their shares.
//!
//! Total building energy is `NBE = RE + PE + NCE` where
//!
//! * `RE = RC - g * GRC - d * DRC` over the residential sectors' commercial
//!   fuels, with gasoline and diesel coefficients `g`, `d` from the policy;
//! * `PE` is WRHR plus Others with the same style of road-fuel deduction,
//!   optionally plus transport/storage/post electricity;
//! * `NCE` is rural fuelwood/straw plus methane.
//!
//! Each term is computed exactly in decimal and rounded once to hundredths.

use std::fmt;

use rust_decimal::Decimal;

use crate::error::{Error, Result};
use crate::model::{
    BalanceSheet, FuelKind, NonCommercialRecord, SectorKind, TransformationItem, YearSeries,
};
use crate::policy::AccountingPolicy;
use crate::quantity::{Fraction, Mtce};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdjustmentKind {
    ResidentialGasoline,
    ResidentialDiesel,
    PublicGasoline,
    PublicDiesel,
    TransportElectricityAdded,
    CentralHeatingAdded,
}

impl AdjustmentKind {
    pub const ALL: [AdjustmentKind; 6] = [
        AdjustmentKind::ResidentialGasoline,
        AdjustmentKind::ResidentialDiesel,
        AdjustmentKind::PublicGasoline,
        AdjustmentKind::PublicDiesel,
        AdjustmentKind::TransportElectricityAdded,
        AdjustmentKind::CentralHeatingAdded,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AdjustmentKind::ResidentialGasoline => "residential-gasoline",
            AdjustmentKind::ResidentialDiesel => "residential-diesel",
            AdjustmentKind::PublicGasoline => "public-gasoline",
            AdjustmentKind::PublicDiesel => "public-diesel",
            AdjustmentKind::TransportElectricityAdded => "transport-electricity-added",
            AdjustmentKind::CentralHeatingAdded => "central-heating-added",
        }
    }

    /// Additions raise the ledger, deductions lower it.
    pub fn is_addition(self) -> bool {
        matches!(
            self,
            AdjustmentKind::TransportElectricityAdded | AdjustmentKind::CentralHeatingAdded
        )
    }
}

impl fmt::Display for AdjustmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One itemized deduction or addition, rounded to hundredths for display.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Adjustment {
    pub kind: AdjustmentKind,
    pub amount: Mtce,
}

/// `total - Σ fraction·amount`, computed exactly then rounded.
fn deduct(total: Mtce, deductions: &[(Fraction, Mtce)], context: &str) -> Result<Mtce> {
    let mut removed = Decimal::ZERO;
    for &(fraction, amount) in deductions {
        removed = removed
            .checked_add(fraction.of(amount))
            .ok_or(Error::ArithmeticOverflow("deduction"))?;
    }
    let remaining = total.to_decimal() - removed;
    if remaining < Decimal::ZERO {
        return Err(Error::DeductionExceedsTotal {
            total,
            deduction: Mtce::from_decimal(removed)?,
            context: context.into(),
        });
    }
    Mtce::from_decimal(remaining)
}

/// Inputs and result of the residential term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidentialBreakdown {
    /// Residential consumption over commercial fuels.
    pub consumption: Mtce,
    pub gasoline: Mtce,
    pub diesel: Mtce,
    pub gasoline_deducted: Mtce,
    pub diesel_deducted: Mtce,
    pub energy: Mtce,
}

pub fn residential_breakdown(
    sheet: &BalanceSheet,
    policy: &AccountingPolicy,
) -> Result<ResidentialBreakdown> {
    if !SectorKind::RESIDENTIAL.iter().any(|&s| sheet.has_sector(s)) {
        return Err(Error::MissingSector {
            year: sheet.year(),
            sector: "residential".into(),
        });
    }
    let sum_over = |f: &dyn Fn(SectorKind) -> Result<Mtce>| -> Result<Mtce> {
        SectorKind::RESIDENTIAL
            .iter()
            .try_fold(Mtce::ZERO, |acc, &s| acc.checked_add(f(s)?))
    };
    let consumption = sum_over(&|s| sheet.sector_commercial_total(s))?;
    let gasoline = sum_over(&|s| Ok(sheet.cell_or_zero(s, FuelKind::Gasoline)))?;
    let diesel = sum_over(&|s| Ok(sheet.cell_or_zero(s, FuelKind::Diesel)))?;
    let (g, d) = (
        policy.residential_gasoline_deduction,
        policy.residential_diesel_deduction,
    );
    let energy = deduct(
        consumption,
        &[(g, gasoline), (d, diesel)],
        &format!("{} residential", sheet.year()),
    )?;
    Ok(ResidentialBreakdown {
        consumption,
        gasoline,
        diesel,
        gasoline_deducted: Mtce::from_decimal(g.of(gasoline))?,
        diesel_deducted: Mtce::from_decimal(d.of(diesel))?,
        energy,
    })
}

/// Residential building energy `RC - g·GRC - d·DRC`.
pub fn residential_energy(sheet: &BalanceSheet, policy: &AccountingPolicy) -> Result<Mtce> {
    residential_breakdown(sheet, policy).map(|b| b.energy)
}

/// Inputs and result of the public-building term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicBreakdown {
    pub wrhr: Mtce,
    pub others: Mtce,
    /// Gasoline of WRHR and Others combined.
    pub gasoline: Mtce,
    /// Diesel of WRHR and Others combined.
    pub diesel: Mtce,
    pub gasoline_deducted: Mtce,
    pub diesel_deducted: Mtce,
    /// WRHR and Others after deductions, without transport electricity.
    pub services: Mtce,
    /// Transport/storage/post electricity, when the policy includes it.
    pub transport_electricity: Option<Mtce>,
    pub energy: Mtce,
}

pub fn public_breakdown(
    sheet: &BalanceSheet,
    policy: &AccountingPolicy,
) -> Result<PublicBreakdown> {
    for sector in SectorKind::PUBLIC {
        if !sheet.has_sector(sector) {
            return Err(Error::MissingSector {
                year: sheet.year(),
                sector: sector.label().into(),
            });
        }
    }
    let wrhr = sheet.sector_commercial_total(SectorKind::Wrhr)?;
    let others = sheet.sector_commercial_total(SectorKind::Others)?;
    let fuel_sum = |fuel| {
        sheet
            .cell_or_zero(SectorKind::Wrhr, fuel)
            .checked_add(sheet.cell_or_zero(SectorKind::Others, fuel))
    };
    let gasoline = fuel_sum(FuelKind::Gasoline)?;
    let diesel = fuel_sum(FuelKind::Diesel)?;
    let (g, d) = (
        policy.public_gasoline_deduction,
        policy.public_diesel_deduction,
    );
    let services = deduct(
        wrhr.checked_add(others)?,
        &[(g, gasoline), (d, diesel)],
        &format!("{} public", sheet.year()),
    )?;
    let transport_electricity = if policy.include_transport_electricity {
        let cell = sheet
            .cell(SectorKind::TransportStoragePost, FuelKind::Electricity)
            .ok_or(Error::MissingCell {
                year: sheet.year(),
                sector: SectorKind::TransportStoragePost,
                fuel: FuelKind::Electricity,
            })?;
        Some(cell)
    } else {
        None
    };
    let energy = services.checked_add(transport_electricity.unwrap_or(Mtce::ZERO))?;
    Ok(PublicBreakdown {
        wrhr,
        others,
        gasoline,
        diesel,
        gasoline_deducted: Mtce::from_decimal(g.of(gasoline))?,
        diesel_deducted: Mtce::from_decimal(d.of(diesel))?,
        services,
        transport_electricity,
        energy,
    })
}

/// Public building energy from WRHR, Others and optionally transport electricity.
pub fn public_energy(sheet: &BalanceSheet, policy: &AccountingPolicy) -> Result<Mtce> {
    public_breakdown(sheet, policy).map(|b| b.energy)
}

/// Rural non-commercial energy: fuelwood/straw plus methane.
pub fn noncommercial_energy(record: &NonCommercialRecord) -> Result<Mtce> {
    record.total()
}

/// Per-year building energy with its itemized adjustments and the policy
/// that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingEnergyLedger {
    year: i32,
    residential: Mtce,
    public: Mtce,
    non_commercial: Mtce,
    central_heating: Mtce,
    commercial_total: Mtce,
    total: Mtce,
    adjustments: Vec<Adjustment>,
    policy: AccountingPolicy,
    warnings: Vec<String>,
}

impl BuildingEnergyLedger {
    /// Assembles a ledger from its terms. Central heating is only non-zero
    /// under a policy that re-adds it.
    pub fn from_parts(
        year: i32,
        residential: Mtce,
        public: Mtce,
        non_commercial: Mtce,
        central_heating: Mtce,
        adjustments: Vec<Adjustment>,
        policy: AccountingPolicy,
    ) -> Result<Self> {
        for (label, v) in [
            ("residential", residential),
            ("public", public),
            ("non-commercial", non_commercial),
            ("central heating", central_heating),
        ] {
            if v.is_negative() {
                return Err(Error::NegativeQuantity {
                    value: v.to_string(),
                    context: format!("{year} {label} energy"),
                });
            }
        }
        let commercial_total = Mtce::try_sum([residential, public, central_heating])?;
        let total = commercial_total.checked_add(non_commercial)?;
        let mut warnings = Vec::new();
        if policy.add_central_heating {
            warnings.push(format!(
                "central heating supply of {central_heating} Mtce added on top of final heat \
                 consumption, which already contains it; building energy is double counted"
            ));
        }
        Ok(BuildingEnergyLedger {
            year,
            residential,
            public,
            non_commercial,
            central_heating,
            commercial_total,
            total,
            adjustments,
            policy,
            warnings,
        })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    /// RE
    pub fn residential(&self) -> Mtce {
        self.residential
    }

    /// PE
    pub fn public(&self) -> Mtce {
        self.public
    }

    /// NCE; zero when the policy excludes non-commercial energy.
    pub fn non_commercial(&self) -> Mtce {
        self.non_commercial
    }

    /// Heating supply re-added by a double-counting policy; normally zero.
    pub fn central_heating(&self) -> Mtce {
        self.central_heating
    }

    /// Commercial building energy, RE + PE (+ re-added heating).
    pub fn commercial_total(&self) -> Mtce {
        self.commercial_total
    }

    /// NBE
    pub fn total(&self) -> Mtce {
        self.total
    }

    pub fn adjustments(&self) -> &[Adjustment] {
        &self.adjustments
    }

    pub fn adjustment(&self, kind: AdjustmentKind) -> Mtce {
        self.adjustments
            .iter()
            .find(|a| a.kind == kind)
            .map(|a| a.amount)
            .unwrap_or(Mtce::ZERO)
    }

    pub fn policy(&self) -> &AccountingPolicy {
        &self.policy
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

fn central_heating_supply(sheet: &BalanceSheet) -> Result<Mtce> {
    let supply = sheet
        .transformation(TransformationItem::HeatingSupply, FuelKind::Heat)
        .ok_or_else(|| Error::MissingHeatData {
            year: sheet.year(),
            message: "re-adding central heating needs a heating-supply heat row".into(),
        })?;
    if supply.is_negative() {
        return Err(Error::NegativeQuantity {
            value: supply.to_string(),
            context: format!("{} heating-supply output", sheet.year()),
        });
    }
    Ok(supply)
}

/// Computes the full ledger for one year.
///
/// `record` is required when the policy includes non-commercial energy and
/// must be for the sheet's year.
pub fn total_building_energy(
    sheet: &BalanceSheet,
    record: Option<&NonCommercialRecord>,
    policy: &AccountingPolicy,
) -> Result<BuildingEnergyLedger> {
    let res = residential_breakdown(sheet, policy)?;
    let publ = public_breakdown(sheet, policy)?;
    let non_commercial = if policy.include_non_commercial {
        match record {
            Some(r) if r.year() == sheet.year() => noncommercial_energy(r)?,
            _ => return Err(Error::YearMismatch(sheet.year())),
        }
    } else {
        Mtce::ZERO
    };
    let central_heating = if policy.add_central_heating {
        central_heating_supply(sheet)?
    } else {
        Mtce::ZERO
    };

    let mut adjustments = vec![
        Adjustment {
            kind: AdjustmentKind::ResidentialGasoline,
            amount: res.gasoline_deducted,
        },
        Adjustment {
            kind: AdjustmentKind::ResidentialDiesel,
            amount: res.diesel_deducted,
        },
        Adjustment {
            kind: AdjustmentKind::PublicGasoline,
            amount: publ.gasoline_deducted,
        },
        Adjustment {
            kind: AdjustmentKind::PublicDiesel,
            amount: publ.diesel_deducted,
        },
    ];
    if let Some(e) = publ.transport_electricity {
        adjustments.push(Adjustment {
            kind: AdjustmentKind::TransportElectricityAdded,
            amount: e,
        });
    }
    if policy.add_central_heating {
        adjustments.push(Adjustment {
            kind: AdjustmentKind::CentralHeatingAdded,
            amount: central_heating,
        });
    }

    BuildingEnergyLedger::from_parts(
        sheet.year(),
        res.energy,
        publ.energy,
        non_commercial,
        central_heating,
        adjustments,
        policy.clone(),
    )
}

/// Ledgers for every sheet, ascending by year. Records for years without a
/// sheet are ignored; a sheet year without a record is an error when the
/// policy needs one.
pub fn ledger_series(
    sheets: &[BalanceSheet],
    records: &YearSeries<NonCommercialRecord>,
    policy: &AccountingPolicy,
) -> Result<YearSeries<BuildingEnergyLedger>> {
    let mut series = YearSeries::new();
    for sheet in sheets {
        let record = records.get(sheet.year());
        if policy.include_non_commercial && record.is_none() {
            return Err(Error::YearMismatch(sheet.year()));
        }
        series.insert(sheet.year(), total_building_energy(sheet, record, policy)?)?;
    }
    Ok(series)
}

/// A ratio of two quantities, kept exact until displayed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Share {
    pub numerator: Mtce,
    pub denominator: Mtce,
}

impl Share {
    pub fn value(self) -> f64 {
        self.numerator.hundredths() as f64 / self.denominator.hundredths() as f64
    }

    pub fn percent(self) -> f64 {
        self.value() * 100.0
    }
}

/// Building energy as a share of final energy consumption.
///
/// Without non-commercial energy in the denominator the numerator is the
/// commercial total; with it, the numerator is NBE and the denominator is
/// final energy plus the ledger's non-commercial energy.
pub fn share_of_final(
    ledger: &BuildingEnergyLedger,
    final_energy: Mtce,
    include_non_commercial_in_denominator: bool,
) -> Result<Share> {
    if final_energy <= Mtce::ZERO {
        return Err(Error::InvalidDenominator(final_energy));
    }
    Ok(if include_non_commercial_in_denominator {
        Share {
            numerator: ledger.total(),
            denominator: final_energy.checked_add(ledger.non_commercial())?,
        }
    } else {
        Share {
            numerator: ledger.commercial_total(),
            denominator: final_energy,
        }
    })
}

/// Fractions of NBE by component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompositionShares {
    pub residential: f64,
    pub public: f64,
    pub non_commercial: f64,
    /// Non-zero only for double-counting policies.
    pub central_heating: f64,
}

impl CompositionShares {
    pub fn sum(&self) -> f64 {
        self.residential + self.public + self.non_commercial + self.central_heating
    }
}

pub fn composition_shares(ledger: &BuildingEnergyLedger) -> Result<CompositionShares> {
    let total = ledger.total();
    if total.is_zero() {
        return Err(Error::EmptyLedger(ledger.year()));
    }
    let of = |v: Mtce| v.hundredths() as f64 / total.hundredths() as f64;
    Ok(CompositionShares {
        residential: of(ledger.residential()),
        public: of(ledger.public()),
        non_commercial: of(ledger.non_commercial()),
        central_heating: of(ledger.central_heating()),
    })
}
