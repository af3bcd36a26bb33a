//! Test-only helpers: a brute-force ledger recomputation that works on raw
//! `(sector, fuel, hundredths)` triples with integer arithmetic, and random
//! small sheets to feed it.

#![allow(dead_code)]

use std::path::PathBuf;

use bec_core::{BalanceSheet, FuelKind, Mtce, SectorKind};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

/// Deduction coefficients in parts per million.
#[derive(Clone, Copy, Debug)]
pub struct OraclePolicy {
    pub res_gasoline_ppm: i128,
    pub res_diesel_ppm: i128,
    pub pub_gasoline_ppm: i128,
    pub pub_diesel_ppm: i128,
    pub transport_electricity: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLedger {
    pub re: i64,
    pub pe: i64,
    pub nce: i64,
    pub nbe: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(clippy::enum_variant_names)]
pub enum OracleError {
    MissingResidential,
    MissingPublic,
    MissingTransportElectricity,
}

/// `numerator / 1e6`, rounded half away from zero.
fn round_ppm(numerator: i128) -> i64 {
    let q = numerator / 1_000_000;
    let r = numerator % 1_000_000;
    let q = if r.abs() * 2 >= 1_000_000 {
        q + numerator.signum()
    } else {
        q
    };
    q as i64
}

fn is_non_commercial(f: FuelKind) -> bool {
    f == FuelKind::FuelwoodStraw || f == FuelKind::Methane
}

/// Recomputes RE, PE, NCE and NBE by walking every cell once.
pub fn brute_force(
    cells: &[(SectorKind, FuelKind, i64)],
    nce: i64,
    p: &OraclePolicy,
) -> Result<OracleLedger, OracleError> {
    let (mut rc, mut grc, mut drc) = (0i128, 0i128, 0i128);
    let (mut pub_total, mut pub_gas, mut pub_diesel) = (0i128, 0i128, 0i128);
    let (mut has_res, mut has_wrhr, mut has_others) = (false, false, false);
    let mut transport_el: Option<i128> = None;
    for &(s, f, v) in cells {
        let v = i128::from(v);
        match s {
            SectorKind::ResidentialUrban | SectorKind::ResidentialRural => {
                has_res = true;
                if !is_non_commercial(f) {
                    rc += v;
                }
                if f == FuelKind::Gasoline {
                    grc += v;
                }
                if f == FuelKind::Diesel {
                    drc += v;
                }
            }
            SectorKind::Wrhr | SectorKind::Others => {
                if s == SectorKind::Wrhr {
                    has_wrhr = true;
                } else {
                    has_others = true;
                }
                if !is_non_commercial(f) {
                    pub_total += v;
                }
                if f == FuelKind::Gasoline {
                    pub_gas += v;
                }
                if f == FuelKind::Diesel {
                    pub_diesel += v;
                }
            }
            SectorKind::TransportStoragePost if f == FuelKind::Electricity => {
                transport_el = Some(v);
            }
            _ => {}
        }
    }
    if !has_res {
        return Err(OracleError::MissingResidential);
    }
    if !(has_wrhr && has_others) {
        return Err(OracleError::MissingPublic);
    }
    let re = round_ppm(rc * 1_000_000 - p.res_gasoline_ppm * grc - p.res_diesel_ppm * drc);
    let mut pe = round_ppm(
        pub_total * 1_000_000 - p.pub_gasoline_ppm * pub_gas - p.pub_diesel_ppm * pub_diesel,
    );
    if p.transport_electricity {
        pe += transport_el.ok_or(OracleError::MissingTransportElectricity)? as i64;
    }
    Ok(OracleLedger {
        re,
        pe,
        nce,
        nbe: re + pe + nce,
    })
}

pub const SECTOR_POOL: [SectorKind; 5] = [
    SectorKind::ResidentialUrban,
    SectorKind::ResidentialRural,
    SectorKind::Wrhr,
    SectorKind::Others,
    SectorKind::TransportStoragePost,
];

pub const FUEL_POOL: [FuelKind; 8] = [
    FuelKind::Coal,
    FuelKind::Gasoline,
    FuelKind::Diesel,
    FuelKind::Electricity,
    FuelKind::Heat,
    FuelKind::NaturalGas,
    FuelKind::FuelwoodStraw,
    FuelKind::Methane,
];

/// Up to 5 sectors × 5 fuels on the 0.01 grid, never empty.
pub fn random_cells<R: Rng>(rng: &mut R) -> Vec<(SectorKind, FuelKind, i64)> {
    let n_sectors = rng.gen_range(1..=4);
    let n_fuels = rng.gen_range(1..=5);
    let mut sectors: Vec<SectorKind> = SECTOR_POOL
        .choose_multiple(rng, n_sectors)
        .copied()
        .collect();
    // Most sheets should carry both ledger halves so the arithmetic, not
    // the missing-sector path, gets exercised.
    if rng.gen_bool(0.75) {
        for s in [
            SectorKind::ResidentialRural,
            SectorKind::Wrhr,
            SectorKind::Others,
        ] {
            if !sectors.contains(&s) {
                sectors.push(s);
            }
        }
    }
    let fuels: Vec<FuelKind> = FUEL_POOL.choose_multiple(rng, n_fuels).copied().collect();
    let mut cells = Vec::new();
    for &s in &sectors {
        for &f in &fuels {
            if rng.gen_bool(0.85) {
                cells.push((s, f, rng.gen_range(0..100_000)));
            }
        }
    }
    // a sheet with no rows has no CSV form
    if cells.is_empty() {
        cells.push((sectors[0], fuels[0], rng.gen_range(0..100_000)));
    }
    cells
}

pub fn random_ppm<R: Rng>(rng: &mut R) -> i128 {
    match rng.gen_range(0..5) {
        0 => 0,
        1 => 1_000_000,
        2 => 950_000,
        3 => 350_000,
        _ => rng.gen_range(0..=1_000_000),
    }
}

pub fn random_policy<R: Rng>(rng: &mut R) -> OraclePolicy {
    OraclePolicy {
        res_gasoline_ppm: random_ppm(rng),
        res_diesel_ppm: random_ppm(rng),
        pub_gasoline_ppm: random_ppm(rng),
        pub_diesel_ppm: random_ppm(rng),
        transport_electricity: rng.gen_bool(0.3),
    }
}

pub fn to_policy(p: &OraclePolicy) -> bec_core::AccountingPolicy {
    let f = |ppm: i128| bec_core::Fraction::from_ppm(ppm as u32).unwrap();
    bec_core::AccountingPolicy {
        name: "random".into(),
        residential_gasoline_deduction: f(p.res_gasoline_ppm),
        residential_diesel_deduction: f(p.res_diesel_ppm),
        public_gasoline_deduction: f(p.pub_gasoline_ppm),
        public_diesel_deduction: f(p.pub_diesel_ppm),
        include_transport_electricity: p.transport_electricity,
        include_non_commercial: true,
        add_central_heating: false,
    }
}

pub fn to_sheet(year: i32, cells: &[(SectorKind, FuelKind, i64)]) -> BalanceSheet {
    let mut b = BalanceSheet::builder(year);
    for &(s, f, v) in cells {
        b.cell(s, f, Mtce::from_hundredths(v)).unwrap();
    }
    b.build()
}
