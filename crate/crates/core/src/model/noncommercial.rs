use crate::error::{Error, Result};
use crate::quantity::Mtce;

/// Rural non-commercial energy use for one year.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonCommercialRecord {
    year: i32,
    fuelwood_straw: Mtce,
    methane: Mtce,
}

impl NonCommercialRecord {
    pub fn new(year: i32, fuelwood_straw: Mtce, methane: Mtce) -> Result<Self> {
        for (label, value) in [("fuelwood/straw", fuelwood_straw), ("methane", methane)] {
            if value.is_negative() {
                return Err(Error::NegativeQuantity {
                    value: value.to_string(),
                    context: format!("{year} {label}"),
                });
            }
        }
        Ok(NonCommercialRecord {
            year,
            fuelwood_straw,
            methane,
        })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn fuelwood_straw(&self) -> Mtce {
        self.fuelwood_straw
    }

    pub fn methane(&self) -> Mtce {
        self.methane
    }

    pub fn total(&self) -> Result<Mtce> {
        self.fuelwood_straw.checked_add(self.methane)
    }
}
