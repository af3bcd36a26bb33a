//! Closed fuel, sector and transformation-item taxonomies of the balance sheet.

use std::fmt;
use std::str::FromStr;

/// Normalizes a free-text label for alias lookup: lowercase, with runs of
/// whitespace, `_` and `-` collapsed to a single `-`.
fn normalize_label(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    let mut pending_sep = false;
    for ch in label.trim().chars() {
        if ch.is_whitespace() || ch == '_' || ch == '-' {
            pending_sep = !out.is_empty();
        } else {
            if pending_sep {
                out.push('-');
                pending_sep = false;
            }
            out.extend(ch.to_lowercase());
        }
    }
    out
}

/// Error returned when a label matches no taxonomy member or alias.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownLabel(pub String);

impl fmt::Display for UnknownLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown label '{}'", self.0)
    }
}

impl std::error::Error for UnknownLabel {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FuelKind {
    Coal,
    Gasoline,
    Diesel,
    OtherPetroleum,
    NaturalGas,
    Heat,
    Electricity,
    FuelwoodStraw,
    Methane,
    Other,
}

impl FuelKind {
    pub const ALL: [FuelKind; 10] = [
        FuelKind::Coal,
        FuelKind::Gasoline,
        FuelKind::Diesel,
        FuelKind::OtherPetroleum,
        FuelKind::NaturalGas,
        FuelKind::Heat,
        FuelKind::Electricity,
        FuelKind::FuelwoodStraw,
        FuelKind::Methane,
        FuelKind::Other,
    ];

    /// Self-produced, self-consumed rural fuels that never enter the
    /// commodity market and are absent from the official balance sheet.
    pub fn is_non_commercial(self) -> bool {
        matches!(self, FuelKind::FuelwoodStraw | FuelKind::Methane)
    }

    pub fn is_commercial(self) -> bool {
        !self.is_non_commercial()
    }

    pub fn label(self) -> &'static str {
        match self {
            FuelKind::Coal => "coal",
            FuelKind::Gasoline => "gasoline",
            FuelKind::Diesel => "diesel",
            FuelKind::OtherPetroleum => "other-petroleum",
            FuelKind::NaturalGas => "natural-gas",
            FuelKind::Heat => "heat",
            FuelKind::Electricity => "electricity",
            FuelKind::FuelwoodStraw => "fuelwood-straw",
            FuelKind::Methane => "methane",
            FuelKind::Other => "other",
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            FuelKind::Coal => &["coal-family", "raw-coal", "coke", "cleaned-coal"],
            FuelKind::Gasoline => &["petrol", "motor-gasoline"],
            FuelKind::Diesel => &["diesel-oil", "gas-oil"],
            FuelKind::OtherPetroleum => &[
                "kerosene",
                "fuel-oil",
                "lpg",
                "liquefied-petroleum-gas",
                "crude-oil",
                "petroleum-products",
            ],
            FuelKind::NaturalGas => &["gas", "lng", "liquefied-natural-gas"],
            FuelKind::Heat => &["heat-supply", "steam"],
            FuelKind::Electricity => &["power", "electric-power"],
            FuelKind::FuelwoodStraw => &["fuelwood", "fuel-wood-and-straw", "straw", "firewood"],
            FuelKind::Methane => &["biogas"],
            FuelKind::Other => &["other-energy", "others"],
        }
    }
}

impl fmt::Display for FuelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FuelKind {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = normalize_label(s);
        FuelKind::ALL
            .into_iter()
            .find(|f| f.label() == key || f.aliases().contains(&key.as_str()))
            .ok_or_else(|| UnknownLabel(s.to_string()))
    }
}

/// Final-consumption rows of the balance sheet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectorKind {
    Agriculture,
    Industry,
    Construction,
    TransportStoragePost,
    /// Wholesale, retail trade, hotels and restaurants.
    Wrhr,
    Others,
    ResidentialUrban,
    ResidentialRural,
}

impl SectorKind {
    pub const ALL: [SectorKind; 8] = [
        SectorKind::Agriculture,
        SectorKind::Industry,
        SectorKind::Construction,
        SectorKind::TransportStoragePost,
        SectorKind::Wrhr,
        SectorKind::Others,
        SectorKind::ResidentialUrban,
        SectorKind::ResidentialRural,
    ];

    pub const RESIDENTIAL: [SectorKind; 2] =
        [SectorKind::ResidentialUrban, SectorKind::ResidentialRural];

    /// Sectors whose non-transport energy is attributed to public buildings.
    pub const PUBLIC: [SectorKind; 2] = [SectorKind::Wrhr, SectorKind::Others];

    pub fn is_residential(self) -> bool {
        matches!(
            self,
            SectorKind::ResidentialUrban | SectorKind::ResidentialRural
        )
    }

    /// Sectors that house civil (residential or public) buildings.
    pub fn is_building_relevant(self) -> bool {
        matches!(
            self,
            SectorKind::TransportStoragePost
                | SectorKind::Wrhr
                | SectorKind::Others
                | SectorKind::ResidentialUrban
                | SectorKind::ResidentialRural
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            SectorKind::Agriculture => "agriculture",
            SectorKind::Industry => "industry",
            SectorKind::Construction => "construction",
            SectorKind::TransportStoragePost => "transport-storage-post",
            SectorKind::Wrhr => "wrhr",
            SectorKind::Others => "others",
            SectorKind::ResidentialUrban => "residential-urban",
            SectorKind::ResidentialRural => "residential-rural",
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            SectorKind::Agriculture => &[
                "agriculture,-forestry,-animal-husbandry,-fishery-and-water-conservancy",
                "agriculture,-forestry,-animal-husbandry-and-fishery",
                "farming",
            ],
            SectorKind::Industry => &["industrial"],
            SectorKind::Construction => &["building-construction"],
            SectorKind::TransportStoragePost => &[
                "transport,-storage-and-post",
                "transport-storage-and-post",
                "transportation,-storage-and-post",
                "transport",
            ],
            SectorKind::Wrhr => &[
                "wholesale,-retail-trade-and-hotel,-restaurants",
                "wholesale,-retail-trade,-hotel,-restaurants",
                "wholesale-retail-hotel-restaurants",
                "wholesale-and-retail-trades,-hotels-and-catering-services",
            ],
            SectorKind::Others => &["other", "other-sectors", "other-industries"],
            SectorKind::ResidentialUrban => &[
                "urban",
                "urban-residential",
                "residential-consumption-urban",
            ],
            SectorKind::ResidentialRural => &[
                "rural",
                "rural-residential",
                "residential-consumption-rural",
            ],
        }
    }
}

impl fmt::Display for SectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SectorKind {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = normalize_label(s);
        SectorKind::ALL
            .into_iter()
            .find(|k| k.label() == key || k.aliases().contains(&key.as_str()))
            .ok_or_else(|| UnknownLabel(s.to_string()))
    }
}

/// Rows of the "input (-) or output (+) of transformation" block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransformationItem {
    ThermalPower,
    HeatingSupply,
    Recovery,
    Loss,
    TotalTransformation,
}

impl TransformationItem {
    pub const ALL: [TransformationItem; 5] = [
        TransformationItem::ThermalPower,
        TransformationItem::HeatingSupply,
        TransformationItem::Recovery,
        TransformationItem::Loss,
        TransformationItem::TotalTransformation,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TransformationItem::ThermalPower => "thermal-power",
            TransformationItem::HeatingSupply => "heating-supply",
            TransformationItem::Recovery => "recovery",
            TransformationItem::Loss => "loss",
            TransformationItem::TotalTransformation => "total-transformation",
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            TransformationItem::ThermalPower => &["thermal-power-generation"],
            TransformationItem::HeatingSupply => &["heat-supply", "central-heating"],
            TransformationItem::Recovery => &["recovery-of-energy", "energy-recovery"],
            TransformationItem::Loss => &["losses"],
            TransformationItem::TotalTransformation => {
                &["total", "input-or-output-of-transformation"]
            }
        }
    }
}

impl fmt::Display for TransformationItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TransformationItem {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = normalize_label(s);
        TransformationItem::ALL
            .into_iter()
            .find(|k| k.label() == key || k.aliases().contains(&key.as_str()))
            .ok_or_else(|| UnknownLabel(s.to_string()))
    }
}
