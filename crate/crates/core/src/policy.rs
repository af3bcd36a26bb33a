//! Accounting rules: deduction coefficients and inclusion switches.
//!
//! Policy files are `key = value` lines (`#` starts a comment). Keys not
//! given keep the `eq3-default` value; unknown keys are rejected. A file
//! may name a preset with `preset = <name>` on its first setting line to
//! start from that preset instead.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::quantity::Fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Full removal of residential and public road fuels.
    Eq3Default,
    /// Residential diesel deducted at 95%.
    Eq2Legacy,
    /// Services sector deducts 95% of gasoline and 35% of diesel; residential
    /// diesel at 95%.
    Wang2007,
    /// `eq3-default` plus central heating re-added on top of final heat.
    NaiveHeatingAdded,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Eq3Default,
        Preset::Eq2Legacy,
        Preset::Wang2007,
        Preset::NaiveHeatingAdded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Eq3Default => "eq3-default",
            Preset::Eq2Legacy => "eq2-legacy",
            Preset::Wang2007 => "wang2007",
            Preset::NaiveHeatingAdded => "naive-heating-added",
        }
    }

    pub fn from_name(name: &str) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| p.name() == name.trim())
    }

    pub fn policy(self) -> AccountingPolicy {
        let base = AccountingPolicy::default();
        let pct = |v: u32| Fraction::from_ppm(v * 10_000).expect("preset fraction in range");
        match self {
            Preset::Eq3Default => base,
            Preset::Eq2Legacy => AccountingPolicy {
                name: self.name().into(),
                residential_diesel_deduction: pct(95),
                ..base
            },
            Preset::Wang2007 => AccountingPolicy {
                name: self.name().into(),
                residential_diesel_deduction: pct(95),
                public_gasoline_deduction: pct(95),
                public_diesel_deduction: pct(35),
                ..base
            },
            Preset::NaiveHeatingAdded => AccountingPolicy {
                name: self.name().into(),
                add_central_heating: true,
                ..base
            },
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rule set selecting between the residential and public deduction variants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccountingPolicy {
    /// Display name: the preset name or the policy file stem.
    pub name: String,
    pub residential_gasoline_deduction: Fraction,
    pub residential_diesel_deduction: Fraction,
    pub public_gasoline_deduction: Fraction,
    pub public_diesel_deduction: Fraction,
    pub include_transport_electricity: bool,
    pub include_non_commercial: bool,
    /// Re-adds transformation heating supply on top of final consumption.
    /// Only meaningful for demonstrating the double count.
    pub add_central_heating: bool,
}

impl Default for AccountingPolicy {
    fn default() -> Self {
        AccountingPolicy {
            name: Preset::Eq3Default.name().into(),
            residential_gasoline_deduction: Fraction::ONE,
            residential_diesel_deduction: Fraction::ONE,
            public_gasoline_deduction: Fraction::ONE,
            public_diesel_deduction: Fraction::ONE,
            include_transport_electricity: false,
            include_non_commercial: true,
            add_central_heating: false,
        }
    }
}

const KEYS: [&str; 7] = [
    "residential_gasoline_deduction",
    "residential_diesel_deduction",
    "public_gasoline_deduction",
    "public_diesel_deduction",
    "include_transport_electricity",
    "include_non_commercial",
    "add_central_heating",
];

fn parse_bool(value: &str, key: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::InvalidPolicy(format!(
            "{key}: '{value}' is not a boolean"
        ))),
    }
}

impl AccountingPolicy {
    /// Parses the key-value policy format.
    pub fn parse(text: &str, name: &str) -> Result<Self> {
        let mut policy = AccountingPolicy {
            name: name.into(),
            ..AccountingPolicy::default()
        };
        let mut seen_setting = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| {
                    Error::InvalidPolicy(format!("line {line_no}: expected 'key = value'"))
                })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "preset" => {
                    if seen_setting {
                        return Err(Error::InvalidPolicy(format!(
                            "line {line_no}: 'preset' must precede other settings"
                        )));
                    }
                    let preset = Preset::from_name(value).ok_or_else(|| {
                        Error::InvalidPolicy(format!("line {line_no}: unknown preset '{value}'"))
                    })?;
                    policy = AccountingPolicy {
                        name: name.into(),
                        ..preset.policy()
                    };
                }
                "residential_gasoline_deduction" => {
                    policy.residential_gasoline_deduction = value.parse()?
                }
                "residential_diesel_deduction" => {
                    policy.residential_diesel_deduction = value.parse()?
                }
                "public_gasoline_deduction" => policy.public_gasoline_deduction = value.parse()?,
                "public_diesel_deduction" => policy.public_diesel_deduction = value.parse()?,
                "include_transport_electricity" => {
                    policy.include_transport_electricity = parse_bool(value, key)?
                }
                "include_non_commercial" => policy.include_non_commercial = parse_bool(value, key)?,
                "add_central_heating" => policy.add_central_heating = parse_bool(value, key)?,
                _ => {
                    return Err(Error::UnknownPolicyKey {
                        line: line_no,
                        key: key.into(),
                    })
                }
            }
            seen_setting = true;
        }
        Ok(policy)
    }

    /// Resolves a preset name, or reads a policy file at that path.
    pub fn resolve(spec: &str) -> Result<Self> {
        if let Some(preset) = Preset::from_name(spec) {
            return Ok(preset.policy());
        }
        let path = Path::new(spec);
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| spec.to_string());
        AccountingPolicy::parse(&text, &name)
    }

    /// Policy file text that parses back to the same settings.
    pub fn to_file_text(&self) -> String {
        let values = [
            self.residential_gasoline_deduction.to_string(),
            self.residential_diesel_deduction.to_string(),
            self.public_gasoline_deduction.to_string(),
            self.public_diesel_deduction.to_string(),
            self.include_transport_electricity.to_string(),
            self.include_non_commercial.to_string(),
            self.add_central_heating.to_string(),
        ];
        KEYS.iter()
            .zip(values)
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}
