use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::series::PowerSeries;
use crate::error::{Error, Result};

pub const TABLE_VERSION: u32 = 1;

/// Portable coefficient table; big integers travel as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub version: u32,
    pub name: String,
    pub lead: i64,
    pub prec: i64,
    pub coeffs: Vec<String>,
}

impl CoeffTable {
    pub fn from_series(name: &str, s: &PowerSeries) -> Self {
        CoeffTable {
            version: TABLE_VERSION,
            name: name.to_string(),
            lead: s.lead(),
            prec: s.prec(),
            coeffs: s.coeffs().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_series(&self) -> Result<PowerSeries> {
        if self.version != TABLE_VERSION {
            return Err(Error::Table(format!("version {} != {}", self.version, TABLE_VERSION)));
        }
        if self.coeffs.len() as i64 != (self.prec - self.lead).max(0) {
            return Err(Error::Table("coefficient count does not match lead/prec".into()));
        }
        let c = self
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| Error::Table(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries::new(self.lead, c, self.prec))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Table(e.to_string()))
    }
}
