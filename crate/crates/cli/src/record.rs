use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use unitgate_core::criteria::{Holds, TheoremId};
use unitgate_core::exactmath::IntPoly;
use unitgate_core::numberfield::NumberField;

use crate::poly::format_polynomial;
use crate::CliError;

/// One input field. Coefficients are little-endian: `coeffs[i]` multiplies `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub label: String,
    pub coeffs: Vec<i64>,
    /// Verdicts attached by `scan`; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<BTreeMap<TheoremId, Holds>>,
}

impl FieldRecord {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self {
            label: format_polynomial(&coeffs),
            coeffs,
            verdicts: None,
        }
    }

    pub fn with_label(label: impl Into<String>, coeffs: Vec<i64>) -> Self {
        Self {
            label: label.into(),
            coeffs,
            verdicts: None,
        }
    }

    /// Reverses big-endian (LMFDB-style) input into the native order.
    pub fn from_big_endian(mut self) -> Self {
        self.coeffs.reverse();
        self
    }

    /// Validates the record and certifies irreducibility.
    pub fn load(&self) -> Result<Arc<NumberField>, CliError> {
        let reject = |why: String| CliError::Input(format!("record {:?} rejected: {why}", self.label));
        if self.coeffs.len() < 2 {
            return Err(reject("degree must be at least 1".into()));
        }
        if self.coeffs.last() != Some(&1) {
            return Err(reject("polynomial is not monic (coefficients are constant term first)".into()));
        }
        NumberField::new(IntPoly::from_i64(&self.coeffs)).map_err(|e| reject(e.to_string()))
    }
}
