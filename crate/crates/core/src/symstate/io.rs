//! JSON state files: `{"n": 3, "dicke": [[re, im], ...]}` or
//! `{"mps": [{"theta": .., "phi": ..}, ...]}`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{state_from_mps, BlochPoint, SymmetricState};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dicke: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mps: Option<Vec<BlochPoint>>,
}

pub fn state_from_json(text: &str) -> Result<SymmetricState> {
    let raw: StateJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidState(format!("bad state JSON: {e}")))?;
    match (&raw.dicke, &raw.mps) {
        (Some(d), None) => {
            if let Some(n) = raw.n {
                if d.len() != n + 1 {
                    return Err(Error::InvalidState(format!(
                        "n = {n} needs {} Dicke amplitudes, got {}",
                        n + 1,
                        d.len()
                    )));
                }
            }
            SymmetricState::new(d.iter().map(|c| Complex64::new(c[0], c[1])).collect())
        }
        (None, Some(m)) => {
            if let Some(n) = raw.n {
                if m.len() != n {
                    return Err(Error::InvalidState(format!(
                        "n = {n} needs {n} Majorana points, got {}",
                        m.len()
                    )));
                }
            }
            for p in m {
                if !(0.0..=std::f64::consts::PI).contains(&p.theta) || !p.phi.is_finite() {
                    return Err(Error::InvalidState(format!("invalid Bloch point {p:?}")));
                }
            }
            let pts: Vec<BlochPoint> = m.iter().map(|p| BlochPoint::new(p.theta, p.phi)).collect();
            state_from_mps(&pts)
        }
        _ => Err(Error::InvalidState(
            "exactly one of \"dicke\" and \"mps\" must be present".into(),
        )),
    }
}

pub fn read_state_json(path: &Path) -> Result<SymmetricState> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidState(format!("cannot read {}: {e}", path.display())))?;
    state_from_json(&text)
}

/// Dicke-form JSON of a state.
pub fn state_to_json(state: &SymmetricState) -> StateJson {
    StateJson {
        n: Some(state.n()),
        dicke: Some(state.coeffs().iter().map(|c| [c.re, c.im]).collect()),
        mps: None,
    }
}
