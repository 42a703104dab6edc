//! Inner-function JSON: `{"zeros": [[re, im, mult], ...],
//! "atoms": [[arg_over_pi, mass], ...]}`. The angle-over-π encoding keeps
//! unimodular base points exact through a round-trip.

use deepzero_core::inner::InnerSpec;
use deepzero_core::C64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerSpecJson {
    #[serde(default)]
    pub zeros: Vec<[f64; 3]>,
    #[serde(default)]
    pub atoms: Vec<[f64; 2]>,
}

impl InnerSpecJson {
    pub fn to_spec(&self) -> Result<InnerSpec, CliError> {
        let mut zeros = Vec::with_capacity(self.zeros.len());
        for z in &self.zeros {
            let mult = z[2];
            if mult < 1.0 || mult.fract() != 0.0 || mult > u32::MAX as f64 {
                return Err(CliError::Math(format!(
                    "zero multiplicity must be a positive integer, got {mult}"
                )));
            }
            zeros.push((C64::new(z[0], z[1]), mult as u32));
        }
        let atoms = self.atoms.iter().map(|a| (a[0], a[1])).collect();
        InnerSpec::new(zeros, atoms).map_err(|e| CliError::Math(e.to_string()))
    }

    pub fn from_spec(spec: &InnerSpec) -> InnerSpecJson {
        InnerSpecJson {
            zeros: spec
                .zeros()
                .iter()
                .map(|(a, m)| [a.re, a.im, f64::from(*m)])
                .collect(),
            atoms: spec.atoms().iter().map(|(t, m)| [*t, *m]).collect(),
        }
    }
}

/// Accept either a path to a JSON file or inline JSON (starts with `{`).
pub fn load_inner(arg: &str) -> Result<InnerSpec, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Usage(format!("cannot read inner spec '{arg}': {e}")))?
    };
    let raw: InnerSpecJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("inner spec parse error: {e}")))?;
    raw.to_spec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let spec = InnerSpec::new(
            vec![(C64::new(0.3, -0.4), 2), (C64::new(0.0, 0.0), 1)],
            vec![(0.25, 0.7), (-0.5, 1.0)],
        )
        .unwrap();
        let json = serde_json::to_string(&InnerSpecJson::from_spec(&spec)).unwrap();
        let back = load_inner(&json).unwrap();
        assert_eq!(spec, back);
    }

    #[test]
    fn rejects_fractional_multiplicities() {
        assert!(load_inner(r#"{"zeros": [[0.1, 0.0, 1.5]], "atoms": []}"#).is_err());
    }
}
