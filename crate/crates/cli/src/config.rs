//! Run configuration: either explicit endpoints `x` or a shape `tau` with
//! scale `r` (x = r·τ), and either weights `s` or exponents `beta` (the
//! imaginary parts; `null` in first position means s₁ = 0).

use std::fs;
use std::path::Path;

use airy_gap::fredholm::GapConfig;
use airy_gap::{beta, Beta};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

const SCALE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Option<f64>>>,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Validation(msg) => CliError::Validation(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| {
            CliError::validation(format!(
                "config parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        cfg.check_shape()?;
        Ok(cfg)
    }

    fn check_shape(&self) -> CliResult<()> {
        if self.x.is_none() && self.tau.is_none() {
            return Err(CliError::validation("field `x` or `tau` is required"));
        }
        if self.s.is_some() && self.beta.is_some() {
            return Err(CliError::validation("give either `s` or `beta`, not both"));
        }
        if self.s.is_none() && self.beta.is_none() {
            return Err(CliError::validation("field `s` or `beta` is required"));
        }
        if let (Some(x), Some(tau), Some(r)) = (&self.x, &self.tau, self.r) {
            if x.len() != tau.len()
                || x.iter()
                    .zip(tau)
                    .any(|(&a, &t)| (a - r * t).abs() > SCALE_TOL * a.abs().max(1.0))
            {
                return Err(CliError::validation("field `x` disagrees with `r`·`tau`"));
            }
        }
        if let Some(r) = self.r {
            if !(r > 0.0) || !r.is_finite() {
                return Err(CliError::validation(format!(
                    "field `r` must be positive, got {r}"
                )));
            }
        }
        let len = self.weights_len();
        if let Some(m) = self.m {
            let n = self.x.as_ref().or(self.tau.as_ref()).map_or(0, Vec::len);
            if m != n || m != len {
                return Err(CliError::validation(format!(
                    "field `m` = {m} does not match the number of endpoints ({n}) and weights ({len})"
                )));
            }
        }
        Ok(())
    }

    fn weights_len(&self) -> usize {
        self.s
            .as_ref()
            .map(Vec::len)
            .or(self.beta.as_ref().map(Vec::len))
            .unwrap_or(0)
    }

    /// τ, from `tau` or from `x / r`.
    pub fn shape(&self) -> CliResult<Vec<f64>> {
        match (&self.tau, &self.x, self.r) {
            (Some(t), _, _) => Ok(t.clone()),
            (None, Some(x), Some(r)) => Ok(x.iter().map(|v| v / r).collect()),
            _ => Err(CliError::validation(
                "a scale sweep needs `tau`, or `x` together with `r`",
            )),
        }
    }

    /// Endpoints at scale `r`, or the configured ones when `r` is None.
    pub fn endpoints(&self, r: Option<f64>) -> CliResult<Vec<f64>> {
        if let Some(r) = r {
            return Ok(self.shape()?.iter().map(|t| r * t).collect());
        }
        match (&self.x, &self.tau, self.r) {
            (Some(x), _, _) => Ok(x.clone()),
            (None, Some(t), Some(r)) => Ok(t.iter().map(|v| r * v).collect()),
            _ => Err(CliError::validation("field `tau` needs `r`")),
        }
    }

    pub fn betas(&self) -> CliResult<Vec<Option<Beta>>> {
        match (&self.beta, &self.s) {
            (Some(b), _) => {
                for (j, v) in b.iter().enumerate() {
                    if matches!(v, Some(t) if !t.is_finite()) {
                        return Err(CliError::validation(format!("beta[{j}] is not finite")));
                    }
                }
                Ok(b.iter().map(|v| v.map(Beta::imag)).collect())
            }
            (None, Some(s)) => Ok(beta::beta_from_s(s)?),
            _ => Err(CliError::validation("no weights given")),
        }
    }

    pub fn weights(&self) -> CliResult<Vec<f64>> {
        match (&self.s, &self.beta) {
            (Some(s), _) => Ok(s.clone()),
            (None, Some(_)) => Ok(beta::s_from_beta(&self.betas()?)?),
            _ => Err(CliError::validation("no weights given")),
        }
    }

    pub fn gap_config(&self, r: Option<f64>) -> CliResult<GapConfig> {
        Ok(GapConfig::new(self.endpoints(r)?, self.weights()?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_parametrizations() {
        let a = RunConfig::parse(r#"{"m":2,"x":[-1,-3],"s":[0.5,0.5]}"#).unwrap();
        assert_eq!(a.gap_config(None).unwrap().x(), &[-1.0, -3.0]);
        let b = RunConfig::parse(r#"{"tau":[-1,-2],"r":4,"beta":[0.2,0.2]}"#).unwrap();
        let g = b.gap_config(None).unwrap();
        assert_eq!(g.x(), &[-4.0, -8.0]);
        assert!((g.s()[1] - (0.4 * std::f64::consts::PI).exp()).abs() < 1e-12);
        assert_eq!(b.gap_config(Some(10.0)).unwrap().x(), &[-10.0, -20.0]);
        let c = RunConfig::parse(r#"{"tau":[-1,-2],"r":4,"beta":[null,0.2]}"#).unwrap();
        assert_eq!(c.weights().unwrap()[0], 0.0);
    }

    #[test]
    fn rejects_inconsistent_input() {
        let bad = [
            r#"{"x":[-1],"tau":[-1],"r":2,"s":[0]}"#,
            r#"{"x":[-1],"s":[0],"beta":[0.1]}"#,
            r#"{"m":2,"x":[-1],"s":[0]}"#,
            r#"{"x":[-1],"s":[0],"extra":1}"#,
            r#"{"x":[-1]}"#,
        ];
        for text in bad {
            assert!(
                matches!(RunConfig::parse(text), Err(CliError::Validation(_))),
                "{text}"
            );
        }
        let err = RunConfig::parse("{\n  \"x\": [-1,\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }
}
