use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_K: usize = 6;
pub const DEFAULT_NMAX: u32 = 2;
pub const DEFAULT_OUT: &str = "qes-out";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Razavy,
    Sextic,
    Harmonic,
    ScalarField,
    Polynomial,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Razavy => "razavy",
            ModelKind::Sextic => "sextic",
            ModelKind::Harmonic => "harmonic",
            ModelKind::ScalarField => "scalarfield",
            ModelKind::Polynomial => "polynomial",
        }
    }

    /// Parameter names with their defaults (`None` means required).
    fn params(self) -> Vec<(String, Option<f64>)> {
        let fixed =
            |v: &[(&str, Option<f64>)]| v.iter().map(|(k, d)| (k.to_string(), *d)).collect();
        match self {
            ModelKind::Razavy => fixed(&[("A", Some(1.0)), ("alpha", Some(2.0))]),
            ModelKind::Sextic => fixed(&[("a", Some(1.0)), ("b", Some(1.0))]),
            ModelKind::Harmonic => fixed(&[("omega", Some(1.0))]),
            ModelKind::ScalarField => fixed(&[("B", Some(1.0)), ("C", Some(-1.0))]),
            ModelKind::Polynomial => {
                let mut p: Vec<(String, Option<f64>)> =
                    (0..=8).map(|k| (format!("c{k}"), Some(0.0))).collect();
                p.extend(fixed(&[
                    ("epsilon", None),
                    ("x_ref", Some(1.0)),
                    ("branch_lo", Some(0.0)),
                    ("branch_hi", Some(f64::INFINITY)),
                ]));
                p
            }
        }
    }
}

impl FromStr for ModelKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "razavy" => Ok(ModelKind::Razavy),
            "sextic" => Ok(ModelKind::Sextic),
            "harmonic" => Ok(ModelKind::Harmonic),
            "scalarfield" => Ok(ModelKind::ScalarField),
            "polynomial" => Ok(ModelKind::Polynomial),
            other => Err(CliError::usage(format!(
                "unknown model `{other}` (expected razavy, sextic, harmonic, scalarfield or polynomial)"
            ))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub n: Option<usize>,
}

/// On-disk JSON config; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub model: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    pub grid: Option<GridFile>,
    pub tol: Option<f64>,
    pub k: Option<usize>,
    pub nmax: Option<u32>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
            path: path.to_owned(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: path.to_owned(),
            source,
        })
    }
}

/// Values given on the command line; they win over the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub model: Option<String>,
    pub params: Vec<(String, f64)>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub n: Option<usize>,
    pub tol: Option<f64>,
    pub k: Option<usize>,
    pub nmax: Option<u32>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSettings {
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub n: Option<usize>,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelKind,
    pub params: BTreeMap<String, f64>,
    pub grid: GridSettings,
    pub tol: f64,
    pub k: usize,
    pub nmax: u32,
    pub out: PathBuf,
}

impl RunConfig {
    /// Merges defaults, file and flags (in increasing priority).
    pub fn resolve(
        file: FileConfig,
        flags: Overrides,
        default_model: Option<ModelKind>,
    ) -> Result<Self, CliError> {
        let model = match flags.model.or(file.model) {
            Some(name) => name.parse()?,
            None => default_model.ok_or_else(|| CliError::usage("no model given"))?,
        };
        let known = model.params();
        let mut params = BTreeMap::new();
        let given = file.params.into_iter().chain(flags.params);
        for (key, value) in given {
            if !known.iter().any(|(k, _)| *k == key) {
                let names: Vec<&str> = known.iter().map(|(k, _)| k.as_str()).collect();
                return Err(CliError::usage(format!(
                    "unknown parameter `{key}` for model {model} (expected one of {})",
                    names.join(", ")
                )));
            }
            if !value.is_finite() {
                return Err(CliError::usage(format!(
                    "parameter `{key}` must be finite, got {value}"
                )));
            }
            params.insert(key, value);
        }
        for (key, default) in known {
            if params.contains_key(&key) {
                continue;
            }
            match default {
                Some(v) => {
                    params.insert(key, v);
                }
                None => {
                    return Err(CliError::usage(format!(
                        "model {model} requires parameter `{key}`"
                    )))
                }
            }
        }
        let gf = file.grid.unwrap_or_default();
        let grid = GridSettings {
            x_min: flags.x_min.or(gf.x_min),
            x_max: flags.x_max.or(gf.x_max),
            n: flags.n.or(gf.n),
        };
        if let (Some(lo), Some(hi)) = (grid.x_min, grid.x_max) {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(CliError::usage(format!(
                    "grid needs finite x_min < x_max, got [{lo}, {hi}]"
                )));
            }
        }
        if grid.x_min.is_some() != grid.x_max.is_some() {
            return Err(CliError::usage(
                "grid x_min and x_max must be given together",
            ));
        }
        if let Some(n) = grid.n {
            if n < 3 {
                return Err(CliError::usage(format!(
                    "grid needs at least 3 points, got {n}"
                )));
            }
        }
        let tol = flags.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::usage(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        let k = flags.k.or(file.k).unwrap_or(DEFAULT_K);
        if k == 0 {
            return Err(CliError::usage("k must be at least 1"));
        }
        Ok(RunConfig {
            model,
            params,
            grid,
            tol,
            k,
            nmax: flags.nmax.or(file.nmax).unwrap_or(DEFAULT_NMAX),
            out: flags
                .out
                .or(file.out)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        })
    }

    pub fn param(&self, key: &str) -> f64 {
        self.params[key]
    }
}

/// Parses `key=value` with a real value.
pub fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("parameter `{k}` needs a real value, got `{v}`"))?;
    Ok((k.trim().to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags() -> Overrides {
        Overrides::default()
    }

    #[test]
    fn defaults_fill_in() {
        let c =
            RunConfig::resolve(FileConfig::default(), flags(), Some(ModelKind::Razavy)).unwrap();
        assert_eq!(c.param("A"), 1.0);
        assert_eq!(c.param("alpha"), 2.0);
        assert_eq!(c.tol, DEFAULT_TOL);
    }

    #[test]
    fn flags_beat_file() {
        let file: FileConfig = serde_json::from_str(
            r#"{"model": "sextic", "params": {"a": 2.0, "b": 3.0}, "tol": 1e-4}"#,
        )
        .unwrap();
        let o = Overrides {
            params: vec![("b".into(), 5.0)],
            tol: Some(1e-5),
            ..flags()
        };
        let c = RunConfig::resolve(file, o, None).unwrap();
        assert_eq!(c.model, ModelKind::Sextic);
        assert_eq!((c.param("a"), c.param("b")), (2.0, 5.0));
        assert_eq!(c.tol, 1e-5);
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = serde_json::from_str::<FileConfig>(r#"{"modle": "razavy"}"#).unwrap_err();
        assert!(e.to_string().contains("modle"));
        let o = Overrides {
            params: vec![("beta".into(), 1.0)],
            ..flags()
        };
        let e = RunConfig::resolve(FileConfig::default(), o, Some(ModelKind::Razavy)).unwrap_err();
        assert!(e.to_string().contains("beta"));
    }

    #[test]
    fn invalid_values_rejected() {
        let o = Overrides {
            tol: Some(-1.0),
            ..flags()
        };
        assert!(RunConfig::resolve(FileConfig::default(), o, Some(ModelKind::Razavy)).is_err());
        let o = Overrides {
            x_min: Some(1.0),
            x_max: Some(0.0),
            ..flags()
        };
        assert!(RunConfig::resolve(FileConfig::default(), o, Some(ModelKind::Razavy)).is_err());
        assert!(
            RunConfig::resolve(FileConfig::default(), flags(), Some(ModelKind::Polynomial))
                .is_err()
        );
    }

    #[test]
    fn param_syntax() {
        assert_eq!(
            parse_param("alpha=-1").unwrap(),
            ("alpha".to_string(), -1.0)
        );
        assert!(parse_param("alpha").is_err());
        assert!(parse_param("alpha=x").is_err());
    }
}
