//! JSON germ files.
//!
//! A series is `{"degree": r, "terms": [[i, j, c], ...]}`. A germ file is
//! either a raw map `{"degree": r, "x": …, "y": …, "z": …}` or a normal form
//! `{"degree": r, "normal_form": {"a": …, "b1": [...], "b2": series, …}}`
//! where `b1, b3, c1, c3` list coefficients of one variable from degree 0.

use std::path::Path;

use frontkit_core::germ::{split_bc_with_tol, STRUCTURE_TOL};
use frontkit_core::{MapGerm, NormalFormGerm, TruncatedSeries1, TruncatedSeries2};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{CliError, Result};

/// Degree assumed for normal-form files that do not state one.
pub const DEFAULT_DEGREE: usize = 7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDto {
    pub degree: usize,
    pub terms: Vec<(usize, usize, f64)>,
}

impl SeriesDto {
    pub fn to_series(&self) -> Result<TruncatedSeries2> {
        Ok(TruncatedSeries2::from_terms(self.degree, self.terms.iter().copied())?)
    }
}

impl From<&TruncatedSeries2> for SeriesDto {
    fn from(s: &TruncatedSeries2) -> Self {
        Self {
            degree: s.degree(),
            terms: s.terms().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormDto {
    pub a: f64,
    #[serde(default)]
    pub b1: Vec<f64>,
    #[serde(default)]
    pub b2: Option<SeriesDto>,
    #[serde(default)]
    pub b3: Vec<f64>,
    #[serde(default)]
    pub c1: Vec<f64>,
    #[serde(default)]
    pub c2: Option<SeriesDto>,
    #[serde(default)]
    pub c3: Vec<f64>,
}

impl NormalFormDto {
    pub fn to_germ(&self, degree: usize) -> Result<NormalFormGerm> {
        let t1 = |c: &[f64]| TruncatedSeries1::from_coeffs(if c.is_empty() { vec![0.0] } else { c.to_vec() });
        let t2 = |s: &Option<SeriesDto>| match s {
            Some(s) => s.to_series(),
            None => Ok(TruncatedSeries2::zero(0)),
        };
        Ok(NormalFormGerm::from_parts(
            self.a,
            t1(&self.b1),
            t2(&self.b2)?,
            t1(&self.b3),
            t1(&self.c1),
            t2(&self.c2)?,
            t1(&self.c3),
            degree,
        )?)
    }
}

impl From<&NormalFormGerm> for NormalFormDto {
    fn from(nf: &NormalFormGerm) -> Self {
        let (b, c) = (nf.b(), nf.c());
        Self {
            a: nf.a(),
            b1: b.along_u.coefficients().to_vec(),
            b2: Some((&b.mixed).into()),
            b3: b.along_v.coefficients().to_vec(),
            c1: c.along_u.coefficients().to_vec(),
            c2: Some((&c.mixed).into()),
            c3: c.along_v.coefficients().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalFormFile {
    pub degree: usize,
    pub normal_form: NormalFormDto,
}

impl From<&NormalFormGerm> for NormalFormFile {
    fn from(nf: &NormalFormGerm) -> Self {
        Self {
            degree: nf.degree(),
            normal_form: nf.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapFile {
    pub degree: usize,
    pub x: SeriesDto,
    pub y: SeriesDto,
    pub z: SeriesDto,
}

impl From<&MapGerm> for MapFile {
    fn from(m: &MapGerm) -> Self {
        Self {
            degree: m.degree(),
            x: m.x().into(),
            y: m.y().into(),
            z: m.z().into(),
        }
    }
}

/// Either form of a germ file.
#[derive(Debug, Clone, PartialEq)]
pub enum Germ {
    Map(MapGerm),
    NormalForm(NormalFormGerm),
}

impl Germ {
    /// Parses a germ file. Extra top-level keys are ignored, so the output
    /// of `reduce` can be fed back in.
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        let Value::Object(obj) = value else {
            return Err(CliError::Parse("germ file must be a JSON object".into()));
        };
        let degree = match obj.get("degree") {
            None => None,
            Some(d) => Some(
                d.as_u64()
                    .ok_or_else(|| CliError::Parse(format!("degree must be a nonnegative integer, got {d}")))?
                    as usize,
            ),
        };
        if let Some(nf) = obj.get("normal_form") {
            let dto: NormalFormDto = serde_json::from_value(nf.clone())?;
            return Ok(Germ::NormalForm(dto.to_germ(degree.unwrap_or(DEFAULT_DEGREE))?));
        }
        let series = |key: &str| -> Result<TruncatedSeries2> {
            let v = obj
                .get(key)
                .ok_or_else(|| CliError::Parse(format!("germ file needs either `normal_form` or `{key}`")))?;
            let dto: SeriesDto = serde_json::from_value(v.clone())?;
            dto.to_series()
        };
        let (x, y, z) = (series("x")?, series("y")?, series("z")?);
        let m = MapGerm::new(x, y, z)?;
        Ok(Germ::Map(match degree {
            Some(r) if r < m.degree() => m.truncate(r),
            _ => m,
        }))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?)
    }

    pub fn map(&self) -> MapGerm {
        match self {
            Germ::Map(m) => m.clone(),
            Germ::NormalForm(nf) => nf.expand(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Germ::Map(m) => m.degree(),
            Germ::NormalForm(nf) => nf.degree(),
        }
    }

    /// The normal form itself; a raw map must already have the normal-form
    /// shape within `tol`.
    pub fn normal_form(&self, tol: Option<f64>) -> Result<NormalFormGerm> {
        match self {
            Germ::NormalForm(nf) => Ok(nf.clone()),
            Germ::Map(m) => Ok(split_bc_with_tol(m, tol.unwrap_or(STRUCTURE_TOL))?),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Comma-separated floats, e.g. `0.1,-2,3e-3`.
pub fn parse_floats(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_round_trip() {
        let text = r#"{"degree": 6, "normal_form": {"a": 2.0, "b1": [1.0], "b3": [1.0, 4.0],
                       "c1": [1.0, 1.0], "c3": [1.0, 1.0]}}"#;
        let Germ::NormalForm(nf) = Germ::parse(text).unwrap() else { panic!() };
        assert_eq!(nf.degree(), 6);
        assert_eq!(nf.b().along_v.coeff(1), 4.0);
        let back = serde_json::to_string(&NormalFormFile::from(&nf)).unwrap();
        assert_eq!(Germ::parse(&back).unwrap(), Germ::NormalForm(nf));
    }

    #[test]
    fn map_germs_split_when_already_normal() {
        let nf = NormalFormGerm::model(1.0, 5).unwrap();
        let text = serde_json::to_string(&MapFile::from(&nf.expand())).unwrap();
        let germ = Germ::parse(&text).unwrap();
        assert!(matches!(germ, Germ::Map(_)));
        assert_eq!(germ.normal_form(None).unwrap(), nf);
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(Germ::parse("[1, 2]"), Err(CliError::Parse(_))));
        assert!(matches!(Germ::parse(r#"{"degree": 4, "x": {"degree": 4, "terms": []}}"#), Err(CliError::Parse(_))));
        let beyond = r#"{"x": {"degree": 2, "terms": [[3, 0, 1.0]]}, "y": {"degree": 2, "terms": []}, "z": {"degree": 2, "terms": []}}"#;
        assert_eq!(Germ::parse(beyond).unwrap_err().exit_code(), 3);
        let bad_a = r#"{"normal_form": {"a": -1.0}}"#;
        assert_eq!(Germ::parse(bad_a).unwrap_err().exit_code(), 3);
        assert_eq!(Germ::parse(r#"{"normal_form": {"a": 1.0, "q": 2}}"#).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn float_lists() {
        assert_eq!(parse_floats("0.1,-2, 3e-3").unwrap(), [0.1, -2.0, 3e-3]);
        assert!(parse_floats("1,,2").is_err());
    }
}
