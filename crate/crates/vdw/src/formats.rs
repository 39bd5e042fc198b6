//! JSON and CSV file formats.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use vdw_core::couples::VerificationReport;
use vdw_core::specfun::DirichletCharacter;
use vdw_core::thorin::{NamedDensity, ThorinMeasure};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DensityFile {
    BoseEinstein,
    Constant { value: f64, lo: f64, hi: f64 },
    PowerLaw { coef: f64, exponent: f64, lo: f64, hi: Option<f64> },
}

impl From<DensityFile> for NamedDensity {
    fn from(d: DensityFile) -> Self {
        match d {
            DensityFile::BoseEinstein => NamedDensity::BoseEinstein,
            DensityFile::Constant { value, lo, hi } => NamedDensity::Constant { value, lo, hi },
            DensityFile::PowerLaw { coef, exponent, lo, hi } => {
                NamedDensity::PowerLaw { coef, exponent, lo, hi: hi.unwrap_or(f64::INFINITY) }
            }
        }
    }
}

impl From<NamedDensity> for DensityFile {
    fn from(d: NamedDensity) -> Self {
        match d {
            NamedDensity::BoseEinstein => DensityFile::BoseEinstein,
            NamedDensity::Constant { value, lo, hi } => DensityFile::Constant { value, lo, hi },
            NamedDensity::PowerLaw { coef, exponent, lo, hi } => {
                DensityFile::PowerLaw { coef, exponent, lo, hi: hi.is_finite().then_some(hi) }
            }
        }
    }
}

/// `{"atoms": [[location, mass], ...], "density": {...}, "a": 0, "c": 0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThorinFile {
    #[serde(default = "schema")]
    pub schema_version: u32,
    #[serde(default)]
    pub atoms: Vec<[f64; 2]>,
    #[serde(default)]
    pub density: Option<DensityFile>,
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub c: f64,
}

fn schema() -> u32 {
    SCHEMA_VERSION
}

impl ThorinFile {
    pub fn to_measure(&self) -> Result<ThorinMeasure, CliError> {
        let mut m = ThorinMeasure::from_atoms(self.atoms.iter().map(|a| (a[0], a[1])).collect())?;
        if let Some(d) = &self.density {
            m = m.with_density(d.clone().into())?;
        }
        m.c = self.c;
        m = m.with_left_extremity(self.a)?;
        Ok(m)
    }

    /// Zero-set atoms are not representable and are rejected.
    pub fn from_measure(m: &ThorinMeasure) -> Result<Self, CliError> {
        if m.zero_atoms.is_some() {
            return Err(CliError::Usage("measures backed by zero sets have no file form".into()));
        }
        Ok(ThorinFile {
            schema_version: SCHEMA_VERSION,
            atoms: m.atoms.iter().map(|&(x, w)| [x, w]).collect(),
            density: m.density.map(Into::into),
            a: m.a,
            c: m.c,
        })
    }
}

/// χ(0), …, χ(k−1) as `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterFile {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub modulus: u64,
    pub values: Vec<[f64; 2]>,
}

impl CharacterFile {
    pub fn to_character(&self) -> Result<DirichletCharacter, CliError> {
        let v = self.values.iter().map(|p| Complex64::new(p[0], p[1])).collect();
        Ok(DirichletCharacter::from_values(self.modulus, v)?)
    }

    pub fn from_character(chi: &DirichletCharacter) -> Self {
        CharacterFile {
            schema_version: SCHEMA_VERSION,
            modulus: chi.modulus(),
            values: chi.values().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub label: String,
    pub x: f64,
    pub residual: Option<f64>,
    pub threshold: f64,
    pub se: Option<f64>,
    pub error: Option<String>,
    pub pass: bool,
}

/// One verification outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub id: String,
    pub check: String,
    pub pass: bool,
    pub max_residual: Option<f64>,
    pub points: Vec<PointRecord>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(id: &str, check: &str, points: Vec<PointRecord>, notes: Vec<String>) -> Self {
        let pass = !points.is_empty() && points.iter().all(|p| p.pass);
        let max_residual = points.iter().filter_map(|p| p.residual).fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))));
        Report { schema_version: SCHEMA_VERSION, id: id.into(), check: check.into(), pass, max_residual, points, notes }
    }

    pub fn from_couple(id: &str, r: &VerificationReport) -> Self {
        let points = r
            .points
            .iter()
            .map(|p| PointRecord {
                label: p.label.clone(),
                x: p.s,
                residual: p.residual.is_finite().then_some(p.residual),
                threshold: p.threshold,
                se: p.se,
                error: p.error.clone(),
                pass: p.pass(),
            })
            .collect();
        let mut rep = Report::new(id, r.check.id(), points, r.notes.clone());
        rep.pass = r.pass;
        rep
    }

    /// All reports must pass.
    pub fn merge(id: &str, parts: Vec<Report>) -> Self {
        let mut points = Vec::new();
        let mut notes = Vec::new();
        let mut pass = !parts.is_empty();
        for p in parts {
            pass &= p.pass;
            for mut pt in p.points {
                pt.label = format!("{}:{}", p.check, pt.label);
                points.push(pt);
            }
            notes.extend(p.notes.into_iter().map(|n| format!("{}: {n}", p.check)));
        }
        notes.dedup();
        let mut r = Report::new(id, "combined", points, notes);
        r.pass = pass;
        r
    }

    pub fn summary_line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let m = self.max_residual.map_or("n/a".to_string(), |m| format!("{m:.3e}"));
        format!("{status} {} max_residual={m} points={}", self.id, self.points.len())
    }
}

pub fn point(label: &str, x: f64, residual: f64, threshold: f64) -> PointRecord {
    let ok = residual.is_finite();
    PointRecord {
        label: label.into(),
        x,
        residual: ok.then_some(residual),
        threshold,
        se: None,
        error: (!ok).then(|| format!("non-finite residual {residual}")),
        pass: ok && residual <= threshold,
    }
}

pub fn stat_point(label: &str, x: f64, residual: f64, se: f64, k: f64) -> PointRecord {
    let mut p = point(label, x, residual, k * se);
    p.se = Some(se);
    p
}

pub fn error_point(label: &str, x: f64, e: impl std::fmt::Display) -> PointRecord {
    PointRecord { label: label.into(), x, residual: None, threshold: 0.0, se: None, error: Some(e.to_string()), pass: false }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformEstimate {
    pub s: f64,
    /// E e^{−sX}
    pub laplace: Option<f64>,
    pub laplace_se: Option<f64>,
    /// E e^{isX}
    pub cf_re: f64,
    pub cf_im: f64,
    pub cf_se: f64,
    pub unstable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub schema_version: u32,
    pub sampler: String,
    pub draws: usize,
    pub seed: u64,
    pub mean: f64,
    pub mean_se: f64,
    pub variance: f64,
    pub transforms: Vec<TransformEstimate>,
    pub notes: Vec<String>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut f = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    f.write_all(b"\n")?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let f = std::fs::File::open(path)?;
    Ok(serde_json::from_reader(std::io::BufReader::new(f))?)
}

/// Rows with a header, written as CSV.
pub fn write_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<f64>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|v| format_float(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest round-trip representation.
pub fn format_float(v: f64) -> String {
    format!("{v:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thorin_round_trip() {
        let f: ThorinFile = serde_json::from_str(
            r#"{"atoms": [[1.0, 0.5], [2.0, 1.5]], "density": {"kind": "power-law", "coef": 1.0, "exponent": -0.5, "lo": 0.0}}"#,
        )
        .unwrap();
        let m = f.to_measure().unwrap();
        assert_eq!(m.atoms.len(), 2);
        assert!(matches!(m.density, Some(NamedDensity::PowerLaw { hi, .. }) if hi.is_infinite()));
        assert_eq!(ThorinFile::from_measure(&m).unwrap(), f);
        let bad: ThorinFile = serde_json::from_str(r#"{"atoms": [[1.0, -0.5]]}"#).unwrap();
        assert!(bad.to_measure().is_err());
    }

    #[test]
    fn character_round_trip() {
        let f = CharacterFile { schema_version: 1, modulus: 4, values: vec![[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [-1.0, 0.0]] };
        let chi = f.to_character().unwrap();
        assert_eq!(chi.parity(), 1);
        assert_eq!(CharacterFile::from_character(&chi), f);
        let bad = CharacterFile { schema_version: 1, modulus: 4, values: vec![[1.0, 0.0]; 4] };
        assert!(bad.to_character().is_err());
    }

    #[test]
    fn report_pass_rule() {
        let r = Report::new("x", "c", vec![point("a", 0.0, 1e-12, 1e-10), point("b", 1.0, f64::NAN, 1.0)], vec![]);
        assert!(!r.pass);
        assert_eq!(r.max_residual, Some(1e-12));
        assert!(!Report::new("x", "c", vec![], vec![]).pass);
    }
}
