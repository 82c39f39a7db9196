//! Reproducible verification suites.
//!
//! A suite turns a [`SuiteConfig`] into a list of [`ReportRow`]s, each
//! comparing a computed value against its expected value under a tolerance.
//! Random sampling is driven by a ChaCha8 generator seeded from the config,
//! and grid evaluation fans out over rayon with results gathered in
//! row-major order, so the rendered report is byte-identical across runs.

pub mod checks;
pub mod report;
pub mod spec;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

pub use checks::run_suite;
pub use report::{render_surface_report, surface_report, SurfaceRow, SURFACE_COLUMNS};
pub use spec::{CurveSpec, Family, FamilyKind, FamilySpec, ProfileSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Connection,
    Curvature,
    Sasaki,
    Family,
    Gauss,
    Ads,
    All,
}

impl SuiteKind {
    pub const NAMES: [&'static str; 7] = ["connection", "curvature", "sasaki", "family", "gauss", "ads", "all"];
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        write!(f, "{}", Self::NAMES[i])
    }
}

impl FromStr for SuiteKind {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self> {
        const ALL: [SuiteKind; 7] = [
            SuiteKind::Connection,
            SuiteKind::Curvature,
            SuiteKind::Sasaki,
            SuiteKind::Family,
            SuiteKind::Gauss,
            SuiteKind::Ads,
            SuiteKind::All,
        ];
        ALL.into_iter().find(|k| k.to_string() == s.to_ascii_lowercase()).ok_or_else(|| {
            GeomError::InvalidArgument(format!("unknown suite '{s}' (expected one of {})", Self::NAMES.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(GeomError::InvalidArgument(format!("unknown format '{s}' (expected csv or json)"))),
        }
    }
}

/// Grid resolution `N x M`, at least 2 per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSize {
    pub n: usize,
    pub m: usize,
}

impl GridSize {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 2 || m < 2 {
            return Err(GeomError::InvalidArgument(format!("grid {n}x{m} needs at least 2 points per axis")));
        }
        Ok(Self { n, m })
    }
}

impl Default for GridSize {
    fn default() -> Self {
        Self { n: 20, m: 20 }
    }
}

impl fmt::Display for GridSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.n, self.m)
    }
}

impl FromStr for GridSize {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || GeomError::InvalidArgument(format!("grid '{s}' is not of the form NxM"));
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        Self::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    }
}

impl Serialize for GridSize {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GridSize {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub nu: f64,
    pub suite: SuiteKind,
    pub family: Option<FamilySpec>,
    pub grid: GridSize,
    /// Replaces every per-check tolerance when set.
    pub tol: Option<f64>,
    pub format: OutputFormat,
    pub seed: u64,
    /// Number of random samples for the pointwise suites; each suite has its
    /// own default when unset.
    pub samples: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            nu: 1.0,
            suite: SuiteKind::All,
            family: None,
            grid: GridSize::default(),
            tol: None,
            format: OutputFormat::Csv,
            seed: 0,
            samples: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        crate::metric::MetricParam::new(self.nu)?;
        GridSize::new(self.grid.n, self.grid.m)?;
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(GeomError::InvalidArgument(format!("tolerance {t} must be positive")));
            }
        }
        if self.samples == Some(0) {
            return Err(GeomError::InvalidArgument("samples must be positive".into()));
        }
        if self.suite == SuiteKind::Family && self.family.is_none() {
            return Err(GeomError::InvalidArgument("suite 'family' needs a family spec".into()));
        }
        if self.suite == SuiteKind::Gauss {
            if self.family.is_none() {
                return Err(GeomError::InvalidArgument("suite 'gauss' needs a family spec".into()));
            }
            if self.nu != 1.0 {
                return Err(GeomError::InvalidArgument("the gauss suite is defined for nu = 1 only".into()));
            }
        }
        Ok(())
    }
}

/// One comparison. `pass` holds exactly when `residual <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub check: String,
    pub location: String,
    pub expected: f64,
    pub computed: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ReportRow {
    /// Equality row: residual `|computed - expected|`.
    pub fn equal(
        check: impl Into<String>,
        location: impl Into<String>,
        expected: f64,
        computed: f64,
        tolerance: f64,
    ) -> Self {
        let residual = (computed - expected).abs();
        Self::with_residual(check, location, expected, computed, residual, tolerance)
    }

    /// Lower-bound row: passes when `computed >= bound`; the residual is the
    /// shortfall and the tolerance 0.
    pub fn at_least(check: impl Into<String>, location: impl Into<String>, bound: f64, computed: f64) -> Self {
        let residual = if computed.is_nan() { f64::NAN } else { (bound - computed).max(0.0) };
        Self::with_residual(check, location, bound, computed, residual, 0.0)
    }

    pub fn with_residual(
        check: impl Into<String>,
        location: impl Into<String>,
        expected: f64,
        computed: f64,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            check: check.into(),
            location: location.into(),
            expected,
            computed,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// A row recording a computation that failed outright.
    pub fn failure(check: impl Into<String>, location: impl Into<String>, e: &GeomError, tolerance: f64) -> Self {
        let loc = format!("{} error: {e}", location.into());
        Self::with_residual(check, loc, f64::NAN, f64::NAN, f64::NAN, tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => render_csv(&self.rows),
            OutputFormat::Json => render_json(&self.rows),
        }
    }
}

pub const REPORT_COLUMNS: [&str; 7] = ["check", "location", "expected", "computed", "residual", "tolerance", "pass"];

/// `{:.16e}` gives 17 significant digits with a `.` decimal point.
pub fn csv_number(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut out = REPORT_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        let fields = [
            csv_field(&r.check),
            csv_field(&r.location),
            csv_number(r.expected),
            csv_number(r.computed),
            csv_number(r.residual),
            csv_number(r.tolerance),
            r.pass.to_string(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(rows: &[ReportRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("report rows serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_pass_flag_follows_residual() {
        assert!(ReportRow::equal("c", "l", 1.0, 1.0 + 1e-9, 1e-8).pass);
        assert!(!ReportRow::equal("c", "l", 1.0, 1.1, 1e-8).pass);
        assert!(ReportRow::at_least("c", "l", 1e-2, 0.5).pass);
        assert!(!ReportRow::at_least("c", "l", 1e-2, 1e-3).pass);
        assert!(!ReportRow::failure("c", "l", &GeomError::EmptyInterval, 1.0).pass);
    }

    #[test]
    fn csv_uses_seventeen_digits_and_quotes() {
        let r = ReportRow::equal("c", "u=1, v=2", 0.1, 0.1, 1e-8);
        let csv = render_csv(&[r]);
        assert_eq!(csv.lines().nth(1).unwrap(), "c,\"u=1, v=2\",1.0000000000000001e-1,1.0000000000000001e-1,0.0000000000000000e0,1.0000000000000000e-8,true");
    }

    #[test]
    fn json_mirrors_field_names() {
        let r = ReportRow::equal("c", "l", 1.0, 2.0, 0.5);
        let v: serde_json::Value = serde_json::from_str(&render_json(&[r])).unwrap();
        for k in REPORT_COLUMNS {
            assert!(v[0].get(k).is_some(), "{k}");
        }
        assert_eq!(v[0]["pass"], false);
    }

    #[test]
    fn parses_grid_suite_and_format() {
        assert_eq!("40x30".parse::<GridSize>().unwrap(), GridSize { n: 40, m: 30 });
        assert!("1x30".parse::<GridSize>().is_err());
        assert!("40".parse::<GridSize>().is_err());
        assert_eq!("Sasaki".parse::<SuiteKind>().unwrap(), SuiteKind::Sasaki);
        assert!("nope".parse::<SuiteKind>().is_err());
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
    }

    #[test]
    fn validation() {
        let mut c = SuiteConfig::default();
        assert!(c.validate().is_ok());
        c.nu = 0.0;
        assert!(c.validate().is_err());
        c = SuiteConfig { suite: SuiteKind::Family, ..Default::default() };
        assert!(c.validate().is_err());
        c = SuiteConfig { tol: Some(-1.0), ..Default::default() };
        assert!(c.validate().is_err());
        c = SuiteConfig {
            suite: SuiteKind::Gauss,
            nu: -1.0,
            family: Some("conoid(mu=1)".parse().unwrap()),
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
