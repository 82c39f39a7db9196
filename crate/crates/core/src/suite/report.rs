//! Per-sample geometry tables.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{csv_number, Family, OutputFormat, SuiteConfig};
use crate::error::{GeomError, Result};
use crate::gauss::sanini_from_sample;
use crate::metric::MetricParam;
use crate::surface::{intrinsic_gauss_curvature, sample};

/// Column order of [`SurfaceRow`] in CSV output.
pub const SURFACE_COLUMNS: [&str; 16] = [
    "u",
    "v",
    "h",
    "det_s",
    "discriminant",
    "k",
    "umbilic_defect",
    "a",
    "b",
    "c",
    "r1213",
    "r2123",
    "r3113",
    "r3223",
    "ok",
    "error",
];

/// Geometry at one grid sample. Curvature components in the principal frame
/// are only filled in for `nu = 1`; unavailable values are NaN.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub u: f64,
    pub v: f64,
    pub h: f64,
    pub det_s: f64,
    pub discriminant: f64,
    pub k: f64,
    pub umbilic_defect: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r1213: f64,
    pub r2123: f64,
    pub r3113: f64,
    pub r3223: f64,
    pub ok: bool,
    pub error: String,
}

impl SurfaceRow {
    fn empty(u: f64, v: f64) -> Self {
        let n = f64::NAN;
        Self {
            u,
            v,
            h: n,
            det_s: n,
            discriminant: n,
            k: n,
            umbilic_defect: n,
            a: n,
            b: n,
            c: n,
            r1213: n,
            r2123: n,
            r3113: n,
            r3223: n,
            ok: false,
            error: String::new(),
        }
    }
}

/// One row per cell-centred grid sample of the configured family, in
/// row-major order.
pub fn surface_report(cfg: &SuiteConfig) -> Result<Vec<SurfaceRow>> {
    let nu = MetricParam::new(cfg.nu)?;
    let spec = cfg.family.as_ref().ok_or_else(|| GeomError::InvalidArgument("surface report needs a family".into()))?;
    let Family::Surface(s) = spec.build()? else {
        return Err(GeomError::InvalidArgument(format!("{spec} is not a surface in G")));
    };
    let s = s.as_ref();
    let rows = s
        .domain()
        .grid(cfg.grid.n, cfg.grid.m)
        .par_iter()
        .map(|&(u, v)| {
            let mut row = SurfaceRow::empty(u, v);
            let filled = (|| -> Result<()> {
                let sm = sample(s, u, v, nu)?;
                row.h = sm.shape.h;
                row.det_s = sm.shape.det_s;
                row.discriminant = sm.shape.discriminant;
                row.umbilic_defect = sm.shape.umbilic_defect;
                (row.a, row.b, row.c) = (sm.normal[0], sm.normal[1], sm.normal[2]);
                row.k = intrinsic_gauss_curvature(s, u, v, nu)?;
                if nu.value() == 1.0 {
                    let r = sanini_from_sample(&sm)?;
                    (row.r1213, row.r2123, row.r3113, row.r3223) = (r.r1213, r.r2123, r.r3113, r.r3223);
                }
                Ok(())
            })();
            match filled {
                Ok(()) => row.ok = true,
                Err(e) => row.error = e.to_string(),
            }
            row
        })
        .collect();
    Ok(rows)
}

pub fn render_surface_report(rows: &[SurfaceRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("surface rows serialise");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut out = SURFACE_COLUMNS.join(",");
            out.push('\n');
            for r in rows {
                let nums = [
                    r.u,
                    r.v,
                    r.h,
                    r.det_s,
                    r.discriminant,
                    r.k,
                    r.umbilic_defect,
                    r.a,
                    r.b,
                    r.c,
                    r.r1213,
                    r.r2123,
                    r.r3113,
                    r.r3223,
                ];
                let mut fields: Vec<String> = nums.iter().map(|x| csv_number(*x)).collect();
                fields.push(r.ok.to_string());
                fields.push(super::csv_field(&r.error));
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::GridSize;

    fn report(family: &str, nu: f64) -> Vec<SurfaceRow> {
        let cfg = SuiteConfig {
            nu,
            family: Some(family.parse().unwrap()),
            grid: GridSize::new(5, 4).unwrap(),
            ..Default::default()
        };
        surface_report(&cfg).unwrap()
    }

    #[test]
    fn lorentzian_lightcone_has_unit_mean_curvature() {
        let rows = report("lightcone(exp_sine(c0=1,c1=0.2,c2=0.3,c3=1,c4=0))", -1.0);
        assert_eq!(rows.len(), 20);
        assert!(rows.iter().all(|r| r.ok && (r.h - 1.0).abs() < 1e-6 && r.r1213.is_nan()));
    }

    #[test]
    fn geodesic_hopf_cylinder_is_minimal_and_flat() {
        let rows = report("hopf_cylinder(geodesic)", 1.0);
        assert!(rows.iter().all(|r| r.ok && r.h.abs() < 1e-6 && r.k.abs() < 1e-4 && r.r1213.is_finite()));
    }

    #[test]
    fn conoid_is_minimal() {
        assert!(report("conoid(mu=0.3)", 1.0).iter().all(|r| r.ok && r.h.abs() < 1e-6));
    }

    #[test]
    fn csv_columns_are_stable() {
        let rows = report("conoid(mu=1)", 1.0);
        let csv = render_surface_report(&rows, OutputFormat::Csv);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SURFACE_COLUMNS.join(","));
        assert!(lines.all(|l| l.split(',').count() == SURFACE_COLUMNS.len()));
    }
}
