//! Parsers and writers used by the command-line front end: JSON parameter
//! files, `name=lo:hi:count` grid specs, `name=value` tolerance lists, and
//! fixed-format CSV.

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{embedding_dot, Ads, Sphere};
use crate::bridge::{linspace, ScanRow};
use crate::error::{Error, Result};
use crate::solution::{make_unchecked, SolutionParams};
use crate::verify::Tolerances;

/// Parses a parameter file. Structure (parity, group membership, unit
/// vectors) is validated; `4λρ = mn` is left to the verifier.
pub fn parse_params_json(text: &str) -> Result<SolutionParams> {
    let p: SolutionParams = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    make_unchecked(p)
}

pub fn params_to_json(p: &SolutionParams) -> String {
    serde_json::to_string_pretty(p).expect("parameters serialize")
}

/// One axis `name=lo:hi:count` of a grid spec.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridAxis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.count)
    }

    pub fn range(&self) -> (f64, f64, usize) {
        (self.lo, self.hi, self.count)
    }
}

/// Comma-separated axes, e.g. `tau=-0.5:0.5:5,sigma=0:3:4`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub axes: Vec<GridAxis>,
}

impl GridSpec {
    pub fn axis(&self, name: &str) -> Option<&GridAxis> {
        self.axes.iter().find(|a| a.name == name)
    }

    /// The named axis, or `Err(Parse)` naming what is missing.
    pub fn require(&self, name: &str) -> Result<&GridAxis> {
        self.axis(name)
            .ok_or_else(|| Error::Parse(format!("grid spec needs an axis named '{name}'")))
    }
}

const MAX_GRID_COUNT: usize = 1 << 20;

fn parse_number(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: '{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("{what}: '{s}' is not finite")));
    }
    Ok(v)
}

/// Parses `name=lo:hi:count[,name=lo:hi:count...]`.
///
/// A zero count or `lo > hi` yields `Err(EmptyGrid)`; malformed text yields `Err(Parse)`.
pub fn parse_grid_spec(text: &str) -> Result<GridSpec> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::EmptyGrid("grid spec is empty".into()));
    }
    let mut axes: Vec<GridAxis> = Vec::new();
    for part in text.split(',') {
        let (name, range) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("'{part}' is not of the form name=lo:hi:count")))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Parse(format!("bad axis name '{name}'")));
        }
        if axes.iter().any(|a| a.name == name) {
            return Err(Error::Parse(format!("axis '{name}' given twice")));
        }
        let fields: Vec<&str> = range.split(':').collect();
        let [lo, hi, count] = fields[..] else {
            return Err(Error::Parse(format!("axis '{name}' needs lo:hi:count")));
        };
        let lo = parse_number(lo, name)?;
        let hi = parse_number(hi, name)?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{name}: count '{count}' is not a non-negative integer")))?;
        if count == 0 {
            return Err(Error::EmptyGrid(format!("axis '{name}' has zero points")));
        }
        if lo > hi {
            return Err(Error::EmptyGrid(format!("axis '{name}' has lo > hi")));
        }
        if count > MAX_GRID_COUNT {
            return Err(Error::Parse(format!("axis '{name}' has more than {MAX_GRID_COUNT} points")));
        }
        axes.push(GridAxis {
            name: name.to_string(),
            lo,
            hi,
            count,
        });
    }
    Ok(GridSpec { axes })
}

/// Parses `name=value[,name=value...]` into overrides of the default tolerances.
pub fn parse_tolerances(text: &str) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("'{part}' is not of the form name=value")))?;
        tol.set(name.trim(), parse_number(value, name.trim())?)?;
    }
    Ok(tol)
}

/// 17 significant digits in scientific notation; round-trips exactly.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub const SCAN_COLUMNS: [&str; 9] = [
    "f",
    "b",
    "admissible",
    "cosh2theta",
    "cos2theta_s",
    "mu2",
    "mubar2",
    "coshalpha",
    "cosbeta",
];

/// Scan table as CSV; undefined `coshalpha`/`cosbeta` are written as `nan`.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let opt = |v: Option<f64>| v.map(format_float).unwrap_or_else(|| "nan".into());
    csv_text(
        &SCAN_COLUMNS,
        rows.iter().map(|r| {
            vec![
                format_float(r.f),
                format_float(r.b),
                r.admissible.to_string(),
                format_float(r.cosh2theta),
                format_float(r.cos2theta_s),
                format_float(r.mu2),
                format_float(r.mubar2),
                opt(r.cosh_alpha),
                opt(r.cos_beta),
            ]
        }),
    )
}

pub const MESH_COLUMNS: [&str; 13] = [
    "tau", "sigma", "Y0p", "Y0", "Y1", "Y2", "X1", "X2", "X3", "X4", "P1", "P2", "P3",
];

/// Row of the surface mesh: embeddings and the stereographic image of `X`
/// from the pole `X₄ = −1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshRow {
    pub tau: f64,
    pub sigma: f64,
    pub y: [f64; 4],
    pub x: [f64; 4],
    pub p: [f64; 3],
}

impl MeshRow {
    /// `max(|Y·Y + 1|, |X·X − 1|)`.
    pub fn constraint_residual(&self) -> f64 {
        (embedding_dot::<Ads>(&self.y, &self.y) + 1.0)
            .abs()
            .max((embedding_dot::<Sphere>(&self.x, &self.x) - 1.0).abs())
    }
}

/// Samples `τ_j = 2πj/τ_steps`, `σ_k = 2πk/σ_steps`, `τ` outer.
pub fn sample_mesh(p: &SolutionParams, tau_steps: usize, sigma_steps: usize) -> Result<Vec<MeshRow>> {
    if tau_steps == 0 || sigma_steps == 0 {
        return Err(Error::EmptyGrid("mesh needs at least one step in tau and sigma".into()));
    }
    if tau_steps.saturating_mul(sigma_steps) > MAX_GRID_COUNT {
        return Err(Error::Parse(format!("mesh larger than {MAX_GRID_COUNT} rows")));
    }
    let tau_step = std::f64::consts::TAU / tau_steps as f64;
    let sigma_step = std::f64::consts::TAU / sigma_steps as f64;
    let mut rows = Vec::with_capacity(tau_steps * sigma_steps);
    for j in 0..tau_steps {
        let tau = j as f64 * tau_step;
        for k in 0..sigma_steps {
            let sigma = k as f64 * sigma_step;
            let (g, h) = p.evaluate(tau, sigma);
            let (y, x) = (g.embedding(), h.embedding());
            let d = 1.0 + x[3];
            rows.push(MeshRow {
                tau,
                sigma,
                y,
                x,
                p: [x[0] / d, x[1] / d, x[2] / d],
            });
        }
    }
    Ok(rows)
}

pub fn mesh_csv(rows: &[MeshRow]) -> String {
    csv_text(
        &MESH_COLUMNS,
        rows.iter().map(|r| {
            [r.tau, r.sigma]
                .iter()
                .chain(&r.y)
                .chain(&r.x)
                .chain(&r.p)
                .map(|v| format_float(*v))
                .collect()
        }),
    )
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    let _ = writeln!(s);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::SimpleFamilyPoint;
    use proptest::prelude::*;

    fn bridge_solution() -> SolutionParams {
        SimpleFamilyPoint::new(5.0 / 3.0, 5.0 / 4.0, 1).unwrap().solution().unwrap()
    }

    #[test]
    fn params_round_trip() {
        let p = bridge_solution();
        let q = parse_params_json(&params_to_json(&p)).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn params_errors() {
        assert!(matches!(parse_params_json("{"), Err(Error::Parse(_))));
        let mut v: serde_json::Value = serde_json::from_str(&params_to_json(&bridge_solution())).unwrap();
        v["m"] = 2.into();
        assert!(matches!(parse_params_json(&v.to_string()), Err(Error::Parity(2, 1))));
        v["m"] = (-1).into();
        v["g0"] = serde_json::json!([2.0, 0.0, 0.0, 0.0]);
        assert!(parse_params_json(&v.to_string()).is_err());
    }

    #[test]
    fn grid_examples() {
        let g = parse_grid_spec("tau=-0.5:0.5:3, sigma=0:1:1").unwrap();
        assert_eq!(g.require("tau").unwrap().values(), vec![-0.5, 0.0, 0.5]);
        assert_eq!(g.require("sigma").unwrap().values(), vec![0.0]);
        assert!(g.require("f").is_err());
        assert!(matches!(parse_grid_spec(""), Err(Error::EmptyGrid(_))));
        assert!(matches!(parse_grid_spec("f=1:2:0"), Err(Error::EmptyGrid(_))));
        assert!(matches!(parse_grid_spec("f=2:1:3"), Err(Error::EmptyGrid(_))));
        assert!(matches!(parse_grid_spec("f=1:2"), Err(Error::Parse(_))));
        assert!(matches!(parse_grid_spec("f=1:nan:2"), Err(Error::Parse(_))));
        assert!(matches!(parse_grid_spec("f=1:2:2,f=1:2:2"), Err(Error::Parse(_))));
    }

    #[test]
    fn tolerance_overrides() {
        let t = parse_tolerances("eom=1e-5, periodicity=1e-9").unwrap();
        assert_eq!(t.eom, 1e-5);
        assert_eq!(t.periodicity, 1e-9);
        assert_eq!(t.gauge, Tolerances::default().gauge);
        assert!(parse_tolerances("eom").is_err());
        assert!(parse_tolerances("nope=1").is_err());
    }

    #[test]
    fn single_mesh_row_is_initial_embedding() {
        let p = bridge_solution();
        let rows = sample_mesh(&p, 1, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].tau, rows[0].sigma), (0.0, 0.0));
        assert_eq!(rows[0].y, p.g0.embedding());
        assert_eq!(rows[0].x, p.h0.embedding());
        let csv = mesh_csv(&rows);
        assert!(csv.starts_with("tau,sigma,Y0p,Y0,Y1,Y2,X1,X2,X3,X4,P1,P2,P3\n"));
        assert_eq!(csv.lines().count(), 2);
    }

    #[test]
    fn equal_torus_radii_at_quarter_angle() {
        // cos 2θ_s = 0 at f² − bf − 1 = 0
        let b = 1.2_f64;
        let f = 0.5 * (b + (b * b + 4.0).sqrt());
        let p = SimpleFamilyPoint::new(f, b, 1).unwrap().solution().unwrap();
        for r in sample_mesh(&p, 4, 8).unwrap() {
            let inner = r.x[0].hypot(r.x[1]);
            let outer = r.x[2].hypot(r.x[3]);
            assert!((inner - outer).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_mesh_rejected() {
        assert!(matches!(sample_mesh(&bridge_solution(), 0, 4), Err(Error::EmptyGrid(_))));
    }

    #[test]
    fn scan_csv_header_and_nan() {
        let rows = crate::bridge::scan_region((1.0, 1.0, 1), (1.0, 1.0, 1), 1).unwrap();
        let csv = scan_csv(&rows);
        assert!(csv.starts_with("f,b,admissible,cosh2theta,cos2theta_s,mu2,mubar2,coshalpha,cosbeta\n"));
        assert_eq!(csv.lines().count(), 2);
    }

    proptest! {
        #[test]
        fn float_format_round_trips(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let s = format_float(x);
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }

        #[test]
        fn mesh_rows_satisfy_constraints(f_frac in 0.0f64..1.0, b in 1.0f64..2.0, n in 1i64..4) {
            let f = b + f_frac * (crate::bridge::f_max(b) - b);
            let p = SimpleFamilyPoint::new(f, b, n).unwrap().solution().unwrap();
            for r in sample_mesh(&p, 5, 7).unwrap() {
                prop_assert!(r.constraint_residual() < 1e-12);
            }
        }

        #[test]
        fn grid_parser_never_panics(s in "\\PC{0,40}") {
            let _ = parse_grid_spec(&s);
            let _ = parse_tolerances(&s);
        }
    }
}
