//! One-call residual report for a parameter set over a grid of worldsheet points.

use serde::{Deserialize, Serialize};

use crate::algebra::{embedding_dot, Ads, Sphere};
use crate::charges::{charges_analytic, charges_numeric, min_quadrature_points};
use crate::diff::Stencil;
use crate::error::{Error, Result};
use crate::geometry::{
    chirality_residual, eom_residual, gauge_residual, induced_metric_from_params, induced_metric_numeric,
    metric_spread, periodicity_defect,
};
use crate::solution::SolutionParams;

/// Pass thresholds of [`verify`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub eom: f64,
    pub gauge: f64,
    pub chirality: f64,
    pub metric_spread: f64,
    pub metric_gap: f64,
    pub periodicity: f64,
    pub charge_gap: f64,
    pub charge_drift: f64,
    pub relation: f64,
    pub embedding: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eom: 1e-6,
            gauge: 1e-6,
            chirality: 1e-6,
            metric_spread: 1e-8,
            metric_gap: 1e-6,
            periodicity: 1e-10,
            charge_gap: 1e-10,
            charge_drift: 1e-10,
            relation: 1e-12,
            embedding: 1e-12,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 10] = [
        "eom",
        "gauge",
        "chirality",
        "metric_spread",
        "metric_gap",
        "periodicity",
        "charge_gap",
        "charge_drift",
        "relation",
        "embedding",
    ];

    /// Sets the named tolerance.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Parse(format!("tolerance {name} must be a non-negative number")));
        }
        let slot = match name {
            "eom" => &mut self.eom,
            "gauge" => &mut self.gauge,
            "chirality" => &mut self.chirality,
            "metric_spread" => &mut self.metric_spread,
            "metric_gap" => &mut self.metric_gap,
            "periodicity" => &mut self.periodicity,
            "charge_gap" => &mut self.charge_gap,
            "charge_drift" => &mut self.charge_drift,
            "relation" => &mut self.relation,
            "embedding" => &mut self.embedding,
            _ => return Err(Error::Parse(format!("unknown tolerance '{name}'"))),
        };
        *slot = value;
        Ok(())
    }

    fn get(&self, name: &str) -> f64 {
        match name {
            "eom" => self.eom,
            "gauge" => self.gauge,
            "chirality" => self.chirality,
            "metric_spread" => self.metric_spread,
            "metric_gap" => self.metric_gap,
            "periodicity" => self.periodicity,
            "charge_gap" => self.charge_gap,
            "charge_drift" => self.charge_drift,
            "relation" => self.relation,
            _ => self.embedding,
        }
    }
}

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub points: usize,
    pub quadrature_points: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn value(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.value)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Quadrature size used for the charge comparison.
pub const CHARGE_POINTS: usize = 256;

/// Runs every residual check at the given `(τ, σ)` points.
///
/// The parameters are not required to satisfy `4λρ = mn`; its defect is one
/// of the reported residuals.
pub fn verify(p: &SolutionParams, points: &[(f64, f64)], tol: &Tolerances, st: &Stencil) -> Result<VerificationReport> {
    if points.is_empty() {
        return Err(Error::EmptyGrid("verification needs at least one (tau, sigma) point".into()));
    }
    let mut eom: f64 = 0.0;
    let mut gauge: f64 = 0.0;
    let mut chir: f64 = 0.0;
    let mut gap: f64 = 0.0;
    let mut emb: f64 = 0.0;
    let analytic = induced_metric_from_params(p);
    for &(t, s) in points {
        eom = eom.max(eom_residual(p, t, s, st).max());
        gauge = gauge.max(gauge_residual(p, t, s, st).max_abs());
        chir = chir.max(chirality_residual(p, t, s, st));
        gap = gap.max(induced_metric_numeric(p, t, s, st).max_abs_diff(&analytic));
        let (g, h) = p.evaluate(t, s);
        let (y, x) = (g.embedding(), h.embedding());
        emb = emb
            .max((embedding_dot::<Ads>(&y, &y) + 1.0).abs())
            .max((embedding_dot::<Sphere>(&x, &x) - 1.0).abs());
    }
    let quad = CHARGE_POINTS.max(min_quadrature_points(p));
    let exact = charges_analytic(p);
    let taus: Vec<f64> = {
        let mut t: Vec<f64> = points.iter().map(|q| q.0).collect();
        t.sort_by(f64::total_cmp);
        t.dedup();
        t
    };
    let mut charge_gap: f64 = 0.0;
    let mut drift: f64 = 0.0;
    let first = charges_numeric(p, taus[0], quad).charges;
    for &t in &taus {
        let q = charges_numeric(p, t, quad).charges;
        charge_gap = charge_gap.max(q.max_abs_diff(&exact));
        drift = drift.max(q.max_abs_diff(&first));
    }
    let (d, ds) = p.relation_defects();
    let relation = (d.abs() / (1.0 + (p.m * p.n).abs() as f64)).max(ds.abs() / (1.0 + (p.m_s * p.n_s).abs() as f64));
    let values = [
        ("eom", eom),
        ("gauge", gauge),
        ("chirality", chir),
        ("metric_spread", metric_spread(p, points, st)),
        ("metric_gap", gap),
        ("periodicity", periodicity_defect(p, points)),
        ("charge_gap", charge_gap),
        ("charge_drift", drift),
        ("relation", relation),
        ("embedding", emb),
    ];
    let checks: Vec<Check> = values
        .into_iter()
        .map(|(name, value)| {
            let tolerance = tol.get(name);
            Check {
                name,
                value,
                tolerance,
                pass: value <= tolerance,
            }
        })
        .collect();
    let passed = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        points: points.len(),
        quadrature_points: quad,
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{make_unchecked, SimpleFamilyPoint};

    fn grid() -> Vec<(f64, f64)> {
        let mut v = Vec::new();
        for t in [-0.5, 0.0, 0.5] {
            for s in [-1.5, -0.4, 0.7, 1.5] {
                v.push((t, s));
            }
        }
        v
    }

    #[test]
    fn family_point_passes() {
        let p = SimpleFamilyPoint::new(5.0 / 3.0, 5.0 / 4.0, 1).unwrap().solution().unwrap();
        let r = verify(&p, &grid(), &Tolerances::default(), &Stencil::default()).unwrap();
        assert!(r.passed, "{:?}", r.failures());
        assert_eq!(r.checks.len(), Tolerances::NAMES.len());
    }

    #[test]
    fn perturbed_lambda_fails_eom() {
        let mut p = SimpleFamilyPoint::new(5.0 / 3.0, 5.0 / 4.0, 2).unwrap().solution().unwrap();
        p.lambda += 1e-3;
        let p = make_unchecked(p).unwrap();
        let r = verify(&p, &grid(), &Tolerances::default(), &Stencil::default()).unwrap();
        assert!(!r.passed);
        assert!(r.value("eom").unwrap() > 1e-6);
        assert!(r.value("relation").unwrap() > 1e-12);
    }

    #[test]
    fn empty_points_rejected() {
        let p = SolutionParams::static_point();
        assert!(matches!(
            verify(&p, &[], &Tolerances::default(), &Stencil::default()),
            Err(Error::EmptyGrid(_))
        ));
    }

    #[test]
    fn tolerance_names_round_trip() {
        let mut t = Tolerances::default();
        for (k, name) in Tolerances::NAMES.iter().enumerate() {
            t.set(name, k as f64).unwrap();
            assert_eq!(t.get(name), k as f64);
        }
        assert!(t.set("bogus", 1.0).is_err());
        assert!(t.set("eom", -1.0).is_err());
    }
}
