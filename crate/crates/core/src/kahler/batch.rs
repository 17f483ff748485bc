//! Seeded batches of point evaluations and the scenario file format.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::report::CheckReport;

use super::patch::{KahlerProductPatch, C64};
use super::space_form::SpaceFormFactor;
use super::tensors::{first_pair_trace, max_abs, space_form_oracle, v_tensor_at, curvature_at, FdSteps};
use super::KahlerError;

/// One factor of a scenario: complex dimension and hsc as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub dim: u32,
    pub hsc: String,
}

impl FactorSpec {
    pub fn new(dim: u32, hsc: &BigRational) -> Self {
        FactorSpec { dim, hsc: hsc.to_string() }
    }

    pub fn hsc_value(&self) -> Result<BigRational, KahlerError> {
        let text = self.hsc.trim();
        let text = text.strip_prefix('+').unwrap_or(text);
        let value = BigRational::from_str(text)
            .map_err(|_| KahlerError::Scenario(format!("hsc `{}` is not a rational p/q", self.hsc)))?;
        if value.is_zero() {
            return Err(KahlerError::Scenario("hsc must be nonzero".into()));
        }
        Ok(value)
    }

    pub fn label(&self) -> String {
        let text = self.hsc.trim();
        if text.starts_with('-') || text.starts_with('+') {
            format!("{}:{}", self.dim, text)
        } else {
            format!("{}:+{}", self.dim, text)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative error of `R` against the space-form closed form.
    pub curvature_oracle: f64,
    /// Cross-factor components of `R`.
    pub cross_factor: f64,
    /// Symmetry defects of `R`.
    pub symmetry: f64,
    /// `|P_α^α - Scal/(2(n+1))|`.
    pub trace: f64,
    /// First-pair trace of `S`.
    pub first_pair_trace: f64,
    /// `|S|∞` for Bochner-flat products.
    pub chern_tensor: f64,
    /// `|V|∞` and `|T|∞`.
    pub v_tensor: f64,
    /// Divergence identity residual and both of its sides.
    pub divergence: f64,
    pub convergence_min: f64,
    pub convergence_max: f64,
    /// Controls must have `|S|∞ > control_ratio · min |hsc|`.
    pub control_ratio: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            curvature_oracle: 1e-6,
            cross_factor: 1e-8,
            symmetry: 1e-6,
            trace: 1e-9,
            first_pair_trace: 1e-6,
            chern_tensor: 1e-6,
            v_tensor: 1e-4,
            divergence: 1e-3,
            convergence_min: 3.5,
            convergence_max: 4.5,
            control_ratio: 1e-2,
        }
    }
}

fn default_samples() -> usize {
    10
}

fn default_true() -> bool {
    true
}

/// Scenario file: `{"factors": [{"dim": d, "hsc": "p/q"}], "samples": N,
/// "seed": s, "tolerances": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub factors: Vec<FactorSpec>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// `false` turns the run into a negative control: `|S|∞` must be large.
    #[serde(default = "default_true")]
    pub expect_flat: bool,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, KahlerError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| KahlerError::Scenario(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), KahlerError> {
        if self.factors.is_empty() {
            return Err(KahlerError::Scenario("`factors` must not be empty".into()));
        }
        if self.samples == 0 {
            return Err(KahlerError::Scenario("`samples` must be positive".into()));
        }
        for f in &self.factors {
            if f.dim == 0 {
                return Err(KahlerError::Scenario("factor `dim` must be positive".into()));
            }
            f.hsc_value()?;
        }
        Ok(())
    }

    pub fn to_batch(&self) -> Result<BochnerBatch, KahlerError> {
        self.validate()?;
        let factors = self
            .factors
            .iter()
            .map(|f| Ok((f.dim, f.hsc_value()?)))
            .collect::<Result<Vec<_>, KahlerError>>()?;
        let mut batch = BochnerBatch::new(&factors, self.samples, self.seed)?;
        batch.tolerances = self.tolerances;
        batch.expect_flat = self.expect_flat;
        Ok(batch)
    }
}

/// Per-point maxima.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    /// `[re, im]` per coordinate.
    pub point: Vec<[f64; 2]>,
    pub max_s: f64,
    pub curvature_oracle_error: f64,
    pub cross_factor: f64,
    pub symmetry_defect: f64,
    pub trace_error: f64,
    pub first_pair_trace: f64,
    pub max_v: f64,
    pub max_t: f64,
    pub max_divergence: f64,
    pub divergence_residual: f64,
    pub max_r: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pseudo_einstein: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct BatchOutcome {
    pub report: CheckReport,
    pub points: Vec<PointSummary>,
    /// Error ratio under step halving, one per factor.
    pub convergence: Vec<f64>,
}

/// The tensor suite on seeded sample points of a product patch.
#[derive(Clone, Debug)]
pub struct BochnerBatch {
    pub patch: KahlerProductPatch,
    pub specs: Vec<FactorSpec>,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub steps: FdSteps,
    pub expect_flat: bool,
}

impl BochnerBatch {
    pub fn new(factors: &[(u32, BigRational)], samples: usize, seed: u64) -> Result<Self, KahlerError> {
        let patch = KahlerProductPatch::new(
            factors
                .iter()
                .map(|(d, c)| SpaceFormFactor::new(*d, c.clone()))
                .collect::<Result<_, _>>()?,
        )?;
        Ok(BochnerBatch {
            patch,
            specs: factors.iter().map(|(d, c)| FactorSpec::new(*d, c)).collect(),
            samples,
            seed,
            tolerances: Tolerances::default(),
            steps: FdSteps::default(),
            expect_flat: true,
        })
    }

    pub fn label(&self) -> String {
        self.specs.iter().map(FactorSpec::label).collect::<Vec<_>>().join(" x ")
    }

    fn summarize(&self, z: &[C64]) -> Result<PointSummary, KahlerError> {
        let data = v_tensor_at(&self.patch, z, self.steps)?;
        let t = &data.tensors;
        let n = t.dim();
        let oracle = space_form_oracle(&self.patch, &t.g);
        let diff = &t.r - &oracle;
        let mut cross = 0.0f64;
        for ((a, b, c, d), x) in t.r.indexed_iter() {
            let f = self.patch.factor_of(a);
            if [b, c, d].iter().any(|&y| self.patch.factor_of(y) != f) {
                cross = cross.max(x.norm());
            }
        }
        let (s1, s2) = t.symmetry_defects();
        Ok(PointSummary {
            point: z.iter().map(|w| [w.re, w.im]).collect(),
            max_s: t.max_s(),
            curvature_oracle_error: max_abs(&diff) / max_abs(&oracle),
            cross_factor: cross,
            symmetry_defect: s1.max(s2),
            trace_error: (t.trace_p() - t.scal / (2.0 * (n as f64 + 1.0))).abs(),
            first_pair_trace: max_abs(&first_pair_trace(&t.s, &t.ginv)),
            max_v: max_abs(&data.v),
            max_t: max_abs(&data.t),
            max_divergence: max_abs(&data.divergence),
            divergence_residual: data.identity_residual(),
            max_r: t.max_r(),
            pseudo_einstein: t.pseudo_einstein_residual().ok().map(|r| max_abs(&r)),
        })
    }

    /// Error ratio of the curvature against the closed form when the metric
    /// step goes from `0.02` to `0.01`, for each factor on its own chart.
    fn convergence(&self, z: &[C64]) -> Result<Vec<f64>, KahlerError> {
        let mut out = Vec::new();
        for (i, f) in self.patch.factors().iter().enumerate() {
            let single = KahlerProductPatch::new(vec![f.clone()])?;
            let w = &z[self.patch.factor_range(i)];
            let err = |h: f64| -> Result<f64, KahlerError> {
                let t = curvature_at(&single, w, FdSteps { metric: h, extrapolate: false, ..self.steps })?;
                Ok(max_abs(&(&t.r - &space_form_oracle(&single, &t.g))))
            };
            out.push(err(0.02)? / err(0.01)?);
        }
        Ok(out)
    }

    pub fn run(&self) -> Result<BatchOutcome, KahlerError> {
        let tol = self.tolerances;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let points: Vec<PointSummary> = (0..self.samples)
            .map(|_| {
                let z = self.patch.sample_point(&mut rng);
                self.summarize(&z)
            })
            .collect::<Result<_, _>>()?;
        let first: Vec<C64> = points[0].point.iter().map(|p| C64::new(p[0], p[1])).collect();
        let convergence = self.convergence(&first)?;

        let name = if self.expect_flat { "bochner-flat" } else { "bochner-control" };
        let mut report = CheckReport::new(name)
            .param("factors", self.label())
            .param("samples", self.samples)
            .param("seed", self.seed);
        let max = |f: fn(&PointSummary) -> f64| points.iter().map(f).fold(0.0, f64::max);

        report.numeric_residual("max relative |R - space-form R|", max(|p| p.curvature_oracle_error), tol.curvature_oracle);
        report.numeric_residual("max cross-factor |R|", max(|p| p.cross_factor), tol.cross_factor);
        report.numeric_residual("max R symmetry defect", max(|p| p.symmetry_defect), tol.symmetry);
        report.numeric_residual("max |P_a^a - Scal/(2(n+1))|", max(|p| p.trace_error), tol.trace);
        report.numeric_residual("max |l^{ab} S_{abcd}|", max(|p| p.first_pair_trace), tol.first_pair_trace);
        report.numeric_residual("max |V|", max(|p| p.max_v), tol.v_tensor);
        report.numeric_residual("max |T|", max(|p| p.max_t), tol.v_tensor);
        report.numeric_residual("max |div S + n i V|", max(|p| p.divergence_residual), tol.divergence);
        let max_s = max(|p| p.max_s);
        if self.expect_flat {
            report.numeric_residual("max |S|", max_s, tol.chern_tensor);
            report.numeric_residual("max |div S|", max(|p| p.max_divergence), tol.divergence);
        } else {
            let min_c = self
                .patch
                .factors()
                .iter()
                .map(|f| f.hsc.abs().to_f64().unwrap_or(0.0))
                .fold(f64::INFINITY, f64::min);
            report.numeric_lower_bound("max |S|", max_s, tol.control_ratio * min_c);
        }
        let lo = convergence.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = convergence.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        report.witness("convergence ratios", json!(convergence));
        report.check_that(
            format!("finite-difference error ratio under step halving in [{}, {}]", tol.convergence_min, tol.convergence_max),
            lo >= tol.convergence_min && hi <= tol.convergence_max,
        );
        report.witness("calibration", json!(self.patch.factors().iter().map(|f| json!({
            "dim": f.dim,
            "hsc": f.hsc.to_string(),
            "a": f.potential.a,
            "b": f.potential.b,
            "residual": f.calibration.residual,
        })).collect::<Vec<_>>()));
        report.witness("points", serde_json::to_value(&points).expect("plain data"));
        Ok(BatchOutcome { report, points, convergence })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn scenario_parsing() {
        let s = Scenario::from_json(r#"{"factors":[{"dim":1,"hsc":"1"},{"dim":1,"hsc":"-1"}],"samples":3,"seed":4}"#)
            .unwrap();
        assert_eq!(s.tolerances, Tolerances::default());
        assert!(s.expect_flat);
        assert!(Scenario::from_json(r#"{"factors":[]}"#).is_err());
        assert!(Scenario::from_json(r#"{"factors":[{"dim":1,"hsc":"0"}]}"#).is_err());
        assert!(Scenario::from_json(r#"{"factors":[{"dim":1,"hsc":"x"}]}"#).is_err());
        assert!(Scenario::from_json(r#"{"factors":[{"dim":1,"hsc":"1"}],"bogus":1}"#).is_err());
        assert!(Scenario::from_json(r#"{"factors":[{"dim":1,"hsc":"1"}],"tolerances":{"nope":1}}"#).is_err());
        assert_eq!(FactorSpec { dim: 2, hsc: "+2/3".into() }.hsc_value().unwrap(), q(2, 3));
    }

    #[test]
    fn flat_pair_passes_and_control_is_detected() {
        let out = BochnerBatch::new(&[(1, q(1, 1)), (1, q(-1, 1))], 3, 1).unwrap().run().unwrap();
        assert!(out.report.passed(), "{:#?}", out.report);
        let mut control = BochnerBatch::new(&[(1, q(1, 1)), (1, q(1, 1))], 3, 1).unwrap();
        assert!(!control.run().unwrap().report.passed());
        control.expect_flat = false;
        assert!(control.run().unwrap().report.passed());
    }

    #[test]
    fn deterministic_given_seed() {
        let b = BochnerBatch::new(&[(1, q(2, 3)), (2, q(-2, 3))], 2, 42).unwrap();
        assert_eq!(b.run().unwrap().points, b.run().unwrap().points);
        assert_eq!(b.label(), "1:+2/3 x 2:-2/3");
    }
}
