use std::sync::Mutex;
use std::thread;

use num_rational::BigRational;
use serde_json::Value;

use crate::chern::{
    check_integral_counterexample, check_nonzero_first_chern, check_nonzero_second_chern, check_spherical_family,
    check_stein_fillable_violation, tractor_determinant_check, SphericalFamily,
};
use crate::kahler::BochnerBatch;
use crate::report::CheckReport;

use super::CliError;

/// Largest `n` accepted by the exact targets.
pub const N_CAP: u32 = 12;
/// Largest `n` accepted by the tractor target; the determinant expansion is
/// exponential in `n`.
pub const TRACTOR_N_CAP: u32 = 8;
pub const DEFAULT_N_MAX: u32 = 6;

/// CLI targets. The names follow the numbering of the published results;
/// [`Target::id`] is the stable internal key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    FirstChern,
    Spherical,
    IntegralCounterexample,
    SecondChern,
    SteinFillable,
    Tractor,
    BochnerProducts,
    All,
}

const TARGETS: [(&str, Target); 8] = [
    ("thm-1-1", Target::FirstChern),
    ("thm-1-2-formal", Target::Spherical),
    ("prop-1-3", Target::IntegralCounterexample),
    ("prop-4-1", Target::SecondChern),
    ("prop-1-4", Target::SteinFillable),
    ("tractor", Target::Tractor),
    ("bochner-products", Target::BochnerProducts),
    ("all", Target::All),
];

impl Target {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        TARGETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).ok_or_else(|| {
            let known: Vec<&str> = TARGETS.iter().map(|(n, _)| *n).collect();
            CliError::Usage(format!("unknown target `{name}` (expected one of {})", known.join(", ")))
        })
    }

    pub fn cli_name(self) -> &'static str {
        TARGETS.iter().find(|(_, t)| *t == self).map(|(n, _)| *n).expect("every target is listed")
    }

    pub fn id(self) -> &'static str {
        match self {
            Target::FirstChern => "nonzero-first-chern",
            Target::Spherical => "spherical-constraint",
            Target::IntegralCounterexample => "integral-counterexample",
            Target::SecondChern => "nonzero-second-chern",
            Target::SteinFillable => "stein-fillable-violation",
            Target::Tractor => "tractor-determinant",
            Target::BochnerProducts => "bochner-flat",
            Target::All => "all",
        }
    }

    fn accepts(self, flag: &str) -> bool {
        use Target::*;
        match flag {
            "n" => !matches!(self, BochnerProducts | All),
            "n-max" => self != BochnerProducts,
            "d" => matches!(self, Spherical | IntegralCounterexample),
            "m" => self == SteinFillable,
            "samples" | "tol" => matches!(self, BochnerProducts | All),
            _ => true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyParams {
    pub n: Option<u32>,
    pub d: Option<u32>,
    pub m: Option<u32>,
    pub n_max: Option<u32>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub seed: u64,
}

impl VerifyParams {
    fn given(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        for (flag, set) in [
            ("n", self.n.is_some()),
            ("d", self.d.is_some()),
            ("m", self.m.is_some()),
            ("n-max", self.n_max.is_some()),
            ("samples", self.samples.is_some()),
            ("tol", self.tol.is_some()),
        ] {
            if set {
                v.push(flag);
            }
        }
        v
    }
}

type JobFn = Box<dyn FnOnce() -> Result<CheckReport, String> + Send>;

/// A check to run, with the id and params used if it errors out.
pub struct Job {
    check: &'static str,
    params: Vec<(&'static str, Value)>,
    run: JobFn,
}

impl Job {
    pub fn new<E: ToString>(
        check: &'static str,
        params: Vec<(&'static str, Value)>,
        f: impl FnOnce() -> Result<CheckReport, E> + Send + 'static,
    ) -> Self {
        Job { check, params, run: Box::new(move || f().map_err(|e| e.to_string())) }
    }

    fn execute(self) -> CheckReport {
        match (self.run)() {
            Ok(r) => r,
            Err(e) => {
                let mut r = CheckReport::new(self.check);
                for (k, v) in self.params {
                    r = r.param(k, v);
                }
                r.check_that("completed without error", false);
                r.witness("error", e);
                r
            }
        }
    }
}

fn range_check(flag: &str, value: u32, lo: u32, hi: u32) -> Result<(), CliError> {
    if value < lo || value > hi {
        return Err(CliError::Usage(format!("--{flag} {value} is out of range {lo}..={hi}")));
    }
    Ok(())
}

/// `n` values for a target: `--n` alone, or `lo..=n_max`.
fn n_values(p: &VerifyParams, lo: u32, hi: u32) -> Result<Vec<u32>, CliError> {
    match p.n {
        Some(n) => {
            range_check("n", n, lo, hi)?;
            Ok(vec![n])
        }
        None => {
            let n_max = p.n_max.unwrap_or(DEFAULT_N_MAX).min(hi);
            Ok((lo..=n_max).collect())
        }
    }
}

fn is_prime(d: u32) -> bool {
    d >= 2 && (2..d).take_while(|k| k * k <= d).all(|k| !d.is_multiple_of(k))
}

/// Builds the jobs for `target`; rejects flags the target does not use and
/// parameters out of range.
pub fn plan(target: Target, p: &VerifyParams) -> Result<Vec<Job>, CliError> {
    for flag in p.given() {
        if !target.accepts(flag) {
            return Err(CliError::Usage(format!("--{flag} does not apply to target `{}`", target.cli_name())));
        }
    }
    if p.n.is_some() && p.n_max.is_some() {
        return Err(CliError::Usage("--n and --n-max are mutually exclusive".into()));
    }
    if let Some(n_max) = p.n_max {
        range_check("n-max", n_max, 1, N_CAP)?;
    }
    if let Some(s) = p.samples {
        if s == 0 {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
    }
    if let Some(t) = p.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage("--tol must be a positive number".into()));
        }
    }
    let mut jobs = Vec::new();
    match target {
        Target::FirstChern => {
            for n in n_values(p, 2, N_CAP)? {
                jobs.push(Job::new(target.id(), vec![("n", n.into())], move || check_nonzero_first_chern(n)));
            }
        }
        Target::Spherical => {
            let ds = match p.d {
                Some(d) => {
                    range_check("d", d, 1, 1000)?;
                    vec![d]
                }
                None => (1..=5).collect(),
            };
            for n in n_values(p, 2, N_CAP)? {
                let mut families = vec![SphericalFamily::SurfaceProduct];
                families.extend(ds.iter().map(|&d| SphericalFamily::ProjectiveSpace { d }));
                if n >= 4 {
                    families.push(SphericalFamily::FppProduct);
                }
                for f in families {
                    let params = vec![("model", f.name().into()), ("n", n.into())];
                    jobs.push(Job::new(target.id(), params, move || check_spherical_family(f, n)));
                }
            }
        }
        Target::IntegralCounterexample => {
            for n in n_values(p, 2, N_CAP)? {
                let ds = match p.d {
                    Some(d) => {
                        range_check("d", d, 1, 1000)?;
                        vec![d]
                    }
                    None => (2..=13).filter(|&d| (d > n + 1 && is_prime(d)) || (n + 1) % d == 0).collect(),
                };
                for d in ds {
                    let params = vec![("d", d.into()), ("n", n.into())];
                    jobs.push(Job::new(target.id(), params, move || check_integral_counterexample(n, d)));
                }
            }
        }
        Target::SecondChern => {
            for n in n_values(p, 4, N_CAP)? {
                jobs.push(Job::new(target.id(), vec![("n", n.into())], move || check_nonzero_second_chern(n)));
            }
        }
        Target::SteinFillable => {
            let cases: Vec<(u32, bool)> = match (p.n, p.m) {
                (Some(_), Some(_)) => return Err(CliError::Usage("give --n or --m, not both".into())),
                (Some(n), None) => {
                    range_check("n", n, 3, N_CAP)?;
                    vec![(n / 2 + n % 2, n % 2 == 0)]
                }
                (None, Some(m)) => {
                    range_check("m", m, 2, N_CAP / 2)?;
                    vec![(m, false), (m, true)]
                }
                (None, None) => {
                    let n_max = p.n_max.unwrap_or(8);
                    (2..=4)
                        .map(|m| (m, false))
                        .chain((2..=3).map(|m| (m, true)))
                        .filter(|&(m, even)| p.n_max.is_none() || if even { 2 * m } else { 2 * m - 1 } <= n_max)
                        .collect()
                }
            };
            for (m, even) in cases {
                let params = vec![("m", m.into()), ("parity", if even { "even" } else { "odd" }.into())];
                jobs.push(Job::new(target.id(), params, move || check_stein_fillable_violation(m, even)));
            }
        }
        Target::Tractor => {
            let seed = p.seed;
            for n in n_values(p, 1, TRACTOR_N_CAP)? {
                jobs.push(Job::new(target.id(), vec![("n", n.into())], move || tractor_determinant_check(n, seed)));
            }
        }
        Target::BochnerProducts => {
            let pairs: [((u32, i64), (u32, i64), bool); 4] = [
                ((1, 1), (1, -1), true),
                ((1, 1), (2, -1), true),
                ((2, 1), (2, -1), true),
                ((1, 1), (1, 1), false),
            ];
            let samples = p.samples.unwrap_or(10);
            for (a, b, flat) in pairs {
                let (seed, tol) = (p.seed, p.tol);
                let check = if flat { "bochner-flat" } else { "bochner-control" };
                let params = vec![("factors", format!("{}:{:+} x {}:{:+}", a.0, a.1, b.0, b.1).into())];
                jobs.push(Job::new(check, params, move || {
                    let factors = [(a.0, BigRational::from_integer(a.1.into())), (b.0, BigRational::from_integer(b.1.into()))];
                    let mut batch = BochnerBatch::new(&factors, samples, seed)?;
                    batch.expect_flat = flat;
                    if let Some(t) = tol {
                        batch.tolerances.chern_tensor = t;
                    }
                    batch.run().map(|o| o.report)
                }));
            }
        }
        Target::All => {
            for t in TARGETS.iter().map(|(_, t)| *t).filter(|t| *t != Target::All) {
                let sub = VerifyParams {
                    n_max: if t.accepts("n-max") { p.n_max } else { None },
                    samples: if t.accepts("samples") { p.samples } else { None },
                    tol: if t.accepts("tol") { p.tol } else { None },
                    ..VerifyParams { seed: p.seed, ..Default::default() }
                };
                jobs.extend(plan(t, &sub)?);
            }
        }
    }
    if jobs.is_empty() {
        return Err(CliError::Usage(format!("no checks selected for target `{}`", target.cli_name())));
    }
    Ok(jobs)
}

/// Runs independent jobs on a small worker pool. Result order is arbitrary;
/// callers sort.
pub fn execute(jobs: Vec<Job>) -> Vec<CheckReport> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len()).max(1);
    let queue = Mutex::new(jobs);
    let results = Mutex::new(Vec::new());
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let job = queue.lock().expect("queue lock").pop();
                match job {
                    Some(j) => {
                        let r = j.execute();
                        results.lock().expect("results lock").push(r);
                    }
                    None => break,
                }
            });
        }
    });
    results.into_inner().expect("results lock")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> VerifyParams {
        VerifyParams::default()
    }

    #[test]
    fn target_names_round_trip() {
        for (name, t) in TARGETS {
            assert_eq!(Target::parse(name).unwrap(), t);
            assert_eq!(t.cli_name(), name);
        }
        assert!(Target::parse("thm-9-9").is_err());
    }

    #[test]
    fn default_plans() {
        assert_eq!(plan(Target::FirstChern, &params()).unwrap().len(), 5);
        // (surface + 5 projective) for n = 2..6, plus FPP for n = 4..6.
        assert_eq!(plan(Target::Spherical, &params()).unwrap().len(), 5 * 6 + 3);
        assert_eq!(plan(Target::SteinFillable, &params()).unwrap().len(), 5);
        assert_eq!(plan(Target::BochnerProducts, &params()).unwrap().len(), 4);
        let p = VerifyParams { n: Some(2), ..params() };
        // Primes 5, 7, 11, 13 and the divisor 3 of n+1.
        assert_eq!(plan(Target::IntegralCounterexample, &p).unwrap().len(), 5);
    }

    #[test]
    fn flag_validation() {
        let bad = [
            (Target::FirstChern, VerifyParams { d: Some(3), ..params() }),
            (Target::FirstChern, VerifyParams { n: Some(1), ..params() }),
            (Target::SecondChern, VerifyParams { n: Some(3), ..params() }),
            (Target::IntegralCounterexample, VerifyParams { d: Some(0), ..params() }),
            (Target::Tractor, VerifyParams { n: Some(2), n_max: Some(4), ..params() }),
            (Target::BochnerProducts, VerifyParams { samples: Some(0), ..params() }),
            (Target::BochnerProducts, VerifyParams { tol: Some(-1.0), ..params() }),
            (Target::SecondChern, VerifyParams { n_max: Some(3), ..params() }),
            (Target::All, VerifyParams { n: Some(3), ..params() }),
        ];
        for (t, p) in bad {
            assert!(matches!(plan(t, &p), Err(CliError::Usage(_))), "{t:?} {p:?}");
        }
    }

    #[test]
    fn failing_job_becomes_failed_report() {
        let job = Job::new("x", vec![("n", 1.into())], || Err::<CheckReport, _>("boom"));
        let r = execute(vec![job]);
        assert_eq!(r.len(), 1);
        assert!(!r[0].passed());
        assert_eq!(r[0].params["n"], 1);
    }
}
