use ndarray::Array2;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::patch::C64;
use super::tensors::{metric_jet, richardson, riemann, MetricField};
use super::KahlerError;

/// `φ(z) = (a/c) log(1 + (c/b)|z|²)` on `ℂ^dim`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Potential {
    pub dim: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Potential {
    /// `g_{αβ̄} = AB [δ_{αβ}/(1+Br²) - B z̄_α z_β/(1+Br²)²]`, `A = a/c`, `B = c/b`.
    pub fn metric(&self, z: &[C64]) -> Array2<C64> {
        let m = z.len();
        let aa = self.a / self.c;
        let bb = self.c / self.b;
        let q = 1.0 + bb * z.iter().map(|w| w.norm_sqr()).sum::<f64>();
        Array2::from_shape_fn((m, m), |(i, j)| {
            let delta = if i == j { 1.0 / q } else { 0.0 };
            (C64::new(delta, 0.0) - z[i].conj() * z[j] * (bb / (q * q))) * (aa * bb)
        })
    }

    /// The chart is `1 + (c/b)|z|² > 0`.
    pub fn patch_radius(&self) -> f64 {
        if self.c > 0.0 {
            f64::INFINITY
        } else {
            (self.b / -self.c).sqrt()
        }
    }
}

impl MetricField for Potential {
    fn dim(&self) -> usize {
        self.dim as usize
    }

    fn metric(&self, z: &[C64]) -> Array2<C64> {
        Potential::metric(self, z)
    }
}

/// Holomorphic sectional curvature of `φ` at `0` in the direction `∂/∂z₁`,
/// from finite differences at three step sizes combined by Richardson
/// extrapolation.
pub fn measure_hsc(potential: &Potential) -> f64 {
    let z = vec![C64::new(0.0, 0.0); potential.dim as usize];
    let scale = (potential.c / potential.b).abs().sqrt().max(1.0);
    let h0 = 0.01 / scale;
    let values: Vec<f64> = [h0, h0 / 2.0, h0 / 4.0]
        .iter()
        .map(|&h| {
            let jet = metric_jet(potential, &z, h);
            let r = riemann(&jet);
            r[[0, 0, 0, 0]].re / jet.g[[0, 0]].re.powi(2)
        })
        .collect();
    richardson(&values)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Calibration {
    pub potential: Potential,
    /// hsc measured for `a = b = 1`.
    pub raw_hsc: f64,
    /// hsc measured after calibration.
    pub measured_hsc: f64,
    /// `|measured - target| / |target|`.
    pub residual: f64,
}

/// Fixes `a` and `b` so that the measured hsc at the origin is `hsc` and
/// `g(0)` is the identity.
///
/// With `a = b = 1` the measured curvature is a positive multiple of `c`; a
/// nonpositive ratio means the curvature convention has the wrong sign.
pub fn calibrate_space_form(dim: u32, hsc: f64) -> Result<Calibration, KahlerError> {
    if dim == 0 {
        return Err(KahlerError::ZeroDimension);
    }
    if hsc == 0.0 || !hsc.is_finite() {
        return Err(KahlerError::ZeroCurvature);
    }
    let raw = Potential { dim, a: 1.0, b: 1.0, c: hsc };
    let raw_hsc = measure_hsc(&raw);
    let ratio = raw_hsc / hsc;
    if !(ratio > 0.0) {
        return Err(KahlerError::ConventionError { measured: raw_hsc, target: hsc });
    }
    let potential = Potential { dim, a: ratio, b: ratio, c: hsc };
    let measured_hsc = measure_hsc(&potential);
    let residual = (measured_hsc - hsc).abs() / hsc.abs();
    if residual > 1e-10 {
        return Err(KahlerError::Calibration(residual));
    }
    Ok(Calibration { potential, raw_hsc, measured_hsc, residual })
}

/// A complex space form of constant holomorphic sectional curvature `hsc`,
/// calibrated on its standard chart.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceFormFactor {
    pub dim: u32,
    pub hsc: BigRational,
    pub patch_radius: f64,
    pub potential: Potential,
    pub calibration: Calibration,
}

impl SpaceFormFactor {
    pub fn new(dim: u32, hsc: BigRational) -> Result<Self, KahlerError> {
        if hsc.is_zero() {
            return Err(KahlerError::ZeroCurvature);
        }
        let value = hsc.to_f64().ok_or(KahlerError::ZeroCurvature)?;
        let calibration = calibrate_space_form(dim, value)?;
        Ok(SpaceFormFactor {
            dim,
            patch_radius: calibration.potential.patch_radius(),
            potential: calibration.potential,
            calibration,
            hsc,
        })
    }

    pub fn hsc_value(&self) -> f64 {
        self.potential.c
    }

    pub fn is_negative(&self) -> bool {
        self.hsc.is_negative()
    }

    /// Einstein constant `hsc·(dim+1)/2`.
    pub fn einstein_constant(&self) -> f64 {
        self.hsc_value() * f64::from(self.dim + 1) / 2.0
    }
}
