use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::space_form::SpaceFormFactor;
use super::tensors::MetricField;
use super::KahlerError;

pub type C64 = Complex64;

/// Product of space-form factors on a product of coordinate charts.
#[derive(Clone, Debug)]
pub struct KahlerProductPatch {
    factors: Vec<SpaceFormFactor>,
    offsets: Vec<usize>,
    dim: usize,
}

impl KahlerProductPatch {
    pub fn new(factors: Vec<SpaceFormFactor>) -> Result<Self, KahlerError> {
        if factors.is_empty() {
            return Err(KahlerError::InvalidParameter("a patch needs at least one factor".into()));
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut dim = 0;
        for f in &factors {
            offsets.push(dim);
            dim += f.dim as usize;
        }
        Ok(KahlerProductPatch { factors, offsets, dim })
    }

    pub fn factors(&self) -> &[SpaceFormFactor] {
        &self.factors
    }

    /// Total complex dimension `n`.
    pub fn total_dim(&self) -> usize {
        self.dim
    }

    /// Index of the factor owning coordinate `alpha`.
    pub fn factor_of(&self, alpha: usize) -> usize {
        self.offsets.iter().rposition(|&o| o <= alpha).expect("offsets start at 0")
    }

    pub fn factor_range(&self, i: usize) -> std::ops::Range<usize> {
        let start = self.offsets[i];
        start..start + self.factors[i].dim as usize
    }

    pub fn check_point(&self, z: &[C64]) -> Result<(), KahlerError> {
        if z.len() != self.dim {
            return Err(KahlerError::DimensionMismatch { got: z.len(), expected: self.dim });
        }
        for (i, f) in self.factors.iter().enumerate() {
            let norm = z[self.factor_range(i)].iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
            if norm >= f.patch_radius {
                return Err(KahlerError::OutsidePatch { norm, radius: f.patch_radius });
            }
        }
        Ok(())
    }

    /// Block-diagonal Hermitian metric `g_{αβ̄}` at `z`.
    pub fn metric_at(&self, z: &[C64]) -> Result<Array2<C64>, KahlerError> {
        self.check_point(z)?;
        Ok(self.metric(z))
    }

    /// Radius of the sampling ball for each factor: `min(0.5, patch_radius/2)`.
    pub fn sampling_radius(&self, factor: usize) -> f64 {
        (self.factors[factor].patch_radius / 2.0).min(0.5)
    }

    /// A point drawn uniformly from the product of the sampling balls.
    pub fn sample_point<R: Rng>(&self, rng: &mut R) -> Vec<C64> {
        let mut z = Vec::with_capacity(self.dim);
        for (i, f) in self.factors.iter().enumerate() {
            let m = f.dim as usize;
            let v: Vec<f64> = (0..2 * m).map(|_| StandardNormal.sample(rng)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let u: f64 = rng.random();
            let r = self.sampling_radius(i) * u.powf(1.0 / (2 * m) as f64);
            for k in 0..m {
                z.push(C64::new(v[2 * k], v[2 * k + 1]) * (r / norm));
            }
        }
        z
    }
}

impl MetricField for KahlerProductPatch {
    fn dim(&self) -> usize {
        self.dim
    }

    fn metric(&self, z: &[C64]) -> Array2<C64> {
        let mut g = Array2::zeros((self.dim, self.dim));
        for (i, f) in self.factors.iter().enumerate() {
            let range = self.factor_range(i);
            let block = f.potential.metric(&z[range.clone()]);
            g.slice_mut(ndarray::s![range.clone(), range]).assign(&block);
        }
        g
    }
}
