use nalgebra::{DMatrix, SymmetricEigen};
use ndarray::{Array, Array1, Array2, Array3, Array4, Dimension};
use num_complex::Complex64;

use super::patch::{KahlerProductPatch, C64};
use super::KahlerError;

/// A Hermitian metric `g_{αβ̄}(z)` in closed form on some chart of `ℂⁿ`.
pub trait MetricField {
    fn dim(&self) -> usize;
    fn metric(&self, z: &[C64]) -> Array2<C64>;
}

/// Finite-difference steps: `metric` for derivatives of `g`, `derivative` for
/// derivatives of curvature quantities (`∇P`, `∇S`). With `extrapolate`, each
/// difference quotient is taken at `h` and `h/2` and combined by one
/// Richardson step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdSteps {
    pub metric: f64,
    pub derivative: f64,
    pub extrapolate: bool,
}

impl Default for FdSteps {
    fn default() -> Self {
        FdSteps { metric: 1e-4, derivative: 1e-3, extrapolate: false }
    }
}

impl FdSteps {
    pub fn with_metric_step(self, metric: f64) -> Self {
        FdSteps { metric, ..self }
    }
}

fn richardson_step<D: Dimension>(coarse: &Array<C64, D>, fine: &Array<C64, D>) -> Array<C64, D> {
    (fine * 4.0 - coarse) / 3.0
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// `z` moved by `h` along real coordinate `k`: `x_k` for `k < n`, else `y_{k-n}`.
fn shifted(z: &[C64], k: usize, h: f64) -> Vec<C64> {
    let n = z.len();
    let mut w = z.to_vec();
    if k < n {
        w[k] += h;
    } else {
        w[k - n] += C64::new(0.0, h);
    }
    w
}

/// `g`, `g⁻¹` and the derivatives of `g` at one point. Index order:
/// `dg[[α, β, γ]] = ∂_γ g_{αβ̄}`, `dbar_g[[α, β, δ]] = ∂_δ̄ g_{αβ̄}`,
/// `ddbar_g[[α, β, γ, δ]] = ∂_γ∂_δ̄ g_{αβ̄}`.
#[derive(Clone, Debug)]
pub struct MetricJet {
    pub g: Array2<C64>,
    /// `ginv[[σ, ρ]] = g^{ρσ̄}`, the matrix inverse of `g`.
    pub ginv: Array2<C64>,
    pub dg: Array3<C64>,
    pub dbar_g: Array3<C64>,
    pub ddbar_g: Array4<C64>,
}

pub fn metric_jet<F: MetricField + ?Sized>(field: &F, z: &[C64], h: f64) -> MetricJet {
    let n = z.len();
    let m = 2 * n;
    let g0 = field.metric(z);
    let plus: Vec<Array2<C64>> = (0..m).map(|k| field.metric(&shifted(z, k, h))).collect();
    let minus: Vec<Array2<C64>> = (0..m).map(|k| field.metric(&shifted(z, k, -h))).collect();
    let first: Vec<Array2<C64>> = (0..m).map(|k| (&plus[k] - &minus[k]) / (2.0 * h)).collect();
    let mut hess: Vec<Vec<Array2<C64>>> = vec![vec![Array2::zeros((n, n)); m]; m];
    for u in 0..m {
        hess[u][u] = (&plus[u] - &(&g0 * 2.0) + &minus[u]) / (h * h);
        for v in u + 1..m {
            let f = |su: f64, sv: f64| field.metric(&shifted(&shifted(z, u, su * h), v, sv * h));
            let d = (&(&f(1.0, 1.0) - &f(1.0, -1.0)) - &(&f(-1.0, 1.0) - &f(-1.0, -1.0))) / (4.0 * h * h);
            hess[v][u] = d.clone();
            hess[u][v] = d;
        }
    }
    let mut dg = Array3::zeros((n, n, n));
    let mut dbar_g = Array3::zeros((n, n, n));
    let mut ddbar_g = Array4::zeros((n, n, n, n));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                dg[[a, b, c]] = (first[c][[a, b]] - I * first[n + c][[a, b]]) * 0.5;
                dbar_g[[a, b, c]] = (first[c][[a, b]] + I * first[n + c][[a, b]]) * 0.5;
                for d in 0..n {
                    let re = hess[c][d][[a, b]] + hess[n + c][n + d][[a, b]];
                    let im = hess[c][n + d][[a, b]] - hess[n + c][d][[a, b]];
                    ddbar_g[[a, b, c, d]] = (re + I * im) * 0.25;
                }
            }
        }
    }
    let ginv = inverse(&g0).unwrap_or_else(|| Array2::from_elem((n, n), C64::new(f64::NAN, f64::NAN)));
    MetricJet { g: g0, ginv, dg, dbar_g, ddbar_g }
}

fn to_nalgebra(a: &Array2<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[[i, j]])
}

fn inverse(a: &Array2<C64>) -> Option<Array2<C64>> {
    let inv = to_nalgebra(a).try_inverse()?;
    Some(Array2::from_shape_fn(a.dim(), |(i, j)| inv[(i, j)]))
}

/// Condition number of a Hermitian matrix; errors unless positive definite.
fn condition_number(g: &Array2<C64>) -> Result<f64, KahlerError> {
    let eig = SymmetricEigen::new(to_nalgebra(g)).eigenvalues;
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(min > 0.0) {
        return Err(KahlerError::NotPositive);
    }
    Ok(max / min)
}

/// `R_{αβ̄γδ̄} = -∂_γ∂_δ̄ g_{αβ̄} + g^{ρσ̄} ∂_γ g_{ασ̄} ∂_δ̄ g_{ρβ̄}`.
pub fn riemann(jet: &MetricJet) -> Array4<C64> {
    let n = jet.g.nrows();
    Array4::from_shape_fn((n, n, n, n), |(a, b, c, d)| {
        let mut acc = -jet.ddbar_g[[a, b, c, d]];
        for rho in 0..n {
            for sigma in 0..n {
                acc += jet.ginv[[sigma, rho]] * jet.dg[[a, sigma, c]] * jet.dbar_g[[rho, b, d]];
            }
        }
        acc
    })
}

/// `Γ^ρ_{γα} = g^{ρσ̄} ∂_γ g_{ασ̄}`, stored as `gammas[[ρ, γ, α]]`.
fn christoffel(jet: &MetricJet) -> Array3<C64> {
    let n = jet.g.nrows();
    Array3::from_shape_fn((n, n, n), |(rho, c, a)| {
        (0..n).map(|sigma| jet.ginv[[sigma, rho]] * jet.dg[[a, sigma, c]]).sum()
    })
}

/// `Ric_{γδ̄} = g^{αβ̄} R_{αβ̄γδ̄}`.
pub fn ricci(r: &Array4<C64>, ginv: &Array2<C64>) -> Array2<C64> {
    let n = ginv.nrows();
    Array2::from_shape_fn((n, n), |(c, d)| {
        let mut acc = zero();
        for a in 0..n {
            for b in 0..n {
                acc += ginv[[b, a]] * r[[a, b, c, d]];
            }
        }
        acc
    })
}

/// Trace `g^{αβ̄} H_{αβ̄}` of a Hermitian 2-tensor.
fn trace(h: &Array2<C64>, ginv: &Array2<C64>) -> C64 {
    let n = ginv.nrows();
    let mut acc = zero();
    for a in 0..n {
        for b in 0..n {
            acc += ginv[[b, a]] * h[[a, b]];
        }
    }
    acc
}

pub fn scalar_curvature(ric: &Array2<C64>, ginv: &Array2<C64>) -> f64 {
    trace(ric, ginv).re
}

/// `P = (Ric - Scal/(2(n+1)) g) / (n+2)`.
pub fn schouten(ric: &Array2<C64>, scal: f64, g: &Array2<C64>, n: usize) -> Array2<C64> {
    let nf = n as f64;
    (ric - &(g * (scal / (2.0 * (nf + 1.0))))) / (nf + 2.0)
}

/// `S = R - P_{αβ̄}g_{γδ̄} - P_{γβ̄}g_{αδ̄} - P_{γδ̄}g_{αβ̄} - P_{αδ̄}g_{γβ̄}`.
pub fn chern_tensor(r: &Array4<C64>, p: &Array2<C64>, g: &Array2<C64>) -> Array4<C64> {
    let n = g.nrows();
    Array4::from_shape_fn((n, n, n, n), |(a, b, c, d)| {
        r[[a, b, c, d]]
            - p[[a, b]] * g[[c, d]]
            - p[[c, b]] * g[[a, d]]
            - p[[c, d]] * g[[a, b]]
            - p[[a, d]] * g[[c, b]]
    })
}

/// `g^{αβ̄} S_{αβ̄γδ̄}`.
pub fn first_pair_trace(s: &Array4<C64>, ginv: &Array2<C64>) -> Array2<C64> {
    ricci(s, ginv)
}

/// `Ric - (Scal/n) g`; the pseudo-Einstein condition needs `n >= 2`.
pub fn pseudo_einstein_residual(
    ric: &Array2<C64>,
    scal: f64,
    g: &Array2<C64>,
    n: usize,
) -> Result<Array2<C64>, KahlerError> {
    if n < 2 {
        return Err(KahlerError::InvalidParameter("pseudo-Einstein condition needs n >= 2".into()));
    }
    Ok(ric - &(g * (scal / n as f64)))
}

/// Closed-form curvature of a product of space forms:
/// `(c/2)(g_{αβ̄}g_{γδ̄} + g_{αδ̄}g_{γβ̄})` when all indices lie in one factor
/// of hsc `c`, zero otherwise.
pub fn space_form_oracle(patch: &KahlerProductPatch, g: &Array2<C64>) -> Array4<C64> {
    let n = g.nrows();
    Array4::from_shape_fn((n, n, n, n), |(a, b, c, d)| {
        let f = patch.factor_of(a);
        if [b, c, d].iter().any(|&x| patch.factor_of(x) != f) {
            return zero();
        }
        let hsc = patch.factors()[f].hsc_value();
        (g[[a, b]] * g[[c, d]] + g[[a, d]] * g[[c, b]]) * (hsc / 2.0)
    })
}

/// Richardson extrapolation of values at steps `h, h/2, h/4, …` for an error
/// expansion in even powers of `h`.
pub fn richardson(values: &[f64]) -> f64 {
    let mut row = values.to_vec();
    let mut factor = 4.0;
    while row.len() > 1 {
        row = row.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
        factor *= 4.0;
    }
    row[0]
}

pub(crate) fn max_abs<D: Dimension>(a: &Array<C64, D>) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// All curvature data at one point.
#[derive(Clone, Debug)]
pub struct PointTensors {
    pub point: Vec<C64>,
    /// `l_{αβ̄}` of the circle bundle.
    pub g: Array2<C64>,
    pub ginv: Array2<C64>,
    pub r: Array4<C64>,
    pub ric: Array2<C64>,
    pub scal: f64,
    pub p: Array2<C64>,
    pub s: Array4<C64>,
    /// `gammas[[ρ, γ, α]] = Γ^ρ_{γα}`.
    pub gammas: Array3<C64>,
    pub condition: f64,
}

impl PointTensors {
    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// `g^{αβ̄} P_{αβ̄}`.
    pub fn trace_p(&self) -> f64 {
        trace(&self.p, &self.ginv).re
    }

    /// `max |R_{αβ̄γδ̄} - R_{γβ̄αδ̄}|` and `max |R_{αβ̄γδ̄} - R_{αδ̄γβ̄}|`.
    pub fn symmetry_defects(&self) -> (f64, f64) {
        let n = self.dim();
        let (mut first, mut second) = (0.0f64, 0.0f64);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let x = self.r[[a, b, c, d]];
                        first = first.max((x - self.r[[c, b, a, d]]).norm());
                        second = second.max((x - self.r[[a, d, c, b]]).norm());
                    }
                }
            }
        }
        (first, second)
    }

    pub fn max_r(&self) -> f64 {
        max_abs(&self.r)
    }

    pub fn max_s(&self) -> f64 {
        max_abs(&self.s)
    }

    pub fn pseudo_einstein_residual(&self) -> Result<Array2<C64>, KahlerError> {
        pseudo_einstein_residual(&self.ric, self.scal, &self.g, self.dim())
    }
}

/// Metric, curvature, Ricci, scalar curvature, `P`, `S` and Christoffel
/// symbols at `z`.
pub fn curvature_at<F: MetricField + ?Sized>(field: &F, z: &[C64], steps: FdSteps) -> Result<PointTensors, KahlerError> {
    if z.len() != field.dim() {
        return Err(KahlerError::DimensionMismatch { got: z.len(), expected: field.dim() });
    }
    let jet = metric_jet(field, z, steps.metric);
    let condition = condition_number(&jet.g)?;
    if condition > 1e8 {
        return Err(KahlerError::IllConditioned(condition));
    }
    let n = z.len();
    let jet = if steps.extrapolate {
        let fine = metric_jet(field, z, steps.metric / 2.0);
        MetricJet {
            dg: richardson_step(&jet.dg, &fine.dg),
            dbar_g: richardson_step(&jet.dbar_g, &fine.dbar_g),
            ddbar_g: richardson_step(&jet.ddbar_g, &fine.ddbar_g),
            ..jet
        }
    } else {
        jet
    };
    let r = riemann(&jet);
    let ric = ricci(&r, &jet.ginv);
    let scal = scalar_curvature(&ric, &jet.ginv);
    let p = schouten(&ric, scal, &jet.g, n);
    let s = chern_tensor(&r, &p, &jet.g);
    let gammas = christoffel(&jet);
    Ok(PointTensors {
        point: z.to_vec(),
        g: jet.g,
        ginv: jet.ginv,
        r,
        ric,
        scal,
        p,
        s,
        gammas,
        condition,
    })
}

/// Third-order quantities at one point.
#[derive(Clone, Debug)]
pub struct VTensorData {
    pub tensors: PointTensors,
    /// `nabla_p[[α, β, γ]] = ∇_γ P_{αβ̄}`.
    pub nabla_p: Array3<C64>,
    pub t: Array1<C64>,
    /// `v[[α, β, γ]] = V_{αβ̄γ}`.
    pub v: Array3<C64>,
    /// `divergence[[α, β, γ]] = ∇^δ̄ S_{αβ̄γδ̄}`.
    pub divergence: Array3<C64>,
}

impl VTensorData {
    /// `max |∇^δ̄ S_{αβ̄γδ̄} + n i V_{αβ̄γ}|`.
    pub fn identity_residual(&self) -> f64 {
        let n = self.tensors.dim() as f64;
        max_abs(&(&self.divergence + &(&self.v * (I * n))))
    }
}

/// `T_α = ∇_α P / (n+2)` and
/// `V_{αβ̄γ} = i∇_γP_{αβ̄} - iT_γ g_{αβ̄} - 2iT_α g_{γβ̄}` (torsion-free case),
/// plus the divergence of `S`.
pub fn v_tensor_at<F: MetricField + ?Sized>(field: &F, z: &[C64], steps: FdSteps) -> Result<VTensorData, KahlerError> {
    let center = curvature_at(field, z, steps)?;
    let n = z.len();
    let quotients = |h: f64| -> Result<_, KahlerError> {
        let mut dp = Vec::with_capacity(2 * n);
        let mut ds = Vec::with_capacity(2 * n);
        let mut dtr = Vec::with_capacity(2 * n);
        for k in 0..2 * n {
            let plus = curvature_at(field, &shifted(z, k, h), steps)?;
            let minus = curvature_at(field, &shifted(z, k, -h), steps)?;
            dp.push((&plus.p - &minus.p) / (2.0 * h));
            ds.push((&plus.s - &minus.s) / (2.0 * h));
            dtr.push((plus.trace_p() - minus.trace_p()) / (2.0 * h));
        }
        Ok((dp, ds, dtr))
    };
    let (mut dp, mut ds, mut dtr) = quotients(steps.derivative)?;
    if steps.extrapolate {
        let (fp, fs, ftr) = quotients(steps.derivative / 2.0)?;
        dp = dp.iter().zip(&fp).map(|(c, f)| richardson_step(c, f)).collect();
        ds = ds.iter().zip(&fs).map(|(c, f)| richardson_step(c, f)).collect();
        dtr = dtr.iter().zip(&ftr).map(|(c, f)| (4.0 * f - c) / 3.0).collect();
    }
    let holo = |k: usize| (k, n + k);
    let gam = &center.gammas;
    let nabla_p = Array3::from_shape_fn((n, n, n), |(a, b, c)| {
        let (x, y) = holo(c);
        let mut acc = (dp[x][[a, b]] - I * dp[y][[a, b]]) * 0.5;
        for rho in 0..n {
            acc -= gam[[rho, c, a]] * center.p[[rho, b]];
        }
        acc
    });
    let nf = n as f64;
    let t = Array1::from_shape_fn(n, |a| C64::new(dtr[a], -dtr[n + a]) * 0.5 / (nf + 2.0));
    let g = &center.g;
    let v = Array3::from_shape_fn((n, n, n), |(a, b, c)| {
        I * nabla_p[[a, b, c]] - I * t[c] * g[[a, b]] - I * 2.0 * t[a] * g[[c, b]]
    });
    let s = &center.s;
    let divergence = Array3::from_shape_fn((n, n, n), |(a, b, c)| {
        let mut acc = zero();
        for rho in 0..n {
            let (x, y) = holo(rho);
            for d in 0..n {
                let mut nabla = (ds[x][[a, b, c, d]] - I * ds[y][[a, b, c, d]]) * 0.5;
                for kappa in 0..n {
                    nabla -= gam[[kappa, rho, a]] * s[[kappa, b, c, d]];
                    nabla -= gam[[kappa, rho, c]] * s[[a, b, kappa, d]];
                }
                acc += center.ginv[[d, rho]] * nabla;
            }
        }
        acc
    });
    Ok(VTensorData { tensors: center, nabla_p, t, v, divergence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kahler::SpaceFormFactor;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn patch(spec: &[(u32, i64, i64)]) -> KahlerProductPatch {
        KahlerProductPatch::new(
            spec.iter()
                .map(|&(d, p, q)| SpaceFormFactor::new(d, BigRational::new(p.into(), q.into())).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn oracle_error(p: &KahlerProductPatch, t: &PointTensors) -> f64 {
        let o = space_form_oracle(p, &t.g);
        max_abs(&(&t.r - &o)) / max_abs(&o)
    }

    #[test]
    fn richardson_removes_quadratic_error() {
        let f = |h: f64| 1.0 + 3.0 * h * h;
        assert!((richardson(&[f(0.1), f(0.05)]) - 1.0).abs() < 1e-14);
        let g = |h: f64| 2.0 + h * h + h.powi(4);
        assert!((richardson(&[g(0.1), g(0.05), g(0.025)]) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn single_factor_matches_space_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for spec in [(1, 1, 1), (1, -1, 1), (2, 1, 1), (2, -1, 1), (3, -2, 3)] {
            let p = patch(&[spec]);
            for _ in 0..10 {
                let z = p.sample_point(&mut rng);
                let t = curvature_at(&p, &z, FdSteps::default()).unwrap();
                assert!(oracle_error(&p, &t) < 1e-6, "{spec:?}");
            }
        }
    }

    #[test]
    fn genus_two_factor_is_einstein_with_constant_minus_one() {
        let p = patch(&[(1, -1, 1)]);
        assert_eq!(p.factors()[0].einstein_constant(), -1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let z = p.sample_point(&mut rng);
            let t = curvature_at(&p, &z, FdSteps::default()).unwrap();
            assert!(max_abs(&(&t.ric + &t.g)) < 1e-6);
        }
    }

    #[test]
    fn einstein_schouten() {
        // Ric = λg on a single factor gives P = λ/(2(n+1)) g.
        let p = patch(&[(2, 1, 1)]);
        let lam = p.factors()[0].einstein_constant();
        let z = vec![C64::new(0.1, 0.2), C64::new(-0.3, 0.05)];
        let t = curvature_at(&p, &z, FdSteps::default()).unwrap();
        assert!(max_abs(&(&t.p - &(&t.g * (lam / 6.0)))) < 1e-6);
        assert!(max_abs(&t.pseudo_einstein_residual().unwrap()) < 1e-6);
    }

    #[test]
    fn zero_curvature_gives_zero_schouten() {
        let r = Array4::zeros((2, 2, 2, 2));
        let g = Array2::eye(2).mapv(|x: f64| C64::new(x, 0.0));
        let ric = ricci(&r, &g);
        let p = schouten(&ric, scalar_curvature(&ric, &g), &g, 2);
        assert_eq!(max_abs(&p), 0.0);
        assert!(pseudo_einstein_residual(&ric, 0.0, &g, 1).is_err());
    }

    #[test]
    fn bochner_flat_pairs_and_control() {
        let flat = patch(&[(1, 1, 1), (1, -1, 1)]);
        let bad = patch(&[(1, 1, 1), (1, 1, 1)]);
        let z = vec![C64::new(0.2, -0.1), C64::new(0.05, 0.3)];
        let tf = curvature_at(&flat, &z, FdSteps::default()).unwrap();
        let tb = curvature_at(&bad, &z, FdSteps::default()).unwrap();
        assert!(tf.max_s() < 1e-6, "{}", tf.max_s());
        assert!(tb.max_s() > 1e-2, "{}", tb.max_s());
        let pe = tf.pseudo_einstein_residual().unwrap();
        assert!(max_abs(&pe) > 0.1);
    }

    #[test]
    fn v_tensor_vanishes_on_products() {
        let p = patch(&[(1, 1, 1), (2, -1, 1)]);
        let z = vec![C64::new(0.1, 0.1), C64::new(-0.2, 0.0), C64::new(0.0, 0.15)];
        let v = v_tensor_at(&p, &z, FdSteps::default()).unwrap();
        assert!(max_abs(&v.v) < 1e-4);
        assert!(max_abs(&v.t) < 1e-4);
        assert!(v.identity_residual() < 1e-3);
    }

    #[test]
    fn divergence_identity_on_a_non_product_metric() {
        // A radial non-space-form potential φ = |z|² + 0.3|z|⁴ exercises the
        // identity with both sides nonzero.
        struct Quartic;
        impl MetricField for Quartic {
            fn dim(&self) -> usize {
                2
            }
            fn metric(&self, z: &[C64]) -> Array2<C64> {
                let r2: f64 = z.iter().map(|w| w.norm_sqr()).sum();
                Array2::from_shape_fn((2, 2), |(a, b)| {
                    let delta = if a == b { 1.0 + 0.6 * r2 } else { 0.0 };
                    C64::new(delta, 0.0) + z[a].conj() * z[b] * 0.6
                })
            }
        }
        let z = vec![C64::new(0.3, -0.2), C64::new(0.1, 0.25)];
        let v = v_tensor_at(&Quartic, &z, FdSteps::default()).unwrap();
        assert!(max_abs(&v.divergence) > 1e-2);
        assert!(v.identity_residual() < 1e-3 * max_abs(&v.divergence).max(1.0), "{}", v.identity_residual());
    }

    #[test]
    fn symmetries_and_traces_at_random_points() {
        let p = patch(&[(2, 1, 1), (2, -1, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let z = p.sample_point(&mut rng);
            let t = curvature_at(&p, &z, FdSteps::default()).unwrap();
            let (s1, s2) = t.symmetry_defects();
            let bound = 1e-6 * (1.0 + t.max_r());
            assert!(s1 <= bound && s2 <= bound);
            assert!((t.trace_p() - t.scal / 10.0).abs() < 1e-9);
            assert!(max_abs(&first_pair_trace(&t.s, &t.ginv)) <= bound);
        }
    }

    #[test]
    fn diagonal_unitary_rotation_preserves_invariants() {
        let p = patch(&[(2, 1, 1), (1, -1, 1)]);
        let z = vec![C64::new(0.2, 0.1), C64::new(-0.1, 0.3), C64::new(0.25, -0.05)];
        let phases = [0.7, -1.3, 2.1];
        let w: Vec<C64> = z.iter().zip(phases).map(|(x, th)| x * C64::from_polar(1.0, th)).collect();
        // Plain differences at the default steps carry noise near 1e-8.
        let steps = FdSteps { metric: 5e-3, derivative: 2e-2, extrapolate: true };
        let a = v_tensor_at(&p, &z, steps).unwrap();
        let b = v_tensor_at(&p, &w, steps).unwrap();
        assert!((a.tensors.scal - b.tensors.scal).abs() < 1e-8);
        assert!((a.tensors.max_s() - b.tensors.max_s()).abs() < 1e-8);
        assert!((max_abs(&a.v) - max_abs(&b.v)).abs() < 1e-8);
    }

    #[test]
    fn second_order_convergence() {
        let p = patch(&[(1, -1, 1)]);
        let z = vec![C64::new(0.3, 0.2)];
        let err = |h: f64| {
            let t = curvature_at(&p, &z, FdSteps::default().with_metric_step(h)).unwrap();
            max_abs(&(&t.r - &space_form_oracle(&p, &t.g)))
        };
        let ratio = err(0.02) / err(0.01);
        assert!((3.5..=4.5).contains(&ratio), "{ratio}");
    }
}
