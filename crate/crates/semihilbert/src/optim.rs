//! Extremization on the complex Euclidean unit sphere: multistart projected
//! gradient with renormalization retraction and Armijo backtracking, plus a
//! brute-force sampling oracle.
//!
//! Objectives are real-valued and phase-invariant; gradients are supplied
//! analytically in Wirtinger form (derivative with respect to conjugated
//! coordinates), so convergence checks are meaningful.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::estimate::{InfEstimate, Method, SupEstimate};
use crate::matrix::{inner, normalize, vec_norm, CMatrix};

/// Multistart budget and convergence thresholds.
#[derive(Clone, Copy, Debug)]
pub struct OptConfig {
    pub starts: usize,
    pub max_iter: usize,
    pub grad_tol: f64,
    pub step_init: f64,
    pub backtrack_factor: f64,
    pub max_backtracks: usize,
    pub seed: u64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self {
            starts: 32,
            max_iter: 500,
            grad_tol: 1e-9,
            step_init: 1.0,
            backtrack_factor: 0.5,
            max_backtracks: 30,
            seed: 0,
        }
    }
}

impl OptConfig {
    /// Budget-multiplied copy used when a comparison needs to be re-checked
    /// before flagging a violation.
    pub fn escalated(&self, factor: usize) -> Self {
        Self {
            starts: self.starts * factor,
            max_iter: self.max_iter * 2,
            seed: self.seed.wrapping_add(0x9e37_79b9),
            ..*self
        }
    }
}

/// A real objective on the unit sphere of ℂ^dim together with its Wirtinger
/// gradient.
pub struct SphereObjective {
    dim: usize,
    eval: Box<dyn Fn(&[Complex64]) -> f64>,
    grad: Box<dyn Fn(&[Complex64]) -> Vec<Complex64>>,
}

impl SphereObjective {
    pub fn new(
        dim: usize,
        eval: impl Fn(&[Complex64]) -> f64 + 'static,
        grad: impl Fn(&[Complex64]) -> Vec<Complex64> + 'static,
    ) -> Self {
        Self { dim, eval: Box::new(eval), grad: Box::new(grad) }
    }

    /// f(y) = Σ_k  α |y* M_k y|² + β ‖M_k y‖².
    ///
    /// Wirtinger gradient per member: α (conj(c) M y + c M* y) + β M* M y
    /// with c = y* M y.
    pub fn mixed_quadratic(alpha: f64, beta: f64, mats: Vec<CMatrix>) -> Self {
        let dim = mats.first().map_or(0, CMatrix::rows);
        let adjoints: Vec<CMatrix> = mats.iter().map(CMatrix::conj_transpose).collect();
        let mats2 = mats.clone();
        let eval = move |y: &[Complex64]| -> f64 {
            let mut acc = 0.0;
            for m in &mats2 {
                let my = m.matvec(y);
                if alpha != 0.0 {
                    acc += alpha * inner(&my, y).norm_sqr();
                }
                if beta != 0.0 {
                    acc += beta * my.iter().map(|z| z.norm_sqr()).sum::<f64>();
                }
            }
            acc
        };
        let grad = move |y: &[Complex64]| -> Vec<Complex64> {
            let mut g = vec![Complex64::ZERO; y.len()];
            for (m, madj) in mats.iter().zip(&adjoints) {
                let my = m.matvec(y);
                if alpha != 0.0 {
                    let c = inner(&my, y);
                    let mady = madj.matvec(y);
                    for i in 0..y.len() {
                        g[i] += alpha * (c.conj() * my[i] + c * mady[i]);
                    }
                }
                if beta != 0.0 {
                    let mm = madj.matvec(&my);
                    for i in 0..y.len() {
                        g[i] += beta * mm[i];
                    }
                }
            }
            g
        };
        Self::new(dim, eval, grad)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, y: &[Complex64]) -> f64 {
        (self.eval)(y)
    }

    pub fn gradient(&self, y: &[Complex64]) -> Vec<Complex64> {
        (self.grad)(y)
    }

    /// Gradient projected onto the tangent space at unit y.
    pub fn tangent_gradient(&self, y: &[Complex64]) -> Vec<Complex64> {
        let g = self.gradient(y);
        project_tangent(&g, y)
    }
}

fn project_tangent(g: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    let radial = inner(g, y).re;
    g.iter().zip(y).map(|(gi, yi)| gi - yi * radial).collect()
}

/// Deterministic complex Gaussian unit vector (Box-Muller on the seeded
/// stream).
pub(crate) fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| {
                let (a, b) = gaussian_pair(rng);
                Complex64::new(a, b)
            })
            .collect();
        if normalize(&mut v) {
            return v;
        }
    }
}

pub(crate) fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let phi = std::f64::consts::TAU * u2;
    (r * phi.cos(), r * phi.sin())
}

enum Goal {
    Maximize,
    Minimize,
}

fn extremize(
    obj: &SphereObjective,
    cfg: &OptConfig,
    seeds: &[Vec<Complex64>],
    goal: Goal,
) -> Result<(f64, Vec<Complex64>, f64)> {
    let dim = obj.dim();
    if dim == 0 {
        return Err(Error::DimensionMismatch("objective dimension is zero".into()));
    }
    let sign = match goal {
        Goal::Maximize => 1.0,
        Goal::Minimize => -1.0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut starts: Vec<Vec<Complex64>> = Vec::with_capacity(seeds.len() + cfg.starts);
    for s in seeds {
        let mut v = s.clone();
        if v.len() == dim && normalize(&mut v) {
            starts.push(v);
        }
    }
    for _ in 0..cfg.starts.max(1) {
        starts.push(random_unit(&mut rng, dim));
    }

    let mut best_val = f64::NEG_INFINITY;
    let mut best_vec: Vec<Complex64> = Vec::new();
    for start in &starts {
        let (v, y) = ascend(obj, cfg, start, sign)?;
        if v > best_val {
            best_val = v;
            best_vec = y;
        }
    }
    let value = sign * best_val;
    if !value.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = 1e-12 * (1.0 + value.abs());
    Ok((value, best_vec, residual))
}

/// Projected gradient ascent of sign·f from one start; returns (sign·f, y).
fn ascend(
    obj: &SphereObjective,
    cfg: &OptConfig,
    start: &[Complex64],
    sign: f64,
) -> Result<(f64, Vec<Complex64>)> {
    let mut y = start.to_vec();
    let mut f = sign * obj.value(&y);
    if !f.is_finite() {
        return Err(Error::NonFinite);
    }
    for _ in 0..cfg.max_iter {
        let mut t = obj.tangent_gradient(&y);
        if sign < 0.0 {
            for z in &mut t {
                *z = -*z;
            }
        }
        let gn = vec_norm(&t);
        if gn <= cfg.grad_tol * (1.0 + f.abs()) {
            break;
        }
        let mut step = cfg.step_init;
        let mut improved = false;
        for _ in 0..cfg.max_backtracks {
            let mut cand: Vec<Complex64> =
                y.iter().zip(&t).map(|(a, b)| a + b * step).collect();
            if !normalize(&mut cand) {
                step *= cfg.backtrack_factor;
                continue;
            }
            let fc = sign * obj.value(&cand);
            if !fc.is_finite() {
                return Err(Error::NonFinite);
            }
            if fc >= f + 1e-4 * step * gn * gn {
                y = cand;
                f = fc;
                improved = true;
                break;
            }
            step *= cfg.backtrack_factor;
        }
        if !improved {
            break;
        }
    }
    Ok((f, y))
}

/// Best value over all starts; the certificate attains it, so the result is
/// a certified lower bound of the supremum.
pub fn sphere_maximize(
    obj: &SphereObjective,
    cfg: &OptConfig,
    seeds: &[Vec<Complex64>],
) -> Result<SupEstimate> {
    let (value, cert, residual) = extremize(obj, cfg, seeds, Goal::Maximize)?;
    Ok(SupEstimate {
        value,
        certificate: Some(cert),
        method: Method::SphereOpt,
        lower_bound: true,
        residual,
    })
}

/// Descent counterpart; the result is a certified upper bound of the
/// infimum.
pub fn sphere_minimize(
    obj: &SphereObjective,
    cfg: &OptConfig,
    seeds: &[Vec<Complex64>],
) -> Result<InfEstimate> {
    let (value, cert, residual) = extremize(obj, cfg, seeds, Goal::Minimize)?;
    Ok(InfEstimate {
        value,
        certificate: Some(cert),
        method: Method::SphereOpt,
        upper_bound: true,
        residual,
    })
}

/// Extremes of the objective over `samples` random unit vectors; interior
/// sampling, so `lo` and `hi` bracket nothing — they are reachable values.
pub fn brute_force_extremum(
    obj: &SphereObjective,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for _ in 0..samples.max(1) {
        let y = random_unit(&mut rng, obj.dim());
        let v = obj.value(&y);
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

/// Best `count` sample vectors by objective value (descending for
/// maximization, ascending for minimization); used to warm-start escalated
/// re-checks.
pub fn brute_force_top_vectors(
    obj: &SphereObjective,
    samples: usize,
    seed: u64,
    count: usize,
    maximize: bool,
) -> Result<Vec<Vec<Complex64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranked: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(count + 1);
    for _ in 0..samples.max(1) {
        let y = random_unit(&mut rng, obj.dim());
        let v = obj.value(&y);
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let key = if maximize { -v } else { v };
        ranked.push((key, y));
        ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
        ranked.truncate(count);
    }
    Ok(ranked.into_iter().map(|(_, y)| y).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_form(d: &[f64]) -> SphereObjective {
        let m = CMatrix::diag(
            &d.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>(),
        );
        SphereObjective::mixed_quadratic(0.0, 1.0, vec![m])
    }

    #[test]
    fn quadratic_form_maximum_is_top_eigenvalue() {
        let obj = diag_form(&[3.0, 1.0]);
        let est = sphere_maximize(&obj, &OptConfig::default(), &[]).unwrap();
        assert!((est.value - 9.0).abs() < 1e-8, "value {}", est.value);
        let y = est.certificate.unwrap();
        assert!((y[0].norm() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn quadratic_form_minimum_is_bottom_eigenvalue() {
        let obj = diag_form(&[3.0, 1.0]);
        let est = sphere_minimize(&obj, &OptConfig::default(), &[]).unwrap();
        assert!((est.value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn nilpotent_abs_form_max_quarter() {
        // |y* N y|² with N = [[0,1],[0,0]] reduces to t(1−t) on t = |y₂|².
        let n = CMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let obj = SphereObjective::mixed_quadratic(1.0, 0.0, vec![n]);
        let est = sphere_maximize(&obj, &OptConfig::default(), &[]).unwrap();
        assert!((est.value - 0.25).abs() < 1e-8);
    }

    #[test]
    fn indefinite_form_min_cancels() {
        let d = CMatrix::diag(&[Complex64::ONE, -Complex64::ONE]);
        let obj = SphereObjective::mixed_quadratic(1.0, 0.0, vec![d]);
        let est = sphere_minimize(&obj, &OptConfig::default(), &[]).unwrap();
        assert!(est.value.abs() < 1e-10);
    }

    #[test]
    fn constant_objective() {
        let obj = SphereObjective::new(3, |_| 1.0, |y| vec![Complex64::ZERO; y.len()]);
        let est = sphere_maximize(&obj, &OptConfig::default(), &[]).unwrap();
        assert_eq!(est.value, 1.0);
        assert!((vec_norm(&est.certificate.unwrap()) - 1.0).abs() < 1e-12);
        let (lo, hi) = brute_force_extremum(&obj, 100, 1).unwrap();
        assert_eq!((lo, hi), (1.0, 1.0));
    }

    #[test]
    fn brute_force_norm_objective() {
        let obj = SphereObjective::new(4, |y| vec_norm(y).powi(2), |y| y.to_vec());
        let (lo, hi) = brute_force_extremum(&obj, 1000, 3).unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_interior_to_certified_extrema() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let m = CMatrix::from_fn(3, 3, |_, _| {
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let obj = SphereObjective::mixed_quadratic(0.7, 0.3, vec![m]);
        let cfg = OptConfig::default();
        let hi = sphere_maximize(&obj, &cfg, &[]).unwrap().value;
        let lo = sphere_minimize(&obj, &cfg, &[]).unwrap().value;
        let (blo, bhi) = brute_force_extremum(&obj, 20_000, 5).unwrap();
        assert!(bhi <= hi + 1e-12);
        assert!(blo >= lo - 1e-12);
    }

    #[test]
    fn psd_form_minimum_matches_eigensolver() {
        use crate::eig::hermitian_eig;
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let b = CMatrix::from_fn(3, 3, |_, _| {
                Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            });
            let gram = &b.conj_transpose() * &b;
            let lam_min = hermitian_eig(&gram, 1e-10).unwrap().eigenvalues[0];
            let obj = SphereObjective::mixed_quadratic(0.0, 1.0, vec![b]);
            let est = sphere_minimize(&obj, &OptConfig::default(), &[]).unwrap();
            assert!((est.value - lam_min).abs() < 1e-8);
        }
    }

    #[test]
    fn wirtinger_gradient_matches_finite_differences() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..6 {
            let m = CMatrix::from_fn(4, 4, |_, _| {
                Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            });
            let obj = SphereObjective::mixed_quadratic(1.3, 0.4, vec![m]);
            let y = random_unit(&mut rng, 4);
            let g = obj.tangent_gradient(&y);
            for _ in 0..8 {
                let v = project_tangent(&random_unit(&mut rng, 4), &y);
                let h = 1e-6;
                let eval_at = |s: f64| {
                    let mut p: Vec<Complex64> =
                        y.iter().zip(&v).map(|(a, b)| a + b * s).collect();
                    normalize(&mut p);
                    obj.value(&p)
                };
                let fd = (eval_at(h) - eval_at(-h)) / (2.0 * h);
                let analytic = 2.0 * inner(&g, &v).re;
                let denom = analytic.abs().max(fd.abs()).max(1e-8);
                assert!(
                    (fd - analytic).abs() / denom < 1e-5,
                    "fd {fd} vs analytic {analytic}"
                );
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let m = CMatrix::from_fn(3, 3, |_, _| {
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let obj = SphereObjective::mixed_quadratic(1.0, 1.0, vec![m.clone()]);
        let obj2 = SphereObjective::mixed_quadratic(1.0, 1.0, vec![m]);
        let cfg = OptConfig { seed: 99, ..OptConfig::default() };
        let a = sphere_maximize(&obj, &cfg, &[]).unwrap();
        let b = sphere_maximize(&obj2, &cfg, &[]).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.certificate.unwrap(), b.certificate.unwrap());
    }

    #[test]
    fn non_finite_objective_is_an_error() {
        let obj = SphereObjective::new(2, |_| f64::NAN, |y| vec![Complex64::ZERO; y.len()]);
        assert!(matches!(
            sphere_maximize(&obj, &OptConfig::default(), &[]),
            Err(Error::NonFinite)
        ));
    }
}
