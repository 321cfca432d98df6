//! Norms and radii of operators and operator tuples relative to the weight:
//! the A-operator seminorm, A-numerical radius, joint operator norm,
//! Euclidean operator radius, joint Crawford number, joint minimum modulus,
//! and the two-parameter (α,β) seminorm blending squared numerical-radius
//! terms with squared norm terms.
//!
//! Everything runs in reduced coordinates y = A^{1/2} x, where the A-unit
//! sphere becomes the Euclidean unit sphere of range(A). Suprema may be
//! taken over the full ambient sphere (components orthogonal to range(A)
//! only lower the objectives); infima are restricted to range(A).

use num_complex::Complex64;

use crate::eig::{hermitian_eig, spectral_norm};
use crate::error::{Error, Result};
use crate::estimate::{InfEstimate, Method, SupEstimate};
use crate::matrix::CMatrix;
use crate::numrange::{classical_numrad, SweepConfig};
use crate::optim::{
    brute_force_top_vectors, sphere_maximize, sphere_minimize, OptConfig, SphereObjective,
};
use crate::space::{OpTuple, SpaceA};

/// Weights of the blended seminorm; (0, 0) is excluded by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeminormParams {
    alpha: f64,
    beta: f64,
}

impl SeminormParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams("alpha and beta must be finite".into()));
        }
        if alpha < 0.0 || beta < 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must be nonnegative, got ({alpha}, {beta})"
            )));
        }
        if alpha == 0.0 && beta == 0.0 {
            return Err(Error::InvalidParams("(alpha, beta) = (0, 0) is excluded".into()));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Shared configuration for the radii computations.
#[derive(Clone, Copy, Debug)]
pub struct RadiiConfig {
    pub opt: OptConfig,
    pub sweep: SweepConfig,
    /// Tolerance of the A-boundedness gate.
    pub bounded_tol: f64,
    /// When nonzero, optimizer runs are augmented with the best vectors from
    /// this many brute-force samples (used by escalated re-checks).
    pub bf_augment: usize,
}

impl Default for RadiiConfig {
    fn default() -> Self {
        Self {
            opt: OptConfig::default(),
            sweep: SweepConfig::default(),
            bounded_tol: crate::space::DEFAULT_CLASSIFY_TOL,
            bf_augment: 0,
        }
    }
}

impl RadiiConfig {
    /// 4× multistart budget plus brute-force augmentation; applied before a
    /// failed comparison may be declared a violation candidate.
    pub fn escalated(&self) -> Self {
        Self {
            opt: self.opt.escalated(4),
            bf_augment: self.bf_augment.max(200_000),
            ..*self
        }
    }
}

fn reduced_members(space: &SpaceA, t: &OpTuple, cfg: &RadiiConfig) -> Result<Vec<CMatrix>> {
    for m in t.iter() {
        if !space.is_a_bounded(m, cfg.bounded_tol)? {
            return Err(Error::NotABounded);
        }
    }
    t.iter().map(|m| space.reduce(m)).collect()
}

fn zero_estimate(dim: usize) -> SupEstimate {
    let mut e = vec![Complex64::ZERO; dim.max(1)];
    e[0] = Complex64::ONE;
    SupEstimate::exact(0.0, Some(e), Method::EigenExact)
}

/// Σ_k M_k* M_k of the reduced members.
fn gram_sum(reduced: &[CMatrix]) -> CMatrix {
    let d = reduced[0].rows();
    let mut g = CMatrix::zeros(d, d);
    for m in reduced {
        g = &g + &(&m.conj_transpose() * m);
    }
    g
}

/// Warm starts for the sphere optimizer: leading eigenvectors of the Gram
/// sum and of the Hermitian/anti-Hermitian parts of the first members.
fn seed_vectors(reduced: &[CMatrix]) -> Vec<Vec<Complex64>> {
    let d = reduced[0].rows();
    let mut seeds = Vec::with_capacity(8);
    if let Ok(eig) = hermitian_eig(&gram_sum(reduced), 1e-6) {
        seeds.push(eig.eigenvectors.column(d - 1));
        if d > 1 {
            seeds.push(eig.eigenvectors.column(d - 2));
        }
    }
    for m in reduced.iter().take(3) {
        if let Ok(e) = hermitian_eig(&m.hermitian_part(), 1e-6) {
            seeds.push(e.eigenvectors.column(d - 1));
        }
        let anti = m.scaled(Complex64::I).hermitian_part();
        if let Ok(e) = hermitian_eig(&anti, 1e-6) {
            seeds.push(e.eigenvectors.column(d - 1));
        }
        if seeds.len() >= 8 {
            break;
        }
    }
    seeds.truncate(8);
    seeds
}

fn maximize_with_augment(
    obj: &SphereObjective,
    cfg: &RadiiConfig,
    mut seeds: Vec<Vec<Complex64>>,
) -> Result<SupEstimate> {
    if cfg.bf_augment > 0 {
        let extra = brute_force_top_vectors(
            obj,
            cfg.bf_augment,
            cfg.opt.seed.wrapping_add(1),
            4,
            true,
        )?;
        seeds.extend(extra);
    }
    sphere_maximize(obj, &cfg.opt, &seeds)
}

/// A-operator seminorm ‖T‖_A = sup_{‖x‖_A=1} ‖Tx‖_A, computed exactly as the
/// spectral norm of the compression.
pub fn op_seminorm(space: &SpaceA, t: &CMatrix, cfg: &RadiiConfig) -> Result<SupEstimate> {
    if !space.is_a_bounded(t, cfg.bounded_tol)? {
        return Err(Error::NotABounded);
    }
    if space.is_zero_weight() {
        return Ok(zero_estimate(space.dim()));
    }
    let red = space.reduce(t)?;
    let gram = &red.conj_transpose() * &red;
    let eig = hermitian_eig(&gram, 1e-8)?;
    let d = space.dim();
    let top = eig.eigenvalues[d - 1].max(0.0);
    Ok(SupEstimate::exact(
        top.sqrt(),
        Some(eig.eigenvectors.column(d - 1)),
        Method::EigenExact,
    ))
}

/// A-numerical radius ω_A(T) = sup_{‖x‖_A=1} |⟨Tx, x⟩_A| via the θ-sweep on
/// the compression.
pub fn numerical_radius(space: &SpaceA, t: &CMatrix, cfg: &RadiiConfig) -> Result<SupEstimate> {
    if !space.is_a_bounded(t, cfg.bounded_tol)? {
        return Err(Error::NotABounded);
    }
    if space.is_zero_weight() {
        return Ok(zero_estimate(space.dim()));
    }
    classical_numrad(&space.reduce(t)?, &cfg.sweep)
}

/// Joint operator norm ‖T‖_A = sup (Σ‖T_k x‖_A²)^{1/2} = λ_max(ΣT̃_k*T̃_k)^{1/2}.
pub fn joint_op_norm(space: &SpaceA, t: &OpTuple, cfg: &RadiiConfig) -> Result<SupEstimate> {
    let reduced = reduced_members(space, t, cfg)?;
    if space.is_zero_weight() {
        return Ok(zero_estimate(space.dim()));
    }
    let eig = hermitian_eig(&gram_sum(&reduced), 1e-8)?;
    let d = space.dim();
    let top = eig.eigenvalues[d - 1].max(0.0);
    Ok(SupEstimate::exact(
        top.sqrt(),
        Some(eig.eigenvectors.column(d - 1)),
        Method::EigenExact,
    ))
}

/// Euclidean operator radius ω_A(T) = sup (Σ|⟨T_k x, x⟩_A|²)^{1/2}.
///
/// For n = 1 this is the numerical radius and is handled by the θ-sweep.
/// For n ≥ 2 the supremum is found by multistart sphere optimization,
/// strengthened by a dual polish: at the best point the optimal unit
/// combination λ of the members is known in closed form, and the θ-sweep on
/// Σ λ_k T̃_k yields a certified candidate that can only improve the value.
pub fn euclidean_radius(space: &SpaceA, t: &OpTuple, cfg: &RadiiConfig) -> Result<SupEstimate> {
    let reduced = reduced_members(space, t, cfg)?;
    if space.is_zero_weight() {
        return Ok(zero_estimate(space.dim()));
    }
    if t.len() == 1 {
        return classical_numrad(&reduced[0], &cfg.sweep);
    }

    let obj = SphereObjective::mixed_quadratic(1.0, 0.0, reduced.clone());
    let mut best = maximize_with_augment(&obj, cfg, seed_vectors(&reduced))?;

    // Dual polish rounds.
    let polish_cfg = OptConfig { starts: 1, ..cfg.opt };
    for _ in 0..2 {
        let y = match &best.certificate {
            Some(y) => y.clone(),
            None => break,
        };
        let coeffs: Vec<Complex64> = reduced
            .iter()
            .map(|m| crate::matrix::inner(&m.matvec(&y), &y))
            .collect();
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        let mut combo = CMatrix::zeros(space.dim(), space.dim());
        for (c, m) in coeffs.iter().zip(&reduced) {
            combo = &combo + &m.scaled(c.conj() / norm);
        }
        let sweep_est = classical_numrad(&combo, &cfg.sweep)?;
        let candidate = match sweep_est.certificate {
            Some(c) => c,
            None => break,
        };
        let polished = sphere_maximize(&obj, &polish_cfg, &[candidate])?;
        if polished.value > best.value {
            best = polished;
        } else {
            break;
        }
    }

    Ok(SupEstimate {
        value: best.value.max(0.0).sqrt(),
        certificate: best.certificate,
        method: Method::SphereOpt,
        lower_bound: true,
        residual: 1e-12 * (1.0 + best.value.abs().sqrt()),
    })
}

fn compressed_members(space: &SpaceA, reduced: &[CMatrix]) -> Vec<CMatrix> {
    let basis = space.range_basis();
    let basis_adj = basis.conj_transpose();
    reduced.iter().map(|m| &(&basis_adj * m) * &basis).collect()
}

/// Joint Crawford number c_A(T) = inf (Σ|⟨T_k x, x⟩_A|²)^{1/2} over A-unit x,
/// minimized over the unit sphere of range(A) in reduced coordinates.
pub fn joint_crawford(space: &SpaceA, t: &OpTuple, cfg: &RadiiConfig) -> Result<InfEstimate> {
    let reduced = reduced_members(space, t, cfg)?;
    if space.rank() == 0 {
        return Err(Error::ZeroWeight);
    }
    let compressed = compressed_members(space, &reduced);
    let r = space.rank();
    let obj = SphereObjective::mixed_quadratic(1.0, 0.0, compressed.clone());

    let mut seeds: Vec<Vec<Complex64>> = Vec::new();
    if let Ok(eig) = hermitian_eig(&gram_sum(&compressed), 1e-6) {
        seeds.push(eig.eigenvectors.column(0));
    }
    for m in compressed.iter().take(3) {
        if let Ok(e) = hermitian_eig(&m.hermitian_part(), 1e-6) {
            seeds.push(e.eigenvectors.column(0));
            // A mid-spectrum direction often sits near the cancellation set.
            seeds.push(e.eigenvectors.column(r / 2));
        }
    }
    if cfg.bf_augment > 0 {
        seeds.extend(brute_force_top_vectors(
            &obj,
            cfg.bf_augment,
            cfg.opt.seed.wrapping_add(2),
            4,
            false,
        )?);
    }
    let est = sphere_minimize(&obj, &cfg.opt, &seeds)?;

    let basis = space.range_basis();
    let cert = est.certificate.as_ref().map(|z| basis.matvec(z));
    Ok(InfEstimate {
        value: est.value.max(0.0).sqrt(),
        certificate: cert,
        method: Method::SphereOpt,
        upper_bound: true,
        residual: 1e-12 * (1.0 + est.value.abs().sqrt()),
    })
}

/// Joint minimum modulus m_A(T) = inf (Σ⟨T_k^♯ T_k x, x⟩_A)^{1/2}: the
/// smallest eigenvalue of the reduced Gram sum on range(A) — a quadratic
/// form, so no nonconvexity.
pub fn joint_min_modulus(space: &SpaceA, t: &OpTuple, cfg: &RadiiConfig) -> Result<InfEstimate> {
    let reduced = reduced_members(space, t, cfg)?;
    if space.rank() == 0 {
        return Err(Error::ZeroWeight);
    }
    let compressed = compressed_members(space, &reduced);
    let eig = hermitian_eig(&gram_sum(&compressed), 1e-8)?;
    let low = eig.eigenvalues[0].max(0.0);
    let basis = space.range_basis();
    let cert = basis.matvec(&eig.eigenvectors.column(0));
    Ok(InfEstimate::exact(low.sqrt(), Some(cert), Method::EigenExact))
}

/// The (α,β) seminorm
/// ‖T‖_{A_{α,β}} = sup (Σ_k α|⟨T_k x, x⟩_A|² + β‖T_k x‖_A²)^{1/2}.
///
/// Scaling law: parameters (cα, cβ) multiply the value by √c, so the pure
/// edges dispatch to the exact routines: α = 0 gives √β·‖T‖_A and β = 0
/// gives √α·ω_A(T).
pub fn alpha_beta_seminorm(
    space: &SpaceA,
    t: &OpTuple,
    params: &SeminormParams,
    cfg: &RadiiConfig,
) -> Result<SupEstimate> {
    let (alpha, beta) = (params.alpha(), params.beta());
    if alpha == 0.0 {
        return Ok(joint_op_norm(space, t, cfg)?.scaled(beta.sqrt()));
    }
    if beta == 0.0 {
        return Ok(euclidean_radius(space, t, cfg)?.scaled(alpha.sqrt()));
    }

    let reduced = reduced_members(space, t, cfg)?;
    if space.is_zero_weight() {
        return Ok(zero_estimate(space.dim()));
    }
    let obj = SphereObjective::mixed_quadratic(alpha, beta, reduced.clone());
    let best = maximize_with_augment(&obj, cfg, seed_vectors(&reduced))?;
    Ok(SupEstimate {
        value: best.value.max(0.0).sqrt(),
        certificate: best.certificate,
        method: Method::SphereOpt,
        lower_bound: true,
        residual: 1e-12 * (1.0 + best.value.abs().sqrt()),
    })
}
