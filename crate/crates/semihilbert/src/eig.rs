//! Hermitian eigendecomposition by cyclic Jacobi rotations, plus the
//! spectral primitives built on it: spectral norm and the positive
//! semidefinite functional calculus (square root, Moore-Penrose
//! pseudoinverse, range projector).
//!
//! Jacobi is quadratically convergent and foolproof for Hermitian input;
//! at the dimensions this crate targets (≤ 64) it beats the bookkeeping
//! cost of anything fancier.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Per-sweep stopping threshold relative to ‖M‖_F.
const OFF_DIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Full spectral decomposition of a Hermitian matrix: M = V diag(λ) V*.
#[derive(Clone, Debug)]
pub struct HermEig {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose k-th column is the eigenvector for eigenvalues[k].
    pub eigenvectors: CMatrix,
}

impl HermEig {
    /// Rebuilds V diag(λ) V*; used by reconstruction tests.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let lam = CMatrix::diag(
            &self.eigenvalues.iter().map(|&l| Complex64::new(l, 0.0)).collect::<Vec<_>>(),
        );
        let _ = n;
        &(v * &lam) * &v.conj_transpose()
    }
}

/// Eigendecomposition of a square Hermitian matrix.
///
/// `tol` bounds the accepted Hermitian defect relative to ‖M‖_F.
pub fn hermitian_eig(m: &CMatrix, tol: f64) -> Result<HermEig> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let scale = m.frobenius_norm();
    let defect = m.hermitian_defect();
    if defect > tol * scale {
        return Err(Error::NotHermitian { defect, allowed: tol * scale });
    }

    let n = m.rows();
    // Work on the exactly Hermitian part so rounding in the input symmetry
    // cannot drift through the rotations.
    let mut h = m.hermitian_part();
    let mut v = CMatrix::identity(n);

    if n > 1 && scale > 0.0 {
        for _sweep in 0..MAX_SWEEPS {
            if off_diag_norm(&h) <= OFF_DIAG_TOL * scale {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut h, &mut v, p, q);
                }
            }
        }
    }

    // Sort ascending by the (real) diagonal, carrying eigenvector columns.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| h.get(a, a).re.total_cmp(&h.get(b, b).re));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| h.get(k, k).re).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));

    Ok(HermEig { eigenvalues, eigenvectors })
}

fn off_diag_norm(h: &CMatrix) -> f64 {
    let n = h.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += h.get(p, q).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation annihilating the (p,q) entry.
///
/// With b = h_pq = |b| e^{iφ} the plane rotation
///   G[p][p] = c, G[p][q] = w, G[q][p] = -conj(w), G[q][q] = c,  w = s e^{iφ}
/// zeroes h_pq for tan chosen from θ = (h_qq - h_pp)/(2|b|).
fn rotate(h: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let b = h.get(p, q);
    let babs = b.norm();
    if babs == 0.0 {
        return;
    }
    let theta = (h.get(q, q).re - h.get(p, p).re) / (2.0 * babs);
    let t = {
        let s = if theta >= 0.0 { 1.0 } else { -1.0 };
        s / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let w = b * (t * c / babs);

    let n = h.rows();
    // Rows: H <- G* H.
    for j in 0..n {
        let hpj = h.get(p, j);
        let hqj = h.get(q, j);
        h.set(p, j, c * hpj - w * hqj);
        h.set(q, j, w.conj() * hpj + c * hqj);
    }
    // Columns: H <- H G.
    for i in 0..n {
        let hip = h.get(i, p);
        let hiq = h.get(i, q);
        h.set(i, p, c * hip - w.conj() * hiq);
        h.set(i, q, w * hip + c * hiq);
    }
    // Clean rounding in the annihilated pair and the diagonal.
    h.set(p, q, Complex64::ZERO);
    h.set(q, p, Complex64::ZERO);
    let hpp = h.get(p, p);
    let hqq = h.get(q, q);
    h.set(p, p, Complex64::new(hpp.re, 0.0));
    h.set(q, q, Complex64::new(hqq.re, 0.0));

    // Accumulate V <- V G.
    for i in 0..v.rows() {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, c * vip - w.conj() * viq);
        v.set(i, q, w * vip + c * viq);
    }
}

/// Largest singular value, via λ_max(M*M).
pub fn spectral_norm(m: &CMatrix) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0.0);
    }
    let gram = &m.conj_transpose() * m;
    let eig = hermitian_eig(&gram, 1e-8)?;
    let top = eig.eigenvalues.last().copied().unwrap_or(0.0);
    Ok(top.max(0.0).sqrt())
}

/// Derived matrices of a PSD weight: square root, pseudoinverses, and the
/// orthogonal projector onto the range.
#[derive(Clone, Debug)]
pub struct PsdParts {
    pub sqrt: CMatrix,
    pub sqrt_pinv: CMatrix,
    pub pinv: CMatrix,
    pub projector: CMatrix,
    pub rank: usize,
    /// Set when the weight is (numerically) the zero matrix. Degenerate but
    /// legal: every seminorm downstream is zero.
    pub zero_weight: bool,
    pub eig: HermEig,
}

/// Spectral functional calculus for a Hermitian PSD matrix.
///
/// Eigenvalues below `rank_tol`·λ_max are treated as exact zeros; anything
/// below −`rank_tol`·λ_max is a genuine negative eigenvalue and rejected.
pub fn psd_calculus(a: &CMatrix, rank_tol: f64) -> Result<PsdParts> {
    let eig = hermitian_eig(a, 1e-8)?;
    let n = a.rows();
    let lam_max = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = rank_tol * lam_max;
    if let Some(&low) = eig.eigenvalues.first() {
        if low < -cutoff {
            return Err(Error::NotPsd { eigenvalue: low });
        }
    }

    let retained: Vec<usize> =
        (0..n).filter(|&k| eig.eigenvalues[k] > cutoff).collect();
    let rank = retained.len();
    let zero_weight = lam_max == 0.0;

    let assemble = |f: &dyn Fn(f64) -> f64| -> CMatrix {
        let mut out = CMatrix::zeros(n, n);
        for &k in &retained {
            let coeff = Complex64::new(f(eig.eigenvalues[k]), 0.0);
            let col = eig.eigenvectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    let v = out.get(i, j) + coeff * col[i] * col[j].conj();
                    out.set(i, j, v);
                }
            }
        }
        out
    };

    Ok(PsdParts {
        sqrt: assemble(&f64::sqrt),
        sqrt_pinv: assemble(&|l| 1.0 / l.sqrt()),
        pinv: assemble(&|l| 1.0 / l),
        projector: assemble(&|_| 1.0),
        rank,
        zero_weight,
        eig,
    })
}
