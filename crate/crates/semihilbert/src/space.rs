//! The semi-Hilbert context induced by a positive semidefinite weight A.
//!
//! A defines the semi-inner product ⟨x, y⟩_A = ⟨Ax, y⟩ and with it a whole
//! parallel operator theory: the A-adjoint T^♯ = A† T* A, A-self-adjoint and
//! A-positive operators, A-isometries, and the compression map
//! T ↦ A^{1/2} T (A^{1/2})† that turns every A-quantity into a classical one
//! on the range of A.

use num_complex::Complex64;

use crate::eig::{psd_calculus, spectral_norm, HermEig, PsdParts};
use crate::error::{Error, Result};
use crate::matrix::{inner, CMatrix};

/// Default tolerance for the tolerance-based membership and classification
/// tests. The underlying subspace conditions are exact in exact arithmetic;
/// floating point needs an explicit slack.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-8;

/// Default relative cutoff separating deliberate rank deficiency from
/// rounding noise in the weight spectrum.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Semi-Hilbert context derived from a PSD weight matrix.
#[derive(Clone, Debug)]
pub struct SpaceA {
    dim: usize,
    weight: CMatrix,
    eig: HermEig,
    rank: usize,
    rank_tol: f64,
    sqrt: CMatrix,
    sqrt_pinv: CMatrix,
    pinv: CMatrix,
    projector: CMatrix,
    zero_weight: bool,
    weight_norm: f64,
    sqrt_norm: f64,
}

impl SpaceA {
    /// Builds the context from a Hermitian PSD matrix.
    pub fn build(weight: CMatrix, rank_tol: f64) -> Result<Self> {
        if !weight.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "weight must be square, got {}x{}",
                weight.rows(),
                weight.cols()
            )));
        }
        let parts: PsdParts = psd_calculus(&weight, rank_tol)?;
        let weight_norm = spectral_norm(&weight)?;
        let sqrt_norm = weight_norm.sqrt();
        Ok(Self {
            dim: weight.rows(),
            weight,
            rank: parts.rank,
            rank_tol,
            sqrt: parts.sqrt,
            sqrt_pinv: parts.sqrt_pinv,
            pinv: parts.pinv,
            projector: parts.projector,
            zero_weight: parts.zero_weight,
            eig: parts.eig,
            weight_norm,
            sqrt_norm,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }

    pub fn is_zero_weight(&self) -> bool {
        self.zero_weight
    }

    pub fn weight(&self) -> &CMatrix {
        &self.weight
    }

    pub fn weight_eig(&self) -> &HermEig {
        &self.eig
    }

    pub fn sqrt_weight(&self) -> &CMatrix {
        &self.sqrt
    }

    pub fn sqrt_weight_pinv(&self) -> &CMatrix {
        &self.sqrt_pinv
    }

    pub fn weight_pinv(&self) -> &CMatrix {
        &self.pinv
    }

    /// Orthogonal projector onto range(A).
    pub fn range_projector(&self) -> &CMatrix {
        &self.projector
    }

    /// Orthonormal basis of range(A) as the columns of a dim×rank matrix.
    /// Eigenvalues are sorted ascending, so the retained directions are the
    /// last `rank` eigenvector columns.
    pub fn range_basis(&self) -> CMatrix {
        let keep = self.dim - self.rank..self.dim;
        CMatrix::from_fn(self.dim, self.rank, |i, j| {
            self.eig.eigenvectors.get(i, keep.start + j)
        })
    }

    fn check_vec(&self, x: &[Complex64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} does not match space dimension {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }

    fn check_op(&self, t: &CMatrix) -> Result<()> {
        if !t.is_square() || t.rows() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "operator must be {0}x{0}, got {1}x{2}",
                self.dim,
                t.rows(),
                t.cols()
            )));
        }
        Ok(())
    }

    /// ⟨x, y⟩_A = ⟨Ax, y⟩.
    pub fn a_inner(&self, x: &[Complex64], y: &[Complex64]) -> Result<Complex64> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(inner(&self.weight.matvec(x), y))
    }

    /// ‖x‖_A = ⟨x, x⟩_A^{1/2} = ‖A^{1/2} x‖.
    pub fn a_norm(&self, x: &[Complex64]) -> Result<f64> {
        self.check_vec(x)?;
        Ok(crate::matrix::vec_norm(&self.sqrt.matvec(x)))
    }

    /// Compression to the classical setting: T̃ = A^{1/2} T (A^{1/2})†.
    ///
    /// For A-bounded T this is a faithful reduction: ‖Tx‖_A = ‖T̃ y‖ with
    /// y = A^{1/2} x, and every A-quantity of T equals the classical
    /// quantity of T̃.
    pub fn reduce(&self, t: &CMatrix) -> Result<CMatrix> {
        self.check_op(t)?;
        Ok(&(&self.sqrt * t) * &self.sqrt_pinv)
    }

    /// Distinguished A-adjoint T^♯ = A† T* A, the reduced solution of
    /// A X = T* A.
    pub fn a_adjoint(&self, t: &CMatrix) -> Result<CMatrix> {
        self.check_op(t)?;
        Ok(&(&self.pinv * &t.conj_transpose()) * &self.weight)
    }

    /// Fast A-boundedness test: T maps null(A) into null(A), i.e.
    /// A^{1/2} T (I − P) vanishes.
    pub fn is_a_bounded(&self, t: &CMatrix, tol: f64) -> Result<bool> {
        self.check_op(t)?;
        let complement = &CMatrix::identity(self.dim) - &self.projector;
        let leak = spectral_norm(&(&(&self.sqrt * t) * &complement))?;
        let scale = self.sqrt_norm * spectral_norm(t)?;
        Ok(leak <= tol * scale)
    }

    /// Operator classification relative to the weight.
    pub fn classify(&self, t: &CMatrix, tol: f64) -> Result<OpFlags> {
        self.check_op(t)?;
        let t_norm = spectral_norm(t)?;
        let a_bounded = self.is_a_bounded(t, tol)?;

        // Membership in the A-adjointable class: range(T* A) ⊆ range(A).
        let complement = &CMatrix::identity(self.dim) - &self.projector;
        let leak = spectral_norm(&(&complement * &(&t.conj_transpose() * &self.weight)))?;
        let in_b_a = leak <= tol * self.weight_norm * t_norm;

        // A-self-adjoint: AT = T*A.
        let at = &self.weight * t;
        let ta = &t.conj_transpose() * &self.weight;
        let sa_defect = spectral_norm(&(&at - &ta))?;
        let scale = self.weight_norm * t_norm;
        let a_selfadjoint_raw = sa_defect <= tol * scale;

        // A-positive: AT is Hermitian PSD.
        let a_positive = if at.hermitian_defect() <= tol * scale.max(1e-300) {
            let eig = crate::eig::hermitian_eig(&at.hermitian_part(), 1e-6)?;
            eig.eigenvalues.first().map_or(true, |&low| low >= -tol * scale.max(1e-300))
        } else {
            false
        };

        // A-isometry: T^♯ T = P; A-unitary additionally has A-isometric
        // A-adjoint (two-sided condition).
        let adj = self.a_adjoint(t)?;
        let a_isometry = self.isometry_defect(t, &adj)? <= tol;
        let a_unitary = a_isometry && {
            let adj2 = self.a_adjoint(&adj)?;
            self.isometry_defect(&adj, &adj2)? <= tol
        };

        Ok(OpFlags {
            a_bounded: a_bounded || in_b_a,
            in_b_a,
            a_selfadjoint: a_selfadjoint_raw || a_positive,
            a_positive,
            a_isometry: a_isometry || a_unitary,
            a_unitary,
        })
    }

    fn isometry_defect(&self, t: &CMatrix, adj: &CMatrix) -> Result<f64> {
        let prod = adj * t;
        let defect = spectral_norm(&(&prod - &self.projector))?;
        Ok(defect / (1.0 + spectral_norm(&prod)?))
    }

    /// Commutation predicates for a tuple.
    pub fn tuple_predicates(&self, t: &OpTuple, tol: f64) -> Result<TupleFlags> {
        self.check_op(t.get(0))?;
        let n = t.len();
        let norms: Vec<f64> =
            t.iter().map(spectral_norm).collect::<Result<_>>()?;
        let adjoints: Vec<CMatrix> =
            t.iter().map(|m| self.a_adjoint(m)).collect::<Result<_>>()?;
        let adj_norms: Vec<f64> =
            adjoints.iter().map(spectral_norm).collect::<Result<_>>()?;

        let mut commuting = true;
        let mut a_commuting = true;
        for i in 0..n {
            for j in i + 1..n {
                let comm = &(t.get(i) * t.get(j)) - &(t.get(j) * t.get(i));
                let scale = norms[i] * norms[j];
                if spectral_norm(&comm)? > tol * scale {
                    commuting = false;
                }
                if spectral_norm(&(&self.weight * &comm))? > tol * self.weight_norm * scale {
                    a_commuting = false;
                }
            }
        }

        let mut self_normal = true;
        for k in 0..n {
            let lhs = &adjoints[k] * t.get(k);
            let rhs = t.get(k) * &adjoints[k];
            let scale = adj_norms[k] * norms[k];
            if spectral_norm(&(&lhs - &rhs))? > tol * scale {
                self_normal = false;
            }
        }

        Ok(TupleFlags { commuting, a_normal: a_commuting && self_normal })
    }

    /// A-Cartesian decomposition T = Re_A(T) + i Im_A(T) with
    /// Re_A(T) = (T + T^♯)/2 and Im_A(T) = (T − T^♯)/(2i); both parts are
    /// A-self-adjoint for adjointable T.
    pub fn cartesian(&self, t: &CMatrix) -> Result<(CMatrix, CMatrix)> {
        let adj = self.a_adjoint(t)?;
        let re = (&(t + &adj)).scaled(Complex64::new(0.5, 0.0));
        let im = (&(t - &adj)).scaled(Complex64::new(0.0, -0.5));
        Ok((re, im))
    }

    /// Pull a reduced-coordinate vector back through (A^{1/2})†.
    pub fn pull_back(&self, y: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_vec(y)?;
        Ok(self.sqrt_pinv.matvec(y))
    }
}

/// Classification of a single operator relative to the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpFlags {
    /// ‖Tx‖_A ≤ c‖x‖_A for some c; in finite dimension, T maps null(A)
    /// into null(A).
    pub a_bounded: bool,
    /// T admits an A-adjoint: range(T*A) ⊆ range(A).
    pub in_b_a: bool,
    /// AT = T*A.
    pub a_selfadjoint: bool,
    /// AT is positive semidefinite.
    pub a_positive: bool,
    /// T^♯ T = P (projection onto range(A)).
    pub a_isometry: bool,
    /// Both T and T^♯ are A-isometric.
    pub a_unitary: bool,
}

/// Commutation predicates of a tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleFlags {
    /// T_i T_j = T_j T_i for all pairs.
    pub commuting: bool,
    /// A[T_i, T_j] = 0 for all pairs and each member commutes with its own
    /// A-adjoint.
    pub a_normal: bool,
}

/// Ordered tuple of same-dimension square operators.
#[derive(Clone, Debug)]
pub struct OpTuple {
    ops: Vec<CMatrix>,
}

impl OpTuple {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| {
            Error::DimensionMismatch("tuple must contain at least one operator".into())
        })?;
        let d = first.rows();
        if ops.iter().any(|m| !m.is_square() || m.rows() != d) {
            return Err(Error::DimensionMismatch(
                "all tuple members must be square with equal dimension".into(),
            ));
        }
        Ok(Self { ops })
    }

    pub fn single(op: CMatrix) -> Result<Self> {
        Self::new(vec![op])
    }

    /// n copies of the same operator.
    pub fn constant(op: &CMatrix, n: usize) -> Result<Self> {
        Self::new(vec![op.clone(); n.max(1)])
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ops[0].rows()
    }

    pub fn get(&self, k: usize) -> &CMatrix {
        &self.ops[k]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CMatrix> {
        self.ops.iter()
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn map(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Self {
        Self { ops: self.ops.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&CMatrix) -> Result<CMatrix>) -> Result<Self> {
        Ok(Self { ops: self.ops.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn scaled(&self, lambda: Complex64) -> Self {
        self.map(|m| m.scaled(lambda))
    }

    /// Entrywise tuple sum (T_k + S_k)_k.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    /// Entrywise tuple product (T_k S_k)_k.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    /// Entrywise squares (T_k²)_k.
    pub fn squared(&self) -> Self {
        self.map(|m| m * m)
    }

    fn zip(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        if self.len() != other.len() || self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(
                "tuple operation needs equal length and dimension".into(),
            ));
        }
        Ok(Self { ops: self.ops.iter().zip(&other.ops).map(|(a, b)| f(a, b)).collect() })
    }
}
