//! Dense linear operators and truncated multi-mode Fock ladders.
//!
//! Operators are dense complex square matrices. The composition convention
//! is fixed once and used everywhere: `compose(A, B)` is the matrix product
//! `A·B`, which acts as "apply B first, then A" on kets. A sequence written
//! "apply A, then B" therefore corresponds to the matrix `B·A`.
//!
//! Ladder operators act on a truncated occupation basis with a hard cutoff:
//!
//! ```text
//! a|n⟩  = √n |n−1⟩          a|0⟩       = 0
//! a†|n⟩ = √(n+1) |n+1⟩      a†|n_max⟩  = 0   (truncation)
//! ```
//!
//! The hard cutoff keeps `a† = adjoint(a)` exact; the canonical commutation
//! relation `[a, a†] = 1` holds on every basis state below the cutoff and
//! fails only on |n_max⟩, where `[a, a†]|n_max⟩ = −n_max·|n_max⟩`.
//!
//! Multi-mode basis ordering is lexicographic in the occupation tuple
//! (n₁, …, n_M) with the last mode varying fastest, i.e. mode 0 is the most
//! significant digit in base (cutoff+1). Modes are zero-indexed.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{AqsError, Result};
use crate::hilbert::{vec_norm, C64, SemanticState};

/// Hermiticity gate used by variance and Robertson checks.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Largest Fock-space dimension we let a context allocate dense matrices for.
pub const MAX_FOCK_DIM: usize = 4096;

/// Dense complex square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperator {
    mat: DMatrix<C64>,
}

impl LinearOperator {
    /// Builds an operator from row-major nested rows, validating squareness
    /// and finiteness.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(AqsError::invalid_field("entries", "must be nonempty"));
        }
        for row in rows {
            if row.len() != dim {
                return Err(AqsError::DimMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
        }
        let mat = DMatrix::from_fn(dim, dim, |i, j| rows[i][j]);
        let op = Self { mat };
        op.check_finite()?;
        Ok(op)
    }

    /// Builds an operator entrywise from `f(row, col)`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Result<Self> {
        if dim == 0 {
            return Err(AqsError::invalid_field("dim", "must be ≥ 1"));
        }
        let op = Self {
            mat: DMatrix::from_fn(dim, dim, |i, j| f(i, j)),
        };
        op.check_finite()?;
        Ok(op)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    fn check_finite(&self) -> Result<()> {
        for (index, z) in self.mat.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(AqsError::NonFinite { index });
            }
        }
        Ok(())
    }

    pub(crate) fn from_matrix(mat: DMatrix<C64>) -> Self {
        debug_assert_eq!(mat.nrows(), mat.ncols());
        Self { mat }
    }

    pub(crate) fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.mat[(row, col)]
    }

    /// Entries as row-major nested vectors.
    pub fn rows(&self) -> Vec<Vec<C64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.mat[(i, j)]).collect())
            .collect()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(AqsError::DimMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// Matrix product `self · other` (apply `other` first on kets).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            mat: &self.mat * &other.mat,
        })
    }

    /// `[self, other] = self·other − other·self`. Antisymmetric entrywise:
    /// `commutator(a, b)` is the exact negation of `commutator(b, a)`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            mat: &self.mat * &other.mat - &other.mat * &self.mat,
        })
    }

    /// Conjugate transpose. An exact involution.
    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            mat: &self.mat * factor,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            mat: &self.mat + &other.mat,
        })
    }

    /// Unnormalized image `A|ψ⟩` together with its norm. The caller decides
    /// whether (and how) to renormalize.
    pub fn apply(&self, s: &SemanticState) -> Result<(Vec<C64>, f64)> {
        if self.dim() != s.dim() {
            return Err(AqsError::DimMismatch {
                left: self.dim(),
                right: s.dim(),
            });
        }
        let v = DVector::from_column_slice(s.amplitudes());
        let image: Vec<C64> = (&self.mat * v).iter().copied().collect();
        let norm = vec_norm(&image);
        Ok((image, norm))
    }

    /// ⟨ψ|A|ψ⟩.
    pub fn expectation(&self, s: &SemanticState) -> Result<C64> {
        let (image, _) = self.apply(s)?;
        Ok(s.amplitudes()
            .iter()
            .zip(&image)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    /// sqrt(⟨A²⟩ − ⟨A⟩²) for Hermitian `A`, computed in centered form
    /// ‖(A − ⟨A⟩)|ψ⟩‖ so the radicand never goes negative.
    pub fn std_dev(&self, s: &SemanticState) -> Result<f64> {
        let deviation = self.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(AqsError::NotHermitian {
                deviation,
                tol: HERMITIAN_TOL,
            });
        }
        let (image, _) = self.apply(s)?;
        let mean: C64 = s
            .amplitudes()
            .iter()
            .zip(&image)
            .map(|(x, y)| x.conj() * y)
            .sum();
        let centered: Vec<C64> = image
            .iter()
            .zip(s.amplitudes())
            .map(|(y, x)| y - x * mean.re)
            .collect();
        Ok(vec_norm(&centered))
    }

    /// Max-entry distance from the adjoint.
    pub fn hermitian_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut max = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let d = (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm();
                if d > max {
                    max = d;
                }
            }
        }
        max
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl Serialize for LinearOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dim = self.dim();
        let mut re = vec![vec![0.0; dim]; dim];
        let mut im = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let z = self.mat[(i, j)];
                re[i][j] = z.re;
                im[i][j] = z.im;
            }
        }
        OperatorRepr { dim, re, im }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = OperatorRepr::deserialize(deserializer)?;
        let check = |name: &str, grid: &Vec<Vec<f64>>| -> std::result::Result<(), D::Error> {
            if grid.len() != repr.dim || grid.iter().any(|row| row.len() != repr.dim) {
                return Err(serde::de::Error::custom(format!(
                    "operator `{name}` grid must be {0}×{0}",
                    repr.dim
                )));
            }
            Ok(())
        };
        check("re", &repr.re)?;
        check("im", &repr.im)?;
        let rows: Vec<Vec<C64>> = repr
            .re
            .iter()
            .zip(&repr.im)
            .map(|(rr, ri)| rr.iter().zip(ri).map(|(&a, &b)| C64::new(a, b)).collect())
            .collect();
        LinearOperator::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Truncated multi-mode Fock space: `modes` bosonic modes, each with
/// occupation 0..=cutoff, total dimension (cutoff+1)^modes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FockContext {
    modes: usize,
    cutoff: usize,
}

impl FockContext {
    pub fn new(modes: usize, cutoff: usize) -> Result<Self> {
        if modes == 0 {
            return Err(AqsError::invalid_field("modes", "must be ≥ 1"));
        }
        if cutoff == 0 {
            return Err(AqsError::invalid_field("cutoff", "must be ≥ 1"));
        }
        let base = cutoff + 1;
        let mut dim: usize = 1;
        for _ in 0..modes {
            dim = dim.checked_mul(base).ok_or_else(|| {
                AqsError::invalid_field("modes", "Fock dimension overflows usize")
            })?;
            if dim > MAX_FOCK_DIM {
                return Err(AqsError::invalid_field(
                    "modes",
                    format!("Fock dimension (cutoff+1)^modes exceeds {MAX_FOCK_DIM}"),
                ));
            }
        }
        Ok(Self { modes, cutoff })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1).pow(self.modes as u32)
    }

    /// Index of the basis vector with the given occupation tuple.
    pub fn index_of(&self, occupation: &[usize]) -> Result<usize> {
        if occupation.len() != self.modes {
            return Err(AqsError::DimMismatch {
                left: self.modes,
                right: occupation.len(),
            });
        }
        let base = self.cutoff + 1;
        let mut index = 0usize;
        for (mode, &n) in occupation.iter().enumerate() {
            if n > self.cutoff {
                return Err(AqsError::invalid_field(
                    "occupation",
                    format!("mode {mode} occupation {n} exceeds cutoff {}", self.cutoff),
                ));
            }
            index = index * base + n;
        }
        Ok(index)
    }

    /// Occupation tuple of basis index `index` (inverse of [`index_of`]).
    ///
    /// [`index_of`]: FockContext::index_of
    pub fn occupation(&self, index: usize) -> Vec<usize> {
        let base = self.cutoff + 1;
        let mut rest = index;
        let mut occ = vec![0usize; self.modes];
        for slot in occ.iter_mut().rev() {
            *slot = rest % base;
            rest /= base;
        }
        occ
    }

    pub fn basis_state(&self, occupation: &[usize]) -> Result<SemanticState> {
        SemanticState::basis(self.dim(), self.index_of(occupation)?)
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes {
            return Err(AqsError::ModeOutOfRange {
                mode,
                modes: self.modes,
            });
        }
        Ok(())
    }

    /// Single-mode annihilation matrix on the (cutoff+1)-dim ladder.
    fn single_mode_lowering(&self) -> DMatrix<C64> {
        let d = self.cutoff + 1;
        DMatrix::from_fn(d, d, |i, j| {
            if j == i + 1 {
                C64::new((j as f64).sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    fn embed_single_mode(&self, mode: usize, single: DMatrix<C64>) -> LinearOperator {
        let d = self.cutoff + 1;
        let left = DMatrix::<C64>::identity(d.pow(mode as u32), d.pow(mode as u32));
        let right_dim = d.pow((self.modes - 1 - mode) as u32);
        let right = DMatrix::<C64>::identity(right_dim, right_dim);
        LinearOperator::from_matrix(left.kronecker(&single).kronecker(&right))
    }

    /// Annihilation operator for `mode` (zero-indexed), identity on the rest.
    pub fn annihilation(&self, mode: usize) -> Result<LinearOperator> {
        self.check_mode(mode)?;
        Ok(self.embed_single_mode(mode, self.single_mode_lowering()))
    }

    /// Creation operator: the adjoint of [`annihilation`], so `a†|n_max⟩ = 0`
    /// at the truncation boundary.
    ///
    /// [`annihilation`]: FockContext::annihilation
    pub fn creation(&self, mode: usize) -> Result<LinearOperator> {
        self.check_mode(mode)?;
        Ok(self.embed_single_mode(mode, self.single_mode_lowering().adjoint()))
    }

    /// Number operator a†a for `mode`.
    pub fn number(&self, mode: usize) -> Result<LinearOperator> {
        self.creation(mode)?.compose(&self.annihilation(mode)?)
    }

    /// Hermitian hopping observable aᵢ†aⱼ + aⱼ†aᵢ (equals 2·nᵢ when i = j).
    pub fn hopping(&self, i: usize, j: usize) -> Result<LinearOperator> {
        let forward = self.creation(i)?.compose(&self.annihilation(j)?)?;
        forward.add(&forward.adjoint())
    }
}

impl<'de> Deserialize<'de> for FockContext {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            modes: usize,
            cutoff: usize,
        }
        let repr = Repr::deserialize(deserializer)?;
        FockContext::new(repr.modes, repr.cutoff).map_err(serde::de::Error::custom)
    }
}
