//! Truncated number-basis linear algebra.
//!
//! Operators live on the first `N` number states. Ladder-type identities
//! necessarily fail on the last row/column of a finite matrix (the
//! truncation edge); invariants are checked on the "valid block", i.e. all
//! rows except the last.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::DeformationFunction;

/// State vector on a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    coeffs: Array1<Complex64>,
}

impl FockVector {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("FockVector needs at least one amplitude"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("FockVector amplitude".into()));
        }
        Ok(FockVector {
            coeffs: Array1::from(coeffs),
        })
    }

    /// The basis state `|k>` in dimension `dim`.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::domain(format!("basis index {k} >= dim {dim}")));
        }
        let mut c = vec![Complex64::ZERO; dim];
        c[k] = Complex64::ONE;
        FockVector::new(c)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &Array1<Complex64> {
        &self.coeffs
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - 1.0).abs() < 1e-12
    }

    /// `<self|other>` with the physics convention (conjugate on the left).
    pub fn inner(&self, other: &FockVector) -> Result<Complex64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Same amplitudes with `extra` zero components appended.
    pub fn padded(&self, extra: usize) -> FockVector {
        let mut c = self.coeffs.to_vec();
        c.resize(self.coeffs.len() + extra, Complex64::ZERO);
        FockVector {
            coeffs: Array1::from(c),
        }
    }
}

/// Dense operator on a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    entries: Array2<Complex64>,
}

impl FockOperator {
    pub fn from_matrix(entries: Array2<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::domain("operator matrix must be square"));
        }
        Ok(FockOperator { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        FockOperator {
            entries: Array2::zeros((dim, dim)),
        }
    }

    pub fn identity(dim: usize) -> Self {
        FockOperator {
            entries: Array2::eye(dim),
        }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Array2::zeros((diag.len(), diag.len()));
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        FockOperator { entries: m }
    }

    /// Diagonal operator `h(n) |n><n|` from a real function of the level index.
    pub fn from_diagonal_fn(dim: usize, h: impl Fn(usize) -> f64) -> Self {
        let diag: Vec<Complex64> = (0..dim).map(|n| Complex64::new(h(n), 0.0)).collect();
        FockOperator::from_diagonal(&diag)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> FockOperator {
        let n = self.dim();
        let mut out = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self.entries[(i, j)].conj();
            }
        }
        FockOperator { entries: out }
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        check_dims(self.dim(), v.dim())?;
        Ok(FockVector {
            coeffs: self.entries.dot(v.coeffs()),
        })
    }

    pub fn mul(&self, other: &FockOperator) -> Result<FockOperator> {
        check_dims(self.dim(), other.dim())?;
        Ok(FockOperator {
            entries: self.entries.dot(&other.entries),
        })
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &FockOperator) -> Result<FockOperator> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        Ok(FockOperator {
            entries: ab.entries - ba.entries,
        })
    }

    pub fn scaled(&self, z: Complex64) -> FockOperator {
        FockOperator {
            entries: self.entries.mapv(|e| e * z),
        }
    }

    pub fn add(&self, other: &FockOperator) -> Result<FockOperator> {
        check_dims(self.dim(), other.dim())?;
        Ok(FockOperator {
            entries: &self.entries + &other.entries,
        })
    }

    pub fn sub(&self, other: &FockOperator) -> Result<FockOperator> {
        check_dims(self.dim(), other.dim())?;
        Ok(FockOperator {
            entries: &self.entries - &other.entries,
        })
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.entries[(i, i)]).collect()
    }
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        Err(Error::DimMismatch { left, right })
    } else {
        Ok(())
    }
}

/// Annihilation, creation and number operators on `dim` number states.
///
/// The annihilation operator carries `sqrt(n)` at `(n-1, n)`; the creation
/// operator is its adjoint; the number operator is `diag(0..dim-1)`.
pub fn build_ladder(dim: usize) -> Result<(FockOperator, FockOperator, FockOperator)> {
    if dim < 2 {
        return Err(Error::domain(format!("ladder dim must be >= 2, got {dim}")));
    }
    let mut a = Array2::zeros((dim, dim));
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let a = FockOperator { entries: a };
    let adag = a.adjoint();
    let number = FockOperator::from_diagonal_fn(dim, |n| n as f64);
    Ok((a, adag, number))
}

/// Deformed operators `A = a f(n)`, `A+ = f(n) a+`.
///
/// `A` carries `sqrt(n) f(n)` at `(n-1, n)`; with `f == 1` this reduces to
/// the plain ladder pair.
pub fn build_deformed(
    dim: usize,
    f: &DeformationFunction,
) -> Result<(FockOperator, FockOperator)> {
    if dim < 2 {
        return Err(Error::domain(format!(
            "deformed operator dim must be >= 2, got {dim}"
        )));
    }
    let mut a = Array2::zeros((dim, dim));
    for n in 1..dim {
        let fv = f.eval(n);
        if !fv.is_finite() {
            return Err(Error::NonFinite(format!("deformation f({n}) = {fv}")));
        }
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt() * fv, 0.0);
    }
    let a = FockOperator { entries: a };
    let adag = a.adjoint();
    Ok((a, adag))
}

/// Ladder operators generated by an energy spectrum with `E[0] = 0`:
/// creation is `sum_i sqrt(E[i+1]) |i+1><i|`, annihilation its adjoint.
///
/// The commutator is diagonal with entries `E[i+1] - E[i]` away from the
/// truncation edge. A single-level spectrum yields 1x1 zero operators.
pub fn ladder_from_spectrum(energies: &[f64]) -> Result<(FockOperator, FockOperator)> {
    if energies.is_empty() {
        return Err(Error::domain("spectrum must be non-empty"));
    }
    if energies[0] != 0.0 {
        return Err(Error::domain(format!(
            "spectrum must be shifted so E[0] = 0, got {}",
            energies[0]
        )));
    }
    for w in energies.windows(2) {
        if !(w[1].is_finite() && w[1] >= w[0]) {
            return Err(Error::domain(format!(
                "spectrum must be non-decreasing and finite, got {} after {}",
                w[1], w[0]
            )));
        }
    }
    let dim = energies.len();
    let mut c = Array2::zeros((dim, dim));
    for i in 0..dim - 1 {
        c[(i + 1, i)] = Complex64::new(energies[i + 1].sqrt(), 0.0);
    }
    let creation = FockOperator { entries: c };
    let annihilation = creation.adjoint();
    Ok((annihilation, creation))
}

/// `<psi|O|psi>`.
pub fn expectation(op: &FockOperator, psi: &FockVector) -> Result<Complex64> {
    let v = op.apply(psi)?;
    psi.inner(&v)
}

/// Heisenberg-evolution phase factor
/// `G(n) = ((n+2) f(n+2)^2 - n f(n)^2) / 2`; equals 1 for `f == 1` and
/// `2 gamma' (n+1) + eta` for the confined deformation.
pub fn heisenberg_phase_g(n: usize, f: &DeformationFunction) -> f64 {
    let nf = n as f64;
    0.5 * ((nf + 2.0) * f.eval_squared(n + 2) - nf * f.eval_squared(n))
}
