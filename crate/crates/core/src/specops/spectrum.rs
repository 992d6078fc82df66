use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;

use super::matrix::{max_abs, SymMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Eigen-decomposition A = V Λ Vᵀ with ascending eigenvalues.
#[derive(Clone, Debug)]
pub struct Spectrum<T: Scalar> {
    pub eigenvalues: DVector<T>,
    pub vectors: DMatrix<T>,
    /// ‖AV − VΛ‖_max at construction.
    pub residual: T,
    /// ‖A‖_max of the source matrix.
    pub scale: T,
}

impl<T: Scalar> Spectrum<T> {
    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Spectral radius, i.e. the operator norm of the source matrix.
    pub fn norm(&self) -> T {
        self.eigenvalues.iter().fold(T::zero(), |a, x| a.max(x.abs()))
    }

    /// Default threshold for treating an eigenvalue as zero: 1e-9·‖A‖.
    pub fn default_zero_tol(&self) -> T {
        T::of(1e-9) * self.norm()
    }

    pub fn reconstruct(&self) -> DMatrix<T> {
        let d = DMatrix::from_diagonal(&self.eigenvalues);
        &self.vectors * d * self.vectors.transpose()
    }

    /// Columns of V whose eigenvalue is positive beyond `zero_tol`.
    pub fn positive_subspace(&self, zero_tol: T) -> DMatrix<T> {
        let cols: Vec<usize> = (0..self.order())
            .filter(|&i| self.eigenvalues[i] > zero_tol)
            .collect();
        self.vectors.select_columns(&cols)
    }
}

/// Symmetric eigensolver (nalgebra's implicit QR) with a residual audit.
pub fn eigensolve<T: Scalar>(a: &SymMatrix<T>) -> Result<Spectrum<T>> {
    let m = a.matrix();
    let scale = max_abs(m);
    let eig = SymmetricEigen::try_new(m.clone(), T::default_epsilon(), 10_000).ok_or_else(|| {
        Error::numerical("symmetric eigensolver (no convergence)", f64::INFINITY)
    })?;
    if let Some(bad) = eig.eigenvalues.iter().find(|l| !l.finite()) {
        return Err(Error::numerical(
            format!("symmetric eigensolver (eigenvalue {bad}, entries too large?)"),
            f64::INFINITY,
        ));
    }
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).expect("finite eigenvalues"));
    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = eig.eigenvectors.select_columns(&order);
    let residual = max_abs(&(m * &vectors - &vectors * DMatrix::from_diagonal(&eigenvalues)));
    let ortho = max_abs(&(vectors.transpose() * &vectors - DMatrix::identity(n, n)));
    let tol = T::of(T::RESIDUAL_TOL);
    if residual > tol * scale || ortho > tol {
        return Err(Error::numerical(
            "symmetric eigensolver",
            residual.to64().max(ortho.to64()),
        ));
    }
    Ok(Spectrum {
        eigenvalues,
        vectors,
        residual,
        scale,
    })
}

/// f(A) = V f(Λ) Vᵀ.
pub fn apply_function<T: Scalar>(spec: &Spectrum<T>, f: impl Fn(T) -> T) -> Result<SymMatrix<T>> {
    let mut fl = spec.eigenvalues.clone();
    for (i, x) in fl.iter_mut().enumerate() {
        let y = f(*x);
        if !y.finite() {
            return Err(Error::invalid(format!(
                "function is undefined at eigenvalue {} (index {i})",
                *x
            )));
        }
        *x = y;
    }
    let m = &spec.vectors * DMatrix::from_diagonal(&fl) * spec.vectors.transpose();
    SymMatrix::with_tolerance((&m + m.transpose()) * T::of(0.5), f64::INFINITY)
}

/// Z_T = T (TᵀT + I)^{−1/2}, with the inverse root taken through the
/// eigen-decomposition of TᵀT.
pub fn bounded_transform<T: Scalar>(t: &DMatrix<T>) -> Result<DMatrix<T>> {
    let gram = SymMatrix::with_tolerance(t.transpose() * t, f64::INFINITY)?;
    let spec = eigensolve(&gram)?;
    // TᵀT is positive semidefinite; clip rounding below zero.
    let root = apply_function(&spec, |x| (T::one() + x.max(T::zero())).sqrt().recip())?;
    Ok(t * root.matrix())
}

/// U = (D − iI)(D + iI)^{−1}, solved by complex LU.
pub fn cayley<T: Scalar>(d: &SymMatrix<T>) -> Result<DMatrix<Complex<T>>> {
    let n = d.order();
    let i = Complex::new(T::zero(), T::one());
    let dc: DMatrix<Complex<T>> = d.matrix().map(|x| Complex::new(x, T::zero()));
    let eye = DMatrix::<Complex<T>>::identity(n, n);
    let plus = &dc + &eye * i;
    let minus = &dc - &eye * i;
    // The factors commute, so (D + iI)^{−1}(D − iI) is the same matrix.
    let u = plus
        .lu()
        .solve(&minus)
        .ok_or_else(|| Error::numerical("Cayley transform (singular D + iI)", f64::INFINITY))?;
    let res = unitarity_residual(&u);
    if res > T::of(T::RESIDUAL_TOL) {
        return Err(Error::numerical("Cayley transform unitarity", res.to64()));
    }
    Ok(u)
}

/// ‖U*U − I‖_max.
pub fn unitarity_residual<T: Scalar>(u: &DMatrix<Complex<T>>) -> T {
    let n = u.ncols();
    let g = u.adjoint() * u - DMatrix::<Complex<T>>::identity(n, n);
    g.iter().fold(T::zero(), |a, z| a.max(z.norm_sqr().sqrt()))
}

/// η(s) = Σ_{|λ| > zero_tol} sign(λ)|λ|^{−s}. `None` uses the spectrum's
/// default threshold.
pub fn eta<T: Scalar>(spec: &Spectrum<T>, s: T, zero_tol: Option<T>) -> T {
    let tol = zero_tol.unwrap_or_else(|| spec.default_zero_tol());
    spec.eigenvalues
        .iter()
        .filter(|l| l.abs() > tol)
        .fold(T::zero(), |acc, &l| {
            let mag = l.abs().powf(-s);
            if l > T::zero() {
                acc + mag
            } else {
                acc - mag
            }
        })
}

/// True iff no eigenvalue lies in the open interval (−c, c).
pub fn spectral_gap<T: Scalar>(spec: &Spectrum<T>, c: T) -> Result<bool> {
    if c <= T::zero() || !c.finite() {
        return Err(Error::invalid(format!("gap width c = {c} must be positive")));
    }
    Ok(spec.eigenvalues.iter().all(|l| l.abs() >= c))
}

/// Operator 2-norm via singular values.
pub fn operator_norm<T: Scalar>(m: &DMatrix<T>) -> T {
    m.clone().singular_values().iter().fold(T::zero(), |a, &x| a.max(x))
}
