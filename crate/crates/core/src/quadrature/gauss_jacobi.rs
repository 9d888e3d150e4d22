//! Gauss–Jacobi nodes and weights for ∫₀¹ q(u)(1−u)^α du, α > −1.
//!
//! Golub–Welsch: the nodes are the eigenvalues of the symmetric tridiagonal
//! recurrence matrix of the Jacobi polynomials P_n^{(α,0)}, and the weights
//! come from the first components of the eigenvectors. The eigensolver is a
//! port of the EISPACK implicit-QL routine, tracking only the first row of
//! the accumulated orthogonal transform.

use crate::scalar::{real, Real};

/// Raised when the QL iteration fails to converge (does not happen for the
/// well-conditioned Jacobi matrices this module builds).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenFailure {
    pub index: usize,
}

/// Nodes/weights on [0,1] absorbing the weight (1−u)^α.
///
/// Exact for polynomials of degree ≤ 2K−1; the weights sum to 1/(α+1).
pub fn gauss_jacobi_unit<T: Real>(alpha: T, k: usize) -> Result<Vec<(T, T)>, EigenFailure> {
    assert!(k >= 1, "at least one node");
    let one = T::one();
    let two = real::<T>(2.0);

    // symmetric tridiagonal recurrence matrix for weight (1-x)^alpha on [-1,1]
    let mut diag = Vec::with_capacity(k);
    let mut off = vec![T::zero(); k];
    diag.push(-alpha / (two + alpha));
    for idx in 0..k - 1 {
        let kk = real::<T>((idx + 1) as f64);
        let denom = two * kk + alpha;
        off[idx] = two * kk * (kk + alpha) / (denom * (denom * denom - one).sqrt());
        diag.push(-(alpha * alpha) / (denom * (denom + two)));
    }

    let mut first_row = vec![T::zero(); k];
    first_row[0] = one;
    imtql2(&mut diag, &mut off, &mut first_row)?;

    let mut pairs: Vec<(T, T)> = diag
        .into_iter()
        .zip(first_row)
        .map(|(x, z)| ((one + x) / two, z * z / (alpha + one)))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    Ok(pairs)
}

/// Gauss–Legendre on [0,1] (the α = 0 case).
pub fn gauss_legendre_unit<T: Real>(k: usize) -> Result<Vec<(T, T)>, EigenFailure> {
    gauss_jacobi_unit(T::zero(), k)
}

/// Implicit-QL eigensolver for a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e[i]` couples rows i and i+1, and `z` is a row
/// vector updated by the same rotations as the eigenvector matrix (seed it
/// with e₁ to obtain the first row of Q). On return `d` holds eigenvalues in
/// QL discovery order.
fn imtql2<T: Real>(d: &mut [T], e: &mut [T], z: &mut [T]) -> Result<(), EigenFailure> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    let machep = T::epsilon();
    let two = real::<T>(2.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= machep * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter >= 50 {
                return Err(EigenFailure { index: l });
            }
            iter += 1;

            // Wilkinson shift
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = (g * g + T::one()).sqrt();
            let sign_r = if g >= T::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);

            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                if f.abs() >= g.abs() {
                    c = g / f;
                    r = (c * c + T::one()).sqrt();
                    e[i + 1] = f * r;
                    s = T::one() / r;
                    c = c * s;
                } else {
                    s = f / g;
                    r = (s * s + T::one()).sqrt();
                    e[i + 1] = g * r;
                    c = T::one() / r;
                    s = s * c;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
