//! Eigenvalues and eigenvectors of complex Hermitian matrices via cyclic
//! Jacobi rotations.
//!
//! Each rotation first strips the phase of the pivot entry, reducing the
//! 2x2 pivot block to a real symmetric one, then applies the classic
//! symmetric Schur rotation. Convergence is quadratic once the off-diagonal
//! mass is small; diagonal inputs exit after the initial scan.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use num_complex::Complex64;

const INPUT_HERMITIAN_TOL: f64 = 1e-8;
const MAX_SWEEPS: usize = 64;

/// Ascending real eigenvalues of a Hermitian matrix.
pub fn eigvals_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    eigh(m).map(|(vals, _)| vals)
}

/// Ascending eigenvalues plus a unitary whose k-th column is the
/// eigenvector for the k-th eigenvalue.
pub fn eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if m.rows() != m.cols() {
        return Err(Error::NotHermitian {
            defect: f64::INFINITY,
            tol: INPUT_HERMITIAN_TOL,
        });
    }
    let defect = m.hermitian_defect();
    // A NaN defect must be rejected too, hence the explicit check.
    if defect.is_nan() || defect > INPUT_HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            defect,
            tol: INPUT_HERMITIAN_TOL,
        });
    }

    let n = m.rows();
    // Symmetrize exactly so rotations operate on a true Hermitian copy.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(m.get(i, i).re, 0.0)
        } else {
            (m.get(i, j) + m.get(j, i).conj()) * Complex64::new(0.5, 0.0)
        }
    });
    let mut v = ComplexMatrix::identity(n);

    let scale = a.max_abs().max(1.0);
    let target = 1e-14 * scale;
    let skip = 1e-18 * scale;

    for _ in 0..MAX_SWEEPS {
        if max_offdiag(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, skip);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
    let vals: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vecs = ComplexMatrix::from_fn(n, n, |r, c| v.get(r, order[c]));
    Ok((vals, vecs))
}

fn max_offdiag(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max(a.get(i, j).norm());
        }
    }
    worst
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, skip: f64) {
    let b = a.get(p, q);
    let babs = b.norm();
    if babs <= skip {
        return;
    }
    let ph = b / babs;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * babs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Plane rotation R with R[p][p] = c*ph, R[p][q] = s*ph, R[q][p] = -s,
    // R[q][q] = c; conjugation by R zeroes the (p,q) pivot.
    let n = a.rows();
    let (rpp, rpq) = (ph * c, ph * s);
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * rpp - akq * s);
        a.set(k, q, akp * rpq + akq * c);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, apk * rpp.conj() - aqk * s);
        a.set(q, k, apk * rpq.conj() + aqk * c);
    }
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));

    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * rpp - vkq * s);
        v.set(k, q, vkp * rpq + vkq * c);
    }
}
