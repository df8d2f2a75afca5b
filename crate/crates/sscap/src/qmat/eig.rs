use alloc::vec::Vec;

use num_complex::Complex;

use super::matrix::{C64, ComplexMatrix};
use crate::error::{Error, Result};

/// Spectral decomposition M = V diag(values) V† of a Hermitian matrix.
///
/// Eigenvalues are real and sorted in descending order; the k-th column of
/// `vectors` is the eigenvector for `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

const HERMITICITY_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 64;

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each rotation zeroes one off-diagonal pair exactly; sweeps repeat until the
/// off-diagonal mass is at round-off level, which for the dimensions used here
/// (≤ 256) reconstructs the input to well below 1e-12 in Frobenius norm.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Eigensystem> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            max_asymmetry: defect,
        });
    }

    let n = m.rows();
    // Symmetrize once so round-off asymmetry cannot accumulate.
    let mut a = ComplexMatrix::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm().max(1.0);
    let stop = 1e-15 * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_unstable_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(Eigensystem { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            acc += 2.0 * a[(p, q)].norm_sqr();
        }
    }
    libm::sqrt(acc)
}

/// One Jacobi rotation zeroing A[p,q]: A <- U† A U, V <- V U with
/// U = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] in the (p, q) plane, where
/// A[p,q] = g e^{iφ} and (c, s) is the classic real rotation for
/// [[A_pp, g], [g, A_qq]].
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = libm::sqrt(apq.norm_sqr());
    if g == 0.0 {
        return;
    }
    let phase = apq / g; // e^{iφ}
    let alpha = a[(p, p)].re;
    let beta = a[(q, q)].re;
    let tau = (beta - alpha) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + libm::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;

    let upp = Complex::new(c, 0.0);
    let upq = Complex::new(s, 0.0);
    let uqp = phase.conj() * (-s);
    let uqq = phase.conj() * c;

    let n = a.rows();
    // A <- A U (columns p, q)
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * upp + aiq * uqp;
        a[(i, q)] = aip * upq + aiq * uqq;
    }
    // A <- U† A (rows p, q)
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * upp.conj() + aqj * uqp.conj();
        a[(q, j)] = apj * upq.conj() + aqj * uqq.conj();
    }
    // exact zero by construction; pin it to keep the off-diagonal norm honest
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    a[(p, p)] = C64::new(app.re, 0.0);
    a[(q, q)] = C64::new(aqq.re, 0.0);

    // V <- V U
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * upp + viq * uqp;
        v[(i, q)] = vip * upq + viq * uqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::matrix::pauli_x;

    #[test]
    fn scalar_matrix() {
        let m = ComplexMatrix::identity(2).scale_re(0.5);
        let e = eig_hermitian(&m).unwrap();
        assert!((e.values[0] - 0.5).abs() < 1e-14);
        assert!((e.values[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn pauli_spectrum() {
        let e = eig_hermitian(&pauli_x()).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_fn(2, 2, |r, c| C64::new((r + 2 * c) as f64, 0.0));
        match eig_hermitian(&m) {
            Err(Error::NotHermitian { max_asymmetry }) => assert!(max_asymmetry > 0.9),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }
}
