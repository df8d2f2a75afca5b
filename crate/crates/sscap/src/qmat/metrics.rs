use super::eig::eig_hermitian;
use super::matrix::ComplexMatrix;
use super::state::DensityMatrix;
use crate::error::{Error, Result};

/// Uhlmann fidelity F(ρ,σ) = Tr sqrt(sqrt(σ) ρ sqrt(σ)), in [0, 1].
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.total_dim() != sigma.total_dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.total_dim(),
            found: sigma.total_dim(),
        });
    }
    let sqrt_sigma = psd_sqrt(sigma.matrix());
    let inner = &(&sqrt_sigma * rho.matrix()) * &sqrt_sigma;
    // inner is Hermitian PSD up to round-off; symmetrize before the eig call
    let n = inner.rows();
    let sym = ComplexMatrix::from_fn(n, n, |r, c| (inner[(r, c)] + inner[(c, r)].conj()) * 0.5);
    let eig = eig_hermitian(&sym).expect("symmetrized product is Hermitian");
    Ok(eig
        .values
        .iter()
        .map(|&v| if v > 0.0 { libm::sqrt(v) } else { 0.0 })
        .sum())
}

/// Trace distance D(ρ,σ) = ½ Tr |ρ − σ|, in [0, 1].
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.total_dim() != sigma.total_dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.total_dim(),
            found: sigma.total_dim(),
        });
    }
    let diff = rho.matrix() - sigma.matrix();
    let eig = eig_hermitian(&diff).expect("difference of Hermitian matrices is Hermitian");
    Ok(0.5 * eig.values.iter().map(|v| libm::fabs(*v)).sum::<f64>())
}

fn psd_sqrt(m: &ComplexMatrix) -> ComplexMatrix {
    let eig = eig_hermitian(m).expect("PSD square root needs a Hermitian input");
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lam = eig.values[k];
        if lam <= 0.0 {
            continue;
        }
        let w = libm::sqrt(lam);
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] += eig.vectors[(r, k)] * eig.vectors[(c, k)].conj() * w;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::state::PureState;

    #[test]
    fn fidelity_identical_states() {
        let rho = DensityMatrix::maximally_mixed("S", 3);
        assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_orthogonal_states() {
        let zero = PureState::basis("S", 2, 0).to_density();
        let one = PureState::basis("S", 2, 1).to_density();
        assert!(fidelity(&zero, &one).unwrap().abs() < 1e-12);
    }

    #[test]
    fn fidelity_pure_vs_mixed() {
        // F(|0><0|, 1/2) = 1/sqrt(2)
        let zero = PureState::basis("S", 2, 0).to_density();
        let mixed = DensityMatrix::maximally_mixed("S", 2);
        let f = fidelity(&zero, &mixed).unwrap();
        assert!((f - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn trace_distance_cases() {
        let zero = PureState::basis("S", 2, 0).to_density();
        let one = PureState::basis("S", 2, 1).to_density();
        let mixed = DensityMatrix::maximally_mixed("S", 2);
        assert!(trace_distance(&zero, &zero).unwrap().abs() < 1e-14);
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-12);
        assert!((trace_distance(&zero, &mixed).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = DensityMatrix::maximally_mixed("S", 2);
        let b = DensityMatrix::maximally_mixed("S", 3);
        assert!(fidelity(&a, &b).is_err());
        assert!(trace_distance(&a, &b).is_err());
    }
}
