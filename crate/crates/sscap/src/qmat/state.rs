use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::eig::eig_hermitian;
use super::matrix::{C64, ComplexMatrix, ONE, ZERO};
use crate::error::{Error, Result};

/// One labeled tensor factor of a multipartite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
}

impl Subsystem {
    /// Builds a labeled dimension list from `(label, dim)` pairs.
    pub fn list(dims: &[(&str, usize)]) -> Vec<Subsystem> {
        subsystems(dims)
    }
}

pub(crate) fn subsystems(dims: &[(&str, usize)]) -> Vec<Subsystem> {
    dims.iter()
        .map(|&(label, dim)| Subsystem {
            label: label.to_string(),
            dim,
        })
        .collect()
}

fn total_dim(dims: &[Subsystem]) -> usize {
    dims.iter().map(|s| s.dim).product()
}

fn position(dims: &[Subsystem], label: &str) -> Result<usize> {
    dims.iter()
        .position(|s| s.label == label)
        .ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
        })
}

/// Row-major strides: index = Σ digit[k] * stride[k].
fn strides(dims: &[Subsystem]) -> Vec<usize> {
    let mut st = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        st[k] = st[k + 1] * dims[k + 1].dim;
    }
    st
}

/// All flat offsets spanned by the subsystems at `positions`, enumerated in
/// row-major order of those positions.
fn offsets(dims: &[Subsystem], positions: &[usize]) -> Vec<usize> {
    let st = strides(dims);
    let mut out = vec![0usize];
    for &p in positions {
        let d = dims[p].dim;
        let s = st[p];
        let mut next = Vec::with_capacity(out.len() * d);
        for &base in &out {
            for i in 0..d {
                next.push(base + i * s);
            }
        }
        out = next;
    }
    out
}

const HERM_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = -1e-10;
const NORM_TOL: f64 = 1e-12;

/// Hermitian, PSD, unit-trace operator on a labeled tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: ComplexMatrix,
    dims: Vec<Subsystem>,
}

impl DensityMatrix {
    /// Validated constructor: checks shape, Hermiticity (1e-12), unit trace
    /// (1e-12), and positive semidefiniteness (min eigenvalue >= -1e-10).
    pub fn new(op: ComplexMatrix, dims: &[(&str, usize)]) -> Result<Self> {
        let dims = subsystems(dims);
        if !op.is_square() {
            return Err(Error::NotSquare {
                rows: op.rows(),
                cols: op.cols(),
            });
        }
        if total_dim(&dims) != op.rows() {
            return Err(Error::DimensionMismatch {
                expected: total_dim(&dims),
                found: op.rows(),
            });
        }
        let herm = op.hermiticity_defect();
        if herm > HERM_TOL {
            return Err(Error::NotHermitian {
                max_asymmetry: herm,
            });
        }
        let tr = op.trace();
        if libm::fabs(tr.re - 1.0) > TRACE_TOL || libm::fabs(tr.im) > TRACE_TOL {
            return Err(Error::InvalidDensity {
                reason: alloc::format!("trace = {} + {}i, expected 1", tr.re, tr.im),
            });
        }
        let dm = Self { op, dims };
        let min_ev = dm.eigenvalues().last().copied().unwrap_or(0.0);
        if min_ev < PSD_TOL {
            return Err(Error::InvalidDensity {
                reason: alloc::format!("min eigenvalue = {min_ev:e}"),
            });
        }
        Ok(dm)
    }

    /// Internal constructor for operators that are valid by construction
    /// (channel outputs, partial traces, reductions of pure states).
    pub(crate) fn from_parts_unchecked(op: ComplexMatrix, dims: Vec<Subsystem>) -> Self {
        debug_assert_eq!(total_dim(&dims), op.rows());
        Self { op, dims }
    }

    /// Maximally mixed state 1/d on a single labeled subsystem.
    pub fn maximally_mixed(label: &str, dim: usize) -> Self {
        Self::from_parts_unchecked(
            ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
            subsystems(&[(label, dim)]),
        )
    }

    /// Diagonal state from a classical probability vector.
    pub fn diagonal(label: &str, probs: &[f64]) -> Result<Self> {
        let n = probs.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &p) in probs.iter().enumerate() {
            m[(i, i)] = C64::new(p, 0.0);
        }
        Self::new(m, &[(label, n)])
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.op
    }

    pub fn dims(&self) -> &[Subsystem] {
        &self.dims
    }

    pub fn labels(&self) -> Vec<&str> {
        self.dims.iter().map(|s| s.label.as_str()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.op.rows()
    }

    pub fn subsystem_dim(&self, label: &str) -> Result<usize> {
        Ok(self.dims[position(&self.dims, label)?].dim)
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eig_hermitian(&self.op)
            .expect("density matrix is Hermitian by construction")
            .values
    }

    /// Traces out every subsystem not in `keep`; kept labels stay in their
    /// original order.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<DensityMatrix> {
        for label in keep {
            position(&self.dims, label)?;
        }
        let kept: Vec<usize> = (0..self.dims.len())
            .filter(|&k| keep.contains(&self.dims[k].label.as_str()))
            .collect();
        let traced: Vec<usize> = (0..self.dims.len()).filter(|k| !kept.contains(k)).collect();

        let kept_off = offsets(&self.dims, &kept);
        let traced_off = offsets(&self.dims, &traced);
        let dk = kept_off.len();

        let mut out = ComplexMatrix::zeros(dk, dk);
        for (r, &ro) in kept_off.iter().enumerate() {
            for (c, &co) in kept_off.iter().enumerate() {
                let mut acc = ZERO;
                for &t in &traced_off {
                    acc += self.op[(ro + t, co + t)];
                }
                out[(r, c)] = acc;
            }
        }
        let dims = kept.iter().map(|&k| self.dims[k].clone()).collect();
        Ok(DensityMatrix::from_parts_unchecked(out, dims))
    }

    /// Reorders the tensor factors to `new_order` (a permutation of the labels).
    pub fn permute(&self, new_order: &[&str]) -> Result<DensityMatrix> {
        let perm = permutation(&self.dims, new_order)?;
        let map = index_map(&self.dims, &perm);
        let d = self.total_dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                out[(map[r], map[c])] = self.op[(r, c)];
            }
        }
        let dims = perm.iter().map(|&k| self.dims[k].clone()).collect();
        Ok(DensityMatrix::from_parts_unchecked(out, dims))
    }

    /// Collapses all tensor factors into a single labeled subsystem.
    pub fn flatten(&self, label: &str) -> DensityMatrix {
        DensityMatrix::from_parts_unchecked(
            self.op.clone(),
            subsystems(&[(label, self.total_dim())]),
        )
    }

    /// Conjugates by an isometry acting on one subsystem: the factor `label`
    /// (of dimension u.cols()) is replaced by the factors in `out`
    /// (product of dimensions = u.rows()) at the same position.
    pub fn apply_isometry(
        &self,
        label: &str,
        u: &ComplexMatrix,
        out: &[(&str, usize)],
    ) -> Result<DensityMatrix> {
        let pos = position(&self.dims, label)?;
        if self.dims[pos].dim != u.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.dims[pos].dim,
                found: u.cols(),
            });
        }
        let out_dims = subsystems(out);
        if total_dim(&out_dims) != u.rows() {
            return Err(Error::DimensionMismatch {
                expected: total_dim(&out_dims),
                found: u.rows(),
            });
        }
        let pre: usize = self.dims[..pos].iter().map(|s| s.dim).product();
        let post: usize = self.dims[pos + 1..].iter().map(|s| s.dim).product();
        let w = embed(u, pre, post);
        let op = &(&w * &self.op) * &w.adjoint();
        let mut dims: Vec<Subsystem> = self.dims[..pos].to_vec();
        dims.extend(out_dims);
        dims.extend_from_slice(&self.dims[pos + 1..]);
        Ok(DensityMatrix::from_parts_unchecked(op, dims))
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.op.hermiticity_defect()
    }
}

/// I_pre ⊗ u ⊗ I_post as an explicit matrix.
fn embed(u: &ComplexMatrix, pre: usize, post: usize) -> ComplexMatrix {
    let rows = pre * u.rows() * post;
    let cols = pre * u.cols() * post;
    let mut w = ComplexMatrix::zeros(rows, cols);
    for a in 0..pre {
        for r in 0..u.rows() {
            for c in 0..u.cols() {
                let z = u[(r, c)];
                if z == ZERO {
                    continue;
                }
                for b in 0..post {
                    w[((a * u.rows() + r) * post + b, (a * u.cols() + c) * post + b)] = z;
                }
            }
        }
    }
    w
}

fn permutation(dims: &[Subsystem], new_order: &[&str]) -> Result<Vec<usize>> {
    if new_order.len() != dims.len() {
        return Err(Error::Invalid(alloc::format!(
            "permutation lists {} labels, state has {}",
            new_order.len(),
            dims.len()
        )));
    }
    let mut perm = Vec::with_capacity(dims.len());
    for label in new_order {
        let p = position(dims, label)?;
        if perm.contains(&p) {
            return Err(Error::Invalid(alloc::format!(
                "label `{label}` repeated in permutation"
            )));
        }
        perm.push(p);
    }
    Ok(perm)
}

/// Maps each old flat index to its flat index after permuting factors.
fn index_map(dims: &[Subsystem], perm: &[usize]) -> Vec<usize> {
    let st_old = strides(dims);
    let new_dims: Vec<Subsystem> = perm.iter().map(|&k| dims[k].clone()).collect();
    let st_new = strides(&new_dims);
    let d = total_dim(dims);
    let mut map = vec![0usize; d];
    for (i, entry) in map.iter_mut().enumerate() {
        let mut acc = 0;
        for (slot, &k) in perm.iter().enumerate() {
            let digit = (i / st_old[k]) % dims[k].dim;
            acc += digit * st_new[slot];
        }
        *entry = acc;
    }
    map
}

/// Normalized state vector on a labeled tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vec<C64>,
    dims: Vec<Subsystem>,
}

impl PureState {
    /// Validated constructor: squared norm must be 1 to 1e-12.
    pub fn new(amps: Vec<C64>, dims: &[(&str, usize)]) -> Result<Self> {
        let dims = subsystems(dims);
        if amps.len() != total_dim(&dims) {
            return Err(Error::DimensionMismatch {
                expected: total_dim(&dims),
                found: amps.len(),
            });
        }
        let norm2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if libm::fabs(norm2 - 1.0) > NORM_TOL {
            return Err(Error::NotNormalized {
                defect: libm::fabs(norm2 - 1.0),
            });
        }
        Ok(Self { amps, dims })
    }

    pub(crate) fn from_parts_unchecked(amps: Vec<C64>, dims: Vec<Subsystem>) -> Self {
        debug_assert_eq!(amps.len(), total_dim(&dims));
        Self { amps, dims }
    }

    /// Computational basis state |index> on a single labeled subsystem.
    pub fn basis(label: &str, dim: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Self::from_parts_unchecked(amps, subsystems(&[(label, dim)]))
    }

    /// Maximally entangled state (1/sqrt d) Σ_i |i>|i> across two labels.
    pub fn max_entangled(d: usize, label_a: &str, label_b: &str) -> Self {
        let mut amps = vec![ZERO; d * d];
        let w = C64::new(1.0 / libm::sqrt(d as f64), 0.0);
        for i in 0..d {
            amps[i * d + i] = w;
        }
        Self::from_parts_unchecked(amps, subsystems(&[(label_a, d), (label_b, d)]))
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn dims(&self) -> &[Subsystem] {
        &self.dims
    }

    pub fn labels(&self) -> Vec<&str> {
        self.dims.iter().map(|s| s.label.as_str()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    pub fn subsystem_dim(&self, label: &str) -> Result<usize> {
        Ok(self.dims[position(&self.dims, label)?].dim)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        let mut dims = self.dims.clone();
        dims.extend(other.dims.iter().cloned());
        PureState::from_parts_unchecked(amps, dims)
    }

    /// |ψ><ψ| with the same subsystem labels.
    pub fn to_density(&self) -> DensityMatrix {
        let d = self.amps.len();
        let mut op = ComplexMatrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                op[(r, c)] = self.amps[r] * self.amps[c].conj();
            }
        }
        DensityMatrix::from_parts_unchecked(op, self.dims.clone())
    }

    /// Reduced density matrix on the kept labels (original order), computed
    /// directly from the amplitudes.
    pub fn reduced(&self, keep: &[&str]) -> Result<DensityMatrix> {
        for label in keep {
            position(&self.dims, label)?;
        }
        let kept: Vec<usize> = (0..self.dims.len())
            .filter(|&k| keep.contains(&self.dims[k].label.as_str()))
            .collect();
        let traced: Vec<usize> = (0..self.dims.len()).filter(|k| !kept.contains(k)).collect();
        let kept_off = offsets(&self.dims, &kept);
        let traced_off = offsets(&self.dims, &traced);
        let dk = kept_off.len();
        let mut out = ComplexMatrix::zeros(dk, dk);
        for (r, &ro) in kept_off.iter().enumerate() {
            for (c, &co) in kept_off.iter().enumerate() {
                let mut acc = ZERO;
                for &t in &traced_off {
                    acc += self.amps[ro + t] * self.amps[co + t].conj();
                }
                out[(r, c)] = acc;
            }
        }
        let dims = kept.iter().map(|&k| self.dims[k].clone()).collect();
        Ok(DensityMatrix::from_parts_unchecked(out, dims))
    }

    /// Applies an isometry to one subsystem, replacing the factor `label` by
    /// the labeled factors in `out` at the same position.
    pub fn apply_isometry(
        &self,
        label: &str,
        u: &ComplexMatrix,
        out: &[(&str, usize)],
    ) -> Result<PureState> {
        let pos = position(&self.dims, label)?;
        let din = self.dims[pos].dim;
        if din != u.cols() {
            return Err(Error::DimensionMismatch {
                expected: din,
                found: u.cols(),
            });
        }
        let out_dims = subsystems(out);
        let dout = total_dim(&out_dims);
        if dout != u.rows() {
            return Err(Error::DimensionMismatch {
                expected: dout,
                found: u.rows(),
            });
        }
        let pre: usize = self.dims[..pos].iter().map(|s| s.dim).product();
        let post: usize = self.dims[pos + 1..].iter().map(|s| s.dim).product();

        let mut amps = vec![ZERO; pre * dout * post];
        for a in 0..pre {
            for b in 0..post {
                for r in 0..dout {
                    let mut acc = ZERO;
                    for k in 0..din {
                        let z = u[(r, k)];
                        if z == ZERO {
                            continue;
                        }
                        acc += z * self.amps[(a * din + k) * post + b];
                    }
                    amps[(a * dout + r) * post + b] = acc;
                }
            }
        }
        let mut dims: Vec<Subsystem> = self.dims[..pos].to_vec();
        dims.extend(out_dims);
        dims.extend_from_slice(&self.dims[pos + 1..]);
        Ok(PureState::from_parts_unchecked(amps, dims))
    }

    /// Reorders the tensor factors to `new_order`.
    pub fn permute(&self, new_order: &[&str]) -> Result<PureState> {
        let perm = permutation(&self.dims, new_order)?;
        let map = index_map(&self.dims, &perm);
        let mut amps = vec![ZERO; self.amps.len()];
        for (i, &z) in self.amps.iter().enumerate() {
            amps[map[i]] = z;
        }
        let dims = perm.iter().map(|&k| self.dims[k].clone()).collect();
        Ok(PureState::from_parts_unchecked(amps, dims))
    }

    /// Fuses a run of adjacent factors into a single labeled factor; the
    /// labels must appear consecutively and in order.
    pub fn merge_adjacent(&self, labels: &[&str], new_label: &str) -> Result<PureState> {
        let first = position(&self.dims, labels[0])?;
        for (k, label) in labels.iter().enumerate() {
            let p = position(&self.dims, label)?;
            if p != first + k {
                return Err(Error::Invalid(alloc::format!(
                    "labels to merge must be adjacent and ordered; `{label}` is out of place"
                )));
            }
        }
        let merged_dim: usize = self.dims[first..first + labels.len()]
            .iter()
            .map(|s| s.dim)
            .product();
        let mut dims: Vec<Subsystem> = self.dims[..first].to_vec();
        dims.push(Subsystem {
            label: new_label.to_string(),
            dim: merged_dim,
        });
        dims.extend_from_slice(&self.dims[first + labels.len()..]);
        Ok(PureState::from_parts_unchecked(self.amps.clone(), dims))
    }
}

/// Purification of `rho`: a pure state on the original labels plus a
/// reference subsystem `ref_label` of dimension equal to the matrix order.
/// Tracing out the reference recovers `rho`.
pub fn purify(rho: &DensityMatrix, ref_label: &str) -> PureState {
    debug_assert!(
        !rho.labels().contains(&ref_label),
        "reference label collides with an existing subsystem"
    );
    let d = rho.total_dim();
    let eig = eig_hermitian(rho.matrix()).expect("density matrix is Hermitian by construction");
    // |ψ> = Σ_k sqrt(λ_k) |v_k> ⊗ |k>_ref ; negative round-off eigenvalues clamp to 0
    let mut amps = vec![ZERO; d * d];
    for k in 0..d {
        let lam = eig.values[k].max(0.0);
        if lam == 0.0 {
            continue;
        }
        let w = libm::sqrt(lam);
        for i in 0..d {
            amps[i * d + k] += eig.vectors[(i, k)] * w;
        }
    }
    let mut dims = rho.dims().to_vec();
    dims.push(Subsystem {
        label: ref_label.to_string(),
        dim: d,
    });
    PureState::from_parts_unchecked(amps, dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::matrix::kron;

    fn bell() -> PureState {
        PureState::max_entangled(2, "A", "B")
    }

    #[test]
    fn product_state_marginal() {
        // Tr_B(ρ_A ⊗ σ_B) = ρ_A
        let rho_a = ComplexMatrix::from_real(2, 2, &[0.7, 0.1, 0.1, 0.3]).unwrap();
        let sigma_b = ComplexMatrix::from_real(2, 2, &[0.4, 0.0, 0.0, 0.6]).unwrap();
        let joint = DensityMatrix::new(kron(&rho_a, &sigma_b), &[("A", 2), ("B", 2)]).unwrap();
        let red = joint.partial_trace(&["A"]).unwrap();
        assert!(red.matrix().max_abs_diff(&rho_a) < 1e-14);
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let red = bell().reduced(&["B"]).unwrap();
        let half = ComplexMatrix::identity(2).scale_re(0.5);
        assert!(red.matrix().max_abs_diff(&half) < 1e-14);
    }

    #[test]
    fn unknown_label_errors() {
        let err = bell().reduced(&["C"]).unwrap_err();
        assert!(matches!(err, Error::UnknownLabel { .. }));
    }

    #[test]
    fn purify_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed("S", 2);
        let psi = purify(&rho, "R");
        let back = psi.reduced(&["S"]).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn purify_pure_state_has_pure_reference() {
        let rho = PureState::basis("S", 3, 1).to_density();
        let psi = purify(&rho, "R");
        let marginal = psi.reduced(&["S"]).unwrap();
        assert!(marginal.matrix().max_abs_diff(rho.matrix()) < 1e-12);
        // rank-1 input: reference marginal is pure
        let ref_marginal = psi.reduced(&["R"]).unwrap();
        let evs = ref_marginal.eigenvalues();
        assert!((evs[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn permutation_roundtrip() {
        let psi = PureState::basis("A", 2, 1)
            .tensor(&PureState::basis("B", 3, 2))
            .tensor(&PureState::basis("C", 2, 0));
        let permuted = psi.permute(&["C", "A", "B"]).unwrap();
        let back = permuted.permute(&["A", "B", "C"]).unwrap();
        assert_eq!(back.amplitudes(), psi.amplitudes());
        assert_eq!(permuted.labels(), vec!["C", "A", "B"]);
    }
}
