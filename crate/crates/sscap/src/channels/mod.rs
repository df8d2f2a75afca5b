//! CPTP maps as Kraus families, with the dilation calculus on top: every
//! channel carries its canonical Stinespring isometry U = Σ_k A_k ⊗ |k>_E,
//! from which the complementary channel (trace out B instead of E) and the
//! normalized Choi state follow.
//!
//! Channel identity is always a statement about the map, not the Kraus list;
//! compare channels through [`choi_distance`], never Kraus-by-Kraus.

mod degrade;

pub use degrade::{DegradabilityReport, degradability_residual, degradability_residual_default};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{vec};

use crate::error::{Error, Result};
use crate::qmat::{C64, ComplexMatrix, DensityMatrix, kron, pauli_x, pauli_y, pauli_z};

const TP_TOL: f64 = 1e-10;
const ISOMETRY_TOL: f64 = 1e-10;

/// Completely positive trace-preserving map stored as a Kraus family.
#[derive(Debug, Clone)]
pub struct Channel {
    kraus: Vec<ComplexMatrix>,
    dim_in: usize,
    dim_out: usize,
    name: String,
}

/// Isometry U: input -> B ⊗ E with U†U = 1.
#[derive(Debug, Clone)]
pub struct Isometry {
    pub matrix: ComplexMatrix,
    pub dim_in: usize,
    pub dim_b: usize,
    pub dim_e: usize,
}

impl Isometry {
    pub fn new(matrix: ComplexMatrix, dim_b: usize, dim_e: usize) -> Result<Self> {
        let dim_in = matrix.cols();
        if matrix.rows() != dim_b * dim_e {
            return Err(Error::DimensionMismatch {
                expected: dim_b * dim_e,
                found: matrix.rows(),
            });
        }
        let gram = &matrix.adjoint() * &matrix;
        let defect = gram.max_abs_diff(&ComplexMatrix::identity(dim_in));
        if defect > ISOMETRY_TOL {
            return Err(Error::Invalid(format!(
                "matrix is not an isometry (|U\u{2020}U - 1| = {defect:e})"
            )));
        }
        Ok(Self {
            matrix,
            dim_in,
            dim_b,
            dim_e,
        })
    }
}

impl Channel {
    /// Validated constructor: all Kraus operators share the declared shape and
    /// Σ_k A_k†A_k = 1 to 1e-10.
    pub fn new(name: &str, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        for k in &kraus {
            if k.rows() != dim_out || k.cols() != dim_in {
                return Err(Error::DimensionMismatch {
                    expected: dim_out * dim_in,
                    found: k.rows() * k.cols(),
                });
            }
        }
        let mut sum = ComplexMatrix::zeros(dim_in, dim_in);
        for k in &kraus {
            sum = &sum + &(&k.adjoint() * k);
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim_in));
        if deviation > TP_TOL {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self {
            kraus,
            dim_in,
            dim_out,
            name: name.to_string(),
        })
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// N(ρ) = Σ_k A_k ρ A_k†. The output is a single subsystem labeled "B".
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.total_dim() != self.dim_in {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                found: rho.total_dim(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = &out + &(&(k * rho.matrix()) * &k.adjoint());
        }
        Ok(DensityMatrix::from_parts_unchecked(
            out,
            crate::qmat::Subsystem::list(&[("B", self.dim_out)]),
        ))
    }

    /// Canonical Stinespring dilation U = Σ_k A_k ⊗ |k>_E with one
    /// environment basis vector per Kraus operator; row index (b, e) = b·dE + e.
    pub fn stinespring(&self) -> Isometry {
        let ne = self.kraus.len();
        let mut u = ComplexMatrix::zeros(self.dim_out * ne, self.dim_in);
        for (e, k) in self.kraus.iter().enumerate() {
            for b in 0..self.dim_out {
                for a in 0..self.dim_in {
                    u[(b * ne + e, a)] = k[(b, a)];
                }
            }
        }
        Isometry::new(u, self.dim_out, ne).expect("Kraus family yields an isometry")
    }

    /// Complementary channel N̂(ρ) = Tr_B U ρ U†, mapping to the environment
    /// of the canonical dilation. Well-defined up to an isometry on E.
    pub fn complementary(&self) -> Channel {
        let ne = self.kraus.len();
        let kraus: Vec<ComplexMatrix> = (0..self.dim_out)
            .map(|b| {
                ComplexMatrix::from_fn(ne, self.dim_in, |e, a| self.kraus[e][(b, a)])
            })
            .collect();
        Channel::new(&format!("comp({})", self.name), kraus)
            .expect("complementary Kraus family is trace-preserving")
    }

    /// Normalized Choi state (id ⊗ N)(|Φ+><Φ+|) on subsystems A (input copy)
    /// and B (output); PSD with unit trace.
    pub fn choi(&self) -> DensityMatrix {
        let d_in = self.dim_in;
        let d_out = self.dim_out;
        let n = d_in * d_out;
        let mut op = ComplexMatrix::zeros(n, n);
        for k in &self.kraus {
            for i in 0..d_in {
                for b in 0..d_out {
                    for j in 0..d_in {
                        for bp in 0..d_out {
                            op[(i * d_out + b, j * d_out + bp)] +=
                                k[(b, i)] * k[(bp, j)].conj();
                        }
                    }
                }
            }
        }
        op = op.scale_re(1.0 / d_in as f64);
        DensityMatrix::from_parts_unchecked(
            op,
            crate::qmat::Subsystem::list(&[("A", d_in), ("B", d_out)]),
        )
    }

    /// N ⊗ M with the pairwise Kronecker Kraus family.
    pub fn tensor(&self, other: &Channel) -> Channel {
        let kraus: Vec<ComplexMatrix> = self
            .kraus
            .iter()
            .flat_map(|a| other.kraus.iter().map(move |b| kron(a, b)))
            .collect();
        Channel::new(&format!("{} (x) {}", self.name, other.name), kraus)
            .expect("tensor of CPTP maps is CPTP")
    }

    /// self ∘ inner (apply `inner` first); requires self.dim_in = inner.dim_out.
    pub fn compose(&self, inner: &Channel) -> Result<Channel> {
        if self.dim_in != inner.dim_out {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                found: inner.dim_out,
            });
        }
        let kraus: Vec<ComplexMatrix> = self
            .kraus
            .iter()
            .flat_map(|a| inner.kraus.iter().map(move |b| a * b))
            .collect();
        Ok(Channel::new(&format!("{} o {}", self.name, inner.name), kraus)
            .expect("composition of CPTP maps is CPTP"))
    }
}

/// Identity channel on a d-dimensional system.
pub fn identity(d: usize) -> Channel {
    Channel::new(&format!("id({d})"), vec![ComplexMatrix::identity(d)])
        .expect("identity is a channel")
}

/// Unitary (or isometric-free) conjugation channel ρ -> U ρ U†.
pub fn unitary(name: &str, u: ComplexMatrix) -> Result<Channel> {
    Channel::new(name, vec![u])
}

/// Depolarizing channel N_p(ρ) = (1−p)ρ + (p/3)(XρX + YρY + ZρZ).
pub fn depolarizing(p: f64) -> Result<Channel> {
    check_range("p", p, 0.0, 1.0)?;
    pauli_channel_named(&format!("depolarizing({p})"), p / 3.0, p / 3.0, p / 3.0)
}

/// General Pauli channel with weights (px, py, pz) on the X, Y, Z branches.
pub fn pauli_channel(px: f64, py: f64, pz: f64) -> Result<Channel> {
    pauli_channel_named(&format!("pauli({px},{py},{pz})"), px, py, pz)
}

fn pauli_channel_named(name: &str, px: f64, py: f64, pz: f64) -> Result<Channel> {
    for (n, v) in [("px", px), ("py", py), ("pz", pz)] {
        check_range(n, v, 0.0, 1.0)?;
    }
    let rest = 1.0 - px - py - pz;
    if rest < -1e-12 {
        return Err(Error::OutOfRange {
            name: "px+py+pz",
            value: px + py + pz,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let mut kraus = Vec::new();
    for (w, op) in [
        (rest.max(0.0), ComplexMatrix::identity(2)),
        (px, pauli_x()),
        (py, pauli_y()),
        (pz, pauli_z()),
    ] {
        kraus.push(op.scale_re(libm::sqrt(w)));
    }
    Channel::new(name, kraus)
}

/// Axis for single-Pauli dephasing channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    fn operator(self) -> ComplexMatrix {
        match self {
            PauliAxis::X => pauli_x(),
            PauliAxis::Y => pauli_y(),
            PauliAxis::Z => pauli_z(),
        }
    }

    fn letter(self) -> char {
        match self {
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }
}

/// Dephasing-type channel (1−p)ρ + p σρσ along the given Pauli axis.
pub fn dephasing_axis(axis: PauliAxis, p: f64) -> Result<Channel> {
    check_range("p", p, 0.0, 1.0)?;
    Channel::new(
        &format!("{}_{p}", axis.letter()),
        vec![
            ComplexMatrix::identity(2).scale_re(libm::sqrt(1.0 - p)),
            axis.operator().scale_re(libm::sqrt(p)),
        ],
    )
}

/// Amplitude damping with decay probability γ.
pub fn amplitude_damping(gamma: f64) -> Result<Channel> {
    check_range("gamma", gamma, 0.0, 1.0)?;
    let a0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, libm::sqrt(1.0 - gamma)])?;
    let a1 = ComplexMatrix::from_real(2, 2, &[0.0, libm::sqrt(gamma), 0.0, 0.0])?;
    Channel::new(&format!("amp_damp({gamma})"), vec![a0, a1])
}

/// The d-dimensional symmetric side channel A_d: embeds the
/// d(d+1)/2-dimensional input into the symmetric subspace of ⊤ ⊗ ⊥ via the
/// basis |(i,j)> = (|i>|j> + |j>|i>)/√2 (i < j), |i>|i> (i = j), then traces
/// out ⊥. It maps symmetrically to its output and environment.
pub fn symmetric_side_channel(d: usize) -> Result<Channel> {
    if d < 1 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let dim_in = d * (d + 1) / 2;
    let mut v = ComplexMatrix::zeros(d * d, dim_in);
    let mut col = 0;
    let half = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    for i in 0..d {
        for j in i..d {
            if i == j {
                v[(i * d + j, col)] = C64::new(1.0, 0.0);
            } else {
                v[(i * d + j, col)] = half;
                v[(j * d + i, col)] = half;
            }
            col += 1;
        }
    }
    // V itself is the Stinespring isometry with B = ⊤ and E = ⊥
    let kraus: Vec<ComplexMatrix> = (0..d)
        .map(|m| ComplexMatrix::from_fn(d, dim_in, |t, k| v[(t * d + m, k)]))
        .collect();
    Channel::new(&format!("ssc({d})"), kraus)
}

/// The symmetric-subspace isometry V_d behind [`symmetric_side_channel`].
pub fn symmetric_subspace_isometry(d: usize) -> Result<Isometry> {
    let ch = symmetric_side_channel(d)?;
    Ok(ch.stinespring())
}

/// Convex mixture of channels: the Kraus family is the union of the
/// √w_i-scaled families, so the Choi state is the weighted Choi average.
pub fn mix(channels: &[&Channel], weights: &[f64]) -> Result<Channel> {
    if channels.is_empty() || channels.len() != weights.len() {
        return Err(Error::BadWeights {
            reason: "need one weight per channel".to_string(),
        });
    }
    if weights.iter().any(|&w| w < 0.0) {
        return Err(Error::BadWeights {
            reason: "weights must be nonnegative".to_string(),
        });
    }
    let total: f64 = weights.iter().sum();
    if libm::fabs(total - 1.0) > 1e-12 {
        return Err(Error::BadWeights {
            reason: format!("weights sum to {total}, expected 1"),
        });
    }
    let (d_in, d_out) = (channels[0].dim_in, channels[0].dim_out);
    for ch in channels {
        if ch.dim_in != d_in || ch.dim_out != d_out {
            return Err(Error::DimensionMismatch {
                expected: d_in,
                found: ch.dim_in,
            });
        }
    }
    let mut kraus = Vec::new();
    for (ch, &w) in channels.iter().zip(weights) {
        let s = libm::sqrt(w);
        for k in &ch.kraus {
            kraus.push(k.scale_re(s));
        }
    }
    Channel::new("mix", kraus)
}

/// Frobenius distance between the normalized Choi states of two channels;
/// the canonical channel-equality metric.
pub fn choi_distance(a: &Channel, b: &Channel) -> Result<f64> {
    if a.dim_in != b.dim_in || a.dim_out != b.dim_out {
        return Err(Error::DimensionMismatch {
            expected: a.dim_in * a.dim_out,
            found: b.dim_in * b.dim_out,
        });
    }
    Ok((a.choi().matrix() - b.choi().matrix()).frobenius_norm())
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !(lo..=hi).contains(&value) || value.is_nan() {
        return Err(Error::OutOfRange {
            name,
            value,
            lo,
            hi,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::PureState;

    #[test]
    fn depolarizing_on_ground_state() {
        // X and Y branches each flip |0> with weight p/3
        let p = 0.3;
        let ch = depolarizing(p).unwrap();
        let rho = PureState::basis("S", 2, 0).to_density();
        let out = ch.apply(&rho).unwrap();
        assert!((out.matrix()[(0, 0)].re - (1.0 - 2.0 * p / 3.0)).abs() < 1e-14);
        assert!((out.matrix()[(1, 1)].re - 2.0 * p / 3.0).abs() < 1e-14);
    }

    #[test]
    fn completely_depolarizing_maps_to_maximally_mixed() {
        let ch = depolarizing(0.75).unwrap();
        let rho = PureState::basis("S", 2, 1).to_density();
        let out = ch.apply(&rho).unwrap();
        let half = ComplexMatrix::identity(2).scale_re(0.5);
        assert!(out.matrix().max_abs_diff(&half) < 1e-14);
    }

    #[test]
    fn amplitude_damping_decay_branch() {
        let gamma = 0.37;
        let ch = amplitude_damping(gamma).unwrap();
        let excited = PureState::basis("S", 2, 1).to_density();
        let out = ch.apply(&excited).unwrap();
        assert!((out.matrix()[(0, 0)].re - gamma).abs() < 1e-14);
        assert!((out.matrix()[(1, 1)].re - (1.0 - gamma)).abs() < 1e-14);
    }

    #[test]
    fn dephasing_scales_coherences() {
        let p = 0.2;
        let ch = dephasing_axis(PauliAxis::Z, p).unwrap();
        let amps = vec![
            C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0),
            C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0),
        ];
        let plus = PureState::new(amps, &[("S", 2)]).unwrap().to_density();
        let out = ch.apply(&plus).unwrap();
        assert!((out.matrix()[(0, 1)].re - 0.5 * (1.0 - 2.0 * p)).abs() < 1e-14);
    }

    #[test]
    fn choi_of_identity_is_max_entangled() {
        let ch = identity(2);
        let phi = PureState::max_entangled(2, "A", "B").to_density();
        assert!(ch.choi().matrix().max_abs_diff(phi.matrix()) < 1e-14);
    }

    #[test]
    fn choi_of_completely_depolarizing_is_flat() {
        let ch = depolarizing(0.75).unwrap();
        let flat = ComplexMatrix::identity(4).scale_re(0.25);
        assert!(ch.choi().matrix().max_abs_diff(&flat) < 1e-14);
    }

    #[test]
    fn ssc_dimensions_and_isometry() {
        let ch = symmetric_side_channel(2).unwrap();
        assert_eq!((ch.dim_in(), ch.dim_out()), (3, 2));
        let v = symmetric_subspace_isometry(2).unwrap();
        let gram = &v.matrix.adjoint() * &v.matrix;
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);

        let trivial = symmetric_side_channel(1).unwrap();
        assert_eq!((trivial.dim_in(), trivial.dim_out()), (1, 1));
    }

    #[test]
    fn out_of_range_parameters_rejected() {
        assert!(depolarizing(-0.1).is_err());
        assert!(depolarizing(1.1).is_err());
        assert!(amplitude_damping(2.0).is_err());
        assert!(pauli_channel(0.6, 0.3, 0.3).is_err());
        assert!(symmetric_side_channel(0).is_err());
    }

    #[test]
    fn mix_weight_validation() {
        let a = depolarizing(0.1).unwrap();
        let b = depolarizing(0.2).unwrap();
        assert!(mix(&[&a, &b], &[0.5, 0.6]).is_err());
        assert!(mix(&[&a, &b], &[-0.1, 1.1]).is_err());
        let ok = mix(&[&a, &b], &[0.25, 0.75]).unwrap();
        assert_eq!(ok.dim_in(), 2);
    }

    #[test]
    fn compose_dimension_check() {
        let a = identity(2);
        let b = symmetric_side_channel(2).unwrap(); // 3 -> 2
        assert!(b.compose(&a).is_err());
        assert!(a.compose(&b).is_ok());
    }
}
