//! Entropic quantities and the coherent-information machinery: von Neumann
//! entropy, coherent/mutual information, the single-letter optimizer Q¹, the
//! side-channel-assisted rate function ½[I(A⟩BF) − I(A⟩EF)], the
//! symmetrization construction behind it, the additivity-split identity, and
//! the value-added probe.
//!
//! Subsystem label conventions: channel inputs are `At` (the paper's Ã),
//! purifying references `A`, channel outputs `B`, environments `E`, side
//! registers `F` (and `Fp` for its copy). [`symmetrize`] emits `Top`/`Bot`.
//!
//! All entropies are in bits (base-2 logs) and are always computed by
//! reducing the state and diagonalizing, never from analytic shortcuts, so
//! closed forms elsewhere in the crate are checked against an independent
//! path.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::channels::Channel;
use crate::error::{Error, Result};
use crate::optim::{NmOptions, golden_section_max, nelder_mead_min};
use crate::qmat::{C64, DensityMatrix, PureState, Subsystem, purify};

/// Eigenvalues below this are treated as exact zeros in x·log x sums.
const EIG_CLAMP: f64 = 1e-12;

fn entropy_of_eigs(eigs: &[f64]) -> f64 {
    let mut s = 0.0;
    for &lam in eigs {
        if lam > EIG_CLAMP {
            s -= lam * libm::log2(lam);
        }
    }
    s
}

/// Von Neumann entropy S(ρ) = −Tr ρ log₂ ρ in bits.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_eigs(&rho.eigenvalues())
}

/// Entropies of several subsystem subsets of one state.
#[derive(Debug, Clone)]
pub struct EntropyReport {
    /// (labels, entropy in bits) per requested subset.
    pub entries: Vec<(Vec<String>, f64)>,
}

impl EntropyReport {
    pub fn get(&self, labels: &[&str]) -> Option<f64> {
        self.entries
            .iter()
            .find(|(ls, _)| ls.len() == labels.len() && ls.iter().zip(labels).all(|(a, b)| a == b))
            .map(|&(_, s)| s)
    }
}

/// Computes S for each requested subset of subsystems.
pub fn entropy_report(rho: &DensityMatrix, subsets: &[&[&str]]) -> Result<EntropyReport> {
    let mut entries = Vec::with_capacity(subsets.len());
    for subset in subsets {
        let reduced = rho.partial_trace(subset)?;
        entries.push((
            subset.iter().map(|s| String::from(*s)).collect(),
            entropy(&reduced),
        ));
    }
    Ok(EntropyReport { entries })
}

/// Coherent information I(A⟩B) = S(B) − S(AB) of a bipartite cut.
pub fn coherent_information(
    rho: &DensityMatrix,
    a_labels: &[&str],
    b_labels: &[&str],
) -> Result<f64> {
    let s_b = entropy(&rho.partial_trace(b_labels)?);
    let ab: Vec<&str> = a_labels.iter().chain(b_labels).copied().collect();
    let s_ab = entropy(&rho.partial_trace(&ab)?);
    Ok(s_b - s_ab)
}

/// Quantum mutual information I(A;B) = S(A) + S(B) − S(AB).
pub fn mutual_information(
    rho: &DensityMatrix,
    a_labels: &[&str],
    b_labels: &[&str],
) -> Result<f64> {
    let s_a = entropy(&rho.partial_trace(a_labels)?);
    let s_b = entropy(&rho.partial_trace(b_labels)?);
    let ab: Vec<&str> = a_labels.iter().chain(b_labels).copied().collect();
    let s_ab = entropy(&rho.partial_trace(&ab)?);
    Ok(s_a + s_b - s_ab)
}

/// Coherent information a channel generates from a given input state:
/// purifies the input, sends the `At` half through the channel's Stinespring
/// dilation, and evaluates I(A⟩B) on the result.
pub fn channel_coherent_information(ch: &Channel, input: &DensityMatrix) -> Result<f64> {
    if input.total_dim() != ch.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: ch.dim_in(),
            found: input.total_dim(),
        });
    }
    let psi = purify(&input.flatten("At"), "A");
    let iso = ch.stinespring();
    let omega = psi.apply_isometry(
        "At",
        &iso.matrix,
        &[("B", iso.dim_b), ("E", iso.dim_e)],
    )?;
    let s_b = entropy(&omega.reduced(&["B"])?);
    let s_ab = entropy(&omega.reduced(&["A", "B"])?);
    Ok(s_b - s_ab)
}

/// Tripartite input to the assisted rate function: a pure state on labels
/// `A`, `At`, `F` together with the channel that will act on `At`.
#[derive(Debug, Clone)]
pub struct SsRateInput {
    pub state: PureState,
    pub channel: Channel,
}

impl SsRateInput {
    pub fn new(state: PureState, channel: Channel) -> Result<Self> {
        let mut labels = state.labels();
        labels.sort_unstable();
        if labels != vec!["A", "At", "F"] {
            return Err(Error::Invalid(alloc::format!(
                "ss-rate input must carry exactly the labels A, At, F (got {labels:?})"
            )));
        }
        let d_at = state.subsystem_dim("At")?;
        if d_at != channel.dim_in() {
            return Err(Error::DimensionMismatch {
                expected: channel.dim_in(),
                found: d_at,
            });
        }
        Ok(Self { state, channel })
    }
}

/// The assisted rate ½[I(A⟩BF) − I(A⟩EF)] evaluated on
/// ω = (1_AF ⊗ U_N) ρ (1_AF ⊗ U_N)†. Its supremum over inputs (and side
/// registers F of any size) is the assisted capacity; any single evaluation
/// is a lower bound.
pub fn ss_rate(input: &SsRateInput) -> f64 {
    let iso = input.channel.stinespring();
    let omega = input
        .state
        .apply_isometry("At", &iso.matrix, &[("B", iso.dim_b), ("E", iso.dim_e)])
        .expect("validated at construction");
    let s = |labels: &[&str]| entropy(&omega.reduced(labels).expect("labels exist"));
    let i_abf = s(&["B", "F"]) - s(&["A", "B", "F"]);
    let i_aef = s(&["E", "F"]) - s(&["A", "E", "F"]);
    0.5 * (i_abf - i_aef)
}

/// Symmetrization: from a pure state on `A`, `At`, `F`, `Fp` (with
/// dim F = dim Fp) builds the swap-invariant state on `A`, `At`, `Top`, `Bot`
/// with Top = F⊗G, Bot = Fp⊗Gp for flag qubits G, Gp:
///
/// |φ'⟩ = (|φ⟩|01⟩ + SWAP_{F,Fp}|φ⟩|10⟩)/√2.
///
/// For any channel on `At`, I(A⟩B·Top) of the output equals
/// ½[I(A⟩BF) + I(A⟩BFp)] of the input.
pub fn symmetrize(phi: &PureState) -> Result<PureState> {
    let mut labels = phi.labels();
    labels.sort_unstable();
    if labels != vec!["A", "At", "F", "Fp"] {
        return Err(Error::Invalid(alloc::format!(
            "symmetrize expects labels A, At, F, Fp (got {labels:?})"
        )));
    }
    let df = phi.subsystem_dim("F")?;
    if df != phi.subsystem_dim("Fp")? {
        return Err(Error::DimensionMismatch {
            expected: df,
            found: phi.subsystem_dim("Fp")?,
        });
    }
    let canon = phi.permute(&["A", "At", "F", "Fp"])?;
    let da = canon.subsystem_dim("A")?;
    let dat = canon.subsystem_dim("At")?;
    let amps = canon.amplitudes();

    // index layout: ((a·dat + t)·df + f)·df + fp, then two flag qubits g, gp
    let base = da * dat * df * df;
    let mut out = vec![C64::new(0.0, 0.0); base * 4];
    let w = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    for a in 0..da * dat {
        for f in 0..df {
            for fp in 0..df {
                let src = (a * df + f) * df + fp;
                let swapped = (a * df + fp) * df + f;
                // g gp = 0 1
                out[src * 4 + 1] += amps[src] * w;
                // g gp = 1 0
                out[src * 4 + 2] += amps[swapped] * w;
            }
        }
    }
    let dims = [
        ("A", da),
        ("At", dat),
        ("F", df),
        ("Fp", df),
        ("G", 2),
        ("Gp", 2),
    ];
    let expanded = PureState::new(out, &dims)?;
    let ordered = expanded.permute(&["A", "At", "F", "G", "Fp", "Gp"])?;
    let top = ordered.merge_adjacent(&["F", "G"], "Top")?;
    top.merge_adjacent(&["Fp", "Gp"], "Bot")
}

/// The three terms of the additivity-split identity
/// I(A⟩B₁B₂F) − I(A⟩E₁E₂F) = rhs1 + rhs2 with F₁ = B₂F and F₂ = E₁F.
#[derive(Debug, Clone, Copy)]
pub struct SplitTerms {
    pub lhs: f64,
    pub rhs1: f64,
    pub rhs2: f64,
}

/// Evaluates the telescoping identity that makes the assisted rate additive.
/// `rho` must live on labels `A`, `At1`, `At2`, `F`; both channel dilations
/// are applied and all three quantities are returned (lhs = rhs1 + rhs2 up to
/// round-off).
pub fn additivity_split_check(
    ch1: &Channel,
    ch2: &Channel,
    rho: &DensityMatrix,
) -> Result<SplitTerms> {
    for label in ["A", "At1", "At2", "F"] {
        rho.subsystem_dim(label)?;
    }
    if rho.subsystem_dim("At1")? != ch1.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: ch1.dim_in(),
            found: rho.subsystem_dim("At1")?,
        });
    }
    if rho.subsystem_dim("At2")? != ch2.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: ch2.dim_in(),
            found: rho.subsystem_dim("At2")?,
        });
    }
    let iso1 = ch1.stinespring();
    let iso2 = ch2.stinespring();
    let w1 = rho.apply_isometry("At1", &iso1.matrix, &[("B1", iso1.dim_b), ("E1", iso1.dim_e)])?;
    let w = w1.apply_isometry("At2", &iso2.matrix, &[("B2", iso2.dim_b), ("E2", iso2.dim_e)])?;

    let lhs = coherent_information(&w, &["A"], &["B1", "B2", "F"])?
        - coherent_information(&w, &["A"], &["E1", "E2", "F"])?;
    let rhs1 = coherent_information(&w, &["A"], &["B1", "B2", "F"])?
        - coherent_information(&w, &["A"], &["E1", "B2", "F"])?;
    let rhs2 = coherent_information(&w, &["A"], &["B2", "E1", "F"])?
        - coherent_information(&w, &["A"], &["E2", "E1", "F"])?;
    Ok(SplitTerms { lhs, rhs1, rhs2 })
}

/// Result of the single-letter optimization.
#[derive(Debug, Clone)]
pub struct Q1Result {
    /// Best coherent information found (bits); not clamped at zero.
    pub value: f64,
    /// Channel input state attaining it.
    pub argmax: DensityMatrix,
}

/// Maximizes the channel coherent information over input states:
/// Q¹ = max over purifications |φ⟩ of I(A⟩B).
///
/// The purification vector is parametrized by 2d²−1 hypersphere angles and
/// optimized by multi-start Nelder-Mead (one deterministic start at the
/// maximally entangled state plus seeded random restarts), then polished.
/// For qubit Pauli-diagonal channels a dense 1-D sweep over diagonal inputs
/// is also run and the better of the two answers returned; channel
/// covariance makes the diagonal family sufficient there, and the sweep
/// removes simplex-optimizer risk on exactly the channels the bound curves
/// use.
pub fn q1_optimize(ch: &Channel, restarts: usize, tol: f64) -> Q1Result {
    q1_optimize_seeded(ch, restarts, tol, &[])
}

/// [`q1_optimize`] with extra caller-provided warm-start states on (A, At).
pub(crate) fn q1_optimize_seeded(
    ch: &Channel,
    restarts: usize,
    tol: f64,
    warm_starts: &[PureState],
) -> Q1Result {
    let d = ch.dim_in();
    let iso = ch.stinespring();
    let eval = |amps: &[C64]| -> f64 {
        let psi = PureState::new(normalize(amps), &[("A", d), ("At", d)])
            .expect("normalized by construction");
        let omega = psi
            .apply_isometry("At", &iso.matrix, &[("B", iso.dim_b), ("E", iso.dim_e)])
            .expect("dimensions match");
        let s_b = entropy(&omega.reduced(&["B"]).expect("label exists"));
        let s_ab = entropy(&omega.reduced(&["A", "B"]).expect("labels exist"));
        s_b - s_ab
    };
    let objective = |angles: &[f64]| -> f64 { -eval(&amps_from_angles(angles, d * d)) };

    let n_angles = 2 * d * d - 1;
    let mut rng = ChaCha12Rng::seed_from_u64(0x7131_0001);
    let nm = NmOptions {
        max_iters: 400 * n_angles.max(8),
        x_tol: tol.max(1e-12),
        f_tol: 1e-13,
        init_step: 0.35,
    };

    let mut best_angles: Option<Vec<f64>> = None;
    let mut best_val = f64::NEG_INFINITY;
    let mut consider = |angles: Vec<f64>, val: f64, best_angles: &mut Option<Vec<f64>>, best_val: &mut f64| {
        if val > *best_val {
            *best_val = val;
            *best_angles = Some(angles);
        }
    };

    // start 0: maximally entangled purification; then seeded random starts
    let mut starts: Vec<Vec<f64>> = Vec::new();
    let mut uniform = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        uniform[i * d + i] = C64::new(1.0 / libm::sqrt(d as f64), 0.0);
    }
    starts.push(angles_from_amps(&uniform));
    for ws in warm_starts {
        if ws.total_dim() == d * d {
            starts.push(angles_from_amps(ws.amplitudes()));
        }
    }
    while starts.len() < restarts.max(1) {
        let v: Vec<C64> = (0..d * d)
            .map(|_| {
                C64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
            .collect();
        starts.push(angles_from_amps(&normalize_vec(v)));
    }

    for x0 in &starts {
        let (x, neg_val) = nelder_mead_min(objective, x0, &nm);
        consider(x, -neg_val, &mut best_angles, &mut best_val);
    }
    // polish the winner with a tighter simplex
    if let Some(x0) = best_angles.clone() {
        let polish = NmOptions {
            init_step: 0.02,
            ..nm.clone()
        };
        let (x, neg_val) = nelder_mead_min(objective, &x0, &polish);
        consider(x, -neg_val, &mut best_angles, &mut best_val);
    }

    // covariance-reduced diagonal sweep for qubit Pauli-diagonal channels
    if is_pauli_diagonal(ch) {
        let diag_amps = |t: f64| -> Vec<C64> {
            let t = t.clamp(0.0, 1.0);
            let mut amps = vec![C64::new(0.0, 0.0); 4];
            amps[0] = C64::new(libm::sqrt(t), 0.0);
            amps[3] = C64::new(libm::sqrt(1.0 - t), 0.0);
            amps
        };
        let sweep_eval = |t: f64| eval(&diag_amps(t));
        let steps = 10_000usize;
        let mut best_t = 0.0;
        let mut best_sweep = f64::NEG_INFINITY;
        for i in 0..=steps {
            let t = i as f64 / steps as f64;
            let v = sweep_eval(t);
            if v > best_sweep {
                best_sweep = v;
                best_t = t;
            }
        }
        let lo = (best_t - 2.0 / steps as f64).max(0.0);
        let hi = (best_t + 2.0 / steps as f64).min(1.0);
        let (t_ref, v_ref) = golden_section_max(sweep_eval, lo, hi, 1e-12);
        let (t_best, v_best) = if v_ref > best_sweep {
            (t_ref, v_ref)
        } else {
            (best_t, best_sweep)
        };
        if v_best > best_val {
            best_val = v_best;
            best_angles = Some(angles_from_amps(&diag_amps(t_best)));
        }
    }

    let amps = normalize(&amps_from_angles(best_angles.as_ref().unwrap(), d * d));
    let psi = PureState::new(amps, &[("A", d), ("At", d)]).expect("normalized");
    let argmax = psi.reduced(&["At"]).expect("label exists");
    Q1Result {
        value: best_val,
        argmax,
    }
}

/// Lower bound on the value added by `m` as a side channel:
/// Q¹(n ⊗ m) − Q¹(n). The tensor optimization is warm-started from the
/// optimizer of `n` alone tensored with a pure product input on `m`, so the
/// probe cannot fall below −tol by more than optimizer noise.
pub fn value_added_probe(n: &Channel, m: &Channel, restarts: usize, tol: f64) -> f64 {
    let base = q1_optimize(n, restarts, tol);
    let joint_ch = n.tensor(m);

    // warm start: argmax(n) purified on (A_n, At_n), tensored with |0>|0> on m,
    // then rearranged to the (A, At) split of the joint channel
    let psi_n = purify(&base.argmax.flatten("AtN"), "AN");
    let m_part = PureState::basis("AM", m.dim_in(), 0).tensor(&PureState::basis("AtM", m.dim_in(), 0));
    let product = psi_n.tensor(&m_part);
    let warm = product
        .permute(&["AN", "AM", "AtN", "AtM"])
        .and_then(|p| p.merge_adjacent(&["AN", "AM"], "A"))
        .and_then(|p| p.merge_adjacent(&["AtN", "AtM"], "At"))
        .expect("warm-start relabeling");

    let joint = q1_optimize_seeded(&joint_ch, restarts, tol, &[warm]);
    joint.value - base.value
}

fn is_pauli_diagonal(ch: &Channel) -> bool {
    if ch.dim_in() != 2 || ch.dim_out() != 2 {
        return false;
    }
    // Bell vectors (1 ⊗ P)|Φ+> for P = 1, X, Y, Z, as columns
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let bell: [[C64; 4]; 4] = [
        [
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(s, 0.0),
        ],
        [
            C64::new(0.0, 0.0),
            C64::new(s, 0.0),
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
        ],
        [
            C64::new(0.0, 0.0),
            C64::new(0.0, s),
            C64::new(0.0, -s),
            C64::new(0.0, 0.0),
        ],
        [
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-s, 0.0),
        ],
    ];
    let choi = ch.choi();
    let m = choi.matrix();
    for p in 0..4 {
        for q in 0..4 {
            if p == q {
                continue;
            }
            let mut acc = C64::new(0.0, 0.0);
            for r in 0..4 {
                for c in 0..4 {
                    acc += bell[p][r].conj() * m[(r, c)] * bell[q][c];
                }
            }
            if libm::sqrt(acc.norm_sqr()) > 1e-12 {
                return false;
            }
        }
    }
    true
}

fn normalize(amps: &[C64]) -> Vec<C64> {
    normalize_vec(amps.to_vec())
}

fn normalize_vec(mut amps: Vec<C64>) -> Vec<C64> {
    let norm = libm::sqrt(amps.iter().map(|z| z.norm_sqr()).sum::<f64>());
    if norm > 0.0 {
        for z in &mut amps {
            *z /= norm;
        }
    } else {
        amps[0] = C64::new(1.0, 0.0);
    }
    amps
}

/// Hypersphere coordinates: n angles parametrize a unit vector in R^{n+1},
/// reinterpreted pairwise as complex amplitudes.
fn amps_from_angles(angles: &[f64], dim: usize) -> Vec<C64> {
    debug_assert_eq!(angles.len() + 1, 2 * dim);
    let mut reals = vec![0.0f64; 2 * dim];
    let mut sin_prod = 1.0;
    for (k, &th) in angles.iter().enumerate() {
        reals[k] = sin_prod * libm::cos(th);
        sin_prod *= libm::sin(th);
    }
    reals[2 * dim - 1] = sin_prod;
    (0..dim)
        .map(|i| C64::new(reals[2 * i], reals[2 * i + 1]))
        .collect()
}

/// Inverse of [`amps_from_angles`] for warm starts.
fn angles_from_amps(amps: &[C64]) -> Vec<f64> {
    let mut reals = Vec::with_capacity(2 * amps.len());
    for z in amps {
        reals.push(z.re);
        reals.push(z.im);
    }
    let n = reals.len() - 1;
    let mut angles = vec![0.0f64; n];
    for k in 0..n {
        let tail: f64 = reals[k + 1..].iter().map(|x| x * x).sum::<f64>();
        angles[k] = libm::atan2(libm::sqrt(tail), reals[k]);
    }
    // the last coordinate's sign lives in the final angle
    if reals[n] < 0.0 {
        angles[n - 1] = -angles[n - 1];
    }
    angles
}

/// Subsystems of the canonical ansatz the assisted-rate lower bound uses for
/// the depolarizing channel: |φ⟩ = Σ_st √q_st (X^s Z^t ⊗ 1)|Φ+⟩_{A,At} |st⟩_F
/// with weights q = (1−q, q/3, q/3, q/3).
pub fn depolarizing_ansatz(q: f64) -> Result<PureState> {
    depolarizing_ansatz_weights(&[1.0 - q, q / 3.0, q / 3.0, q / 3.0])
}

/// General-weight variant of [`depolarizing_ansatz`]; `weights[2s+t]` is the
/// probability attached to the Pauli X^s Z^t branch.
pub fn depolarizing_ansatz_weights(weights: &[f64; 4]) -> Result<PureState> {
    let total: f64 = weights.iter().sum();
    if weights.iter().any(|&w| w < 0.0) || libm::fabs(total - 1.0) > 1e-12 {
        return Err(Error::BadWeights {
            reason: alloc::format!("ansatz weights must be a probability vector (sum {total})"),
        });
    }
    use crate::qmat::{ComplexMatrix, pauli_x, pauli_z};
    let paulis: [ComplexMatrix; 4] = [
        ComplexMatrix::identity(2),
        pauli_z(),
        pauli_x(),
        &pauli_x() * &pauli_z(),
    ];
    let s = core::f64::consts::FRAC_1_SQRT_2;
    // index layout (a, at, f) with f = 2s + t
    let mut amps = vec![C64::new(0.0, 0.0); 2 * 2 * 4];
    for (f, p) in paulis.iter().enumerate() {
        let w = libm::sqrt(weights[f]);
        for a in 0..2 {
            for at in 0..2 {
                // (P ⊗ 1)|Φ+> has amplitude P[a, at]/√2 at |a, at>
                amps[(a * 2 + at) * 4 + f] += p[(a, at)] * (w * s);
            }
        }
    }
    PureState::new(amps, &[("A", 2), ("At", 2), ("F", 4)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{depolarizing, identity};

    #[test]
    fn entropy_of_maximally_mixed_qubit() {
        assert!((entropy(&DensityMatrix::maximally_mixed("S", 2)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_pure_state() {
        let rho = PureState::basis("S", 4, 2).to_density();
        assert!(entropy(&rho).abs() < 1e-12);
    }

    #[test]
    fn coherent_information_of_bell_state() {
        let rho = PureState::max_entangled(2, "A", "B").to_density();
        let i = coherent_information(&rho, &["A"], &["B"]).unwrap();
        assert!((i - 1.0).abs() < 1e-12);
        let mi = mutual_information(&rho, &["A"], &["B"]).unwrap();
        assert!((mi - 2.0).abs() < 1e-12);
    }

    #[test]
    fn identity_channel_transmits_one_bit() {
        let i =
            channel_coherent_information(&identity(2), &DensityMatrix::maximally_mixed("S", 2))
                .unwrap();
        assert!((i - 1.0).abs() < 1e-12);
    }

    #[test]
    fn angle_parametrization_roundtrip() {
        let amps = normalize(&[
            C64::new(0.3, -0.2),
            C64::new(-0.1, 0.7),
            C64::new(0.05, 0.4),
            C64::new(0.2, 0.1),
        ]);
        let angles = angles_from_amps(&amps);
        assert_eq!(angles.len(), 7);
        let back = amps_from_angles(&angles, 4);
        for (a, b) in amps.iter().zip(&back) {
            assert!((a - b).norm_sqr() < 1e-20);
        }
    }

    #[test]
    fn pauli_diagonal_detection() {
        assert!(is_pauli_diagonal(&depolarizing(0.2).unwrap()));
        assert!(!is_pauli_diagonal(
            &crate::channels::amplitude_damping(0.3).unwrap()
        ));
    }
}
