//! Derivative-free scalar and simplex optimizers used by the capacity
//! calculations: golden-section search, bisection root-finding, and an
//! adaptive Nelder-Mead simplex.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Maximizes `f` on `[a, b]` by golden-section search. Assumes `f` is
/// unimodal on the bracket. Returns `(x_max, f_max)`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Bisection root of `f` on a bracket with a strict sign change. Returns the
/// midpoint and the final bracket once its width is below `tol`.
pub fn bisect_root(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, (f64, f64))> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if !(f_lo > 0.0 && f_hi < 0.0 || f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok((mid, (lo, hi)));
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), (lo, hi)))
}

/// Termination and budget knobs for [`nelder_mead_min`].
#[derive(Debug, Clone)]
pub struct NmOptions {
    pub max_iters: usize,
    /// Stop when the simplex diameter (inf-norm) falls below this.
    pub x_tol: f64,
    /// Stop when the value spread over the simplex falls below this.
    pub f_tol: f64,
    /// Initial step used to build the starting simplex around `x0`.
    pub init_step: f64,
}

impl Default for NmOptions {
    fn default() -> Self {
        Self {
            max_iters: 4000,
            x_tol: 1e-10,
            f_tol: 1e-13,
            init_step: 0.4,
        }
    }
}

/// Minimizes `f` with the Nelder-Mead simplex, using the dimension-adaptive
/// expansion/contraction coefficients that behave well in higher dimensions.
/// Returns the best vertex and its value.
pub fn nelder_mead_min(
    f: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    opts: &NmOptions,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    assert!(n >= 1, "Nelder-Mead needs at least one dimension");
    let nf = n as f64;
    // Gao-Han adaptive coefficients
    let alpha = 1.0;
    let beta = 1.0 + 2.0 / nf;
    let gamma = 0.75 - 1.0 / (2.0 * nf);
    let delta = 1.0 - 1.0 / nf;

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.init_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    for _ in 0..opts.max_iters {
        // order: best first
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_unstable_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let f_spread = values[n] - values[0];
        let x_spread = simplex[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| libm::fabs(a - b))
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if f_spread < opts.f_tol || x_spread < opts.x_tol {
            break;
        }

        // centroid of all but the worst
        let mut centroid = alloc::vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / nf;
            }
        }
        let combine = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = combine(alpha);
        let f_r = f(&reflected);
        if f_r < values[0] {
            let expanded = combine(beta);
            let f_e = f(&expanded);
            if f_e < f_r {
                simplex[n] = expanded;
                values[n] = f_e;
            } else {
                simplex[n] = reflected;
                values[n] = f_r;
            }
        } else if f_r < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_r;
        } else {
            let (contracted, f_c) = if f_r < values[n] {
                let c = combine(gamma);
                let fc = f(&c);
                (c, fc)
            } else {
                let c = combine(-gamma);
                let fc = f(&c);
                (c, fc)
            };
            if f_c < values[n].min(f_r) {
                simplex[n] = contracted;
                values[n] = f_c;
            } else {
                // shrink toward the best vertex
                for i in 1..=n {
                    let v: Vec<f64> = simplex[i]
                        .iter()
                        .zip(&simplex[0])
                        .map(|(x, b)| b + delta * (x - b))
                        .collect();
                    values[i] = f(&v);
                    simplex[i] = v;
                }
            }
        }
    }

    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    (simplex[best].clone(), values[best])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| 1.0 - (x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8);
        assert!((fx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bisect_linear_root() {
        let (x, _) = bisect_root(|x| 1.0 - 4.0 * x, 0.2, 0.3, 1e-10).unwrap();
        assert!((x - 0.25).abs() < 1e-9);
    }

    #[test]
    fn bisect_requires_sign_change() {
        assert!(matches!(
            bisect_root(|x| x * x + 1.0, -1.0, 1.0, 1e-8),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn nelder_mead_quadratic_bowl() {
        let f = |x: &[f64]| x.iter().enumerate().map(|(i, v)| (v - i as f64) * (v - i as f64)).sum();
        let (x, fx) = nelder_mead_min(f, &[5.0, 5.0, 5.0, 5.0], &NmOptions::default());
        assert!(fx < 1e-12);
        for (i, v) in x.iter().enumerate() {
            assert!((v - i as f64).abs() < 1e-5);
        }
    }
}
