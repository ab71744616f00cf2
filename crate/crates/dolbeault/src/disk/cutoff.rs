//! Decay of the logarithmic cut-off sequence: the gradient-norm integrals
//! ∫_{Δ_{ε_k}} (|t| log|t|)^{-2} dV with ε_k = exp(-exp(k)), evaluated both
//! by the exact antiderivative and by quadrature in the doubly-logarithmic
//! variable u = log log(1/ρ).  Radii like e^{-e^3} ≈ 2·10^{-9} (and far
//! smaller) make uniform-in-ρ grids useless; the substituted integrand is
//! evaluated in log space so every node is representable.

use super::DiskError;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug)]
pub struct CutoffCheck {
    pub k: u32,
    /// Exact value 2π e^{-k} from the antiderivative [-1/log ρ].
    pub analytic: f64,
    /// Quadrature of the substituted integral on a uniform u-grid.
    pub quadrature: f64,
    pub rel_err: f64,
}

/// Compute the cut-off norm for index k and confirm it by quadrature.
/// `resolution` is the number of u-grid nodes (rounded up to even intervals),
/// `tol` the allowed relative disagreement.
pub fn cutoff_norm(k: u32, resolution: usize, tol: f64) -> Result<CutoffCheck, DiskError> {
    assert!(k >= 1, "cut-off index starts at 1");
    let analytic = 2.0 * PI * (-(k as f64)).exp();

    // substituted integral: ∫_k^∞ F(ρ(u)) |dρ/du| du, truncated where the
    // tail is negligible relative to the value
    let a = k as f64;
    let b = a + 30.0;
    let m = resolution.max(201) | 1; // odd node count for Simpson
    let hstep = (b - a) / (m - 1) as f64;
    let integrand = |u: f64| -> f64 {
        // log ρ = -e^u; F = 1/(ρ log²ρ) and |dρ/du| = ρ e^u, all in log space
        let log_rho = -u.exp();
        let ln_f = -log_rho - 2.0 * (-log_rho).ln();
        let ln_jac = log_rho + u;
        (ln_f + ln_jac).exp()
    };
    let mut acc = integrand(a) + integrand(b);
    for i in 1..m - 1 {
        let u = a + i as f64 * hstep;
        acc += integrand(u) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    let quadrature = 2.0 * PI * acc * hstep / 3.0;

    let rel_err = (quadrature - analytic).abs() / analytic;
    if rel_err > tol {
        return Err(DiskError::QuadratureMismatch {
            analytic,
            quadrature,
            tol,
        });
    }
    Ok(CutoffCheck {
        k,
        analytic,
        quadrature,
        rel_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_closed_form_for_small_k() {
        for (k, expect) in [
            (1u32, 2.0 * PI * (-1.0f64).exp()),
            (2, 2.0 * PI * (-2.0f64).exp()),
        ] {
            let c = cutoff_norm(k, 4001, 0.01).unwrap();
            assert!(
                (c.analytic - expect).abs() < 1e-12,
                "analytic {}",
                c.analytic
            );
            assert!(c.rel_err < 0.01);
        }
        // the closed-form values for k = 1, 2
        assert!((2.0 * PI * (-1.0f64).exp() - 2.3114).abs() < 1e-3);
        assert!((2.0 * PI * (-2.0f64).exp() - 0.8503).abs() < 1e-3);
    }

    #[test]
    fn strictly_decreasing_sequence() {
        let vals: Vec<f64> = (1..=5)
            .map(|k| cutoff_norm(k, 2001, 0.01).unwrap().quadrature)
            .collect();
        for w in vals.windows(2) {
            assert!(w[0] > w[1]);
        }
        // and the tail heads to zero
        assert!(vals[4] < 0.05);
    }

    #[test]
    fn quadrature_accuracy_within_a_percent() {
        for k in 1..=3 {
            let c = cutoff_norm(k, 4001, 0.01).unwrap();
            assert!(c.rel_err < 0.01, "k={k}: rel err {}", c.rel_err);
        }
    }
}
