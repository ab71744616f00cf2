//! The Cauchy transform on the unit disk as a discrete convolution, and the
//! finite-difference d-bar residual used to verify its solutions.
//!
//! The operator P(h)(t) = (1/2πi) ∫ h(ζ)/(ζ-t) dζ∧dζ̄ rewrites against the
//! area measure as convolution with the kernel 1/(π τ), the fundamental
//! solution of ∂/∂t̄.  On the grid the kernel weight of the singular cell is
//! its exact integral, which vanishes by antisymmetry.

use super::grid::GridFunction;
use super::DiskError;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Solve ∂u/∂t̄ = f by the Cauchy transform, via FFT convolution with the
/// discrete kernel h²/(π τ).  Requires f supported strictly inside the disk
/// with a margin of at least two grid cells.
pub fn cauchy_transform(f: &GridFunction) -> Result<GridFunction, DiskError> {
    let n = f.n();
    let h = f.h();
    if f.support_extent() > 1.0 - 2.0 * h {
        return Err(DiskError::SupportViolation);
    }
    let m = 2 * n; // zero-padded size for linear convolution
    let mut fa = vec![Complex64::new(0.0, 0.0); m * m];
    for row in 0..n {
        for col in 0..n {
            fa[row * m + col] = f.get(row, col);
        }
    }
    // kernel at offsets (dj, di), wrapped into the padded grid; cells near
    // the singularity get their exact integral instead of the midpoint value
    let mut ka = vec![Complex64::new(0.0, 0.0); m * m];
    let w = h * h / PI;
    const NEAR: i64 = 4;
    for dj in -(n as i64 - 1)..=(n as i64 - 1) {
        for di in -(n as i64 - 1)..=(n as i64 - 1) {
            if di == 0 && dj == 0 {
                continue; // exact cell integral of the odd kernel is zero
            }
            let val = if di.abs() <= NEAR && dj.abs() <= NEAR {
                cell_integral(di, dj, h) / PI
            } else {
                let tau = Complex64::new(di as f64 * h, dj as f64 * h);
                Complex64::new(w, 0.0) / tau
            };
            let r = ((dj + m as i64) % m as i64) as usize;
            let c = ((di + m as i64) % m as i64) as usize;
            ka[r * m + c] = val;
        }
    }
    fft2_in_place(&mut fa, m, false);
    fft2_in_place(&mut ka, m, false);
    for (a, b) in fa.iter_mut().zip(&ka) {
        *a *= b;
    }
    fft2_in_place(&mut fa, m, true);

    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for row in 0..n {
        for col in 0..n {
            let t = Complex64::new(-1.0 + (col as f64 + 0.5) * h, -1.0 + (row as f64 + 0.5) * h);
            if t.norm() <= 1.0 {
                out[row * n + col] = fa[row * m + col];
            }
        }
    }
    Ok(GridFunction::from_values(n, 1.0, out))
}

/// Exact integral of 1/τ over the grid cell centered at (di·h, dj·h), via
/// the antiderivative G(x,y) = -i·z·(ln z - 1), z = x + iy, evaluated at the
/// cell corners.  Cells in the left half-plane reduce to their mirror image
/// through the origin so the logarithm's branch cut is never crossed.
fn cell_integral(di: i64, dj: i64, h: f64) -> Complex64 {
    if di < 0 || (di == 0 && dj < 0) {
        return -cell_integral(-di, -dj, h);
    }
    let (x0, x1) = (di as f64 * h - h / 2.0, di as f64 * h + h / 2.0);
    let (y0, y1) = (dj as f64 * h - h / 2.0, dj as f64 * h + h / 2.0);
    let g = |x: f64, y: f64| -> Complex64 {
        let z = Complex64::new(x, y);
        -Complex64::new(0.0, 1.0) * z * (z.ln() - 1.0)
    };
    g(x1, y1) - g(x0, y1) - g(x1, y0) + g(x0, y0)
}

fn fft2_in_place(data: &mut [Complex64], m: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(m)
    } else {
        planner.plan_fft_forward(m)
    };
    // rows
    for row in 0..m {
        fft.process(&mut data[row * m..(row + 1) * m]);
    }
    // columns via transpose
    let mut col = vec![Complex64::new(0.0, 0.0); m];
    for c in 0..m {
        for r in 0..m {
            col[r] = data[r * m + c];
        }
        fft.process(&mut col);
        for r in 0..m {
            data[r * m + c] = col[r];
        }
    }
    if inverse {
        let scale = 1.0 / (m * m) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }
}

/// Centered-difference ∂/∂t̄ = ½(∂_x + i ∂_y) of a grid function, defined on
/// cells whose four neighbors lie inside the disk; zero elsewhere.
pub fn dbar_grid(u: &GridFunction) -> GridFunction {
    let n = u.n();
    let h = u.h();
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for row in 1..n - 1 {
        for col in 1..n - 1 {
            let inside = |r: usize, c: usize| u.point(r, c).norm() <= 1.0;
            if !(inside(row, col)
                && inside(row + 1, col)
                && inside(row - 1, col)
                && inside(row, col + 1)
                && inside(row, col - 1))
            {
                continue;
            }
            let ux = (u.get(row, col + 1) - u.get(row, col - 1)) / (2.0 * h);
            let uy = (u.get(row + 1, col) - u.get(row - 1, col)) / (2.0 * h);
            out[row * n + col] = 0.5 * (ux + Complex64::new(0.0, 1.0) * uy);
        }
    }
    GridFunction::from_values(n, 1.0, out)
}

/// Residual of a d-bar solution: ‖D̄u - f‖₂ / ‖f‖₂ over interior cells, or
/// the absolute residual (flagged) when f = 0.
#[derive(Clone, Copy, Debug)]
pub struct DbarResidual {
    pub value: f64,
    pub absolute: bool,
}

pub fn verify_dbar_solution(u: &GridFunction, f: &GridFunction) -> Result<DbarResidual, DiskError> {
    if u.n() != f.n() {
        return Err(DiskError::GridMismatch);
    }
    let n = u.n();
    let h = u.h();
    let du = dbar_grid(u);
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for row in 1..n - 1 {
        for col in 1..n - 1 {
            // compare only where the difference stencil was defined
            let margin = u.point(row, col).norm() <= 1.0 - 2.0 * h;
            if !margin {
                continue;
            }
            let d = du.get(row, col) - f.get(row, col);
            num += d.norm_sqr();
            den += f.get(row, col).norm_sqr();
        }
    }
    let h2 = h * h;
    let num = (num * h2).sqrt();
    let den = (den * h2).sqrt();
    if den == 0.0 {
        Ok(DbarResidual {
            value: num,
            absolute: true,
        })
    } else {
        Ok(DbarResidual {
            value: num / den,
            absolute: false,
        })
    }
}

/// The standard smooth bump supported in |t| ≤ 1/2 and its d-bar derivative,
/// used as an analytic test pair.
pub fn bump(t: Complex64) -> Complex64 {
    let r = t.norm_sqr();
    if 4.0 * r >= 1.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::new((-1.0 / (1.0 - 4.0 * r)).exp(), 0.0)
}

/// ∂(bump)/∂t̄ = g'(r)·t with r = |t|² and g(r) = exp(-1/(1-4r)).
pub fn bump_dbar(t: Complex64) -> Complex64 {
    let r = t.norm_sqr();
    if 4.0 * r >= 1.0 {
        return Complex64::new(0.0, 0.0);
    }
    let g = (-1.0 / (1.0 - 4.0 * r)).exp();
    let gp = -4.0 * g / (1.0 - 4.0 * r).powi(2);
    t * gp
}

/// Second analytic pair: u = t̄·bump, f = ∂u/∂t̄ = bump + t̄·∂(bump)/∂t̄.
pub fn tbar_bump(t: Complex64) -> Complex64 {
    t.conj() * bump(t)
}

pub fn tbar_bump_dbar(t: Complex64) -> Complex64 {
    bump(t) + t.conj() * bump_dbar(t)
}

/// Polynomial bump (1 - 4|t|²)⁴ on |t| ≤ 1/2: compactly supported and C³,
/// so the centered d-bar stencil stays uniformly second order on it.
pub fn poly_bump(t: Complex64) -> Complex64 {
    let r = t.norm_sqr();
    if 4.0 * r >= 1.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::new((1.0 - 4.0 * r).powi(4), 0.0)
}

/// ∂(poly_bump)/∂t̄ = -16 t (1 - 4|t|²)³.
pub fn poly_bump_dbar(t: Complex64) -> Complex64 {
    let r = t.norm_sqr();
    if 4.0 * r >= 1.0 {
        return Complex64::new(0.0, 0.0);
    }
    t * (-16.0 * (1.0 - 4.0 * r).powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_input_gives_zero_output() {
        let f = GridFunction::zeros(32);
        let u = cauchy_transform(&f).unwrap();
        assert_eq!(u.l2_norm(), 0.0);
    }

    #[test]
    fn support_violation_is_rejected() {
        let f = GridFunction::sample(32, 1.0, |_| Complex64::new(1.0, 0.0));
        assert!(matches!(
            cauchy_transform(&f),
            Err(DiskError::SupportViolation)
        ));
    }

    #[test]
    fn inverts_dbar_on_bump() {
        let n = 64;
        let f = GridFunction::sample(n, 0.6, bump_dbar);
        let u0 = GridFunction::sample(n, 0.6, bump);
        let u = cauchy_transform(&f).unwrap();
        let err = u.sub(&u0).unwrap().l2_norm() / u0.l2_norm();
        assert!(err < 2e-2, "relative error {err} too large at n=64");
    }

    #[test]
    fn far_field_matches_total_mass_over_pi_t() {
        // P(f)(t) ≈ (∫f)/(π t) far from the support
        let n = 64;
        let f = GridFunction::sample(n, 0.3, |t| {
            if t.norm() < 0.1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let mass: Complex64 = f.values().iter().sum::<Complex64>() * f.h() * f.h();
        let u = cauchy_transform(&f).unwrap();
        // probe at a far interior point
        let (row, col) = (n / 2, (0.85f64 / f.h()) as usize + n / 2);
        let t = u.point(row, col);
        let expect = mass / (PI * t);
        let got = u.get(row, col);
        assert!(
            (got - expect).norm() < 0.02 * expect.norm().max(1e-12),
            "far field {got} vs {expect}"
        );
    }

    #[test]
    fn dbar_residual_of_computed_solution_is_small() {
        let n = 128;
        let f = GridFunction::sample(n, 0.6, poly_bump_dbar);
        let u = cauchy_transform(&f).unwrap();
        let res = verify_dbar_solution(&u, &f).unwrap();
        assert!(!res.absolute);
        assert!(res.value < 1e-2, "residual {}", res.value);
    }

    #[test]
    fn solver_error_small_and_second_order() {
        let err_at = |n: usize| {
            let f = GridFunction::sample(n, 0.6, bump_dbar);
            let u0 = GridFunction::sample(n, 0.6, bump);
            let u = cauchy_transform(&f).unwrap();
            u.sub(&u0).unwrap().l2_norm() / u0.l2_norm()
        };
        let e128 = err_at(128);
        assert!(e128 < 1e-2, "solver error {e128}");
        let e256 = err_at(256);
        assert!(
            e256 < e128,
            "no improvement when doubling: {e128} -> {e256}"
        );
    }

    #[test]
    fn residual_flags_absolute_when_f_is_zero() {
        let n = 32;
        let u = GridFunction::zeros(n);
        let f = GridFunction::zeros(n);
        let res = verify_dbar_solution(&u, &f).unwrap();
        assert!(res.absolute);
        assert_eq!(res.value, 0.0);
    }

    #[test]
    fn centered_dbar_is_second_order() {
        // u = t̄·bump has an analytic d-bar; the stencil residual should
        // shrink by about 4x when the grid doubles
        let res_at = |n: usize| {
            let u = GridFunction::sample(n, 0.6, tbar_bump);
            let f = GridFunction::sample(n, 0.6, tbar_bump_dbar);
            verify_dbar_solution(&u, &f).unwrap().value
        };
        let r64 = res_at(64);
        let r128 = res_at(128);
        let ratio = r64 / r128;
        assert!(ratio > 2.5, "convergence ratio {ratio} too small");
    }
}
