//! Factorization over extension towers (Trager's norm method) and exact
//! resultants of polynomials with coefficients in a polynomial ring.

use super::algebra::{
    tp_deg, tp_derivative, tp_div_exact, tp_gcd, tp_is_zero, tp_monic, tp_mul, tp_shift,
    tp_squarefree_decomposition, Algebraic, TPoly, Tower,
};
use num_rational::BigRational;

/// Factor a univariate polynomial over the full tower field:
/// f = unit · Π f_i^{e_i}, the f_i monic irreducible.  Deterministic order.
pub fn factor_over_tower(tw: &Tower, f: &[Algebraic]) -> (Algebraic, Vec<(TPoly, u32)>) {
    let (unit, parts) = tp_squarefree_decomposition(tw, f);
    let mut out = Vec::new();
    for (part, mult) in parts {
        for g in factor_squarefree_at(tw, tw.num_levels(), &part) {
            out.push((g, mult));
        }
    }
    out.sort_by_key(|(g, m)| (g.len(), format!("{:?}", g), *m));
    (unit, out)
}

fn factor_squarefree_at(tw: &Tower, level: usize, f: &TPoly) -> Vec<TPoly> {
    let f = tp_monic(tw, f);
    let deg = tp_deg(&f).expect("factoring the zero polynomial");
    if deg <= 1 {
        return if deg == 0 { vec![] } else { vec![f] };
    }
    if level == 0 {
        let rats: Vec<BigRational> = f
            .iter()
            .map(|c| c.as_rat().expect("level-0 element is not rational").clone())
            .collect();
        let (_, factors) = super::zfactor::factor_rational(&rats);
        return factors
            .into_iter()
            .map(|(g, m)| {
                debug_assert_eq!(m, 1, "squarefree input must have squarefree factors");
                g.into_iter().map(Algebraic::from_rat).collect()
            })
            .collect();
    }

    trager(tw, level, &f)
}

/// Trager's algorithm: factor a monic squarefree f over K = K_{level-1}(α)
/// by factoring the norm of a generic shift over K_{level-1}.
fn trager(tw: &Tower, level: usize, f: &TPoly) -> Vec<TPoly> {
    let generator = Algebraic::Ext {
        level,
        coeffs: vec![Algebraic::zero(), Algebraic::one()],
    };
    let min_poly = &tw.levels()[level - 1].min_poly;
    // minimal polynomial as a polynomial in y with constant (in x) coefficients
    let m_y: Vec<TPoly> = min_poly.iter().map(|c| vec![c.clone()]).collect();

    for k in 0..32u32 {
        let shift = tw.mul(&Algebraic::from_int(-(k as i64)), &generator);
        let fk = if k == 0 {
            f.clone()
        } else {
            tp_shift(tw, f, &shift)
        };
        // rewrite fk as a polynomial in y (the generator) with K_{level-1}[x] coefficients
        let mut g_y: Vec<TPoly> = vec![vec![]; min_poly.len() - 1];
        for (i, c) in fk.iter().enumerate() {
            let parts: Vec<Algebraic> = match c {
                Algebraic::Ext { level: l, coeffs } if *l == level => coeffs.clone(),
                other => vec![other.clone()],
            };
            for (j, cij) in parts.into_iter().enumerate() {
                if cij.is_zero() {
                    continue;
                }
                if g_y[j].len() <= i {
                    g_y[j].resize(i + 1, Algebraic::zero());
                }
                g_y[j][i] = cij;
            }
        }
        while g_y.last().is_some_and(|p| tp_is_zero(p)) {
            g_y.pop();
        }

        let norm = resultant_poly_coeffs(tw, &m_y, &g_y);
        let norm = tp_monic(tw, &norm);
        // need the norm squarefree for the gcd split to produce irreducibles
        let dn = tp_derivative(tw, &norm);
        if tp_gcd(tw, &norm, &dn).len() != 1 {
            continue;
        }

        let sub = factor_squarefree_at(tw, level - 1, &norm);
        let mut out = Vec::new();
        let mut total = 0usize;
        for nj in sub {
            let h = tp_gcd(tw, &fk, &nj);
            let d = tp_deg(&h).unwrap_or(0);
            if d == 0 {
                continue;
            }
            total += d;
            let unshifted = if k == 0 {
                h
            } else {
                let back = tw.neg(&shift);
                tp_shift(tw, &h, &back)
            };
            out.push(tp_monic(tw, &unshifted));
        }
        assert_eq!(
            total,
            tp_deg(f).unwrap(),
            "norm factorization lost degree; inconsistent tower"
        );
        return out;
    }
    panic!("no squarefree norm found after 32 shifts; tower is likely inconsistent");
}

/// Resultant in the outer variable of two polynomials whose coefficients are
/// themselves univariate polynomials over the tower field.  Computed as the
/// Sylvester determinant via fraction-free (Bareiss) elimination.
pub fn resultant_poly_coeffs(tw: &Tower, a: &[TPoly], b: &[TPoly]) -> TPoly {
    let mut a: Vec<TPoly> = a.to_vec();
    let mut b: Vec<TPoly> = b.to_vec();
    while a.last().is_some_and(|p| tp_is_zero(p)) {
        a.pop();
    }
    while b.last().is_some_and(|p| tp_is_zero(p)) {
        b.pop();
    }
    assert!(
        !a.is_empty() && !b.is_empty(),
        "resultant with zero polynomial"
    );
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 {
        return tp_pow(tw, &a[0], n as u32);
    }
    if n == 0 {
        return tp_pow(tw, &b[0], m as u32);
    }
    let size = m + n;
    let mut mat: Vec<Vec<TPoly>> = vec![vec![vec![]; size]; size];
    for row in 0..n {
        for (j, c) in a.iter().enumerate() {
            mat[row][row + (m - j)] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in b.iter().enumerate() {
            mat[n + row][row + (n - j)] = c.clone();
        }
    }
    bareiss_determinant(tw, mat)
}

fn tp_pow(tw: &Tower, p: &TPoly, e: u32) -> TPoly {
    let mut acc: TPoly = vec![Algebraic::one()];
    for _ in 0..e {
        acc = tp_mul(tw, &acc, p);
    }
    acc
}

/// Fraction-free determinant with row pivoting; entries are polynomials over
/// the tower field, all divisions exact.
#[allow(clippy::needless_range_loop)]
fn bareiss_determinant(tw: &Tower, mut m: Vec<Vec<TPoly>>) -> TPoly {
    let n = m.len();
    let mut sign = 1i32;
    let mut prev: TPoly = vec![Algebraic::one()];
    for k in 0..n - 1 {
        // pivot
        if tp_is_zero(&m[k][k]) {
            let mut found = None;
            for r in k + 1..n {
                if !tp_is_zero(&m[r][k]) {
                    found = Some(r);
                    break;
                }
            }
            match found {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return vec![],
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = tp_mul(tw, &m[k][k], &m[i][j]);
                let t2 = tp_mul(tw, &m[i][k], &m[k][j]);
                let num = tw.vec_sub(&t1, &t2);
                m[i][j] = if tp_is_zero(&num) {
                    vec![]
                } else {
                    tp_div_exact(tw, &num, &prev)
                };
            }
            m[i][k] = vec![];
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = tw.vec_sub(&[], &det);
    }
    det
}
