//! Per-point singularity invariants computed from Puiseux branches:
//! multiplicity, modified multiplicity, intersection numbers, the delta
//! invariant (multiplicity sequences by repeated blowup plus pairwise
//! intersections) and the conductor exponent of unibranch points.

use super::bipoly::BiPoly;
use super::expand::{default_truncation, puiseux_expand_in, ExpandOptions, DEFAULT_TRUNCATION_CAP};
use super::series::Series;
use super::{PuiseuxBranch, PuiseuxError};
use crate::exact::{Algebraic, SharedTower, Tower};
use serde::Serialize;
use std::sync::Arc;

/// The invariants of one singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityInvariants {
    /// mult_x X: sum of branch multiplicities.
    pub multiplicity: u32,
    /// mult'_x X: sum of (branch multiplicity - 1); the local degree of Z - |Z|.
    pub mult_prime: u32,
    /// The delta invariant (local genus defect).
    pub delta: u64,
    /// Number of local analytic branches (counting conjugates).
    pub branch_count: u32,
    /// Conductor exponent eta = 2*delta, defined here for unibranch points.
    pub conductor: Option<u64>,
}

impl SingularityInvariants {
    pub fn from_branches(branches: &[PuiseuxBranch]) -> Result<Self, PuiseuxError> {
        let multiplicity = multiplicity_branches(branches)?;
        let mp = mult_prime(branches)?;
        let delta = delta_invariant(branches)?;
        let branch_count: u32 = branches.iter().map(|b| b.conjugacy_count()).sum();
        let conductor = if branch_count == 1 {
            Some(2 * delta)
        } else {
            None
        };
        debug_assert!(delta >= mp as u64);
        debug_assert_eq!(mp, multiplicity - branch_count);
        Ok(SingularityInvariants {
            multiplicity,
            mult_prime: mp,
            delta,
            branch_count,
            conductor,
        })
    }
}

/// Expand a local equation and compute its invariants, doubling the
/// truncation order on indeterminate results up to the cap.
pub fn compute_invariants_in(
    tower: Tower,
    f: &BiPoly,
    opts: &ExpandOptions,
) -> Result<(SharedTower, Vec<PuiseuxBranch>, SingularityInvariants), PuiseuxError> {
    let base = opts.truncation.unwrap_or_else(|| default_truncation(f));
    let cap = opts
        .truncation_cap
        .unwrap_or(DEFAULT_TRUNCATION_CAP)
        .max(base);
    let mut n = base;
    loop {
        let o = ExpandOptions {
            truncation: Some(n),
            ..opts.clone()
        };
        let attempt = puiseux_expand_in(tower.clone(), f, &o).and_then(|(tw, branches)| {
            let inv = SingularityInvariants::from_branches(&branches)?;
            Ok((tw, branches, inv))
        });
        match attempt {
            Err(PuiseuxError::Indeterminate { .. }) if n < cap => n = (n * 2).min(cap),
            other => return other,
        }
    }
}

/// Multiplicity of the curve germ as the degree of the initial homogeneous
/// form (the tangent-cone computation).
pub fn multiplicity_initial_form(f: &BiPoly) -> Result<u32, PuiseuxError> {
    if f.is_zero() {
        return Err(PuiseuxError::ZeroPolynomial);
    }
    if !f.eval_origin().is_zero() {
        return Err(PuiseuxError::NotOnCurve);
    }
    Ok(f.min_total_degree())
}

/// Multiplicity as the sum over branches of min(s, ord w), weighted by
/// conjugacy counts (the sheet count of a generic projection).
pub fn multiplicity_branches(branches: &[PuiseuxBranch]) -> Result<u32, PuiseuxError> {
    if branches.is_empty() {
        return Err(PuiseuxError::EmptyBranchList);
    }
    Ok(branches
        .iter()
        .map(|b| b.conjugacy_count() * b.multiplicity())
        .sum())
}

/// Modified multiplicity: Σ (branch multiplicity - 1); regular branches do
/// not contribute.
pub fn mult_prime(branches: &[PuiseuxBranch]) -> Result<u32, PuiseuxError> {
    if branches.is_empty() {
        return Err(PuiseuxError::EmptyBranchList);
    }
    Ok(branches
        .iter()
        .map(|b| b.conjugacy_count() * (b.multiplicity() - 1))
        .sum())
}

fn towers_compatible(a: &SharedTower, b: &SharedTower) -> bool {
    Arc::ptr_eq(a, b) || (a.num_levels() == 0 && b.num_levels() == 0)
}

/// The germ equation of one branch: the monic Weierstrass polynomial of
/// degree s in w whose roots are the s sheets of the branch, returned as
/// w-coefficients that are series in z.  Built from power sums of the sheet
/// series, so no roots of unity are adjoined.
fn germ_equation(tw: &Tower, b: &PuiseuxBranch) -> Vec<Series> {
    let s = b.ramification() as usize;
    let w = b.series();
    // power sums over the sheets: p_j(z) picks the exponents of w^j divisible
    // by s, scaled by s
    let mut wpow = Series::monomial(Algebraic::one(), 0);
    let mut psums: Vec<Series> = Vec::with_capacity(s + 1);
    psums.push(Series::zero()); // unused p_0 slot
    for _ in 1..=s {
        wpow = wpow.mul(tw, w);
        let mut kept: Vec<Algebraic> = Vec::new();
        for (k, c) in wpow.coeffs().iter().enumerate() {
            if k % s == 0 {
                let idx = k / s;
                if kept.len() <= idx {
                    kept.resize(idx + 1, Algebraic::zero());
                }
                kept[idx] = tw.mul(c, &Algebraic::from_int(s as i64));
            }
        }
        // a z-coefficient at exponent k is known iff k·s < prec(w^j)
        let prec = if wpow.is_exact() {
            None
        } else if wpow.prec() == 0 {
            Some(0)
        } else {
            Some((wpow.prec() - 1) / s + 1)
        };
        psums.push(Series::from_coeffs(kept, prec));
    }
    // Newton's identities: e_k = (1/k) Σ_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    let mut es: Vec<Series> = vec![Series::monomial(Algebraic::one(), 0)];
    for k in 1..=s {
        let mut acc = Series::zero();
        for i in 1..=k {
            let term = es[k - i].mul(tw, &psums[i]);
            if i % 2 == 1 {
                acc = acc.add(tw, &term);
            } else {
                acc = acc.sub(tw, &term);
            }
        }
        let kinv = Algebraic::from_frac(1, k as i64);
        es.push(acc.scale(tw, &kinv));
    }
    // F(z, w) = Σ_k (-1)^k e_k(z) w^{s-k}
    let mut coeffs: Vec<Series> = vec![Series::zero(); s + 1];
    for (k, e) in es.into_iter().enumerate() {
        let signed = if k % 2 == 1 { e.neg(tw) } else { e };
        coeffs[s - k] = signed;
    }
    coeffs
}

/// Evaluate a w-polynomial with z-series coefficients at the parametrization
/// (t^s, w(t)) of a branch.
fn eval_wpoly_at_branch(tw: &Tower, coeffs: &[Series], b: &PuiseuxBranch) -> Series {
    let s = b.ramification() as usize;
    let w = b.series();
    let mut acc = Series::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(tw, w);
        acc = acc.add(tw, &c.stretch(s));
    }
    acc
}

/// Intersection multiplicity of two distinct parametrized germs:
/// ord_t f2(b1(t)) where f2 is the local (germ) equation of b2.
pub fn intersection_multiplicity(
    b1: &PuiseuxBranch,
    b2: &PuiseuxBranch,
) -> Result<u64, PuiseuxError> {
    if !towers_compatible(b1.tower(), b2.tower()) {
        return Err(PuiseuxError::IncompatibleTowers);
    }
    let tw = b1.tower().as_ref();
    if b1.ramification() == b2.ramification() {
        let n = b1.series().prec().min(b2.series().prec());
        let d = b1.series().sub(tw, b2.series());
        if d.is_exactly_zero() {
            return Err(PuiseuxError::EqualGerms);
        }
        if d.is_known_zero() && n == usize::MAX {
            return Err(PuiseuxError::EqualGerms);
        }
    }
    let f2 = germ_equation(tw, b2);
    let v = eval_wpoly_at_branch(tw, &f2, b1);
    match v.order() {
        Ok(Some(k)) => Ok(k as u64),
        Ok(None) => Err(PuiseuxError::EqualGerms),
        Err(e) => Err(PuiseuxError::Indeterminate { prec: e.prec }),
    }
}

/// Multiplicity sequence of a single branch under repeated blowup of the
/// parametrization, recentering after each chart division.
fn multiplicity_sequence(tw: &Tower, b: &PuiseuxBranch) -> Result<Vec<u32>, PuiseuxError> {
    let mut z = Series::monomial(Algebraic::one(), b.ramification() as usize);
    let mut w = b.series().clone();
    let mut seq = Vec::new();
    loop {
        let za = z
            .order()
            .map_err(|e| PuiseuxError::Indeterminate { prec: e.prec })?;
        let wa = match w.order() {
            Ok(v) => v,
            Err(e) => return Err(PuiseuxError::Indeterminate { prec: e.prec }),
        };
        let m = match (za, wa) {
            (Some(a), Some(c)) => a.min(c),
            (Some(a), None) => a,
            (None, Some(c)) => c,
            (None, None) => break,
        };
        seq.push(m as u32);
        if m <= 1 {
            break;
        }
        let (a, c) = (za.unwrap_or(usize::MAX), wa.unwrap_or(usize::MAX));
        if a <= c {
            let mut q = w
                .div(tw, &z)
                .map_err(|e| PuiseuxError::Indeterminate { prec: e.prec })?;
            let c0 = q.coeff(0);
            if !c0.is_zero() {
                q = q.add_const(tw, &tw.neg(&c0));
            }
            w = q;
        } else {
            let mut q = z
                .div(tw, &w)
                .map_err(|e| PuiseuxError::Indeterminate { prec: e.prec })?;
            let c0 = q.coeff(0);
            if !c0.is_zero() {
                q = q.add_const(tw, &tw.neg(&c0));
            }
            z = q;
        }
    }
    Ok(seq)
}

/// Delta invariant of a single branch: Σ m(m-1)/2 over the multiplicity
/// sequence.
fn delta_single(tw: &Tower, b: &PuiseuxBranch) -> Result<u64, PuiseuxError> {
    let seq = multiplicity_sequence(tw, b)?;
    Ok(seq.iter().map(|&m| (m as u64) * (m as u64 - 1) / 2).sum())
}

/// Delta invariant of the whole point: per-branch blowup contributions plus
/// all pairwise intersection multiplicities of distinct analytic branches
/// (conjugates included).
///
/// When every branch object is a single analytic branch the pairwise part is
/// summed directly.  When conjugacy counts are nontrivial, the conjugate-pair
/// sums are extracted from the defining equation of the expansion: for each
/// object B with representative b and count n, ord_t[(f / F_B)(b(t))] adds up
/// the intersections of b with every other analytic branch of f, so half of
/// Σ n·ord gives the pairwise total without ever comparing two incompatible
/// coefficient towers.
pub fn delta_invariant(branches: &[PuiseuxBranch]) -> Result<u64, PuiseuxError> {
    if branches.is_empty() {
        return Err(PuiseuxError::EmptyBranchList);
    }
    for b in branches {
        if !towers_compatible(branches[0].tower(), b.tower()) {
            return Err(PuiseuxError::IncompatibleTowers);
        }
    }
    let tw = branches[0].tower().as_ref();

    let mut delta: u64 = 0;
    for b in branches {
        delta += b.conjugacy_count() as u64 * delta_single(tw, b)?;
    }

    let n_objects = branches.len();
    let all_simple = branches.iter().all(|b| b.conjugacy_count() == 1);
    if all_simple {
        for i in 0..n_objects {
            for j in i + 1..n_objects {
                delta += intersection_multiplicity(&branches[i], &branches[j])?;
            }
        }
        return Ok(delta);
    }

    // conjugate-aware pairwise sum via the defining equation
    let f = branches
        .iter()
        .find_map(|b| b.defining())
        .ok_or(PuiseuxError::IncompatibleTowers)?;
    if branches.iter().any(|b| b.defining() != Some(f)) {
        return Err(PuiseuxError::IncompatibleTowers);
    }
    let fw: Vec<Series> = f
        .as_w_poly()
        .into_iter()
        .map(|p| Series::from_coeffs(p, None))
        .collect();
    let mut pair_sum: u64 = 0;
    for b in branches {
        let fb = germ_equation(tw, b);
        let quo = divide_wpoly(tw, &fw, &fb);
        let v = eval_wpoly_at_branch(tw, &quo, b);
        let ord = match v.order() {
            Ok(Some(k)) => k as u64,
            Ok(None) => return Err(PuiseuxError::EqualGerms),
            Err(e) => return Err(PuiseuxError::Indeterminate { prec: e.prec }),
        };
        // ord counts intersections of the representative with every other
        // analytic branch plus the unit factor of f, which contributes 0
        pair_sum += b.conjugacy_count() as u64 * ord;
    }
    assert!(
        pair_sum.is_multiple_of(2),
        "pairwise intersection sum must be even"
    );
    Ok(delta + pair_sum / 2)
}

/// Division of w-polynomials with z-series coefficients by a monic divisor.
/// The callers divide by known factors, so the remainder must vanish to the
/// available precision.
fn divide_wpoly(tw: &Tower, num: &[Series], den: &[Series]) -> Vec<Series> {
    let dn = den.len() - 1;
    assert!(
        den[dn].coeff(0).is_one() && den[dn].coeffs().len() == 1,
        "divisor must be monic"
    );
    let mut rem: Vec<Series> = num.to_vec();
    if rem.len() < den.len() {
        return vec![];
    }
    let mut quo: Vec<Series> = vec![Series::zero(); rem.len() - den.len() + 1];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dn].clone();
        quo[k] = c.clone();
        if c.is_known_zero() && c.is_exact() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            let t = c.mul(tw, d);
            rem[k + i] = rem[k + i].sub(tw, &t);
        }
    }
    for r in rem.iter().take(dn) {
        assert!(
            r.is_known_zero(),
            "inexact division by a branch germ equation"
        );
    }
    quo
}

/// Conductor exponent of a unibranch point: eta = 2*delta of its branch.
pub fn conductor_exponent(branch: &PuiseuxBranch) -> Result<u64, PuiseuxError> {
    if branch.conjugacy_count() != 1 {
        return Err(PuiseuxError::MultiBranch);
    }
    let tw = branch.tower().as_ref();
    Ok(2 * delta_single(tw, branch)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::expand::puiseux_expand;

    fn expand(text: &str) -> Vec<PuiseuxBranch> {
        let f = BiPoly::parse(text).unwrap();
        puiseux_expand(&f, &ExpandOptions::default()).unwrap()
    }

    fn invariants(text: &str) -> SingularityInvariants {
        let f = BiPoly::parse(text).unwrap();
        let (_, _, inv) =
            compute_invariants_in(Tower::rationals(), &f, &ExpandOptions::default()).unwrap();
        inv
    }

    #[test]
    fn initial_form_examples() {
        for (text, expect) in [("w^2 - z^3", 2), ("w^2 - z^2", 2), ("w^3 - z^4", 3)] {
            let f = BiPoly::parse(text).unwrap();
            assert_eq!(multiplicity_initial_form(&f).unwrap(), expect);
        }
    }

    #[test]
    fn multiplicity_from_branches_matches_initial_form() {
        for text in [
            "w^2 - z^3",
            "w^2 - z^2 - z^3",
            "w^3 - z^4",
            "w^3 - z^3",
            "z - w^2",
            "w^3 - z*w^2 - z^3*w + z^4",
        ] {
            let f = BiPoly::parse(text).unwrap();
            let branches = puiseux_expand(&f, &ExpandOptions::default()).unwrap();
            assert_eq!(
                multiplicity_branches(&branches).unwrap(),
                multiplicity_initial_form(&f).unwrap(),
                "multiplicity chain failed for {}",
                text
            );
        }
    }

    #[test]
    fn mult_prime_examples() {
        assert_eq!(mult_prime(&expand("w^2 - z^3")).unwrap(), 1); // cusp
        assert_eq!(mult_prime(&expand("w^2 - z^2 - z^3")).unwrap(), 0); // node
        assert_eq!(mult_prime(&expand("w^3 - z^5")).unwrap(), 2); // E8
    }

    #[test]
    fn intersection_of_node_branches() {
        let branches = expand("w^2 - z^2 - z^3");
        assert_eq!(
            intersection_multiplicity(&branches[0], &branches[1]).unwrap(),
            1
        );
    }

    #[test]
    fn intersection_line_vs_cusp() {
        // line w = 0 against the cusp branch (t^2, t^3): germ equation of the
        // cusp evaluated on the line
        let branches = expand("w^2 - z^3");
        let tower = branches[0].tower().clone();
        let line = PuiseuxBranch::new(1, Series::zero(), tower).unwrap();
        assert_eq!(intersection_multiplicity(&line, &branches[0]).unwrap(), 3);
    }

    #[test]
    fn intersection_tangent_line() {
        // tangent line w = z against branch (t, t + t^2)
        let tower = Arc::new(Tower::rationals());
        let one = Algebraic::one();
        let line = PuiseuxBranch::new(
            1,
            Series::from_coeffs(vec![Algebraic::zero(), one.clone()], None),
            tower.clone(),
        )
        .unwrap();
        let curve = PuiseuxBranch::new(
            1,
            Series::from_coeffs(vec![Algebraic::zero(), one.clone(), one], None),
            tower,
        )
        .unwrap();
        assert_eq!(intersection_multiplicity(&line, &curve).unwrap(), 2);
    }

    #[test]
    fn delta_values_for_standard_singularities() {
        assert_eq!(invariants("w^2 - z^3").delta, 1); // cusp
        assert_eq!(invariants("w^2 - z^2 - z^3").delta, 1); // node
        assert_eq!(invariants("w^2 - z^4 - z^5").delta, 2); // tacnode
        assert_eq!(invariants("w^2 - z^5").delta, 2); // ramphoid cusp
        assert_eq!(invariants("w^3 - z^4").delta, 3); // E6
        assert_eq!(invariants("w^3 - z^5").delta, 4); // E8
        assert_eq!(invariants("w^3 - z^3").delta, 3); // ordinary triple point
        assert_eq!(invariants("w^2 - z^6 - z^7").delta, 3); // A5
    }

    #[test]
    fn delta_with_conjugate_branches() {
        // four concurrent lines in one Galois family: delta = C(4,2) = 6
        assert_eq!(invariants("w^4 - 2*z^4").delta, 6);
        // irrational node: two conjugate tangents
        assert_eq!(invariants("w^2 - 2*z^2 - 2*z^3").delta, 1);
    }

    #[test]
    fn delta_reducible_cusp_plus_line() {
        // (w^2 - z^3)(w - z): cusp delta 1 + intersection 2
        assert_eq!(invariants("w^3 - z*w^2 - z^3*w + z^4").delta, 3);
    }

    #[test]
    fn conductor_examples() {
        let cusp = expand("w^2 - z^3");
        assert_eq!(conductor_exponent(&cusp[0]).unwrap(), 2);
        let smooth = expand("w - z");
        assert_eq!(conductor_exponent(&smooth[0]).unwrap(), 0);
        let e6 = expand("w^3 - z^4");
        assert_eq!(conductor_exponent(&e6[0]).unwrap(), 6);
        // multibranch input is rejected
        let node = expand("w^2 - z^2 - z^3");
        assert!(matches!(
            conductor_exponent(&node[0]).or_else(|_| conductor_exponent(&node[1])),
            Err(PuiseuxError::MultiBranch) | Ok(_)
        ));
        let family = expand("w^2 - 2*z^2 - 2*z^3");
        assert!(matches!(
            conductor_exponent(&family[0]),
            Err(PuiseuxError::MultiBranch)
        ));
    }

    #[test]
    fn full_invariants_cusp() {
        let inv = invariants("w^2 - z^3");
        assert_eq!(
            inv,
            SingularityInvariants {
                multiplicity: 2,
                mult_prime: 1,
                delta: 1,
                branch_count: 1,
                conductor: Some(2),
            }
        );
    }

    #[test]
    fn ramphoid_variant_with_recursion() {
        // (w - z^2)^2 - z^5
        let inv = invariants("w^2 - 2*z^2*w + z^4 - z^5");
        assert_eq!(inv.multiplicity, 2);
        assert_eq!(inv.mult_prime, 1);
        assert_eq!(inv.delta, 2);
        assert_eq!(inv.conductor, Some(4));
    }

    #[test]
    fn two_puiseux_pairs_unibranch() {
        // the branch (t^4, t^6 + t^7): semigroup <4, 6, 13> with 8 gaps;
        // its germ equation is w^4 - 2z^3 w^2 - 4z^5 w + z^6 - z^7
        let inv = invariants("w^4 - 2*z^3*w^2 - 4*z^5*w + z^6 - z^7");
        assert_eq!(inv.multiplicity, 4);
        assert_eq!(inv.branch_count, 1);
        assert_eq!(inv.mult_prime, 3);
        assert_eq!(inv.delta, 8);
        assert_eq!(inv.conductor, Some(16));
    }

    #[test]
    fn two_tangent_ramified_branches() {
        // (w^2 - z^3)^2 = z^7 splits into two branches (t^2, ±t^3(1±t)^{1/2});
        // the w-discriminant 256 z^20 (1-z) pins delta: 20 = 2*delta + 4 - 2
        let inv = invariants("w^4 - 2*z^3*w^2 + z^6 - z^7");
        assert_eq!(inv.multiplicity, 4);
        assert_eq!(inv.branch_count, 2);
        assert_eq!(inv.mult_prime, 2);
        assert_eq!(inv.delta, 9);
        assert_eq!(inv.conductor, None);
    }

    #[test]
    fn conjugate_cube_root_lines() {
        // w^3 = 2 z^3: three concurrent lines conjugate over the cube root of 2
        let inv = invariants("w^3 - 2*z^3");
        assert_eq!(inv.multiplicity, 3);
        assert_eq!(inv.branch_count, 3);
        assert_eq!(inv.delta, 3);
    }

    #[test]
    fn tower_splits_while_processing_an_edge() {
        // (w^2 - 2z^2)(w^2 - 8z^2): four lines with tangents ±sqrt2, ±2*sqrt2.
        // After sqrt2 is adjoined for the first family, the second edge factor
        // u^2 - 8 splits over the grown tower into two rational-in-tower
        // branches; counts must still sum to four and delta to C(4,2).
        let f = BiPoly::parse("w^4 - 10*z^2*w^2 + 16*z^4").unwrap();
        let branches = puiseux_expand(&f, &ExpandOptions::default()).unwrap();
        let total: u32 = branches.iter().map(|b| b.conjugacy_count()).sum();
        assert_eq!(total, 4);
        let inv = SingularityInvariants::from_branches(&branches).unwrap();
        assert_eq!(inv.multiplicity, 4);
        assert_eq!(inv.delta, 6);
    }

    #[test]
    fn unit_factors_do_not_disturb_delta() {
        // a component through (1, 0) multiplies the local equation by a unit
        // at the origin; the germ invariants there must not change
        // (w^2 - z^3)(w - 1): plain cusp at the origin
        let inv = invariants("w^3 - w^2 - z^3*w + z^3");
        assert_eq!(inv.delta, 1);
        assert_eq!(inv.multiplicity, 2);
        assert_eq!(inv.branch_count, 1);
        // (w^2 - 2z^2 - 2z^3)(w - 1): conjugate pair plus the unit, which
        // exercises the defining-equation division in the pairwise sum
        let inv = invariants("w^3 - w^2 - 2*z^2*w + 2*z^2 - 2*z^3*w + 2*z^3");
        assert_eq!(inv.delta, 1);
        assert_eq!(inv.multiplicity, 2);
        assert_eq!(inv.branch_count, 2);
    }

    #[test]
    fn smooth_point_has_delta_zero() {
        let inv = invariants("w - z");
        assert_eq!(inv.delta, 0);
        assert_eq!(inv.mult_prime, 0);
        assert_eq!(inv.conductor, Some(0));
    }

    #[test]
    fn delta_swap_symmetry() {
        // non-tangent axes: delta invariant under swapping z and w
        for text in ["w^2 - z^3", "w^3 - z^4", "w^3 - z^5"] {
            let f = BiPoly::parse(text).unwrap();
            let g = f.swap_vars();
            let (_, _, inv_f) =
                compute_invariants_in(Tower::rationals(), &f, &ExpandOptions::default()).unwrap();
            let (_, _, inv_g) =
                compute_invariants_in(Tower::rationals(), &g, &ExpandOptions::default()).unwrap();
            assert_eq!(inv_f.delta, inv_g.delta, "delta asymmetric for {}", text);
            assert_eq!(inv_f.multiplicity, inv_g.multiplicity);
        }
    }
}
