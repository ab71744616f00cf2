//! Exact arithmetic in towers of algebraic extensions of the rationals.
//!
//! A [`Tower`] is a chain Q = K_0 ⊂ K_1 ⊂ ... ⊂ K_n where each level adjoins
//! one generator with a minimal polynomial over the level below.  An
//! [`Algebraic`] element is a nested polynomial expression in the generators,
//! kept in canonical reduced form so that equality is structural.
//!
//! Towers are append-only: an element built for a tower stays valid for every
//! extension of that tower, which lets a Newton-Puiseux expansion grow the
//! coefficient field as it descends into a singularity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Write as _;
use std::sync::Arc;

/// One level of an extension tower: a named generator together with its
/// minimal polynomial (monic, coefficients from strictly lower levels).
#[derive(Clone, Debug)]
pub struct Level {
    pub name: String,
    /// Coefficients c_0..c_d of the monic minimal polynomial, c_d = 1.
    pub min_poly: Vec<Algebraic>,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }
}

/// A dynamically built tower of field extensions of Q.
#[derive(Clone, Debug, Default)]
pub struct Tower {
    levels: Vec<Level>,
}

/// An exact element of a tower field.
///
/// `Ext { level, coeffs }` represents `Σ coeffs[j] · g_level^j` where
/// `g_level` is the generator of that level.  Canonical form: the coefficient
/// list has length ≥ 2, no trailing zero, every entry lives on a strictly
/// lower level, and the degree is below the minimal polynomial degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebraic {
    Rat(BigRational),
    Ext {
        level: usize,
        coeffs: Vec<Algebraic>,
    },
}

impl Algebraic {
    pub fn zero() -> Self {
        Algebraic::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Algebraic::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Algebraic::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(r: BigRational) -> Self {
        Algebraic::Rat(r)
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Algebraic::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Tower level this element lives on (0 = rational).
    pub fn level(&self) -> usize {
        match self {
            Algebraic::Rat(_) => 0,
            Algebraic::Ext { level, .. } => *level,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Algebraic::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Algebraic::Rat(r) if r.is_one())
    }

    /// The rational value, if the element is rational.
    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            Algebraic::Rat(r) => Some(r),
            _ => None,
        }
    }
}

fn normalize(level: usize, mut coeffs: Vec<Algebraic>) -> Algebraic {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    match coeffs.len() {
        0 => Algebraic::zero(),
        1 => coeffs.pop().unwrap(),
        _ => Algebraic::Ext { level, coeffs },
    }
}

impl Tower {
    pub fn rationals() -> Self {
        Tower { levels: Vec::new() }
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Total degree [K_n : Q].
    pub fn absolute_degree(&self) -> usize {
        self.levels.iter().map(|l| l.degree()).product()
    }

    /// Adjoin a root of `min_poly` (monic irreducible over the current tower).
    /// Returns the generator of the new level.
    pub fn adjoin(&mut self, name: impl Into<String>, min_poly: Vec<Algebraic>) -> Algebraic {
        assert!(min_poly.len() >= 3, "extension must have degree >= 2");
        assert!(
            min_poly.last().unwrap().is_one(),
            "minimal polynomial must be monic"
        );
        let level = self.levels.len() + 1;
        for c in &min_poly {
            assert!(
                c.level() < level,
                "minimal polynomial coefficients must come from lower levels"
            );
        }
        self.levels.push(Level {
            name: name.into(),
            min_poly,
        });
        Algebraic::Ext {
            level,
            coeffs: vec![Algebraic::zero(), Algebraic::one()],
        }
    }

    pub fn add(&self, a: &Algebraic, b: &Algebraic) -> Algebraic {
        match (a, b) {
            (Algebraic::Rat(x), Algebraic::Rat(y)) => Algebraic::Rat(x + y),
            _ => {
                let (la, lb) = (a.level(), b.level());
                if la == lb {
                    let (ca, cb) = (coeffs_of(a), coeffs_of(b));
                    let n = ca.len().max(cb.len());
                    let mut out = Vec::with_capacity(n);
                    for i in 0..n {
                        let x = ca.get(i).cloned().unwrap_or_else(Algebraic::zero);
                        let y = cb.get(i).cloned().unwrap_or_else(Algebraic::zero);
                        out.push(self.add(&x, &y));
                    }
                    normalize(la, out)
                } else if la < lb {
                    let mut out = coeffs_of(b).to_vec();
                    out[0] = self.add(a, &out[0]);
                    normalize(lb, out)
                } else {
                    self.add(b, a)
                }
            }
        }
    }

    pub fn neg(&self, a: &Algebraic) -> Algebraic {
        match a {
            Algebraic::Rat(x) => Algebraic::Rat(-x),
            Algebraic::Ext { level, coeffs } => Algebraic::Ext {
                level: *level,
                coeffs: coeffs.iter().map(|c| self.neg(c)).collect(),
            },
        }
    }

    pub fn sub(&self, a: &Algebraic, b: &Algebraic) -> Algebraic {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Algebraic, b: &Algebraic) -> Algebraic {
        if a.is_zero() || b.is_zero() {
            return Algebraic::zero();
        }
        match (a, b) {
            (Algebraic::Rat(x), Algebraic::Rat(y)) => Algebraic::Rat(x * y),
            _ => {
                let (la, lb) = (a.level(), b.level());
                if la == lb {
                    let (ca, cb) = (coeffs_of(a), coeffs_of(b));
                    let mut prod = vec![Algebraic::zero(); ca.len() + cb.len() - 1];
                    for (i, x) in ca.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in cb.iter().enumerate() {
                            let t = self.mul(x, y);
                            prod[i + j] = self.add(&prod[i + j], &t);
                        }
                    }
                    self.reduce(la, prod)
                } else if la < lb {
                    let out: Vec<Algebraic> = coeffs_of(b).iter().map(|c| self.mul(a, c)).collect();
                    normalize(lb, out)
                } else {
                    self.mul(b, a)
                }
            }
        }
    }

    /// Reduce a coefficient vector at `level` modulo that level's minimal polynomial.
    fn reduce(&self, level: usize, mut coeffs: Vec<Algebraic>) -> Algebraic {
        let min_poly = &self.levels[level - 1].min_poly;
        let d = min_poly.len() - 1;
        while coeffs.len() > d {
            let lead = coeffs.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let k = coeffs.len() - d; // subtract lead * x^k * min_poly, using monicity
            for i in 0..d {
                let t = self.mul(&lead, &min_poly[i]);
                coeffs[k + i] = self.sub(&coeffs[k + i], &t);
            }
        }
        normalize(level, coeffs)
    }

    /// Multiplicative inverse.  Panics on zero.
    pub fn inv(&self, a: &Algebraic) -> Algebraic {
        assert!(!a.is_zero(), "division by zero in extension tower");
        match a {
            Algebraic::Rat(x) => Algebraic::Rat(x.recip()),
            Algebraic::Ext { level, coeffs } => {
                // Extended Euclid between a and the minimal polynomial of the level,
                // carried out over the field below.
                let m = &self.levels[level - 1].min_poly;
                let (g, u) = self.half_ext_gcd(coeffs, m);
                // g must be a nonzero constant since the minimal polynomial is
                // irreducible and deg a < deg m.
                assert!(
                    g.len() == 1,
                    "minimal polynomial is not irreducible over its base"
                );
                let ginv = self.inv(&g[0]);
                let scaled: Vec<Algebraic> = u.iter().map(|c| self.mul(&ginv, c)).collect();
                self.reduce(*level, scaled)
            }
        }
    }

    pub fn div(&self, a: &Algebraic, b: &Algebraic) -> Algebraic {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Algebraic, mut e: u32) -> Algebraic {
        let mut base = a.clone();
        let mut acc = Algebraic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Half-extended gcd of coefficient vectors: returns (g, u) with
    /// u·a ≡ g (mod b), g = gcd(a, b).  Vectors are polynomials over the
    /// field formed by the lower levels.
    fn half_ext_gcd(&self, a: &[Algebraic], b: &[Algebraic]) -> (Vec<Algebraic>, Vec<Algebraic>) {
        let mut r0 = trim(b.to_vec());
        let mut r1 = trim(a.to_vec());
        let mut u0: Vec<Algebraic> = vec![];
        let mut u1: Vec<Algebraic> = vec![Algebraic::one()];
        while !r1.is_empty() {
            let (q, r) = self.vec_divrem(&r0, &r1);
            let uq = self.vec_sub(&u0, &self.vec_mul(&q, &u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = uq;
        }
        (r0, u0)
    }

    // -- raw polynomial helpers on coefficient vectors (dense, little-endian) --

    pub(crate) fn vec_mul(&self, a: &[Algebraic], b: &[Algebraic]) -> Vec<Algebraic> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![Algebraic::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.mul(x, y);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        trim(out)
    }

    pub(crate) fn vec_sub(&self, a: &[Algebraic], b: &[Algebraic]) -> Vec<Algebraic> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(Algebraic::zero);
            let y = b.get(i).cloned().unwrap_or_else(Algebraic::zero);
            out.push(self.sub(&x, &y));
        }
        trim(out)
    }

    /// Division with remainder of coefficient vectors over the tower field.
    pub(crate) fn vec_divrem(
        &self,
        a: &[Algebraic],
        b: &[Algebraic],
    ) -> (Vec<Algebraic>, Vec<Algebraic>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![Algebraic::zero(); r.len() - b.len() + 1];
        let lc_inv = self.inv(b.last().unwrap());
        while r.len() >= b.len() {
            let c = self.mul(r.last().unwrap(), &lc_inv);
            let k = r.len() - b.len();
            q[k] = c.clone();
            for i in 0..b.len() {
                let t = self.mul(&c, &b[i]);
                r[k + i] = self.sub(&r[k + i], &t);
            }
            r = trim(r);
            if r.len() <= k {
                // leading term cancelled; loop continues on honest degree
                if r.len() < b.len() {
                    break;
                }
            }
        }
        (trim(q), r)
    }

    /// Renders an element using the tower's generator names.
    pub fn render(&self, a: &Algebraic) -> String {
        match a {
            Algebraic::Rat(r) => format!("{}", r),
            Algebraic::Ext { level, coeffs } => {
                let name = &self.levels[level - 1].name;
                let mut parts: Vec<String> = Vec::new();
                for (j, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let pow = match j {
                        0 => String::new(),
                        1 => name.clone(),
                        _ => format!("{}^{}", name, j),
                    };
                    let cs = self.render(c);
                    let mut term = String::new();
                    if pow.is_empty() {
                        term.push_str(&cs);
                    } else if c.is_one() {
                        term.push_str(&pow);
                    } else if matches!(c, Algebraic::Rat(r) if *r == -BigRational::one()) {
                        let _ = write!(term, "-{}", pow);
                    } else if matches!(c, Algebraic::Rat(_)) {
                        let _ = write!(term, "{}*{}", cs, pow);
                    } else {
                        let _ = write!(term, "({})*{}", cs, pow);
                    }
                    parts.push(term);
                }
                let mut out = String::new();
                for (i, p) in parts.iter().enumerate() {
                    if i == 0 {
                        out.push_str(p);
                    } else if let Some(rest) = p.strip_prefix('-') {
                        let _ = write!(out, " - {}", rest);
                    } else {
                        let _ = write!(out, " + {}", p);
                    }
                }
                out
            }
        }
    }
}

fn coeffs_of(a: &Algebraic) -> &[Algebraic] {
    match a {
        Algebraic::Ext { coeffs, .. } => coeffs,
        _ => unreachable!("coeffs_of called on rational"),
    }
}

pub(crate) fn trim(mut v: Vec<Algebraic>) -> Vec<Algebraic> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// A shared, immutable snapshot of a tower, safe to send between threads.
pub type SharedTower = Arc<Tower>;

// ---------------------------------------------------------------------------
// Univariate polynomials over a tower field (dense coefficient vectors).
// ---------------------------------------------------------------------------

/// Dense univariate polynomial over a tower field; index = exponent.
pub type TPoly = Vec<Algebraic>;

pub fn tp_trim(p: TPoly) -> TPoly {
    trim(p)
}

pub fn tp_deg(p: &[Algebraic]) -> Option<usize> {
    let mut d = p.len();
    while d > 0 && p[d - 1].is_zero() {
        d -= 1;
    }
    if d == 0 {
        None
    } else {
        Some(d - 1)
    }
}

pub fn tp_is_zero(p: &[Algebraic]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn tp_add(tw: &Tower, a: &[Algebraic], b: &[Algebraic]) -> TPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Algebraic::zero);
        let y = b.get(i).cloned().unwrap_or_else(Algebraic::zero);
        out.push(tw.add(&x, &y));
    }
    trim(out)
}

pub fn tp_sub(tw: &Tower, a: &[Algebraic], b: &[Algebraic]) -> TPoly {
    tw.vec_sub(a, b)
}

pub fn tp_mul(tw: &Tower, a: &[Algebraic], b: &[Algebraic]) -> TPoly {
    tw.vec_mul(a, b)
}

pub fn tp_scale(tw: &Tower, a: &[Algebraic], c: &Algebraic) -> TPoly {
    trim(a.iter().map(|x| tw.mul(x, c)).collect())
}

pub fn tp_divrem(tw: &Tower, a: &[Algebraic], b: &[Algebraic]) -> (TPoly, TPoly) {
    tw.vec_divrem(a, b)
}

/// Exact division; panics if the remainder is nonzero.
pub fn tp_div_exact(tw: &Tower, a: &[Algebraic], b: &[Algebraic]) -> TPoly {
    let (q, r) = tw.vec_divrem(a, b);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn tp_monic(tw: &Tower, a: &[Algebraic]) -> TPoly {
    let a = trim(a.to_vec());
    if a.is_empty() {
        return a;
    }
    let inv = tw.inv(a.last().unwrap());
    tp_scale(tw, &a, &inv)
}

pub fn tp_derivative(tw: &Tower, a: &[Algebraic]) -> TPoly {
    if a.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(tw.mul(c, &Algebraic::from_int(i as i64)));
    }
    trim(out)
}

/// Monic gcd over the tower field.
pub fn tp_gcd(tw: &Tower, a: &[Algebraic], b: &[Algebraic]) -> TPoly {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    while !r1.is_empty() {
        let (_, r) = tw.vec_divrem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if r0.is_empty() {
        r0
    } else {
        tp_monic(tw, &r0)
    }
}

pub fn tp_eval(tw: &Tower, a: &[Algebraic], x: &Algebraic) -> Algebraic {
    let mut acc = Algebraic::zero();
    for c in a.iter().rev() {
        acc = tw.mul(&acc, x);
        acc = tw.add(&acc, c);
    }
    acc
}

/// Polynomial composition a(x + c) via Horner.
pub fn tp_shift(tw: &Tower, a: &[Algebraic], c: &Algebraic) -> TPoly {
    let mut acc: TPoly = vec![];
    for coeff in a.iter().rev() {
        // acc = acc * (x + c) + coeff
        let shifted = tp_scale(tw, &acc, c);
        let mut raised = vec![Algebraic::zero()];
        raised.extend_from_slice(&acc);
        acc = tp_add(tw, &raised, &shifted);
        acc = tp_add(tw, &acc, std::slice::from_ref(coeff));
    }
    trim(acc)
}

/// Yun's squarefree decomposition over a characteristic-zero field:
/// f = unit · Π part_i ^ i with the parts monic, squarefree and pairwise coprime.
pub fn tp_squarefree_decomposition(tw: &Tower, f: &[Algebraic]) -> (Algebraic, Vec<(TPoly, u32)>) {
    let f = trim(f.to_vec());
    assert!(!f.is_empty(), "squarefree decomposition of zero");
    let unit = f.last().unwrap().clone();
    let f = tp_monic(tw, &f);
    if f.len() == 1 {
        return (unit, vec![]);
    }
    let df = tp_derivative(tw, &f);
    let a0 = tp_gcd(tw, &f, &df);
    if a0.len() == 1 {
        return (unit, vec![(f, 1)]);
    }
    let mut parts = Vec::new();
    let mut b = tp_div_exact(tw, &f, &a0);
    let mut c = tp_div_exact(tw, &df, &a0);
    let mut i = 1u32;
    loop {
        let db = tp_derivative(tw, &b);
        let d = tp_sub(tw, &c, &db);
        if tp_is_zero(&d) {
            if b.len() > 1 {
                parts.push((b, i));
            }
            break;
        }
        let p = tp_gcd(tw, &b, &d);
        if p.len() > 1 {
            parts.push((p.clone(), i));
        }
        b = tp_div_exact(tw, &b, &p);
        c = tp_div_exact(tw, &d, &p);
        i += 1;
    }
    (unit, parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Algebraic {
        Algebraic::from_int(n)
    }

    #[test]
    fn rational_field_ops() {
        let tw = Tower::rationals();
        let a = Algebraic::from_frac(1, 2);
        let b = Algebraic::from_frac(1, 3);
        let s = tw.add(&a, &b);
        assert_eq!(s, Algebraic::from_frac(5, 6));
        assert_eq!(tw.mul(&a, &b), Algebraic::from_frac(1, 6));
        assert_eq!(tw.inv(&a), q(2));
    }

    #[test]
    fn sqrt2_arithmetic() {
        let mut tw = Tower::rationals();
        // x^2 - 2
        let r2 = tw.adjoin("a", vec![q(-2), q(0), q(1)]);
        let sq = tw.mul(&r2, &r2);
        assert_eq!(sq, q(2));
        // (1 + sqrt2)^{-1} = sqrt2 - 1
        let x = tw.add(&q(1), &r2);
        let inv = tw.inv(&x);
        let expect = tw.sub(&r2, &q(1));
        assert_eq!(inv, expect);
        assert!(tw.mul(&x, &inv).is_one());
    }

    #[test]
    fn nested_tower_sqrt2_sqrt3() {
        let mut tw = Tower::rationals();
        let r2 = tw.adjoin("a", vec![q(-2), q(0), q(1)]);
        let r3 = tw.adjoin("b", vec![q(-3), q(0), q(1)]);
        let s = tw.add(&r2, &r3);
        // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6
        let s2 = tw.mul(&s, &s);
        let r6 = tw.mul(&r2, &r3);
        let expect = tw.add(&q(5), &tw.mul(&q(2), &r6));
        assert_eq!(s2, expect);
        // and its inverse times itself is 1
        let si = tw.inv(&s);
        assert!(tw.mul(&s, &si).is_one());
        // minimal check: (sqrt2+sqrt3)^4 - 10 (sqrt2+sqrt3)^2 + 1 = 0
        let s4 = tw.mul(&s2, &s2);
        let t = tw.sub(&tw.add(&s4, &q(1)), &tw.mul(&q(10), &s2));
        assert!(t.is_zero());
    }

    #[test]
    fn cube_root_of_unity() {
        let mut tw = Tower::rationals();
        // x^2 + x + 1
        let w = tw.adjoin("w", vec![q(1), q(1), q(1)]);
        let w2 = tw.mul(&w, &w);
        let w3 = tw.mul(&w2, &w);
        assert!(w3.is_one());
        // 1 + w + w^2 = 0
        let s = tw.add(&tw.add(&q(1), &w), &w2);
        assert!(s.is_zero());
    }

    #[test]
    fn poly_gcd_and_yun() {
        let tw = Tower::rationals();
        // f = (x-1)^2 (x+2)
        let f = tp_mul(
            &tw,
            &tp_mul(&tw, &[q(-1), q(1)], &[q(-1), q(1)]),
            &[q(2), q(1)],
        );
        let (unit, parts) = tp_squarefree_decomposition(&tw, &f);
        assert!(unit.is_one());
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (vec![q(2), q(1)], 1));
        assert_eq!(parts[1], (vec![q(-1), q(1)], 2));
    }

    #[test]
    fn shift_composition() {
        let tw = Tower::rationals();
        // (x+1)^2 = x^2 + 2x + 1 from shifting x^2 by 1
        let f = vec![q(0), q(0), q(1)];
        let g = tp_shift(&tw, &f, &q(1));
        assert_eq!(g, vec![q(1), q(2), q(1)]);
        // shifting back is the identity
        let h = tp_shift(&tw, &g, &q(-1));
        assert_eq!(h, f);
    }

    #[test]
    fn divrem_over_extension() {
        let mut tw = Tower::rationals();
        let r2 = tw.adjoin("a", vec![q(-2), q(0), q(1)]);
        // divide x^2 - 2 by x - sqrt2: remainder 0, quotient x + sqrt2
        let f = vec![q(-2), q(0), q(1)];
        let g = vec![tw.neg(&r2), q(1)];
        let (quo, rem) = tp_divrem(&tw, &f, &g);
        assert!(rem.is_empty());
        assert_eq!(quo, vec![r2, q(1)]);
    }
}
