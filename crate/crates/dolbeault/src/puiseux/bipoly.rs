//! Bivariate polynomials over a tower field, with the plain-text input
//! format used by the CLI: terms `c*z^i*w^j` joined by `+`/`-`, rational
//! coefficients `p/q`.

use super::series::Series;
use crate::exact::factor::resultant_poly_coeffs;
use crate::exact::{algebra, Algebraic, Tower};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Bivariate polynomial: finitely many (z-exponent, w-exponent) -> coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Algebraic>,
}

impl BiPoly {
    pub fn new() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Algebraic)>) -> Self {
        let mut p = BiPoly::new();
        for ((i, j), c) in terms {
            if !c.is_zero() {
                p.terms.insert((i, j), c);
            }
        }
        p
    }

    /// Parse from the plain-text format with rational coefficients, e.g.
    /// `w^2 - z^3` or `1/2*z*w - w^3 + z^5`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let terms = parse_poly(text, &["z", "w"])?;
        let mut p = BiPoly::new();
        for (exps, c) in terms {
            if !c.is_zero() {
                let key = (exps[0], exps[1]);
                p.terms.insert(key, Algebraic::from_rat(c));
            }
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Algebraic)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Algebraic {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Algebraic::zero)
    }

    pub fn add_term(&mut self, tw: &Tower, i: u32, j: u32, c: &Algebraic) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Algebraic::zero);
        *entry = tw.add(entry, c);
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_w(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Total degree of the lowest homogeneous part.
    pub fn min_total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).min().unwrap_or(0)
    }

    pub fn eval_origin(&self) -> Algebraic {
        self.coeff(0, 0)
    }

    /// True iff w divides every term.
    pub fn divisible_by_w(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|&(_, j)| j >= 1)
    }

    /// True iff z divides every term.
    pub fn divisible_by_z(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|&(i, _)| i >= 1)
    }

    pub fn derivative_w(&self, tw: &Tower) -> BiPoly {
        let mut out = BiPoly::new();
        for (&(i, j), c) in &self.terms {
            if j >= 1 {
                let t = tw.mul(c, &Algebraic::from_int(j as i64));
                out.add_term(tw, i, j - 1, &t);
            }
        }
        out
    }

    pub fn derivative_z(&self, tw: &Tower) -> BiPoly {
        let mut out = BiPoly::new();
        for (&(i, j), c) in &self.terms {
            if i >= 1 {
                let t = tw.mul(c, &Algebraic::from_int(i as i64));
                out.add_term(tw, i - 1, j, &t);
            }
        }
        out
    }

    pub fn mul(&self, tw: &Tower, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let t = tw.mul(c1, c2);
                out.add_term(tw, i1 + i2, j1 + j2, &t);
            }
        }
        out
    }

    /// View as a polynomial in w with coefficient polynomials in z.
    pub fn as_w_poly(&self) -> Vec<Vec<Algebraic>> {
        let dw = self.deg_w() as usize;
        let mut out: Vec<Vec<Algebraic>> = vec![vec![]; dw + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut out[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, Algebraic::zero());
            }
            row[i as usize] = c.clone();
        }
        while out.last().is_some_and(|p| algebra::tp_is_zero(p)) {
            out.pop();
        }
        out
    }

    /// Substitute exact series for both variables; precision is tracked by
    /// the series arithmetic.  Horner in w.
    pub fn eval_series(&self, tw: &Tower, z: &Series, w: &Series) -> Series {
        let wpoly = self.as_w_poly();
        // Precompute powers of z up to deg_z via the per-row evaluation.
        let mut zpow: Vec<Series> = vec![Series::monomial(Algebraic::one(), 0)];
        for _ in 0..self.deg_z() {
            let last = zpow.last().unwrap();
            zpow.push(last.mul(tw, z));
        }
        let mut acc = Series::zero();
        for row in wpoly.iter().rev() {
            acc = acc.mul(tw, w);
            let mut rowval = Series::zero();
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    rowval = rowval.add(tw, &zpow[i].scale(tw, c));
                }
            }
            acc = acc.add(tw, &rowval);
        }
        acc
    }

    /// Newton-Puiseux step transform: returns (f1, e) with
    /// f(t^s, t^q (c + w)) = t^e · f1(t, w) and f1 not divisible by t.
    pub fn np_transform(&self, tw: &Tower, s: u32, q: u32, c: &Algebraic) -> (BiPoly, u32) {
        let dw = self.deg_w() as usize;
        // binomial expansion of (c + w)^j, reused across terms
        let mut cw_pows: Vec<Vec<Algebraic>> = Vec::with_capacity(dw + 1);
        cw_pows.push(vec![Algebraic::one()]);
        for j in 1..=dw {
            let prev = &cw_pows[j - 1];
            let mut next = vec![Algebraic::zero(); j + 1];
            for (k, a) in prev.iter().enumerate() {
                // multiply by (c + w)
                let t = tw.mul(a, c);
                next[k] = tw.add(&next[k], &t);
                next[k + 1] = tw.add(&next[k + 1], a);
            }
            cw_pows.push(next);
        }
        let mut out = BiPoly::new();
        for (&(i, j), coeff) in &self.terms {
            let base = i * s + j * q;
            for (k, b) in cw_pows[j as usize].iter().enumerate() {
                let t = tw.mul(coeff, b);
                out.add_term(tw, base, k as u32, &t);
            }
        }
        let e = out.terms.keys().map(|&(i, _)| i).min().unwrap_or(0);
        if e > 0 {
            let shifted: Vec<((u32, u32), Algebraic)> = out
                .terms
                .into_iter()
                .map(|((i, j), c)| ((i - e, j), c))
                .collect();
            out = BiPoly {
                terms: shifted.into_iter().collect(),
            };
        }
        (out, e)
    }

    /// Drop terms with z-exponent above the bound (safe when only branch
    /// coefficients below that t-order are needed).
    pub fn truncate_z(&self, bound: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, _), _)| i <= bound)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// Substitute w -> w + c·z (tangent-direction shear).
    pub fn shear_w(&self, tw: &Tower, c: &Algebraic) -> BiPoly {
        let mut out = BiPoly::new();
        for (&(i, j), coeff) in &self.terms {
            // (w + c z)^j expansion
            let mut binom = Algebraic::one();
            for k in 0..=j {
                // C(j, k) c^{j-k} z^{j-k} w^k  — build C(j,k) incrementally
                if k > 0 {
                    let f =
                        BigRational::new(BigInt::from((j - k + 1) as i64), BigInt::from(k as i64));
                    binom = tw.mul(&binom, &Algebraic::from_rat(f));
                }
                let cp = tw.pow(c, j - k);
                let t = tw.mul(coeff, &tw.mul(&binom, &cp));
                out.add_term(tw, i + (j - k), k, &t);
            }
        }
        out
    }

    /// Swap the roles of z and w.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Squarefree as a curve equation: gcd(f, ∂f/∂w) is constant, detected by
    /// the w-resultant with the derivative being nonzero.
    pub fn is_squarefree(&self, tw: &Tower) -> bool {
        let fw = self.derivative_w(tw);
        if fw.is_zero() {
            return self.deg_w() == 0;
        }
        let r = resultant_poly_coeffs(tw, &self.as_w_poly(), &fw.as_w_poly());
        !algebra::tp_is_zero(&r)
    }

    /// Render with the given variable names.
    pub fn render(&self, tw: &Tower, vz: &str, vw: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            let cs = tw.render(c);
            let is_neg_one = cs == "-1";
            if !c.is_one() && !is_neg_one || (i == 0 && j == 0) {
                if cs.contains(['+', ' ']) {
                    factors.push(format!("({})", cs));
                } else {
                    factors.push(cs.clone());
                }
            }
            for (name, e) in [(vz, i), (vw, j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{}^{}", name, e)),
                }
            }
            let mut term = factors.join("*");
            if is_neg_one && !(i == 0 && j == 0) {
                term = format!("-{}", term);
            }
            parts.push(term);
        }
        let mut out = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl Default for BiPoly {
    fn default() -> Self {
        Self::new()
    }
}

/// Parse a polynomial in the named variables with rational coefficients.
/// Returns exponent-vector -> coefficient.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<BTreeMap<Vec<u32>, BigRational>, String> {
    let mut out: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    let s: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let n = s.len();

    let skip_ws = |pos: &mut usize| {
        while *pos < n && s[*pos].is_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos >= n {
        return Err("empty polynomial".into());
    }

    let mut first = true;
    while pos < n {
        skip_ws(&mut pos);
        if pos >= n {
            break;
        }
        // sign
        let mut sign = BigInt::one();
        if s[pos] == '+' || s[pos] == '-' {
            if s[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(format!("expected '+' or '-' at position {}", pos));
        }
        first = false;

        // term: factors joined by '*'
        let mut coeff = BigRational::from_integer(sign);
        let mut exps = vec![0u32; vars.len()];
        let mut any_factor = false;
        loop {
            skip_ws(&mut pos);
            if pos >= n {
                break;
            }
            let ch = s[pos];
            if ch.is_ascii_digit() {
                // rational number p or p/q
                let start = pos;
                while pos < n && s[pos].is_ascii_digit() {
                    pos += 1;
                }
                let numer: BigInt = s[start..pos].iter().collect::<String>().parse().unwrap();
                let mut denom = BigInt::one();
                if pos < n && s[pos] == '/' {
                    pos += 1;
                    let dstart = pos;
                    while pos < n && s[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if dstart == pos {
                        return Err(format!("expected denominator at position {}", pos));
                    }
                    denom = s[dstart..pos].iter().collect::<String>().parse().unwrap();
                    if denom.is_zero() {
                        return Err("zero denominator".into());
                    }
                }
                coeff *= BigRational::new(numer, denom);
                any_factor = true;
            } else if ch.is_ascii_alphabetic() {
                let start = pos;
                while pos < n && (s[pos].is_ascii_alphanumeric() || s[pos] == '_') {
                    pos += 1;
                }
                let name: String = s[start..pos].iter().collect();
                let vi = vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| format!("unknown variable '{}'", name))?;
                let mut e = 1u32;
                if pos < n && s[pos] == '^' {
                    pos += 1;
                    let estart = pos;
                    while pos < n && s[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if estart == pos {
                        return Err(format!("expected exponent at position {}", pos));
                    }
                    e = s[estart..pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| "exponent too large".to_string())?;
                }
                exps[vi] += e;
                any_factor = true;
            } else {
                return Err(format!("unexpected character '{}' at position {}", ch, pos));
            }
            skip_ws(&mut pos);
            if pos < n && s[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        if !any_factor {
            return Err("empty term".into());
        }
        let entry = out.entry(exps).or_insert_with(BigRational::zero);
        *entry += coeff;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Algebraic {
        Algebraic::from_int(n)
    }

    #[test]
    fn parses_cusp() {
        let f = BiPoly::parse("w^2 - z^3").unwrap();
        assert_eq!(f.coeff(0, 2), q(1));
        assert_eq!(f.coeff(3, 0), q(-1));
        assert_eq!(f.deg_w(), 2);
        assert_eq!(f.deg_z(), 3);
    }

    #[test]
    fn parses_rational_coefficients() {
        let f = BiPoly::parse("1/2*z*w - w^3 + 2*z^5").unwrap();
        assert_eq!(f.coeff(1, 1), Algebraic::from_frac(1, 2));
        assert_eq!(f.coeff(0, 3), q(-1));
        assert_eq!(f.coeff(5, 0), q(2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(BiPoly::parse("w^2 - $").is_err());
        assert!(BiPoly::parse("q^2").is_err());
        assert!(BiPoly::parse("").is_err());
    }

    #[test]
    fn squarefree_check() {
        let tw = Tower::rationals();
        assert!(BiPoly::parse("w^2 - z^3").unwrap().is_squarefree(&tw));
        // (w - z)^2
        assert!(!BiPoly::parse("w^2 - 2*z*w + z^2")
            .unwrap()
            .is_squarefree(&tw));
    }

    #[test]
    fn np_transform_cusp() {
        let tw = Tower::rationals();
        let f = BiPoly::parse("w^2 - z^3").unwrap();
        // z = t^2, w = t^3 (1 + w'):   f = t^6((1+w')^2 - 1) = t^6(2w' + w'^2)
        let (f1, e) = f.np_transform(&tw, 2, 3, &q(1));
        assert_eq!(e, 6);
        assert_eq!(f1.coeff(0, 1), q(2));
        assert_eq!(f1.coeff(0, 2), q(1));
        assert_eq!(f1.coeff(0, 0), q(0));
    }

    #[test]
    fn eval_series_substitution() {
        let tw = Tower::rationals();
        let f = BiPoly::parse("w^2 - z^3").unwrap();
        let z = Series::monomial(q(1), 2);
        let w = Series::monomial(q(1), 3);
        let v = f.eval_series(&tw, &z, &w);
        assert!(v.is_exactly_zero());
    }

    #[test]
    fn render_roundtrip() {
        let tw = Tower::rationals();
        let f = BiPoly::parse("w^2 - z^3 + 1/2*z*w").unwrap();
        let s = f.render(&tw, "z", "w");
        let g = BiPoly::parse(&s).unwrap();
        assert_eq!(f, g);
    }
}
