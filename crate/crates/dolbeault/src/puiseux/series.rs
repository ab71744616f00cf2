//! Truncated power series over a tower field, with explicit precision
//! tracking so that an unresolved order is reported instead of silently
//! treated as zero.

use crate::exact::{Algebraic, Tower};

/// Power series Σ c_k t^k.  `prec = None` means the series is an exact
/// polynomial (no hidden tail); `prec = Some(n)` means coefficients are known
/// for exponents `< n` only.
#[derive(Clone, Debug)]
pub struct Series {
    coeffs: Vec<Algebraic>,
    prec: Option<usize>,
}

/// Raised when a quantity depends on coefficients beyond the computed
/// truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indeterminate {
    pub prec: usize,
}

impl Series {
    pub fn zero() -> Self {
        Series {
            coeffs: vec![],
            prec: None,
        }
    }

    pub fn zero_to(prec: usize) -> Self {
        Series {
            coeffs: vec![],
            prec: Some(prec),
        }
    }

    pub fn monomial(c: Algebraic, k: usize) -> Self {
        let mut coeffs = vec![Algebraic::zero(); k + 1];
        coeffs[k] = c;
        let mut s = Series { coeffs, prec: None };
        s.trim();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Algebraic>, prec: Option<usize>) -> Self {
        let mut s = Series { coeffs, prec };
        if let Some(p) = s.prec {
            s.coeffs.truncate(p);
        }
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Precision: exponents < prec are known.  `usize::MAX` when exact.
    pub fn prec(&self) -> usize {
        self.prec.unwrap_or(usize::MAX)
    }

    pub fn coeff(&self, k: usize) -> Algebraic {
        self.coeffs.get(k).cloned().unwrap_or_else(Algebraic::zero)
    }

    pub fn coeffs(&self) -> &[Algebraic] {
        &self.coeffs
    }

    /// True when every known coefficient vanishes.
    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the series is exactly the zero series.
    pub fn is_exactly_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }

    /// Order of the series: `Ok(None)` for the exact zero series, `Ok(Some(k))`
    /// when the first nonzero coefficient is resolved, `Err` when all known
    /// coefficients vanish but the tail is uncertain.
    pub fn order(&self) -> Result<Option<usize>, Indeterminate> {
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return Ok(Some(k));
            }
        }
        if self.is_exact() {
            Ok(None)
        } else {
            Err(Indeterminate { prec: self.prec() })
        }
    }

    /// Lower bound on the order that is always available.
    pub fn order_at_least(&self) -> usize {
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return k;
            }
        }
        self.prec.unwrap_or(usize::MAX)
    }

    pub fn truncate(&self, n: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n);
        let prec = match self.prec {
            None => Some(n),
            Some(p) => Some(p.min(n)),
        };
        Series::from_coeffs(coeffs, prec)
    }

    /// Keeps an exact series exact, otherwise caps precision at n.
    pub fn cap(&self, n: usize) -> Series {
        if self.is_exact() {
            self.clone()
        } else {
            self.truncate(n)
        }
    }

    pub fn add(&self, tw: &Tower, other: &Series) -> Series {
        let prec = min_prec(self.prec, other.prec);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(tw.add(&self.coeff(k), &other.coeff(k)));
        }
        Series::from_coeffs(coeffs, prec)
    }

    pub fn neg(&self, tw: &Tower) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|c| tw.neg(c)).collect(), self.prec)
    }

    pub fn sub(&self, tw: &Tower, other: &Series) -> Series {
        self.add(tw, &other.neg(tw))
    }

    pub fn scale(&self, tw: &Tower, c: &Algebraic) -> Series {
        if c.is_zero() {
            return Series {
                coeffs: vec![],
                prec: self.prec,
            };
        }
        Series::from_coeffs(
            self.coeffs.iter().map(|x| tw.mul(x, c)).collect(),
            self.prec,
        )
    }

    pub fn add_const(&self, tw: &Tower, c: &Algebraic) -> Series {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(c.clone());
        } else {
            coeffs[0] = tw.add(&coeffs[0], c);
        }
        Series::from_coeffs(coeffs, self.prec)
    }

    pub fn mul(&self, tw: &Tower, other: &Series) -> Series {
        // prec(ab) = min(prec_a + ord_b, prec_b + ord_a), with exact = infinity
        let va = self.order_at_least();
        let vb = other.order_at_least();
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (pa, pb) => {
                let ca = pa.map(|p| p.saturating_add(vb));
                let cb = pb.map(|p| p.saturating_add(va));
                min_prec(ca, cb)
            }
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Series {
                coeffs: vec![],
                prec,
            };
        }
        let bound = prec.unwrap_or(self.coeffs.len() + other.coeffs.len());
        let n = (self.coeffs.len() + other.coeffs.len() - 1).min(bound);
        let mut coeffs = vec![Algebraic::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() || i >= n {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                let t = tw.mul(x, y);
                coeffs[i + j] = tw.add(&coeffs[i + j], &t);
            }
        }
        Series::from_coeffs(coeffs, prec)
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: usize) -> Series {
        if self.coeffs.is_empty() {
            return Series {
                coeffs: vec![],
                prec: self.prec.map(|p| p.saturating_add(k)),
            };
        }
        let mut coeffs = vec![Algebraic::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Series::from_coeffs(coeffs, self.prec.map(|p| p.saturating_add(k)))
    }

    /// Divide by t^k; the first k coefficients must be known zero.
    pub fn shift_down(&self, k: usize) -> Series {
        for i in 0..k.min(self.coeffs.len()) {
            assert!(
                self.coeffs[i].is_zero(),
                "shift_down of a series with lower-order terms"
            );
        }
        let coeffs = if self.coeffs.len() > k {
            self.coeffs[k..].to_vec()
        } else {
            vec![]
        };
        Series::from_coeffs(coeffs, self.prec.map(|p| p.saturating_sub(k)))
    }

    /// Substitute t -> t^m.
    pub fn stretch(&self, m: usize) -> Series {
        assert!(m >= 1);
        if m == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Algebraic::zero(); self.coeffs.len() * m];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * m] = c.clone();
            }
        }
        let prec = self.prec.map(|p| p.saturating_mul(m));
        Series::from_coeffs(coeffs, prec)
    }

    /// Inverse of a series with nonzero constant term, to precision n.
    pub fn invert_unit(&self, tw: &Tower, n: usize) -> Series {
        let u0 = self.coeff(0);
        assert!(!u0.is_zero(), "inverting a non-unit series");
        let u0inv = tw.inv(&u0);
        let mut out = vec![Algebraic::zero(); n];
        out[0] = u0inv.clone();
        for k in 1..n {
            let mut acc = Algebraic::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                let t = tw.mul(&self.coeff(j), &out[k - j]);
                acc = tw.add(&acc, &t);
            }
            out[k] = tw.neg(&tw.mul(&u0inv, &acc));
        }
        let prec = min_prec(self.prec, Some(n));
        Series::from_coeffs(out, prec)
    }

    /// Division, valid when the divisor's order is resolved.
    pub fn div(&self, tw: &Tower, other: &Series) -> Result<Series, Indeterminate> {
        let vb = match other.order() {
            Ok(Some(v)) => v,
            Ok(None) => panic!("series division by exact zero"),
            Err(e) => return Err(e),
        };
        if self.is_exactly_zero() {
            return Ok(Series::zero());
        }
        let num = self.shift_down_checked(tw, vb)?;
        let den = other.shift_down(vb);
        if den.coeffs.len() == 1 && den.is_exact() {
            // monomial divisor: the quotient is exact
            let inv = tw.inv(&den.coeff(0));
            return Ok(num.scale(tw, &inv));
        }
        let n = match (num.prec, den.prec) {
            (None, None) => (num.coeffs.len() + den.coeffs.len()).max(8),
            (pa, pb) => min_prec(pa, pb).unwrap(),
        };
        let dinv = den.invert_unit(tw, n.max(1));
        let mut q = num.mul(tw, &dinv);
        if num.prec.is_none() && den.prec.is_none() {
            // exact inputs but the quotient is generally not polynomial;
            // report it at the working precision
            q.prec = Some(n.max(1));
        }
        Ok(q)
    }

    fn shift_down_checked(&self, _tw: &Tower, k: usize) -> Result<Series, Indeterminate> {
        for i in 0..k.min(self.coeffs.len()) {
            if !self.coeffs[i].is_zero() {
                panic!("series division with smaller numerator order");
            }
        }
        if !self.is_exact() && self.prec() < k && self.coeffs.is_empty() {
            return Err(Indeterminate { prec: self.prec() });
        }
        Ok(self.shift_down(k))
    }

    /// Exponents of the known nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    /// m-th root of a series of the form c_v t^v (1 + ...), v divisible by m,
    /// given an m-th root `r` of the leading coefficient.  Result to precision n.
    pub fn nth_root_with(&self, tw: &Tower, m: usize, r: &Algebraic, n: usize) -> Series {
        let v = self.order_at_least();
        assert!(v.is_multiple_of(m), "order not divisible in nth_root");
        let unit = self.shift_down(v);
        // unit = c (1 + h); root = r (1 + h)^{1/m} via the binomial series
        let c_inv = tw.inv(&unit.coeff(0));
        let h = unit
            .scale(tw, &c_inv)
            .add_const(tw, &Algebraic::from_int(-1));
        let mut acc = Series::monomial(Algebraic::one(), 0);
        let mut hpow = Series::monomial(Algebraic::one(), 0);
        let mut binom = Algebraic::one();
        let minv = tw.inv(&Algebraic::from_int(m as i64));
        for k in 1..n {
            // binomial coefficient C(1/m, k) built incrementally
            let prev = Algebraic::from_int(k as i64 - 1);
            let num = tw.sub(&minv, &prev);
            binom = tw.mul(&binom, &num);
            binom = tw.mul(&binom, &tw.inv(&Algebraic::from_int(k as i64)));
            hpow = hpow.mul(tw, &h).cap(n);
            acc = acc.add(tw, &hpow.scale(tw, &binom));
        }
        let root = acc.scale(tw, r).shift_up(v / m);
        root.cap(if self.is_exact() { n } else { self.prec() })
    }
}

fn min_prec(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (None, x) => x,
        (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

/// Render a series with the tower's generator names.
pub fn render_series(tw: &Tower, s: &Series, var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = tw.render(c);
        let pow = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{}^{}", var, k),
        };
        let term = if pow.is_empty() {
            cs
        } else if c.is_one() {
            pow
        } else if cs == "-1" {
            format!("-{}", pow)
        } else {
            // parenthesize compound coefficients (a leading sign alone is fine)
            let body = cs.strip_prefix('-').unwrap_or(&cs);
            if body.contains(['+', '-', ' ']) {
                format!("({})*{}", cs, pow)
            } else {
                format!("{}*{}", cs, pow)
            }
        };
        parts.push(term);
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    if !s.is_exact() {
        out.push_str(&format!(" + O({}^{})", var, s.prec()));
    }
    out
}
