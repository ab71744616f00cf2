//! Univariate polynomial factorization over the rationals.
//!
//! Classical Zassenhaus: squarefree decomposition (Yun), factorization modulo
//! a suitable prime (distinct-degree plus Cantor-Zassenhaus equal-degree
//! splitting), quadratic Hensel lifting to a modulus past the Mignotte-style
//! factor bound, and subset recombination.  Non-monic input is handled by the
//! usual monicizing substitution y = lc·x.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Factor a polynomial with rational coefficients:
/// f = unit · Π f_i^{e_i} with the f_i monic irreducible over Q.
/// Factors are sorted (by degree, then coefficients) so output is deterministic.
pub fn factor_rational(f: &[BigRational]) -> (BigRational, Vec<(Vec<BigRational>, u32)>) {
    let f = qtrim(f.to_vec());
    assert!(!f.is_empty(), "cannot factor the zero polynomial");
    if f.len() == 1 {
        return (f[0].clone(), vec![]);
    }
    let unit = f.last().unwrap().clone();
    let monic: Vec<BigRational> = f.iter().map(|c| c / &unit).collect();

    // Yun's squarefree decomposition over Q.
    let parts = yun_squarefree(&monic);

    let mut out: Vec<(Vec<BigRational>, u32)> = Vec::new();
    for (part, mult) in parts {
        let zpart = clear_denominators(&part);
        for g in factor_squarefree_primitive(&zpart) {
            let lead = BigRational::from_integer(g.last().unwrap().clone());
            let gm: Vec<BigRational> = g
                .iter()
                .map(|c| BigRational::from_integer(c.clone()) / &lead)
                .collect();
            out.push((gm, mult));
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
    (unit, out)
}

/// True iff f (rational coefficients, nonzero) has no repeated roots.
pub fn is_squarefree_rational(f: &[BigRational]) -> bool {
    let f = qtrim(f.to_vec());
    if f.len() <= 2 {
        return !f.is_empty();
    }
    let df: Vec<BigRational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    qgcd(&f, &df).len() == 1
}

// ---------------------------------------------------------------------------
// Rational-coefficient helpers
// ---------------------------------------------------------------------------

fn qtrim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = qtrim(b.to_vec());
    assert!(!b.is_empty());
    let mut r = qtrim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    let lc = b.last().unwrap();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / lc;
        let k = r.len() - b.len();
        q[k] = c.clone();
        for i in 0..b.len() {
            let t = &c * &b[i];
            r[k + i] -= t;
        }
        r = qtrim(r);
    }
    (qtrim(q), r)
}

fn qgcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r0 = qtrim(a.to_vec());
    let mut r1 = qtrim(b.to_vec());
    while !r1.is_empty() {
        let (_, r) = qdivrem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if r0.is_empty() {
        return r0;
    }
    let lc = r0.last().unwrap().clone();
    r0.iter().map(|c| c / &lc).collect()
}

fn yun_squarefree(f: &[BigRational]) -> Vec<(Vec<BigRational>, u32)> {
    let deriv = |p: &[BigRational]| -> Vec<BigRational> {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect()
    };
    let df = deriv(f);
    let a0 = qgcd(f, &df);
    if a0.len() == 1 {
        return vec![(f.to_vec(), 1)];
    }
    let mut parts = Vec::new();
    let (mut b, _) = qdivrem(f, &a0);
    let (mut c, _) = qdivrem(&df, &a0);
    let mut i = 1u32;
    loop {
        let db = deriv(&b);
        let d: Vec<BigRational> = {
            let n = c.len().max(db.len());
            qtrim(
                (0..n)
                    .map(|k| {
                        c.get(k).cloned().unwrap_or_else(BigRational::zero)
                            - db.get(k).cloned().unwrap_or_else(BigRational::zero)
                    })
                    .collect(),
            )
        };
        if d.is_empty() {
            if b.len() > 1 {
                parts.push((b, i));
            }
            break;
        }
        let p = qgcd(&b, &d);
        if p.len() > 1 {
            parts.push((p.clone(), i));
        }
        b = qdivrem(&b, &p).0;
        c = qdivrem(&d, &p).0;
        i += 1;
    }
    parts
}

/// Clears denominators and the content: primitive integer polynomial with
/// positive leading coefficient, equal to the input up to a rational constant.
fn clear_denominators(f: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in f {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    primitive_part(&ints)
}

fn content(f: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in f {
        g = g.gcd(c);
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

fn primitive_part(f: &[BigInt]) -> Vec<BigInt> {
    let mut g = content(f);
    if f.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers
// ---------------------------------------------------------------------------

fn ztrim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zadd_into(v: &mut Vec<BigInt>, w: &[BigInt], sign: i32) {
    for (i, c) in w.iter().enumerate() {
        if i >= v.len() {
            v.resize(i + 1, BigInt::zero());
        }
        if sign > 0 {
            v[i] += c;
        } else {
            v[i] -= c;
        }
    }
}

/// Division by a monic divisor; returns None if the division is not exact.
fn zdiv_exact_monic(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let b = ztrim(b.to_vec());
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let mut r = ztrim(a.to_vec());
    if r.len() < b.len() {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = r.last().unwrap().clone();
        let k = r.len() - b.len();
        q[k] = c.clone();
        for i in 0..b.len() {
            let t = &c * &b[i];
            r[k + i] -= t;
        }
        r = ztrim(r);
    }
    if r.is_empty() {
        Some(ztrim(q))
    } else {
        None
    }
}

/// Symmetric representative mod m, in (-m/2, m/2].
fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let mut r = x.mod_floor(m);
    let half = m >> 1;
    if r > half {
        r -= m;
    }
    r
}

fn zp_sym(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    ztrim(f.iter().map(|c| sym_mod(c, m)).collect())
}

fn zmul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    zp_sym(&zmul(a, b), m)
}

/// Division with remainder by a monic divisor, coefficients reduced mod m.
fn zdivrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let b = ztrim(b.to_vec());
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let mut r = zp_sym(a, m);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = r.last().unwrap().clone();
        let k = r.len() - b.len();
        q[k] = c.clone();
        for i in 0..b.len() {
            let t = &c * &b[i];
            r[k + i] = sym_mod(&(&r[k + i] - t), m);
        }
        r = ztrim(r);
    }
    (zp_sym(&q, m), r)
}

// ---------------------------------------------------------------------------
// Arithmetic mod a machine prime
// ---------------------------------------------------------------------------

const PRIMES: &[u64] = &[
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401,
];

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

type MPoly = Vec<u64>;

fn mtrim(mut v: MPoly) -> MPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mp_from(f: &[BigInt], p: u64) -> MPoly {
    let pb = BigInt::from(p);
    mtrim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn mp_mul(a: &[u64], b: &[u64], p: u64) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, p), p);
        }
    }
    mtrim(out)
}

fn mp_divrem(a: &[u64], b: &[u64], p: u64) -> (MPoly, MPoly) {
    let b = mtrim(b.to_vec());
    assert!(!b.is_empty());
    let mut r = mtrim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - b.len() + 1];
    let lcinv = invm(*b.last().unwrap(), p);
    while r.len() >= b.len() {
        let c = mulm(*r.last().unwrap(), lcinv, p);
        let k = r.len() - b.len();
        q[k] = c;
        for i in 0..b.len() {
            r[k + i] = subm(r[k + i], mulm(c, b[i], p), p);
        }
        r = mtrim(r);
    }
    (mtrim(q), r)
}

fn mp_gcd(a: &[u64], b: &[u64], p: u64) -> MPoly {
    let mut r0 = mtrim(a.to_vec());
    let mut r1 = mtrim(b.to_vec());
    while !r1.is_empty() {
        let (_, r) = mp_divrem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
    }
    mp_monic(&r0, p)
}

fn mp_monic(a: &[u64], p: u64) -> MPoly {
    let a = mtrim(a.to_vec());
    if a.is_empty() {
        return a;
    }
    let inv = invm(*a.last().unwrap(), p);
    a.iter().map(|&c| mulm(c, inv, p)).collect()
}

fn mp_deriv(a: &[u64], p: u64) -> MPoly {
    mtrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, (i as u64) % p, p))
            .collect(),
    )
}

/// a^e mod f, with a big exponent.
fn mp_powmod_big(a: &[u64], e: &BigUint, f: &[u64], p: u64) -> MPoly {
    let mut acc = vec![1u64];
    let mut base = mp_divrem(a, f, p).1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = mp_divrem(&mp_mul(&acc, &base, p), f, p).1;
        }
        if i + 1 < bits {
            base = mp_divrem(&mp_mul(&base, &base, p), f, p).1;
        }
    }
    acc
}

/// Deterministic xorshift for equal-degree splitting.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Distinct-degree then equal-degree factorization of a squarefree monic
/// polynomial mod p.  Returns the monic irreducible factors.
fn mp_factor_squarefree(f: &[u64], p: u64) -> Vec<MPoly> {
    let f = mp_monic(f, p);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = vec![0u64, 1]; // x^{p^d} mod rest, built incrementally
    let mut d = 0usize;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push(rest);
            break;
        }
        h = mp_powmod_big(&h, &BigUint::from(p), &rest, p);
        let mut hx = h.clone();
        if hx.len() < 2 {
            hx.resize(2, 0);
        }
        hx[1] = subm(hx[1], 1, p);
        let g = mp_gcd(&mtrim(hx), &rest, p);
        if g.len() > 1 {
            let mut rng = Rng(0x9E37_79B9_7F4A_7C15 ^ p.wrapping_mul(d as u64 + 1));
            equal_degree_split(&g, d, p, &mut rng, &mut out);
            rest = mp_divrem(&rest, &g, p).0;
            if rest.len() > 1 {
                h = mp_divrem(&h, &rest, p).1;
            }
        }
    }
    out.retain(|g| g.len() > 1);
    out.sort();
    out
}

/// Cantor-Zassenhaus equal-degree splitting: g is a product of distinct monic
/// irreducibles, all of degree d.
fn equal_degree_split(g: &[u64], d: usize, p: u64, rng: &mut Rng, out: &mut Vec<MPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: MPoly = mtrim((0..n).map(|_| rng.next() % p).collect());
        if a.is_empty() {
            continue;
        }
        let b = mp_powmod_big(&a, &e, g, p);
        let mut b1 = b;
        if b1.is_empty() {
            b1 = vec![0];
        }
        b1[0] = subm(b1[0], 1, p);
        let t = mp_gcd(&mtrim(b1), g, p);
        if t.len() > 1 && t.len() < g.len() {
            equal_degree_split(&t, d, p, rng, out);
            let (q, _) = mp_divrem(g, &t, p);
            equal_degree_split(&q, d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

/// One quadratic Hensel step (von zur Gathen & Gerhard, Alg. 15.10): given
/// f ≡ g·h and s·g + t·h ≡ 1 (mod m) with f, g, h monic, produce the same
/// data mod m².
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let mut e: Vec<BigInt> = f.to_vec();
    zadd_into(&mut e, &zmul(g, h), -1);
    let e = zp_sym(&e, &m2);

    let se = zmul_mod(s, &e, &m2);
    let (q, r) = zdivrem_monic_mod(&se, h, &m2);

    let mut gnew: Vec<BigInt> = g.to_vec();
    zadd_into(&mut gnew, &zmul(t, &e), 1);
    zadd_into(&mut gnew, &zmul(&q, g), 1);
    let gnew = zp_sym(&gnew, &m2);

    let mut hnew: Vec<BigInt> = h.to_vec();
    zadd_into(&mut hnew, &r, 1);
    let hnew = zp_sym(&hnew, &m2);

    let mut b = zmul(s, &gnew);
    zadd_into(&mut b, &zmul(t, &hnew), 1);
    if b.is_empty() {
        b.push(BigInt::zero());
    }
    b[0] -= BigInt::one();
    let b = zp_sym(&b, &m2);

    let sb = zmul_mod(s, &b, &m2);
    let (c, d) = zdivrem_monic_mod(&sb, &hnew, &m2);

    let mut snew: Vec<BigInt> = s.to_vec();
    zadd_into(&mut snew, &d, -1);
    let snew = zp_sym(&snew, &m2);

    let mut tnew: Vec<BigInt> = t.to_vec();
    zadd_into(&mut tnew, &zmul(t, &b), -1);
    zadd_into(&mut tnew, &zmul(&c, &gnew), -1);
    let tnew = zp_sym(&tnew, &m2);

    (gnew, hnew, snew, tnew)
}

/// Extended Euclid mod p: s·a + t·b ≡ 1.
fn mp_ext_euclid(a: &[u64], b: &[u64], p: u64) -> (MPoly, MPoly) {
    let mut r0 = mtrim(a.to_vec());
    let mut r1 = mtrim(b.to_vec());
    let mut s0: MPoly = vec![1];
    let mut s1: MPoly = vec![];
    let mut t0: MPoly = vec![];
    let mut t1: MPoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let sub2 = |x: &[u64], y: &[u64]| -> MPoly {
            let n = x.len().max(y.len());
            mtrim(
                (0..n)
                    .map(|i| {
                        subm(
                            x.get(i).copied().unwrap_or(0),
                            y.get(i).copied().unwrap_or(0),
                            p,
                        )
                    })
                    .collect(),
            )
        };
        let snew = sub2(&s0, &mp_mul(&q, &s1, p));
        let tnew = sub2(&t0, &mp_mul(&q, &t1, p));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = snew;
        t0 = t1;
        t1 = tnew;
    }
    assert_eq!(r0.len(), 1, "factors not coprime in Hensel setup");
    let cinv = invm(r0[0], p);
    (
        s0.iter().map(|&x| mulm(x, cinv, p)).collect(),
        t0.iter().map(|&x| mulm(x, cinv, p)).collect(),
    )
}

fn mp_to_sym_bigint(f: &[u64], p: u64) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    zp_sym(&f.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(), &pb)
}

/// Lift the mod-p factorization of monic f to the fixed modulus `target`
/// (a power p^(2^k)) by recursive factor-tree lifting.
fn hensel_lift_tree(f: &[BigInt], factors: &[MPoly], p: u64, target: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![zp_sym(f, target)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left.iter().fold(vec![1u64], |acc, x| mp_mul(&acc, x, p));
    let h0 = right.iter().fold(vec![1u64], |acc, x| mp_mul(&acc, x, p));
    let (s0, t0) = mp_ext_euclid(&g0, &h0, p);
    let mut g = mp_to_sym_bigint(&g0, p);
    let mut h = mp_to_sym_bigint(&h0, p);
    let mut s = mp_to_sym_bigint(&s0, p);
    let mut t = mp_to_sym_bigint(&t0, p);
    let mut m = BigInt::from(p);
    while &m < target {
        let (gn, hn, sn, tn) = hensel_step(f, &g, &h, &s, &t, &m);
        g = gn;
        h = hn;
        s = sn;
        t = tn;
        m = &m * &m;
    }
    let mut out = hensel_lift_tree(&g, left, p, target);
    out.extend(hensel_lift_tree(&h, right, p, target));
    out
}

// ---------------------------------------------------------------------------
// Zassenhaus driver
// ---------------------------------------------------------------------------

/// Factor a squarefree primitive integer polynomial into primitive
/// irreducible integer factors with positive leading coefficients.
pub fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = ztrim(f.to_vec());
    let n = f.len() - 1;
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();

    // Monicize: F(y) = lc^{n-1} f(y / lc); coefficient of y^i is f_i·lc^{n-1-i}.
    let monic_f: Vec<BigInt> = if lc.is_one() {
        f.clone()
    } else {
        let mut pw = vec![BigInt::one(); n + 1];
        for i in (0..n).rev() {
            pw[i] = &pw[i + 1] * &lc;
        }
        f.iter()
            .enumerate()
            .map(|(i, c)| {
                if i == n {
                    BigInt::one()
                } else {
                    c * &pw[i + 1]
                }
            })
            .collect()
    };

    // Prime selection: among the first few primes keeping F squarefree,
    // prefer the one giving the fewest modular factors.
    let mut best: Option<(u64, Vec<MPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES {
        let fp = mp_from(&monic_f, p);
        if fp.len() != monic_f.len() {
            continue;
        }
        let d = mp_deriv(&fp, p);
        if mp_gcd(&fp, &d, p).len() != 1 {
            continue;
        }
        let factors = mp_factor_squarefree(&fp, p);
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 3 {
            break;
        }
    }
    let (p, modular) = best.expect("no suitable prime found for factorization");

    if modular.len() == 1 {
        return vec![f];
    }

    // Coefficient bound for factors of the monic polynomial.
    let norm2: BigInt = monic_f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1);
    let two_bound = &bound * 2;
    let mut target = BigInt::from(p);
    while target <= two_bound {
        target = &target * &target;
    }

    let lifted = hensel_lift_tree(&monic_f, &modular, p, &target);

    // Subset recombination against the monic polynomial.
    let mut remaining = lifted;
    let mut fcur = monic_f;
    let mut monic_factors: Vec<Vec<BigInt>> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut advanced = true;
        while advanced && 2 * size <= remaining.len() {
            advanced = false;
            for combo in combinations(remaining.len(), size) {
                let mut cand = vec![BigInt::one()];
                for &i in &combo {
                    cand = zmul_mod(&cand, &remaining[i], &target);
                }
                if let Some(q) = zdiv_exact_monic(&fcur, &cand) {
                    monic_factors.push(cand);
                    fcur = q;
                    let mut keep = Vec::new();
                    for (i, r) in remaining.into_iter().enumerate() {
                        if !combo.contains(&i) {
                            keep.push(r);
                        }
                    }
                    remaining = keep;
                    advanced = true;
                    break;
                }
            }
        }
        size += 1;
    }
    if fcur.len() > 1 {
        monic_factors.push(fcur);
    }

    // Map factors of the monicized polynomial back to primitive factors of f.
    monic_factors
        .iter()
        .map(|g| {
            if lc.is_one() {
                g.clone()
            } else {
                let scaled: Vec<BigInt> = g
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * lc.pow(i as u32))
                    .collect();
                primitive_part(&scaled)
            }
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n || k == 0 {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|&n| BigRational::from_integer(BigInt::from(n)))
            .collect()
    }

    fn assemble(unit: &BigRational, factors: &[(Vec<BigRational>, u32)]) -> Vec<BigRational> {
        let mut acc = vec![unit.clone()];
        for (f, m) in factors {
            for _ in 0..*m {
                let mut out = vec![BigRational::zero(); acc.len() + f.len() - 1];
                for (i, x) in acc.iter().enumerate() {
                    for (j, y) in f.iter().enumerate() {
                        let t = x * y;
                        out[i + j] += t;
                    }
                }
                acc = out;
            }
        }
        acc
    }

    #[test]
    fn factors_difference_of_squares() {
        let f = qv(&[-1, 0, 1]);
        let (unit, factors) = factor_rational(&f);
        assert!(unit.is_one());
        assert_eq!(factors.len(), 2);
        assert_eq!(assemble(&unit, &factors), f);
    }

    #[test]
    fn keeps_irreducible_quadratic() {
        let f = qv(&[1, 0, 1]);
        let (_, factors) = factor_rational(&f);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 1);
    }

    #[test]
    fn factors_cyclotomic_cubic() {
        let f = qv(&[-1, 0, 0, 1]); // x^3 - 1 = (x-1)(x^2+x+1)
        let (unit, factors) = factor_rational(&f);
        assert_eq!(factors.len(), 2);
        assert_eq!(assemble(&unit, &factors), f);
        assert_eq!(factors[0].0, qv(&[-1, 1]));
        assert_eq!(factors[1].0, qv(&[1, 1, 1]));
    }

    #[test]
    fn factors_non_monic() {
        // 6x^2 + 5x + 1 = (2x+1)(3x+1)
        let f = qv(&[1, 5, 6]);
        let (unit, factors) = factor_rational(&f);
        assert_eq!(factors.len(), 2);
        assert_eq!(assemble(&unit, &factors), f);
    }

    #[test]
    fn quartic_with_two_quadratic_factors() {
        // (x^2-2)(x^2-3)
        let f = qv(&[6, 0, -5, 0, 1]);
        let (unit, factors) = factor_rational(&f);
        assert_eq!(factors.len(), 2);
        assert_eq!(assemble(&unit, &factors), f);
    }

    #[test]
    fn repeated_factors_and_multiplicity() {
        // (x-1)^2 (x+2)^3
        let a = qv(&[-1, 1]);
        let b = qv(&[2, 1]);
        let f = assemble(&BigRational::one(), &[(a.clone(), 2), (b.clone(), 3)]);
        let (unit, factors) = factor_rational(&f);
        assert!(unit.is_one());
        assert_eq!(factors, vec![(a, 2), (b, 3)]);
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        let f = qv(&[-2, 0, 0, 0, 1]); // x^4 - 2
        let (_, factors) = factor_rational(&f);
        assert_eq!(factors.len(), 1);
    }

    #[test]
    fn big_product_of_linears() {
        let mut f = qv(&[1]);
        for k in 1..=6i64 {
            f = assemble(&BigRational::one(), &[(f, 1), (qv(&[-k, 1]), 1)]);
        }
        let (_, factors) = factor_rational(&f);
        assert_eq!(factors.len(), 6);
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree_rational(&qv(&[-1, 0, 1])));
        assert!(!is_squarefree_rational(&qv(&[1, 2, 1])));
    }

    #[test]
    fn mixed_degrees_recombination() {
        // (x^2+x+1)(x^3-2)(x-5)
        let f = assemble(
            &BigRational::one(),
            &[
                (qv(&[1, 1, 1]), 1),
                (qv(&[-2, 0, 0, 1]), 1),
                (qv(&[-5, 1]), 1),
            ],
        );
        let (unit, factors) = factor_rational(&f);
        assert_eq!(factors.len(), 3);
        assert_eq!(assemble(&unit, &factors), f);
    }
}
