use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;

/// Evidence gathered about whether a polynomial is irreducible over the
/// rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalityReport {
    /// Irreducibility is proven by factor-degree patterns modulo primes.
    pub verified: bool,
    pub rational_root: Option<BigRational>,
    /// Order `k` of a cyclotomic factor `Phi_k`.
    pub cyclotomic_factor: Option<usize>,
    pub primes_used: Vec<u64>,
}

impl MinimalityReport {
    pub fn reducible(&self) -> bool {
        self.rational_root.is_some() || self.cyclotomic_factor.is_some()
    }
}

/// Irreducibility evidence: rational roots, small cyclotomic factors, and
/// factor-degree patterns modulo small primes. `verified` is set only when
/// the intersection of achievable factor degrees over all primes used
/// leaves no proper divisor degree.
pub fn minimality_check(p: &IntPolynomial) -> MinimalityReport {
    let f = p.primitive();
    let n = f.degree();
    let mut rep = MinimalityReport {
        verified: false,
        rational_root: None,
        cyclotomic_factor: None,
        primes_used: Vec::new(),
    };
    if n <= 1 {
        rep.verified = n == 1;
        return rep;
    }
    if let Some(r) = rational_root(&f) {
        rep.rational_root = Some(r);
        return rep;
    }
    if let Some(k) = cyclotomic_factor(&f) {
        rep.cyclotomic_factor = Some(k);
        return rep;
    }
    let mut possible = vec![true; n + 1];
    let mut usable = 0;
    for prime in small_primes(2000) {
        if usable >= 60 {
            break;
        }
        let Some(degs) = factor_degrees_mod(&f, prime) else { continue };
        usable += 1;
        rep.primes_used.push(prime);
        let sums = subset_sums(&degs, n);
        for (k, slot) in possible.iter_mut().enumerate() {
            *slot = *slot && sums[k];
        }
        if (1..n).all(|k| !possible[k]) {
            rep.verified = true;
            break;
        }
    }
    rep
}

fn divisors_upto(x: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let v = x.abs().to_u64()?;
    if v > limit {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_root(f: &IntPolynomial) -> Option<BigRational> {
    if f.constant_term().is_zero() {
        return Some(BigRational::zero());
    }
    let nums = divisors_upto(&f.constant_term(), 1_000_000_000_000)?;
    let dens = divisors_upto(&f.leading(), 1_000_000_000_000)?;
    for a in &nums {
        for b in &dens {
            for s in [BigInt::one(), -BigInt::one()] {
                let r = BigRational::new(&s * a, b.clone());
                if f.eval_rational(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn totient(k: usize) -> usize {
    (1..=k).filter(|&j| j.gcd(&k) == 1).count()
}

fn mobius(k: usize) -> i32 {
    let mut n = k;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Cyclotomic polynomial `Phi_k`.
pub fn cyclotomic(k: usize) -> IntPolynomial {
    let binom = |d: usize| &IntPolynomial::monomial(BigInt::one(), d) - &IntPolynomial::one();
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in 1..=k {
        if k.is_multiple_of(d) {
            match mobius(k / d) {
                1 => num = &num * &binom(d),
                -1 => den = &den * &binom(d),
                _ => {}
            }
        }
    }
    num.div_exact_int(&den).expect("cyclotomic division")
}

fn cyclotomic_factor(f: &IntPolynomial) -> Option<usize> {
    let n = f.degree();
    // phi(k) >= sqrt(k/2), so k <= 2 n^2 covers every candidate degree
    let kmax = (2 * n * n).min(400);
    for k in 1..=kmax {
        if totient(k) > n {
            continue;
        }
        if f.div_exact(&cyclotomic(k)).is_some() {
            return Some(k);
        }
    }
    None
}

fn small_primes(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; limit as usize + 1];
    let mut out = Vec::new();
    for i in 2..=limit as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    s[0] = true;
    for &d in degs {
        for k in (d..=n).rev() {
            if s[k - d] {
                s[k] = true;
            }
        }
    }
    s
}

type Fp = Vec<u64>;

fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * inv % p;
        if c != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * bj % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn div(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return Vec::new();
    }
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * inv % p;
        let shift = top - db;
        q[shift] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * bj % p) % p;
            }
        }
        r.pop();
    }
    trim(&mut q);
    q
}

fn mulmod(a: &Fp, b: &Fp, f: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    rem(&c, f, p)
}

fn gcd_fp(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let inv = inv_mod(l, p);
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    x
}

fn sub_x(a: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    if r.len() < 2 {
        r.resize(2, 0);
    }
    r[1] = (r[1] + p - 1) % p;
    trim(&mut r);
    r
}

fn powmod_x(e: u64, base: &Fp, f: &Fp, p: u64) -> Fp {
    let mut result: Fp = vec![1];
    let mut b = rem(base, f, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

/// Degrees of the irreducible factors of `f` modulo `p`, or `None` when the
/// reduction drops degree or is not squarefree.
fn factor_degrees_mod(f: &IntPolynomial, p: u64) -> Option<Vec<usize>> {
    let pb = BigInt::from(p);
    let mut g: Fp = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
        .collect();
    trim(&mut g);
    if g.len() != f.coeffs().len() {
        return None;
    }
    let dg: Fp = {
        let mut d: Fp = g
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * (k as u64 % p) % p)
            .collect();
        trim(&mut d);
        d
    };
    if dg.is_empty() || gcd_fp(&g, &dg, p).len() > 1 {
        return None;
    }
    let mut degs = Vec::new();
    let mut rest = g;
    let mut h: Fp = vec![0, 1];
    let mut d = 1usize;
    while rest.len() > 1 {
        if 2 * d > rest.len() - 1 {
            degs.push(rest.len() - 1);
            break;
        }
        h = powmod_x(p, &h, &rest, p);
        let common = gcd_fp(&sub_x(&h, p), &rest, p);
        let k = common.len() - 1;
        if k > 0 {
            for _ in 0..(k / d) {
                degs.push(d);
            }
            rest = div(&rest, &common, p);
            h = rem(&h, &rest, p);
        }
        d += 1;
    }
    Some(degs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn irreducible_examples_verified() {
        assert!(minimality_check(&p(&[-1, -1, 0, 0, 1])).verified);
        assert!(minimality_check(&p(&[-1, -1, 1])).verified);
        assert!(minimality_check(&p(&[1, -1, -1, -1, 1])).verified);
    }

    #[test]
    fn reducible_examples_flagged() {
        let r = minimality_check(&p(&[-1, 1, -1, 1]));
        assert!(r.reducible() && !r.verified);
        let r = minimality_check(&p(&[1, 0, 1, 0, 1]));
        assert_eq!(r.cyclotomic_factor, Some(3));
        // (x^2 - 2)(x^2 - 3) has no rational root and no cyclotomic factor
        let r = minimality_check(&(&p(&[-2, 0, 1]) * &p(&[-3, 0, 1])));
        assert!(!r.verified && !r.reducible());
    }

    #[test]
    fn x4_plus_1_is_never_proven_by_patterns() {
        // irreducible, yet it splits modulo every prime
        let r = minimality_check(&p(&[1, 0, 0, 0, 1]));
        assert_eq!(r.cyclotomic_factor, Some(8));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }
}
