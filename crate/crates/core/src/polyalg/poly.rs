use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer polynomial with coefficients stored in ascending degree.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial
/// has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_height_one(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|c| c.abs() <= BigInt::one())
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Same polynomial with the sign flipped if needed so the leading
    /// coefficient is positive.
    pub fn positive(&self) -> Self {
        if self.leading().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `p(-x)`
    pub fn neg_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Coefficient reversal `x^d p(1/x)`.
    pub fn reverse(&self) -> Result<Self> {
        if self.is_zero() || self.constant_term().is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(Self::new(c))
    }

    /// Polynomial whose roots are the squares of the roots of `self`,
    /// normalized to a positive leading coefficient.
    pub fn graeffe(&self) -> Self {
        let prod = self * &self.neg_var();
        let even: Vec<BigInt> = prod.coeffs.iter().step_by(2).cloned().collect();
        Self::new(even).positive()
    }

    /// `g(x^m)`
    pub fn inflate(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.degree() * m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * m] = c.clone();
        }
        Self::new(v)
    }

    /// Largest `m` with `self = g(x^m)`, together with `g`.
    pub fn power_structure(&self) -> (usize, Self) {
        let mut m = 0usize;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && k > 0 {
                m = m.gcd(&k);
            }
        }
        if m <= 1 {
            return (1, self.clone());
        }
        let g = Self::new(self.coeffs.iter().step_by(m).cloned().collect());
        (m, g)
    }

    /// Splits off the largest power of `x`: returns `(k, p / x^k)`.
    pub fn strip_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (0, Self::zero());
        }
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Polynomial proportional to `p(x + c)` with integer coefficients.
    /// Its roots are the roots of `p` shifted by `-c`.
    pub fn taylor_shift(&self, c: &BigRational) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let u = c.numer().clone();
        let v = c.denom().clone();
        let d = self.degree();
        let lin = Self::new(vec![u, v.clone()]);
        let mut acc = Self::constant(self.leading());
        let mut vpow = BigInt::one();
        for k in (0..d).rev() {
            vpow *= &v;
            acc = &(&acc * &lin) + &Self::constant(&self.coeffs[k] * &vpow);
        }
        acc.primitive()
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo_rem by zero polynomial");
        let db = b.degree();
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        if r.len() < b.coeffs.len() {
            return self.clone();
        }
        while r.len() >= b.coeffs.len() && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            let shift = dr - db;
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[j + shift] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Exact division over the rationals; the result is scaled to a
    /// primitive integer polynomial when the quotient is not integral.
    /// Returns `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let (q, r) = div_rem_rational(self, b);
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(rational_to_int(&q))
    }

    /// Exact quotient when it has integer coefficients.
    pub fn div_exact_int(&self, b: &Self) -> Option<Self> {
        let (q, r) = div_rem_rational(self, b);
        if r.iter().any(|c| !c.is_zero()) || q.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(Self::new(q.into_iter().map(|c| c.to_integer()).collect()))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut u, mut v) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !v.is_zero() {
            let r = u.pseudo_rem(&v);
            u = v;
            v = r.primitive();
        }
        u.primitive()
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g)
            .expect("gcd divides its argument")
            .primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Squarefree factorization: pairwise coprime primitive factors with
    /// their multiplicities, in increasing multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let mut c = self.gcd(&self.derivative());
        let mut w = self.div_exact(&c).expect("gcd divides").primitive();
        let mut i = 1;
        while w.degree() > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact(&y).expect("gcd divides").primitive();
            if z.degree() > 0 {
                out.push((z, i));
            }
            w = y;
            c = c.div_exact(&w).expect("gcd divides").primitive();
            i += 1;
        }
        out
    }

    /// Polynomial whose roots are the products `a_i a_j`, `i < j`, of the
    /// roots of `self`, computed by Newton power sums. Primitive with
    /// positive leading coefficient.
    pub fn pair_product(&self, cap: usize) -> Result<Self> {
        let d = self.degree();
        if d < 2 {
            return Err(Error::InvalidInput(
                "pair products need degree at least 2".into(),
            ));
        }
        let big_n = d * (d - 1) / 2;
        if big_n > cap {
            return Err(Error::DegreeOverflow {
                degree: big_n,
                cap,
            });
        }
        let s = power_sums(self, 2 * big_n);
        let two = BigRational::from_integer(BigInt::from(2));
        let t: Vec<BigRational> = (0..=big_n)
            .map(|k| {
                if k == 0 {
                    BigRational::from_integer(BigInt::from(big_n))
                } else {
                    (&s[k] * &s[k] - &s[2 * k]) / &two
                }
            })
            .collect();
        let e = elementary_from_power_sums(&t, big_n);
        let mut coeffs = vec![BigRational::zero(); big_n + 1];
        for (k, ek) in e.iter().enumerate() {
            let v = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
            coeffs[big_n - k] = v;
        }
        Ok(rational_to_int(&coeffs).primitive())
    }

    /// Parses either ascending comma-separated coefficients or a symbolic
    /// expression in `x`.
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

/// Power sums `s_0..=s_m` of the roots, as rationals.
pub fn power_sums(p: &IntPolynomial, m: usize) -> Vec<BigRational> {
    let d = p.degree();
    let lc = BigRational::from_integer(p.leading());
    let a: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()) / &lc)
        .collect();
    let mut s = vec![BigRational::zero(); m + 1];
    s[0] = BigRational::from_integer(BigInt::from(d));
    for k in 1..=m {
        let mut acc = BigRational::zero();
        for i in 1..=k.min(d) {
            let coef = &a[d - i];
            if i < k {
                acc += coef * &s[k - i];
            } else {
                acc += coef * BigRational::from_integer(BigInt::from(k));
            }
        }
        s[k] = -acc;
    }
    s
}

fn elementary_from_power_sums(t: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); n + 1];
    e[0] = BigRational::one();
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &t[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / BigRational::from_integer(BigInt::from(k));
    }
    e
}

fn div_rem_rational(a: &IntPolynomial, b: &IntPolynomial) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_zero(), "division by zero polynomial");
    let mut r: Vec<BigRational> = a
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let db = b.degree();
    let lb = BigRational::from_integer(b.leading());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lb;
        if !c.is_zero() {
            for (j, bc) in b.coeffs().iter().enumerate() {
                r[k + j] -= &c * BigRational::from_integer(bc.clone());
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (q, r)
}

/// Clears denominators of a rational coefficient vector and takes the
/// primitive part (sign preserved).
fn rational_to_int(c: &[BigRational]) -> IntPolynomial {
    let l = c
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let v: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let p = IntPolynomial::new(v);
    if p.is_zero() {
        return p;
    }
    let g = p.content();
    IntPolynomial::new(p.coeffs().iter().map(|x| x / &g).collect())
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            match k {
                0 => write!(f, "{a}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{a}*x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{a}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .map(|c| match c {
                '\u{2212}' | '\u{2013}' => '-',
                'X' => 'x',
                other => other,
            })
            .collect();
        let trimmed = norm.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let p = if trimmed.contains('x') {
            parse_symbolic(trimmed)?
        } else {
            parse_csv(trimmed)?
        };
        if p.is_zero() {
            return Err(Error::Parse("zero polynomial".into()));
        }
        Ok(p)
    }
}

fn parse_csv(s: &str) -> Result<IntPolynomial> {
    let coeffs = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad coefficient '{t}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(coeffs))
}

fn parse_symbolic(s: &str) -> Result<IntPolynomial> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = compact.as_bytes();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, &b) in bytes.iter().enumerate() {
        let c = b as char;
        if (c == '+' || c == '-') && !(i > 0 && bytes[i - 1] == b'^') {
            if !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
            } else if i > 0 {
                return Err(Error::Parse(format!("dangling sign in '{s}'")));
            }
            neg = c == '-';
        } else {
            cur.push(c);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("trailing sign in '{s}'")));
    }
    terms.push((neg, cur));

    let mut acc: Vec<BigInt> = Vec::new();
    for (neg, t) in terms {
        let (coef, power) = parse_term(&t)?;
        if acc.len() <= power {
            acc.resize(power + 1, BigInt::zero());
        }
        if neg {
            acc[power] -= coef;
        } else {
            acc[power] += coef;
        }
    }
    Ok(IntPolynomial::new(acc))
}

fn parse_term(t: &str) -> Result<(BigInt, usize)> {
    let bad = || Error::Parse(format!("bad term '{t}'"));
    match t.find('x') {
        None => Ok((t.parse::<BigInt>().map_err(|_| bad())?, 0)),
        Some(pos) => {
            let head = t[..pos].trim_end_matches('*');
            let coef = if head.is_empty() {
                BigInt::one()
            } else {
                head.parse::<BigInt>().map_err(|_| bad())?
            };
            let tail = &t[pos + 1..];
            let power = if tail.is_empty() {
                1
            } else if let Some(e) = tail.strip_prefix('^') {
                e.parse::<usize>().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            Ok((coef, power))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn parse_both_formats() {
        assert_eq!("x^4 - x - 1".parse::<IntPolynomial>().unwrap(), p(&[-1, -1, 0, 0, 1]));
        assert_eq!("\u{2212}1,\u{2212}1,0,0,1".parse::<IntPolynomial>().unwrap(), p(&[-1, -1, 0, 0, 1]));
        assert_eq!("2*x^3 + 3x - 4".parse::<IntPolynomial>().unwrap(), p(&[-4, 3, 0, 2]));
        assert_eq!("-x^2 + x".parse::<IntPolynomial>().unwrap(), p(&[0, 1, -1]));
        assert!("x^ - 1".parse::<IntPolynomial>().is_err());
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("0,0".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn display_round_trip() {
        let q = p(&[-1, -1, 0, 0, 1]);
        assert_eq!(q.to_string(), "x^4 - x - 1");
        assert_eq!(p(&[1, -1, -1]).to_string(), "-x^2 - x + 1");
        assert_eq!(p(&[-4, 3, 0, 2]).to_string(), "2*x^3 + 3*x - 4");
        for s in ["x^4 - x - 1", "-x^2 - x + 1", "2*x^3 + 3*x - 4", "7"] {
            assert_eq!(s.parse::<IntPolynomial>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p(&[1, -2, 1]).squarefree_part(), p(&[-1, 1]));
        assert_eq!(p(&[-1, -1, 0, 0, 1]).squarefree_part(), p(&[-1, -1, 0, 0, 1]));
        assert_eq!(p(&[1, 0, 0, -2, 0, 0, 1]).squarefree_part(), p(&[-1, 0, 0, 1]));
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        // (x-1)^3 (x+2)
        let a = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &(&p(&[-1, 1]) * &p(&[2, 1]));
        let d = a.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(&[-1, -1, 1]).reverse().unwrap(), p(&[1, -1, -1]));
        assert_eq!(p(&[-1, -1, 0, 0, 1]).reverse().unwrap(), p(&[1, 0, 0, -1, -1]));
        let pal = p(&[1, -1, -1, -1, 1]);
        assert_eq!(pal.reverse().unwrap(), pal);
        assert_eq!(p(&[0, 1]).reverse(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn graeffe_examples() {
        assert_eq!(p(&[-1, -1, 1]).graeffe(), p(&[1, -3, 1]));
        assert_eq!(p(&[-2, 1]).graeffe(), p(&[-4, 1]));
        // x^4 - x - 1: p(x)p(-x) = x^8 - 2x^4 - x^2 + 1
        assert_eq!(p(&[-1, -1, 0, 0, 1]).graeffe(), p(&[1, -1, -2, 0, 1]));
    }

    #[test]
    fn power_structure_examples() {
        let f5 = p(&[1, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, 0, 1]);
        assert_eq!(f5.power_structure(), (3, p(&[1, -1, -1, -1, 1])));
        assert_eq!(p(&[-1, -1, 0, 0, 1]).power_structure().0, 1);
        assert_eq!(p(&[1, 0, 1, 0, 1]).power_structure(), (2, p(&[1, 1, 1])));
        assert_eq!(p(&[1, 1, 1]).inflate(2), p(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn pair_product_examples() {
        assert_eq!(p(&[2, -3, 1]).pair_product(500).unwrap(), p(&[-2, 1]));
        assert_eq!(p(&[-1, -1, 1]).pair_product(500).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[-2, 0, 0, 1]).pair_product(500).unwrap(), p(&[-4, 0, 0, 1]));
        assert!(matches!(
            p(&[1; 40]).pair_product(500),
            Err(Error::DegreeOverflow { degree: 741, cap: 500 })
        ));
    }

    #[test]
    fn pair_product_constant_term_identity() {
        // product of all pair products is (prod of roots)^(d-1)
        let f = p(&[-1, -1, 0, 0, 1]);
        let pp = f.pair_product(500).unwrap();
        assert_eq!(pp.degree(), 6);
        assert_eq!(pp.constant_term().abs(), BigInt::one());
        let g = p(&[3, 1, 0, 2]);
        let pg = g.pair_product(500).unwrap();
        // roots product = -3/2; (3/2)^2 = 9/4 = |c0/lc| of pg
        let r = BigRational::new(pg.constant_term().abs(), pg.leading().abs());
        assert_eq!(r, BigRational::new(BigInt::from(9), BigInt::from(4)));
    }

    #[test]
    fn gcd_and_division() {
        let a = &p(&[-1, 1]) * &p(&[1, 1, 1]);
        let b = &p(&[-1, 1]) * &p(&[2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.div_exact_int(&p(&[-1, 1])).unwrap(), p(&[1, 1, 1]));
        assert!(a.div_exact(&p(&[3, 1])).is_none());
    }

    #[test]
    fn taylor_shift_moves_roots() {
        // (x - 1)(x - 2) shifted by 1/2 has roots 1/2 and 3/2
        let f = p(&[2, -3, 1]);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let g = f.taylor_shift(&half);
        assert!(g.eval_rational(&half).is_zero());
        assert!(g.eval_rational(&BigRational::new(BigInt::from(3), BigInt::from(2))).is_zero());
    }

    #[test]
    fn strip_and_height() {
        assert_eq!(p(&[0, 0, 1, 1]).strip_x_power(), (2, p(&[1, 1])));
        assert!(p(&[-1, 0, 1]).is_height_one());
        assert!(!p(&[-2, 1]).is_height_one());
    }
}
