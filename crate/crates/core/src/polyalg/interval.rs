use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type CRational = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `2^-k` as a rational.
pub fn pow2_neg(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k as usize)
}

pub fn dyadic(m: BigInt, k: u32) -> BigRational {
    BigRational::new(m, BigInt::one() << k as usize)
}

pub fn floor_scaled(x: &BigRational, k: u32) -> BigInt {
    (x * BigRational::from_integer(BigInt::one() << k as usize)).floor().to_integer()
}

pub fn ceil_scaled(x: &BigRational, k: u32) -> BigInt {
    (x * BigRational::from_integer(BigInt::one() << k as usize)).ceil().to_integer()
}

/// Lower bound for `sqrt(x)` with absolute error at most `2^-bits`.
pub fn sqrt_lower(x: &BigRational, bits: u32) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    let m = floor_scaled(x, 2 * bits).sqrt();
    dyadic(m, bits)
}

/// Upper bound for `sqrt(x)` with absolute error at most `2^-bits`.
pub fn sqrt_upper(x: &BigRational, bits: u32) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    let t = ceil_scaled(x, 2 * bits);
    let mut m = t.sqrt();
    if &m * &m < t {
        m += 1;
    }
    dyadic(m, bits)
}

/// Rounds down to a multiple of `2^-bits`.
pub fn round_down(x: &BigRational, bits: u32) -> BigRational {
    dyadic(floor_scaled(x, bits), bits)
}

/// Rounds up to a multiple of `2^-bits`.
pub fn round_up(x: &BigRational, bits: u32) -> BigRational {
    dyadic(ceil_scaled(x, bits), bits)
}

pub fn to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let k = 64 - (x.numer().bits() as i64 - x.denom().bits() as i64);
    let t = if k >= 0 {
        (x.numer() << k as usize) / x.denom()
    } else {
        x.numer() / (x.denom() << (-k) as usize)
    };
    t.to_f64().unwrap_or(0.0) * 2f64.powi(-k as i32)
}

/// Decimal rendering with `sig` significant digits, rounded to nearest.
pub fn decimal(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let ten = BigInt::from(10);
    // estimate e = floor(log10 a)
    let mut e = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let sig = sig.max(1) as i64;
    let scaled = &a * pow10(sig - 1 - e);
    let mut m = (scaled + rat(1, 2)).floor().to_integer();
    if m == num_traits::pow(ten.clone(), sig as usize) {
        m /= &ten;
        e += 1;
    }
    let digits = m.to_string();
    let body = if e >= sig - 1 {
        let mut s = digits.clone();
        s.push_str(&"0".repeat((e - (sig - 1)) as usize));
        s
    } else if e >= 0 {
        let (i, f) = digits.split_at((e + 1) as usize);
        format!("{i}.{f}")
    } else {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Exact value of a decimal (`-0.025`, `1.5e-3`) or fraction (`3/4`) literal.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().ok()?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let e = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut v = if e >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-e) as usize))
    };
    if neg {
        v = -v;
    }
    Some(v)
}

/// Closed real interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn around(c: &BigRational, r: &BigRational) -> Self {
        Interval::new(c - r, c + r)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / rint(2)
    }

    pub fn mid_f64(&self) -> f64 {
        to_f64(&self.mid())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified comparison: `Some` when the intervals are disjoint or both
    /// are the same point.
    pub fn cmp_certified(&self, o: &Interval) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && o.lo == o.hi && self.lo == o.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        if k.is_negative() {
            Interval::new(&self.hi * k, &self.lo * k)
        } else {
            Interval::new(&self.lo * k, &self.hi * k)
        }
    }

    pub fn square(&self) -> Interval {
        if self.lo.is_positive() || self.lo.is_zero() {
            Interval::new(&self.lo * &self.lo, &self.hi * &self.hi)
        } else if self.hi.is_negative() || self.hi.is_zero() {
            Interval::new(&self.hi * &self.hi, &self.lo * &self.lo)
        } else {
            let m = std::cmp::max(-&self.lo, self.hi.clone());
            Interval::new(BigRational::zero(), &m * &m)
        }
    }

    pub fn pow(&self, n: u32) -> Interval {
        let mut acc = Interval::point(BigRational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reciprocal of an interval not containing zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn sqrt(&self, bits: u32) -> Interval {
        Interval::new(sqrt_lower(&self.lo, bits), sqrt_upper(&self.hi, bits))
    }

    /// Outward rounding to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval::new(round_down(&self.lo, bits), round_up(&self.hi, bits))
    }

    pub fn decimal(&self, sig: usize) -> String {
        format!("[{}, {}]", decimal(&self.lo, sig), decimal(&self.hi, sig))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decimal(20))
    }
}

/// Closed disc in the complex plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub center: CRational,
    pub radius: BigRational,
}

pub fn cabs_sq(z: &CRational) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

impl Disk {
    pub fn new(center: CRational, radius: BigRational) -> Self {
        Disk { center, radius }
    }

    pub fn point(c: CRational) -> Self {
        Disk { center: c, radius: BigRational::zero() }
    }

    pub fn real_point(x: BigRational) -> Self {
        Disk::point(Complex::new(x, BigRational::zero()))
    }

    pub fn intersects(&self, o: &Disk) -> bool {
        let d = &self.center - &o.center;
        let r = &self.radius + &o.radius;
        cabs_sq(&d) <= &r * &r
    }

    /// True when `o` lies inside `self`.
    pub fn contains_disk(&self, o: &Disk) -> bool {
        if o.radius > self.radius {
            return false;
        }
        let d = &self.center - &o.center;
        let r = &self.radius - &o.radius;
        cabs_sq(&d) <= &r * &r
    }

    pub fn contains_point(&self, z: &CRational) -> bool {
        cabs_sq(&(&self.center - z)) <= &self.radius * &self.radius
    }

    pub fn add(&self, o: &Disk) -> Disk {
        Disk::new(&self.center + &o.center, &self.radius + &o.radius)
    }

    pub fn sub(&self, o: &Disk) -> Disk {
        Disk::new(&self.center - &o.center, &self.radius + &o.radius)
    }

    pub fn neg(&self) -> Disk {
        Disk::new(-self.center.clone(), self.radius.clone())
    }

    pub fn conj(&self) -> Disk {
        Disk::new(self.center.conj(), self.radius.clone())
    }

    pub fn shift_real(&self, c: &BigRational) -> Disk {
        Disk::new(
            Complex::new(&self.center.re + c, self.center.im.clone()),
            self.radius.clone(),
        )
    }

    /// Upper bound on `|center|` good to `2^-bits`.
    fn abs_upper(&self, bits: u32) -> BigRational {
        sqrt_upper(&cabs_sq(&self.center), bits)
    }

    pub fn mul(&self, o: &Disk, bits: u32) -> Disk {
        let a = self.abs_upper(bits);
        let b = o.abs_upper(bits);
        let r = &a * &o.radius + &b * &self.radius + &self.radius * &o.radius;
        Disk::new(&self.center * &o.center, r)
    }

    pub fn square(&self, bits: u32) -> Disk {
        self.mul(self, bits)
    }

    /// Exact image of the disc under `z -> 1/z`, defined when the disc
    /// avoids zero.
    pub fn inverse(&self) -> Option<Disk> {
        let m = cabs_sq(&self.center) - &self.radius * &self.radius;
        if !m.is_positive() {
            return None;
        }
        let c = Complex::new(&self.center.re / &m, -&self.center.im / &m);
        Some(Disk::new(c, &self.radius / &m))
    }

    /// Enclosure of `|z|^2` over the disc.
    pub fn modulus_sq(&self, bits: u32) -> Interval {
        let m2 = cabs_sq(&self.center);
        let lo = sqrt_lower(&m2, bits) - &self.radius;
        let hi = sqrt_upper(&m2, bits) + &self.radius;
        let lo = if lo.is_negative() { BigRational::zero() } else { lo };
        Interval::new(&lo * &lo, &hi * &hi)
    }

    pub fn modulus(&self, bits: u32) -> Interval {
        let m2 = cabs_sq(&self.center);
        let lo = sqrt_lower(&m2, bits) - &self.radius;
        let lo = if lo.is_negative() { BigRational::zero() } else { lo };
        Interval::new(lo, sqrt_upper(&m2, bits) + &self.radius)
    }

    pub fn re_interval(&self) -> Interval {
        Interval::around(&self.center.re, &self.radius)
    }

    pub fn im_interval(&self) -> Interval {
        Interval::around(&self.center.im, &self.radius)
    }

    /// Rounds the center to multiples of `2^-bits`, enlarging the radius
    /// to keep the enclosure valid.
    pub fn round(&self, bits: u32) -> Disk {
        let re = round_down(&self.center.re, bits);
        let im = round_down(&self.center.im, bits);
        let exact_re = re == self.center.re;
        let exact_im = im == self.center.im;
        let extra = match (exact_re, exact_im) {
            (true, true) => BigRational::zero(),
            (false, false) => pow2_neg(bits) * rint(2),
            _ => pow2_neg(bits),
        };
        Disk::new(Complex::new(re, im), round_up(&(&self.radius + extra), bits))
    }

    pub fn center_f64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(to_f64(&self.center.re), to_f64(&self.center.im))
    }
}

/// Sign of a big integer as an `Ordering` against zero.
pub fn sign_ord(x: &BigInt) -> Ordering {
    match x.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("-0.025"), Some(rat(-1, 40)));
        assert_eq!(parse_rational("1.5e-3"), Some(rat(3, 2000)));
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational(".5"), Some(rat(1, 2)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(decimal(&rat(-2, 3), 3), "-0.667");
        assert_eq!(decimal(&rint(1234), 2), "1200");
        assert_eq!(decimal(&rat(999_999, 1_000_000), 3), "1.00");
        assert_eq!(decimal(&rat(1, 4000), 2), "0.00025");
        assert_eq!(decimal(&rint(0), 4), "0");
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = rint(2);
        let lo = sqrt_lower(&two, 40);
        let hi = sqrt_upper(&two, 40);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert!(&hi - &lo <= pow2_neg(40));
        assert_eq!(sqrt_upper(&rint(4), 10), rint(2));
    }

    #[test]
    fn disk_inverse_is_exact_image() {
        let d = Disk::new(Complex::new(rint(2), rint(0)), rint(1));
        let inv = d.inverse().unwrap();
        // image of [1,3] on the real line is [1/3, 1]
        assert_eq!(inv.center.re, rat(2, 3));
        assert_eq!(inv.radius, rat(1, 3));
    }

    #[test]
    fn interval_ops() {
        let a = Interval::new(rint(-1), rint(2));
        assert_eq!(a.square(), Interval::new(rint(0), rint(4)));
        assert_eq!(a.mul(&a), Interval::new(rint(-2), rint(4)));
        assert!(a.recip().is_none());
        let b = Interval::new(rint(3), rint(4));
        assert_eq!(a.cmp_certified(&b), Some(Ordering::Less));
        assert_eq!(b.recip().unwrap(), Interval::new(rat(1, 4), rat(1, 3)));
    }

    #[test]
    fn to_f64_handles_huge_ratios() {
        let x = BigRational::new(BigInt::one() << 2000usize, (BigInt::one() << 1999usize) + 1);
        assert!((to_f64(&x) - 2.0).abs() < 1e-12);
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-16);
    }
}
