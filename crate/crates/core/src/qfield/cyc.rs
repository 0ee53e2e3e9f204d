//! Exact arithmetic in the cyclotomic field `Q(z)`, `z` a primitive `N`-th root
//! of unity chosen so that `q`, `q^{1/n}` and `q^{n(n-1)/4}` all live in it.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which primitive `2h`-th root plays the role of `q` in the complex embedding.
///
/// Exact identities are Galois invariant, so the choice only affects
/// [`CycNum::to_complex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RootSign {
    /// `q = exp(-i pi / h)`.
    #[default]
    Negative,
    /// `q = exp(+i pi / h)`.
    Positive,
}

/// Field parameters and the reduction data for `Q(z)`.
#[derive(Debug)]
pub struct FieldCtx {
    n: u32,
    h: u32,
    sign: RootSign,
    order: u32,
    degree: usize,
    /// Monic cyclotomic polynomial, low degree first, `degree + 1` entries.
    phi: Vec<BigInt>,
    /// Reduced integer numerators of `z^k` for `k` in `0..order`.
    zpow: Vec<Vec<BigInt>>,
}

type Registry = Mutex<HashMap<(u32, u32, RootSign), &'static FieldCtx>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    // x^m - 1 divided by every Phi_d with d | m, d < m.
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            p = poly_exact_div(&p, &div);
        }
    }
    p
}

fn poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quo = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (t, dt) in den.iter().enumerate() {
            rem[k + t] -= &c * dt;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

impl FieldCtx {
    /// The shared context for `(n, h)` with the default root sign.
    pub fn get(n: u32, h: u32) -> &'static FieldCtx {
        Self::get_with_sign(n, h, RootSign::default())
    }

    pub fn get_with_sign(n: u32, h: u32, sign: RootSign) -> &'static FieldCtx {
        assert!(n >= 1 && h >= 1, "field parameters must be positive");
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(ctx) = reg.get(&(n, h, sign)) {
            return ctx;
        }
        let ctx: &'static FieldCtx = Box::leak(Box::new(Self::build(n, h, sign)));
        reg.insert((n, h, sign), ctx);
        ctx
    }

    fn build(n: u32, h: u32, sign: RootSign) -> FieldCtx {
        // q = z^{n k}; q^{n(n-1)/4} needs n k n(n-1)/4 integral, which fails
        // only for n = 3 mod 4 with k = 1.
        let k = if (n * n * (n - 1)).is_multiple_of(4) { 1 } else { 2 };
        let order = 2 * n * h * k;
        let phi = cyclotomic_poly(order);
        let degree = phi.len() - 1;
        let mut zpow = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..order {
            zpow.push(cur.clone());
            // multiply by z
            let top = cur[degree - 1].clone();
            for t in (1..degree).rev() {
                cur[t] = cur[t - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for (t, c) in cur.iter_mut().enumerate() {
                    *c -= &top * &phi[t];
                }
            }
        }
        FieldCtx { n, h, sign, order, degree, phi, zpow }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn sign(&self) -> RootSign {
        self.sign
    }

    /// Multiplicative order of the generator `z`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exponent `e` with `q = z^e`.
    pub fn q_exp(&self) -> i64 {
        (self.order / (2 * self.h)) as i64
    }

    /// Exponent `e` with `q^{1/n} = z^e`.
    pub fn qn_exp(&self) -> i64 {
        self.q_exp() / self.n as i64
    }

    pub fn zero(&'static self) -> CycNum {
        CycNum { ctx: self, num: vec![BigInt::zero(); self.degree], den: BigInt::one() }
    }

    pub fn one(&'static self) -> CycNum {
        self.int(1)
    }

    pub fn int(&'static self, v: i64) -> CycNum {
        let mut c = self.zero();
        c.num[0] = BigInt::from(v);
        c
    }

    pub fn rational(&'static self, num: i64, den: i64) -> CycNum {
        assert!(den != 0, "zero denominator");
        let mut c = self.zero();
        c.num[0] = BigInt::from(num);
        c.den = BigInt::from(den);
        c.normalize();
        c
    }

    /// `z^k` for any integer `k`.
    pub fn z_pow(&'static self, k: i64) -> CycNum {
        let idx = k.rem_euclid(self.order as i64) as usize;
        CycNum { ctx: self, num: self.zpow[idx].clone(), den: BigInt::one() }
    }

    /// `q^k`.
    pub fn q_pow(&'static self, k: i64) -> CycNum {
        self.z_pow(k * self.q_exp())
    }

    /// `q^{k/n}`.
    pub fn q_frac_pow(&'static self, k: i64) -> CycNum {
        self.z_pow(k * self.qn_exp())
    }

    /// `q^{num/den}` when the exponent is representable.
    pub fn q_rational_pow(&'static self, num: i64, den: i64) -> Option<CycNum> {
        let e = num * self.q_exp();
        if e % den == 0 {
            Some(self.z_pow(e / den))
        } else {
            None
        }
    }

    fn z_complex(&self) -> Complex64 {
        let s = match self.sign {
            RootSign::Negative => -1.0,
            RootSign::Positive => 1.0,
        };
        Complex64::from_polar(1.0, s * 2.0 * std::f64::consts::PI / self.order as f64)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.h == other.h && self.sign == other.sign
    }
}

/// An exact element of `Q(z)`, stored as integer numerators over a common
/// positive denominator in lowest terms.
#[derive(Clone)]
pub struct CycNum {
    ctx: &'static FieldCtx,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn ctx(&self) -> &'static FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Rational coefficient of `z^k` in the power basis.
    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num[k].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.ctx.degree).map(|k| self.coeff(k)).collect()
    }

    pub fn from_coeffs(ctx: &'static FieldCtx, coeffs: &[BigRational]) -> CycNum {
        assert!(coeffs.len() <= ctx.degree, "too many coefficients");
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); ctx.degree];
        for (k, c) in coeffs.iter().enumerate() {
            num[k] = c.numer() * (&den / c.denom());
        }
        let mut out = CycNum { ctx, num, den };
        out.normalize();
        out
    }

    /// Rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.den.is_one() {
            return;
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    fn check_ctx(&self, other: &CycNum) {
        debug_assert!(
            std::ptr::eq(self.ctx, other.ctx) || self.ctx == other.ctx,
            "mixing elements of different cyclotomic fields"
        );
    }

    fn add_signed(&self, other: &CycNum, negate: bool) -> CycNum {
        self.check_ctx(other);
        let mut out = self.clone();
        if self.den == other.den {
            for (a, b) in out.num.iter_mut().zip(&other.num) {
                if negate {
                    *a -= b;
                } else {
                    *a += b;
                }
            }
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            for (a, b) in out.num.iter_mut().zip(&other.num) {
                let bb = b * &fb;
                *a *= &fa;
                if negate {
                    *a -= bb;
                } else {
                    *a += bb;
                }
            }
            out.den = l;
        }
        out.normalize();
        out
    }

    fn mul_ref(&self, other: &CycNum) -> CycNum {
        self.check_ctx(other);
        let d = self.ctx.degree;
        if self.is_zero() || other.is_zero() {
            return self.ctx.zero();
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let phi = &self.ctx.phi;
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for t in 0..d {
                if !phi[t].is_zero() {
                    prod[k - d + t] -= &c * &phi[t];
                }
            }
        }
        prod.truncate(d);
        let mut out = CycNum { ctx: self.ctx, num: prod, den: &self.den * &other.den };
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        let mut out = self.clone();
        for c in &mut out.num {
            *c *= k;
        }
        out.normalize();
        out
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        // Extended Euclid over Q[x] with the cyclotomic modulus.
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let mut r0 = to_q(&self.ctx.phi);
        let mut r1 = to_q(&self.num);
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1) {
            let (qt, rem) = qpoly_divmod(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&qt, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            debug_assert!(!r1.is_empty(), "non-invertible element of a field");
        }
        // r1 is a nonzero constant c with s1 * a = c.
        let c = r1[0].clone();
        let mut coeffs: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        coeffs.resize(self.ctx.degree, BigRational::zero());
        // numerator of self was scaled by den
        let den = BigRational::from_integer(self.den.clone());
        let coeffs: Vec<BigRational> = coeffs.into_iter().map(|x| x * &den).collect();
        Some(CycNum::from_coeffs(self.ctx, &coeffs))
    }

    pub fn div(&self, other: &CycNum) -> Option<CycNum> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, e: u32) -> CycNum {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under complex conjugation `z -> z^{-1}`.
    pub fn conj(&self) -> CycNum {
        let mut acc = self.ctx.zero();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = self.ctx.z_pow(-(k as i64));
            for x in &mut t.num {
                *x *= c;
            }
            t.den = self.den.clone();
            t.normalize();
            acc += &t;
        }
        acc
    }

    /// Value under the embedding `z -> exp(-+ 2 pi i / N)`.
    pub fn to_complex(&self) -> Complex64 {
        let z = self.ctx.z_complex();
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zk = Complex64::new(1.0, 0.0);
        for c in &self.num {
            if !c.is_zero() {
                acc += zk * (c.to_f64().unwrap_or(f64::NAN) / den);
            }
            zk *= z;
        }
        acc
    }

    /// Parses the textual form `1/2*z^3 - z` in the given field.
    pub fn parse(ctx: &'static FieldCtx, s: &str) -> Result<CycNum> {
        parse_cyc(ctx, s)
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn qpoly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    let lead = b[db].clone();
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (t, bt) in b.iter().enumerate() {
            rem[k + t] -= &c * bt;
        }
        quo[k] = c;
    }
    trim(&mut rem);
    trim(&mut quo);
    (quo, rem)
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.check_ctx(other);
        self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl std::hash::Hash for CycNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only for canonical sorting.
impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.num.cmp(&other.num).then_with(|| self.den.cmp(&other.den))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..self.ctx.degree).rev() {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn parse_cyc(ctx: &'static FieldCtx, s: &str) -> Result<CycNum> {
    let bad = |msg: &str| Error::Parse { line: 1, col: 1, msg: format!("{msg} in field element `{s}`") };
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty input"));
    }
    let mut acc = ctx.zero();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &compact[start..i];
        if term.is_empty() {
            return Err(bad("dangling sign"));
        }
        let (coef, mono) = match term.find('z') {
            None => (term, None),
            Some(p) => {
                let c = term[..p].trim_end_matches('*');
                (c, Some(&term[p + 1..]))
            }
        };
        let c = if coef.is_empty() {
            BigRational::one()
        } else {
            BigRational::from_str(coef).map_err(|_| bad("bad rational coefficient"))?
        };
        let k: i64 = match mono {
            None => 0,
            Some("") => 1,
            Some(rest) => rest
                .strip_prefix('^')
                .ok_or_else(|| bad("expected `^` after z"))?
                .parse()
                .map_err(|_| bad("bad exponent"))?,
        };
        let mut t = ctx.z_pow(k);
        let scale = CycNum::from_coeffs(ctx, &[c * BigInt::from(sign)]);
        t = &t * &scale;
        acc += &t;
    }
    Ok(acc)
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &'a CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &'a CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_signed(b, false));
forward_binop!(Sub, sub, |a, b| a.add_signed(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = self.add_signed(rhs, false);
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = self.add_signed(rhs, true);
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small_cases() {
        let p = cyclotomic_poly(16);
        assert_eq!(p.len(), 9);
        assert_eq!(p[0], BigInt::one());
        assert_eq!(p[8], BigInt::one());
        assert_eq!(cyclotomic_poly(24).len() - 1, 8);
        assert_eq!(cyclotomic_poly(48).len() - 1, 16);
    }

    #[test]
    fn root_orders() {
        let ctx = FieldCtx::get(2, 4);
        assert_eq!(ctx.order(), 16);
        assert!(ctx.z_pow(16).is_one());
        assert_eq!(ctx.z_pow(8), -ctx.one());
        assert_eq!(ctx.q_pow(4), -ctx.one());
        assert!(ctx.q_pow(8).is_one());
        // n = 3 uses the doubled order
        let c3 = FieldCtx::get(3, 4);
        assert_eq!(c3.order(), 48);
        assert!(c3.q_rational_pow(-3, 2).is_some());
    }

    #[test]
    fn inverse_and_display() {
        let ctx = FieldCtx::get(2, 5);
        let a = ctx.z_pow(3) + ctx.rational(1, 2);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        let s = a.to_string();
        assert_eq!(CycNum::parse(ctx, &s).unwrap(), a);
        assert_eq!(ctx.zero().to_string(), "0");
        let t = ctx.z_pow(3).scale_int(1) * ctx.rational(1, 2) - ctx.z_pow(1);
        assert_eq!(t.to_string(), "1/2*z^3 - z");
    }

    #[test]
    fn conj_is_inverse_on_roots() {
        let ctx = FieldCtx::get(3, 5);
        for k in 0..ctx.order() as i64 {
            assert_eq!(ctx.z_pow(k).conj(), ctx.z_pow(-k));
        }
    }
}
