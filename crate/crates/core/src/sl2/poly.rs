//! Polynomials and rational functions in `q` over `ℚ`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// Dense polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// `c · q^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Q> {
        self.0.last()
    }

    /// Order of vanishing at `q = 0`.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// `q^k · p`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Q::zero(); k];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    /// `p / q^k`; the lowest `k` coefficients must vanish.
    fn unshift(&self, k: usize) -> Poly {
        Poly(self.0[k.min(self.0.len())..].to_vec())
    }

    /// The coefficients as machine integers, if they all are.
    fn small_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| if c.is_integer() { c.numer().to_i64() } else { None }).collect()
    }

    fn is_monomial(&self) -> bool {
        self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// `q^{deg p} p(q^{-1})`.
    pub fn reversed(&self) -> Poly {
        let mut v = self.0.clone();
        v.reverse();
        Poly::new(v)
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead().expect("nonzero").clone();
        let mut rem = self.0.clone();
        let mut quot = vec![Q::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") / &lead;
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let v = self.valuation().expect("nonzero").min(other.valuation().expect("nonzero"));
        if self.is_monomial() || other.is_monomial() {
            return Poly::monomial(Q::one(), v);
        }
        let (a, b) =
            (self.unshift(self.valuation().expect("nonzero")), other.unshift(other.valuation().expect("nonzero")));
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return Poly::monomial(Q::one(), v);
        }
        let (a, b) = if a.0.len() >= b.0.len() { (a, b) } else { (b, a) };
        // The gcd modulo a prime bounds the degree of the rational gcd from
        // above, which settles the coprime and the divisible case cheaply.
        match modular_gcd_degree(&a, &b) {
            Some(0) => return Poly::monomial(Q::one(), v),
            Some(d) if Some(d) == b.degree() => {
                let (quot, rem) = a.div_rem(&b);
                if rem.is_zero() && !quot.is_zero() {
                    return b.monic().shift(v);
                }
            }
            _ => {}
        }
        a.euclid(&b).shift(v)
    }

    /// `self / d` for a divisor `d` known to divide exactly.
    fn exact_div(&self, d: &Poly) -> Poly {
        if d.is_monomial() {
            let k = d.valuation().expect("nonzero");
            let c = d.coeff(k);
            let p = self.unshift(k);
            return if c.is_one() { p } else { p.scale(&c.recip()) };
        }
        self.div_rem(d).0
    }

    fn euclid(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(MODULUS)) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, MODULUS - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Reduction modulo the prime; `None` if a denominator or the leading
/// coefficient vanishes there.
fn reduce_mod_prime(p: &Poly) -> Option<Vec<u64>> {
    let m = num_bigint::BigInt::from(MODULUS);
    let reduce = |x: &num_bigint::BigInt| -> u64 {
        let r = x % &m;
        let r = if r.is_negative() { r + &m } else { r };
        r.to_u64().expect("reduced below the modulus")
    };
    let mut out = Vec::with_capacity(p.0.len());
    for c in &p.0 {
        let d = reduce(c.denom());
        if d == 0 {
            return None;
        }
        out.push(mul_mod(reduce(c.numer()), inv_mod(d)));
    }
    (out.last().copied() != Some(0)).then_some(out)
}

/// Degree of `gcd(a mod p, b mod p)`, an upper bound for `deg gcd(a, b)`.
fn modular_gcd_degree(a: &Poly, b: &Poly) -> Option<usize> {
    let (mut x, mut y) = (reduce_mod_prime(a)?, reduce_mod_prime(b)?);
    while !y.is_empty() {
        let inv = inv_mod(*y.last().expect("nonempty"));
        while x.len() >= y.len() {
            let c = mul_mod(*x.last().expect("nonempty"), inv);
            let k = x.len() - y.len();
            for (j, &yc) in y.iter().enumerate() {
                x[k + j] = (x[k + j] + MODULUS - mul_mod(c, yc)) % MODULUS;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        core::mem::swap(&mut x, &mut y);
    }
    x.len().checked_sub(1)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let (Some(a), Some(b)) = (self.small_ints(), rhs.small_ints()) {
            if let Some(p) = small_product(&a, &b) {
                return p;
            }
        }
        let mut v = vec![Q::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

/// Product of integer coefficient vectors, `None` on overflow.
fn small_product(a: &[i64], b: &[i64]) -> Option<Poly> {
    let mut v = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = v[i + j].checked_add(i128::from(x) * i128::from(y))?;
        }
    }
    Some(Poly::new(v.into_iter().map(|c| Q::from_integer(c.into())).collect()))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

/// An element of `ℚ(q)`: numerator over a monic denominator, coprime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: Poly,
    den: Poly,
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

impl QScalar {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(QScalar::zero());
        }
        // Common powers of q first; a monomial denominator is then coprime
        // to the numerator and no Euclidean gcd is needed.
        let v = num.valuation().expect("nonzero").min(den.valuation().expect("nonzero"));
        let (num, den) = (num.unshift(v), den.unshift(v));
        let (num, den) = if den.is_monomial() {
            (num, den)
        } else {
            let (quot, rem) = num.div_rem(&den);
            if rem.is_zero() {
                (quot, Poly::constant(Q::one()))
            } else {
                let g = num.gcd(&den);
                if g.degree() == Some(0) {
                    (num, den)
                } else {
                    (num.div_rem(&g).0, den.div_rem(&g).0)
                }
            }
        };
        let l = den.lead().expect("nonzero").recip();
        Ok(QScalar { num: num.scale(&l), den: den.scale(&l) })
    }

    pub fn zero() -> Self {
        QScalar { num: Poly::zero(), den: Poly::constant(Q::one()) }
    }

    /// Coprime parts; only the leading coefficient of `den` is fixed up.
    fn from_coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return QScalar::zero();
        }
        match den.lead() {
            Some(l) if l.is_one() => QScalar { num, den },
            Some(l) => {
                let l = l.recip();
                QScalar { num: num.scale(&l), den: den.scale(&l) }
            }
            None => unreachable!("zero denominator"),
        }
    }

    pub fn one() -> Self {
        QScalar::from_q(Q::one())
    }

    pub fn from_q(c: Q) -> Self {
        QScalar { num: Poly::constant(c), den: Poly::constant(Q::one()) }.normalized_constant()
    }

    fn normalized_constant(self) -> Self {
        if self.num.is_zero() {
            QScalar::zero()
        } else {
            self
        }
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_q(rational::int(n))
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            QScalar { num: Poly::monomial(Q::one(), k as usize), den: Poly::constant(Q::one()) }
        } else {
            QScalar { num: Poly::constant(Q::one()), den: Poly::monomial(Q::one(), (-k) as usize) }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        QScalar { num: p, den: Poly::constant(Q::one()) }.normalized_constant()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// `ord_{q=0}`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let n = self.num.valuation()? as i64;
        let d = self.den.valuation().expect("nonzero denominator") as i64;
        Some(n - d)
    }

    /// Whether the element is regular at `q = 0`.
    pub fn in_local_ring(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    /// Value at `q = 0` of an element regular there.
    pub fn eval_at_zero(&self) -> Result<Q> {
        match self.valuation() {
            None => Ok(Q::zero()),
            Some(v) if v < 0 => Err(Error::NotInLattice),
            Some(v) if v > 0 => Ok(Q::zero()),
            Some(_) => Ok(self.num.coeff(0) / self.den.coeff(0)),
        }
    }

    /// Whether the element is a Laurent polynomial (denominator a power of `q`).
    pub fn is_laurent(&self) -> bool {
        self.den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Laurent coefficients `(exponent, coefficient)` if [`Self::is_laurent`].
    pub fn laurent_terms(&self) -> Option<Vec<(i64, Q)>> {
        if !self.is_laurent() {
            return None;
        }
        let shift = self.den.degree().expect("nonzero") as i64;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 - shift, c.clone()))
                .collect(),
        )
    }

    /// The bar involution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return QScalar::zero();
        }
        let dn = self.num.degree().expect("nonzero");
        let dd = self.den.degree().expect("nonzero");
        let num = self.num.reversed().shift(dd);
        let den = self.den.reversed().shift(dn);
        QScalar::new(num, den).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        QScalar::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &QScalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(QScalar::one(), |acc, _| &acc * self)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    // a/b + c/d with g = gcd(b, d): t = a(d/g) + c(b/g), and only gcd(t, g)
    // can cancel.
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd(&rhs.den);
        let (bg, dg) = (self.den.exact_div(&g), rhs.den.exact_div(&g));
        let t = &(&self.num * &dg) + &(&rhs.num * &bg);
        if t.is_zero() {
            return QScalar::zero();
        }
        let g2 = t.gcd(&g);
        QScalar::from_coprime(t.exact_div(&g2), &bg * &rhs.den.exact_div(&g2))
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    // (a/b)(c/d) with the cross gcds gcd(a, d) and gcd(c, b) cancelled.
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        QScalar::from_coprime(num, den)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `q^{-k} p(q)` with `p(0) ≠ 0`, already in lowest terms.
fn laurent(p: Poly, k: usize) -> QScalar {
    QScalar { num: p, den: Poly::monomial(Q::one(), k) }
}

/// `[m]_q = (q^m − q^{−m})/(q − q^{−1}) = q^{1−m}(1 + q^2 + … + q^{2m−2})`.
pub fn qint(m: i64) -> QScalar {
    let a = m.unsigned_abs() as usize;
    if a == 0 {
        return QScalar::zero();
    }
    let mut coeffs = vec![Q::zero(); 2 * a - 1];
    for k in 0..a {
        coeffs[2 * k] = Q::one();
    }
    let x = laurent(Poly::new(coeffs), a - 1);
    if m < 0 {
        -&x
    } else {
        x
    }
}

/// `[m]_q! = [1]_q ⋯ [m]_q`.
pub fn qfact(m: u32) -> QScalar {
    (1..=m).fold(QScalar::one(), |acc, k| &acc * &qint(i64::from(k)))
}

/// `[m choose n]_q = q^{−n(m−n)} G(q^2)`, where the Gaussian binomial
/// satisfies `G(m,n) = G(m−1,n−1) + x^n G(m−1,n)`; zero when `n > m`.
pub fn qbinom(m: u32, n: u32) -> QScalar {
    if n > m {
        return QScalar::zero();
    }
    let (m, n) = (m as usize, n as usize);
    // row[k] holds G(j, k) in x for the current j.
    let mut row: Vec<Poly> = vec![Poly::constant(Q::one())];
    for j in 1..=m {
        let mut next = Vec::with_capacity(j + 1);
        for k in 0..=j.min(n) {
            let diag = if k > 0 { row[k - 1].clone() } else { Poly::zero() };
            let up = row.get(k).map_or_else(Poly::zero, |g| g.shift(k));
            next.push(&diag + &up);
        }
        row = next;
    }
    let g = &row[n];
    let mut coeffs = vec![Q::zero(); 2 * g.coeffs().len()];
    for (k, c) in g.coeffs().iter().enumerate() {
        coeffs[2 * k] = c.clone();
    }
    laurent(Poly::new(coeffs), n * (m - n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn q(k: i64) -> QScalar {
        QScalar::q_pow(k)
    }

    #[test]
    fn qint_two() {
        assert_eq!(qint(2), &q(1) + &q(-1));
        assert_eq!(qint(1), QScalar::one());
        assert_eq!(qint(0), QScalar::zero());
        assert_eq!(qint(-3), -&qint(3));
        assert_eq!(qfact(0), QScalar::one());
    }

    #[test]
    fn qint_matches_the_defining_quotient() {
        for m in 1..7 {
            let num = &q(m) - &q(-m);
            let den = &q(1) - &q(-1);
            assert_eq!(qint(m), num.div(&den).unwrap());
            assert!(qint(m).is_laurent());
        }
    }

    #[test]
    fn qbinom_4_2() {
        let b = qbinom(4, 2);
        assert!(b.is_laurent());
        let terms = b.laurent_terms().unwrap();
        assert_eq!(terms, vec![(-4, int(1)), (-2, int(1)), (0, int(2)), (2, int(1)), (4, int(1))]);
        assert_eq!(b.bar(), b);
    }

    #[test]
    fn valuation_and_evaluation() {
        let x = &q(2) + &q(3);
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(x.eval_at_zero().unwrap(), int(0));
        let y = QScalar::new(Poly::new(vec![int(1), int(1)]), Poly::new(vec![int(2), int(0), int(1)])).unwrap();
        assert_eq!(y.valuation(), Some(0));
        assert_eq!(y.eval_at_zero().unwrap(), crate::rational::frac(1, 2));
        assert_eq!(q(-1).eval_at_zero(), Err(Error::NotInLattice));
        assert_eq!(y.bar().bar(), y);
    }

    #[test]
    fn field_operations() {
        let a = QScalar::new(Poly::new(vec![int(1), int(-1)]), Poly::new(vec![int(1), int(0), int(-1)])).unwrap();
        // (1 - q)/(1 - q^2) = 1/(1 + q)
        assert_eq!(a, QScalar::new(Poly::constant(int(1)), Poly::new(vec![int(1), int(1)])).unwrap());
        assert_eq!(&a * &a.inv().unwrap(), QScalar::one());
        assert_eq!(&(&a - &a), &QScalar::zero());
        assert!(QScalar::zero().inv().is_err());
    }
}
