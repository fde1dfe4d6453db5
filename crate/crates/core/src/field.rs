//! Exact base fields.
//!
//! Three families are supported: the rationals, finite fields `F_p[t]/(f)`
//! given by an explicit monic irreducible modulus, and quadratic extensions
//! `Q(sqrt d)`. Characteristic 2 is rejected everywhere.
//!
//! Finite-field elements are coded as integers: the coefficient vector
//! `[a_0, .., a_{e-1}]` of `a_0 + a_1 t + ..` is read as a base-`p` numeral
//! with `a_0` most significant, so code order is lexicographic order on
//! coefficient vectors.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic of a commutative field.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

const TABLE_LIMIT: u32 = 1024;
const MAX_ORDER: u64 = 1 << 24;

/// The finite field `F_p[t]/(modulus)` with coded elements.
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
    inv_table: Vec<u32>,
}

impl Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}[mod {:?}]", self.p, self.e, self.modulus)
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

impl FiniteField {
    /// The prime field `F_p` (modulus `t`).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, vec![0, 1])
    }

    /// `F_p[t]/(modulus)`; `modulus` lists coefficients in ascending degree and must be monic.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if p < 3 || !is_prime(p as u64) {
            return Err(Error::InvalidField(format!(
                "{p} is not an odd prime (characteristic 2 is excluded)"
            )));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficients must be < {p}")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let e = (modulus.len() - 1) as u32;
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::InvalidField(format!("field of order {p}^{e} is too large"))
        })? as u32;
        let poly: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        if !poly_is_irreducible(&poly, p as u64) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        let mut field = FiniteField {
            p,
            e,
            q,
            modulus,
            add_table: None,
            mul_table: None,
            neg_table: Vec::new(),
            inv_table: Vec::new(),
        };
        field.neg_table = (0..q).map(|a| field.neg_slow(a)).collect();
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = field.add_slow(a, b);
                    mul[a as usize * n + b as usize] = field.mul_slow(a, b);
                }
            }
            field.add_table = Some(add);
            field.mul_table = Some(mul);
        }
        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            if inv[a as usize] == 0 {
                let b = field.pow(a, q as u64 - 2);
                inv[a as usize] = b;
                inv[b as usize] = a;
            }
        }
        field.inv_table = inv;
        Ok(field)
    }

    /// Smallest monic irreducible polynomial of the given degree over `F_p`,
    /// in lexicographic order of its non-leading coefficients `[c_0, .., c_{d-1}]`.
    pub fn first_irreducible(p: u32, degree: u32) -> Result<Vec<u32>> {
        if degree == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        let total = (p as u64).checked_pow(degree).filter(|&t| t <= MAX_ORDER).ok_or_else(
            || Error::InvalidField(format!("degree {degree} over F_{p} is too large")),
        )?;
        for code in 0..total {
            let mut coeffs = vec![0u64; degree as usize + 1];
            let mut c = code;
            for i in (0..degree as usize).rev() {
                coeffs[i] = c % p as u64;
                c /= p as u64;
            }
            coeffs[degree as usize] = 1;
            if poly_is_irreducible(&coeffs, p as u64) {
                return Ok(coeffs.into_iter().map(|c| c as u32).collect());
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {degree}")))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.e
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coefficient vector `[a_0, .., a_{e-1}]` of a coded element.
    pub fn digits(&self, code: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.e as usize];
        let mut c = code;
        for slot in out.iter_mut().rev() {
            *slot = c % self.p;
            c /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().fold(0u32, |acc, &d| acc * self.p + d % self.p)
    }

    /// Code of the constant `c mod p`.
    pub fn constant(&self, c: i64) -> u32 {
        let r = c.rem_euclid(self.p as i64) as u32;
        r * self.p.pow(self.e - 1)
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = self.constant(1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_code(acc, base);
            }
            base = self.mul_code(base, base);
            k >>= 1;
        }
        acc
    }

    #[inline]
    pub fn add_code(&self, a: u32, b: u32) -> u32 {
        match &self.add_table {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn mul_code(&self, a: u32, b: u32) -> u32 {
        match &self.mul_table {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn neg_code(&self, a: u32) -> u32 {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn inv_code(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.inv_table[a as usize])
        }
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let e = self.e as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for i in 0..e {
                    let sub = c * self.modulus[i] as u64 % p;
                    prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
                }
                prod[k] = 0;
            }
        }
        let digits: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.from_digits(&digits)
    }
}

impl Field for Arc<FiniteField> {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        self.constant(1)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_code(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg_code(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_code(*a, *b)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.inv_code(*a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_int(&self, n: i64) -> u32 {
        self.constant(n)
    }
}

/// `Q(sqrt d)` for a non-square rational `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticField {
    d: BigRational,
}

impl QuadraticField {
    pub fn new(d: BigRational) -> Result<Self> {
        if is_rational_square(&d) {
            return Err(Error::InvalidField(format!("{d} is a square in Q")));
        }
        Ok(QuadraticField { d })
    }

    pub fn d(&self) -> &BigRational {
        &self.d
    }
}

/// An element of one of the supported base fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Coded finite-field element.
    Fin(u32),
    Rat(BigRational),
    /// `a + b sqrt(d)`.
    Quad(BigRational, BigRational),
}

/// A runtime-selected exact base field.
#[derive(Debug, Clone)]
pub enum BaseField {
    Rationals,
    Finite(Arc<FiniteField>),
    Quadratic(Arc<QuadraticField>),
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (BaseField::Rationals, BaseField::Rationals) => true,
            (BaseField::Finite(a), BaseField::Finite(b)) => a == b,
            (BaseField::Quadratic(a), BaseField::Quadratic(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for BaseField {}

impl BaseField {
    pub fn prime(p: u32) -> Result<Self> {
        Ok(BaseField::Finite(Arc::new(FiniteField::prime(p)?)))
    }

    pub fn finite(p: u32, modulus: Vec<u32>) -> Result<Self> {
        Ok(BaseField::Finite(Arc::new(FiniteField::new(p, modulus)?)))
    }

    pub fn quadratic(d: BigRational) -> Result<Self> {
        Ok(BaseField::Quadratic(Arc::new(QuadraticField::new(d)?)))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            BaseField::Finite(f) => f.characteristic(),
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BaseField::Finite(_))
    }

    /// Number of elements, `None` for infinite fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            BaseField::Finite(f) => Some(f.order() as u64),
            _ => None,
        }
    }

    pub fn finite_field(&self) -> Result<&Arc<FiniteField>> {
        match self {
            BaseField::Finite(f) => Ok(f),
            _ => Err(Error::InfiniteBase),
        }
    }

    /// All elements in enumeration order (codes `0, 1, ..`).
    pub fn elements(&self) -> Result<impl Iterator<Item = Scalar>> {
        let q = self.finite_field()?.order();
        Ok((0..q).map(Scalar::Fin))
    }

    pub fn rational(&self, r: BigRational) -> Result<Scalar> {
        match self {
            BaseField::Rationals => Ok(Scalar::Rat(r)),
            BaseField::Quadratic(_) => Ok(Scalar::Quad(r, BigRational::zero())),
            BaseField::Finite(f) => {
                let p = BigInt::from(f.characteristic());
                let den = r.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::Parse(format!("{r} has no image in characteristic {p}")));
                }
                let num = r.numer().mod_floor(&p).to_i64().unwrap();
                let den = f.constant(den.to_i64().unwrap());
                let num = f.constant(num);
                Ok(Scalar::Fin(f.mul_code(num, f.inv_code(den).unwrap())))
            }
        }
    }

    /// Checks that a scalar has the representation used by this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (BaseField::Finite(f), Scalar::Fin(c)) => *c < f.order(),
            (BaseField::Rationals, Scalar::Rat(_)) => true,
            (BaseField::Quadratic(_), Scalar::Quad(..)) => true,
            _ => false,
        }
    }

    fn mismatch(&self, s: &Scalar) -> ! {
        panic!("scalar {s:?} does not belong to {self:?}")
    }
}

impl Field for BaseField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        match self {
            BaseField::Finite(_) => Scalar::Fin(0),
            BaseField::Rationals => Scalar::Rat(BigRational::zero()),
            BaseField::Quadratic(_) => Scalar::Quad(BigRational::zero(), BigRational::zero()),
        }
    }

    fn one(&self) -> Scalar {
        self.from_int(1)
    }

    fn from_int(&self, n: i64) -> Scalar {
        match self {
            BaseField::Finite(f) => Scalar::Fin(f.constant(n)),
            BaseField::Rationals => Scalar::Rat(BigRational::from_integer(n.into())),
            BaseField::Quadratic(_) => {
                Scalar::Quad(BigRational::from_integer(n.into()), BigRational::zero())
            }
        }
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (BaseField::Finite(f), Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(f.add_code(*x, *y)),
            (BaseField::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (BaseField::Quadratic(_), Scalar::Quad(a0, a1), Scalar::Quad(b0, b1)) => {
                Scalar::Quad(a0 + b0, a1 + b1)
            }
            _ => self.mismatch(if self.contains(a) { b } else { a }),
        }
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (BaseField::Finite(f), Scalar::Fin(x)) => Scalar::Fin(f.neg_code(*x)),
            (BaseField::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (BaseField::Quadratic(_), Scalar::Quad(x0, x1)) => Scalar::Quad(-x0, -x1),
            _ => self.mismatch(a),
        }
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (BaseField::Finite(f), Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(f.mul_code(*x, *y)),
            (BaseField::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (BaseField::Quadratic(qf), Scalar::Quad(a0, a1), Scalar::Quad(b0, b1)) => Scalar::Quad(
                a0 * b0 + a1 * b1 * qf.d(),
                a0 * b1 + a1 * b0,
            ),
            _ => self.mismatch(if self.contains(a) { b } else { a }),
        }
    }

    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (BaseField::Finite(f), Scalar::Fin(x)) => f.inv_code(*x).map(Scalar::Fin),
            (BaseField::Rationals, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            (BaseField::Quadratic(qf), Scalar::Quad(x0, x1)) => {
                let norm = x0 * x0 - x1 * x1 * qf.d();
                if norm.is_zero() {
                    None
                } else {
                    Some(Scalar::Quad(x0 / &norm, -(x1 / &norm)))
                }
            }
            _ => self.mismatch(a),
        }
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Quad(x0, x1) => x0.is_zero() && x1.is_zero(),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_integer_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

pub(crate) fn is_rational_square(r: &BigRational) -> bool {
    // BigRational is kept reduced, so numerator and denominator are coprime.
    is_integer_square(r.numer()) && is_integer_square(r.denom())
}

/// Square-free integer representative of the square class of a non-zero rational.
pub fn squarefree_class(r: &BigRational) -> BigInt {
    assert!(!r.is_zero(), "zero has no square class");
    let mut n: BigInt = r.numer() * r.denom();
    let sign = if n.is_negative() { -1 } else { 1 };
    n = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut count = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            count += 1;
        }
        if count % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    out * n * sign
}

// Dense polynomials over F_p with ascending coefficients.

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_pow(m[dm], p - 2, p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for i in 0..=dm {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - c * m[i] % p) % p;
        }
        poly_trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut k: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        k >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
pub(crate) fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^(p^k) mod f by repeated p-th powering
    let frob = |k: usize| {
        let mut r = x.clone();
        for _ in 0..k {
            r = poly_powmod(&r, p, f, p);
        }
        r
    };
    let sub_x = |mut a: Vec<u64>| {
        if a.len() < 2 {
            a.resize(2, 0);
        }
        a[1] = (a[1] + p - 1) % p;
        poly_trim(&mut a);
        a
    };
    if sub_x(frob(d)) != vec![0u64] {
        return false;
    }
    let mut n = d;
    let mut primes = Vec::new();
    let mut r = 2;
    while r * r <= n {
        if n.is_multiple_of(r) {
            primes.push(r);
            while n.is_multiple_of(r) {
                n /= r;
            }
        }
        r += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for r in primes {
        let g = poly_gcd(f, &sub_x(frob(d / r)), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_by_root_enumeration() {
        // degree <= 3: irreducible iff no root in F_p
        for p in [3u64, 5, 7] {
            for code in 0..p * p * p {
                let f = vec![code % p, code / p % p, code / (p * p), 1];
                let has_root = (0..p).any(|x| {
                    (f[0] + f[1] * x + f[2] * x * x + x * x * x) % p == 0
                });
                assert_eq!(poly_is_irreducible(&f, p), !has_root, "{f:?} mod {p}");
            }
        }
    }

    #[test]
    fn x3_minus_x_minus_1_is_irreducible_over_f3() {
        assert!(poly_is_irreducible(&[2, 2, 0, 1], 3));
        assert!(FiniteField::new(3, vec![2, 2, 0, 1]).is_ok());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 - 1 = (t-1)(t+1)
        assert!(FiniteField::new(3, vec![2, 0, 1]).is_err());
        // t^4 + 1 over F_3 factors as two quadratics, no roots
        assert!(!poly_is_irreducible(&[1, 0, 0, 0, 1], 3));
    }

    #[test]
    fn characteristic_two_rejected() {
        assert!(FiniteField::prime(2).is_err());
        assert!(FiniteField::prime(9).is_err());
    }

    #[test]
    fn f9_multiplicative_group() {
        let f = Arc::new(FiniteField::new(3, vec![1, 0, 1]).unwrap());
        assert_eq!(f.order(), 9);
        for a in 1..9 {
            assert_eq!(f.pow(a, 8), f.one());
            assert_eq!(f.mul_code(a, f.inv_code(a).unwrap()), f.one());
        }
        // t^2 = -1
        let t = f.from_digits(&[0, 1]);
        assert_eq!(f.mul_code(t, t), f.constant(-1));
    }

    #[test]
    fn first_irreducible_cubic_over_f3() {
        let m = FiniteField::first_irreducible(3, 3).unwrap();
        assert_eq!(m.len(), 4);
        assert!(poly_is_irreducible(&m.iter().map(|&c| c as u64).collect::<Vec<_>>(), 3));
        assert_eq!(FiniteField::first_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn untabled_field_agrees_with_fermat() {
        // 3^7 = 2187 > table limit, so arithmetic runs on polynomials
        let m = FiniteField::first_irreducible(3, 7).unwrap();
        let f = Arc::new(FiniteField::new(3, m).unwrap());
        assert!(f.add_table.is_none());
        for a in [1u32, 2, 5, 100, 2000] {
            assert_eq!(f.pow(a, 2186), f.one());
            assert_eq!(f.add_code(a, f.neg_code(a)), 0);
        }
    }

    #[test]
    fn quadratic_field_arithmetic() {
        let k = BaseField::quadratic(BigRational::from_integer(2.into())).unwrap();
        let one = BigRational::one();
        let a = Scalar::Quad(one.clone(), one.clone());
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        assert!(BaseField::quadratic(BigRational::from_integer(4.into())).is_err());
        assert!(BaseField::quadratic(BigRational::new(9.into(), 4.into())).is_err());
    }

    #[test]
    fn squarefree_classes() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(squarefree_class(&r(-1, 1)), BigInt::from(-1));
        assert_eq!(squarefree_class(&r(12, 1)), BigInt::from(3));
        assert_eq!(squarefree_class(&r(1, 2)), BigInt::from(2));
        assert_eq!(squarefree_class(&r(-18, 4)), BigInt::from(-2));
    }

    #[test]
    fn rational_images_in_prime_field() {
        let k = BaseField::prime(5).unwrap();
        let half = k.rational(BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(k.mul(&half, &k.from_int(2)), k.one());
        assert!(k.rational(BigRational::new(1.into(), 5.into())).is_err());
    }
}
