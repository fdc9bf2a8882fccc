//! Exact arithmetic in `F_q`, `q = p^m`.
//!
//! Elements are stored as an integer index `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` are the coefficients of the element as a polynomial in the
//! residue `g` of the defining modulus. Multiplication, inversion and discrete
//! logarithms go through exp/log tables built once at construction, which is
//! why fields are capped at [`MAX_FIELD_ORDER`] elements.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::parse::{self, ParseError};
use crate::polyring::{Poly, PolyRing};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported bound {MAX_FIELD_ORDER}")]
    TooLarge(u128),
    #[error("modulus must be monic of degree {0} over the prime field")]
    BadModulus(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("zero is not a unit")]
    Zero,
    #[error("n = {n} does not divide q - 1 = {q_minus_1}")]
    NotDivisor { n: u64, q_minus_1: u64 },
    #[error("element is not an n-th root of unity for n = {0}")]
    NotRootOfUnity(u32),
}

/// An element of some `F_q`, meaningful only together with its [`FqField`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

pub(crate) fn element_from_index(i: u32) -> FieldElement {
    FieldElement(i)
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Index of the element in the canonical enumeration of the field.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

/// An element of `mu_n`, stored as the exponent `j` of `zeta_n^j` where
/// `zeta_n = xi^((q-1)/n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct RootOfUnity {
    n: u32,
    exponent: u32,
}

impl RootOfUnity {
    pub fn new(n: u32, exponent: i64) -> Self {
        assert!(n >= 1, "mu_0 is not a group");
        RootOfUnity {
            n,
            exponent: exponent.rem_euclid(n as i64) as u32,
        }
    }

    pub fn one(n: u32) -> Self {
        RootOfUnity { n, exponent: 0 }
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        assert_eq!(self.n, other.n, "roots of unity of different orders");
        RootOfUnity::new(self.n, self.exponent as i64 + other.exponent as i64)
    }

    pub fn inv(self) -> RootOfUnity {
        RootOfUnity::new(self.n, -(self.exponent as i64))
    }

    pub fn pow(self, e: i64) -> RootOfUnity {
        let n = self.n as i64;
        let e = e.rem_euclid(n);
        RootOfUnity::new(self.n, (self.exponent as i64 * e) % n)
    }

    /// Multiplicative order inside `mu_n`.
    pub fn order(self) -> u32 {
        self.n / self.n.gcd(&self.exponent)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta_{}^{}", self.n, self.exponent)
    }
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients over F_p, low degree first, monic of length m + 1.
    modulus: Vec<u32>,
    xi: FieldElement,
    /// exp[i] = xi^i, doubled so that exp[la + lb] needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// zech[k] = log(1 + xi^k), or NO_LOG when 1 + xi^k = 0. Only for m >= 2, p odd.
    zech: Vec<u32>,
    q_minus_1_primes: Vec<u64>,
    prime_field: Option<FqField>,
}

/// The finite field `F_q` with a fixed modulus and distinguished primitive element `xi`.
#[derive(Clone)]
pub struct FqField {
    inner: Arc<Inner>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FqField {}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FqField")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .field("xi", &self.inner.xi)
            .finish()
    }
}

impl fmt::Display for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
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

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q` into `(p, m)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut m = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    Some((p, m))
}

// Slow arithmetic on digit vectors, only used while the tables are built.
fn to_digits(mut idx: u32, p: u32, m: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(m as usize);
    for _ in 0..m {
        d.push(idx % p);
        idx /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for k in (m..2 * m).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (j, &mc) in modulus[..m].iter().enumerate() {
            let sub = c * mc as u64 % p64;
            prod[k - m + j] = (prod[k - m + j] + p64 - sub) % p64;
        }
    }
    prod[..m].iter().map(|&c| c as u32).collect()
}

fn slow_pow(a: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut result = vec![0; m];
    result[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = slow_mul(&result, &base, modulus, p);
        }
        base = slow_mul(&base, &base, modulus, p);
        e >>= 1;
    }
    result
}

impl FqField {
    /// Builds `F_{p^m}`. Without an explicit modulus the first monic irreducible of
    /// degree `m` in graded-lex order is used; `xi` is the least primitive element.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<FqField, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(FieldError::TooLarge(q));
        }
        let p32 = p as u32;
        let q32 = q as u32;

        let (modulus, prime_field) = if m == 1 {
            if let Some(md) = modulus {
                if md.len() != 2 || md[1] % p != 1 {
                    return Err(FieldError::BadModulus(1));
                }
            }
            (vec![0, 1], None)
        } else {
            let prime = FqField::new(p, 1, None)?;
            let ring = PolyRing::new(prime.clone());
            let md = match modulus {
                Some(md) => {
                    let coeffs: Vec<u32> = md.iter().map(|&c| (c % p) as u32).collect();
                    if coeffs.len() != m as usize + 1 || coeffs[m as usize] != 1 {
                        return Err(FieldError::BadModulus(m));
                    }
                    let poly = Poly::from_indices(&coeffs);
                    if !ring.is_irreducible(&poly).unwrap_or(false) {
                        return Err(FieldError::ReducibleModulus(p));
                    }
                    coeffs
                }
                None => {
                    let first = ring
                        .irreducibles_of_degree(m as usize)
                        .next()
                        .expect("irreducible polynomials exist in every degree");
                    first
                        .poly()
                        .coeffs()
                        .iter()
                        .map(|c| c.index())
                        .collect()
                }
            };
            (md, Some(prime))
        };

        let order = q32 - 1;
        let q_minus_1_primes = prime_factors(order as u64);
        let is_primitive = |idx: u32| -> bool {
            let digits = to_digits(idx, p32, m);
            q_minus_1_primes.iter().all(|&l| {
                let r = slow_pow(&digits, order as u64 / l, &modulus, p32);
                from_digits(&r, p32) != 1
            })
        };
        let xi = (1..q32)
            .find(|&idx| is_primitive(idx))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![NO_LOG; q32 as usize];
        let xi_digits = to_digits(xi, p32, m);
        let mut cur = to_digits(1, p32, m);
        for i in 0..order as usize {
            let idx = from_digits(&cur, p32);
            exp[i] = idx;
            exp[i + order as usize] = idx;
            log[idx as usize] = i as u32;
            cur = slow_mul(&cur, &xi_digits, &modulus, p32);
        }

        let mut zech = Vec::new();
        if m >= 2 && p32 != 2 {
            zech = vec![NO_LOG; order as usize];
            for (k, z) in zech.iter_mut().enumerate() {
                let mut d = to_digits(exp[k], p32, m);
                d[0] = (d[0] + 1) % p32;
                let idx = from_digits(&d, p32);
                if idx != 0 {
                    *z = log[idx as usize];
                }
            }
        }

        Ok(FqField {
            inner: Arc::new(Inner {
                p: p32,
                m,
                q: q32,
                modulus,
                xi: FieldElement(xi),
                exp,
                log,
                zech,
                q_minus_1_primes,
                prime_field,
            }),
        })
    }

    /// Field of order `q` with the default modulus.
    pub fn with_order(q: u64) -> Result<FqField, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        FqField::new(p, m, None)
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u64 {
        self.inner.q as u64
    }

    /// Defining modulus over `F_p`, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The prime subfield; `self` when `m = 1`.
    pub fn prime_field(&self) -> FqField {
        self.inner.prime_field.clone().unwrap_or_else(|| self.clone())
    }

    pub fn xi(&self) -> FieldElement {
        self.inner.xi
    }

    /// Prime divisors of `q - 1`.
    pub fn unit_group_primes(&self) -> &[u64] {
        &self.inner.q_minus_1_primes
    }

    /// The residue `g` of the modulus variable, when `m >= 2`.
    pub fn generator(&self) -> Option<FieldElement> {
        (self.inner.m >= 2).then_some(FieldElement(self.inner.p))
    }

    /// Element with the given enumeration index, if in range.
    pub fn element(&self, index: u64) -> Option<FieldElement> {
        (index < self.order()).then_some(FieldElement(index as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    /// Embeds an integer through the prime field.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Coefficients of `a` in the power basis `1, g, ..., g^{m-1}`.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        to_digits(a.0, self.inner.p, self.inner.m)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let p = self.inner.p;
        let mut d: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        d.resize(self.inner.m as usize, 0);
        assert!(coeffs.len() <= self.inner.m as usize, "too many coefficients");
        FieldElement(from_digits(&d, p))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.m == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= inner.p { s - inner.p } else { s });
        }
        if inner.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let order = inner.q - 1;
        let la = inner.log[a.0 as usize];
        let lb = inner.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + order - la };
        match inner.zech[k as usize] {
            NO_LOG => FieldElement::ZERO,
            z => FieldElement(inner.exp[(la + z) as usize]),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if a.0 == 0 || inner.p == 2 {
            return a;
        }
        if inner.m == 1 {
            return FieldElement(inner.p - a.0);
        }
        let half = (inner.q - 1) / 2;
        FieldElement(inner.exp[(inner.log[a.0 as usize] + half) as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if inner.m == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        FieldElement(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::Zero);
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        let la = inner.log[a.0 as usize];
        Ok(FieldElement(inner.exp[((order - la) % order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u128) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let order = (self.inner.q - 1) as u128;
        let la = self.inner.log[a.0 as usize] as u128;
        FieldElement(self.inner.exp[((la * (e % order)) % order) as usize])
    }

    /// `a^{1/p}`, the inverse of the Frobenius map.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        self.pow(a, (self.inner.q / self.inner.p) as u128)
    }

    /// `log_xi(a)` in `[0, q-1)`.
    pub fn discrete_log(&self, a: FieldElement) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::Zero);
        }
        Ok(self.inner.log[a.0 as usize] as u64)
    }

    /// Least `t >= 1` with `a^t = 1`.
    pub fn mult_order(&self, a: FieldElement) -> Result<u64, FieldError> {
        let order = self.order() - 1;
        let l = self.discrete_log(a)?;
        Ok(order / order.gcd(&l))
    }

    fn check_divisor(&self, n: u32) -> Result<u64, FieldError> {
        let order = self.order() - 1;
        if n == 0 || !order.is_multiple_of(n as u64) {
            return Err(FieldError::NotDivisor {
                n: n as u64,
                q_minus_1: order,
            });
        }
        Ok(order / n as u64)
    }

    /// `zeta_n = xi^((q-1)/n)`.
    pub fn zeta(&self, n: u32) -> Result<FieldElement, FieldError> {
        let step = self.check_divisor(n)?;
        Ok(FieldElement(self.inner.exp[step as usize % (self.inner.q as usize - 1).max(1)]))
    }

    /// Interprets an element of `mu_n` as an exponent of `zeta_n`.
    pub fn root_of_unity(&self, n: u32, value: FieldElement) -> Result<RootOfUnity, FieldError> {
        let step = self.check_divisor(n)?;
        let l = self.discrete_log(value).map_err(|_| FieldError::NotRootOfUnity(n))?;
        if l % step != 0 {
            return Err(FieldError::NotRootOfUnity(n));
        }
        Ok(RootOfUnity::new(n, (l / step) as i64))
    }

    /// Field value of `zeta_n^j`.
    pub fn root_value(&self, r: RootOfUnity) -> FieldElement {
        let step = (self.order() - 1) / r.n() as u64;
        let order = (self.order() - 1).max(1);
        FieldElement(self.inner.exp[((r.exponent() as u64 * step) % order) as usize])
    }

    /// Class of `a` in `F_q^* / F_q^{*n}`, as `a^((q-1)/n)` in `mu_n`.
    pub fn const_nth_power_class(
        &self,
        a: FieldElement,
        n: u32,
    ) -> Result<RootOfUnity, FieldError> {
        let step = self.check_divisor(n)?;
        if a.is_zero() {
            return Err(FieldError::Zero);
        }
        self.root_of_unity(n, self.pow(a, step as u128))
    }

    pub fn format_element(&self, a: FieldElement) -> String {
        if self.inner.m == 1 {
            return a.0.to_string();
        }
        let digits = self.coeffs(a);
        let mut terms = Vec::new();
        for (k, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            };
            terms.push(match (c, k) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement, ParseError> {
        parse::parse_element(self, s)
    }
}
