//! The polynomial ring `F_q[T]`.
//!
//! Polynomials are plain coefficient vectors; all arithmetic goes through a
//! [`PolyRing`], which carries the coefficient field. Factorization is the
//! usual square-free / distinct-degree / Cantor-Zassenhaus pipeline with a
//! seeded generator for the equal-degree splitting step.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::finite_field::{element_from_index, FieldElement, FqField};
use crate::parse::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial must be non-constant")]
    Constant,
    #[error("polynomial must be nonzero")]
    Zero,
    #[error("{0} is not monic")]
    NotMonic(String),
    #[error("{0} is reducible")]
    Reducible(String),
    #[error("exponent overflow computing {0}")]
    ExponentOverflow(String),
}

/// Degree of a polynomial; the zero polynomial has its own case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Element of `F_q[T]`; `coeffs[i]` is the coefficient of `T^i`, with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// The variable `T`.
    pub fn x() -> Poly {
        Poly::monomial(FieldElement::ONE, 1)
    }

    pub fn monomial(c: FieldElement, k: usize) -> Poly {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from element indices, low degree first.
    pub fn from_indices(idx: &[u32]) -> Poly {
        Poly::from_coeffs(idx.iter().map(|&i| element_from_index(i)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            l => Degree::Finite(l - 1),
        }
    }

    /// Degree as an option; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }
}

impl Ord for Poly {
    /// Graded-lex: by degree, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            self.coeffs
                .iter()
                .rev()
                .zip(other.coeffs.iter().rev())
                .map(|(a, b)| a.cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A monic irreducible polynomial, i.e. a finite place of `F_q(T)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicIrreducible(Poly);

impl MonicIrreducible {
    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.coeffs.len() - 1
    }

    pub(crate) fn new_unchecked(p: Poly) -> MonicIrreducible {
        MonicIrreducible(p)
    }
}

/// `f = unit * prod P^k`, factors in ascending graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(MonicIrreducible, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: FqField,
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[T]", self.field)
    }
}

impl PolyRing {
    pub fn new(field: FqField) -> PolyRing {
        PolyRing { field }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: FieldElement, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut result = Poly::one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn divmod(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly), PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let f = &self.field;
        let db = b.coeffs.len() - 1;
        if a.coeffs.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let inv_lc = f.inv(b.lc()).expect("nonzero leading coefficient");
        let mut r = a.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; a.coeffs.len() - db];
        for i in (db..r.len()).rev() {
            let c = f.mul(r[i], inv_lc);
            if c.is_zero() {
                continue;
            }
            quot[i - db] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                let k = i - db + j;
                r[k] = f.sub(r[k], f.mul(c, bj));
            }
        }
        r.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        if a.coeffs.len() <= db {
            return Ok(a.clone());
        }
        let f = &self.field;
        let mut r = a.coeffs.clone();
        let monic = b.lc().is_one();
        let inv_lc = f.inv(b.lc()).expect("nonzero leading coefficient");
        for i in (db..r.len()).rev() {
            let c = if monic { r[i] } else { f.mul(r[i], inv_lc) };
            if c.is_zero() {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                let k = i - db + j;
                r[k] = f.sub(r[k], f.mul(c, bj));
            }
        }
        r.truncate(db);
        Ok(Poly::from_coeffs(r))
    }

    /// Quotient of an exact division; panics if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Poly {
        let (q, r) = self.divmod(a, b).expect("divisor must be nonzero");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Splits off the leading coefficient: `a = lc * monic`.
    pub fn monic(&self, a: &Poly) -> (FieldElement, Poly) {
        if a.is_zero() {
            return (FieldElement::ZERO, Poly::zero());
        }
        let lc = a.lc();
        if lc.is_one() {
            return (lc, a.clone());
        }
        let inv = self.field.inv(lc).expect("nonzero leading coefficient");
        (lc, self.scale(inv, a))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.monic(&x).1
    }

    pub fn eval(&self, a: &Poly, x: FieldElement) -> FieldElement {
        let f = &self.field;
        a.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        let f = &self.field;
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    /// `base^exp mod modulus` by square-and-multiply.
    pub fn modexp(&self, base: &Poly, mut exp: u128, modulus: &Poly) -> Result<Poly, PolyError> {
        if modulus.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut result = self.rem(&Poly::one(), modulus)?;
        let mut b = self.rem(base, modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mulmod(&result, &b, modulus);
            }
            exp >>= 1;
            if exp > 0 {
                b = self.mulmod(&b, &b, modulus);
            }
        }
        Ok(result)
    }

    /// Multiplicity of the prime `p` in `f` and the cofactor `f / p^k`.
    pub fn valuation(&self, f: &Poly, p: &Poly) -> (u32, Poly) {
        assert!(!f.is_zero(), "valuation of zero");
        let mut k = 0;
        let mut g = f.clone();
        loop {
            let (quot, r) = self.divmod(&g, p).expect("nonzero prime");
            if !r.is_zero() {
                return (k, g);
            }
            g = quot;
            k += 1;
        }
    }

    fn pth_root_poly(&self, f: &Poly) -> Poly {
        let p = self.field.characteristic() as usize;
        let coeffs = f
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| self.field.pth_root(c))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Irreducibility over `F_q` by Ben-Or: `gcd(f, T^{q^i} - T) = 1` for `i <= deg f / 2`.
    pub fn is_irreducible(&self, f: &Poly) -> Result<bool, PolyError> {
        let d = match f.deg() {
            None | Some(0) => return Err(PolyError::Constant),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let (_, f) = self.monic(f);
        let q = self.field.order() as u128;
        let x = Poly::x();
        let mut h = self.rem(&x, &f)?;
        for _ in 1..=d / 2 {
            h = self.modexp(&h, q, &f)?;
            if !self.gcd(&f, &self.sub(&h, &x)).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Validates a monic irreducible.
    pub fn monic_irreducible(&self, p: Poly) -> Result<MonicIrreducible, PolyError> {
        if p.is_constant() {
            return Err(PolyError::Constant);
        }
        if !p.is_monic() {
            return Err(PolyError::NotMonic(self.format(&p)));
        }
        if !self.is_irreducible(&p)? {
            return Err(PolyError::Reducible(self.format(&p)));
        }
        Ok(MonicIrreducible(p))
    }

    /// The `index`-th monic polynomial of degree `d` in graded-lex order.
    pub fn monic_of_degree(&self, d: usize, mut index: u64) -> Poly {
        let q = self.field.order();
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(self.field.element(index % q).expect("in range"));
            index /= q;
        }
        coeffs.push(FieldElement::ONE);
        Poly::from_coeffs(coeffs)
    }

    /// All monic polynomials of degree `d`, ascending.
    pub fn monics_of_degree(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let count = (self.field.order() as u128).pow(d as u32) as u64;
        (0..count).map(move |i| self.monic_of_degree(d, i))
    }

    pub fn irreducibles_of_degree(&self, d: usize) -> IrreducibleIter {
        IrreducibleIter {
            ring: self.clone(),
            degree: d,
            index: 0,
            max_degree: d,
        }
    }

    /// Every monic irreducible of degree `<= max_degree`, ascending. Restartable by cloning.
    pub fn irreducibles(&self, max_degree: usize) -> IrreducibleIter {
        IrreducibleIter {
            ring: self.clone(),
            degree: 1,
            index: 0,
            max_degree,
        }
    }

    pub fn factor(&self, f: &Poly) -> Result<Factorization, PolyError> {
        self.factor_seeded(f, 0)
    }

    pub fn factor_seeded(&self, f: &Poly, seed: u64) -> Result<Factorization, PolyError> {
        if f.is_zero() {
            return Err(PolyError::Zero);
        }
        let (unit, monic) = self.monic(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        for (part, mult) in self.squarefree_decomposition(&monic) {
            for (block, d) in self.distinct_degree(&part) {
                for irr in self.equal_degree(&block, d, &mut rng) {
                    factors.push((irr, mult));
                }
            }
        }
        factors.sort();
        let mut merged: Vec<(MonicIrreducible, u32)> = Vec::new();
        for (p, k) in factors {
            match merged.last_mut() {
                Some((last, m)) if last.0 == p => *m += k,
                _ => merged.push((MonicIrreducible(p), k)),
            }
        }
        Ok(Factorization {
            unit,
            factors: merged,
        })
    }

    pub fn expand(&self, fact: &Factorization) -> Poly {
        fact.factors
            .iter()
            .fold(Poly::constant(fact.unit), |acc, (p, k)| {
                self.mul(&acc, &self.pow(p.poly(), *k as u64))
            })
    }

    /// Distinct roots of `f` in `F_q`, ascending.
    pub fn roots(&self, f: &Poly) -> Result<Vec<FieldElement>, PolyError> {
        let fact = self.factor(f)?;
        Ok(fact
            .factors
            .iter()
            .filter(|(p, _)| p.degree() == 1)
            .map(|(p, _)| self.field.neg(p.poly().coeff(0)))
            .collect())
    }

    fn squarefree_decomposition(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        self.squarefree_rec(f, 1, &mut out);
        out
    }

    fn squarefree_rec(&self, f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
        if f.is_constant() {
            return;
        }
        let p = self.field.characteristic() as u32;
        let d = self.derivative(f);
        if d.is_zero() {
            let root = self.pth_root_poly(f);
            self.squarefree_rec(&root, mult * p, out);
            return;
        }
        let mut c = self.gcd(f, &d);
        let mut w = self.div_exact(f, &c);
        let mut i = 1;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let fac = self.div_exact(&w, &y);
            if !fac.is_one() {
                out.push((fac, mult * i));
            }
            i += 1;
            c = self.div_exact(&c, &y);
            w = y;
        }
        if !c.is_one() {
            let root = self.pth_root_poly(&c);
            self.squarefree_rec(&root, mult * p, out);
        }
    }

    fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let q = self.field.order() as u128;
        let x = Poly::x();
        let mut out = Vec::new();
        let mut g = f.clone();
        let mut h = self.rem(&x, &g).expect("nonzero");
        let mut d = 1;
        while g.deg().unwrap_or(0) >= 2 * d {
            h = self.modexp(&h, q, &g).expect("nonzero");
            let t = self.gcd(&g, &self.sub(&h, &x));
            if !t.is_one() {
                g = self.div_exact(&g, &t);
                h = self.rem(&h, &g).expect("nonzero");
                out.push((t, d));
            }
            d += 1;
        }
        if let Some(dg) = g.deg().filter(|&dg| dg > 0) {
            out.push((g, dg));
        }
        out
    }

    fn random_poly_below(&self, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
        let q = self.field.order();
        let coeffs = (0..deg)
            .map(|_| self.field.element(rng.gen_range(0..q)).expect("in range"))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Splits a product of distinct irreducibles of common degree `d`.
    fn equal_degree(&self, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = f.deg().expect("nonzero");
        if n == d {
            return vec![f.clone()];
        }
        let q = self.field.order();
        let odd = q % 2 == 1;
        loop {
            let a = self.random_poly_below(n, rng);
            if a.is_constant() {
                continue;
            }
            let b = if odd {
                // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
                let mut r = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    r = self.modexp(&r, q as u128, f).expect("nonzero");
                    acc = self.mulmod(&acc, &r, f);
                }
                let h = self.modexp(&acc, ((q - 1) / 2) as u128, f).expect("nonzero");
                self.sub(&h, &Poly::one())
            } else {
                // absolute trace to F_2: sum of a^{2^i}, i < m d
                let steps = self.field.degree() as usize * d;
                let mut t = a.clone();
                let mut s = a.clone();
                for _ in 1..steps {
                    t = self.mulmod(&t, &t, f);
                    s = self.add(&s, &t);
                }
                s
            };
            let g = self.gcd(f, &b);
            let dg = g.deg().unwrap_or(0);
            if dg > 0 && dg < n {
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.div_exact(f, &g), d, rng));
                return out;
            }
        }
    }

    pub fn format(&self, a: &Poly) -> String {
        parse::format_poly(&self.field, a)
    }

    pub fn parse(&self, s: &str) -> Result<Poly, ParseError> {
        parse::parse_poly(&self.field, s)
    }
}

/// Stream of monic irreducibles in ascending `(degree, graded-lex)` order.
#[derive(Clone, Debug)]
pub struct IrreducibleIter {
    ring: PolyRing,
    degree: usize,
    index: u64,
    max_degree: usize,
}

impl Iterator for IrreducibleIter {
    type Item = MonicIrreducible;

    fn next(&mut self) -> Option<MonicIrreducible> {
        let q = self.ring.field.order() as u128;
        while self.degree <= self.max_degree {
            let count = q.pow(self.degree as u32) as u64;
            while self.index < count {
                let p = self.ring.monic_of_degree(self.degree, self.index);
                self.index += 1;
                if self.ring.is_irreducible(&p).expect("non-constant") {
                    return Some(MonicIrreducible(p));
                }
            }
            self.degree += 1;
            self.index = 0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(FqField::with_order(q).unwrap())
    }

    fn p(r: &PolyRing, s: &str) -> Poly {
        r.parse(s).unwrap()
    }

    #[test]
    fn arithmetic_examples_over_f5() {
        let r = ring(5);
        assert_eq!(r.mul(&p(&r, "T+1"), &p(&r, "T+4")), p(&r, "T^2+4"));
        assert_eq!(r.gcd(&p(&r, "T^2-1"), &p(&r, "T-1")), p(&r, "T+4"));
        let (quot, rem) = r.divmod(&p(&r, "T^2"), &p(&r, "T")).unwrap();
        assert_eq!((quot, rem), (p(&r, "T"), Poly::zero()));
        assert_eq!(
            r.divmod(&p(&r, "T"), &Poly::zero()).unwrap_err(),
            PolyError::DivisionByZero
        );
        assert_eq!(r.derivative(&p(&r, "T^5+3*T^2")), p(&r, "T"));
    }

    #[test]
    fn modexp_examples_over_f5() {
        let r = ring(5);
        assert_eq!(r.modexp(&p(&r, "T"), 2, &p(&r, "T+1")).unwrap(), Poly::one());
        assert_eq!(
            r.modexp(&p(&r, "T"), 12, &p(&r, "T^2+T+1")).unwrap(),
            Poly::one()
        );
        assert_eq!(r.modexp(&p(&r, "3*T+2"), 0, &p(&r, "T^3+T+1")).unwrap(), Poly::one());
        assert_eq!(
            r.modexp(&p(&r, "T"), 3, &Poly::zero()).unwrap_err(),
            PolyError::DivisionByZero
        );
    }

    #[test]
    fn irreducibility_examples() {
        let r = ring(5);
        assert!(r.is_irreducible(&p(&r, "T^2+T+1")).unwrap());
        assert!(!r.is_irreducible(&p(&r, "T^2+4")).unwrap());
        assert!(r.is_irreducible(&p(&r, "T")).unwrap());
        assert_eq!(r.is_irreducible(&p(&r, "3")).unwrap_err(), PolyError::Constant);
        // a square of an irreducible is caught too
        assert!(!r.is_irreducible(&p(&r, "T^4+2*T^3+3*T^2+2*T+1")).unwrap());
    }

    #[test]
    fn factor_examples_over_f5() {
        let r = ring(5);
        let f = r.factor(&p(&r, "2*T^2+2*T")).unwrap();
        assert_eq!(f.unit, r.field().from_int(2));
        let names: Vec<_> = f.factors.iter().map(|(q, k)| (r.format(q.poly()), *k)).collect();
        assert_eq!(names, vec![("T".to_string(), 1), ("T+1".to_string(), 1)]);

        let f = r.factor(&p(&r, "T^2+4")).unwrap();
        let names: Vec<_> = f.factors.iter().map(|(q, k)| (r.format(q.poly()), *k)).collect();
        assert_eq!(names, vec![("T+1".to_string(), 1), ("T+4".to_string(), 1)]);

        let f = r.factor(&p(&r, "3")).unwrap();
        assert_eq!(f.unit, r.field().from_int(3));
        assert!(f.factors.is_empty());
        assert_eq!(r.factor(&Poly::zero()).unwrap_err(), PolyError::Zero);
    }

    #[test]
    fn factor_handles_pth_powers() {
        for q in [2u64, 3, 4, 9] {
            let r = ring(q);
            let pchar = r.field().characteristic();
            let a = p(&r, "T^2+T+1");
            let b = p(&r, "T+1");
            let f = r.mul(&r.pow(&a, pchar), &r.pow(&b, pchar + 1));
            let fact = r.factor(&f).unwrap();
            assert_eq!(r.expand(&fact), f, "q={q}");
        }
    }

    #[test]
    fn enumeration_examples() {
        let r = ring(2);
        let names: Vec<_> = r.irreducibles(2).map(|p| r.format(p.poly())).collect();
        assert_eq!(names, vec!["T", "T+1", "T^2+T+1"]);
        assert_eq!(ring(3).irreducibles_of_degree(2).count(), 3);
        assert_eq!(ring(5).irreducibles_of_degree(1).count(), 5);
    }

    #[test]
    fn graded_lex_order() {
        let r = ring(3);
        let mut v = [p(&r, "T^2"), p(&r, "T+2"), p(&r, "2*T"), p(&r, "1"), Poly::zero()];
        v.sort();
        let names: Vec<_> = v.iter().map(|a| r.format(a)).collect();
        assert_eq!(names, vec!["0", "1", "T+2", "2*T", "T^2"]);
    }

    #[test]
    fn zero_degree_is_its_own_case() {
        assert_eq!(Poly::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Poly::one().degree(), Degree::Finite(0));
    }
}
