//! Power residue symbols, the tame Hilbert symbol, the product formula and
//! the reciprocity relation between two monic irreducibles.
//!
//! Every value lives in `mu_n` and is reported as an exponent of
//! `zeta_n = xi^((q-1)/n)`, so comparisons are integer comparisons.

use serde::Serialize;
use thiserror::Error;

use crate::finite_field::{FieldError, FqField, RootOfUnity};
use crate::kummer::Place;
use crate::polyring::{MonicIrreducible, Poly, PolyError, PolyRing};

/// A value of a residue or norm-residue symbol.
pub type SymbolValue = RootOfUnity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("{0} and {1} have a common factor")]
    CommonFactor(String, String),
    #[error("modulus {0} must be non-constant")]
    ConstantModulus(String),
    #[error("arguments must be nonzero")]
    ZeroArgument,
    #[error("reciprocity needs two distinct primes, got {0} twice")]
    SamePrime(String),
    #[error("q^deg {0} overflows the exponent range")]
    Overflow(String),
    #[error("internal error: power residue of {0} is not a root of unity")]
    NotRootOfUnity(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `(q^d - 1) / n`, checked.
pub(crate) fn residue_exponent(field: &FqField, d: usize, n: u32) -> Option<u128> {
    let qd = (field.order() as u128).checked_pow(d as u32)?;
    Some((qd - 1) / n as u128)
}

/// `(D/Q)_n`, the unique `n`-th root of unity congruent to `D^((q^d - 1)/n)` mod `Q`.
pub fn residue_symbol(
    ring: &PolyRing,
    d: &Poly,
    q: &MonicIrreducible,
    n: u32,
) -> Result<SymbolValue, SymbolError> {
    let field = ring.field();
    field.zeta(n)?;
    let r = ring.rem(d, q.poly())?;
    if r.is_zero() {
        return Err(SymbolError::CommonFactor(
            ring.format(d),
            ring.format(q.poly()),
        ));
    }
    if n == 1 {
        return Ok(RootOfUnity::one(1));
    }
    let exp = residue_exponent(field, q.degree(), n)
        .ok_or_else(|| SymbolError::Overflow(ring.format(q.poly())))?;
    let v = ring.modexp(&r, exp, q.poly())?;
    if !v.is_constant() {
        return Err(SymbolError::NotRootOfUnity(ring.format(d)));
    }
    field
        .root_of_unity(n, v.coeff(0))
        .map_err(|_| SymbolError::NotRootOfUnity(ring.format(d)))
}

/// `(D/R)_n` for composite `R`, multiplicative over the prime factors of `R`.
/// The leading coefficient of `R` plays no role.
pub fn residue_symbol_composite(
    ring: &PolyRing,
    d: &Poly,
    r: &Poly,
    n: u32,
) -> Result<SymbolValue, SymbolError> {
    if r.is_constant() {
        return Err(SymbolError::ConstantModulus(ring.format(r)));
    }
    if d.is_zero() || !ring.gcd(d, r).is_one() {
        return Err(SymbolError::CommonFactor(ring.format(d), ring.format(r)));
    }
    let fact = ring.factor(r)?;
    let ideal: Vec<_> = fact
        .factors
        .into_iter()
        .map(|(p, k)| (p, k as i64))
        .collect();
    residue_symbol_ideal(ring, d, &ideal, n)
}

/// `(D/a)_n` for a fractional ideal given by its prime exponents.
pub fn residue_symbol_ideal(
    ring: &PolyRing,
    d: &Poly,
    ideal: &[(MonicIrreducible, i64)],
    n: u32,
) -> Result<SymbolValue, SymbolError> {
    ring.field().zeta(n)?;
    let mut acc = RootOfUnity::one(n);
    for (p, k) in ideal {
        if *k == 0 {
            continue;
        }
        acc = acc.mul(residue_symbol(ring, d, p, n)?.pow(*k));
    }
    Ok(acc)
}

/// Tame Hilbert symbol `(R, S)_v`: the residue of
/// `(-1)^{v(R)v(S)} R^{v(S)} S^{-v(R)}` raised to `(q^d - 1)/n`.
pub fn hilbert_symbol(
    ring: &PolyRing,
    r: &Poly,
    s: &Poly,
    place: &Place,
    n: u32,
) -> Result<SymbolValue, SymbolError> {
    let field = ring.field();
    field.zeta(n)?;
    if r.is_zero() || s.is_zero() {
        return Err(SymbolError::ZeroArgument);
    }
    if !ring.gcd(r, s).is_one() {
        return Err(SymbolError::CommonFactor(ring.format(r), ring.format(s)));
    }
    tame_symbol(ring, r, s, place, n)
}

/// The tame symbol for arguments already known to be nonzero and coprime.
fn tame_symbol(
    ring: &PolyRing,
    r: &Poly,
    s: &Poly,
    place: &Place,
    n: u32,
) -> Result<SymbolValue, SymbolError> {
    let field = ring.field();
    let minus_one = field.neg(crate::FieldElement::ONE);
    match place {
        Place::Finite(p) => {
            let (a, r_unit) = ring.valuation(r, p.poly());
            let (b, s_unit) = ring.valuation(s, p.poly());
            let mut acc = RootOfUnity::one(n);
            if a as u64 * b as u64 % 2 == 1 {
                acc = acc.mul(residue_symbol(ring, &Poly::constant(minus_one), p, n)?);
            }
            if b != 0 {
                acc = acc.mul(residue_symbol(ring, &r_unit, p, n)?.pow(b as i64));
            }
            if a != 0 {
                acc = acc.mul(residue_symbol(ring, &s_unit, p, n)?.pow(-(a as i64)));
            }
            Ok(acc)
        }
        Place::Infinity => {
            // v_inf = -deg, and the residue of a valuation-0 quotient is the ratio
            // of leading coefficients.
            let a = -(r.deg().expect("nonzero") as i64);
            let b = -(s.deg().expect("nonzero") as i64);
            let mut acc = RootOfUnity::one(n);
            if (a * b).rem_euclid(2) == 1 {
                acc = acc.mul(field.const_nth_power_class(minus_one, n)?);
            }
            acc = acc.mul(field.const_nth_power_class(r.lc(), n)?.pow(b));
            acc = acc.mul(field.const_nth_power_class(s.lc(), n)?.pow(-a));
            Ok(acc)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFormula {
    pub holds: bool,
    /// Symbol at every place dividing `R S`, then at infinity.
    pub table: Vec<(Place, SymbolValue)>,
}

/// Evaluates `prod_v (R, S)_v` over the support of `R S` and infinity.
pub fn product_formula_check(
    ring: &PolyRing,
    r: &Poly,
    s: &Poly,
    n: u32,
) -> Result<ProductFormula, SymbolError> {
    if r.is_zero() || s.is_zero() {
        return Err(SymbolError::ZeroArgument);
    }
    let mut support = Vec::new();
    for f in [r, s] {
        if !f.is_constant() {
            support.extend(ring.factor(f)?.factors.into_iter().map(|(p, _)| p));
        }
    }
    product_formula_over(ring, r, s, &support, n)
}

/// As [`product_formula_check`], with the prime divisors of `R S` supplied by
/// the caller. Primes not dividing `R S` contribute trivially.
pub fn product_formula_over(
    ring: &PolyRing,
    r: &Poly,
    s: &Poly,
    support: &[MonicIrreducible],
    n: u32,
) -> Result<ProductFormula, SymbolError> {
    ring.field().zeta(n)?;
    if r.is_zero() || s.is_zero() {
        return Err(SymbolError::ZeroArgument);
    }
    if !ring.gcd(r, s).is_one() {
        return Err(SymbolError::CommonFactor(ring.format(r), ring.format(s)));
    }
    let mut places: Vec<Place> = support.iter().cloned().map(Place::Finite).collect();
    places.sort();
    places.dedup();
    if !(r.is_constant() && s.is_constant()) {
        places.push(Place::Infinity);
    }
    let mut table = Vec::with_capacity(places.len());
    let mut product = RootOfUnity::one(n);
    for place in places {
        let v = tame_symbol(ring, r, s, &place, n)?;
        product = product.mul(v);
        table.push((place, v));
    }
    Ok(ProductFormula {
        holds: product.is_one(),
        table,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityRecord {
    /// `(Q/R)_n (R/Q)_n^{-1}`.
    pub lhs: SymbolValue,
    /// `((-1)^{deg Q deg R})^{(q-1)/n}`.
    pub sign_factor: SymbolValue,
    /// Whether `lhs = 1`.
    pub unsigned_equality_holds: bool,
    /// Whether `lhs = sign_factor`.
    pub carlitz_equality_holds: bool,
}

pub fn reciprocity_relation(
    ring: &PolyRing,
    q: &MonicIrreducible,
    r: &MonicIrreducible,
    n: u32,
) -> Result<ReciprocityRecord, SymbolError> {
    if q == r {
        return Err(SymbolError::SamePrime(ring.format(q.poly())));
    }
    let field = ring.field();
    let q_over_r = residue_symbol(ring, q.poly(), r, n)?;
    let r_over_q = residue_symbol(ring, r.poly(), q, n)?;
    let lhs = q_over_r.mul(r_over_q.inv());
    let minus_one = field.neg(crate::FieldElement::ONE);
    let sign_factor = field
        .const_nth_power_class(minus_one, n)?
        .pow((q.degree() * r.degree()) as i64);
    Ok(ReciprocityRecord {
        lhs,
        sign_factor,
        unsigned_equality_holds: lhs.is_one(),
        carlitz_equality_holds: lhs == sign_factor,
    })
}
