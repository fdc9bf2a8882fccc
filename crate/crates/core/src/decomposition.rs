//! Full decomposition of primes of `K` in the extended genus field, and the norm
//! condition for principal primes.

use serde::Serialize;
use thiserror::Error;

use crate::kummer::{in_kinfty_nth_powers, KummerDatum, KummerError, Place};
use crate::polyring::{MonicIrreducible, Poly, PolyError, PolyRing};
use crate::symbols::{residue_symbol, SymbolError, SymbolValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("{0} is ramified in K; the genus criterion applies to unramified primes")]
    Ramified(String),
    #[error("beta does not generate a prime above {0}: its norm is {1}")]
    NotAGenerator(String, String),
    #[error("beta needs at most {n} coefficients, got {got}")]
    TooManyCoefficients { n: u32, got: usize },
    #[error("beta has a zero denominator")]
    ZeroDenominator,
    #[error("expected inertia degree {expected} but {prime} has f={actual}")]
    InertiaMismatch { prime: String, expected: u32, actual: u32 },
    #[error(transparent)]
    Kummer(#[from] KummerError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The primes of `K` above `Q`; all conjugates share `(e, f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeOfK {
    pub below: MonicIrreducible,
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

impl PrimeOfK {
    pub fn above(datum: &KummerDatum, q: &MonicIrreducible) -> Result<PrimeOfK, DecompositionError> {
        let s = datum.local_splitting(&Place::Finite(q.clone()))?;
        Ok(PrimeOfK {
            below: q.clone(),
            e: s.e,
            f: s.f,
            g: s.g,
        })
    }

    /// `B = Q^f`, the monic generator of the norm ideal.
    pub fn norm_generator(&self, ring: &PolyRing) -> Poly {
        ring.pow(self.below.poly(), self.f as u64)
    }

    pub fn norm_degree(&self) -> u64 {
        self.f as u64 * self.below.degree() as u64
    }
}

fn require_unramified(datum: &KummerDatum, prime: &PrimeOfK) -> Result<(), DecompositionError> {
    if prime.e != 1 {
        return Err(DecompositionError::Ramified(
            datum.ring().format(prime.below.poly()),
        ));
    }
    Ok(())
}

fn n_divides_deg_b(datum: &KummerDatum, prime: &PrimeOfK) -> bool {
    prime.norm_degree().is_multiple_of(datum.n() as u64)
}

/// `n | deg B` and `(B/P_j)_{e_j} = 1` for every ramified `P_j`.
pub fn splits_fully_in_genus_via_b(
    datum: &KummerDatum,
    prime: &PrimeOfK,
) -> Result<bool, DecompositionError> {
    require_unramified(datum, prime)?;
    if !n_divides_deg_b(datum, prime) {
        return Ok(false);
    }
    let b = prime.norm_generator(datum.ring());
    for p in datum.ramified_primes() {
        let e = datum.ramification_index(p);
        if !residue_symbol(datum.ring(), &b, p, e)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(-1)^{deg P} P`.
pub fn signed_prime(ring: &PolyRing, p: &MonicIrreducible) -> Poly {
    if p.degree() % 2 == 1 {
        ring.neg(p.poly())
    } else {
        p.poly().clone()
    }
}

/// `n | f deg Q` and `(P_j^*/Q)_{e_j}^f = 1` for every ramified `P_j`.
pub fn splits_fully_in_genus_direct(
    datum: &KummerDatum,
    prime: &PrimeOfK,
) -> Result<bool, DecompositionError> {
    require_unramified(datum, prime)?;
    if !n_divides_deg_b(datum, prime) {
        return Ok(false);
    }
    let ring = datum.ring();
    for p in datum.ramified_primes() {
        let e = datum.ramification_index(p);
        let s = residue_symbol(ring, &signed_prime(ring, p), &prime.below, e)?;
        if !s.pow(prime.f as i64).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSymbols {
    #[serde(rename = "P")]
    pub p: String,
    pub e: u32,
    /// `(B/P_j)_{e_j}`.
    pub via_b: SymbolValue,
    /// `(P_j^*/Q)_{e_j}^f`.
    pub direct: SymbolValue,
    /// `(B/P_j)_n`.
    pub nth_power: SymbolValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusSplitReport {
    #[serde(rename = "Q")]
    pub q: String,
    pub e: u32,
    pub f: u32,
    pub g: u32,
    #[serde(rename = "B")]
    pub b: String,
    pub n_divides_deg_b: bool,
    pub via_b: bool,
    pub direct: bool,
    /// Whether `(B/P_j)_n = 1` for all `j` together with `n | deg B`.
    pub nth_power_variant: bool,
    pub components: Vec<ComponentSymbols>,
}

pub fn genus_split_report(
    datum: &KummerDatum,
    prime: &PrimeOfK,
) -> Result<GenusSplitReport, DecompositionError> {
    require_unramified(datum, prime)?;
    let ring = datum.ring();
    let b = prime.norm_generator(ring);
    let mut components = Vec::new();
    for p in datum.ramified_primes() {
        let e = datum.ramification_index(p);
        components.push(ComponentSymbols {
            p: ring.format(p.poly()),
            e,
            via_b: residue_symbol(ring, &b, p, e)?,
            direct: residue_symbol(ring, &signed_prime(ring, p), &prime.below, e)?
                .pow(prime.f as i64),
            nth_power: residue_symbol(ring, &b, p, datum.n())?,
        });
    }
    let divides = n_divides_deg_b(datum, prime);
    Ok(GenusSplitReport {
        q: ring.format(prime.below.poly()),
        e: prime.e,
        f: prime.f,
        g: prime.g,
        b: ring.format(&b),
        n_divides_deg_b: divides,
        via_b: splits_fully_in_genus_via_b(datum, prime)?,
        direct: splits_fully_in_genus_direct(datum, prime)?,
        nth_power_variant: divides && components.iter().all(|c| c.nth_power.is_one()),
        components,
    })
}

/// Determinant over `F_q[T]` by fraction-free elimination.
pub fn determinant(ring: &PolyRing, mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let mut prev = Poly::one();
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = ring.sub(
                    &ring.mul(&m[k][k], &m[i][j]),
                    &ring.mul(&m[i][k], &m[k][j]),
                );
                m[i][j] = ring.div_exact(&t, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 { Poly::one() } else { m[n - 1][n - 1].clone() };
    if negate {
        ring.neg(&det)
    } else {
        det
    }
}

fn lcm(ring: &PolyRing, a: &Poly, b: &Poly) -> Poly {
    let g = ring.gcd(a, b);
    ring.monic(&ring.div_exact(&ring.mul(a, b), &g)).1
}

/// `N_{K/k}(beta)` as `(numerator, denominator)` for `beta = sum c_i theta^i`,
/// `theta^n = D`, with `c_i = num_i / den_i`.
pub fn norm_of_element(
    datum: &KummerDatum,
    beta: &[(Poly, Poly)],
) -> Result<(Poly, Poly), DecompositionError> {
    let n = datum.n() as usize;
    if beta.len() > n {
        return Err(DecompositionError::TooManyCoefficients {
            n: datum.n(),
            got: beta.len(),
        });
    }
    let ring = datum.ring();
    if beta.iter().any(|(_, d)| d.is_zero()) {
        return Err(DecompositionError::ZeroDenominator);
    }
    let l = beta.iter().fold(Poly::one(), |acc, (_, d)| lcm(ring, &acc, d));
    let mut c: Vec<Poly> = beta
        .iter()
        .map(|(num, den)| ring.mul(num, &ring.div_exact(&l, den)))
        .collect();
    c.resize(n, Poly::zero());
    // column j holds beta * theta^j in the basis theta^k
    let mut m = vec![vec![Poly::zero(); n]; n];
    for (k, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = if k >= j {
                c[k - j].clone()
            } else {
                ring.mul(&c[k + n - j], datum.d())
            };
        }
    }
    let det = determinant(ring, m);
    Ok((det, ring.pow(&l, n as u64)))
}

/// Checks that `beta` generates a prime above `Q` with norm `Q^f`, then whether
/// its norm lies in `k_inf^{*n}`.
pub fn norm_condition_kh_plus(
    datum: &KummerDatum,
    prime: &PrimeOfK,
    beta: &[(Poly, Poly)],
) -> Result<bool, DecompositionError> {
    let ring = datum.ring();
    let (num, den) = norm_of_element(datum, beta)?;
    let not_generator = || {
        DecompositionError::NotAGenerator(ring.format(prime.below.poly()), format_ratio(ring, &num, &den))
    };
    if num.is_zero() {
        return Err(not_generator());
    }
    let g = ring.gcd(&num, &den);
    let (rn, rd) = (ring.div_exact(&num, &g), ring.div_exact(&den, &g));
    if !rd.is_constant() {
        return Err(not_generator());
    }
    let (k, rest) = ring.valuation(&rn, prime.below.poly());
    if k != prime.f || !rest.is_constant() {
        return Err(not_generator());
    }
    Ok(in_kinfty_nth_powers(datum.field(), datum.n(), &rn, &rd)?)
}

fn format_ratio(ring: &PolyRing, num: &Poly, den: &Poly) -> String {
    if den.is_one() {
        ring.format(num)
    } else {
        format!("({})/({})", ring.format(num), ring.format(den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FqField;

    fn datum(q: u64, n: u32, d: &str) -> KummerDatum {
        let f = FqField::with_order(q).unwrap();
        let d = PolyRing::new(f.clone()).parse(d).unwrap();
        KummerDatum::normalize(&f, n, &d).unwrap()
    }

    fn prime(d: &KummerDatum, s: &str) -> PrimeOfK {
        let r = d.ring();
        PrimeOfK::above(d, &r.monic_irreducible(r.parse(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn genus_splitting_examples() {
        let d = datum(5, 2, "T");
        let cases = [("T+2", 2, true), ("T+1", 1, false), ("T^2+T+1", 1, true)];
        for (q, f, expected) in cases {
            let p = prime(&d, q);
            assert_eq!(p.f, f, "{q}");
            assert_eq!(splits_fully_in_genus_via_b(&d, &p).unwrap(), expected, "{q}");
            assert_eq!(splits_fully_in_genus_direct(&d, &p).unwrap(), expected, "{q}");
        }
        let rep = genus_split_report(&d, &prime(&d, "T+2")).unwrap();
        assert_eq!(rep.b, "T^2+4*T+4");
        assert_eq!(rep.components.len(), 1);
        assert!(rep.via_b && rep.direct);
    }

    #[test]
    fn ramified_prime_is_rejected() {
        let d = datum(5, 2, "T");
        let p = prime(&d, "T");
        assert!(matches!(
            splits_fully_in_genus_via_b(&d, &p),
            Err(DecompositionError::Ramified(_))
        ));
        assert!(matches!(
            splits_fully_in_genus_direct(&d, &p),
            Err(DecompositionError::Ramified(_))
        ));
    }

    #[test]
    fn constant_extension_reduces_to_degree_condition() {
        let d = datum(7, 3, "3");
        let r = d.ring().clone();
        for q in r.irreducibles(2) {
            let p = PrimeOfK::above(&d, &q).unwrap();
            let expect = p.norm_degree().is_multiple_of(3);
            assert_eq!(splits_fully_in_genus_via_b(&d, &p).unwrap(), expect);
            assert_eq!(splits_fully_in_genus_direct(&d, &p).unwrap(), expect);
        }
    }

    #[test]
    fn determinant_small() {
        let r = PolyRing::new(FqField::with_order(5).unwrap());
        let p = |s: &str| r.parse(s).unwrap();
        let m = vec![vec![p("0"), p("T")], vec![p("1"), p("0")]];
        assert_eq!(determinant(&r, m), p("4*T"));
        let m = vec![
            vec![p("T"), p("1"), p("0")],
            vec![p("0"), p("T"), p("1")],
            vec![p("1"), p("0"), p("T")],
        ];
        assert_eq!(determinant(&r, m), p("T^3+1"));
    }

    #[test]
    fn norm_condition_examples() {
        let d = datum(5, 2, "T");
        let r = d.ring().clone();
        let sqrt_t = vec![(Poly::zero(), Poly::one()), (Poly::one(), Poly::one())];
        assert_eq!(norm_of_element(&d, &sqrt_t).unwrap().0, r.parse("4*T").unwrap());
        assert!(!norm_condition_kh_plus(&d, &prime(&d, "T"), &sqrt_t).unwrap());

        let inert = prime(&d, "T+2");
        let beta = vec![(inert.below.poly().clone(), Poly::one())];
        assert!(norm_condition_kh_plus(&d, &inert, &beta).unwrap());

        assert!(matches!(
            norm_condition_kh_plus(&d, &inert, &[(Poly::one(), Poly::one())]),
            Err(DecompositionError::NotAGenerator(..))
        ));
    }

    #[test]
    fn norm_with_denominators() {
        let d = datum(7, 3, "T");
        let r = d.ring().clone();
        // beta = theta / T has norm T / T^3
        let beta = vec![(Poly::zero(), Poly::one()), (Poly::one(), r.parse("T").unwrap())];
        let (num, den) = norm_of_element(&d, &beta).unwrap();
        let g = r.gcd(&num, &den);
        assert_eq!(r.monic(&r.div_exact(&den, &g)).1, r.parse("T^2").unwrap());
    }
}
