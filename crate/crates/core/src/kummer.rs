//! Cyclic Kummer extensions `K = k(D^(1/n))` of `k = F_q(T)` and their local
//! invariants.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_field::{FieldElement, FieldError, FqField, RootOfUnity};
use crate::parse::ParseError;
use crate::polyring::{MonicIrreducible, Poly, PolyError, PolyRing};
use crate::symbols::{residue_symbol, SymbolError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KummerError {
    #[error("D must be nonzero")]
    ZeroD,
    #[error("degenerate datum: class order {order} < n={n}")]
    Degenerate { order: u32, n: u32 },
    #[error("exponent {alpha} of {prime} outside [1, {max}]")]
    ExponentRange { prime: String, alpha: u32, max: u32 },
    #[error("ramified prime {0} listed twice")]
    DuplicatePrime(String),
    #[error("gamma must be nonzero")]
    ZeroGamma,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("unit index {unit_index} does not divide n={n}")]
    UnitIndex { unit_index: u64, n: u32 },
    #[error("unit index is not determined by the datum; supply it")]
    UnitIndexUnknown,
    #[error("genus degree n*prod(e_i) overflows u64")]
    TooLarge,
    #[error("invalid datum record: {0}")]
    Record(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// A place of `k`: a monic irreducible or the pole of `T`. Finite places sort first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(MonicIrreducible),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree(),
            Place::Infinity => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SplittingData {
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

impl fmt::Display for SplittingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={} f={} g={}", self.e, self.f, self.g)
    }
}

/// Splitting type of `X^n - D` at a place where `v(D) = a` and the unit part has
/// class of order `t` in `mu_n`.
pub fn splitting_from_class(n: u32, a: i64, t: u32) -> SplittingData {
    let a = a.rem_euclid(n as i64) as u32;
    let e = n / n.gcd(&a);
    let ef = e.lcm(&t);
    SplittingData {
        e,
        f: ef / e,
        g: n / ef,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionInvariants {
    pub delta_index: u64,
    pub kinf_mod_n_order: u64,
    pub unit_index_divides: u32,
    pub unit_index_exact: Option<u64>,
    #[serde(serialize_with = "ser_ratio")]
    pub herbrand_u: Ratio<u64>,
    pub h1_u_plus: u64,
    pub ik_over_ik: u64,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `K = k(D^(1/n))` with `D = gamma * prod P_i^alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerDatum {
    ring: PolyRing,
    n: u32,
    gamma: FieldElement,
    ram: Vec<(MonicIrreducible, u32)>,
    d: Poly,
}

impl KummerDatum {
    /// Strips `n`-th power parts from `D_raw` and validates the result.
    pub fn normalize(field: &FqField, n: u32, d_raw: &Poly) -> Result<KummerDatum, KummerError> {
        field.zeta(n)?;
        if d_raw.is_zero() {
            return Err(KummerError::ZeroD);
        }
        let ring = PolyRing::new(field.clone());
        let fact = ring.factor(d_raw)?;
        let ram = fact
            .factors
            .into_iter()
            .filter_map(|(p, k)| {
                let a = k % n;
                (a != 0).then_some((p, a))
            })
            .collect();
        Self::build(ring, n, fact.unit, ram)
    }

    /// Builds a datum from `gamma` and the ramified primes with exponents in `[1, n-1]`.
    pub fn from_parts(
        field: &FqField,
        n: u32,
        gamma: FieldElement,
        mut ram: Vec<(MonicIrreducible, u32)>,
    ) -> Result<KummerDatum, KummerError> {
        field.zeta(n)?;
        let ring = PolyRing::new(field.clone());
        for (p, a) in &ram {
            if *a == 0 || *a >= n {
                return Err(KummerError::ExponentRange {
                    prime: ring.format(p.poly()),
                    alpha: *a,
                    max: n.saturating_sub(1),
                });
            }
        }
        ram.sort();
        for w in ram.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(KummerError::DuplicatePrime(ring.format(w[0].0.poly())));
            }
        }
        Self::build(ring, n, gamma, ram)
    }

    fn build(
        ring: PolyRing,
        n: u32,
        gamma: FieldElement,
        ram: Vec<(MonicIrreducible, u32)>,
    ) -> Result<KummerDatum, KummerError> {
        if gamma.is_zero() {
            return Err(KummerError::ZeroGamma);
        }
        let mut order = ring.field().const_nth_power_class(gamma, n)?.order();
        let mut genus_degree = n as u64;
        for (_, a) in &ram {
            let e = n / n.gcd(a);
            order = order.lcm(&e);
            genus_degree = genus_degree
                .checked_mul(e as u64)
                .ok_or(KummerError::TooLarge)?;
        }
        if order < n {
            return Err(KummerError::Degenerate { order, n });
        }
        let mut d = Poly::constant(gamma);
        for (p, a) in &ram {
            d = ring.mul(&d, &ring.pow(p.poly(), *a as u64));
        }
        Ok(KummerDatum {
            ring,
            n,
            gamma,
            ram,
            d,
        })
    }

    pub fn field(&self) -> &FqField {
        self.ring.field()
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    pub fn ram(&self) -> &[(MonicIrreducible, u32)] {
        &self.ram
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    pub fn ramified_primes(&self) -> impl Iterator<Item = &MonicIrreducible> {
        self.ram.iter().map(|(p, _)| p)
    }

    /// `e_i = n / gcd(n, v_P(D))`.
    pub fn ramification_index(&self, p: &MonicIrreducible) -> u32 {
        let (a, _) = self.ring.valuation(&self.d, p.poly());
        self.n / self.n.gcd(&(a % self.n))
    }

    pub fn local_splitting(&self, place: &Place) -> Result<SplittingData, KummerError> {
        let (a, class) = match place {
            Place::Finite(q) => {
                let (a, unit) = self.ring.valuation(&self.d, q.poly());
                (a as i64, residue_symbol(&self.ring, &unit, q, self.n)?)
            }
            Place::Infinity => self.infinity_class()?,
        };
        Ok(splitting_from_class(self.n, a, class.order()))
    }

    fn infinity_class(&self) -> Result<(i64, RootOfUnity), KummerError> {
        let deg = self.d.deg().expect("nonzero") as i64;
        let class = self.field().const_nth_power_class(self.gamma, self.n)?;
        Ok((-deg, class))
    }

    pub fn infinity_splitting(&self) -> SplittingData {
        self.local_splitting(&Place::Infinity)
            .expect("infinity class is always defined")
    }

    pub fn invariants(&self) -> ExtensionInvariants {
        let n = self.n as u64;
        let inf = self.infinity_splitting();
        let ef = (inf.e * inf.f) as u64;
        let delta = n * n / ef;
        let ik = self
            .ram
            .iter()
            .map(|(_, a)| (self.n / self.n.gcd(a)) as u64)
            .product();
        ExtensionInvariants {
            delta_index: delta,
            kinf_mod_n_order: n * n,
            unit_index_divides: self.n,
            unit_index_exact: (inf.e == 1 && inf.f == self.n).then_some(1),
            herbrand_u: Ratio::new(ef, n),
            h1_u_plus: delta,
            ik_over_ik: ik,
        }
    }

    /// Whether `num/den` lies in `k_inf^{*n}`.
    pub fn is_in_kinfty_nth_powers(&self, num: &Poly, den: &Poly) -> Result<bool, KummerError> {
        in_kinfty_nth_powers(self.field(), self.n, num, den)
    }

    /// `[K_H^+ : K] = h n^2 / (e_inf f_inf [U_K : U_K^+])`.
    pub fn extended_hilbert_degree(
        &self,
        h: u64,
        unit_index: Option<u64>,
    ) -> Result<u64, KummerError> {
        let inv = self.invariants();
        let u = unit_index
            .or(inv.unit_index_exact)
            .ok_or(KummerError::UnitIndexUnknown)?;
        if u == 0 || !(self.n as u64).is_multiple_of(u) {
            return Err(KummerError::UnitIndex {
                unit_index: u,
                n: self.n,
            });
        }
        Ok(h * inv.delta_index / u)
    }

    pub fn to_record(&self) -> DatumRecord {
        let f = self.field();
        let prime = f.prime_field();
        let modulus = Poly::from_indices(f.modulus());
        DatumRecord {
            q: f.order(),
            p: f.characteristic(),
            m: f.degree(),
            modulus: PolyRing::new(prime).format(&modulus),
            n: self.n,
            gamma: f.format_element(self.gamma),
            ram: self
                .ram
                .iter()
                .map(|(p, a)| RamRecord {
                    p: self.ring.format(p.poly()),
                    alpha: *a,
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &DatumRecord) -> Result<KummerDatum, KummerError> {
        let prime = FqField::new(rec.p, 1, None)?;
        let modulus = PolyRing::new(prime).parse(&rec.modulus)?;
        let idx: Vec<u64> = modulus.coeffs().iter().map(|c| c.index() as u64).collect();
        let field = if rec.m == 1 {
            FqField::new(rec.p, 1, None)?
        } else {
            FqField::new(rec.p, rec.m, Some(&idx))?
        };
        if field.order() != rec.q {
            return Err(KummerError::Record(format!(
                "q={} but p^m={}",
                rec.q,
                field.order()
            )));
        }
        let ring = PolyRing::new(field.clone());
        let gamma = field.parse_element(&rec.gamma)?;
        let ram = rec
            .ram
            .iter()
            .map(|r| Ok((ring.monic_irreducible(ring.parse(&r.p)?)?, r.alpha)))
            .collect::<Result<Vec<_>, KummerError>>()?;
        Self::from_parts(&field, rec.n, gamma, ram)
    }
}

impl fmt::Display for KummerDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.ring.format(&self.d);
        if d.contains(['+', '*']) {
            write!(f, "k(({d})^(1/{})) over {}", self.n, self.ring)
        } else {
            write!(f, "k({d}^(1/{})) over {}", self.n, self.ring)
        }
    }
}

/// Membership of `num/den` in `k_inf^{*n}`: the valuation is divisible by `n` and
/// the ratio of leading coefficients is an `n`-th power. One-units are `n`-th
/// powers because `p` does not divide `n`.
pub fn in_kinfty_nth_powers(
    field: &FqField,
    n: u32,
    num: &Poly,
    den: &Poly,
) -> Result<bool, KummerError> {
    if num.is_zero() || den.is_zero() {
        return Err(KummerError::ZeroArgument);
    }
    let v = num.deg().expect("nonzero") as i64 - den.deg().expect("nonzero") as i64;
    if v.rem_euclid(n as i64) != 0 {
        return Ok(false);
    }
    let ratio = field.div(num.lc(), den.lc())?;
    Ok(field.const_nth_power_class(ratio, n)?.is_one())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamRecord {
    #[serde(rename = "P")]
    pub p: String,
    pub alpha: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumRecord {
    pub q: u64,
    pub p: u64,
    pub m: u32,
    pub modulus: String,
    pub n: u32,
    pub gamma: String,
    pub ram: Vec<RamRecord>,
}
