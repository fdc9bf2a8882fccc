//! The extended genus field `F_{q^n}(T, P_1^(1/e_1), ..., P_r^(1/e_r))` of a
//! Kummer datum, its degrees and Galois structure.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::kummer::KummerDatum;
use crate::polyring::{MonicIrreducible, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusField {
    ring: PolyRing,
    constant_degree: u32,
    components: Vec<(MonicIrreducible, u32)>,
}

impl GenusField {
    pub fn constant_degree(&self) -> u32 {
        self.constant_degree
    }

    pub fn components(&self) -> &[(MonicIrreducible, u32)] {
        &self.components
    }

    /// Ramification index of the finite prime `p` in the compositum: the lcm
    /// over components `k(P_j^(1/e_j))` of `e_j / gcd(e_j, v_p(P_j))`.
    pub fn ramification_index(&self, p: &MonicIrreducible) -> u32 {
        self.components.iter().fold(1, |acc, (pj, ej)| {
            let (v, _) = self.ring.valuation(pj.poly(), p.poly());
            acc.lcm(&(ej / ej.gcd(&(v % ej))))
        })
    }
}

impl fmt::Display for GenusField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.ring.field();
        let order = field.order().checked_pow(self.constant_degree);
        match order {
            Some(o) => write!(f, "GF({o})(T")?,
            None => write!(f, "GF({}^{})(T", field.order(), self.constant_degree)?,
        }
        for (p, e) in &self.components {
            let s = self.ring.format(p.poly());
            if p.poly().coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                write!(f, ", ({s})^(1/{e})")?;
            } else {
                write!(f, ", {s}^(1/{e})")?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenusDegrees {
    pub over_k: u64,
    pub over_big_k: u64,
}

pub fn genus_field(datum: &KummerDatum) -> GenusField {
    GenusField {
        ring: datum.ring().clone(),
        constant_degree: datum.n(),
        components: datum
            .ram()
            .iter()
            .map(|(p, _)| (p.clone(), datum.ramification_index(p)))
            .collect(),
    }
}

fn product_of_indices(datum: &KummerDatum) -> u64 {
    datum
        .ram()
        .iter()
        .map(|(p, _)| datum.ramification_index(p) as u64)
        .product()
}

/// `(n prod e_i, prod e_i)`. The datum constructor guarantees no overflow.
pub fn genus_degrees(datum: &KummerDatum) -> GenusDegrees {
    let over_big_k = product_of_indices(datum);
    GenusDegrees {
        over_k: datum.n() as u64 * over_big_k,
        over_big_k,
    }
}

pub fn ambiguous_class_count(datum: &KummerDatum) -> u64 {
    product_of_indices(datum)
}

/// Invariants of `C_n x C_{e_1} x ... x C_{e_r}` with trivial factors dropped.
pub fn galois_structure(datum: &KummerDatum) -> Vec<u32> {
    std::iter::once(datum.n())
        .chain(datum.ramified_primes().map(|p| datum.ramification_index(p)))
        .filter(|&x| x > 1)
        .collect()
}
