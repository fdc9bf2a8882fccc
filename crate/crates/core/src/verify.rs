//! Brute-force oracles and the sweep campaigns that compare them against the
//! closed-form computations.
//!
//! The oracles never use the splitting formulas or the power residue map: they
//! enumerate residues, or factor polynomials over an explicitly constructed
//! residue extension field.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::decomposition::{
    norm_condition_kh_plus, splits_fully_in_genus_direct, splits_fully_in_genus_via_b, PrimeOfK,
};
use crate::finite_field::{FieldElement, FieldError, FqField, RootOfUnity};
use crate::genus::{ambiguous_class_count, galois_structure, genus_degrees, genus_field};
use crate::kummer::{KummerDatum, KummerError, Place, SplittingData};
use crate::polyring::{MonicIrreducible, Poly, PolyError, PolyRing};
use crate::symbols::{product_formula_over, reciprocity_relation, residue_symbol, SymbolError};

/// Largest residue field the oracles enumerate or construct.
pub const ORACLE_BOUND: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("residue field of size {size} exceeds the oracle bound {bound}")]
    RangeExceeded { size: u128, bound: u64 },
    #[error("{0} divides the argument")]
    CommonFactor(String),
    #[error("inconsistent factorization: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn residue_field_size(field: &FqField, q: &MonicIrreducible) -> Result<u64, OracleError> {
    let size = (field.order() as u128).saturating_pow(q.degree() as u32);
    if size > ORACLE_BOUND as u128 {
        return Err(OracleError::RangeExceeded {
            size,
            bound: ORACLE_BOUND,
        });
    }
    Ok(size as u64)
}

fn residue_index(q: u64, r: &Poly) -> usize {
    r.coeffs()
        .iter()
        .rev()
        .fold(0u64, |acc, c| acc * q + c.index() as u64) as usize
}

fn residue_from_index(field: &FqField, mut idx: u64) -> Poly {
    let q = field.order();
    let mut coeffs = Vec::new();
    while idx > 0 {
        coeffs.push(field.element(idx % q).expect("in range"));
        idx /= q;
    }
    Poly::from_coeffs(coeffs)
}

/// The set of `n`-th powers in `(F_q[T]/Q)^*`, by enumeration.
#[derive(Clone, Debug)]
pub struct NthPowerTable {
    modulus: MonicIrreducible,
    powers: Vec<bool>,
}

impl NthPowerTable {
    pub fn new(ring: &PolyRing, q: &MonicIrreducible, n: u32) -> Result<NthPowerTable, OracleError> {
        let field = ring.field();
        let size = residue_field_size(field, q)?;
        let mut powers = vec![false; size as usize];
        for idx in 1..size {
            let x = residue_from_index(field, idx);
            let mut y = x.clone();
            for _ in 1..n {
                y = ring.mulmod(&y, &x, q.poly());
            }
            powers[residue_index(field.order(), &y)] = true;
        }
        Ok(NthPowerTable {
            modulus: q.clone(),
            powers,
        })
    }

    pub fn contains(&self, ring: &PolyRing, d: &Poly) -> Result<bool, OracleError> {
        let r = ring.rem(d, self.modulus.poly())?;
        if r.is_zero() {
            return Err(OracleError::CommonFactor(ring.format(self.modulus.poly())));
        }
        Ok(self.powers[residue_index(ring.field().order(), &r)])
    }
}

/// Whether `D mod Q` is an `n`-th power in `(F_q[T]/Q)^*`.
pub fn power_residue_oracle(
    ring: &PolyRing,
    d: &Poly,
    q: &MonicIrreducible,
    n: u32,
) -> Result<bool, OracleError> {
    NthPowerTable::new(ring, q, n)?.contains(ring, d)
}

struct ResidueExtension {
    ring: PolyRing,
    /// Image of each element of `F_q`, by index.
    embed: Vec<FieldElement>,
    /// `(g, u)` to the factor degree and count of `Y^g - u`.
    shapes: HashMap<(u32, u32), (u32, u32)>,
}

/// Splitting types computed by factoring over `F_{q^d}` built from scratch.
/// Caches the extension fields, the chosen roots of each `Q` and the
/// factorization shapes, all of which are pure functions of their keys.
pub struct SplittingOracle {
    ring: PolyRing,
    extensions: HashMap<usize, ResidueExtension>,
    roots: HashMap<MonicIrreducible, FieldElement>,
}

impl SplittingOracle {
    pub fn new(field: &FqField) -> SplittingOracle {
        SplittingOracle {
            ring: PolyRing::new(field.clone()),
            extensions: HashMap::new(),
            roots: HashMap::new(),
        }
    }

    pub fn field(&self) -> &FqField {
        self.ring.field()
    }

    fn extension(&mut self, d: usize) -> Result<&mut ResidueExtension, OracleError> {
        if !self.extensions.contains_key(&d) {
            let base = self.ring.field();
            let big = FqField::new(base.characteristic(), base.degree() * d as u32, None)?;
            let big_ring = PolyRing::new(big.clone());
            // F_q = F_p[g]/(m(g)); send g to a root of m in the big field.
            let m = Poly::from_indices(base.modulus());
            let rho = *big_ring
                .roots(&m)?
                .first()
                .ok_or_else(|| OracleError::Inconsistent("modulus has no root".into()))?;
            let embed = base
                .elements()
                .map(|a| {
                    base.coeffs(a).iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                        let c = big.element(c as u64).expect("prime field element");
                        big.add(big.mul(acc, rho), c)
                    })
                })
                .collect();
            self.extensions.insert(
                d,
                ResidueExtension {
                    ring: big_ring,
                    embed,
                    shapes: HashMap::new(),
                },
            );
        }
        Ok(self.extensions.get_mut(&d).expect("inserted"))
    }

    fn lift(ext: &ResidueExtension, f: &Poly) -> Poly {
        Poly::from_coeffs(f.coeffs().iter().map(|c| ext.embed[c.index() as usize]).collect())
    }

    fn root(&mut self, q: &MonicIrreducible) -> Result<FieldElement, OracleError> {
        if let Some(&t) = self.roots.get(q) {
            return Ok(t);
        }
        let ext = self.extension(q.degree())?;
        let lifted = Self::lift(ext, q.poly());
        let roots = ext.ring.roots(&lifted)?;
        if roots.len() != q.degree() {
            return Err(OracleError::Inconsistent(format!(
                "Q of degree {} has {} roots in its residue field",
                q.degree(),
                roots.len()
            )));
        }
        self.roots.insert(q.clone(), roots[0]);
        Ok(roots[0])
    }

    /// Splitting type of `X^n - D` at `Q`: the valuation gives `e`, and the
    /// factorization of `Y^gcd(n, v_Q(D)) - u` over the residue field of `Q`,
    /// with `u` the residue of the unit part, gives `f` and `g`.
    pub fn split(
        &mut self,
        n: u32,
        d: &Poly,
        q: &MonicIrreducible,
    ) -> Result<SplittingData, OracleError> {
        let (a, unit) = self.ring.valuation(d, q.poly());
        let gp = n.gcd(&(a % n));
        let tau = self.root(q)?;
        let ext = self.extension(q.degree())?;
        let big = ext.ring.field().clone();
        let u = Self::lift(ext, &unit)
            .coeffs()
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| big.add(big.mul(acc, tau), c));
        if u.is_zero() {
            return Err(OracleError::Inconsistent("unit part vanishes at Q".into()));
        }
        let key = (gp, u.index());
        let (f, count) = match ext.shapes.get(&key) {
            Some(&s) => s,
            None => {
                let y = ext.ring.sub(
                    &Poly::monomial(FieldElement::ONE, gp as usize),
                    &Poly::constant(u),
                );
                let fact = ext.ring.factor(&y)?;
                let degree = fact.factors[0].0.degree();
                if fact.factors.iter().any(|(p, k)| *k != 1 || p.degree() != degree) {
                    return Err(OracleError::Inconsistent(format!(
                        "Y^{gp} - u has unequal or repeated factors"
                    )));
                }
                let s = (degree as u32, fact.factors.len() as u32);
                ext.shapes.insert(key, s);
                s
            }
        };
        Ok(SplittingData {
            e: n / gp,
            f,
            g: count,
        })
    }

    /// The splitting type at infinity, read off at `S = 0` after `T = 1/S`:
    /// `W = S^{n ceil(deg D / n)} D(1/S)`.
    pub fn split_at_infinity(&mut self, n: u32, d: &Poly) -> Result<SplittingData, OracleError> {
        let deg = d.deg().expect("nonzero");
        let k = deg.div_ceil(n as usize) * n as usize - deg;
        let mut coeffs = vec![FieldElement::ZERO; k];
        coeffs.extend(d.coeffs().iter().rev());
        let w = Poly::from_coeffs(coeffs);
        let s = MonicIrreducible::new_unchecked(Poly::x());
        self.split(n, &w, &s)
    }
}

/// Oracle splitting type of a finite place.
pub fn splitting_oracle(
    datum: &KummerDatum,
    q: &MonicIrreducible,
) -> Result<SplittingData, OracleError> {
    residue_field_size(datum.field(), q)?;
    SplittingOracle::new(datum.field()).split(datum.n(), datum.d(), q)
}

/// Oracle splitting type at infinity.
pub fn infinity_oracle(datum: &KummerDatum) -> Result<SplittingData, OracleError> {
    SplittingOracle::new(datum.field()).split_at_infinity(datum.n(), datum.d())
}

/// A random datum of degree exactly `n`: up to three ramified primes of degree
/// at most three, a random constant, and sometimes an extra `n`-th power that
/// normalization has to strip.
pub fn random_datum(field: &FqField, n: u32, rng: &mut ChaCha8Rng) -> KummerDatum {
    let ring = PolyRing::new(field.clone());
    let q = field.order();
    loop {
        let gamma = field.element(rng.gen_range(1..q)).expect("in range");
        let r = if n == 1 { 0 } else { rng.gen_range(0..=3) };
        let mut d = Poly::constant(gamma);
        let mut used: Vec<Poly> = Vec::new();
        while used.len() < r {
            let deg = rng.gen_range(1..=3usize);
            let idx = rng.gen_range(0..q.pow(deg as u32));
            let p = ring.monic_of_degree(deg, idx);
            if used.contains(&p) || !ring.is_irreducible(&p).expect("non-constant") {
                continue;
            }
            let alpha = rng.gen_range(1..n);
            d = ring.mul(&d, &ring.pow(&p, alpha as u64));
            used.push(p);
        }
        if rng.gen_ratio(1, 4) {
            let extra = ring.monic_of_degree(1, rng.gen_range(0..q));
            d = ring.mul(&d, &ring.pow(&extra, n as u64));
        }
        match KummerDatum::normalize(field, n, &d) {
            Ok(datum) => return datum,
            Err(KummerError::Degenerate { .. }) => continue,
            Err(e) => panic!("random datum construction failed: {e}"),
        }
    }
}

fn pair_seed(seed: u64, q: u64, n: u32) -> u64 {
    seed ^ q.rotate_left(40) ^ (n as u64).rotate_left(20)
}

/// `per_pair` seeded data for each `q` and each `n | q - 1` with `n <= max_n`.
pub fn sweep_data(
    q_list: &[u64],
    max_n: u32,
    per_pair: usize,
    seed: u64,
) -> Result<Vec<KummerDatum>, FieldError> {
    let mut out = Vec::new();
    for &q in q_list {
        let field = FqField::with_order(q)?;
        for n in divisors(q - 1).into_iter().filter(|&n| n <= max_n as u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(pair_seed(seed, q, n as u32));
            for _ in 0..per_pair {
                out.push(random_datum(&field, n as u32, &mut rng));
            }
        }
    }
    Ok(out)
}

pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Failures kept in full; further ones are only counted.
pub const MAX_RECORDED_FAILURES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub check: String,
    pub inputs: BTreeMap<String, String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub campaign: String,
    pub parameters: serde_json::Value,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<SweepFailure>,
    pub tallies: BTreeMap<String, u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn new(campaign: &str, parameters: serde_json::Value) -> SweepReport {
        SweepReport {
            campaign: campaign.to_string(),
            parameters,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            tallies: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn tally(&mut self, key: impl Into<String>, by: u64) {
        *self.tallies.entry(key.into()).or_insert(0) += by;
    }

    pub fn fail(&mut self, check: &str, inputs: &[(&str, String)], detail: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(SweepFailure {
                check: check.to_string(),
                inputs: inputs
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect(),
                detail: detail.into(),
            });
        }
    }

    fn expect(&mut self, ok: bool, check: &str, inputs: impl FnOnce() -> Vec<(&'static str, String)>, detail: impl FnOnce() -> String) {
        if !ok {
            self.fail(check, &inputs(), detail());
        }
    }

    /// Appends `other` under its own campaign name.
    pub fn merge(&mut self, other: SweepReport) {
        self.cases += other.cases;
        self.elapsed += other.elapsed;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
        self.failure_count += other.failure_count;
        for (k, v) in other.tallies {
            self.tally(format!("{}.{}", other.campaign, k), v);
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} cases, {} failures, {:.2?}",
            self.campaign, self.cases, self.failure_count, self.elapsed
        )
    }
}

fn datum_inputs(datum: &KummerDatum) -> Vec<(&'static str, String)> {
    vec![
        ("q", datum.field().order().to_string()),
        ("n", datum.n().to_string()),
        ("D", datum.ring().format(datum.d())),
    ]
}

fn timed(mut report: SweepReport, start: Instant) -> SweepReport {
    report.elapsed = start.elapsed();
    report
}

/// Degrees, ambiguous class count, Galois structure and the ramification of
/// the genus field over `K`.
pub fn genus_structure_campaign(data: &[KummerDatum]) -> SweepReport {
    let start = Instant::now();
    let mut rep = SweepReport::new("genus_structure", json!({ "data": data.len() }));
    for datum in data {
        rep.cases += 1;
        let degrees = genus_degrees(datum);
        let e: Vec<u64> = datum
            .ramified_primes()
            .map(|p| datum.ramification_index(p) as u64)
            .collect();
        let prod: u64 = e.iter().product();
        let inputs = || datum_inputs(datum);
        rep.expect(degrees.over_k == datum.n() as u64 * prod, "degree over k", inputs, || {
            format!("{} != n*prod e_i = {}", degrees.over_k, datum.n() as u64 * prod)
        });
        rep.expect(degrees.over_big_k == prod, "degree over K", inputs, || {
            format!("{} != prod e_i = {prod}", degrees.over_big_k)
        });
        let amb = ambiguous_class_count(datum);
        rep.expect(amb == degrees.over_big_k, "ambiguous classes", inputs, || {
            format!("{amb} != [K_g:K] = {}", degrees.over_big_k)
        });
        let gal: u64 = galois_structure(datum).iter().map(|&x| x as u64).product();
        rep.expect(gal == degrees.over_k, "galois structure", inputs, || {
            format!("product of invariants {gal} != {}", degrees.over_k)
        });
        let gf = genus_field(datum);
        rep.expect(gf.constant_degree() == datum.n(), "constant field", inputs, || {
            format!("constant degree {}", gf.constant_degree())
        });
        for (p, alpha) in datum.ram() {
            let ek = datum.ramification_index(p);
            let eg = gf.ramification_index(p);
            rep.expect(
                ek == eg && ek == datum.n() / datum.n().gcd(alpha) && datum.n() % ek == 0,
                "ramification in genus field",
                inputs,
                || format!("{}: e in K {ek}, lcm in genus field {eg}", datum.ring().format(p.poly())),
            );
        }
        rep.expect(datum.invariants().ik_over_ik == amb, "ideal quotient", inputs, || {
            format!("|I_K/I_k| {} != {amb}", datum.invariants().ik_over_ik)
        });
    }
    timed(rep, start)
}

/// Index formulas derived from the splitting at infinity.
pub fn index_campaign(data: &[KummerDatum]) -> SweepReport {
    let start = Instant::now();
    let mut rep = SweepReport::new("indices", json!({ "data": data.len() }));
    for datum in data {
        rep.cases += 1;
        let n = datum.n() as u64;
        let inf = datum.infinity_splitting();
        let ef = (inf.e * inf.f) as u64;
        let inv = datum.invariants();
        let inputs = || datum_inputs(datum);
        rep.expect(
            (n * n).is_multiple_of(ef) && inv.delta_index * ef == n * n,
            "delta index",
            inputs,
            || format!("delta {} with e_inf f_inf = {ef}", inv.delta_index),
        );
        rep.expect(inv.h1_u_plus == inv.delta_index, "H^1(G, U_K^+)", inputs, || {
            format!("{} != {}", inv.h1_u_plus, inv.delta_index)
        });
        rep.expect(
            *inv.herbrand_u.numer() * n == ef * *inv.herbrand_u.denom(),
            "Herbrand quotient",
            inputs,
            || format!("{} != {ef}/{n}", inv.herbrand_u),
        );
        rep.expect(inv.kinf_mod_n_order == n * n, "k_inf^*/k_inf^*n", inputs, || {
            format!("{}", inv.kinf_mod_n_order)
        });
        let prod: u64 = datum
            .ramified_primes()
            .map(|p| datum.ramification_index(p) as u64)
            .product();
        rep.expect(inv.ik_over_ik == prod, "|I_K/I_k|", inputs, || {
            format!("{} != {prod}", inv.ik_over_ik)
        });
        rep.expect(
            inv.unit_index_divides as u64 == n,
            "unit index bound",
            inputs,
            || format!("{}", inv.unit_index_divides),
        );
        let inert = inf.e == 1 && inf.f == datum.n();
        if inert {
            rep.tally("inert_infinity", 1);
        }
        rep.expect(
            inv.unit_index_exact == inert.then_some(1),
            "unit index at inert infinity",
            inputs,
            || format!("{:?} with {inf}", inv.unit_index_exact),
        );
    }
    timed(rep, start)
}

fn irreducibles_within(ring: &PolyRing, bound: u64) -> Vec<MonicIrreducible> {
    let q = ring.field().order();
    let mut max_deg = 0;
    while (q as u128).pow(max_deg as u32 + 1) <= bound as u128 {
        max_deg += 1;
    }
    ring.irreducibles(max_deg).collect()
}

/// Closed-form splitting against the factorization oracle at every finite place
/// with residue field of size at most `bound`, at the ramified primes and at
/// infinity.
pub fn splitting_campaign(data: &[KummerDatum], bound: u64) -> SweepReport {
    let start = Instant::now();
    let mut rep = SweepReport::new(
        "splitting",
        json!({ "data": data.len(), "residue_field_bound": bound }),
    );
    let mut oracles: Vec<(SplittingOracle, Vec<MonicIrreducible>)> = Vec::new();
    for datum in data {
        let slot = match oracles.iter().position(|(o, _)| o.field() == datum.field()) {
            Some(i) => i,
            None => {
                let ring = datum.ring();
                oracles.push((
                    SplittingOracle::new(datum.field()),
                    irreducibles_within(ring, bound.min(ORACLE_BOUND)),
                ));
                oracles.len() - 1
            }
        };
        let (oracle, primes) = &mut oracles[slot];
        let mut places: Vec<MonicIrreducible> = primes.clone();
        for p in datum.ramified_primes() {
            if residue_field_size(datum.field(), p).is_ok() && !places.contains(p) {
                places.push(p.clone());
            }
        }
        for q in &places {
            rep.cases += 1;
            let inputs = || {
                let mut v = datum_inputs(datum);
                v.push(("Q", datum.ring().format(q.poly())));
                v
            };
            let closed = match datum.local_splitting(&Place::Finite(q.clone())) {
                Ok(s) => s,
                Err(e) => {
                    rep.fail("closed form", &inputs(), e.to_string());
                    continue;
                }
            };
            match oracle.split(datum.n(), datum.d(), q) {
                Ok(o) => rep.expect(o == closed, "oracle agreement", inputs, || {
                    format!("closed form {closed}, oracle {o}")
                }),
                Err(e) => rep.fail("oracle", &inputs(), e.to_string()),
            }
            rep.expect(closed.e * closed.f * closed.g == datum.n(), "efg = n", inputs, || {
                closed.to_string()
            });
            if closed.e == 1 {
                match residue_symbol(datum.ring(), datum.d(), q, datum.n()) {
                    Ok(s) => rep.expect(s.order() == closed.f, "f = symbol order", inputs, || {
                        format!("f={} but ({})_n = {s}", closed.f, datum.ring().format(datum.d()))
                    }),
                    Err(e) => rep.fail("residue symbol", &inputs(), e.to_string()),
                }
            } else {
                rep.tally("ramified_places", 1);
            }
        }
        rep.cases += 1;
        let closed = datum.infinity_splitting();
        match oracle.split_at_infinity(datum.n(), datum.d()) {
            Ok(o) => rep.expect(o == closed, "oracle agreement at infinity", || datum_inputs(datum), || {
                format!("closed form {closed}, oracle {o}")
            }),
            Err(e) => rep.fail("oracle at infinity", &datum_inputs(datum), e.to_string()),
        }
        rep.expect(
            closed.e * closed.f * closed.g == datum.n(),
            "efg = n at infinity",
            || datum_inputs(datum),
            || closed.to_string(),
        );
    }
    timed(rep, start)
}

/// Both genus splitting criteria on every unramified prime of degree at most
/// `max_degree`; inert primes must split fully and satisfy the norm condition
/// with `beta = Q`.
pub fn decomposition_campaign(data: &[KummerDatum], max_degree: usize) -> SweepReport {
    let start = Instant::now();
    let mut rep = SweepReport::new(
        "decomposition",
        json!({ "data": data.len(), "max_degree": max_degree }),
    );
    let mut primes: Vec<(FqField, Vec<MonicIrreducible>)> = Vec::new();
    for datum in data {
        if !primes.iter().any(|(f, _)| f == datum.field()) {
            primes.push((datum.field().clone(), datum.ring().irreducibles(max_degree).collect()));
        }
        let list = &primes.iter().find(|(f, _)| f == datum.field()).expect("present").1;
        for q in list {
            let inputs = || {
                let mut v = datum_inputs(datum);
                v.push(("Q", datum.ring().format(q.poly())));
                v
            };
            let prime = match PrimeOfK::above(datum, q) {
                Ok(p) => p,
                Err(e) => {
                    rep.fail("splitting", &inputs(), e.to_string());
                    continue;
                }
            };
            if prime.e != 1 {
                continue;
            }
            rep.cases += 1;
            let (via_b, direct) = match (
                splits_fully_in_genus_via_b(datum, &prime),
                splits_fully_in_genus_direct(datum, &prime),
            ) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    rep.fail("criterion", &inputs(), e.to_string());
                    continue;
                }
            };
            rep.expect(via_b == direct, "via B = direct", inputs, || {
                format!("via B {via_b}, direct {direct}")
            });
            if via_b {
                rep.tally("fully_split", 1);
            }
            if datum.ram().is_empty() {
                let expected = prime.norm_degree() % datum.n() as u64 == 0;
                rep.expect(via_b == expected, "constant field criterion", inputs, || {
                    format!("via B {via_b}, n | f deg Q is {expected}")
                });
            }
            if prime.f == datum.n() {
                if datum.n() > 1 {
                    rep.tally("inert", 1);
                }
                rep.expect(via_b && direct, "inert primes split fully", inputs, || {
                    format!("via B {via_b}, direct {direct}")
                });
                let beta = vec![(q.poly().clone(), Poly::one())];
                match norm_condition_kh_plus(datum, &prime, &beta) {
                    Ok(ok) => rep.expect(ok, "norm condition for inert Q", inputs, || {
                        "N(Q) = Q^n not in k_inf^*n".to_string()
                    }),
                    Err(e) => rep.fail("norm condition", &inputs(), e.to_string()),
                }
            }
        }
    }
    timed(rep, start)
}

fn field_list(q_list: &[u64], rep: &mut SweepReport) -> Vec<FqField> {
    let mut out = Vec::new();
    for &q in q_list {
        match FqField::with_order(q) {
            Ok(f) => out.push(f),
            Err(e) => rep.fail("field", &[("q", q.to_string())], e.to_string()),
        }
    }
    out
}

/// Residue symbols against enumeration of `n`-th powers, for every monic
/// irreducible `Q` with `q^deg Q <= residue_bound` and every nonzero `D` of
/// degree at most `d_degree` prime to `Q`; multiplicativity over all pairs of
/// such `D`; and `(a/Q)_n = a^((q^d - 1)/n)` for constants.
pub fn residue_symbol_sweep(q_list: &[u64], residue_bound: u64, d_degree: usize) -> SweepReport {
    let start = Instant::now();
    let mut rep = SweepReport::new(
        "residue_symbols",
        json!({ "q": q_list, "residue_field_bound": residue_bound, "d_degree": d_degree }),
    );
    for field in field_list(q_list, &mut rep) {
        let ring = PolyRing::new(field.clone());
        let q = field.order();
        let ns: Vec<u32> = divisors(q - 1).into_iter().map(|n| n as u32).collect();
        let ds: Vec<Poly> = (1..q.pow(d_degree as u32 + 1))
            .map(|i| residue_from_index(&field, i))
            .collect();
        for qq in irreducibles_within(&ring, residue_bound.min(ORACLE_BOUND)) {
            let size = q.pow(qq.degree() as u32);
            let qname = ring.format(qq.poly());
            // symbols[i][k]: symbol of residue i for ns[k]
            let mut residue_symbols = vec![Vec::new(); size as usize];
            for (idx, slot) in residue_symbols.iter_mut().enumerate().skip(1) {
                let r = residue_from_index(&field, idx as u64);
                for &n in &ns {
                    match residue_symbol(&ring, &r, &qq, n) {
                        Ok(s) => slot.push(s),
                        Err(e) => {
                            rep.fail("symbol of residue", &[("Q", qname.clone())], e.to_string());
                            slot.push(RootOfUnity::one(n));
                        }
                    }
                }
            }
            for (k, &n) in ns.iter().enumerate() {
                let table = match NthPowerTable::new(&ring, &qq, n) {
                    Ok(t) => t,
                    Err(e) => {
                        rep.fail("oracle", &[("Q", qname.clone())], e.to_string());
                        continue;
                    }
                };
                for d in &ds {
                    let r = ring.rem(d, qq.poly()).expect("nonzero modulus");
                    if r.is_zero() {
                        continue;
                    }
                    rep.cases += 1;
                    let inputs = || {
                        vec![
                            ("q", q.to_string()),
                            ("n", n.to_string()),
                            ("D", ring.format(d)),
                            ("Q", qname.clone()),
                        ]
                    };
                    let s = match residue_symbol(&ring, d, &qq, n) {
                        Ok(s) => s,
                        Err(e) => {
                            rep.fail("residue symbol", &inputs(), e.to_string());
                            continue;
                        }
                    };
                    let oracle = table.contains(&ring, d).expect("coprime");
                    rep.expect(s.is_one() == oracle, "power residue oracle", inputs, || {
                        format!("symbol {s}, oracle says n-th power: {oracle}")
                    });
                    let by_residue = residue_symbols[residue_index(q, &r)][k];
                    rep.expect(s == by_residue, "depends on D mod Q", inputs, || {
                        format!("{s} vs {by_residue}")
                    });
                    if d.is_constant() {
                        let exp = (size as u128 - 1) / n as u128;
                        let expected = field.root_of_unity(n, field.pow(d.coeff(0), exp));
                        rep.expect(expected == Ok(s), "constant formula", inputs, || {
                            format!("{s} vs {expected:?}")
                        });
                    }
                }
            }
            multiplicativity(&mut rep, &ring, &qq, &ns, &ds, &residue_symbols);
        }
    }
    timed(rep, start)
}

fn multiplicativity(
    rep: &mut SweepReport,
    ring: &PolyRing,
    qq: &MonicIrreducible,
    ns: &[u32],
    ds: &[Poly],
    residue_symbols: &[Vec<RootOfUnity>],
) {
    let q = ring.field().order();
    let size = residue_symbols.len();
    let coprime: Vec<(usize, &Poly, Vec<RootOfUnity>)> = ds
        .iter()
        .filter_map(|d| {
            let r = ring.rem(d, qq.poly()).expect("nonzero modulus");
            if r.is_zero() {
                return None;
            }
            let syms = ns
                .iter()
                .map(|&n| residue_symbol(ring, d, qq, n).unwrap_or(RootOfUnity::one(n)))
                .collect();
            Some((residue_index(q, &r), d, syms))
        })
        .collect();
    // product residue index, memoized per residue pair
    let mut products = vec![u32::MAX; size * size];
    for (i, (ri, ci, si)) in coprime.iter().enumerate() {
        for (rj, cj, sj) in &coprime[i..] {
            rep.cases += 1;
            let slot = &mut products[ri * size + rj];
            if *slot == u32::MAX {
                let a = residue_from_index(ring.field(), *ri as u64);
                let b = residue_from_index(ring.field(), *rj as u64);
                *slot = residue_index(q, &ring.mulmod(&a, &b, qq.poly())) as u32;
            }
            let prod = &residue_symbols[*slot as usize];
            for k in 0..ns.len() {
                if si[k].mul(sj[k]) != prod[k] {
                    rep.fail(
                        "multiplicativity",
                        &[
                            ("n", ns[k].to_string()),
                            ("C", ring.format(ci)),
                            ("D", ring.format(cj)),
                            ("Q", ring.format(qq.poly())),
                        ],
                        format!("{} * {} != {}", si[k], sj[k], prod[k]),
                    );
                }
            }
        }
    }
}

fn monics_up_to(ring: &PolyRing, degree: usize) -> Vec<Poly> {
    (0..=degree).flat_map(|d| ring.monics_of_degree(d)).collect()
}

/// `prod_v (R, S)_v = 1` for every ordered coprime pair of monic polynomials of
/// degree at most `degree_bound` and every `n | q - 1`.
pub fn product_formula_sweep(q_list: &[u64], degree_bound: usize) -> SweepReport {
    let start = Instant::now();
    let mut rep = SweepReport::new(
        "product_formula",
        json!({ "q": q_list, "degree_bound": degree_bound }),
    );
    for field in field_list(q_list, &mut rep) {
        let ring = PolyRing::new(field.clone());
        let q = field.order();
        let monics = monics_up_to(&ring, degree_bound);
        let supports: Vec<Vec<MonicIrreducible>> = monics
            .iter()
            .map(|m| match m.is_constant() {
                true => Vec::new(),
                false => ring
                    .factor(m)
                    .expect("nonzero")
                    .factors
                    .into_iter()
                    .map(|(p, _)| p)
                    .collect(),
            })
            .collect();
        for &n in &divisors(q - 1) {
            let n = n as u32;
            for (r, r_support) in monics.iter().zip(&supports) {
                for (s, s_support) in monics.iter().zip(&supports) {
                    let support: Vec<MonicIrreducible> =
                        r_support.iter().chain(s_support).cloned().collect();
                    let result = product_formula_over(&ring, r, s, &support, n);
                    if let Err(SymbolError::CommonFactor(..)) = result {
                        continue;
                    }
                    rep.cases += 1;
                    let inputs = || {
                        vec![
                            ("q", q.to_string()),
                            ("n", n.to_string()),
                            ("R", ring.format(r)),
                            ("S", ring.format(s)),
                        ]
                    };
                    match result {
                        Ok(pf) => rep.expect(pf.holds, "product formula", inputs, || {
                            pf.table
                                .iter()
                                .map(|(p, v)| format!("{}:{v}", place_name(&ring, p)))
                                .collect::<Vec<_>>()
                                .join(" ")
                        }),
                        Err(e) => rep.fail("product formula", &inputs(), e.to_string()),
                    }
                }
            }
        }
    }
    timed(rep, start)
}

pub fn place_name(ring: &PolyRing, place: &Place) -> String {
    match place {
        Place::Finite(p) => ring.format(p.poly()),
        Place::Infinity => "inf".to_string(),
    }
}

/// The reciprocity relation in its signed form for every ordered pair of
/// distinct monic irreducibles of degree at most `degree_bound` and every
/// `n | q - 1`. Cases where the unsigned equality fails are tallied per
/// `(q, n)` and are not failures.
pub fn reciprocity_sweep(q_list: &[u64], degree_bound: usize) -> SweepReport {
    let start = Instant::now();
    let mut rep = SweepReport::new(
        "reciprocity",
        json!({ "q": q_list, "degree_bound": degree_bound }),
    );
    for field in field_list(q_list, &mut rep) {
        let ring = PolyRing::new(field.clone());
        let q = field.order();
        let primes: Vec<MonicIrreducible> = ring.irreducibles(degree_bound).collect();
        for &n in &divisors(q - 1) {
            let n = n as u32;
            let mut unsigned_failures = 0;
            for a in &primes {
                for b in &primes {
                    if a == b {
                        continue;
                    }
                    rep.cases += 1;
                    let inputs = || {
                        vec![
                            ("q", q.to_string()),
                            ("n", n.to_string()),
                            ("Q", ring.format(a.poly())),
                            ("R", ring.format(b.poly())),
                        ]
                    };
                    match reciprocity_relation(&ring, a, b, n) {
                        Ok(rec) => {
                            if !rec.unsigned_equality_holds {
                                unsigned_failures += 1;
                            }
                            rep.expect(rec.carlitz_equality_holds, "signed reciprocity", inputs, || {
                                format!("lhs {}, sign factor {}", rec.lhs, rec.sign_factor)
                            });
                        }
                        Err(e) => rep.fail("reciprocity", &inputs(), e.to_string()),
                    }
                }
            }
            rep.tally("unsigned_equality_failures", unsigned_failures);
            rep.tally(format!("unsigned_equality_failures[q={q},n={n}]"), unsigned_failures);
        }
    }
    timed(rep, start)
}

/// Seeded data for every `q` in the list and every `n | q - 1` up to 12, then
/// the genus, splitting, decomposition and index campaigns over them.
pub fn genus_consistency_sweep(q_list: &[u64], datum_count: usize, seed: u64) -> SweepReport {
    let start = Instant::now();
    let mut rep = SweepReport::new(
        "genus_consistency",
        json!({ "q": q_list, "datum_count": datum_count, "seed": seed }),
    );
    let data = match sweep_data(q_list, 12, datum_count, seed) {
        Ok(d) => d,
        Err(e) => {
            rep.fail("field", &[], e.to_string());
            return timed(rep, start);
        }
    };
    rep.merge(genus_structure_campaign(&data));
    rep.merge(splitting_campaign(&data, ORACLE_BOUND));
    rep.merge(decomposition_campaign(&data, 3));
    rep.merge(index_campaign(&data));
    timed(rep, start)
}

/// Residue symbols and the product formula.
pub fn symbols_sweep(q_list: &[u64], residue_bound: u64, degree_bound: usize) -> SweepReport {
    let start = Instant::now();
    let mut rep = SweepReport::new(
        "symbols",
        json!({ "q": q_list, "residue_field_bound": residue_bound, "degree_bound": degree_bound }),
    );
    rep.merge(residue_symbol_sweep(q_list, residue_bound, 2));
    rep.merge(product_formula_sweep(q_list, degree_bound));
    timed(rep, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(q: u64) -> PolyRing {
        PolyRing::new(FqField::with_order(q).unwrap())
    }

    fn prime(r: &PolyRing, s: &str) -> MonicIrreducible {
        r.monic_irreducible(r.parse(s).unwrap()).unwrap()
    }

    fn datum(q: u64, n: u32, d: &str) -> KummerDatum {
        let f = FqField::with_order(q).unwrap();
        let d = PolyRing::new(f.clone()).parse(d).unwrap();
        KummerDatum::normalize(&f, n, &d).unwrap()
    }

    fn efg(s: SplittingData) -> (u32, u32, u32) {
        (s.e, s.f, s.g)
    }

    #[test]
    fn power_residue_oracle_examples() {
        let r = setup(5);
        let t = Poly::x();
        assert!(power_residue_oracle(&r, &t, &prime(&r, "T+1"), 2).unwrap());
        assert!(!power_residue_oracle(&r, &t, &prime(&r, "T+2"), 2).unwrap());
        assert!(power_residue_oracle(&r, &r.parse("T^2+T+1").unwrap(), &prime(&r, "T"), 4).unwrap());
        assert!(matches!(
            power_residue_oracle(&r, &t, &prime(&r, "T"), 2),
            Err(OracleError::CommonFactor(_))
        ));
        let big = r.irreducibles_of_degree(6).next().unwrap();
        assert!(matches!(
            power_residue_oracle(&r, &t, &big, 2),
            Err(OracleError::RangeExceeded { .. })
        ));
    }

    #[test]
    fn splitting_oracle_examples() {
        let d = datum(5, 2, "T");
        let r = d.ring().clone();
        assert_eq!(efg(splitting_oracle(&d, &prime(&r, "T+1")).unwrap()), (1, 1, 2));
        assert_eq!(efg(splitting_oracle(&d, &prime(&r, "T+2")).unwrap()), (1, 2, 1));
        assert_eq!(efg(splitting_oracle(&d, &prime(&r, "T")).unwrap()), (2, 1, 1));
    }

    #[test]
    fn infinity_oracle_examples() {
        assert_eq!(efg(infinity_oracle(&datum(5, 2, "T")).unwrap()), (2, 1, 1));
        assert_eq!(efg(infinity_oracle(&datum(5, 2, "2")).unwrap()), (1, 2, 1));
        assert_eq!(efg(infinity_oracle(&datum(5, 2, "T*(T+1)")).unwrap()), (1, 1, 2));
    }

    #[test]
    fn oracle_in_extension_fields() {
        // residue fields F_{9^2} and F_{8^3} need the embedding of F_q
        let d = datum(9, 4, "g*T*(T^2+g)^2");
        let mut oracle = SplittingOracle::new(d.field());
        for q in d.ring().irreducibles(2) {
            let closed = d.local_splitting(&Place::Finite(q.clone())).unwrap();
            assert_eq!(oracle.split(4, d.d(), &q).unwrap(), closed);
        }
        let d = datum(8, 7, "g*T^3*(T+1)");
        let mut oracle = SplittingOracle::new(d.field());
        for q in d.ring().irreducibles(3) {
            let closed = d.local_splitting(&Place::Finite(q.clone())).unwrap();
            assert_eq!(oracle.split(7, d.d(), &q).unwrap(), closed);
        }
    }

    #[test]
    fn reciprocity_sweep_examples() {
        let rep = reciprocity_sweep(&[5], 2);
        assert!(rep.passed());
        let rep = reciprocity_sweep(&[7], 1);
        assert!(rep.passed());
        assert!(rep.tallies["unsigned_equality_failures[q=7,n=2]"] > 0);
        let rep = reciprocity_sweep(&[], 3);
        assert_eq!((rep.cases, rep.failure_count), (0, 0));
    }

    #[test]
    fn genus_sweep_is_deterministic() {
        let a = genus_consistency_sweep(&[3, 5], 3, 7);
        let b = genus_consistency_sweep(&[3, 5], 3, 7);
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        let empty = genus_consistency_sweep(&[3, 5], 0, 7);
        assert_eq!(empty.cases, 0);
    }

    #[test]
    fn random_data_have_full_degree() {
        let f = FqField::with_order(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [2, 3, 4, 6, 12] {
            for _ in 0..10 {
                let d = random_datum(&f, n, &mut rng);
                assert_eq!(d.n(), n);
                assert_eq!(KummerDatum::normalize(&f, n, d.d()).unwrap(), d);
            }
        }
    }

    #[test]
    fn failures_are_capped_but_counted() {
        let mut rep = SweepReport::new("x", json!({}));
        for _ in 0..MAX_RECORDED_FAILURES + 5 {
            rep.fail("c", &[], "d");
        }
        assert_eq!(rep.failures.len(), MAX_RECORDED_FAILURES);
        assert_eq!(rep.failure_count, MAX_RECORDED_FAILURES as u64 + 5);
        assert!(!rep.passed());
    }
}
