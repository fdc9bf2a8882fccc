use proptest::prelude::*;

use kummer_genus::decomposition::{
    norm_condition_kh_plus, splits_fully_in_genus_direct, splits_fully_in_genus_via_b, PrimeOfK,
};
use kummer_genus::genus::{ambiguous_class_count, galois_structure, genus_degrees};
use kummer_genus::symbols::{
    hilbert_symbol, product_formula_check, reciprocity_relation, residue_symbol,
};
use kummer_genus::verify::{infinity_oracle, random_datum, splitting_oracle};
use kummer_genus::{FieldElement, FqField, KummerDatum, MonicIrreducible, Place, Poly, PolyRing};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [u64; 8] = [3, 4, 5, 7, 8, 9, 11, 13];

fn field(i: usize) -> FqField {
    FqField::with_order(FIELDS[i % FIELDS.len()]).unwrap()
}

fn poly(f: &FqField, idx: &[u64]) -> Poly {
    Poly::from_coeffs(idx.iter().map(|&i| f.element(i % f.order()).unwrap()).collect())
}

fn divisors(m: u64) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).map(|d| d as u32).collect()
}

fn nth_divisor(f: &FqField, k: usize) -> u32 {
    let ds = divisors(f.order() - 1);
    ds[k % ds.len()]
}

fn some_prime(ring: &PolyRing, deg: usize, idx: u64) -> MonicIrreducible {
    let list: Vec<_> = ring.irreducibles_of_degree(deg).collect();
    list[(idx % list.len() as u64) as usize].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0usize..8, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let f = field(fi);
        let q = f.order();
        let (a, b, c) = (f.element(a % q).unwrap(), f.element(b % q).unwrap(), f.element(c % q).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
        if !a.is_zero() {
            prop_assert!(f.mul(a, f.inv(a).unwrap()).is_one());
            prop_assert_eq!(f.pow(a, q as u128 - 1), FieldElement::ONE);
            prop_assert_eq!(f.pow(f.xi(), f.discrete_log(a).unwrap() as u128), a);
        }
        prop_assert_eq!(f.parse_element(&f.format_element(a)).unwrap(), a);
    }

    #[test]
    fn division_and_factorization(fi in 0usize..8, a in prop::collection::vec(0u64..200, 1..9), b in prop::collection::vec(0u64..200, 1..5)) {
        let f = field(fi);
        let r = PolyRing::new(f.clone());
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assume!(!b.is_zero());
        let (quot, rem) = r.divmod(&a, &b).unwrap();
        prop_assert_eq!(r.add(&r.mul(&quot, &b), &rem), a.clone());
        prop_assert!(rem.degree() < b.degree());
        if !a.is_zero() {
            let fact = r.factor(&a).unwrap();
            prop_assert_eq!(r.expand(&fact), a.clone());
            for (p, _) in &fact.factors {
                prop_assert!(r.is_irreducible(p.poly()).unwrap());
            }
            prop_assert_eq!(r.parse(&r.format(&a)).unwrap(), a);
        }
    }

    #[test]
    fn splitting_matches_oracles(fi in 0usize..8, k in 0usize..12, seed in any::<u64>(), deg in 1usize..3, qi in any::<u64>()) {
        let f = field(fi);
        let n = nth_divisor(&f, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let datum = random_datum(&f, n, &mut rng);
        let q = some_prime(datum.ring(), deg, qi);
        let s = datum.local_splitting(&Place::Finite(q.clone())).unwrap();
        prop_assert_eq!(s.e * s.f * s.g, n);
        prop_assert_eq!(splitting_oracle(&datum, &q).unwrap(), s);
        prop_assert_eq!(infinity_oracle(&datum).unwrap(), datum.infinity_splitting());
        prop_assert_eq!(KummerDatum::normalize(&f, n, datum.d()).unwrap(), datum.clone());
        let inv = datum.invariants();
        let inf = datum.infinity_splitting();
        prop_assert_eq!(inv.delta_index * (inf.e * inf.f) as u64, (n * n) as u64);
    }

    #[test]
    fn genus_identities(fi in 0usize..8, k in 0usize..12, seed in any::<u64>()) {
        let f = field(fi);
        let n = nth_divisor(&f, k);
        let datum = random_datum(&f, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let deg = genus_degrees(&datum);
        prop_assert_eq!(ambiguous_class_count(&datum), deg.over_big_k);
        prop_assert_eq!(galois_structure(&datum).iter().map(|&x| x as u64).product::<u64>(), deg.over_k);
        prop_assert_eq!(datum.invariants().ik_over_ik, deg.over_big_k);
    }

    #[test]
    fn decomposition_criteria_agree(fi in 0usize..8, k in 0usize..12, seed in any::<u64>(), deg in 1usize..4, qi in any::<u64>()) {
        let f = field(fi);
        let n = nth_divisor(&f, k);
        let datum = random_datum(&f, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let q = some_prime(datum.ring(), deg, qi);
        let prime = PrimeOfK::above(&datum, &q).unwrap();
        prop_assume!(prime.e == 1);
        let via_b = splits_fully_in_genus_via_b(&datum, &prime).unwrap();
        prop_assert_eq!(via_b, splits_fully_in_genus_direct(&datum, &prime).unwrap());
        if prime.f == n {
            prop_assert!(via_b);
            let beta = vec![(q.poly().clone(), Poly::one())];
            prop_assert!(norm_condition_kh_plus(&datum, &prime, &beta).unwrap());
        }
    }

    #[test]
    fn symbol_laws(fi in 0usize..8, k in 0usize..12, c in prop::collection::vec(0u64..200, 1..5), d in prop::collection::vec(0u64..200, 1..5), deg in 1usize..4, qi in any::<u64>()) {
        let f = field(fi);
        let r = PolyRing::new(f.clone());
        let n = nth_divisor(&f, k);
        let q = some_prime(&r, deg, qi);
        let (c, d) = (poly(&f, &c), poly(&f, &d));
        prop_assume!(!r.rem(&c, q.poly()).unwrap().is_zero() && !r.rem(&d, q.poly()).unwrap().is_zero());
        let sc = residue_symbol(&r, &c, &q, n).unwrap();
        let sd = residue_symbol(&r, &d, &q, n).unwrap();
        prop_assert_eq!(sc.mul(sd), residue_symbol(&r, &r.mul(&c, &d), &q, n).unwrap());
        prop_assert_eq!(hilbert_symbol(&r, &d, q.poly(), &Place::Finite(q.clone()), n).unwrap(), sd);
    }

    #[test]
    fn product_formula_and_reciprocity(fi in 0usize..8, k in 0usize..12, a in prop::collection::vec(0u64..200, 1..6), b in prop::collection::vec(0u64..200, 1..6), d1 in 1usize..4, d2 in 1usize..4, i1 in any::<u64>(), i2 in any::<u64>()) {
        let f = field(fi);
        let r = PolyRing::new(f.clone());
        let n = nth_divisor(&f, k);
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assume!(!a.is_zero() && !b.is_zero() && r.gcd(&a, &b).is_one());
        prop_assert!(product_formula_check(&r, &a, &b, n).unwrap().holds);
        let (p1, p2) = (some_prime(&r, d1, i1), some_prime(&r, d2, i2));
        prop_assume!(p1 != p2);
        prop_assert!(reciprocity_relation(&r, &p1, &p2, n).unwrap().carlitz_equality_holds);
    }
}
