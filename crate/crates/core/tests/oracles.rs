//! Library results against small independent implementations that live only
//! here: schoolbook arithmetic in F_p[T] on plain vectors, Gauss's count of
//! irreducibles, and the closed norm form for quadratic extensions.

use kummer_genus::decomposition::norm_of_element;
use kummer_genus::symbols::residue_symbol;
use kummer_genus::{FqField, KummerDatum, Place, Poly, PolyRing};

/// Polynomials over F_p as coefficient vectors, lowest degree first.
type P = Vec<u64>;

fn trim(mut a: P) -> P {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mul(a: &P, b: &P, p: u64) -> P {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|x| a * x % p == 1).expect("unit")
}

fn rem(a: &P, m: &P, p: u64) -> P {
    let mut a = trim(a.clone());
    let lc_inv = inv_mod(*m.last().unwrap(), p);
    while a.len() >= m.len() {
        let c = a.last().unwrap() * lc_inv % p;
        let shift = a.len() - m.len();
        for (i, y) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p * p - c * y % p) % p;
        }
        a = trim(a);
    }
    a
}

/// `D^k mod Q` by repeated multiplication.
fn naive_pow(d: &P, k: u64, q: &P, p: u64) -> P {
    let base = rem(d, q, p);
    let mut acc = vec![1];
    for _ in 0..k {
        acc = rem(&mul(&acc, &base, p), q, p);
    }
    acc
}

fn to_poly(f: &FqField, a: &P) -> Poly {
    Poly::from_coeffs(a.iter().map(|&c| f.from_int(c as i64)).collect())
}

fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

fn gauss_count(q: u64, d: u64) -> u64 {
    let s: i64 = (1..=d)
        .filter(|k| d.is_multiple_of(*k))
        .map(|k| mobius(d / k) * (q as i64).pow(k as u32))
        .sum();
    (s / d as i64) as u64
}

#[test]
fn irreducible_counts_match_gauss() {
    for (q, max_d) in [(2, 8), (3, 5), (4, 4), (5, 3), (7, 3), (8, 3), (9, 2), (13, 2)] {
        let ring = PolyRing::new(FqField::with_order(q).unwrap());
        for d in 1..=max_d {
            assert_eq!(
                ring.irreducibles_of_degree(d).count() as u64,
                gauss_count(q, d as u64),
                "q={q} d={d}"
            );
        }
    }
}

#[test]
fn residue_symbols_match_schoolbook_powering() {
    for p in [3u64, 5, 7, 11] {
        let field = FqField::with_order(p).unwrap();
        let ring = PolyRing::new(field.clone());
        let qs: Vec<P> = vec![vec![1, 1], vec![2, 0, 1], vec![1, 1, 0, 1]];
        for qv in qs {
            let qpoly = to_poly(&field, &qv);
            let Ok(qq) = ring.monic_irreducible(qpoly) else {
                continue;
            };
            let size = p.pow(qq.degree() as u32);
            for n in (1..p).filter(|n| (p - 1) % n == 0) {
                for dv in [vec![0, 1], vec![3, 1, 1], vec![2], vec![1, 0, 0, 1]] {
                    let d = to_poly(&field, &dv);
                    if ring.rem(&d, qq.poly()).unwrap().is_zero() {
                        continue;
                    }
                    let naive = naive_pow(&dv, (size - 1) / n, &qv, p);
                    assert_eq!(naive.len(), 1, "power is a constant");
                    let s = residue_symbol(&ring, &d, &qq, n as u32).unwrap();
                    assert_eq!(field.root_value(s).index() as u64, naive[0], "p={p} n={n}");
                }
            }
        }
    }
}

/// Values computed by the schoolbook powering above, frozen.
#[test]
fn frozen_symbol_values() {
    let field = FqField::with_order(7).unwrap();
    let ring = PolyRing::new(field.clone());
    let q = ring.monic_irreducible(ring.parse("T^2+1").unwrap()).unwrap();
    // (T+3)^((49-1)/6) mod T^2+1 = 3, and 3 = xi^1 with xi = 3
    let s = residue_symbol(&ring, &ring.parse("T+3").unwrap(), &q, 6).unwrap();
    assert_eq!(naive_pow(&vec![3, 1], 8, &vec![1, 0, 1], 7), vec![3]);
    assert_eq!((s.exponent(), field.root_value(s).index()), (1, 3));
    // T^16 mod T^2+1 = 1
    let s = residue_symbol(&ring, &Poly::x(), &q, 3).unwrap();
    assert_eq!(naive_pow(&vec![0, 1], 16, &vec![1, 0, 1], 7), vec![1]);
    assert!(s.is_one());
}

#[test]
fn quadratic_norm_form() {
    // N(a + b sqrt(D)) = a^2 - b^2 D
    let field = FqField::with_order(5).unwrap();
    let ring = PolyRing::new(field.clone());
    let datum = KummerDatum::normalize(&field, 2, &ring.parse("T*(T+2)").unwrap()).unwrap();
    for (a, b) in [("T+1", "1"), ("3", "T^2"), ("T^3+2*T", "4*T+1"), ("0", "T")] {
        let (a, b) = (ring.parse(a).unwrap(), ring.parse(b).unwrap());
        let (num, den) = norm_of_element(&datum, &[(a.clone(), Poly::one()), (b.clone(), Poly::one())]).unwrap();
        assert!(den.is_one());
        let expected = ring.sub(&ring.mul(&a, &a), &ring.mul(&ring.mul(&b, &b), datum.d()));
        assert_eq!(num, expected);
    }
}

#[test]
fn splitting_counts_roots_for_linear_places() {
    // at Q = T - c with d = 1 the number of roots of X^n - D(c) in F_p gives e = 1, f = 1 exactly
    // when that count is n
    let p = 13u64;
    let field = FqField::with_order(p).unwrap();
    let ring = PolyRing::new(field.clone());
    let datum = KummerDatum::normalize(&field, 4, &ring.parse("2*T*(T^2+1)").unwrap()).unwrap();
    for c in 0..p {
        let dc = ring.eval(datum.d(), field.from_int(c as i64));
        if dc.is_zero() {
            continue;
        }
        let roots = (0..p)
            .filter(|&x| field.pow(field.from_int(x as i64), 4) == dc)
            .count() as u32;
        let q = ring
            .monic_irreducible(ring.sub(&Poly::x(), &Poly::constant(field.from_int(c as i64))))
            .unwrap();
        let s = datum.local_splitting(&Place::Finite(q)).unwrap();
        assert_eq!(s.e, 1);
        assert_eq!(s.f == 1, roots == 4, "c={c}");
        if s.f == 1 {
            assert_eq!(s.g, roots);
        }
    }
}
