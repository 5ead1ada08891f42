use noncomm_core::{make_field, FieldError, FieldSpec};
use proptest::prelude::*;

/// Fields with q <= 81 and q > 1 a prime power.
const SMALL: &[(u64, u32)] = &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (2, 5), (3, 4), (2, 6)];

#[test]
fn prime_field_and_gf4_moduli() {
    let gf2 = make_field(2, 1).unwrap();
    assert_eq!(gf2.modulus(), &[0, 1]);
    assert_eq!(gf2.q(), 2);
    let gf4 = make_field(2, 2).unwrap();
    assert_eq!(gf4.modulus(), &[1, 1, 1]);
}

#[test]
fn gf9_modulus_is_smallest_rootless_quadratic() {
    // oracle: monic quadratics c0 + c1 x + x^2 over GF(3), ordered by (c0, c1)
    let mut rootless = Vec::new();
    for c0 in 0..3u32 {
        for c1 in 0..3u32 {
            if (0..3u32).all(|t| (c0 + c1 * t + t * t) % 3 != 0) {
                rootless.push(vec![c0, c1, 1]);
            }
        }
    }
    assert_eq!(make_field(3, 2).unwrap().modulus(), rootless[0].as_slice());
}

#[test]
fn errors() {
    assert_eq!(make_field(4, 1).unwrap_err(), FieldError::NotPrime(4));
    assert_eq!(make_field(2, 9).unwrap_err(), FieldError::DegreeUnsupported(9));
    assert_eq!(make_field(2, 0).unwrap_err(), FieldError::DegreeUnsupported(0));
    let f = make_field(5, 1).unwrap();
    assert_eq!(f.inv(&f.zero()).unwrap_err(), FieldError::ZeroInverse);
    let g = make_field(3, 1).unwrap();
    assert_eq!(f.add(&f.one(), &g.one()).unwrap_err(), FieldError::FieldMismatch);
}

#[test]
fn small_examples() {
    let gf2 = make_field(2, 1).unwrap();
    assert_eq!(gf2.add(&gf2.one(), &gf2.one()).unwrap(), gf2.zero());
    let gf5 = make_field(5, 1).unwrap();
    assert_eq!(gf5.inv(&gf5.from_code(2)).unwrap(), gf5.from_code(3));
    let gf4 = make_field(2, 2).unwrap();
    let x = gf4.x();
    let x1 = gf4.add(&x, &gf4.one()).unwrap();
    assert_eq!(gf4.mul(&x, &x1).unwrap(), gf4.one());
}

/// Schoolbook product of coefficient vectors reduced by the monic modulus.
fn naive_mul(f: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p = f.p() as u64;
    let n = f.n() as usize;
    let mut prod = vec![0u64; 2 * n];
    for i in 0..n {
        for j in 0..n {
            prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
        }
    }
    let m = f.modulus();
    for d in (n..2 * n).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (k, &mk) in m.iter().enumerate() {
            let idx = d - n + k;
            prod[idx] = (prod[idx] + (p - c) * mk as u64 % p) % p;
        }
    }
    prod[..n].iter().map(|&c| c as u32).collect()
}

#[test]
fn multiplication_matches_naive_oracle() {
    for &(p, n) in &[(2, 2), (3, 2), (2, 3), (5, 2), (2, 4)] {
        let f = make_field(p, n).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(&a, &b).unwrap().coeffs(), naive_mul(&f, a.coeffs(), b.coeffs()).as_slice());
            }
        }
    }
}

#[test]
fn multiplicative_groups_are_cyclic() {
    for &(p, n) in SMALL {
        let f = make_field(p, n).unwrap();
        let q = f.q();
        let generator = (1..q).map(|c| f.from_code(c)).find(|a| f.multiplicative_order(a).unwrap() == q - 1);
        assert!(generator.is_some(), "{}", f.name());
    }
}

#[test]
fn axioms_exhaustive_up_to_16() {
    for &(p, n) in SMALL.iter().filter(|&&(p, n)| p.pow(n) <= 16) {
        let f = make_field(p, n).unwrap();
        let all: Vec<_> = f.elements().collect();
        for a in &all {
            for b in &all {
                assert_eq!(f.add(a, b).unwrap(), f.add(b, a).unwrap());
                assert_eq!(f.mul(a, b).unwrap(), f.mul(b, a).unwrap());
                for c in &all {
                    let ab_c = f.mul(&f.mul(a, b).unwrap(), c).unwrap();
                    assert_eq!(ab_c, f.mul(a, &f.mul(b, c).unwrap()).unwrap());
                    let left = f.mul(a, &f.add(b, c).unwrap()).unwrap();
                    let right = f.add(&f.mul(a, b).unwrap(), &f.mul(a, c).unwrap()).unwrap();
                    assert_eq!(left, right);
                    assert_eq!(f.add(&f.add(a, b).unwrap(), c).unwrap(), f.add(a, &f.add(b, c).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn inverses_agree_both_ways() {
    for &(p, n) in SMALL {
        let f = make_field(p, n).unwrap();
        for a in f.elements().skip(1) {
            let inv = f.inv(&a).unwrap();
            assert_eq!(inv, f.inv_by_pow(&a).unwrap());
            assert_eq!(f.mul(&a, &inv).unwrap(), f.one());
        }
    }
}

#[test]
fn json_form() {
    let f = make_field(2, 2).unwrap();
    assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"p":2,"n":2,"modulus":[1,1,1]}"#);
}

fn field_and_triple() -> impl Strategy<Value = (FieldSpec, u64, u64, u64)> {
    prop::sample::select(vec![(3u64, 4u32), (7, 2), (2, 6), (5, 3), (3, 5), (2, 8)]).prop_flat_map(|(p, n)| {
        let f = make_field(p, n).unwrap();
        let q = f.q();
        (Just(f), 0..q, 0..q, 0..q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn axioms_on_random_triples((f, a, b, c) in field_and_triple()) {
        let (a, b, c) = (f.from_code(a), f.from_code(b), f.from_code(c));
        prop_assert_eq!(f.mul(&a, &b).unwrap(), f.mul(&b, &a).unwrap());
        prop_assert_eq!(
            f.mul(&f.mul(&a, &b).unwrap(), &c).unwrap(),
            f.mul(&a, &f.mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&a, &f.add(&b, &c).unwrap()).unwrap(),
            f.add(&f.mul(&a, &b).unwrap(), &f.mul(&a, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(f.add(&a, &f.neg(&a).unwrap()).unwrap(), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()).unwrap(), f.one());
            prop_assert_eq!(f.pow(&a, f.q() - 1).unwrap(), f.one());
        }
    }
}
