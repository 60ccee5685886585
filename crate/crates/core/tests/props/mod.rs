//! Randomized properties shared by the `properties` test target and the
//! acceptance target. Each property runs [`CASES`] cases on a fixed seed and
//! reports the first counterexample as an error string.

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use cyclic_lrc::cert::Certificate;
use cyclic_lrc::constructions::{build, ConstructionRequest, Family};
use cyclic_lrc::cyclic::{cyclic_shift, Base, CycContext, CyclicCode, ExponentSet};
use cyclic_lrc::field::FieldSpec;
use cyclic_lrc::poly::{product_from_root_indices, Polynomial};

pub const CASES: u32 = 1024;

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    TestRunner::new_with_rng(config, rng)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

const FIELDS: [(u64, u32); 10] = [(2, 1), (2, 3), (2, 5), (2, 6), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2), (19, 1)];

fn field_and_elems(count: usize) -> impl Strategy<Value = (Arc<FieldSpec>, Vec<u32>)> {
    (0..FIELDS.len()).prop_flat_map(move |i| {
        let (p, m) = FIELDS[i];
        let f = FieldSpec::get(p, m).unwrap();
        let q = f.q();
        (Just(f), proptest::collection::vec(0..q, count))
    })
}

fn digits(x: u32, p: u32, m: u32) -> Vec<u32> {
    let mut x = x;
    (0..m)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Schoolbook product of coefficient vectors reduced by the field modulus.
fn schoolbook_mul(f: &FieldSpec, a: u32, b: u32) -> u32 {
    let (p, m) = (f.p(), f.m() as usize);
    let (da, db) = (digits(a, p, m as u32), digits(b, p, m as u32));
    let mut prod = vec![0u32; 2 * m];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    let modulus = f.modulus();
    for top in (m..2 * m).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, &mc) in modulus.iter().enumerate() {
            let idx = top - m + i;
            prod[idx] = (prod[idx] + (p - c) * mc % p) % p;
        }
    }
    undigits(&prod[..m], p)
}

fn digit_add(f: &FieldSpec, a: u32, b: u32) -> u32 {
    let (p, m) = (f.p(), f.m());
    let s: Vec<u32> = digits(a, p, m).iter().zip(digits(b, p, m)).map(|(x, y)| (x + y) % p).collect();
    undigits(&s, p)
}

pub fn field_laws() -> Result<(), String> {
    run(field_and_elems(3), |(f, v)| {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(a, b), digit_add(&f, a, b));
        prop_assert_eq!(f.mul(a, b), schoolbook_mul(&f, a, b));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        match f.inv(a) {
            None => prop_assert_eq!(a, 0),
            Some(i) => prop_assert_eq!(f.mul(a, i), 1),
        }
        // Frobenius: a^q = a, and x -> x^p is additive.
        prop_assert_eq!(f.pow(a, f.q() as i64).unwrap(), a);
        let p = f.p() as i64;
        prop_assert_eq!(
            f.pow(f.add(a, b), p).unwrap(),
            f.add(f.pow(a, p).unwrap(), f.pow(b, p).unwrap())
        );
        Ok(())
    })
}

fn poly_strategy() -> impl Strategy<Value = (Arc<FieldSpec>, Vec<u32>, Vec<u32>, Vec<u32>)> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        let (p, m) = FIELDS[i];
        let f = FieldSpec::get(p, m).unwrap();
        let q = f.q();
        let roots = proptest::sample::subsequence((1..q).collect::<Vec<u32>>(), 0..(q as usize - 1).min(8));
        (
            Just(f),
            proptest::collection::vec(0..q, 0..12),
            proptest::collection::vec(0..q, 1..8),
            roots,
        )
    })
}

pub fn polynomial_round_trips() -> Result<(), String> {
    run(poly_strategy(), |(f, ac, bc, roots)| {
        let a = Polynomial::new(f.clone(), ac.clone()).unwrap();
        let mut bc = bc;
        let last = bc.len() - 1;
        if bc[last] == 0 {
            bc[last] = 1;
        }
        let b = Polynomial::new(f.clone(), bc).unwrap();
        let (quo, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).unwrap().add(&rem).unwrap(), a.clone());
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());

        let k = ac.len() + 2;
        prop_assert_eq!(a.reciprocal(k).unwrap().reciprocal(k).unwrap(), a.clone());

        // Horner evaluation against a direct sum of powers.
        let x = roots.first().copied().unwrap_or(1);
        let direct = a
            .coeffs()
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| f.add(acc, f.mul(c, f.pow(x, i as i64).unwrap())));
        prop_assert_eq!(a.eval(x), direct);

        let g = product_from_root_indices(&f, &roots).unwrap();
        prop_assert_eq!(g.degree(), Some(roots.len()));
        prop_assert_eq!(g.leading(), 1);
        for &r in &roots {
            prop_assert_eq!(g.eval(r), 0);
        }
        for y in (1..f.q()).filter(|y| !roots.contains(y)).take(4) {
            prop_assert_ne!(g.eval(y), 0);
        }
        Ok(())
    })
}

const CONTEXTS: [(u64, usize); 12] = [
    (2, 7), (2, 15), (2, 21), (3, 8), (3, 13), (4, 15), (5, 8), (5, 12), (8, 7), (16, 17), (19, 18), (23, 24),
];

pub fn coset_closure() -> Result<(), String> {
    let strategy = (0..CONTEXTS.len()).prop_flat_map(|i| {
        let (q, n) = CONTEXTS[i];
        (Just(q), Just(n), proptest::collection::vec(any::<bool>(), n))
    });
    run(strategy, |(q, n, mask)| {
        let ctx = CycContext::new(q, n).unwrap();
        let s = ExponentSet::from_residues(n, (0..n).filter(|&j| mask[j]));
        let direct_closed = s.iter().all(|e| s.contains((e as u64 * q % n as u64) as i64));
        prop_assert_eq!(ctx.is_q_closed(&s), direct_closed);
        prop_assert_eq!(ctx.split_coset(&s).is_none(), direct_closed);

        let cosets = ctx.cosets();
        prop_assert_eq!(cosets.iter().map(ExponentSet::len).sum::<usize>(), n);
        for c in &cosets {
            prop_assert!(ctx.is_q_closed(c));
        }
        let closure = cosets
            .iter()
            .filter(|c| c.iter().any(|e| mask[e]))
            .fold(ExponentSet::empty(n), |acc, c| acc.union(c));
        prop_assert!(s.is_subset(&closure));
        prop_assert!(ctx.is_q_closed(&closure));
        prop_assert_eq!(closure == s, direct_closed);
        Ok(())
    })
}

const SMALL_CODES: [(u64, usize); 8] = [(2, 7), (2, 9), (2, 15), (3, 8), (4, 5), (5, 6), (7, 8), (8, 7)];

pub fn shift_closure() -> Result<(), String> {
    let strategy = (0..SMALL_CODES.len()).prop_flat_map(|i| {
        let (q, n) = SMALL_CODES[i];
        (
            Just(q),
            Just(n),
            any::<u64>(),
            proptest::collection::vec(0..q as u32, n),
            0..n,
        )
    });
    run(strategy, |(q, n, pick, msg, shift)| {
        let ctx = CycContext::new(q, n).unwrap();
        let cosets = ctx.cosets();
        let s = cosets
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> (i % 64) & 1 == 1)
            .fold(ExponentSet::empty(n), |acc, (_, c)| acc.union(c));
        let code = CyclicCode::new(&ctx, s.clone(), Base::Subfield).unwrap();
        let k = code.k();
        if k == 0 {
            return Ok(());
        }
        let alph = code.alphabet();
        let msg: Vec<u32> = msg[..k].iter().map(|&x| alph[x as usize % alph.len()]).collect();
        let c = code.encode(&msg);
        let mut shifted = c.clone();
        for _ in 0..shift {
            shifted = cyclic_shift(&shifted);
        }
        prop_assert!(code.contains_word(&shifted));
        // The word vanishes at every α^j with j in the defining set.
        let big = ctx.big_field();
        for j in s.iter() {
            let x = ctx.alpha_pow(j as i64);
            let v = shifted
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &ci)| big.add(acc, big.mul(ci, big.pow(x, i as i64).unwrap())));
            prop_assert_eq!(v, 0);
        }
        Ok(())
    })
}

fn request_strategy() -> impl Strategy<Value = ConstructionRequest> {
    prop_oneof![
        (1usize..18, 1usize..8, 1usize..18, 2usize..5).prop_map(|(t, m, tail, delta)| {
            ConstructionRequest::new(Family::C44, 19, 18, delta).t(t).m(m).tail([tail])
        }),
        (1usize..4, 1usize..31).prop_map(|(m, tail)| {
            ConstructionRequest::new(Family::C46, 32, 31, 2).m(m).tail([tail])
        }),
        (2usize..5, 2usize..8).prop_map(|(delta, m)| ConstructionRequest::new(Family::C56, 32, 33, delta).m(m)),
        (2usize..5, 2usize..8).prop_map(|(delta, m)| ConstructionRequest::new(Family::C511, 16, 17, delta).m(m)),
        (2usize..5).prop_map(|delta| ConstructionRequest::new(Family::P49, 19, 18, delta)),
    ]
}

pub fn certificate_determinism() -> Result<(), String> {
    run(request_strategy(), |req| {
        let budget = 1_000_000;
        match (build(&req, budget), build(&req, budget)) {
            (Ok(a), Ok(b)) => {
                let (ja, jb) = (Certificate::from_construction(&a).to_json(), Certificate::from_construction(&b).to_json());
                prop_assert_eq!(&ja, &jb);
                let back = Certificate::from_json(&ja).unwrap();
                prop_assert_eq!(back.to_json(), ja);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a.to_string(), b.to_string()),
            (a, b) => prop_assert!(false, "builds differ: {:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
        Ok(())
    })
}

/// Every property with its name, in a fixed order.
pub fn all() -> Vec<(&'static str, fn() -> Result<(), String>)> {
    vec![
        ("field laws", field_laws),
        ("polynomial round trips", polynomial_round_trips),
        ("coset closure", coset_closure),
        ("shift closure", shift_closure),
        ("certificate determinism", certificate_determinism),
    ]
}
