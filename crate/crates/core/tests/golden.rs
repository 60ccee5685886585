//! Reference examples: reproduction, certificate checks, and oracle
//! cross-checks of the certified distances.

use std::path::Path;

use cyclic_lrc::cert::{verify, Verdict};
use cyclic_lrc::constructions::build;
use cyclic_lrc::distance::{low_weight_cost, zero_set_cost, DEFAULT_BUDGET};
use cyclic_lrc::golden::{builtin_sources, certificate_groups_sound, dir_sources, parse, run, GoldenCase};
use cyclic_lrc::sweep::rank_distance;

/// Examples whose published parameters cannot be reproduced; see the notes
/// in each assertion of `published_defects_fail_for_the_documented_reason`.
const DEFECTS: [&str; 3] = [
    "01_dual_pair_gf8_len7.json",
    "15_gf64_sym_case1.json",
    "16_gf64_sym_case3.json",
];

#[test]
fn directory_matches_embedded_corpus() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    assert_eq!(dir_sources(&dir).unwrap(), builtin_sources());
}

#[test]
fn reproducible_examples_pass() {
    let mut failed = Vec::new();
    for (file, src) in builtin_sources() {
        if DEFECTS.contains(&file.as_str()) {
            continue;
        }
        let out = run(&file, &src, DEFAULT_BUDGET);
        if !out.passed {
            failed.push(format!("{file}: {:?}", out.failures));
        }
    }
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn published_defects_fail_for_the_documented_reason() {
    let src: Vec<_> = builtin_sources().into_iter().filter(|(f, _)| DEFECTS.contains(&f.as_str())).collect();
    assert_eq!(src.len(), 3);
    // Both codes are [7,3] Reed-Solomon codes, so d = 5, not 4.
    let out = run(&src[0].0, &src[0].1, DEFAULT_BUDGET);
    assert!(!out.passed);
    assert_eq!(out.summary, "d⊥ = 5, d' = 5");
    // i = 1 exceeds floor((r-1)/2) = 0 for r = 2.
    for (f, s) in &src[1..] {
        let out = run(f, s, DEFAULT_BUDGET);
        assert!(!out.passed);
        assert!(out.failures[0].contains("0 ≤ i ≤ ⌊(r−1)/2⌋"), "{:?}", out.failures);
    }
}

#[test]
fn every_certificate_verifies_and_groups_are_sound() {
    for (file, src) in builtin_sources() {
        let out = run(&file, &src, DEFAULT_BUDGET);
        let Some(cert) = out.certificate else { continue };
        certificate_groups_sound(&cert).unwrap_or_else(|e| panic!("{file}: {e}"));
        let report = verify(&cert, DEFAULT_BUDGET).unwrap();
        for c in &report.checks {
            assert_eq!(c.verdict, Verdict::Agree, "{file}: {c:?}");
        }
    }
}

#[test]
fn certified_distance_matches_rank_oracle_where_feasible() {
    let mut compared = 0;
    for (file, src) in builtin_sources() {
        let GoldenCase::Construction { request, .. } = parse(&src).unwrap().case else { continue };
        let Ok(c) = build(&request, DEFAULT_BUDGET) else { continue };
        let (n, k) = (c.code.n(), c.code.k());
        if zero_set_cost(n, k).min(low_weight_cost(n, n - k, n - k + 1)) > DEFAULT_BUDGET {
            continue;
        }
        let d = rank_distance(&c.code.extension(), DEFAULT_BUDGET).unwrap();
        assert_eq!(Some(d), c.optimality.d_exact, "{file}");
        compared += 1;
    }
    assert!(compared >= 5, "only {compared} examples fit the budget");
}
