//! (r, δ)-locality certificates.
//!
//! The constructive route takes a product `AB` inside the defining set of a
//! target code. A minimum-weight word `h0` of the dual of the code with
//! defining set `A` (over GF(q^d)) has support `S` of size `d_A⊥`; multiplying
//! it coordinatewise by `(alpha^{e j})_j` for `e ∈ B` gives dual codewords of
//! the target supported on `S`. Any `d_B - 1` columns of that `|B| x |S|`
//! matrix are independent, so the target restricted to `S` has distance at
//! least `d_B`. The cyclic shifts of `S` cover every coordinate.
//!
//! [`verify_locality_exhaustive`] checks the definition directly and is
//! used as the independent oracle for emitted certificates.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::exact_dual_distance_witness;
use crate::cyclic::{product_set, Base, CyclicCode, CyclicError, ExponentSet};
use crate::distance::{canonical_word, min_distance, min_weight_word, DistanceError};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalityError {
    #[error("product set AB is not contained in the target defining set (exponent {exponent} missing)")]
    ProductNotContained { exponent: usize },
    #[error("dual distance of A ({da_perp}) is smaller than the distance of B ({d_b})")]
    DistanceOrderingViolated { da_perp: usize, d_b: usize },
    #[error("repair group {group:?} has {delta}-1 dependent columns; this is a bug")]
    IndependenceCheckFailed { group: Vec<usize>, delta: usize },
    #[error("local parity row for exponent {exponent} does not match the support of h0")]
    SupportMismatch { exponent: usize },
    #[error("local parity row for exponent {exponent} is not orthogonal to the target code")]
    NotDual { exponent: usize },
    #[error("distance of the code with defining set B is not determined within budget")]
    DistanceUnresolved,
    #[error("locality search exceeded its budget; result inconclusive")]
    BudgetExceededInconclusive,
    #[error("need δ >= 2 and r + δ - 1 <= n, got r = {r}, δ = {delta}, n = {n}")]
    BadParams { r: usize, delta: usize, n: usize },
    #[error("{s} does not divide {n}")]
    NotDivisor { s: usize, n: usize },
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityEvidence {
    pub h0_support: Vec<usize>,
    pub independence_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityCertificate {
    pub r: usize,
    pub delta: usize,
    #[serde(rename = "dA_perp")]
    pub da_perp: usize,
    #[serde(rename = "dB")]
    pub d_b: usize,
    pub groups: Vec<Vec<usize>>,
    pub evidence: LocalityEvidence,
}

impl LocalityCertificate {
    /// Group sizes within `r + δ - 1` and every coordinate covered.
    pub fn is_well_formed(&self, n: usize) -> bool {
        let mut covered = vec![false; n];
        for g in &self.groups {
            if g.len() > self.r + self.delta - 1 {
                return false;
            }
            for &c in g {
                if c >= n {
                    return false;
                }
                covered[c] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }
}

/// True iff every `(δ - 1)`-subset of columns of `m` has full rank.
pub fn check_delta_independence(m: &Matrix, delta: usize) -> bool {
    if delta <= 1 {
        return true;
    }
    let t = delta - 1;
    if m.cols() < t {
        return false;
    }
    (0..m.cols())
        .combinations(t)
        .all(|cols| m.select_columns(&cols).rank() == t)
}

/// `d(C|_S) >= δ`, checked as: erasing any `δ - 1` positions of `S` leaves
/// the rank of the projection unchanged.
pub fn punctured_distance_at_least(gen: &Matrix, coords: &[usize], delta: usize) -> bool {
    let sub = gen.select_columns(coords);
    let full = sub.rank();
    if full == 0 || delta <= 1 {
        return true;
    }
    if coords.len() < delta {
        return false;
    }
    (0..coords.len()).combinations(delta - 1).all(|erased| {
        let keep: Vec<usize> = (0..coords.len()).filter(|i| !erased.contains(i)).collect();
        sub.select_columns(&keep).rank() == full
    })
}

/// A minimum-weight dual word of the extension code with defining set `A`,
/// and whether the exact-dual-distance criterion produced it.
fn min_dual_word(
    target: &CyclicCode,
    a: &ExponentSet,
    budget: u64,
) -> Result<(usize, Vec<u32>), LocalityError> {
    let ctx = target.ctx();
    let f = ctx.big_field();
    let n = ctx.n();
    if let Some(w) = exact_dual_distance_witness(a) {
        // Summing the parity rows over the coset {t + i s} leaves ell at
        // multiples of ell and 0 elsewhere.
        let s = n / w.ell;
        let word: Vec<u32> = (0..n)
            .map(|j| {
                (0..w.ell).fold(0, |acc, i| f.add(acc, ctx.alpha_pow(((w.t + i * s) * j) as i64)))
            })
            .collect();
        debug_assert_eq!(word.iter().filter(|&&x| x != 0).count(), s);
        return Ok((s, word));
    }
    let dual = CyclicCode::new(ctx, a.clone(), Base::Extension)?.dual();
    Ok(min_weight_word(&dual, budget)?)
}

/// Certificate for the code `target` whose defining set contains `AB`.
pub fn locality_from_product(
    a: &ExponentSet,
    b: &ExponentSet,
    target: &CyclicCode,
    budget: u64,
) -> Result<LocalityCertificate, LocalityError> {
    let ctx = target.ctx();
    let f = ctx.big_field();
    let n = ctx.n();
    let ab = product_set(a, b)?;
    if let Some(e) = ab.iter().find(|&e| !target.defining().contains(e as i64)) {
        return Err(LocalityError::ProductNotContained { exponent: e });
    }

    let code_b = CyclicCode::new(ctx, b.clone(), Base::Extension)?;
    let d_b = min_distance(&code_b, budget)
        .exact
        .ok_or(LocalityError::DistanceUnresolved)?;

    let (da_perp, word) = min_dual_word(target, a, budget)?;
    if da_perp < d_b {
        return Err(LocalityError::DistanceOrderingViolated { da_perp, d_b });
    }
    let h0 = canonical_word(f, &word);
    let support: Vec<usize> = (0..n).filter(|&j| h0[j] != 0).collect();

    let gen = target.generator_matrix();
    let mut seen = BTreeSet::new();
    for shift in 0..n {
        let mut group: Vec<usize> = support.iter().map(|&j| (j + shift) % n).collect();
        group.sort_unstable();
        if !seen.insert(group.clone()) {
            continue;
        }
        let h: Vec<u32> = (0..n).map(|j| h0[(j + n - shift) % n]).collect();
        let rows: Vec<Vec<u32>> = b
            .iter()
            .map(|e| (0..n).map(|j| f.mul(ctx.alpha_pow((e * j) as i64), h[j])).collect())
            .collect();
        for (e, row) in b.iter().zip(&rows) {
            let supp: Vec<usize> = (0..n).filter(|&j| row[j] != 0).collect();
            if supp != group {
                return Err(LocalityError::SupportMismatch { exponent: e });
            }
        }
        let local = Matrix::from_rows(f, n, &rows);
        if !gen.mul(&local.transpose()).is_zero() {
            let e = b.iter().next().unwrap_or(0);
            return Err(LocalityError::NotDual { exponent: e });
        }
        if !check_delta_independence(&local.select_columns(&group), d_b) {
            return Err(LocalityError::IndependenceCheckFailed { group, delta: d_b });
        }
    }

    Ok(LocalityCertificate {
        r: da_perp - d_b + 1,
        delta: d_b,
        da_perp,
        d_b,
        groups: seen.into_iter().collect(),
        evidence: LocalityEvidence {
            h0_support: support,
            independence_checked: true,
        },
    })
}

/// The residue classes modulo `n / s`, each of size `s`, listed starting
/// with the class of `t`. These are the supports of the weight-`s` dual
/// words obtained from a subgroup coset in the defining set.
pub fn repair_groups_from_subgroup(t: usize, s: usize, n: usize) -> Result<Vec<Vec<usize>>, LocalityError> {
    if s == 0 || n % s != 0 {
        return Err(LocalityError::NotDivisor { s, n });
    }
    let ell = n / s;
    Ok((0..ell)
        .map(|c| {
            let c = (c + t) % ell;
            (0..s).map(|i| c + i * ell).collect()
        })
        .collect())
}

/// Definition-level check of (r, δ)-locality.
///
/// For each coordinate, tries the suggested groups first, then cyclic
/// shifts of arithmetic progressions, and finally (within budget) every
/// subset of size at most `r + δ - 1`. Returns `Ok(false)` only when the
/// full search ran and failed.
pub fn verify_locality_exhaustive(
    code: &CyclicCode,
    r: usize,
    delta: usize,
    budget: u64,
    suggested: &[Vec<usize>],
) -> Result<bool, LocalityError> {
    let n = code.n();
    let size = r + delta - 1;
    if delta < 2 || r == 0 || size > n {
        return Err(LocalityError::BadParams { r, delta, n });
    }
    let gen = code.generator_matrix();
    let mut verdicts: std::collections::HashMap<Vec<usize>, bool> = Default::default();
    let mut good = |g: &Vec<usize>| -> bool {
        *verdicts
            .entry(g.clone())
            .or_insert_with(|| punctured_distance_at_least(&gen, g, delta))
    };
    let progressions: Vec<Vec<usize>> = (1..n)
        .flat_map(|step| {
            (0..n).map(move |start| {
                let mut g: Vec<usize> = (0..size).map(|i| (start + i * step) % n).collect();
                g.sort_unstable();
                g.dedup();
                g
            })
        })
        .collect();
    let mut spent: u64 = 0;
    for i in 0..n {
        let found = suggested
            .iter()
            .chain(progressions.iter())
            .filter(|g| g.len() <= size && g.contains(&i))
            .any(|g| good(g));
        if found {
            continue;
        }
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let mut ok = false;
        'sizes: for m in (delta - 1..size).rev() {
            for rest in others.iter().copied().combinations(m) {
                spent += 1;
                if spent > budget {
                    return Err(LocalityError::BudgetExceededInconclusive);
                }
                let mut g = rest;
                g.push(i);
                g.sort_unstable();
                if good(&g) {
                    ok = true;
                    break 'sizes;
                }
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CycContext;
    use crate::distance::DEFAULT_BUDGET;
    use crate::field::FieldSpec;

    #[test]
    fn independence_examples() {
        let f = FieldSpec::get(2, 4).unwrap();
        let m = Matrix::from_rows(&f, 3, &[vec![1, 0, 3], vec![0, 0, 1]]);
        assert!(!check_delta_independence(&m, 2));
        let m = Matrix::from_rows(&f, 3, &[vec![1, 2, 1], vec![3, 4, 3]]);
        assert!(check_delta_independence(&m, 2));
        assert!(!check_delta_independence(&m, 3));
        let vander: Vec<Vec<u32>> = (0..3).map(|i| (0..7).map(|j| f.gen_pow(i * j)).collect()).collect();
        assert!(check_delta_independence(&Matrix::from_rows(&f, 7, &vander), 4));
    }

    #[test]
    fn subgroup_classes() {
        assert_eq!(repair_groups_from_subgroup(0, 6, 6).unwrap(), vec![vec![0, 1, 2, 3, 4, 5]]);
        let g = repair_groups_from_subgroup(0, 6, 24).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g[1], vec![1, 5, 9, 13, 17, 21]);
        assert!(matches!(
            repair_groups_from_subgroup(0, 9, 18),
            Ok(v) if v.len() == 2
        ));
        assert_eq!(
            repair_groups_from_subgroup(0, 10, 18).unwrap_err(),
            LocalityError::NotDivisor { s: 10, n: 18 }
        );
    }

    #[test]
    fn binary_product_locality() {
        let ctx = CycContext::new(2, 31).unwrap();
        let a = ExponentSet::new(31, [0, 1, 2, 4, 8, 16]);
        let b = ExponentSet::new(31, [5, 9, 10, 18, 20]);
        let ab = product_set(&a, &b).unwrap();
        let code = CyclicCode::new(&ctx, ab, Base::Subfield).unwrap();
        let cert = locality_from_product(&a, &b, &code, DEFAULT_BUDGET).unwrap();
        assert_eq!((cert.da_perp, cert.d_b), (15, 3));
        assert_eq!((cert.r, cert.delta), (13, 3));
        assert!(cert.is_well_formed(31));
        assert!(verify_locality_exhaustive(&code, 13, 3, DEFAULT_BUDGET, &cert.groups).unwrap());
    }

    #[test]
    fn classical_locality_with_trivial_b() {
        let ctx = CycContext::new(19, 18).unwrap();
        let a = ExponentSet::new(18, [1, 2, 3, 4, 5, 9]);
        let b = ExponentSet::new(18, [0]);
        let code = CyclicCode::new(&ctx, a.clone(), Base::Subfield).unwrap();
        let cert = locality_from_product(&a, &b, &code, DEFAULT_BUDGET).unwrap();
        assert_eq!((cert.r, cert.delta, cert.da_perp), (9, 2, 10));
    }

    #[test]
    fn ordering_and_containment_errors() {
        let ctx = CycContext::new(19, 18).unwrap();
        let a = ExponentSet::progression(18, 0, 1, 16);
        let b = ExponentSet::progression(18, 0, 1, 4);
        let ab = product_set(&a, &b).unwrap();
        let code = CyclicCode::new(&ctx, ab, Base::Subfield).unwrap();
        assert_eq!(
            locality_from_product(&a, &b, &code, DEFAULT_BUDGET).unwrap_err(),
            LocalityError::DistanceOrderingViolated { da_perp: 3, d_b: 5 }
        );
        let a = ExponentSet::new(18, [1]);
        let small = CyclicCode::new(&ctx, ExponentSet::new(18, [1, 2]), Base::Subfield).unwrap();
        assert!(matches!(
            locality_from_product(&a, &b, &small, DEFAULT_BUDGET),
            Err(LocalityError::ProductNotContained { .. })
        ));
    }
}
