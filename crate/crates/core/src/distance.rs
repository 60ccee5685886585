//! Minimum-distance oracles for cyclic codes.
//!
//! Two families of oracles are provided and deliberately kept apart:
//!
//! * Alphabet-explicit oracles enumerate actual words over the code's
//!   alphabet: [`exhaustive_min_weight`] runs over all messages and
//!   [`weight_enumeration_min_weight`] runs over all low-weight vectors and
//!   tests their syndromes. Only these see the difference between a code
//!   over GF(q) and the code over GF(q^d) with the same defining set.
//! * Rank-based oracles work over GF(q^d): [`min_dependent_support`] looks
//!   for linearly dependent parity-check columns and [`zero_set_search`]
//!   enumerates zero patterns of the generator matrix. They compute the
//!   distance of the extension code.
//!
//! The rank-based searches assume the row space is invariant under cyclic
//! shifts, so they only consider words with a prescribed coordinate
//! (non)zero.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::bch_lower;
use crate::cyclic::CyclicCode;
use crate::field::FieldSpec;
use crate::linalg::Matrix;
use crate::num::binomial;

/// Default cap on estimated elementary operations per distance computation.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("search needs about {needed} operations, budget is {budget}")]
    CombinatorialBudgetExceeded { needed: u64, budget: u64 },
    #[error("the zero code has no nonzero word")]
    ZeroCode,
}

/// How a distance value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    Bch,
    BettiSala,
    Exhaustive,
    LowWeight,
    ZeroSet,
    WeightEnumeration,
    Singleton,
    SingletonLike,
    Sandwich,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    pub method: DistanceMethod,
    /// Set for the zero code, which has no nonzero codeword.
    pub undefined: bool,
}

impl DistanceResult {
    fn exact(d: usize, method: DistanceMethod) -> DistanceResult {
        DistanceResult {
            lower: d,
            upper: d,
            exact: Some(d),
            method,
            undefined: false,
        }
    }

    fn undefined(n: usize) -> DistanceResult {
        DistanceResult {
            lower: n + 1,
            upper: n + 1,
            exact: None,
            method: DistanceMethod::Exhaustive,
            undefined: true,
        }
    }
}

/// Extra bounds a caller can feed into [`min_distance_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Hints {
    pub lower: Option<(usize, DistanceMethod)>,
    pub upper: Option<(usize, DistanceMethod)>,
}

fn weight(c: &[u32]) -> usize {
    c.iter().filter(|&&x| x != 0).count()
}

fn saturating_pow(base: u64, exp: u64) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Estimated cost of [`exhaustive_min_weight`]: one row update per message
/// with leading nonzero symbol 1.
pub fn exhaustive_cost(code: &CyclicCode) -> u64 {
    let a = code.alphabet_size();
    let k = code.k() as u64;
    (saturating_pow(a, k) / (a - 1).max(1)).saturating_mul(code.n() as u64)
}

/// Estimated cost of [`zero_set_search`] on a `k x n` generator.
pub fn zero_set_cost(n: usize, k: usize) -> u64 {
    if k <= 1 {
        return n as u64;
    }
    binomial(n as u64 - 1, k as u64 - 2).saturating_mul((k * n) as u64)
}

/// Estimated cost of deciding by support search whether a word of weight
/// at most `w` exists, with `rows` parity checks.
pub fn low_weight_cost(n: usize, rows: usize, w: usize) -> u64 {
    (0..w.min(n))
        .map(|t| binomial(n as u64 - 1, t as u64))
        .fold(0u64, |acc, c| acc.saturating_add(c))
        .saturating_mul(rows.max(1) as u64)
}

/// Estimated cost of [`weight_enumeration_min_weight`] up to weight `w`.
pub fn weight_enumeration_cost(n: usize, rows: usize, alphabet: u64, w: usize) -> u64 {
    (1..=w.min(n))
        .map(|t| {
            binomial(n as u64 - 1, t as u64 - 1)
                .saturating_mul(saturating_pow(alphabet - 1, t as u64 - 1))
        })
        .fold(0u64, |acc, c| acc.saturating_add(c))
        .saturating_mul(rows.max(1) as u64)
}

// ---------------------------------------------------------------------------
// Alphabet-explicit oracles
// ---------------------------------------------------------------------------

struct Enumerator<'a> {
    f: &'a FieldSpec,
    q: usize,
    rows: Vec<Vec<u32>>,
    /// `step[i][a] = (alph[a+1] - alph[a]) * row_i`, with `a = q-1` wrapping to 0.
    step: Vec<Vec<Vec<u32>>>,
}

impl<'a> Enumerator<'a> {
    fn new(code: &'a CyclicCode) -> Enumerator<'a> {
        let f = code.ctx().big_field().as_ref();
        let alph = code.alphabet();
        let q = alph.len();
        let g = code.generator_matrix();
        let rows = g.row_vecs();
        let step = rows
            .iter()
            .map(|row| {
                (0..q)
                    .map(|a| {
                        let diff = f.sub(alph[(a + 1) % q], alph[a]);
                        row.iter().map(|&x| f.mul(diff, x)).collect()
                    })
                    .collect()
            })
            .collect();
        Enumerator {
            f,
            q,
            rows,
            step,
        }
    }

    /// Minimum weight over messages `(0, ..., 0, 1, a, *, ..., *)` with the
    /// 1 at `lead`, `a` fixed at `lead + 1` (when present), and every
    /// later position free. Stops as soon as a weight `<= stop_at` is seen
    /// or `cancel` reports that a better task already finished.
    fn run(&self, lead: usize, fixed: Option<usize>, stop_at: usize, cancel: &dyn Fn() -> bool) -> usize {
        let f = self.f;
        let mut cw = self.rows[lead].clone();
        let mut first_free = lead + 1;
        if let Some(a) = fixed {
            for s in 0..a {
                add_into(f, &mut cw, &self.step[lead + 1][s]);
            }
            first_free = lead + 2;
        }
        let free: Vec<usize> = (first_free..self.rows.len()).collect();
        let mut digits = vec![0usize; free.len()];
        let mut best = usize::MAX;
        let mut counter = 0u32;
        loop {
            let w = weight(&cw);
            if w < best {
                best = w;
                if best <= stop_at {
                    return best;
                }
            }
            counter = counter.wrapping_add(1);
            if counter & 0xffff == 0 && cancel() {
                return best;
            }
            let mut j = 0;
            loop {
                if j == free.len() {
                    return best;
                }
                let pos = free[j];
                add_into(f, &mut cw, &self.step[pos][digits[j]]);
                digits[j] += 1;
                if digits[j] < self.q {
                    break;
                }
                digits[j] = 0;
                j += 1;
            }
        }
    }
}

#[inline]
fn add_into(f: &FieldSpec, acc: &mut [u32], v: &[u32]) {
    for (x, &y) in acc.iter_mut().zip(v) {
        *x = f.add(*x, y);
    }
}

/// Minimum weight of a nonzero codeword by enumerating every message over
/// the code's alphabet (up to scaling). Returns `n + 1` for the zero code.
///
/// The search stops early once a word of weight `<= stop_at` is found; pass
/// 0 to run to completion.
pub fn exhaustive_min_weight(code: &CyclicCode, stop_at: usize) -> usize {
    let k = code.k();
    if k == 0 {
        return code.n() + 1;
    }
    let e = Enumerator::new(code);
    let mut tasks: Vec<(usize, Option<usize>)> = Vec::new();
    for lead in 0..k {
        if lead + 1 < k && k - lead > 3 {
            tasks.extend((0..e.q).map(|a| (lead, Some(a))));
        } else {
            tasks.push((lead, None));
        }
    }
    let hit = AtomicUsize::new(usize::MAX);
    let results: Vec<usize> = tasks
        .par_iter()
        .enumerate()
        .map(|(idx, &(lead, fixed))| {
            if hit.load(Ordering::Relaxed) < idx {
                return usize::MAX;
            }
            let cancel = || hit.load(Ordering::Relaxed) < idx;
            let w = e.run(lead, fixed, stop_at, &cancel);
            if w <= stop_at {
                hit.fetch_min(idx, Ordering::Relaxed);
            }
            w
        })
        .collect();
    results.into_iter().min().unwrap_or(code.n() + 1)
}

/// Smallest weight `<= max_w` of a nonzero word over the code's alphabet
/// whose syndrome vanishes, found by enumerating supports containing
/// coordinate 0 and all nonzero symbol patterns with a 1 there.
pub fn weight_enumeration_min_weight(
    code: &CyclicCode,
    max_w: usize,
    budget: u64,
) -> Result<Option<(usize, Vec<u32>)>, DistanceError> {
    let n = code.n();
    if code.k() == 0 {
        return Ok(None);
    }
    let h = code.parity_check_matrix();
    let rows = h.rows();
    let alph = code.alphabet();
    let needed = weight_enumeration_cost(n, rows, alph.len() as u64, max_w);
    if needed > budget {
        return Err(DistanceError::CombinatorialBudgetExceeded { needed, budget });
    }
    let f = code.ctx().big_field().as_ref();
    let nonzero: Vec<u32> = alph.into_iter().filter(|&x| x != 0).collect();
    let cols: Vec<Vec<u32>> = (0..n).map(|j| h.column(j)).collect();
    let scaled: Vec<Vec<Vec<u32>>> = cols
        .iter()
        .map(|col| {
            nonzero
                .iter()
                .map(|&a| col.iter().map(|&x| f.mul(a, x)).collect())
                .collect()
        })
        .collect();

    struct Ctx<'a> {
        f: &'a FieldSpec,
        n: usize,
        target: usize,
        scaled: &'a [Vec<Vec<u32>>],
        nonzero: &'a [u32],
    }

    fn dfs(c: &Ctx, syn: &[u32], start: usize, chosen: &mut Vec<(usize, usize)>) -> bool {
        if chosen.len() == c.target {
            return syn.iter().all(|&x| x == 0);
        }
        let remaining = c.target - chosen.len();
        for j in start..=c.n - remaining {
            for a in 0..c.nonzero.len() {
                let mut s = syn.to_vec();
                add_into(c.f, &mut s, &c.scaled[j][a]);
                chosen.push((j, a));
                if dfs(c, &s, j + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let one = nonzero.iter().position(|&x| x == 1).unwrap();
    for w in 1..=max_w.min(n) {
        let ctx = Ctx {
            f,
            n,
            target: w,
            scaled: &scaled,
            nonzero: &nonzero,
        };
        let mut chosen = vec![(0usize, one)];
        let syn = scaled[0][one].clone();
        if dfs(&ctx, &syn, 1, &mut chosen) {
            let mut word = vec![0; n];
            for &(j, a) in &chosen {
                word[j] = nonzero[a];
            }
            return Ok(Some((w, word)));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Rank-based oracles
// ---------------------------------------------------------------------------

/// Runs ordered branches in parallel and returns the result of the
/// lowest-index branch that reports a hit, so the answer does not depend on
/// scheduling. Branches above a known hit are skipped.
fn first_hit<T: Send, F>(branches: usize, run: F) -> Option<T>
where
    F: Fn(usize, &dyn Fn() -> bool) -> Option<T> + Sync,
{
    let hit = AtomicUsize::new(usize::MAX);
    let results: Vec<Option<T>> = (0..branches)
        .into_par_iter()
        .map(|i| {
            if hit.load(Ordering::Relaxed) < i {
                return None;
            }
            let cancel = || hit.load(Ordering::Relaxed) < i;
            let r = run(i, &cancel);
            if r.is_some() {
                hit.fetch_min(i, Ordering::Relaxed);
            }
            r
        })
        .collect();
    results.into_iter().flatten().next()
}

struct Reducer<'a> {
    f: &'a FieldSpec,
    /// Reduced columns with their pivot row.
    basis: Vec<(Vec<u32>, usize)>,
    /// Combination of chosen original columns giving each reduced column.
    combos: Vec<Vec<u32>>,
    chosen: Vec<usize>,
}

impl<'a> Reducer<'a> {
    /// Tries to add column `j`. On dependence returns the coefficients of a
    /// vanishing combination over `chosen ++ [j]`.
    fn push(&mut self, j: usize, col: &[u32]) -> Result<(), Vec<u32>> {
        let f = self.f;
        let mut v = col.to_vec();
        let mut combo = vec![0u32; self.chosen.len() + 1];
        combo[self.chosen.len()] = 1;
        for ((b, piv), c) in self.basis.iter().zip(&self.combos) {
            let x = v[*piv];
            if x == 0 {
                continue;
            }
            let factor = f.div(x, b[*piv]).unwrap();
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = f.sub(*vi, f.mul(factor, bi));
            }
            for (ci, &cc) in combo.iter_mut().zip(c) {
                *ci = f.sub(*ci, f.mul(factor, cc));
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => Err(combo),
            Some(p) => {
                for c in self.combos.iter_mut() {
                    c.push(0);
                }
                self.basis.push((v, p));
                self.combos.push(combo);
                self.chosen.push(j);
                Ok(())
            }
        }
    }

    fn pop(&mut self) {
        self.basis.pop();
        self.combos.pop();
        self.chosen.pop();
        for c in self.combos.iter_mut() {
            c.pop();
        }
    }
}

/// Looks for a nonzero vector `c` with `check * c = 0` and weight at most
/// `max_w`, by extending supports through coordinate 0 in increasing order
/// and reporting the first set of linearly dependent columns. Returns the
/// word of the lowest weight found at the first weight level that has one.
pub fn min_dependent_support(
    check: &Matrix,
    max_w: usize,
    budget: u64,
) -> Result<Option<Vec<u32>>, DistanceError> {
    let n = check.cols();
    let needed = low_weight_cost(n, check.rows(), max_w);
    if needed > budget {
        return Err(DistanceError::CombinatorialBudgetExceeded { needed, budget });
    }
    if max_w == 0 || n == 0 {
        return Ok(None);
    }
    let f = check.field().as_ref();
    let cols: Vec<Vec<u32>> = (0..n).map(|j| check.column(j)).collect();
    let fresh = || Reducer {
        f,
        basis: Vec::new(),
        combos: Vec::new(),
        chosen: Vec::new(),
    };
    let to_word = |chosen: &[usize], last: usize, combo: &[u32]| {
        let mut w = vec![0; n];
        for (&j, &c) in chosen.iter().chain(std::iter::once(&last)).zip(combo) {
            w[j] = c;
        }
        w
    };
    if let Err(combo) = fresh().push(0, &cols[0]) {
        return Ok(Some(to_word(&[], 0, &combo)));
    }

    fn dfs(
        r: &mut Reducer,
        cols: &[Vec<u32>],
        start: usize,
        limit: usize,
        cancel: &dyn Fn() -> bool,
    ) -> Option<(Vec<usize>, usize, Vec<u32>)> {
        if cancel() {
            return None;
        }
        for j in start..cols.len() {
            match r.push(j, &cols[j]) {
                Err(combo) => return Some((r.chosen.clone(), j, combo)),
                Ok(()) => {
                    if r.chosen.len() < limit {
                        if let Some(hit) = dfs(r, cols, j + 1, limit, cancel) {
                            return Some(hit);
                        }
                    }
                    r.pop();
                }
            }
        }
        None
    }

    // Level by level, so the first hit has minimum weight.
    for w in 2..=max_w.min(n) {
        let found = first_hit(n - 1, |i, cancel| {
            let j = i + 1;
            let mut r = fresh();
            r.push(0, &cols[0]).ok()?;
            match r.push(j, &cols[j]) {
                Err(combo) => Some((r.chosen.clone(), j, combo)),
                Ok(()) => {
                    if w == 2 {
                        None
                    } else {
                        dfs(&mut r, &cols, j + 1, w, cancel)
                    }
                }
            }
        });
        if let Some((chosen, last, combo)) = found {
            return Ok(Some(to_word(&chosen, last, &combo)));
        }
    }
    Ok(None)
}

/// Support-rank decision: does the code contain a nonzero word of weight
/// at most `w`? Works over GF(q^d), i.e. on the extension code.
pub fn has_weight_at_most(code: &CyclicCode, w: usize, budget: u64) -> Result<bool, DistanceError> {
    if w == 0 || code.k() == 0 {
        return Ok(false);
    }
    if code.k() == code.n() {
        return Ok(true);
    }
    Ok(min_dependent_support(&code.parity_check_matrix(), w, budget)?.is_some())
}

/// Minimum-weight nonzero word in the row space of `gen` (full row rank,
/// shift invariant), found by enumerating sets of `k - 1` independent
/// columns through coordinate 0: a minimum-weight word is, up to a scalar,
/// the unique word vanishing on such a set inside its zero set.
///
/// Stops early at the first word of weight `<= stop_at`.
pub fn zero_set_search(gen: &Matrix, stop_at: usize) -> (usize, Vec<u32>) {
    let f = gen.field().as_ref();
    let n = gen.cols();
    let k = gen.rows();
    assert!(k >= 1, "zero_set_search needs a nonzero code");
    if k == 1 {
        let w = gen.row(0).to_vec();
        return (weight(&w), w);
    }

    /// Subspace basis with the column `j` eliminated; `None` if every basis
    /// vector already vanishes at `j`.
    fn eliminate(f: &FieldSpec, basis: &[Vec<u32>], j: usize) -> Option<Vec<Vec<u32>>> {
        let p = basis.iter().position(|b| b[j] != 0)?;
        let pv = &basis[p];
        let inv = f.inv(pv[j]).unwrap();
        Some(
            basis
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, b)| {
                    if b[j] == 0 {
                        return b.clone();
                    }
                    let factor = f.mul(b[j], inv);
                    b.iter().zip(pv).map(|(&x, &y)| f.sub(x, f.mul(factor, y))).collect()
                })
                .collect(),
        )
    }

    struct Best {
        w: usize,
        word: Vec<u32>,
    }

    fn dfs(
        f: &FieldSpec,
        basis: Vec<Vec<u32>>,
        start: usize,
        stop_at: usize,
        best: &mut Best,
        cancel: &dyn Fn() -> bool,
    ) -> bool {
        let n = basis[0].len();
        if basis.len() == 1 {
            let w = weight(&basis[0]);
            if w < best.w {
                best.w = w;
                best.word = basis[0].clone();
            }
            return best.w <= stop_at;
        }
        if cancel() {
            return false;
        }
        let need = basis.len() - 1;
        for j in start..=n - need {
            if let Some(next) = eliminate(f, &basis, j) {
                if dfs(f, next, j + 1, stop_at, best, cancel) {
                    return true;
                }
            }
        }
        false
    }

    let root = eliminate(f, &gen.row_vecs(), 0).expect("a nonzero cyclic code has no zero column");
    if root.len() == 1 {
        let w = weight(&root[0]);
        return (w, root[0].clone());
    }
    // Branch on the second column of the zero set.
    let branches: Vec<usize> = (1..=n - (root.len() - 1)).collect();
    let hit = AtomicUsize::new(usize::MAX);
    let results: Vec<Option<Best>> = branches
        .par_iter()
        .enumerate()
        .map(|(i, &j)| {
            if hit.load(Ordering::Relaxed) < i {
                return None;
            }
            let next = eliminate(f, &root, j)?;
            let mut best = Best {
                w: usize::MAX,
                word: Vec::new(),
            };
            let cancel = || hit.load(Ordering::Relaxed) < i;
            if dfs(f, next, j + 1, stop_at, &mut best, &cancel) {
                hit.fetch_min(i, Ordering::Relaxed);
            }
            Some(best)
        })
        .collect();
    let cut = hit.load(Ordering::Relaxed);
    let best = results
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i <= cut)
        .filter_map(|(_, b)| b)
        .filter(|b| b.w != usize::MAX)
        .min_by_key(|b| b.w)
        .expect("some column set reaches dimension one");
    (best.w, best.word)
}

/// Rotates and scales a word so its support is the lexicographically
/// smallest among its cyclic shifts and its first nonzero entry is 1.
pub fn canonical_word(f: &FieldSpec, word: &[u32]) -> Vec<u32> {
    let n = word.len();
    let support_of = |s: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).filter(|&j| word[j] != 0).map(|j| (j + n - s) % n).collect();
        v.sort_unstable();
        v
    };
    let shift = (0..n)
        .filter(|&s| word[s] != 0)
        .min_by_key(|&s| support_of(s))
        .unwrap_or(0);
    let rotated: Vec<u32> = (0..n).map(|j| word[(j + shift) % n]).collect();
    let lead = rotated.iter().copied().find(|&x| x != 0).unwrap_or(1);
    let inv = f.inv(lead).unwrap_or(1);
    rotated.iter().map(|&x| f.mul(x, inv)).collect()
}

/// A minimum-weight nonzero word of the extension code, by whichever
/// rank-based search fits the budget.
pub fn min_weight_word(code: &CyclicCode, budget: u64) -> Result<(usize, Vec<u32>), DistanceError> {
    let n = code.n();
    let k = code.k();
    if k == 0 {
        return Err(DistanceError::ZeroCode);
    }
    let (lower, _) = bch_lower(code.defining());
    let zs = zero_set_cost(n, k);
    if zs <= budget {
        return Ok(zero_set_search(&code.generator_matrix(), lower));
    }
    let rows = n - k;
    let mut reach = lower;
    while reach < n - k + 1 && low_weight_cost(n, rows, reach + 1) <= budget {
        reach += 1;
    }
    match min_dependent_support(&code.parity_check_matrix(), reach, budget)? {
        Some(word) => Ok((weight(&word), word)),
        None => Err(DistanceError::CombinatorialBudgetExceeded {
            needed: low_weight_cost(n, rows, reach + 1).min(zs),
            budget,
        }),
    }
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

/// Tightest distance information obtainable within `budget`.
pub fn min_distance(code: &CyclicCode, budget: u64) -> DistanceResult {
    min_distance_with(code, budget, Hints::default())
}

/// As [`min_distance`], seeded with externally certified bounds.
pub fn min_distance_with(code: &CyclicCode, budget: u64, hints: Hints) -> DistanceResult {
    let n = code.n();
    let k = code.k();
    if k == 0 {
        return DistanceResult::undefined(n);
    }
    let (bch, _) = bch_lower(code.defining());
    let mut lower = hints.lower.map_or(bch, |(l, _)| l.max(bch));
    let upper = hints.upper.map_or(n - k + 1, |(u, _)| u.min(n - k + 1));
    assert!(lower <= upper, "certified bounds cross: {lower} > {upper}");
    if lower == upper {
        return DistanceResult::exact(lower, DistanceMethod::Sandwich);
    }

    let rows = n - k;
    let exh = exhaustive_cost(code);
    let zs = zero_set_cost(n, k);
    let lw = low_weight_cost(n, rows, lower);
    let mut options = [
        (exh, DistanceMethod::Exhaustive),
        (zs, DistanceMethod::ZeroSet),
        (lw, DistanceMethod::LowWeight),
    ];
    options.sort_by_key(|o| o.0);
    for (cost, method) in options {
        if cost > budget {
            break;
        }
        match method {
            DistanceMethod::Exhaustive => {
                let d = exhaustive_min_weight(code, lower);
                return DistanceResult::exact(d, method);
            }
            DistanceMethod::ZeroSet => {
                let (d, _) = zero_set_search(&code.generator_matrix(), lower);
                return DistanceResult::exact(d, method);
            }
            _ => {
                let mut reach = lower;
                while reach + 1 < upper && low_weight_cost(n, rows, reach + 1) <= budget {
                    reach += 1;
                }
                let h = code.parity_check_matrix();
                if let Ok(Some(word)) = min_dependent_support(&h, reach, budget) {
                    return DistanceResult::exact(weight(&word), method);
                }
                lower = reach + 1;
                if lower == upper {
                    return DistanceResult::exact(lower, method);
                }
                return DistanceResult {
                    lower,
                    upper,
                    exact: None,
                    method: DistanceMethod::Sandwich,
                    undefined: false,
                };
            }
        }
    }
    DistanceResult {
        lower,
        upper,
        exact: None,
        method: DistanceMethod::Sandwich,
        undefined: false,
    }
}
