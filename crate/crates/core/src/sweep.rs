//! Exhaustive sweeps over every q-closed defining set of small instances.
//!
//! Each sweep compares two values obtained by unrelated oracles:
//! alphabet-explicit enumeration over GF(q) on one side, rank computations
//! over GF(q^d) on the other. Sets whose oracles do not fit the budget are
//! counted as skipped rather than passed.

use serde::Serialize;

use crate::bounds::{bch_lower, betti_sala_lower, betti_sala_witnesses, exact_dual_distance, hartmann_tzeng_lower};
use crate::cyclic::{Base, CycContext, CyclicCode, ExponentSet};
use crate::distance::{
    exhaustive_cost, exhaustive_min_weight, low_weight_cost, min_dependent_support, weight_enumeration_cost,
    weight_enumeration_min_weight, zero_set_cost, zero_set_search,
};

/// The instances (q, n) swept by default.
pub const INSTANCES: [(u64, usize); 6] = [(2, 7), (2, 15), (3, 8), (3, 13), (4, 15), (5, 8)];

/// Every union of q-cyclotomic cosets other than the empty and the full set.
pub fn closed_sets(ctx: &CycContext) -> Vec<ExponentSet> {
    let cosets = ctx.cosets();
    let c = cosets.len();
    (1..(1u64 << c) - 1)
        .map(|mask| {
            cosets
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(ExponentSet::empty(ctx.n()), |acc, (_, s)| acc.union(s))
        })
        .collect()
}

/// Exact distance by enumerating words over the code's own alphabet.
pub fn alphabet_distance(code: &CyclicCode, budget: u64) -> Option<usize> {
    let n = code.n();
    let k = code.k();
    if k == 0 {
        return None;
    }
    let top = n - k + 1;
    let enum_cost = weight_enumeration_cost(n, n - k, code.alphabet_size(), top);
    if exhaustive_cost(code) <= budget.min(enum_cost) {
        return Some(exhaustive_min_weight(code, 0));
    }
    match weight_enumeration_min_weight(code, top, budget) {
        Ok(Some((w, _))) => Some(w),
        _ => None,
    }
}

/// Exact distance of the extension code by rank computations over GF(q^d).
pub fn rank_distance(code: &CyclicCode, budget: u64) -> Option<usize> {
    let n = code.n();
    let k = code.k();
    if k == 0 {
        return None;
    }
    if k == n {
        return Some(1);
    }
    let top = n - k + 1;
    let zs = zero_set_cost(n, k);
    if zs <= budget && zs <= low_weight_cost(n, n - k, top) {
        return Some(zero_set_search(&code.generator_matrix(), 0).0);
    }
    match min_dependent_support(&code.parity_check_matrix(), top, budget) {
        Ok(Some(w)) => Some(w.iter().filter(|&&x| x != 0).count()),
        _ => None,
    }
}

/// Agreement counts for one property.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub agreed: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: Option<bool>, what: impl FnOnce() -> String) {
        match ok {
            None => self.skipped += 1,
            Some(true) => {
                self.checked += 1;
                self.agreed += 1;
            }
            Some(false) => {
                self.checked += 1;
                self.failures.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub sets: usize,
    /// Dual distance equals the distance of the complement-set code.
    pub dual_complement: Tally,
    /// Subfield code and extension code have the same distance.
    pub subfield_extension: Tally,
    /// BCH, Hartmann-Tzeng and checked Betti-Sala bounds never exceed d.
    pub lower_bounds: Tally,
    /// exact_dual_distance, when it fires, equals the dual distance.
    pub exact_dual: Tally,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.dual_complement.passed()
            && self.subfield_extension.passed()
            && self.lower_bounds.passed()
            && self.exact_dual.passed()
    }
}

fn code(ctx: &std::sync::Arc<CycContext>, s: &ExponentSet, base: Base) -> CyclicCode {
    CyclicCode::new(ctx, s.clone(), base).expect("q-closed set gives a code")
}

/// Runs every sweep on `instances`.
pub fn run_sweep(instances: &[(u64, usize)], budget: u64) -> SweepReport {
    let mut rep = SweepReport::default();
    for &(q, n) in instances {
        let ctx = CycContext::new(q, n).expect("sweep instance has gcd(q, n) = 1");
        for s in closed_sets(&ctx) {
            rep.sets += 1;
            let label = |what: &str| format!("q={q} n={n} S={:?}: {what}", s.as_slice());
            let c = code(&ctx, &s, Base::Subfield);
            let d_sub = alphabet_distance(&c, budget);
            let d_ext = rank_distance(&code(&ctx, &s, Base::Extension), budget);
            rep.subfield_extension.record(d_sub.zip(d_ext).map(|(a, b)| a == b), || {
                label(&format!("subfield d = {d_sub:?}, extension d = {d_ext:?}"))
            });

            let d_dual = rank_distance(&c.dual(), budget);
            let d_comp = alphabet_distance(&c.complement(), budget);
            rep.dual_complement.record(d_dual.zip(d_comp).map(|(a, b)| a == b), || {
                label(&format!("dual d = {d_dual:?}, complement-set d = {d_comp:?}"))
            });

            let d = d_sub.or(d_ext);
            let bch = bch_lower(&s).0;
            let ht = hartmann_tzeng_lower(&s).0;
            let bs = betti_sala_witnesses(&s)
                .iter()
                .filter_map(|w| betti_sala_lower(&s, w).ok())
                .max()
                .unwrap_or(0);
            rep.lower_bounds.record(d.map(|d| bch <= d && ht <= d && bs <= d), || {
                label(&format!("d = {d:?}, BCH {bch}, Hartmann-Tzeng {ht}, Betti-Sala {bs}"))
            });

            if let Some(v) = exact_dual_distance(&s) {
                rep.exact_dual.record(d_dual.map(|d| d == v), || {
                    label(&format!("criterion gives {v}, dual d = {d_dual:?}"))
                });
            }
        }
    }
    rep
}
