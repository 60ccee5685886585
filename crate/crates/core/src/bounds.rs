//! Distance bounds read off a defining set: BCH runs, the generalized
//! Betti-Sala pattern, the Singleton-like bound for (r, δ)-LRCs, and the
//! exact dual distance criterion for sets containing a subgroup coset.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclic::ExponentSet;
use crate::num::{divisors, gcd, inv_mod, modn};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("step {b} is not a unit modulo {n}")]
    StepNotUnit { b: i64, n: usize },
    #[error("Betti-Sala pattern element {exponent} is not in the defining set")]
    WitnessNotContained { exponent: usize },
    #[error("Betti-Sala pattern needs (2m+1)δ <= n, got m = {m}, δ = {delta}, n = {n}")]
    PatternWraps { m: usize, delta: usize, n: usize },
    #[error("Betti-Sala witness needs m >= 1 and δ >= 1")]
    DegenerateWitness,
    #[error("Singleton-like bound needs 1 <= r <= k and δ >= 2 (n = {n}, k = {k}, r = {r}, δ = {delta})")]
    BadParams {
        n: usize,
        k: usize,
        r: usize,
        delta: usize,
    },
}

/// A run `{u, u + b, ..., u + (length - 1) b}` inside a defining set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchWitness {
    pub u: usize,
    pub b: usize,
    pub length: usize,
}

impl BchWitness {
    pub fn exponents(&self, n: usize) -> ExponentSet {
        ExponentSet::progression(n, self.u as i64, self.b as i64, self.length)
    }
}

/// The run-plus-blocks pattern
/// `{u + i b : 0 <= i < mδ} ∪ {u + ((m+i)δ + j) b : 0 <= i <= m, 1 <= j < δ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiSalaWitness {
    pub u: i64,
    pub b: i64,
    pub m: usize,
    pub delta: usize,
}

impl BettiSalaWitness {
    pub fn pattern(&self, n: usize) -> ExponentSet {
        let (m, d) = (self.m as i64, self.delta as i64);
        let run = (0..m * d).map(|i| self.u + i * self.b);
        let blocks = (0..=m).flat_map(|i| (1..d).map(move |j| self.u + ((m + i) * d + j) * self.b));
        ExponentSet::new(n, run.chain(blocks))
    }

    pub fn bound(&self) -> usize {
        self.m * self.delta + self.delta
    }
}

/// Longest cyclic run of consecutive residues in a membership mask, with its start.
fn longest_run(mask: &[bool]) -> (usize, usize) {
    let n = mask.len();
    if mask.iter().all(|&x| x) {
        return (n, 0);
    }
    // Start scanning right after a gap so runs crossing 0 are counted whole.
    let gap = mask.iter().position(|&x| !x).unwrap();
    let (mut best, mut best_start) = (0, 0);
    let mut cur = 0;
    for i in 1..=n {
        let idx = (gap + i) % n;
        if mask[idx] {
            cur += 1;
            if cur > best {
                best = cur;
                best_start = (idx + n + 1 - cur) % n;
            }
        } else {
            cur = 0;
        }
    }
    (best, best_start)
}

/// BCH bound maximized over every unit step `b` modulo `n`.
///
/// Returns `longest run + 1` and the run achieving it; ties go to the
/// smallest step, then the smallest start.
pub fn bch_lower(s: &ExponentSet) -> (usize, BchWitness) {
    let n = s.n();
    let mut best = BchWitness { u: 0, b: 1, length: 0 };
    for b in 1..n.max(2) {
        if gcd(b as u64, n as u64) != 1 {
            continue;
        }
        let binv = inv_mod(b, n).unwrap_or(0);
        let mut mask = vec![false; n];
        for e in s.iter() {
            mask[e * binv % n] = true;
        }
        let (len, start) = longest_run(&mask);
        if len > best.length {
            best = BchWitness {
                u: start * b % n,
                b: b % n.max(1),
                length: len,
            };
        }
        if len == n {
            break;
        }
    }
    (best.length + 1, best)
}

/// Checks the witness against `s` and returns the bound `mδ + δ`.
pub fn betti_sala_lower(s: &ExponentSet, w: &BettiSalaWitness) -> Result<usize, BoundsError> {
    let n = s.n();
    if gcd(modn(w.b, n) as u64, n as u64) != 1 {
        return Err(BoundsError::StepNotUnit { b: w.b, n });
    }
    if w.m == 0 || w.delta == 0 {
        return Err(BoundsError::DegenerateWitness);
    }
    if (2 * w.m + 1) * w.delta > n {
        return Err(BoundsError::PatternWraps {
            m: w.m,
            delta: w.delta,
            n,
        });
    }
    if let Some(e) = w.pattern(n).iter().find(|&e| !s.contains(e as i64)) {
        return Err(BoundsError::WitnessNotContained { exponent: e });
    }
    Ok(w.bound())
}

/// Every valid Betti-Sala witness for `s` (intended for small `n`).
pub fn betti_sala_witnesses(s: &ExponentSet) -> Vec<BettiSalaWitness> {
    let n = s.n();
    let mut out = Vec::new();
    for b in (1..n.max(2)).filter(|&b| gcd(b as u64, n as u64) == 1) {
        for u in 0..n {
            for delta in 1..=n {
                for m in (1..).take_while(|m| (2 * m + 1) * delta <= n) {
                    let w = BettiSalaWitness {
                        u: u as i64,
                        b: b as i64,
                        m,
                        delta,
                    };
                    if betti_sala_lower(s, &w).is_ok() {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

/// `n - k - (ceil(k/r) - 1)(δ - 1) + 1`.
pub fn singleton_like(n: usize, k: usize, r: usize, delta: usize) -> Result<usize, BoundsError> {
    if r == 0 || r > k || delta < 2 || k > n {
        return Err(BoundsError::BadParams { n, k, r, delta });
    }
    Ok(n + 1 - k - (k.div_ceil(r) - 1) * (delta - 1))
}

/// Runs `{c + i a + j b : 0 <= i < run, 0 <= j <= shifts}` inside a
/// defining set, with `a` a unit and `gcd(n, b) <= run`. The code distance
/// is then at least `run + 1 + shifts` (Hartmann-Tzeng).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HtWitness {
    pub c: usize,
    pub a: usize,
    pub b: usize,
    pub run: usize,
    pub shifts: usize,
}

impl HtWitness {
    pub fn bound(&self) -> usize {
        self.run + 1 + self.shifts
    }

    pub fn exponents(&self, n: usize) -> ExponentSet {
        let (c, a, b) = (self.c as i64, self.a as i64, self.b as i64);
        ExponentSet::new(
            n,
            (0..=self.shifts as i64).flat_map(|j| (0..self.run as i64).map(move |i| c + i * a + j * b)),
        )
    }

    /// Whether the witness satisfies the hypotheses and lies in `s`.
    pub fn holds_in(&self, s: &ExponentSet) -> bool {
        let n = s.n() as u64;
        self.run >= 1
            && gcd(self.a as u64, n) == 1
            && (self.shifts == 0 || (gcd(self.b as u64, n) as usize) <= self.run)
            && self.exponents(s.n()).is_subset(s)
    }
}

/// Hartmann-Tzeng bound maximized over unit steps `a`, shifts `b` and
/// starts `c`. Cubic in `n`, so callers use it only when the BCH bound is
/// not enough.
pub fn hartmann_tzeng_lower(s: &ExponentSet) -> (usize, HtWitness) {
    let n = s.n();
    let (bch, w) = bch_lower(s);
    let mut best = HtWitness { c: w.u, a: w.b, b: 0, run: w.length, shifts: 0 };
    if bch >= n || s.is_empty() {
        return (best.bound().max(bch), best);
    }
    for a in 1..n {
        if gcd(a as u64, n as u64) != 1 {
            continue;
        }
        let ainv = inv_mod(a, n).unwrap();
        let mut mask = vec![false; n];
        for e in s.iter() {
            mask[e * ainv % n] = true;
        }
        // runs[x]: length of the run of the mask starting at x.
        let mut runs = vec![0usize; n];
        for _ in 0..2 {
            for x in (0..n).rev() {
                runs[x] = if mask[x] { (1 + runs[(x + 1) % n]).min(n) } else { 0 };
            }
        }
        for b in 1..n {
            let g = gcd(b as u64, n as u64) as usize;
            let period = n / g;
            for c in 0..n {
                let mut m = runs[c];
                if m + period <= best.bound() {
                    continue;
                }
                for j in 1..period {
                    m = m.min(runs[(c + j * b) % n]);
                    if m < g || m == 0 {
                        break;
                    }
                    if m + 1 + j > best.bound() {
                        best = HtWitness { c: c * a % n, a, b: b * a % n, run: m, shifts: j };
                    }
                }
            }
        }
    }
    debug_assert!(best.holds_in(s));
    (best.bound(), best)
}

/// Lower bound on the dual distance used by [`exact_dual_distance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualLower {
    /// Run of length `s - 1` in the complement of `A`.
    Bch(BchWitness),
    /// Hartmann-Tzeng configuration in the complement of `A` with bound `>= s`.
    HartmannTzeng(HtWitness),
}

/// Why [`exact_dual_distance`] fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualDistanceWitness {
    /// Order of the subgroup whose coset `{t, t + s, ...}` lies in `A`.
    pub ell: usize,
    /// Coset representative.
    pub t: usize,
    pub lower: DualLower,
}

impl DualDistanceWitness {
    pub fn distance(&self, n: usize) -> usize {
        n / self.ell
    }
}

/// Exact minimum distance of the dual of the code with defining set `A`,
/// when `A` contains a coset of the order-ℓ subgroup (a dual word of weight
/// `n/ℓ`) and the complement of `A` certifies dual distance at least `n/ℓ`
/// by the BCH or Hartmann-Tzeng bound. The value is `n/ℓ` for the largest
/// qualifying ℓ; `None` when no ℓ qualifies.
pub fn exact_dual_distance(a: &ExponentSet) -> Option<usize> {
    exact_dual_distance_witness(a).map(|w| w.distance(a.n()))
}

pub fn exact_dual_distance_witness(a: &ExponentSet) -> Option<DualDistanceWitness> {
    let n = a.n();
    let comp = a.complement();
    let (bch, run) = bch_lower(&comp);
    // Computed on first need; the dual's defining set is the negated
    // complement, which has the same bounds.
    let mut ht: Option<(usize, HtWitness)> = None;
    for ell in divisors(n as u64).into_iter().rev() {
        let ell = ell as usize;
        let s = n / ell;
        let Some(t) = (0..s).find(|&t| (0..ell).all(|i| a.contains((t + i * s) as i64))) else {
            continue;
        };
        if bch >= s {
            let run = BchWitness { length: s - 1, ..run };
            return Some(DualDistanceWitness { ell, t, lower: DualLower::Bch(run) });
        }
        let (bound, w) = *ht.get_or_insert_with(|| hartmann_tzeng_lower(&comp));
        if bound >= s {
            return Some(DualDistanceWitness { ell, t, lower: DualLower::HartmannTzeng(w) });
        }
    }
    None
}
