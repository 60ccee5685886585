//! Families of optimal cyclic (r, δ)-LRCs built from a product `AB` of two
//! zero sets.
//!
//! Every family fixes `B` as a short run of exponents (so `d_B = δ` by the
//! BCH and Singleton bounds) and chooses `A` so that `AB` contains a long run
//! (or a Betti-Sala pattern) while the dual of the code with defining set `A`
//! has small distance. The builder computes `d_A⊥` instead of trusting the
//! family's intent, certifies locality through [`locality_from_product`], and
//! compares the distance with the Singleton-like bound.
//!
//! Families over `n | q - 1` use `B = {0, b, ..., (δ-2) b}`. Families over
//! `n | q + 1` work in GF(q²); there `B` is symmetric around 0 (`δ` even) or
//! `{-(δ-3)/2, ..., (δ-1)/2}·b` (`δ` odd) so that `AB` is closed under
//! negation, which is exactly q-closure when `q ≡ -1 (mod n)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{
    bch_lower, betti_sala_lower, exact_dual_distance_witness, singleton_like, BchWitness,
    BettiSalaWitness, DualDistanceWitness,
};
use crate::cyclic::{product_set, Base, CycContext, CyclicCode, CyclicError, ExponentSet};
use crate::distance::{min_distance_with, DistanceMethod, Hints};
use crate::locality::{locality_from_product, LocalityCertificate, LocalityError};
use crate::num::{gcd, prime_power};

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Generic run-plus-tail family, `n | q - 1`.
    T41,
    /// Run-plus-tail with `(r+δ-1) | n` and closed-form `(k, d)`.
    C42,
    /// One tail element; allows `(r+δ-1) ∤ n`.
    C44,
    /// One tail element with `δ = 2` (MDS or almost-MDS codes).
    C46,
    /// Betti-Sala pattern family.
    T48,
    /// Betti-Sala pattern with `m = 1`.
    P49,
    /// Betti-Sala pattern at `n = 4δ + 2`.
    P410,
    /// Generic run-plus-tail family, `n | q + 1`, `δ` even.
    T51,
    C52_1,
    C52_2,
    C52_3,
    /// Symmetric two-block family, `n | q + 1` odd, `δ` even.
    C56,
    /// Generic run-plus-tail family, `n | q + 1`, `δ` odd.
    T58,
    C59_1,
    C59_2,
    /// Two-block family, `n | q + 1` odd, `δ` odd.
    C511,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::T41,
        Family::C42,
        Family::C44,
        Family::C46,
        Family::T48,
        Family::P49,
        Family::P410,
        Family::T51,
        Family::C52_1,
        Family::C52_2,
        Family::C52_3,
        Family::C56,
        Family::T58,
        Family::C59_1,
        Family::C59_2,
        Family::C511,
    ];

    /// True for the families whose roots of unity live in GF(q²).
    pub fn is_q_plus_one(self) -> bool {
        use Family::*;
        matches!(self, T51 | C52_1 | C52_2 | C52_3 | C56 | T58 | C59_1 | C59_2 | C511)
    }

    fn has_explicit_r(self) -> bool {
        use Family::*;
        matches!(self, C42 | C52_1 | C52_2 | C52_3 | C59_1 | C59_2)
    }

    fn uses_betti_sala(self) -> bool {
        matches!(self, Family::T48 | Family::P49 | Family::P410)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown family {0:?}")]
pub struct UnknownFamily(pub String);

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Family, UnknownFamily> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

fn one() -> usize {
    1
}

fn is_one(b: &usize) -> bool {
    *b == 1
}

fn is_zero(t: &usize) -> bool {
    *t == 0
}

/// Parameters for one family member. Unused fields are ignored by the
/// family; missing required ones are reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionRequest {
    pub family: Family,
    pub q: u64,
    pub n: usize,
    pub delta: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// Step of every progression; must be a unit modulo `n`.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub b: usize,
    /// Start of the run in `A`.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub t: usize,
    /// Run length in `A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Tail offsets `i_1 < ... < i_s`; for C44/C46 the single offset ℓ.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tail: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    /// Offset of the tail coset in C42.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    /// `k / r`; fixes ℓ for C42, C52_1 and C59_1 when `ell` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
}

impl ConstructionRequest {
    pub fn new(family: Family, q: u64, n: usize, delta: usize) -> ConstructionRequest {
        ConstructionRequest {
            family,
            q,
            n,
            delta,
            r: None,
            b: 1,
            t: 0,
            m: None,
            tail: Vec::new(),
            i: None,
            ell: None,
            j: None,
            mu: None,
        }
    }

    pub fn r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn b(mut self, b: usize) -> Self {
        self.b = b;
        self
    }

    pub fn t(mut self, t: usize) -> Self {
        self.t = t;
        self
    }

    pub fn m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn tail(mut self, tail: impl IntoIterator<Item = usize>) -> Self {
        self.tail = tail.into_iter().collect();
        self
    }

    pub fn i(mut self, i: usize) -> Self {
        self.i = Some(i);
        self
    }

    pub fn ell(mut self, ell: usize) -> Self {
        self.ell = Some(ell);
        self
    }

    pub fn j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    pub fn mu(mut self, mu: usize) -> Self {
        self.mu = Some(mu);
        self
    }

    /// `ν = n / (r + δ - 1)` when the request has `r`.
    fn nu(&self) -> Option<usize> {
        let big = (self.r? + self.delta).saturating_sub(1);
        (big > 0 && self.n % big == 0).then_some(self.n / big)
    }

    fn group(&self) -> usize {
        (self.r.unwrap_or(0) + self.delta).saturating_sub(1)
    }

    /// ℓ, either given or derived from μ.
    fn resolved_ell(&self) -> Option<i64> {
        if let Some(l) = self.ell {
            return Some(l as i64);
        }
        let (mu, nu) = (self.mu? as i64, self.nu()? as i64);
        match self.family {
            Family::C42 => Some(nu - mu),
            Family::C52_1 if (nu - mu) % 2 == 0 => Some((nu - mu) / 2),
            Family::C59_1 if (nu - mu - 1) % 2 == 0 => Some((nu - mu - 1) / 2),
            _ => None,
        }
    }

    /// The single tail offset of C44/C46.
    fn single_tail(&self) -> Option<usize> {
        match self.tail.as_slice() {
            [x] => Some(*x),
            [] => self.ell,
            _ => None,
        }
    }

    fn m_or(&self) -> usize {
        match self.family {
            Family::P49 | Family::P410 => 1,
            _ => self.m.unwrap_or(0),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("{family} hypotheses violated: {}", clauses.join("; "))]
    HypothesisViolated { family: Family, clauses: Vec<String> },
    #[error("AB is not a union of {q}-cyclotomic cosets; coset {coset:?} is split")]
    NotQClosed { q: u64, coset: Vec<usize> },
    #[error("{family} is only stated for odd n; the even-length analogue is not implemented")]
    EvenLengthUnimplemented { family: Family },
    #[error("{what}: closed form gives {formula}, computation gives {computed}")]
    FormulaDisagreement {
        what: &'static str,
        formula: usize,
        computed: String,
    },
    #[error(transparent)]
    Locality(#[from] LocalityError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
}

/// Bounds that pin the distance of a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub bch: BchWitness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti_sala: Option<BettiSalaWitness>,
    /// Why `d_A⊥` has its value, when the coset criterion applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_distance: Option<DualDistanceWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityCertificate {
    pub family: Family,
    pub request: ConstructionRequest,
    pub n: usize,
    pub k: usize,
    pub d_exact: Option<usize>,
    pub d_lower: usize,
    pub d_upper: usize,
    pub distance_method: DistanceMethod,
    pub singleton_like_value: usize,
    pub r: usize,
    pub delta: usize,
    /// `d_exact` equals the Singleton-like bound for the certified `(r, δ)`.
    pub optimal: bool,
    /// Whether the family's own optimality condition holds.
    pub condition_met: bool,
    pub k_formula: usize,
    /// Closed-form distance, stated only when the condition holds.
    pub d_formula: Option<usize>,
    pub witnesses: Witnesses,
}

impl OptimalityCertificate {
    pub fn divides(&self) -> bool {
        self.n % (self.r + self.delta - 1) == 0
    }
}

/// A built family member.
#[derive(Debug, Clone)]
pub struct Construction {
    pub request: ConstructionRequest,
    pub a: ExponentSet,
    pub b: ExponentSet,
    pub code: CyclicCode,
    pub locality: LocalityCertificate,
    pub optimality: OptimalityCertificate,
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Clauses(Vec<String>);

impl Clauses {
    fn need(&mut self, ok: bool, clause: &str) {
        if !ok {
            self.0.push(clause.to_string());
        }
    }
}

fn tail_clauses(c: &mut Clauses, req: &ConstructionRequest) {
    let (n, delta, m) = (req.n, req.delta, req.m_or());
    let tail = &req.tail;
    c.need(!tail.is_empty(), "s ≥ 1 tail offsets");
    if let Some(&first) = tail.first() {
        c.need(first + 1 >= m + delta, "m−1+δ ≤ i_1");
    }
    if let Some(&last) = tail.last() {
        c.need(last + delta <= n, "i_s ≤ n−δ");
    }
    c.need(tail.windows(2).all(|w| w[0] < w[1]), "i_1 < … < i_s");
    c.need(
        tail.windows(2).all(|w| w[1] >= w[0] + delta),
        "i_{ℓ+1}−i_ℓ ≥ δ",
    );
}

/// Closed-form dimension; may be non-positive for out-of-range requests.
fn k_formula(req: &ConstructionRequest) -> Option<i64> {
    use Family::*;
    let n = req.n as i64;
    let d = req.delta as i64;
    let m = req.m_or() as i64;
    let s = req.tail.len() as i64;
    let r = req.r.unwrap_or(0) as i64;
    let i = req.i.unwrap_or(0) as i64;
    Some(match req.family {
        T41 | T51 | T58 => n - m + 1 - (s + 1) * (d - 1),
        C44 | C56 | C511 => n - m - 2 * d + 3,
        C46 => n - m - 1,
        T48 | P49 | P410 => n - m * d - (m + 1) * (d - 1),
        C42 => (req.nu()? as i64 - req.resolved_ell()?) * r - i,
        C52_1 | C59_2 => (req.nu()? as i64 - 2 * req.resolved_ell()?) * r - 2 * i,
        C52_2 | C52_3 | C59_1 => (req.nu()? as i64 - 2 * req.resolved_ell()? - 1) * r - 2 * i,
    })
}

fn param_clauses(req: &ConstructionRequest) -> Vec<String> {
    use Family::*;
    let mut c = Clauses(Vec::new());
    let (q, n, delta, b) = (req.q, req.n, req.delta, req.b);
    c.need(prime_power(q).is_some(), "q is a prime power");
    c.need(n >= 2, "n ≥ 2");
    if !c.0.is_empty() {
        return c.0;
    }
    c.need(gcd(n as u64, q) == 1, "gcd(n,q)=1");
    c.need(gcd(b as u64, n as u64) == 1, "gcd(b,n)=1");
    c.need(delta >= 2, "δ ≥ 2");
    if req.family.is_q_plus_one() {
        c.need((q + 1) % n as u64 == 0, "n | q+1");
    } else {
        c.need((q - 1) % n as u64 == 0, "n | q−1");
    }
    if !c.0.is_empty() {
        return c.0;
    }

    let m = req.m_or();
    let needs_m = matches!(req.family, T41 | C44 | C46 | T48 | T51 | T58 | C56 | C511);
    if needs_m {
        c.need(req.m.is_some_and(|m| m >= 1), "m ≥ 1");
    }
    if req.family.has_explicit_r() {
        c.need(req.r.is_some_and(|r| r >= 1), "r ≥ 1");
        c.need(req.i.is_some(), "i given");
        c.need(req.resolved_ell().is_some(), "ℓ given (or μ with matching parity)");
        if !c.0.is_empty() {
            return c.0;
        }
        c.need(req.nu().is_some(), "(r+δ−1) | n");
        if !c.0.is_empty() {
            return c.0;
        }
    }
    let r = req.r.unwrap_or(0);
    let nu = req.nu().unwrap_or(0) as i64;
    let i = req.i.unwrap_or(0);
    let ell = req.resolved_ell().unwrap_or(0);
    let group = req.group();
    match req.family {
        T41 | T51 | T58 => tail_clauses(&mut c, req),
        C42 => {
            let j = req.j.unwrap_or(0);
            c.need(req.j.is_some(), "j given");
            c.need(i < r, "0 ≤ i ≤ r−1");
            c.need(
                (0 <= ell && ell <= nu - 3 && j <= i) || (ell == nu - 2 && j == i),
                "(0 ≤ ℓ ≤ ν−3 and 0 ≤ j ≤ i) or (ℓ = ν−2 and j = i)",
            );
        }
        C44 | C46 => {
            let lo = if req.family == C46 { m + 1 } else { m + delta - 1 };
            match req.single_tail() {
                Some(l) => {
                    if req.family == C46 {
                        c.need(lo <= l && l + 2 <= n, "m+1 ≤ ℓ ≤ n−2");
                    } else {
                        c.need(lo <= l && l + delta <= n, "m−1+δ ≤ ℓ ≤ n−δ");
                    }
                }
                None => c.need(false, "one tail offset ℓ given"),
            }
            if req.family == C46 {
                c.need(delta == 2, "δ = 2");
            }
        }
        T48 | P49 | P410 => {
            c.need((2 * m + 1) * delta <= n, "(2m+1)δ ≤ n");
            if req.family == P410 {
                c.need(n == 4 * delta + 2, "n = 4δ+2");
            }
        }
        C52_1 | C52_2 | C52_3 => {
            c.need(delta % 2 == 0, "δ even");
            c.need(i <= (r - 1) / 2, "0 ≤ i ≤ ⌊(r−1)/2⌋");
            match req.family {
                C52_1 => c.need(0 <= ell && ell <= (nu - 2).div_euclid(2), "0 ≤ ℓ ≤ ⌊(ν−2)/2⌋"),
                C52_2 => {
                    c.need(group % 2 == 0, "r+δ−1 even");
                    c.need(0 <= ell && ell <= (nu - 3).div_euclid(2), "0 ≤ ℓ ≤ ⌊(ν−3)/2⌋");
                }
                _ => {
                    c.need(nu % 2 == 1, "ν odd");
                    c.need(1 <= ell && 2 * ell <= nu - 3, "1 ≤ ℓ ≤ (ν−3)/2");
                }
            }
        }
        C59_1 | C59_2 => {
            c.need(delta % 2 == 1, "δ odd");
            c.need(group % 2 == 1, "r+δ−1 odd");
            c.need(i <= (r - 1) / 2, "0 ≤ i ≤ ⌊(r−1)/2⌋");
            if req.family == C59_1 {
                c.need(0 <= ell && ell <= (nu - 3).div_euclid(2), "0 ≤ ℓ ≤ ⌊(ν−3)/2⌋");
            } else {
                c.need(nu % 2 == 1, "ν odd");
                c.need(1 <= ell && 2 * ell <= nu - 3, "1 ≤ ℓ ≤ (ν−3)/2");
            }
        }
        C56 | C511 => {
            c.need(m % 2 == 0, "m even");
            c.need(2 * delta <= n + 1 - m.min(n + 1), "2 ≤ δ ≤ (n−m+1)/2");
            if req.family == C56 {
                c.need(delta % 2 == 0, "δ even");
            } else {
                c.need(delta % 2 == 1, "δ odd");
            }
        }
    }
    if matches!(req.family, T51) {
        c.need(delta % 2 == 0, "δ even");
    }
    if matches!(req.family, T58) {
        c.need(delta % 2 == 1, "δ odd");
    }
    if c.0.is_empty() {
        c.need(k_formula(req).is_some_and(|k| k >= 1), "k ≥ 1");
    }
    c.0
}

/// Every violated hypothesis of the request's family, named by its clause.
/// Empty iff the request can be built.
pub fn validate(req: &ConstructionRequest) -> Vec<String> {
    let mut clauses = param_clauses(req);
    if clauses.is_empty() && matches!(req.family, Family::C56 | Family::C511) && req.n % 2 == 0 {
        clauses.push("n odd".to_string());
    }
    if clauses.is_empty() {
        let (a, b) = defining_sets(req);
        let ab = product_set(&a, &b).expect("same length");
        if !ab.is_closed_under(req.q) {
            clauses.push("union of q-cyclotomic cosets".to_string());
        }
    }
    clauses
}

// ---------------------------------------------------------------------------
// Defining sets
// ---------------------------------------------------------------------------

fn run(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    lo..=hi
}

/// `A` and `B` for a request whose parameters already validated.
pub fn defining_sets(req: &ConstructionRequest) -> (ExponentSet, ExponentSet) {
    use Family::*;
    let n = req.n;
    let (t, b) = (req.t as i64, req.b as i64);
    let delta = req.delta as i64;
    let m = req.m_or() as i64;
    let big = req.group() as i64;
    let nu = req.nu().unwrap_or(0) as i64;
    let i = req.i.unwrap_or(0) as i64;
    let ell = req.resolved_ell().unwrap_or(0);
    let half_n = (n as i64 - 1) / 2;

    // Offsets from t in units of b, or absolute exponents in units of b.
    let (offsets, shifted): (Vec<i64>, bool) = match req.family {
        T41 | T51 | T58 => (
            run(0, m - 1).chain(req.tail.iter().map(|&x| x as i64)).collect(),
            true,
        ),
        C44 | C46 => (
            run(0, m - 1).chain(req.single_tail().map(|x| x as i64)).collect(),
            true,
        ),
        C42 => {
            let j = req.j.unwrap_or(0) as i64;
            (
                run(0, ell * big + i)
                    .chain((ell + 1..nu).map(|x| x * big + j))
                    .collect(),
                true,
            )
        }
        T48 | P49 | P410 => (
            run(0, (m - 1) * delta + 1)
                .chain((0..=m).map(|x| (m + x) * delta + 1))
                .collect(),
            true,
        ),
        C52_1 => {
            let h = ell * big + i;
            (run(-h, h).chain((ell + 1..nu - ell).map(|x| x * big)).collect(), false)
        }
        C52_2 => {
            let h = (2 * ell + 1) * big / 2 + i;
            (
                run(-h, h)
                    .chain((ell + 1..=nu - ell - 2).map(|x| (2 * x + 1) * big / 2))
                    .collect(),
                false,
            )
        }
        C52_3 => {
            let lo = ((nu - 1) / 2 - ell) * big - i;
            let hi = ((nu + 1) / 2 + ell) * big + i;
            (
                run(lo, hi)
                    .chain(((nu + 1) / 2 + ell + 1..=(3 * nu - 1) / 2 - ell - 1).map(|x| x * big))
                    .collect(),
                false,
            )
        }
        C56 => (
            std::iter::once(0)
                .chain((0..m / 2).flat_map(|e| {
                    let x = (n as i64 + 1) / 2 + e;
                    [x, -x]
                }))
                .collect(),
            false,
        ),
        C59_1 => {
            let lo = -(big + 1) / 2 - ell * big - i;
            let hi = (big - 1) / 2 + ell * big + i;
            (
                run(lo, hi)
                    .chain((ell + 1..=nu - ell - 2).map(|x| (big - 1) / 2 + x * big))
                    .collect(),
                false,
            )
        }
        C59_2 => (
            run(half_n - ell * big - i, half_n + ell * big + i)
                .chain((ell + 1..=nu - ell - 1).map(|x| half_n + x * big))
                .collect(),
            false,
        ),
        C511 => (run(-m / 2, m / 2 - 1).chain([half_n]).collect(), false),
    };
    let base = if shifted { t } else { 0 };
    let a = ExponentSet::new(n, offsets.into_iter().map(|x| base + x * b));

    let b_offsets: Vec<i64> = if !req.family.is_q_plus_one() {
        (0..delta - 1).collect()
    } else if delta % 2 == 0 {
        run(-(delta - 2) / 2, (delta - 2) / 2).collect()
    } else {
        run(-(delta - 3) / 2, (delta - 1) / 2).collect()
    };
    let bset = ExponentSet::new(n, b_offsets.into_iter().map(|x| x * b));
    (a, bset)
}

// ---------------------------------------------------------------------------
// Building
// ---------------------------------------------------------------------------

fn d_formula(req: &ConstructionRequest, da_perp: usize) -> usize {
    use Family::*;
    let (delta, m) = (req.delta, req.m_or());
    let big = req.group();
    let i = req.i.unwrap_or(0);
    let ell = req.resolved_ell().unwrap_or(0) as usize;
    match req.family {
        T41 | C44 | T51 | T58 | C56 | C511 => m + delta - 1,
        C46 if da_perp + m == req.n => m + 2,
        C46 => m + 1,
        T48 | P49 | P410 => (m + 1) * delta,
        C42 => delta + i + ell * big,
        C52_1 | C59_2 => delta + 2 * i + 2 * ell * big,
        C52_2 | C52_3 | C59_1 => delta + 2 * i + (2 * ell + 1) * big,
    }
}

/// The family's own sufficient condition for optimality.
fn condition_met(req: &ConstructionRequest, k: usize, r: usize, da_perp: usize) -> bool {
    use Family::*;
    let (n, delta, m) = (req.n, req.delta, req.m_or());
    match req.family {
        T41 | T51 | T58 => k.div_ceil(r) == req.tail.len() + 1,
        T48 => k.div_ceil(r) == m + 1,
        C44 | C56 | C511 => delta - 2 + m + da_perp < n,
        P49 => da_perp + 2 * delta < n + 1,
        C46 | P410 => true,
        C42 | C52_1 | C52_2 | C52_3 | C59_1 | C59_2 => req.r == Some(r),
    }
}

/// Builds, certifies and checks one family member.
pub fn build(req: &ConstructionRequest, budget: u64) -> Result<Construction, ConstructionError> {
    let clauses = param_clauses(req);
    if !clauses.is_empty() {
        return Err(ConstructionError::HypothesisViolated {
            family: req.family,
            clauses,
        });
    }
    if matches!(req.family, Family::C56 | Family::C511) && req.n % 2 == 0 {
        return Err(ConstructionError::EvenLengthUnimplemented { family: req.family });
    }
    let (a, b) = defining_sets(req);
    let ab = product_set(&a, &b)?;
    let ctx = CycContext::new(req.q, req.n)?;
    if let Some(coset) = ctx.split_coset(&ab) {
        return Err(ConstructionError::NotQClosed {
            q: req.q,
            coset: coset.as_slice().to_vec(),
        });
    }
    let code = CyclicCode::new(&ctx, ab.clone(), Base::Subfield)?;
    let n = req.n;
    let k = code.k();
    let k_formula = k_formula(req).unwrap_or(0) as usize;
    if k != k_formula {
        return Err(ConstructionError::FormulaDisagreement {
            what: "dimension",
            formula: k_formula,
            computed: k.to_string(),
        });
    }

    let locality = locality_from_product(&a, &b, &code, budget)?;
    let (r, delta) = (locality.r, locality.delta);
    if delta != req.delta {
        return Err(ConstructionError::FormulaDisagreement {
            what: "distance of the code with defining set B",
            formula: req.delta,
            computed: delta.to_string(),
        });
    }

    let (bch, bch_w) = bch_lower(&ab);
    let betti_sala = req.family.uses_betti_sala().then(|| BettiSalaWitness {
        u: req.t as i64,
        b: req.b as i64,
        m: req.m_or(),
        delta: req.delta,
    });
    let mut lower = (bch, DistanceMethod::Bch);
    if let Some(w) = &betti_sala {
        let bs = betti_sala_lower(&ab, w).expect("pattern is built from its witness");
        if bs > lower.0 {
            lower = (bs, DistanceMethod::BettiSala);
        }
    }
    let sl = singleton_like(n, k, r.min(k), delta).expect("validated parameters");
    let dist = min_distance_with(
        &code,
        budget,
        Hints {
            lower: Some(lower),
            upper: Some((sl, DistanceMethod::SingletonLike)),
        },
    );

    let met = condition_met(req, k, r, locality.da_perp);
    let d_form = met.then(|| d_formula(req, locality.da_perp));
    if let Some(df) = d_form {
        let agrees = match dist.exact {
            Some(d) => d == df,
            None => dist.lower <= df && df <= dist.upper,
        };
        if !agrees || df != sl {
            return Err(ConstructionError::FormulaDisagreement {
                what: "minimum distance",
                formula: df,
                computed: match dist.exact {
                    Some(d) => d.to_string(),
                    None => format!("[{}, {}], Singleton-like {sl}", dist.lower, dist.upper),
                },
            });
        }
    }
    if req.family.has_explicit_r() && !met {
        return Err(ConstructionError::FormulaDisagreement {
            what: "locality r",
            formula: req.r.unwrap_or(0),
            computed: r.to_string(),
        });
    }

    let optimality = OptimalityCertificate {
        family: req.family,
        request: req.clone(),
        n,
        k,
        d_exact: dist.exact,
        d_lower: dist.lower,
        d_upper: dist.upper,
        distance_method: dist.method,
        singleton_like_value: sl,
        r,
        delta,
        optimal: dist.exact == Some(sl),
        condition_met: met,
        k_formula,
        d_formula: d_form,
        witnesses: Witnesses {
            bch: bch_w,
            betti_sala,
            dual_distance: exact_dual_distance_witness(&a),
        },
    };
    Ok(Construction {
        request: req.clone(),
        a,
        b,
        code,
        locality,
        optimality,
    })
}
