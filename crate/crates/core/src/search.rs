//! Parameter grids over the construction families.
//!
//! A grid entry lists candidate values per request field; the search takes
//! the Cartesian product in a fixed order, builds every request in
//! parallel, and reports rows in expansion order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{build, ConstructionError, ConstructionRequest, Family};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn values(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(xs) => xs.clone(),
        }
    }
}

fn opt_values<T: Clone>(v: &Option<OneOrMany<T>>) -> Vec<Option<T>> {
    match v {
        None => vec![None],
        Some(v) => v.values().into_iter().map(Some).collect(),
    }
}

/// One block of a grid. Absent optional fields keep the request default.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridEntry {
    pub family: OneOrMany<Family>,
    pub q: OneOrMany<u64>,
    pub n: OneOrMany<usize>,
    pub delta: OneOrMany<usize>,
    #[serde(default)]
    pub r: Option<OneOrMany<usize>>,
    #[serde(default)]
    pub b: Option<OneOrMany<usize>>,
    #[serde(default)]
    pub t: Option<OneOrMany<usize>>,
    #[serde(default)]
    pub m: Option<OneOrMany<usize>>,
    /// One tail (`[8]`) or several (`[[8], [9]]`).
    #[serde(default)]
    pub tail: Option<OneOrMany<Vec<usize>>>,
    #[serde(default)]
    pub i: Option<OneOrMany<usize>>,
    #[serde(default)]
    pub ell: Option<OneOrMany<usize>>,
    #[serde(default)]
    pub j: Option<OneOrMany<usize>>,
    #[serde(default)]
    pub mu: Option<OneOrMany<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub grid: Vec<GridEntry>,
}

impl GridEntry {
    /// Cartesian product in field order: family, q, n, δ, r, b, t, m, tail,
    /// i, ℓ, j, μ, with the last field varying fastest.
    pub fn expand(&self) -> Vec<ConstructionRequest> {
        let mut out = Vec::new();
        for family in self.family.values() {
            for q in self.q.values() {
                for n in self.n.values() {
                    for delta in self.delta.values() {
                        out.push(ConstructionRequest::new(family, q, n, delta));
                    }
                }
            }
        }
        fn vary<T: Clone>(
            reqs: Vec<ConstructionRequest>,
            vals: Vec<T>,
            set: impl Fn(&mut ConstructionRequest, T),
        ) -> Vec<ConstructionRequest> {
            reqs.into_iter()
                .flat_map(|req| {
                    vals.iter().map(|v| {
                        let mut r = req.clone();
                        set(&mut r, v.clone());
                        r
                    }).collect::<Vec<_>>()
                })
                .collect()
        }
        out = vary(out, opt_values(&self.r), |q, v| q.r = v);
        out = vary(out, opt_values(&self.b), |q, v| q.b = v.unwrap_or(1));
        out = vary(out, opt_values(&self.t), |q, v| q.t = v.unwrap_or(0));
        out = vary(out, opt_values(&self.m), |q, v| q.m = v);
        out = vary(out, opt_values(&self.tail), |q, v| q.tail = v.unwrap_or_default());
        out = vary(out, opt_values(&self.i), |q, v| q.i = v);
        out = vary(out, opt_values(&self.ell), |q, v| q.ell = v);
        out = vary(out, opt_values(&self.j), |q, v| q.j = v);
        out = vary(out, opt_values(&self.mu), |q, v| q.mu = v);
        out
    }
}

impl GridConfig {
    pub fn from_json(s: &str) -> Result<GridConfig, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn expand(&self) -> Vec<ConstructionRequest> {
        self.grid.iter().flat_map(GridEntry::expand).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub family: Family,
    pub q: u64,
    pub n: usize,
    pub r: usize,
    pub delta: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub d_lower: usize,
    pub d_upper: usize,
    pub optimal: bool,
    /// Whether r + δ − 1 divides n.
    pub divides: bool,
    pub request: ConstructionRequest,
}

impl SearchRow {
    pub const CSV_HEADER: &'static str = "family,q,n,r,delta,k,d,optimal,divides";

    /// `d` is the exact distance, or `lo..hi` when only a sandwich is known.
    pub fn csv(&self) -> String {
        let d = self.d.map_or(format!("{}..{}", self.d_lower, self.d_upper), |d| d.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.family, self.q, self.n, self.r, self.delta, self.k, d, self.optimal, self.divides
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOutcome {
    pub rows: Vec<SearchRow>,
    /// Requests outside a family's hypotheses (including non-q-closed sets).
    pub skipped: usize,
    /// Requests that passed validation but failed to build or certify.
    pub failures: Vec<(ConstructionRequest, String)>,
}

fn is_skip(e: &ConstructionError) -> bool {
    matches!(
        e,
        ConstructionError::HypothesisViolated { .. }
            | ConstructionError::NotQClosed { .. }
            | ConstructionError::EvenLengthUnimplemented { .. }
    )
}

/// Builds every request of the grid. Output order is the expansion order.
pub fn run_search(cfg: &GridConfig, budget: u64) -> SearchOutcome {
    let reqs = cfg.expand();
    let results: Vec<_> = reqs.par_iter().map(|req| build(req, budget)).collect();
    let mut out = SearchOutcome::default();
    for (req, res) in reqs.into_iter().zip(results) {
        match res {
            Ok(c) => {
                let o = &c.optimality;
                out.rows.push(SearchRow {
                    family: req.family,
                    q: req.q,
                    n: o.n,
                    r: o.r,
                    delta: o.delta,
                    k: o.k,
                    d: o.d_exact,
                    d_lower: o.d_lower,
                    d_upper: o.d_upper,
                    optimal: o.optimal,
                    divides: o.divides(),
                    request: req,
                });
            }
            Err(e) if is_skip(&e) => out.skipped += 1,
            Err(e) => out.failures.push((req, e.to_string())),
        }
    }
    out
}
