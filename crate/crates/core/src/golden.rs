//! Reference examples with published parameters.
//!
//! Each file in `golden/` records one example together with the parameters
//! claimed for it. [`run`] rebuilds the example from scratch and compares;
//! the expected values are the published ones, so an example whose
//! published parameters are wrong fails here rather than being adjusted.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cert::Certificate;
use crate::constructions::{build, ConstructionRequest};
use crate::cyclic::{product_set, Base, CycContext, CyclicCode, ExponentSet};
use crate::distance::{exhaustive_cost, min_distance, zero_set_cost, DistanceResult};
use crate::locality::{locality_from_product, punctured_distance_at_least};

const BUILTIN: &[(&str, &str)] = &[
    ("01_dual_pair_gf8_len7.json", include_str!("../golden/01_dual_pair_gf8_len7.json")),
    ("02_binary_product_len31.json", include_str!("../golden/02_binary_product_len31.json")),
    ("03_gf19_single_tail_delta2.json", include_str!("../golden/03_gf19_single_tail_delta2.json")),
    ("04_gf19_single_tail_delta3.json", include_str!("../golden/04_gf19_single_tail_delta3.json")),
    ("05_gf19_single_tail_delta4.json", include_str!("../golden/05_gf19_single_tail_delta4.json")),
    ("06_gf32_mds_len31.json", include_str!("../golden/06_gf32_mds_len31.json")),
    ("07_gf32_amds_len31.json", include_str!("../golden/07_gf32_amds_len31.json")),
    ("08_gf19_betti_sala_len18.json", include_str!("../golden/08_gf19_betti_sala_len18.json")),
    ("09_gf19_len_4delta_plus_2.json", include_str!("../golden/09_gf19_len_4delta_plus_2.json")),
    ("10_gf23_sym_case1.json", include_str!("../golden/10_gf23_sym_case1.json")),
    ("11_gf23_sym_case2.json", include_str!("../golden/11_gf23_sym_case2.json")),
    ("12_gf49_sym_case1.json", include_str!("../golden/12_gf49_sym_case1.json")),
    ("13_gf49_sym_case2.json", include_str!("../golden/13_gf49_sym_case2.json")),
    ("14_gf49_sym_case3.json", include_str!("../golden/14_gf49_sym_case3.json")),
    ("15_gf64_sym_case1.json", include_str!("../golden/15_gf64_sym_case1.json")),
    ("16_gf64_sym_case3.json", include_str!("../golden/16_gf64_sym_case3.json")),
    ("17_gf125_odd_case1_ell0.json", include_str!("../golden/17_gf125_odd_case1_ell0.json")),
    ("18_gf125_odd_case1_ell1.json", include_str!("../golden/18_gf125_odd_case1_ell1.json")),
    ("19_gf64_odd_case1.json", include_str!("../golden/19_gf64_odd_case1.json")),
    ("20_gf64_odd_case2.json", include_str!("../golden/20_gf64_odd_case2.json")),
    ("21_gf32_two_block_delta2.json", include_str!("../golden/21_gf32_two_block_delta2.json")),
    ("22_gf32_two_block_delta4.json", include_str!("../golden/22_gf32_two_block_delta4.json")),
    ("23_gf16_two_block_delta3.json", include_str!("../golden/23_gf16_two_block_delta3.json")),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionExpect {
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub delta: usize,
    pub optimal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub da_perp: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ab: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductExpect {
    pub da_perp: usize,
    pub d_b: usize,
    pub r: usize,
    pub delta: usize,
    pub ab: Vec<usize>,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualPairExpect {
    /// Distance of the dual of the code with the given defining set.
    pub d_perp: usize,
    /// Distance of the code with the complementary defining set.
    pub d_complement: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GoldenCase {
    Construction {
        request: ConstructionRequest,
        expect: ConstructionExpect,
    },
    Product {
        q: u64,
        n: usize,
        a: Vec<i64>,
        b: Vec<i64>,
        expect: ProductExpect,
    },
    DualPair {
        q: u64,
        n: usize,
        defining: Vec<i64>,
        expect: DualPairExpect,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenExample {
    pub name: String,
    pub about: String,
    #[serde(flatten)]
    pub case: GoldenCase,
}

#[derive(Debug, Clone)]
pub struct GoldenOutcome {
    pub file: String,
    pub name: String,
    pub passed: bool,
    /// Computed parameters, e.g. `[18,8,8] (7,4) optimal`.
    pub summary: String,
    pub failures: Vec<String>,
    pub certificate: Option<Certificate>,
}

/// Embedded corpus as `(file name, contents)`.
pub fn builtin_sources() -> Vec<(String, String)> {
    BUILTIN.iter().map(|(f, s)| (f.to_string(), s.to_string())).collect()
}

/// Every `*.json` file in `dir`, sorted by name.
pub fn dir_sources(dir: &Path) -> std::io::Result<Vec<(String, String)>> {
    let mut files: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            fs::read_to_string(&p).map(|s| (name, s))
        })
        .collect()
}

pub fn parse(src: &str) -> Result<GoldenExample, serde_json::Error> {
    serde_json::from_str(src)
}

fn fmt_dist(d: &DistanceResult) -> String {
    match d.exact {
        Some(x) => x.to_string(),
        None => format!("{}..{}", d.lower, d.upper),
    }
}

/// Exact distance by an oracle that does not use the Singleton-like
/// bound, when one fits in the budget.
fn oracle_distance(code: &CyclicCode, budget: u64) -> Option<usize> {
    let cheap = exhaustive_cost(code) <= budget || zero_set_cost(code.n(), code.k()) <= budget;
    if cheap {
        min_distance(code, budget).exact
    } else {
        None
    }
}

struct Checker(Vec<String>);

impl Checker {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.0.push(format!("{what}: computed {got:?}, published {want:?}"));
        }
    }
}

/// Rebuilds one example and compares it with the published parameters.
pub fn run(file: &str, src: &str, budget: u64) -> GoldenOutcome {
    let fail = |name: String, msg: String| GoldenOutcome {
        file: file.to_string(),
        name,
        passed: false,
        summary: "not built".to_string(),
        failures: vec![msg],
        certificate: None,
    };
    let ex = match parse(src) {
        Ok(ex) => ex,
        Err(e) => return fail(file.to_string(), format!("cannot parse {file}: {e}")),
    };
    let mut c = Checker(Vec::new());
    let mut certificate = None;
    let summary = match &ex.case {
        GoldenCase::Construction { request, expect } => {
            let built = match build(request, budget) {
                Ok(b) => b,
                Err(e) => return fail(ex.name, e.to_string()),
            };
            let o = &built.optimality;
            c.eq("k", o.k, expect.k);
            match o.d_exact {
                Some(d) => c.eq("d", d, expect.d),
                None => c.0.push(format!(
                    "d: only [{}, {}] established, published {}",
                    o.d_lower, o.d_upper, expect.d
                )),
            }
            if let Some(d) = oracle_distance(&built.code, budget) {
                c.eq("d (oracle without the Singleton-like bound)", d, expect.d);
            }
            c.eq("(r, δ)", (o.r, o.delta), (expect.r, expect.delta));
            c.eq("optimal", o.optimal, expect.optimal);
            if let Some(da) = expect.da_perp {
                c.eq("d_A⊥", built.locality.da_perp, da);
            }
            if let Some(ab) = &expect.ab {
                c.eq("AB", built.code.defining().as_slice(), ab.as_slice());
            }
            let cert = Certificate::from_construction(&built);
            let summary = format!(
                "[{},{},{}] ({},{}){}",
                o.n,
                o.k,
                o.d_exact.map_or(format!("{}..{}", o.d_lower, o.d_upper), |d| d.to_string()),
                o.r,
                o.delta,
                if o.optimal { " optimal" } else { "" }
            );
            certificate = Some(cert);
            summary
        }
        GoldenCase::Product { q, n, a, b, expect } => {
            let res = (|| -> Result<_, String> {
                let ctx = CycContext::new(*q, *n).map_err(|e| e.to_string())?;
                let a = ExponentSet::new(*n, a.iter().copied());
                let b = ExponentSet::new(*n, b.iter().copied());
                let ab = product_set(&a, &b).map_err(|e| e.to_string())?;
                let code = CyclicCode::new(&ctx, ab, Base::Subfield).map_err(|e| e.to_string())?;
                let loc = locality_from_product(&a, &b, &code, budget).map_err(|e| e.to_string())?;
                Ok((code, loc))
            })();
            let (code, loc) = match res {
                Ok(x) => x,
                Err(e) => return fail(ex.name, e),
            };
            c.eq("AB", code.defining().as_slice(), expect.ab.as_slice());
            c.eq("generator", code.generator_over_base().to_string(), expect.generator.clone());
            c.eq("d_A⊥", loc.da_perp, expect.da_perp);
            c.eq("d_B", loc.d_b, expect.d_b);
            c.eq("(r, δ)", (loc.r, loc.delta), (expect.r, expect.delta));
            let cert = Certificate::from_locality(&code, &loc, budget);
            let summary = format!(
                "[{},{},{}] ({},{})",
                code.n(),
                code.k(),
                cert.claims.d.map_or(format!("{}..{}", cert.claims.d_lower, cert.claims.d_upper), |d| d.to_string()),
                loc.r,
                loc.delta
            );
            certificate = Some(cert);
            summary
        }
        GoldenCase::DualPair { q, n, defining, expect } => {
            let res = (|| -> Result<_, String> {
                let ctx = CycContext::new(*q, *n).map_err(|e| e.to_string())?;
                let s = ExponentSet::new(*n, defining.iter().copied());
                CyclicCode::new(&ctx, s, Base::Subfield).map_err(|e| e.to_string())
            })();
            let code = match res {
                Ok(x) => x,
                Err(e) => return fail(ex.name, e),
            };
            let dual = min_distance(&code.dual(), budget);
            let comp = min_distance(&code.complement(), budget);
            c.eq("d of the dual", dual.exact, Some(expect.d_perp));
            c.eq("d of the complement-set code", comp.exact, Some(expect.d_complement));
            format!("d⊥ = {}, d' = {}", fmt_dist(&dual), fmt_dist(&comp))
        }
    };
    GoldenOutcome {
        file: file.to_string(),
        name: ex.name,
        passed: c.0.is_empty(),
        summary,
        failures: c.0,
        certificate,
    }
}

/// Runs every source in order.
pub fn run_all(sources: &[(String, String)], budget: u64) -> Vec<GoldenOutcome> {
    sources.iter().map(|(f, s)| run(f, s, budget)).collect()
}

/// Definition-level check of a certificate's repair groups: sizes,
/// coverage, and punctured distance at least δ on every group.
pub fn certificate_groups_sound(cert: &Certificate) -> Result<(), String> {
    let loc = &cert.locality;
    if !loc.is_well_formed(cert.code.n) {
        return Err("groups oversized or not covering".to_string());
    }
    let ctx = CycContext::new(cert.code.q, cert.code.n).map_err(|e| e.to_string())?;
    let s = ExponentSet::from_residues(cert.code.n, cert.code.defining_exponents.iter().copied());
    let code = CyclicCode::new(&ctx, s, Base::Subfield).map_err(|e| e.to_string())?;
    let g = code.generator_matrix();
    match loc.groups.iter().find(|grp| !punctured_distance_at_least(&g, grp, loc.delta)) {
        Some(grp) => Err(format!("group {grp:?} has punctured distance below {}", loc.delta)),
        None => Ok(()),
    }
}
