//! JSON certificates and their independent verification.
//!
//! A certificate carries the code itself (q, n, defining exponents,
//! generator coefficients) plus the claimed parameters and repair groups.
//! [`verify`] trusts none of the claims: it rebuilds the code from the
//! defining set, checks every repair group by punctured-code ranks, and
//! recomputes the distance.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{bch_lower, singleton_like};
use crate::constructions::{Construction, ConstructionRequest, Witnesses};
use crate::cyclic::{Base, CycContext, CyclicCode, CyclicError, ExponentSet};
use crate::distance::{min_distance, min_distance_with, DistanceMethod, Hints};
use crate::locality::{punctured_distance_at_least, LocalityCertificate};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescription {
    pub q: u64,
    pub n: usize,
    pub defining_exponents: Vec<usize>,
    /// Generator polynomial over GF(q), constant term first, as element indices.
    pub generator_coeffs: Vec<u32>,
    pub k: usize,
}

impl CodeDescription {
    pub fn of(code: &CyclicCode) -> CodeDescription {
        CodeDescription {
            q: code.ctx().q(),
            n: code.n(),
            defining_exponents: code.defining().as_slice().to_vec(),
            generator_coeffs: code.generator_coeffs(),
            k: code.k(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub k: usize,
    /// Exact distance when known; otherwise only the bounds are claimed.
    pub d: Option<usize>,
    pub d_lower: usize,
    pub d_upper: usize,
    pub r: usize,
    pub delta: usize,
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub request: Option<ConstructionRequest>,
    pub code: CodeDescription,
    pub claims: Claims,
    pub locality: LocalityCertificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
}

impl Certificate {
    pub fn from_construction(c: &Construction) -> Certificate {
        let o = &c.optimality;
        Certificate {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION").to_string(),
            request: Some(c.request.clone()),
            code: CodeDescription::of(&c.code),
            claims: Claims {
                k: o.k,
                d: o.d_exact,
                d_lower: o.d_lower,
                d_upper: o.d_upper,
                r: o.r,
                delta: o.delta,
                optimal: o.optimal,
            },
            locality: c.locality.clone(),
            witnesses: Some(o.witnesses.clone()),
        }
    }

    /// Certificate for a code whose locality came straight from a product of
    /// zero sets; the distance is whatever `budget` can establish.
    pub fn from_locality(code: &CyclicCode, locality: &LocalityCertificate, budget: u64) -> Certificate {
        let k = code.k();
        let (r, delta) = (locality.r, locality.delta);
        let sl = singleton_like(code.n(), k, r.min(k), delta).ok();
        let dist = min_distance_with(
            code,
            budget,
            Hints {
                lower: None,
                upper: sl.map(|u| (u, DistanceMethod::SingletonLike)),
            },
        );
        Certificate {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION").to_string(),
            request: None,
            code: CodeDescription::of(code),
            claims: Claims {
                k,
                d: dist.exact,
                d_lower: dist.lower,
                d_upper: dist.upper,
                r,
                delta,
                optimal: sl.is_some() && dist.exact == sl,
            },
            locality: locality.clone(),
            witnesses: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Certificate, VerifyError> {
        let cert: Certificate = serde_json::from_str(s).map_err(|e| VerifyError::Malformed(e.to_string()))?;
        if cert.schema != SCHEMA {
            return Err(VerifyError::Schema(cert.schema));
        }
        Ok(cert)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("unsupported certificate schema {0}")]
    Schema(u32),
    #[error("cannot rebuild the code: {0}")]
    Code(#[from] CyclicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Agree,
    Disagree,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<ClaimCheck>,
}

impl Report {
    pub fn all_agree(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Agree)
    }

    pub fn any_disagree(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Disagree)
    }

    pub fn verdict(&self, claim: &str) -> Option<Verdict> {
        self.checks.iter().find(|c| c.claim == claim).map(|c| c.verdict)
    }

    fn push(&mut self, claim: &str, verdict: Verdict, detail: impl Into<String>) {
        self.checks.push(ClaimCheck {
            claim: claim.to_string(),
            verdict,
            detail: detail.into(),
        });
    }
}

fn agree(ok: bool) -> Verdict {
    if ok {
        Verdict::Agree
    } else {
        Verdict::Disagree
    }
}

/// Checks every claim of `cert` from the code description alone.
pub fn verify(cert: &Certificate, budget: u64) -> Result<Report, VerifyError> {
    let desc = &cert.code;
    let claims = &cert.claims;
    let ctx = CycContext::new(desc.q, desc.n)?;
    let defining = ExponentSet::from_residues(desc.n, desc.defining_exponents.iter().copied());
    let code = CyclicCode::new(&ctx, defining, Base::Subfield)?;
    let n = code.n();
    let k = code.k();
    let mut report = Report { checks: Vec::new() };

    let gen = code.generator_coeffs();
    report.push(
        "generator",
        agree(gen == desc.generator_coeffs),
        format!("degree {}", gen.len().saturating_sub(1)),
    );
    report.push(
        "dimension",
        agree(k == claims.k && k == desc.k),
        format!("n - |defining set| = {k}, claimed {}", claims.k),
    );

    let loc = &cert.locality;
    let (r, delta) = (claims.r, claims.delta);
    let mut loc_ok = loc.r == r && loc.delta == delta && delta >= 2 && loc.is_well_formed(n);
    let mut bad_group = None;
    if loc_ok {
        let g = code.generator_matrix();
        bad_group = loc
            .groups
            .iter()
            .find(|grp| !punctured_distance_at_least(&g, grp, delta));
        loc_ok = bad_group.is_none();
    }
    let detail = match bad_group {
        Some(grp) => format!("punctured code on {grp:?} has distance below {delta}"),
        None if loc_ok => format!("{} groups, punctured distance >= {delta} on each", loc.groups.len()),
        None => "groups malformed or parameters inconsistent".to_string(),
    };
    report.push("locality", agree(loc_ok), detail);

    let (bch, _) = bch_lower(code.defining());
    let sl = if loc_ok && k > 0 {
        singleton_like(n, k, r.min(k), delta).ok()
    } else {
        None
    };
    let dist = if k == 0 {
        min_distance(&code, budget)
    } else {
        min_distance_with(
            &code,
            budget,
            Hints {
                lower: Some((bch, DistanceMethod::Bch)),
                upper: sl.map(|u| (u, DistanceMethod::SingletonLike)),
            },
        )
    };
    let (verdict, detail) = match (dist.exact, claims.d) {
        (Some(d), Some(c)) => (agree(d == c), format!("{d} via {:?}", dist.method)),
        (Some(d), None) => (
            agree(claims.d_lower <= d && d <= claims.d_upper),
            format!("{d} via {:?}, claimed range [{}, {}]", dist.method, claims.d_lower, claims.d_upper),
        ),
        (None, Some(c)) if c < dist.lower || c > dist.upper => (
            Verdict::Disagree,
            format!("claimed {c} outside [{}, {}]", dist.lower, dist.upper),
        ),
        (None, _) => (
            Verdict::Inconclusive,
            format!("only [{}, {}] within budget", dist.lower, dist.upper),
        ),
    };
    report.push("distance", verdict, detail);

    let verdict = match (sl, dist.exact) {
        (Some(s), Some(d)) => agree(claims.optimal == (d == s)),
        (Some(s), None) if claims.optimal => {
            if dist.upper < s {
                Verdict::Disagree
            } else {
                Verdict::Inconclusive
            }
        }
        (Some(s), None) => {
            if dist.upper < s {
                Verdict::Agree
            } else {
                Verdict::Inconclusive
            }
        }
        (None, _) if !claims.optimal => Verdict::Agree,
        (None, _) => Verdict::Disagree,
    };
    let detail = match sl {
        Some(s) => format!("Singleton-like bound {s}"),
        None => "no verified locality to bound against".to_string(),
    };
    report.push("optimality", verdict, detail);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, ConstructionRequest, Family};
    use crate::distance::DEFAULT_BUDGET;

    fn sample() -> Certificate {
        let req = ConstructionRequest::new(Family::C44, 19, 18, 4).t(1).m(5).tail([8]);
        Certificate::from_construction(&build(&req, DEFAULT_BUDGET).unwrap())
    }

    #[test]
    fn round_trip_and_verify() {
        let cert = sample();
        let json = cert.to_json();
        assert!(json.contains("\"schema\": 1"));
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        let report = verify(&back, DEFAULT_BUDGET).unwrap();
        assert!(report.all_agree(), "{report:?}");
    }

    #[test]
    fn tampering_is_detected() {
        let mut cert = sample();
        cert.claims.k = 9;
        let report = verify(&cert, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.verdict("dimension"), Some(Verdict::Disagree));

        let mut cert = sample();
        cert.claims.d = Some(9);
        assert_eq!(verify(&cert, DEFAULT_BUDGET).unwrap().verdict("distance"), Some(Verdict::Disagree));

        let mut cert = sample();
        cert.locality.groups[0] = vec![0, 1, 2, 3, 4, 5];
        let report = verify(&cert, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.verdict("locality"), Some(Verdict::Disagree));

        let mut json = sample().to_json();
        json = json.replace("\"schema\": 1", "\"schema\": 7");
        assert_eq!(Certificate::from_json(&json), Err(VerifyError::Schema(7)));
        assert!(matches!(Certificate::from_json("{"), Err(VerifyError::Malformed(_))));
    }

    #[test]
    fn serialization_is_deterministic() {
        assert_eq!(sample().to_json(), sample().to_json());
    }
}
