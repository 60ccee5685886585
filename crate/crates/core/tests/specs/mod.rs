//! Set identities between family members at special parameters and
//! earlier constructions written directly as unions of residue classes and
//! runs. Shared by the `specializations` and acceptance test targets.
//!
//! Each check enumerates every admissible parameter choice at its instances
//! and returns how many identities were compared.

use cyclic_lrc::constructions::{defining_sets, validate, ConstructionRequest, Family};
use cyclic_lrc::cyclic::{product_set, ExponentSet};
use cyclic_lrc::num::{divisors, gcd};

fn ab(req: &ConstructionRequest) -> ExponentSet {
    let (a, b) = defining_sets(req);
    product_set(&a, &b).unwrap()
}

/// Parameter clauses only; q-closure is irrelevant to a set identity.
fn admissible(req: &ConstructionRequest) -> bool {
    validate(req).iter().all(|c| c.contains("cyclotomic"))
}

fn compare(what: &str, req: &ConstructionRequest, got: &ExponentSet, want: &ExponentSet) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!(
            "{what}: {req:?}\n  family AB {:?}\n  expected  {:?}",
            got.as_slice(),
            want.as_slice()
        ))
    }
}

/// `(r, δ, R = r + δ − 1, ν = n / R)` for every split of a divisor `R >= 2` of `n`.
fn splits(n: usize, delta_ok: impl Fn(usize) -> bool) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for big in divisors(n as u64).into_iter().map(|d| d as usize).filter(|&d| d >= 2 && d < n) {
        for delta in (2..=big).filter(|&d| delta_ok(d)) {
            let r = big + 1 - delta;
            if r >= 1 {
                out.push((r, delta, big, n / big));
            }
        }
    }
    out
}

/// C42 at i = j = 0 and ℓ = ν − μ against the union of the classes
/// `l_1 + e b (mod R)` and the run `D = {t + e b : 0 <= e <= (ν−μ)R + δ − 2}`.
pub fn c42_residue_classes() -> Result<usize, String> {
    let mut count = 0;
    for (q, n) in [(19u64, 18usize), (29, 28), (31, 30)] {
        for (r, delta, big, nu) in splits(n, |_| true) {
            for b in (1..n).filter(|&b| gcd(b as u64, n as u64) == 1 && (delta - 2) * b < big) {
                for l1 in 0..big - (delta - 2) * b {
                    for t in (l1..n).step_by(big) {
                        for mu in 2..=nu {
                            let req = ConstructionRequest::new(Family::C42, q, n, delta)
                                .r(r)
                                .b(b)
                                .t(t)
                                .i(0)
                                .j(0)
                                .mu(mu);
                            if !admissible(&req) {
                                continue;
                            }
                            let classes = (0..n).filter(|x| (0..delta - 1).any(|e| x % big == l1 + e * b));
                            let run = (0..=(nu - mu) * big + delta - 2).map(|e| t + e * b);
                            let want = ExponentSet::from_residues(n, classes.chain(run));
                            compare("C42 residue classes", &req, &ab(&req), &want)?;
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

/// C52 case 1 at i = 0 and ℓ = (ν − μ)/2 against
/// `∪_{j=1}^{μ−1} ((ν−μ)/2 + j)R + B ∪ {|x| <= (ν−μ)/2 · R + (δ−2)/2}`.
pub fn c52_symmetric_run() -> Result<usize, String> {
    let mut count = 0;
    for (q, n) in [(23u64, 24usize), (64, 65)] {
        for (r, delta, big, nu) in splits(n, |d| d % 2 == 0) {
            for mu in (1..=nu).filter(|mu| (nu - mu) % 2 == 0) {
                let req = ConstructionRequest::new(Family::C52_1, q, n, delta).r(r).i(0).mu(mu);
                if !admissible(&req) {
                    continue;
                }
                let (_, bset) = defining_sets(&req);
                let half = (nu - mu) / 2;
                let h = (half * big + (delta - 2) / 2) as i64;
                let blocks = (1..mu).flat_map(|j| bset.shift(((half + j) * big) as i64).as_slice().to_vec());
                let want = ExponentSet::new(n, (-h..=h).chain(blocks.map(|x| x as i64)));
                compare("C52 case 1 symmetric run", &req, &ab(&req), &want)?;
                count += 1;
            }
        }
    }
    Ok(count)
}

fn c59_instances() -> Vec<(ConstructionRequest, usize, usize, usize)> {
    let mut out = Vec::new();
    for (q, n) in [(23u64, 24usize), (64, 65)] {
        for (r, delta, big, nu) in splits(n, |d| d % 2 == 1) {
            for mu in (1..nu).filter(|mu| (nu - mu - 1) % 2 == 0) {
                let req = ConstructionRequest::new(Family::C59_1, q, n, delta).r(r).i(0).mu(mu);
                if admissible(&req) {
                    out.push((req, big, nu, mu));
                }
            }
        }
    }
    out
}

/// C59 case 1 at i = 0 and ℓ = (ν − μ − 1)/2 against
/// `∪_{j=1}^{μ−1} (R − 1 + (ν−μ−1+2j)R)/2 + B ∪ {|x| <= ((ν−μ)R + δ − 2)/2}`.
pub fn c59_half_offsets() -> Result<usize, String> {
    let mut count = 0;
    for (req, big, nu, mu) in c59_instances() {
        let (_, bset) = defining_sets(&req);
        let h = (((nu - mu) * big + req.delta - 2) / 2) as i64;
        let blocks = (1..mu).flat_map(|j| {
            let c = (big - 1 + (nu - mu - 1 + 2 * j) * big) / 2;
            bset.shift(c as i64).as_slice().to_vec()
        });
        let want = ExponentSet::new(req.n, (-h..=h).chain(blocks.map(|x| x as i64)));
        compare("C59 case 1 half offsets", &req, &ab(&req), &want)?;
        count += 1;
    }
    Ok(count)
}

/// For odd n, the same sets after substituting the root α by a square root
/// of it, i.e. all exponents doubled:
/// `2·AB = ∪_{j=1}^{μ−1} (R − 1 + (ν−μ−1+2j)R) + 2B ∪ {even x : |x| <= (ν−μ)R + δ − 2}`.
pub fn c59_doubled_odd_length() -> Result<usize, String> {
    let mut count = 0;
    for (req, big, nu, mu) in c59_instances().into_iter().filter(|(req, ..)| req.n % 2 == 1) {
        let (_, bset) = defining_sets(&req);
        let b2 = bset.scale(2);
        let h = ((nu - mu) * big + req.delta - 2) as i64;
        let blocks = (1..mu).flat_map(|j| {
            let c = big - 1 + (nu - mu - 1 + 2 * j) * big;
            b2.shift(c as i64).as_slice().to_vec()
        });
        let evens = (-h..=h).filter(|x| x % 2 == 0);
        let want = ExponentSet::new(req.n, evens.chain(blocks.map(|x| x as i64)));
        compare("C59 case 1 doubled", &req, &ab(&req).scale(2), &want)?;
        count += 1;
    }
    Ok(count)
}

/// Every identity with its name, in a fixed order.
pub fn all() -> Vec<(&'static str, fn() -> Result<usize, String>)> {
    vec![
        ("C42 = residue classes plus run", c42_residue_classes),
        ("C52 case 1 = symmetric run plus blocks", c52_symmetric_run),
        ("C59 case 1 = half-offset blocks plus run", c59_half_offsets),
        ("C59 case 1, odd n, doubled exponents", c59_doubled_odd_length),
    ]
}
