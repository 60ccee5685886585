//! Arithmetic in GF(p^m) using log/antilog tables.
//!
//! Elements are `u32` indices in the polynomial basis: the element
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` has index `sum c_i p^i`. The
//! modulus is the smallest monic irreducible of degree `m` when its lower
//! coefficients are read as that same base-`p` integer, and the generator is
//! the smallest index of full multiplicative order. Both choices make every
//! table reproducible across runs.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use thiserror::Error;

use crate::num::{gcd, is_prime, prime_factors, prime_power};

/// Largest field order we are willing to tabulate.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field size {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {p}^{m} exceeds the 2^20 size cap")]
    SizeCapExceeded { p: u64, m: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("GF({0}) is not a subfield")]
    NotASubfield(u64),
    #[error("{n} does not divide the multiplicative order {order}")]
    OrderNotDividing { n: u64, order: u64 },
    #[error("gcd({q}, {n}) != 1")]
    NotCoprime { q: u64, n: u64 },
    #[error("index {repr} is not an element of GF({q})")]
    BadElement { repr: u64, q: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AddKind {
    /// Characteristic 2: addition is XOR of the bit vectors.
    Xor,
    /// Prime field: addition modulo p.
    Prime,
    /// Odd characteristic extension: Zech logarithms.
    Zech,
}

/// A finite field GF(p^m) with precomputed tables.
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    add_kind: AddKind,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[i] = log(1 + g^i)`, or `NO_LOG` when the sum is zero.
    zech: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for FieldSpec {}

static REGISTRY: Lazy<Mutex<HashMap<(u32, u32), Arc<FieldSpec>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Digits of an index in base `p`, low to high.
fn digits(mut a: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = vec![0; m as usize];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `f` over GF(p), coefficients low to high.
fn poly_rem_p(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let df = f.len() - 1;
    let p = p as u64;
    while r.len() > df {
        let lead = r.pop().unwrap() % p;
        if lead != 0 {
            let base = r.len() - df;
            for (i, &fc) in f[..df].iter().enumerate() {
                r[base + i] = (r[base + i] + (p - lead) * fc as u64) % p;
            }
        }
    }
    r.into_iter().map(|c| (c % p) as u32).collect()
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for low in 0..count {
            let mut g = digits(low as u32, p, d);
            g.push(1);
            if poly_rem_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Table-free multiplication used while building the tables.
fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let m = (modulus.len() - 1) as u32;
    if p == 2 {
        let mut acc: u64 = 0;
        let (a, b) = (a as u64, b as u64);
        for i in 0..m {
            if (b >> i) & 1 == 1 {
                acc ^= a << i;
            }
        }
        let red = undigits(modulus, 2) as u64;
        for i in (m..2 * m).rev() {
            if (acc >> i) & 1 == 1 {
                acc ^= red << (i - m);
            }
        }
        return acc as u32;
    }
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; (2 * m - 1) as usize];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    undigits(&poly_rem_p(&prod, modulus, p), p)
}

fn slow_pow(a: u32, mut e: u64, p: u32, modulus: &[u32]) -> u32 {
    let mut base = a;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(acc, base, p, modulus);
        }
        base = slow_mul(base, base, p, modulus);
        e >>= 1;
    }
    acc
}

fn digitwise_add(a: u32, b: u32, p: u32, m: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut pw = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * pw;
        a /= p;
        b /= p;
        pw *= p;
    }
    out
}

impl FieldSpec {
    /// Builds GF(p^m) from scratch. Prefer [`FieldSpec::get`], which caches.
    pub fn new(p: u64, m: u32) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u128).pow(m);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(FieldError::SizeCapExceeded { p, m });
        }
        let (p, q) = (p as u32, q as u32);

        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|low| {
                    let mut f = digits(low, p, m);
                    f.push(1);
                    f
                })
                .find(|f| f[0] != 0 && is_irreducible(f, p))
                .expect("an irreducible polynomial of every degree exists")
        };

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| slow_pow(g, order / r, p, &modulus) != 1)
            })
            .expect("the multiplicative group is cyclic");

        let n1 = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n1];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = 1u32;
        for i in 0..n1 {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = slow_mul(cur, generator, p, &modulus);
        }
        for i in n1..2 * n1 {
            exp[i] = exp[i - n1];
        }

        let add_kind = if p == 2 {
            AddKind::Xor
        } else if m == 1 {
            AddKind::Prime
        } else {
            AddKind::Zech
        };
        let zech = if add_kind == AddKind::Zech {
            (0..n1)
                .map(|i| {
                    let s = digitwise_add(1, exp[i], p, m);
                    if s == 0 {
                        NO_LOG
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        } else {
            Vec::new()
        };

        Ok(FieldSpec {
            p,
            m,
            q,
            modulus,
            generator,
            add_kind,
            exp,
            log,
            zech,
        })
    }

    /// Shared, cached instance of GF(p^m).
    pub fn get(p: u64, m: u32) -> Result<Arc<FieldSpec>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if p > MAX_FIELD_SIZE {
            return Err(FieldError::SizeCapExceeded { p, m });
        }
        let key = (p as u32, m);
        if let Some(f) = REGISTRY.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let f = Arc::new(FieldSpec::new(p, m)?);
        Ok(REGISTRY.lock().unwrap().entry(key).or_insert(f).clone())
    }

    /// Shared instance of the field with `q` elements.
    pub fn of_order(q: u64) -> Result<Arc<FieldSpec>, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        FieldSpec::get(p, m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients over GF(p), low to high, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self.add_kind {
            AddKind::Xor => a ^ b,
            AddKind::Prime => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            AddKind::Zech => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let la = self.log[a as usize];
                let lb = self.log[b as usize];
                let n1 = self.q - 1;
                let d = if lb >= la { lb - la } else { lb + n1 - la };
                match self.zech[d as usize] {
                    NO_LOG => 0,
                    z => self.exp[(la + z) as usize],
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match self.add_kind {
            AddKind::Xor => a,
            AddKind::Prime => {
                if a == 0 {
                    0
                } else {
                    self.p - a
                }
            }
            AddKind::Zech => {
                if a == 0 {
                    return 0;
                }
                // -1 = g^((q-1)/2) in odd characteristic.
                let half = (self.q - 1) / 2;
                self.exp[(self.log[a as usize] + half) as usize]
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(if l == 0 {
            1
        } else {
            self.exp[(self.q - 1 - l) as usize]
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, FieldError> {
        let ib = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, ib))
    }

    /// `a^e` for any integer `e`; `0^0 = 1`, negative powers of zero fail.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32, FieldError> {
        if a == 0 {
            return match e.signum() {
                0 => Ok(1),
                1 => Ok(0),
                _ => Err(FieldError::DivisionByZero),
            };
        }
        let n1 = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n1)).rem_euclid(n1);
        Ok(self.exp[l as usize])
    }

    /// `g^e` for the canonical generator `g`, any integer `e`.
    #[inline]
    pub fn gen_pow(&self, e: i64) -> u32 {
        let n1 = (self.q - 1) as i64;
        self.exp[e.rem_euclid(n1) as usize]
    }

    /// Discrete log base the canonical generator; `None` for zero.
    #[inline]
    pub fn log(&self, a: u32) -> Option<u32> {
        match self.log[a as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n1 = (self.q - 1) as u64;
        Some(n1 / gcd(l, n1))
    }

    fn check_subfield(&self, q0: u64) -> Result<u32, FieldError> {
        match prime_power(q0) {
            Some((p0, m0)) if p0 == self.p as u64 && self.m % m0 == 0 => Ok(m0),
            _ => Err(FieldError::NotASubfield(q0)),
        }
    }

    /// True iff `x^q0 = x`, i.e. `x` lies in the subfield GF(q0).
    pub fn is_in_subfield(&self, x: u32, q0: u64) -> Result<bool, FieldError> {
        self.check_subfield(q0)?;
        Ok(self.pow(x, q0 as i64)? == x)
    }

    /// The elements of GF(q0) inside this field, in increasing index order.
    pub fn subfield_elements(&self, q0: u64) -> Result<Vec<u32>, FieldError> {
        self.check_subfield(q0)?;
        let step = (self.q as u64 - 1) / (q0 - 1);
        let mut out: Vec<u32> = std::iter::once(0)
            .chain((0..q0 - 1).map(|j| self.gen_pow((j * step) as i64)))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `g^((q-1)/n)` for the canonical generator `g`.
    pub fn primitive_nth_root(&self, n: u64) -> Result<u32, FieldError> {
        let order = (self.q - 1) as u64;
        if n == 0 || order % n != 0 {
            return Err(FieldError::OrderNotDividing { n, order });
        }
        Ok(self.gen_pow((order / n) as i64))
    }

    /// Wraps an index as a checked element.
    pub fn element(self: &Arc<Self>, repr: u32) -> Result<FieldElement, FieldError> {
        if repr >= self.q {
            return Err(FieldError::BadElement {
                repr: repr as u64,
                q: self.q as u64,
            });
        }
        Ok(FieldElement {
            spec: self.clone(),
            repr,
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

/// Smallest `d >= 1` with `q^d = 1 (mod n)`.
pub fn ord_mod(q: u64, n: u64) -> Result<u64, FieldError> {
    if n == 0 || gcd(q, n) != 1 {
        return Err(FieldError::NotCoprime { q, n });
    }
    if n == 1 {
        return Ok(1);
    }
    let mut d = 1;
    let mut x = q % n;
    while x != 1 {
        x = (x as u128 * q as u128 % n as u128) as u64;
        d += 1;
    }
    Ok(d)
}

/// An element bound to its field, with checked arithmetic.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    repr: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Raise `a` to the integer value carried here; `b` is ignored.
    Pow(i64),
    /// Unary on `a`; `b` is ignored.
    Inv,
    /// Unary on `a`; `b` is ignored.
    Neg,
}

impl FieldElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn repr(&self) -> u32 {
        self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }

    fn with(&self, repr: u32) -> FieldElement {
        FieldElement {
            spec: self.spec.clone(),
            repr,
        }
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.spec.add(self.repr, other.repr)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.spec.sub(self.repr, other.repr)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.spec.mul(self.repr, other.repr)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.spec.div(self.repr, other.repr)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.spec.neg(self.repr))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.with(self.spec.inv(self.repr).ok_or(FieldError::DivisionByZero)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, FieldError> {
        Ok(self.with(self.spec.pow(self.repr, e)?))
    }

    pub fn is_in_subfield(&self, q0: u64) -> Result<bool, FieldError> {
        self.spec.is_in_subfield(self.repr, q0)
    }
}

/// One entry point for every element operation.
pub fn field_arith(
    a: &FieldElement,
    b: &FieldElement,
    op: ArithOp,
) -> Result<FieldElement, FieldError> {
    a.same_field(b)?;
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
        ArithOp::Pow(e) => a.pow(e),
        ArithOp::Inv => a.inv(),
        ArithOp::Neg => Ok(a.neg()),
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.spec == *other.spec && self.repr == other.repr
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.spec.q, self.repr)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

/// Ring embedding of GF(q0) into a larger field of the same characteristic.
///
/// GF(q0) carries its own canonical modulus, so its index encoding differs
/// from the encoding of the copy of GF(q0) inside the big field. The
/// embedding sends the class of `x` to the smallest-index root of the small
/// field's modulus in the big field.
#[derive(Debug, Clone)]
pub struct Embedding {
    small: Arc<FieldSpec>,
    big: Arc<FieldSpec>,
    forward: Vec<u32>,
    backward: HashMap<u32, u32>,
}

impl Embedding {
    pub fn new(small: Arc<FieldSpec>, big: Arc<FieldSpec>) -> Result<Embedding, FieldError> {
        if small.p != big.p || big.m % small.m != 0 {
            return Err(FieldError::NotASubfield(small.q as u64));
        }
        let f = small.modulus.clone();
        let eval = |x: u32| {
            f.iter()
                .rev()
                .fold(0, |acc, &c| big.add(big.mul(acc, x), c))
        };
        let beta = if small.m == 1 {
            0
        } else {
            (0..big.q)
                .find(|&x| eval(x) == 0)
                .expect("an irreducible polynomial splits in every extension of its degree")
        };
        let forward: Vec<u32> = (0..small.q)
            .map(|a| {
                digits(a, small.p, small.m)
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| big.add(big.mul(acc, beta), c))
            })
            .collect();
        let backward = forward
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i as u32))
            .collect();
        Ok(Embedding {
            small,
            big,
            forward,
            backward,
        })
    }

    pub fn small(&self) -> &Arc<FieldSpec> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FieldSpec> {
        &self.big
    }

    pub fn up(&self, a: u32) -> u32 {
        self.forward[a as usize]
    }

    /// Preimage of a big-field element, if it lies in the image.
    pub fn down(&self, x: u32) -> Option<u32> {
        self.backward.get(&x).copied()
    }
}
