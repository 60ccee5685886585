//! Exponent sets, cyclotomic cosets and cyclic codes given by defining sets.
//!
//! A code of length `n` over GF(q) with `gcd(n, q) = 1` is described by the
//! set `S` of exponents `j` such that `alpha^j` is a zero of its generator
//! polynomial, where `alpha` is a primitive n-th root of unity in GF(q^d) and
//! `d` is the order of `q` modulo `n`. All arithmetic happens in GF(q^d); a
//! code over the subfield GF(q) simply restricts its alphabet.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{ord_mod, Embedding, FieldError, FieldSpec, MAX_FIELD_SIZE};
use crate::linalg::Matrix;
use crate::num::{gcd, modn, prime_power};
use crate::poly::{product_from_root_indices, PolyError, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclicError {
    #[error("length must be positive")]
    ZeroLength,
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("gcd(n, q) != 1 for q = {q}, n = {n}")]
    NotCoprime { q: u64, n: usize },
    #[error("GF({q}^{d}) exceeds the field size cap")]
    ExtensionTooLarge { q: u64, d: u64 },
    #[error("defining set is not a union of {q}-cyclotomic cosets; coset {coset:?} is split")]
    NotQClosed { q: u64, coset: Vec<usize> },
    #[error("generator coefficient at degree {degree} is outside the base field")]
    CoefficientLeak { degree: usize },
    #[error("exponent sets have different lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("empty coordinate set")]
    EmptySupport,
    #[error("coordinate {0} is out of range")]
    CoordinateOutOfRange(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A subset of `Z_n`, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentSet {
    n: usize,
    exps: Vec<usize>,
}

impl ExponentSet {
    /// Normalizes every exponent modulo `n`; negative values are allowed.
    pub fn new<I: IntoIterator<Item = i64>>(n: usize, exps: I) -> ExponentSet {
        let set: BTreeSet<usize> = exps.into_iter().map(|e| modn(e, n)).collect();
        ExponentSet {
            n,
            exps: set.into_iter().collect(),
        }
    }

    pub fn from_residues<I: IntoIterator<Item = usize>>(n: usize, exps: I) -> ExponentSet {
        ExponentSet::new(n, exps.into_iter().map(|e| e as i64))
    }

    pub fn empty(n: usize) -> ExponentSet {
        ExponentSet { n, exps: Vec::new() }
    }

    pub fn full(n: usize) -> ExponentSet {
        ExponentSet {
            n,
            exps: (0..n).collect(),
        }
    }

    /// `{start, start + step, ..., start + (len - 1) step}` modulo `n`.
    pub fn progression(n: usize, start: i64, step: i64, len: usize) -> ExponentSet {
        ExponentSet::new(n, (0..len as i64).map(|i| start + i * step))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.exps
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().copied()
    }

    pub fn contains(&self, e: i64) -> bool {
        self.exps.binary_search(&modn(e, self.n)).is_ok()
    }

    /// Membership bitmap indexed by residue.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &e in &self.exps {
            m[e] = true;
        }
        m
    }

    pub fn is_subset(&self, other: &ExponentSet) -> bool {
        self.n == other.n && self.exps.iter().all(|&e| other.contains(e as i64))
    }

    pub fn union(&self, other: &ExponentSet) -> ExponentSet {
        ExponentSet::from_residues(self.n, self.iter().chain(other.iter()))
    }

    pub fn complement(&self) -> ExponentSet {
        let m = self.mask();
        ExponentSet {
            n: self.n,
            exps: (0..self.n).filter(|&e| !m[e]).collect(),
        }
    }

    /// `{-s : s in S}`.
    pub fn negate(&self) -> ExponentSet {
        ExponentSet::new(self.n, self.iter().map(|e| -(e as i64)))
    }

    /// `{b s : s in S}`.
    pub fn scale(&self, b: i64) -> ExponentSet {
        ExponentSet::new(self.n, self.iter().map(|e| e as i64 * b))
    }

    /// `{s + t : s in S}`.
    pub fn shift(&self, t: i64) -> ExponentSet {
        ExponentSet::new(self.n, self.iter().map(|e| e as i64 + t))
    }

    /// True iff `q S = S` modulo `n`.
    pub fn is_closed_under(&self, q: u64) -> bool {
        let m = self.mask();
        let qm = (q % self.n as u64) as usize;
        self.exps.iter().all(|&e| m[e * qm % self.n])
    }
}

/// The sumset `A + B` modulo `n`, i.e. the exponents of the product set `AB`.
pub fn product_set(a: &ExponentSet, b: &ExponentSet) -> Result<ExponentSet, CyclicError> {
    if a.n != b.n {
        return Err(CyclicError::LengthMismatch(a.n, b.n));
    }
    let n = a.n;
    Ok(ExponentSet::from_residues(
        n,
        a.iter().flat_map(|x| b.iter().map(move |y| (x + y) % n)),
    ))
}

impl fmt::Debug for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}} mod {}", parts.join(", "), self.n)
    }
}

/// Length, base field and the splitting field GF(q^d) holding the n-th roots of unity.
pub struct CycContext {
    q: u64,
    n: usize,
    d: u32,
    base: Arc<FieldSpec>,
    big: Arc<FieldSpec>,
    alpha: u32,
    alpha_pows: Vec<u32>,
    embedding: Embedding,
}

impl fmt::Debug for CycContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycContext")
            .field("q", &self.q)
            .field("n", &self.n)
            .field("d", &self.d)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl CycContext {
    pub fn new(q: u64, n: usize) -> Result<Arc<CycContext>, CyclicError> {
        if n == 0 {
            return Err(CyclicError::ZeroLength);
        }
        let (p, m) = prime_power(q).ok_or(CyclicError::NotPrimePower(q))?;
        if gcd(q, n as u64) != 1 {
            return Err(CyclicError::NotCoprime { q, n });
        }
        let d = ord_mod(q, n as u64)?;
        let big_m = m as u64 * d;
        if (p as f64).powi(big_m as i32) > MAX_FIELD_SIZE as f64 {
            return Err(CyclicError::ExtensionTooLarge { q, d });
        }
        let base = FieldSpec::get(p, m)?;
        let big = FieldSpec::get(p, big_m as u32)?;
        let alpha = big.primitive_nth_root(n as u64)?;
        let alpha_pows = (0..n).map(|j| big.pow(alpha, j as i64).unwrap()).collect();
        let embedding = Embedding::new(base.clone(), big.clone())?;
        Ok(Arc::new(CycContext {
            q,
            n,
            d: d as u32,
            base,
            big,
            alpha,
            alpha_pows,
            embedding,
        }))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Order of `q` modulo `n`.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn base_field(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn big_field(&self) -> &Arc<FieldSpec> {
        &self.big
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// `alpha^e` for any integer exponent.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> u32 {
        self.alpha_pows[modn(e, self.n)]
    }

    pub fn exponent_set<I: IntoIterator<Item = i64>>(&self, exps: I) -> ExponentSet {
        ExponentSet::new(self.n, exps)
    }

    /// The orbit of `s` under multiplication by `q` modulo `n`.
    pub fn cyclotomic_coset(&self, s: usize) -> ExponentSet {
        let qm = (self.q % self.n as u64) as usize;
        let mut out = vec![s % self.n];
        let mut x = s * qm % self.n;
        while x != s % self.n {
            out.push(x);
            x = x * qm % self.n;
        }
        ExponentSet::from_residues(self.n, out)
    }

    /// All q-cyclotomic cosets, ordered by smallest element.
    pub fn cosets(&self) -> Vec<ExponentSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !seen[s] {
                let c = self.cyclotomic_coset(s);
                for e in c.iter() {
                    seen[e] = true;
                }
                out.push(c);
            }
        }
        out
    }

    pub fn is_q_closed(&self, s: &ExponentSet) -> bool {
        s.is_closed_under(self.q)
    }

    /// Smallest coset that meets `s` without lying inside it.
    pub fn split_coset(&self, s: &ExponentSet) -> Option<ExponentSet> {
        let m = s.mask();
        self.cosets().into_iter().find(|c| {
            let inside = c.iter().filter(|&e| m[e]).count();
            inside > 0 && inside < c.len()
        })
    }
}

/// Field the code's symbols come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    /// Symbols in GF(q); the defining set must be q-closed.
    Subfield,
    /// Symbols in GF(q^d), the field holding the roots of unity.
    Extension,
}

/// The cyclic code with a given complete defining set.
#[derive(Clone)]
pub struct CyclicCode {
    ctx: Arc<CycContext>,
    base: Base,
    defining: ExponentSet,
    gen: Polynomial,
    k: usize,
}

impl fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CyclicCode[n={}, k={}, q={}, {:?}, Z={}]",
            self.ctx.n, self.k, self.ctx.q, self.base, self.defining
        )
    }
}

impl CyclicCode {
    pub fn new(
        ctx: &Arc<CycContext>,
        defining: ExponentSet,
        base: Base,
    ) -> Result<CyclicCode, CyclicError> {
        if defining.n() != ctx.n {
            return Err(CyclicError::LengthMismatch(defining.n(), ctx.n));
        }
        if base == Base::Subfield {
            if let Some(coset) = ctx.split_coset(&defining) {
                return Err(CyclicError::NotQClosed {
                    q: ctx.q,
                    coset: coset.as_slice().to_vec(),
                });
            }
        }
        let roots: Vec<u32> = defining.iter().map(|j| ctx.alpha_pows[j]).collect();
        let gen = product_from_root_indices(&ctx.big, &roots)?;
        if base == Base::Subfield {
            for (i, &c) in gen.coeffs().iter().enumerate() {
                if !ctx.big.is_in_subfield(c, ctx.q)? {
                    return Err(CyclicError::CoefficientLeak { degree: i });
                }
            }
        }
        let k = ctx.n - defining.len();
        Ok(CyclicCode {
            ctx: ctx.clone(),
            base,
            defining,
            gen,
            k,
        })
    }

    pub fn ctx(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn n(&self) -> usize {
        self.ctx.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn defining(&self) -> &ExponentSet {
        &self.defining
    }

    /// Generator polynomial with coefficients in GF(q^d).
    pub fn generator(&self) -> &Polynomial {
        &self.gen
    }

    /// Generator coefficients in the base field's own index encoding.
    pub fn generator_coeffs(&self) -> Vec<u32> {
        match self.base {
            Base::Extension => self.gen.coeffs().to_vec(),
            Base::Subfield => self
                .gen
                .coeffs()
                .iter()
                .map(|&c| self.ctx.embedding.down(c).expect("checked at construction"))
                .collect(),
        }
    }

    /// Generator polynomial over the base field, in its own encoding.
    pub fn generator_over_base(&self) -> Polynomial {
        let spec = match self.base {
            Base::Extension => self.ctx.big.clone(),
            Base::Subfield => self.ctx.base.clone(),
        };
        Polynomial::new(spec, self.generator_coeffs()).expect("valid base-field coefficients")
    }

    pub fn alphabet_size(&self) -> u64 {
        match self.base {
            Base::Subfield => self.ctx.q,
            Base::Extension => self.ctx.big.q() as u64,
        }
    }

    /// The symbol alphabet as big-field indices, increasing.
    pub fn alphabet(&self) -> Vec<u32> {
        match self.base {
            Base::Subfield => self.ctx.big.subfield_elements(self.ctx.q).unwrap(),
            Base::Extension => self.ctx.big.elements().collect(),
        }
    }

    /// `h(x) = (x^n - 1) / g(x)`.
    pub fn check_polynomial(&self) -> Polynomial {
        let xn = Polynomial::x_n_minus_one(&self.ctx.big, self.ctx.n);
        let (h, r) = xn.divmod(&self.gen).unwrap();
        debug_assert!(r.is_zero());
        h
    }

    /// Rows `x^i g(x)` for `0 <= i < k`.
    pub fn generator_matrix(&self) -> Matrix {
        shifted_rows(&self.ctx.big, &self.gen, self.k, self.ctx.n)
    }

    /// Rows `x^i h*(x)` for `0 <= i < n - k`; its null space is the code.
    pub fn parity_check_matrix(&self) -> Matrix {
        let hstar = self.check_polynomial().reciprocal(self.k).unwrap();
        shifted_rows(&self.ctx.big, &hstar, self.ctx.n - self.k, self.ctx.n)
    }

    /// The dual code, generated by the reciprocal of the check polynomial.
    pub fn dual(&self) -> CyclicCode {
        let defining = self.defining.complement().negate();
        let dual = CyclicCode::new(&self.ctx, defining, self.base)
            .expect("the dual of a cyclic code over the same base field exists");
        let hstar = self.check_polynomial().reciprocal(self.k).unwrap().monic();
        assert_eq!(dual.gen, hstar, "dual generator must equal the monic reciprocal check polynomial");
        dual
    }

    /// The code whose defining set is the complement of this one.
    pub fn complement(&self) -> CyclicCode {
        CyclicCode::new(&self.ctx, self.defining.complement(), self.base)
            .expect("complements of closed sets are closed")
    }

    /// Same defining set with symbols from GF(q^d).
    pub fn extension(&self) -> CyclicCode {
        CyclicCode {
            base: Base::Extension,
            ..self.clone()
        }
    }

    /// Codeword `m(x) g(x)` for a message of `k` big-field indices.
    pub fn encode(&self, msg: &[u32]) -> Vec<u32> {
        assert_eq!(msg.len(), self.k, "message length must equal k");
        let f = &self.ctx.big;
        let mut c = vec![0; self.ctx.n];
        for (i, &m) in msg.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (j, &g) in self.gen.coeffs().iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(m, g));
            }
        }
        c
    }

    /// Word in the alphabet that vanishes at every defining root.
    pub fn contains_word(&self, c: &[u32]) -> bool {
        if c.len() != self.ctx.n {
            return false;
        }
        let f = &self.ctx.big;
        if self.base == Base::Subfield
            && c.iter().any(|&x| !f.is_in_subfield(x, self.ctx.q).unwrap())
        {
            return false;
        }
        self.defining.iter().all(|j| {
            let x = self.ctx.alpha_pows[j];
            c.iter().rev().fold(0, |acc, &ci| f.add(f.mul(acc, x), ci)) == 0
        })
    }

    /// Row-reduced generator matrix of the projection onto `coords`.
    pub fn puncture(&self, coords: &[usize]) -> Result<Matrix, CyclicError> {
        if coords.is_empty() {
            return Err(CyclicError::EmptySupport);
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= self.ctx.n) {
            return Err(CyclicError::CoordinateOutOfRange(c));
        }
        Ok(self.generator_matrix().select_columns(coords).rref().0)
    }
}

/// Cyclic shift by one position: `(c_{n-1}, c_0, ..., c_{n-2})`.
pub fn cyclic_shift(c: &[u32]) -> Vec<u32> {
    let n = c.len();
    (0..n).map(|i| c[(i + n - 1) % n]).collect()
}

fn shifted_rows(f: &Arc<FieldSpec>, p: &Polynomial, count: usize, n: usize) -> Matrix {
    let rows: Vec<Vec<u32>> = (0..count)
        .map(|i| {
            let mut r = vec![0; n];
            for (j, &c) in p.coeffs().iter().enumerate() {
                r[(i + j) % n] = c;
            }
            r
        })
        .collect();
    Matrix::from_rows(f, n, &rows)
}
