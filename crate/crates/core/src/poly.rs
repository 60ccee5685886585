//! Dense univariate polynomials over a [`FieldSpec`].

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomials over different fields")]
    MixedFields,
    #[error("root {0} listed twice")]
    DuplicateRoot(u32),
    #[error("degree {degree} exceeds k = {k}")]
    DegreeExceedsK { degree: usize, k: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficients low to high with no trailing zeros; the zero polynomial is empty.
#[derive(Clone)]
pub struct Polynomial {
    spec: Arc<FieldSpec>,
    coeffs: Vec<u32>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.spec == *other.spec && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn new(spec: Arc<FieldSpec>, mut coeffs: Vec<u32>) -> Result<Polynomial, PolyError> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= spec.q()) {
            return Err(FieldError::BadElement {
                repr: bad as u64,
                q: spec.q() as u64,
            }
            .into());
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Polynomial { spec, coeffs })
    }

    fn raw(spec: &Arc<FieldSpec>, mut coeffs: Vec<u32>) -> Polynomial {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Polynomial {
        Polynomial::raw(spec, Vec::new())
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Polynomial {
        Polynomial::raw(spec, vec![1])
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(spec: &Arc<FieldSpec>, n: usize) -> Polynomial {
        let mut c = vec![0; n + 1];
        c[0] = spec.neg(1);
        c[n] = 1;
        Polynomial::raw(spec, c)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if *self.spec == *other.spec {
            Ok(())
        } else {
            Err(PolyError::MixedFields)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let f = &self.spec;
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Ok(Polynomial::raw(f, c))
    }

    pub fn neg(&self) -> Polynomial {
        let c = self.coeffs.iter().map(|&a| self.spec.neg(a)).collect();
        Polynomial::raw(&self.spec, c)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u32) -> Polynomial {
        let c = self.coeffs.iter().map(|&a| self.spec.mul(a, s)).collect();
        Polynomial::raw(&self.spec, c)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.spec));
        }
        let f = &self.spec;
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Ok(Polynomial::raw(f, c))
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        self.check(divisor)?;
        let f = &self.spec;
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Polynomial::zero(f), self.clone()));
        }
        let mut quot = vec![0; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + db], lead_inv);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, b));
            }
        }
        rem.truncate(db);
        Ok((Polynomial::raw(f, quot), Polynomial::raw(f, rem)))
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.spec.inv(self.leading()) {
            Some(i) => self.scale(i),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Horner evaluation at a raw field index.
    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.spec;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_at(&self, x: &FieldElement) -> Result<FieldElement, PolyError> {
        if **x.spec() != *self.spec {
            return Err(PolyError::MixedFields);
        }
        Ok(self.spec.element(self.eval(x.repr()))?)
    }

    /// `sum h_{k-i} x^i`: the coefficient vector reversed over `0..=k`.
    pub fn reciprocal(&self, k: usize) -> Result<Polynomial, PolyError> {
        if let Some(d) = self.degree() {
            if d > k {
                return Err(PolyError::DegreeExceedsK { degree: d, k });
            }
        }
        let c = (0..=k)
            .map(|i| self.coeffs.get(k - i).copied().unwrap_or(0))
            .collect();
        Ok(Polynomial::raw(&self.spec, c))
    }

    /// Residue modulo `x^n - 1` as a length-`n` coefficient vector.
    pub fn to_vector(&self, n: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let j = i % n;
            v[j] = self.spec.add(v[j], c);
        }
        v
    }
}

/// Monic `prod (x - r)` over distinct roots given as raw indices.
pub fn product_from_root_indices(
    spec: &Arc<FieldSpec>,
    roots: &[u32],
) -> Result<Polynomial, PolyError> {
    let mut seen = HashSet::new();
    let mut c = vec![1u32];
    for &r in roots {
        if !seen.insert(r) {
            return Err(PolyError::DuplicateRoot(r));
        }
        let nr = spec.neg(r);
        c.push(0);
        for i in (0..c.len()).rev() {
            let shifted = if i > 0 { c[i - 1] } else { 0 };
            c[i] = spec.add(shifted, spec.mul(c[i], nr));
        }
    }
    Ok(Polynomial::raw(spec, c))
}

/// Monic `prod (x - r)` over distinct roots.
pub fn product_from_roots(
    spec: &Arc<FieldSpec>,
    roots: &[FieldElement],
) -> Result<Polynomial, PolyError> {
    if roots.iter().any(|r| **r.spec() != **spec) {
        return Err(PolyError::MixedFields);
    }
    let idx: Vec<u32> = roots.iter().map(|r| r.repr()).collect();
    product_from_root_indices(spec, &idx)
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial(GF({}), {:?})", self.spec.q(), self.coeffs)
    }
}

/// Prints high to low as `x^20 + x^19 + ... + 1`; non-unit coefficients are
/// printed as their element index, e.g. `5x^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coef = if c == 1 && i > 0 {
                    String::new()
                } else {
                    c.to_string()
                };
                match i {
                    0 => coef,
                    1 => format!("{coef}x"),
                    _ => format!("{coef}x^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> Arc<FieldSpec> {
        FieldSpec::get(p, m).unwrap()
    }

    #[test]
    fn identities_and_divmod() {
        let f = gf(7, 1);
        let a = Polynomial::new(f.clone(), vec![3, 0, 5, 1]).unwrap();
        let b = Polynomial::new(f.clone(), vec![2, 1]).unwrap();
        assert_eq!(a.mul(&Polynomial::one(&f)).unwrap(), a);
        assert_eq!(a.add(&Polynomial::zero(&f)).unwrap(), a);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
        assert!(r.degree().unwrap_or(0) < 1);
        assert_eq!(
            a.divmod(&Polynomial::zero(&f)).unwrap_err(),
            PolyError::DivisionByZero
        );
    }

    #[test]
    fn binary_gcd() {
        let f = gf(2, 1);
        let x7 = Polynomial::x_n_minus_one(&f, 7);
        let g = Polynomial::new(f.clone(), vec![1, 1, 0, 1]).unwrap();
        assert_eq!(x7.gcd(&g).unwrap(), g);
        assert!(x7.divmod(&g).unwrap().1.is_zero());
    }

    #[test]
    fn roots_products() {
        let f = gf(2, 4);
        assert_eq!(product_from_root_indices(&f, &[]).unwrap(), Polynomial::one(&f));
        let p = product_from_root_indices(&f, &[1]).unwrap();
        assert_eq!(p.coeffs(), &[f.neg(1), 1]);
        let roots = [3, 7, 9, 12];
        let p = product_from_root_indices(&f, &roots).unwrap();
        assert_eq!(p.degree(), Some(4));
        for x in f.elements() {
            assert_eq!(p.eval(x) == 0, roots.contains(&x));
        }
        assert_eq!(
            product_from_root_indices(&f, &[3, 3]).unwrap_err(),
            PolyError::DuplicateRoot(3)
        );
    }

    #[test]
    fn reciprocal_examples() {
        let f = gf(5, 1);
        let h = Polynomial::new(f.clone(), vec![3, 2, 1]).unwrap();
        assert_eq!(h.reciprocal(2).unwrap().coeffs(), &[1, 2, 3]);
        assert_eq!(h.reciprocal(4).unwrap().reciprocal(4).unwrap(), h);
        let pal = Polynomial::new(f.clone(), vec![1, 4, 1]).unwrap();
        assert_eq!(pal.reciprocal(2).unwrap(), pal);
        assert_eq!(
            h.reciprocal(1).unwrap_err(),
            PolyError::DegreeExceedsK { degree: 2, k: 1 }
        );
    }

    #[test]
    fn display() {
        let f = gf(2, 1);
        let p = Polynomial::new(f, vec![1, 1, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "x^3 + x + 1");
        let f = gf(5, 1);
        let p = Polynomial::new(f, vec![0, 3, 1]).unwrap();
        assert_eq!(p.to_string(), "x^2 + 3x");
    }
}
