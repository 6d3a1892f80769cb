//! Field descriptors and base-field arithmetic contexts.
//!
//! Supported fields: Q, a real closed field R (rational representatives),
//! finite fields F_q of odd characteristic, p-adic fields Q_p (rational
//! representatives), rational function fields k(T) over any of the previous,
//! and a "square-closed" mock field standing in for algebraically closed
//! bases (every element is a square).
//!
//! A [`BaseCtx`] packages concrete coefficient arithmetic for polynomial and
//! matrix work: exact rationals for the characteristic-zero fields, explicit
//! F_q arithmetic for finite fields.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::WittError;
use crate::intarith;
use crate::{Int, Rat, Result};

/// Description of a finite field F_{p^d} with an explicit modulus.
///
/// The modulus is a monic polynomial over F_p of degree d, stored by
/// ascending coefficients in 0..p. Degree 1 moduli describe prime fields.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FqDescriptor {
    pub p: u64,
    pub modulus: Vec<u64>,
}

impl FqDescriptor {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Self {
        FqDescriptor { p, modulus: vec![0, 1] }
    }

    /// F_{p^d} with the canonical modulus: the first monic irreducible of
    /// degree d in the lexicographic order by ascending coefficients.
    pub fn extension(p: u64, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(WittError::Domain("extension degree must be positive".to_owned()));
        }
        if d == 1 {
            return Ok(Self::prime(p));
        }
        if d > 4 {
            return Err(WittError::Domain(format!(
                "extension degree {} exceeds the supported bound 4",
                d
            )));
        }
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        loop {
            if fp_poly_is_irreducible(p, &coeffs) {
                return Ok(FqDescriptor { p, modulus: coeffs });
            }
            // Increment the non-leading coefficients as a base-p counter,
            // most significant digit last.
            let mut i = 0;
            loop {
                if i == d {
                    return Err(WittError::InternalGuard(
                        "no irreducible modulus found".to_owned(),
                    ));
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Field size p^d.
    pub fn q(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }
}

/// Evaluate a polynomial over F_p (ascending coefficients) at a point.
fn fp_eval(p: u64, coeffs: &[u64], x: u64) -> u64 {
    let mut acc: u128 = 0;
    for &c in coeffs.iter().rev() {
        acc = (acc * x as u128 + c as u128) % p as u128;
    }
    acc as u64
}

/// Irreducibility over F_p for degrees up to 4: root tests, plus exhaustive
/// monic quadratic trial division in degree 4.
fn fp_poly_is_irreducible(p: u64, coeffs: &[u64]) -> bool {
    let d = coeffs.len() - 1;
    debug_assert!(coeffs[d] == 1 && (2..=4).contains(&d));
    for x in 0..p {
        if fp_eval(p, coeffs, x) == 0 {
            return false;
        }
    }
    if d <= 3 {
        return true;
    }
    // Degree 4 with no roots: exclude products of two irreducible quadratics.
    for b in 0..p {
        for c in 0..p {
            let quad = [c, b, 1u64];
            if fp_poly_divides(p, &quad, coeffs) {
                return false;
            }
        }
    }
    true
}

/// Does the monic polynomial g divide f over F_p?
fn fp_poly_divides(p: u64, g: &[u64], f: &[u64]) -> bool {
    let mut rem: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dg;
        if lead != 0 {
            for i in 0..=dg {
                let idx = shift + i;
                let sub = (lead as u128 * g[i] as u128) % p as u128;
                rem[idx] = ((rem[idx] as u128 + p as u128 * p as u128 - sub) % p as u128) as u64;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// A supported field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldDescriptor {
    /// The rational numbers Q.
    Rationals,
    /// A real closed field, modeled by rational representatives.
    RealClosed,
    /// A finite field of odd characteristic.
    FiniteField(FqDescriptor),
    /// The p-adic field Q_p, modeled by rational representatives.
    PadicField(u64),
    /// The rational function field base(T); nesting depth exactly one.
    FunctionField(Box<FieldDescriptor>),
    /// Mock field in which every nonzero element is a square (W = Z/2).
    SquareClosed,
}

impl FieldDescriptor {
    /// Validate the descriptor invariants.
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldDescriptor::FiniteField(fq) => {
                if fq.p < 3 || !intarith::is_prime_u64(fq.p) {
                    return Err(WittError::Domain(format!(
                        "finite field characteristic must be an odd prime, got {}",
                        fq.p
                    )));
                }
                if fq.modulus.len() < 2 || *fq.modulus.last().unwrap() != 1 {
                    return Err(WittError::Domain("modulus must be monic of degree >= 1".to_owned()));
                }
                if fq.modulus.iter().any(|&c| c >= fq.p) {
                    return Err(WittError::Domain("modulus coefficients must lie in 0..p".to_owned()));
                }
                if (2..=4).contains(&fq.degree()) && !fp_poly_is_irreducible(fq.p, &fq.modulus) {
                    return Err(WittError::Domain("modulus is reducible".to_owned()));
                }
                Ok(())
            }
            FieldDescriptor::PadicField(p) => {
                if !intarith::is_prime_u64(*p) {
                    return Err(WittError::Domain(format!("{} is not prime", p)));
                }
                Ok(())
            }
            FieldDescriptor::FunctionField(base) => match **base {
                FieldDescriptor::FunctionField(_) => Err(WittError::Domain(
                    "function field nesting depth exceeds one".to_owned(),
                )),
                _ => base.validate(),
            },
            _ => Ok(()),
        }
    }

    /// The base of a function field, or the field itself.
    pub fn base(&self) -> &FieldDescriptor {
        match self {
            FieldDescriptor::FunctionField(base) => base,
            other => other,
        }
    }

    pub fn is_function_field(&self) -> bool {
        matches!(self, FieldDescriptor::FunctionField(_))
    }

    /// Does the field admit an ordering?
    pub fn is_real(&self) -> bool {
        match self {
            FieldDescriptor::Rationals | FieldDescriptor::RealClosed => true,
            FieldDescriptor::FunctionField(base) => base.is_real(),
            _ => false,
        }
    }

    /// Short display name, matching the parser syntax of the companion crate.
    pub fn name(&self) -> String {
        match self {
            FieldDescriptor::Rationals => "Q".to_owned(),
            FieldDescriptor::RealClosed => "R".to_owned(),
            FieldDescriptor::FiniteField(fq) => format!("F({})", fq.q()),
            FieldDescriptor::PadicField(p) => format!("Qp({})", p),
            FieldDescriptor::FunctionField(base) => format!("{}(T)", base.name()),
            FieldDescriptor::SquareClosed => "Csq".to_owned(),
        }
    }
}

/// An element of a non-function base field.
///
/// `Rat` serves Q, R (representative), Q_p (representative) and the
/// square-closed mock field; `Fq` holds coordinates in the modulus basis,
/// ascending, of length equal to the extension degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BaseElem {
    Rat(Rat),
    Fq(Vec<u64>),
}

impl BaseElem {
    pub fn from_int(n: i64) -> BaseElem {
        BaseElem::Rat(Rat::from(Int::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            BaseElem::Rat(x) => x.is_zero(),
            BaseElem::Fq(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn as_rat(&self) -> Result<&Rat> {
        match self {
            BaseElem::Rat(x) => Ok(x),
            BaseElem::Fq(_) => Err(WittError::Domain(
                "expected a characteristic-zero element".to_owned(),
            )),
        }
    }
}

/// Arithmetic context for finite-field elements in coordinate form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqCtx {
    pub desc: FqDescriptor,
}

impl FqCtx {
    pub fn new(desc: FqDescriptor) -> Self {
        FqCtx { desc }
    }

    pub fn p(&self) -> u64 {
        self.desc.p
    }

    pub fn d(&self) -> usize {
        self.desc.degree()
    }

    pub fn q(&self) -> u64 {
        self.desc.q()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.d()]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn from_int(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.p() as i64) as u64;
        v
    }

    /// Reduce a rational with p-integral value into the prime subfield.
    pub fn from_rat(&self, x: &Rat) -> Result<Vec<u64>> {
        let r = intarith::residue_mod_p(x, self.p())?;
        let mut v = self.zero();
        v[0] = r;
        Ok(v)
    }

    /// The element with enumeration index i: base-p digits, ascending.
    pub fn elem_from_index(&self, mut i: u64) -> Vec<u64> {
        let mut v = self.zero();
        for slot in v.iter_mut() {
            *slot = i % self.p();
            i /= self.p();
        }
        v
    }

    /// Enumerate all q elements in canonical (index) order.
    pub fn all_elements(&self) -> Vec<Vec<u64>> {
        (0..self.q()).map(|i| self.elem_from_index(i)).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p();
        a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        let p = self.p();
        a.iter().map(|&x| (p - x % p) % p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p() as u128;
        let d = self.d();
        let mut prod = vec![0u128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        // Reduce by the monic modulus from the top.
        for i in (d..prod.len()).rev() {
            let lead = prod[i];
            if lead != 0 {
                prod[i] = 0;
                for (k, &m) in self.desc.modulus.iter().enumerate().take(d) {
                    let idx = i - d + k;
                    prod[idx] = (prod[idx] + p * p - lead * m as u128 % p) % p;
                }
            }
        }
        prod.truncate(d);
        prod.into_iter().map(|c| c as u64).collect()
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        if a.iter().all(|&c| c == 0) {
            return Err(WittError::ZeroInput);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    /// Is a nonzero element a square? Euler criterion in F_q.
    pub fn is_square(&self, a: &[u64]) -> Result<bool> {
        if a.iter().all(|&c| c == 0) {
            return Err(WittError::ZeroInput);
        }
        let e = self.pow(a, (self.q() - 1) / 2);
        Ok(e == self.one())
    }

    /// The least nonsquare in enumeration order.
    pub fn least_nonresidue(&self) -> Vec<u64> {
        for i in 1..self.q() {
            let a = self.elem_from_index(i);
            if !self.is_square(&a).unwrap() {
                return a;
            }
        }
        unreachable!("F_q with odd q has a nonsquare")
    }
}

/// Coefficient arithmetic for polynomials and matrices over a base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseCtx {
    Rat,
    Fq(FqCtx),
}

impl BaseCtx {
    /// The context for a non-function field descriptor.
    pub fn for_field(f: &FieldDescriptor) -> Result<BaseCtx> {
        match f {
            FieldDescriptor::Rationals
            | FieldDescriptor::RealClosed
            | FieldDescriptor::PadicField(_)
            | FieldDescriptor::SquareClosed => Ok(BaseCtx::Rat),
            FieldDescriptor::FiniteField(fq) => Ok(BaseCtx::Fq(FqCtx::new(fq.clone()))),
            FieldDescriptor::FunctionField(_) => Err(WittError::UnsupportedField(
                "coefficient context requires a non-function field".to_owned(),
            )),
        }
    }

    pub fn zero(&self) -> BaseElem {
        match self {
            BaseCtx::Rat => BaseElem::Rat(Rat::zero()),
            BaseCtx::Fq(ctx) => BaseElem::Fq(ctx.zero()),
        }
    }

    pub fn one(&self) -> BaseElem {
        match self {
            BaseCtx::Rat => BaseElem::Rat(Rat::one()),
            BaseCtx::Fq(ctx) => BaseElem::Fq(ctx.one()),
        }
    }

    pub fn from_int(&self, n: i64) -> BaseElem {
        match self {
            BaseCtx::Rat => BaseElem::from_int(n),
            BaseCtx::Fq(ctx) => BaseElem::Fq(ctx.from_int(n)),
        }
    }

    fn pair<'a>(&self, a: &'a BaseElem, b: &'a BaseElem) -> Result<(&'a BaseElem, &'a BaseElem)> {
        match (self, a, b) {
            (BaseCtx::Rat, BaseElem::Rat(_), BaseElem::Rat(_)) => Ok((a, b)),
            (BaseCtx::Fq(_), BaseElem::Fq(_), BaseElem::Fq(_)) => Ok((a, b)),
            _ => Err(WittError::FieldMismatch),
        }
    }

    pub fn add(&self, a: &BaseElem, b: &BaseElem) -> Result<BaseElem> {
        self.pair(a, b)?;
        Ok(match (self, a, b) {
            (BaseCtx::Rat, BaseElem::Rat(x), BaseElem::Rat(y)) => BaseElem::Rat(x + y),
            (BaseCtx::Fq(ctx), BaseElem::Fq(x), BaseElem::Fq(y)) => BaseElem::Fq(ctx.add(x, y)),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, a: &BaseElem, b: &BaseElem) -> Result<BaseElem> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &BaseElem) -> BaseElem {
        match (self, a) {
            (BaseCtx::Rat, BaseElem::Rat(x)) => BaseElem::Rat(-x),
            (BaseCtx::Fq(ctx), BaseElem::Fq(x)) => BaseElem::Fq(ctx.neg(x)),
            _ => a.clone(),
        }
    }

    pub fn mul(&self, a: &BaseElem, b: &BaseElem) -> Result<BaseElem> {
        self.pair(a, b)?;
        Ok(match (self, a, b) {
            (BaseCtx::Rat, BaseElem::Rat(x), BaseElem::Rat(y)) => BaseElem::Rat(x * y),
            (BaseCtx::Fq(ctx), BaseElem::Fq(x), BaseElem::Fq(y)) => BaseElem::Fq(ctx.mul(x, y)),
            _ => unreachable!(),
        })
    }

    pub fn inv(&self, a: &BaseElem) -> Result<BaseElem> {
        if a.is_zero() {
            return Err(WittError::ZeroInput);
        }
        Ok(match (self, a) {
            (BaseCtx::Rat, BaseElem::Rat(x)) => BaseElem::Rat(x.recip()),
            (BaseCtx::Fq(ctx), BaseElem::Fq(x)) => BaseElem::Fq(ctx.inv(x)?),
            _ => return Err(WittError::FieldMismatch),
        })
    }

    pub fn div(&self, a: &BaseElem, b: &BaseElem) -> Result<BaseElem> {
        self.mul(a, &self.inv(b)?)
    }

    pub fn eq(&self, a: &BaseElem, b: &BaseElem) -> bool {
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_extension_modulus() {
        // Oracle: x^2 + 1 is the first monic irreducible quadratic mod 3 in
        // ascending-coefficient order (x^2, x^2 + 1 checked by hand).
        let f9 = FqDescriptor::extension(3, 2).unwrap();
        assert_eq!(f9.modulus, vec![1, 0, 1]);
        assert_eq!(f9.q(), 9);
        // Mod 5: x^2, x^2+1 = (x+2)(x+3), x^2+2 irreducible (2 nonresidue).
        let f25 = FqDescriptor::extension(5, 2).unwrap();
        assert_eq!(f25.modulus, vec![2, 0, 1]);
    }

    #[test]
    fn fq_arithmetic() {
        let ctx = FqCtx::new(FqDescriptor::extension(3, 2).unwrap());
        // In F_9 = F_3[i], (1 + i)^2 = 2i.
        let a = vec![1u64, 1];
        let sq = ctx.mul(&a, &a);
        assert_eq!(sq, vec![0, 2]);
        let inv = ctx.inv(&a).unwrap();
        assert_eq!(ctx.mul(&a, &inv), ctx.one());
    }

    #[test]
    fn fq_square_counts() {
        for (p, d) in [(3u64, 1usize), (5, 1), (7, 1), (3, 2), (5, 2)] {
            let ctx = FqCtx::new(FqDescriptor::extension(p, d).unwrap());
            let squares = ctx
                .all_elements()
                .into_iter()
                .skip(1)
                .filter(|a| ctx.is_square(a).unwrap())
                .count() as u64;
            assert_eq!(squares, (ctx.q() - 1) / 2);
        }
    }

    #[test]
    fn fq_least_nonresidue() {
        let f5 = FqCtx::new(FqDescriptor::prime(5));
        assert_eq!(f5.least_nonresidue(), vec![2]);
        let f7 = FqCtx::new(FqDescriptor::prime(7));
        assert_eq!(f7.least_nonresidue(), vec![3]);
    }

    #[test]
    fn descriptor_validation() {
        assert!(FieldDescriptor::FiniteField(FqDescriptor::prime(2)).validate().is_err());
        assert!(FieldDescriptor::FiniteField(FqDescriptor::prime(9)).validate().is_err());
        assert!(FieldDescriptor::PadicField(3).validate().is_ok());
        let kt = FieldDescriptor::FunctionField(Box::new(FieldDescriptor::Rationals));
        assert!(kt.validate().is_ok());
        assert!(kt.is_real());
        let nested = FieldDescriptor::FunctionField(Box::new(kt));
        assert!(nested.validate().is_err());
        assert!(!FieldDescriptor::FunctionField(Box::new(FieldDescriptor::PadicField(3)))
            .is_real());
    }
}
