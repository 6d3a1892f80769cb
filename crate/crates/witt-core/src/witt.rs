//! Witt and Grothendieck-Witt ring arithmetic with canonical equality, the
//! fundamental ideal, torsion and nilpotence tests, the level-n modified
//! groups with the group law a [+]_n b = a + b + (-2)^n ab, and exhaustive
//! tables for fields with finite Witt ring.

use alloc::borrow::ToOwned;
use alloc::vec;
use alloc::vec::Vec;

use crate::elem::FieldElement;
use crate::error::WittError;
use crate::field::FieldDescriptor;
use crate::forms::{self, DiagonalForm};
use crate::Result;

/// A Witt class, stored by its canonical anisotropic representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WittClass {
    pub field: FieldDescriptor,
    pub rep: DiagonalForm,
}

impl WittClass {
    /// The class of a diagonal form.
    pub fn from_form(q: &DiagonalForm) -> Result<WittClass> {
        let (kernel, _) = forms::witt_decompose(q)?;
        Ok(WittClass { field: q.field.clone(), rep: kernel })
    }

    pub fn zero(field: &FieldDescriptor) -> WittClass {
        WittClass { field: field.clone(), rep: DiagonalForm::empty(field.clone()) }
    }

    pub fn one(field: &FieldDescriptor) -> Result<WittClass> {
        WittClass::from_form(&DiagonalForm::from_ints(field, &[1])?)
    }

    pub fn of_element(field: &FieldDescriptor, a: &FieldElement) -> Result<WittClass> {
        WittClass::from_form(&DiagonalForm::new(field.clone(), vec![a.clone()])?)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.dim() == 0
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn add(&self, other: &WittClass) -> Result<WittClass> {
        if self.field != other.field {
            return Err(WittError::FieldMismatch);
        }
        WittClass::from_form(&self.rep.direct_sum(&other.rep)?)
    }

    pub fn neg(&self) -> Result<WittClass> {
        WittClass::from_form(&self.rep.neg()?)
    }

    pub fn sub(&self, other: &WittClass) -> Result<WittClass> {
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &WittClass) -> Result<WittClass> {
        if self.field != other.field {
            return Err(WittError::FieldMismatch);
        }
        WittClass::from_form(&self.rep.tensor(&other.rep)?)
    }

    /// n-fold sum, by binary doubling (n may be negative).
    pub fn scalar_mul(&self, n: i64) -> Result<WittClass> {
        let mut base = if n < 0 { self.neg()? } else { self.clone() };
        let mut n = n.unsigned_abs();
        let mut acc = WittClass::zero(&self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.add(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.add(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Result<WittClass> {
        let mut acc = WittClass::one(&self.field)?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Is the class in the fundamental ideal (even dimension)?
    pub fn in_fundamental_ideal(&self) -> bool {
        self.rep.dim() % 2 == 0
    }

    /// Torsion iff total signature vanishes at every ordering.
    pub fn is_torsion(&self) -> Result<bool> {
        match &self.field {
            FieldDescriptor::Rationals | FieldDescriptor::RealClosed => {
                Ok(self.rep.signature()? == 0)
            }
            FieldDescriptor::FunctionField(base) if base.is_real() => {
                Ok(forms::signature_function(&self.rep)?.is_identically_zero())
            }
            _ => Ok(true),
        }
    }

    /// Additive order, or None for nontorsion classes. Torsion in Witt rings
    /// is 2-primary, so the order is found by doubling.
    pub fn torsion_order(&self) -> Result<Option<u64>> {
        if !self.is_torsion()? {
            return Ok(None);
        }
        let mut order = 1u64;
        let mut x = self.clone();
        while !x.is_zero() {
            x = x.add(&x)?;
            order *= 2;
            if order > (1 << 25) {
                return Err(WittError::InternalGuard(
                    "torsion order exceeds 2^25".to_owned(),
                ));
            }
        }
        Ok(Some(order))
    }

    /// Nilpotent iff zero, or even-dimensional and torsion.
    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.is_zero() || (self.in_fundamental_ideal() && self.is_torsion()?))
    }
}

/// A Grothendieck-Witt class: Witt class plus rank, with rank congruent to
/// the representative dimension mod 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GwClass {
    pub witt: WittClass,
    pub rank: i64,
}

impl GwClass {
    pub fn from_form(q: &DiagonalForm) -> Result<GwClass> {
        Ok(GwClass { witt: WittClass::from_form(q)?, rank: q.dim() as i64 })
    }

    pub fn new(witt: WittClass, rank: i64) -> Result<GwClass> {
        if (witt.rep.dim() as i64 - rank).rem_euclid(2) != 0 {
            return Err(WittError::Domain(
                "rank must be congruent to the Witt dimension mod 2".to_owned(),
            ));
        }
        Ok(GwClass { witt, rank })
    }

    pub fn zero(field: &FieldDescriptor) -> GwClass {
        GwClass { witt: WittClass::zero(field), rank: 0 }
    }

    pub fn one(field: &FieldDescriptor) -> Result<GwClass> {
        Ok(GwClass { witt: WittClass::one(field)?, rank: 1 })
    }

    pub fn add(&self, other: &GwClass) -> Result<GwClass> {
        Ok(GwClass { witt: self.witt.add(&other.witt)?, rank: self.rank + other.rank })
    }

    pub fn neg(&self) -> Result<GwClass> {
        Ok(GwClass { witt: self.witt.neg()?, rank: -self.rank })
    }

    pub fn sub(&self, other: &GwClass) -> Result<GwClass> {
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &GwClass) -> Result<GwClass> {
        Ok(GwClass { witt: self.witt.mul(&other.witt)?, rank: self.rank * other.rank })
    }
}

/// A torsion Witt class carried at level n, where the group law is
/// a [+]_n b = a + b + (-2)^n ab.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorsionLevelElement {
    pub level: u32,
    pub value: WittClass,
}

impl TorsionLevelElement {
    pub fn new(level: u32, value: WittClass) -> Result<TorsionLevelElement> {
        if level > 32 {
            return Err(WittError::InternalGuard("torsion level exceeds 32".to_owned()));
        }
        if !value.is_torsion()? {
            return Err(WittError::NotTorsion);
        }
        Ok(TorsionLevelElement { level, value })
    }

    pub fn zero(field: &FieldDescriptor, level: u32) -> TorsionLevelElement {
        TorsionLevelElement { level, value: WittClass::zero(field) }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// The modified addition a [+]_n b = a + b + (-2)^n ab.
pub fn boxplus(a: &TorsionLevelElement, b: &TorsionLevelElement) -> Result<TorsionLevelElement> {
    if a.level != b.level {
        return Err(WittError::LevelMismatch);
    }
    let n = a.level;
    let prod = a.value.mul(&b.value)?;
    let coeff: i64 = if n >= 63 {
        // (-2)^n a b vanishes long before this for torsion classes; reduce
        // via the 2-power part of the order instead of overflowing.
        0
    } else {
        (-2i64).pow(n)
    };
    let scaled = prod.scalar_mul(coeff)?;
    let value = a.value.add(&b.value)?.add(&scaled)?;
    TorsionLevelElement::new(n, value)
}

/// Inverse for [+]_n from the finite sum
/// -(sum_{i>=1} (-1)^{(i-1)(n-1)} 2^{n(i-1)} a^i), truncated when the terms
/// start vanishing.
pub fn boxplus_inverse(a: &TorsionLevelElement) -> Result<TorsionLevelElement> {
    let n = a.level;
    let mut acc = WittClass::zero(&a.value.field);
    let mut power = a.value.clone(); // a^i
    for i in 1u32..=64 {
        let sign: i64 = if ((i - 1) * n.saturating_sub(1)) % 2 == 1 { -1 } else { 1 };
        let exp = (n as u64) * ((i - 1) as u64);
        let term = if exp >= 63 {
            WittClass::zero(&a.value.field)
        } else {
            power.scalar_mul(sign * (1i64 << exp))?
        };
        if term.is_zero() {
            // All later terms carry at least this power of 2 against the
            // same torsion bound, so the series has terminated.
            let inv = TorsionLevelElement::new(n, acc.neg()?)?;
            let check = boxplus(a, &inv)?;
            if !check.is_zero() {
                return Err(WittError::InternalGuard(
                    "inverse series terminated early".to_owned(),
                ));
            }
            return Ok(inv);
        }
        acc = acc.add(&term)?;
        power = power.mul(&a.value)?;
    }
    Err(WittError::InternalGuard("inverse series did not terminate".to_owned()))
}

/// Exhaustive table of a finite Witt ring, built by closure from the
/// one-dimensional generators.
#[derive(Debug, Clone)]
pub struct WittRingTable {
    pub field: FieldDescriptor,
    pub elems: Vec<WittClass>,
    pub add: Vec<Vec<u16>>,
    pub mul: Vec<Vec<u16>>,
    pub neg: Vec<u16>,
}

impl WittRingTable {
    /// Build the full table. Supported for fields with finite W: finite
    /// fields, p-adic fields, and the square-closed mock field.
    pub fn build(field: &FieldDescriptor) -> Result<WittRingTable> {
        match field {
            FieldDescriptor::FiniteField(_)
            | FieldDescriptor::PadicField(_)
            | FieldDescriptor::SquareClosed => {}
            _ => {
                return Err(WittError::UnsupportedField(
                    "finite Witt ring table requires F_q, Q_p, or the square-closed mock".to_owned(),
                ))
            }
        }
        let classes = crate::elem::square_classes(field)?.ok_or_else(|| {
            WittError::UnsupportedField("square classes must be finite".to_owned())
        })?;
        let mut elems: Vec<WittClass> = vec![WittClass::zero(field)];
        let mut gens: Vec<WittClass> = Vec::new();
        for c in &classes {
            gens.push(WittClass::of_element(field, &c.representative)?);
        }
        // Closure under addition by the generators; multiplication closure
        // follows since generators multiply to generators.
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let x = elems[i].clone();
            for g in &gens {
                let y = x.add(g)?;
                if !elems.contains(&y) {
                    elems.push(y);
                    frontier.push(elems.len() - 1);
                }
                let yn = x.sub(g)?;
                if !elems.contains(&yn) {
                    elems.push(yn);
                    frontier.push(elems.len() - 1);
                }
            }
            if elems.len() > 4096 {
                return Err(WittError::InternalGuard("Witt ring closure ran away".to_owned()));
            }
        }
        elems.sort();
        let n = elems.len();
        let index = |x: &WittClass, elems: &[WittClass]| -> Result<u16> {
            elems
                .iter()
                .position(|y| y == x)
                .map(|i| i as u16)
                .ok_or_else(|| WittError::InternalGuard("closure is not closed".to_owned()))
        };
        let mut add = vec![vec![0u16; n]; n];
        let mut mul = vec![vec![0u16; n]; n];
        let mut neg = vec![0u16; n];
        for i in 0..n {
            neg[i] = index(&elems[i].neg()?, &elems)?;
            for j in 0..n {
                add[i][j] = index(&elems[i].add(&elems[j])?, &elems)?;
                mul[i][j] = index(&elems[i].mul(&elems[j])?, &elems)?;
            }
        }
        Ok(WittRingTable { field: field.clone(), elems, add, mul, neg })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, x: &WittClass) -> Result<usize> {
        self.elems
            .iter()
            .position(|y| y == x)
            .ok_or_else(|| WittError::InternalGuard("class missing from table".to_owned()))
    }

    pub fn zero_index(&self) -> usize {
        self.elems.iter().position(|x| x.is_zero()).expect("zero is present")
    }

    pub fn one_index(&self) -> Result<usize> {
        self.index_of(&WittClass::one(&self.field)?)
    }

    /// Indices of the multiplicative units.
    pub fn unit_indices(&self) -> Result<Vec<usize>> {
        let one = self.one_index()?;
        let n = self.len();
        Ok((0..n)
            .filter(|&i| (0..n).any(|j| self.mul[i][j] as usize == one))
            .collect())
    }

    /// Additive order of an element by table walking.
    pub fn additive_order(&self, i: usize) -> u64 {
        let zero = self.zero_index();
        let mut order = 1u64;
        let mut x = i;
        while x != zero {
            x = self.add[x][i] as usize;
            order += 1;
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqDescriptor;

    fn qp(p: u64) -> FieldDescriptor {
        FieldDescriptor::PadicField(p)
    }

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    #[test]
    fn hyperbolic_is_zero() {
        let h = DiagonalForm::hyperbolic(&q());
        assert!(WittClass::from_form(&h).unwrap().is_zero());
        let gw = GwClass::from_form(&h).unwrap();
        assert_eq!(gw.rank, 2);
        assert_ne!(gw, GwClass::zero(&q()));
    }

    #[test]
    fn quaternion_class_torsion_order_two() {
        let f = DiagonalForm::from_ints(&q(), &[1, 1, -3, -3]).unwrap();
        let x = WittClass::from_form(&f).unwrap();
        assert!(!x.is_zero());
        assert!(x.is_torsion().unwrap());
        assert_eq!(x.torsion_order().unwrap(), Some(2));
        assert!(x.is_nilpotent().unwrap());
        // Oracle cross-check by doubling the raw form: x + x ~ 0 iff the
        // 8-dimensional sum is hyperbolic.
        let xx = x.add(&x).unwrap();
        assert!(xx.is_zero());
    }

    #[test]
    fn add_mul_axioms_spotchecks() {
        let f = q();
        let a = WittClass::from_form(&DiagonalForm::from_ints(&f, &[1, 2]).unwrap()).unwrap();
        let b = WittClass::from_form(&DiagonalForm::from_ints(&f, &[3, -5]).unwrap()).unwrap();
        let c = WittClass::from_form(&DiagonalForm::from_ints(&f, &[-1, 7, 2]).unwrap()).unwrap();
        assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert_eq!(left, right);
        assert!(a.sub(&a).unwrap().is_zero());
        let one = WittClass::one(&f).unwrap();
        assert_eq!(one.mul(&c).unwrap(), c);
    }

    #[test]
    fn w_q3_has_sixteen_elements_and_one_has_order_four() {
        let table = WittRingTable::build(&qp(3)).unwrap();
        assert_eq!(table.len(), 16);
        let one = table.one_index().unwrap();
        assert_eq!(table.additive_order(one), 4);
        assert_eq!(table.unit_indices().unwrap().len(), 8);
    }

    #[test]
    fn w_q5_and_q7_sixteen() {
        for p in [5u64, 7] {
            let table = WittRingTable::build(&qp(p)).unwrap();
            assert_eq!(table.len(), 16, "p = {}", p);
            assert_eq!(table.unit_indices().unwrap().len(), 8, "p = {}", p);
        }
    }

    #[test]
    fn w_f5_four_elements() {
        let f5 = FieldDescriptor::FiniteField(FqDescriptor::prime(5));
        let table = WittRingTable::build(&f5).unwrap();
        assert_eq!(table.len(), 4);
        let sq = FieldDescriptor::SquareClosed;
        let t2 = WittRingTable::build(&sq).unwrap();
        assert_eq!(t2.len(), 2);
    }

    #[test]
    fn ring_axioms_exhaustive_w_q3() {
        let t = WittRingTable::build(&qp(3)).unwrap();
        let n = t.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(t.add[i][j], t.add[j][i]);
                assert_eq!(t.mul[i][j], t.mul[j][i]);
                for k in 0..n {
                    let a1 = t.add[t.add[i][j] as usize][k];
                    let a2 = t.add[i][t.add[j][k] as usize];
                    assert_eq!(a1, a2);
                    let m1 = t.mul[t.mul[i][j] as usize][k];
                    let m2 = t.mul[i][t.mul[j][k] as usize];
                    assert_eq!(m1, m2);
                    let d1 = t.mul[i][t.add[j][k] as usize];
                    let d2 = t.add[t.mul[i][j] as usize][t.mul[i][k] as usize];
                    assert_eq!(d1, d2);
                }
            }
        }
    }

    #[test]
    fn boxplus_basics() {
        let f = qp(3);
        let one = WittClass::one(&f).unwrap();
        let a = TorsionLevelElement::new(1, one.clone()).unwrap();
        let zero = TorsionLevelElement::zero(&f, 1);
        assert_eq!(boxplus(&zero, &a).unwrap(), a);
        // 1 [+]_1 1 = 1 + 1 - 2*1 = 0 in W(Q_3)_tor^(1).
        let s = boxplus(&a, &a).unwrap();
        assert!(s.is_zero());
        let inv = boxplus_inverse(&a).unwrap();
        assert_eq!(inv, a);
    }

    #[test]
    fn boxplus_inverse_square_zero() {
        // x = class of <1,1,-3,-3> over Q has x^2 = 0, so the inverse at any
        // level is -x (series truncates at i = 1).
        let x = WittClass::from_form(&DiagonalForm::from_ints(&q(), &[1, 1, -3, -3]).unwrap())
            .unwrap();
        assert!(x.mul(&x).unwrap().is_zero());
        for level in [1u32, 2, 3] {
            let a = TorsionLevelElement::new(level, x.clone()).unwrap();
            let inv = boxplus_inverse(&a).unwrap();
            assert_eq!(inv.value, x.neg().unwrap());
            assert!(boxplus(&a, &inv).unwrap().is_zero());
            // a [+]_1 a = 2a - 2a^2 = 2a = 0 for 2-torsion with square zero.
            if level == 1 {
                assert!(boxplus(&a, &a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn boxplus_group_axioms_over_q3() {
        let t = WittRingTable::build(&qp(3)).unwrap();
        for level in [1u32, 2, 3] {
            let elems: Vec<TorsionLevelElement> = t
                .elems
                .iter()
                .map(|x| TorsionLevelElement::new(level, x.clone()).unwrap())
                .collect();
            for a in &elems {
                let inv = boxplus_inverse(a).unwrap();
                assert!(boxplus(a, &inv).unwrap().is_zero());
                for b in &elems {
                    let ab = boxplus(a, b).unwrap();
                    assert_eq!(ab, boxplus(b, a).unwrap());
                    for c in &elems {
                        let l = boxplus(&ab, c).unwrap();
                        let r = boxplus(a, &boxplus(b, c).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn gw_examples() {
        let f = q();
        let h = DiagonalForm::hyperbolic(&f);
        let hh = GwClass::from_form(&h.tensor(&h).unwrap()).unwrap();
        assert!(hh.witt.is_zero());
        assert_eq!(hh.rank, 4);
        let u = GwClass::from_form(&DiagonalForm::from_ints(&f, &[5]).unwrap()).unwrap();
        let uu = u.mul(&u).unwrap();
        assert_eq!(uu, GwClass::one(&f).unwrap());
        // Rank consistency is enforced.
        assert!(GwClass::new(WittClass::one(&f).unwrap(), 2).is_err());
    }

    #[test]
    fn nilpotent_iff_power_vanishes_over_q3() {
        let t = WittRingTable::build(&qp(3)).unwrap();
        for x in &t.elems {
            let nil = x.is_nilpotent().unwrap();
            let mut pow = x.clone();
            let mut vanishes = x.is_zero();
            for _ in 0..16 {
                pow = pow.mul(x).unwrap();
                if pow.is_zero() {
                    vanishes = true;
                    break;
                }
            }
            assert_eq!(nil, vanishes, "element {:?}", x.rep.render());
        }
    }
}
