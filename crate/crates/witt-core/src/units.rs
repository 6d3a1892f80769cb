//! Unit groups of Witt and Grothendieck-Witt rings: membership, the
//! decomposition +-<u>(1+x) with x nilpotent, the pushout-square structure
//! of W(F)^x for finite Witt rings, and the quotient NQ(F) of units by
//! square classes.

use alloc::borrow::ToOwned;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::elem::{self, SquareClass};
use crate::error::WittError;
use crate::field::FieldDescriptor;
use crate::witt::{GwClass, WittClass, WittRingTable};
use crate::Result;

/// The normal form of a Witt-ring unit: sign * <u> * (1 + nilpotent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitDecomposition {
    pub sign: i8,
    pub square_class: SquareClass,
    pub nilpotent_part: WittClass,
}

/// Is x a unit of W(F)? Decision procedure: x^2 - 1 nilpotent.
pub fn is_unit(x: &WittClass) -> Result<bool> {
    let sq = x.mul(x)?;
    let m = sq.sub(&WittClass::one(&x.field)?)?;
    m.is_nilpotent()
}

/// Is x a unit of GW(F)? Additionally requires rank +-1.
pub fn is_unit_gw(x: &GwClass) -> Result<bool> {
    if x.rank != 1 && x.rank != -1 {
        return Ok(false);
    }
    is_unit(&x.witt)
}

/// Inverse of a Witt-ring unit, via the geometric series on x^2 - 1.
pub fn unit_inverse(x: &WittClass) -> Result<WittClass> {
    if !is_unit(x)? {
        return Err(WittError::NotAUnit);
    }
    // x * x = 1 + n with n nilpotent, so x^{-1} = x * sum_i (-n)^i.
    let n = x.mul(x)?.sub(&WittClass::one(&x.field)?)?;
    let mut series = WittClass::one(&x.field)?;
    let mut power = n.neg()?;
    let mut iterations = 0;
    while !power.is_zero() {
        series = series.add(&power)?;
        power = power.mul(&n.neg()?)?;
        iterations += 1;
        if iterations > 64 {
            return Err(WittError::InternalGuard(
                "geometric series did not terminate".to_owned(),
            ));
        }
    }
    let inv = x.mul(&series)?;
    debug_assert!(inv.mul(x).unwrap() == WittClass::one(&x.field).unwrap());
    Ok(inv)
}

/// Inverse of a GW unit.
pub fn unit_inverse_gw(x: &GwClass) -> Result<GwClass> {
    if !is_unit_gw(x)? {
        return Err(WittError::NotAUnit);
    }
    GwClass::new(unit_inverse(&x.witt)?, x.rank)
}

/// Decompose a unit as sign * <u> * (1 + nilpotent).
pub fn unit_decompose(x: &WittClass) -> Result<UnitDecomposition> {
    if !is_unit(x)? {
        return Err(WittError::NotAUnit);
    }
    let field = &x.field;
    match field {
        FieldDescriptor::Rationals | FieldDescriptor::RealClosed => {
            let sig = x.rep.signature()?;
            debug_assert!(sig == 1 || sig == -1);
            let sign: i8 = if sig >= 0 { 1 } else { -1 };
            let y = if sign == 1 { x.clone() } else { x.neg()? };
            // Any positive u keeps sign * <u> * x in 1 + Nil; take the
            // squarefree determinant of the representative, made positive.
            let det = y.rep.det_element()?;
            let u = if det.as_base()?.as_rat()?.is_positive() {
                det
            } else {
                elem::neg_element(field, &det)?
            };
            let square_class = elem::canonical_square_class(field, &u)?;
            let uy = y.mul(&WittClass::of_element(field, &square_class.representative)?)?;
            let nilpotent_part = uy.sub(&WittClass::one(field)?)?;
            if !nilpotent_part.is_nilpotent()? {
                return Err(WittError::InternalGuard(
                    "decomposition residue is not nilpotent".to_owned(),
                ));
            }
            Ok(UnitDecomposition { sign, square_class, nilpotent_part })
        }
        _ => {
            // Nonreal fields: prefer sign +1 and search the finite square
            // class list.
            let classes = elem::square_classes(field)?.ok_or_else(|| {
                WittError::UnsupportedField(
                    "unit decomposition needs finite square classes or an ordering".to_owned(),
                )
            })?;
            for sign in [1i8, -1] {
                for c in &classes {
                    let signed = if sign == 1 { x.clone() } else { x.neg()? };
                    let u = WittClass::of_element(field, &c.representative)?;
                    let candidate = signed.mul(&u)?.sub(&WittClass::one(field)?)?;
                    if candidate.is_nilpotent()? {
                        return Ok(UnitDecomposition {
                            sign,
                            square_class: c.clone(),
                            nilpotent_part: candidate,
                        });
                    }
                }
            }
            Err(WittError::InternalGuard("no decomposition found for unit".to_owned()))
        }
    }
}

/// Recompose a decomposition; inverse of unit_decompose.
pub fn recompose(field: &FieldDescriptor, d: &UnitDecomposition) -> Result<WittClass> {
    let u = WittClass::of_element(field, &d.square_class.representative)?;
    let one = WittClass::one(field)?;
    let base = u.mul(&one.add(&d.nilpotent_part)?)?;
    if d.sign == 1 {
        Ok(base)
    } else {
        base.neg()
    }
}

/// If the unit equals a single square class <u>, return it.
///
/// Canonical representatives make this a dimension check: <u> has a
/// one-dimensional anisotropic representative.
pub fn represented_by_square_class(x: &WittClass) -> Result<Option<SquareClass>> {
    if !is_unit(x)? {
        return Err(WittError::NotAUnit);
    }
    if x.rep.dim() != 1 {
        return Ok(None);
    }
    Ok(Some(elem::canonical_square_class(&x.field, &x.rep.entries[0])?))
}

/// A coset of the unit group by square-class units.
#[derive(Debug, Clone)]
pub struct NQClass {
    pub field: FieldDescriptor,
    pub coset_rep: WittClass,
}

/// The class of a unit in NQ(F) = W(F)^x modulo square classes.
pub fn nq_class(x: &WittClass) -> Result<NQClass> {
    if !is_unit(x)? {
        return Err(WittError::NotAUnit);
    }
    Ok(NQClass { field: x.field.clone(), coset_rep: x.clone() })
}

/// Equality in NQ(F): x y^{-1} is a square class.
pub fn nq_eq(a: &NQClass, b: &NQClass) -> Result<bool> {
    if a.field != b.field {
        return Err(WittError::FieldMismatch);
    }
    let q = a.coset_rep.mul(&unit_inverse(&b.coset_rep)?)?;
    Ok(represented_by_square_class(&q)?.is_some())
}

/// Report of the pushout-square verification for a finite Witt ring.
#[derive(Debug, Clone)]
pub struct PushoutReport {
    /// |W(F)^x|.
    pub units: usize,
    /// Size of the image of the square classes in W^x.
    pub square_class_image: usize,
    /// |1 + I(F)_tor|.
    pub one_plus_itor: usize,
    /// Size of the intersection of the two subgroups.
    pub intersection: usize,
    /// Did the two subgroups generate the whole unit group?
    pub generated: bool,
    /// Order of W^x modulo the square-class image.
    pub quotient_order: usize,
    /// Amalgamation consistency: |image| * |1+I_tor| / |intersection| = |W^x|.
    pub amalgamated_count_matches: bool,
}

/// Enumerate and verify the pushout square for a field with finite W(F).
pub fn verify_pushout_square(field: &FieldDescriptor) -> Result<PushoutReport> {
    let table = WittRingTable::build(field)?;
    let unit_idx = table.unit_indices()?;
    let units: Vec<usize> = unit_idx.clone();
    let classes = elem::square_classes(field)?
        .ok_or_else(|| WittError::UnsupportedField("square classes must be finite".to_owned()))?;
    let mut sq_image: Vec<usize> = Vec::new();
    for c in &classes {
        let i = table.index_of(&WittClass::of_element(field, &c.representative)?)?;
        if !sq_image.contains(&i) {
            sq_image.push(i);
        }
    }
    let mut one_plus: Vec<usize> = Vec::new();
    for a in &table.elems {
        if a.in_fundamental_ideal() && a.is_torsion()? {
            let u = WittClass::one(field)?.add(a)?;
            let i = table.index_of(&u)?;
            if !one_plus.contains(&i) {
                one_plus.push(i);
            }
        }
    }
    for &i in one_plus.iter().chain(sq_image.iter()) {
        if !units.contains(&i) {
            return Err(WittError::InternalGuard(
                "subgroup element is not a unit".to_owned(),
            ));
        }
    }
    let intersection: Vec<usize> = sq_image
        .iter()
        .copied()
        .filter(|i| one_plus.contains(i))
        .collect();
    // Subgroup generated by the two pieces, by closure under multiplication.
    let mut gen: Vec<usize> = Vec::new();
    for &i in sq_image.iter().chain(one_plus.iter()) {
        if !gen.contains(&i) {
            gen.push(i);
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = gen.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                let c = table.mul[a][b] as usize;
                if !gen.contains(&c) {
                    gen.push(c);
                    changed = true;
                }
            }
        }
    }
    let generated = {
        let mut g = gen.clone();
        let mut u = units.clone();
        g.sort_unstable();
        u.sort_unstable();
        g == u
    };
    Ok(PushoutReport {
        units: units.len(),
        square_class_image: sq_image.len(),
        one_plus_itor: one_plus.len(),
        intersection: intersection.len(),
        generated,
        quotient_order: units.len() / sq_image.len(),
        amalgamated_count_matches: sq_image.len() * one_plus.len()
            == units.len() * intersection.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqDescriptor;
    use crate::forms::DiagonalForm;

    fn qp(p: u64) -> FieldDescriptor {
        FieldDescriptor::PadicField(p)
    }

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn quaternion_unit(field: &FieldDescriptor) -> WittClass {
        // 1 + f with f = <1,-a,-b,ab> for (a,b) = (-1,3), (a,b)_3 = -1.
        let f = DiagonalForm::from_ints(field, &[1, 1, 1, -3, -3]).unwrap();
        WittClass::from_form(&f).unwrap()
    }

    #[test]
    fn square_class_is_unit() {
        let u = WittClass::from_form(&DiagonalForm::from_ints(&q(), &[5]).unwrap()).unwrap();
        assert!(is_unit(&u).unwrap());
        assert_eq!(unit_inverse(&u).unwrap(), u);
        let two = WittClass::from_form(&DiagonalForm::from_ints(&q(), &[1, 1]).unwrap()).unwrap();
        assert!(!is_unit(&two).unwrap());
    }

    #[test]
    fn quaternion_is_unit_not_square_class() {
        let x = quaternion_unit(&qp(3));
        assert!(is_unit(&x).unwrap());
        assert!(represented_by_square_class(&x).unwrap().is_none());
        let inv = unit_inverse(&x).unwrap();
        assert_eq!(x.mul(&inv).unwrap(), WittClass::one(&qp(3)).unwrap());
        let d = unit_decompose(&x).unwrap();
        assert_eq!(d.sign, 1);
        assert!(d.nilpotent_part.is_nilpotent().unwrap());
        assert_eq!(recompose(&qp(3), &d).unwrap(), x);
        // The same class over Q.
        let xq = quaternion_unit(&q());
        assert!(is_unit(&xq).unwrap());
        assert!(represented_by_square_class(&xq).unwrap().is_none());
    }

    #[test]
    fn decompose_examples() {
        // <u> -> (+1, u, 0).
        let u = WittClass::from_form(&DiagonalForm::from_ints(&q(), &[3]).unwrap()).unwrap();
        let d = unit_decompose(&u).unwrap();
        assert_eq!(d.sign, 1);
        assert_eq!(d.square_class.representative, crate::elem::FieldElement::from_int(3));
        assert!(d.nilpotent_part.is_zero());
        // -1 = <-1> over Q -> (-1, 1, 0).
        let m = WittClass::from_form(&DiagonalForm::from_ints(&q(), &[-1]).unwrap()).unwrap();
        let d = unit_decompose(&m).unwrap();
        assert_eq!(d.sign, -1);
        assert_eq!(d.square_class.representative, crate::elem::FieldElement::from_int(1));
        assert!(d.nilpotent_part.is_zero());
        // Over RealClosed, -1 is represented by the square class <-1>.
        let r = FieldDescriptor::RealClosed;
        let mr = WittClass::from_form(&DiagonalForm::from_ints(&r, &[-1]).unwrap()).unwrap();
        let rep = represented_by_square_class(&mr).unwrap().unwrap();
        assert_eq!(rep.representative, crate::elem::FieldElement::from_int(-1));
    }

    #[test]
    fn all_units_decompose_over_finite_rings() {
        for field in [qp(3), qp(5), FieldDescriptor::FiniteField(FqDescriptor::prime(5))] {
            let table = WittRingTable::build(&field).unwrap();
            for i in table.unit_indices().unwrap() {
                let x = &table.elems[i];
                let d = unit_decompose(x).unwrap();
                assert_eq!(&recompose(&field, &d).unwrap(), x);
                let inv = unit_inverse(x).unwrap();
                assert_eq!(x.mul(&inv).unwrap(), WittClass::one(&field).unwrap());
            }
        }
    }

    #[test]
    fn unit_set_closed() {
        let table = WittRingTable::build(&qp(3)).unwrap();
        let units = table.unit_indices().unwrap();
        for &i in &units {
            for &j in &units {
                assert!(units.contains(&(table.mul[i][j] as usize)));
            }
            let inv = unit_inverse(&table.elems[i]).unwrap();
            assert!(units.contains(&table.index_of(&inv).unwrap()));
        }
    }

    #[test]
    fn pushout_reports() {
        let r = verify_pushout_square(&qp(3)).unwrap();
        assert_eq!(r.units, 8);
        assert_eq!(r.square_class_image, 4);
        // W(Q_3) is finite, so all of I is torsion and 1 + I_tor is the
        // whole unit group; the square classes sit inside it.
        assert_eq!(r.one_plus_itor, 8);
        assert_eq!(r.intersection, 4);
        assert!(r.generated);
        assert_eq!(r.quotient_order, 2);
        assert!(r.amalgamated_count_matches);
        let r7 = verify_pushout_square(&qp(7)).unwrap();
        assert_eq!(r7.units, 8);
        assert_eq!(r7.quotient_order, 2);
        let rf5 = verify_pushout_square(&FieldDescriptor::FiniteField(FqDescriptor::prime(5)))
            .unwrap();
        assert!(rf5.generated);
    }

    #[test]
    fn nq_examples() {
        let f = qp(3);
        let one = WittClass::one(&f).unwrap();
        let u = WittClass::from_form(&DiagonalForm::from_ints(&f, &[2]).unwrap()).unwrap();
        assert!(nq_eq(&nq_class(&u).unwrap(), &nq_class(&one).unwrap()).unwrap());
        let x = quaternion_unit(&f);
        assert!(!nq_eq(&nq_class(&x).unwrap(), &nq_class(&one).unwrap()).unwrap());
        // |NQ(Q_3)| = 2: units fall into exactly two cosets.
        let table = WittRingTable::build(&f).unwrap();
        let mut cosets: Vec<NQClass> = Vec::new();
        for i in table.unit_indices().unwrap() {
            let c = nq_class(&table.elems[i]).unwrap();
            if !cosets.iter().any(|d| nq_eq(&c, d).unwrap()) {
                cosets.push(c);
            }
        }
        assert_eq!(cosets.len(), 2);
    }

    #[test]
    fn gw_unit_kernel_is_plus_minus_one() {
        // The kernel of GW(Q_3)^x -> W(Q_3)^x consists of the two rank
        // +-1 classes over the identity Witt unit.
        let f = qp(3);
        let table = WittRingTable::build(&f).unwrap();
        let one_w = WittClass::one(&f).unwrap();
        let mut kernel = 0;
        let mut surjective_targets = 0;
        for i in table.unit_indices().unwrap() {
            let w = table.elems[i].clone();
            let mut hit = false;
            for rank in [-1i64, 1] {
                if (w.dim() as i64 - rank).rem_euclid(2) != 0 {
                    continue;
                }
                let gw = GwClass::new(w.clone(), rank).unwrap();
                if is_unit_gw(&gw).unwrap() {
                    hit = true;
                    if w == one_w {
                        kernel += 1;
                    }
                }
            }
            if hit {
                surjective_targets += 1;
            }
        }
        assert_eq!(kernel, 2);
        assert_eq!(surjective_targets, 8);
    }

    fn random_unit_over_q(rng: &mut impl rand::Rng) -> WittClass {
        // sign * <u> * (1 + x) with x a random signature-zero even class.
        let pool = [1i64, 2, 3, 5, 6, 7, 10];
        let u = pool[rng.gen_range(0..pool.len())];
        let mut entries = vec![u];
        for _ in 0..rng.gen_range(0..3usize) {
            let a = pool[rng.gen_range(0..pool.len())];
            let b = pool[rng.gen_range(0..pool.len())];
            entries.push(a);
            entries.push(-b);
        }
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        for e in entries.iter_mut() {
            *e *= sign;
        }
        WittClass::from_form(&DiagonalForm::from_ints(&q(), &entries).unwrap()).unwrap()
    }

    #[test]
    fn random_units_over_q() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x57C1);
        let one = WittClass::one(&q()).unwrap();
        for _ in 0..200 {
            let x = random_unit_over_q(&mut rng);
            let y = random_unit_over_q(&mut rng);
            assert!(is_unit(&x).unwrap());
            assert!(is_unit(&x.mul(&y).unwrap()).unwrap());
            let inv = unit_inverse(&x).unwrap();
            assert!(is_unit(&inv).unwrap());
            assert_eq!(x.mul(&inv).unwrap(), one);
            let d = unit_decompose(&x).unwrap();
            assert_eq!(recompose(&q(), &d).unwrap(), x);
        }
    }

    #[test]
    fn square_classes_in_one_plus_nil_are_sums_of_squares() {
        // Exhaustive over Q_3 and Q_5; the square classes landing in 1 + Nil
        // are exactly those whose representative is a sum of squares (all of
        // them, in these nonreal fields). Over Q the sums of squares are the
        // positive rationals.
        for p in [3u64, 5] {
            let f = qp(p);
            let one = WittClass::one(&f).unwrap();
            for c in elem::square_classes(&f).unwrap().unwrap() {
                let u = WittClass::of_element(&f, &c.representative).unwrap();
                let in_one_plus_nil = u.sub(&one).unwrap().is_nilpotent().unwrap();
                let sos = elem::is_sum_of_squares(&f, &c.representative).unwrap();
                assert_eq!(in_one_plus_nil, sos);
            }
        }
        let f = q();
        let one = WittClass::one(&f).unwrap();
        for (val, expect) in [(2i64, true), (3, true), (-1, false), (-3, false)] {
            let u =
                WittClass::from_form(&DiagonalForm::from_ints(&f, &[val]).unwrap()).unwrap();
            let in_nil = u.sub(&one).unwrap().is_nilpotent().unwrap();
            assert_eq!(in_nil, expect, "u = {}", val);
        }
    }
}
