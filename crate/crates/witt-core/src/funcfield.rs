//! Form-level Witt arithmetic over rational function fields k(T).
//!
//! Classes over k(T) have no canonical anisotropic representative in this
//! library, so they are carried as diagonal forms; torsion, nilpotence, and
//! unit tests work directly on a representing form. Class equality lives in
//! the residue module, where Milnor's sequence provides the decision
//! procedure.

use alloc::borrow::ToOwned;
use alloc::vec;
use alloc::vec::Vec;

use crate::elem::{self, Factored, FieldElement};
use crate::error::WittError;
use crate::field::{BaseCtx, FieldDescriptor};
use crate::forms::{self, DiagonalForm};
use crate::poly::Poly;
use crate::witt::WittClass;
use crate::Result;

/// The function field k(T) over a base field.
pub fn function_field(base: &FieldDescriptor) -> FieldDescriptor {
    FieldDescriptor::FunctionField(alloc::boxed::Box::new(base.clone()))
}

/// The base field of a function field.
pub fn base_of(field: &FieldDescriptor) -> Result<&FieldDescriptor> {
    match field {
        FieldDescriptor::FunctionField(base) => Ok(base),
        _ => Err(WittError::UnsupportedField("expected a function field".to_owned())),
    }
}

/// The element T.
pub fn t_element(base: &FieldDescriptor) -> Result<FieldElement> {
    let ctx = BaseCtx::for_field(base)?;
    Ok(poly_element(&Poly::t(&ctx)))
}

/// The element given by a monic polynomial factor.
pub fn poly_element(pi: &Poly) -> FieldElement {
    if pi.is_constant() {
        let c = if pi.is_zero() {
            crate::field::BaseElem::from_int(0)
        } else {
            pi.0[0].clone()
        };
        return FieldElement::Base(c);
    }
    FieldElement::Func(Factored::new(crate::field::BaseElem::from_int(1), vec![(pi.clone(), 1)]))
}

/// The form 1 + (<pi> - 1) b, represented as <1> (+) pi*b (+) (-b).
pub fn one_plus_uniformizer_twist(
    field: &FieldDescriptor,
    pi: &FieldElement,
    b: &DiagonalForm,
) -> Result<DiagonalForm> {
    let one = DiagonalForm::from_ints(field, &[1])?;
    if b.dim() == 0 {
        return Ok(one);
    }
    let lifted = lift_form(field, b)?;
    one.direct_sum(&lifted.scale(pi)?)?.direct_sum(&lifted.neg()?)
}

/// Lift a form over the base field to constants of k(T).
pub fn lift_form(field: &FieldDescriptor, b: &DiagonalForm) -> Result<DiagonalForm> {
    let base = base_of(field)?;
    if &b.field != base {
        return Err(WittError::FieldMismatch);
    }
    let entries: Vec<FieldElement> = b.entries.clone();
    DiagonalForm::new(field.clone(), entries)
}

/// Is the class of the form torsion in W(k(T))?
///
/// Real base: the signature function must vanish identically. Nonreal base:
/// the whole Witt ring is torsion.
pub fn is_torsion_form(q: &DiagonalForm) -> Result<bool> {
    let base = base_of(&q.field)?;
    if base.is_real() {
        Ok(forms::signature_function(q)?.is_identically_zero())
    } else {
        Ok(true)
    }
}

/// Is the class of the form nilpotent (even-dimensional and torsion)?
pub fn is_nilpotent_form(q: &DiagonalForm) -> Result<bool> {
    Ok(q.dim() % 2 == 0 && is_torsion_form(q)?)
}

/// Is the class of the form a unit of W(k(T))? Tests q*q - 1 nilpotent.
pub fn is_unit_form(q: &DiagonalForm) -> Result<bool> {
    let sq = q.tensor(q)?;
    let minus_one = DiagonalForm::from_ints(&q.field, &[-1])?;
    is_nilpotent_form(&sq.direct_sum(&minus_one)?)
}

/// Remove hyperbolic pairs <a>, <-a> (up to squares) from a diagonal form.
/// The result represents the same Witt class with possibly smaller dimension.
pub fn simplify(q: &DiagonalForm) -> Result<DiagonalForm> {
    let mut entries: Vec<FieldElement> = q.entries.clone();
    loop {
        let mut cancelled = None;
        'outer: for i in 0..entries.len() {
            for j in (i + 1)..entries.len() {
                let prod = elem::mul_elements(&q.field, &entries[i], &entries[j])?;
                let neg = elem::neg_element(&q.field, &prod)?;
                if elem::is_square(&q.field, &neg)? {
                    cancelled = Some((i, j));
                    break 'outer;
                }
            }
        }
        match cancelled {
            Some((i, j)) => {
                entries.remove(j);
                entries.remove(i);
            }
            None => break,
        }
    }
    DiagonalForm::new(q.field.clone(), entries)
}

/// The class of a base-field form, for fields with canonical decomposition.
pub fn base_class(q: &DiagonalForm) -> Result<WittClass> {
    WittClass::from_form(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt() -> FieldDescriptor {
        function_field(&FieldDescriptor::Rationals)
    }

    fn rt() -> FieldDescriptor {
        function_field(&FieldDescriptor::RealClosed)
    }

    #[test]
    fn t_twist_is_unit() {
        // 1 + (<T>-1)<u> is a unit over Q(T).
        let f = qt();
        let t = t_element(&FieldDescriptor::Rationals).unwrap();
        let b = DiagonalForm::from_ints(&FieldDescriptor::Rationals, &[3]).unwrap();
        let x = one_plus_uniformizer_twist(&f, &t, &b).unwrap();
        assert_eq!(x.dim(), 3);
        assert!(is_unit_form(&x).unwrap());
        // <1,1> is not a unit.
        let two = DiagonalForm::from_ints(&f, &[1, 1]).unwrap();
        assert!(!is_unit_form(&two).unwrap());
    }

    #[test]
    fn torsion_over_real_base_needs_zero_signature_function() {
        let f = rt();
        let t = t_element(&FieldDescriptor::RealClosed).unwrap();
        // <T, -T> is torsion (it is zero); <1, T> is not.
        let tt = DiagonalForm::new(
            f.clone(),
            vec![t.clone(), elem::neg_element(&f, &t).unwrap()],
        )
        .unwrap();
        assert!(is_torsion_form(&tt).unwrap());
        let one_t = DiagonalForm::new(
            f.clone(),
            vec![FieldElement::from_int(1), t.clone()],
        )
        .unwrap();
        assert!(!is_torsion_form(&one_t).unwrap());
        // Over Q_3(T) everything is torsion.
        let q3t = function_field(&FieldDescriptor::PadicField(3));
        let t3 = t_element(&FieldDescriptor::PadicField(3)).unwrap();
        let x = DiagonalForm::new(q3t, vec![FieldElement::from_int(1), t3]).unwrap();
        assert!(is_torsion_form(&x).unwrap());
    }

    #[test]
    fn simplify_cancels_hyperbolic_pairs() {
        let f = qt();
        let t = t_element(&FieldDescriptor::Rationals).unwrap();
        // <T, -4T, 5> simplifies to <5>.
        let entries = vec![
            t.clone(),
            elem::mul_elements(&f, &t, &FieldElement::from_int(-4)).unwrap(),
            FieldElement::from_int(5),
        ];
        let q = DiagonalForm::new(f.clone(), entries).unwrap();
        let s = simplify(&q).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.entries[0], FieldElement::from_int(5));
        // <T, T> survives: -T*T = -T^2 is not a square over Q(T).
        let tt = DiagonalForm::new(f.clone(), vec![t.clone(), t.clone()]).unwrap();
        assert_eq!(simplify(&tt).unwrap().dim(), 2);
    }
}
