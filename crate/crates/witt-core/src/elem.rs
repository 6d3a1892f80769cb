//! Field elements over the supported fields, square and sum-of-squares
//! tests, and canonical square classes.
//!
//! Function-field elements are kept in factored form `c * prod pi_i^{e_i}`
//! with distinct monic irreducible factors; the library never factors
//! polynomials supplied by callers (irreducibility is verified in degree
//! <= 3 and accepted as asserted above that).

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::WittError;
use crate::field::{BaseCtx, BaseElem, FieldDescriptor};
use crate::intarith;
use crate::poly::{irreducibility, Irreducibility, Poly, SturmChain};
use crate::{Int, Rat, Result};

/// A nonzero element of a rational function field, in factored form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factored {
    /// Nonzero constant from the base field.
    pub constant: BaseElem,
    /// Distinct monic polynomials with nonzero integer exponents, sorted.
    pub factors: Vec<(Poly, i64)>,
}

impl Factored {
    pub fn constant_elem(c: BaseElem) -> Factored {
        Factored { constant: c, factors: Vec::new() }
    }

    pub fn new(constant: BaseElem, mut factors: Vec<(Poly, i64)>) -> Factored {
        factors.retain(|&(_, e)| e != 0);
        factors.retain(|(p, _)| !p.is_constant());
        factors.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));
        let mut merged: Vec<(Poly, i64)> = Vec::new();
        for (p, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 += e,
                _ => merged.push((p, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        Factored { constant, factors: merged }
    }

    /// Check invariants over the given function field; returns flags for
    /// factors whose irreducibility could not be decided.
    pub fn validate(&self, field: &FieldDescriptor) -> Result<Vec<Poly>> {
        let base = field.base();
        let ctx = BaseCtx::for_field(base)?;
        if self.constant.is_zero() {
            return Err(WittError::ZeroInput);
        }
        let mut unchecked = Vec::new();
        for (p, e) in &self.factors {
            if *e == 0 || p.is_constant() {
                return Err(WittError::Domain("factored element not normalized".to_owned()));
            }
            if !p.is_monic(&ctx) {
                return Err(WittError::Domain(format!(
                    "factor {} is not monic",
                    p.render()
                )));
            }
            match irreducibility(field, p)? {
                Irreducibility::Irreducible => {}
                Irreducibility::Reducible => {
                    return Err(WittError::Domain(format!(
                        "factor {} is reducible",
                        p.render()
                    )))
                }
                Irreducibility::Unknown => unchecked.push(p.clone()),
            }
        }
        Ok(unchecked)
    }

    pub fn mul(&self, ctx: &BaseCtx, other: &Factored) -> Result<Factored> {
        let c = ctx.mul(&self.constant, &other.constant)?;
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(Factored::new(c, factors))
    }

    pub fn inv(&self, ctx: &BaseCtx) -> Result<Factored> {
        let c = ctx.inv(&self.constant)?;
        let factors = self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect();
        Ok(Factored::new(c, factors))
    }

    pub fn neg(&self, ctx: &BaseCtx) -> Factored {
        Factored { constant: ctx.neg(&self.constant), factors: self.factors.clone() }
    }

    /// Exponent of a monic polynomial in this element.
    pub fn exponent_of(&self, pi: &Poly) -> i64 {
        self.factors
            .iter()
            .find(|(p, _)| p == pi)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Total degree (numerator minus denominator); the valuation at infinity
    /// is its negative.
    pub fn total_degree(&self) -> i64 {
        self.factors.iter().map(|&(ref p, e)| p.degree() as i64 * e).sum()
    }

    /// Evaluate at a base point; errors if the point is a zero or pole.
    pub fn eval(&self, ctx: &BaseCtx, x: &BaseElem) -> Result<BaseElem> {
        let mut acc = self.constant.clone();
        for (p, e) in &self.factors {
            let v = p.eval(ctx, x)?;
            if v.is_zero() {
                return Err(WittError::Domain(
                    "evaluation at a zero or pole of the element".to_owned(),
                ));
            }
            let f = if *e >= 0 { v.clone() } else { ctx.inv(&v)? };
            for _ in 0..e.unsigned_abs() {
                acc = ctx.mul(&acc, &f)?;
            }
        }
        Ok(acc)
    }

    pub fn render(&self) -> String {
        let cs = match &self.constant {
            BaseElem::Rat(x) => format!("{}", x),
            BaseElem::Fq(v) => format!("{:?}", v),
        };
        if self.factors.is_empty() {
            return cs;
        }
        let mut parts = vec![cs];
        for (p, e) in &self.factors {
            if *e == 1 {
                parts.push(format!("({})", p.render()));
            } else {
                parts.push(format!("({})^{}", p.render(), e));
            }
        }
        parts.join(" * ")
    }
}

/// An element of any supported field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldElement {
    Base(BaseElem),
    Func(Factored),
}

impl FieldElement {
    pub fn from_int(n: i64) -> FieldElement {
        FieldElement::Base(BaseElem::from_int(n))
    }

    pub fn from_rat(x: Rat) -> FieldElement {
        FieldElement::Base(BaseElem::Rat(x))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Base(b) => b.is_zero(),
            FieldElement::Func(f) => f.constant.is_zero(),
        }
    }

    pub fn as_base(&self) -> Result<&BaseElem> {
        match self {
            FieldElement::Base(b) => Ok(b),
            FieldElement::Func(_) => Err(WittError::Domain(
                "expected a base-field element".to_owned(),
            )),
        }
    }

    /// View as a factored function-field element (constants coerce).
    pub fn to_factored(&self) -> Factored {
        match self {
            FieldElement::Base(b) => Factored::constant_elem(b.clone()),
            FieldElement::Func(f) => f.clone(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            FieldElement::Base(BaseElem::Rat(x)) => format!("{}", x),
            FieldElement::Base(BaseElem::Fq(v)) => format!("{:?}", v),
            FieldElement::Func(f) => f.render(),
        }
    }
}

/// A square class of a supported field, with canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SquareClass {
    pub field: FieldDescriptor,
    pub representative: FieldElement,
}

/// Is `a` a square in F?
pub fn is_square(field: &FieldDescriptor, a: &FieldElement) -> Result<bool> {
    if a.is_zero() {
        return Err(WittError::ZeroInput);
    }
    match field {
        FieldDescriptor::Rationals => intarith::is_square_rat(a.as_base()?.as_rat()?),
        FieldDescriptor::RealClosed => Ok(a.as_base()?.as_rat()?.is_positive()),
        FieldDescriptor::SquareClosed => Ok(true),
        FieldDescriptor::PadicField(p) => intarith::is_square_padic(a.as_base()?.as_rat()?, *p),
        FieldDescriptor::FiniteField(fq) => {
            let ctx = crate::field::FqCtx::new(fq.clone());
            match a.as_base()? {
                BaseElem::Fq(v) => ctx.is_square(v),
                BaseElem::Rat(x) => {
                    let v = ctx.from_rat(x)?;
                    ctx.is_square(&v)
                }
            }
        }
        FieldDescriptor::FunctionField(base) => {
            let f = a.to_factored();
            if f.factors.iter().any(|&(_, e)| e.rem_euclid(2) == 1) {
                return Ok(false);
            }
            is_square(base, &FieldElement::Base(f.constant))
        }
    }
}

/// Do `a` and `b` generate the same square class of F?
pub fn same_square_class(field: &FieldDescriptor, a: &FieldElement, b: &FieldElement) -> Result<bool> {
    let q = div_elements(field, a, b)?;
    is_square(field, &q)
}

/// Coerce a base element into the coefficient representation of the base
/// context (small rationals reduce into finite fields).
pub fn coerce_base(ctx: &BaseCtx, b: &BaseElem) -> Result<BaseElem> {
    match (ctx, b) {
        (BaseCtx::Fq(fq), BaseElem::Rat(x)) => Ok(BaseElem::Fq(fq.from_rat(x)?)),
        _ => Ok(b.clone()),
    }
}

fn coerce_factored(ctx: &BaseCtx, f: &Factored) -> Result<Factored> {
    Ok(Factored { constant: coerce_base(ctx, &f.constant)?, factors: f.factors.clone() })
}

/// Multiply two field elements.
pub fn mul_elements(field: &FieldDescriptor, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    match field {
        FieldDescriptor::FunctionField(base) => {
            let ctx = BaseCtx::for_field(base)?;
            let fa = coerce_factored(&ctx, &a.to_factored())?;
            let fb = coerce_factored(&ctx, &b.to_factored())?;
            Ok(FieldElement::Func(fa.mul(&ctx, &fb)?))
        }
        _ => {
            let ctx = BaseCtx::for_field(field)?;
            let ba = coerce_base(&ctx, a.as_base()?)?;
            let bb = coerce_base(&ctx, b.as_base()?)?;
            Ok(FieldElement::Base(ctx.mul(&ba, &bb)?))
        }
    }
}

/// Divide two field elements.
pub fn div_elements(field: &FieldDescriptor, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    match field {
        FieldDescriptor::FunctionField(base) => {
            let ctx = BaseCtx::for_field(base)?;
            let fa = coerce_factored(&ctx, &a.to_factored())?;
            let fb = coerce_factored(&ctx, &b.to_factored())?;
            Ok(FieldElement::Func(fa.mul(&ctx, &fb.inv(&ctx)?)?))
        }
        _ => {
            let ctx = BaseCtx::for_field(field)?;
            let ba = coerce_base(&ctx, a.as_base()?)?;
            let bb = coerce_base(&ctx, b.as_base()?)?;
            Ok(FieldElement::Base(ctx.div(&ba, &bb)?))
        }
    }
}

/// Negate a field element.
pub fn neg_element(field: &FieldDescriptor, a: &FieldElement) -> Result<FieldElement> {
    match field {
        FieldDescriptor::FunctionField(base) => {
            let ctx = BaseCtx::for_field(base)?;
            let f = coerce_factored(&ctx, &a.to_factored())?;
            Ok(FieldElement::Func(f.neg(&ctx)))
        }
        _ => {
            let ctx = BaseCtx::for_field(field)?;
            let b = coerce_base(&ctx, a.as_base()?)?;
            Ok(FieldElement::Base(ctx.neg(&b)))
        }
    }
}

/// Canonical representative of the square class of `a` in F.
pub fn canonical_square_class(field: &FieldDescriptor, a: &FieldElement) -> Result<SquareClass> {
    if a.is_zero() {
        return Err(WittError::ZeroInput);
    }
    let representative = match field {
        FieldDescriptor::Rationals => {
            let sf = intarith::squarefree_part(a.as_base()?.as_rat()?)?;
            FieldElement::from_rat(Rat::from(sf))
        }
        FieldDescriptor::RealClosed => {
            FieldElement::from_int(if a.as_base()?.as_rat()?.is_positive() { 1 } else { -1 })
        }
        FieldDescriptor::SquareClosed => FieldElement::from_int(1),
        FieldDescriptor::FiniteField(fq) => {
            let ctx = crate::field::FqCtx::new(fq.clone());
            if is_square(field, a)? {
                FieldElement::Base(BaseElem::Fq(ctx.one()))
            } else {
                FieldElement::Base(BaseElem::Fq(ctx.least_nonresidue()))
            }
        }
        FieldDescriptor::PadicField(p) => {
            let x = a.as_base()?.as_rat()?;
            let (v, u) = intarith::padic_split(x, *p)?;
            let mut rep = Int::one();
            if v.rem_euclid(2) == 1 {
                rep *= Int::from(*p);
            }
            if *p == 2 {
                let m = {
                    use num_integer::Integer;
                    let eight = Int::from(8);
                    let n = u.numer().mod_floor(&eight);
                    let d = u.denom().mod_floor(&eight);
                    (n * d).mod_floor(&eight)
                };
                rep *= m;
            } else if intarith::legendre_rat(&u, *p)? == -1 {
                rep *= Int::from(intarith::least_nonresidue(*p));
            }
            FieldElement::from_rat(Rat::from(rep))
        }
        FieldDescriptor::FunctionField(base) => {
            let f = a.to_factored();
            let odd: Vec<(Poly, i64)> = f
                .factors
                .iter()
                .filter(|&&(_, e)| e.rem_euclid(2) == 1)
                .map(|(p, _)| (p.clone(), 1))
                .collect();
            let c = canonical_square_class(base, &FieldElement::Base(f.constant))?;
            let cb = c.representative.as_base()?.clone();
            if odd.is_empty() {
                FieldElement::Base(cb)
            } else {
                FieldElement::Func(Factored::new(cb, odd))
            }
        }
    };
    Ok(SquareClass { field: field.clone(), representative })
}

/// The square classes of F, or None when infinite (Q, k(T)).
pub fn square_classes(field: &FieldDescriptor) -> Result<Option<Vec<SquareClass>>> {
    let reps: Option<Vec<FieldElement>> = match field {
        FieldDescriptor::RealClosed => Some(vec![FieldElement::from_int(1), FieldElement::from_int(-1)]),
        FieldDescriptor::SquareClosed => Some(vec![FieldElement::from_int(1)]),
        FieldDescriptor::FiniteField(fq) => {
            let ctx = crate::field::FqCtx::new(fq.clone());
            Some(vec![
                FieldElement::Base(BaseElem::Fq(ctx.one())),
                FieldElement::Base(BaseElem::Fq(ctx.least_nonresidue())),
            ])
        }
        FieldDescriptor::PadicField(2) => Some(
            [1i64, 3, 5, 7, 2, 6, 10, 14]
                .iter()
                .map(|&n| FieldElement::from_int(n))
                .collect(),
        ),
        FieldDescriptor::PadicField(p) => {
            let u = intarith::least_nonresidue(*p) as i64;
            let p = *p as i64;
            Some(vec![
                FieldElement::from_int(1),
                FieldElement::from_int(u),
                FieldElement::from_int(p),
                FieldElement::from_int(p * u),
            ])
        }
        FieldDescriptor::Rationals | FieldDescriptor::FunctionField(_) => None,
    };
    Ok(reps.map(|list| {
        list.into_iter()
            .map(|representative| SquareClass { field: field.clone(), representative })
            .collect()
    }))
}

/// Descriptor of the set of orderings of F.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingSet {
    /// One archimedean ordering (Q, R).
    Archimedean,
    /// The real-point orderings of a function field over a real base,
    /// accessed through the signature function.
    RealPoints,
    /// No orderings: the field is nonreal.
    Empty,
}

/// The orderings of F.
pub fn orderings(field: &FieldDescriptor) -> OrderingSet {
    match field {
        FieldDescriptor::Rationals | FieldDescriptor::RealClosed => OrderingSet::Archimedean,
        FieldDescriptor::FunctionField(base) if base.is_real() => OrderingSet::RealPoints,
        _ => OrderingSet::Empty,
    }
}

/// Is `a` a sum of squares in F?
///
/// Nonreal fields: always. Q and R: positivity. Function fields over Q or R:
/// positive semidefiniteness on real points, decided by exact real-root
/// analysis of the odd-exponent factors.
pub fn is_sum_of_squares(field: &FieldDescriptor, a: &FieldElement) -> Result<bool> {
    if a.is_zero() {
        return Err(WittError::ZeroInput);
    }
    match field {
        FieldDescriptor::Rationals | FieldDescriptor::RealClosed => {
            Ok(a.as_base()?.as_rat()?.is_positive())
        }
        FieldDescriptor::FiniteField(_)
        | FieldDescriptor::PadicField(_)
        | FieldDescriptor::SquareClosed => Ok(true),
        FieldDescriptor::FunctionField(base) => {
            if !base.is_real() {
                return Ok(true);
            }
            let f = a.to_factored();
            // Only the odd-exponent factors and the constant's sign affect
            // signs at real points.
            let odd: Vec<&Poly> = f
                .factors
                .iter()
                .filter(|&&(_, e)| e.rem_euclid(2) == 1)
                .map(|(p, _)| p)
                .collect();
            for p in &odd {
                if SturmChain::new(p)?.count_real_roots() > 0 {
                    // A simple real zero of the squarefree odd part forces a
                    // sign change.
                    return Ok(false);
                }
            }
            // No real roots: constant sign everywhere; sample at a point.
            let ctx = BaseCtx::Rat;
            let mut sign = if f.constant.as_rat()?.is_positive() { 1i8 } else { -1 };
            for p in odd {
                let v = p.eval(&ctx, &BaseElem::from_int(0))?;
                let v = v.as_rat()?;
                debug_assert!(!v.is_zero());
                if v.is_negative() {
                    sign = -sign;
                }
            }
            Ok(sign > 0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqDescriptor;
    use alloc::boxed::Box;

    fn qp(p: u64) -> FieldDescriptor {
        FieldDescriptor::PadicField(p)
    }

    fn func(base: FieldDescriptor) -> FieldDescriptor {
        FieldDescriptor::FunctionField(Box::new(base))
    }

    fn tpoly() -> Poly {
        Poly::from_ints(&BaseCtx::Rat, &[0, 1])
    }

    #[test]
    fn square_tests() {
        assert!(!is_square(&FieldDescriptor::RealClosed, &FieldElement::from_int(-1)).unwrap());
        assert!(!is_square(&qp(3), &FieldElement::from_int(3)).unwrap());
        let f7 = FieldDescriptor::FiniteField(FqDescriptor::prime(7));
        assert!(is_square(&f7, &FieldElement::from_int(2)).unwrap());
        assert!(is_square(&FieldDescriptor::Rationals, &FieldElement::from_rat(Rat::new(Int::from(4), Int::from(9)))).unwrap());
        assert!(!is_square(&FieldDescriptor::Rationals, &FieldElement::from_int(2)).unwrap());
        // T is not a square in k(T); T^2 over Q is.
        let kt = func(FieldDescriptor::Rationals);
        let t = FieldElement::Func(Factored::new(BaseElem::from_int(1), vec![(tpoly(), 1)]));
        let t2 = FieldElement::Func(Factored::new(BaseElem::from_int(1), vec![(tpoly(), 2)]));
        assert!(!is_square(&kt, &t).unwrap());
        assert!(is_square(&kt, &t2).unwrap());
    }

    #[test]
    fn square_mul_invariance() {
        let f = FieldDescriptor::Rationals;
        for a in [-6i64, -1, 2, 5, 30] {
            for b in [2i64, 3, 7, 10] {
                let ae = FieldElement::from_int(a);
                let ab2 = FieldElement::from_int(a * b * b);
                assert_eq!(is_square(&f, &ae).unwrap(), is_square(&f, &ab2).unwrap());
                assert!(same_square_class(&f, &ae, &ab2).unwrap());
            }
        }
    }

    #[test]
    fn canonical_reps() {
        let c = canonical_square_class(&FieldDescriptor::Rationals, &FieldElement::from_int(-18)).unwrap();
        assert_eq!(c.representative, FieldElement::from_int(-2));
        let c = canonical_square_class(&qp(3), &FieldElement::from_int(45)).unwrap();
        // 45 = 3^2 * 5, and 5 is a nonresidue mod 3 -> class of u = 2.
        assert_eq!(c.representative, FieldElement::from_int(2));
        let c = canonical_square_class(&qp(2), &FieldElement::from_int(24)).unwrap();
        // 24 = 2^3 * 3: odd valuation, unit 3 mod 8.
        assert_eq!(c.representative, FieldElement::from_int(6));
    }

    #[test]
    fn square_class_lists() {
        let q3 = square_classes(&qp(3)).unwrap().unwrap();
        assert_eq!(q3.len(), 4);
        let reps: Vec<_> = q3.iter().map(|c| c.representative.clone()).collect();
        assert_eq!(
            reps,
            vec![
                FieldElement::from_int(1),
                FieldElement::from_int(2),
                FieldElement::from_int(3),
                FieldElement::from_int(6)
            ]
        );
        // Pairwise inequivalent and closed under multiplication mod squares.
        for a in &q3 {
            for b in &q3 {
                let eq = same_square_class(&qp(3), &a.representative, &b.representative).unwrap();
                assert_eq!(eq, a == b);
                let prod = mul_elements(&qp(3), &a.representative, &b.representative).unwrap();
                let canon = canonical_square_class(&qp(3), &prod).unwrap();
                assert!(q3.contains(&canon));
            }
        }
        let f5 = square_classes(&FieldDescriptor::FiniteField(FqDescriptor::prime(5)))
            .unwrap()
            .unwrap();
        assert_eq!(f5.len(), 2);
        assert!(square_classes(&FieldDescriptor::Rationals).unwrap().is_none());
    }

    #[test]
    fn sum_of_squares_tests() {
        assert!(is_sum_of_squares(&FieldDescriptor::Rationals, &FieldElement::from_int(2)).unwrap());
        assert!(!is_sum_of_squares(&FieldDescriptor::Rationals, &FieldElement::from_int(-1)).unwrap());
        let rt = func(FieldDescriptor::RealClosed);
        let t = FieldElement::Func(Factored::new(BaseElem::from_int(1), vec![(tpoly(), 1)]));
        assert!(!is_sum_of_squares(&rt, &t).unwrap());
        // Over Q3(T) everything is a sum of squares (base is nonreal).
        let q3t = func(qp(3));
        let t3 = FieldElement::Func(Factored::new(BaseElem::from_int(1), vec![(tpoly(), 1)]));
        assert!(is_sum_of_squares(&q3t, &t3).unwrap());
        // T^2 + 1 is psd over Q(T); -(T^2+1) is not; T^2 - 2 is not.
        let qt = func(FieldDescriptor::Rationals);
        let t2p1 = Poly::from_ints(&BaseCtx::Rat, &[1, 0, 1]);
        let t2m2 = Poly::from_ints(&BaseCtx::Rat, &[-2, 0, 1]);
        let e1 = FieldElement::Func(Factored::new(BaseElem::from_int(1), vec![(t2p1.clone(), 1)]));
        let e2 = FieldElement::Func(Factored::new(BaseElem::from_int(-1), vec![(t2p1, 1)]));
        let e3 = FieldElement::Func(Factored::new(BaseElem::from_int(1), vec![(t2m2, 1)]));
        assert!(is_sum_of_squares(&qt, &e1).unwrap());
        assert!(!is_sum_of_squares(&qt, &e2).unwrap());
        assert!(!is_sum_of_squares(&qt, &e3).unwrap());
        // 1/T over R(T): odd exponent at a real-rooted factor.
        let inv_t = FieldElement::Func(Factored::new(BaseElem::from_int(1), vec![(tpoly(), -1)]));
        assert!(!is_sum_of_squares(&rt, &inv_t).unwrap());
    }

    #[test]
    fn minus_one_sum_of_squares_in_q3_oracle() {
        // -1 = a^2 + b^2 + ... in Q_3 iff -1 is a sum of squares mod 3^k
        // with a unit term; search mod 27 finds 2^2 + 2^2 + ... here we just
        // verify the library's claim via the Hilbert symbol: (-1,-1)_3 = +1
        // means <1,1> represents -1 over Q_3.
        use crate::intarith::{hilbert_symbol, QPlace};
        assert_eq!(
            hilbert_symbol(QPlace::Prime(3), &Rat::from(Int::from(-1)), &Rat::from(Int::from(-1))).unwrap(),
            1
        );
        assert!(is_sum_of_squares(&qp(3), &FieldElement::from_int(-1)).unwrap());
    }

    #[test]
    fn factored_validation() {
        let kt = func(FieldDescriptor::Rationals);
        let good = Factored::new(
            BaseElem::from_int(2),
            vec![(Poly::from_ints(&BaseCtx::Rat, &[1, 0, 1]), 1)],
        );
        assert!(good.validate(&kt).unwrap().is_empty());
        let bad = Factored::new(
            BaseElem::from_int(1),
            vec![(Poly::from_ints(&BaseCtx::Rat, &[-1, 0, 1]), 1)],
        );
        assert!(bad.validate(&kt).is_err());
        let high = Factored::new(
            BaseElem::from_int(1),
            vec![(Poly::from_ints(&BaseCtx::Rat, &[1, 0, 0, 0, 1]), 1)],
        );
        assert_eq!(high.validate(&kt).unwrap().len(), 1);
    }
}
