//! Discrete valuations and residue theory: first/second residue maps,
//! specialization, unramified tests, contraction groups, Milnor's split
//! exact sequence over k(T), the unit-level residue sequence, and the
//! axiom property drivers.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::elem::{self, FieldElement};
use crate::error::WittError;
use crate::field::{BaseCtx, BaseElem, FieldDescriptor, FqCtx, FqDescriptor};
use crate::forms::DiagonalForm;
use crate::funcfield;
use crate::intarith;
use crate::poly::{self, Poly};
use crate::units;
use crate::witt::{self, TorsionLevelElement, WittClass};
use crate::{Rat, Result};

/// A deterministic sampler for the property-check drivers (splitmix64).
#[derive(Debug, Clone)]
pub struct Sampler {
    state: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % (n as u64)) as usize
    }
}

/// The kind of discrete valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaceKind {
    /// The p-adic valuation on Q, p odd.
    PAdic(u64),
    /// The place of k(T) at a monic irreducible polynomial.
    MonicIrreducible(Poly),
    /// The degree place of k(T) at infinity, uniformized by 1/T.
    Infinity,
}

/// A discrete valuation on a supported field, with a chosen uniformizer and
/// an explicit residue field.
#[derive(Debug, Clone)]
pub struct ValuationSpec {
    pub field: FieldDescriptor,
    pub kind: PlaceKind,
    pub uniformizer: FieldElement,
    pub residue_field: FieldDescriptor,
    /// False when the defining polynomial's irreducibility was accepted on
    /// the caller's assertion rather than checked.
    pub irreducibility_checked: bool,
}

impl ValuationSpec {
    /// The p-adic valuation on Q. The residue characteristic must be odd.
    pub fn p_adic(p: u64) -> Result<ValuationSpec> {
        if p == 2 {
            return Err(WittError::ResidueCharTwo);
        }
        if !intarith::is_prime_u64(p) {
            return Err(WittError::Domain("p must be prime".to_owned()));
        }
        Ok(ValuationSpec {
            field: FieldDescriptor::Rationals,
            kind: PlaceKind::PAdic(p),
            uniformizer: FieldElement::from_int(p as i64),
            residue_field: FieldDescriptor::FiniteField(FqDescriptor::prime(p)),
            irreducibility_checked: true,
        })
    }

    /// The place of k(T) at a monic irreducible polynomial pi.
    pub fn monic(field: &FieldDescriptor, pi: &Poly) -> Result<ValuationSpec> {
        let base = funcfield::base_of(field)?;
        let ctx = BaseCtx::for_field(base)?;
        if !pi.is_monic(&ctx) || pi.is_constant() {
            return Err(WittError::Domain("uniformizer must be monic nonconstant".to_owned()));
        }
        let checked = match poly::irreducibility(field, pi)? {
            poly::Irreducibility::Irreducible => true,
            poly::Irreducibility::Reducible => {
                return Err(WittError::Domain("polynomial is reducible".to_owned()))
            }
            poly::Irreducibility::Unknown => false,
        };
        let residue_field = residue_field_of(base, pi)?;
        Ok(ValuationSpec {
            field: field.clone(),
            kind: PlaceKind::MonicIrreducible(pi.clone()),
            uniformizer: funcfield::poly_element(pi),
            residue_field,
            irreducibility_checked: checked,
        })
    }

    /// The place of k(T) at infinity.
    pub fn infinity(field: &FieldDescriptor) -> Result<ValuationSpec> {
        let base = funcfield::base_of(field)?;
        let ctx = BaseCtx::for_field(base)?;
        let t = Poly::t(&ctx);
        let uniformizer = FieldElement::Func(crate::elem::Factored::new(
            BaseElem::from_int(1),
            vec![(t, -1)],
        ));
        Ok(ValuationSpec {
            field: field.clone(),
            kind: PlaceKind::Infinity,
            uniformizer,
            residue_field: base.clone(),
            irreducibility_checked: true,
        })
    }

    /// Replace the canonical uniformizer; the element must have valuation 1.
    pub fn with_uniformizer(mut self, u: FieldElement) -> Result<ValuationSpec> {
        if self.valuation_of(&u)? != 1 {
            return Err(WittError::Domain("override must have valuation 1".to_owned()));
        }
        self.uniformizer = u;
        Ok(self)
    }

    /// The valuation of a nonzero element.
    pub fn valuation_of(&self, e: &FieldElement) -> Result<i64> {
        if e.is_zero() {
            return Err(WittError::ZeroInput);
        }
        match &self.kind {
            PlaceKind::PAdic(p) => intarith::padic_val(e.as_base()?.as_rat()?, *p),
            PlaceKind::MonicIrreducible(pi) => Ok(e.to_factored().exponent_of(pi)),
            PlaceKind::Infinity => Ok(-e.to_factored().total_degree()),
        }
    }

    /// Reduce a v-unit into the residue field.
    pub fn reduce_unit(&self, e: &FieldElement) -> Result<FieldElement> {
        if self.valuation_of(e)? != 0 {
            return Err(WittError::Domain("element is not a v-unit".to_owned()));
        }
        match &self.kind {
            PlaceKind::PAdic(p) => {
                let r = intarith::residue_mod_p(e.as_base()?.as_rat()?, *p)?;
                Ok(FieldElement::Base(BaseElem::Fq(vec![r])))
            }
            PlaceKind::MonicIrreducible(pi) => {
                let base = funcfield::base_of(&self.field)?;
                let ctx = BaseCtx::for_field(base)?;
                if pi.degree() == 1 {
                    // kappa = k, reduction is evaluation at the root of pi.
                    let root = ctx.neg(&pi.0[0]);
                    let v = e.to_factored().eval(&ctx, &root)?;
                    Ok(FieldElement::Base(v))
                } else {
                    self.reduce_into_extension(e)
                }
            }
            PlaceKind::Infinity => {
                // A degree-zero factored element c * prod pi_i^{e_i} of monic
                // factors has value c at infinity.
                Ok(FieldElement::Base(e.to_factored().constant.clone()))
            }
        }
    }

    /// Reduction into F_p[T]/(pi) for a higher-degree place over a prime
    /// field: evaluate the factored element at the class of T.
    fn reduce_into_extension(&self, e: &FieldElement) -> Result<FieldElement> {
        let pi = match &self.kind {
            PlaceKind::MonicIrreducible(pi) => pi,
            _ => return Err(WittError::Domain("not a polynomial place".to_owned())),
        };
        let fq = match &self.residue_field {
            FieldDescriptor::FiniteField(fq) => fq.clone(),
            _ => {
                return Err(WittError::UnsupportedField(
                    "higher-degree residue fields require a prime base field".to_owned(),
                ))
            }
        };
        let kappa = FqCtx::new(fq);
        let d = kappa.d();
        let embed = |b: &BaseElem| -> Result<Vec<u64>> {
            let mut v = kappa.zero();
            match b {
                BaseElem::Fq(coords) => v[0] = coords[0],
                BaseElem::Rat(x) => {
                    let prime = FqCtx::new(FqDescriptor::prime(kappa.p()));
                    v[0] = prime.from_rat(x)?[0];
                }
            }
            Ok(v)
        };
        // The class of T in kappa.
        let mut tbar = kappa.zero();
        if d > 1 {
            tbar[1] = 1;
        } else {
            // Degree-one pi handled elsewhere; keep the root for safety.
            let c0 = embed(&pi.0[0])?;
            tbar = kappa.neg(&c0);
        }
        let eval_poly = |rho: &Poly| -> Result<Vec<u64>> {
            let mut acc = kappa.zero();
            for c in rho.0.iter().rev() {
                acc = kappa.add(&kappa.mul(&acc, &tbar), &embed(c)?);
            }
            Ok(acc)
        };
        let f = e.to_factored();
        let mut acc = embed(&f.constant)?;
        for (rho, exp) in &f.factors {
            let mut val = eval_poly(rho)?;
            let exp = *exp;
            if exp < 0 {
                val = kappa.inv(&val)?;
            }
            let val = kappa.pow(&val, exp.unsigned_abs());
            acc = kappa.mul(&acc, &val);
        }
        Ok(FieldElement::Base(BaseElem::Fq(acc)))
    }

    /// A printable name of the place.
    pub fn render(&self) -> String {
        match &self.kind {
            PlaceKind::PAdic(p) => format!("({})", p),
            PlaceKind::MonicIrreducible(pi) => format!("({})", pi.render()),
            PlaceKind::Infinity => "(infinity)".to_owned(),
        }
    }
}

fn residue_field_of(base: &FieldDescriptor, pi: &Poly) -> Result<FieldDescriptor> {
    if pi.degree() == 1 {
        return Ok(base.clone());
    }
    match base {
        FieldDescriptor::FiniteField(fq) if fq.degree() == 1 => {
            let mut modulus = Vec::with_capacity(pi.0.len());
            for c in &pi.0 {
                match c {
                    BaseElem::Fq(v) => modulus.push(v[0]),
                    BaseElem::Rat(x) => {
                        let prime = FqCtx::new(FqDescriptor::prime(fq.q()));
                        modulus.push(prime.from_rat(x)?[0]);
                    }
                }
            }
            let desc = FqDescriptor { p: fq.q(), modulus };
            let field = FieldDescriptor::FiniteField(desc);
            field.validate()?;
            Ok(field)
        }
        _ => Err(WittError::UnsupportedField(
            "residue field of a higher-degree place is only supported over prime fields"
                .to_owned(),
        )),
    }
}

fn power_of_uniformizer(v: &ValuationSpec, n: i64) -> Result<FieldElement> {
    let mut acc = match &v.field {
        FieldDescriptor::FunctionField(_) => FieldElement::from_int(1),
        _ => FieldElement::from_int(1),
    };
    let step = if n >= 0 {
        v.uniformizer.clone()
    } else {
        elem::div_elements(&v.field, &FieldElement::from_int(1), &v.uniformizer)?
    };
    for _ in 0..n.unsigned_abs() {
        acc = elem::mul_elements(&v.field, &acc, &step)?;
    }
    Ok(acc)
}

/// The second residue homomorphism: <pi^n u> maps to <u-bar> for odd n and
/// to 0 for even n.
pub fn second_residue(v: &ValuationSpec, q: &DiagonalForm) -> Result<WittClass> {
    if q.field != v.field {
        return Err(WittError::FieldMismatch);
    }
    let mut entries = Vec::new();
    for e in &q.entries {
        let n = v.valuation_of(e)?;
        if n.rem_euclid(2) == 1 {
            let w = elem::div_elements(&v.field, e, &power_of_uniformizer(v, n)?)?;
            entries.push(v.reduce_unit(&w)?);
        }
    }
    let form = DiagonalForm::new(v.residue_field.clone(), entries)?;
    WittClass::from_form(&form)
}

/// Is the class of the form unramified at v (zero second residue)?
pub fn is_unramified(v: &ValuationSpec, q: &DiagonalForm) -> Result<bool> {
    Ok(second_residue(v, q)?.is_zero())
}

/// Is the form an unramified unit at v?
pub fn is_unramified_unit(v: &ValuationSpec, q: &DiagonalForm) -> Result<bool> {
    Ok(class_is_unit(&v.field, q)? && is_unramified(v, q)?)
}

fn class_is_unit(field: &FieldDescriptor, q: &DiagonalForm) -> Result<bool> {
    match field {
        FieldDescriptor::FunctionField(_) => funcfield::is_unit_form(q),
        _ => units::is_unit(&WittClass::from_form(q)?),
    }
}

fn class_is_torsion(field: &FieldDescriptor, q: &DiagonalForm) -> Result<bool> {
    match field {
        FieldDescriptor::FunctionField(_) => funcfield::is_torsion_form(q),
        _ => WittClass::from_form(q)?.is_torsion(),
    }
}

/// The specialization homomorphism s_v = second residue after twisting by
/// the uniformizer; defined on unramified classes.
pub fn specialization(v: &ValuationSpec, q: &DiagonalForm) -> Result<WittClass> {
    if !is_unramified(v, q)? {
        return Err(WittError::Ramified);
    }
    second_residue(v, &q.scale(&v.uniformizer)?)
}

/// The unit-level residue 1 + I_tor -> W(kappa)_tor^(1), x maps to the
/// second residue of x - 1.
pub fn unit_residue(v: &ValuationSpec, x: &DiagonalForm) -> Result<TorsionLevelElement> {
    let a = x.direct_sum(&DiagonalForm::from_ints(&x.field, &[-1])?)?;
    if a.dim() % 2 != 0 || !class_is_torsion(&v.field, &a)? {
        return Err(WittError::Domain("input is not a 1 + I_tor unit".to_owned()));
    }
    TorsionLevelElement::new(1, second_residue(v, &a)?)
}

/// The class of a unit in GW(F)^x / GW^x(O_v), decomposed into the Z/2 part
/// generated by <pi> and the level-1 torsion part over the residue field.
#[derive(Debug, Clone)]
pub struct ContractionClass {
    pub valuation: ValuationSpec,
    /// Is the Z/2 summand generated by <pi> present (pi not a sum of
    /// squares)?
    pub a_present: bool,
    /// The component in the Z/2 summand, 0 when absent.
    pub a_component: u8,
    /// The dual subcomplex flag: Z/2 exactly when the Z/2 summand above is
    /// absent (pi a sum of squares).
    pub s_present: bool,
    /// The level-1 torsion component over the residue field.
    pub torsion_component: TorsionLevelElement,
}

/// Classify a unit modulo the unramified units at v.
///
/// The unit is split as A + <pi> B by valuation parity of the entries; with
/// P, Q the reductions of A, B and U = P + Q, the normal form
/// <pi>^eps (1 + (<pi> - 1) b) has b-bar = Q/U (eps = 0) or P/U (eps = 1),
/// the torsion side of the pair. When the Z/2 summand is absent the
/// <pi>-factor folds into the torsion component.
pub fn contraction_classify(v: &ValuationSpec, x: &DiagonalForm) -> Result<ContractionClass> {
    if x.field != v.field {
        return Err(WittError::FieldMismatch);
    }
    if !class_is_unit(&v.field, x)? {
        return Err(WittError::NotAUnit);
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for e in &x.entries {
        let n = v.valuation_of(e)?;
        let w = elem::div_elements(&v.field, e, &power_of_uniformizer(v, n)?)?;
        let r = v.reduce_unit(&w)?;
        if n.rem_euclid(2) == 0 {
            even.push(r);
        } else {
            odd.push(r);
        }
    }
    let p_class = WittClass::from_form(&DiagonalForm::new(v.residue_field.clone(), even)?)?;
    let q_class = WittClass::from_form(&DiagonalForm::new(v.residue_field.clone(), odd)?)?;
    let u_class = p_class.add(&q_class)?;
    if !units::is_unit(&u_class)? {
        return Err(WittError::UnsupportedNormalization(
            "reduced unit part is not a unit of the residue Witt ring".to_owned(),
        ));
    }
    let a_present = !elem::is_sum_of_squares(&v.field, &v.uniformizer)?;
    let u_inv = units::unit_inverse(&u_class)?;
    let (a_component, b) = if a_present {
        if q_class.is_torsion()? {
            (0u8, q_class.mul(&u_inv)?)
        } else {
            (1u8, p_class.mul(&u_inv)?)
        }
    } else {
        (0u8, q_class.mul(&u_inv)?)
    };
    Ok(ContractionClass {
        valuation: v.clone(),
        a_present,
        a_component,
        s_present: !a_present,
        torsion_component: TorsionLevelElement::new(1, b)?,
    })
}

/// All nonzero second residues of a class over k(T) at monic irreducible
/// places, in a deterministic order. The place at infinity is not part of
/// Milnor's sequence and is reported by `infinity_residue` instead.
pub fn milnor_total_residue(q: &DiagonalForm) -> Result<Vec<(Poly, WittClass)>> {
    let _ = funcfield::base_of(&q.field)?;
    let mut places: Vec<Poly> = Vec::new();
    for e in &q.entries {
        for (pi, _) in &e.to_factored().factors {
            if !places.contains(pi) {
                places.push(pi.clone());
            }
        }
    }
    places.sort_by_key(|pi| (pi.degree(), pi.render()));
    let mut out = Vec::new();
    for pi in places {
        let all_even = q
            .entries
            .iter()
            .all(|e| e.to_factored().exponent_of(&pi).rem_euclid(2) == 0);
        if all_even {
            continue;
        }
        let v = ValuationSpec::monic(&q.field, &pi)?;
        let r = second_residue(&v, q)?;
        if !r.is_zero() {
            out.push((pi, r));
        }
    }
    Ok(out)
}

/// The second residue at infinity, carried outside Milnor's sequence.
pub fn infinity_residue(q: &DiagonalForm) -> Result<WittClass> {
    second_residue(&ValuationSpec::infinity(&q.field)?, q)
}

/// An explicit Milnor-sequence preimage for targets supported at degree-1
/// monic places: the sum over places of (<pi> - 1) tensor the lifted target.
pub fn milnor_lift(
    field: &FieldDescriptor,
    targets: &[(Poly, WittClass)],
) -> Result<DiagonalForm> {
    let base = funcfield::base_of(field)?;
    let ctx = BaseCtx::for_field(base)?;
    let mut acc = DiagonalForm::empty(field.clone());
    for (pi, w) in targets {
        if pi.degree() != 1 || !pi.is_monic(&ctx) {
            return Err(WittError::UnsupportedField(
                "lifting is supported at degree-1 monic places only".to_owned(),
            ));
        }
        if &w.field != base {
            return Err(WittError::FieldMismatch);
        }
        if w.is_zero() {
            continue;
        }
        let lifted = funcfield::lift_form(field, &w.rep)?;
        let twisted = lifted.scale(&funcfield::poly_element(pi))?;
        acc = acc.direct_sum(&twisted)?.direct_sum(&lifted.neg()?)?;
    }
    Ok(acc)
}

/// Decide whether a form over k(T) represents the zero Witt class, through
/// Milnor's sequence: all finite residues vanish and the specialization at a
/// fresh point vanishes.
pub fn class_is_zero(q: &DiagonalForm) -> Result<bool> {
    let base = funcfield::base_of(&q.field)?.clone();
    for (_, r) in milnor_total_residue(q)? {
        if !r.is_zero() {
            return Ok(false);
        }
    }
    // The class is constant; read it off at an unramified rational point.
    let ctx = BaseCtx::for_field(&base)?;
    let points: Vec<BaseElem> = match &base {
        FieldDescriptor::FiniteField(fq) => FqCtx::new(fq.clone())
            .all_elements()
            .into_iter()
            .map(BaseElem::Fq)
            .collect(),
        _ => (0..10_000i64).map(|n| ctx.from_int(n)).collect(),
    };
    for r in points {
        let pi = Poly::from_coeffs(vec![ctx.neg(&r), ctx.one()]);
        let good = q
            .entries
            .iter()
            .all(|e| e.to_factored().exponent_of(&pi) == 0);
        if !good {
            continue;
        }
        let v = ValuationSpec::monic(&q.field, &pi)?;
        return Ok(specialization(&v, q)?.is_zero());
    }
    // Fall back to the place at infinity when every point is ramified.
    let v = ValuationSpec::infinity(&q.field)?;
    if is_unramified(&v, q)? {
        return Ok(specialization(&v, q)?.is_zero());
    }
    Err(WittError::InternalGuard("no unramified specialization point".to_owned()))
}

/// Witt-class equality over k(T).
pub fn witt_eq_func(a: &DiagonalForm, b: &DiagonalForm) -> Result<bool> {
    class_is_zero(&a.direct_sum(&b.neg()?)?)
}

/// The level-shifting residue W_tor^(n) -> W(kappa)_tor^(n+1).
pub fn torsion_level_residue(
    n: u32,
    v: &ValuationSpec,
    a: &DiagonalForm,
) -> Result<TorsionLevelElement> {
    if !class_is_torsion(&v.field, a)? {
        return Err(WittError::NotTorsion);
    }
    TorsionLevelElement::new(n + 1, second_residue(v, a)?)
}

/// Report of the unit-level residue sequence verification over k(T).
#[derive(Debug, Clone)]
pub struct SequenceReport {
    pub base: FieldDescriptor,
    pub injectivity_samples: usize,
    pub injectivity_ok: bool,
    pub surjectivity_targets: usize,
    pub surjectivity_ok: bool,
    pub exactness_samples: usize,
    pub exactness_ok: bool,
}

fn base_unit_classes(base: &FieldDescriptor) -> Result<Vec<WittClass>> {
    match base {
        FieldDescriptor::FiniteField(_)
        | FieldDescriptor::PadicField(_)
        | FieldDescriptor::SquareClosed => {
            let table = witt::WittRingTable::build(base)?;
            Ok(table
                .unit_indices()?
                .into_iter()
                .map(|i| table.elems[i].clone())
                .collect())
        }
        _ => {
            let mut out: Vec<WittClass> = Vec::new();
            for n in [1i64, -1, 2, -2, 3, -3, 5, -5] {
                let c = WittClass::from_form(&DiagonalForm::from_ints(base, &[n])?)?;
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            Ok(out)
        }
    }
}

fn base_torsion_classes(base: &FieldDescriptor) -> Result<Vec<WittClass>> {
    match base {
        FieldDescriptor::FiniteField(_)
        | FieldDescriptor::PadicField(_)
        | FieldDescriptor::SquareClosed => {
            let table = witt::WittRingTable::build(base)?;
            Ok(table.elems.clone())
        }
        FieldDescriptor::RealClosed => Ok(vec![WittClass::zero(base)]),
        _ => {
            let mut out = vec![WittClass::zero(base)];
            for entries in [&[1i64, -3][..], &[1, -7], &[2, -3], &[1, 1, -3, -3]] {
                out.push(WittClass::from_form(&DiagonalForm::from_ints(base, entries)?)?);
            }
            Ok(out)
        }
    }
}

/// Verify the unit-level residue sequence of GW(k(T))^x at desk scale:
/// injectivity of the constant extension, surjectivity onto the listed
/// contraction targets, and exactness in the middle.
pub fn units_residue_sequence_check(
    base: &FieldDescriptor,
    support: &[Poly],
) -> Result<SequenceReport> {
    let field = funcfield::function_field(base);
    let ctx = BaseCtx::for_field(base)?;
    for pi in support {
        if pi.degree() != 1 || !pi.is_monic(&ctx) {
            return Err(WittError::UnsupportedField(
                "support must consist of degree-1 monic places".to_owned(),
            ));
        }
    }
    // (a) Injectivity: distinct base units stay distinct over k(T).
    let base_units = base_unit_classes(base)?;
    let mut injectivity_ok = true;
    let mut injectivity_samples = 0;
    for (i, x) in base_units.iter().enumerate() {
        for y in base_units.iter().skip(i + 1) {
            injectivity_samples += 1;
            let lx = funcfield::lift_form(&field, &x.rep)?;
            let ly = funcfield::lift_form(&field, &y.rep)?;
            if witt_eq_func(&lx, &ly)? {
                injectivity_ok = false;
            }
        }
    }
    // (b) Surjectivity: every (eps, torsion) target at a support place has a
    // constructed preimage that is trivial at the other support places.
    let torsion = base_torsion_classes(base)?;
    let mut surjectivity_ok = true;
    let mut surjectivity_targets = 0;
    for pi in support {
        let v = ValuationSpec::monic(&field, pi)?;
        let a_present = !elem::is_sum_of_squares(&field, &v.uniformizer)?;
        let eps_range: &[u8] = if a_present { &[0, 1] } else { &[0] };
        for &eps in eps_range {
            for b in &torsion {
                surjectivity_targets += 1;
                let mut g =
                    funcfield::one_plus_uniformizer_twist(&field, &v.uniformizer, &b.rep)?;
                if eps == 1 {
                    g = g.scale(&v.uniformizer)?;
                }
                let c = contraction_classify(&v, &g)?;
                let target = TorsionLevelElement::new(1, b.clone())?;
                if c.a_component != eps || c.torsion_component != target {
                    surjectivity_ok = false;
                }
                for other in support {
                    if other == pi {
                        continue;
                    }
                    let w = ValuationSpec::monic(&field, other)?;
                    let co = contraction_classify(&w, &g)?;
                    if co.a_component != 0 || !co.torsion_component.is_zero() {
                        surjectivity_ok = false;
                    }
                }
            }
        }
    }
    // (c) Exactness: products of a twist and its boxplus-inverse twist have
    // trivial residues everywhere, hence constant class.
    let mut exactness_ok = true;
    let mut exactness_samples = 0;
    for pi in support {
        let v = ValuationSpec::monic(&field, pi)?;
        for b in torsion.iter().take(4) {
            exactness_samples += 1;
            let lvl = TorsionLevelElement::new(1, b.clone())?;
            let inv = witt::boxplus_inverse(&lvl)?;
            let g1 = funcfield::one_plus_uniformizer_twist(&field, &v.uniformizer, &b.rep)?;
            let g2 =
                funcfield::one_plus_uniformizer_twist(&field, &v.uniformizer, &inv.value.rep)?;
            let prod = g1.tensor(&g2)?;
            if !milnor_total_residue(&prod)?.is_empty() {
                exactness_ok = false;
            }
        }
    }
    Ok(SequenceReport {
        base: base.clone(),
        injectivity_samples,
        injectivity_ok,
        surjectivity_targets,
        surjectivity_ok,
        exactness_samples,
        exactness_ok,
    })
}

/// Scenarios for the axiom property drivers.
#[derive(Debug, Clone)]
pub enum AxiomScenario {
    /// The constant extension k into k(T) with the place T - point.
    ConstantExtension { base: FieldDescriptor, point: i64 },
    /// Q into Q_p by rational representatives, at the p-adic place.
    Completion { p: u64 },
}

/// Report of the axiom property drivers (A1)-(A3).
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub a1_samples: usize,
    pub a1_ok: bool,
    pub a2_support: Vec<String>,
    pub a2_ok: bool,
    pub a3_samples: usize,
    pub a3_ok: bool,
}

/// Run the (A1)-(A3) property drivers for a scenario.
pub fn axiom_checks(scenario: &AxiomScenario, samples: usize, seed: u64) -> Result<AxiomReport> {
    let mut rng = Sampler::new(seed);
    match scenario {
        AxiomScenario::ConstantExtension { base, point } => {
            let field = funcfield::function_field(base);
            let ctx = BaseCtx::for_field(base)?;
            let pi = Poly::from_coeffs(vec![ctx.from_int(-point), ctx.one()]);
            let v = ValuationSpec::monic(&field, &pi)?;
            let units = base_unit_classes(base)?;
            // (A1): constant units are unramified and pull back through the
            // cartesian square; twists by the uniformizer are ramified
            // exactly when their residue is nonzero.
            let mut a1_ok = true;
            let mut a1_samples = 0;
            for _ in 0..samples {
                a1_samples += 1;
                let u = &units[rng.below(units.len())];
                let lifted = funcfield::lift_form(&field, &u.rep)?;
                if !is_unramified(&v, &lifted)? {
                    a1_ok = false;
                }
                let ramified = lifted.scale(&v.uniformizer)?;
                let should_ramify = !second_residue(&v, &ramified)?.is_zero();
                if is_unramified(&v, &ramified)? == should_ramify {
                    a1_ok = false;
                }
            }
            // (A2): ramification support of sampled elements is finite and
            // matches the places appearing with odd exponent.
            let shifted = Poly::from_coeffs(vec![ctx.from_int(-point - 1), ctx.one()]);
            let e1 = funcfield::poly_element(&pi);
            let e2 = funcfield::poly_element(&shifted);
            let sample = DiagonalForm::new(
                field.clone(),
                vec![e1.clone(), elem::mul_elements(&field, &e2, &FieldElement::from_int(2))?],
            )?;
            let support = milnor_total_residue(&sample)?;
            let a2_ok = support.len() == 2;
            let a2_support: Vec<String> =
                support.iter().map(|(p, _)| format!("({})", p.render())).collect();
            // (A3): specialization of a constant <u> is <u-bar> = <u>.
            let mut a3_ok = true;
            let mut a3_samples = 0;
            for _ in 0..samples {
                a3_samples += 1;
                let u = &units[rng.below(units.len())];
                let lifted = funcfield::lift_form(&field, &u.rep)?;
                if &specialization(&v, &lifted)? != u {
                    a3_ok = false;
                }
            }
            Ok(AxiomReport { a1_samples, a1_ok, a2_support, a2_ok, a3_samples, a3_ok })
        }
        AxiomScenario::Completion { p } => {
            let v = ValuationSpec::p_adic(*p)?;
            let qp = FieldDescriptor::PadicField(*p);
            let mut a1_ok = true;
            let mut a3_ok = true;
            let mut a1_samples = 0;
            let mut a3_samples = 0;
            for _ in 0..samples {
                let mut u = (rng.next_u64() % 1000) as i64 - 500;
                if u == 0 {
                    u = 1;
                }
                if u.unsigned_abs() % p == 0 {
                    u += 1;
                }
                let over_q = DiagonalForm::from_ints(&FieldDescriptor::Rationals, &[u])?;
                // (A1): <u> with p-unit u is unramified over Q and its class
                // over Q_p has an unramified canonical representative.
                a1_samples += 1;
                if !is_unramified(&v, &over_q)? {
                    a1_ok = false;
                }
                let over_qp = WittClass::from_form(&DiagonalForm::from_ints(&qp, &[u])?)?;
                let rep = over_qp.rep.entries[0].as_base()?.as_rat()?.clone();
                if intarith::padic_val(&rep, *p)?.rem_euclid(2) != 0 {
                    a1_ok = false;
                }
                // (A3): reduction commutes with the completion: specializing
                // <u> over Q agrees with reducing the Q_p square-class
                // representative.
                a3_samples += 1;
                let s = specialization(&v, &over_q)?;
                let (_, unit) = intarith::padic_split(&rep, *p)?;
                let rbar = intarith::residue_mod_p(&unit, *p)?;
                let kappa = FieldDescriptor::FiniteField(FqDescriptor::prime(*p));
                let t = WittClass::from_form(&DiagonalForm::new(
                    kappa,
                    vec![FieldElement::Base(BaseElem::Fq(vec![rbar]))],
                )?)?;
                if s != t {
                    a3_ok = false;
                }
            }
            // (A2): a single rational number ramifies at finitely many
            // primes, by factorization.
            let x = Rat::new(crate::Int::from(30), crate::Int::from(7));
            let facs = intarith::factor_rat(&x)?;
            let a2_ok = facs.len() == 4;
            let a2_support = facs.iter().map(|(q, _)| format!("({})", q)).collect();
            Ok(AxiomReport { a1_samples, a1_ok, a2_support, a2_ok, a3_samples, a3_ok })
        }
    }
}
