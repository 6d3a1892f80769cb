//! Bezout forms of pointed rational self-maps of the projective line, the
//! explicit degree-3 families realizing a prescribed rank-3 class, and the
//! clutching class of a G_m-family of transition data.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::elem::{self, Factored, FieldElement};
use crate::error::WittError;
use crate::field::{BaseCtx, BaseElem, FieldDescriptor};
use crate::forms::DiagonalForm;
use crate::funcfield;
use crate::poly::{self, Irreducibility, Poly};
use crate::residue::{self, ValuationSpec};
use crate::witt::{GwClass, TorsionLevelElement, WittClass};
use crate::Result;

/// A rational function num/den over the coefficient field, kept reduced with
/// a monic denominator. For plain base fields both parts are constants.
#[derive(Debug, Clone)]
struct RF {
    num: Poly,
    den: Poly,
}

impl RF {
    fn reduce(ctx: &BaseCtx, num: Poly, den: Poly) -> Result<RF> {
        if den.is_zero() {
            return Err(WittError::Domain("division by zero".to_owned()));
        }
        if num.is_zero() {
            return Ok(RF { num: Poly::zero(), den: Poly::constant(ctx.one()) });
        }
        let g = num.gcd(ctx, &den)?;
        let (num, _) = num.divmod(ctx, &g)?;
        let (den, _) = den.divmod(ctx, &g)?;
        let (lc, den) = den.monicize(ctx)?;
        let num = num.scale(ctx, &ctx.inv(&lc)?)?;
        Ok(RF { num, den })
    }

    fn zero(ctx: &BaseCtx) -> RF {
        RF { num: Poly::zero(), den: Poly::constant(ctx.one()) }
    }

    fn from_base(ctx: &BaseCtx, c: &BaseElem) -> RF {
        RF { num: Poly::constant(c.clone()), den: Poly::constant(ctx.one()) }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, ctx: &BaseCtx, o: &RF) -> Result<RF> {
        let num = self
            .num
            .mul(ctx, &o.den)?
            .add(ctx, &o.num.mul(ctx, &self.den)?)?;
        RF::reduce(ctx, num, self.den.mul(ctx, &o.den)?)
    }

    fn neg(&self, ctx: &BaseCtx) -> RF {
        RF { num: self.num.neg(ctx), den: self.den.clone() }
    }

    fn sub(&self, ctx: &BaseCtx, o: &RF) -> Result<RF> {
        self.add(ctx, &o.neg(ctx))
    }

    fn mul(&self, ctx: &BaseCtx, o: &RF) -> Result<RF> {
        RF::reduce(ctx, self.num.mul(ctx, &o.num)?, self.den.mul(ctx, &o.den)?)
    }

    fn div(&self, ctx: &BaseCtx, o: &RF) -> Result<RF> {
        if o.is_zero() {
            return Err(WittError::Domain("division by zero".to_owned()));
        }
        RF::reduce(ctx, self.num.mul(ctx, &o.den)?, self.den.mul(ctx, &o.num)?)
    }

    fn from_element(ctx: &BaseCtx, e: &FieldElement) -> Result<RF> {
        match e {
            FieldElement::Base(c) => Ok(RF::from_base(ctx, &elem::coerce_base(ctx, c)?)),
            FieldElement::Func(f) => {
                let mut num = Poly::constant(elem::coerce_base(ctx, &f.constant)?);
                let mut den = Poly::constant(ctx.one());
                for (pi, exp) in &f.factors {
                    let e = exp.unsigned_abs();
                    let mut p = Poly::constant(ctx.one());
                    for _ in 0..e {
                        p = p.mul(ctx, pi)?;
                    }
                    if *exp >= 0 {
                        num = num.mul(ctx, &p)?;
                    } else {
                        den = den.mul(ctx, &p)?;
                    }
                }
                RF::reduce(ctx, num, den)
            }
        }
    }
}

/// Split a monic squarefree polynomial into monic irreducible factors, with
/// root search bounded by what the base field supports exactly.
fn split_irreducible(field: &FieldDescriptor, ctx: &BaseCtx, g: &Poly) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    let mut stack = vec![g.clone()];
    while let Some(h) = stack.pop() {
        if h.is_constant() {
            continue;
        }
        if h.degree() == 1 {
            out.push(h);
            continue;
        }
        let root = match ctx {
            BaseCtx::Fq(fq) => {
                let mut found = None;
                for r in fq.all_elements() {
                    let e = BaseElem::Fq(r);
                    if h.eval(ctx, &e)?.is_zero() {
                        found = Some(e);
                        break;
                    }
                }
                found
            }
            BaseCtx::Rat => poly::rational_roots(&h)?
                .into_iter()
                .next()
                .map(BaseElem::Rat),
        };
        match root {
            Some(r) => {
                let lin = Poly::from_coeffs(vec![ctx.neg(&r), ctx.one()]);
                let (q, rem) = h.divmod(ctx, &lin)?;
                if !rem.is_zero() {
                    return Err(WittError::InternalGuard("root division left a remainder".to_owned()));
                }
                out.push(lin);
                stack.push(q);
            }
            None => match poly::irreducibility(field, &h)? {
                Irreducibility::Irreducible => out.push(h),
                _ => {
                    return Err(WittError::Domain(format!(
                        "could not certify a factorization of {}",
                        h.render()
                    )))
                }
            },
        }
    }
    Ok(out)
}

/// Convert a rational function to a field element representing the same
/// square class: for function fields the result is the product of the
/// odd-multiplicity squarefree parts of num*den times the leading constant.
fn rf_to_square_class_element(
    field: &FieldDescriptor,
    ctx: &BaseCtx,
    x: &RF,
) -> Result<FieldElement> {
    if x.is_zero() {
        return Err(WittError::Domain("zero diagonal entry".to_owned()));
    }
    if !field.is_function_field() {
        let n = constant_of(&x.num)?;
        let d = constant_of(&x.den)?;
        return Ok(FieldElement::Base(ctx.div(&n, &d)?));
    }
    let p = x.num.mul(ctx, &x.den)?;
    let (c, m) = p.monicize(ctx)?;
    let mut factors: Vec<(Poly, i64)> = Vec::new();
    for (mult, part) in m.squarefree_decomposition(ctx)? {
        if mult % 2 == 0 {
            continue;
        }
        for irr in split_irreducible(field, ctx, &part)? {
            factors.push((irr, 1));
        }
    }
    if factors.is_empty() {
        return Ok(FieldElement::Base(c));
    }
    Ok(FieldElement::Func(Factored::new(c, factors)))
}

fn constant_of(p: &Poly) -> Result<BaseElem> {
    if !p.is_constant() {
        return Err(WittError::InternalGuard(
            "expected a constant polynomial over a base field".to_owned(),
        ));
    }
    Ok(if p.is_zero() { BaseElem::from_int(0) } else { p.0[0].clone() })
}

fn coefficient_ctx(field: &FieldDescriptor) -> Result<BaseCtx> {
    BaseCtx::for_field(field.base())
}

/// A pointed rational self-map A(X)/B(X) of P^1 with deg A > deg B and
/// coprime numerator and denominator.
#[derive(Debug, Clone)]
pub struct RationalMapP1 {
    pub field: FieldDescriptor,
    numerator: Vec<RF>,
    denominator: Vec<RF>,
}

fn trim(mut v: Vec<RF>) -> Vec<RF> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn degx(v: &[RF]) -> usize {
    v.len().saturating_sub(1)
}

impl RationalMapP1 {
    /// Build a map from numerator and denominator coefficients, constant
    /// term first.
    pub fn new(
        field: &FieldDescriptor,
        numerator: &[FieldElement],
        denominator: &[FieldElement],
    ) -> Result<RationalMapP1> {
        let ctx = coefficient_ctx(field)?;
        let num: Vec<RF> = numerator
            .iter()
            .map(|e| RF::from_element(&ctx, e))
            .collect::<Result<_>>()?;
        let den: Vec<RF> = denominator
            .iter()
            .map(|e| RF::from_element(&ctx, e))
            .collect::<Result<_>>()?;
        RationalMapP1::from_rf(field, num, den)
    }

    fn from_rf(field: &FieldDescriptor, num: Vec<RF>, den: Vec<RF>) -> Result<RationalMapP1> {
        let num = trim(num);
        let den = trim(den);
        if num.iter().all(|c| c.is_zero()) || den.iter().all(|c| c.is_zero()) {
            return Err(WittError::Domain("zero numerator or denominator".to_owned()));
        }
        if degx(&num) <= degx(&den) {
            return Err(WittError::Domain(
                "the numerator degree must exceed the denominator degree".to_owned(),
            ));
        }
        Ok(RationalMapP1 { field: field.clone(), numerator: num, denominator: den })
    }

    /// The identity map X.
    pub fn identity(field: &FieldDescriptor) -> Result<RationalMapP1> {
        RationalMapP1::new(
            field,
            &[FieldElement::from_int(0), FieldElement::from_int(1)],
            &[FieldElement::from_int(1)],
        )
    }

    /// The degree of the map as a self-map of P^1.
    pub fn degree(&self) -> usize {
        degx(&self.numerator)
    }
}

fn polyx_is_zero(v: &[RF]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Remainder of polynomial division in X with RF coefficients.
fn polyx_rem(ctx: &BaseCtx, a: &[RF], b: &[RF]) -> Result<Vec<RF>> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = degx(&b);
    let lead = b[db].clone();
    while !polyx_is_zero(&r) && degx(&r) >= db {
        let dr = degx(&r);
        let c = r[dr].div(ctx, &lead)?;
        for k in 0..=db {
            let t = b[k].mul(ctx, &c)?;
            r[dr - db + k] = r[dr - db + k].sub(ctx, &t)?;
        }
        r = trim(r);
        if degx(&r) == dr && !polyx_is_zero(&r) {
            // degree must strictly drop
            return Err(WittError::InternalGuard("division did not reduce the degree".to_owned()));
        }
        if dr == 0 {
            break;
        }
    }
    Ok(r)
}

fn check_coprime(ctx: &BaseCtx, f: &RationalMapP1) -> Result<()> {
    let mut a = f.numerator.clone();
    let mut b = f.denominator.clone();
    while !polyx_is_zero(&b) {
        let r = polyx_rem(ctx, &a, &b)?;
        a = b;
        b = r;
    }
    if degx(&trim(a)) > 0 {
        return Err(WittError::Domain(
            "degenerate map: numerator and denominator share a factor".to_owned(),
        ));
    }
    Ok(())
}

/// The symmetric n x n Bezout matrix of the map, defined by
/// (A(X)B(Y) - A(Y)B(X))/(X - Y) = sum b_ij X^i Y^j.
fn bezout_matrix(ctx: &BaseCtx, f: &RationalMapP1) -> Result<Vec<Vec<RF>>> {
    let n = f.degree();
    let coeff = |v: &[RF], k: usize| -> RF {
        if k < v.len() {
            v[k].clone()
        } else {
            RF::zero(ctx)
        }
    };
    // p_k(Y) = sum_l (a_k b_l - a_l b_k) Y^l, the X^k coefficient.
    let mut p: Vec<Vec<RF>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = Vec::with_capacity(n + 1);
        for l in 0..=n {
            let m = coeff(&f.numerator, k)
                .mul(ctx, &coeff(&f.denominator, l))?
                .sub(ctx, &coeff(&f.numerator, l).mul(ctx, &coeff(&f.denominator, k))?)?;
            row.push(m);
        }
        p.push(row);
    }
    // Synthetic division by (X - Y): q_{n-1} = p_n, q_{k-1} = p_k + Y q_k.
    let mut q: Vec<Vec<RF>> = vec![vec![RF::zero(ctx); n + 1]; n];
    q[n - 1] = p[n].clone();
    for k in (1..n).rev() {
        let mut next = p[k].clone();
        for l in 0..n {
            let shifted = q[k][l].clone();
            next[l + 1] = next[l + 1].add(ctx, &shifted)?;
        }
        q[k - 1] = next;
    }
    let mut m = vec![vec![RF::zero(ctx); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = q[i][j].clone();
        }
    }
    // Symmetry is intrinsic to the construction; guard it.
    for i in 0..n {
        for j in 0..n {
            if !m[i][j].sub(ctx, &m[j][i])?.is_zero() {
                return Err(WittError::InternalGuard("Bezout matrix is not symmetric".to_owned()));
            }
        }
    }
    Ok(m)
}

/// Diagonalize a symmetric matrix by exact congruence and return the
/// diagonal entries.
fn diagonalize(ctx: &BaseCtx, mut m: Vec<Vec<RF>>) -> Result<Vec<RF>> {
    let n = m.len();
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else {
                // All remaining diagonal entries vanish: complete a 2x2
                // block by adding a row and column (char != 2).
                let mut pair = None;
                'search: for i in k..n {
                    for j in (i + 1)..n {
                        if !m[i][j].is_zero() {
                            pair = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let (i, j) = match pair {
                    Some(p) => p,
                    None => {
                        return Err(WittError::Domain(
                            "degenerate Bezout form: zero block".to_owned(),
                        ))
                    }
                };
                for l in 0..n {
                    let t = m[j][l].clone();
                    m[i][l] = m[i][l].add(ctx, &t)?;
                }
                for row in m.iter_mut() {
                    let t = row[j].clone();
                    row[i] = row[i].add(ctx, &t)?;
                }
                m.swap(k, i);
                for row in m.iter_mut() {
                    row.swap(k, i);
                }
            }
        }
        let d = m[k][k].clone();
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let c = m[i][k].div(ctx, &d)?;
            for l in 0..n {
                let t = m[k][l].mul(ctx, &c)?;
                m[i][l] = m[i][l].sub(ctx, &t)?;
            }
            for row in m.iter_mut() {
                let t = row[k].mul(ctx, &c)?;
                row[i] = row[i].sub(ctx, &t)?;
            }
        }
    }
    Ok((0..n).map(|k| m[k][k].clone()).collect())
}

/// The diagonalized Bezout form of the map, as a form over its field. The
/// dimension equals the degree of the map.
pub fn bezout_form(f: &RationalMapP1) -> Result<DiagonalForm> {
    let ctx = coefficient_ctx(&f.field)?;
    check_coprime(&ctx, f)?;
    let m = bezout_matrix(&ctx, f)?;
    let diag = diagonalize(&ctx, m)?;
    let entries: Vec<FieldElement> = diag
        .iter()
        .map(|d| rf_to_square_class_element(&f.field, &ctx, d))
        .collect::<Result<_>>()?;
    DiagonalForm::new(f.field.clone(), entries)
}

/// The Bezout class in GW, for base fields with canonical representatives.
pub fn bezout_gw_class(f: &RationalMapP1) -> Result<GwClass> {
    if f.field.is_function_field() {
        return Err(WittError::UnsupportedField(
            "function-field Bezout classes are returned as forms".to_owned(),
        ));
    }
    GwClass::from_form(&bezout_form(f)?)
}

/// The degree-3 map (X^3 - (a3/a2 + a2/a1) X) / (a1 X^2 - a1 a3 / a2),
/// whose Bezout form is <a1, a2, a3>.
pub fn family_from_form(
    field: &FieldDescriptor,
    a1: &FieldElement,
    a2: &FieldElement,
    a3: &FieldElement,
) -> Result<RationalMapP1> {
    let ctx = coefficient_ctx(field)?;
    let r1 = RF::from_element(&ctx, a1)?;
    let r2 = RF::from_element(&ctx, a2)?;
    let r3 = RF::from_element(&ctx, a3)?;
    if r1.is_zero() || r2.is_zero() || r3.is_zero() {
        return Err(WittError::Domain("family coefficients must be nonzero".to_owned()));
    }
    let one = RF::from_base(&ctx, &ctx.one());
    let c = r3.div(&ctx, &r2)?.add(&ctx, &r2.div(&ctx, &r1)?)?;
    let num = vec![RF::zero(&ctx), c.neg(&ctx), RF::zero(&ctx), one];
    let den = vec![r1.mul(&ctx, &r3.div(&ctx, &r2)?)?.neg(&ctx), RF::zero(&ctx), r1.clone()];
    RationalMapP1::from_rf(field, num, den)
}

/// The paper's T-family over k(T): family_from_form(1, u, u T), the map
/// (X^3 - (T + u) X)/(X^2 - T), with Bezout form 1 (+) <T><u> (+) <u>.
pub fn t_family(base: &FieldDescriptor, u: &FieldElement) -> Result<RationalMapP1> {
    let field = funcfield::function_field(base);
    let t = funcfield::t_element(base)?;
    let ut = elem::mul_elements(&field, u, &t)?;
    family_from_form(&field, &FieldElement::from_int(1), u, &ut)
}

/// The H^1(P^1, GW^x) class of a G_m-family of transition data, read off at
/// the support point (T): the contraction class modulo the S-subgroup
/// {0, <1>} when the uniformizer is a sum of squares.
#[derive(Debug, Clone)]
pub struct ClutchingClass {
    pub field: FieldDescriptor,
    pub a_component: u8,
    pub s_present: bool,
    pub torsion: WittClass,
    pub nontrivial: bool,
}

impl ClutchingClass {
    /// Equality in the component group (modulo S when present).
    pub fn same_class(&self, other: &ClutchingClass) -> Result<bool> {
        if self.a_component != other.a_component {
            return Ok(false);
        }
        if self.torsion == other.torsion {
            return Ok(true);
        }
        if self.s_present {
            let one = WittClass::one(&self.torsion.field)?;
            let a = TorsionLevelElement::new(1, self.torsion.clone())?;
            let s = TorsionLevelElement::new(1, one)?;
            return Ok(crate::witt::boxplus(&a, &s)?.value == other.torsion);
        }
        Ok(false)
    }
}

/// Compute the clutching class of a family given as a unit form over k(T).
/// The family must have the normal form g(1) + (<T> - 1) b with b torsion
/// over the base; anything else is an unsupported normalization.
pub fn clutching_class(g: &DiagonalForm) -> Result<ClutchingClass> {
    let field = g.field.clone();
    let base = match &field {
        FieldDescriptor::FunctionField(b) => (**b).clone(),
        _ => {
            return Err(WittError::UnsupportedField(
                "clutching data lives over a function field".to_owned(),
            ))
        }
    };
    if !funcfield::is_unit_form(g)? {
        return Err(WittError::NotAUnit);
    }
    let ctx = BaseCtx::for_field(&base)?;
    let v = ValuationSpec::monic(&field, &Poly::t(&ctx))?;
    let b = residue::second_residue(&v, g)?;
    // The A-component absorbs a <1> summand of b over a real base; the
    // leftover must be torsion.
    let c = residue::contraction_classify(&v, g)?;
    let torsion = if c.a_present && c.a_component == 1 {
        b.sub(&WittClass::one(&base)?)?
    } else {
        b.clone()
    };
    if !torsion.is_torsion()? {
        return Err(WittError::Domain(
            "unsupported normalization: the residue at (T) is not torsion".to_owned(),
        ));
    }
    // Normal form check: g - g(1) - (<T> - 1) b must vanish in W(k(T)).
    let at_one = ValuationSpec::monic(&field, &Poly::from_ints(&ctx, &[-1, 1]))?;
    let g1 = residue::specialization(&at_one, g)?;
    let mut diff = g.direct_sum(&funcfield::lift_form(&field, &g1.rep)?.neg()?)?;
    if b.dim() > 0 {
        let t = funcfield::t_element(&base)?;
        let lifted = funcfield::lift_form(&field, &b.rep)?;
        diff = diff
            .direct_sum(&lifted.scale(&t)?.neg()?)?
            .direct_sum(&lifted)?;
    }
    if !residue::class_is_zero(&diff)? {
        return Err(WittError::Domain(
            "unsupported normalization: not of the shape g(1) + (<T> - 1) b".to_owned(),
        ));
    }
    let nontrivial = if c.s_present {
        let one = WittClass::one(&base)?;
        !(torsion.is_zero() || torsion == one)
    } else {
        c.a_component != 0 || !torsion.is_zero()
    };
    Ok(ClutchingClass {
        field,
        a_component: if c.a_present { c.a_component } else { 0 },
        s_present: c.s_present,
        torsion,
        nontrivial,
    })
}

/// Render the map for reports, numerator over denominator in X.
pub fn render_map(f: &RationalMapP1) -> String {
    let part = |v: &[RF]| -> String {
        let mut terms: Vec<String> = Vec::new();
        for (k, c) in v.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.den.is_constant() && c.num.is_constant() {
                c.num.render()
            } else {
                format!("({})/({})", c.num.render(), c.den.render())
            };
            let term = match k {
                0 => coeff,
                1 if coeff == "1" => "X".to_owned(),
                1 => format!("{}*X", coeff),
                _ if coeff == "1" => format!("X^{}", k),
                _ => format!("{}*X^{}", coeff, k),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_owned()
        } else {
            terms.join(" + ")
        }
    };
    format!("({}) / ({})", part(&f.numerator), part(&f.denominator))
}
