//! Dense univariate polynomials over a base field, with division, gcd,
//! irreducibility tests in low degree, and exact real-root isolation by
//! Sturm sequences for rational coefficients.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::WittError;
use crate::field::{BaseCtx, BaseElem};
use crate::intarith;
use crate::{Int, Rat, Result};

/// A polynomial in T with ascending coefficients; the zero polynomial is the
/// empty list, and the leading coefficient is always nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly(pub Vec<BaseElem>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn from_coeffs(mut coeffs: Vec<BaseElem>) -> Poly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// Constant polynomial.
    pub fn constant(c: BaseElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial T.
    pub fn t(ctx: &BaseCtx) -> Poly {
        Poly::from_coeffs(vec![ctx.zero(), ctx.one()])
    }

    /// Build from small integer coefficients, ascending.
    pub fn from_ints(ctx: &BaseCtx, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 alongside is_zero.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self, ctx: &BaseCtx) -> BaseElem {
        self.0.last().cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn is_monic(&self, ctx: &BaseCtx) -> bool {
        !self.is_zero() && self.leading(ctx) == ctx.one()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add(&self, ctx: &BaseCtx, other: &Poly) -> Result<Poly> {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(|| ctx.zero());
            let b = other.0.get(i).cloned().unwrap_or_else(|| ctx.zero());
            out.push(ctx.add(&a, &b)?);
        }
        Ok(Poly::from_coeffs(out))
    }

    pub fn neg(&self, ctx: &BaseCtx) -> Poly {
        Poly(self.0.iter().map(|c| ctx.neg(c)).collect())
    }

    pub fn sub(&self, ctx: &BaseCtx, other: &Poly) -> Result<Poly> {
        self.add(ctx, &other.neg(ctx))
    }

    pub fn mul(&self, ctx: &BaseCtx, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let mut out = vec![ctx.zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                let t = ctx.mul(a, b)?;
                out[i + j] = ctx.add(&out[i + j], &t)?;
            }
        }
        Ok(Poly::from_coeffs(out))
    }

    pub fn scale(&self, ctx: &BaseCtx, c: &BaseElem) -> Result<Poly> {
        let mut out = Vec::with_capacity(self.0.len());
        for a in &self.0 {
            out.push(ctx.mul(a, c)?);
        }
        Ok(Poly::from_coeffs(out))
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divmod(&self, ctx: &BaseCtx, div: &Poly) -> Result<(Poly, Poly)> {
        if div.is_zero() {
            return Err(WittError::ZeroInput);
        }
        let dlead_inv = ctx.inv(&div.leading(ctx))?;
        let mut rem = self.0.clone();
        let dd = div.degree();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![ctx.zero(); rem.len() - dd];
        while rem.len() > dd && !rem.iter().all(|c| c.is_zero()) {
            let lead = rem.last().unwrap().clone();
            if lead.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - dd;
            let factor = ctx.mul(&lead, &dlead_inv)?;
            quot[shift] = factor.clone();
            for i in 0..=dd {
                let t = ctx.mul(&div.0[i], &factor)?;
                rem[shift + i] = ctx.sub(&rem[shift + i], &t)?;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, ctx: &BaseCtx, div: &Poly) -> Result<Poly> {
        Ok(self.divmod(ctx, div)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, ctx: &BaseCtx, other: &Poly) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(ctx, &b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        let inv = ctx.inv(&a.leading(ctx))?;
        a.scale(ctx, &inv)
    }

    pub fn derivative(&self, ctx: &BaseCtx) -> Result<Poly> {
        if self.0.len() <= 1 {
            return Ok(Poly::zero());
        }
        let mut out = Vec::with_capacity(self.0.len() - 1);
        for (i, c) in self.0.iter().enumerate().skip(1) {
            out.push(ctx.mul(c, &ctx.from_int(i as i64))?);
        }
        Ok(Poly::from_coeffs(out))
    }

    pub fn eval(&self, ctx: &BaseCtx, x: &BaseElem) -> Result<BaseElem> {
        let mut acc = ctx.zero();
        for c in self.0.iter().rev() {
            acc = ctx.add(&ctx.mul(&acc, x)?, c)?;
        }
        Ok(acc)
    }

    /// Make monic; returns (leading coefficient, monic polynomial).
    pub fn monicize(&self, ctx: &BaseCtx) -> Result<(BaseElem, Poly)> {
        if self.is_zero() {
            return Err(WittError::ZeroInput);
        }
        let lead = self.leading(ctx);
        let inv = ctx.inv(&lead)?;
        Ok((lead, self.scale(ctx, &inv)?))
    }

    /// Squarefree part (monic), via gcd with the derivative.
    pub fn squarefree_part(&self, ctx: &BaseCtx) -> Result<Poly> {
        if self.is_zero() {
            return Err(WittError::ZeroInput);
        }
        let der = self.derivative(ctx)?;
        if der.is_zero() {
            // Constant (char 0 fields only reach this for constants since
            // the char-p case is not used on squarefree-part paths).
            return Ok(Poly::constant(ctx.one()));
        }
        let g = self.gcd(ctx, &der)?;
        let (q, _) = self.divmod(ctx, &g)?;
        Ok(q.monicize(ctx)?.1)
    }

    /// Yun squarefree decomposition: returns (m, factor) pairs with the
    /// input equal (up to leading unit) to the product of factor^m.
    /// Characteristic zero only.
    pub fn squarefree_decomposition(&self, ctx: &BaseCtx) -> Result<Vec<(u32, Poly)>> {
        if self.is_zero() {
            return Err(WittError::ZeroInput);
        }
        if self.is_constant() {
            return Ok(Vec::new());
        }
        let f = self.monicize(ctx)?.1;
        let fp = f.derivative(ctx)?;
        let a0 = f.gcd(ctx, &fp)?;
        let mut b = f.divmod(ctx, &a0)?.0;
        let mut c = fp.divmod(ctx, &a0)?.0;
        let mut out = Vec::new();
        let mut m = 1u32;
        loop {
            let d = c.sub(ctx, &b.derivative(ctx)?)?;
            if b.is_constant() {
                break;
            }
            let a = b.gcd(ctx, &d)?;
            if !a.is_constant() {
                out.push((m, a.clone()));
            }
            b = b.divmod(ctx, &a)?.0;
            c = d.divmod(ctx, &a)?.0;
            m += 1;
            if m > 64 {
                return Err(WittError::InternalGuard("Yun decomposition ran away".to_owned()));
            }
        }
        Ok(out)
    }

    /// Display with variable T, ascending terms suppressed when zero.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = match c {
                BaseElem::Rat(x) => format!("{}", x),
                BaseElem::Fq(v) => {
                    if v.iter().skip(1).all(|&d| d == 0) {
                        format!("{}", v[0])
                    } else {
                        format!("{:?}", v)
                    }
                }
            };
            let term = match i {
                0 => cs,
                1 if cs == "1" => "T".to_owned(),
                1 => format!("{}*T", cs),
                _ if cs == "1" => format!("T^{}", i),
                _ => format!("{}*T^{}", cs, i),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// Outcome of a low-degree irreducibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// Degree out of range for the exact test; accepted as asserted-by-caller.
    Unknown,
}

/// Irreducibility over the base field for degree <= 3 (root and discriminant
/// tests); higher degrees return Unknown.
pub fn irreducibility(field: &crate::field::FieldDescriptor, poly: &Poly) -> Result<Irreducibility> {
    use crate::field::FieldDescriptor as FD;
    let ctx = BaseCtx::for_field(field.base())?;
    if poly.is_zero() || poly.is_constant() {
        return Ok(Irreducibility::Reducible);
    }
    let d = poly.degree();
    if d == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    match field.base() {
        FD::RealClosed => Ok(if d == 2 {
            // Irreducible over a real closed field iff negative discriminant.
            let disc = quadratic_discriminant(&ctx, poly)?;
            if disc.as_rat()?.is_negative() {
                Irreducibility::Irreducible
            } else {
                Irreducibility::Reducible
            }
        } else {
            Irreducibility::Reducible
        }),
        FD::SquareClosed => Ok(Irreducibility::Reducible),
        FD::Rationals => {
            if d > 3 {
                return Ok(Irreducibility::Unknown);
            }
            if has_rational_root(poly)? {
                Ok(Irreducibility::Reducible)
            } else {
                Ok(Irreducibility::Irreducible)
            }
        }
        FD::FiniteField(_) => {
            if d > 3 {
                return Ok(Irreducibility::Unknown);
            }
            let fq = match &ctx {
                BaseCtx::Fq(f) => f,
                _ => unreachable!(),
            };
            for a in fq.all_elements() {
                if poly.eval(&ctx, &BaseElem::Fq(a))?.is_zero() {
                    return Ok(Irreducibility::Reducible);
                }
            }
            Ok(Irreducibility::Irreducible)
        }
        FD::PadicField(p) => {
            if d == 2 {
                let disc = quadratic_discriminant(&ctx, poly)?;
                return Ok(if intarith::is_square_padic(disc.as_rat()?, *p)? {
                    Irreducibility::Reducible
                } else {
                    Irreducibility::Irreducible
                });
            }
            if d == 3 {
                return Ok(match cubic_has_padic_root(poly, *p)? {
                    Some(true) => Irreducibility::Reducible,
                    Some(false) => Irreducibility::Irreducible,
                    None => Irreducibility::Unknown,
                });
            }
            Ok(Irreducibility::Unknown)
        }
        FD::FunctionField(_) => Err(WittError::UnsupportedField(
            "irreducibility is tested over base fields only".to_owned(),
        )),
    }
}

fn quadratic_discriminant(ctx: &BaseCtx, poly: &Poly) -> Result<BaseElem> {
    debug_assert_eq!(poly.degree(), 2);
    let a = &poly.0[2];
    let b = &poly.0[1];
    let c = &poly.0[0];
    let b2 = ctx.mul(b, b)?;
    let four_ac = ctx.mul(&ctx.from_int(4), &ctx.mul(a, c)?)?;
    ctx.sub(&b2, &four_ac)
}

/// Rational root test via the rational root theorem after clearing
/// denominators.
pub fn has_rational_root(poly: &Poly) -> Result<bool> {
    Ok(!rational_roots(poly)?.is_empty())
}

/// All rational roots of a nonzero polynomial with rational coefficients.
pub fn rational_roots(poly: &Poly) -> Result<Vec<Rat>> {
    use num_integer::Integer;
    if poly.is_zero() {
        return Err(WittError::ZeroInput);
    }
    let ctx = BaseCtx::Rat;
    let mut roots = Vec::new();
    // Strip powers of T.
    let mut coeffs: Vec<Rat> = Vec::new();
    for c in &poly.0 {
        coeffs.push(c.as_rat()?.clone());
    }
    let mut shift = 0usize;
    while coeffs.first().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.remove(0);
        shift += 1;
    }
    if shift > 0 {
        roots.push(Rat::zero());
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    // Clear denominators to integer coefficients.
    let mut lcm = Int::one();
    for c in &coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<Int> = coeffs.iter().map(|c| (c * Rat::from(lcm.clone())).to_integer()).collect();
    let a0 = ints.first().unwrap().clone();
    let an = ints.last().unwrap().clone();
    let poly2 = Poly::from_coeffs(coeffs.into_iter().map(BaseElem::Rat).collect());
    for pd in divisors(&a0)? {
        for qd in divisors(&an)? {
            for sign in [1i64, -1] {
                let cand = Rat::new(Int::from(sign) * Int::from(pd), Int::from(qd));
                if poly2.eval(&ctx, &BaseElem::Rat(cand.clone()))?.is_zero()
                    && !roots.contains(&cand)
                {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn divisors(n: &Int) -> Result<Vec<u64>> {
    let factors = intarith::factor_int(n)?;
    let mut out: Vec<u64> = vec![1];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d.saturating_mul(pk));
                pk = pk.saturating_mul(p);
            }
        }
        out = next;
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Does a cubic with rational coefficients have a root in Q_p?
///
/// Scales to a monic integral model, then breadth-first lifts candidate
/// residues with the Hensel criterion v(f(r)) > 2 v(f'(r)); the search depth
/// is bounded by the discriminant valuation. Returns None when the bound is
/// exceeded (callers treat this as Unknown).
fn cubic_has_padic_root(poly: &Poly, p: u64) -> Result<Option<bool>> {
    let ctx = BaseCtx::Rat;
    let (_, monic) = poly.monicize(&ctx)?;
    // Substitute T = Y / p^k so that all coefficients become integral:
    // y^3 + a2 p^k y^2 + a1 p^{2k} y + a0 p^{3k}.
    let mut k = 0i64;
    for (i, c) in monic.0.iter().enumerate().take(3) {
        let v = if c.as_rat()?.is_zero() {
            0
        } else {
            intarith::padic_val(c.as_rat()?, p)?
        };
        let need = (-v + (3 - i as i64) - 1).div_euclid(3 - i as i64);
        k = k.max(need);
    }
    let pr = Rat::from(Int::from(p));
    let mut coeffs: Vec<Rat> = Vec::new();
    for (i, c) in monic.0.iter().enumerate() {
        let mut x = c.as_rat()?.clone();
        for _ in 0..(k * (3 - i as i64)) {
            x *= pr.clone();
        }
        coeffs.push(x);
    }
    let f = Poly::from_coeffs(coeffs.into_iter().map(BaseElem::Rat).collect());
    let fp = f.derivative(&ctx)?;
    // Discriminant valuation bound for the lift search.
    let disc = cubic_discriminant(&ctx, &f)?;
    let disc = disc.as_rat()?;
    if disc.is_zero() {
        // Repeated roots: the squarefree part has degree <= 1 or splits off
        // a rational root; handle via the squarefree part directly.
        let sf = f.squarefree_part(&ctx)?;
        if sf.degree() == 3 {
            return Err(WittError::InternalGuard("zero discriminant with squarefree cubic".to_owned()));
        }
        if sf.degree() <= 1 {
            return Ok(Some(true));
        }
        let d2 = quadratic_discriminant(&ctx, &sf)?;
        return Ok(Some(intarith::is_square_padic(d2.as_rat()?, p)?));
    }
    let bound = 2 * intarith::padic_val(disc, p)?.max(0) + 3;
    let mut frontier: Vec<Int> = (0..p).map(Int::from).collect();
    let mut modulus = Int::from(p);
    for _level in 0..bound {
        let mut next = Vec::new();
        for r in &frontier {
            let x = BaseElem::Rat(Rat::from(r.clone()));
            let fv = f.eval(&ctx, &x)?;
            let fv = fv.as_rat()?;
            if fv.is_zero() {
                return Ok(Some(true));
            }
            let vf = intarith::padic_val(fv, p)?;
            let dv = fp.eval(&ctx, &x)?;
            let vdf = if dv.as_rat()?.is_zero() {
                i64::MAX / 4
            } else {
                intarith::padic_val(dv.as_rat()?, p)?
            };
            if vf > 2 * vdf {
                return Ok(Some(true));
            }
            // Keep candidates whose value still vanishes to the current depth.
            let level_val = intarith::padic_val(&Rat::from(modulus.clone()), p)?;
            if vf >= level_val {
                for d in 0..p {
                    next.push(r + Int::from(d) * modulus.clone());
                }
            }
        }
        if next.is_empty() {
            return Ok(Some(false));
        }
        frontier = next;
        modulus *= Int::from(p);
    }
    Ok(None)
}

fn cubic_discriminant(ctx: &BaseCtx, f: &Poly) -> Result<BaseElem> {
    debug_assert_eq!(f.degree(), 3);
    // disc(x^3 + b x^2 + c x + d) for monic f; general leading handled by
    // monicizing first.
    let (_, f) = f.monicize(ctx)?;
    let b = &f.0[2];
    let c = &f.0[1];
    let d = &f.0[0];
    let b2 = ctx.mul(b, b)?;
    let c2 = ctx.mul(c, c)?;
    let t1 = ctx.mul(&b2, &c2)?;
    let t2 = ctx.mul(&ctx.from_int(4), &ctx.mul(c, &c2)?)?;
    let t3 = ctx.mul(&ctx.from_int(4), &ctx.mul(&ctx.mul(&b2, b)?, d)?)?;
    let t4 = ctx.mul(&ctx.from_int(18), &ctx.mul(&ctx.mul(b, c)?, d)?)?;
    let t5 = ctx.mul(&ctx.from_int(27), &ctx.mul(d, d)?)?;
    let mut acc = ctx.sub(&t1, &t2)?;
    acc = ctx.sub(&acc, &t3)?;
    acc = ctx.add(&acc, &t4)?;
    ctx.sub(&acc, &t5)
}

/// Sign of a rational polynomial at a rational point: -1, 0, +1.
fn sign_at(poly: &[Rat], x: &Rat) -> i8 {
    let mut acc = Rat::zero();
    for c in poly.iter().rev() {
        acc = acc * x + c;
    }
    num_sign(&acc)
}

fn num_sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign at +infinity (leading coefficient) or -infinity.
fn sign_at_inf(poly: &[Rat], positive: bool) -> i8 {
    match poly.last() {
        None => 0,
        Some(lead) => {
            let s = num_sign(lead);
            if positive || (poly.len() - 1) % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

fn rat_coeffs(poly: &Poly) -> Result<Vec<Rat>> {
    poly.0.iter().map(|c| c.as_rat().cloned()).collect()
}

/// A Sturm chain for a squarefree rational polynomial.
pub struct SturmChain {
    chain: Vec<Vec<Rat>>,
}

impl SturmChain {
    /// Build the chain for the squarefree part of the input.
    pub fn new(poly: &Poly) -> Result<SturmChain> {
        let ctx = BaseCtx::Rat;
        if poly.is_zero() {
            return Err(WittError::ZeroInput);
        }
        let sf = poly.squarefree_part(&ctx)?;
        let mut chain: Vec<Poly> = vec![sf.clone(), sf.derivative(&ctx)?];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&ctx, &chain[n - 1])?;
            chain.push(r.neg(&ctx));
        }
        chain.pop();
        let chain = chain.into_iter().map(|p| rat_coeffs(&p)).collect::<Result<Vec<_>>>()?;
        Ok(SturmChain { chain })
    }

    fn variations_point(&self, pt: &Rat) -> u32 {
        let mut count = 0;
        let mut last: i8 = 0;
        for poly in &self.chain {
            let s = sign_at(poly, pt);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    fn variations_inf(&self, positive: bool) -> u32 {
        let mut count = 0;
        let mut last: i8 = 0;
        for poly in &self.chain {
            let s = sign_at_inf(poly, positive);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the open interval (a, b); the
    /// endpoints must not be roots.
    pub fn count_roots_between(&self, a: &Rat, b: &Rat) -> u32 {
        self.variations_point(a) - self.variations_point(b)
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> u32 {
        self.variations_inf(false) - self.variations_inf(true)
    }

    fn root_free_bound(&self) -> Rat {
        // Cauchy bound on the squarefree polynomial.
        let f = &self.chain[0];
        let lead = f.last().unwrap();
        let mut m = Rat::zero();
        for c in f.iter().take(f.len() - 1) {
            let a = (c / lead).abs();
            if a > m {
                m = a;
            }
        }
        m + Rat::one() + Rat::one()
    }

    /// Isolating intervals (a_i, b_i), pairwise disjoint and sorted, one per
    /// distinct real root; endpoints are never roots.
    pub fn isolate_roots(&self) -> Vec<(Rat, Rat)> {
        let total = self.count_real_roots();
        if total == 0 {
            return Vec::new();
        }
        let bound = self.root_free_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = self.count_roots_between(&a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push((a, b));
                continue;
            }
            let two = Rat::one() + Rat::one();
            let mut mid = (a.clone() + b.clone()) / two.clone();
            // Nudge off a root if the midpoint hits one.
            while sign_at(&self.chain[0], &mid) == 0 {
                mid = (a.clone() + mid) / two.clone();
            }
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        debug_assert_eq!(out.len() as u32, total);
        out
    }
}

/// Refine isolating intervals of several polynomials until globally disjoint,
/// returning the merged sorted list of (interval, owner indices).
pub fn isolate_all_roots(polys: &[Poly]) -> Result<Vec<(Rat, Rat)>> {
    let ctx = BaseCtx::Rat;
    // Product trick: roots of the product are the union of roots; Sturm on
    // the squarefree product isolates all of them at once.
    let mut prod = Poly::constant(ctx.one());
    for p in polys {
        if p.is_zero() {
            return Err(WittError::ZeroInput);
        }
        if !p.is_constant() {
            prod = prod.mul(&ctx, p)?;
        }
    }
    if prod.is_constant() {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&prod)?;
    Ok(chain.isolate_roots())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn q(n: i64) -> Rat {
        Rat::from_i64(n).unwrap()
    }

    #[test]
    fn divmod_roundtrip() {
        let ctx = BaseCtx::Rat;
        let f = Poly::from_ints(&ctx, &[2, 0, -3, 1, 4]);
        let g = Poly::from_ints(&ctx, &[1, 2, 1]);
        let (quot, rem) = f.divmod(&ctx, &g).unwrap();
        let back = quot.mul(&ctx, &g).unwrap().add(&ctx, &rem).unwrap();
        assert_eq!(back, f);
        assert!(rem.degree() < g.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let ctx = BaseCtx::Rat;
        let a = Poly::from_ints(&ctx, &[-1, 1]); // T - 1
        let b = Poly::from_ints(&ctx, &[1, 1]); // T + 1
        let c = Poly::from_ints(&ctx, &[2, 1]); // T + 2
        let f = a.mul(&ctx, &b).unwrap();
        let g = a.mul(&ctx, &c).unwrap();
        assert_eq!(f.gcd(&ctx, &g).unwrap(), a);
    }

    #[test]
    fn yun_decomposition() {
        let ctx = BaseCtx::Rat;
        let a = Poly::from_ints(&ctx, &[-1, 1]);
        let b = Poly::from_ints(&ctx, &[1, 0, 1]);
        let f = a
            .mul(&ctx, &a)
            .unwrap()
            .mul(&ctx, &a)
            .unwrap()
            .mul(&ctx, &b)
            .unwrap();
        let dec = f.squarefree_decomposition(&ctx).unwrap();
        assert_eq!(dec, vec![(1, b), (3, a)]);
    }

    #[test]
    fn irreducibility_examples() {
        use crate::field::FieldDescriptor as FD;
        let ctx = BaseCtx::Rat;
        let t2p1 = Poly::from_ints(&ctx, &[1, 0, 1]);
        let t2m1 = Poly::from_ints(&ctx, &[-1, 0, 1]);
        let t3m2 = Poly::from_ints(&ctx, &[-2, 0, 0, 1]);
        assert_eq!(irreducibility(&FD::Rationals, &t2p1).unwrap(), Irreducibility::Irreducible);
        assert_eq!(irreducibility(&FD::Rationals, &t2m1).unwrap(), Irreducibility::Reducible);
        assert_eq!(irreducibility(&FD::Rationals, &t3m2).unwrap(), Irreducibility::Irreducible);
        assert_eq!(irreducibility(&FD::RealClosed, &t2p1).unwrap(), Irreducibility::Irreducible);
        assert_eq!(irreducibility(&FD::RealClosed, &t3m2).unwrap(), Irreducibility::Reducible);
        // x^3 - 2 has the root 3 + O(5) in Q_5 (3^3 = 27 = 2 + 25).
        assert_eq!(irreducibility(&FD::PadicField(5), &t3m2).unwrap(), Irreducibility::Reducible);
        // x^3 - 2 has no root in Q_7: cubes mod 7 are {1, 6}.
        assert_eq!(irreducibility(&FD::PadicField(7), &t3m2).unwrap(), Irreducibility::Irreducible);
        // x^2 + 1 over F_3 and F_5.
        let f3 = FD::FiniteField(crate::field::FqDescriptor::prime(3));
        let f5 = FD::FiniteField(crate::field::FqDescriptor::prime(5));
        let c3 = BaseCtx::for_field(&f3).unwrap();
        let c5 = BaseCtx::for_field(&f5).unwrap();
        let p3 = Poly::from_ints(&c3, &[1, 0, 1]);
        let p5 = Poly::from_ints(&c5, &[1, 0, 1]);
        assert_eq!(irreducibility(&f3, &p3).unwrap(), Irreducibility::Irreducible);
        assert_eq!(irreducibility(&f5, &p5).unwrap(), Irreducibility::Reducible);
    }

    #[test]
    fn rational_roots_found() {
        let ctx = BaseCtx::Rat;
        // 6T^3 + T^2 - 5T - 2 has roots 1, -2/3... check: f(1) = 0.
        let f = Poly::from_ints(&ctx, &[-2, -5, 1, 6]);
        let roots = rational_roots(&f).unwrap();
        assert!(roots.contains(&q(1)));
        for r in &roots {
            assert!(f.eval(&ctx, &BaseElem::Rat(r.clone())).unwrap().is_zero());
        }
    }

    #[test]
    fn sturm_counts_and_isolation() {
        let ctx = BaseCtx::Rat;
        // (T^2 - 2)(T - 3): three real roots.
        let f = Poly::from_ints(&ctx, &[-2, 0, 1])
            .mul(&ctx, &Poly::from_ints(&ctx, &[-3, 1]))
            .unwrap();
        let chain = SturmChain::new(&f).unwrap();
        assert_eq!(chain.count_real_roots(), 3);
        let iso = chain.isolate_roots();
        assert_eq!(iso.len(), 3);
        for w in iso.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
        // T^2 + 1: none.
        let g = Poly::from_ints(&ctx, &[1, 0, 1]);
        assert_eq!(SturmChain::new(&g).unwrap().count_real_roots(), 0);
        // Repeated roots count once.
        let h = f.mul(&ctx, &f).unwrap();
        assert_eq!(SturmChain::new(&h).unwrap().count_real_roots(), 3);
    }
}
