//! Diagonal quadratic forms, classical invariants, isotropy tests, and Witt
//! decomposition over the supported base fields.
//!
//! The Hasse invariant convention is the raw product eps(q) =
//! prod_{i<j} (a_i, a_j)_p; no correction factors are applied. Over Q,
//! isotropy is decided by Hasse-Minkowski over the finitely many relevant
//! places, and anisotropic kernels are reconstructed from invariants.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::elem::{self, FieldElement, SquareClass};
use crate::error::WittError;
use crate::field::{BaseCtx, BaseElem, FieldDescriptor, FqCtx};
use crate::intarith::{self, QPlace};
use crate::poly::{isolate_all_roots, Poly};
use crate::{Int, Rat, Result};

/// A nondegenerate diagonal quadratic form over a supported field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiagonalForm {
    pub field: FieldDescriptor,
    pub entries: Vec<FieldElement>,
}

impl DiagonalForm {
    /// Build a form, normalizing finite-field entries to coordinate form.
    pub fn new(field: FieldDescriptor, entries: Vec<FieldElement>) -> Result<DiagonalForm> {
        let mut norm = Vec::with_capacity(entries.len());
        for e in entries {
            if e.is_zero() {
                return Err(WittError::ZeroInput);
            }
            norm.push(normalize_entry(&field, e)?);
        }
        Ok(DiagonalForm { field, entries: norm })
    }

    /// The zero form.
    pub fn empty(field: FieldDescriptor) -> DiagonalForm {
        DiagonalForm { field, entries: Vec::new() }
    }

    /// Build from small integers (characteristic-zero style entries are
    /// reinterpreted over finite fields).
    pub fn from_ints(field: &FieldDescriptor, entries: &[i64]) -> Result<DiagonalForm> {
        let elems = entries.iter().map(|&n| FieldElement::from_int(n)).collect();
        DiagonalForm::new(field.clone(), elems)
    }

    /// The hyperbolic plane <1, -1>.
    pub fn hyperbolic(field: &FieldDescriptor) -> DiagonalForm {
        DiagonalForm::from_ints(field, &[1, -1]).expect("hyperbolic plane")
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Orthogonal sum.
    pub fn direct_sum(&self, other: &DiagonalForm) -> Result<DiagonalForm> {
        if self.field != other.field {
            return Err(WittError::FieldMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(DiagonalForm { field: self.field.clone(), entries })
    }

    /// Tensor product, entries in row-major order.
    pub fn tensor(&self, other: &DiagonalForm) -> Result<DiagonalForm> {
        if self.field != other.field {
            return Err(WittError::FieldMismatch);
        }
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(elem::mul_elements(&self.field, a, b)?);
            }
        }
        Ok(DiagonalForm { field: self.field.clone(), entries })
    }

    /// Scale by <c>.
    pub fn scale(&self, c: &FieldElement) -> Result<DiagonalForm> {
        if c.is_zero() {
            return Err(WittError::ZeroInput);
        }
        let mut entries = Vec::with_capacity(self.dim());
        for a in &self.entries {
            entries.push(elem::mul_elements(&self.field, a, c)?);
        }
        Ok(DiagonalForm { field: self.field.clone(), entries })
    }

    /// <-1> tensor self.
    pub fn neg(&self) -> Result<DiagonalForm> {
        self.scale(&FieldElement::from_int(-1))
    }

    /// m copies of self.
    pub fn repeat(&self, m: usize) -> DiagonalForm {
        let mut entries = Vec::with_capacity(self.dim() * m);
        for _ in 0..m {
            entries.extend(self.entries.iter().cloned());
        }
        DiagonalForm { field: self.field.clone(), entries }
    }

    /// Product of the entries.
    pub fn det_element(&self) -> Result<FieldElement> {
        let mut acc = match &self.field {
            FieldDescriptor::FiniteField(fq) => {
                FieldElement::Base(BaseElem::Fq(FqCtx::new(fq.clone()).one()))
            }
            _ => FieldElement::from_int(1),
        };
        for a in &self.entries {
            acc = elem::mul_elements(&self.field, &acc, a)?;
        }
        Ok(acc)
    }

    /// Signature over Q or R: sum of entry signs.
    pub fn signature(&self) -> Result<i64> {
        match &self.field {
            FieldDescriptor::Rationals | FieldDescriptor::RealClosed => {
                let mut s = 0i64;
                for a in &self.entries {
                    if a.as_base()?.as_rat()?.is_positive() {
                        s += 1;
                    } else {
                        s -= 1;
                    }
                }
                Ok(s)
            }
            _ => Err(WittError::UnsupportedField(
                "signature requires an ordered base field".to_owned(),
            )),
        }
    }

    pub fn render(&self) -> alloc::string::String {
        let inner: Vec<alloc::string::String> =
            self.entries.iter().map(|e| e.render()).collect();
        format!("<{}>", inner.join(","))
    }
}

fn normalize_entry(field: &FieldDescriptor, e: FieldElement) -> Result<FieldElement> {
    match field {
        FieldDescriptor::FiniteField(fq) => {
            let ctx = FqCtx::new(fq.clone());
            match e {
                FieldElement::Base(BaseElem::Rat(x)) => {
                    let v = ctx.from_rat(&x)?;
                    if v.iter().all(|&c| c == 0) {
                        return Err(WittError::ZeroInput);
                    }
                    Ok(FieldElement::Base(BaseElem::Fq(v)))
                }
                FieldElement::Base(BaseElem::Fq(v)) => {
                    if v.len() != ctx.d() {
                        return Err(WittError::Domain("wrong coordinate length".to_owned()));
                    }
                    Ok(FieldElement::Base(BaseElem::Fq(v)))
                }
                FieldElement::Func(_) => Err(WittError::FieldMismatch),
            }
        }
        FieldDescriptor::FunctionField(base) => match e {
            FieldElement::Func(f) => match **base {
                FieldDescriptor::FiniteField(_) => Ok(FieldElement::Func(f)),
                _ => Ok(FieldElement::Func(f)),
            },
            FieldElement::Base(b) => Ok(FieldElement::Base(b)),
        },
        _ => match e {
            FieldElement::Base(BaseElem::Rat(_)) => Ok(e),
            _ => Err(WittError::FieldMismatch),
        },
    }
}

/// Classical invariants of a form over Q, R, F_q, or Q_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    pub dim: usize,
    pub det: SquareClass,
    /// Signed discriminant (-1)^{n(n-1)/2} det.
    pub signed_disc: SquareClass,
    /// Hasse invariants at the relevant places (Q: 2, odd divisors, infinity;
    /// Q_p: the single place p; empty otherwise).
    pub hasse: Vec<(QPlace, i8)>,
    /// Total signature for ordered base fields.
    pub signature: Option<i64>,
}

/// Hasse invariant prod_{i<j} (a_i, a_j) at one place, for rational entries.
pub fn hasse_at(place: QPlace, entries: &[Rat]) -> Result<i8> {
    let mut eps = 1i8;
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            eps *= intarith::hilbert_symbol(place, &entries[i], &entries[j])?;
        }
    }
    Ok(eps)
}

fn rational_entries(q: &DiagonalForm) -> Result<Vec<Rat>> {
    q.entries
        .iter()
        .map(|e| e.as_base().and_then(|b| b.as_rat().cloned()))
        .collect()
}

/// Compute the invariants of a form over Q, R, F_q, or Q_p.
pub fn invariants(q: &DiagonalForm) -> Result<FormInvariants> {
    let field = &q.field;
    if field.is_function_field() {
        return Err(WittError::UnsupportedField(
            "invariants over k(T) are accessed through residues".to_owned(),
        ));
    }
    let det_elem = q.det_element()?;
    let det = elem::canonical_square_class(field, &det_elem)?;
    let n = q.dim();
    let sign_exp = (n * n.saturating_sub(1) / 2) % 2;
    let signed_elem = if sign_exp == 1 {
        elem::mul_elements(field, &det_elem, &FieldElement::from_int(-1))?
    } else {
        det_elem.clone()
    };
    let signed_disc = elem::canonical_square_class(field, &signed_elem)?;
    let (hasse, signature) = match field {
        FieldDescriptor::Rationals => {
            let ents = rational_entries(q)?;
            let places = intarith::relevant_places(&ents)?;
            let mut hasse = Vec::new();
            for place in places {
                hasse.push((place, hasse_at(place, &ents)?));
            }
            (hasse, Some(q.signature()?))
        }
        FieldDescriptor::PadicField(p) => {
            let ents = rational_entries(q)?;
            let place = QPlace::Prime(*p);
            (vec![(place, hasse_at(place, &ents)?)], None)
        }
        FieldDescriptor::RealClosed => (Vec::new(), Some(q.signature()?)),
        _ => (Vec::new(), None),
    };
    Ok(FormInvariants { dim: n, det, signed_disc, hasse, signature })
}

/// Is the form isotropic (does it represent zero nontrivially)?
pub fn is_isotropic(q: &DiagonalForm) -> Result<bool> {
    let n = q.dim();
    if n <= 1 {
        return Ok(false);
    }
    match &q.field {
        FieldDescriptor::RealClosed => {
            let mut pos = false;
            let mut neg = false;
            for a in &q.entries {
                if a.as_base()?.as_rat()?.is_positive() {
                    pos = true;
                } else {
                    neg = true;
                }
            }
            Ok(pos && neg)
        }
        FieldDescriptor::SquareClosed => Ok(n >= 2),
        FieldDescriptor::FiniteField(_) => {
            if n >= 3 {
                return Ok(true);
            }
            let prod = elem::mul_elements(&q.field, &q.entries[0], &q.entries[1])?;
            let neg = elem::neg_element(&q.field, &prod)?;
            elem::is_square(&q.field, &neg)
        }
        FieldDescriptor::PadicField(p) => {
            let ents = rational_entries(q)?;
            is_isotropic_local(*p, &ents)
        }
        FieldDescriptor::Rationals => {
            let ents = rational_entries(q)?;
            // Hasse-Minkowski over the relevant places.
            if n == 2 {
                let prod = -(&ents[0] * &ents[1]);
                return intarith::is_square_rat(&prod);
            }
            let mut pos = 0usize;
            let mut neg = 0usize;
            for a in &ents {
                if a.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
            }
            if pos == 0 || neg == 0 {
                return Ok(false);
            }
            if n >= 5 {
                // Indefinite of dimension >= 5 is isotropic.
                return Ok(true);
            }
            for place in intarith::relevant_places(&ents)? {
                if let QPlace::Prime(p) = place {
                    if !is_isotropic_local(p, &ents)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        FieldDescriptor::FunctionField(_) => Err(WittError::UnsupportedField(
            "isotropy over k(T) is not decided directly".to_owned(),
        )),
    }
}

/// Isotropy of a rational-entry form over Q_p (p = 2 allowed).
fn is_isotropic_local(p: u64, entries: &[Rat]) -> Result<bool> {
    let n = entries.len();
    if n <= 1 {
        return Ok(false);
    }
    if n >= 5 {
        return Ok(true);
    }
    let place = QPlace::Prime(p);
    let det: Rat = entries.iter().product();
    match n {
        2 => intarith::is_square_padic(&-det, p),
        3 => {
            // Isotropic iff eps = (-1, -det)_p.
            let eps = hasse_at(place, entries)?;
            let target = intarith::hilbert_symbol(place, &-Rat::one(), &-det)?;
            Ok(eps == target)
        }
        4 => {
            // Anisotropic iff det is a square and eps = -(-1,-1)_p.
            let eps = hasse_at(place, entries)?;
            let minus_one = -Rat::one();
            let ref_sym = intarith::hilbert_symbol(place, &minus_one, &minus_one)?;
            if intarith::is_square_padic(&det, p)? {
                Ok(eps == ref_sym)
            } else {
                Ok(true)
            }
        }
        _ => unreachable!(),
    }
}

/// Witt decomposition q = kernel + index * H with an anisotropic kernel in
/// canonical shape.
pub fn witt_decompose(q: &DiagonalForm) -> Result<(DiagonalForm, usize)> {
    let n = q.dim();
    match &q.field {
        FieldDescriptor::RealClosed => {
            let sig = q.signature()?;
            let m = (n as i64 - sig.abs()) / 2;
            let sign = if sig >= 0 { 1 } else { -1 };
            let kernel = DiagonalForm::from_ints(&q.field, &vec![sign; sig.unsigned_abs() as usize])?;
            Ok((kernel, m as usize))
        }
        FieldDescriptor::SquareClosed => {
            let kernel = if n % 2 == 1 {
                DiagonalForm::from_ints(&q.field, &[1])?
            } else {
                DiagonalForm::empty(q.field.clone())
            };
            Ok((kernel, n / 2))
        }
        FieldDescriptor::FiniteField(fq) => {
            let ctx = FqCtx::new(fq.clone());
            let det = q.det_element()?;
            let minus_one = FieldElement::Base(BaseElem::Fq(ctx.from_int(-1)));
            if n % 2 == 0 {
                // Hyperbolic iff det = (-1)^{n/2}.
                let target = power_class(&q.field, &minus_one, n / 2)?;
                if elem::same_square_class(&q.field, &det, &target)? {
                    return Ok((DiagonalForm::empty(q.field.clone()), n / 2));
                }
                // The unique anisotropic binary form: <1, -s>.
                let s = FieldElement::Base(BaseElem::Fq(ctx.least_nonresidue()));
                let neg_s = elem::neg_element(&q.field, &s)?;
                let kernel = DiagonalForm::new(q.field.clone(), vec![
                    FieldElement::Base(BaseElem::Fq(ctx.one())),
                    neg_s,
                ])?;
                Ok((kernel, (n - 2) / 2))
            } else {
                let m = (n - 1) / 2;
                let adj = power_class(&q.field, &minus_one, m)?;
                let c = elem::mul_elements(&q.field, &det, &adj)?;
                let rep = elem::canonical_square_class(&q.field, &c)?.representative;
                let kernel = DiagonalForm::new(q.field.clone(), vec![rep])?;
                Ok((kernel, m))
            }
        }
        FieldDescriptor::PadicField(p) => witt_decompose_padic(q, *p),
        FieldDescriptor::Rationals => witt_decompose_rational(q),
        FieldDescriptor::FunctionField(_) => Err(WittError::UnsupportedField(
            "Witt decomposition over k(T) is accessed through residues".to_owned(),
        )),
    }
}

fn power_class(field: &FieldDescriptor, a: &FieldElement, e: usize) -> Result<FieldElement> {
    if e % 2 == 0 {
        Ok(match field {
            FieldDescriptor::FiniteField(fq) => {
                FieldElement::Base(BaseElem::Fq(FqCtx::new(fq.clone()).one()))
            }
            _ => FieldElement::from_int(1),
        })
    } else {
        Ok(a.clone())
    }
}

/// Canonical square-class entry values for candidate kernels over Q_p.
fn padic_class_reps(p: u64) -> Vec<Rat> {
    if p == 2 {
        [1i64, 3, 5, 7, 2, 6, 10, 14]
            .iter()
            .map(|&n| Rat::from(Int::from(n)))
            .collect()
    } else {
        let u = intarith::least_nonresidue(p) as i64;
        [1, u, p as i64, p as i64 * u]
            .iter()
            .map(|&n| Rat::from(Int::from(n)))
            .collect()
    }
}

fn witt_decompose_padic(q: &DiagonalForm, p: u64) -> Result<(DiagonalForm, usize)> {
    let n = q.dim();
    let ents = rational_entries(q)?;
    let place = QPlace::Prime(p);
    let det = elem::canonical_square_class(&q.field, &q.det_element()?)?;
    let det_rat = det.representative.as_base()?.as_rat()?.clone();
    let eps = hasse_at(place, &ents)?;
    let reps = padic_class_reps(p);
    let mut d = n % 2;
    while d <= n.min(4) {
        let m = (n - d) / 2;
        // Enumerate candidate anisotropic kernels of dimension d in
        // lexicographic order over canonical class representatives.
        let mut indices = vec![0usize; d];
        loop {
            let cand: Vec<Rat> = indices.iter().map(|&i| reps[i].clone()).collect();
            if candidate_matches(p, &cand, m, &det_rat, eps)? {
                let entries = cand.into_iter().map(FieldElement::from_rat).collect();
                let kernel = DiagonalForm::new(q.field.clone(), entries)?;
                return Ok((kernel, m));
            }
            // Advance the odometer.
            let mut i = d;
            loop {
                if i == 0 {
                    break;
                }
                indices[i - 1] += 1;
                if indices[i - 1] < reps.len() {
                    break;
                }
                indices[i - 1] = 0;
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
        d += 2;
        if d == 0 {
            d = 2;
        }
    }
    Err(WittError::InternalGuard(format!(
        "no anisotropic kernel found over Q_{}",
        p
    )))
}

/// Does the candidate kernel, plus m hyperbolic planes, reproduce the
/// invariants (and is it anisotropic)?
fn candidate_matches(p: u64, cand: &[Rat], m: usize, det: &Rat, eps: i8) -> Result<bool> {
    if !cand.is_empty() && is_isotropic_local(p, cand)? {
        return Ok(false);
    }
    let mut full: Vec<Rat> = cand.to_vec();
    for _ in 0..m {
        full.push(Rat::one());
        full.push(-Rat::one());
    }
    let place = QPlace::Prime(p);
    let full_det: Rat = full.iter().product();
    let quot = full_det / det.clone();
    if !intarith::is_square_padic(&quot, p)? {
        return Ok(false);
    }
    Ok(hasse_at(place, &full)? == eps)
}

fn witt_decompose_rational(q: &DiagonalForm) -> Result<(DiagonalForm, usize)> {
    let n = q.dim();
    let ents = rational_entries(q)?;
    let sig = q.signature()?;
    let det: Rat = ents.iter().product();
    let det_sf = Rat::from(intarith::squarefree_part(&det)?);
    let places = intarith::relevant_places(&ents)?;
    let mut d = n % 2;
    loop {
        if d > n {
            return Err(WittError::InternalGuard("no anisotropic kernel found over Q".to_owned()));
        }
        if (d as i64) < sig.abs() {
            d += 2;
            continue;
        }
        let m = (n - d) / 2;
        // Kernel invariant targets.
        let minus_one_pow = if m % 2 == 1 { -Rat::one() } else { Rat::one() };
        let det_c = Rat::from(intarith::squarefree_part(&(det_sf.clone() * minus_one_pow))?);
        if d == 0 {
            // Candidate empty kernel: q must be m * H.
            let hyp: Vec<Rat> = core::iter::repeat([Rat::one(), -Rat::one()])
                .take(m)
                .flatten()
                .collect();
            if sig == 0
                && intarith::is_square_rat(&(det.clone() / hyp.iter().product::<Rat>()))?
                && places
                    .iter()
                    .all(|&pl| hasse_at(pl, &ents).unwrap() == hasse_at(pl, &hyp).unwrap())
            {
                return Ok((DiagonalForm::empty(q.field.clone()), m));
            }
            d += 2;
            continue;
        }
        // Hasse targets for the kernel at each relevant place:
        // eps(q) = eps(c) * eps(mH) * (det c, (-1)^m).
        let mut eps_c: Vec<(QPlace, i8)> = Vec::new();
        let hyp: Vec<Rat> = core::iter::repeat([Rat::one(), -Rat::one()])
            .take(m)
            .flatten()
            .collect();
        let mo = if m % 2 == 1 { -Rat::one() } else { Rat::one() };
        for &pl in &places {
            let eq = hasse_at(pl, &ents)?;
            let eh = hasse_at(pl, &hyp)?;
            let cross = intarith::hilbert_symbol(pl, &det_c, &mo)?;
            eps_c.push((pl, eq * eh * cross));
        }
        // Keep only the -1 places: the target data is then intrinsic to the
        // Witt class, making the constructed kernel canonical.
        eps_c.retain(|&(_, e)| e == -1);
        if let Some(kernel) = construct_anisotropic(d, sig, &det_c, &eps_c)? {
            // Final verification: the kernel plus m H matches q at every
            // place relevant to either form.
            let mut full = kernel.clone();
            full.extend(hyp.iter().cloned());
            let mut all_vals = ents.clone();
            all_vals.extend(kernel.iter().cloned());
            let mut ok = intarith::is_square_rat(&(full.iter().product::<Rat>() / det.clone()))?;
            let ksig: i64 = kernel.iter().map(|x| if x.is_positive() { 1 } else { -1 }).sum();
            ok = ok && ksig == sig;
            if ok {
                for pl in intarith::relevant_places(&all_vals)? {
                    if hasse_at(pl, &full)? != hasse_at(pl, &ents)? {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let entries = kernel.into_iter().map(FieldElement::from_rat).collect();
                let kform = DiagonalForm::new(q.field.clone(), entries)?;
                if !is_isotropic(&kform)? {
                    return Ok((kform, m));
                }
            }
        }
        d += 2;
    }
}

/// Candidate values for entry searches: signed squarefree products over a
/// prime pool derived from the target data.
fn search_values(det_c: &Rat, eps_c: &[(QPlace, i8)]) -> Result<Vec<Rat>> {
    let mut pool: Vec<u64> = vec![2];
    for (p, _) in intarith::factor_rat(det_c)? {
        if !pool.contains(&p) {
            pool.push(p);
        }
    }
    for &(pl, _) in eps_c {
        if let QPlace::Prime(p) = pl {
            if !pool.contains(&p) {
                pool.push(p);
            }
        }
    }
    for extra in [3u64, 5, 7] {
        if !pool.contains(&extra) {
            pool.push(extra);
        }
    }
    pool.sort_unstable();
    // Subsets of the pool, by increasing size, both signs.
    let k = pool.len().min(16);
    let mut out: Vec<Rat> = Vec::new();
    let mut masks: Vec<u32> = (0..(1u32 << k)).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let mut v = Int::one();
        for (i, &p) in pool.iter().enumerate().take(k) {
            if mask & (1 << i) != 0 {
                v *= Int::from(p);
            }
        }
        out.push(Rat::from(v.clone()));
        out.push(Rat::from(-v));
    }
    Ok(out)
}

/// Construct an anisotropic rational form of dimension d with the given
/// signature, determinant class, and Hasse data, if one exists within the
/// search pool. Entries are kept squarefree.
fn construct_anisotropic(
    d: usize,
    sig: i64,
    det_c: &Rat,
    eps_c: &[(QPlace, i8)],
) -> Result<Option<Vec<Rat>>> {
    debug_assert!(sig.unsigned_abs() as usize <= d && (d as i64 - sig) % 2 == 0);
    match d {
        0 => Ok(Some(Vec::new())),
        1 => {
            // <det_c>; check the sign and that eps (empty product) matches.
            if (det_c.is_positive() && sig == 1) || (det_c.is_negative() && sig == -1) {
                for &(pl, e) in eps_c {
                    let _ = pl;
                    if e != 1 {
                        return Ok(None);
                    }
                }
                Ok(Some(vec![det_c.clone()]))
            } else {
                Ok(None)
            }
        }
        2 => {
            // <a, a det_c> up to squares has det det_c and eps = (a, a det_c)
            // ... search a. Also require anisotropy: -det_c not a square.
            if intarith::is_square_rat(&-det_c.clone())? {
                return Ok(None);
            }
            for a in search_values(det_c, eps_c)? {
                if a.is_zero() {
                    continue;
                }
                let b = Rat::from(intarith::squarefree_part(&(a.clone() * det_c))?);
                let cand = vec![a.clone(), b.clone()];
                let csig: i64 = cand.iter().map(|x| if x.is_positive() { 1 } else { -1 }).sum();
                if csig != sig {
                    continue;
                }
                let mut ok = true;
                let mut vals = cand.clone();
                vals.push(det_c.clone());
                for &(pl, _) in eps_c {
                    if let QPlace::Prime(p) = pl {
                        vals.push(Rat::from(Int::from(p)));
                    }
                }
                for pl in intarith::relevant_places(&vals)? {
                    let eps = hasse_at(pl, &cand)?;
                    let target = eps_c.iter().find(|&&(q, _)| q == pl).map(|&(_, e)| e).unwrap_or(1);
                    if eps != target {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(Some(cand));
                }
            }
            Ok(None)
        }
        3 | 4 => {
            // Peel off one entry <e> and recurse.
            for e in search_values(det_c, eps_c)? {
                if e.is_zero() {
                    continue;
                }
                let es = if e.is_positive() { 1i64 } else { -1 };
                let rem_sig = sig - es;
                if rem_sig.unsigned_abs() as usize > d - 1 {
                    continue;
                }
                let rem_det = Rat::from(intarith::squarefree_part(&(det_c / e.clone()))?);
                // eps(<e> + beta) = eps(beta) * (e, det beta).
                let mut vals = vec![e.clone(), rem_det.clone(), det_c.clone()];
                for &(pl, _) in eps_c {
                    if let QPlace::Prime(p) = pl {
                        vals.push(Rat::from(Int::from(p)));
                    }
                }
                let mut rem_eps = Vec::new();
                for pl in intarith::relevant_places(&vals)? {
                    let target = eps_c.iter().find(|&&(q, _)| q == pl).map(|&(_, t)| t).unwrap_or(1);
                    let cross = intarith::hilbert_symbol(pl, &e, &rem_det)?;
                    rem_eps.push((pl, target * cross));
                }
                if let Some(mut rest) = construct_anisotropic(d - 1, rem_sig, &rem_det, &rem_eps)? {
                    let mut cand = vec![e.clone()];
                    cand.append(&mut rest);
                    let form = DiagonalForm::new(
                        FieldDescriptor::Rationals,
                        cand.iter().cloned().map(FieldElement::from_rat).collect(),
                    )?;
                    if !is_isotropic(&form)? {
                        return Ok(Some(cand));
                    }
                }
            }
            Ok(None)
        }
        _ => {
            // Dimension >= 5 anisotropic over Q must be definite.
            if sig.unsigned_abs() as usize != d {
                return Ok(None);
            }
            let s = if sig > 0 { Rat::one() } else { -Rat::one() };
            // Split off |d| - 4 entries <s> and construct a definite 4-dim
            // form with the remaining invariants.
            let mut cand: Vec<Rat> = vec![s.clone(); d - 4];
            let mut rem_det = det_c.clone();
            if (d - 4) % 2 == 1 {
                rem_det = Rat::from(intarith::squarefree_part(&(rem_det / s.clone()))?);
            }
            // eps(<s,...,s> + beta): the peeled entries are +-1; fold their
            // pairwise symbols and the cross term into the target.
            let mut rem_eps = Vec::new();
            let mut vals = vec![rem_det.clone(), det_c.clone()];
            for &(pl, _) in eps_c {
                if let QPlace::Prime(p) = pl {
                    vals.push(Rat::from(Int::from(p)));
                }
            }
            for pl in intarith::relevant_places(&vals)? {
                let target = eps_c.iter().find(|&&(q, _)| q == pl).map(|&(_, t)| t).unwrap_or(1);
                let head = hasse_at(pl, &cand)?;
                let head_det = cand.iter().product::<Rat>();
                let cross = intarith::hilbert_symbol(pl, &head_det, &rem_det)?;
                rem_eps.push((pl, target * head * cross));
            }
            let rem_sig = if sig > 0 { 4 } else { -4 };
            match construct_anisotropic(4, rem_sig, &rem_det, &rem_eps)? {
                Some(mut rest) => {
                    cand.append(&mut rest);
                    Ok(Some(cand))
                }
                None => Ok(None),
            }
        }
    }
}

/// Piecewise-constant signature function of a form over k(T), k real.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureFunction {
    /// Isolating intervals for the breakpoints, sorted and disjoint.
    pub breakpoints: Vec<(Rat, Rat)>,
    /// Signature values on the open intervals between breakpoints; length is
    /// breakpoints + 1. Empty descriptor for nonreal bases.
    pub values: Vec<i64>,
}

impl SignatureFunction {
    pub fn is_identically_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// Compute the signature function of a form over FunctionField(Q | R).
pub fn signature_function(q: &DiagonalForm) -> Result<SignatureFunction> {
    let base = match &q.field {
        FieldDescriptor::FunctionField(base) => base,
        _ => {
            return Err(WittError::UnsupportedField(
                "signature_function requires a function field".to_owned(),
            ))
        }
    };
    if !base.is_real() {
        return Ok(SignatureFunction { breakpoints: Vec::new(), values: Vec::new() });
    }
    let ctx = BaseCtx::Rat;
    // Collect the distinct factor polynomials of all entries.
    let mut polys: Vec<Poly> = Vec::new();
    for e in &q.entries {
        let f = e.to_factored();
        if f.constant.is_zero() {
            return Err(WittError::ZeroInput);
        }
        for (p, _) in &f.factors {
            if !polys.contains(p) {
                polys.push(p.clone());
            }
        }
    }
    let intervals = isolate_all_roots(&polys)?;
    // Sample points: before, between, and after the isolating intervals.
    let mut samples: Vec<Rat> = Vec::new();
    if intervals.is_empty() {
        samples.push(Rat::zero());
    } else {
        samples.push(intervals[0].0.clone() - Rat::one());
        for w in intervals.windows(2) {
            let two = Rat::one() + Rat::one();
            samples.push((w[0].1.clone() + w[1].0.clone()) / two);
        }
        samples.push(intervals.last().unwrap().1.clone() + Rat::one());
    }
    let mut values = Vec::with_capacity(samples.len());
    for t in &samples {
        let x = BaseElem::Rat(t.clone());
        let mut sig = 0i64;
        for e in &q.entries {
            let f = e.to_factored();
            let mut s = if f.constant.as_rat()?.is_positive() { 1i64 } else { -1 };
            for (p, exp) in &f.factors {
                let v = p.eval(&ctx, &x)?;
                let v = v.as_rat()?;
                if v.is_zero() {
                    return Err(WittError::InternalGuard(
                        "sample point hit a root".to_owned(),
                    ));
                }
                if v.is_negative() && exp.rem_euclid(2) == 1 {
                    s = -s;
                }
            }
            sig += s;
        }
        values.push(sig);
    }
    Ok(SignatureFunction { breakpoints: intervals, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::Factored;
    use crate::field::FqDescriptor;
    use alloc::boxed::Box;

    fn q_field() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn qp(p: u64) -> FieldDescriptor {
        FieldDescriptor::PadicField(p)
    }

    #[test]
    fn sums_and_tensors() {
        let f = q_field();
        let a = DiagonalForm::from_ints(&f, &[1]).unwrap();
        let b = DiagonalForm::from_ints(&f, &[-1]).unwrap();
        let h = a.direct_sum(&b).unwrap();
        assert_eq!(h, DiagonalForm::hyperbolic(&f));
        let empty = DiagonalForm::empty(f.clone());
        let s = DiagonalForm::from_ints(&f, &[1, 2]).unwrap();
        assert_eq!(s.direct_sum(&empty).unwrap(), s);
        let neg_h = h.neg().unwrap();
        assert_eq!(neg_h, DiagonalForm::from_ints(&f, &[-1, 1]).unwrap());
        let t = DiagonalForm::from_ints(&f, &[3]).unwrap();
        let tt = t.tensor(&t).unwrap();
        assert_eq!(tt, DiagonalForm::from_ints(&f, &[9]).unwrap());
    }

    #[test]
    fn invariant_examples() {
        let f = q_field();
        let h = DiagonalForm::hyperbolic(&f);
        let inv = invariants(&h).unwrap();
        assert_eq!(inv.dim, 2);
        assert_eq!(inv.signed_disc.representative, FieldElement::from_int(1));
        assert_eq!(inv.signature, Some(0));
        let p4 = DiagonalForm::from_ints(&f, &[1, 1, 1, 1]).unwrap();
        let inv4 = invariants(&p4).unwrap();
        assert_eq!(inv4.signature, Some(4));
        assert_eq!(inv4.det.representative, FieldElement::from_int(1));
    }

    #[test]
    fn quaternion_invariants_over_q3() {
        // (a, b) = (-1, 3) has (a,b)_3 = -1; the norm form <1,-a,-b,ab>
        // = <1, 1, -3, -3> has d = 1 and eps = -(-1,-1)_3.
        let f = qp(3);
        let q = DiagonalForm::from_ints(&f, &[1, 1, -3, -3]).unwrap();
        let inv = invariants(&q).unwrap();
        assert_eq!(inv.signed_disc.representative, FieldElement::from_int(1));
        let eps = inv.hasse[0].1;
        let ref_sym = intarith::hilbert_symbol(QPlace::Prime(3), &-Rat::one(), &-Rat::one()).unwrap();
        assert_eq!(eps, -ref_sym);
        assert!(!is_isotropic(&q).unwrap());
        let (kernel, index) = witt_decompose(&q).unwrap();
        assert_eq!(kernel.dim(), 4);
        assert_eq!(index, 0);
    }

    #[test]
    fn isotropy_examples() {
        let f = q_field();
        assert!(is_isotropic(&DiagonalForm::hyperbolic(&f)).unwrap());
        let r = FieldDescriptor::RealClosed;
        assert!(!is_isotropic(&DiagonalForm::from_ints(&r, &[1, 1]).unwrap()).unwrap());
        // <1,-3,1,-3> over Q is anisotropic (quaternion norm form at 3).
        let qq = DiagonalForm::from_ints(&f, &[1, -3, 1, -3]).unwrap();
        assert!(!is_isotropic(&qq).unwrap());
        // <1,1,-3> over Q: isotropic at 3? eps = (1,1)(1,-3)(1,-3) = 1,
        // target (-1, 3)_3 = -1 -> anisotropic over Q_3, hence over Q.
        let q3form = DiagonalForm::from_ints(&f, &[1, 1, -3]).unwrap();
        assert!(!is_isotropic(&q3form).unwrap());
        // Five-dimensional indefinite forms are isotropic.
        let five = DiagonalForm::from_ints(&f, &[1, 1, 1, 1, -3]).unwrap();
        assert!(is_isotropic(&five).unwrap());
        // Finite fields: dim 3 always isotropic; dim 2 by -det.
        let f5 = FieldDescriptor::FiniteField(FqDescriptor::prime(5));
        assert!(is_isotropic(&DiagonalForm::from_ints(&f5, &[1, 1, 1]).unwrap()).unwrap());
        // <1,1> over F_5: -1 = 4 is a square -> isotropic.
        assert!(is_isotropic(&DiagonalForm::from_ints(&f5, &[1, 1]).unwrap()).unwrap());
        let f7 = FieldDescriptor::FiniteField(FqDescriptor::prime(7));
        // -1 = 6 is not a square mod 7 -> <1,1> anisotropic.
        assert!(!is_isotropic(&DiagonalForm::from_ints(&f7, &[1, 1]).unwrap()).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let f = q_field();
        let q = DiagonalForm::from_ints(&f, &[1, -1, 1, -1]).unwrap();
        let (kernel, m) = witt_decompose(&q).unwrap();
        assert_eq!(kernel.dim(), 0);
        assert_eq!(m, 2);
        let pos = DiagonalForm::from_ints(&f, &[1, 1, 1, 1]).unwrap();
        let (kernel, m) = witt_decompose(&pos).unwrap();
        assert_eq!(kernel.dim(), 4);
        assert_eq!(m, 0);
        // <1, -3, 1, -3> over Q: anisotropic.
        let an = DiagonalForm::from_ints(&f, &[1, -3, 1, -3]).unwrap();
        let (kernel, m) = witt_decompose(&an).unwrap();
        assert_eq!(kernel.dim(), 4);
        assert_eq!(m, 0);
        // <1, -3, 3, -1, 2>: contains hyperbolic pieces.
        let mixed = DiagonalForm::from_ints(&f, &[1, -3, 3, -1, 2]).unwrap();
        let (kernel, m) = witt_decompose(&mixed).unwrap();
        assert_eq!(kernel.dim() + 2 * m, 5);
        assert!(!is_isotropic(&kernel).unwrap());
        // Verify invariants of kernel + mH match.
        let mut rebuilt = kernel.clone();
        for _ in 0..m {
            rebuilt = rebuilt.direct_sum(&DiagonalForm::hyperbolic(&f)).unwrap();
        }
        let i1 = invariants(&mixed).unwrap();
        let i2 = invariants(&rebuilt).unwrap();
        assert_eq!(i1.det, i2.det);
        assert_eq!(i1.signature, i2.signature);
    }

    #[test]
    fn decompose_padic_exhaustive_small() {
        // Over Q_3 and Q_5: random-ish forms of dim <= 4 from class reps;
        // check kernel anisotropic and invariants preserved.
        for p in [3u64, 5] {
            let field = qp(p);
            let reps = padic_class_reps(p);
            for i in 0..reps.len() {
                for j in 0..reps.len() {
                    for s1 in [1i64, -1] {
                        for s2 in [1i64, -1] {
                            let e1 = Rat::from(Int::from(s1)) * reps[i].clone();
                            let e2 = Rat::from(Int::from(s2)) * reps[j].clone();
                            let q = DiagonalForm::new(
                                field.clone(),
                                vec![
                                    FieldElement::from_rat(e1.clone()),
                                    FieldElement::from_rat(e2.clone()),
                                ],
                            )
                            .unwrap();
                            let (kernel, m) = witt_decompose(&q).unwrap();
                            assert_eq!(kernel.dim() + 2 * m, 2);
                            if kernel.dim() > 0 {
                                assert!(!is_isotropic(&kernel).unwrap());
                            }
                            let mut rebuilt = kernel.clone();
                            for _ in 0..m {
                                rebuilt =
                                    rebuilt.direct_sum(&DiagonalForm::hyperbolic(&field)).unwrap();
                            }
                            let i1 = invariants(&q).unwrap();
                            let i2 = invariants(&rebuilt).unwrap();
                            assert_eq!(i1.det, i2.det);
                            assert_eq!(i1.hasse, i2.hasse);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn padic_dim5_always_isotropic() {
        let field = qp(3);
        let reps = padic_class_reps(3);
        for a in &reps {
            for b in &reps {
                let entries = vec![
                    Rat::one(),
                    a.clone(),
                    b.clone(),
                    -Rat::one() * a.clone(),
                    reps[2].clone(),
                ];
                let q = DiagonalForm::new(
                    field.clone(),
                    entries.into_iter().map(FieldElement::from_rat).collect(),
                )
                .unwrap();
                assert!(is_isotropic(&q).unwrap());
            }
        }
    }

    #[test]
    fn signature_function_examples() {
        let rt = FieldDescriptor::FunctionField(Box::new(FieldDescriptor::RealClosed));
        let ctx = BaseCtx::Rat;
        let t = FieldElement::Func(Factored::new(
            BaseElem::from_int(1),
            vec![(Poly::from_ints(&ctx, &[0, 1]), 1)],
        ));
        let q = DiagonalForm::new(rt.clone(), vec![t]).unwrap();
        let sf = signature_function(&q).unwrap();
        assert_eq!(sf.values, vec![-1, 1]);
        // <1, -(T^2+1)> over Q(T): signature 0 everywhere.
        let qt = FieldDescriptor::FunctionField(Box::new(FieldDescriptor::Rationals));
        let e = FieldElement::Func(Factored::new(
            BaseElem::from_int(-1),
            vec![(Poly::from_ints(&ctx, &[1, 0, 1]), 1)],
        ));
        let q2 = DiagonalForm::new(qt.clone(), vec![FieldElement::from_int(1), e]).unwrap();
        let sf2 = signature_function(&q2).unwrap();
        assert!(sf2.is_identically_zero());
        // Constant entries <1,1,-3,-3>: constant zero.
        let q3 = DiagonalForm::from_ints(&qt, &[1, 1, -3, -3]).unwrap();
        let sf3 = signature_function(&q3).unwrap();
        assert!(sf3.is_identically_zero());
        assert!(sf3.breakpoints.is_empty());
    }
}
