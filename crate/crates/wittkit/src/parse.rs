//! Parsers for field descriptors, elements, diagonal forms, polynomials,
//! and rational self-maps of P^1, using the same spellings the library
//! renders.

use num_rational::BigRational;
use num_traits::Zero;
use witt_core::elem::{Factored, FieldElement};
use witt_core::field::{BaseCtx, BaseElem, FieldDescriptor, FqDescriptor};
use witt_core::forms::DiagonalForm;
use witt_core::poly::Poly;

pub type ParseResult<T> = Result<T, String>;

/// Parse a field name: Q, R, Csq, F(q), Qp(p), each optionally followed by
/// (T) for the rational function field.
pub fn parse_field(input: &str) -> ParseResult<FieldDescriptor> {
    let s = input.trim();
    let (base_str, func) = match s.strip_suffix("(T)") {
        Some(rest) => (rest.trim(), true),
        None => (s, false),
    };
    let base = parse_base_field(base_str)?;
    let field = if func {
        FieldDescriptor::FunctionField(Box::new(base))
    } else {
        base
    };
    field.validate().map_err(|e| e.to_string())?;
    Ok(field)
}

fn parse_base_field(s: &str) -> ParseResult<FieldDescriptor> {
    match s {
        "Q" => return Ok(FieldDescriptor::Rationals),
        "R" => return Ok(FieldDescriptor::RealClosed),
        "Csq" => return Ok(FieldDescriptor::SquareClosed),
        _ => {}
    }
    if let Some(inner) = s.strip_prefix("Qp(").and_then(|r| r.strip_suffix(')')) {
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| format!("bad prime in {:?}", s))?;
        return Ok(FieldDescriptor::PadicField(p));
    }
    if let Some(inner) = s.strip_prefix("F(").and_then(|r| r.strip_suffix(')')) {
        let q: u64 = inner
            .trim()
            .parse()
            .map_err(|_| format!("bad cardinality in {:?}", s))?;
        // Factor q = p^d.
        let mut p = 0u64;
        for cand in 2..=q {
            if q % cand == 0 {
                p = cand;
                break;
            }
        }
        if p == 0 {
            return Err(format!("bad cardinality {} for a finite field", q));
        }
        let mut d = 0u32;
        let mut m = q;
        while m % p == 0 {
            m /= p;
            d += 1;
        }
        if m != 1 {
            return Err(format!("{} is not a prime power", q));
        }
        let fq = if d == 1 {
            FqDescriptor::prime(p)
        } else {
            FqDescriptor::extension(p, d as usize).map_err(|e| e.to_string())?
        };
        return Ok(FieldDescriptor::FiniteField(fq));
    }
    Err(format!(
        "unknown field {:?}; expected Q, R, Csq, F(q), Qp(p), optionally with (T)",
        s
    ))
}

/// Parse a rational number: integer or a/b.
pub fn parse_rational(s: &str) -> ParseResult<BigRational> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num_str
        .parse()
        .map_err(|_| format!("bad number {:?}", s))?;
    let den: num_bigint::BigInt = den_str
        .parse()
        .map_err(|_| format!("bad number {:?}", s))?;
    if den.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(BigRational::new(num, den))
}

/// Parse a polynomial in the given variable over the coefficient context,
/// e.g. "T^3 - 2T + 1" or "X^2-1". No parentheses.
pub fn parse_poly(ctx: &BaseCtx, var: char, input: &str) -> ParseResult<Poly> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".to_string());
    }
    // Split into signed terms.
    let mut terms: Vec<(i32, String)> = Vec::new();
    let mut sign = 1i32;
    let mut cur = String::new();
    for (i, c) in s.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 && !s[..i].ends_with('^') {
            if !cur.is_empty() {
                terms.push((sign, cur.clone()));
                cur.clear();
            }
            sign = if c == '-' { -1 } else { 1 };
            continue;
        }
        if c == '-' && i == 0 {
            sign = -1;
            continue;
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        terms.push((sign, cur));
    }
    let mut coeffs: Vec<BaseElem> = Vec::new();
    let zero = ctx.zero();
    for (sgn, term) in terms {
        let (coeff_str, exp) = match term.find(var) {
            Some(pos) => {
                let after = &term[pos + var.len_utf8()..];
                let exp = if let Some(e) = after.strip_prefix('^') {
                    e.parse::<usize>()
                        .map_err(|_| format!("bad exponent in {:?}", term))?
                } else if after.is_empty() {
                    1
                } else {
                    return Err(format!("unexpected {:?} after {}", after, var));
                };
                let c = term[..pos].trim_end_matches('*');
                (if c.is_empty() { "1" } else { c }, exp)
            }
            None => (term.as_str(), 0usize),
        };
        let coeff = coeff_from_str(ctx, coeff_str)?;
        let coeff = if sgn < 0 { ctx.neg(&coeff) } else { coeff };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, zero.clone());
        }
        coeffs[exp] = ctx
            .add(&coeffs[exp], &coeff)
            .map_err(|e| e.to_string())?;
    }
    Ok(Poly::from_coeffs(coeffs))
}

fn coeff_from_str(ctx: &BaseCtx, s: &str) -> ParseResult<BaseElem> {
    match ctx {
        BaseCtx::Rat => Ok(BaseElem::Rat(parse_rational(s)?)),
        BaseCtx::Fq(_) => {
            let n: i64 = s.parse().map_err(|_| format!("bad coefficient {:?}", s))?;
            Ok(ctx.from_int(n))
        }
    }
}

/// Parse an element of the field. Base fields take rationals or integers;
/// function fields additionally accept factored literals
/// "c * (poly)^e * ..." and bare polynomial factors like "T" or "T-1".
pub fn parse_element(field: &FieldDescriptor, input: &str) -> ParseResult<FieldElement> {
    let s = input.trim();
    if !field.is_function_field() {
        let ctx = BaseCtx::for_field(field).map_err(|e| e.to_string())?;
        return Ok(FieldElement::Base(coeff_from_str(&ctx, s)?));
    }
    let ctx = BaseCtx::for_field(field.base()).map_err(|e| e.to_string())?;
    if !s.contains('T') {
        return Ok(FieldElement::Base(coeff_from_str(&ctx, s)?));
    }
    // Split top-level '*' products.
    let mut constant = ctx.one();
    let mut factors: Vec<(Poly, i64)> = Vec::new();
    for part in split_products(s)? {
        let part = part.trim();
        let (body, exp) = match part.rsplit_once('^') {
            Some((b, e)) if b.ends_with(')') || !b.contains('(') => {
                let exp: i64 = e
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad exponent in {:?}", part))?;
                (b.trim(), exp)
            }
            _ => (part, 1),
        };
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        if !body.contains('T') {
            let c = coeff_from_str(&ctx, body)?;
            // Constant factors fold into the constant, with exponent sign.
            let c = if exp < 0 {
                ctx.inv(&c).map_err(|e| e.to_string())?
            } else {
                c
            };
            for _ in 0..exp.unsigned_abs() {
                constant = ctx.mul(&constant, &c).map_err(|e| e.to_string())?;
            }
            continue;
        }
        let poly = parse_poly(&ctx, 'T', body)?;
        let (lc, monic) = poly.monicize(&ctx).map_err(|e| e.to_string())?;
        // The leading coefficient folds into the constant exp times.
        let lc = if exp < 0 {
            ctx.inv(&lc).map_err(|e| e.to_string())?
        } else {
            lc
        };
        for _ in 0..exp.unsigned_abs() {
            constant = ctx.mul(&constant, &lc).map_err(|e| e.to_string())?;
        }
        factors.push((monic, exp));
    }
    let f = Factored::new(constant, factors);
    f.validate(field).map_err(|e| e.to_string())?;
    Ok(FieldElement::Func(f))
}

fn split_products(s: &str) -> ParseResult<Vec<String>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced parentheses".to_string());
                }
                cur.push(c);
            }
            '*' if depth == 0 => {
                parts.push(cur.clone());
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".to_string());
    }
    parts.push(cur);
    Ok(parts)
}

/// Parse a diagonal form literal "<a, b, c> over FIELD".
pub fn parse_form(input: &str) -> ParseResult<DiagonalForm> {
    let s = input.trim();
    let (form_str, field_str) = s
        .rsplit_once(" over ")
        .ok_or_else(|| "expected \"<...> over FIELD\"".to_string())?;
    let field = parse_field(field_str)?;
    parse_form_over(&field, form_str)
}

/// Parse just the "<a, b, c>" part over a known field.
pub fn parse_form_over(field: &FieldDescriptor, input: &str) -> ParseResult<DiagonalForm> {
    let s = input.trim();
    let inner = s
        .strip_prefix('<')
        .and_then(|r| r.strip_suffix('>'))
        .ok_or_else(|| format!("expected <...>, got {:?}", s))?;
    let mut entries = Vec::new();
    if !inner.trim().is_empty() {
        for part in inner.split(',') {
            entries.push(parse_element(field, part)?);
        }
    }
    DiagonalForm::new(field.clone(), entries).map_err(|e| e.to_string())
}

/// Parse a rational self-map "A(X) / B(X)" with coefficients in the field.
/// Coefficients of function-field maps may be parenthesized elements, e.g.
/// "(T+2)*X^2".
pub fn parse_map(
    field: &FieldDescriptor,
    input: &str,
) -> ParseResult<witt_core::bezout::RationalMapP1> {
    let s = input.trim();
    let (num_str, den_str) = split_top_level_slash(s)?;
    let num = parse_map_poly(field, &num_str)?;
    let den = parse_map_poly(field, &den_str)?;
    witt_core::bezout::RationalMapP1::new(field, &num, &den).map_err(|e| e.to_string())
}

fn split_top_level_slash(s: &str) -> ParseResult<(String, String)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                return Ok((s[..i].to_string(), s[i + 1..].to_string()));
            }
            _ => {}
        }
    }
    Err("expected \"numerator / denominator\"".to_string())
}

/// Parse a polynomial in X whose coefficients are field elements, returned
/// constant term first.
fn parse_map_poly(field: &FieldDescriptor, input: &str) -> ParseResult<Vec<FieldElement>> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".to_string());
    }
    // Split signed terms at top level.
    let mut terms: Vec<String> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            '+' | '-' if depth == 0 && i > 0 && !s[..i].ends_with('^') => {
                terms.push(cur.clone());
                cur.clear();
                if c == '-' {
                    cur.push('-');
                }
            }
            _ => cur.push(c),
        }
    }
    terms.push(cur);
    let mut out: Vec<FieldElement> = Vec::new();
    let zero = FieldElement::from_int(0);
    for term in terms {
        if term.is_empty() {
            continue;
        }
        let (negate, term) = match term.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, term),
        };
        let (coeff_str, exp) = match find_top_level_x(&term) {
            Some(pos) => {
                let after = &term[pos + 1..];
                let exp = if let Some(e) = after.strip_prefix('^') {
                    e.parse::<usize>()
                        .map_err(|_| format!("bad exponent in {:?}", term))?
                } else if after.is_empty() {
                    1
                } else {
                    return Err(format!("unexpected {:?} after X", after));
                };
                let c = term[..pos].trim_end_matches('*');
                (if c.is_empty() { "1".to_string() } else { c.to_string() }, exp)
            }
            None => (term.clone(), 0usize),
        };
        let coeff_src = coeff_str
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(&coeff_str);
        let mut coeff = parse_element(field, coeff_src)?;
        if negate {
            coeff = witt_core::elem::neg_element(field, &coeff).map_err(|e| e.to_string())?;
        }
        if out.len() <= exp {
            out.resize(exp + 1, zero.clone());
        }
        if !out[exp].is_zero() {
            return Err(format!("repeated X^{} term", exp));
        }
        out[exp] = coeff;
    }
    Ok(out)
}

fn find_top_level_x(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'X' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_round_trip() {
        for name in ["Q", "R", "Csq", "F(5)", "F(25)", "Qp(3)", "Q(T)", "F(5)(T)", "Qp(3)(T)"] {
            let f = parse_field(name).unwrap();
            assert_eq!(f.name(), name, "round trip for {}", name);
        }
        assert!(parse_field("Z").is_err());
        assert!(parse_field("F(6)").is_err());
    }

    #[test]
    fn polys_parse() {
        let ctx = BaseCtx::Rat;
        let p = parse_poly(&ctx, 'T', "T^3 - 2T + 1").unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.render(), "1 + -2*T + T^3");
        let q = parse_poly(&ctx, 'X', "-X^2+3/2").unwrap();
        assert_eq!(q.degree(), 2);
    }

    #[test]
    fn elements_parse() {
        let q = FieldDescriptor::Rationals;
        assert!(matches!(parse_element(&q, "-3/7").unwrap(), FieldElement::Base(_)));
        let qt = FieldDescriptor::FunctionField(Box::new(q));
        let e = parse_element(&qt, "2*(T-1)^2*(T)^-1").unwrap();
        if let FieldElement::Func(f) = &e {
            assert_eq!(f.factors.len(), 2);
        } else {
            panic!("expected a factored element");
        }
        let t = parse_element(&qt, "T").unwrap();
        assert!(matches!(t, FieldElement::Func(_)));
        // Non-monic factors fold their leading constant.
        let g = parse_element(&qt, "(2T-2)").unwrap();
        if let FieldElement::Func(f) = &g {
            assert_eq!(f.constant, BaseElem::from_int(2));
        } else {
            panic!("expected a factored element");
        }
    }

    #[test]
    fn forms_parse() {
        let f = parse_form("<1,-3,1,-3> over Q").unwrap();
        assert_eq!(f.dim(), 4);
        let g = parse_form("<1, T, 2*(T-1)> over Qp(3)(T)").unwrap();
        assert_eq!(g.dim(), 3);
        assert!(parse_form("<1,2> over Z").is_err());
    }

    #[test]
    fn maps_parse() {
        let q = FieldDescriptor::Rationals;
        let m = parse_map(&q, "X^3-2X / X^2-1").unwrap();
        assert_eq!(m.degree(), 3);
        let qt = FieldDescriptor::FunctionField(Box::new(FieldDescriptor::PadicField(3)));
        let mt = parse_map(&qt, "X^3 - (T+2)*X / X^2 - T").unwrap();
        assert_eq!(mt.degree(), 3);
        assert!(parse_map(&q, "X^2").is_err());
    }
}
