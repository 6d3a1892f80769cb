//! Integer number theory helpers: factorization, valuations, squarefree
//! parts, Legendre and Hilbert symbols.
//!
//! Factorization uses trial division followed by Pollard's rho, which is
//! ample for the desk-scale integers appearing as form entries.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::WittError;
use crate::{Int, Rat, Result};

/// A place of Q: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum QPlace {
    Prime(u64),
    Infinity,
}

/// Modular exponentiation on u128 intermediates.
pub fn pow_mod_u64(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // n must be odd composite and not a prime power handled elsewhere.
    let mut c: u64 = 1;
    loop {
        let f = |x: u64| -> u64 { ((x as u128 * x as u128 + c as u128) % n as u128) as u64 };
        let mut x: u64 = 2;
        let mut y: u64 = 2;
        let mut d: u64 = 1;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = x.abs_diff(y);
            if diff == 0 {
                d = n;
            } else {
                d = diff.gcd(&n);
            }
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        push_factor(out, n, 1);
        return;
    }
    let mut m = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while m % p == 0 {
            push_factor(out, p, 1);
            m /= p;
        }
    }
    if m == 1 {
        return;
    }
    if is_prime_u64(m) {
        push_factor(out, m, 1);
        return;
    }
    let d = pollard_rho(m);
    factor_u64_into(d, out);
    factor_u64_into(m / d, out);
}

fn push_factor(out: &mut Vec<(u64, u32)>, p: u64, e: u32) {
    for entry in out.iter_mut() {
        if entry.0 == p {
            entry.1 += e;
            return;
        }
    }
    out.push((p, e));
}

/// Factor a positive integer into sorted (prime, exponent) pairs.
///
/// Inputs larger than u64 are first stripped of small primes; a remaining
/// large cofactor is rejected rather than silently misfactored.
pub fn factor_int(n: &Int) -> Result<Vec<(u64, u32)>> {
    let mut n = n.abs();
    if n.is_zero() {
        return Err(WittError::ZeroInput);
    }
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        let pb = Int::from(p);
        loop {
            let (q, r) = n.div_rem(&pb);
            if r.is_zero() {
                push_factor(&mut out, p, 1);
                n = q;
            } else {
                break;
            }
        }
    }
    if let Some(small) = to_u64(&n) {
        factor_u64_into(small, &mut out);
    } else {
        return Err(WittError::Domain(alloc::format!(
            "integer too large to factor: {}",
            n
        )));
    }
    out.sort_unstable();
    Ok(out)
}

fn to_u64(n: &Int) -> Option<u64> {
    use num_traits::ToPrimitive;
    n.to_u64()
}

/// Factor a nonzero rational's square class support: primes dividing the
/// numerator or denominator, with signed exponents.
pub fn factor_rat(x: &Rat) -> Result<Vec<(u64, i64)>> {
    if x.is_zero() {
        return Err(WittError::ZeroInput);
    }
    let num = factor_int(x.numer())?;
    let den = factor_int(x.denom())?;
    let mut out: Vec<(u64, i64)> = num.into_iter().map(|(p, e)| (p, e as i64)).collect();
    for (p, e) in den {
        match out.iter_mut().find(|entry| entry.0 == p) {
            Some(entry) => entry.1 -= e as i64,
            None => out.push((p, -(e as i64))),
        }
    }
    out.retain(|&(_, e)| e != 0);
    out.sort_unstable();
    Ok(out)
}

/// The squarefree integer representing the square class of a nonzero rational.
pub fn squarefree_part(x: &Rat) -> Result<Int> {
    let mut sf = Int::one();
    for (p, e) in factor_rat(x)? {
        if e.rem_euclid(2) == 1 {
            sf *= Int::from(p);
        }
    }
    if x.is_negative() {
        sf = -sf;
    }
    Ok(sf)
}

/// p-adic valuation of a nonzero rational.
pub fn padic_val(x: &Rat, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(WittError::ZeroInput);
    }
    let pb = Int::from(p);
    let mut v: i64 = 0;
    let mut n = x.numer().clone();
    loop {
        let (q, r) = n.div_rem(&pb);
        if r.is_zero() {
            v += 1;
            n = q;
        } else {
            break;
        }
    }
    let mut d = x.denom().clone();
    loop {
        let (q, r) = d.div_rem(&pb);
        if r.is_zero() {
            v -= 1;
            d = q;
        } else {
            break;
        }
    }
    Ok(v)
}

/// Split a nonzero rational as p^v * u with u a p-adic unit; returns (v, u).
pub fn padic_split(x: &Rat, p: u64) -> Result<(i64, Rat)> {
    let v = padic_val(x, p)?;
    let pr = Rat::from(Int::from(p));
    let mut u = x.clone();
    if v >= 0 {
        for _ in 0..v {
            u /= pr.clone();
        }
    } else {
        for _ in 0..(-v) {
            u *= pr.clone();
        }
    }
    Ok((v, u))
}

/// Residue of a p-integral rational mod p, as an element of 0..p.
pub fn residue_mod_p(x: &Rat, p: u64) -> Result<u64> {
    let pb = Int::from(p);
    let num = x.numer().mod_floor(&pb);
    let den = x.denom().mod_floor(&pb);
    let num = to_u64(&num).unwrap();
    let den = to_u64(&den).unwrap();
    if den == 0 {
        return Err(WittError::Domain(alloc::format!(
            "rational is not integral at {}",
            p
        )));
    }
    let den_inv = pow_mod_u64(den, p - 2, p);
    Ok((num as u128 * den_inv as u128 % p as u128) as u64)
}

/// Legendre symbol (a/p) for odd prime p, with a a p-adic unit residue.
pub fn legendre(a: u64, p: u64) -> i8 {
    debug_assert!(p % 2 == 1 && a % p != 0);
    let e = pow_mod_u64(a % p, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Legendre symbol of a p-adic unit given as a rational representative.
pub fn legendre_rat(x: &Rat, p: u64) -> Result<i8> {
    let r = residue_mod_p(x, p)?;
    if r == 0 {
        return Err(WittError::Domain(alloc::format!("{} is not a unit at {}", x, p)));
    }
    Ok(legendre(r, p))
}

/// Residue mod 8 of a 2-adic unit rational (numerator and denominator odd).
fn unit_mod8(x: &Rat) -> u64 {
    let eight = Int::from(8u64);
    let n = to_u64(&x.numer().mod_floor(&eight)).unwrap();
    let d = to_u64(&x.denom().mod_floor(&eight)).unwrap();
    // Odd residues mod 8 are self-inverse.
    n * d % 8
}

/// The Hilbert symbol (a, b) at a place of Q.
pub fn hilbert_symbol(place: QPlace, a: &Rat, b: &Rat) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(WittError::ZeroInput);
    }
    match place {
        QPlace::Infinity => {
            if a.is_negative() && b.is_negative() {
                Ok(-1)
            } else {
                Ok(1)
            }
        }
        QPlace::Prime(2) => {
            let (alpha, u) = padic_split(a, 2)?;
            let (beta, v) = padic_split(b, 2)?;
            let um = unit_mod8(&u);
            let vm = unit_mod8(&v);
            // eps(u) = (u-1)/2 mod 2, omega(u) = (u^2-1)/8 mod 2.
            let eps = |m: u64| -> u64 { (m - 1) / 2 % 2 };
            let omega = |m: u64| -> u64 { (m * m - 1) / 8 % 2 };
            let e = eps(um) * eps(vm)
                + (alpha.rem_euclid(2) as u64) * omega(vm)
                + (beta.rem_euclid(2) as u64) * omega(um);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        QPlace::Prime(p) => {
            if !is_prime_u64(p) {
                return Err(WittError::Domain(alloc::format!("{} is not prime", p)));
            }
            let (alpha, u) = padic_split(a, p)?;
            let (beta, v) = padic_split(b, p)?;
            let lu = legendre_rat(&u, p)?;
            let lv = legendre_rat(&v, p)?;
            let mut s: i8 = 1;
            if alpha.rem_euclid(2) == 1 {
                s *= lv;
            }
            if beta.rem_euclid(2) == 1 {
                s *= lu;
            }
            if alpha.rem_euclid(2) == 1 && beta.rem_euclid(2) == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            Ok(s)
        }
    }
}

/// The places where the Hilbert symbol of rationals can be nontrivial:
/// 2, infinity, and the odd primes dividing either argument.
pub fn relevant_places(values: &[Rat]) -> Result<Vec<QPlace>> {
    let mut primes: Vec<u64> = vec![2];
    for x in values {
        for (p, _) in factor_rat(x)? {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    let mut out: Vec<QPlace> = primes.into_iter().map(QPlace::Prime).collect();
    out.push(QPlace::Infinity);
    Ok(out)
}

/// Is the rational a square in Q?
pub fn is_square_rat(x: &Rat) -> Result<bool> {
    if x.is_zero() {
        return Err(WittError::ZeroInput);
    }
    if x.is_negative() {
        return Ok(false);
    }
    Ok(x.numer().sqrt().pow(2) == *x.numer() && x.denom().sqrt().pow(2) == *x.denom())
}

/// Is the rational a square in Q_p (p = 2 allowed)?
pub fn is_square_padic(x: &Rat, p: u64) -> Result<bool> {
    let (v, u) = padic_split(x, p)?;
    if v.rem_euclid(2) == 1 {
        return Ok(false);
    }
    if p == 2 {
        Ok(unit_mod8(&u) == 1)
    } else {
        Ok(legendre_rat(&u, p)? == 1)
    }
}

/// Least quadratic nonresidue mod an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    for a in 2..p {
        if legendre(a, p) == -1 {
            return a;
        }
    }
    unreachable!("odd prime has a nonresidue")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn r(n: i64) -> Rat {
        Rat::from_i64(n).unwrap()
    }

    fn rq(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn factor_and_squarefree() {
        assert_eq!(factor_int(&Int::from(360)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(squarefree_part(&r(-18)).unwrap(), Int::from(-2));
        assert_eq!(squarefree_part(&rq(4, 9)).unwrap(), Int::from(1));
        assert_eq!(squarefree_part(&rq(2, 3)).unwrap(), Int::from(6));
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_val(&rq(9, 4), 3).unwrap(), 2);
        assert_eq!(padic_val(&rq(5, 27), 3).unwrap(), -3);
        let (v, u) = padic_split(&rq(18, 5), 3).unwrap();
        assert_eq!(v, 2);
        assert_eq!(u, rq(2, 5));
    }

    #[test]
    fn legendre_matches_enumeration() {
        // Oracle: exhaustive squares mod 7 are {1, 2, 4}.
        let squares = [1u64, 2, 4];
        for a in 1..7 {
            let expected = if squares.contains(&a) { 1 } else { -1 };
            assert_eq!(legendre(a, 7), expected, "a = {}", a);
        }
    }

    /// Brute-force solubility of z^2 = a x^2 + b y^2 over Z/p^k with not all
    /// of x, y, z divisible by p; a primitive solution mod p^3 certifies
    /// p-adic solubility for odd p and the desk-scale inputs used here.
    fn hilbert_bruteforce(p: u64, a: i64, b: i64) -> i8 {
        let m = (p * p * p) as i64;
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % p as i64 == 0 && y % p as i64 == 0 && z % p as i64 == 0 {
                        continue;
                    }
                    if (z * z - a * x * x - b * y * y).rem_euclid(m) == 0 {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(
            hilbert_symbol(QPlace::Infinity, &r(-1), &r(-1)).unwrap(),
            -1
        );
        assert_eq!(hilbert_symbol(QPlace::Prime(3), &r(-1), &r(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(QPlace::Prime(5), &r(2), &r(5)).unwrap(), -1);
    }

    #[test]
    fn hilbert_matches_bruteforce() {
        for p in [3u64, 5] {
            for a in [-2i64, -1, 1, 2, 3, 5] {
                for b in [-3i64, -1, 1, 2, 5] {
                    let fast = hilbert_symbol(QPlace::Prime(p), &r(a), &r(b)).unwrap();
                    let slow = hilbert_bruteforce(p, a, b);
                    assert_eq!(fast, slow, "({}, {})_{}", a, b, p);
                }
            }
        }
    }

    #[test]
    fn hilbert_symmetry_and_bilinearity() {
        let vals = [-6i64, -5, -3, -2, -1, 1, 2, 3, 5, 6, 10];
        for p in [QPlace::Prime(2), QPlace::Prime(3), QPlace::Prime(5), QPlace::Infinity] {
            for &a in &vals {
                for &b in &vals {
                    let ab = hilbert_symbol(p, &r(a), &r(b)).unwrap();
                    let ba = hilbert_symbol(p, &r(b), &r(a)).unwrap();
                    assert_eq!(ab, ba);
                    let neg = hilbert_symbol(p, &r(a), &r(-a)).unwrap();
                    assert_eq!(neg, 1, "(a, -a) = 1 failed at a = {}", a);
                    for &c in &vals {
                        let ac = hilbert_symbol(p, &r(a), &r(c)).unwrap();
                        let abc = hilbert_symbol(p, &r(a), &r(b * c)).unwrap();
                        assert_eq!(abc, ab * ac);
                    }
                }
            }
        }
    }

    #[test]
    fn hilbert_product_formula() {
        let vals = [-15i64, -7, -2, 2, 3, 5, 21, 30];
        for &a in &vals {
            for &b in &vals {
                let mut prod: i8 = 1;
                for place in relevant_places(&[r(a), r(b)]).unwrap() {
                    prod *= hilbert_symbol(place, &r(a), &r(b)).unwrap();
                }
                assert_eq!(prod, 1, "product formula failed for ({}, {})", a, b);
            }
        }
    }

    #[test]
    fn padic_squares() {
        assert!(!is_square_padic(&r(3), 3).unwrap());
        assert!(is_square_padic(&r(4), 3).unwrap());
        assert!(is_square_padic(&r(7), 3).unwrap());
        assert!(!is_square_padic(&r(5), 3).unwrap());
        assert!(is_square_padic(&r(17), 2).unwrap());
        assert!(!is_square_padic(&r(3), 2).unwrap());
        assert!(!is_square_padic(&r(2), 2).unwrap());
        // Oracle: squares mod 5 are {1, 4}; 2-adic unit squares are 1 mod 8.
        assert!(is_square_padic(&rq(4, 9), 5).unwrap());
        // 2/3 = 2 * 2 = 4 mod 5, a residue; 3 is a nonresidue mod 5.
        assert!(is_square_padic(&rq(2, 3), 5).unwrap());
        assert!(!is_square_padic(&r(3), 5).unwrap());
    }

    #[test]
    fn nonresidues() {
        assert_eq!(least_nonresidue(5), 2);
        assert_eq!(least_nonresidue(7), 3);
        assert_eq!(least_nonresidue(3), 2);
    }
}
