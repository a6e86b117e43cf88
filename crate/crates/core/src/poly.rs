//! Dense univariate polynomials over ℚ in the indeterminate `q`.
//!
//! Coefficients are stored in ascending order with no trailing zeros, so the
//! zero polynomial is the empty vector and structural equality is value
//! equality.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A rational number kept as a reduced `i64` fraction while it fits, and as a
/// `BigRational` otherwise. The representation is canonical, so derived
/// equality and hashing are value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Rat {
    const ZERO: Rat = Rat::Small(0, 1);
    const ONE: Rat = Rat::Small(1, 1);

    fn from_big(b: BigRational) -> Rat {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(b),
        }
    }

    /// Reduces `n/d` (`d ≠ 0`) computed in `i128`.
    fn from_i128(n: i128, d: i128) -> Rat {
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if d != 1 {
            let g = n.gcd(&d);
            if g > 1 {
                n /= g;
                d /= g;
            }
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::from_big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => b.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, 1), Rat::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Rat::Small(s, 1),
                None => Rat::from_i128(*a as i128 + *c as i128, 1),
            },
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d + c * b, b * d)
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, 1), Rat::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) => Rat::Small(p, 1),
                None => Rat::from_i128(*a as i128 * *c as i128, 1),
            },
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat::Small(m, *d),
                None => Rat::from_big(-self.to_big()),
            },
            Rat::Big(b) => Rat::from_big(-b),
        }
    }

    fn recip(&self) -> Rat {
        match self {
            Rat::Small(n, d) if *n != 0 => Rat::from_i128(*d as i128, *n as i128),
            _ => Rat::from_big(self.to_big().recip()),
        }
    }

    fn numer(&self) -> BigInt {
        match self {
            Rat::Small(n, _) => BigInt::from(*n),
            Rat::Big(b) => b.numer().clone(),
        }
    }

    fn denom(&self) -> BigInt {
        match self {
            Rat::Small(_, d) => BigInt::from(*d),
            Rat::Big(b) => b.denom().clone(),
        }
    }
}

impl std::fmt::Display for Rat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Rat::ONE] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        Self::from_rats(coeffs.into_iter().map(Rat::from_big).collect())
    }

    fn from_rats(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_rats(coeffs.iter().map(|&c| Rat::Small(c, 1)).collect())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(Rat::to_big).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Constant term if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].to_big()),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<BigRational> {
        self.coeffs.last().map(Rat::to_big)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.add(s);
        }
        Poly::from_rats(out)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(Rat::neg).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        self.scale_rat(&Rat::from_big(c.clone()))
    }

    fn scale_rat(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.coeffs.len() == 1 {
            return other.scale_rat(&self.coeffs[0]);
        }
        if other.coeffs.len() == 1 {
            return self.scale_rat(&other.coeffs[0]);
        }
        let mut out = vec![Rat::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::from_rats(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let f = rem[k].mul(&lead_inv);
            let nf = f.neg();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k - dd + j] = rem[k - dd + j].add(&nf.mul(b));
                }
            }
            quot[k - dd] = f;
        }
        rem.truncate(dd);
        (Poly::from_rats(quot), Poly::from_rats(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        if self.coeffs.len() < divisor.coeffs.len() {
            return self.clone();
        }
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale_rat(&l.recip()),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s)` with `s·self ≡ g (mod modulus)` and `g` the monic gcd.
    pub fn gcd_ext_mod(&self, modulus: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (modulus.clone(), self.clone());
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (quot, r2) = r0.div_rem(&r1);
            let s2 = s0.sub(&quot.mul(&s1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let l = r0.coeffs.last().cloned().unwrap_or(Rat::ONE).recip();
        (r0.scale_rat(&l), s0.scale_rat(&l))
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()))
    }

    /// Gcd of the numerators of an integral polynomial.
    pub fn integer_content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(&c.numer()))
    }

    /// Renders with explicit `c*q^k` terms in ascending order; `"0"` for zero.
    pub fn to_term_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() && !c.is_negative() {
                s.push('+');
            }
            let _ = write!(s, "{c}*q^{k}");
        }
        s
    }
}

/// Parses a sum of terms such as `3*q^2`, `-1/2*q`, `q^3`, `7`.
///
/// Coefficients may be integers or `a/b` rationals; the caller decides whether
/// a slash is permitted in its context.
pub(crate) fn parse_terms(input: &str) -> Option<Poly> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).map(str::to_string).unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    let bytes = s.as_bytes();
    let mut acc = Poly::zero();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut negative = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negative = bytes[pos] == b'-';
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            pos += 1;
        }
        let term = &s[start..pos];
        let (coeff, power) = parse_term(term)?;
        let coeff = if negative { -coeff } else { coeff };
        acc = acc.add(&Poly::monomial(coeff, power));
    }
    Some(acc)
}

fn parse_term(term: &str) -> Option<(BigRational, usize)> {
    if term.is_empty() {
        return None;
    }
    let (coeff_part, q_part) = match term.find('q') {
        Some(i) => {
            let c = term[..i].strip_suffix('*').unwrap_or(&term[..i]);
            (c, Some(&term[i + 1..]))
        }
        None => (term, None),
    };
    let coeff = if coeff_part.is_empty() {
        q_part?;
        BigRational::one()
    } else {
        parse_rational(coeff_part)?
    };
    let power = match q_part {
        None => 0,
        Some("") => 1,
        Some(p) => p.strip_prefix('^')?.parse().ok()?,
    };
    Some((coeff, power))
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (q^2 - 1) = (q - 1)(q + 1)
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, Poly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        let g = a.gcd(&Poly::from_ints(&[2, 2]));
        assert_eq!(g, b);
    }

    #[test]
    fn inverse_modulo() {
        // q is invertible mod q^2 + q + 1 with inverse -1 - q
        let m = Poly::from_ints(&[1, 1, 1]);
        let (g, s) = Poly::from_ints(&[0, 1]).gcd_ext_mod(&m);
        assert!(g.is_one());
        assert_eq!(s.rem(&m), Poly::from_ints(&[-1, -1]));
    }

    #[test]
    fn term_strings() {
        let p = Poly::from_ints(&[1, 0, -3]);
        assert_eq!(p.to_term_string(), "1*q^0-3*q^2");
        assert_eq!(parse_terms(&p.to_term_string()), Some(p));
        assert_eq!(parse_terms("q^2 - q + 1/2"), Some(Poly::from_coeffs(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer((-1).into()),
            BigRational::one(),
        ])));
        assert_eq!(parse_terms(""), None);
        assert_eq!(parse_terms("3*x"), None);
    }
}
