//! Exact scalars in ℚ(q) and in the cyclotomic fields ℚ[q]/Φ_N, plus the
//! q-integers, q-factorials and Gaussian binomials built on them.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_rational, parse_terms, Poly};

/// Which value the symbol `q` takes.
///
/// `RootOfUnity(n)` means `q` is a *primitive* n-th root of unity; `n = 1` is `q = 1`.
/// `Generic` is an indeterminate (the order of `q` is infinite).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QMode {
    Generic,
    RootOfUnity(u32),
}

impl QMode {
    pub fn root_of_unity(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("root of unity order must be at least 1".into()));
        }
        Ok(QMode::RootOfUnity(n))
    }

    /// The nilpotency order N, if finite.
    pub fn order(&self) -> Option<u32> {
        match self {
            QMode::Generic => None,
            QMode::RootOfUnity(n) => Some(*n),
        }
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Generic => f.write_str("generic"),
            QMode::RootOfUnity(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for QMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("generic") || t == "inf" {
            return Ok(QMode::Generic);
        }
        let n: u32 = t.parse().map_err(|_| Error::Parse(format!("invalid mode `{s}`")))?;
        QMode::root_of_unity(n)
    }
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, &'static Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static Poly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The n-th cyclotomic polynomial Φ_n, via Φ_n = (q^n − 1) / ∏_{d|n, d<n} Φ_d.
pub fn cyclotomic_polynomial(n: u32) -> &'static Poly {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p;
    }
    let mut p = Poly::monomial(BigRational::one(), n as usize).sub(&Poly::one());
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (quot, rem) = p.div_rem(cyclotomic_polynomial(d));
            debug_assert!(rem.is_zero());
            p = quot;
        }
    }
    let leaked: &'static Poly = Box::leak(Box::new(p));
    cyclotomic_cache().lock().unwrap().entry(n).or_insert(leaked)
}

/// Reduced element of ℚ(q): `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        if den.degree() == Some(0) {
            let inv = den.coeffs()[0].recip();
            return RatFunc { num: num.scale(&inv), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let l = den.lead().expect("nonzero denominator").recip();
        RatFunc { num: num.scale(&l), den: den.scale(&l) }
    }

    fn from_poly(num: Poly) -> Self {
        RatFunc { num, den: Poly::one() }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.add(&o.num));
        }
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&o.num));
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// Integer-coefficient canonical pair: content 1 overall, positive leading denominator.
    fn integer_form(&self) -> (Poly, Poly) {
        let l = BigRational::from_integer(num_integer::lcm(
            self.num.denominator_lcm(),
            self.den.denominator_lcm(),
        ));
        let (n, d) = (self.num.scale(&l), self.den.scale(&l));
        let c = num_integer::gcd(n.integer_content(), d.integer_content());
        let c = BigRational::from_integer(c).recip();
        (n.scale(&c), d.scale(&c))
    }
}

/// Residue in ℚ[q]/Φ_N of degree < deg Φ_N.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u32,
    residue: Poly,
}

impl Cyclo {
    fn new(order: u32, p: Poly) -> Self {
        let phi = cyclotomic_polynomial(order);
        Cyclo { order, residue: p.rem(phi) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn residue(&self) -> &Poly {
        &self.residue
    }
}

/// An exact scalar. Arithmetic between scalars of different modes panics;
/// everything built from one algebra shares one mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Generic(RatFunc),
    Cyclo(Cyclo),
}

impl Scalar {
    pub fn zero(mode: QMode) -> Self {
        Self::from_poly(Poly::zero(), mode)
    }

    pub fn one(mode: QMode) -> Self {
        Self::from_poly(Poly::one(), mode)
    }

    pub fn from_int(v: i64, mode: QMode) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()), mode)
    }

    pub fn from_rational(v: BigRational, mode: QMode) -> Self {
        Self::from_poly(Poly::constant(v), mode)
    }

    pub fn from_ratio(n: i64, d: i64, mode: QMode) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()), mode)
    }

    pub fn from_poly(p: Poly, mode: QMode) -> Self {
        match mode {
            QMode::Generic => Scalar::Generic(RatFunc::from_poly(p)),
            QMode::RootOfUnity(n) => Scalar::Cyclo(Cyclo::new(n, p)),
        }
    }

    /// The symbol `q` itself.
    pub fn q(mode: QMode) -> Self {
        Self::from_poly(Poly::monomial(BigRational::one(), 1), mode)
    }

    /// `q^k` for any integer `k` (negative powers use q^{-1}).
    pub fn q_pow(k: i64, mode: QMode) -> Self {
        match mode {
            QMode::RootOfUnity(n) => {
                let e = k.rem_euclid(n as i64) as usize;
                Self::from_poly(Poly::monomial(BigRational::one(), e), mode)
            }
            QMode::Generic if k >= 0 => {
                Self::from_poly(Poly::monomial(BigRational::one(), k as usize), mode)
            }
            QMode::Generic => Scalar::Generic(RatFunc::new(
                Poly::one(),
                Poly::monomial(BigRational::one(), (-k) as usize),
            )),
        }
    }

    pub fn mode(&self) -> QMode {
        match self {
            Scalar::Generic(_) => QMode::Generic,
            Scalar::Cyclo(c) => QMode::RootOfUnity(c.order),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Generic(r) => r.num.is_zero(),
            Scalar::Cyclo(c) => c.residue.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Generic(r) => r.num.is_one() && r.den.is_one(),
            Scalar::Cyclo(c) => c.residue.is_one(),
        }
    }

    /// The value as a rational number, if it does not depend on q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Generic(r) if r.den.is_one() => r.num.as_constant(),
            Scalar::Generic(_) => None,
            Scalar::Cyclo(c) => c.residue.as_constant(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Generic(r) => Scalar::Generic(RatFunc::new(r.den.clone(), r.num.clone())),
            Scalar::Cyclo(c) => {
                let phi = cyclotomic_polynomial(c.order);
                let (g, s) = c.residue.gcd_ext_mod(phi);
                debug_assert!(g.is_one(), "cyclotomic modulus is irreducible");
                Scalar::Cyclo(Cyclo::new(c.order, s))
            }
        })
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one(self.mode());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Moves the value into `mode`: q-independent values move freely, generic
    /// values specialize at a root of unity when their denominator survives.
    pub fn coerce(&self, mode: QMode) -> Result<Scalar> {
        if self.mode() == mode {
            return Ok(self.clone());
        }
        if let Some(r) = self.as_rational() {
            return Ok(Scalar::from_rational(r, mode));
        }
        match (self, mode) {
            (Scalar::Generic(r), QMode::RootOfUnity(_)) => {
                let num = Scalar::from_poly(r.num.clone(), mode);
                let den = Scalar::from_poly(r.den.clone(), mode);
                let inv = den.inv().ok_or_else(|| {
                    Error::Domain(format!("denominator of {self} vanishes at a primitive {mode}-th root of unity"))
                })?;
                Ok(&num * &inv)
            }
            _ => Err(Error::Domain(format!("cannot move {self} into mode {mode}"))),
        }
    }

    /// Parses the canonical string form (or a q-independent rational) and
    /// coerces the result into `mode`.
    pub fn parse_in(s: &str, mode: QMode) -> Result<Scalar> {
        s.parse::<Scalar>()?.coerce(mode)
    }

    fn check_same(&self, other: &Scalar) {
        if let (Scalar::Cyclo(a), Scalar::Cyclo(b)) = (self, other) {
            assert_eq!(a.order, b.order, "mixing scalars of different cyclotomic orders");
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Generic(r) => {
                let (n, d) = r.integer_form();
                write!(f, "{}/{}", n.to_term_string(), d.to_term_string())
            }
            Scalar::Cyclo(c) => write!(f, "{} (mod Phi_{})", c.residue.to_term_string(), c.order),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"<poly> (mod Phi_N)"`, `"<int poly>/<int poly>"`, or a bare
    /// polynomial/rational (read as generic).
    fn from_str(s: &str) -> Result<Scalar> {
        let bad = || Error::Parse(format!("invalid scalar `{s}`"));
        let t = s.trim();
        if let Some(i) = t.find("(mod") {
            let rest = t[i..].trim_start_matches("(mod").trim();
            let order: u32 = rest
                .strip_prefix("Phi_")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.trim().parse().ok())
                .ok_or_else(bad)?;
            let p = parse_terms(&t[..i]).ok_or_else(bad)?;
            return Ok(Scalar::from_poly(p, QMode::root_of_unity(order)?));
        }
        if !t.contains('q') {
            let r = parse_rational(&t.replace(char::is_whitespace, "")).ok_or_else(bad)?;
            return Ok(Scalar::from_rational(r, QMode::Generic));
        }
        match t.split_once('/') {
            Some((n, d)) => {
                let num = parse_terms(n).ok_or_else(bad)?;
                let den = parse_terms(d).ok_or_else(bad)?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Generic(RatFunc::new(num, den)))
            }
            None => Ok(Scalar::from_poly(parse_terms(t).ok_or_else(bad)?, QMode::Generic)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Generic(a), Scalar::Generic(b)) => Scalar::Generic(a.add(b)),
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => {
                // both residues already have degree < deg Φ
                Scalar::Cyclo(Cyclo { order: a.order, residue: a.residue.add(&b.residue) })
            }
            _ => panic!("mixing generic and root-of-unity scalars"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Generic(a), Scalar::Generic(b)) => Scalar::Generic(a.mul(b)),
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => {
                if let Some(c) = a.residue.as_constant() {
                    return Scalar::Cyclo(Cyclo { order: a.order, residue: b.residue.scale(&c) });
                }
                if let Some(c) = b.residue.as_constant() {
                    return Scalar::Cyclo(Cyclo { order: a.order, residue: a.residue.scale(&c) });
                }
                Scalar::Cyclo(Cyclo::new(a.order, a.residue.mul(&b.residue)))
            }
            _ => panic!("mixing generic and root-of-unity scalars"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Generic(r) => Scalar::Generic(RatFunc { num: r.num.neg(), den: r.den.clone() }),
            Scalar::Cyclo(c) => Scalar::Cyclo(Cyclo { order: c.order, residue: c.residue.neg() }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

/// `[n]_q = 1 + q + … + q^{n−1}`.
pub fn q_int(n: u32, mode: QMode) -> Scalar {
    let coeffs = vec![BigRational::one(); n as usize];
    Scalar::from_poly(Poly::from_coeffs(coeffs), mode)
}

/// `[n!]_q = [1]_q [2]_q … [n]_q`.
pub fn q_factorial(n: u32, mode: QMode) -> Scalar {
    (1..=n).fold(Scalar::one(mode), |acc, k| &acc * &q_int(k, mode))
}

type BinomialKey = (QMode, u32, u32);

fn binomial_memo() -> &'static Mutex<HashMap<BinomialKey, Scalar>> {
    static MEMO: OnceLock<Mutex<HashMap<BinomialKey, Scalar>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Gaussian binomial `[n p]_q` by the q-Pascal rule
/// `[n p] = [n−1 p−1] + q^p [n−1 p]`, which never divides and so stays
/// valid at roots of unity where factorials vanish.
pub fn q_binomial(n: u32, p: u32, mode: QMode) -> Result<Scalar> {
    if p > n {
        return Err(Error::Domain(format!("q_binomial({n}, {p}) requires p <= n")));
    }
    Ok(q_binomial_memo(n, p, mode))
}

fn q_binomial_memo(n: u32, p: u32, mode: QMode) -> Scalar {
    if p == 0 || p == n {
        return Scalar::one(mode);
    }
    if let Some(v) = binomial_memo().lock().unwrap().get(&(mode, n, p)) {
        return v.clone();
    }
    let v = &q_binomial_memo(n - 1, p - 1, mode)
        + &(&Scalar::q_pow(p as i64, mode) * &q_binomial_memo(n - 1, p, mode));
    binomial_memo().lock().unwrap().insert((mode, n, p), v.clone());
    v
}

/// Rational helper used in fixtures and tests.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: QMode = QMode::Generic;

    fn poly_scalar(c: &[i64]) -> Scalar {
        Scalar::from_poly(Poly::from_ints(c), G)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), Poly::from_ints(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), Poly::from_ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn q_int_examples() {
        assert!(q_int(0, G).is_zero());
        assert_eq!(q_int(2, G), poly_scalar(&[1, 1]));
        assert!(q_int(3, QMode::RootOfUnity(3)).is_zero());
    }

    #[test]
    fn q_factorial_examples() {
        assert!(q_factorial(0, G).is_one());
        // (1+q)(1+q+q^2) expanded by hand
        assert_eq!(q_factorial(3, G), poly_scalar(&[1, 2, 2, 1]));
        for n in 2..=8 {
            assert!(q_factorial(n, QMode::RootOfUnity(n)).is_zero());
        }
    }

    #[test]
    fn q_binomial_examples() {
        assert!(q_binomial(7, 0, G).unwrap().is_one());
        // [4]_q [3]_q / [2]_q, divided out by hand
        assert_eq!(q_binomial(4, 2, G).unwrap(), poly_scalar(&[1, 1, 2, 1, 1]));
        assert!(q_binomial(3, 1, QMode::RootOfUnity(3)).unwrap().is_zero());
        assert!(matches!(q_binomial(2, 3, G), Err(Error::Domain(_))));
    }

    #[test]
    fn roots_of_unity_relations() {
        for n in 1..=12u32 {
            let mode = QMode::RootOfUnity(n);
            assert!(Scalar::q(mode).pow(n).is_one());
            for k in 1..n {
                assert!(!Scalar::q(mode).pow(k).is_one(), "q is primitive");
            }
        }
        assert_eq!(Scalar::q(QMode::RootOfUnity(2)), Scalar::from_int(-1, QMode::RootOfUnity(2)));
        assert!(Scalar::q(QMode::RootOfUnity(1)).is_one());
    }

    #[test]
    fn inverse_and_division() {
        let m = QMode::RootOfUnity(5);
        let a = Scalar::from_poly(Poly::from_ints(&[2, -1, 0, 3]), m);
        assert!((&a * &a.inv().unwrap()).is_one());
        let g = poly_scalar(&[1, 1]) / poly_scalar(&[1, 0, -1]);
        assert_eq!(g.to_string(), "-1*q^0/-1*q^0+1*q^1");
        assert_eq!(g.to_string().parse::<Scalar>().unwrap(), g);
        assert!(Scalar::zero(m).inv().is_none());
    }

    #[test]
    fn string_forms_round_trip() {
        let m = QMode::RootOfUnity(3);
        let a = Scalar::from_poly(Poly::from_coeffs(vec![rational(1, 2), rational(-3, 1)]), m);
        assert_eq!(a.to_string(), "1/2*q^0-3*q^1 (mod Phi_3)");
        assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        let g = poly_scalar(&[2, 0, 4]) / poly_scalar(&[6, 3]);
        assert_eq!(g.to_string(), "2*q^0+4*q^2/6*q^0+3*q^1");
        assert_eq!(g.to_string().parse::<Scalar>().unwrap(), g);
        assert_eq!("0".parse::<Scalar>().unwrap().to_string(), "0/1*q^0");
        assert_eq!(Scalar::parse_in("-3/4", m).unwrap(), Scalar::from_ratio(-3, 4, m));
        assert!("1*q^0 (mod Phi_0)".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn specialization_rejects_vanishing_denominator() {
        let g = Scalar::one(G) / poly_scalar(&[1, 1, 1]);
        assert!(g.coerce(QMode::RootOfUnity(3)).is_err());
        assert!(g.coerce(QMode::RootOfUnity(4)).is_ok());
    }

    #[test]
    fn negative_q_powers() {
        let m = QMode::RootOfUnity(4);
        assert!((&Scalar::q_pow(-1, m) * &Scalar::q(m)).is_one());
        assert!((&Scalar::q_pow(-3, G) * &Scalar::q_pow(3, G)).is_one());
    }
}
