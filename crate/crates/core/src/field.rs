//! Coefficient fields: exact rationals and prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use serde::Serialize;

use crate::error::{Error, Result};

/// Default prime for the modular backend.
pub const DEFAULT_PRIME: u64 = 32003;

/// A coefficient field. The field value carries any runtime parameters
/// (the modulus for prime fields); elements are plain values.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Fails over F_p when the denominator is divisible by p.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    /// Signed textual form: integers or `p/q`; prime-field residues are
    /// printed in the symmetric range.
    fn format(&self, a: &Self::Elem) -> String;
    fn characteristic(&self) -> u64;
    /// `"QQ"` or `"GF(p)"`.
    fn name(&self) -> String;
    /// Exact fields produce "exact" certificates, prime fields "modular".
    fn is_exact(&self) -> bool;

    /// Scalar that brings a coefficient list (leading coefficient first)
    /// into normal form: primitive integers with positive leading
    /// coefficient over Q, monic over F_p.
    fn normalizer<'a, I>(&self, coeffs: I) -> Self::Elem
    where
        I: Iterator<Item = &'a Self::Elem>,
        Self::Elem: 'a;

    /// Multipliers `(a, b)` with `a * lc_f == b * lc_g`, used for
    /// `f <- a f - b m g`. Over Q with integral inputs these stay integral.
    fn cancel_pair(&self, lc_f: &Self::Elem, lc_g: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() * b.numer());
        }
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
    fn is_exact(&self) -> bool {
        true
    }

    fn normalizer<'a, I>(&self, coeffs: I) -> BigRational
    where
        I: Iterator<Item = &'a BigRational>,
    {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        let mut lead_negative = None;
        for c in coeffs {
            if lead_negative.is_none() {
                lead_negative = Some(c.is_negative());
            }
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return BigRational::one();
        }
        let scale = BigRational::new(den_lcm, num_gcd);
        if lead_negative == Some(true) {
            -scale
        } else {
            scale
        }
    }

    fn cancel_pair(&self, lc_f: &BigRational, lc_g: &BigRational) -> (BigRational, BigRational) {
        if lc_f.is_integer() && lc_g.is_integer() {
            let g = lc_f.numer().gcd(lc_g.numer());
            let mut a = lc_g.numer() / &g;
            let mut b = lc_f.numer() / &g;
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            (BigRational::from_integer(a), BigRational::from_integer(b))
        } else {
            (BigRational::one(), lc_f / lc_g)
        }
    }
}

/// The prime field F_p for an odd prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        r.to_u64().expect("residue fits in u64")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(self.p as i64) as u64)
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let num = self.reduce_bigint(q.numer());
        let den = self.reduce_bigint(q.denom());
        let inv = self.inv(&den).ok_or(Error::NotInvertibleModP {
            value: q.to_string(),
            prime: self.p,
        })?;
        Ok(self.mul(&num, &inv))
    }
    fn format(&self, a: &u64) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
    fn is_exact(&self) -> bool {
        false
    }

    fn normalizer<'a, I>(&self, mut coeffs: I) -> u64
    where
        I: Iterator<Item = &'a u64>,
    {
        match coeffs.next() {
            Some(lc) => self.inv(lc).unwrap_or(1),
            None => 1,
        }
    }

    fn cancel_pair(&self, lc_f: &u64, lc_g: &u64) -> (u64, u64) {
        (1, self.div(lc_f, lc_g).expect("nonzero leading coefficient"))
    }
}

/// Parses `"p/q"`, `"-p"`, `"7"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Coefficient field chosen at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "prime", rename_all = "snake_case")]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

impl FieldChoice {
    pub fn default_prime() -> Self {
        FieldChoice::Prime(DEFAULT_PRIME)
    }

    pub fn is_exact(self) -> bool {
        self == FieldChoice::Rationals
    }

    pub fn name(self) -> String {
        match self {
            FieldChoice::Rationals => Rationals.name(),
            FieldChoice::Prime(p) => format!("GF({p})"),
        }
    }

    /// Checks that a prime choice names a usable prime.
    pub fn validated(self) -> Result<Self> {
        self.prime_field().map(|_| self)
    }

    pub fn prime_field(self) -> Result<Option<PrimeField>> {
        match self {
            FieldChoice::Rationals => Ok(None),
            FieldChoice::Prime(p) => PrimeField::new(p).map(Some),
        }
    }
}

impl std::str::FromStr for FieldChoice {
    type Err = Error;

    /// `QQ`, `q`, `fp` (the default prime) or `GF(p)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "qq" | "q" | "rationals" => return Ok(FieldChoice::Rationals),
            "fp" => return Ok(FieldChoice::default_prime()),
            _ => {}
        }
        let p = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
        PrimeField::new(p)?;
        Ok(FieldChoice::Prime(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(32001).is_err());
    }

    #[test]
    fn fp_inverse() {
        let f = PrimeField::default();
        for a in [1u64, 2, 3, 17, 32002] {
            let i = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &i), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn fp_from_rational_and_format() {
        let f = PrimeField::default();
        let half = f.from_rational(&parse_rational("1/2").unwrap()).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert_eq!(f.format(&f.from_i64(-5)), "-5");
        assert!(f.from_rational(&parse_rational("1/32003").unwrap()).is_err());
    }

    #[test]
    fn rational_normalizer_makes_primitive() {
        let q = Rationals;
        let cs = [parse_rational("-2/3").unwrap(), parse_rational("4/9").unwrap()];
        let s = q.normalizer(cs.iter());
        let scaled: Vec<_> = cs.iter().map(|c| q.mul(c, &s)).collect();
        assert_eq!(scaled[0], q.from_i64(3));
        assert_eq!(scaled[1], q.from_i64(-2));
    }

    #[test]
    fn cancel_pair_integral() {
        let q = Rationals;
        let (a, b) = q.cancel_pair(&q.from_i64(6), &q.from_i64(-4));
        assert_eq!(q.mul(&a, &q.from_i64(6)), q.mul(&b, &q.from_i64(-4)));
        assert!(a.is_integer() && b.is_integer() && a.is_positive());
    }
}
