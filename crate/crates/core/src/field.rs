//! Exact scalars over the rationals and over prime fields GF(p).
//!
//! Every scalar carries the field it lives in. Rationals are kept in lowest
//! terms with a positive denominator; values that fit in `i64` use an inline
//! representation and only spill to `BigRational` when they outgrow it, so
//! structural equality is exact equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("denominator of {0} is not invertible in {1}")]
    NotInvertibleIn(String, Field),
}

/// The ground field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// GF(p); rejects composite or trivial moduli.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NonPrimeModulus(p))
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero(self)
    }

    pub fn one(self) -> Scalar {
        Scalar::one(self)
    }

    pub fn int(self, n: i64) -> Scalar {
        Scalar::from_i64(self, n)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF {p}"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    /// Accepts `"Q"` and `"GF <p>"` (also `"GF(p)"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        let rest = t
            .strip_prefix("GF")
            .ok_or_else(|| FieldError::Parse(s.to_string()))?
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        let p: u64 = rest.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
        Field::prime(p)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational::Small { num: 0, den: 1 };
    pub const ONE: Rational = Rational::Small { num: 1, den: 1 };

    pub fn integer(n: i64) -> Rational {
        Rational::Small { num: n, den: 1 }
    }

    /// Builds `num/den`, reducing. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        if num == 0 {
            return Rational::ZERO;
        }
        let g = gcd_i128(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rational::Small { num, den },
            _ => Rational::Big(Box::new(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            ))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        // BigRational arithmetic keeps values reduced with positive denominator.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Rational::Small { num, den },
            _ => Rational::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small { num: 0, .. })
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small { num, .. } => BigInt::from(*num),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small { den, .. } => BigInt::from(*den),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                if b == d {
                    Self::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Self::from_i128(
                        *a as i128 * *d as i128 + *c as i128 * *b as i128,
                        *b as i128 * *d as i128,
                    )
                }
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Small { num, den } => Self::from_i128(-(*num as i128), *den as i128),
            Rational::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    pub fn inv(&self) -> Option<Rational> {
        match self {
            Rational::Small { num: 0, .. } => None,
            Rational::Small { num, den } => Some(Self::from_i128(*den as i128, *num as i128)),
            Rational::Big(b) => Some(Self::from_big(b.recip())),
        }
    }

    /// Reduction into GF(p); `None` when p divides the denominator.
    pub fn to_residue(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let n = self.numer().mod_floor(&pb).to_u64().expect("residue fits");
        let d = self.denom().mod_floor(&pb).to_u64().expect("residue fits");
        if d == 0 {
            return None;
        }
        Some(mul_mod(n, pow_mod(d, p - 2, p), p))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small { num, den: 1 } => write!(f, "{num}"),
            Rational::Small { num, den } => write!(f, "{num}/{den}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl FromStr for Rational {
    type Err = FieldError;

    /// Parses `"n"` or `"n/d"` with arbitrary-size integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::Parse(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.sub(other);
        match diff {
            Rational::Small { num, .. } => num.cmp(&0),
            Rational::Big(b) => {
                if b.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

/// An exact scalar: a rational or a residue modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rationals => Scalar::Q(Rational::ZERO),
            Field::Prime(p) => Scalar::Fp {
                value: 0,
                modulus: p,
            },
        }
    }

    pub fn one(field: Field) -> Scalar {
        match field {
            Field::Rationals => Scalar::Q(Rational::ONE),
            Field::Prime(p) => Scalar::Fp {
                value: 1 % p,
                modulus: p,
            },
        }
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rationals => Scalar::Q(Rational::integer(n)),
            Field::Prime(p) => Scalar::Fp {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// `num/den` mapped into `field`.
    pub fn from_ratio(field: Field, num: i64, den: i64) -> Result<Scalar, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Scalar::from_rational(field, &Rational::new(num, den))
    }

    pub fn from_rational(field: Field, r: &Rational) -> Result<Scalar, FieldError> {
        match field {
            Field::Rationals => Ok(Scalar::Q(r.clone())),
            Field::Prime(p) => r
                .to_residue(p)
                .map(|value| Scalar::Fp { value, modulus: p })
                .ok_or_else(|| FieldError::NotInvertibleIn(r.to_string(), field)),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.field())
    }

    fn mismatch(&self, other: &Scalar) -> FieldError {
        FieldError::FieldMismatch(self.field(), other.field())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a.add(b))),
            (
                Scalar::Fp {
                    value: a,
                    modulus: p,
                },
                Scalar::Fp {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let s = a + b;
                Ok(Scalar::Fp {
                    value: if s >= *p { s - p } else { s },
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a.mul(b))),
            (
                Scalar::Fp {
                    value: a,
                    modulus: p,
                },
                Scalar::Fp {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Ok(Scalar::Fp {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        if self.field() != other.field() {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inv()?)
    }

    /// Exact equality; scalars from different fields are not comparable.
    pub fn checked_eq(&self, other: &Scalar) -> Result<bool, FieldError> {
        if self.field() != other.field() {
            return Err(self.mismatch(other));
        }
        Ok(self == other)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Q(a) => a.inv().map(Scalar::Q).ok_or(FieldError::DivisionByZero),
            Scalar::Fp { value: 0, .. } => Err(FieldError::DivisionByZero),
            Scalar::Fp { value, modulus } => Ok(Scalar::Fp {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        }
    }

    /// Integer power, `exp` may be negative for nonzero scalars.
    pub fn pow(&self, exp: i64) -> Result<Scalar, FieldError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one(self.field());
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Maps an integer-valued or rational scalar into another field.
    pub fn to_field(&self, field: Field) -> Result<Scalar, FieldError> {
        match (self, field) {
            (Scalar::Q(r), f) => Scalar::from_rational(f, r),
            (Scalar::Fp { modulus, .. }, Field::Prime(p)) if *modulus == p => Ok(self.clone()),
            _ => Err(FieldError::FieldMismatch(self.field(), field)),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    /// Parses `"n"`, `"n/d"` or `"k mod p"` without a field context.
    pub fn parse(s: &str) -> Result<Scalar, FieldError> {
        let t = s.trim();
        if let Some((k, p)) = t.split_once("mod") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| FieldError::Parse(s.to_string()))?;
            let field = Field::prime(p)?;
            let k: Rational = k.parse()?;
            return Scalar::from_rational(field, &k);
        }
        Ok(Scalar::Q(t.parse()?))
    }

    /// Parses a literal and maps it into `field`; `"k mod p"` must name the same prime.
    pub fn parse_in(field: Field, s: &str) -> Result<Scalar, FieldError> {
        let raw = Scalar::parse(s)?;
        raw.to_field(field)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s)
    }
}

// Operator sugar panics on mismatched fields; use the `checked_*` methods
// when the fields are not known to agree.
impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(Field::Rationals, n, d).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn inverse_mod_seven() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.int(3).inv().unwrap(), f.int(5));
    }

    #[test]
    fn canonical_reduction() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(3, -6).to_string(), "-1/2");
        assert!(q(2, 4).checked_eq(&q(1, 2)).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(q(0, 1).inv(), Err(FieldError::DivisionByZero));
        assert_eq!(Field::prime(91), Err(FieldError::NonPrimeModulus(91)));
        assert_eq!(Field::prime(1), Err(FieldError::NonPrimeModulus(1)));
        let f = Field::prime(5).unwrap();
        assert!(matches!(
            q(1, 2).checked_add(&f.one()),
            Err(FieldError::FieldMismatch(_, _))
        ));
        assert!(q(1, 2).checked_eq(&f.one()).is_err());
        assert_eq!(f.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn serialization_forms() {
        let f = Field::prime(101).unwrap();
        assert_eq!(f.int(-1).to_string(), "100 mod 101");
        assert_eq!(Scalar::parse("100 mod 101").unwrap(), f.int(-1));
        assert_eq!(Scalar::parse("-7/14").unwrap(), q(-1, 2));
        assert_eq!(Scalar::parse_in(f, "1/2").unwrap(), f.int(51));
        assert!(Scalar::parse_in(Field::prime(7).unwrap(), "3 mod 101").is_err());
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("x").is_err());
        assert_eq!("GF 101".parse::<Field>().unwrap(), f);
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
    }

    #[test]
    fn big_values_spill_and_return() {
        let big = q(i64::MAX, 1);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Q(Rational::Big(_))));
        let back = sq.checked_div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rational::Small { .. })));
        let s = sq.to_string();
        assert_eq!(Scalar::parse(&s).unwrap(), sq);
        let m = q(i64::MIN, 1);
        assert_eq!((-&m).to_string(), "9223372036854775808");
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(2_147_483_647));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    fn any_q() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| q(n, d))
    }

    fn any_fp() -> impl Strategy<Value = Scalar> {
        (0i64..101).prop_map(|n| Scalar::from_i64(Field::Prime(101), n))
    }

    fn axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
        assert_eq!(&(a + b) + c, a + &(b + c));
        assert_eq!(&(a * b) * c, a * &(b * c));
        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        assert_eq!(a + b, b + a);
        assert_eq!(a * b, b * a);
        assert!((a + &a.neg()).is_zero());
        if !a.is_zero() {
            assert!((a * &a.inv().unwrap()).is_one());
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in any_q(), b in any_q(), c in any_q()) {
            axioms(&a, &b, &c);
        }

        #[test]
        fn prime_field_axioms(a in any_fp(), b in any_fp(), c in any_fp()) {
            axioms(&a, &b, &c);
        }

        #[test]
        fn display_parse_round_trip(a in any_q(), k in 0i64..101) {
            prop_assert_eq!(Scalar::parse(&a.to_string()).unwrap(), a.clone());
            let x = Scalar::from_i64(Field::Prime(101), k);
            prop_assert_eq!(Scalar::parse(&x.to_string()).unwrap(), x);
            // canonicalization is idempotent
            let again = Scalar::parse(&Scalar::parse(&a.to_string()).unwrap().to_string()).unwrap();
            prop_assert_eq!(again, a);
        }
    }
}
