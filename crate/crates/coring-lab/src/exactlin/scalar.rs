//! Field elements for GF(p) and the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::LinError;

/// The ground field: a prime field or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u32),
    Rational,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// GF(p); `p` is checked by trial division.
    pub fn prime(p: u64) -> Result<Field, LinError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(LinError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn rational() -> Field {
        Field::Rational
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p as u64,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Mod {
                v: n.rem_euclid(p as i64) as u32,
                p,
            },
            Field::Rational => Scalar::Rat(Rational::from_i64(n)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    v: r.to_u32().expect("residue fits"),
                    p,
                }
            }
            Field::Rational => Scalar::Rat(Rational::from_big(BigRational::from_integer(n.clone()))),
        }
    }

    /// `num/den`; in GF(p) the denominator must be invertible.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, LinError> {
        if den.is_zero() {
            return Err(LinError::ZeroDenominator);
        }
        match *self {
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                if d.is_zero() {
                    return Err(LinError::ZeroDenominator);
                }
                Ok(self.from_bigint(num) * d.inv())
            }
            Field::Rational => Ok(Scalar::Rat(Rational::from_big(BigRational::new(
                num.clone(),
                den.clone(),
            )))),
        }
    }

    /// Parses `"3"`, `"-2"` or `"5/7"`.
    pub fn parse(&self, text: &str) -> Result<Scalar, LinError> {
        let t = text.trim();
        let bad = || LinError::ParseScalar(text.to_string());
        match t.split_once('/') {
            Some((a, b)) => {
                let n: BigInt = a.trim().parse().map_err(|_| bad())?;
                let d: BigInt = b.trim().parse().map_err(|_| bad())?;
                self.from_ratio(&n, &d)
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Field::Prime(p) => format!("GF({p})"),
            Field::Rational => "Q".to_string(),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Prime(p), Scalar::Mod { p: q, .. }) => p == q,
            (Field::Rational, Scalar::Rat(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Rational number; small values stay on machine words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    /// numerator, denominator > 0, coprime, neither equal to `i64::MIN`
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn from_i64(n: i64) -> Rational {
        if n == i64::MIN {
            Rational::Big(Box::new(BigRational::from_integer(BigInt::from(n))))
        } else {
            Rational::Small(n, 1)
        }
    }

    fn from_i128(n: i128, d: i128) -> Rational {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        let lim = i64::MAX as i128;
        if n.abs() <= lim && d <= lim {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn from_big(r: BigRational) -> Rational {
        let lim = BigInt::from(i64::MAX);
        if r.numer().abs() <= lim && *r.denom() <= lim {
            Rational::Small(r.numer().to_i64().unwrap(), r.denom().to_i64().unwrap())
        } else {
            Rational::Big(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(a, b) => Rational::Small(-a, *b),
            Rational::Big(r) => Rational::from_big(-(**r).clone()),
        }
    }

    fn inv(&self) -> Rational {
        match self {
            Rational::Small(a, b) => {
                assert!(*a != 0, "division by zero");
                Rational::from_i128(*b as i128, *a as i128)
            }
            Rational::Big(r) => Rational::from_big(r.recip()),
        }
    }
}

/// An element of a [`Field`]. Arithmetic between different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { v: u32, p: u32 },
    Rat(Rational),
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { v, .. } => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { v, .. } => *v == 1,
            Scalar::Rat(r) => matches!(r, Rational::Small(1, 1)),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Mod { v, p } => {
                assert!(*v != 0, "division by zero");
                Scalar::Mod {
                    v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32,
                    p: *p,
                }
            }
            Scalar::Rat(r) => Scalar::Rat(r.inv()),
        }
    }

    /// `(-1)^e` times self.
    pub fn signed(self, odd: bool) -> Scalar {
        if odd {
            -self
        } else {
            self
        }
    }

    pub fn to_json_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { v, .. } => write!(f, "{v}"),
            Scalar::Rat(Rational::Small(n, 1)) => write!(f, "{n}"),
            Scalar::Rat(Rational::Small(n, d)) => write!(f, "{n}/{d}"),
            Scalar::Rat(Rational::Big(r)) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn mismatch() -> ! {
    panic!("scalars from different fields")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) => {
                if p != q {
                    mismatch()
                }
                let s = *a as u64 + *b as u64;
                let pp = *p as u64;
                Scalar::Mod {
                    v: if s >= pp { (s - pp) as u32 } else { s as u32 },
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) => {
                if p != q {
                    mismatch()
                }
                Scalar::Mod {
                    v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            _ => mismatch(),
        }
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { v, p } => Scalar::Mod {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
            Scalar::Rat(r) => Scalar::Rat(r.neg()),
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
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}
impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = &*self + &o;
    }
}
impl<'a> SubAssign<&'a Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}
impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, o: Scalar) {
        *self = &*self - &o;
    }
}
impl<'a> MulAssign<&'a Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check_by_trial_division() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(7919).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(91).is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(&a + &b, f.from_i64(1));
        assert_eq!(&a * &b, f.from_i64(1));
        assert_eq!(a.inv(), b);
        assert_eq!(-&a, f.from_i64(4));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn rational_overflow_promotes_and_demotes() {
        let q = Field::Rational;
        let big = q.from_i64(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Rat(Rational::Big(_))));
        let back = &sq * &big.inv();
        assert_eq!(back, big);
        let h = q.parse("1/2").unwrap();
        assert_eq!(&h + &h, q.one());
        assert_eq!(q.parse("-6/4").unwrap().to_string(), "-3/2");
    }

    #[test]
    fn parse_in_prime_field_inverts_denominator() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(2));
        assert!(f.parse("1/3").is_err());
    }
}
