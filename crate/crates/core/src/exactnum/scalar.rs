use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::cyclotomic::Cyclotomic;

/// Exact scalar: a rational number or an element of a cyclotomic field.
///
/// Values are kept canonical: a cyclotomic value that happens to be rational
/// is always stored as [`ExactScalar::Rational`], so integers and rationals
/// (denominator 1 or reduced `num/den`) compare structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactScalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
}

impl Hash for ExactScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Normalized trace does not depend on the ambient order, so it is
        // compatible with the lifting equality of cyclotomic values.
        match self {
            ExactScalar::Rational(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            ExactScalar::Cyclotomic(c) => {
                1u8.hash(state);
                c.normalized_trace().hash(state);
            }
        }
    }
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        ExactScalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ExactScalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar::Rational(r)
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        match c.as_rational() {
            Some(r) => ExactScalar::Rational(r),
            None => ExactScalar::Cyclotomic(c),
        }
    }

    /// `ζ_N^k`.
    pub fn zeta(order: u32, k: i64) -> Self {
        Self::from_cyclotomic(Cyclotomic::zeta_pow(order, k))
    }

    /// `cos(2πk/N)`.
    pub fn cos_2pi(k: i64, n: u32) -> Self {
        let c = Cyclotomic::zeta_pow(n, k).add(&Cyclotomic::zeta_pow(n, -k));
        Self::from_cyclotomic(c.scale(&BigRational::new(1.into(), 2.into())))
    }

    /// `sin(2πk/N)`, living in `Q(ζ_lcm(N,4))`.
    pub fn sin_2pi(k: i64, n: u32) -> Self {
        let diff = Cyclotomic::zeta_pow(n, k).sub(&Cyclotomic::zeta_pow(n, -k));
        // (ζ^k - ζ^-k) / (2i) = -i (ζ^k - ζ^-k) / 2
        let minus_i_half = Cyclotomic::zeta_pow(4, 3).scale(&BigRational::new(1.into(), 2.into()));
        Self::from_cyclotomic(diff.mul(&minus_i_half))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_zero(),
            ExactScalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExactScalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactScalar::Rational(r) => Some(r),
            ExactScalar::Cyclotomic(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            ExactScalar::Rational(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    /// Cyclotomic order of the value (1 for rationals).
    pub fn order(&self) -> u32 {
        match self {
            ExactScalar::Rational(_) => 1,
            ExactScalar::Cyclotomic(c) => c.order(),
        }
    }

    fn to_cyc(&self, order: u32) -> Cyclotomic {
        match self {
            ExactScalar::Rational(r) => Cyclotomic::from_rational(order, r.clone()),
            ExactScalar::Cyclotomic(c) => c.lift(c.order().lcm(&order)),
        }
    }

    fn binary(
        &self,
        other: &Self,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        cyc: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Self {
        match (self, other) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => {
                ExactScalar::Rational(rat(a, b))
            }
            _ => {
                let l = self.order().lcm(&other.order());
                Self::from_cyclotomic(cyc(&self.to_cyc(l), &other.to_cyc(l)))
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a + b, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a - b, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        self.binary(other, |a, b| a * b, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(-r),
            ExactScalar::Cyclotomic(c) => ExactScalar::Cyclotomic(c.neg()),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match self {
            ExactScalar::Rational(r) if r.is_zero() => None,
            ExactScalar::Rational(r) => Some(ExactScalar::Rational(r.recip())),
            ExactScalar::Cyclotomic(c) => c.inv().map(Self::from_cyclotomic),
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn conj(&self) -> Self {
        match self {
            ExactScalar::Rational(_) => self.clone(),
            ExactScalar::Cyclotomic(c) => Self::from_cyclotomic(c.conj()),
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        match self {
            ExactScalar::Rational(r) => (r.to_f64().unwrap_or(f64::NAN), 0.0),
            ExactScalar::Cyclotomic(c) => c.to_complex(),
        }
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        ExactScalar::Rational(r)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{r}"),
            ExactScalar::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Formats a rational as `"p"` or `"p/q"` (the inverse of [`parse_rational`]).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rational_from_cyclotomic() {
        let i = ExactScalar::zeta(4, 1);
        assert!(matches!(i, ExactScalar::Cyclotomic(_)));
        assert_eq!(i.mul(&i), ExactScalar::int(-1));
        assert_eq!(ExactScalar::ratio(4, -6), ExactScalar::ratio(-2, 3));
    }

    #[test]
    fn trig_identities() {
        for n in [3u32, 5, 8, 12] {
            for k in 0..n as i64 {
                let c = ExactScalar::cos_2pi(k, n);
                let s = ExactScalar::sin_2pi(k, n);
                assert_eq!(c.mul(&c).add(&s.mul(&s)), ExactScalar::one(), "n={n} k={k}");
                let (re, _) = s.to_complex();
                let expect = (2.0 * std::f64::consts::PI * k as f64 / n as f64).sin();
                assert!((re - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rational_roundtrip_text() {
        let r = parse_rational(" -6/4 ").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert!(parse_rational("1/0").is_none());
    }
}
