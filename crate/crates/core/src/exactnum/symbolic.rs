//! Exact real numbers of the form `Σ q · √d · π^j`.
//!
//! Covers every closed-form quantity the toolkit reports: circle lengths such
//! as `√2` or `2π`, unit-sphere volumes (rational multiples of `π^j`) and
//! Laplace eigenvalues `(2πk/ℓ)²`. The monomials `√d·π^j` with `d`
//! squarefree are linearly independent over `Q`, so equality is exact;
//! ordering falls back to floating point only between unequal values.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::scalar::format_rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ClosedForm {
    /// (squarefree radicand, power of π) → coefficient
    terms: BTreeMap<(u64, i32), BigRational>,
}

fn squarefree_split(n: u64) -> (u64, u64) {
    // n = s² · r with r squarefree
    let mut r = 1u64;
    let mut s = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    r *= m;
    (s, r)
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: BigRational) -> Self {
        Self::monomial(q, 1, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `q · √radicand · π^pi_power`.
    pub fn monomial(q: BigRational, radicand: u64, pi_power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() && radicand != 0 {
            let (s, r) = squarefree_split(radicand);
            terms.insert((r, pi_power), q * BigRational::from_integer(s.into()));
        }
        ClosedForm { terms }
    }

    /// `√q` for a nonnegative rational `q`.
    pub fn sqrt_rational(q: &BigRational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        // √(p/q) = √(p q) / q
        let pq = (q.numer() * q.denom())
            .to_u64()
            .expect("radicand fits in u64");
        Self::monomial(BigRational::new(BigInt::one(), q.denom().clone()), pq, 0)
    }

    pub fn pi_power(j: i32) -> Self {
        Self::monomial(BigRational::one(), 1, j)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(q)` when the value is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(1, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let e = terms.entry(*k).or_insert_with(BigRational::zero);
            *e += v;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        ClosedForm { terms }
    }

    pub fn neg(&self) -> Self {
        ClosedForm {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        ClosedForm {
            terms: self.terms.iter().map(|(k, v)| (*k, v * q)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((r1, p1), c1) in &self.terms {
            for ((r2, p2), c2) in &other.terms {
                let g = r1.gcd(r2);
                // √r1 √r2 = g √(r1 r2 / g²)
                let rad = (r1 / g) * (r2 / g);
                let q = c1 * c2 * BigRational::from_integer(g.into());
                out = out.add(&Self::monomial(q, rad, p1 + p2));
            }
        }
        out
    }

    /// Inverse of a single monomial; `None` for sums or zero.
    pub fn inv_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((r, p), c) = self.terms.iter().next().unwrap();
        // 1/(c √r π^p) = √r / (c r) π^-p
        Some(Self::monomial(
            (c * BigRational::from_integer((*r).into())).recip(),
            *r,
            -p,
        ))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|((r, p), c)| {
                c.to_f64().unwrap_or(f64::NAN) * (*r as f64).sqrt() * std::f64::consts::PI.powi(*p)
            })
            .sum()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.to_f64() > 0.0
    }
}

impl PartialOrd for ClosedForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClosedForm {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(&b);
        }
        self.to_f64()
            .partial_cmp(&other.to_f64())
            .filter(|o| *o != Ordering::Equal)
            .unwrap_or_else(|| self.terms.cmp(&other.terms))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((r, p), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let bare = *r == 1 && *p == 0;
            if bare || !c.is_one() {
                write!(f, "{}", format_rational(c))?;
                if !bare {
                    write!(f, "*")?;
                }
            }
            let mut parts = Vec::new();
            if *r != 1 {
                parts.push(format!("sqrt({r})"));
            }
            match *p {
                0 => {}
                1 => parts.push("pi".into()),
                _ => parts.push(format!("pi^{p}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ClosedForm {
    type Err = String;

    /// Sums of products and quotients of integers, `sqrt(q)` and `pi^k`,
    /// e.g. `2*sqrt(2)`, `1/sqrt(2)`, `4*pi^2 - 1/3`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .replace('√', "sqrt")
            .replace('π', "pi");
        if s.is_empty() {
            return Err("empty expression".into());
        }
        let mut total = ClosedForm::zero();
        // split into signed terms at top-level + and -
        let mut terms: Vec<(bool, String)> = Vec::new();
        let (mut depth, mut cur, mut neg) = (0i32, String::new(), false);
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if (ch == '+' || ch == '-') && depth == 0 && !cur.is_empty() && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
                continue;
            }
            if ch == '-' && depth == 0 && cur.is_empty() {
                neg = !neg;
                continue;
            }
            cur.push(ch);
        }
        terms.push((neg, cur));
        for (neg, t) in terms {
            let v = parse_term(&t)?;
            total = if neg { total.sub(&v) } else { total.add(&v) };
        }
        Ok(total)
    }
}

fn parse_term(t: &str) -> Result<ClosedForm, String> {
    let mut acc = ClosedForm::int(1);
    let mut divide = false;
    let mut rest = t;
    loop {
        let (factor, tail) = split_factor(rest)?;
        let f = parse_factor(factor)?;
        acc = if divide {
            acc.mul(
                &f.inv_monomial()
                    .ok_or_else(|| format!("cannot divide by {factor}"))?,
            )
        } else {
            acc.mul(&f)
        };
        match tail.chars().next() {
            None => return Ok(acc),
            Some(op @ ('*' | '/')) => {
                divide = op == '/';
                rest = &tail[1..];
            }
            Some(c) => return Err(format!("unexpected '{c}' in {t}")),
        }
    }
}

fn split_factor(s: &str) -> Result<(&str, &str), String> {
    if let Some(inner) = s.strip_prefix("sqrt(") {
        let close = inner
            .find(')')
            .ok_or_else(|| format!("unclosed sqrt in {s}"))?;
        return Ok(s.split_at(5 + close + 1));
    }
    let end = s.find(['*', '/']).unwrap_or(s.len());
    Ok(s.split_at(end))
}

fn parse_factor(f: &str) -> Result<ClosedForm, String> {
    if let Some(arg) = f.strip_prefix("sqrt") {
        let inner = arg
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(arg);
        let q = super::scalar::parse_rational(inner)
            .ok_or_else(|| format!("bad radicand '{inner}'"))?;
        if q.is_negative() {
            return Err(format!("negative radicand {inner}"));
        }
        return Ok(ClosedForm::sqrt_rational(&q));
    }
    if let Some(p) = f.strip_prefix("pi") {
        let k = match p.strip_prefix('^') {
            Some(k) => k
                .parse::<i32>()
                .map_err(|e| format!("bad power of pi '{k}': {e}"))?,
            None if p.is_empty() => 1,
            None => return Err(format!("bad factor '{f}'")),
        };
        return Ok(ClosedForm::pi_power(k));
    }
    let n: BigInt = f.parse().map_err(|_| format!("bad factor '{f}'"))?;
    Ok(ClosedForm::rational(BigRational::from_integer(n)))
}

impl Serialize for ClosedForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn surd_arithmetic() {
        let r2 = ClosedForm::sqrt_rational(&q(2, 1));
        let inv = ClosedForm::sqrt_rational(&q(1, 2));
        assert_eq!(r2.mul(&r2), ClosedForm::int(2));
        assert_eq!(inv.scale(&q(2, 1)), r2);
        assert_eq!(r2.inv_monomial().unwrap(), inv);
        assert_eq!(ClosedForm::sqrt_rational(&q(8, 1)), r2.scale(&q(2, 1)));
    }

    #[test]
    fn ordering_mixes_pi_and_rationals() {
        let a = ClosedForm::int(4);
        let b = ClosedForm::pi_power(2).scale(&q(1, 2)); // ≈ 4.93
        assert!(a < b);
        assert_eq!(format!("{b}"), "1/2*pi^2");
        assert!(ClosedForm::zero() < a);
    }

    #[test]
    fn parses_lengths() {
        let r2 = ClosedForm::sqrt_rational(&q(2, 1));
        assert_eq!("sqrt(2)".parse::<ClosedForm>().unwrap(), r2);
        assert_eq!(
            "1/sqrt(2)".parse::<ClosedForm>().unwrap(),
            r2.scale(&q(1, 2))
        );
        assert_eq!(
            "2*sqrt(2) - 1/2".parse::<ClosedForm>().unwrap(),
            r2.scale(&q(2, 1)).sub(&ClosedForm::rational(q(1, 2)))
        );
        assert_eq!(
            "4*pi^2".parse::<ClosedForm>().unwrap(),
            ClosedForm::pi_power(2).scale(&q(4, 1))
        );
        assert_eq!(
            "√3".parse::<ClosedForm>().unwrap(),
            ClosedForm::sqrt_rational(&q(3, 1))
        );
        for bad in ["", "sqrt(-2)", "2*", "x"] {
            assert!(bad.parse::<ClosedForm>().is_err(), "{bad}");
        }
        let r = ClosedForm::sqrt_rational(&q(2, 1)).scale(&q(3, 5));
        assert_eq!(r.to_string().parse::<ClosedForm>().unwrap(), r);
    }
}
