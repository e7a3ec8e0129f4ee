//! Elements of the cyclotomic field `Q(ζ_N)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}`, i.e. as the
//! remainder of a rational polynomial modulo the cyclotomic polynomial `Φ_N`.
//! Values of different orders are combined by lifting both into `Q(ζ_L)` with
//! `L = lcm(N, M)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Cyclotomic polynomial coefficients (low degree first), cached per order.
fn cyclotomic_poly(n: u32) -> std::sync::Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, std::sync::Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = exact_div_monic(&num, &den);
        }
    }
    let arc = std::sync::Arc::new(num);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Möbius function.
pub fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// An element of `Q(ζ_N)` in canonical (reduced) form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let order = order.max(1);
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); totient(order) as usize],
        }
    }

    pub fn from_rational(order: u32, r: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let order = order.max(1);
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_poly(order, poly)
    }

    /// Reduces an arbitrary rational polynomial in `ζ_N`.
    pub fn from_poly(order: u32, mut poly: Vec<BigRational>) -> Self {
        let order = order.max(1);
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        // x^N = 1 first, so degrees stay below N.
        if poly.len() > order as usize {
            let mut folded = vec![BigRational::zero(); order as usize];
            for (i, c) in poly.drain(..).enumerate() {
                folded[i % order as usize] += c;
            }
            poly = folded;
        }
        while poly.len() > deg {
            let top = poly.len() - 1;
            let c = poly.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    poly[top - deg + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
        poly.resize(deg, BigRational::zero());
        Cyclotomic {
            order,
            coeffs: poly,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the value lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(
                self.coeffs
                    .first()
                    .cloned()
                    .unwrap_or_else(BigRational::zero),
            )
        } else {
            None
        }
    }

    /// Re-expresses the value in `Q(ζ_M)`; `M` must be a multiple of the order.
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.order),
            "lift target must be a multiple of the order"
        );
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(m, poly)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let l = a.order.lcm(&b.order);
        (a.lift(l), b.lift(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic {
            order: a.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let n = a.coeffs.len();
        let mut poly = vec![BigRational::zero(); 2 * n.max(1) - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_poly(a.order, poly)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Galois automorphism `ζ ↦ ζ^a`, `gcd(a, N) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.order as i64;
        let mut poly = vec![BigRational::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as i64 * a).rem_euclid(n) as usize;
            poly[e] += c;
        }
        Self::from_poly(self.order, poly)
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let mut acc = Self::from_rational(self.order, BigRational::one());
        for a in 1..self.order.max(2) as i64 {
            if a.gcd(&(self.order as i64)) == 1 {
                acc = acc.mul(&self.galois(a));
            }
        }
        acc.as_rational().expect("norm is rational")
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut others = Self::from_rational(self.order, BigRational::one());
        for a in 2..self.order as i64 {
            if a.gcd(&(self.order as i64)) == 1 {
                others = others.mul(&self.galois(a));
            }
        }
        let n = self.mul(&others).as_rational().expect("norm is rational");
        Some(others.scale(&n.recip()))
    }

    /// Trace to `Q` divided by the field degree; independent of the ambient order.
    pub fn normalized_trace(&self) -> BigRational {
        let n = self.order;
        let mut acc = BigRational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = (i as u32).gcd(&n);
            let m = n / g;
            acc += c * BigRational::new(BigInt::from(mobius(m)), BigInt::from(totient(m)));
        }
        acc
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(0.0);
            let th = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += v * th.cos();
            im += v * th.sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z{}^{}", self.order, i)?,
                _ => write!(f, "{a}*z{}^{}", self.order, i)?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(15).len() - 1, 8);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=24 {
            let mut acc = Cyclotomic::zero(n);
            for k in 0..n as i64 {
                acc = acc.add(&Cyclotomic::zeta_pow(n, k));
            }
            assert!(acc.is_zero(), "N = {n}");
        }
    }

    #[test]
    fn i_squared_is_minus_one_in_any_lift() {
        let i = Cyclotomic::zeta_pow(4, 1);
        assert_eq!(i.mul(&i).as_rational(), Some(q(-1)));
        let i12 = Cyclotomic::zeta_pow(12, 3);
        assert_eq!(i, i12);
        assert_eq!(i.normalized_trace(), i12.normalized_trace());
    }

    #[test]
    fn inverse_and_norm() {
        let z = Cyclotomic::zeta_pow(5, 1).add(&Cyclotomic::from_rational(5, q(2)));
        let inv = z.inv().unwrap();
        assert_eq!(z.mul(&inv).as_rational(), Some(q(1)));
        // N(1 - ζ_p) = p
        let w = Cyclotomic::from_rational(7, q(1)).sub(&Cyclotomic::zeta_pow(7, 1));
        assert_eq!(w.norm(), q(7));
    }

    #[test]
    fn cosine_values() {
        // 2cos(2π/8) = √2, squared is 2
        let c = Cyclotomic::zeta_pow(8, 1).add(&Cyclotomic::zeta_pow(8, -1));
        assert_eq!(c.mul(&c).as_rational(), Some(q(2)));
        let (re, im) = c.to_complex();
        assert!((re - 2f64.sqrt()).abs() < 1e-12 && im.abs() < 1e-12);
    }
}
