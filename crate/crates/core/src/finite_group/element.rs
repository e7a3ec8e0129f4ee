use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, ExactScalar};

/// One element of a finite linear group.
///
/// Permutations use 0-based image arrays: `images[i] = j` means `e_i ↦ e_j`.
/// A signed permutation additionally multiplies by `signs[i]`, i.e.
/// `e_i ↦ signs[i]·e_{images[i]}`. Products follow matrix convention:
/// `a.compose(b)` applies `b` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Matrix(ExactMatrix),
    Permutation(Vec<u32>),
    SignedPermutation { images: Vec<u32>, signs: Vec<i8> },
}

fn check_bijection(images: &[u32]) -> Result<()> {
    let mut seen = vec![false; images.len()];
    for &j in images {
        let j = j as usize;
        if j >= images.len() || seen[j] {
            return Err(Error::InvalidParameter(format!(
                "{images:?} is not a bijection"
            )));
        }
        seen[j] = true;
    }
    Ok(())
}

impl GroupElement {
    pub fn matrix(m: ExactMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(
                "group elements are square matrices".into(),
            ));
        }
        Ok(GroupElement::Matrix(m))
    }

    pub fn permutation(images: Vec<u32>) -> Result<Self> {
        check_bijection(&images)?;
        Ok(GroupElement::Permutation(images))
    }

    pub fn signed_permutation(images: Vec<u32>, signs: Vec<i8>) -> Result<Self> {
        check_bijection(&images)?;
        if signs.len() != images.len() || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidParameter(
                "signs must be ±1, one per point".into(),
            ));
        }
        Ok(GroupElement::SignedPermutation { images, signs })
    }

    /// Diagonal ±1 element with `-1` at the given 1-based coordinates.
    pub fn sign_diagonal(n: usize, negated: &[usize]) -> Self {
        let mut signs = vec![1i8; n];
        for &p in negated {
            signs[p - 1] = -1;
        }
        GroupElement::SignedPermutation {
            images: (0..n as u32).collect(),
            signs,
        }
    }

    /// Matrix input, stored as a signed permutation when it is one.
    pub fn from_matrix_compact(m: ExactMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(
                "group elements are square matrices".into(),
            ));
        }
        let n = m.rows();
        let mut images = vec![0u32; n];
        let mut signs = vec![0i8; n];
        for j in 0..n {
            let mut hit = None;
            for i in 0..n {
                let x = m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let s = if x.is_one() {
                    1
                } else if x.neg().is_one() {
                    -1
                } else {
                    return Ok(GroupElement::Matrix(m));
                };
                if hit.is_some() {
                    return Ok(GroupElement::Matrix(m));
                }
                hit = Some((i, s));
            }
            let Some((i, s)) = hit else {
                return Ok(GroupElement::Matrix(m));
            };
            images[j] = i as u32;
            signs[j] = s;
        }
        match check_bijection(&images) {
            Ok(()) => Ok(GroupElement::SignedPermutation { images, signs }),
            Err(_) => Ok(GroupElement::Matrix(m)),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            GroupElement::Matrix(m) => m.rows(),
            GroupElement::Permutation(p) => p.len(),
            GroupElement::SignedPermutation { images, .. } => images.len(),
        }
    }

    /// Identity in the same representation.
    pub fn identity_like(&self) -> Self {
        let n = self.dim();
        match self {
            GroupElement::Matrix(_) => GroupElement::Matrix(ExactMatrix::identity(n)),
            GroupElement::Permutation(_) => GroupElement::Permutation((0..n as u32).collect()),
            GroupElement::SignedPermutation { .. } => GroupElement::SignedPermutation {
                images: (0..n as u32).collect(),
                signs: vec![1; n],
            },
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Matrix(m) => m.is_identity(),
            GroupElement::Permutation(p) => p.iter().enumerate().all(|(i, &j)| i as u32 == j),
            GroupElement::SignedPermutation { images, signs } => images
                .iter()
                .zip(signs)
                .enumerate()
                .all(|(i, (&j, &s))| i as u32 == j && s == 1),
        }
    }

    fn as_signed(&self) -> Option<(Vec<u32>, Vec<i8>)> {
        match self {
            GroupElement::Permutation(p) => Some((p.clone(), vec![1; p.len()])),
            GroupElement::SignedPermutation { images, signs } => {
                Some((images.clone(), signs.clone()))
            }
            GroupElement::Matrix(_) => None,
        }
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        match self {
            GroupElement::Matrix(m) => m.clone(),
            _ => {
                let (images, signs) = self.as_signed().unwrap();
                let n = images.len();
                let mut m = ExactMatrix::zeros(n, n);
                for i in 0..n {
                    m.set(images[i] as usize, i, ExactScalar::int(signs[i] as i64));
                }
                m
            }
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "composing elements of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(match (self, other) {
            (GroupElement::Permutation(a), GroupElement::Permutation(b)) => {
                GroupElement::Permutation(b.iter().map(|&j| a[j as usize]).collect())
            }
            (GroupElement::Matrix(_), _) | (_, GroupElement::Matrix(_)) => {
                GroupElement::Matrix(self.to_matrix().mul(&other.to_matrix())?)
            }
            _ => {
                let (pa, sa) = self.as_signed().unwrap();
                let (pb, sb) = other.as_signed().unwrap();
                let images = pb.iter().map(|&j| pa[j as usize]).collect();
                let signs = pb
                    .iter()
                    .zip(&sb)
                    .map(|(&j, &s)| s * sa[j as usize])
                    .collect();
                GroupElement::SignedPermutation { images, signs }
            }
        })
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Matrix(m) => {
                // Finite-order orthogonal elements: inverse is the transpose when
                // orthogonal; otherwise solve by elimination.
                if m.is_orthogonal() {
                    GroupElement::Matrix(m.transpose())
                } else {
                    GroupElement::Matrix(m.inverse().expect("group elements are invertible"))
                }
            }
            _ => {
                let (p, s) = self.as_signed().unwrap();
                let n = p.len();
                let mut ip = vec![0u32; n];
                let mut is = vec![1i8; n];
                for i in 0..n {
                    ip[p[i] as usize] = i as u32;
                    is[p[i] as usize] = s[i];
                }
                match self {
                    GroupElement::Permutation(_) => GroupElement::Permutation(ip),
                    _ => GroupElement::SignedPermutation {
                        images: ip,
                        signs: is,
                    },
                }
            }
        }
    }

    /// Cycle type of a (signed) permutation as `(length, sign product)` pairs.
    pub fn signed_cycles(&self) -> Option<Vec<(usize, i8)>> {
        let (p, s) = self.as_signed()?;
        let n = p.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut sign = 1i8;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                sign *= s[i];
                i = p[i] as usize;
                len += 1;
            }
            out.push((len, sign));
        }
        Some(out)
    }

    /// Coefficients of `det(I - tg)`, degree 0 up.
    pub fn det_one_minus_t(&self) -> Result<Vec<ExactScalar>> {
        match self.signed_cycles() {
            Some(cycles) => {
                let mut poly = vec![BigInt::from(1)];
                for (len, sign) in cycles {
                    let mut next = vec![BigInt::from(0); poly.len() + len];
                    for (k, c) in poly.iter().enumerate() {
                        next[k] += c;
                        next[k + len] -= c * BigInt::from(sign);
                    }
                    poly = next;
                }
                Ok(poly
                    .into_iter()
                    .map(|c| ExactScalar::Rational(c.into()))
                    .collect())
            }
            None => self.to_matrix().det_one_minus_t(),
        }
    }

    /// Characteristic polynomial `det(xI - g)`, degree 0 up.
    pub fn char_poly(&self) -> Result<Vec<ExactScalar>> {
        let mut d = self.det_one_minus_t()?;
        d.reverse();
        Ok(d)
    }

    /// Applies the element to a coordinate vector.
    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        match self {
            GroupElement::Matrix(m) => m.mul_vec(v),
            _ => {
                let (p, s) = self.as_signed().unwrap();
                let mut out = vec![ExactScalar::zero(); v.len()];
                for i in 0..v.len() {
                    out[p[i] as usize] = if s[i] == 1 { v[i].clone() } else { v[i].neg() };
                }
                out
            }
        }
    }

    /// Diagonal signs when the element is a diagonal ±1 matrix.
    pub fn diagonal_signs(&self) -> Option<Vec<i8>> {
        match self {
            GroupElement::Matrix(m) => m.sign_vector(),
            _ => {
                let (p, s) = self.as_signed().unwrap();
                p.iter()
                    .enumerate()
                    .all(|(i, &j)| i as u32 == j)
                    .then_some(s)
            }
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Matrix(m) => {
                if let Some(s) = m.sign_vector() {
                    let neg: Vec<String> = s
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x < 0)
                        .map(|(i, _)| (i + 1).to_string())
                        .collect();
                    if neg.is_empty() {
                        return write!(f, "I");
                    }
                    return write!(f, "a{}", neg.join(if s.len() > 9 { "," } else { "" }));
                }
                let rows: Vec<String> = (0..m.rows())
                    .map(|i| {
                        format!(
                            "[{}]",
                            m.row(i)
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        )
                    })
                    .collect();
                write!(f, "[{}]", rows.join(","))
            }
            GroupElement::Permutation(p) => {
                let parts: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
                write!(f, "p[{}]", parts.join(" "))
            }
            GroupElement::SignedPermutation { images, signs } => {
                if images.iter().enumerate().all(|(i, &j)| i as u32 == j) {
                    let neg: Vec<String> = signs
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x < 0)
                        .map(|(i, _)| (i + 1).to_string())
                        .collect();
                    if neg.is_empty() {
                        return write!(f, "I");
                    }
                    return write!(f, "a{}", neg.join(if signs.len() > 9 { "," } else { "" }));
                }
                let parts: Vec<String> = images
                    .iter()
                    .zip(signs)
                    .map(|(x, s)| format!("{}{}", if *s < 0 { "-" } else { "" }, x + 1))
                    .collect();
                write!(f, "s[{}]", parts.join(" "))
            }
        }
    }
}
