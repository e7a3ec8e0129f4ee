//! Small families of concrete groups used throughout the scenarios.

use super::element::GroupElement;
use crate::error::{Error, Result};

fn check_prime(p: u32) -> Result<()> {
    if p < 2
        || (2..p)
            .take_while(|d| d * d <= p)
            .any(|d| p.is_multiple_of(d))
    {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    Ok(())
}

/// Left-regular permutations of `(Z_p)³` on `p³` points, one per basis vector.
pub fn elementary_abelian_regular(p: u32) -> Result<Vec<GroupElement>> {
    check_prime(p)?;
    let pt = |a: u32, b: u32, c: u32| (a % p) * p * p + (b % p) * p + (c % p);
    let mut gens = Vec::new();
    for shift in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
        let mut images = vec![0u32; (p * p * p) as usize];
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    images[pt(a, b, c) as usize] = pt(a + shift.0, b + shift.1, c + shift.2);
                }
            }
        }
        gens.push(GroupElement::permutation(images)?);
    }
    Ok(gens)
}

/// Left-regular permutations of the mod-`p` Heisenberg group on `p³` points,
/// with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`. Returns the images of
/// `(1,0,0)` and `(0,1,0)`, which generate.
pub fn heisenberg_regular(p: u32) -> Result<Vec<GroupElement>> {
    check_prime(p)?;
    let pt = |a: u32, b: u32, c: u32| (a % p) * p * p + (b % p) * p + (c % p);
    let mut x = vec![0u32; (p * p * p) as usize];
    let mut y = x.clone();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                x[pt(a, b, c) as usize] = pt(a + 1, b, c + b);
                y[pt(a, b, c) as usize] = pt(a, b + 1, c);
            }
        }
    }
    Ok(vec![
        GroupElement::permutation(x)?,
        GroupElement::permutation(y)?,
    ])
}

/// Product action of permutation groups on the product of their point sets.
/// `factors[j]` lists generators of the `j`-th factor, all on `sizes[j]` points.
/// Points are numbered with the first factor most significant.
pub fn product_action(factors: &[Vec<GroupElement>]) -> Result<Vec<GroupElement>> {
    let sizes: Vec<usize> = factors
        .iter()
        .map(|f| f.first().map_or(1, GroupElement::dim))
        .collect();
    let total: usize = sizes.iter().product();
    let mut out = Vec::new();
    for (j, gens) in factors.iter().enumerate() {
        let stride: usize = sizes[j + 1..].iter().product();
        for g in gens {
            let GroupElement::Permutation(p) = g else {
                return Err(Error::InvalidParameter(
                    "product action needs plain permutations".into(),
                ));
            };
            if p.len() != sizes[j] {
                return Err(Error::DimensionMismatch(
                    "factor generators differ in degree".into(),
                ));
            }
            let images = (0..total)
                .map(|x| {
                    let digit = (x / stride) % sizes[j];
                    (x + (p[digit] as usize) * stride - digit * stride) as u32
                })
                .collect();
            out.push(GroupElement::permutation(images)?);
        }
    }
    Ok(out)
}

/// Diagonal sign matrices on `R^n`, one per list of negated 1-based coordinates.
pub fn sign_generators(n: usize, negated: &[&[usize]]) -> Vec<GroupElement> {
    negated
        .iter()
        .map(|s| GroupElement::sign_diagonal(n, s))
        .collect()
}

/// `diag(g, g, …, g)` with `copies` blocks, applied to every generator.
pub fn diagonal_copies(gens: &[GroupElement], copies: usize) -> Vec<GroupElement> {
    gens.iter()
        .map(|g| match g.diagonal_signs() {
            Some(s) => {
                let signs: Vec<i8> = (0..copies).flat_map(|_| s.iter().copied()).collect();
                let n = signs.len();
                GroupElement::SignedPermutation {
                    images: (0..n as u32).collect(),
                    signs,
                }
            }
            None => {
                let m = g.to_matrix();
                let id = crate::exactnum::ExactMatrix::identity(copies);
                GroupElement::Matrix(id.kron(&m))
            }
        })
        .collect()
}

/// Block-diagonal sum `diag(a, b)`.
pub fn block_sum(a: &GroupElement, b: &GroupElement) -> GroupElement {
    match (a.signed_cycles().is_some(), b.signed_cycles().is_some()) {
        (true, true) => {
            let (ma, mb) = (a.dim() as u32, b);
            let ext = |g: &GroupElement| -> (Vec<u32>, Vec<i8>) {
                match g {
                    GroupElement::Permutation(p) => (p.clone(), vec![1; p.len()]),
                    GroupElement::SignedPermutation { images, signs } => {
                        (images.clone(), signs.clone())
                    }
                    GroupElement::Matrix(_) => unreachable!(),
                }
            };
            let (mut ia, mut sa) = ext(a);
            let (ib, sb) = ext(mb);
            ia.extend(ib.into_iter().map(|x| x + ma));
            sa.extend(sb);
            GroupElement::SignedPermutation {
                images: ia,
                signs: sa,
            }
        }
        _ => {
            let (ma, mb) = (a.to_matrix(), b.to_matrix());
            let n = ma.rows() + mb.rows();
            let mut m = crate::exactnum::ExactMatrix::zeros(n, n);
            for i in 0..ma.rows() {
                for j in 0..ma.rows() {
                    m.set(i, j, ma.get(i, j).clone());
                }
            }
            let o = ma.rows();
            for i in 0..mb.rows() {
                for j in 0..mb.rows() {
                    m.set(o + i, o + j, mb.get(i, j).clone());
                }
            }
            GroupElement::Matrix(m)
        }
    }
}
