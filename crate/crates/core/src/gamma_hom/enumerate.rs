use std::collections::HashMap;

use serde::Serialize;

use super::presentation::GroupPresentation;
use crate::error::{Error, Result};
use crate::finite_group::{constructions, generate_group, FiniteMatrixGroup, GroupElement};

pub const DEFAULT_HOM_BUDGET: u64 = 100_000_000;

/// Images of the generators, as element indices of the target group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Homomorphism {
    pub images: Vec<usize>,
}

impl Homomorphism {
    pub fn image_elements<'a>(&self, g: &'a FiniteMatrixGroup) -> Vec<&'a GroupElement> {
        self.images.iter().map(|&i| g.element(i)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&i| i == 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomClass {
    /// Lexicographically least tuple of the orbit.
    pub representative: Homomorphism,
    /// Sorted.
    pub orbit: Vec<Homomorphism>,
    pub stabilizer_order: usize,
}

pub fn evaluate_word(g: &FiniteMatrixGroup, images: &[usize], word: &[i32]) -> usize {
    word.iter().fold(0, |acc, &x| {
        let e = images[x.unsigned_abs() as usize - 1];
        g.mul(acc, if x > 0 { e } else { g.inv(e) })
    })
}

pub fn satisfies_relators(
    gamma: &GroupPresentation,
    g: &FiniteMatrixGroup,
    images: &[usize],
) -> bool {
    images.len() == gamma.generator_count
        && gamma
            .relators
            .iter()
            .all(|w| evaluate_word(g, images, w) == 0)
}

struct Search<'a> {
    g: &'a FiniteMatrixGroup,
    gamma: &'a GroupPresentation,
    /// `due[i]`: relators fully determined once generator `i` is assigned.
    due: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
    out: Vec<Homomorphism>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn generic(&mut self, prefix: &mut Vec<usize>) -> Result<()> {
        let i = prefix.len();
        if i == self.gamma.generator_count {
            self.out.push(Homomorphism {
                images: prefix.clone(),
            });
            return Ok(());
        }
        for x in 0..self.g.order() {
            self.tick()?;
            prefix.push(x);
            let ok = self.due[i]
                .iter()
                .all(|&r| evaluate_word(self.g, prefix, &self.gamma.relators[r]) == 0);
            if ok {
                self.generic(prefix)?;
            }
            prefix.pop();
        }
        Ok(())
    }

    /// Commuting tuples: generator `i+1` ranges over the common centralizer of the
    /// images so far.
    fn commuting(&mut self, prefix: &mut Vec<usize>, candidates: &[usize]) -> Result<()> {
        if prefix.len() == self.gamma.generator_count {
            self.out.push(Homomorphism {
                images: prefix.clone(),
            });
            return Ok(());
        }
        for &x in candidates {
            self.tick()?;
            let next: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|&y| self.g.mul(x, y) == self.g.mul(y, x))
                .collect();
            prefix.push(x);
            self.commuting(prefix, &next)?;
            prefix.pop();
        }
        Ok(())
    }
}

/// All homomorphisms `Γ → G`, in lexicographic order of image tuples.
pub fn enumerate_homs(
    gamma: &GroupPresentation,
    g: &FiniteMatrixGroup,
    budget: u64,
) -> Result<Vec<Homomorphism>> {
    let r = gamma.generator_count;
    let mut due = vec![Vec::new(); r];
    for (k, w) in gamma.relators.iter().enumerate() {
        if let Some(m) = w.iter().map(|x| x.unsigned_abs() as usize).max() {
            due[m - 1].push(k)
        }
    }
    let mut s = Search {
        g,
        gamma,
        due,
        budget,
        nodes: 0,
        out: Vec::new(),
    };
    if gamma.is_free_abelian() {
        let all: Vec<usize> = (0..g.order()).collect();
        s.commuting(&mut Vec::new(), &all)?;
    } else {
        s.generic(&mut Vec::new())?;
    }
    Ok(s.out)
}

/// Orbits of `HOM(Γ, G)` under simultaneous conjugation, sorted by representative.
pub fn hom_classes(
    gamma: &GroupPresentation,
    g: &FiniteMatrixGroup,
    budget: u64,
) -> Result<Vec<HomClass>> {
    let homs = enumerate_homs(gamma, g, budget)?;
    Ok(classes_of(g, homs))
}

pub fn classes_of(g: &FiniteMatrixGroup, homs: Vec<Homomorphism>) -> Vec<HomClass> {
    let gens: Vec<usize> = g
        .generators()
        .iter()
        .map(|x| g.index_of(x).expect("generator in group"))
        .collect();
    let pos: HashMap<&Homomorphism, usize> = homs.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let mut seen = vec![false; homs.len()];
    let mut out = Vec::new();
    for start in 0..homs.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let h = &homs[orbit[k]];
            k += 1;
            for &s in &gens {
                let c = Homomorphism {
                    images: h.images.iter().map(|&x| g.conjugate(s, x)).collect(),
                };
                let j = pos[&c];
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
        }
        orbit.sort_unstable();
        let orbit: Vec<Homomorphism> = orbit.into_iter().map(|i| homs[i].clone()).collect();
        out.push(HomClass {
            representative: orbit[0].clone(),
            stabilizer_order: g.order() / orbit.len(),
            orbit,
        });
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductClassCount {
    pub factor_counts: Vec<usize>,
    pub product: u128,
    /// Class count of the assembled product group, when it was small enough to build.
    pub direct: Option<usize>,
}

/// `|HOM(Z, A₁×…×A_s)/conj|` as the product of factor class counts, cross-checked
/// on the block-diagonal product group when its order is at most `direct_limit`.
pub fn product_class_count(
    factors: &[FiniteMatrixGroup],
    direct_limit: usize,
) -> Result<ProductClassCount> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter(
            "a product needs at least one factor".into(),
        ));
    }
    let factor_counts: Vec<usize> = factors
        .iter()
        .map(|f| f.conjugacy_classes().len())
        .collect();
    let product = factor_counts.iter().map(|&c| c as u128).product();
    let order: u128 = factors.iter().map(|f| f.order() as u128).product();
    let direct = if order <= direct_limit as u128 {
        let dims: Vec<usize> = factors.iter().map(FiniteMatrixGroup::dim).collect();
        let total: usize = dims.iter().sum();
        let mut gens = Vec::new();
        let mut before = 0;
        for (f, &d) in factors.iter().zip(&dims) {
            let left = identity_like(f, before);
            let right = identity_like(f, total - before - d);
            for s in f.generators() {
                gens.push(constructions::block_sum(
                    &constructions::block_sum(&left, s),
                    &right,
                ));
            }
            before += d;
        }
        let g = generate_group(total, gens, direct_limit.max(1))?;
        Some(g.conjugacy_classes().len())
    } else {
        None
    };
    if let Some(d) = direct {
        if d as u128 != product {
            return Err(Error::InternalConsistency(format!(
                "product of factor class counts {product} but direct count {d}"
            )));
        }
    }
    Ok(ProductClassCount {
        factor_counts,
        product,
        direct,
    })
}

fn identity_like(f: &FiniteMatrixGroup, n: usize) -> GroupElement {
    match f.element(0) {
        GroupElement::Matrix(_) => GroupElement::Matrix(crate::exactnum::ExactMatrix::identity(n)),
        _ => GroupElement::Permutation((0..n as u32).collect()),
    }
}
