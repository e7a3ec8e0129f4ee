use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::element::GroupElement;
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// Multiplication tables are cached below this order.
const TABLE_LIMIT: usize = 1024;

/// A finite group given by generators, fully enumerated.
///
/// Element 0 is always the identity. Elements appear in breadth-first order
/// of right multiplication by the generators, which makes indices (and
/// everything derived from them) reproducible.
#[derive(Debug)]
pub struct FiniteMatrixGroup {
    dim: usize,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    table: OnceLock<Vec<u32>>,
    inverses: OnceLock<Vec<usize>>,
    classes: OnceLock<Vec<ConjugacyClass>>,
}

impl Clone for FiniteMatrixGroup {
    fn clone(&self) -> Self {
        FiniteMatrixGroup {
            dim: self.dim,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            index: self.index.clone(),
            table: self.table.clone(),
            inverses: self.inverses.clone(),
            classes: self.classes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: GroupElement,
    pub representative_index: usize,
    /// Sorted element indices.
    pub members: Vec<usize>,
}

/// Brings mixed generator representations onto one footing.
fn normalize(gens: Vec<GroupElement>) -> Vec<GroupElement> {
    let any_matrix = gens.iter().any(|g| matches!(g, GroupElement::Matrix(_)));
    let any_signed = gens
        .iter()
        .any(|g| matches!(g, GroupElement::SignedPermutation { .. }));
    let all_perm = gens
        .iter()
        .all(|g| matches!(g, GroupElement::Permutation(_)));
    if any_matrix && !gens.iter().all(|g| matches!(g, GroupElement::Matrix(_))) {
        gens.into_iter()
            .map(|g| GroupElement::Matrix(g.to_matrix()))
            .collect()
    } else if any_signed && !all_perm {
        gens.into_iter()
            .map(|g| match g {
                GroupElement::Permutation(p) => {
                    let n = p.len();
                    GroupElement::SignedPermutation {
                        images: p,
                        signs: vec![1; n],
                    }
                }
                other => other,
            })
            .collect()
    } else {
        gens
    }
}

pub fn generate_group(
    dim: usize,
    generators: Vec<GroupElement>,
    cap: usize,
) -> Result<FiniteMatrixGroup> {
    FiniteMatrixGroup::generate(dim, generators, cap)
}

impl FiniteMatrixGroup {
    pub fn generate(dim: usize, generators: Vec<GroupElement>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator {g} has dimension {}, expected {dim}",
                    g.dim()
                )));
            }
        }
        let generators = normalize(generators);
        let identity = match generators.first() {
            Some(g) => g.identity_like(),
            None => GroupElement::Matrix(crate::exactnum::ExactMatrix::identity(dim)),
        };
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &generators {
                let x = elements[i].compose(s)?;
                if index.contains_key(&x) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge {
                        cap,
                        partial: elements.len(),
                    });
                }
                index.insert(x.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(x);
            }
        }
        Ok(Self::from_parts(dim, generators, elements, index))
    }

    fn from_parts(
        dim: usize,
        generators: Vec<GroupElement>,
        elements: Vec<GroupElement>,
        index: HashMap<GroupElement, usize>,
    ) -> Self {
        FiniteMatrixGroup {
            dim,
            generators,
            elements,
            index,
            table: OnceLock::new(),
            inverses: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// Subgroup consisting of the listed elements of `self`, kept in parent order.
    /// The caller guarantees closure; generators are chosen greedily.
    fn subgroup_from_indices(&self, mut idx: Vec<usize>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        let elements: Vec<GroupElement> = idx.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        // greedy generating set: add an element whenever it is not yet generated
        let mut generators = Vec::new();
        let mut reached: Vec<usize> = vec![0];
        let mut in_reached = vec![false; self.order()];
        in_reached[0] = true;
        for &i in &idx {
            if in_reached[i] {
                continue;
            }
            generators.push(i);
            // close up under the new generator set
            let mut frontier = reached.clone();
            while let Some(x) = frontier.pop() {
                for &s in &generators {
                    let y = self.mul(x, s);
                    if !in_reached[y] {
                        in_reached[y] = true;
                        reached.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        let generators = generators
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect();
        Self::from_parts(self.dim, generators, elements, index)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        if let Some(&i) = self.index.get(g) {
            return Some(i);
        }
        // a foreign representation of the same linear map
        if g.dim() != self.dim {
            return None;
        }
        let gm = g.to_matrix();
        match self.elements.first() {
            Some(GroupElement::Matrix(_)) => self.index.get(&GroupElement::Matrix(gm)).copied(),
            _ => self.elements.iter().position(|e| e.to_matrix() == gm),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index_of(g).is_some()
    }

    fn table(&self) -> Option<&[u32]> {
        let n = self.order();
        if n > TABLE_LIMIT {
            return None;
        }
        Some(self.table.get_or_init(|| {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    let x = self.elements[i]
                        .compose(&self.elements[j])
                        .expect("same dimension");
                    t[i * n + j] = self.index[&x] as u32;
                }
            }
            t
        }))
    }

    /// Index of `elements[i] · elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        if let Some(t) = self.table() {
            return t[i * self.order() + j] as usize;
        }
        let x = self.elements[i]
            .compose(&self.elements[j])
            .expect("same dimension");
        self.index[&x]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|g| self.index[&g.inverse()])
                .collect()
        })[i]
    }

    /// Index of `g x g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<usize> = self.generators.iter().map(|g| self.index[g]).collect();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let gens: Vec<usize> = self.generators.iter().map(|g| self.index[g]).collect();
            let mut seen = vec![false; n];
            let mut out = Vec::new();
            for rep in 0..n {
                if seen[rep] {
                    continue;
                }
                seen[rep] = true;
                let mut members = vec![rep];
                let mut k = 0;
                while k < members.len() {
                    let x = members[k];
                    k += 1;
                    for &s in &gens {
                        let y = self.conjugate(s, x);
                        if !seen[y] {
                            seen[y] = true;
                            members.push(y);
                        }
                    }
                }
                members.sort_unstable();
                out.push(ConjugacyClass {
                    representative: self.elements[rep].clone(),
                    representative_index: rep,
                    members,
                });
            }
            out
        })
    }

    /// Index into [`Self::conjugacy_classes`] for every element.
    pub fn class_index(&self) -> Vec<usize> {
        let mut out = vec![0; self.order()];
        for (c, cls) in self.conjugacy_classes().iter().enumerate() {
            for &m in &cls.members {
                out[m] = c;
            }
        }
        out
    }

    /// Elements commuting with every element of `s` (given as indices).
    pub fn centralizer_indices(&self, s: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| s.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    pub fn centralizer(&self, s: &[GroupElement]) -> Result<Self> {
        let idx = s
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::NotSubset))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_from_indices(self.centralizer_indices(&idx)))
    }

    /// Subgroup generated by the listed elements of `self`.
    pub fn subgroup_generated_by(&self, gens: &[usize]) -> Self {
        let mut in_h = vec![false; self.order()];
        in_h[0] = true;
        let mut members = vec![0];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !in_h[y] {
                    in_h[y] = true;
                    members.push(y);
                }
            }
        }
        let mut h = self.subgroup_from_indices(members);
        h.generators = gens.iter().map(|&i| self.elements[i].clone()).collect();
        h
    }

    /// Indices in `self` of the elements of `h`; fails unless `h ⊆ self`.
    pub fn embed(&self, h: &FiniteMatrixGroup) -> Result<Vec<usize>> {
        h.elements
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::NotSubset))
            .collect()
    }

    /// Some `g` with `g H₁ g⁻¹ = H₂`, searched over all of `self`.
    pub fn find_conjugator(
        &self,
        h1: &FiniteMatrixGroup,
        h2: &FiniteMatrixGroup,
    ) -> Result<Option<usize>> {
        let a = self.embed(h1)?;
        let b = self.embed(h2)?;
        if a.len() != b.len() {
            return Ok(None);
        }
        let mut in_b = vec![false; self.order()];
        for &x in &b {
            in_b[x] = true;
        }
        Ok((0..self.order()).find(|&g| a.iter().all(|&x| in_b[self.conjugate(g, x)])))
    }
}
