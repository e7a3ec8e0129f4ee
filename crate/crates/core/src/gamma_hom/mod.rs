//! Presentations of Γ and the index set `HOM(Γ, G)/G` of Γ-sectors.

mod enumerate;
mod presentation;

pub use enumerate::{
    classes_of, enumerate_homs, evaluate_word, hom_classes, product_class_count,
    satisfies_relators, HomClass, Homomorphism, ProductClassCount, DEFAULT_HOM_BUDGET,
};
pub use presentation::{builtin_gamma, parse_gamma, GammaKind, GroupPresentation};
