//! Hopf algebras over `M2` and the Hopf ring calculus: star products,
//! coproducts, and circle products with the distributive law.

mod algebra;
mod alphabet;
mod axioms;
pub mod calculus;
mod presentation;

pub use algebra::{Element, Tensor, Tensor3};
pub use alphabet::{divided, CircleMono, Gen, StarMono};
pub use axioms::{verify_hopf_axioms, AxiomCheck, AxiomFailure, AxiomReport};
pub use calculus::{circle, circle_elements, circle_product, distribute};
pub use presentation::{make_presentation, HopfPresentation};

/// `Σ (x'∘y) * (x''∘z)` with `ψ(x)` taken from the presentation.
pub fn circle_distribute(
    a: &HopfPresentation,
    x: &StarMono,
    y: &StarMono,
    z: &StarMono,
) -> Element {
    calculus::distribute(&a.coproduct(x), y, z)
}

/// `ψ(m)` in the presentation.
pub fn coproduct(a: &HopfPresentation, m: &StarMono) -> Tensor {
    a.coproduct(m)
}

/// Exterior star product of two monomials as an element.
pub fn star_product(a: &HopfPresentation, m1: &StarMono, m2: &StarMono) -> Element {
    a.star_product(m1, m2)
        .map(Element::from)
        .unwrap_or_default()
}
