//! Bar complexes: classical Tor over F2 and the bar spectral sequence of a
//! Hopf presentation, with the circle action on bar words.

mod algebra;
mod bar;
mod identify;
mod page;
mod tor;
mod word;

pub use algebra::F2Algebra;
pub use identify::{
    expected_monomial, identify_permanent_cycles, sigma_plus_catalog, CycleMatch, EquivariantTorClass,
    Identification,
};
pub(crate) use bar::may_reach;
pub use bar::{bar_d1, bar_e1_equivariant, bar_e2, padded};
pub use page::{
    component_at, d_squared_failures, next_page, page_ranks, reconstruct,
    reconstruction_mismatches, truncation_warnings, Annotation, E2Row, E2Table, MapKind, Page,
    PageMatrices, SummandMap, TruncationWarning,
};
pub use tor::{bar_complex_f2, tor_f2, BarComplexF2, TorClass, TorKind, TorRow, TorTable};
pub use word::{circle_on_bar_word, circle_on_sum, BarWord, WordSum};
