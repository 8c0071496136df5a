//! Generator families for `K_V`, the comparison maps to
//! underlying and fixed-point homology, and the freeness check built on them.

mod families;
mod maps;
mod rw;
mod verify;

pub use families::{
    gen_sigma_plus_basis, gen_signed_basis, sigma_plus_words, signed_generators, SigmaPlusWord, Top,
};
pub use maps::{
    caruso_factors, fixed_generators, gen_fixed_basis, gen_fixed_classes, phi_e, phi_fixed,
    FixedClass,
};
pub use rw::{exterior_poincare, gen_rw_basis, gen_rw_words, rw_index_degree, RwWord};
pub use verify::{verify_bw, BwReport, BwRow, Side, Status};
