//! Weyl–Wigner correspondence on sampled kernels and phase-space grids.
//!
//! Symbols are stored with momentum first, `h(p, q)`, like every other field
//! in the crate; the Weyl routines read the position slot accordingly.

mod basis;
mod charfn;
mod kernel;
mod kirkwood;
mod oscillator;
mod weyl;

pub use basis::HermiteBasis;
pub use charfn::{expm, momentum_matrix, position_matrix, CharacteristicFunction, PROJECTION_TOLERANCE};
pub use kernel::OperatorKernel;
pub use kirkwood::{
    fourier_of_signal, kirkwood_pq_closed, kirkwood_qp_closed, wigner_to_kirkwood_residual, KirkwoodResiduals,
};
pub use oscillator::{
    oscillator_exponential_kernel, oscillator_exponential_kernel_closed, oscillator_exponential_symbol,
    oscillator_exponential_transform, oscillator_symbol_params,
};
pub use weyl::{
    mixed_elements, mixed_matrix_element, scaled_mixed_field, symbol_identity_residual, weyl_quantize, weyl_symbol,
    wigner_of_density, wigner_of_signal, SymbolIdentityResiduals,
};
