//! Grids, sampled fields, special functions and the continuous-convention
//! Fourier transform on a uniform lattice.

mod field;
mod grid;
mod special;
mod transform;

pub use field::{ComplexField, Representation};
pub use grid::Grid;
pub use special::{fresnel, hermite, hermite_complex, hermite_function, sinc, MAX_HERMITE_ORDER};
pub use transform::{
    from_momentum, momentum_at_spacing, quadrature_norm2, spectral_derivative, to_momentum,
};
