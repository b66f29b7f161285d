//! Fixed-point characters and localization series for Hilbert schemes of
//! points on `C^2` and `C^3`.
//!
//! Conventions: boxes of a diagram contribute `t1^{-i} t2^{-j} (t3^{-k})` to
//! the character `V` of the quotient, and `κ = t1 t2 t3`. The `(-1)^n` of the
//! symmetrized virtual structure sheaf is folded into the `z^n` coefficient
//! here and nowhere else.

mod cohomological;
mod nekrasov;
mod projective;
mod rigidity;
mod surface;
mod tangent;

pub use cohomological::{cohomological_limit, CohomologicalLimit};
pub use nekrasov::{
    g_factor, localization_weights, nekrasov_check, nekrasov_rhs, star_closed, star_extract,
    z_series_c3, z_series_terms, LocalizationWeight, SeriesComparison,
};
pub use projective::{chi_projective_space, projective_vars};
pub use rigidity::{rigidity_vanish_check, RigidityReport};
pub use surface::{hilb_c2_check, surface_closed_form, surface_vars, z_series_hilb_c2};
pub use tangent::{
    tangent_c2_armleg, tangent_c2_closed, virtual_tangent_c3, virtual_tangent_c3_free,
    TangentCharacter, TangentSource,
};

use thiserror::Error;

use crate::lattice::{AlgebraError, Monomial, VariableSet};
use crate::partition::PartitionError;
use crate::plethystic::PlethError;

pub const MAX_Z_SERIES_ORDER: usize = 6;
pub const MAX_RHS_ORDER: usize = 8;
pub const MAX_STAR_ORDER: usize = 4;
pub const MAX_COH_ORDER: usize = 3;
pub const MAX_SURFACE_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("order {order} exceeds the limit {max}")]
    SizeLimitExceeded { order: usize, max: usize },
    #[error("virtual tangent space has a trivial weight")]
    TrivialWeightInTvir,
    #[error("★ coefficient at z^{0} is not a Laurent polynomial in κ^(1/2)")]
    NonPolynomialStar(usize),
    #[error("ε-limit of the z^{0} coefficient does not exist")]
    EpsilonPoleRemains(usize),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Pleth(#[from] PlethError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub(crate) fn guard(order: usize, max: usize) -> Result<(), HilbertError> {
    if order > max {
        Err(HilbertError::SizeLimitExceeded { order, max })
    } else {
        Ok(())
    }
}

/// `t1, t2, t3`.
pub fn c3_vars() -> VariableSet {
    VariableSet::new(&["t1", "t2", "t3"])
}

pub(crate) fn c3_torus() -> [Monomial; 3] {
    [Monomial::var(3, 0), Monomial::var(3, 1), Monomial::var(3, 2)]
}

/// `κ^{1/2} = (t1 t2 t3)^{1/2}`.
pub fn kappa_half() -> Monomial {
    Monomial::from_doubled([1, 1, 1])
}
