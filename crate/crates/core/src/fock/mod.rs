//! The deformed Fock space in the phase representation.
//!
//! Every state is `(-i)^k c P(t) (cos delta phi)^{s_max}` with `P` a rational
//! polynomial in `t = tan(delta phi) / delta`. Ladder operators, `sec^2`
//! multiplication and the position operator all preserve this family, so the
//! whole algebra is checked as exact polynomial arithmetic.

mod algebra;
mod gram;
mod identities;
mod ladder;
mod state;

pub use algebra::{
    commutator_suite, reindex_coefficients, residual_on_basis, Expectation, FockOperator, OmegaPoly, OpExpr,
    RelationResidual, REL_ABELIAN, REL_B, REL_BASE_ABELIAN, REL_BASE_B, REL_BASE_MIXED, REL_BASE_SEC, REL_CASIMIR,
    REL_CASIMIR_PRINTED, REL_CURVE, REL_LOWER, REL_MIXED, REL_RAISE, REL_REINDEX_LOWER, REL_REINDEX_RAISE, REL_SEC,
    REL_SEC_AT_TOP, REL_SEC_TOP, REL_TOP, SEC_POWERS,
};
pub use gram::{
    gram_diagonal, gram_exact, gram_recurrence, inner_product, norm_recursion_residual, vacuum_norm_closed, GramMatrix,
    GramMethod,
};
pub use identities::{
    casimir_fock_residual, factorization_product_holds, factorization_residual, hermiticity_check,
    infeld_hull_deviation, ladder_action_residuals, reindex_ladder, truncation_check, CasimirResidual,
    HermiticityReport, LadderActionResidual, TruncationReport, MIN_COS,
};
pub use ladder::{
    alpha_sq, annihilation_poly, beta_sq, creation_poly, ladder_coefficients, scaled_position_poly, sec_sq,
    LadderCoefficients,
};
pub use state::{
    apply_annihilation, apply_creation, build_states, expected_coefficient, state_past_truncation, vacuum_state,
    FockState,
};
