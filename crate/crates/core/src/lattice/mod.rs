//! The deformed Heisenberg algebra on finite lattice windows.
//!
//! Operators are exact matrices over `Q(delta)`; windows use open boundaries,
//! so every identity is asserted on the interior block only.

mod operator;
mod ring;
mod transform;

pub use operator::{
    build_average, build_central_difference, build_parity, build_position, build_shift, casimir_residual_lattice,
    heisenberg_residuals, interior_commutator_residual, is_banded, parity_conjugation_check, position_spectrum,
    shift_commutator_residual, InteriorBlock, LatticeOperator, LatticeWindow, ShiftPair,
};
pub use ring::{DeltaNumber, DeltaRing};
pub use transform::{
    continuum_limit_study, fold_phase, kernel_at_separation, lattice_to_phi, overlap_kernel, phase_nodes, phi_norm_sq,
    phi_to_lattice, ContinuumRow, LatticeFunction, PhiValue,
};
