//! Line classes and the identities that characterize Cameron–Liebler classes.

mod class;
mod general;
mod grid;
mod pattern;

pub use class::{
    cl_parameter, member_meet_counts, pattern_of, pattern_spectrum, quotient_matrix, verify_equivalents,
    EquivalenceReport, FamilyCheck, LineClass, PatternSpectrum, QuotientMatrix, QuotientWitness,
    RationalParameter, SpectrumEntry, VerifyMode,
};
pub use general::{cl_parameter_general, flag_condition, flag_sweep, restrict, spread_check, FlagSweep};
pub use grid::{gale_ryser, grid_slice, GridSlice};
pub use pattern::{reconstruct_entry, required_square_sum, required_total, Pattern, PatternIdentities};
