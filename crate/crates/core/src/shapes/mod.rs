//! Chains, grids and normalized zig-zags: constructors and closed-form
//! implications.

pub mod chain;
pub mod grid;
pub mod zigzag;

pub use chain::{
    chain_diagram, chain_implies, chain_lattice, most_persistent_query, uniform_chain_diagram, Verdict,
};
pub use grid::{
    grid_chain_slice, grid_diagram, grid_implies, grid_implies_as_stated, grid_is_bicartesian,
    grid_lattice, grid_nonzero_negation_elements, uniform_grid_diagram, GridIndex, SliceAxis,
};
pub use zigzag::{
    implication_filtration, zigzag_closed_form, zigzag_completion_diagram, zigzag_elements, zigzag_implies, zigzag_lattice,
    zigzag_normalize, zigzag_theorem, Discrepancy, RawArrow, RawZigzag, TheoremEntry,
    ZigzagElement, ZigzagImplication, ZigzagKind, ZigzagLattice, ZigzagModule, ZigzagSpace,
    DISCREPANCIES,
};

/// `"X{i}{j}"` for single digits, `"X{i},{j}"` otherwise.
pub(crate) fn require_prime(prime: u32) -> crate::Result<()> {
    if crate::linalg::is_prime(prime) {
        Ok(())
    } else {
        Err(crate::Error::NotPrime(prime))
    }
}

pub(crate) fn pair_label(prefix: &str, i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("{prefix}{i}{j}")
    } else {
        format!("{prefix}{i},{j}")
    }
}
