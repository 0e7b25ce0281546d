//! Spin-j rotations, coherent states and Q functions, plus the two-atom state algebra.

mod direction;
pub mod qubit;
mod schmidt;
mod spin;
mod two_atom;

pub use direction::BlochDirection;
pub use qubit::{coherent_qubit, direction_of, rotation_qubit, DensityMatrix2, Qubit};
pub use schmidt::{entanglement_angle, is_entangled, schmidt_decompose, SchmidtForm, ENTANGLEMENT_TOL};
pub use spin::{
    coherent_overlap, coherent_state, q_function, q_function_dense, rotation_operator, wigner_d, PhaseSpace, Spin,
    SpinState, UnitaryMatrix, DEFAULT_MAX_TWO_J, HARD_MAX_TWO_J,
};
pub use two_atom::{displace_two_atoms, joint_q, marginal_q, reduced_density, Atom, TwoAtomState};

/// Amplitude type used throughout.
pub type ComplexAmp = num_complex::Complex64;
