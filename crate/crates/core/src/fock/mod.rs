//! Bosonic Fock space: power-sum states, the operators `F_r^k`, vacuum
//! expectations, a character-theoretic check and connected/disconnected
//! conversion.

pub mod characters;
pub mod connected;
pub mod operator;
pub mod state;
pub mod vev;

pub use characters::{
    character_oracle_k0, completed_cycle_conversion, shifted_power_sum, CharacterOracle, CharacterTable,
};
pub use connected::{connected_from_disconnected, disconnected_from_connected};
pub use operator::{apply_f, expand_f, expand_f_with, ExpandOptions, FOperator, SignedTuple};
pub use state::FockState;
pub use vev::{hurwitz_disconnected_fock, FockEngine};
