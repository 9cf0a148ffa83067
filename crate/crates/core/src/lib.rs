//! Magic pentagram games, their parameterized variant, the depth-2 quantum
//! circuit for the associated relation problem, and lightcone tools for
//! classical NC0 circuits.

pub mod clifford;
pub mod error;
pub mod game;
pub mod gates;
pub mod lightcone;
pub mod mpp;
pub mod pauli;
pub mod rng;
pub mod stats;
pub mod statevector;
pub mod tableau;

pub use clifford::{clifford_from_z_images, CliffordOp};
pub use error::{Error, Result};
pub use game::{
    brute_force_optimal, pentagram, win_probability, Assignment, DeterministicStrategy, EdgeId, GameParams, Pentagram,
    Player, WinRatio,
};
pub use gates::Gate;
pub use pauli::{Pauli, PauliWord, Phase};
pub use statevector::StateVector;
pub use tableau::{Branch, StabilizerState};
