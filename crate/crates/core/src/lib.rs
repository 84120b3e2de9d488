//! Finite involutive non-degenerate set-theoretic solutions of the
//! Yang-Baxter equation: verification, elementary constructions, power
//! solutions `(Xⁿ, r⁽ⁿ⁾)`, permutation groups and finite left braces.

pub mod brace;
pub mod cli;
pub mod error;
pub mod io;
pub mod perm;
pub mod power;
pub mod solution;

pub use error::{Error, Result};
pub use perm::{close_group, groups_isomorphic, GeneratedGroup, Perm};
pub use solution::{Solution, VerifyReport};

/// Size caps shared by the closure, isomorphism and power computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Elements of a group closure, and nodes of an isomorphism search.
    pub group_cap: usize,
    /// Points of a power solution, `mⁿ`.
    pub power_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            group_cap: perm::DEFAULT_GROUP_CAP,
            power_cap: power::DEFAULT_POWER_CAP,
        }
    }
}
