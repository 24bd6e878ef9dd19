//! Registries of identities and congruences, and the engines that check them.

pub mod congruences;
pub mod identities;
pub mod two_squares;

pub use congruences::{
    congruence_registry, find_congruence, reduce_dyadic, run_congruence, run_suite,
    CongruenceSpec, Engine, PrimeContext, PrimeFilter, Sides,
};
pub use identities::{
    find_identity, identity_registry, record_count, run_identities, run_identity, IdentitySpec,
};
pub use two_squares::{two_squares, TwoSquares};

/// Ids of every registered check, identities first.
pub fn all_check_ids() -> Vec<String> {
    identity_registry()
        .iter()
        .map(|s| s.id.to_string())
        .chain(congruence_registry().into_iter().map(|s| s.id))
        .collect()
}
