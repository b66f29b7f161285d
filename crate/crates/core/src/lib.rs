pub mod fock;
pub mod harness;
pub mod hilbert;
pub mod identities;
pub mod lattice;
pub mod partition;
pub mod plethystic;
pub mod stable;
