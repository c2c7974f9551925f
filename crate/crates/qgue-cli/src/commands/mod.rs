//! Subcommand implementations. Every emitted number is produced by a
//! library operation; the command layer only orchestrates and formats.

pub mod asym;
pub mod density;
pub mod genus;
pub mod lattice;
pub mod moments;
pub mod verify;
