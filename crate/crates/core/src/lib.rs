//! Finite fields, multiplicative sets, and clique computations on Cayley
//! graphs over `F_{q^2}`.

pub mod arith;
mod bitset;
pub mod cayley;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod gf;
pub mod mulset;
pub mod theorems;

pub use cayley::{CayleyGraph, CliqueOptions, CliqueResult};
pub use error::{Error, Result};
pub use exec::Parallelism;
pub use gf::{subfield_embed, Elt, Field, FieldSummary, TowerMap};
pub use mulset::{coset_union, CosetSpec, EltSet, EltSetRecord, SetSpec};
