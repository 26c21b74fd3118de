//! Computational toolkit for Coxeter and Artin groups of finite and affine
//! type, reduced Artin group presentations, Del Pezzo Picard lattices and
//! tacnodal power-series degenerations.
//!
//! The modules build on each other bottom-up:
//!
//! - [`graphs`]: Coxeter graphs, the Bourbaki catalogue, classification.
//! - [`weylrep`]: the integral reflection representation of a Weyl group.
//! - [`garside`]: Artin words, Garside elements and left-greedy normal forms.
//! - [`affine`]: alcove geometry, special vertices and the group `S(Γ)`.
//! - [`presentations`]: Artin, reduced Artin and derived presentations,
//!   Todd–Coxeter enumeration and abelianization.
//! - [`delpezzo`]: the lattice `Λ_{1,r}`, roots, exceptional vectors.
//! - [`tacnode`]: truncated Gaussian-rational power series.
//! - [`verify`]: the executable check suite used by the command line tool.

#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod affine;
pub mod delpezzo;
mod error;
pub mod garside;
pub mod graphs;
pub mod lattice;
pub mod presentations;
pub mod tacnode;
pub mod verify;
pub mod weylrep;

pub use error::{Error, Result};
