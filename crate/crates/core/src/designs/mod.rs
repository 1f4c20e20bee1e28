//! Constructions of FR codes from combinatorial designs.

mod affine;
mod catalog;
mod graphs;
mod grid;
mod hadamard;
mod mols;
mod projective;
mod small;
mod steiner;

pub use affine::{affine_functionals, affine_resolvable};
pub use catalog::{catalog_list, catalog_load, parse_block_file, CatalogEntry};
pub use graphs::{girth_code, GraphSpec};
pub use grid::grid;
pub use hadamard::hadamard;
pub use mols::{mols_net, mols_squares};
pub use projective::{projective_plane, projective_points};
pub use small::{identity, j_minus_i};
pub use steiner::{is_steiner_pair_design, steiner_triple};
