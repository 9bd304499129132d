//! Metallic-tree numeration and navigation in the hyperbolic tilings
//! {p,4} and {p+2,3}, for any `p ≥ 5`.
//!
//! - [`numeration`]: the metallic sequences and canonical metallic codes;
//! - [`arithmetic`]: addition, comparison, complement, subtraction,
//!   increment and decrement performed directly on codes;
//! - [`trees`]: the white and black metallic trees, node classification and
//!   the numbering correspondence between them;
//! - [`navigation`]: fathers, neighbours and paths to the leading tile;
//! - [`oracle`]: explicit trees built by the production rules and an
//!   exhaustive cross-check of everything above;
//! - [`sampling`]: random canonical codes and path-cost measurements.

pub mod arithmetic;
pub mod error;
pub mod exec;
pub mod navigation;
pub mod numeration;
pub mod oracle;
pub mod sampling;
pub mod trees;

pub use error::{Error, Result};
pub use exec::Execution;
pub use navigation::{Neighbor, NeighborSet, PathTrace, Tiling, TileAddress};
pub use numeration::{Grade, MetallicCode, Representation};
pub use trees::{NodeClass, NodeType, Status, TreeKind};
