//! Eigenvalue multiplicities of tree Laplacians: exact and numeric
//! multiplicity computation, explicit eigenbases for trees attaining the
//! maximal multiplicity, characterization of those trees and enumeration of
//! small trees.

pub mod characterization;
pub mod commands;
pub mod constructions;
pub mod enumeration;
pub mod exact;
pub mod numeric;
pub mod report;
pub mod tree;

pub use tree::{parse_edge_list, parse_tree, Label, Tree, TreeError, TreePath};
