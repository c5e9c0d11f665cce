//! Algorithmic-logic workbench. Parses while-programs and algorithmic formulas,
//! runs them under a step budget over standard or non-standard arithmetic,
//! and checks proof scripts against the result.

pub mod euclid;
pub mod models;
pub mod par;
pub mod proof;
pub mod semantics;
pub mod syntax;
