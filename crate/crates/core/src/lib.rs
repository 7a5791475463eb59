//! Exact character-table arithmetic, ℓ-blocks and Brauer trees of blocks
//! with cyclic defect.

pub mod arith;
pub mod blocks;
pub mod brauertree;
pub mod corpus;
pub mod cyclotomic;
pub mod projective;
pub mod table;
pub mod tablesearch;
