//! Exact computations with Chevalley groups over finite commutative rings.

pub mod finring;
pub mod rootsys;
pub mod chevmatrix;
pub mod steinberg;
pub mod words;
pub mod cli;
