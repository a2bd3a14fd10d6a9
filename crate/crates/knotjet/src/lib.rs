//! Exact topological recursion for genus-1 A-spectral curves.

pub mod algebra;
pub mod curve;
pub mod golden;
pub mod jets;
pub mod modular;
pub mod numerics;
pub mod tr;
pub mod verify;
