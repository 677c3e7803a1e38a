//! Exact evaluation of closed seamed surfaces, state spaces of marked circles
//! via the universal construction, and the four rank-two Frobenius extensions
//! over ℤ[E₁,E₂], ℤ[α₁,α₂] and their localizations.

pub mod poly;
pub mod surface;
pub mod evaluation;
pub mod cobordism;
pub mod universal;
pub mod frobenius;
pub mod verify;
