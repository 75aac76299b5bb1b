//! Exact computation of cohomology ranks, Euler characteristics, K-theory ranks and
//! substitution obstructions for canonical cut-and-project point patterns.

pub mod arrangement;
pub mod battery;
pub mod decimal;
pub mod exact;
pub mod invariants;
pub mod io;
pub mod pattern;
pub mod pipeline;
pub mod scheme;

#[cfg(test)]
mod test_schemes;
