//! Affine geometric crystal of type G2(1), its ultra-discretization, and the
//! D4(3) perfect crystals `B_l` / `B_inf`, with exact and exhaustive checks
//! that the tropicalized geometric crystal is isomorphic to `B_inf`.

pub mod cartan;
pub mod d43;
pub mod expr;
pub mod g2;
pub mod rational;
pub mod sample;
pub mod schubert;
pub mod tropical;
pub mod ud;

pub use rational::Rational;
