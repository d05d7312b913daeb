//! Contact geometry of the 3-sphere and the knots that live in it: Reeb and
//! Hamiltonian flows, closed braids and their transverse invariants, iterated
//! torus knots, Lorenz template braids, exact knot-group algebra and Kirby
//! moves on framed links.

pub mod braid;
pub mod cabling;
pub mod exterior3;
pub mod kirby;
pub mod knotalg;
pub mod lorenz;
pub mod s3flow;
