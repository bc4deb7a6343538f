//! Exact symbolic-numeric computation of the normalised Euclidean volume of
//! the cone-manifold degeneration attached to a knot's A-polynomial.
//!
//! The crate is layered: [`poly`] (sparse polynomials over ℤ and ℤ[i]),
//! [`resultant`], [`factor`], [`numerics`], [`pipeline`] and [`io`].

pub mod coeff;
pub mod factor;
pub mod float;
pub mod io;
pub mod modp;
pub mod numerics;
pub mod par;
pub mod pipeline;
pub mod poly;
pub mod resultant;
pub mod selftest;
