//! Enclosing balls, exact predicates, Delaunay triangulations and the
//! filtrations built on them.

mod ball;
mod delaunay;
mod filtration;
mod predicates;

pub use ball::{min_enclosing_ball, Ball, MAX_BALL_DIM};
pub use delaunay::{delaunay, delaunay_brute_force, DelaunayComplex, BRUTE_FORCE_LIMIT, MAX_DELAUNAY_DIM};
pub use filtration::{cech_filtration, chromatic_delcech, chromatic_delcech_with, lift, DelcechOptions, CECH_LIMIT};
