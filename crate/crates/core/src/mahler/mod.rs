//! Laurent polynomials in two variables and their Mahler measures.

mod algebra;
mod measure;
mod parse;
mod poly;

pub use measure::{
    knot_a_poly, mahler_1var, mahler_1var_real, mahler_2var, mahler_2var_with, outside_root_count, piece3_mahler_form,
    piece3_poly, poly_roots, JensenSlice, OutsideRoots, CIRCLE_GUARD, MAX_DEGREE, STRIP_THRESHOLD, THETA_CHUNKS,
};
pub use parse::parse_poly;
pub use poly::{LaurentPoly2, MAX_EXPONENT};
