//! Exact arithmetic: rationals, cyclotomic numbers, prime fields and dense
//! linear algebra over any of them.

pub mod cyclo;
pub mod field;
pub mod literal;
pub mod matrix;

pub use cyclo::{common_order, cyc_arith, CycNum, CycOp};
pub use field::{rat, rat_frac, Field, Fp, Rat, F2, F3};
pub use literal::{format_cyc, parse_cyc};
pub use matrix::{rat_kernel, rat_rank, Matrix, RatMatrix};
