//! Exact arithmetic in cyclotomic fields, Dirichlet characters and
//! generalized Bernoulli numbers.

mod chars;
mod cycnum;
mod poly;

pub use chars::{
    a_pf, b1_chi, b_pf, enumerate_chars, euler_factor_check, euler_factor_product, galois_orbits,
    h_minus, h_minus_check, l_value_check, l_value_deviation, l_value_float, odd_orbit_norms,
    order_mod_checked, roots_of_unity, unit_index, DirichletChar, UnitGroup,
};
pub use cycnum::CycNum;
pub use poly::{cyclotomic_polynomial, power_residues};
