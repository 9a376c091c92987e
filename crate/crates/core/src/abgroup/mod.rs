//! Finitely generated abelian groups, complexes, regulators and the
//! theta-invariant of complexes with an involution.

mod complex;
mod group;
mod jcomplex;
mod random;
mod regulator;

pub use complex::{BoundedComplex, CohomologyCoords};
pub use group::{FgAbGroup, Quotient};
pub use jcomplex::{
    abstract_index, abstract_index_check, det_on_theta, one_plus, theta_fixed, theta_fixed_basis,
    AbstractIndex, JComplex,
};
pub use random::{random_admissible_pair, random_pairs_check, AdmissiblePair};
pub use regulator::{
    euler_regulator_check, euler_regulator_sides, quotient_order, regulator, regulator_chain,
    regulator_with_subgroups,
};
