//! Exact integer linear algebra: normal forms, lattices, and finitely
//! generated abelian groups presented as subquotients.

pub mod group;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod rational;

pub use group::{induced_map_on_subquotient, subquotient, FgAbGroup};
pub use lattice::{
    image_basis, kernel_basis, sym2_map, tensor_map, wedge2_map, Lattice, LatticeMap,
};
pub use matrix::IntMatrix;
pub use normal_form::{column_hermite, smith_normal_form, solve_integer, Smith};
