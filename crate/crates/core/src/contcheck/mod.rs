//! Floating-point checks of the curvature constants. Nothing here feeds back
//! into the exact modules.

pub mod cutoff;
pub mod structure;

pub use cutoff::{
    cutoff_integral, quadrature, richardson_order, standard_cutoffs, Cutoff, QuadratureReport,
};
pub use structure::{check_c_form, CFormReport, StructureConstants};
