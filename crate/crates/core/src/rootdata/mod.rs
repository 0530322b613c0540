//! Root data of compact semisimple groups: Cartan data, lattices, invariant
//! forms, Langlands duals and Dynkin isomorphisms.

pub mod cartan;
pub mod datum;
pub mod dynkin;
pub mod form;

pub use cartan::{Component, Series};
pub use datum::{
    all_roots, dual_lattice, langlands_dual, long_short_counts, named_group, FundamentalGroup,
    RootDatum,
};
pub use dynkin::{find_phi, DynkinIso, PhiSearch};
pub use form::{basic_form, InvariantForm, FORM_NORMALIZATION};
