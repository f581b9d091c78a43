pub mod bits;
pub mod complex;
pub mod matroid;
pub mod ps;
pub mod activity;
pub mod lattice;
pub mod census;
