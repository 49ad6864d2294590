//! Local criteria for the unit equation and the asymptotic Fermat problem over
//! number fields presented as `Q[X]/(f)`.

pub mod exactmath;
pub mod numberfield;
pub mod residues;
pub mod splitting;
pub mod sunit;
pub mod search;
pub mod criteria;
