pub mod lattice_geom;
pub mod tropical;
pub mod dimer;
pub mod catalog;
pub mod kasteleyn;
pub mod mutation;
pub mod almost_toric;
pub mod cli;
