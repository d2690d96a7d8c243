pub mod budget;
pub mod graph;
pub mod solver;
pub mod bounds;
pub mod constructions;
pub mod imc;
pub mod cli;
