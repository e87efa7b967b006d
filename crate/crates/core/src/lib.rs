pub mod community;
pub mod error;
pub mod graph;
pub mod harness;
pub mod qcost;
pub mod sim;
pub mod tracker;
