//! Bootstrap percolation on graphs and hypergraphs, minimum percolating set
//! constructions for grids, tori and hypercubes, and exact polynomial-method
//! lower bounds that certify them.

pub mod constructions;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod hyperperc;
pub mod linalg;
pub mod oracle;
pub mod percolation;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{EdgeIndex, Graph};
