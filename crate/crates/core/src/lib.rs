pub mod audit;
pub mod benchmarks;
pub mod characteristics;
pub mod convergence;
pub mod dump;
pub mod error;
pub mod grid;
pub mod hllc;
pub mod reconstruction;
pub mod scalar;
pub mod solver;
pub mod state;

pub use error::{Error, Result};

pub type Conserved = state::ConservedState<f64>;
pub type Primitive = state::PrimitiveState<f64>;
pub type Gas = state::GasModel<f64>;
pub type Frame = characteristics::InterfaceFrame<f64>;
pub type Grid = grid::Grid2D<f64>;
pub type Config = solver::RunConfig<f64>;
pub type Benchmark = benchmarks::BenchmarkSpec<f64>;
