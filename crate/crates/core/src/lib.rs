//! Exact continuous dispersion on connected unit-edge graphs.
//!
//! Given a graph whose edges are unit-length segments and a rational `δ > 0`,
//! find the largest set of points (vertices or interior edge points) with
//! pairwise shortest-path distance at least `δ`.
//!
//! * [`dispatch::disp`] picks the solver by the numerator of `δ`.
//! * [`solve2::disp2`] handles `δ = 2` by Edmonds-Gallai and a min cut.
//! * [`oracle::brute_disp`] is the exact finite-grid oracle.
//! * [`certify::verify_certificate`] checks short certificates exactly.
//! * [`gadget`] builds the reduction instances for numerators `≥ 3`.

pub mod batch;
pub mod certify;
pub mod cli;
pub mod dispatch;
pub mod flow;
pub mod fourier_motzkin;
pub mod gadget;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod par;
pub mod point;
pub mod rational;
pub mod solve2;
pub mod subdivide;

pub use dispatch::{disp, DispError, DispOptions, DispResult, Method};
pub use graph::{parse_graph, Graph, GraphError};
pub use par::Execution;
pub use point::{Metric, Point, WitnessSet};
pub use rational::Rational;
