//! Exact-integer toolkit for simply connected 4-manifolds: topological types,
//! Hirzebruch-surface double covers, the Seiberg–Witten blowup obstruction to
//! Einstein metrics, and a search for homeomorphic pairs where only one side
//! carries an Einstein metric.

pub mod hirzebruch;
pub mod obstruction;
pub mod pairfinder;
pub mod report;
pub mod topo;

pub use hirzebruch::{DivisorClass, HirzebruchSurface, SurfaceRecord};
pub use topo::{CharNumbers, ChernNumbers, Parity, TopologicalType};
