//! Deterministic parallel (Δ+1)-edge-coloring on a simulated CRCW PRAM.

pub mod bench;
pub mod bipartite;
pub mod edge;
pub mod engine;
pub mod euler;
pub mod fan;
pub mod gen;
pub mod graph;
pub mod pram;
pub mod verify;
pub mod vertex;
