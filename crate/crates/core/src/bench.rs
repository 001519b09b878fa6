//! Workloads shared by the command-line driver and the trend tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::edge::{edge_coloring, DynamicColoring, EdgeError};
use crate::engine::{Engine, Mode};
use crate::gen;
use crate::pram::{maximal_path, FunctionalDigraph, PramError};
use crate::verify::check_proper_edge_coloring;
use crate::vertex::IsStrategy;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchError {
    #[error("empty size list")]
    NoSizes,
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("size {0} too small")]
    SizeTooSmall(usize),
    #[error(transparent)]
    Edge(#[from] EdgeError),
    #[error(transparent)]
    Pram(#[from] PramError),
    #[error(transparent)]
    Gen(#[from] gen::GenError),
}

#[derive(Debug, Clone, Serialize)]
pub struct UpdateStats {
    pub n: usize,
    pub delta_max: usize,
    pub ops: usize,
    pub inserts: usize,
    pub deletes: usize,
    pub final_m: usize,
    pub all_proper: bool,
    /// First op after which the oracle rejected the coloring.
    pub first_violation: Option<usize>,
    pub mean_insert_depth: f64,
    pub max_insert_depth: u64,
    pub total_work: u64,
    #[serde(skip)]
    pub insert_depths: Vec<u64>,
}

/// Random inserts and deletes; the coloring is checked after every op.
pub fn update_workload(
    mode: Mode,
    n: usize,
    delta_max: usize,
    ops: usize,
    seed: u64,
) -> Result<UpdateStats, EdgeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dc = DynamicColoring::new(n, delta_max);
    let mut stats = UpdateStats {
        n,
        delta_max,
        ops,
        inserts: 0,
        deletes: 0,
        final_m: 0,
        all_proper: true,
        first_violation: None,
        mean_insert_depth: 0.0,
        max_insert_depth: 0,
        total_work: 0,
        insert_depths: Vec::new(),
    };
    for op in 0..ops {
        let m = dc.graph().m();
        let want_insert = m == 0 || rng.gen_bool(0.7);
        let mut inserted = false;
        if want_insert {
            for _ in 0..32 {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let g = dc.graph();
                if u == v || g.degree(u) >= delta_max || g.degree(v) >= delta_max || g.edge_between(u, v).is_some() {
                    continue;
                }
                let mut eng = Engine::new(mode);
                dc.insert(&mut eng, u, v)?;
                let meter = eng.meter();
                stats.insert_depths.push(meter.depth);
                stats.total_work += meter.work;
                stats.inserts += 1;
                inserted = true;
                break;
            }
        }
        if !inserted && m > 0 {
            let (u, v) = dc.graph().edge(rng.gen_range(0..m));
            dc.delete(u, v)?;
            stats.deletes += 1;
        }
        let g = dc.graph();
        if !check_proper_edge_coloring(g.n(), g.edges(), &dc.coloring().to_vec()).pass && stats.all_proper {
            stats.all_proper = false;
            stats.first_violation = Some(op);
        }
    }
    stats.final_m = dc.graph().m();
    if !stats.insert_depths.is_empty() {
        stats.mean_insert_depth =
            stats.insert_depths.iter().sum::<u64>() as f64 / stats.insert_depths.len() as f64;
        stats.max_insert_depth = *stats.insert_depths.iter().max().unwrap();
    }
    Ok(stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingAlgorithm {
    MaximalPath,
    EdgeColoring,
    Update,
}

impl std::str::FromStr for ScalingAlgorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "maximal-path" => Ok(ScalingAlgorithm::MaximalPath),
            "edge-coloring" => Ok(ScalingAlgorithm::EdgeColoring),
            "update" => Ok(ScalingAlgorithm::Update),
            _ => Err(BenchError::UnknownAlgorithm(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub delta: usize,
    pub depth: f64,
    pub work: u64,
}

/// One row per distinct size, in increasing order. `degree` is the regular
/// degree for edge coloring and the cap for updates.
pub fn scaling(
    algorithm: ScalingAlgorithm,
    sizes: &[usize],
    degree: usize,
    mode: Mode,
    seed: u64,
) -> Result<Vec<ScalingRow>, BenchError> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.is_empty() {
        return Err(BenchError::NoSizes);
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for n in sizes {
        let mut eng = Engine::new(mode);
        let row = match algorithm {
            ScalingAlgorithm::MaximalPath => {
                if n == 0 {
                    return Err(BenchError::SizeTooSmall(n));
                }
                let next: Vec<Option<usize>> = (0..n).map(|i| (i + 1 < n).then_some(i + 1)).collect();
                maximal_path(&mut eng, &FunctionalDigraph::new(next)?, 0)?;
                let m = eng.meter();
                ScalingRow { n, delta: 1, depth: m.depth as f64, work: m.work }
            }
            ScalingAlgorithm::EdgeColoring => {
                let g = gen::random_regular(n, degree, seed)?;
                edge_coloring(&mut eng, &g, IsStrategy::Delta1)?;
                let m = eng.meter();
                ScalingRow { n, delta: g.max_degree(), depth: m.depth as f64, work: m.work }
            }
            ScalingAlgorithm::Update => {
                if n < 2 {
                    return Err(BenchError::SizeTooSmall(n));
                }
                let s = update_workload(mode, n, degree, 4 * n, seed)?;
                ScalingRow { n, delta: degree, depth: s.mean_insert_depth, work: s.total_work }
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_update_run_stays_proper() {
        let s = update_workload(Mode::Faithful, 32, 4, 300, 5).unwrap();
        assert!(s.all_proper);
        assert_eq!(s.inserts + s.deletes, 300);
    }

    #[test]
    fn scaling_sizes() {
        assert_eq!(scaling(ScalingAlgorithm::MaximalPath, &[], 0, Mode::Faithful, 0).unwrap_err(), BenchError::NoSizes);
        let rows = scaling(ScalingAlgorithm::MaximalPath, &[32, 16, 32], 0, Mode::Faithful, 0).unwrap();
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![16, 32]);
        assert!(rows[0].depth < rows[1].depth);
    }
}
