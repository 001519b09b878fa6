//! Edge colorings: palette reduction, `(Δ+1)`-coloring, approximate
//! colorings via degree splitting and dynamic maintenance.

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::bipartite_delta_coloring;
use crate::engine::Engine;
use crate::euler::{degree_splitting, euler_split};
use crate::fan::{
    build_uncolored_distance2_graph, charge_distance2, construct_maximal_fan, parallel_fans_on, recolor_batch, recolor_fan,
    FanError,
};
use crate::graph::{Color, ColoringError, EdgeId, Graph, GraphError, PartialEdgeColoring, VertexId};
use crate::pram::{color_degree_le2, PramError};
use crate::vertex::{induced_subgraph, IsStrategy};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EdgeError {
    #[error("palette {palette} is already at most Δ + 1 = {floor}")]
    PaletteAtFloor { palette: Color, floor: Color },
    #[error("h = {h} exceeds log2 Δ for Δ = {delta}")]
    HTooLarge { h: u32, delta: usize },
    #[error("epsilon {eps} outside [1/Δ, 1) for Δ = {delta}")]
    EpsilonOutOfRange { eps: f64, delta: usize },
    #[error("edge {{{0}, {1}}} already present")]
    EdgeExists(VertexId, VertexId),
    #[error("inserting {{{0}, {1}}} exceeds the degree cap {2}")]
    DegreeCapExceeded(VertexId, VertexId, usize),
    #[error("no edge {{{0}, {1}}}")]
    NoSuchEdge(VertexId, VertexId),
    #[error("uncolored edges stayed at {0}")]
    NoProgress(usize),
    #[error("claim violated: {0}")]
    ClaimViolated(String),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Pram(#[from] PramError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Uncolored-edge counts before each iteration of one palette reduction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReduceLog {
    pub palette: Color,
    pub uncolored: Vec<usize>,
    pub batch_sizes: Vec<usize>,
}

impl ReduceLog {
    pub fn iterations(&self) -> usize {
        self.batch_sizes.len()
    }
}

/// Removes the top color class and recolors its edges with the remaining
/// palette, batch by batch.
pub fn reduce_color(
    eng: &mut Engine,
    g: &Graph,
    phi: &mut PartialEdgeColoring,
    strategy: IsStrategy,
) -> Result<ReduceLog, EdgeError> {
    let k = phi.palette();
    let floor = g.max_degree() as Color + 1;
    if k <= floor {
        return Err(EdgeError::PaletteAtFloor { palette: k, floor });
    }
    let mut f: Vec<EdgeId> = phi.edges_with_color(k);
    eng.charge(1, g.m().max(1) as u64);
    for &e in &f {
        phi.uncolor(e);
    }
    let mut log = ReduceLog { palette: k, uncolored: vec![f.len()], batch_sizes: Vec::new() };
    // G^(F) of a shrinking F is the induced subgraph on what is left
    let full = build_uncolored_distance2_graph(eng, g, &f)?;
    let mut alive: Vec<usize> = (0..f.len()).collect();
    while !f.is_empty() {
        let gf = if alive.len() == full.n() {
            full.clone()
        } else {
            let (sub, _) = induced_subgraph(&full, &alive);
            charge_distance2(eng, g, &f, sub.m());
            sub
        };
        let batch = parallel_fans_on(eng, g, phi, &f, &gf, strategy, floor)?;
        let done = recolor_batch(eng, phi, &batch)?;
        let left: Vec<usize> = (0..f.len()).filter(|&i| phi.color(f[i]).is_none()).collect();
        alive = left.iter().map(|&i| alive[i]).collect();
        f = left.iter().map(|&i| f[i]).collect();
        if done == 0 || f.len() >= *log.uncolored.last().unwrap() {
            return Err(EdgeError::NoProgress(f.len()));
        }
        log.batch_sizes.push(done);
        log.uncolored.push(f.len());
    }
    phi.set_palette(k - 1)?;
    Ok(log)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LevelAudit {
    pub level: usize,
    /// Palette of every merged coloring before its reduction.
    pub merged_palettes: Vec<Color>,
    /// `Σ Δ(G⁽⁰⁾_j)` over the base graphs below every merged graph.
    pub base_sums: Vec<usize>,
    pub unions_ok: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct EdgeColoringAudit {
    pub delta: usize,
    pub classes: usize,
    pub base_delta_sum: usize,
    pub levels: Vec<LevelAudit>,
    pub final_reduction: bool,
    pub reductions: Vec<ReduceLog>,
}

#[derive(Debug, Clone)]
pub struct EdgeColoringOutcome {
    pub coloring: PartialEdgeColoring,
    pub audit: EdgeColoringAudit,
}

struct Part {
    ids: Vec<EdgeId>,
    graph: Graph,
    coloring: PartialEdgeColoring,
    base_sum: usize,
}

/// `(Δ + 1)`-edge coloring.
pub fn edge_coloring(eng: &mut Engine, g: &Graph, strategy: IsStrategy) -> Result<EdgeColoringOutcome, EdgeError> {
    let delta = g.max_degree();
    let mut audit = EdgeColoringAudit { delta, ..Default::default() };
    if delta <= 2 {
        let coloring = color_degree_le2(eng, g)?;
        audit.base_delta_sum = delta;
        return Ok(EdgeColoringOutcome { coloring, audit });
    }
    let split = euler_split(eng, g)?;
    let gb = bipartite_delta_coloring(eng, &split.bipartite)?;
    let c = delta.div_ceil(2);
    let h = crate::engine::clog2(c);
    let slots = 1usize << h;
    audit.classes = c;
    let mut classes: Vec<Vec<EdgeId>> = vec![Vec::new(); slots];
    for (be, &orig) in split.origin.iter().enumerate() {
        let col = gb.color(be).expect("bipartite coloring is complete") as usize;
        if col > c {
            return Err(EdgeError::ClaimViolated(format!("bipartite color {col} above ⌈Δ/2⌉ = {c}")));
        }
        classes[col - 1].push(orig);
    }
    eng.charge(1, g.m() as u64);
    let mut level: Vec<Part> = Vec::with_capacity(slots);
    let mut branches = Vec::new();
    for mut ids in classes {
        ids.sort_unstable();
        let (graph, _) = g.edge_subgraph(&ids);
        let mut b = eng.fork();
        let coloring = color_degree_le2(&mut b, &graph)?;
        branches.push(b);
        let base_sum = graph.max_degree();
        level.push(Part { ids, graph, coloring, base_sum });
    }
    eng.join(&branches);
    let sum: usize = level.iter().map(|p| p.base_sum).sum();
    audit.base_delta_sum = sum;
    if sum != delta && sum != delta + 1 {
        return Err(EdgeError::ClaimViolated(format!("Σ Δ of base graphs is {sum}, Δ = {delta}")));
    }
    let mut depth = 0;
    while level.len() > 1 {
        let mut la = LevelAudit { level: depth, unions_ok: true, ..Default::default() };
        let mut next = Vec::with_capacity(level.len() / 2);
        let mut branches = Vec::new();
        let mut it = level.into_iter();
        while let (Some(a), Some(b)) = (it.next(), it.next()) {
            let mut br = eng.fork();
            let mut expected: Vec<EdgeId> = a.ids.iter().chain(&b.ids).copied().collect();
            expected.sort_unstable();
            let (part, log, palette) = merge_parts(&mut br, g, a, b, strategy)?;
            la.unions_ok &= part.ids == expected
                && part.ids.windows(2).all(|w| w[0] < w[1])
                && part.ids.iter().enumerate().all(|(i, &e)| part.graph.edge(i) == g.edge(e));
            la.merged_palettes.push(palette);
            la.base_sums.push(part.base_sum);
            if palette as usize != part.base_sum + 2 || part.coloring.palette() as usize != part.base_sum + 1 {
                return Err(EdgeError::ClaimViolated(format!(
                    "merged palette {palette} for base sum {}",
                    part.base_sum
                )));
            }
            audit.reductions.push(log);
            next.push(part);
            branches.push(br);
        }
        eng.join(&branches);
        audit.levels.push(la);
        level = next;
        depth += 1;
    }
    let mut part = level.pop().unwrap();
    if !part.ids.iter().copied().eq(0..g.m()) || audit.levels.iter().any(|l| !l.unions_ok) {
        return Err(EdgeError::ClaimViolated("merged subgraphs do not partition E".into()));
    }
    if part.coloring.palette() as usize == delta + 2 {
        audit.final_reduction = true;
        audit.reductions.push(reduce_color(eng, &part.graph, &mut part.coloring, strategy)?);
    }
    if part.coloring.palette() as usize != delta + 1 {
        return Err(EdgeError::ClaimViolated(format!("final palette {}", part.coloring.palette())));
    }
    let colors: Vec<Option<Color>> = {
        let mut cs = vec![None; g.m()];
        for (i, &e) in part.ids.iter().enumerate() {
            cs[e] = part.coloring.color(i);
        }
        cs
    };
    let coloring = PartialEdgeColoring::from_colors(g, delta as Color + 1, &colors)?;
    Ok(EdgeColoringOutcome { coloring, audit })
}

fn merge_parts(
    eng: &mut Engine,
    g: &Graph,
    a: Part,
    b: Part,
    strategy: IsStrategy,
) -> Result<(Part, ReduceLog, Color), EdgeError> {
    let offset = a.coloring.palette();
    let mut tagged: Vec<(EdgeId, Color)> = Vec::with_capacity(a.ids.len() + b.ids.len());
    for (i, &e) in a.ids.iter().enumerate() {
        tagged.push((e, a.coloring.color(i).unwrap()));
    }
    for (i, &e) in b.ids.iter().enumerate() {
        tagged.push((e, offset + b.coloring.color(i).unwrap()));
    }
    tagged.sort_unstable();
    eng.charge(1, tagged.len().max(1) as u64);
    let ids: Vec<EdgeId> = tagged.iter().map(|t| t.0).collect();
    let (graph, _) = g.edge_subgraph(&ids);
    let palette = offset + b.coloring.palette();
    let colors: Vec<Option<Color>> = tagged.iter().map(|t| Some(t.1)).collect();
    let mut coloring = PartialEdgeColoring::from_colors(&graph, palette, &colors)?;
    let base_sum = a.base_sum + b.base_sum;
    let log = reduce_color(eng, &graph, &mut coloring, strategy)?;
    debug_assert!(graph.max_degree() <= base_sum);
    Ok((Part { ids, graph, coloring, base_sum }, log, palette))
}

#[derive(Debug, Clone)]
pub struct ApproxOutcome {
    pub coloring: PartialEdgeColoring,
    pub h: u32,
    /// Maximum degree of every subgraph, per recursion level.
    pub level_degrees: Vec<Vec<usize>>,
}

/// Colors with at most `Δ + 3·2^h` colors by `h` rounds of degree splitting.
pub fn approx_edge_coloring(
    eng: &mut Engine,
    g: &Graph,
    h: u32,
    strategy: IsStrategy,
) -> Result<ApproxOutcome, EdgeError> {
    let delta = g.max_degree();
    if (delta == 0 && h > 0) || (delta > 0 && h > delta.ilog2()) {
        return Err(EdgeError::HTooLarge { h, delta });
    }
    let mut degrees = vec![Vec::new(); h as usize + 1];
    let coloring = approx_rec(eng, g, 0, h, delta, strategy, &mut degrees)?;
    Ok(ApproxOutcome { coloring, h, level_degrees: degrees })
}

fn approx_rec(
    eng: &mut Engine,
    g: &Graph,
    level: u32,
    h: u32,
    delta0: usize,
    strategy: IsStrategy,
    degrees: &mut [Vec<usize>],
) -> Result<PartialEdgeColoring, EdgeError> {
    let d = g.max_degree();
    degrees[level as usize].push(d);
    if d as f64 > delta0 as f64 / f64::from(1u32 << level) + 2.0 {
        return Err(EdgeError::ClaimViolated(format!("level {level} has Δ = {d}")));
    }
    if level == h {
        return Ok(edge_coloring(eng, g, strategy)?.coloring);
    }
    let split = degree_splitting(eng, g)?;
    let mut halves = Vec::with_capacity(2);
    let mut branches = Vec::with_capacity(2);
    for s in [1i8, -1] {
        let ids = split.part(s);
        let (sub, _) = g.edge_subgraph(&ids);
        let mut b = eng.fork();
        let c = approx_rec(&mut b, &sub, level + 1, h, delta0, strategy, degrees)?;
        halves.push((ids, c));
        branches.push(b);
    }
    eng.join(&branches);
    let offset = halves[0].1.palette();
    let palette = offset + halves[1].1.palette();
    let mut colors = vec![None; g.m()];
    for (k, (ids, c)) in halves.iter().enumerate() {
        for (i, &e) in ids.iter().enumerate() {
            colors[e] = c.color(i).map(|x| if k == 0 { x } else { offset + x });
        }
    }
    eng.charge(1, g.m().max(1) as u64);
    Ok(PartialEdgeColoring::from_colors(g, palette, &colors)?)
}

/// Largest `h` with `3·2^h <= εΔ`, or 0.
pub fn epsilon_levels(eps: f64, delta: usize) -> u32 {
    let budget = eps * delta as f64 + 1e-9;
    let mut h = 0;
    while 3.0 * f64::from(1u32 << (h + 1)) <= budget {
        h += 1;
    }
    h
}

/// `(1 + ε)Δ`-edge coloring for `1/Δ <= ε < 1`.
pub fn epsilon_coloring(
    eng: &mut Engine,
    g: &Graph,
    eps: f64,
    strategy: IsStrategy,
) -> Result<ApproxOutcome, EdgeError> {
    let delta = g.max_degree();
    if delta == 0 || !(eps < 1.0) || eps * delta as f64 + 1e-9 < 1.0 {
        return Err(EdgeError::EpsilonOutOfRange { eps, delta });
    }
    approx_edge_coloring(eng, g, epsilon_levels(eps, delta), strategy)
}

/// A `(Δ_max + 1)`-edge coloring kept proper under insertions and deletions.
#[derive(Debug, Clone)]
pub struct DynamicColoring {
    graph: Graph,
    coloring: PartialEdgeColoring,
    delta_max: usize,
}

impl DynamicColoring {
    pub fn new(n: usize, delta_max: usize) -> Self {
        let graph = Graph::empty(n);
        let coloring = PartialEdgeColoring::new(&graph, delta_max as Color + 1).unwrap();
        DynamicColoring { graph, coloring, delta_max }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coloring(&self) -> &PartialEdgeColoring {
        &self.coloring
    }

    pub fn delta_max(&self) -> usize {
        self.delta_max
    }

    pub fn insert(&mut self, eng: &mut Engine, u: VertexId, v: VertexId) -> Result<EdgeId, EdgeError> {
        if u < self.graph.n() && v < self.graph.n() && self.graph.edge_between(u, v).is_some() {
            return Err(EdgeError::EdgeExists(u, v));
        }
        if u < self.graph.n()
            && v < self.graph.n()
            && (self.graph.degree(u) >= self.delta_max || self.graph.degree(v) >= self.delta_max)
        {
            return Err(EdgeError::DegreeCapExceeded(u, v, self.delta_max));
        }
        let e = self.graph.add_edge(u, v)?;
        self.coloring.push_edge(u, v);
        let palette = self.delta_max as Color + 1;
        let fan = construct_maximal_fan(eng, &self.graph, &self.coloring, u.min(v), u.max(v), palette)?;
        recolor_fan(eng, &self.graph, &mut self.coloring, &fan)?;
        Ok(e)
    }

    pub fn delete(&mut self, u: VertexId, v: VertexId) -> Result<(), EdgeError> {
        let e = self.graph.edge_between(u, v).ok_or(EdgeError::NoSuchEdge(u, v))?;
        self.coloring.swap_remove_edge(e);
        self.graph.swap_remove_edge(e);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Mode;

    fn proper(g: &Graph, c: &PartialEdgeColoring) -> bool {
        c.is_complete()
            && (0..g.n()).all(|v| {
                let mut cs: Vec<_> = g.neighbors(v).iter().map(|x| c.color(x.1).unwrap()).collect();
                cs.sort();
                cs.windows(2).all(|w| w[0] != w[1])
            })
    }

    fn clique(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn cliques_get_delta_plus_one() {
        for n in 2..=8 {
            let g = clique(n);
            for mode in [Mode::Faithful, Mode::Fast] {
                let out = edge_coloring(&mut Engine::new(mode), &g, IsStrategy::Delta1).unwrap();
                assert!(proper(&g, &out.coloring));
                assert_eq!(out.coloring.palette() as usize, g.max_degree() + 1);
            }
        }
    }

    #[test]
    fn reduce_from_delta_plus_two() {
        let g = clique(7);
        let mut eng = Engine::new(Mode::Fast);
        let mut c = edge_coloring(&mut eng, &g, IsStrategy::Mis).unwrap().coloring;
        c.set_palette(8).unwrap();
        for e in c.edges_with_color(1) {
            c.set_color(e, 8).unwrap();
        }
        let log = reduce_color(&mut eng, &g, &mut c, IsStrategy::Mis).unwrap();
        assert!(proper(&g, &c));
        assert_eq!(c.palette(), 7);
        assert!(log.uncolored.windows(2).all(|w| w[1] < w[0]));
        assert!(matches!(
            reduce_color(&mut eng, &g, &mut c, IsStrategy::Mis),
            Err(EdgeError::PaletteAtFloor { .. })
        ));
    }

    #[test]
    fn epsilon_levels_example() {
        assert_eq!(epsilon_levels(0.5, 24), 2);
        assert_eq!(epsilon_levels(0.1, 10), 0);
    }

    #[test]
    fn epsilon_range_checked() {
        let g = clique(5);
        let mut eng = Engine::new(Mode::Fast);
        assert!(matches!(
            epsilon_coloring(&mut eng, &g, 0.1, IsStrategy::Mis),
            Err(EdgeError::EpsilonOutOfRange { .. })
        ));
        assert!(matches!(
            epsilon_coloring(&mut eng, &g, 1.0, IsStrategy::Mis),
            Err(EdgeError::EpsilonOutOfRange { .. })
        ));
        assert!(epsilon_coloring(&mut eng, &g, 0.25, IsStrategy::Mis).is_ok());
    }

    #[test]
    fn approx_on_eight_regular() {
        let g = clique(9);
        let out = approx_edge_coloring(&mut Engine::new(Mode::Fast), &g, 1, IsStrategy::Mis).unwrap();
        assert!(proper(&g, &out.coloring));
        assert!(out.coloring.colors_used() <= 14);
        assert!(matches!(
            approx_edge_coloring(&mut Engine::new(Mode::Fast), &g, 4, IsStrategy::Mis),
            Err(EdgeError::HTooLarge { .. })
        ));
    }

    #[test]
    fn dynamic_insert_delete() {
        let mut dc = DynamicColoring::new(6, 3);
        let mut eng = Engine::new(Mode::Faithful);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4), (0, 3), (4, 5), (5, 3)] {
            dc.insert(&mut eng, u, v).unwrap();
            assert!(proper(dc.graph(), dc.coloring()));
        }
        assert_eq!(dc.insert(&mut eng, 1, 0), Err(EdgeError::EdgeExists(1, 0)));
        dc.insert(&mut eng, 1, 4).unwrap();
        assert_eq!(dc.insert(&mut eng, 0, 4), Err(EdgeError::DegreeCapExceeded(0, 4, 3)));
        dc.delete(0, 1).unwrap();
        assert!(proper(dc.graph(), dc.coloring()));
        assert_eq!(dc.delete(0, 1), Err(EdgeError::NoSuchEdge(0, 1)));
    }
}
