//! Deterministic vertex colorings, H-decompositions and independent sets.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{clog2, Engine};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexError {
    #[error("parent pointers contain a cycle through vertex {0}")]
    Cycle(VertexId),
    #[error("palette {palette} is already at most Δ + 1 = {floor}")]
    PaletteAtFloor { palette: u32, floor: u32 },
    #[error("graphs share edge {{{0}, {1}}}")]
    NotEdgeDisjoint(VertexId, VertexId),
    #[error("graphs have different vertex counts")]
    VertexCountMismatch,
    #[error("no vertex has remaining degree at most {0}")]
    PeelStalled(usize),
    #[error("unknown independent-set strategy '{0}'")]
    UnknownStrategy(String),
}

/// Colors `1..=palette`, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    pub colors: Vec<u32>,
    pub palette: u32,
}

impl VertexColoring {
    pub fn uniform(n: usize) -> Self {
        VertexColoring { colors: vec![1; n], palette: 1 }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
            && self.colors.iter().all(|&c| c >= 1 && c <= self.palette)
    }

    pub fn class(&self, c: u32) -> Vec<VertexId> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == c).collect()
    }
}

/// Parent pointers of a rooted forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedForest {
    parent: Vec<Option<VertexId>>,
}

impl OrientedForest {
    pub fn new(parent: Vec<Option<VertexId>>) -> Result<Self, VertexError> {
        let n = parent.len();
        let mut state = vec![0u8; n];
        let mut path = Vec::new();
        for s in 0..n {
            let mut v = s;
            loop {
                match state[v] {
                    2 => break,
                    1 => return Err(VertexError::Cycle(v)),
                    _ => {}
                }
                state[v] = 1;
                path.push(v);
                match parent[v] {
                    Some(p) if p < n => v = p,
                    _ => break,
                }
            }
            for v in path.drain(..) {
                state[v] = 2;
            }
        }
        Ok(OrientedForest { parent })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.len()).filter_map(|v| self.parent[v].map(|p| (v, p))).collect()
    }
}

/// One step of bit-comparison color reduction: `2i + bit_i(φ(v))` where `i`
/// is the lowest bit in which `v` and its parent differ (roots use `i = 0`).
pub fn forest_reduce_colors(eng: &mut Engine, f: &OrientedForest, phi: &[u64]) -> Vec<u64> {
    eng.map(f.len(), |v| match f.parent(v) {
        Some(p) => {
            let i = (phi[v] ^ phi[p]).trailing_zeros() as u64;
            2 * i + ((phi[v] >> i) & 1)
        }
        None => phi[v] & 1,
    })
}

/// Colors `0..6` obtained by iterating [`forest_reduce_colors`] from vertex ids.
pub fn six_color_forest(eng: &mut Engine, f: &OrientedForest) -> Vec<u64> {
    let mut phi: Vec<u64> = eng.map(f.len(), |v| v as u64);
    let mut bound = f.len().max(1) as u64;
    while bound > 6 {
        phi = forest_reduce_colors(eng, f, &phi);
        bound = 2 * clog2(bound as usize) as u64;
    }
    phi
}

pub fn three_color_forest(eng: &mut Engine, f: &OrientedForest) -> VertexColoring {
    let n = f.len();
    let mut colors: Vec<u32> = six_color_forest(eng, f).into_iter().map(|c| c as u32 + 1).collect();
    for k in [6u32, 5, 4] {
        let old = colors.clone();
        let shifted = eng.map(n, |v| match f.parent(v) {
            Some(p) => old[p],
            None => (1..=3).find(|&c| c != old[v]).unwrap(),
        });
        colors = shifted;
        eng.round(&mut colors, n, |v, s, out| {
            if s[v] == k {
                let parent = f.parent(v).map(|p| s[p]);
                let c = (1..=3).find(|&c| c != old[v] && Some(c) != parent).unwrap();
                out.push((v, c));
            }
        });
    }
    VertexColoring { colors, palette: 3 }
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn next_prime_above(x: u64) -> u64 {
    let mut q = x + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}

/// Iterated polynomial color reduction from vertex ids to `O(Δ²)` colors.
pub fn linial_coloring(eng: &mut Engine, g: &Graph) -> VertexColoring {
    let n = g.n();
    let delta = g.max_degree() as u64;
    if delta == 0 {
        return VertexColoring::uniform(n);
    }
    let mut colors: Vec<u64> = eng.map(n, |v| v as u64);
    let mut palette = n as u64;
    loop {
        let (d, q) = (1u64..)
            .map(|d| (d, next_prime_above(delta * d)))
            .find(|&(d, q)| q.checked_pow(d as u32 + 1).is_none_or(|p| p >= palette))
            .unwrap();
        if q * q >= palette {
            break;
        }
        let eval = |c: u64, i: u64| {
            let mut acc = 0u64;
            let mut digits = Vec::with_capacity(d as usize + 1);
            let mut x = c;
            for _ in 0..=d {
                digits.push(x % q);
                x /= q;
            }
            for &a in digits.iter().rev() {
                acc = (acc * i + a) % q;
            }
            acc
        };
        let old = colors.clone();
        colors = eng.map(n, |v| {
            let i = (0..q)
                .find(|&i| {
                    let mine = eval(old[v], i);
                    g.neighbors(v).iter().all(|&(u, _)| eval(old[u], i) != mine)
                })
                .expect("a point outside all neighbor sets exists");
            i * q + eval(old[v], i)
        });
        eng.charge(clog2(q as usize) as u64, n as u64);
        palette = q * q;
    }
    VertexColoring { colors: colors.into_iter().map(|c| c as u32 + 1).collect(), palette: palette as u32 }
}

/// Reduces a proper coloring with `K` colors to `p` colors, `p` the smallest
/// prime with `p > 2Δ` and `p² >= K`, in at most `p` rounds.
pub fn algebraic_color_reduction(eng: &mut Engine, g: &Graph, phi: &VertexColoring, delta: usize) -> VertexColoring {
    algebraic_on(eng, g, phi, delta)
}

fn algebraic_on<A: Adjacent>(eng: &mut Engine, g: &A, phi: &VertexColoring, delta: usize) -> VertexColoring {
    let n = g.order();
    let k = phi.palette as u64;
    let mut p = next_prime_above(2 * delta as u64);
    while p * p < k {
        p = next_prime_above(p);
    }
    let mut ab: Vec<(u64, u64)> = eng.map(n, |v| {
        let c = (phi.colors[v] - 1) as u64;
        (c / p, c % p)
    });
    let mut active: Vec<VertexId> = (0..n).filter(|&v| ab[v].0 != 0).collect();
    let mut rounds = 0;
    while !active.is_empty() && rounds < p {
        let act = &active;
        eng.round(&mut ab, act.len(), |t, s, out| {
            let v = act[t];
            let (a, b) = s[v];
            if g.adjacent(v).all(|u| s[u].1 != b) {
                out.push((v, (0, b)));
            } else {
                out.push((v, (a, (a + b) % p)));
            }
        });
        active.retain(|&v| ab[v].0 != 0);
        rounds += 1;
    }
    assert!(active.is_empty(), "algebraic reduction did not settle within p rounds");
    eng.charge(p - rounds, 1);
    VertexColoring { colors: ab.iter().map(|&(_, b)| b as u32 + 1).collect(), palette: p as u32 }
}

/// Recolors the top color class greedily into `1..=Δ+1`.
pub fn reduce_color_vertex(
    eng: &mut Engine,
    g: &Graph,
    phi: &VertexColoring,
    delta: usize,
) -> Result<VertexColoring, VertexError> {
    reduce_on(eng, g, phi, delta)
}

fn reduce_on<A: Adjacent>(eng: &mut Engine, g: &A, phi: &VertexColoring, delta: usize) -> Result<VertexColoring, VertexError> {
    let k = phi.palette;
    let floor = delta as u32 + 1;
    if k <= floor {
        return Err(VertexError::PaletteAtFloor { palette: k, floor });
    }
    let n = g.order();
    let mut colors = phi.colors.clone();
    let top = eng.map(n, |v| phi.colors[v] == k);
    let top: Vec<VertexId> = (0..n).filter(|&v| top[v]).collect();
    eng.round(&mut colors, top.len(), |t, s, out| {
        let v = top[t];
        let mut taken = vec![false; floor as usize + 1];
        for u in g.adjacent(v) {
            if s[u] <= floor {
                taken[s[u] as usize] = true;
            }
        }
        let c = (1..=floor).find(|&c| !taken[c as usize]).unwrap();
        out.push((v, c));
    });
    Ok(VertexColoring { colors, palette: k - 1 })
}

/// Colors the union of two edge-disjoint graphs with `Δ + 1` colors, `Δ`
/// a bound on the union's maximum degree.
pub fn merge_colorings(
    eng: &mut Engine,
    g1: &Graph,
    g2: &Graph,
    phi1: &VertexColoring,
    phi2: &VertexColoring,
    delta: usize,
) -> Result<(Graph, VertexColoring), VertexError> {
    if g1.n() != g2.n() {
        return Err(VertexError::VertexCountMismatch);
    }
    let mut mark = vec![usize::MAX; g1.n()];
    for v in 0..g1.n() {
        for &(u, _) in g1.neighbors(v) {
            mark[u] = v;
        }
        if let Some(&(u, _)) = g2.neighbors(v).iter().find(|&&(u, _)| mark[u] == v) {
            return Err(VertexError::NotEdgeDisjoint(v.min(u), v.max(u)));
        }
    }
    let mut edges = g1.edges().to_vec();
    edges.extend_from_slice(g2.edges());
    let union = Graph::from_edges_unchecked(g1.n(), &edges);
    let phi = merge_on(eng, &union, phi1, phi2, delta);
    Ok((union, phi))
}

fn merge_on<A: Adjacent>(
    eng: &mut Engine,
    union: &A,
    phi1: &VertexColoring,
    phi2: &VertexColoring,
    delta: usize,
) -> VertexColoring {
    let product = VertexColoring {
        colors: eng.map(union.order(), |v| (phi1.colors[v] - 1) * phi2.palette + phi2.colors[v]),
        palette: phi1.palette * phi2.palette,
    };
    let mut phi = algebraic_on(eng, union, &product, delta);
    while phi.palette > delta as u32 + 1 {
        phi = reduce_on(eng, union, &phi, delta).expect("palette above the floor");
    }
    phi
}

trait Adjacent {
    fn order(&self) -> usize;
    fn adjacent(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_;
}

impl Adjacent for Graph {
    fn order(&self) -> usize {
        self.n()
    }

    fn adjacent(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.neighbors(v).iter().map(|x| x.0)
    }
}

/// Adjacency without edge ids, two allocations per graph.
struct Flat {
    start: Vec<usize>,
    nbr: Vec<VertexId>,
}

impl Flat {
    fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut start = vec![0usize; n + 1];
        for &(u, v) in edges {
            start[u + 1] += 1;
            start[v + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut nbr = vec![0; 2 * edges.len()];
        for &(u, v) in edges {
            nbr[fill[u]] = v;
            fill[u] += 1;
            nbr[fill[v]] = u;
            fill[v] += 1;
        }
        Flat { start, nbr }
    }
}

impl Adjacent for Flat {
    fn order(&self) -> usize {
        self.start.len() - 1
    }

    fn adjacent(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.nbr[self.start[v]..self.start[v + 1]].iter().copied()
    }
}

/// `(Δ + 1)`-vertex coloring via a forest decomposition and pairwise merging.
pub fn vertex_coloring_delta_plus_one(eng: &mut Engine, g: &Graph) -> VertexColoring {
    let n = g.n();
    let delta = g.max_degree();
    if delta == 0 {
        return VertexColoring::uniform(n);
    }
    // the i-th edge from v towards a higher id goes to forest i
    let up: Vec<Vec<VertexId>> = eng.map(n, |v| {
        let mut ws: Vec<VertexId> = g.neighbors(v).iter().map(|x| x.0).filter(|&w| w > v).collect();
        ws.sort_unstable();
        ws
    });
    let t = up.iter().map(Vec::len).max().unwrap_or(0).max(1);
    eng.charge(clog2(n).max(1) as u64, n as u64);
    let slots = 1usize << clog2(t);
    let mut level: Vec<(Vec<(VertexId, VertexId)>, VertexColoring)> = Vec::with_capacity(slots);
    let mut branches = Vec::new();
    for i in 0..slots {
        let parent: Vec<Option<VertexId>> = (0..n).map(|v| up[v].get(i).copied()).collect();
        let forest = OrientedForest::new(parent).expect("edges point to higher ids");
        let edges = forest.edges();
        let mut b = eng.fork();
        let coloring = if edges.is_empty() {
            VertexColoring::uniform(n)
        } else {
            three_color_forest(&mut b, &forest)
        };
        branches.push(b);
        level.push((edges, coloring));
    }
    eng.join(&branches);
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len() / 2);
        let mut branches = Vec::new();
        let mut it = level.into_iter();
        while let (Some((mut e1, c1)), Some((e2, c2))) = (it.next(), it.next()) {
            let mut b = eng.fork();
            e1.extend_from_slice(&e2);
            let c = merge_on(&mut b, &Flat::new(n, &e1), &c1, &c2, delta);
            next.push((e1, c));
            branches.push(b);
        }
        eng.join(&branches);
        level = next;
    }
    let (_, mut phi) = level.pop().unwrap();
    while phi.palette > delta as u32 + 1 {
        phi = reduce_color_vertex(eng, g, &phi, delta).unwrap();
    }
    phi.palette = delta as u32 + 1;
    phi
}

/// Layer index (starting at 0) of every vertex in the peeling that repeatedly
/// removes all vertices of remaining degree at most `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HDecomposition {
    pub layer: Vec<usize>,
    pub layers: usize,
    pub a: usize,
}

impl HDecomposition {
    pub fn members(&self, i: usize) -> Vec<VertexId> {
        (0..self.layer.len()).filter(|&v| self.layer[v] == i).collect()
    }
}

pub fn h_decomposition(eng: &mut Engine, g: &Graph, a: usize) -> Result<HDecomposition, VertexError> {
    let n = g.n();
    const LIVE: usize = usize::MAX;
    let mut layer = vec![LIVE; n];
    let mut live: Vec<VertexId> = (0..n).collect();
    let mut i = 0;
    while !live.is_empty() {
        let lv = &live;
        eng.round(&mut layer, lv.len(), |t, s, out| {
            let v = lv[t];
            let deg = g.neighbors(v).iter().filter(|&&(u, _)| s[u] == LIVE).count();
            if deg <= a {
                out.push((v, i));
            }
        });
        eng.charge(clog2(g.max_degree()) as u64, live.len() as u64);
        let before = live.len();
        live.retain(|&v| layer[v] == LIVE);
        if live.len() == before {
            return Err(VertexError::PeelStalled(a));
        }
        i += 1;
    }
    Ok(HDecomposition { layer, layers: i, a })
}

/// Graph induced on `vs`, with the map from new to old ids.
pub fn induced_subgraph(g: &Graph, vs: &[VertexId]) -> (Graph, Vec<VertexId>) {
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in vs.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
        .map(|&(u, v)| (index[u], index[v]))
        .collect();
    (Graph::from_edges_unchecked(vs.len(), &edges), vs.to_vec())
}

/// `(A + 1)`-coloring, `A = 2d + 1` for the degeneracy `d`.
pub fn arboricity_coloring(eng: &mut Engine, g: &Graph) -> VertexColoring {
    let a = 2 * g.degeneracy() + 1;
    let h = h_decomposition(eng, g, a).expect("A exceeds twice the degeneracy");
    let n = g.n();
    let floor = a as u32 + 1;
    let mut local = vec![0u32; n];
    let mut local_palette = vec![1u32; h.layers];
    let mut branches = Vec::new();
    for i in 0..h.layers {
        let members = h.members(i);
        let (sub, back) = induced_subgraph(g, &members);
        let mut b = eng.fork();
        let c = vertex_coloring_delta_plus_one(&mut b, &sub);
        for (j, &v) in back.iter().enumerate() {
            local[v] = c.colors[j];
        }
        local_palette[i] = c.palette;
        branches.push(b);
    }
    eng.join(&branches);
    const NONE: u32 = 0;
    let mut colors = vec![NONE; n];
    for i in (0..h.layers).rev() {
        let members = h.members(i);
        for c in 1..=local_palette[i] {
            let class: Vec<VertexId> = members.iter().copied().filter(|&v| local[v] == c).collect();
            eng.round(&mut colors, class.len(), |t, s, out| {
                let v = class[t];
                let pick = (1..=floor)
                    .find(|&k| g.neighbors(v).iter().all(|&(u, _)| s[u] != k))
                    .unwrap();
                out.push((v, pick));
            });
        }
    }
    VertexColoring { colors, palette: floor }
}

/// Sweeps the classes of a `(Δ + 1)`-coloring, adding every vertex with no
/// neighbor already chosen.
pub fn maximal_independent_set(eng: &mut Engine, g: &Graph) -> Vec<VertexId> {
    let phi = vertex_coloring_delta_plus_one(eng, g);
    let n = g.n();
    let mut state = vec![0u8; n];
    for c in 1..=phi.palette {
        eng.round(&mut state, n, |v, s, out| {
            if phi.colors[v] == c && s[v] == 0 {
                out.push((v, 1));
            }
        });
        eng.round(&mut state, n, |v, s, out| {
            if s[v] == 0 && g.neighbors(v).iter().any(|&(u, _)| s[u] == 1) {
                out.push((v, 2));
            }
        });
    }
    (0..n).filter(|&v| state[v] == 1).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsStrategy {
    /// Maximal independent set.
    Mis,
    /// Largest class of a `(Δ + 1)`-coloring.
    Delta1,
    /// Largest class of an arboricity-dependent coloring.
    Arb,
}

impl FromStr for IsStrategy {
    type Err = VertexError;

    fn from_str(s: &str) -> Result<Self, VertexError> {
        match s {
            "mis" => Ok(IsStrategy::Mis),
            "delta1" => Ok(IsStrategy::Delta1),
            "arb" => Ok(IsStrategy::Arb),
            _ => Err(VertexError::UnknownStrategy(s.to_string())),
        }
    }
}

impl std::fmt::Display for IsStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IsStrategy::Mis => "mis",
            IsStrategy::Delta1 => "delta1",
            IsStrategy::Arb => "arb",
        })
    }
}

pub fn large_independent_set(eng: &mut Engine, g: &Graph, strategy: IsStrategy) -> Vec<VertexId> {
    let phi = match strategy {
        IsStrategy::Mis => return maximal_independent_set(eng, g),
        IsStrategy::Delta1 => vertex_coloring_delta_plus_one(eng, g),
        IsStrategy::Arb => arboricity_coloring(eng, g),
    };
    let mut count = vec![0usize; phi.palette as usize + 1];
    for &c in &phi.colors {
        count[c as usize] += 1;
    }
    eng.charge(clog2(g.n()).max(1) as u64, g.n() as u64);
    let best = (1..=phi.palette).max_by_key(|&c| (count[c as usize], std::cmp::Reverse(c))).unwrap_or(1);
    phi.class(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Mode;

    fn eng() -> Engine {
        Engine::new(Mode::Faithful)
    }

    fn path_forest(n: usize) -> OrientedForest {
        OrientedForest::new((0..n).map(|v| if v + 1 < n { Some(v + 1) } else { None }).collect()).unwrap()
    }

    #[test]
    fn bit_comparison_example() {
        let f = OrientedForest::new(vec![Some(1), None]).unwrap();
        let out = forest_reduce_colors(&mut eng(), &f, &[0b100110, 0b111110]);
        assert_eq!(out[0], 6);
        let root = OrientedForest::new(vec![None]).unwrap();
        assert_eq!(forest_reduce_colors(&mut eng(), &root, &[1]), vec![1]);
    }

    #[test]
    fn cycle_rejected() {
        assert_eq!(OrientedForest::new(vec![Some(1), Some(0)]), Err(VertexError::Cycle(0)));
    }

    #[test]
    fn three_colors_paths_and_stars() {
        for n in [1, 2, 7, 100] {
            let f = path_forest(n);
            let c = three_color_forest(&mut eng(), &f);
            let g = Graph::from_edges(n, &f.edges()).unwrap();
            assert!(c.is_proper(&g));
        }
        let star = OrientedForest::new((0..9).map(|v| if v > 0 { Some(0) } else { None }).collect()).unwrap();
        let g = Graph::from_edges(9, &star.edges()).unwrap();
        assert!(three_color_forest(&mut eng(), &star).is_proper(&g));
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn linial_is_proper() {
        let g = petersen();
        let c = linial_coloring(&mut eng(), &g);
        assert!(c.is_proper(&g));
        assert!(c.palette <= 10);
    }

    #[test]
    fn algebraic_reduction_bound() {
        let g = petersen();
        let ids = VertexColoring { colors: (1..=10).collect(), palette: 10 };
        let c = algebraic_color_reduction(&mut eng(), &g, &ids, 3);
        assert!(c.is_proper(&g));
        assert_eq!(c.palette, 7);
    }

    #[test]
    fn algebraic_reduction_settles_on_dense_graph() {
        let g = crate::gen::gnp(32, 0.5, 0);
        let c = vertex_coloring_delta_plus_one(&mut eng(), &g);
        assert!(c.is_proper(&g));
        assert_eq!(c.palette as usize, g.max_degree() + 1);
    }

    #[test]
    fn reduce_at_floor_fails() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let c = VertexColoring { colors: vec![1, 2], palette: 2 };
        assert!(matches!(reduce_color_vertex(&mut eng(), &g, &c, 1), Err(VertexError::PaletteAtFloor { .. })));
    }

    #[test]
    fn merge_requires_disjoint_edges() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let c = VertexColoring { colors: vec![1, 2], palette: 2 };
        assert_eq!(
            merge_colorings(&mut eng(), &g, &g, &c, &c, 1).map(|_| ()),
            Err(VertexError::NotEdgeDisjoint(0, 1))
        );
    }

    #[test]
    fn delta_plus_one_on_clique_and_petersen() {
        let k6: Vec<_> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        for g in [Graph::from_edges(6, &k6).unwrap(), petersen()] {
            for mode in [Mode::Faithful, Mode::Fast] {
                let c = vertex_coloring_delta_plus_one(&mut Engine::new(mode), &g);
                assert!(c.is_proper(&g));
                assert_eq!(c.palette as usize, g.max_degree() + 1);
            }
        }
    }

    #[test]
    fn star_peels_in_two_layers() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let h = h_decomposition(&mut eng(), &g, 2).unwrap();
        assert_eq!(h.layers, 2);
        assert_eq!(h.members(1), vec![0]);
        let p = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(h_decomposition(&mut eng(), &p, 2).unwrap().layers, 1);
        let k4: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let k4 = Graph::from_edges(4, &k4).unwrap();
        assert_eq!(h_decomposition(&mut eng(), &k4, 1), Err(VertexError::PeelStalled(1)));
    }

    #[test]
    fn arboricity_coloring_on_tree() {
        let g = Graph::from_edges(8, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (6, 7)]).unwrap();
        let c = arboricity_coloring(&mut eng(), &g);
        assert!(c.is_proper(&g));
        assert_eq!(c.palette, 4);
    }

    #[test]
    fn independent_sets() {
        let g = petersen();
        let mis = maximal_independent_set(&mut eng(), &g);
        assert!(mis.len() >= 10 / 4);
        for s in [IsStrategy::Mis, IsStrategy::Delta1, IsStrategy::Arb] {
            let is = large_independent_set(&mut eng(), &g, s);
            assert!(!is.is_empty());
            for &(u, v) in g.edges() {
                assert!(!(is.contains(&u) && is.contains(&v)));
            }
        }
        assert_eq!("lp".parse::<IsStrategy>(), Err(VertexError::UnknownStrategy("lp".into())));
    }
}
