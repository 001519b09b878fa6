//! Vizing fans, alternating paths and batches of fans recolored together.

use std::collections::HashMap;

use thiserror::Error;

use crate::engine::{clog2, Engine};
use crate::graph::{Color, ColoringError, EdgeId, Graph, PartialEdgeColoring, VertexId};
use crate::pram::{components, maximal_path, FunctionalDigraph, PramError};
use crate::vertex::{large_independent_set, maximal_independent_set, IsStrategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("no edge {{{0}, {1}}}")]
    NoSuchEdge(VertexId, VertexId),
    #[error("edge {0} is already colored")]
    AlreadyColored(EdgeId),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not maximal")]
    NotMaximal,
    #[error("edges {0} and {1} share an endpoint")]
    NotAMatching(EdgeId, EdgeId),
    #[error("no fans given")]
    EmptyInput,
    #[error("alternating component of vertex {0} is a cycle")]
    CycleComponent(VertexId),
    #[error("batch recolored {got} edges, expected {expected}")]
    BatchMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Pram(#[from] PramError),
}

/// A fan `⟨u_1, ..., u_k⟩` at `center`: `(center, u_1)` is uncolored,
/// `(center, u_{i+1})` has color `m(u_i)` and `m(u_i)` is free at `u_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub center: VertexId,
    pub leaves: Vec<VertexId>,
    /// `edges[i]` joins the center and `leaves[i]`.
    pub edges: Vec<EdgeId>,
    /// `missing[i] = m(leaves[i])`.
    pub missing: Vec<Color>,
    /// A color free at the center, distinct from `beta`.
    pub alpha: Color,
    /// `m(u_k)`.
    pub beta: Color,
}

impl Fan {
    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn pair(&self) -> (Color, Color) {
        (self.alpha.min(self.beta), self.alpha.max(self.beta))
    }
}

/// Indices into `Fan::leaves`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialVertices {
    pub x: Option<usize>,
    pub z: Option<usize>,
    pub y: usize,
}

/// `G_fan(v, u)` on nodes `0 = u` and `1..=palette` (colors).
pub fn build_fan_graph(
    eng: &mut Engine,
    g: &Graph,
    phi: &PartialEdgeColoring,
    v: VertexId,
    u: VertexId,
    palette: Color,
) -> Result<FunctionalDigraph, FanError> {
    let e = g.edge_between(v, u).ok_or(FanError::NoSuchEdge(v, u))?;
    if phi.color(e).is_some() {
        return Err(FanError::AlreadyColored(e));
    }
    let mut next: Vec<Option<usize>> = vec![None; palette as usize + 1];
    next[0] = Some(phi.missing_color(u)? as usize);
    let nb = g.neighbors(v);
    let writes = eng.par_round(nb.len(), |t, out| {
        let (w, f) = nb[t];
        if let Some(c) = phi.color(f) {
            if c <= palette {
                if let Ok(m) = phi.missing_color(w) {
                    out.push((c as usize, Some(m as usize)));
                }
            }
        }
    });
    for w in writes {
        next[w.cell] = w.value;
    }
    Ok(FunctionalDigraph::new(next)?)
}

/// The fan read off the maximal path from `u` in `G_fan(v, u)`.
pub fn construct_maximal_fan(
    eng: &mut Engine,
    g: &Graph,
    phi: &PartialEdgeColoring,
    v: VertexId,
    u: VertexId,
    palette: Color,
) -> Result<Fan, FanError> {
    let d = build_fan_graph(eng, g, phi, v, u, palette)?;
    let path = maximal_path(eng, &d, 0)?;
    let mut colors: Vec<Color> = path[1..].iter().map(|&c| c as Color).collect();
    let k = colors.len();
    let last = colors[k - 1];
    let closed = d.next(last as usize).map(|c| c as Color);
    let mut leaves = eng.map(k, |i| {
        if i == 0 {
            u
        } else {
            let f = phi.edge_with_color(v, colors[i - 1]).unwrap();
            g.other_endpoint(f, v)
        }
    });
    if let Some(next) = closed {
        let f = phi.edge_with_color(v, last).unwrap();
        leaves.push(g.other_endpoint(f, v));
        colors.push(next);
    }
    let edges = eng.map(leaves.len(), |i| {
        if i == 0 {
            g.edge_between(v, u).unwrap()
        } else {
            phi.edge_with_color(v, colors[i - 1]).unwrap()
        }
    });
    let beta = *colors.last().unwrap();
    let alpha = phi
        .missing_colors(v)
        .find(|&c| c != beta)
        .ok_or(ColoringError::NoFreeColor(v))?;
    Ok(Fan { center: v, leaves, edges, missing: colors, alpha, beta })
}

/// Checks the fan conditions against the current coloring.
pub fn validate_fan(g: &Graph, phi: &PartialEdgeColoring, fan: &Fan) -> Result<(), FanError> {
    let bad = |s: String| Err(FanError::InvalidFan(s));
    let k = fan.len();
    if k == 0 || fan.edges.len() != k || fan.missing.len() != k {
        return bad("inconsistent lengths".into());
    }
    for i in 0..k {
        let e = fan.edges[i];
        let (a, b) = g.edge(e);
        if !((a, b) == (fan.center, fan.leaves[i]) || (b, a) == (fan.center, fan.leaves[i])) {
            return bad(format!("edge {e} does not join the center and leaf {i}"));
        }
        let want = if i == 0 { None } else { Some(fan.missing[i - 1]) };
        if phi.color(e) != want {
            return bad(format!("edge to leaf {i} has color {:?}, expected {:?}", phi.color(e), want));
        }
        if !phi.is_free(fan.leaves[i], fan.missing[i]) {
            return bad(format!("color {} is not free at leaf {i}", fan.missing[i]));
        }
    }
    if !phi.is_free(fan.center, fan.alpha) || fan.alpha == fan.beta || fan.beta != fan.missing[k - 1] {
        return bad("alpha/beta".into());
    }
    Ok(())
}

/// Shifts colors one step towards `u_1` along `leaves[..=i]`; the edge to
/// `leaves[i]` becomes uncolored.
pub fn rotate_fan(phi: &mut PartialEdgeColoring, fan: &Fan, i: usize) -> Result<(), FanError> {
    if i >= fan.len() {
        return Err(FanError::InvalidFan(format!("rotation index {i} beyond fan of size {}", fan.len())));
    }
    phi.apply(&rotation(phi, fan, i, None))
        .map_err(|e| FanError::InvalidFan(format!("rotation breaks properness: {e}")))
}

fn rotation(phi: &PartialEdgeColoring, fan: &Fan, i: usize, last: Option<Color>) -> Vec<(EdgeId, Option<Color>)> {
    let mut ch: Vec<(EdgeId, Option<Color>)> = (0..i).map(|l| (fan.edges[l], phi.color(fan.edges[l + 1]))).collect();
    ch.push((fan.edges[i], last));
    ch
}

pub fn special_vertices(phi: &PartialEdgeColoring, fan: &Fan) -> Result<SpecialVertices, FanError> {
    let k = fan.len();
    let beta = fan.beta;
    if phi.is_free(fan.center, beta) {
        return Ok(SpecialVertices { x: None, z: None, y: k - 1 });
    }
    let x = (1..k).find(|&i| phi.color(fan.edges[i]) == Some(beta)).ok_or(FanError::NotMaximal)?;
    if x + 1 >= k {
        return Err(FanError::NotMaximal);
    }
    Ok(SpecialVertices { x: Some(x), z: Some(x - 1), y: k - 1 })
}

/// Components of the subgraph of edges colored `alpha` or `beta`.
#[derive(Debug, Clone)]
pub struct AlphaBetaDecomposition {
    pub alpha: Color,
    pub beta: Color,
    /// Component label (smallest vertex) of every vertex.
    pub label: Vec<usize>,
    /// Path endpoints per label; `None` for cycles.
    ends: HashMap<usize, Option<(VertexId, VertexId)>>,
    edges: Vec<EdgeId>,
    edge_label: Vec<usize>,
}

impl AlphaBetaDecomposition {
    pub fn is_cycle(&self, v: VertexId) -> bool {
        matches!(self.ends.get(&self.label[v]), Some(None))
    }

    /// Endpoints of the path through `v` (`(v, v)` for an isolated vertex).
    pub fn ends(&self, v: VertexId) -> Option<(VertexId, VertexId)> {
        match self.ends.get(&self.label[v]) {
            Some(e) => *e,
            None => Some((v, v)),
        }
    }

    /// The endpoint other than `v` of `v`'s path, if `v` is an endpoint.
    pub fn other_end(&self, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.ends(v)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    pub fn component_edges(&self, v: VertexId) -> Vec<EdgeId> {
        let l = self.label[v];
        self.edges.iter().zip(&self.edge_label).filter(|x| *x.1 == l).map(|x| *x.0).collect()
    }

    /// Edges of all components containing one of `vs`, without repetition.
    pub fn edges_of(&self, vs: &[VertexId]) -> Vec<EdgeId> {
        let mut want: Vec<usize> = vs.iter().map(|&v| self.label[v]).collect();
        want.sort_unstable();
        want.dedup();
        self.edges
            .iter()
            .zip(&self.edge_label)
            .filter(|x| want.binary_search(x.1).is_ok())
            .map(|x| *x.0)
            .collect()
    }

    pub fn component_count(&self) -> usize {
        let mut ls = self.label.clone();
        ls.sort_unstable();
        ls.dedup();
        ls.len()
    }
}

pub fn alpha_beta_components(
    eng: &mut Engine,
    g: &Graph,
    phi: &PartialEdgeColoring,
    alpha: Color,
    beta: Color,
) -> AlphaBetaDecomposition {
    let n = g.n();
    let on = eng.map(g.m(), |e| matches!(phi.color(e), Some(c) if c == alpha || c == beta));
    eng.charge(clog2(g.m()).max(1) as u64, g.m() as u64);
    let edges: Vec<EdgeId> = (0..g.m()).filter(|&e| on[e]).collect();
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&e| g.edge(e)).collect();
    let label = components(eng, n, &pairs);
    let deg = eng.map(n, |v| {
        usize::from(phi.edge_with_color(v, alpha).is_some()) + usize::from(phi.edge_with_color(v, beta).is_some())
    });
    let mut ends: HashMap<usize, Option<(VertexId, VertexId)>> = HashMap::new();
    eng.charge(2, edges.len() as u64 + n as u64);
    for &(a, _) in &pairs {
        ends.entry(label[a]).or_insert(None);
    }
    for v in 0..n {
        if deg[v] == 1 {
            let slot = ends.get_mut(&label[v]).unwrap();
            *slot = match *slot {
                None => Some((v, v)),
                Some((a, _)) => Some((a, v)),
            };
        }
    }
    let edge_label = pairs.iter().map(|&(a, _)| label[a]).collect();
    AlphaBetaDecomposition { alpha, beta, label, ends, edges, edge_label }
}

/// Edges of the `alpha`/`beta` path starting at `v`, walked sequentially.
pub fn alpha_beta_path_from(
    g: &Graph,
    phi: &PartialEdgeColoring,
    v: VertexId,
    alpha: Color,
    beta: Color,
) -> Result<Vec<EdgeId>, FanError> {
    let mut out = Vec::new();
    let mut cur = v;
    let mut want = if phi.is_free(v, alpha) { beta } else { alpha };
    while let Some(e) = phi.edge_with_color(cur, want) {
        if out.first() == Some(&e) {
            return Err(FanError::CycleComponent(v));
        }
        out.push(e);
        cur = g.other_endpoint(e, cur);
        want = if want == alpha { beta } else { alpha };
    }
    Ok(out)
}

/// Swaps `alpha` and `beta` on the given edges.
pub fn exchange_path(phi: &mut PartialEdgeColoring, edges: &[EdgeId], alpha: Color, beta: Color) -> Result<(), FanError> {
    let changes: Vec<(EdgeId, Option<Color>)> = edges
        .iter()
        .map(|&e| (e, phi.color(e).map(|c| if c == alpha { beta } else { alpha })))
        .collect();
    phi.apply(&changes)?;
    Ok(())
}

/// Colors the first edge of a maximal fan, possibly after flipping the
/// alternating path at its center.
pub fn recolor_fan(eng: &mut Engine, g: &Graph, phi: &mut PartialEdgeColoring, fan: &Fan) -> Result<(), FanError> {
    let (a, b) = (fan.alpha, fan.beta);
    let path = if phi.is_free(fan.center, b) {
        Vec::new()
    } else if eng.faithful() {
        let dec = alpha_beta_components(eng, g, phi, a, b);
        if dec.is_cycle(fan.center) {
            return Err(FanError::CycleComponent(fan.center));
        }
        dec.component_edges(fan.center)
    } else {
        alpha_beta_path_from(g, phi, fan.center, a, b)?
    };
    let batch = FanBatch {
        alpha: a,
        beta: b,
        fans: vec![fan.clone()],
        paths: vec![path],
        candidates: 1,
    };
    let done = recolor_batch(eng, phi, &batch)?;
    debug_assert_eq!(done, 1);
    Ok(())
}

/// `G^(F)`: one vertex per edge of the matching `f`, adjacent when the two
/// edges are within distance two.
pub fn build_uncolored_distance2_graph(eng: &mut Engine, g: &Graph, f: &[EdgeId]) -> Result<Graph, FanError> {
    let n = g.n();
    let mut h = vec![usize::MAX; n];
    for (i, &e) in f.iter().enumerate() {
        let (a, b) = g.edge(e);
        for x in [a, b] {
            if h[x] != usize::MAX {
                return Err(FanError::NotAMatching(f[h[x]], e));
            }
            h[x] = i;
        }
    }
    // one processor per (endpoint x of an F-edge, neighbor y of x, neighbor w of y)
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &e in f {
        let (a, b) = g.edge(e);
        for x in [a, b] {
            for &(y, _) in g.neighbors(x) {
                for &(w, _) in g.neighbors(y) {
                    let (i, j) = (h[x], h[w]);
                    if j != usize::MAX && i != j {
                        pairs.push((i.min(j), i.max(j)));
                    }
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    charge_distance2(eng, g, f, pairs.len());
    Ok(Graph::from_edges_unchecked(f.len(), &pairs))
}

/// The rounds and work of building `G^(F)` with `pairs` edges.
pub(crate) fn charge_distance2(eng: &mut Engine, g: &Graph, f: &[EdgeId], pairs: usize) {
    eng.charge(1, 2 * f.len() as u64);
    let mut work = 0u64;
    for &e in f {
        let (a, b) = g.edge(e);
        for x in [a, b] {
            work += g.neighbors(x).iter().map(|&(y, _)| g.degree(y) as u64).sum::<u64>();
        }
    }
    eng.charge(1, work.max(1));
    eng.charge(clog2(pairs).max(1) as u64, pairs.max(1) as u64);
}

/// Most frequent unordered `{alpha, beta}` among the fans, ties broken by
/// the smaller pair; returns the pair and the indices of its fans.
pub fn select_dominant_pair(fans: &[Fan]) -> Result<((Color, Color), Vec<usize>), FanError> {
    if fans.is_empty() {
        return Err(FanError::EmptyInput);
    }
    let mut count: HashMap<(Color, Color), usize> = HashMap::new();
    for f in fans {
        *count.entry(f.pair()).or_default() += 1;
    }
    let best = *count
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .unwrap()
        .0;
    Ok((best, (0..fans.len()).filter(|&i| fans[i].pair() == best).collect()))
}

/// Conflicts among fans sharing one pair: `i ~ j` when the alternating path
/// of `i`'s center ends at `y` or `z` of fan `j`.
pub fn build_fan_conflict_graph(
    eng: &mut Engine,
    phi: &PartialEdgeColoring,
    fans: &[Fan],
    dec: &AlphaBetaDecomposition,
) -> Result<Graph, FanError> {
    let n = phi.n();
    let mut owner = vec![usize::MAX; n];
    let specials = fans.iter().map(|f| special_vertices(phi, f)).collect::<Result<Vec<_>, _>>()?;
    eng.round(&mut owner, fans.len(), |i, _, out| {
        let f = &fans[i];
        out.push((f.leaves[specials[i].y], i));
        if let Some(z) = specials[i].z {
            out.push((f.leaves[z], i));
        }
    });
    let mut pairs: Vec<(usize, usize)> = eng
        .map(fans.len(), |i| {
            let v = fans[i].center;
            let o = dec.other_end(v)?;
            let j = owner[o];
            (o != v && j != usize::MAX && j != i).then_some((i.min(j), i.max(j)))
        })
        .into_iter()
        .flatten()
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    eng.charge(clog2(pairs.len()).max(1) as u64, pairs.len().max(1) as u64);
    let c = Graph::from_edges_unchecked(fans.len(), &pairs);
    debug_assert!(c.max_degree() <= 3);
    Ok(c)
}

/// Fans that can be recolored simultaneously.
#[derive(Debug, Clone)]
pub struct FanBatch {
    pub alpha: Color,
    pub beta: Color,
    pub fans: Vec<Fan>,
    /// Edges of each fan's alternating path (shared paths repeat).
    pub paths: Vec<Vec<EdgeId>>,
    /// Fans carrying the dominant pair before conflict resolution.
    pub candidates: usize,
}

/// Builds a batch of pairwise non-conflicting maximal fans over the
/// uncolored matching `f`.
pub fn parallel_fans(
    eng: &mut Engine,
    g: &Graph,
    phi: &PartialEdgeColoring,
    f: &[EdgeId],
    strategy: IsStrategy,
    palette: Color,
) -> Result<FanBatch, FanError> {
    if f.is_empty() {
        return Err(FanError::EmptyInput);
    }
    let gf = build_uncolored_distance2_graph(eng, g, f)?;
    parallel_fans_on(eng, g, phi, f, &gf, strategy, palette)
}

/// [`parallel_fans`] with `G^(F)` already built.
pub(crate) fn parallel_fans_on(
    eng: &mut Engine,
    g: &Graph,
    phi: &PartialEdgeColoring,
    f: &[EdgeId],
    gf: &Graph,
    strategy: IsStrategy,
    palette: Color,
) -> Result<FanBatch, FanError> {
    let chosen = large_independent_set(eng, gf, strategy);
    let mut fans = Vec::with_capacity(chosen.len());
    let mut branches = Vec::with_capacity(chosen.len());
    for &i in &chosen {
        let (a, b) = g.edge(f[i]);
        let mut br = eng.fork();
        fans.push(construct_maximal_fan(&mut br, g, phi, a.min(b), a.max(b), palette)?);
        branches.push(br);
    }
    eng.join(&branches);
    let ((alpha, beta), members) = select_dominant_pair(&fans)?;
    eng.charge(clog2(fans.len()).max(1) as u64, fans.len() as u64);
    let members: Vec<Fan> = members.into_iter().map(|i| fans[i].clone()).collect();
    let dec = alpha_beta_components(eng, g, phi, alpha, beta);
    let conflict = build_fan_conflict_graph(eng, phi, &members, &dec)?;
    let keep = maximal_independent_set(eng, &conflict);
    let candidates = members.len();
    let mut out = Vec::with_capacity(keep.len());
    let mut paths = Vec::with_capacity(keep.len());
    for i in keep {
        let fan = members[i].clone();
        let v = fan.center;
        if dec.is_cycle(v) {
            return Err(FanError::CycleComponent(v));
        }
        paths.push(if phi.is_free(v, fan.beta) { Vec::new() } else { dec.component_edges(v) });
        out.push(fan);
    }
    Ok(FanBatch { alpha, beta, fans: out, paths, candidates })
}

/// Flips every batch path once, then rotates every fan and colors its
/// pivot edge with its `beta`. Returns the number of newly colored edges.
pub fn recolor_batch(eng: &mut Engine, phi: &mut PartialEdgeColoring, batch: &FanBatch) -> Result<usize, FanError> {
    let before = phi.colored_count();
    let specials = batch
        .fans
        .iter()
        .map(|f| special_vertices(phi, f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut path_edges: Vec<EdgeId> = batch.paths.iter().flatten().copied().collect();
    path_edges.sort_unstable();
    path_edges.dedup();
    let (a, b) = (batch.alpha, batch.beta);
    let flips = eng.map(path_edges.len(), |t| {
        let e = path_edges[t];
        (e, phi.color(e).map(|c| if c == a { b } else { a }))
    });
    phi.apply(&flips)?;
    let snapshot = &*phi;
    let rotations: Vec<Vec<(EdgeId, Option<Color>)>> = eng.map(batch.fans.len(), |i| {
        let fan = &batch.fans[i];
        let s = specials[i];
        let pivot = match s.z {
            Some(z) if snapshot.is_free(fan.leaves[z], fan.beta) => z,
            _ => s.y,
        };
        rotation(snapshot, fan, pivot, Some(fan.beta))
    });
    let changes: Vec<(EdgeId, Option<Color>)> = rotations.into_iter().flatten().collect();
    phi.apply(&changes)
        .map_err(|e| FanError::InvalidFan(format!("batch rotation breaks properness: {e}")))?;
    let got = phi.colored_count() - before;
    if got != batch.fans.len() {
        return Err(FanError::BatchMismatch { got, expected: batch.fans.len() });
    }
    Ok(got)
}
