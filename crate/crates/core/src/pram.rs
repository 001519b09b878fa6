//! Basic parallel primitives: pointer doubling, list ranking, connected
//! components, alternating colorings and coloring graphs of degree two.

use thiserror::Error;

use crate::engine::{clog2, Engine};
use crate::graph::{ColoringError, EdgeId, Graph, PartialEdgeColoring, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PramError {
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("edges {0} and {1} of the walk share no endpoint")]
    NotAPathOrCycle(usize, usize),
    #[error("vertex {0} has odd degree")]
    NotEulerian(VertexId),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("maximum degree {0} exceeds 2")]
    DegreeTooLarge(usize),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Digraph with out-degree at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalDigraph {
    next: Vec<Option<usize>>,
}

impl FunctionalDigraph {
    pub fn new(next: Vec<Option<usize>>) -> Result<Self, PramError> {
        let n = next.len();
        if let Some(&Some(bad)) = next.iter().find(|s| matches!(s, Some(t) if *t >= n)) {
            return Err(PramError::NodeOutOfRange(bad));
        }
        Ok(FunctionalDigraph { next })
    }

    pub fn len(&self) -> usize {
        self.next.len()
    }

    pub fn is_empty(&self) -> bool {
        self.next.is_empty()
    }

    pub fn next(&self, v: usize) -> Option<usize> {
        self.next[v]
    }
}

/// Longest simple path from `r` following the unique out-arcs.
pub fn maximal_path(eng: &mut Engine, d: &FunctionalDigraph, r: usize) -> Result<Vec<usize>, PramError> {
    let n = d.len();
    if r >= n {
        return Err(PramError::NodeOutOfRange(r));
    }
    if !eng.faithful() {
        let mut seen = vec![false; n];
        let mut path = vec![r];
        seen[r] = true;
        let mut v = r;
        while let Some(w) = d.next(v) {
            if seen[w] {
                break;
            }
            seen[w] = true;
            path.push(w);
            v = w;
        }
        return Ok(path);
    }

    let h = clog2(n + 1) as usize;
    let mut jumps: Vec<Vec<usize>> = Vec::with_capacity(h + 1);
    jumps.push(eng.map(n, |v| d.next(v).unwrap_or(v)));
    for i in 1..=h {
        let prev = &jumps[i - 1];
        let cur = eng.map(n, |v| prev[prev[v]]);
        jumps.push(cur);
    }
    // pos[i] is the i-th vertex of the walk from r
    let mut pos = vec![r; n + 1];
    for (b, jump) in jumps.iter().enumerate().take(h + 1) {
        eng.round(&mut pos, n + 1, |i, s, out| {
            if (i >> b) & 1 == 1 {
                out.push((i, jump[s[i]]));
            }
        });
    }
    let mut first = vec![usize::MAX; n];
    eng.round(&mut first, n + 1, |i, _, out| out.push((pos[i], i)));
    eng.charge(clog2(n + 1) as u64, (n + 1) as u64);
    let k = (0..=n).map(|i| first[pos[i]]).max().unwrap();
    Ok(pos[..=k].to_vec())
}

/// For a set of disjoint chains given by successor pointers, the distance of
/// every node to the end of its chain and that last node.
pub fn list_rank(eng: &mut Engine, succ: &[Option<usize>]) -> (Vec<usize>, Vec<usize>) {
    let n = succ.len();
    if !eng.faithful() {
        let mut has_pred = vec![false; n];
        for s in succ.iter().flatten() {
            has_pred[*s] = true;
        }
        let mut dist = vec![0; n];
        let mut last = (0..n).collect::<Vec<_>>();
        let mut chain = Vec::new();
        for head in (0..n).filter(|&v| !has_pred[v]) {
            chain.clear();
            let mut v = head;
            chain.push(v);
            while let Some(w) = succ[v] {
                v = w;
                chain.push(v);
            }
            let len = chain.len();
            for (i, &c) in chain.iter().enumerate() {
                dist[c] = len - 1 - i;
                last[c] = v;
            }
        }
        return (dist, last);
    }
    let mut cells: Vec<(usize, Option<usize>, usize)> =
        eng.map(n, |v| (usize::from(succ[v].is_some()), succ[v], succ[v].unwrap_or(v)));
    loop {
        let changed = eng.round(&mut cells, n, |v, s, out| {
            if let Some(w) = s[v].1 {
                out.push((v, (s[v].0 + s[w].0, s[w].1, s[w].2)));
            }
        });
        if changed == 0 {
            break;
        }
    }
    (cells.iter().map(|c| c.0).collect(), cells.iter().map(|c| c.2).collect())
}

/// Component labels (the smallest vertex of each component) of the graph on
/// `n` vertices with the given edges.
pub fn components(eng: &mut Engine, n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    components_with_forest(eng, n, edges).0
}

pub fn connected_components(eng: &mut Engine, g: &Graph) -> Vec<usize> {
    components(eng, g.n(), g.edges())
}

/// Component labels plus the indices of edges forming a spanning forest.
pub fn components_with_forest(eng: &mut Engine, n: usize, edges: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    if !eng.faithful() {
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut forest = Vec::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra != rb {
                // keep the smaller id as root so roots are minimal labels
                if ra < rb {
                    uf[rb] = ra;
                } else {
                    uf[ra] = rb;
                }
                forest.push(i);
            }
        }
        let labels = (0..n).map(|v| find(&mut uf, v)).collect();
        return (labels, forest);
    }

    let mut p: Vec<usize> = eng.map(n, |v| v);
    let arcs = 2 * edges.len();
    let arc = |t: usize| {
        let (a, b) = edges[t / 2];
        if t.is_multiple_of(2) {
            (a, b)
        } else {
            (b, a)
        }
    };
    let mut forest = Vec::new();
    loop {
        let star = stars(eng, &p);
        let hooks = eng.par_round(arcs, |t, out| {
            let (i, j) = arc(t);
            if star[i] && p[j] < p[i] {
                out.push((p[i], p[j]));
            }
        });
        let mut changed = !hooks.is_empty();
        for w in hooks {
            p[w.cell] = w.value;
            forest.push(w.task / 2);
        }
        let star = stars(eng, &p);
        let hooks = eng.par_round(arcs, |t, out| {
            let (i, j) = arc(t);
            if star[i] && p[j] != p[i] {
                out.push((p[i], p[j]));
            }
        });
        changed |= !hooks.is_empty();
        for w in hooks {
            p[w.cell] = w.value;
            forest.push(w.task / 2);
        }
        let jumped = eng.round(&mut p, n, |v, s, out| {
            if s[s[v]] != s[v] {
                out.push((v, s[s[v]]));
            }
        });
        if !changed && jumped == 0 {
            break;
        }
    }
    let mut least = vec![usize::MAX; n];
    eng.round(&mut least, n, |v, _, out| out.push((p[v], v)));
    let labels = eng.map(n, |v| least[p[v]]);
    forest.sort_unstable();
    (labels, forest)
}

fn stars(eng: &mut Engine, p: &[usize]) -> Vec<bool> {
    let n = p.len();
    let mut star = eng.map(n, |_| true);
    eng.round(&mut star, n, |v, _, out| {
        if p[v] != p[p[v]] {
            out.push((v, false));
            out.push((p[p[v]], false));
        }
    });
    eng.round(&mut star, n, |v, s, out| {
        if s[v] && !s[p[v]] {
            out.push((v, false));
        }
    });
    star
}

/// Parity of each edge's position along a walk given as a sequence of edges.
pub fn alternating_coloring(eng: &mut Engine, walk: &[(VertexId, VertexId)]) -> Result<Vec<u8>, PramError> {
    for i in 1..walk.len() {
        let (a, b) = walk[i - 1];
        let (c, d) = walk[i];
        if a != c && a != d && b != c && b != d {
            return Err(PramError::NotAPathOrCycle(i - 1, i));
        }
    }
    let len = walk.len();
    if !eng.faithful() {
        return Ok((0..len).map(|i| (i % 2) as u8).collect());
    }
    let succ = eng.map(len, |i| if i + 1 < len { Some(i + 1) } else { None });
    let (dist, _) = list_rank(eng, &succ);
    Ok(eng.map(len, |i| ((len - 1 - dist[i]) % 2) as u8))
}

/// Colors a graph of maximum degree at most two with `Δ + 1` colors: one
/// edge per cycle gets color 3, the remaining paths alternate 1 and 2
/// starting from their smaller endpoint.
pub fn color_degree_le2(eng: &mut Engine, g: &Graph) -> Result<PartialEdgeColoring, PramError> {
    let delta = g.max_degree();
    if delta > 2 {
        return Err(PramError::DegreeTooLarge(delta));
    }
    let mut coloring = PartialEdgeColoring::new(g, delta as u32 + 1)?;
    let colors = if eng.faithful() { le2_faithful(eng, g) } else { le2_fast(g) };
    for (e, c) in colors.into_iter().enumerate() {
        coloring.set_color(e, c)?;
    }
    Ok(coloring)
}

fn le2_fast(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut colors = vec![0u32; g.m()];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] || g.degree(s) == 0 {
            continue;
        }
        // collect the component
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &(w, _) in g.neighbors(comp[i]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let mut deleted = None;
        if comp.iter().all(|&v| g.degree(v) == 2) {
            let e = comp.iter().flat_map(|&v| g.neighbors(v).iter().map(|x| x.1)).min().unwrap();
            colors[e] = 3;
            deleted = Some(e);
        }
        let rem_deg = |v: VertexId| g.neighbors(v).iter().filter(|x| Some(x.1) != deleted).count();
        let start = comp.iter().copied().filter(|&v| rem_deg(v) == 1).min().unwrap();
        let mut prev_edge = None;
        let mut v = start;
        let mut k = 0;
        loop {
            let next = g
                .neighbors(v)
                .iter()
                .find(|x| Some(x.1) != deleted && Some(x.1) != prev_edge);
            match next {
                Some(&(w, e)) => {
                    colors[e] = 1 + (k % 2);
                    k += 1;
                    prev_edge = Some(e);
                    v = w;
                }
                None => break,
            }
        }
    }
    colors
}

fn le2_faithful(eng: &mut Engine, g: &Graph) -> Vec<u32> {
    let n = g.n();
    let m = g.m();
    let label = connected_components(eng, g);
    let mut open = vec![false; n];
    eng.round(&mut open, n, |v, _, out| {
        if g.degree(v) == 1 {
            out.push((label[v], true));
        }
    });
    let mut del = vec![usize::MAX; n];
    eng.round(&mut del, m, |e, _, out| {
        let (u, _) = g.edge(e);
        if !open[label[u]] {
            out.push((label[u], e));
        }
    });
    let deleted = eng.map(m, |e| del[label[g.edge(e).0]] == e);
    // darts 2e (tail = first endpoint) and 2e + 1
    let head = |d: usize| {
        let (a, b) = g.edge(d / 2);
        if d.is_multiple_of(2) {
            b
        } else {
            a
        }
    };
    let succ = eng.map(2 * m, |d| {
        if deleted[d / 2] {
            return None;
        }
        let h = head(d);
        g.neighbors(h)
            .iter()
            .find(|&&(_, f)| f != d / 2 && !deleted[f])
            .map(|&(_, f)| if g.edge(f).0 == h { 2 * f } else { 2 * f + 1 })
    });
    let (dist, last) = list_rank(eng, &succ);
    let out_dart = |v: VertexId| {
        g.neighbors(v)
            .iter()
            .find(|&&(_, f)| !deleted[f])
            .map(|&(_, f)| if g.edge(f).0 == v { 2 * f } else { 2 * f + 1 })
    };
    let rem_deg = eng.map(n, |v| g.neighbors(v).iter().filter(|x| !deleted[x.1]).count());
    let mut chosen = vec![false; 2 * m];
    let mut start_of = vec![usize::MAX; 2 * m];
    eng.round(&mut start_of, n, |v, _, out| {
        if rem_deg[v] == 1 {
            let d = out_dart(v).unwrap();
            if v < head(last[d]) {
                out.push((last[d], d));
            }
        }
    });
    eng.round(&mut chosen, 2 * m, |d, _, out| {
        if !deleted[d / 2] && start_of[last[d]] != usize::MAX {
            out.push((d, true));
        }
    });
    eng.map(m, |e| {
        if deleted[e] {
            3
        } else {
            let d = if chosen[2 * e] { 2 * e } else { 2 * e + 1 };
            let s = start_of[last[d]];
            1 + ((dist[s] - dist[d]) % 2) as u32
        }
    })
}

/// Edge ids of a graph, grouped by component label, in increasing order.
pub fn edges_by_component(labels: &[usize], g: &Graph) -> Vec<Vec<EdgeId>> {
    let mut idx = vec![usize::MAX; g.n()];
    let mut groups: Vec<Vec<EdgeId>> = Vec::new();
    for (e, &(u, _)) in g.edges().iter().enumerate() {
        let l = labels[u];
        if idx[l] == usize::MAX {
            idx[l] = groups.len();
            groups.push(Vec::new());
        }
        groups[idx[l]].push(e);
    }
    groups
}
