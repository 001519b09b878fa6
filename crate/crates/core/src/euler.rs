//! Euler tours, degree splitting and the Euler split into a bipartite graph.

use crate::engine::{clog2, Engine};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::pram::{components, components_with_forest, connected_components, list_rank, PramError};

/// A closed walk using every edge of one component exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    /// `(from, to, edge)` in walk order; `arcs[0].0` is the start.
    pub arcs: Vec<(VertexId, VertexId, EdgeId)>,
}

impl Tour {
    pub fn start(&self) -> VertexId {
        self.arcs[0].0
    }
}

/// One Euler tour per component that has edges, ordered by smallest vertex.
/// A component's tour starts at the first vertex of `preferred` lying in it,
/// otherwise at its smallest vertex.
pub fn eulerian_tours(eng: &mut Engine, g: &Graph, preferred: &[VertexId]) -> Result<Vec<Tour>, PramError> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(PramError::NotEulerian(v));
    }
    let labels = connected_components(eng, g);
    let mut start: Vec<usize> = (0..g.n()).collect();
    let mut fixed = vec![false; g.n()];
    for &p in preferred {
        if p < g.n() && !fixed[labels[p]] {
            fixed[labels[p]] = true;
            start[labels[p]] = p;
        }
    }
    let roots: Vec<VertexId> = (0..g.n()).filter(|&v| labels[v] == v && g.degree(v) > 0).collect();
    if eng.faithful() {
        Ok(tours_faithful(eng, g, &labels, &start, &roots))
    } else {
        Ok(roots.iter().map(|&r| hierholzer(g, start[r])).collect())
    }
}

fn hierholzer(g: &Graph, s: VertexId) -> Tour {
    let mut used = vec![false; g.m()];
    let mut ptr = vec![0usize; g.n()];
    let mut stack: Vec<(VertexId, Option<EdgeId>)> = vec![(s, None)];
    let mut circuit: Vec<(VertexId, Option<EdgeId>)> = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        let adj = g.neighbors(v);
        while ptr[v] < adj.len() && used[adj[ptr[v]].1] {
            ptr[v] += 1;
        }
        if ptr[v] == adj.len() {
            circuit.push(stack.pop().unwrap());
        } else {
            let (w, e) = adj[ptr[v]];
            used[e] = true;
            stack.push((w, Some(e)));
        }
    }
    // circuit holds the walk backwards; reading it forward from s reverses each arc
    circuit.reverse();
    let arcs = circuit
        .windows(2)
        .map(|p| (p[0].0, p[1].0, p[1].1.unwrap()))
        .collect();
    Tour { arcs }
}

fn tours_faithful(eng: &mut Engine, g: &Graph, labels: &[usize], start: &[VertexId], roots: &[VertexId]) -> Vec<Tour> {
    let n = g.n();
    let m = g.m();
    // incidence slots: offset[v] + local index
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + g.degree(v);
    }
    eng.charge(clog2(n).max(1) as u64, n as u64);
    let mut local = vec![(0usize, 0usize); m];
    // first endpoint's slot, then second endpoint's slot
    eng.round(&mut local, 2 * m, |t, _, out| {
        let v = slot_vertex(&offset, t);
        let i = t - offset[v];
        let e = g.neighbors(v)[i].1;
        if g.edge(e).0 == v {
            out.push((e, (i, usize::MAX)));
        }
    });
    eng.round(&mut local, 2 * m, |t, s, out| {
        let v = slot_vertex(&offset, t);
        let i = t - offset[v];
        let e = g.neighbors(v)[i].1;
        if g.edge(e).1 == v {
            out.push((e, (s[e].0, i)));
        }
    });

    // initial transitions pair slots 2i and 2i + 1 at every vertex
    let pairs = m;
    let pair_edges = eng.map(pairs, |k| {
        let t = 2 * k;
        let v = slot_vertex(&offset, t);
        let i = t - offset[v];
        (g.neighbors(v)[i].1, g.neighbors(v)[i + 1].1)
    });
    let trail = components(eng, m, &pair_edges);

    // link consecutive pairs at each vertex when they lie on different trails
    let links: Vec<(usize, usize, VertexId, usize)> = {
        let cand = eng.map(pairs, |k| {
            let t = 2 * k;
            let v = slot_vertex(&offset, t);
            let i = (t - offset[v]) / 2;
            if 2 * (i + 1) < g.degree(v) {
                let a = trail[g.neighbors(v)[2 * i].1];
                let b = trail[g.neighbors(v)[2 * i + 2].1];
                if a != b {
                    return Some((a, b, v, i));
                }
            }
            None
        });
        eng.charge(clog2(pairs).max(1) as u64, pairs as u64);
        cand.into_iter().flatten().collect()
    };
    let link_pairs: Vec<(usize, usize)> = links.iter().map(|l| (l.0, l.1)).collect();
    let (_, tree) = components_with_forest(eng, m, &link_pairs);
    let mut selected = vec![false; 2 * m];
    eng.round(&mut selected, tree.len(), |k, _, out| {
        let (_, _, v, i) = links[tree[k]];
        out.push((offset[v] + 2 * i, true));
    });

    // rotate each run of selected links: pairs s..=t become (a_i, b_{i+1}), (a_t, b_s)
    let mate: Vec<usize> = {
        let runs = eng.map(n, |v| {
            let d = g.degree(v);
            let mut mate: Vec<usize> = (0..d).map(|i| i ^ 1).collect();
            let mut i = 0;
            while 2 * i < d {
                if selected[offset[v] + 2 * i] {
                    let s = i;
                    while 2 * i < d && selected[offset[v] + 2 * i] {
                        i += 1;
                    }
                    let t = i;
                    for j in s..t {
                        mate[2 * j] = 2 * (j + 1) + 1;
                        mate[2 * (j + 1) + 1] = 2 * j;
                    }
                    mate[2 * t] = 2 * s + 1;
                    mate[2 * s + 1] = 2 * t;
                }
                i += 1;
            }
            mate
        });
        eng.charge(clog2(g.max_degree()) as u64, 2 * m as u64);
        runs.into_iter().flatten().collect()
    };

    // darts: 2e runs first endpoint -> second, 2e + 1 the reverse
    let head = |d: usize| {
        let (a, b) = g.edge(d / 2);
        if d.is_multiple_of(2) {
            b
        } else {
            a
        }
    };
    let out_dart = |v: VertexId, e: EdgeId| if g.edge(e).0 == v { 2 * e } else { 2 * e + 1 };
    let succ = eng.map(2 * m, |d| {
        let h = head(d);
        let e = d / 2;
        let i = if g.edge(e).0 == h { local[e].0 } else { local[e].1 };
        let f = g.neighbors(h)[mate[offset[h] + i]].1;
        out_dart(h, f)
    });
    let dart_links: Vec<(usize, usize)> = (0..2 * m).map(|d| (d, succ[d])).collect();
    let cycle = components(eng, 2 * m, &dart_links);
    let first = eng.map(n, |r| {
        if labels[r] == r && g.degree(r) > 0 {
            let s = start[r];
            out_dart(s, g.neighbors(s)[0].1)
        } else {
            usize::MAX
        }
    });
    let comp_of = |d: usize| labels[head(d)];
    let cut = eng.map(2 * m, |d| {
        let d0 = first[comp_of(d)];
        if cycle[d] == cycle[d0] && succ[d] != d0 {
            Some(succ[d])
        } else {
            None
        }
    });
    let (dist, _) = list_rank(eng, &cut);
    let mut tours: Vec<Vec<(VertexId, VertexId, EdgeId)>> = roots
        .iter()
        .map(|&r| vec![(0, 0, 0); dist[first[r]] + 1])
        .collect();
    let mut slot = vec![usize::MAX; n];
    for (k, &r) in roots.iter().enumerate() {
        slot[r] = k;
    }
    eng.charge(1, 2 * m as u64);
    for d in 0..2 * m {
        let c = comp_of(d);
        let d0 = first[c];
        if cycle[d] == cycle[d0] {
            let p = dist[d0] - dist[d];
            tours[slot[c]][p] = (head(d ^ 1), head(d), d / 2);
        }
    }
    tours.into_iter().map(|arcs| Tour { arcs }).collect()
}

fn slot_vertex(offset: &[usize], t: usize) -> VertexId {
    offset.partition_point(|&o| o <= t) - 1
}

/// The graph plus one extra vertex per component with odd-degree vertices,
/// joined to each of them. Original edges keep their ids.
fn add_dummies(eng: &mut Engine, g: &Graph) -> (Graph, Vec<VertexId>) {
    let n = g.n();
    let labels = connected_components(eng, g);
    let mut has_odd = vec![false; n];
    eng.round(&mut has_odd, n, |v, _, out| {
        if g.degree(v) % 2 == 1 {
            out.push((labels[v], true));
        }
    });
    let mut dummy = vec![usize::MAX; n];
    let mut dummies = Vec::new();
    for r in 0..n {
        if has_odd[r] {
            dummy[r] = n + dummies.len();
            dummies.push(n + dummies.len());
        }
    }
    eng.charge(clog2(n).max(1) as u64, n as u64);
    let mut edges = g.edges().to_vec();
    let extra = eng.map(n, |v| (g.degree(v) % 2 == 1).then(|| (dummy[labels[v]], v)));
    edges.extend(extra.into_iter().flatten());
    (Graph::from_edges_unchecked(n + dummies.len(), &edges), dummies)
}

/// Sign `+1`/`-1` per edge with `|deg+(v) - deg-(v)| <= 2` at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSplit {
    pub sign: Vec<i8>,
}

impl DegreeSplit {
    pub fn part(&self, s: i8) -> Vec<EdgeId> {
        (0..self.sign.len()).filter(|&e| self.sign[e] == s).collect()
    }

    pub fn discrepancy(&self, g: &Graph) -> Vec<i64> {
        let mut d = vec![0i64; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            d[u] += self.sign[e] as i64;
            d[v] += self.sign[e] as i64;
        }
        d
    }
}

pub fn degree_splitting(eng: &mut Engine, g: &Graph) -> Result<DegreeSplit, PramError> {
    let (aug, dummies) = add_dummies(eng, g);
    let tours = eulerian_tours(eng, &aug, &dummies)?;
    let mut sign = vec![0i8; g.m()];
    let total: usize = tours.iter().map(|t| t.arcs.len()).sum();
    eng.charge(1, total as u64);
    for t in &tours {
        for (i, &(_, _, e)) in t.arcs.iter().enumerate() {
            if e < g.m() {
                sign[e] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    Ok(DegreeSplit { sign })
}

/// Bipartite graph on `2n` vertices: `v` is the out-copy and `n + v` the
/// in-copy of `v`; every edge oriented `v -> u` by an Euler tour becomes `(v, n + u)`.
#[derive(Debug, Clone)]
pub struct EulerSplit {
    pub bipartite: Graph,
    /// Original edge of each bipartite edge.
    pub origin: Vec<EdgeId>,
}

pub fn euler_split(eng: &mut Engine, g: &Graph) -> Result<EulerSplit, PramError> {
    let n = g.n();
    let (aug, dummies) = add_dummies(eng, g);
    let tours = eulerian_tours(eng, &aug, &dummies)?;
    let mut edges = Vec::with_capacity(g.m());
    let mut origin = Vec::with_capacity(g.m());
    let total: usize = tours.iter().map(|t| t.arcs.len()).sum();
    eng.charge(1, total as u64);
    for t in &tours {
        for &(a, b, e) in &t.arcs {
            if e < g.m() {
                edges.push((a, n + b));
                origin.push(e);
            }
        }
    }
    Ok(EulerSplit { bipartite: Graph::from_edges_unchecked(2 * n, &edges), origin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Mode;

    fn check_tour(g: &Graph, t: &Tour) {
        for w in t.arcs.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
        assert_eq!(t.arcs.last().unwrap().1, t.start());
        for &(a, b, e) in &t.arcs {
            let (u, v) = g.edge(e);
            assert!((a, b) == (u, v) || (a, b) == (v, u));
        }
    }

    fn two_squares_sharing_vertex() -> Graph {
        Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]).unwrap()
    }

    #[test]
    fn tours_cover_every_edge_once() {
        let g = two_squares_sharing_vertex();
        for mode in [Mode::Faithful, Mode::Fast] {
            let tours = eulerian_tours(&mut Engine::new(mode), &g, &[]).unwrap();
            assert_eq!(tours.len(), 1);
            check_tour(&g, &tours[0]);
            let mut es: Vec<_> = tours[0].arcs.iter().map(|a| a.2).collect();
            es.sort();
            assert_eq!(es, (0..8).collect::<Vec<_>>());
            assert_eq!(tours[0].start(), 0);
        }
    }

    #[test]
    fn tour_respects_preferred_start() {
        let k5: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let g = Graph::from_edges(5, &k5).unwrap();
        for mode in [Mode::Faithful, Mode::Fast] {
            let tours = eulerian_tours(&mut Engine::new(mode), &g, &[3]).unwrap();
            assert_eq!(tours[0].start(), 3);
            assert_eq!(tours[0].arcs.len(), 10);
            check_tour(&g, &tours[0]);
        }
    }

    #[test]
    fn odd_degree_rejected() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(eulerian_tours(&mut Engine::new(Mode::Fast), &g, &[]), Err(PramError::NotEulerian(0)));
    }

    #[test]
    fn star_split_is_balanced() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        for mode in [Mode::Faithful, Mode::Fast] {
            let s = degree_splitting(&mut Engine::new(mode), &g).unwrap();
            let d = s.discrepancy(&g);
            assert!(d[0].abs() <= 1);
            assert!(d.iter().all(|x| x.abs() <= 2));
        }
    }

    #[test]
    fn euler_split_halves_degrees() {
        let k5: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let g = Graph::from_edges(5, &k5).unwrap();
        for mode in [Mode::Faithful, Mode::Fast] {
            let s = euler_split(&mut Engine::new(mode), &g).unwrap();
            assert_eq!(s.bipartite.m(), 10);
            assert!(s.bipartite.max_degree() <= 2);
            assert!(s.bipartite.bipartition().is_some());
        }
    }
}
