//! Δ-edge-coloring of bipartite graphs.
//!
//! The graph is padded to a Δ-regular bipartite multigraph, then colored by
//! recursive Euler splitting; odd degrees first peel off a perfect matching.

use std::collections::VecDeque;

use crate::engine::{clog2, Engine};
use crate::graph::{Color, Graph, PartialEdgeColoring};
use crate::pram::PramError;

/// Edges `(left, right)` with `0 <= left, right < side`.
struct Multigraph {
    side: usize,
    edges: Vec<(usize, usize)>,
}

pub fn bipartite_delta_coloring(eng: &mut Engine, g: &Graph) -> Result<PartialEdgeColoring, PramError> {
    let sides = g.bipartition().ok_or(PramError::NotBipartite)?;
    let delta = g.max_degree();
    let mut coloring = PartialEdgeColoring::new(g, delta.max(1) as Color)?;
    if g.m() == 0 {
        return Ok(coloring);
    }
    eng.charge(clog2(g.n()).max(1) as u64, g.n() as u64);
    let mut index = vec![0usize; g.n()];
    let (mut nl, mut nr) = (0, 0);
    for v in 0..g.n() {
        if sides[v] {
            index[v] = nr;
            nr += 1;
        } else {
            index[v] = nl;
            nl += 1;
        }
    }
    let side = nl.max(nr);
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| if sides[u] { (index[v], index[u]) } else { (index[u], index[v]) })
        .collect();
    let mut def_l = vec![delta; side];
    let mut def_r = vec![delta; side];
    for &(l, r) in &edges {
        def_l[l] -= 1;
        def_r[r] -= 1;
    }
    let (mut i, mut j) = (0, 0);
    while i < side && j < side {
        if def_l[i] == 0 {
            i += 1;
        } else if def_r[j] == 0 {
            j += 1;
        } else {
            let k = def_l[i].min(def_r[j]);
            edges.extend(std::iter::repeat_n((i, j), k));
            def_l[i] -= k;
            def_r[j] -= k;
        }
    }
    eng.charge(1, edges.len() as u64);
    let mut colors = vec![0 as Color; edges.len()];
    let all: Vec<usize> = (0..edges.len()).collect();
    let mg = Multigraph { side, edges };
    color_regular(eng, &mg, all, delta, 1, &mut colors);
    for e in 0..g.m() {
        coloring.set_color(e, colors[e])?;
    }
    Ok(coloring)
}

fn color_regular(eng: &mut Engine, mg: &Multigraph, ids: Vec<usize>, r: usize, base: Color, colors: &mut [Color]) {
    if r == 0 {
        return;
    }
    if r == 1 {
        for &e in &ids {
            colors[e] = base;
        }
        return;
    }
    if r % 2 == 1 {
        let matched = perfect_matching(eng, mg, &ids);
        let mut rest = Vec::with_capacity(ids.len());
        for (k, &e) in ids.iter().enumerate() {
            if matched[k] {
                colors[e] = base;
            } else {
                rest.push(e);
            }
        }
        color_regular(eng, mg, rest, r - 1, base + 1, colors);
        return;
    }
    let (a, b) = euler_halves(eng, mg, &ids);
    let mut left = eng.fork();
    color_regular(&mut left, mg, a, r / 2, base, colors);
    let mut right = eng.fork();
    color_regular(&mut right, mg, b, r / 2, base + (r / 2) as Color, colors);
    eng.join([&left, &right]);
}

/// Splits an even-regular bipartite multigraph along Euler tours: edges
/// walked left-to-right go to the first half.
fn euler_halves(eng: &mut Engine, mg: &Multigraph, ids: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let nv = 2 * mg.side;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (k, &e) in ids.iter().enumerate() {
        let (l, r) = mg.edges[e];
        adj[l].push(k);
        adj[mg.side + r].push(k);
    }
    eng.charge(clog2(ids.len()).max(1) as u64, ids.len() as u64);
    let mut used = vec![false; ids.len()];
    let mut ptr = vec![0usize; nv];
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for s in 0..nv {
        // Hierholzer: the order of splicing does not matter for the split,
        // only the direction each edge is walked in
        let mut stack = vec![s];
        while let Some(&v) = stack.last() {
            while ptr[v] < adj[v].len() && used[adj[v][ptr[v]]] {
                ptr[v] += 1;
            }
            if ptr[v] == adj[v].len() {
                stack.pop();
                continue;
            }
            let k = adj[v][ptr[v]];
            used[k] = true;
            let (l, r) = mg.edges[ids[k]];
            if v < mg.side {
                a.push(ids[k]);
                stack.push(mg.side + r);
            } else {
                b.push(ids[k]);
                stack.push(l);
            }
        }
    }
    (a, b)
}

/// Hopcroft-Karp on the multigraph restricted to `ids`; returns which
/// positions of `ids` are matched.
fn perfect_matching(eng: &mut Engine, mg: &Multigraph, ids: &[usize]) -> Vec<bool> {
    let side = mg.side;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); side];
    for (k, &e) in ids.iter().enumerate() {
        let (l, r) = mg.edges[e];
        adj[l].push((r, k));
    }
    const FREE: usize = usize::MAX;
    let mut mate_l = vec![FREE; side];
    let mut mate_r = vec![FREE; side];
    let mut via_l = vec![FREE; side];
    let mut dist = vec![0usize; side];
    loop {
        let mut q = VecDeque::new();
        for l in 0..side {
            if mate_l[l] == FREE && !adj[l].is_empty() {
                dist[l] = 0;
                q.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        let mut layers = 0;
        while let Some(l) = q.pop_front() {
            layers = layers.max(dist[l] + 1);
            for &(r, _) in &adj[l] {
                match mate_r[r] {
                    FREE => found = true,
                    l2 if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        q.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        eng.charge(2 * layers as u64, ids.len() as u64);
        if !found {
            break;
        }
        let mut it = vec![0usize; side];
        for l in 0..side {
            if mate_l[l] == FREE && !adj[l].is_empty() {
                augment(l, &adj, &mut it, &dist, &mut mate_l, &mut mate_r, &mut via_l);
            }
        }
    }
    let mut matched = vec![false; ids.len()];
    for l in 0..side {
        if via_l[l] != FREE && mate_l[l] != FREE {
            matched[via_l[l]] = true;
        }
    }
    matched
}

fn augment(
    l: usize,
    adj: &[Vec<(usize, usize)>],
    it: &mut [usize],
    dist: &[usize],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    via_l: &mut [usize],
) -> bool {
    while it[l] < adj[l].len() {
        let (r, k) = adj[l][it[l]];
        it[l] += 1;
        let ok = match mate_r[r] {
            usize::MAX => true,
            l2 => dist[l2] == dist[l] + 1 && augment(l2, adj, it, dist, mate_l, mate_r, via_l),
        };
        if ok {
            mate_l[l] = r;
            mate_r[r] = l;
            via_l[l] = k;
            return true;
        }
    }
    false
}
