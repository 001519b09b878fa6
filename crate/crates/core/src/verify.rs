//! Independent checkers. Everything here works from raw edge lists and
//! recomputes incidences from scratch.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::fan::Fan;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("exhaustive search limited to 12 edges, got {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vertex { v: usize },
    Edge { e: usize },
    EdgePair { e1: usize, e2: usize },
    VertexPair { u: usize, v: usize },
    Leaf { i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl VerificationReport {
    fn ok(check: &str) -> Self {
        VerificationReport { check: check.into(), pass: true, witness: None }
    }

    fn fail(check: &str, w: Witness) -> Self {
        VerificationReport { check: check.into(), pass: false, witness: Some(w) }
    }

    fn renamed(mut self, check: &str) -> Self {
        self.check = check.into();
        self
    }
}

fn incidence(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        inc[u].push(e);
        inc[v].push(e);
    }
    inc
}

fn max_deg(n: usize, edges: &[(usize, usize)]) -> usize {
    incidence(n, edges).iter().map(Vec::len).max().unwrap_or(0)
}

/// Every edge colored and no two edges sharing an endpoint share a color.
pub fn check_proper_edge_coloring(n: usize, edges: &[(usize, usize)], colors: &[Option<u32>]) -> VerificationReport {
    const NAME: &str = "proper_edge_coloring";
    if let Some(e) = (0..edges.len()).find(|&e| colors.get(e).copied().flatten().is_none()) {
        return VerificationReport::fail(NAME, Witness::Edge { e });
    }
    check_partial_edge_coloring(n, edges, colors).renamed(NAME)
}

/// Like [`check_proper_edge_coloring`] but uncolored edges are allowed.
pub fn check_partial_edge_coloring(n: usize, edges: &[(usize, usize)], colors: &[Option<u32>]) -> VerificationReport {
    const NAME: &str = "partial_edge_coloring";
    for inc in incidence(n, edges) {
        for (i, &e1) in inc.iter().enumerate() {
            for &e2 in &inc[i + 1..] {
                if let (Some(a), Some(b)) = (colors[e1], colors[e2]) {
                    if a == b {
                        return VerificationReport::fail(NAME, Witness::EdgePair { e1, e2 });
                    }
                }
            }
        }
    }
    VerificationReport::ok(NAME)
}

/// Every color lies in `1..=palette`.
pub fn check_palette(colors: &[Option<u32>], palette: u32) -> VerificationReport {
    const NAME: &str = "palette";
    match colors.iter().position(|c| matches!(c, Some(x) if *x == 0 || *x > palette)) {
        Some(e) => VerificationReport::fail(NAME, Witness::Edge { e }),
        None => VerificationReport::ok(NAME),
    }
}

pub fn distinct_colors(colors: &[Option<u32>]) -> usize {
    colors.iter().flatten().collect::<HashSet<_>>().len()
}

pub fn check_proper_vertex_coloring(edges: &[(usize, usize)], colors: &[u32]) -> VerificationReport {
    const NAME: &str = "proper_vertex_coloring";
    match edges.iter().find(|&&(u, v)| colors[u] == colors[v]) {
        Some(&(u, v)) => VerificationReport::fail(NAME, Witness::VertexPair { u, v }),
        None => VerificationReport::ok(NAME),
    }
}

/// Exact chromatic index for graphs with at most 12 edges.
pub fn brute_force_chromatic_index(n: usize, edges: &[(usize, usize)]) -> Result<u32, OracleError> {
    if edges.len() > 12 {
        return Err(OracleError::TooLarge(edges.len()));
    }
    Ok(chromatic_index_budgeted(n, edges, u64::MAX).expect("unbounded search"))
}

/// Backtracking chromatic index with a node budget; `None` when exhausted.
pub fn chromatic_index_budgeted(n: usize, edges: &[(usize, usize)], budget: u64) -> Option<u32> {
    if edges.is_empty() {
        return Some(0);
    }
    let order = bfs_edge_order(n, edges);
    let pos: Vec<usize> = {
        let mut p = vec![0; edges.len()];
        for (i, &e) in order.iter().enumerate() {
            p[e] = i;
        }
        p
    };
    let inc = incidence(n, edges);
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let (u, v) = edges[e];
            let mut s: Vec<usize> =
                inc[u].iter().chain(&inc[v]).map(|&f| pos[f]).filter(|&j| j < i).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let mut left = budget;
    let mut k = max_deg(n, edges) as u32;
    loop {
        let mut col = vec![0u32; edges.len()];
        match search(0, 0, k, &earlier, &mut col, &mut left) {
            Some(true) => return Some(k),
            Some(false) => k += 1,
            None => return None,
        }
    }
}

fn search(i: usize, used: u32, k: u32, earlier: &[Vec<usize>], col: &mut [u32], left: &mut u64) -> Option<bool> {
    if i == col.len() {
        return Some(true);
    }
    if *left == 0 {
        return None;
    }
    *left -= 1;
    for c in 1..=k.min(used + 1) {
        if earlier[i].iter().all(|&j| col[j] != c) {
            col[i] = c;
            if search(i + 1, used.max(c), k, earlier, col, left)? {
                return Some(true);
            }
        }
    }
    col[i] = 0;
    Some(false)
}

fn bfs_edge_order(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let inc = incidence(n, edges);
    let mut seen_v = vec![false; n];
    let mut seen_e = vec![false; edges.len()];
    let mut order = Vec::with_capacity(edges.len());
    for s in 0..n {
        if seen_v[s] {
            continue;
        }
        seen_v[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &inc[v] {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                    let w = if edges[e].0 == v { edges[e].1 } else { edges[e].0 };
                    if !seen_v[w] {
                        seen_v[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    order
}

/// Fan axioms, freshness of the designated missing colors and maximality.
pub fn check_fan_axioms(
    n: usize,
    edges: &[(usize, usize)],
    colors: &[Option<u32>],
    palette: u32,
    fan: &Fan,
) -> VerificationReport {
    const NAME: &str = "fan_axioms";
    let inc = incidence(n, edges);
    let other = |e: usize, v: usize| if edges[e].0 == v { edges[e].1 } else { edges[e].0 };
    let free = |v: usize, c: u32| inc[v].iter().all(|&e| colors[e] != Some(c));
    let k = fan.leaves.len();
    let v = fan.center;
    if k == 0 || fan.edges.len() != k || fan.missing.len() != k {
        return VerificationReport::fail(NAME, Witness::Vertex { v });
    }
    let mut seen = HashSet::new();
    for i in 0..k {
        let (e, u) = (fan.edges[i], fan.leaves[i]);
        let joins = e < edges.len() && (edges[e] == (v, u) || edges[e] == (u, v));
        if !joins || !seen.insert(u) {
            return VerificationReport::fail(NAME, Witness::Leaf { i });
        }
        let want = if i == 0 { None } else { Some(fan.missing[i - 1]) };
        if colors[e] != want {
            return VerificationReport::fail(NAME, Witness::Edge { e });
        }
        let m = fan.missing[i];
        if m == 0 || m > palette || !free(u, m) {
            return VerificationReport::fail(NAME, Witness::Leaf { i });
        }
    }
    let last = fan.missing[k - 1];
    let extends = inc[v].iter().any(|&e| colors[e] == Some(last) && !seen.contains(&other(e, v)));
    if extends {
        return VerificationReport::fail(NAME, Witness::Leaf { i: k - 1 });
    }
    VerificationReport::ok(NAME)
}

pub fn check_independent(edges: &[(usize, usize)], set: &[usize]) -> VerificationReport {
    const NAME: &str = "independent";
    let s: HashSet<usize> = set.iter().copied().collect();
    match edges.iter().find(|(u, v)| s.contains(u) && s.contains(v)) {
        Some(&(u, v)) => VerificationReport::fail(NAME, Witness::VertexPair { u, v }),
        None => VerificationReport::ok(NAME),
    }
}

pub fn check_maximal_independent(n: usize, edges: &[(usize, usize)], set: &[usize]) -> VerificationReport {
    const NAME: &str = "maximal_independent";
    let r = check_independent(edges, set);
    if !r.pass {
        return r.renamed(NAME);
    }
    let mut covered = vec![false; n];
    for &v in set {
        covered[v] = true;
    }
    for &(u, v) in edges {
        if set.contains(&u) || set.contains(&v) {
            covered[u] = true;
            covered[v] = true;
        }
    }
    match covered.iter().position(|&c| !c) {
        Some(v) => VerificationReport::fail(NAME, Witness::Vertex { v }),
        None => VerificationReport::ok(NAME),
    }
}

/// `|Σ_{e ∋ v} sign(e)| <= bound` and `deg_±(v) <= deg(v)/2 + 1` at every vertex.
pub fn check_discrepancy(n: usize, edges: &[(usize, usize)], sign: &[i8], bound: i64) -> VerificationReport {
    const NAME: &str = "discrepancy";
    let mut plus = vec![0i64; n];
    let mut minus = vec![0i64; n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        match sign[e] {
            1 => {
                plus[u] += 1;
                plus[v] += 1;
            }
            -1 => {
                minus[u] += 1;
                minus[v] += 1;
            }
            _ => return VerificationReport::fail(NAME, Witness::Edge { e }),
        }
    }
    for v in 0..n {
        let deg = plus[v] + minus[v];
        let side_ok = 2 * plus[v].max(minus[v]) <= deg + 2;
        if (plus[v] - minus[v]).abs() > bound || !side_ok {
            return VerificationReport::fail(NAME, Witness::Vertex { v });
        }
    }
    VerificationReport::ok(NAME)
}
