//! Simple undirected graphs, partial edge colorings and degeneracy orientations.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
/// Colors are `1..=palette`.
pub type Color = u32;

const NONE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("no edge {{{0}, {1}}}")]
    NoSuchEdge(VertexId, VertexId),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("color {color} already used at vertex {vertex} by edge {edge}")]
    ColorConflict { vertex: VertexId, color: Color, edge: EdgeId },
    #[error("color {color} outside palette 1..={palette}")]
    ColorOutOfPalette { color: Color, palette: Color },
    #[error("no free color at vertex {0}")]
    NoFreeColor(VertexId),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("palette must be positive")]
    EmptyPalette,
}

/// Simple undirected graph with stable edge ids and `(neighbor, edge)` adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    degree_count: Vec<usize>,
    delta: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            degree_count: vec![n],
            delta: 0,
        }
    }

    /// Builds a graph; edge `i` of the result is `edges[i]`.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(Self::from_edges_unchecked(n, edges))
    }

    pub(crate) fn from_edges_unchecked(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = deg.iter().map(|&d| Vec::with_capacity(d)).collect();
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        let delta = adj.iter().map(Vec::len).max().unwrap_or(0);
        let mut degree_count = vec![0; delta + 1];
        for a in &adj {
            degree_count[a.len()] += 1;
        }
        Graph { edges: edges.to_vec(), adj, degree_count, delta }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn max_degree(&self) -> usize {
        self.delta
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u >= self.n() || v >= self.n() {
            return None;
        }
        let (s, t) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adj[s].iter().find(|&&(w, _)| w == t).map(|&(_, e)| e)
    }

    /// Spanning subgraph on the given edges; returns the graph and the map back to `self`'s ids.
    pub fn edge_subgraph(&self, ids: &[EdgeId]) -> (Graph, Vec<EdgeId>) {
        let edges: Vec<_> = ids.iter().map(|&e| self.edges[e]).collect();
        (Graph::from_edges_unchecked(self.n(), &edges), ids.to_vec())
    }

    /// Same edges on `n >= self.n()` vertices.
    pub fn with_vertices(&self, n: usize) -> Graph {
        assert!(n >= self.n());
        Graph::from_edges_unchecked(n, &self.edges)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.edge_between(u, v).is_some() {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        let e = self.edges.len();
        self.edges.push((u, v));
        for (a, b) in [(u, v), (v, u)] {
            let d = self.adj[a].len();
            self.adj[a].push((b, e));
            self.degree_count[d] -= 1;
            if d + 1 == self.degree_count.len() {
                self.degree_count.push(0);
            }
            self.degree_count[d + 1] += 1;
            self.delta = self.delta.max(d + 1);
        }
        Ok(e)
    }

    /// Removes edge `e` by moving the last edge into its slot.
    /// Returns the old id of the moved edge, if any.
    pub fn swap_remove_edge(&mut self, e: EdgeId) -> Option<EdgeId> {
        let (u, v) = self.edges[e];
        for a in [u, v] {
            let d = self.adj[a].len();
            self.adj[a].retain(|&(_, f)| f != e);
            self.degree_count[d] -= 1;
            self.degree_count[d - 1] += 1;
        }
        while self.delta > 0 && self.degree_count[self.delta] == 0 {
            self.delta -= 1;
        }
        let last = self.edges.len() - 1;
        self.edges.swap_remove(e);
        if last == e {
            return None;
        }
        let (a, b) = self.edges[e];
        for w in [a, b] {
            for slot in self.adj[w].iter_mut() {
                if slot.1 == last {
                    slot.1 = e;
                }
            }
        }
        Some(last)
    }

    /// Vertex labels of a proper 2-coloring, or `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for &(w, _) in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Smallest-last order and the degeneracy `d`: every vertex has at most `d`
    /// neighbors later in the order.
    pub fn degeneracy_order(&self) -> (Vec<VertexId>, usize) {
        let n = self.n();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); self.delta + 1];
        for v in 0..n {
            buckets[deg[v]].push(v);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut d = 0;
        let mut low = 0;
        while order.len() < n {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().unwrap();
            if removed[v] || deg[v] != low {
                continue;
            }
            removed[v] = true;
            d = d.max(low);
            order.push(v);
            for &(w, _) in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    buckets[deg[w]].push(w);
                    low = low.min(deg[w]);
                }
            }
        }
        (order, d)
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy_order().1
    }

    /// Each edge directed from the earlier to the later endpoint of the degeneracy order.
    pub fn degeneracy_orientation(&self) -> Orientation {
        let (order, _) = self.degeneracy_order();
        let mut pos = vec![0; self.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let heads = self
            .edges
            .iter()
            .map(|&(u, v)| if pos[u] < pos[v] { v } else { u })
            .collect();
        Orientation::new(self, heads)
    }

    /// Whitespace separated `u v` lines, `#` comments, optional `p edge n m` header.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut n_decl = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: &str| GraphError::Parse { line: i + 1, msg: msg.to_string() };
            if toks[0] == "p" {
                if toks.len() != 4 || n_decl.is_some() || !edges.is_empty() {
                    return Err(err("malformed header"));
                }
                n_decl = Some(toks[2].parse::<usize>().map_err(|_| err("bad vertex count"))?);
                continue;
            }
            if toks.len() != 2 {
                return Err(err("expected two vertex ids"));
            }
            let u = toks[0].parse::<usize>().map_err(|_| err("bad vertex id"))?;
            let v = toks[1].parse::<usize>().map_err(|_| err("bad vertex id"))?;
            edges.push((u, v));
        }
        let n = match n_decl {
            Some(n) => n,
            None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
        };
        Graph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("p edge {} {}\n", self.n(), self.m());
        for &(u, v) in &self.edges {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }
}

/// A direction for every edge, given by its head.
#[derive(Debug, Clone)]
pub struct Orientation {
    heads: Vec<VertexId>,
    out: Vec<Vec<EdgeId>>,
}

impl Orientation {
    pub fn new(g: &Graph, heads: Vec<VertexId>) -> Self {
        let mut out = vec![Vec::new(); g.n()];
        for (e, &h) in heads.iter().enumerate() {
            out[g.other_endpoint(e, h)].push(e);
        }
        Orientation { heads, out }
    }

    pub fn head(&self, e: EdgeId) -> VertexId {
        self.heads[e]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v]
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Partial proper edge coloring with per-vertex color-to-edge tables.
#[derive(Debug, Clone)]
pub struct PartialEdgeColoring {
    palette: Color,
    ends: Vec<(VertexId, VertexId)>,
    color_of: Vec<Color>,
    color2edge: Vec<EdgeId>,
    first_free: Vec<Color>,
    colored: usize,
}

impl PartialEdgeColoring {
    pub fn new(g: &Graph, palette: Color) -> Result<Self, ColoringError> {
        if palette == 0 {
            return Err(ColoringError::EmptyPalette);
        }
        let w = palette as usize + 1;
        Ok(PartialEdgeColoring {
            palette,
            ends: g.edges().to_vec(),
            color_of: vec![0; g.m()],
            color2edge: vec![NONE; g.n() * w],
            first_free: vec![1; g.n()],
            colored: 0,
        })
    }

    pub fn from_colors(g: &Graph, palette: Color, colors: &[Option<Color>]) -> Result<Self, ColoringError> {
        let mut c = Self::new(g, palette)?;
        for (e, col) in colors.iter().enumerate() {
            if let Some(col) = *col {
                c.set_color(e, col)?;
            }
        }
        Ok(c)
    }

    fn row(&self, v: VertexId) -> usize {
        v * (self.palette as usize + 1)
    }

    pub fn palette(&self) -> Color {
        self.palette
    }

    pub fn n(&self) -> usize {
        self.first_free.len()
    }

    pub fn m(&self) -> usize {
        self.color_of.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.ends[e]
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        match self.color_of[e] {
            0 => None,
            c => Some(c),
        }
    }

    /// Edge incident to `v` carrying color `c`.
    pub fn edge_with_color(&self, v: VertexId, c: Color) -> Option<EdgeId> {
        if c == 0 || c > self.palette {
            return None;
        }
        match self.color2edge[self.row(v) + c as usize] {
            NONE => None,
            e => Some(e),
        }
    }

    pub fn is_free(&self, v: VertexId, c: Color) -> bool {
        c >= 1 && c <= self.palette && self.edge_with_color(v, c).is_none()
    }

    /// Smallest color free at `v`.
    pub fn missing_color(&self, v: VertexId) -> Result<Color, ColoringError> {
        let c = self.first_free[v];
        if c > self.palette {
            Err(ColoringError::NoFreeColor(v))
        } else {
            Ok(c)
        }
    }

    /// Free colors at `v` in increasing order.
    pub fn missing_colors(&self, v: VertexId) -> impl Iterator<Item = Color> + '_ {
        (1..=self.palette).filter(move |&c| self.is_free(v, c))
    }

    pub fn colored_count(&self) -> usize {
        self.colored
    }

    pub fn is_complete(&self) -> bool {
        self.colored == self.m()
    }

    pub fn uncolored_edges(&self) -> Vec<EdgeId> {
        (0..self.m()).filter(|&e| self.color_of[e] == 0).collect()
    }

    pub fn edges_with_color(&self, c: Color) -> Vec<EdgeId> {
        (0..self.m()).filter(|&e| self.color_of[e] == c).collect()
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        let mut used = vec![false; self.palette as usize + 1];
        for &c in &self.color_of {
            used[c as usize] = true;
        }
        used[1..].iter().filter(|&&b| b).count()
    }

    pub fn to_vec(&self) -> Vec<Option<Color>> {
        (0..self.m()).map(|e| self.color(e)).collect()
    }

    fn check_settable(&self, e: EdgeId, c: Color) -> Result<(), ColoringError> {
        if e >= self.m() {
            return Err(ColoringError::EdgeOutOfRange(e));
        }
        if c == 0 || c > self.palette {
            return Err(ColoringError::ColorOutOfPalette { color: c, palette: self.palette });
        }
        let (u, v) = self.ends[e];
        for w in [u, v] {
            if let Some(f) = self.edge_with_color(w, c) {
                if f != e {
                    return Err(ColoringError::ColorConflict { vertex: w, color: c, edge: f });
                }
            }
        }
        Ok(())
    }

    /// Colors `e` with `c`, replacing any previous color of `e`.
    pub fn set_color(&mut self, e: EdgeId, c: Color) -> Result<(), ColoringError> {
        self.check_settable(e, c)?;
        self.uncolor(e);
        let (u, v) = self.ends[e];
        self.color_of[e] = c;
        self.colored += 1;
        for w in [u, v] {
            let r = self.row(w);
            self.color2edge[r + c as usize] = e;
            if self.first_free[w] == c {
                let mut f = c + 1;
                while f <= self.palette && self.color2edge[r + f as usize] != NONE {
                    f += 1;
                }
                self.first_free[w] = f;
            }
        }
        Ok(())
    }

    pub fn uncolor(&mut self, e: EdgeId) {
        let c = self.color_of[e];
        if c == 0 {
            return;
        }
        let (u, v) = self.ends[e];
        for w in [u, v] {
            let r = self.row(w);
            self.color2edge[r + c as usize] = NONE;
            self.first_free[w] = self.first_free[w].min(c);
        }
        self.color_of[e] = 0;
        self.colored -= 1;
    }

    /// Applies a batch of recolorings atomically: all touched edges are
    /// uncolored first, then the new colors are set. On conflict the
    /// coloring is restored and the error returned.
    pub fn apply(&mut self, changes: &[(EdgeId, Option<Color>)]) -> Result<(), ColoringError> {
        let old: Vec<(EdgeId, Option<Color>)> = changes.iter().map(|&(e, _)| (e, self.color(e))).collect();
        for &(e, _) in changes {
            if e >= self.m() {
                return Err(ColoringError::EdgeOutOfRange(e));
            }
            self.uncolor(e);
        }
        for (i, &(e, c)) in changes.iter().enumerate() {
            if let Some(c) = c {
                if let Err(err) = self.set_color(e, c) {
                    for &(f, _) in &changes[..i] {
                        self.uncolor(f);
                    }
                    for &(f, oc) in &old {
                        if let Some(oc) = oc {
                            self.set_color(f, oc).expect("restoring previous coloring");
                        }
                    }
                    return Err(err);
                }
            }
        }
        Ok(())
    }

    /// Changes the palette; fails if a used color would fall outside it.
    pub fn set_palette(&mut self, palette: Color) -> Result<(), ColoringError> {
        if palette == 0 {
            return Err(ColoringError::EmptyPalette);
        }
        if let Some(&c) = self.color_of.iter().find(|&&c| c > palette) {
            return Err(ColoringError::ColorOutOfPalette { color: c, palette });
        }
        let colors = self.to_vec();
        let n = self.n();
        let w = palette as usize + 1;
        self.palette = palette;
        self.color_of = vec![0; self.m()];
        self.color2edge = vec![NONE; n * w];
        self.first_free = vec![1; n];
        self.colored = 0;
        for (e, c) in colors.into_iter().enumerate() {
            if let Some(c) = c {
                self.set_color(e, c)?;
            }
        }
        Ok(())
    }

    /// Appends an uncolored edge; mirrors [`Graph::add_edge`].
    pub fn push_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        self.ends.push((u, v));
        self.color_of.push(0);
        self.ends.len() - 1
    }

    /// Mirrors [`Graph::swap_remove_edge`].
    pub fn swap_remove_edge(&mut self, e: EdgeId) {
        self.uncolor(e);
        let last = self.ends.len() - 1;
        if e != last {
            let c = self.color_of[last];
            self.uncolor(last);
            self.ends.swap(e, last);
            self.color_of.swap(e, last);
            if c != 0 {
                self.set_color(e, c).expect("moved edge keeps its color");
            }
        }
        self.ends.pop();
        self.color_of.pop();
    }
}
