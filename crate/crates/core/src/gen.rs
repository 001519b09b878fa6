//! Graph generators. Random families take an explicit seed.

use std::collections::HashSet;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("unknown generator `{0}`")]
    Unknown(String),
    #[error("bad generator parameters in `{0}`")]
    BadParams(String),
    #[error("generator `{0}` needs a seed")]
    SeedRequired(String),
    #[error("no simple {d}-regular graph on {n} vertices")]
    NoRegular { n: usize, d: usize },
}

/// `k<n>`, `c<n>`, `petersen`, `grid<W>x<H>`, `gnp:<n>:<p>`, `regular:<n>:<d>`.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Complete(usize),
    Cycle(usize),
    Petersen,
    Grid(usize, usize),
    Gnp(usize, f64),
    Regular(usize, usize),
}

impl FromStr for GenSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let bad = || GenError::BadParams(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let t = s.trim().to_ascii_lowercase();
        if t == "petersen" {
            return Ok(GenSpec::Petersen);
        }
        if let Some(rest) = t.strip_prefix("gnp:") {
            let (n, p) = rest.split_once(':').ok_or_else(bad)?;
            let p: f64 = p.parse().map_err(|_| bad())?;
            if !(0.0..=1.0).contains(&p) {
                return Err(bad());
            }
            return Ok(GenSpec::Gnp(num(n)?, p));
        }
        if let Some(rest) = t.strip_prefix("regular:") {
            let (n, d) = rest.split_once(':').ok_or_else(bad)?;
            return Ok(GenSpec::Regular(num(n)?, num(d)?));
        }
        if let Some(rest) = t.strip_prefix("grid") {
            let (w, h) = rest.split_once('x').ok_or_else(bad)?;
            return Ok(GenSpec::Grid(num(w)?, num(h)?));
        }
        if let Some(n) = t.strip_prefix('k') {
            return Ok(GenSpec::Complete(num(n)?));
        }
        if let Some(n) = t.strip_prefix('c') {
            let n = num(n)?;
            if n < 3 {
                return Err(bad());
            }
            return Ok(GenSpec::Cycle(n));
        }
        Err(GenError::Unknown(s.to_string()))
    }
}

impl GenSpec {
    pub fn is_random(&self) -> bool {
        matches!(self, GenSpec::Gnp(..) | GenSpec::Regular(..))
    }

    pub fn generate(&self, seed: Option<u64>) -> Result<Graph, GenError> {
        let seeded = |name: &str| seed.ok_or_else(|| GenError::SeedRequired(name.to_string()));
        Ok(match *self {
            GenSpec::Complete(n) => complete(n),
            GenSpec::Cycle(n) => cycle(n),
            GenSpec::Petersen => petersen(),
            GenSpec::Grid(w, h) => grid(w, h),
            GenSpec::Gnp(n, p) => gnp(n, p, seeded("gnp")?),
            GenSpec::Regular(n, d) => random_regular(n, d, seeded("regular")?)?,
        })
    }
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits simple graphs")
}

pub fn complete(n: usize) -> Graph {
    let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    build(n, &e)
}

pub fn cycle(n: usize) -> Graph {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &e)
}

pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &e)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let e: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
    build(a + b, &e)
}

pub fn petersen() -> Graph {
    let mut e = Vec::with_capacity(15);
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    build(10, &e)
}

pub fn grid(w: usize, h: usize) -> Graph {
    let id = |x: usize, y: usize| y * w + x;
    let mut e = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                e.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                e.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    build(w * h, &e)
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    build(n, &e)
}

/// `G(n, m)`: `m` distinct edges chosen uniformly.
pub fn gnm(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = m.min(n * n.saturating_sub(1) / 2);
    let mut seen = HashSet::with_capacity(m);
    let mut e = Vec::with_capacity(m);
    while e.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && seen.insert((u.min(v), u.max(v))) {
            e.push((u.min(v), u.max(v)));
        }
    }
    build(n, &e)
}

/// Configuration model; loops and parallel pairs are removed by random
/// double-edge swaps, restarting when that stalls.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if d >= n.max(1) || (n * d) % 2 == 1 {
        if d == 0 {
            return Ok(Graph::empty(n));
        }
        return Err(GenError::NoRegular { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        stubs.shuffle(&mut rng);
        let mut pairs: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        if repair(&mut pairs, &mut rng) {
            let e: Vec<_> = pairs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            return Ok(build(n, &e));
        }
    }
    Err(GenError::NoRegular { n, d })
}

fn repair(pairs: &mut [(usize, usize)], rng: &mut ChaCha8Rng) -> bool {
    let key = |(u, v): (usize, usize)| (u.min(v), u.max(v));
    let m = pairs.len();
    for _ in 0..50 * m.max(1) {
        let mut count = std::collections::HashMap::with_capacity(m);
        for &p in pairs.iter() {
            *count.entry(key(p)).or_insert(0usize) += 1;
        }
        let bad: Vec<usize> = (0..m).filter(|&i| pairs[i].0 == pairs[i].1 || count[&key(pairs[i])] > 1).collect();
        if bad.is_empty() {
            return true;
        }
        for i in bad {
            let j = rng.gen_range(0..m);
            let ((a, b), (c, d)) = (pairs[i], pairs[j]);
            let (x, y) = if rng.gen_bool(0.5) { ((a, c), (b, d)) } else { ((a, d), (b, c)) };
            if x.0 != x.1 && y.0 != y.1 && !count.contains_key(&key(x)) && !count.contains_key(&key(y)) {
                pairs[i] = x;
                pairs[j] = y;
                count.insert(key(x), 1);
                count.insert(key(y), 1);
            }
        }
    }
    false
}

/// A random rooted forest as a parent array.
pub fn random_forest(n: usize, roots: usize, seed: u64) -> Vec<Option<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut parent = vec![None; n];
    for i in roots.max(1).min(n)..n {
        parent[perm[i]] = Some(perm[rng.gen_range(0..i)]);
    }
    parent
}

/// Random bipartite graph with sides `0..a` and `a..a+b`.
pub fn random_bipartite(a: usize, b: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = Vec::new();
    for u in 0..a {
        for v in 0..b {
            if rng.gen_bool(p) {
                e.push((u, a + v));
            }
        }
    }
    build(a + b, &e)
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "enumeration is exponential");
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << slots.len()) {
        let e: Vec<_> = (0..slots.len()).filter(|&i| mask >> i & 1 == 1).map(|i| slots[i]).collect();
        if !connected(n, &e) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut k: Vec<_> = e.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                k.sort_unstable();
                k
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(build(n, &e));
        }
    }
    out
}

fn connected(n: usize, e: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut parts = n;
    for &(u, v) in e {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts <= 1
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("k4".parse(), Ok(GenSpec::Complete(4)));
        assert_eq!("C7".parse(), Ok(GenSpec::Cycle(7)));
        assert_eq!("grid3x4".parse(), Ok(GenSpec::Grid(3, 4)));
        assert_eq!("gnp:100:0.1".parse(), Ok(GenSpec::Gnp(100, 0.1)));
        assert_eq!("regular:10:3".parse(), Ok(GenSpec::Regular(10, 3)));
        assert!(matches!("star5".parse::<GenSpec>(), Err(GenError::Unknown(_))));
        assert!(matches!("gnp:10:2".parse::<GenSpec>(), Err(GenError::BadParams(_))));
        assert!(matches!(GenSpec::Gnp(5, 0.5).generate(None), Err(GenError::SeedRequired(_))));
    }

    #[test]
    fn named_shapes() {
        let p = petersen();
        assert_eq!((p.n(), p.m(), p.max_degree()), (10, 15, 3));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(grid(3, 4).m(), 17);
        assert_eq!(complete(8).m(), 28);
    }

    #[test]
    fn regular_is_simple_and_regular() {
        let g = random_regular(2000, 10, 7).unwrap();
        assert_eq!(g.m(), 10_000);
        assert!((0..g.n()).all(|v| g.degree(v) == 10));
        assert!(random_regular(5, 3, 1).is_err());
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(gnp(50, 0.2, 3).edges(), gnp(50, 0.2, 3).edges());
    }

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }
}
