#![allow(dead_code)]

use edgecolor::gen;
use edgecolor::graph::Graph;

pub struct Entry {
    pub name: String,
    pub graph: Graph,
}

fn entry(name: impl Into<String>, graph: Graph) -> Entry {
    Entry { name: name.into(), graph }
}

/// Small and named graphs plus seeded random families up to n = 2000.
pub fn corpus() -> Vec<Entry> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for (i, g) in gen::connected_graphs(n).into_iter().enumerate() {
            out.push(entry(format!("conn{n}_{i}"), g));
        }
    }
    out.push(entry("petersen", gen::petersen()));
    for n in 2..=8 {
        out.push(entry(format!("k{n}"), gen::complete(n)));
    }
    for n in [6, 7, 9, 10] {
        out.push(entry(format!("c{n}"), gen::cycle(n)));
    }
    for (w, h) in [(3, 3), (4, 5), (8, 8)] {
        out.push(entry(format!("grid{w}x{h}"), gen::grid(w, h)));
    }
    out.push(entry("k3_4", gen::complete_bipartite(3, 4)));
    for n in [8, 12, 16, 24, 32, 48, 64] {
        for p in [0.1, 0.2, 0.3, 0.5] {
            for seed in 0..5 {
                out.push(entry(format!("gnp{n}_{p}_{seed}"), gen::gnp(n, p, seed)));
            }
        }
    }
    for n in [20, 50, 100, 200] {
        for d in [3, 4, 5, 6, 8] {
            out.push(entry(format!("reg{n}_{d}"), gen::random_regular(n, d, n as u64 + d as u64).unwrap()));
        }
    }
    out.extend(medium());
    out.extend(large());
    out
}

pub fn medium() -> Vec<Entry> {
    vec![
        entry("gnp200_0.05", gen::gnp(200, 0.05, 11)),
        entry("gnp500_0.02", gen::gnp(500, 0.02, 12)),
        entry("reg500_12", gen::random_regular(500, 12, 13).unwrap()),
        entry("gnm1000_6000", gen::gnm(1000, 6000, 14)),
    ]
}

pub fn large() -> Vec<Entry> {
    vec![
        entry("gnp2000_0.01", gen::gnp(2000, 0.01, 21)),
        entry("reg2000_10", gen::random_regular(2000, 10, 22).unwrap()),
        entry("reg2000_20", gen::random_regular(2000, 20, 23).unwrap()),
    ]
}

/// Everything except the n = 2000 instances.
pub fn corpus_without_large() -> Vec<Entry> {
    let big: Vec<String> = large().into_iter().map(|e| e.name).collect();
    corpus().into_iter().filter(|e| !big.contains(&e.name)).collect()
}

/// Least-squares `c` for `y ≈ c·x` and the largest relative residual.
pub fn fit_through_origin(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let c = xs.iter().zip(ys).map(|(x, y)| x * y).sum::<f64>() / xs.iter().map(|x| x * x).sum::<f64>();
    let worst = xs.iter().zip(ys).map(|(x, y)| ((y - c * x) / y).abs()).fold(0.0, f64::max);
    (c, worst)
}
