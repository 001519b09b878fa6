//! Synchronous CRCW PRAM rounds with work/depth accounting.
//!
//! A round runs a step function for every task against a read-only
//! snapshot. Writes are buffered and committed at the end of the round;
//! when several tasks write the same cell the lowest task index wins.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every step runs as engine rounds.
    Faithful,
    /// Sequential equivalents where available.
    Fast,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "faithful" => Ok(Mode::Faithful),
            "fast" => Ok(Mode::Fast),
            _ => Err(format!("unknown mode '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostMeter {
    pub depth: u64,
    pub work: u64,
    pub peak_processors: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundWrite<V> {
    pub cell: usize,
    pub value: V,
    pub task: usize,
}

#[derive(Debug, Clone)]
pub struct Engine {
    mode: Mode,
    meter: CostMeter,
}

impl Engine {
    pub fn new(mode: Mode) -> Self {
        Engine { mode, meter: CostMeter::default() }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn faithful(&self) -> bool {
        self.mode == Mode::Faithful
    }

    pub fn meter(&self) -> CostMeter {
        self.meter
    }

    pub fn reset_meter(&mut self) {
        self.meter = CostMeter::default();
    }

    /// Accounts for `rounds` rounds of `tasks` processors each. Used for
    /// standard building blocks (reductions, sorting) executed directly.
    pub fn charge(&mut self, rounds: u64, tasks: u64) {
        if rounds == 0 || tasks == 0 {
            return;
        }
        self.meter.depth += rounds;
        self.meter.work += rounds * tasks;
        self.meter.peak_processors = self.meter.peak_processors.max(tasks);
    }

    /// One round; returns the committed writes ordered by cell.
    pub fn par_round<V, F>(&mut self, tasks: usize, step: F) -> Vec<RoundWrite<V>>
    where
        F: Fn(usize, &mut Vec<(usize, V)>),
    {
        self.charge(1, tasks as u64);
        let mut writes = Vec::with_capacity(tasks);
        let mut buf = Vec::new();
        for t in 0..tasks {
            step(t, &mut buf);
            writes.extend(buf.drain(..).map(|(cell, value)| RoundWrite { cell, value, task: t }));
        }
        arbitrate(&mut writes);
        writes
    }

    /// One round over `cells`: every task reads the pre-round snapshot.
    /// Returns the number of committed writes.
    pub fn round<V, F>(&mut self, cells: &mut [V], tasks: usize, step: F) -> usize
    where
        F: Fn(usize, &[V], &mut Vec<(usize, V)>),
    {
        let snapshot: &[V] = cells;
        let writes = {
            self.charge(1, tasks as u64);
            let mut writes = Vec::with_capacity(tasks);
            let mut buf = Vec::new();
            for t in 0..tasks {
                step(t, snapshot, &mut buf);
                writes.extend(buf.drain(..).map(|(cell, value)| RoundWrite { cell, value, task: t }));
            }
            arbitrate(&mut writes);
            writes
        };
        let k = writes.len();
        for w in writes {
            cells[w.cell] = w.value;
        }
        k
    }

    /// One round in which task `t` produces the value of its own cell `t`.
    pub fn map<R, F>(&mut self, tasks: usize, f: F) -> Vec<R>
    where
        F: Fn(usize) -> R,
    {
        self.charge(1, tasks as u64);
        (0..tasks).map(f).collect()
    }

    /// A child engine for a branch that runs in parallel with its siblings.
    pub fn fork(&self) -> Engine {
        Engine::new(self.mode)
    }

    /// Composes parallel branches: depth of the slowest, work of all.
    pub fn join<'a>(&mut self, branches: impl IntoIterator<Item = &'a Engine>) {
        let mut depth = 0;
        let mut peak = 0;
        for b in branches {
            depth = depth.max(b.meter.depth);
            peak += b.meter.peak_processors;
            self.meter.work += b.meter.work;
        }
        self.meter.depth += depth;
        self.meter.peak_processors = self.meter.peak_processors.max(peak);
    }
}

/// Keeps the lowest-task write per cell, ordered by cell.
fn arbitrate<V>(writes: &mut Vec<RoundWrite<V>>) {
    if writes.windows(2).all(|w| w[0].cell < w[1].cell) {
        return;
    }
    writes.sort_by_key(|w| w.cell);
    writes.dedup_by_key(|w| w.cell);
}

/// `ceil(log2 n)` with `clog2(0) = clog2(1) = 0`.
pub fn clog2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_task_wins() {
        let mut eng = Engine::new(Mode::Faithful);
        let mut cells = vec![0u32; 2];
        eng.round(&mut cells, 3, |t, _, out| out.push((0, 10 + t as u32)));
        assert_eq!(cells, vec![10, 0]);
        assert_eq!(eng.meter(), CostMeter { depth: 1, work: 3, peak_processors: 3 });
    }

    #[test]
    fn reads_see_snapshot() {
        let mut eng = Engine::new(Mode::Faithful);
        let mut cells = vec![1u32, 2, 3];
        eng.round(&mut cells, 3, |t, s, out| out.push(((t + 1) % 3, s[t])));
        assert_eq!(cells, vec![3, 1, 2]);
    }

    #[test]
    fn five_tasks_cost_one_round() {
        let mut eng = Engine::new(Mode::Faithful);
        let w = eng.par_round(5, |t, out: &mut Vec<(usize, usize)>| out.push((t, t)));
        assert_eq!(w.len(), 5);
        assert_eq!(eng.meter().depth, 1);
        assert_eq!(eng.meter().work, 5);
    }

    #[test]
    fn join_takes_max_depth() {
        let mut eng = Engine::new(Mode::Faithful);
        let mut a = eng.fork();
        a.charge(3, 2);
        let mut b = eng.fork();
        b.charge(5, 1);
        eng.join([&a, &b]);
        assert_eq!(eng.meter(), CostMeter { depth: 5, work: 11, peak_processors: 3 });
    }

    #[test]
    fn clog2_values() {
        assert_eq!((clog2(1), clog2(2), clog2(3), clog2(8), clog2(9)), (0, 1, 2, 3, 4));
    }
}
