use std::ops::AddAssign;
use std::time::Duration;

/// Per-query search space counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Vertices removed from either priority queue.
    pub settled: u64,
    /// Edges relaxed into a distance label.
    pub relaxed: u64,
    /// Edges examined only to decide whether a vertex can be stalled.
    pub stall_checks: u64,
    /// Settled vertices whose expansion was skipped by stalling.
    pub stalled: u64,
    /// Settled vertices whose label equals their true distance. Filled in
    /// only by the benchmark harness.
    pub min_vertices: u64,
    pub elapsed: Duration,
}

impl AddAssign for QueryStats {
    fn add_assign(&mut self, rhs: QueryStats) {
        self.settled += rhs.settled;
        self.relaxed += rhs.relaxed;
        self.stall_checks += rhs.stall_checks;
        self.stalled += rhs.stalled;
        self.min_vertices += rhs.min_vertices;
        self.elapsed += rhs.elapsed;
    }
}

impl QueryStats {
    /// Counters only; a deterministic fingerprint independent of timing.
    pub fn counts(&self) -> [u64; 5] {
        [
            self.settled,
            self.relaxed,
            self.stall_checks,
            self.stalled,
            self.min_vertices,
        ]
    }
}
