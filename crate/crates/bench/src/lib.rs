//! Fixed workloads shared by the benchmarks.

use porc_core::Partition;

/// `(m, λ, p)` triples whose orbit counts are cheap for both engines.
pub fn orbit_workloads() -> Vec<(u32, Partition, u64)> {
    [(2, "1,1", 3), (2, "2,1", 2), (3, "1", 3), (3, "2", 2)]
        .into_iter()
        .map(|(m, lam, p)| (m, lam.parse().unwrap(), p))
        .collect()
}
