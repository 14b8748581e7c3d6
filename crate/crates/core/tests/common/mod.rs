//! Checks shared by the acceptance target and the synthetic road tests.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eh_core::dijkstra::Direction;
use eh_core::{EdgeHierarchy, EhQuery, StallPolicy};

/// Stalling trends over seeded random queries: the failures and a summary.
pub fn stalling_checks(eh: &EdgeHierarchy, vertex_count: usize, queries: usize) -> (Vec<String>, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut q = EhQuery::new(eh);
    q.enable_relax_log(true);
    let mut failures = Vec::new();
    let (mut none, mut on_demand) = (0u64, 0u64);
    for _ in 0..queries {
        let s = rng.gen_range(0..vertex_count) as u32;
        let t = rng.gen_range(0..vertex_count) as u32;
        let plain = q.query(s, t, StallPolicy::None);
        let od = q.query(s, t, StallPolicy::OnDemand);
        let full = q.query(s, t, StallPolicy::Partial(1.0));
        let zero = q.query(s, t, StallPolicy::Partial(0.0));
        let adv = q.query(s, t, StallPolicy::InAdvance);
        let mut seen = HashSet::new();
        if !q
            .relax_log()
            .iter()
            .all(|r| seen.insert((r.direction == Direction::Forward, r.edge)))
        {
            failures.push(format!("in-advance relaxed an edge twice on {s}->{t}"));
        }
        if full.stats.settled != od.stats.settled {
            failures.push(format!(
                "partial:1.0 settled {} != on-demand {} on {s}->{t}",
                full.stats.settled, od.stats.settled
            ));
        }
        if zero.stats.stalled != 0 {
            failures.push(format!("partial:0.0 stalled on {s}->{t}"));
        }
        let d = plain.distance;
        if [od.distance, full.distance, zero.distance, adv.distance]
            .iter()
            .any(|&x| x != d)
        {
            failures.push(format!("distances differ on {s}->{t}"));
        }
        none += plain.stats.settled;
        on_demand += od.stats.settled;
    }
    if on_demand >= none {
        failures.push(format!("on-demand settled {on_demand} is not below unstalled {none}"));
    }
    let summary = format!(
        "{queries} queries, mean settled none {:.1} vs on-demand {:.1}",
        none as f64 / queries as f64,
        on_demand as f64 / queries as f64
    );
    (failures, summary)
}
