//! Process-wide planner-call accounting.
//!
//! Every geometric plan and every top-k enumeration bumps a counter here.
//! The experiment harness snapshots the counters around its offline and
//! online phases, which is how the zero-online-planner-calls claim is
//! checked rather than assumed.

use std::sync::atomic::{AtomicU64, Ordering};

static GEOMETRIC_PLANS: AtomicU64 = AtomicU64::new(0);
static TOPK_CALLS: AtomicU64 = AtomicU64::new(0);

pub fn record_geometric_plan() {
    GEOMETRIC_PLANS.fetch_add(1, Ordering::Relaxed);
}

pub fn record_topk_call() {
    TOPK_CALLS.fetch_add(1, Ordering::Relaxed);
}

/// Snapshot of both planner-call counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlannerCalls {
    pub geometric: u64,
    pub topk: u64,
}

impl PlannerCalls {
    pub fn snapshot() -> Self {
        Self {
            geometric: GEOMETRIC_PLANS.load(Ordering::Relaxed),
            topk: TOPK_CALLS.load(Ordering::Relaxed),
        }
    }

    /// Calls recorded since `earlier`, summed over both planners.
    pub fn since(&self, earlier: PlannerCalls) -> u64 {
        (self.geometric - earlier.geometric) + (self.topk - earlier.topk)
    }
}
