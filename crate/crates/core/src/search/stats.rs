use serde::Serialize;

/// Counters collected during one `search_root` call.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Entries into the full-width search routine, not counting calls at
    /// depth zero that go straight to quiescence.
    pub nodes: u64,
    /// Entries into quiescence search.
    pub qnodes: u64,
    pub null_tries: u64,
    pub null_fail_highs: u64,
    /// Zugzwangs detected by verification, each followed by a full-depth
    /// re-search of the node.
    pub zugzwang_researches: u64,
    pub tt_probes: u64,
    pub tt_hits: u64,
    pub check_extensions: u64,
    /// Total nodes spent in each iteration, including an interrupted last one.
    pub iteration_nodes: Vec<u64>,
}

impl SearchStats {
    #[inline]
    pub fn total_nodes(&self) -> u64 {
        self.nodes + self.qnodes
    }
}
