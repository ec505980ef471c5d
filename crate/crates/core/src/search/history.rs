use crate::board::{Color, Move};
use crate::eval::MAX_PLY;

/// Saturating cap, kept below the move-ordering tier for killers.
pub const HISTORY_MAX: u32 = 1 << 24;

/// Cutoff counters per (side, from, to).
#[derive(Clone)]
pub struct HistoryTable {
    scores: Box<[[[u32; 64]; 64]; 2]>,
}

impl Default for HistoryTable {
    fn default() -> Self {
        HistoryTable {
            scores: Box::new([[[0; 64]; 64]; 2]),
        }
    }
}

impl HistoryTable {
    pub fn clear(&mut self) {
        *self.scores = [[[0; 64]; 64]; 2];
    }

    #[inline]
    pub fn score(&self, side: Color, m: &Move) -> u32 {
        self.scores[side.index()][m.from.index()][m.to.index()]
    }

    /// Credits a quiet move that caused a beta cutoff at `depth`.
    pub fn reward(&mut self, side: Color, m: &Move, depth: i32) {
        let d = depth.max(1) as u32;
        let slot = &mut self.scores[side.index()][m.from.index()][m.to.index()];
        *slot = slot.saturating_add(d * d).min(HISTORY_MAX);
    }
}

/// Two killer slots per ply.
#[derive(Clone)]
pub struct Killers {
    slots: Vec<[Option<Move>; 2]>,
}

impl Default for Killers {
    fn default() -> Self {
        Killers {
            slots: vec![[None; 2]; MAX_PLY + 1],
        }
    }
}

impl Killers {
    pub fn clear(&mut self) {
        self.slots.fill([None; 2]);
    }

    #[inline]
    pub fn get(&self, ply: usize) -> [Option<Move>; 2] {
        self.slots[ply]
    }

    pub fn record(&mut self, ply: usize, m: Move) {
        let s = &mut self.slots[ply];
        if s[0] != Some(m) {
            s[1] = s[0];
            s[0] = Some(m);
        }
    }
}
