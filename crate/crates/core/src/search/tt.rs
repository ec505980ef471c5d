//! Transposition table: two-slot buckets, depth-preferred first slot with
//! generation aging, always-replace overflow slot.

use crate::board::{Move, PieceKind, Square};
use crate::eval::{Score, MATE_THRESHOLD};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Exact,
    /// The true value is at least the stored one (fail-high).
    Lower,
    /// The true value is at most the stored one (fail-low).
    Upper,
}

/// Compact move reference (from, to, promotion) resolved against the
/// generated move list at probe time. Zero means no move.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PackedMove(u16);

impl PackedMove {
    pub fn pack(m: Move) -> PackedMove {
        let promo = m.promotion.map_or(0, |p| p.index() as u16);
        PackedMove(m.from.index() as u16 | (m.to.index() as u16) << 6 | promo << 12)
    }

    pub fn is_none(self) -> bool {
        self.0 == 0
    }

    pub fn matches(self, m: &Move) -> bool {
        !self.is_none() && PackedMove::pack(*m) == self
    }

    pub fn from_square(self) -> Square {
        Square::new((self.0 & 63) as u8)
    }

    pub fn to_square(self) -> Square {
        Square::new(((self.0 >> 6) & 63) as u8)
    }

    pub fn promotion(self) -> Option<PieceKind> {
        match self.0 >> 12 {
            0 => None,
            k => Some(PieceKind::from_index(k as usize)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TTEntry {
    pub key: u64,
    /// Remaining depth the value was searched to.
    pub draft: i16,
    /// Mate scores are stored relative to this node, not the root.
    pub value: Score,
    pub bound: Bound,
    pub best_move: PackedMove,
    pub generation: u8,
}

impl TTEntry {
    const EMPTY: TTEntry = TTEntry {
        key: 0,
        draft: -1,
        value: 0,
        bound: Bound::Upper,
        best_move: PackedMove(0),
        generation: 0,
    };

    fn is_empty(&self) -> bool {
        self.draft < 0
    }

    /// Whether this entry settles a node searched to `depth` with window
    /// (`alpha`, `beta`).
    pub fn cuts_off(&self, depth: i32, alpha: Score, beta: Score, value: Score) -> bool {
        if i32::from(self.draft) < depth {
            return false;
        }
        match self.bound {
            Bound::Exact => true,
            Bound::Lower => value >= beta,
            Bound::Upper => value <= alpha,
        }
    }
}

#[derive(Clone, Copy)]
struct Bucket([TTEntry; 2]);

pub struct TranspositionTable {
    buckets: Vec<Bucket>,
    mask: usize,
    generation: u8,
}

/// Converts a root-relative mate score into a node-relative one.
#[inline]
pub fn value_to_tt(v: Score, ply: usize) -> Score {
    if v > MATE_THRESHOLD {
        v + ply as Score
    } else if v < -MATE_THRESHOLD {
        v - ply as Score
    } else {
        v
    }
}

#[inline]
pub fn value_from_tt(v: Score, ply: usize) -> Score {
    if v > MATE_THRESHOLD {
        v - ply as Score
    } else if v < -MATE_THRESHOLD {
        v + ply as Score
    } else {
        v
    }
}

impl TranspositionTable {
    pub const BUCKET_BYTES: usize = std::mem::size_of::<Bucket>();

    /// A table using at most `bytes` (rounded down to a power-of-two bucket
    /// count). Zero bytes gives a disabled table.
    pub fn new(bytes: usize) -> TranspositionTable {
        let count = bytes / Self::BUCKET_BYTES;
        let count = if count == 0 { 0 } else { 1usize << (usize::BITS - 1 - count.leading_zeros()) };
        TranspositionTable {
            buckets: vec![Bucket([TTEntry::EMPTY; 2]); count],
            mask: count.saturating_sub(1),
            generation: 0,
        }
    }

    pub fn is_enabled(&self) -> bool {
        !self.buckets.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.buckets.len() * 2
    }

    pub fn clear(&mut self) {
        self.buckets.fill(Bucket([TTEntry::EMPTY; 2]));
        self.generation = 0;
    }

    pub fn new_generation(&mut self) {
        self.generation = self.generation.wrapping_add(1);
    }

    pub fn probe(&self, key: u64) -> Option<TTEntry> {
        if self.buckets.is_empty() {
            return None;
        }
        let bucket = &self.buckets[key as usize & self.mask];
        bucket.0.iter().find(|e| !e.is_empty() && e.key == key).copied()
    }

    pub fn store(&mut self, key: u64, draft: i32, value: Score, bound: Bound, best_move: Option<Move>) {
        if self.buckets.is_empty() {
            return;
        }
        let generation = self.generation;
        let bucket = &mut self.buckets[key as usize & self.mask];
        let mut packed = best_move.map_or(PackedMove::default(), PackedMove::pack);
        if packed.is_none() {
            if let Some(old) = bucket.0.iter().find(|e| !e.is_empty() && e.key == key) {
                packed = old.best_move;
            }
        }
        let entry = TTEntry {
            key,
            draft: draft.clamp(0, i16::MAX as i32) as i16,
            value,
            bound,
            best_move: packed,
            generation,
        };
        let primary = bucket.0[0];
        if primary.is_empty()
            || primary.key == key
            || primary.generation != generation
            || entry.draft >= primary.draft
        {
            if !primary.is_empty() && primary.key != key {
                bucket.0[1] = primary;
            } else if bucket.0[1].key == key {
                bucket.0[1] = TTEntry::EMPTY;
            }
            bucket.0[0] = entry;
        } else {
            bucket.0[1] = entry;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Position;

    #[test]
    fn disabled_table_stores_nothing() {
        let mut tt = TranspositionTable::new(0);
        assert!(!tt.is_enabled());
        tt.store(42, 3, 10, Bound::Exact, None);
        assert_eq!(tt.probe(42), None);
    }

    #[test]
    fn size_rounds_down_to_power_of_two() {
        let tt = TranspositionTable::new(3 * TranspositionTable::BUCKET_BYTES);
        assert_eq!(tt.capacity(), 4);
        let tt = TranspositionTable::new(1 << 20);
        assert!(tt.capacity() * TranspositionTable::BUCKET_BYTES / 2 <= 1 << 20);
    }

    #[test]
    fn depth_preferred_slot_keeps_deeper_entry() {
        let mut tt = TranspositionTable::new(TranspositionTable::BUCKET_BYTES);
        tt.store(1, 8, 10, Bound::Exact, None);
        tt.store(2, 2, 20, Bound::Lower, None);
        tt.store(3, 1, 30, Bound::Upper, None);
        // Deep entry survives; the overflow slot holds the latest shallow one.
        assert_eq!(tt.probe(1).unwrap().draft, 8);
        assert_eq!(tt.probe(2), None);
        assert_eq!(tt.probe(3).unwrap().value, 30);
        // A new generation lets anything take the primary slot.
        tt.new_generation();
        tt.store(4, 1, 40, Bound::Exact, None);
        assert_eq!(tt.probe(4).unwrap().draft, 1);
        assert_eq!(tt.probe(1).unwrap().draft, 8);
    }

    #[test]
    fn move_survives_moveless_update() {
        let p = Position::startpos();
        let m = p.generate_moves()[5];
        let mut tt = TranspositionTable::new(1024);
        tt.store(p.hash(), 3, 0, Bound::Lower, Some(m));
        tt.store(p.hash(), 4, -5, Bound::Upper, None);
        let e = tt.probe(p.hash()).unwrap();
        assert!(e.best_move.matches(&m));
        assert_eq!(e.draft, 4);
        assert_eq!(e.best_move.from_square(), m.from);
        assert_eq!(e.best_move.to_square(), m.to);
        assert_eq!(e.best_move.promotion(), None);
    }

    #[test]
    fn bounds_gate_cutoffs() {
        let e = TTEntry {
            key: 0,
            draft: 5,
            value: 50,
            bound: Bound::Lower,
            best_move: PackedMove::default(),
            generation: 0,
        };
        assert!(e.cuts_off(5, 0, 40, 50));
        assert!(!e.cuts_off(5, 0, 60, 50));
        assert!(!e.cuts_off(6, 0, 40, 50));
        let u = TTEntry { bound: Bound::Upper, ..e };
        assert!(u.cuts_off(3, 60, 70, 50));
        assert!(!u.cuts_off(3, 40, 70, 50));
    }

    #[test]
    fn mate_scores_are_ply_adjusted() {
        use crate::eval::MATE;
        let root_relative = MATE - 7;
        let stored = value_to_tt(root_relative, 4);
        assert_eq!(stored, MATE - 3);
        assert_eq!(value_from_tt(stored, 4), root_relative);
        assert_eq!(value_from_tt(stored, 2), MATE - 5);
        assert_eq!(value_to_tt(-(MATE - 7), 4), -(MATE - 3));
        assert_eq!(value_to_tt(123, 9), 123);
    }
}
